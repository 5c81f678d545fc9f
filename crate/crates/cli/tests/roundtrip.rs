mod common;

use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

use sl3_cli::expr::{parse_annulus, parse_expression};
use sl3_core::coeff::{Generic, RootOfUnity};
use sl3_core::qmatrix::Engine;
use sl3_core::webs::AnnulusElem;
use sl3_core::{CyclotomicZ, LaurentZ};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn generic_elements_round_trip(seed in any::<u64>()) {
        let e = Engine::<LaurentZ>::new(Generic);
        let x = common::random_elem(&e, &mut StdRng::seed_from_u64(seed));
        let text = x.to_string();
        prop_assert_eq!(parse_expression(&e, &text).unwrap(), x, "{}", text);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn cyclotomic_elements_round_trip(seed in any::<u64>(), pick in 0usize..3) {
        let e = Engine::<CyclotomicZ>::new(RootOfUnity::new([1, 5, 7][pick]).unwrap());
        let x = common::random_elem(&e, &mut StdRng::seed_from_u64(seed));
        let text = x.to_string();
        prop_assert_eq!(parse_expression(&e, &text).unwrap(), x, "{}", text);
    }

    #[test]
    fn annulus_elements_round_trip(terms in prop::collection::vec((0u32..4, 0u32..4, -12i64..=12, -5i64..=5), 0..5)) {
        let x = AnnulusElem::from_terms(
            terms.into_iter().map(|(a, b, k, c)| ((a, b), &LaurentZ::v_pow(k) * &LaurentZ::constant(c.into()))),
        );
        prop_assert_eq!(parse_annulus(&x.to_string()).unwrap(), x);
    }
}
