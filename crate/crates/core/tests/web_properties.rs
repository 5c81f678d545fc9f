use num_bigint::BigInt;
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;
use sl3_core::webs::corpus::{self, CorpusLimits};
use sl3_core::webs::{
    evaluate_closed, evaluate_closed_tensor, evaluate_closed_with, FaceStrategy, VertexKind, WebDiagram,
    DEFAULT_WEB_FUEL,
};
use sl3_core::LaurentZ;

fn web(seed: u64) -> WebDiagram {
    corpus::random_web(&mut StdRng::seed_from_u64(seed), CorpusLimits::default())
}

fn at_one(x: &LaurentZ) -> BigInt {
    x.eval_at_one()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn evaluators_agree(seed in any::<u64>()) {
        let d = web(seed);
        prop_assert_eq!(evaluate_closed(&d).unwrap(), evaluate_closed_tensor(&d).unwrap());
    }

    #[test]
    fn face_order_does_not_matter(seed in any::<u64>(), order in any::<u64>()) {
        let d = web(seed);
        let fixed = evaluate_closed(&d).unwrap();
        prop_assert_eq!(evaluate_closed_with(&d, FaceStrategy::Random(order), DEFAULT_WEB_FUEL).unwrap(), fixed);
    }

    #[test]
    fn second_reidemeister_move(seed in any::<u64>()) {
        let (with, without) = corpus::r2_pair(&mut StdRng::seed_from_u64(seed));
        prop_assert_eq!(evaluate_closed(&with).unwrap(), evaluate_closed(&without).unwrap());
    }

    #[test]
    fn third_reidemeister_move(seed in any::<u64>()) {
        let (left, right) = corpus::r3_pair(&mut StdRng::seed_from_u64(seed));
        prop_assert_eq!(evaluate_closed(&left).unwrap(), evaluate_closed(&right).unwrap());
    }

    #[test]
    fn crossing_switch_at_q_one(seed in any::<u64>(), pick in any::<usize>()) {
        let d = web(seed);
        let crossings: Vec<usize> =
            d.vertices().iter().enumerate().filter(|(_, v)| v.kind == VertexKind::Crossing).map(|(i, _)| i).collect();
        prop_assume!(!crossings.is_empty());
        let switched = d.switch_crossing(crossings[pick % crossings.len()]);
        prop_assert_eq!(at_one(&evaluate_closed(&d).unwrap()), at_one(&evaluate_closed(&switched).unwrap()));
    }

    #[test]
    fn arrow_reversal(seed in any::<u64>()) {
        let d = web(seed);
        prop_assert_eq!(evaluate_closed(&d).unwrap(), evaluate_closed(&d.reversed()).unwrap());
    }

    #[test]
    fn disjoint_union_multiplies(a in any::<u64>(), b in any::<u64>()) {
        let (x, y) = (web(a), web(b));
        let product = &evaluate_closed(&x).unwrap() * &evaluate_closed(&y).unwrap();
        prop_assert_eq!(evaluate_closed(&x.union(&y)).unwrap(), product);
    }

    #[test]
    fn documents_round_trip(seed in any::<u64>()) {
        let d = web(seed);
        let text = d.to_document().to_json();
        prop_assert_eq!(WebDiagram::from_json(&text).unwrap(), d);
    }
}

#[test]
fn corpus_of_one_hundred_webs_agrees() {
    let mut rng = StdRng::seed_from_u64(2024);
    let mut with_vertices = 0;
    for _ in 0..100 {
        let d = corpus::random_web(&mut rng, CorpusLimits::default());
        if !d.vertices().is_empty() {
            with_vertices += 1;
        }
        assert_eq!(evaluate_closed(&d).unwrap(), evaluate_closed_tensor(&d).unwrap());
    }
    assert!(with_vertices >= 50, "corpus too thin: {with_vertices}");
}
