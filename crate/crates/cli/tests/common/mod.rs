use num_bigint::BigInt;
use rand::Rng;

use sl3_core::coeff::{Coeff, Laurent};
use sl3_core::qmatrix::{Engine, Gen, NCElem, WordElem};

/// Random normal form: up to four words of length up to five, each with a
/// Laurent coefficient of up to three terms.
pub fn random_elem<C: Coeff<Int = BigInt>, R: Rng>(engine: &Engine<C>, rng: &mut R) -> NCElem<C> {
    let mut w = WordElem::from_terms([]);
    for _ in 0..rng.gen_range(1..=4) {
        let word: Vec<Gen> = (0..rng.gen_range(0..=5)).map(|_| Gen::from_index(rng.gen_range(0..9))).collect();
        let coeff = Laurent::from_terms(
            (0..rng.gen_range(1..=3)).map(|_| (rng.gen_range(-18..=18), BigInt::from(rng.gen_range(-40i64..=40)))),
        );
        w.add_term(word, C::from_laurent(engine.ctx(), &coeff));
    }
    engine.normal_form(&w).expect("small words reduce")
}
