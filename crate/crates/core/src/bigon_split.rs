//! Stated arcs in the bigon and the splitting of the annulus along `k`
//! cuts into the `k`-fold tensor power of the quantum group.
//!
//! A rightward arc with states `(i, j)` is the generator `X_ij`. A leftward
//! arc is `Y_ab = S(X_{(4-b)(4-a)})`; the matrix `Y` is a comatrix, so
//! cutting a reversed arc sums over the intermediate state exactly as for
//! `X`.

use std::fmt;

use crate::coeff::Coeff;
use crate::qmatrix::{AlgebraError, Engine, Gen, NCElem, TensorElem};
use crate::webs::AnnulusElem;

/// A boundary state in `{1, 2, 3}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct State(u8);

impl State {
    pub const ALL: [State; 3] = [State(1), State(2), State(3)];

    pub fn new(s: u8) -> Result<Self, AlgebraError> {
        if (1..=3).contains(&s) {
            Ok(Self(s))
        } else {
            Err(AlgebraError::BadIndex(s, s))
        }
    }

    pub fn get(self) -> u8 {
        self.0
    }

    /// `4 - s`.
    pub fn dual(self) -> Self {
        Self(4 - self.0)
    }
}

impl fmt::Display for State {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArcOrientation {
    Rightward,
    Leftward,
}

/// An arc crossing the bigon, with states at its left and right ends.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StatedArc {
    pub orientation: ArcOrientation,
    pub left_state: State,
    pub right_state: State,
}

impl StatedArc {
    pub fn value<C: Coeff>(&self, engine: &Engine<C>) -> Result<NCElem<C>, AlgebraError> {
        let (i, j) = (self.left_state.get(), self.right_state.get());
        match self.orientation {
            ArcOrientation::Rightward => generator_arc(engine, i, j),
            ArcOrientation::Leftward => reversed_arc(engine, i, j),
        }
    }
}

pub fn generator_arc<C: Coeff>(engine: &Engine<C>, i: u8, j: u8) -> Result<NCElem<C>, AlgebraError> {
    Ok(engine.gen(Gen::new(i, j)?))
}

pub fn reversed_arc<C: Coeff>(engine: &Engine<C>, a: u8, b: u8) -> Result<NCElem<C>, AlgebraError> {
    let (a, b) = (State::new(a)?, State::new(b)?);
    engine.antipode_gen(Gen::new(b.dual().get(), a.dual().get())?)
}

/// Stacks arcs bottom to top, multiplying their values.
pub fn stack_arcs<C: Coeff>(engine: &Engine<C>, arcs: &[StatedArc]) -> Result<NCElem<C>, AlgebraError> {
    let mut acc = NCElem::one();
    for a in arcs {
        acc = engine.mul(&acc, &a.value(engine)?)?;
    }
    Ok(acc)
}

/// `Σ A_{i i1} ⊗ A_{i1 i2} ⊗ ... ⊗ A_{i_{k-1} i}` over all state tuples, with
/// `A` given by `entry`.
fn state_sum<C: Coeff>(
    k: usize,
    entry: impl Fn(u8, u8) -> Result<NCElem<C>, AlgebraError>,
) -> Result<TensorElem<C>, AlgebraError> {
    let mut out = TensorElem::zero(k);
    for n in 0..3usize.pow(k as u32) {
        let mut path = Vec::with_capacity(k + 1);
        let mut m = n;
        for _ in 0..k {
            path.push((m % 3) as u8 + 1);
            m /= 3;
        }
        path.push(path[0]);
        let factors: Vec<NCElem<C>> = path.windows(2).map(|p| entry(p[0], p[1])).collect::<Result<_, _>>()?;
        out.add_scaled(&TensorElem::pure(&factors), &C::one());
    }
    Ok(out)
}

/// Images of `l+` and `l-` under `k` cuts.
pub fn split_generators<C: Coeff>(
    engine: &Engine<C>,
    k: usize,
) -> Result<(TensorElem<C>, TensorElem<C>), AlgebraError> {
    assert!(k >= 1, "at least one cut");
    let plus = state_sum(k, |i, j| generator_arc(engine, i, j))?;
    let minus = state_sum(k, |a, b| reversed_arc(engine, a, b))?;
    Ok((plus, minus))
}

/// The splitting homomorphism, extended multiplicatively from the core loops.
pub fn split_annulus<C: Coeff<Int = num_bigint::BigInt>>(engine: &Engine<C>, k: usize, e: &AnnulusElem) -> Result<TensorElem<C>, AlgebraError> {
    let (plus, minus) = split_generators(engine, k)?;
    let mut plus_pows = vec![TensorElem::one(k)];
    let mut minus_pows = vec![TensorElem::one(k)];
    let mut out = TensorElem::zero(k);
    for ((a, b), c) in e.terms() {
        while plus_pows.len() <= *a as usize {
            let next = engine.tensor_mul(plus_pows.last().expect("nonempty"), &plus)?;
            plus_pows.push(next);
        }
        while minus_pows.len() <= *b as usize {
            let next = engine.tensor_mul(minus_pows.last().expect("nonempty"), &minus)?;
            minus_pows.push(next);
        }
        let term = engine.tensor_mul(&plus_pows[*a as usize], &minus_pows[*b as usize])?;
        out.add_scaled(&term, &C::from_laurent(engine.ctx(), c));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{Generic, Laurent};
    use num_bigint::BigInt;
    use num_traits::{One, Zero};

    type L = Laurent<BigInt>;

    fn engine() -> Engine<L> {
        Engine::new(Generic)
    }

    #[test]
    fn diagonal_reversed_arcs() {
        let e = engine();
        assert_eq!(reversed_arc(&e, 1, 1).unwrap().to_string(), "X11*X22 - v^6*X12*X21");
        assert_eq!(reversed_arc(&e, 2, 2).unwrap().to_string(), "X11*X33 - v^6*X13*X31");
        assert_eq!(reversed_arc(&e, 3, 3).unwrap().to_string(), "X22*X33 - v^6*X23*X32");
        assert_eq!(reversed_arc(&e, 1, 2).unwrap().to_string(), "-v^-6*X11*X23 + X13*X21");
    }

    #[test]
    fn out_of_range_states() {
        let e = engine();
        assert!(generator_arc(&e, 0, 1).is_err());
        assert!(reversed_arc(&e, 1, 4).is_err());
    }

    #[test]
    fn stacked_arcs_multiply() {
        let e = engine();
        let arc = |i, j| StatedArc {
            orientation: ArcOrientation::Rightward,
            left_state: State::new(i).unwrap(),
            right_state: State::new(j).unwrap(),
        };
        let x11 = e.gen(Gen::new(1, 1).unwrap());
        let x22 = e.gen(Gen::new(2, 2).unwrap());
        assert_eq!(stack_arcs(&e, &[arc(1, 1), arc(2, 2)]).unwrap(), e.mul(&x11, &x22).unwrap());
    }

    #[test]
    fn reversed_arcs_form_a_comatrix() {
        let e = engine();
        for a in 1..=3 {
            for b in 1..=3 {
                let y = reversed_arc(&e, a, b).unwrap();
                let expected_counit = if a == b { L::one() } else { L::zero() };
                assert_eq!(e.counit(&y), expected_counit);
                let mut sum = TensorElem::zero(2);
                for c in 1..=3 {
                    let left = reversed_arc(&e, a, c).unwrap();
                    let right = reversed_arc(&e, c, b).unwrap();
                    sum.add_scaled(&TensorElem::pure(&[left, right]), &L::one());
                }
                assert_eq!(e.coproduct(&y).unwrap(), sum, "Y{a}{b}");
            }
        }
    }

    #[test]
    fn trace_of_reversed_arcs_is_sigma_two() {
        let e = engine();
        let trace = (1..=3).fold(NCElem::zero(), |acc, a| acc.add(&reversed_arc(&e, a, a).unwrap()));
        assert_eq!(trace, e.sigma(2).unwrap());
    }

    #[test]
    fn one_cut_recovers_sigmas() {
        let e = engine();
        let to_elem = |t: TensorElem<L>| NCElem::from_terms(t.iter().map(|(k, c)| (k[0], c.clone())));
        let plus = split_annulus(&e, 1, &AnnulusElem::l_plus()).unwrap();
        assert_eq!(to_elem(plus), e.sigma(1).unwrap());
        let minus = split_annulus(&e, 1, &AnnulusElem::l_minus()).unwrap();
        assert_eq!(to_elem(minus), e.sigma(2).unwrap());
    }

    #[test]
    fn two_cuts_of_the_core() {
        let e = engine();
        let got = split_annulus(&e, 2, &AnnulusElem::l_plus()).unwrap();
        let mut expected = TensorElem::zero(2);
        for i in 1..=3 {
            for j in 1..=3 {
                let x = e.gen(Gen::new(i, j).unwrap());
                let y = e.gen(Gen::new(j, i).unwrap());
                expected.add_scaled(&TensorElem::pure(&[x, y]), &L::one());
            }
        }
        assert_eq!(got, expected);
    }

    #[test]
    fn splitting_is_coassociative() {
        let e = engine();
        for gen in [AnnulusElem::l_plus(), AnnulusElem::l_minus()] {
            for k in 1..=2 {
                let split = split_annulus(&e, k, &gen).unwrap();
                let finer = split_annulus(&e, k + 1, &gen).unwrap();
                for slot in 0..k {
                    let refined = e
                        .tensor_map_slot(&split, slot, |m| e.coproduct(&NCElem::monomial(*m, L::one())))
                        .unwrap();
                    assert_eq!(refined, finer, "k = {k}, slot {slot}");
                }
            }
        }
    }

    #[test]
    fn splitting_is_multiplicative() {
        let e = engine();
        for k in 1..=2 {
            let (p, m) = split_generators(&e, k).unwrap();
            let product = AnnulusElem::l_plus().mul(&AnnulusElem::l_minus());
            assert_eq!(split_annulus(&e, k, &product).unwrap(), e.tensor_mul(&p, &m).unwrap());
        }
    }
}
