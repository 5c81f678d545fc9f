//! The annulus skein algebra as a polynomial ring in the two oriented core
//! loops `l+` and `l-`, and threading of the core by a polynomial.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use super::reduce::loop_value;
use crate::coeff::Laurent;
use crate::powersum::BiPoly;
use crate::LaurentZ;

/// `Σ c_ab · l+^a · l-^b` with no zero coefficients.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct AnnulusElem {
    terms: BTreeMap<(u32, u32), LaurentZ>,
}

impl AnnulusElem {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_terms(terms: impl IntoIterator<Item = ((u32, u32), LaurentZ)>) -> Self {
        let mut out = Self::zero();
        for (k, c) in terms {
            out.add_term(k, c);
        }
        out
    }

    pub fn l_plus() -> Self {
        Self::from_terms([((1, 0), LaurentZ::v_pow(0))])
    }

    pub fn l_minus() -> Self {
        Self::from_terms([((0, 1), LaurentZ::v_pow(0))])
    }

    /// Integer polynomial with `e1 -> l+` and `e2 -> l-`.
    pub fn from_bipoly(p: &BiPoly<BigInt>) -> Self {
        Self::from_terms(p.terms().map(|(k, c)| (*k, Laurent::constant(c.clone()))))
    }

    pub fn add_term(&mut self, k: (u32, u32), c: LaurentZ) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(k).or_default();
        *slot += &c;
        if slot.is_zero() {
            self.terms.remove(&k);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &LaurentZ)> {
        self.terms.iter()
    }

    pub fn coeff(&self, a: u32, b: u32) -> LaurentZ {
        self.terms.get(&(a, b)).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(*k, c.clone());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for ((a, b), c) in &self.terms {
            for ((x, y), d) in &other.terms {
                out.add_term((a + x, b + y), c * d);
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::from_terms([((0, 0), LaurentZ::v_pow(0))]), |acc, _| acc.mul(self))
    }

    /// Substitutes `l+ -> plus`, `l- -> minus`.
    pub fn substitute(&self, plus: &Self, minus: &Self) -> Self {
        let mut out = Self::zero();
        for ((a, b), c) in &self.terms {
            let term = plus.pow(*a).mul(&minus.pow(*b));
            for (k, d) in &term.terms {
                out.add_term(*k, c * d);
            }
        }
        out
    }
}

impl fmt::Display for AnnulusElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut keys: Vec<_> = self.terms.iter().collect();
        keys.sort_by(|(a, _), (b, _)| (b.0 + b.1, b.0).cmp(&(a.0 + a.1, a.0)));
        for (i, ((a, b), c)) in keys.into_iter().enumerate() {
            let mut factors = Vec::new();
            for (name, e) in [("l+", a), ("l-", b)] {
                match e {
                    0 => {}
                    1 => factors.push(name.to_string()),
                    _ => factors.push(format!("{name}^{e}")),
                }
            }
            crate::qmatrix::write_term(f, c, &factors.join("*"), i == 0)?;
        }
        Ok(())
    }
}

impl fmt::Debug for AnnulusElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Threads the core of the annulus by `p`: `p(l+, l-)`.
pub fn thread_core(p: &BiPoly<BigInt>) -> AnnulusElem {
    AnnulusElem::from_bipoly(p)
}

/// Embeds the threaded annulus in the disk, where each parallel copy of the
/// core bounds a disk and evaluates to `q^2 + 1 + q^{-2}`.
pub fn eval_threaded_unknot(p: &BiPoly<BigInt>) -> LaurentZ {
    let three = loop_value();
    thread_core(p)
        .terms()
        .fold(LaurentZ::default(), |acc, ((a, b), c)| acc + c * &three.pow(a + b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::specialize;
    use crate::powersum::power_sum_poly;

    #[test]
    fn threading_small_power_sums() {
        assert_eq!(thread_core(&power_sum_poly(1)).to_string(), "l+");
        assert_eq!(thread_core(&power_sum_poly(2)).to_string(), "l+^2 - 2*l-");
    }

    #[test]
    fn threaded_unknot_at_order_five_is_three() {
        let x = eval_threaded_unknot(&power_sum_poly(5));
        let s = specialize(&x, 5).unwrap();
        assert_eq!(s, specialize(&LaurentZ::constant(BigInt::from(3)), 5).unwrap());
        // the identity needs the root of unity
        assert_ne!(x, LaurentZ::constant(BigInt::from(3)));
    }
}
