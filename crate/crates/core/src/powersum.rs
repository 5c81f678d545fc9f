//! Power-sum polynomials `P^(N)(e1, e2)` with `P^(N)(E1, E2) = λ1^N + λ2^N + λ3^N`
//! on `λ1λ2λ3 = 1`, by recursion and by symmetric-function elimination.

use std::collections::BTreeMap;
use std::fmt;


use thiserror::Error;

use crate::coeff::{Coeff, Int};
use crate::qmatrix::{AlgebraError, Engine, NCElem, TensorElem};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PowerSumError {
    #[error("elimination met non-dominant leading exponent ({0}, {1})")]
    NotSymmetric(i64, i64),
    #[error("elimination did not terminate within {0} steps")]
    Runaway(usize),
}

/// Integer polynomial in `e1, e2`; keys are `(i, j)` for `e1^i e2^j`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BiPoly<I> {
    terms: BTreeMap<(u32, u32), I>,
}

impl<I: Int> Default for BiPoly<I> {
    fn default() -> Self {
        Self { terms: BTreeMap::new() }
    }
}

impl<I: Int> BiPoly<I> {
    pub fn from_terms(terms: impl IntoIterator<Item = ((u32, u32), I)>) -> Self {
        let mut out = Self::default();
        for (k, c) in terms {
            out.add_term(k, c);
        }
        out
    }

    pub fn constant(c: I) -> Self {
        Self::from_terms([((0, 0), c)])
    }

    pub fn e1() -> Self {
        Self::from_terms([((1, 0), I::one())])
    }

    pub fn e2() -> Self {
        Self::from_terms([((0, 1), I::one())])
    }

    pub fn add_term(&mut self, k: (u32, u32), c: I) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(k).or_insert_with(I::zero);
        *slot = slot.clone() + c;
        if slot.is_zero() {
            self.terms.remove(&k);
        }
    }

    pub fn coeff(&self, i: u32, j: u32) -> I {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(I::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &I)> {
        self.terms.iter()
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

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(*k, -c.clone());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::default();
        for ((a, b), c) in &self.terms {
            for ((x, y), d) in &other.terms {
                out.add_term((a + x, b + y), c.clone() * d.clone());
            }
        }
        out
    }

    /// The polynomial with `e1` and `e2` exchanged.
    pub fn swapped(&self) -> Self {
        Self::from_terms(self.terms.iter().map(|((i, j), c)| ((*j, *i), c.clone())))
    }
}

/// Prints `e1^i*e2^j` terms, higher total degree first, then higher `e1` power.
impl<I: Int> fmt::Display for BiPoly<I> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut keys: Vec<_> = self.terms.iter().collect();
        keys.sort_by(|a, b| (b.0 .0 + b.0 .1, b.0 .0).cmp(&(a.0 .0 + a.0 .1, a.0 .0)));
        for (n, ((i, j), c)) in keys.into_iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (n, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mut factors = Vec::new();
            for (name, e) in [("e1", *i), ("e2", *j)] {
                match e {
                    0 => {}
                    1 => factors.push(name.to_string()),
                    _ => factors.push(format!("{name}^{e}")),
                }
            }
            if factors.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{abs}*{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl<I: Int> fmt::Debug for BiPoly<I> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `P^(N)` via `P^(N) = e1 P^(N-1) - e2 P^(N-2) + P^(N-3)`.
pub fn power_sum_poly<I: Int>(n: u32) -> BiPoly<I> {
    let p0 = BiPoly::constant(I::from(3));
    let p1 = BiPoly::e1();
    let p2 = p1.mul(&p1).sub(&BiPoly::e2().mul(&BiPoly::constant(I::from(2))));
    let mut seq = vec![p0, p1, p2];
    while seq.len() <= n as usize {
        let k = seq.len();
        let next = BiPoly::e1().mul(&seq[k - 1]).sub(&BiPoly::e2().mul(&seq[k - 2])).add(&seq[k - 3]);
        seq.push(next);
    }
    seq.swap_remove(n as usize)
}

/// Laurent polynomial in `λ1, λ2`, standing for the ring with `λ3 = (λ1λ2)^{-1}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SymElem<I> {
    terms: BTreeMap<(i64, i64), I>,
}

impl<I: Int> Default for SymElem<I> {
    fn default() -> Self {
        Self { terms: BTreeMap::new() }
    }
}

impl<I: Int> SymElem<I> {
    pub fn from_terms(terms: impl IntoIterator<Item = ((i64, i64), I)>) -> Self {
        let mut out = Self::default();
        for (k, c) in terms {
            out.add_term(k, c);
        }
        out
    }

    pub fn one() -> Self {
        Self::from_terms([((0, 0), I::one())])
    }

    /// `λ_i`, `i ∈ {1,2,3}`.
    pub fn lambda(i: u8) -> Self {
        let k = match i {
            1 => (1, 0),
            2 => (0, 1),
            3 => (-1, -1),
            _ => panic!("lambda index {i} outside 1..=3"),
        };
        Self::from_terms([(k, I::one())])
    }

    /// `E1 = λ1 + λ2 + λ3`.
    pub fn e1() -> Self {
        Self::lambda(1).add(&Self::lambda(2)).add(&Self::lambda(3))
    }

    /// `E2 = λ1λ2 + λ1λ3 + λ2λ3`.
    pub fn e2() -> Self {
        let (a, b, c) = (Self::lambda(1), Self::lambda(2), Self::lambda(3));
        a.mul(&b).add(&a.mul(&c)).add(&b.mul(&c))
    }

    /// `λ1^N + λ2^N + λ3^N`.
    pub fn power_sum(n: u32) -> Self {
        (1..=3).fold(Self::default(), |acc, i| acc.add(&Self::lambda(i).pow(n)))
    }

    pub fn add_term(&mut self, k: (i64, i64), c: I) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(k).or_insert_with(I::zero);
        *slot = slot.clone() + c;
        if slot.is_zero() {
            self.terms.remove(&k);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(i64, i64), &I)> {
        self.terms.iter()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(*k, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(*k, -c.clone());
        }
        out
    }

    pub fn scale(&self, n: &I) -> Self {
        Self::from_terms(self.terms.iter().map(|(k, c)| (*k, c.clone() * n.clone())))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::default();
        for ((a, b), c) in &self.terms {
            for ((x, y), d) in &other.terms {
                out.add_term((a + x, b + y), c.clone() * d.clone());
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::one(), |acc, _| acc.mul(self))
    }
}

impl<I: Int> fmt::Debug for SymElem<I> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.terms.iter().map(|((a, b), c)| format!("{c}*l1^{a}*l2^{b}")).collect();
        write!(f, "{}", if parts.is_empty() { "0".into() } else { parts.join(" + ") })
    }
}

/// Monomial order on `λ1^a λ2^b` used for leading-term elimination. Both are
/// total and compatible with multiplication of Laurent monomials.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LambdaOrder {
    /// Total degree `a + b`, then `a`.
    DegLex,
    /// `a`, then `b`.
    Lex,
}

impl LambdaOrder {
    fn key(self, (a, b): (i64, i64)) -> (i64, i64) {
        match self {
            LambdaOrder::DegLex => (a + b, a),
            LambdaOrder::Lex => (a, b),
        }
    }
}

/// Rewrites a symmetric element as a polynomial in `E1, E2` by repeatedly
/// cancelling its leading term against `E1^{a-b} E2^b`.
pub fn eliminate<I: Int>(mut f: SymElem<I>, order: LambdaOrder) -> Result<BiPoly<I>, PowerSumError> {
    let (e1, e2) = (SymElem::<I>::e1(), SymElem::<I>::e2());
    let mut out = BiPoly::default();
    let limit = 10_000;
    for _ in 0..limit {
        let Some((&(a, b), c)) = f.terms.iter().max_by_key(|(k, _)| order.key(**k)) else {
            return Ok(out);
        };
        // Leading terms: E1 -> λ1, E2 -> λ1λ2, so E1^i E2^j leads with (i+j, j).
        if !(a >= b && b >= 0) {
            return Err(PowerSumError::NotSymmetric(a, b));
        }
        let c = c.clone();
        let (i, j) = ((a - b) as u32, b as u32);
        let basis = e1.pow(i).mul(&e2.pow(j));
        f = f.sub(&basis.scale(&c));
        out.add_term((i, j), c);
    }
    Err(PowerSumError::Runaway(limit))
}

/// `P^(N)` computed independently in `Λ` by elimination.
pub fn power_sum_oracle<I: Int>(n: u32) -> Result<BiPoly<I>, PowerSumError> {
    eliminate(SymElem::power_sum(n), LambdaOrder::DegLex)
}

/// Target of [`eval_bipoly`]: a ring containing the two substituted elements.
pub trait Algebra<I: Int> {
    type Elem: Clone;
    type Error;

    fn one(&self) -> Self::Elem;
    fn zero(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn scale(&self, a: &Self::Elem, n: &I) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem, Self::Error>;
    /// Rejects non-commuting arguments; commutative rings accept everything.
    fn check_commute(&self, _a: &Self::Elem, _b: &Self::Elem) -> Result<(), Self::Error> {
        Ok(())
    }
}

/// `P(a, b)`, by Horner's rule in `b` over cached powers of `a`.
pub fn eval_bipoly<I: Int, A: Algebra<I>>(p: &BiPoly<I>, a: &A::Elem, b: &A::Elem, alg: &A) -> Result<A::Elem, A::Error> {
    alg.check_commute(a, b)?;
    let max_i = p.terms.keys().map(|k| k.0).max().unwrap_or(0);
    let max_j = p.terms.keys().map(|k| k.1).max().unwrap_or(0);
    let mut a_pows = vec![alg.one()];
    for _ in 0..max_i {
        let next = alg.mul(a_pows.last().expect("nonempty"), a)?;
        a_pows.push(next);
    }
    let mut acc = alg.zero();
    for j in (0..=max_j).rev() {
        if j != max_j {
            acc = alg.mul(&acc, b)?;
        }
        for ((i, jj), c) in &p.terms {
            if *jj == j {
                acc = alg.add(&acc, &alg.scale(&a_pows[*i as usize], c));
            }
        }
    }
    Ok(acc)
}

/// The ring `Λ`.
#[derive(Clone, Copy, Debug, Default)]
pub struct SymRing;

impl<I: Int> Algebra<I> for SymRing {
    type Elem = SymElem<I>;
    type Error = std::convert::Infallible;

    fn one(&self) -> SymElem<I> {
        SymElem::one()
    }
    fn zero(&self) -> SymElem<I> {
        SymElem::default()
    }
    fn add(&self, a: &SymElem<I>, b: &SymElem<I>) -> SymElem<I> {
        a.add(b)
    }
    fn scale(&self, a: &SymElem<I>, n: &I) -> SymElem<I> {
        a.scale(n)
    }
    fn mul(&self, a: &SymElem<I>, b: &SymElem<I>) -> Result<SymElem<I>, Self::Error> {
        Ok(a.mul(b))
    }
}

/// The coefficient ring itself.
#[derive(Clone, Debug)]
pub struct Scalars<C: Coeff>(pub C::Ctx);

impl<C: Coeff> Algebra<C::Int> for Scalars<C> {
    type Elem = C;
    type Error = std::convert::Infallible;

    fn one(&self) -> C {
        C::one()
    }
    fn zero(&self) -> C {
        C::zero()
    }
    fn add(&self, a: &C, b: &C) -> C {
        let mut out = a.clone();
        out.add_assign_ref(b);
        out
    }
    fn scale(&self, a: &C, n: &C::Int) -> C {
        a.mul_ref(&C::from_int(&self.0, n.clone()))
    }
    fn mul(&self, a: &C, b: &C) -> Result<C, Self::Error> {
        Ok(a.mul_ref(b))
    }
}

impl<C: Coeff> Algebra<C::Int> for Engine<C> {
    type Elem = NCElem<C>;
    type Error = AlgebraError;

    fn one(&self) -> NCElem<C> {
        NCElem::one()
    }
    fn zero(&self) -> NCElem<C> {
        NCElem::zero()
    }
    fn add(&self, a: &NCElem<C>, b: &NCElem<C>) -> NCElem<C> {
        a.add(b)
    }
    fn scale(&self, a: &NCElem<C>, n: &C::Int) -> NCElem<C> {
        a.scale(&C::from_int(self.ctx(), n.clone()))
    }
    fn mul(&self, a: &NCElem<C>, b: &NCElem<C>) -> Result<NCElem<C>, AlgebraError> {
        Engine::mul(self, a, b)
    }
    fn check_commute(&self, a: &NCElem<C>, b: &NCElem<C>) -> Result<(), AlgebraError> {
        if self.commutator(a, b)?.is_zero() {
            Ok(())
        } else {
            Err(AlgebraError::NonCommuting)
        }
    }
}

/// The `k`-fold tensor power of the quantum group.
pub struct TensorPower<'a, C: Coeff> {
    pub engine: &'a Engine<C>,
    pub arity: usize,
}

impl<C: Coeff> Algebra<C::Int> for TensorPower<'_, C> {
    type Elem = TensorElem<C>;
    type Error = AlgebraError;

    fn one(&self) -> TensorElem<C> {
        TensorElem::one(self.arity)
    }
    fn zero(&self) -> TensorElem<C> {
        TensorElem::zero(self.arity)
    }
    fn add(&self, a: &TensorElem<C>, b: &TensorElem<C>) -> TensorElem<C> {
        let mut out = a.clone();
        out.add_scaled(b, &C::one());
        out
    }
    fn scale(&self, a: &TensorElem<C>, n: &C::Int) -> TensorElem<C> {
        let mut out = TensorElem::zero(self.arity);
        out.add_scaled(a, &C::from_int(self.engine.ctx(), n.clone()));
        out
    }
    fn mul(&self, a: &TensorElem<C>, b: &TensorElem<C>) -> Result<TensorElem<C>, AlgebraError> {
        self.engine.tensor_mul(a, b)
    }
    fn check_commute(&self, a: &TensorElem<C>, b: &TensorElem<C>) -> Result<(), AlgebraError> {
        if self.engine.tensor_mul(a, b)? == self.engine.tensor_mul(b, a)? {
            Ok(())
        } else {
            Err(AlgebraError::NonCommuting)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{qint, specialize, Generic, Laurent, RootOfUnity};
    use crate::CyclotomicZ;
    use num_bigint::BigInt;

    type P = BiPoly<BigInt>;

    fn bp(terms: &[((u32, u32), i64)]) -> P {
        P::from_terms(terms.iter().map(|&(k, c)| (k, BigInt::from(c))))
    }

    #[test]
    fn small_cases() {
        assert_eq!(power_sum_poly::<BigInt>(0), bp(&[((0, 0), 3)]));
        assert_eq!(power_sum_poly::<BigInt>(1), bp(&[((1, 0), 1)]));
        assert_eq!(power_sum_poly::<BigInt>(2), bp(&[((2, 0), 1), ((0, 1), -2)]));
        assert_eq!(power_sum_poly::<BigInt>(2).to_string(), "e1^2 - 2*e2");
        assert_eq!(power_sum_poly::<BigInt>(3).to_string(), "e1^3 - 3*e1*e2 + 3");
    }

    #[test]
    fn oracle_small_cases() {
        assert_eq!(power_sum_oracle::<BigInt>(1).unwrap(), bp(&[((1, 0), 1)]));
        assert_eq!(power_sum_oracle::<BigInt>(2).unwrap(), bp(&[((2, 0), 1), ((0, 1), -2)]));
        assert_eq!(power_sum_oracle::<BigInt>(0).unwrap(), bp(&[((0, 0), 3)]));
    }

    #[test]
    fn elimination_rejects_asymmetric_input() {
        let f = SymElem::<BigInt>::lambda(2);
        assert!(matches!(eliminate(f, LambdaOrder::DegLex), Err(PowerSumError::NotSymmetric(0, 1))));
    }

    #[test]
    fn threaded_scalar_at_order_five() {
        let p = power_sum_poly::<BigInt>(5);
        let three = qint(3).unwrap();
        let v = eval_bipoly(&p, &three, &three, &Scalars::<Laurent<BigInt>>(Generic)).unwrap();
        let ctx = RootOfUnity::new(5).unwrap();
        assert_eq!(specialize(&v, 5).unwrap(), CyclotomicZ::from_i64(&ctx, 3));
    }
}
