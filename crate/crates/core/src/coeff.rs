//! Exact coefficient rings.
//!
//! Two scalar types are provided, both generic over an integer type `I`:
//!
//! * [`Laurent`]: integer Laurent polynomials in `v = q^{1/6}`. This is the
//!   generic-`q` ground ring.
//! * [`Cyclotomic`]: residues in `Z[x]/Φ_N(x)` where `x = q^{1/3}` is a
//!   primitive `N`-th root of unity, `gcd(N, 6) = 1`. The sixth root `v` is
//!   realised as `x^{(N+1)/2}`, so `v^2 = x`.
//!
//! The algebra engines only see the [`Coeff`] trait.

use std::collections::BTreeMap;
use std::fmt::{self, Debug, Display};
use std::hash::Hash;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::sync::{Arc, OnceLock, RwLock};
use std::collections::HashMap;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoeffError {
    #[error("q-integer [n] requires n >= 0, got {0}")]
    NegativeQInt(i64),
    #[error("root-of-unity order {0} must be positive and coprime to 6")]
    BadOrder(u32),
}

/// Integer types usable as coefficients.
pub trait Int:
    Integer + Signed + Clone + Hash + Debug + Display + Send + Sync + From<i64> + 'static
{
}

impl<T> Int for T where
    T: Integer + Signed + Clone + Hash + Debug + Display + Send + Sync + From<i64> + 'static
{
}

/// Coefficient ring interface used by every algebra in the crate.
///
/// `Ctx` carries whatever runtime data the ring needs to build `v^k`
/// (nothing for Laurent polynomials, the order `N` for cyclotomic residues).
pub trait Coeff:
    Clone
    + Debug
    + Display
    + PartialEq
    + Send
    + Sync
    + Zero
    + One
    + Neg<Output = Self>
    + Sub<Output = Self>
    + 'static
{
    type Int: Int;
    type Ctx: Clone + Debug + Send + Sync + PartialEq + 'static;

    fn v_pow(ctx: &Self::Ctx, k: i64) -> Self;
    fn from_int(ctx: &Self::Ctx, n: Self::Int) -> Self;
    fn from_laurent(ctx: &Self::Ctx, l: &Laurent<Self::Int>) -> Self;
    /// A canonical Laurent representative, used for printing.
    fn to_laurent(&self) -> Laurent<Self::Int>;
    /// `Some(N)` when `q^{1/3}` is specialised to a primitive `N`-th root of unity.
    fn root_order(ctx: &Self::Ctx) -> Option<u32>;

    fn mul_ref(&self, other: &Self) -> Self;
    fn add_assign_ref(&mut self, other: &Self);
    fn sub_assign_ref(&mut self, other: &Self);

    fn q_pow(ctx: &Self::Ctx, k: i64) -> Self {
        Self::v_pow(ctx, 6 * k)
    }

    fn from_i64(ctx: &Self::Ctx, n: i64) -> Self {
        Self::from_int(ctx, Self::Int::from(n))
    }

    /// `q - q^{-1}`.
    fn q_minus_qinv(ctx: &Self::Ctx) -> Self {
        Self::q_pow(ctx, 1) - Self::q_pow(ctx, -1)
    }
}

// ---------------------------------------------------------------------------
// Laurent polynomials in v
// ---------------------------------------------------------------------------

/// Integer Laurent polynomial in `v = q^{1/6}`; keys are exponents of `v`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Laurent<I> {
    terms: BTreeMap<i64, I>,
}

impl<I> Default for Laurent<I> {
    fn default() -> Self {
        Self { terms: BTreeMap::new() }
    }
}

/// Marker context for the generic (Laurent) coefficient mode.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Generic;

impl<I: Int> Laurent<I> {
    pub fn from_terms(terms: impl IntoIterator<Item = (i64, I)>) -> Self {
        let mut out = Self::default();
        for (e, c) in terms {
            out.add_term(e, c);
        }
        out
    }

    pub fn constant(c: I) -> Self {
        Self::from_terms([(0, c)])
    }

    pub fn v_pow(k: i64) -> Self {
        Self::from_terms([(k, I::one())])
    }

    pub fn q_pow(k: i64) -> Self {
        Self::v_pow(6 * k)
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &I)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn coeff(&self, e: i64) -> I {
        self.terms.get(&e).cloned().unwrap_or_else(I::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, e: i64, c: I) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut slot) => {
                let sum = slot.get().clone() + c;
                if sum.is_zero() {
                    slot.remove();
                } else {
                    *slot.get_mut() = sum;
                }
            }
        }
    }

    /// `Some((k, c))` when the polynomial is the single term `c v^k`.
    pub fn as_monomial(&self) -> Option<(i64, &I)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(e, c)| (*e, c))
        } else {
            None
        }
    }

    /// Inverse of a unit `±v^k`.
    pub fn unit_inverse(&self) -> Option<Self> {
        let (e, c) = self.as_monomial()?;
        if c.is_one() || (-c.clone()).is_one() {
            Some(Self::from_terms([(-e, c.clone())]))
        } else {
            None
        }
    }

    /// Substitute `v = 1`.
    pub fn eval_at_one(&self) -> I {
        self.terms.values().fold(I::zero(), |acc, c| acc + c.clone())
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Balanced q-integer `[n] = q^{n-1} + q^{n-3} + ... + q^{1-n}`.
    pub fn qint(n: i64) -> Result<Self, CoeffError> {
        if n < 0 {
            return Err(CoeffError::NegativeQInt(n));
        }
        Ok(Self::from_terms(
            (0..n).map(|i| (6 * (n - 1 - 2 * i), I::one())),
        ))
    }

    pub fn map_int<J: Int>(&self, f: impl Fn(&I) -> J) -> Laurent<J> {
        Laurent::from_terms(self.terms.iter().map(|(e, c)| (*e, f(c))))
    }
}

/// Balanced q-integer over arbitrary-precision integers.
pub fn qint(n: i64) -> Result<Laurent<num_bigint::BigInt>, CoeffError> {
    Laurent::qint(n)
}

impl<I: Int> Zero for Laurent<I> {
    fn zero() -> Self {
        Self::default()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<I: Int> One for Laurent<I> {
    fn one() -> Self {
        Self::constant(I::one())
    }
}

impl<'a, I: Int> Add<&'a Laurent<I>> for &'a Laurent<I> {
    type Output = Laurent<I>;
    fn add(self, rhs: &'a Laurent<I>) -> Laurent<I> {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<I: Int> Add for Laurent<I> {
    type Output = Laurent<I>;
    fn add(mut self, rhs: Laurent<I>) -> Laurent<I> {
        self += &rhs;
        self
    }
}

impl<'a, I: Int> AddAssign<&'a Laurent<I>> for Laurent<I> {
    fn add_assign(&mut self, rhs: &'a Laurent<I>) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, c.clone());
        }
    }
}

impl<'a, I: Int> SubAssign<&'a Laurent<I>> for Laurent<I> {
    fn sub_assign(&mut self, rhs: &'a Laurent<I>) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, -c.clone());
        }
    }
}

impl<'a, I: Int> Sub<&'a Laurent<I>> for &'a Laurent<I> {
    type Output = Laurent<I>;
    fn sub(self, rhs: &'a Laurent<I>) -> Laurent<I> {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl<I: Int> Sub for Laurent<I> {
    type Output = Laurent<I>;
    fn sub(mut self, rhs: Laurent<I>) -> Laurent<I> {
        self -= &rhs;
        self
    }
}

impl<I: Int> Neg for Laurent<I> {
    type Output = Laurent<I>;
    fn neg(self) -> Laurent<I> {
        Laurent {
            terms: self.terms.into_iter().map(|(e, c)| (e, -c)).collect(),
        }
    }
}

impl<'a, I: Int> Mul<&'a Laurent<I>> for &'a Laurent<I> {
    type Output = Laurent<I>;
    fn mul(self, rhs: &'a Laurent<I>) -> Laurent<I> {
        let mut out = Laurent::default();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(e1 + e2, c1.clone() * c2.clone());
            }
        }
        out
    }
}

impl<I: Int> Mul for Laurent<I> {
    type Output = Laurent<I>;
    fn mul(self, rhs: Laurent<I>) -> Laurent<I> {
        &self * &rhs
    }
}

impl<I: Int> Debug for Laurent<I> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        Display::fmt(self, f)
    }
}

/// Prints `v`-notation with descending exponents, e.g. `v^12 + 1 + v^-12`.
impl<I: Int> Display for Laurent<I> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if *e == 0 {
                write!(f, "{abs}")?;
                continue;
            }
            if !abs.is_one() {
                write!(f, "{abs}*")?;
            }
            if *e == 1 {
                write!(f, "v")?;
            } else {
                write!(f, "v^{e}")?;
            }
        }
        Ok(())
    }
}

impl<I: Int> Coeff for Laurent<I> {
    type Int = I;
    type Ctx = Generic;

    fn v_pow(_: &Generic, k: i64) -> Self {
        Laurent::v_pow(k)
    }
    fn from_int(_: &Generic, n: I) -> Self {
        Laurent::constant(n)
    }
    fn from_laurent(_: &Generic, l: &Laurent<I>) -> Self {
        l.clone()
    }
    fn to_laurent(&self) -> Laurent<I> {
        self.clone()
    }
    fn root_order(_: &Generic) -> Option<u32> {
        None
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn add_assign_ref(&mut self, other: &Self) {
        *self += other;
    }
    fn sub_assign_ref(&mut self, other: &Self) {
        *self -= other;
    }
}

// ---------------------------------------------------------------------------
// Cyclotomic polynomials and residues
// ---------------------------------------------------------------------------

/// Coefficients (lowest degree first) of the `n`-th cyclotomic polynomial,
/// obtained by dividing `x^n - 1` by `Φ_d` for every proper divisor `d`.
pub fn cyclotomic_poly<I: Int>(n: u32) -> Vec<I> {
    assert!(n >= 1, "cyclotomic_poly needs n >= 1");
    let mut num: Vec<I> = vec![I::zero(); n as usize + 1];
    num[0] = -I::one();
    num[n as usize] = I::one();
    for d in 1..n {
        if n % d == 0 {
            let den = cyclotomic_poly::<I>(d);
            num = exact_div_monic(&num, &den);
        }
    }
    num
}

fn exact_div_monic<I: Int>(num: &[I], den: &[I]) -> Vec<I> {
    let dn = den.len() - 1;
    let mut rem = num.to_vec();
    let qlen = num.len() - dn;
    let mut quo = vec![I::zero(); qlen];
    for i in (0..qlen).rev() {
        let c = rem[i + dn].clone();
        if c.is_zero() {
            continue;
        }
        for (j, dj) in den.iter().enumerate() {
            rem[i + j] = rem[i + j].clone() - c.clone() * dj.clone();
        }
        quo[i] = c;
    }
    debug_assert!(rem.iter().all(|c| c.is_zero()), "inexact cyclotomic division");
    quo
}

fn phi_table(n: u32) -> Arc<Vec<i64>> {
    static TABLE: OnceLock<RwLock<HashMap<u32, Arc<Vec<i64>>>>> = OnceLock::new();
    let table = TABLE.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(p) = table.read().expect("phi table poisoned").get(&n) {
        return p.clone();
    }
    let p = Arc::new(cyclotomic_poly::<i64>(n));
    table
        .write()
        .expect("phi table poisoned")
        .insert(n, p.clone());
    p
}

pub fn order_is_valid(n: u32) -> bool {
    n >= 1 && n.gcd(&6) == 1
}

/// Residue class in `Z[x]/Φ_N(x)`, with `x = q^{1/3}`.
///
/// `order == 0` marks an integer constant not yet tied to a specific ring;
/// it adopts the order of whatever it is combined with. This is what
/// `Zero::zero()` and `One::one()` produce.
#[derive(Clone)]
pub struct Cyclotomic<I> {
    order: u32,
    residue: Vec<I>,
}

/// Context for the cyclotomic coefficient mode.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RootOfUnity {
    order: u32,
}

impl RootOfUnity {
    pub fn new(order: u32) -> Result<Self, CoeffError> {
        if order_is_valid(order) {
            Ok(Self { order })
        } else {
            Err(CoeffError::BadOrder(order))
        }
    }

    pub fn order(&self) -> u32 {
        self.order
    }
}

impl<I: Int> Cyclotomic<I> {
    /// Builds a residue from arbitrary polynomial coefficients in `x`.
    pub fn from_poly(order: u32, coeffs: Vec<I>) -> Self {
        let mut out = Self { order, residue: coeffs };
        out.reduce();
        out
    }

    /// `x^k` in the ring of the given order.
    pub fn x_pow(order: u32, k: i64) -> Self {
        let e = k.rem_euclid(order as i64) as usize;
        let mut coeffs = vec![I::zero(); e + 1];
        coeffs[e] = I::one();
        Self::from_poly(order, coeffs)
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn residue(&self) -> &[I] {
        &self.residue
    }

    fn reduce(&mut self) {
        if self.order > 0 {
            let phi = phi_table(self.order);
            let deg = phi.len() - 1;
            if self.residue.len() > deg {
                for i in (deg..self.residue.len()).rev() {
                    let c = std::mem::replace(&mut self.residue[i], I::zero());
                    if c.is_zero() {
                        continue;
                    }
                    for (j, pj) in phi.iter().enumerate().take(deg) {
                        if *pj != 0 {
                            let t = c.clone() * I::from(*pj);
                            self.residue[i - deg + j] = self.residue[i - deg + j].clone() - t;
                        }
                    }
                }
            }
        }
        while self.residue.last().is_some_and(|c| c.is_zero()) {
            self.residue.pop();
        }
    }

    fn joint_order(&self, other: &Self) -> u32 {
        match (self.order, other.order) {
            (0, o) | (o, 0) => o,
            (a, b) => {
                assert_eq!(a, b, "mixing cyclotomic rings of different order");
                a
            }
        }
    }
}

/// Specialises a Laurent polynomial in `v` to the order-`N` cyclotomic ring
/// via `v ↦ x^{(N+1)/2}`.
pub fn specialize<I: Int>(s: &Laurent<I>, order: u32) -> Result<Cyclotomic<I>, CoeffError> {
    let ctx = RootOfUnity::new(order)?;
    Ok(Cyclotomic::from_laurent(&ctx, s))
}

impl<I: Int> PartialEq for Cyclotomic<I> {
    fn eq(&self, other: &Self) -> bool {
        if self.order != 0 && other.order != 0 && self.order != other.order {
            return false;
        }
        self.residue == other.residue
    }
}

impl<I: Int> Eq for Cyclotomic<I> {}

impl<I: Int> Hash for Cyclotomic<I> {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.residue.hash(state);
    }
}

impl<I: Int> Zero for Cyclotomic<I> {
    fn zero() -> Self {
        Self { order: 0, residue: Vec::new() }
    }
    fn is_zero(&self) -> bool {
        self.residue.is_empty()
    }
}

impl<I: Int> One for Cyclotomic<I> {
    fn one() -> Self {
        Self { order: 0, residue: vec![I::one()] }
    }
}

impl<I: Int> Add for Cyclotomic<I> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        self.add_assign_ref(&rhs);
        self
    }
}

impl<I: Int> Sub for Cyclotomic<I> {
    type Output = Self;
    fn sub(mut self, rhs: Self) -> Self {
        self.sub_assign_ref(&rhs);
        self
    }
}

impl<I: Int> Neg for Cyclotomic<I> {
    type Output = Self;
    fn neg(self) -> Self {
        Self {
            order: self.order,
            residue: self.residue.into_iter().map(|c| -c).collect(),
        }
    }
}

impl<I: Int> Mul for Cyclotomic<I> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.mul_ref(&rhs)
    }
}

impl<I: Int> Debug for Cyclotomic<I> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]_{}", self.to_laurent(), self.order)
    }
}

impl<I: Int> Display for Cyclotomic<I> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        Display::fmt(&self.to_laurent(), f)
    }
}

impl<I: Int> Coeff for Cyclotomic<I> {
    type Int = I;
    type Ctx = RootOfUnity;

    fn v_pow(ctx: &RootOfUnity, k: i64) -> Self {
        let half = (ctx.order as i64 + 1) / 2;
        Self::x_pow(ctx.order, k * half)
    }

    fn from_int(ctx: &RootOfUnity, n: I) -> Self {
        Self::from_poly(ctx.order, vec![n])
    }

    fn from_laurent(ctx: &RootOfUnity, l: &Laurent<I>) -> Self {
        let n = ctx.order as i64;
        let half = (n + 1) / 2;
        let mut coeffs = vec![I::zero(); ctx.order as usize];
        for (e, c) in l.terms() {
            let idx = (e * half).rem_euclid(n) as usize;
            coeffs[idx] = coeffs[idx].clone() + c.clone();
        }
        Self::from_poly(ctx.order, coeffs)
    }

    /// Residue `Σ c_i x^i` printed back as `Σ c_i v^{2i}`.
    fn to_laurent(&self) -> Laurent<I> {
        Laurent::from_terms(
            self.residue
                .iter()
                .enumerate()
                .map(|(i, c)| (2 * i as i64, c.clone())),
        )
    }

    fn root_order(ctx: &RootOfUnity) -> Option<u32> {
        Some(ctx.order)
    }

    fn mul_ref(&self, other: &Self) -> Self {
        let order = self.joint_order(other);
        if self.residue.is_empty() || other.residue.is_empty() {
            return Self { order, residue: Vec::new() };
        }
        let mut prod = vec![I::zero(); self.residue.len() + other.residue.len() - 1];
        for (i, a) in self.residue.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.residue.iter().enumerate() {
                prod[i + j] = prod[i + j].clone() + a.clone() * b.clone();
            }
        }
        Self::from_poly(order, prod)
    }

    fn add_assign_ref(&mut self, other: &Self) {
        self.order = self.joint_order(other);
        if self.residue.len() < other.residue.len() {
            self.residue.resize(other.residue.len(), I::zero());
        }
        for (a, b) in self.residue.iter_mut().zip(&other.residue) {
            *a = a.clone() + b.clone();
        }
        self.reduce();
    }

    fn sub_assign_ref(&mut self, other: &Self) {
        self.order = self.joint_order(other);
        if self.residue.len() < other.residue.len() {
            self.residue.resize(other.residue.len(), I::zero());
        }
        for (a, b) in self.residue.iter_mut().zip(&other.residue) {
            *a = a.clone() - b.clone();
        }
        self.reduce();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use proptest::prelude::*;

    type L = Laurent<BigInt>;
    type C = Cyclotomic<BigInt>;

    fn l(terms: &[(i64, i64)]) -> L {
        L::from_terms(terms.iter().map(|&(e, c)| (e, BigInt::from(c))))
    }

    fn c(order: u32, coeffs: &[i64]) -> C {
        C::from_poly(order, coeffs.iter().map(|&x| BigInt::from(x)).collect())
    }

    #[test]
    fn qint_values() {
        assert_eq!(qint(3).unwrap(), l(&[(12, 1), (0, 1), (-12, 1)]));
        assert_eq!(qint(1).unwrap(), L::one());
        assert_eq!(qint(2).unwrap(), l(&[(6, 1), (-6, 1)]));
        assert_eq!(qint(0).unwrap(), L::zero());
        assert_eq!(qint(-1), Err(CoeffError::NegativeQInt(-1)));
        for n in 0..12 {
            assert_eq!(qint(n).unwrap().eval_at_one(), BigInt::from(n));
        }
    }

    #[test]
    fn cyclotomic_polys() {
        assert_eq!(cyclotomic_poly::<i64>(1), vec![-1, 1]);
        assert_eq!(cyclotomic_poly::<i64>(5), vec![1, 1, 1, 1, 1]);
        assert_eq!(cyclotomic_poly::<i64>(7), vec![1; 7]);
        assert_eq!(cyclotomic_poly::<i64>(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_poly::<i64>(12), vec![1, 0, -1, 0, 1]);
        // Φ_105 is the first with a coefficient outside {-1, 0, 1}.
        assert!(cyclotomic_poly::<i64>(105).contains(&-2));
    }

    #[test]
    fn specialize_examples() {
        for k in -3..=3 {
            assert_eq!(specialize(&L::v_pow(30 * k), 5).unwrap(), C::one());
        }
        // q^2 + 1 + q^{-2} at order 5: x^6 + 1 + x^{-6} = x + 1 + x^4
        assert_eq!(specialize(&qint(3).unwrap(), 5).unwrap(), c(5, &[1, 1, 0, 0, 1]));
        assert_eq!(specialize(&L::v_pow(1), 5).unwrap(), c(5, &[0, 0, 0, 1]));
        assert_eq!(specialize(&L::one(), 6), Err(CoeffError::BadOrder(6)));
        assert_eq!(specialize(&L::one(), 9), Err(CoeffError::BadOrder(9)));
    }

    #[test]
    fn primitivity() {
        for n in [5u32, 7, 11, 13] {
            let ctx = RootOfUnity::new(n).unwrap();
            let x = C::v_pow(&ctx, 2);
            let mut acc = C::one();
            for k in 1..n {
                acc = acc.mul_ref(&x);
                assert_ne!(acc, C::one(), "x^{k} = 1 at order {n}");
            }
            assert_eq!(acc.mul_ref(&x), C::one());
            assert_eq!(C::q_pow(&ctx, n as i64), C::one());
        }
    }

    #[test]
    fn order_one_is_q_equals_one() {
        let ctx = RootOfUnity::new(1).unwrap();
        let s = l(&[(7, 2), (-5, -3), (0, 4)]);
        assert_eq!(C::from_laurent(&ctx, &s), C::from_i64(&ctx, 3));
    }

    #[test]
    fn display_matches_v_notation() {
        assert_eq!(qint(3).unwrap().to_string(), "v^12 + 1 + v^-12");
        assert_eq!(l(&[(1, -1), (-6, 2)]).to_string(), "-v + 2*v^-6");
        assert_eq!(L::zero().to_string(), "0");
        assert_eq!(l(&[(0, -5)]).to_string(), "-5");
    }

    fn arb_laurent() -> impl Strategy<Value = L> {
        prop::collection::vec((-40i64..40, -20i64..20), 0..8).prop_map(|ts| l(&ts))
    }

    proptest! {
        #[test]
        fn specialize_is_ring_hom(a in arb_laurent(), b in arb_laurent(), cc in arb_laurent(),
                                  n in prop::sample::select(vec![1u32, 5, 7, 11, 13])) {
            let lhs = specialize(&(&(&a * &b) + &cc), n).unwrap();
            let rhs = specialize(&a, n).unwrap().mul_ref(&specialize(&b, n).unwrap())
                + specialize(&cc, n).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn laurent_ring_axioms(a in arb_laurent(), b in arb_laurent(), cc in arb_laurent()) {
            prop_assert_eq!(&(&a * &b) * &cc, &a * &(&b * &cc));
            prop_assert_eq!(&a * &(&b + &cc), &(&a * &b) + &(&a * &cc));
            prop_assert_eq!(&a - &a, L::zero());
        }
    }
}
