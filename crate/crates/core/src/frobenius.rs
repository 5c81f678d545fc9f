//! Frobenius maps at a root of unity and the suite certifying them.
//!
//! The bigon map sends the classical coordinate `x_ij` of `SL_3` to the
//! `N`-th power `X_ij^N`. Its domain is kept in its own commutative type
//! [`ClassicalElem`] so that classical signs (`-1`, never `-q`) cannot leak
//! into quantum expressions.

use std::collections::BTreeMap;
use std::fmt;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;
use rustc_hash::FxHashMap;
use serde::Serialize;

use crate::bigon_split::split_annulus;
use crate::coeff::{specialize, Coeff, Int, Laurent, RootOfUnity};
use crate::powersum::{eval_bipoly, power_sum_poly, SymElem};
use crate::qmatrix::{AlgebraError, Engine, Gen, Mono, NCElem, TensorElem, WordElem};
use crate::webs::{eval_threaded_unknot, AnnulusElem};
use crate::CyclotomicZ;

/// Polynomial in the nine commuting coordinates `x_ij`, reduced modulo
/// `det - 1` by eliminating the leading monomial `x11·x22·x33`.
#[derive(Clone, PartialEq, Eq)]
pub struct ClassicalElem<I> {
    terms: FxHashMap<Mono, I>,
}

impl<I: Int> Default for ClassicalElem<I> {
    fn default() -> Self {
        Self { terms: FxHashMap::default() }
    }
}

fn det_lead() -> Mono {
    Mono::from_exponents([1, 0, 0, 0, 1, 0, 0, 0, 1])
}

/// Signed permutation terms of the classical determinant.
fn det_terms<I: Int>() -> Vec<(Mono, I)> {
    const PERMS: [([u8; 3], i64); 6] =
        [([1, 2, 3], 1), ([1, 3, 2], -1), ([2, 1, 3], -1), ([2, 3, 1], 1), ([3, 1, 2], 1), ([3, 2, 1], -1)];
    PERMS
        .iter()
        .map(|(p, s)| {
            let word: Vec<Gen> = (0..3).map(|r| Gen::at(r as u8 + 1, p[r])).collect();
            (Mono::content_of(&word), I::from(*s))
        })
        .collect()
}

impl<I: Int> ClassicalElem<I> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_terms([(Mono::ONE, I::one())])
    }

    pub fn var(row: u8, col: u8) -> Result<Self, AlgebraError> {
        Ok(Self::from_terms([(Mono::gen(Gen::new(row, col)?), I::one())]))
    }

    /// Sums the given terms and reduces.
    pub fn from_terms(terms: impl IntoIterator<Item = (Mono, I)>) -> Self {
        let lead = det_lead();
        // lead = lead - (det - 1)
        let replacement: Vec<(Mono, I)> = det_terms::<I>()
            .into_iter()
            .filter(|(m, _)| *m != lead)
            .map(|(m, c)| (m, -c))
            .chain([(Mono::ONE, I::one())])
            .collect();
        let mut out = Self::zero();
        let mut stack: Vec<(Mono, I)> = terms.into_iter().collect();
        while let Some((m, c)) = stack.pop() {
            if c.is_zero() {
                continue;
            }
            if lead.divides(&m) {
                let rest = m.quotient(&lead);
                stack.extend(replacement.iter().map(|(r, d)| (r.merge(&rest), d.clone() * c.clone())));
            } else {
                out.add_reduced(m, c);
            }
        }
        out
    }

    fn add_reduced(&mut self, m: Mono, c: I) {
        let slot = self.terms.entry(m).or_insert_with(I::zero);
        *slot = slot.clone() + c;
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &I)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Mono) -> I {
        self.terms.get(m).cloned().unwrap_or_else(I::zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_reduced(*m, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-I::one()))
    }

    pub fn scale(&self, n: &I) -> Self {
        Self::from_terms(self.terms.iter().map(|(m, c)| (*m, c.clone() * n.clone())))
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .flat_map(|(a, c)| other.terms.iter().map(move |(b, d)| (a.merge(b), c.clone() * d.clone()))),
        )
    }

    /// The determinant, which reduces to 1.
    pub fn det() -> Self {
        Self::from_terms(det_terms())
    }

    /// `x_ac·x_bd - x_ad·x_bc`.
    fn minor(rows: [u8; 2], cols: [u8; 2]) -> Self {
        let [a, b] = rows;
        let [c, d] = cols;
        let m = |r1, c1, r2, c2| Mono::content_of(&[Gen::at(r1, c1), Gen::at(r2, c2)]);
        Self::from_terms([(m(a, c, b, d), I::one()), (m(a, d, b, c), -I::one())])
    }

    /// Trace.
    pub fn sigma1() -> Self {
        Self::from_terms((1..=3).map(|i| (Mono::gen(Gen::at(i, i)), I::one())))
    }

    /// Sum of principal 2x2 minors.
    pub fn sigma2() -> Self {
        Self::minor([1, 2], [1, 2]).add(&Self::minor([1, 3], [1, 3])).add(&Self::minor([2, 3], [2, 3]))
    }

    /// Classical antipode `x_ij ↦ (-1)^{i+j}·minor(delete row j, column i)`.
    pub fn antipode_var(row: u8, col: u8) -> Result<Self, AlgebraError> {
        Gen::new(row, col)?;
        let keep = |k: u8| -> [u8; 2] {
            let v: Vec<u8> = (1..=3).filter(|&x| x != k).collect();
            [v[0], v[1]]
        };
        let m = Self::minor(keep(col), keep(row));
        Ok(if (row + col) % 2 == 0 { m } else { m.scale(&-I::one()) })
    }

    /// The classical counterpart of a reversed arc: `S(x_{(4-b)(4-a)})`.
    pub fn reversed_arc(a: u8, b: u8) -> Result<Self, AlgebraError> {
        Gen::new(a, b)?;
        Self::antipode_var(4 - b, 4 - a)
    }

    fn sorted_terms(&self) -> Vec<(&Mono, &I)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| a.0.print_cmp(b.0));
        v
    }
}

impl<I: Int> fmt::Display for ClassicalElem<I> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.sorted_terms().into_iter().enumerate() {
            let word: Vec<String> =
                m.word().iter().map(|g| format!("x{}{}", g.row(), g.col())).collect();
            crate::qmatrix::write_term(f, &Laurent::constant(c.clone()), &word.join("*"), i == 0)?;
        }
        Ok(())
    }
}

impl<I: Int> fmt::Debug for ClassicalElem<I> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn require_root<C: Coeff>(engine: &Engine<C>) -> Result<u32, AlgebraError> {
    C::root_order(engine.ctx()).ok_or(AlgebraError::NeedsRootOfUnity)
}

/// `∏ X_g^{N·e_g}` in row-major factor order.
fn power_image<C: Coeff>(engine: &Engine<C>, m: &Mono, n: u32) -> Result<NCElem<C>, AlgebraError> {
    let mut acc = NCElem::one();
    for g in Gen::ALL {
        let e = m.exponent(g) as u32 * n;
        if e > 0 {
            let p = NCElem::monomial(Mono::gen_pow(g, e as u16), C::one());
            acc = engine.mul(&acc, &p)?;
        }
    }
    Ok(acc)
}

fn classical_image<C: Coeff>(engine: &Engine<C>, e: &ClassicalElem<C::Int>, n: u32) -> Result<NCElem<C>, AlgebraError> {
    let mut out = NCElem::zero();
    for (m, c) in e.terms() {
        out.add_scaled(&power_image(engine, m, n)?, &C::from_int(engine.ctx(), c.clone()));
    }
    Ok(out)
}

/// The bigon Frobenius map. Only defined at a root of unity, whose order is
/// the exponent.
pub fn frobenius_bigon<C: Coeff>(engine: &Engine<C>, e: &ClassicalElem<C::Int>) -> Result<NCElem<C>, AlgebraError> {
    let n = require_root(engine)?;
    classical_image(engine, e, n)
}

/// Image of an unreduced word combination in commuting variables, each
/// letter `x_g` sent to `X_g^N` in the order written. Used to push classical
/// relations through the map before reducing them.
pub fn frobenius_free<C: Coeff>(engine: &Engine<C>, e: &WordElem<C>) -> Result<NCElem<C>, AlgebraError> {
    let n = require_root(engine)?;
    let mut out = NCElem::zero();
    for (w, c) in e.iter() {
        let mut acc = NCElem::one();
        for g in w {
            acc = engine.mul(&acc, &NCElem::monomial(Mono::gen_pow(*g, n as u16), C::one()))?;
        }
        out.add_scaled(&acc, c);
    }
    Ok(out)
}

/// The annulus Frobenius map `l+ ↦ P(l+, l-)`, `l- ↦ P(l-, l+)`.
pub fn frobenius_annulus(e: &AnnulusElem, n: u32) -> AnnulusElem {
    let p = power_sum_poly::<BigInt>(n);
    let plus = AnnulusElem::from_bipoly(&p);
    let minus = AnnulusElem::from_bipoly(&p.swapped());
    e.substitute(&plus, &minus)
}

/// Image of the diagonalization map, `λ3 = (λ1·λ2)^{-1}` eliminated, with
/// coefficients in the ground ring.
#[derive(Clone, PartialEq)]
pub struct DiagonalElem<C> {
    terms: BTreeMap<(i64, i64), C>,
}

impl<C: Coeff> Default for DiagonalElem<C> {
    fn default() -> Self {
        Self { terms: BTreeMap::new() }
    }
}

impl<C: Coeff> DiagonalElem<C> {
    fn add_term(&mut self, k: (i64, i64), c: &C) {
        let slot = self.terms.entry(k).or_insert_with(C::zero);
        slot.add_assign_ref(c);
        if slot.is_zero() {
            self.terms.remove(&k);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The symmetric-function view, when every coefficient is an integer.
    pub fn to_sym(&self) -> Option<SymElem<C::Int>> {
        let mut terms = Vec::new();
        for (k, c) in &self.terms {
            let l = c.to_laurent();
            match l.as_monomial() {
                Some((0, n)) => terms.push((*k, n.clone())),
                _ if l.is_zero() => {}
                _ => return None,
            }
        }
        Some(SymElem::from_terms(terms))
    }
}

impl<C: Coeff> fmt::Debug for DiagonalElem<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter()).finish()
    }
}

fn diagonal_key(w: impl IntoIterator<Item = Gen>) -> Option<(i64, i64)> {
    let mut e = [0i64; 3];
    for g in w {
        if !g.is_diagonal() {
            return None;
        }
        e[g.row() as usize - 1] += 1;
    }
    Some((e[0] - e[2], e[1] - e[2]))
}

/// `X_ij ↦ δ_ij·λ_i` on normal forms.
pub fn diagonalize<C: Coeff>(e: &NCElem<C>) -> DiagonalElem<C> {
    let mut out = DiagonalElem::default();
    for (m, c) in e.iter() {
        if let Some(k) = diagonal_key(m.word()) {
            out.add_term(k, c);
        }
    }
    out
}

/// The same map on raw words, so relations can be checked before reduction.
pub fn diagonalize_words<C: Coeff>(e: &WordElem<C>) -> DiagonalElem<C> {
    let mut out = DiagonalElem::default();
    for (w, c) in e.iter() {
        if let Some(k) = diagonal_key(w.iter().copied()) {
            out.add_term(k, c);
        }
    }
    out
}

/// Identifier of one certification check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckId {
    CancellationTrace,
    CancellationMinors,
    Centrality,
    Coalgebra,
    WellDefined,
    AnnulusSquare,
    ThreadedUnknot,
}

impl CheckId {
    pub const ALL: [CheckId; 7] = [
        CheckId::CancellationTrace,
        CheckId::CancellationMinors,
        CheckId::Centrality,
        CheckId::Coalgebra,
        CheckId::WellDefined,
        CheckId::AnnulusSquare,
        CheckId::ThreadedUnknot,
    ];

    /// Single-letter label `a` to `g`.
    pub fn letter(self) -> char {
        (b'a' + Self::ALL.iter().position(|c| *c == self).expect("listed") as u8) as char
    }

    pub fn from_letter(c: char) -> Option<Self> {
        let i = (c as u32).checked_sub('a' as u32)? as usize;
        Self::ALL.get(i).copied()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    Error,
}

impl fmt::Display for CheckStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CheckStatus::Pass => "pass",
            CheckStatus::Fail => "fail",
            CheckStatus::Error => "error",
        })
    }
}

impl fmt::Display for CheckId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CheckId::CancellationTrace => "cancellation-trace",
            CheckId::CancellationMinors => "cancellation-minors",
            CheckId::Centrality => "centrality",
            CheckId::Coalgebra => "coalgebra",
            CheckId::WellDefined => "well-defined",
            CheckId::AnnulusSquare => "annulus-square",
            CheckId::ThreadedUnknot => "threaded-unknot",
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckOutcome {
    pub id: CheckId,
    pub label: char,
    pub status: CheckStatus,
    /// Terms left in the residual(s); 0 on success.
    pub residual_terms: usize,
    pub wall_ms: u128,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

pub const REPORT_SCHEMA: &str = "sl3-verify/1";

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub schema: &'static str,
    pub order: u32,
    pub status: CheckStatus,
    pub checks: Vec<CheckOutcome>,
    pub wall_ms: u128,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.status == CheckStatus::Pass
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub checks: Vec<CheckId>,
    /// Also split the annulus along two cuts. This dominates the suite's
    /// runtime: about a minute at order 5 with optimizations.
    pub two_cuts: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self { checks: CheckId::ALL.to_vec(), two_cuts: false }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum VerifyError {
    #[error(transparent)]
    Coeff(#[from] crate::coeff::CoeffError),
}

/// Residual of `P(σ1, σ2) - Σ X_ii^N`. Works in any coefficient mode so the
/// generic ring can serve as a negative control.
pub fn trace_cancellation_residual<C: Coeff<Int = BigInt>>(engine: &Engine<C>, n: u32) -> Result<NCElem<C>, AlgebraError> {
    let lhs = eval_bipoly(&power_sum_poly(n), &engine.sigma(1)?, &engine.sigma(2)?, engine)?;
    Ok(lhs.sub(&classical_image(engine, &ClassicalElem::sigma1(), n)?))
}

/// Residual of `P(σ2, σ1)` against the image of the classical `σ2`.
pub fn minor_cancellation_residual<C: Coeff<Int = BigInt>>(engine: &Engine<C>, n: u32) -> Result<NCElem<C>, AlgebraError> {
    let lhs = eval_bipoly(&power_sum_poly(n), &engine.sigma(2)?, &engine.sigma(1)?, engine)?;
    Ok(lhs.sub(&classical_image(engine, &ClassicalElem::sigma2(), n)?))
}

/// Nonzero commutators `[X_g^N, X_h]`, as total residual term count.
pub fn centrality_residual<C: Coeff>(engine: &Engine<C>, n: u32) -> Result<usize, AlgebraError> {
    let mut terms = 0;
    for g in Gen::ALL {
        let p = NCElem::monomial(Mono::gen_pow(g, n as u16), C::one());
        for h in Gen::ALL {
            terms += engine.commutator(&p, &engine.gen(h))?.len();
        }
    }
    Ok(terms)
}

pub fn coalgebra_residual<C: Coeff>(engine: &Engine<C>, n: u32) -> Result<usize, AlgebraError> {
    let pow = |i: u8, j: u8| NCElem::monomial(Mono::gen_pow(Gen::at(i, j), n as u16), C::one());
    let mut terms = 0;
    for g in Gen::ALL {
        let lhs = engine.coproduct(&pow(g.row(), g.col()))?;
        let mut rhs = TensorElem::zero(2);
        for r in 1..=3 {
            rhs.add_scaled(&TensorElem::pure(&[pow(g.row(), r), pow(r, g.col())]), &C::one());
        }
        terms += lhs.sub(&rhs).len();
    }
    Ok(terms)
}

/// The classical relations as word combinations: all commutators and
/// `det - 1`.
pub fn classical_relations<C: Coeff>(ctx: &C::Ctx) -> Vec<WordElem<C>> {
    let one = C::one();
    let mut out = Vec::new();
    for a in Gen::ALL {
        for b in Gen::ALL {
            if a.index() < b.index() {
                out.push(WordElem::from_terms([(vec![a, b], one.clone()), (vec![b, a], -one.clone())]));
            }
        }
    }
    let mut det: Vec<(Vec<Gen>, C)> = det_terms::<C::Int>()
        .into_iter()
        .map(|(m, c)| (m.word(), C::from_int(ctx, c)))
        .collect();
    det.push((Vec::new(), -one));
    out.push(WordElem::from_terms(det));
    out
}

pub fn well_defined_residual<C: Coeff>(engine: &Engine<C>) -> Result<usize, AlgebraError> {
    let mut terms = 0;
    for r in classical_relations::<C>(engine.ctx()) {
        terms += frobenius_free(engine, &r)?.len();
    }
    Ok(terms)
}

/// `Σ A_{i i1} ⊗ ... ⊗ A_{i_{k-1} i}` with classical entries pushed through
/// the bigon map.
fn frobenius_state_sum<C: Coeff<Int = BigInt>>(
    engine: &Engine<C>,
    k: usize,
    entry: impl Fn(u8, u8) -> ClassicalElem<BigInt>,
) -> Result<TensorElem<C>, AlgebraError> {
    let mut images = BTreeMap::new();
    for i in 1..=3 {
        for j in 1..=3 {
            images.insert((i, j), frobenius_bigon(engine, &entry(i, j))?);
        }
    }
    let mut out = TensorElem::zero(k);
    for code in 0..3usize.pow(k as u32) {
        let mut path: Vec<u8> = (0..k).map(|t| (code / 3usize.pow(t as u32) % 3) as u8 + 1).collect();
        path.push(path[0]);
        let factors: Vec<NCElem<C>> = path.windows(2).map(|p| images[&(p[0], p[1])].clone()).collect();
        out.add_scaled(&TensorElem::pure(&factors), &C::one());
    }
    Ok(out)
}

/// Residual terms of the annulus square for both core orientations.
pub fn annulus_square_residual<C: Coeff<Int = BigInt>>(engine: &Engine<C>, k: usize) -> Result<usize, AlgebraError> {
    let n = require_root(engine)?;
    let plus = split_annulus(engine, k, &frobenius_annulus(&AnnulusElem::l_plus(), n))?;
    let plus_expected = frobenius_state_sum(engine, k, |i, j| ClassicalElem::var(i, j).expect("in range"))?;
    let minus = split_annulus(engine, k, &frobenius_annulus(&AnnulusElem::l_minus(), n))?;
    let minus_expected =
        frobenius_state_sum(engine, k, |a, b| ClassicalElem::reversed_arc(a, b).expect("in range"))?;
    Ok(plus.sub(&plus_expected).len() + minus.sub(&minus_expected).len())
}

fn threaded_unknot_residual(n: u32) -> Result<usize, crate::coeff::CoeffError> {
    let value = specialize(&eval_threaded_unknot(&power_sum_poly(n)), n)?;
    let three = specialize(&Laurent::constant(BigInt::from(3)), n)?;
    Ok(usize::from(value != three))
}

fn run_check(engine: &Engine<CyclotomicZ>, n: u32, id: CheckId, two_cuts: bool) -> CheckOutcome {
    let start = Instant::now();
    let result: Result<usize, String> = match id {
        CheckId::CancellationTrace => trace_cancellation_residual(engine, n).map(|r| r.len()).map_err(|e| e.to_string()),
        CheckId::CancellationMinors => {
            minor_cancellation_residual(engine, n).map(|r| r.len()).map_err(|e| e.to_string())
        }
        CheckId::Centrality => centrality_residual(engine, n).map_err(|e| e.to_string()),
        CheckId::Coalgebra => coalgebra_residual(engine, n).map_err(|e| e.to_string()),
        CheckId::WellDefined => well_defined_residual(engine).map_err(|e| e.to_string()),
        CheckId::AnnulusSquare => {
            let cuts: &[usize] = if two_cuts { &[1, 2] } else { &[1] };
            cuts.iter()
                .map(|&k| annulus_square_residual(engine, k))
                .sum::<Result<usize, _>>()
                .map_err(|e| e.to_string())
        }
        CheckId::ThreadedUnknot => threaded_unknot_residual(n).map_err(|e| e.to_string()),
    };
    let (status, residual_terms, detail) = match result {
        Ok(0) => (CheckStatus::Pass, 0, None),
        Ok(r) => (CheckStatus::Fail, r, None),
        Err(e) => (CheckStatus::Error, 0, Some(e)),
    };
    let detail = detail.or_else(|| (id == CheckId::AnnulusSquare && !two_cuts).then(|| "one cut only".to_string()));
    CheckOutcome { id, label: id.letter(), status, residual_terms, wall_ms: start.elapsed().as_millis(), detail }
}

/// Runs the selected checks concurrently at the primitive root of unity of
/// order `n`.
pub fn verify_suite(n: u32, options: &VerifyOptions) -> Result<VerifyReport, VerifyError> {
    let start = Instant::now();
    let engine = Engine::<CyclotomicZ>::new(RootOfUnity::new(n)?);
    let mut checks: Vec<CheckId> = options.checks.clone();
    checks.sort();
    checks.dedup();
    let outcomes: Vec<CheckOutcome> =
        checks.par_iter().map(|&id| run_check(&engine, n, id, options.two_cuts)).collect();
    let status = if outcomes.iter().all(|o| o.status == CheckStatus::Pass) {
        CheckStatus::Pass
    } else if outcomes.iter().any(|o| o.status == CheckStatus::Error) {
        CheckStatus::Error
    } else {
        CheckStatus::Fail
    };
    Ok(VerifyReport { schema: REPORT_SCHEMA, order: n, status, checks: outcomes, wall_ms: start.elapsed().as_millis() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::Generic;
    use crate::powersum::LambdaOrder;
    use crate::qmatrix::rewrite_at;
    use crate::{GenericEngine, LaurentZ};
    use num_traits::One;

    fn cyclo(n: u32) -> Engine<CyclotomicZ> {
        Engine::new(RootOfUnity::new(n).unwrap())
    }

    #[test]
    fn classical_determinant_reduces_to_one() {
        assert_eq!(ClassicalElem::<BigInt>::det(), ClassicalElem::one());
        let x11 = ClassicalElem::<BigInt>::var(1, 1).unwrap();
        let x22 = ClassicalElem::var(2, 2).unwrap();
        let x33 = ClassicalElem::var(3, 3).unwrap();
        let lead = x11.mul(&x22).mul(&x33);
        assert!(lead.terms().all(|(m, _)| !det_lead().divides(m)));
        assert_eq!(lead.to_string().matches('x').count(), 15);
    }

    #[test]
    fn classical_antipode_inverts() {
        // Σ_r x_ir·S(x_rj) = δ_ij
        for i in 1..=3 {
            for j in 1..=3 {
                let mut acc = ClassicalElem::<BigInt>::zero();
                for r in 1..=3 {
                    acc = acc.add(&ClassicalElem::var(i, r).unwrap().mul(&ClassicalElem::antipode_var(r, j).unwrap()));
                }
                let expected = if i == j { ClassicalElem::one() } else { ClassicalElem::zero() };
                assert_eq!(acc, expected, "({i},{j})");
            }
        }
    }

    #[test]
    fn bigon_map_on_generators() {
        let e = cyclo(5);
        let x = frobenius_bigon(&e, &ClassicalElem::var(1, 1).unwrap()).unwrap();
        assert_eq!(x.to_string(), "X11^5");
        assert_eq!(frobenius_bigon(&e, &ClassicalElem::one()).unwrap(), NCElem::one());
        let s2 = frobenius_bigon(&e, &ClassicalElem::sigma2()).unwrap();
        let p = |i, j| NCElem::monomial(Mono::gen_pow(Gen::at(i, j), 5), CyclotomicZ::one());
        let mut expected = NCElem::zero();
        for (a, b) in [(1, 2), (1, 3), (2, 3)] {
            expected = expected.add(&e.mul(&p(a, a), &p(b, b)).unwrap());
            expected = expected.sub(&e.mul(&p(a, b), &p(b, a)).unwrap());
        }
        assert_eq!(s2, expected);
    }

    #[test]
    fn bigon_map_needs_a_root_of_unity() {
        let e = GenericEngine::new(Generic);
        assert_eq!(
            frobenius_bigon(&e, &ClassicalElem::var(1, 2).unwrap()).unwrap_err(),
            AlgebraError::NeedsRootOfUnity
        );
    }

    #[test]
    fn bigon_map_images_are_central_and_order_free() {
        let e = cyclo(5);
        for a in Gen::ALL {
            for b in Gen::ALL {
                let m = Mono::gen(a).merge(&Mono::gen(b));
                let img = frobenius_bigon(&e, &ClassicalElem::from_terms([(m, BigInt::one())])).unwrap();
                assert!(e.is_central(&img).unwrap());
                let pa = NCElem::monomial(Mono::gen_pow(a, 5), CyclotomicZ::one());
                let pb = NCElem::monomial(Mono::gen_pow(b, 5), CyclotomicZ::one());
                if !det_lead().divides(&m) {
                    assert_eq!(img, e.mul(&pb, &pa).unwrap());
                }
            }
        }
    }

    #[test]
    fn annulus_map_on_generators() {
        let p = power_sum_poly::<BigInt>(5);
        assert_eq!(frobenius_annulus(&AnnulusElem::l_plus(), 5), AnnulusElem::from_bipoly(&p));
        assert_eq!(frobenius_annulus(&AnnulusElem::l_minus(), 5), AnnulusElem::from_bipoly(&p.swapped()));
        let both = AnnulusElem::l_plus().mul(&AnnulusElem::l_minus());
        assert_eq!(
            frobenius_annulus(&both, 5),
            AnnulusElem::from_bipoly(&p).mul(&AnnulusElem::from_bipoly(&p.swapped()))
        );
        assert_eq!(frobenius_annulus(&AnnulusElem::l_plus(), 1), AnnulusElem::l_plus());
    }

    #[test]
    fn diagonalization_values() {
        let e = GenericEngine::new(Generic);
        assert!(diagonalize(&e.gen(Gen::at(1, 2))).is_zero());
        assert_eq!(diagonalize(&e.sigma(1).unwrap()).to_sym(), Some(SymElem::e1()));
        assert_eq!(diagonalize(&e.sigma(2).unwrap()).to_sym(), Some(SymElem::e2()));
    }

    #[test]
    fn diagonalization_respects_relations() {
        let e = GenericEngine::new(Generic);
        for a in Gen::ALL {
            for b in Gen::ALL {
                if a.index() <= b.index() {
                    continue;
                }
                let mut rel = WordElem::from_terms([(vec![a, b], LaurentZ::one())]);
                for (w, c) in rewrite_at(e.rules(), &[a, b], 0) {
                    rel.add_term(w, -c);
                }
                assert!(diagonalize_words(&rel).is_zero(), "{a:?}{b:?}");
            }
        }
        let det = crate::qmatrix::qdet_word::<LaurentZ>(&Generic);
        assert_eq!(diagonalize_words(&det).to_sym(), Some(SymElem::one()));
    }

    #[test]
    fn diagonalized_cancellation_is_the_defining_property() {
        let e = GenericEngine::new(Generic);
        for n in 0..=6 {
            let lhs = eval_bipoly(&power_sum_poly(n), &e.sigma(1).unwrap(), &e.sigma(2).unwrap(), &e).unwrap();
            let d = diagonalize(&lhs).to_sym();
            // off-diagonal corrections vanish under the map, leaving Σ λ_i^N
            assert_eq!(d, Some(SymElem::power_sum(n)));
            let back = crate::powersum::eliminate(SymElem::<BigInt>::power_sum(n), LambdaOrder::DegLex).unwrap();
            assert_eq!(back, power_sum_poly(n));
        }
    }

    #[test]
    fn generic_negative_control() {
        let e = GenericEngine::new(Generic);
        assert!(!trace_cancellation_residual(&e, 5).unwrap().is_zero());
        assert!(centrality_residual(&e, 5).unwrap() > 0);
    }

    #[test]
    fn check_letters_round_trip() {
        for id in CheckId::ALL {
            assert_eq!(CheckId::from_letter(id.letter()), Some(id));
            assert_eq!(serde_json::to_value(id).unwrap(), serde_json::json!(id.to_string()));
        }
        assert_eq!(CheckId::from_letter('h'), None);
    }

    #[test]
    fn suite_at_order_one() {
        let r = verify_suite(1, &VerifyOptions { two_cuts: true, ..Default::default() }).unwrap();
        assert!(r.passed(), "{}", r.to_json());
    }

    #[test]
    fn suite_at_order_five() {
        let r = verify_suite(5, &VerifyOptions::default()).unwrap();
        assert!(r.passed(), "{}", r.to_json());
        assert_eq!(r.checks.len(), 7);
    }

    #[test]
    fn bad_order_is_rejected() {
        assert!(verify_suite(6, &VerifyOptions::default()).is_err());
    }

    #[test]
    fn classical_reversed_arcs_are_frobenius_preimages() {
        let e = cyclo(1);
        for a in 1..=3 {
            for b in 1..=3 {
                let img = frobenius_bigon(&e, &ClassicalElem::reversed_arc(a, b).unwrap()).unwrap();
                let quantum = crate::bigon_split::reversed_arc(&e, a, b).unwrap();
                assert_eq!(img, quantum);
            }
        }
    }
}
