//! Memoized normal-form engine.
//!
//! Products are computed one generator at a time in the quantum matrix
//! algebra (sorted words are a basis there), then every monomial divisible
//! by the determinant's leading monomial is reduced with the determinant
//! relation. Both steps are memoized in concurrent tables.

use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use dashmap::DashMap;
use rayon::prelude::*;
use rustc_hash::{FxBuildHasher, FxHashMap};

use super::elem::{add_into, NCElem, WordElem};
use super::rules::RuleSet;
use super::word::{Gen, Mono};
use super::AlgebraError;
use crate::coeff::Coeff;

pub const DEFAULT_FUEL: u64 = 10_000_000;

/// Sparse term list produced by a memoized product.
pub type Terms<C> = Arc<[(Mono, C)]>;

/// Rule-application budget shared by one top-level call.
pub(crate) struct Budget {
    left: AtomicU64,
    limit: u64,
}

impl Budget {
    pub(crate) fn new(limit: u64) -> Self {
        Self { left: AtomicU64::new(limit), limit }
    }

    pub(crate) fn spend(&self) -> Result<(), AlgebraError> {
        self.left
            .fetch_update(Ordering::Relaxed, Ordering::Relaxed, |n| n.checked_sub(1))
            .map(|_| ())
            .map_err(|_| AlgebraError::FuelExhausted(self.limit))
    }
}

/// The determinant rule `lead -> lead - (det - 1)`, in the quantum matrix
/// algebra, with `lead` the leading monomial of `det` under [`Mono::elim_cmp`].
#[derive(Clone, Debug)]
pub struct DetRule<C> {
    pub lead: Mono,
    /// Normal form of `det_q` in the quantum matrix algebra.
    pub det: Vec<(Mono, C)>,
}

/// Normal-form engine for a fixed coefficient ring and rule table.
pub struct Engine<C: Coeff> {
    ctx: C::Ctx,
    rules: RuleSet<C>,
    det_rule: DetRule<C>,
    fuel: u64,
    prod_memo: DashMap<(Mono, Gen), Terms<C>, FxBuildHasher>,
    red_memo: DashMap<Mono, Terms<C>, FxBuildHasher>,
}

/// Below this many term pairs, products run on the calling thread.
const PAR_THRESHOLD: usize = 256;

impl<C: Coeff> Engine<C> {
    pub fn new(ctx: C::Ctx) -> Self {
        let rules = RuleSet::standard(&ctx);
        Self::with_rules(ctx, rules).expect("standard rules yield a unit-leading determinant")
    }

    /// Builds an engine from an arbitrary rule table. Fails if the
    /// determinant's leading coefficient is not 1.
    pub fn with_rules(ctx: C::Ctx, rules: RuleSet<C>) -> Result<Self, AlgebraError> {
        let mut engine = Self {
            ctx,
            rules,
            det_rule: DetRule { lead: Mono::ONE, det: Vec::new() },
            fuel: DEFAULT_FUEL,
            prod_memo: DashMap::with_hasher(FxBuildHasher),
            red_memo: DashMap::with_hasher(FxBuildHasher),
        };
        let budget = Budget::new(DEFAULT_FUEL);
        let raw_det = super::hopf::qdet_word(&engine.ctx);
        let mut det = FxHashMap::default();
        for (w, c) in raw_det.iter() {
            for (m, d) in engine.word_in_matrix_algebra(w, &budget)? {
                add_into(&mut det, m, d.mul_ref(c));
            }
        }
        let (lead, lead_coeff) = det
            .iter()
            .max_by(|a, b| a.0.elim_cmp(b.0))
            .map(|(m, c)| (*m, c.clone()))
            .ok_or(AlgebraError::DegenerateDeterminant)?;
        if !lead_coeff.is_one() || lead.degree() != 3 {
            return Err(AlgebraError::DegenerateDeterminant);
        }
        let mut det: Vec<_> = det.into_iter().collect();
        det.sort_by(|a, b| b.0.elim_cmp(&a.0));
        engine.det_rule = DetRule { lead, det };
        Ok(engine)
    }

    pub fn with_fuel(mut self, fuel: u64) -> Self {
        self.fuel = fuel;
        self
    }

    pub fn ctx(&self) -> &C::Ctx {
        &self.ctx
    }

    pub fn rules(&self) -> &RuleSet<C> {
        &self.rules
    }

    pub fn det_rule(&self) -> &DetRule<C> {
        &self.det_rule
    }

    pub fn fuel(&self) -> u64 {
        self.fuel
    }

    pub(crate) fn budget(&self) -> Budget {
        Budget::new(self.fuel)
    }

    /// Number of memoized generator products and determinant reductions.
    pub fn memo_sizes(&self) -> (usize, usize) {
        (self.prod_memo.len(), self.red_memo.len())
    }

    pub fn clear_memo(&self) {
        self.prod_memo.clear();
        self.red_memo.clear();
    }

    pub fn scalar(&self, c: C) -> NCElem<C> {
        NCElem::scalar(c)
    }

    pub fn gen(&self, g: Gen) -> NCElem<C> {
        NCElem::monomial(Mono::gen(g), C::one())
    }

    pub fn q_pow(&self, k: i64) -> C {
        C::q_pow(&self.ctx, k)
    }

    /// `u·g` in the quantum matrix algebra (no determinant relation).
    pub(crate) fn mul_gen(&self, u: &Mono, g: Gen, budget: &Budget) -> Result<Terms<C>, AlgebraError> {
        let top = match u.last() {
            Some(t) if g < t => t,
            _ => return Ok(Arc::from(vec![(u.with(g), C::one())])),
        };
        if let Some(hit) = self.prod_memo.get(&(*u, g)) {
            return Ok(hit.clone());
        }
        budget.spend()?;
        let rule = self.rules.get(top, g).expect("rule exists for every descent");
        let rest = u.without(top);
        let mut acc = FxHashMap::default();
        // rest·(top·g) = main·(rest·g)·top + Σ c·rest·x·y; every letter of
        // rest·g is <= top, so appending top keeps words sorted.
        for (s, c) in self.mul_gen(&rest, g, budget)?.iter() {
            add_into(&mut acc, s.with(top), c.mul_ref(&rule.main));
        }
        for (c, x, y) in &rule.corrections {
            for (s1, c1) in self.mul_gen(&rest, *x, budget)?.iter() {
                let c1 = c1.mul_ref(c);
                for (s2, c2) in self.mul_gen(s1, *y, budget)?.iter() {
                    add_into(&mut acc, *s2, c2.mul_ref(&c1));
                }
            }
        }
        let out: Terms<C> = acc.into_iter().collect::<Vec<_>>().into();
        self.prod_memo.insert((*u, g), out.clone());
        Ok(out)
    }

    /// `u·w` for sorted monomials, in the quantum matrix algebra.
    pub(crate) fn mono_in_matrix_algebra(
        &self,
        u: &Mono,
        w: &Mono,
        budget: &Budget,
    ) -> Result<Vec<(Mono, C)>, AlgebraError> {
        self.word_from(u, &w.word(), budget)
    }

    fn word_in_matrix_algebra(&self, word: &[Gen], budget: &Budget) -> Result<Vec<(Mono, C)>, AlgebraError> {
        self.word_from(&Mono::ONE, word, budget)
    }

    fn word_from(&self, start: &Mono, word: &[Gen], budget: &Budget) -> Result<Vec<(Mono, C)>, AlgebraError> {
        let mut cur = vec![(*start, C::one())];
        for &g in word {
            let mut next = FxHashMap::default();
            for (s, c) in &cur {
                for (m, d) in self.mul_gen(s, g, budget)?.iter() {
                    add_into(&mut next, *m, d.mul_ref(c));
                }
            }
            cur = next.into_iter().collect();
        }
        Ok(cur)
    }

    /// Full reduction of a sorted monomial modulo the determinant relation.
    pub(crate) fn reduce(&self, w: &Mono, budget: &Budget) -> Result<Terms<C>, AlgebraError> {
        let lead = self.det_rule.lead;
        if !lead.divides(w) {
            return Ok(Arc::from(vec![(*w, C::one())]));
        }
        if let Some(hit) = self.red_memo.get(w) {
            return Ok(hit.clone());
        }
        budget.spend()?;
        let cofactor = w.quotient(&lead);
        // cofactor·det has leading term q^-k·w with k counting inversions
        // between the cofactor and the leading monomial along rows/columns.
        let k: i64 = lead
            .word()
            .iter()
            .map(|&x| {
                Gen::ALL
                    .iter()
                    .filter(|&&y| y > x && y.aligned(x))
                    .map(|&y| cofactor.exponent(y) as i64)
                    .sum::<i64>()
            })
            .sum();
        let mut product = FxHashMap::default();
        for (d, c) in &self.det_rule.det {
            for (m, e) in self.mono_in_matrix_algebra(&cofactor, d, budget)? {
                add_into(&mut product, m, e.mul_ref(c));
            }
        }
        let lead_coeff = product.remove(w).unwrap_or_else(C::zero);
        assert_eq!(lead_coeff, self.q_pow(-k), "leading coefficient of cofactor·det");
        // w = q^k·(cofactor - (cofactor·det - q^-k·w))
        let inv = self.q_pow(k);
        let mut acc = FxHashMap::default();
        add_into(&mut acc, cofactor, inv.clone());
        for (m, c) in product {
            debug_assert!(m.elim_cmp(w).is_lt());
            add_into(&mut acc, m, -c.mul_ref(&inv));
        }
        let mut out = FxHashMap::default();
        for (m, c) in acc {
            for (r, d) in self.reduce(&m, budget)?.iter() {
                add_into(&mut out, *r, d.mul_ref(&c));
            }
        }
        let out: Terms<C> = out.into_iter().collect::<Vec<_>>().into();
        self.red_memo.insert(*w, out.clone());
        Ok(out)
    }

    /// Reduces a combination of sorted monomials (valid in the quantum
    /// matrix algebra) modulo the determinant relation.
    fn reduce_all(&self, terms: FxHashMap<Mono, C>, budget: &Budget) -> Result<NCElem<C>, AlgebraError> {
        if terms.len() < PAR_THRESHOLD {
            let mut out = FxHashMap::default();
            for (m, c) in terms {
                for (r, d) in self.reduce(&m, budget)?.iter() {
                    add_into(&mut out, *r, d.mul_ref(&c));
                }
            }
            return Ok(NCElem { terms: out });
        }
        let items: Vec<(Mono, C)> = terms.into_iter().collect();
        let out = items
            .par_chunks(64)
            .try_fold(FxHashMap::default, |mut acc, chunk| {
                for (m, c) in chunk {
                    for (r, d) in self.reduce(m, budget)?.iter() {
                        add_into(&mut acc, *r, d.mul_ref(c));
                    }
                }
                Ok::<_, AlgebraError>(acc)
            })
            .try_reduce(FxHashMap::default, |a, b| Ok(merge(a, b)))?;
        Ok(NCElem { terms: out })
    }

    /// Normal form of a product of normal forms.
    pub fn mul(&self, a: &NCElem<C>, b: &NCElem<C>) -> Result<NCElem<C>, AlgebraError> {
        let budget = self.budget();
        self.mul_with(a, b, &budget)
    }

    pub(crate) fn mul_with(&self, a: &NCElem<C>, b: &NCElem<C>, budget: &Budget) -> Result<NCElem<C>, AlgebraError> {
        let right: Vec<(Mono, C)> = b.iter().map(|(m, c)| (*m, c.clone())).collect();
        let left: Vec<(Mono, C)> = a.iter().map(|(m, c)| (*m, c.clone())).collect();
        let pair_count = left.len() * right.len();
        let matrix_terms = if pair_count < PAR_THRESHOLD {
            let mut acc = FxHashMap::default();
            for (u, c) in &left {
                for (w, d) in &right {
                    let cd = c.mul_ref(d);
                    for (m, e) in self.mono_in_matrix_algebra(u, w, budget)? {
                        add_into(&mut acc, m, e.mul_ref(&cd));
                    }
                }
            }
            acc
        } else {
            let chunk = (PAR_THRESHOLD / right.len().max(1)).max(1);
            left.par_chunks(chunk)
                .try_fold(FxHashMap::default, |mut acc, chunk| {
                    for (u, c) in chunk {
                        for (w, d) in &right {
                            let cd = c.mul_ref(d);
                            for (m, e) in self.mono_in_matrix_algebra(u, w, budget)? {
                                add_into(&mut acc, m, e.mul_ref(&cd));
                            }
                        }
                    }
                    Ok::<_, AlgebraError>(acc)
                })
                .try_reduce(FxHashMap::default, |x, y| Ok(merge(x, y)))?
        };
        self.reduce_all(matrix_terms, budget)
    }

    /// Product of several normal forms, left to right.
    pub fn product(&self, factors: &[&NCElem<C>]) -> Result<NCElem<C>, AlgebraError> {
        let budget = self.budget();
        let mut acc = NCElem::one();
        for f in factors {
            acc = self.mul_with(&acc, f, &budget)?;
        }
        Ok(acc)
    }

    pub fn pow(&self, a: &NCElem<C>, n: u32) -> Result<NCElem<C>, AlgebraError> {
        let budget = self.budget();
        let mut acc = NCElem::one();
        for _ in 0..n {
            acc = self.mul_with(&acc, a, &budget)?;
        }
        Ok(acc)
    }

    /// Normal form of a sorted monomial (applies only the determinant rule).
    pub fn reduce_mono(&self, m: &Mono) -> Result<NCElem<C>, AlgebraError> {
        let budget = self.budget();
        let mut t = FxHashMap::default();
        t.insert(*m, C::one());
        self.reduce_all(t, &budget)
    }

    /// Normal form of a linear combination of raw words.
    pub fn normal_form(&self, e: &WordElem<C>) -> Result<NCElem<C>, AlgebraError> {
        let budget = self.budget();
        let mut acc = FxHashMap::default();
        for (w, c) in e.iter() {
            for (m, d) in self.word_in_matrix_algebra(w, &budget)? {
                add_into(&mut acc, m, d.mul_ref(c));
            }
        }
        self.reduce_all(acc, &budget)
    }

    /// Normal form of a single word.
    pub fn word(&self, w: &[Gen]) -> Result<NCElem<C>, AlgebraError> {
        self.normal_form(&WordElem::word(w.to_vec(), C::one()))
    }

    /// `[a, b] = ab - ba`.
    pub fn commutator(&self, a: &NCElem<C>, b: &NCElem<C>) -> Result<NCElem<C>, AlgebraError> {
        Ok(self.mul(a, b)?.sub(&self.mul(b, a)?))
    }
}

pub(crate) fn merge<K: std::hash::Hash + Eq, C: Coeff>(
    a: FxHashMap<K, C>,
    b: FxHashMap<K, C>,
) -> FxHashMap<K, C> {
    let (mut big, small) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    for (k, c) in small {
        add_into(&mut big, k, c);
    }
    big
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{Cyclotomic, Generic, Laurent, RootOfUnity};
    use num_bigint::BigInt;
    use num_traits::One;

    type L = Laurent<BigInt>;

    fn x(r: u8, c: u8) -> Gen {
        Gen::at(r, c)
    }

    fn mono(w: &[(u8, u8)]) -> Mono {
        Mono::content_of(&w.iter().map(|&(r, c)| x(r, c)).collect::<Vec<_>>())
    }

    #[test]
    fn determinant_leading_monomial_is_diagonal() {
        let e = Engine::<L>::new(Generic);
        assert_eq!(e.det_rule().lead, mono(&[(1, 1), (2, 2), (3, 3)]));
        assert_eq!(e.det_rule().det.len(), 6);
    }

    #[test]
    fn quadratic_examples() {
        let e = Engine::<L>::new(Generic);
        let nf = e.word(&[x(1, 2), x(1, 1)]).unwrap();
        assert_eq!(nf, NCElem::monomial(mono(&[(1, 1), (1, 2)]), L::q_pow(-1)));
        let nf = e.word(&[x(2, 1), x(1, 2)]).unwrap();
        assert_eq!(nf, NCElem::monomial(mono(&[(1, 2), (2, 1)]), L::one()));
        let nf = e.word(&[x(2, 2), x(1, 1)]).unwrap();
        let expected = NCElem::from_terms([
            (mono(&[(1, 1), (2, 2)]), L::one()),
            (mono(&[(1, 2), (2, 1)]), L::q_pow(-1) - L::q_pow(1)),
        ]);
        assert_eq!(nf, expected);
    }

    #[test]
    fn determinant_normalizes_to_one() {
        let e = Engine::<L>::new(Generic);
        let det = e.normal_form(&super::super::hopf::qdet_word(&Generic)).unwrap();
        assert_eq!(det, NCElem::one());
    }

    #[test]
    fn fuel_exhaustion_is_reported() {
        let e = Engine::<L>::new(Generic).with_fuel(3);
        let w: Vec<Gen> = Gen::ALL.iter().rev().copied().collect();
        assert_eq!(e.word(&w), Err(AlgebraError::FuelExhausted(3)));
    }

    #[test]
    fn diagonal_powers_commute_at_root_of_unity() {
        let ctx = RootOfUnity::new(5).unwrap();
        let e = Engine::<Cyclotomic<BigInt>>::new(ctx);
        let p = e.pow(&e.gen(x(1, 1)), 5).unwrap();
        let c = e.commutator(&p, &e.gen(x(2, 2))).unwrap();
        assert!(c.is_zero());
        let c = e.commutator(&e.gen(x(1, 1)), &e.gen(x(2, 2))).unwrap();
        assert!(!c.is_zero());
    }
}
