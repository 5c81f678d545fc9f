//! Word-level reference rewriter.
//!
//! Works directly on raw words with single rule applications, no
//! memoization and no product tables. It exists to cross-check [`Engine`]
//! and to compare rewriting strategies.
//!
//! [`Engine`]: super::Engine

use rustc_hash::FxHashMap;

use super::elem::{add_into, NCElem, WordElem};
use super::engine::Budget;
use super::hopf::qdet_word;
use super::rules::{rewrite_at, RuleSet};
use super::word::{Gen, Mono, Word};
use super::AlgebraError;
use crate::coeff::Coeff;

/// Where the next quadratic rule fires inside a word.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    /// First adjacent descent from the left.
    Leftmost,
    /// Last adjacent descent.
    Rightmost,
}

pub struct Rewriter<C: Coeff> {
    ctx: C::Ctx,
    rules: RuleSet<C>,
    strategy: Strategy,
    fuel: u64,
    det_words: WordElem<C>,
    det_lead: Mono,
}

fn first_descent(w: &[Gen], strategy: Strategy) -> Option<usize> {
    let mut it = (0..w.len().saturating_sub(1)).filter(|&i| w[i] > w[i + 1]);
    match strategy {
        Strategy::Leftmost => it.next(),
        Strategy::Rightmost => it.last(),
    }
}

impl<C: Coeff> Rewriter<C> {
    pub fn new(ctx: C::Ctx, rules: RuleSet<C>, strategy: Strategy) -> Result<Self, AlgebraError> {
        let det_words = qdet_word(&ctx);
        let mut this = Self {
            ctx,
            rules,
            strategy,
            fuel: super::engine::DEFAULT_FUEL,
            det_words,
            det_lead: Mono::ONE,
        };
        let budget = Budget::new(this.fuel);
        let det = this.sort_all(this.det_words.terms.clone(), &budget)?;
        let (lead, c) = det
            .iter()
            .max_by(|a, b| Mono::content_of(a.0).elim_cmp(&Mono::content_of(b.0)))
            .ok_or(AlgebraError::DegenerateDeterminant)?;
        if !c.is_one() {
            return Err(AlgebraError::DegenerateDeterminant);
        }
        this.det_lead = Mono::content_of(lead);
        Ok(this)
    }

    pub fn with_fuel(mut self, fuel: u64) -> Self {
        self.fuel = fuel;
        self
    }

    pub fn strategy(&self) -> Strategy {
        self.strategy
    }

    /// Applies quadratic rules until every word is sorted.
    fn sort_all(&self, mut cur: FxHashMap<Word, C>, budget: &Budget) -> Result<FxHashMap<Word, C>, AlgebraError> {
        loop {
            let pending: Vec<Word> = cur
                .keys()
                .filter(|w| first_descent(w, self.strategy).is_some())
                .cloned()
                .collect();
            if pending.is_empty() {
                return Ok(cur);
            }
            for w in pending {
                let Some(c) = cur.remove(&w) else { continue };
                let Some(i) = first_descent(&w, self.strategy) else {
                    add_into(&mut cur, w, c);
                    continue;
                };
                budget.spend()?;
                for (v, d) in self.apply_pair(&w, i) {
                    add_into(&mut cur, v, d.mul_ref(&c));
                }
            }
        }
    }

    /// One application of the quadratic rule at position `i`.
    pub fn apply_pair(&self, w: &[Gen], i: usize) -> Vec<(Word, C)> {
        rewrite_at(&self.rules, w, i)
    }

    /// `q^k` with `q^{-k} = kappa`, found by search.
    fn invert_q_power(&self, kappa: &C, bound: i64) -> C {
        for k in -bound..=bound {
            if C::q_pow(&self.ctx, -k) == *kappa {
                return C::q_pow(&self.ctx, k);
            }
        }
        panic!("leading coefficient {kappa} is not a power of q");
    }

    /// Rewrites `w ⊇ lead` via `cofactor·det = cofactor`.
    fn expand_det(&self, w: &Mono, budget: &Budget) -> Result<Vec<(Word, C)>, AlgebraError> {
        let cofactor = w.quotient(&self.det_lead);
        let mut probe = cofactor.word();
        probe.extend(self.det_lead.word());
        let mut one = FxHashMap::default();
        one.insert(probe, C::one());
        let sorted = self.sort_all(one, budget)?;
        let kappa = sorted.get(&w.word()).cloned().unwrap_or_else(C::zero);
        let inv = self.invert_q_power(&kappa, 3 * w.degree() as i64);
        // w -> w - kappa^{-1}·(cofactor·det - cofactor)
        let mut out = vec![(w.word(), C::one()), (cofactor.word(), inv.clone())];
        for (d, c) in self.det_words.iter() {
            let mut v = cofactor.word();
            v.extend_from_slice(d);
            out.push((v, -c.mul_ref(&inv)));
        }
        Ok(out)
    }

    pub fn normal_form(&self, e: &WordElem<C>) -> Result<NCElem<C>, AlgebraError> {
        let budget = Budget::new(self.fuel);
        let mut cur = e.terms.clone();
        loop {
            cur = self.sort_all(cur, &budget)?;
            let target = cur
                .keys()
                .map(|w| Mono::content_of(w))
                .filter(|m| self.det_lead.divides(m))
                .max_by(|a, b| a.elim_cmp(b));
            let Some(w) = target else { break };
            budget.spend()?;
            let c = cur.remove(&w.word()).expect("target present");
            for (v, d) in self.expand_det(&w, &budget)? {
                add_into(&mut cur, v, d.mul_ref(&c));
            }
        }
        Ok(WordElem { terms: cur }.to_sorted().expect("all words sorted"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{Generic, Laurent};
    use crate::qmatrix::Engine;
    use num_bigint::BigInt;
    use num_traits::One;

    type L = Laurent<BigInt>;

    #[test]
    fn agrees_with_engine_on_reversed_words() {
        let e = Engine::<L>::new(Generic);
        for strategy in [Strategy::Leftmost, Strategy::Rightmost] {
            let r = Rewriter::<L>::new(Generic, RuleSet::standard(&Generic), strategy).unwrap();
            let all: Vec<Gen> = Gen::ALL.iter().rev().copied().collect();
            for len in 1..=6 {
                let w = WordElem::word(all[..len].to_vec(), L::one());
                assert_eq!(r.normal_form(&w).unwrap(), e.normal_form(&w).unwrap(), "{strategy:?} len {len}");
            }
            let det = qdet_word::<L>(&Generic);
            assert_eq!(r.normal_form(&det).unwrap(), NCElem::one());
        }
    }
}
