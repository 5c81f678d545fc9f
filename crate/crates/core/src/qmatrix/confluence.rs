//! Local-confluence diagnostic over all critical overlaps.

use serde::Serialize;

use super::elem::{NCElem, WordElem};
use super::engine::Engine;
use super::rules::rewrite_at;
use super::word::{Gen, Word};
use super::AlgebraError;
use crate::coeff::Coeff;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum OverlapKind {
    /// `a·b·c` with `a > b > c`: both quadratic rules apply.
    Quadratic,
    /// A word containing the determinant's leading monomial as a block,
    /// with a quadratic rule straddling the block boundary.
    Determinant,
}

#[derive(Clone, Debug)]
pub struct Divergence<C: Coeff> {
    pub word: Word,
    pub kind: OverlapKind,
    pub left: NCElem<C>,
    pub right: NCElem<C>,
}

#[derive(Clone, Debug)]
pub struct ConfluenceReport<C: Coeff> {
    pub quadratic_checked: usize,
    pub determinant_checked: usize,
    pub divergences: Vec<Divergence<C>>,
}

impl<C: Coeff> ConfluenceReport<C> {
    pub fn is_confluent(&self) -> bool {
        self.divergences.is_empty()
    }
}

/// Reduces every ambiguity up to `max_degree` both ways and records any
/// pair of unequal normal forms.
pub fn check_local_confluence<C: Coeff>(
    engine: &Engine<C>,
    max_degree: usize,
) -> Result<ConfluenceReport<C>, AlgebraError> {
    if max_degree < 3 {
        return Err(AlgebraError::OverlapDegree(max_degree));
    }
    let rules = engine.rules();
    let mut report = ConfluenceReport { quadratic_checked: 0, determinant_checked: 0, divergences: Vec::new() };

    for a in Gen::ALL {
        for b in Gen::ALL.iter().copied().filter(|&b| b < a) {
            for c in Gen::ALL.iter().copied().filter(|&c| c < b) {
                let w = vec![a, b, c];
                let left = engine.normal_form(&WordElem::from_terms(rewrite_at(rules, &w, 0)))?;
                let right = engine.normal_form(&WordElem::from_terms(rewrite_at(rules, &w, 1)))?;
                report.quadratic_checked += 1;
                if left != right {
                    report.divergences.push(Divergence { word: w, kind: OverlapKind::Quadratic, left, right });
                }
            }
        }
    }

    let det = &engine.det_rule();
    let block = det.lead.word();
    // lead -> 1 - (det - lead), since the leading coefficient is 1
    let mut replacement: Vec<(Word, C)> = vec![(Vec::new(), C::one())];
    for (m, c) in &det.det {
        if *m != det.lead {
            replacement.push((m.word(), -c.clone()));
        }
    }
    for degree in 4..=max_degree {
        let extra = degree - 3;
        for n in 0..9usize.pow(extra as u32) {
            let mut letters = Vec::with_capacity(extra);
            let mut k = n;
            for _ in 0..extra {
                letters.push(Gen::from_index(k % 9));
                k /= 9;
            }
            for split in 0..=extra {
                let (u, v) = letters.split_at(split);
                let mut w = u.to_vec();
                w.extend_from_slice(&block);
                w.extend_from_slice(v);
                let boundary = [split.checked_sub(1), Some(split + 2)];
                let descents: Vec<usize> = boundary
                    .into_iter()
                    .flatten()
                    .filter(|&i| i + 1 < w.len() && w[i] > w[i + 1])
                    .collect();
                if descents.is_empty() {
                    continue;
                }
                let via_det = WordElem::from_terms(replacement.iter().map(|(r, c)| {
                    let mut x = u.to_vec();
                    x.extend_from_slice(r);
                    x.extend_from_slice(v);
                    (x, c.clone())
                }));
                let left = engine.normal_form(&via_det)?;
                for i in descents {
                    let right = engine.normal_form(&WordElem::from_terms(rewrite_at(rules, &w, i)))?;
                    report.determinant_checked += 1;
                    if left != right {
                        report.divergences.push(Divergence {
                            word: w.clone(),
                            kind: OverlapKind::Determinant,
                            left: left.clone(),
                            right,
                        });
                    }
                }
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{Generic, Laurent};
    use crate::qmatrix::RuleSet;
    use num_bigint::BigInt;

    type L = Laurent<BigInt>;

    #[test]
    fn standard_rules_are_locally_confluent() {
        let e = Engine::<L>::new(Generic);
        let report = check_local_confluence(&e, 5).unwrap();
        assert_eq!(report.quadratic_checked, 84);
        assert!(report.determinant_checked > 0);
        assert!(report.is_confluent(), "{:?}", report.divergences.first().map(|d| &d.word));
    }

    #[test]
    fn corrupted_rules_diverge() {
        let e = Engine::<L>::with_rules(Generic, RuleSet::corrupted(&Generic)).unwrap();
        let report = check_local_confluence(&e, 4).unwrap();
        assert!(!report.is_confluent());
    }

    #[test]
    fn degree_below_three_rejected() {
        let e = Engine::<L>::new(Generic);
        assert!(check_local_confluence(&e, 2).is_err());
    }
}
