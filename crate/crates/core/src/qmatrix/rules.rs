//! The quadratic rewrite rules `a·b -> ...` for generators `a > b`.

use super::word::{Gen, Word};
use crate::coeff::Coeff;

/// `a·b = main·b·a + Σ c·x·y`, every correction letter strictly below `a`
/// and each correction pair sorted (`x <= y`).
#[derive(Clone, Debug)]
pub struct PairRule<C> {
    pub main: C,
    pub corrections: Vec<(C, Gen, Gen)>,
}

/// Which relation family a pair of generators falls in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PairKind {
    SameRow,
    SameColumn,
    Commuting,
    Crossed,
}

/// Classifies `a·b` for `a > b` in row-major order.
pub fn pair_kind(a: Gen, b: Gen) -> PairKind {
    debug_assert!(a > b);
    if a.row() == b.row() {
        PairKind::SameRow
    } else if a.col() == b.col() {
        PairKind::SameColumn
    } else if a.col() < b.col() {
        PairKind::Commuting
    } else {
        PairKind::Crossed
    }
}

/// Complete table of 36 pair rules.
#[derive(Clone, Debug)]
pub struct RuleSet<C> {
    table: Vec<Option<PairRule<C>>>,
}

impl<C: Coeff> RuleSet<C> {
    /// The quantum-matrix relations.
    pub fn standard(ctx: &C::Ctx) -> Self {
        Self::build(ctx, 1)
    }

    /// Same shape as [`RuleSet::standard`] but with `q` replaced by `q^2` in
    /// the crossed-pair correction. Not confluent; used as a negative control.
    pub fn corrupted(ctx: &C::Ctx) -> Self {
        Self::build(ctx, 2)
    }

    fn build(ctx: &C::Ctx, crossed_power: i64) -> Self {
        let mut table = vec![None; 81];
        for a in Gen::ALL {
            for b in Gen::ALL {
                if a <= b {
                    continue;
                }
                let rule = match pair_kind(a, b) {
                    PairKind::SameRow | PairKind::SameColumn => PairRule {
                        main: C::q_pow(ctx, -1),
                        corrections: Vec::new(),
                    },
                    PairKind::Commuting => PairRule { main: C::one(), corrections: Vec::new() },
                    PairKind::Crossed => {
                        // X_ij X_lm = X_lm X_ij - (q - q^-1) X_lj X_im   (i>l, j>m)
                        let (i, j, l, m) = (a.row(), a.col(), b.row(), b.col());
                        let c = C::q_pow(ctx, crossed_power) - C::q_pow(ctx, -crossed_power);
                        PairRule {
                            main: C::one(),
                            corrections: vec![(-c, Gen::at(l, j), Gen::at(i, m))],
                        }
                    }
                };
                table[a.index() * 9 + b.index()] = Some(rule);
            }
        }
        Self { table }
    }

    /// The rule for `a·b`, present exactly when `a > b`.
    pub fn get(&self, a: Gen, b: Gen) -> Option<&PairRule<C>> {
        self.table[a.index() * 9 + b.index()].as_ref()
    }

    pub fn len(&self) -> usize {
        self.table.iter().flatten().count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Applies the rule for the descent `w[i] > w[i+1]` once.
pub fn rewrite_at<C: Coeff>(rules: &RuleSet<C>, w: &[Gen], i: usize) -> Vec<(Word, C)> {
    let (a, b) = (w[i], w[i + 1]);
    let rule = rules.get(a, b).expect("descent has a rule");
    let splice = |x: Gen, y: Gen| {
        let mut v = w[..i].to_vec();
        v.push(x);
        v.push(y);
        v.extend_from_slice(&w[i + 2..]);
        v
    };
    let mut out = vec![(splice(b, a), rule.main.clone())];
    for (c, x, y) in &rule.corrections {
        out.push((splice(*x, *y), c.clone()));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{Generic, Laurent};
    use num_bigint::BigInt;
    use num_traits::One;

    #[test]
    fn thirty_six_rules_with_expected_shapes() {
        let rules = RuleSet::<Laurent<BigInt>>::standard(&Generic);
        assert_eq!(rules.len(), 36);
        let x = |r, c| Gen::at(r, c);
        let r = rules.get(x(1, 2), x(1, 1)).unwrap();
        assert_eq!(r.main, Laurent::q_pow(-1));
        let r = rules.get(x(2, 1), x(1, 2)).unwrap();
        assert_eq!(r.main, Laurent::one());
        assert!(r.corrections.is_empty());
        let r = rules.get(x(2, 2), x(1, 1)).unwrap();
        assert_eq!(r.corrections.len(), 1);
        let (c, p, s) = &r.corrections[0];
        assert_eq!((*p, *s), (x(1, 2), x(2, 1)));
        assert_eq!(*c, Laurent::q_pow(-1) - Laurent::q_pow(1));
        assert!(rules.get(x(1, 1), x(2, 2)).is_none());
        assert!(rules.get(x(2, 2), x(2, 2)).is_none());
    }

    #[test]
    fn kinds() {
        let x = |r, c| Gen::at(r, c);
        assert_eq!(pair_kind(x(1, 3), x(1, 1)), PairKind::SameRow);
        assert_eq!(pair_kind(x(3, 2), x(1, 2)), PairKind::SameColumn);
        assert_eq!(pair_kind(x(3, 1), x(2, 3)), PairKind::Commuting);
        assert_eq!(pair_kind(x(3, 3), x(1, 2)), PairKind::Crossed);
    }
}
