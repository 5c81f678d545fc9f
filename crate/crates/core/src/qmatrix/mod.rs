//! The quantized coordinate ring of `SL_3`.
//!
//! Normal forms are sorted words in the nine generators that are not
//! divisible (as multisets) by the determinant's leading monomial
//! `X11·X22·X33`.

mod confluence;
mod elem;
mod engine;
mod hopf;
mod rewriter;
mod rules;
mod word;

use thiserror::Error;

pub use confluence::{check_local_confluence, ConfluenceReport, Divergence, OverlapKind};
pub(crate) use elem::write_term;
pub use elem::{NCElem, TensorElem, WordElem};
pub use engine::{DetRule, Engine, Terms, DEFAULT_FUEL};
pub use hopf::{neg_q_pow, qdet_word, quantum_minor_word};
pub use rewriter::{Rewriter, Strategy};
pub use rules::{pair_kind, rewrite_at, PairKind, PairRule, RuleSet};
pub use word::{Gen, Mono, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("rewriting exceeded its budget of {0} rule applications")]
    FuelExhausted(u64),
    #[error("generator index ({0},{1}) outside 1..=3")]
    BadIndex(u8, u8),
    #[error("sigma_{0} is undefined; use 1 or 2")]
    BadSigma(u8),
    #[error("determinant has no unit-coefficient cubic leading monomial")]
    DegenerateDeterminant,
    #[error("overlap degree {0} is below 3")]
    OverlapDegree(usize),
    #[error("substituted elements do not commute")]
    NonCommuting,
    #[error("operation needs a root-of-unity coefficient ring")]
    NeedsRootOfUnity,
}
