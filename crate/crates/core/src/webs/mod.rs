//! Closed `SL_3` webs in the disk.
//!
//! Two evaluators are provided and kept independent: [`evaluate_closed`]
//! resolves crossings and rewrites faces, while [`evaluate_closed_tensor`]
//! contracts a state-sum tensor network.

mod annulus;
pub mod corpus;
mod doc;
mod graph;
mod reduce;
mod resolve;
mod tensor;

use thiserror::Error;

pub use annulus::{eval_threaded_unknot, thread_core, AnnulusElem};
pub use doc::{
    validate_diagram, Edge, EdgeDoc, Loops, Vertex, VertexDoc, VertexKind, Violation, WebDiagram, WebDocument,
};
pub use reduce::{bigon_value, evaluate_closed, evaluate_closed_with, loop_value, FaceStrategy, DEFAULT_WEB_FUEL};
pub use resolve::{resolve_crossings, smoothing_coefficients};
pub use tensor::{evaluate_closed_tensor, relation_checks, self_check, VertexConstants};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WebError {
    #[error("unreadable web document: {0}")]
    Json(String),
    #[error("invalid web diagram: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<Violation>),
    #[error("face rewriting exceeded its budget of {0} steps")]
    FuelExhausted(u64),
    #[error("no bigon or square face found in a nonempty component")]
    Irreducible,
    #[error("slice presentation error: {0}")]
    BadSlice(String),
    #[error("tensor constants failed relation checks: {0}")]
    SelfCheck(String),
}

/// The R1 kink scalar: value of a one-crossing curl divided by the loop
/// value. Reported, not assumed.
pub fn kink_scalar(positive: bool) -> Result<crate::LaurentZ, WebError> {
    let value = evaluate_closed(&corpus::kink(positive))?;
    let three = loop_value();
    (-24..=24)
        .flat_map(|k| [crate::LaurentZ::v_pow(k), -crate::LaurentZ::v_pow(k)])
        .find(|c| &(c * &three) == &value)
        .ok_or_else(|| WebError::SelfCheck(format!("kink value {value} is not a unit multiple of the loop")))
}
