//! Decision procedures for tubular groups: fundamental groups of finite
//! graphs of groups with `Z²` vertex groups and `Z` edge groups.
//!
//! Every decider works in exact arithmetic and returns a verdict together
//! with a certificate that can be re-checked independently.

pub mod analyze;
pub mod cat0;
pub mod corpus;
pub mod cubulate;
pub mod dsl;
pub mod error;
pub mod fbc;
pub mod linalg;
pub mod presentation;
pub mod report;
pub mod special;
pub mod vrc;

pub use analyze::{analyze, AnalyzeOptions};
pub use dsl::{parse, Input};
pub use error::{Error, Result};
pub use linalg::{IntVec2, QForm2, Rat};
pub use presentation::{change_basis, Edge, EdgeId, GpqParams, TubularPresentation, VertexId};
pub use report::{Certificate, DecisionReport, Verdict};
