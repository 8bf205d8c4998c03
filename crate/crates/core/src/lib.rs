//! Embedding presentations of classical and virtual link diagrams, the
//! moves between them, pass replacement, and a crossing-reduction search.

pub mod build;
pub mod canon;
pub mod error;
pub mod model;
pub mod moves;
pub mod pass;
pub mod io;
pub mod corpus;
pub mod virtual_link;
pub mod reduce;
mod surgery;

pub use build::{RawEdge, RawPresentation, RawSlot};
pub use canon::{canonical_code, code8, is_isomorphic};
pub use error::{MoveError, ParseError, PassError, TraceError, ValidationError};
pub use model::{
    predecessor, successor, trace_faces, trace_strands, validate, CrossingId, CrossingInfo, Dart,
    Edge, EdgeId, EndRef, Face, FreshNames, Kind, LinkPresentation, Pole, Strand, ValidationReport,
};
pub use reduce::{reduce, replay, MoveOp, MoveRecord, Outcome, ReduceConfig, ReductionReport};
