use thiserror::Error;

use crate::model::EdgeId;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ValidationError {
    #[error("duplicate crossing name {0}")]
    DuplicateName(String),
    #[error("edge {id} defined twice (at {crossing})")]
    DuplicateEdge { id: EdgeId, crossing: String },
    #[error("dangling reference: {0}")]
    Dangling(String),
    #[error("crossing {crossing} has {found} darts, expected 4")]
    Degree { crossing: String, found: usize },
    #[error("crossing {crossing} has {plus} plus and {minus} minus darts")]
    PoleCount {
        crossing: String,
        plus: usize,
        minus: usize,
    },
    #[error("plus-pole darts are adjacent at {crossing}")]
    Alternation { crossing: String },
    #[error("edge {edge} joins a pole of {crossing} to itself")]
    PoleLoop { crossing: String, edge: EdgeId },
    #[error("component of {crossing} is not planar: V - E + F = {vertices} - {edges} + {faces}")]
    Euler {
        crossing: String,
        vertices: usize,
        edges: usize,
        faces: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MoveError {
    #[error("site is stale: {0}")]
    Stale(String),
    #[error("edges are not on a common face")]
    NotCofacial,
    #[error("name {0} is already in use")]
    NameCollision(String),
    #[error("loop at {0} is a whole trivial component")]
    WholeComponent(String),
    #[error("face is not a triangle")]
    NotTriangle,
    #[error("triangle pole pattern does not permit the move")]
    Pattern,
    #[error("kind constraint violated: {0}")]
    Kind(String),
    #[error("crossing {0} is not a cut vertex with a flippable side")]
    NotCut(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PassError {
    #[error("pass is stale: {0}")]
    Stale(String),
    #[error("pass is not maximal")]
    NotMaximal,
    #[error("route is stale: {0}")]
    RouteStale(String),
    #[error("route does not join the pass endpoint faces")]
    RouteMismatch,
    #[error("endpoint face unreachable")]
    Unreachable,
    #[error("kind condition violated: {0}")]
    Kind(String),
    #[error("edge {edge} and crossing {crossing} do not share a face")]
    NotCofacial { edge: EdgeId, crossing: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error(transparent)]
    Invalid(#[from] ValidationError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TraceError {
    #[error("trace line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("trace record {seq}: {msg}")]
    Apply { seq: usize, msg: String },
    #[error("trace record {seq}: expected code {expected}, replay gave {found}")]
    Divergence {
        seq: usize,
        expected: String,
        found: String,
    },
}
