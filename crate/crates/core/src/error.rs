use thiserror::Error;

use crate::hypergraph::ThreeComb;

/// Errors raised anywhere in the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("uniformity k = {0} is invalid, need k >= 2")]
    InvalidUniformity(usize),
    #[error("edge {edge} has {found} vertices, expected {expected}")]
    WrongEdgeSize {
        edge: usize,
        expected: usize,
        found: usize,
    },
    #[error("edge {edge} contains vertex {vertex} outside 1..={n}")]
    VertexOutOfRange { edge: usize, vertex: usize, n: usize },
    #[error("edges {first} and {second} are the same vertex set")]
    DuplicateEdge { first: usize, second: usize },
    #[error("edge {edge} lists vertex {vertex} more than once")]
    DuplicateVertexInEdge { edge: usize, vertex: usize },
    #[error("edge index {index} out of range for {edges} edges")]
    IndexOutOfRange { index: usize, edges: usize },
    #[error("edge set is not a matching")]
    NotAMatching,
    #[error("edge {edge} of the symmetric difference meets {degree} other edges (3-comb present)")]
    DegreeViolation { edge: usize, degree: usize },
    #[error("hypergraph contains a 3-comb: spine edge {} meets disjoint edges {}, {}, {}", .0.spine, .0.teeth[0], .0.teeth[1], .0.teeth[2])]
    NotCombFree(ThreeComb),
    #[error("the hypergraph has no edges")]
    EmptyEdgeSet,
    #[error("state space has at least {states} matchings, cap is {cap}")]
    StateSpaceTooLarge { states: usize, cap: usize },
    #[error("enumeration stopped after {reached} matchings (cap exceeded)")]
    CapExceeded { reached: usize },
    #[error("pair of matchings is not a transition on the canonical path")]
    TransitionNotOnPath,
    #[error("ladder level {level} estimated a zero ratio twice")]
    ZeroRatio { level: usize },
    #[error("bad parameters: {0}")]
    BadParameters(String),
    #[error("total variation {tv:e} exceeds the conductance envelope {bound:e} at t = {t}")]
    EnvelopeViolation { t: usize, tv: f64, bound: f64 },
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
