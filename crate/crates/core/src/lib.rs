//! Matchings of 3-comb-free k-uniform hypergraphs: an edge-flip Markov chain, exact
//! oracles for counting and chain analysis, canonical paths with their injective
//! encoding, an approximate counter built on the sampler, and instance generators.

pub mod chain;
pub mod counting;
pub mod decompose;
pub mod error;
pub mod exec;
pub mod generators;
pub mod hypergraph;
pub mod io;
pub mod paths;
pub mod rng;
mod sets;

pub use error::{Error, Result};
pub use exec::Execution;
pub use hypergraph::{Hypergraph, IntersectionGraph, Matching, ThreeComb};
