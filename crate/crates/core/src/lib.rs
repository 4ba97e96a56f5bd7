//! Construction, verification, decoding and exact optimization of
//! `r`-uniform combinatorial batch codes and, more generally, of
//! hypergraphs in which every small edge selection must cover nearly as
//! many vertices as its size.
//!
//! The crate is organized around a single data model
//! ([`Hypergraph`]/[`EdgeSelection`], module [`hypergraph`]) and the
//! deficiency quantity `|S| - |cover(S)|`:
//!
//! * [`freeness`] decides whether every selection of at most `k` edges
//!   has deficiency at most `q`, produces witnesses when not, and
//!   decodes batch requests through systems of distinct representatives;
//! * [`construct`] builds large free hypergraphs by random sampling at a
//!   critical edge probability followed by repair deletions;
//! * [`bounds`] evaluates the closed-form lower/upper bounds and the
//!   comparison exponents;
//! * [`structure`] runs the structural procedures behind those bounds
//!   (min-degree peeling, BFS level growth, link reduction, maximal
//!   forbidden decomposition) and emits machine-checkable certificates;
//! * [`exact`] computes exact extremal values on small instances by
//!   branch and bound, with a brute-force oracle.

pub mod binom;
pub mod bounds;
pub mod construct;
pub mod exact;
pub mod freeness;
pub mod hypergraph;
pub mod io;
pub mod params;
pub mod random;
pub mod structure;

pub use hypergraph::{EdgeSelection, Hypergraph, HypergraphError};
pub use params::{validate_params, ParamError, ParamTriple};

/// Version tag carried by every JSON payload the tools emit.
pub const SCHEMA: &str = "turan-batch/1";
