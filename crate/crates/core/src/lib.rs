//! Minrank of graphs over prime fields and the rationals.
//!
//! The minrank of a (di)graph `G` over a field `F` is the smallest rank of a
//! matrix with nonzero diagonal whose off-diagonal entry `(i, j)` vanishes
//! whenever `(i, j)` is not an edge. This crate provides:
//!
//! - [`graph`]: graph and digraph types with exact independence, chromatic,
//!   degeneracy, subgraph and odd-cycle searches, plus graph6 and edge-list I/O;
//! - [`algebra`]: exact matrices over `GF(p)` and the rationals;
//! - [`minrank`]: representation checks and an exact solver over `GF(p)`;
//! - [`kneser`]: generalized Kneser graphs and their low-rank real
//!   representations;
//! - [`lll`]: the constant system behind the probabilistic lower bound on
//!   minrank of graphs with `H`-free complements;
//! - [`verify`]: exhaustive sweeps for the sparse-basis matrix lemmas, the
//!   forest bound, and sampling estimates of the extremal function `g(n, H, F)`.

pub mod algebra;
pub mod combinatorics;
pub mod error;
pub mod graph;
pub mod kneser;
pub mod lll;
pub mod minrank;
pub mod verify;

pub use algebra::{FieldMatrix, Matrix, PrimeField, RationalMatrix, ZeroPattern};
pub use error::{Error, Result};
pub use graph::{named_graph, ArcRelation, Digraph, Graph};
pub use kneser::{KneserParams, KneserWitness};
pub use lll::{HStats, LllInstance};
pub use minrank::{
    digraph_minrank_bounds, minrank_bounds, minrank_exact, represents, Budget, MinrankBounds, MinrankResult,
};
pub use verify::VerificationReport;

/// Serialize any `Display` value (big integers, rationals) as a JSON string.
pub(crate) fn display_string<T: std::fmt::Display, S: serde::Serializer>(
    v: &T,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}
