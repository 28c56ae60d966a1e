//! Chromatic numbers of 6-regular triangulations of the torus.
//!
//! The graphs handled here are the two-parameter wrap-around grids `T(r, s, t)`:
//! `r` columns of `s` vertices each, where every vertex is adjacent to its
//! vertical, horizontal, and diagonal neighbors, and walking off the last
//! column re-enters the first column shifted by `t`. Every such graph is a
//! 6-regular multigraph that triangulates the torus, and every 6-regular
//! triangulation of the torus arises this way.
//!
//! The crate provides:
//!
//! * [`torus_graph`]: graph construction, adjacency, and edge classification
//!   (loops, parallel edges).
//! * [`lattice_canon`]: the lattice model behind the grids, canonical forms
//!   under the 12-element symmetry group, isomorphism testing, and
//!   enumeration of isomorphism classes by vertex count.
//! * [`chroma_oracle`]: closed-form classification of the chromatic number of
//!   any `T(r, s, t)` without search, including the finite exceptional
//!   families with chromatic number 5, 6, or 7.
//! * [`coloring_engine`]: constructive colorings. A cascade of structured
//!   strategies (pattern tilings, column constructions, transfer-matrix
//!   assemblies) produces verified optimal colorings, with an exact DSATUR
//!   backtracking solver as oracle and last resort.
//! * [`export`]: DOT, DIMACS, and JSON serializations plus a text grid
//!   renderer for colorings.

pub mod chroma_oracle;
pub mod coloring_engine;
pub mod export;
pub mod lattice_canon;
pub mod torus_graph;

pub use chroma_oracle::{classify, Classification, Verdict};
pub use coloring_engine::{
    best_coloring, chromatic_number_exact, solve_exact, verify_coloring, Coloring, SolveBudget,
    SolveResult, Strategy,
};
pub use lattice_canon::{
    are_isomorphic, canonical_form, enumerate_order, normal_circuit_lengths, NormalLengths,
};
pub use torus_graph::{TorusGraph, TorusParams, Vertex};

/// Errors shared across the crate.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// Parameters outside the legal range `r >= 1`, `s >= 1`, `0 <= t < s`.
    #[error("invalid parameters r={r}, s={s}, t={t}: need r >= 1, s >= 1, 0 <= t < s")]
    InvalidParams { r: i64, s: i64, t: i64 },

    /// A vertex reference outside the `r x s` grid.
    #[error("vertex ({i}, {j}) outside grid with r={r}, s={s}")]
    VertexOutOfRange { i: i64, j: i64, r: u32, s: u32 },

    /// The operation requires a loop-free graph.
    #[error("graph has loops")]
    HasLoops,

    /// The operation requires a simple graph.
    #[error("graph is not simple")]
    NotSimple,

    /// A color assignment does not cover every vertex or uses colors out of range.
    #[error("color assignment invalid: {0}")]
    BadColoring(String),

    /// The search budget (nodes or wall clock) was exhausted.
    #[error("search budget exhausted")]
    BudgetExceeded,

    /// A coloring strategy's precondition failed or its construction did not verify.
    #[error("coloring strategy failed: {0}")]
    StrategyFailed(String),

    /// A lattice basis with zero determinant.
    #[error("lattice basis is singular")]
    SingularBasis,

    /// A scalar argument outside its domain.
    #[error("argument out of domain: {0}")]
    OutOfDomain(&'static str),
}

pub(crate) mod util {
    /// Greatest common divisor. `gcd(x, 0) == x`.
    pub fn gcd(mut a: u64, mut b: u64) -> u64 {
        while b != 0 {
            let r = a % b;
            a = b;
            b = r;
        }
        a
    }

}
