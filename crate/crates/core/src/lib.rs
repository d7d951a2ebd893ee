//! Exact search and verification toolkit for generalized Turán problems on
//! friendship graphs.
//!
//! The friendship graph `F_k` consists of `k` triangles sharing one common
//! vertex. This crate computes, by finite exact optimization, the additive
//! constant that governs the maximum number of triangles in large graphs
//! containing no `t+1` pairwise vertex-disjoint copies of `F_k`, builds the
//! extremal constructions, and cross-checks every closed-form count against
//! independent brute-force oracles.
//!
//! The main pieces:
//!
//! * [`graph`] — a small simple-graph type with exact primitives (maximum
//!   matching on general graphs, triangle counting, induced subgraphs,
//!   join/union, graph6 I/O).
//! * [`families`] — the Chvátal–Hanson function `f(ν, Δ)` and exhaustive
//!   enumeration of the candidate internal graphs (bounded matching number,
//!   bounded degree, prescribed edge count) up to isomorphism.
//! * [`admissible`] — bipartite overlays between two internal graphs, the
//!   per-vertex admissibility inequalities, and the integer objective whose
//!   maximum is the constant of interest.
//! * [`search`] — exact branch-and-bound over all admissible triples,
//!   reporting the optimum and all optimizers up to joint isomorphism.
//! * [`construct`] — the near-complete-bipartite extremal constructions and
//!   all closed-form evaluators.
//! * [`verify`] — independent verification: freeness checks, exact
//!   vertex-disjoint packing, and certificate replay.

pub mod admissible;
pub mod canon;
pub mod construct;
pub mod enumerate;
pub mod families;
pub mod graph;
pub mod graph6;
mod matching;
pub mod search;
pub mod verify;

use std::fmt;

/// Crate-wide error type.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A caller-supplied argument is out of the supported range.
    InvalidArgument(String),
    /// graph6 encoding or decoding failed.
    Graph6(String),
    /// A graph failed the membership constraints of the internal family.
    NotInFamily(String),
    /// An overlay is malformed (bad dimensions, duplicate or out-of-range pairs).
    BadOverlay(String),
    /// A triple fails one of the per-vertex admissibility inequalities.
    NotAdmissible {
        /// Which side of the overlay the violation is on.
        side: Side,
        /// The violating vertex index within its side.
        vertex: usize,
        /// The left-hand value `deg + matching` that exceeded the budget.
        lhs: usize,
    },
    /// A parameter exceeds a documented feasibility cap.
    FeasibilityCap(String),
    /// An internal cross-check failed (closed form vs. direct count).
    Internal(String),
    /// JSON (de)serialization failed.
    Json(String),
}

/// The two sides of a bipartite overlay.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum Side {
    /// Vertices of the first internal graph.
    A,
    /// Vertices of the second internal graph.
    B,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidArgument(m) => write!(f, "invalid argument: {m}"),
            Error::Graph6(m) => write!(f, "graph6: {m}"),
            Error::NotInFamily(m) => write!(f, "not a family member: {m}"),
            Error::BadOverlay(m) => write!(f, "bad overlay: {m}"),
            Error::NotAdmissible { side, vertex, lhs } => write!(
                f,
                "triple not admissible: side {side:?} vertex {vertex} has degree+matching {lhs}"
            ),
            Error::FeasibilityCap(m) => write!(f, "beyond feasibility cap: {m}"),
            Error::Internal(m) => write!(f, "internal consistency failure: {m}"),
            Error::Json(m) => write!(f, "json: {m}"),
        }
    }
}

impl std::error::Error for Error {}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
