//! Degree-constrained spanning-subgraph generating polynomials of finite
//! graphs, their key polynomials, and zero-free region certification.
//!
//! A graph `G` with edge weights `λ_e` and per-vertex activity sequences
//! `u^(v)` determines the polynomial
//!
//! ```text
//! Z(G, λ, u; x) = Σ_{H ⊆ E} λ^H · Π_v u^(v)_{deg(H,v)} · x^{deg(H)}
//! ```
//!
//! Each vertex's activities are encoded in a *key polynomial*
//! `K_v(z) = Σ_j binom(d, j) u_j z^j`. Zero-free sectors, disks and disk
//! exteriors of the keys transfer to zero-free regions of `Z` through
//! Schur–Szegő composition; [`theorem`] turns key analyses into region
//! conclusions and checks them numerically against the actual zeros.
//!
//! The crate is `no_std` and only needs `alloc`. File formats, parallel
//! sweeps and the command-line front end live in the `spangen` crate.
#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod error;
pub mod graph;
pub mod keys;
pub mod multipoly;
pub mod regions;
pub mod roots;
pub mod scalar;
pub mod statmech;
pub mod subgraph;
pub mod theorem;
pub mod unipoly;

pub use error::{Error, Result};
pub use graph::{Edge, Graph, GraphKind, SubgraphMask, VertexId};
pub use keys::{KeyAnalysis, KeyFamily, KeyPolynomial};
pub use multipoly::{DegreeVector, MultiPoly};
pub use regions::{Region, RootStatus, Verdict};
pub use roots::{Root, RootSet};
pub use scalar::Scalar;
pub use subgraph::ActivityTable;
pub use unipoly::UniPoly;

/// Largest edge count accepted by operations that enumerate every spanning
/// subgraph.
pub const EDGE_CAP: usize = 24;

/// Largest degree accepted by [`unipoly::polarize`].
pub const POLARIZE_CAP: usize = 20;
