//! Strong subgraph k-arc-connectivity of digraphs.
//!
//! For a digraph `D` and a terminal set `S`, `λ_S(D)` is the maximum number of
//! pairwise arc-disjoint strong subgraphs of `D` containing `S`, and
//! `λ_k(D)` is the minimum of `λ_S(D)` over all `k`-subsets `S`. The crate
//! computes these exactly with certificates, decides `λ_k >= 2` in
//! polynomial time on semicomplete and symmetric digraphs, builds explicit
//! packings for complete digraphs, Cartesian products and the extremal
//! `(2, n-2)` family, and constructs the reduction gadgets that make the
//! general decision problem hard.

pub mod cli;
pub mod constructors;
pub mod deciders;
pub mod digraph;
pub mod error;
pub mod explorer;
pub mod families;
pub mod gadgets;
pub mod io;
pub mod iso;
pub mod packing;
pub mod solver;

pub use digraph::{Digraph, UndirectedGraph, VertexSet};
pub use error::{Error, Result};
pub use packing::{verify_packing, Packing};
pub use solver::{LambdaResult, SolverConfig};
