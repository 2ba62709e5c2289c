//! Exact computations for Hilbert schemes of points on a K3 surface.
//!
//! The crate is organised by subject:
//!
//! - [`partitions`]: Young diagrams indexing the diagonals of the symmetric
//!   power, natural and special subvariety shapes, and the filter that
//!   narrows the shapes down to possible trianalytic subvarieties.
//! - [`cohomology`]: Betti numbers of symmetric powers, diagonals and the
//!   Hilbert scheme through the semismall decomposition.
//! - [`bb_lattice`]: the Bogomolov-Beauville form on `H²`, pullbacks along
//!   universal embeddings, an `su(2)` model and the obstruction computations.
//! - [`frobenius`]: the graded Frobenius algebra `A(V, n)` generated by `H²`.
//! - [`invariant_ideals`]: `sl2`-invariant ideals of truncated power series
//!   rings and torus-fixed points of the punctual Hilbert scheme.
//!
//! All arithmetic is exact. Loops over partitions, shapes and random trials
//! run on rayon when the `parallel` feature is on (the default).

pub mod bb_lattice;
pub mod cohomology;
pub mod exec;
pub mod fixtures;
pub mod frobenius;
pub mod invariant_ideals;
pub mod linalg;
pub mod partitions;

pub use linalg::{Matrix, Q};
pub use partitions::YoungDiagram;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("arithmetic overflow: {0}")]
    Overflow(String),
    #[error("construction failed: {0}")]
    Construction(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
