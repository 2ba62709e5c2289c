//! The subalgebra of `H*(M^[n])` generated by `H²`, modelled as
//! `A(V, n) = Sym(V) / I` where `I` is generated in degree `n + 1` by the
//! harmonic polynomials `ker Δ`.
//!
//! Degrees here are polynomial degrees; the cohomological degree is twice
//! that. `A_i ≅ S^min(i, 2n−i) V` for `0 ≤ i ≤ 2n` and the top piece is a
//! line spanned by the image of `q^n`.

mod algebra;
mod symspace;

pub use algebra::{
    build_algebra, expected_dimensions, AutomorphismCheck, FrobeniusAlgebra, MAX_TABLE_DIM,
    MAX_TABLE_N,
};
pub use symspace::{sym_dimension, Monomials, SymSpace};

use crate::bb_lattice::{H2Lattice, Sym2Tensor};
use crate::linalg::q;
use crate::partitions::is_triangular;
use crate::{Error, Result};

/// The degree-4 functional `f = B + 2(n − 1) d²` on `H²(M^[n])` whose
/// invariance the universal embedding `M ⊂ M^[n]`, `n = k(k+1)/2`, would
/// force.
pub fn restriction_functional(lattice: &H2Lattice) -> Result<Sym2Tensor> {
    let n = lattice.n();
    if is_triangular(n).is_none() {
        return Err(Error::Invalid(format!(
            "M embeds universally in M^[n] only for triangular n, got {n}"
        )));
    }
    lattice
        .bb_form()
        .add(&lattice.d_squared().scale(&q(2 * (n as i64 - 1))))
}
