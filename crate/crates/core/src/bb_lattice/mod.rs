//! `H²(M^[n]) = H²(M) ⊕ Q·δₙ` with its Bogomolov-Beauville form.
//!
//! The form restricts to the Poincaré (intersection) form on `V = H²(M)`,
//! `V ⊥ δₙ`, and `(δₙ, δₙ) = −2(n − 1)`. Coordinates of a class are the
//! `V` coordinates followed by the `δₙ` coefficient.

mod certify;
mod su2;

pub use certify::{
    certify_no_trianalytic, certify_no_trianalytic_with, h4_obstruction, CandidateVerdict,
    CertificationReport, Verdict,
};
pub use su2::{
    derivation_action, is_su2_invariant, orbit_dimension_d2, orbit_dimension_d2_full,
    su2_generators, OrbitReport, PeriodTriple,
};

use num_traits::{One, Zero};

use crate::linalg::{frac, q, Matrix, Q};
use crate::partitions::is_triangular;
use crate::{Error, Result};

/// Whether a symmetric 2-tensor eats vectors or covectors.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variance {
    /// A bilinear form on `H²` (an element of `S²(H²)*`).
    Covariant,
    /// An element of `S²(H²)`, such as the dual of the BB form.
    Contravariant,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sym2Tensor {
    pub matrix: Matrix,
    pub variance: Variance,
}

impl Sym2Tensor {
    pub fn new(matrix: Matrix, variance: Variance) -> Result<Self> {
        if !matrix.is_symmetric() {
            return Err(Error::Invalid(
                "symmetric tensor needs a symmetric matrix".into(),
            ));
        }
        Ok(Sym2Tensor { matrix, variance })
    }

    /// `a ⊗ b + b ⊗ a` halved, i.e. the symmetric product `a·b`.
    pub fn sym_product(a: &[Q], b: &[Q], variance: Variance) -> Self {
        let ab = Matrix::outer(a, b);
        let m = ab
            .add(&ab.transpose())
            .expect("same shape")
            .scale(&frac(1, 2));
        Sym2Tensor {
            matrix: m,
            variance,
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.variance != other.variance {
            return Err(Error::Invalid(
                "cannot add tensors of different variance".into(),
            ));
        }
        Ok(Sym2Tensor {
            matrix: self.matrix.add(&other.matrix)?,
            variance: self.variance,
        })
    }

    pub fn scale(&self, s: &Q) -> Self {
        Sym2Tensor {
            matrix: self.matrix.scale(s),
            variance: self.variance,
        }
    }

    /// Evaluates a covariant tensor on a pair of classes.
    pub fn eval(&self, x: &H2Class, y: &H2Class) -> Result<Q> {
        if self.variance != Variance::Covariant {
            return Err(Error::Invalid(
                "only covariant tensors evaluate on classes".into(),
            ));
        }
        self.matrix.bilinear(&x.to_vec(), &y.to_vec())
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }
}

/// A class in `H²(M^[n])`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct H2Class {
    pub v: Vec<Q>,
    pub delta: Q,
}

impl H2Class {
    pub fn new(v: Vec<Q>, delta: Q) -> Self {
        H2Class { v, delta }
    }

    pub fn from_vec(mut coords: Vec<Q>) -> Result<Self> {
        let delta = coords
            .pop()
            .ok_or_else(|| Error::Dimension("empty coordinate vector".into()))?;
        Ok(H2Class { v: coords, delta })
    }

    pub fn to_vec(&self) -> Vec<Q> {
        let mut out = self.v.clone();
        out.push(self.delta.clone());
        out
    }
}

/// The quadratic space `H²(M^[n])`, `n ≥ 2`.
#[derive(Clone, Debug)]
pub struct H2Lattice {
    n: usize,
    gram: Matrix,
    delta_norm: Q,
}

impl H2Lattice {
    /// `gram` is the intersection form on `V`; must be symmetric and
    /// nondegenerate.
    pub fn new(n: usize, gram: Matrix) -> Result<Self> {
        if n < 2 {
            return Err(Error::Invalid(format!(
                "H²(M^[n]) carries the class δ only for n >= 2, got {n}"
            )));
        }
        if !gram.is_symmetric() {
            return Err(Error::Invalid("Gram matrix is not symmetric".into()));
        }
        if gram.det()?.is_zero() {
            return Err(Error::Degenerate("Gram matrix is degenerate".into()));
        }
        let delta_norm = q(-2 * (n as i64 - 1));
        Ok(H2Lattice {
            n,
            gram,
            delta_norm,
        })
    }

    /// K3 surface: `V` is the even unimodular lattice of signature (3, 19).
    pub fn k3(n: usize) -> Result<Self> {
        Self::new(n, k3_gram())
    }

    /// Same `V`, different number of points.
    pub fn with_n(&self, n: usize) -> Result<Self> {
        Self::new(n, self.gram.clone())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn delta_norm(&self) -> &Q {
        &self.delta_norm
    }

    pub fn dim_v(&self) -> usize {
        self.gram.rows()
    }

    pub fn dim(&self) -> usize {
        self.dim_v() + 1
    }

    /// The BB form on `V ⊕ Qδ` as one matrix.
    pub fn full_gram(&self) -> Matrix {
        Matrix::block_diag(&[
            self.gram.clone(),
            Matrix::diagonal(std::slice::from_ref(&self.delta_norm)),
        ])
    }

    pub fn delta(&self) -> H2Class {
        H2Class::new(vec![Q::zero(); self.dim_v()], Q::one())
    }

    pub fn class_from_v(&self, v: Vec<Q>) -> Result<H2Class> {
        self.check_len(v.len() + 1)?;
        Ok(H2Class::new(v, Q::zero()))
    }

    fn check_len(&self, len: usize) -> Result<()> {
        if len != self.dim() {
            return Err(Error::Dimension(format!(
                "class has {len} coordinates, lattice has {}",
                self.dim()
            )));
        }
        Ok(())
    }

    fn check_class(&self, x: &H2Class) -> Result<()> {
        self.check_len(x.v.len() + 1)
    }

    /// `(x, y)_B = x_V · G · y_V − 2(n − 1) x_δ y_δ`.
    pub fn bb_pair(&self, x: &H2Class, y: &H2Class) -> Result<Q> {
        self.check_class(x)?;
        self.check_class(y)?;
        Ok(self.gram.bilinear(&x.v, &y.v)? + &x.delta * &y.delta * &self.delta_norm)
    }

    /// `d`: the coordinate functional of `Qδ`, as a covector.
    pub fn delta_functional(&self) -> Vec<Q> {
        let mut d = vec![Q::zero(); self.dim()];
        d[self.dim_v()] = Q::one();
        d
    }

    /// The vector `δ* = δ / (δ, δ)` representing `d` through the BB form.
    pub fn delta_dual(&self) -> H2Class {
        H2Class::new(vec![Q::zero(); self.dim_v()], self.delta_norm.recip())
    }

    /// The BB form itself, `B ∈ S²(H²)*`.
    pub fn bb_form(&self) -> Sym2Tensor {
        Sym2Tensor {
            matrix: self.full_gram(),
            variance: Variance::Covariant,
        }
    }

    /// The dual tensor `P − δ⊗δ / (2(n − 1)) ∈ S²H²`.
    pub fn bb_tensor(&self) -> Result<Sym2Tensor> {
        let inv = Matrix::block_diag(&[
            self.gram.inverse()?,
            Matrix::diagonal(&[self.delta_norm.recip()]),
        ]);
        Ok(Sym2Tensor {
            matrix: inv,
            variance: Variance::Contravariant,
        })
    }

    /// `d²`, the square of the δ-coordinate, as a form.
    pub fn d_squared(&self) -> Sym2Tensor {
        let d = self.delta_functional();
        Sym2Tensor {
            matrix: Matrix::outer(&d, &d),
            variance: Variance::Covariant,
        }
    }

    /// `δ ⊗ δ ∈ S²H²`.
    pub fn delta_square(&self) -> Sym2Tensor {
        let d = self.delta_functional();
        Sym2Tensor {
            matrix: Matrix::outer(&d, &d),
            variance: Variance::Contravariant,
        }
    }
}

/// The K3 lattice `E8(−1)² ⊕ U³`.
pub fn k3_gram() -> Matrix {
    let e8 = e8_cartan().scale(&q(-1));
    let u = Matrix::from_i64(&[&[0, 1], &[1, 0]]);
    Matrix::block_diag(&[e8.clone(), e8, u.clone(), u.clone(), u])
}

/// Cartan matrix of `E8` (positive definite, even, unimodular).
pub fn e8_cartan() -> Matrix {
    // Bourbaki numbering, zero-based: chain 0-2-3-4-5-6-7 with 1 attached to 3
    const EDGES: [(usize, usize); 7] = [(0, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (1, 3)];
    let mut m = Matrix::diagonal(&[q(2), q(2), q(2), q(2), q(2), q(2), q(2), q(2)]);
    for (a, b) in EDGES {
        m[(a, b)] = q(-1);
        m[(b, a)] = q(-1);
    }
    m
}

/// Checks the properties the default K3 Gram must have.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeCheck {
    pub rank: usize,
    pub determinant: Q,
    pub signature: (usize, usize),
    pub even: bool,
}

pub fn check_lattice(gram: &Matrix) -> Result<LatticeCheck> {
    Ok(LatticeCheck {
        rank: gram.rows(),
        determinant: gram.det()?,
        signature: gram.signature()?,
        even: (0..gram.rows()).all(|i| {
            let d = &gram[(i, i)];
            d.is_integer() && (d.to_integer() % 2u8).is_zero()
        }),
    })
}

fn check_universal_pair(n: usize, l: usize) -> Result<usize> {
    if l == 0 || !n.is_multiple_of(l) {
        return Err(Error::Invalid(format!("l = {l} does not divide n = {n}")));
    }
    let t = n / l;
    if is_triangular(t).is_none() {
        return Err(Error::Invalid(format!(
            "n/l = {t} is not a triangular number"
        )));
    }
    Ok(t)
}

/// `φ*: H²(M^[n]) → H²(M^[l])` for a universal embedding with `n/l`
/// triangular: identity on `V` and `δₙ ↦ (n/l) δ_l`. For `l = 1` the target
/// is `H²(M)` and the δ-coefficient is dropped.
pub fn pullback(source: &H2Lattice, l: usize, x: &H2Class) -> Result<H2Class> {
    source.check_class(x)?;
    let t = check_universal_pair(source.n, l)?;
    let delta = if l == 1 {
        Q::zero()
    } else {
        &x.delta * q(t as i64)
    };
    Ok(H2Class::new(x.v.clone(), delta))
}

/// The coefficient `c` in `φ* B_{M^[n]} = B_{M^[l]} + c δ_l²`, where the
/// square class `δₙ²` is replaced by `(n/l) δ_l²`:
///
/// `c = 1/(2(l − 1)) − (n/l) / (2(n − 1))`.
pub fn obstruction_coefficient(n: usize, l: usize) -> Result<Q> {
    if l == 1 {
        return Err(Error::Invalid(
            "l = 1 has no δ class; use the H⁴ obstruction instead".into(),
        ));
    }
    let t = check_universal_pair(n, l)?;
    let (n, l, t) = (n as i64, l as i64, t as i64);
    Ok(frac(1, 2 * (l - 1)) - frac(t, 2 * (n - 1)))
}

/// The same coefficient computed on tensors: take `B_{M^[n]}`, keep the
/// `V` block, send the `δₙ²` entry to `(n/l)` times a `δ_l²` entry, subtract
/// `B_{M^[l]}`, and read off what is left. Fails if anything survives off
/// the `δ_l²` slot.
pub fn obstruction_coefficient_in(source: &H2Lattice, target: &H2Lattice) -> Result<Q> {
    let t = check_universal_pair(source.n, target.n)?;
    if source.gram != target.gram {
        return Err(Error::Invalid("source and target must share H²(M)".into()));
    }
    let mut image = source.bb_tensor()?.matrix;
    let k = source.dim_v();
    image[(k, k)] = &image[(k, k)] * q(t as i64);
    let residue = image.sub(&target.bb_tensor()?.matrix)?;
    let c = residue[(k, k)].clone();
    let mut rest = residue;
    rest[(k, k)] = Q::zero();
    if !rest.is_zero() {
        return Err(Error::Construction(
            "pullback residue leaves the δ² slot".into(),
        ));
    }
    Ok(c)
}

/// `Sym²(φ*)` applied to a contravariant tensor on `H²(M^[n])`.
pub fn sym2_pullback(
    source: &H2Lattice,
    target: &H2Lattice,
    tensor: &Sym2Tensor,
) -> Result<Sym2Tensor> {
    if tensor.variance != Variance::Contravariant {
        return Err(Error::Invalid(
            "pushforward along φ* needs an element of S²H²".into(),
        ));
    }
    let t = check_universal_pair(source.n, target.n)?;
    let k = source.dim_v();
    if target.dim_v() != k || tensor.dim() != source.dim() {
        return Err(Error::Dimension("lattice dimensions differ".into()));
    }
    let mut phi = Matrix::identity(k + 1);
    phi[(k, k)] = q(t as i64);
    let m = phi.mul(&tensor.matrix)?.mul(&phi.transpose())?;
    Ok(Sym2Tensor {
        matrix: m,
        variance: Variance::Contravariant,
    })
}

/// `δ_l²` coefficient of `Sym²(φ*) B_{M^[n]} − B_{M^[l]}`:
/// `1/(2(l − 1)) − (n/l)² / (2(n − 1))`.
pub fn sym2_obstruction_coefficient(n: usize, l: usize) -> Result<Q> {
    if l == 1 {
        return Err(Error::Invalid("l = 1 has no δ class".into()));
    }
    let t = check_universal_pair(n, l)? as i64;
    let (n, l) = (n as i64, l as i64);
    Ok(frac(1, 2 * (l - 1)) - frac(t * t, 2 * (n - 1)))
}
