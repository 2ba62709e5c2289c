//! An `su(2)` model on `H²`.
//!
//! A hyperkähler structure gives three BB-orthogonal positive classes
//! `w_1, w_2, w_3`; `su(2)` acts by infinitesimal rotations of their span
//! and trivially on its orthogonal complement. The generator for the plane
//! `(w_b, w_c)` is `L x = (w_b, x) w_c − (w_c, x) w_b`, which is
//! skew-adjoint for the BB form by construction.

use num_traits::{Signed, Zero};

use super::{H2Class, H2Lattice, Sym2Tensor, Variance};
use crate::linalg::{q, Matrix, Span, Q};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodTriple {
    w: [H2Class; 3],
}

impl PeriodTriple {
    /// Validates pairwise orthogonality and positivity.
    pub fn new(lattice: &H2Lattice, w: [H2Class; 3]) -> Result<Self> {
        for a in 0..3 {
            let norm = lattice.bb_pair(&w[a], &w[a])?;
            if !norm.is_positive() {
                return Err(Error::Degenerate(format!(
                    "w_{} has non-positive square {norm}",
                    a + 1
                )));
            }
            for b in a + 1..3 {
                let p = lattice.bb_pair(&w[a], &w[b])?;
                if !p.is_zero() {
                    return Err(Error::Degenerate(format!(
                        "w_{} and w_{} are not orthogonal ({p})",
                        a + 1,
                        b + 1
                    )));
                }
            }
        }
        Ok(PeriodTriple { w })
    }

    pub fn vectors(&self) -> &[H2Class; 3] {
        &self.w
    }

    /// Whether the BB-projection of `δ*` (the vector dual to `d`) onto
    /// `span W` is nonzero, i.e. some `w_a` has a δ-component.
    pub fn sees_delta(&self) -> bool {
        self.w.iter().any(|w| !w.delta.is_zero())
    }
}

/// `L_1, L_2, L_3` as matrices acting on coordinate vectors.
pub fn su2_generators(lattice: &H2Lattice, triple: &PeriodTriple) -> Result<[Matrix; 3]> {
    let g = lattice.full_gram();
    let vecs: Vec<Vec<Q>> = triple.w.iter().map(H2Class::to_vec).collect();
    let covecs: Vec<Vec<Q>> = vecs.iter().map(|v| g.mul_vec(v)).collect::<Result<_>>()?;
    let gen = |b: usize, c: usize| -> Result<Matrix> {
        // x ↦ (w_b, x) w_c − (w_c, x) w_b
        Matrix::outer(&vecs[c], &covecs[b]).sub(&Matrix::outer(&vecs[b], &covecs[c]))
    };
    Ok([gen(1, 2)?, gen(2, 0)?, gen(0, 1)?])
}

/// Derivation action of a Lie algebra element on a symmetric 2-tensor.
pub fn derivation_action(generator: &Matrix, tensor: &Sym2Tensor) -> Result<Sym2Tensor> {
    let lt = generator.transpose();
    let m = match tensor.variance {
        // (L·T)(x, y) = −T(Lx, y) − T(x, Ly)
        Variance::Covariant => lt
            .mul(&tensor.matrix)?
            .add(&tensor.matrix.mul(generator)?)?
            .scale(&q(-1)),
        Variance::Contravariant => generator
            .mul(&tensor.matrix)?
            .add(&tensor.matrix.mul(&lt)?)?,
    };
    Ok(Sym2Tensor {
        matrix: m,
        variance: tensor.variance,
    })
}

/// `true` iff every generator annihilates `tensor`.
pub fn is_su2_invariant(
    lattice: &H2Lattice,
    tensor: &Sym2Tensor,
    triple: &PeriodTriple,
) -> Result<bool> {
    if tensor.dim() != lattice.dim() {
        return Err(Error::Dimension(format!(
            "tensor on {} coordinates, lattice has {}",
            tensor.dim(),
            lattice.dim()
        )));
    }
    for l in su2_generators(lattice, triple)? {
        if !derivation_action(&l, tensor)?.matrix.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitReport {
    /// Dimension of the `su(2)`-module generated by `d²`.
    pub orbit_dim: usize,
    /// Dimension of `V₀`, the module generated by `d` in `(H²)*`.
    pub v0_dim: usize,
    /// `dim S²(V₀) = v0_dim (v0_dim + 1) / 2`.
    pub sym2_v0_dim: usize,
}

fn upper_triangle(m: &Matrix) -> Vec<Q> {
    let n = m.rows();
    let mut out = Vec::with_capacity(n * (n + 1) / 2);
    for i in 0..n {
        for j in i..n {
            out.push(m[(i, j)].clone());
        }
    }
    out
}

/// Closure of `seed` under `act`, measured by exact rank.
fn module_dimension<T: Clone>(
    seed: T,
    flatten: impl Fn(&T) -> Vec<Q>,
    act: impl Fn(&T) -> Result<Vec<T>>,
) -> Result<usize> {
    let first = flatten(&seed);
    let mut span = Span::new(first.len());
    if !span.insert(&first) {
        return Ok(0);
    }
    let mut frontier = vec![seed];
    while let Some(x) = frontier.pop() {
        for y in act(&x)? {
            if span.insert(&flatten(&y)) {
                frontier.push(y);
            }
        }
    }
    Ok(span.dim())
}

/// Coordinates of `x` in the basis `rows`; `None` if `x` is outside their span.
fn coordinates(rows: &[Vec<Q>], x: &[Q]) -> Result<Option<Vec<Q>>> {
    let k = rows.len();
    let mut aug = Matrix::zeros(x.len(), k + 1);
    for (j, r) in rows.iter().enumerate() {
        for (i, v) in r.iter().enumerate() {
            aug[(i, j)] = v.clone();
        }
    }
    for (i, v) in x.iter().enumerate() {
        aug[(i, k)] = v.clone();
    }
    let rref = aug.rref();
    if rref.pivots.contains(&k) || rref.rank() != k {
        return Ok(None);
    }
    Ok(Some((0..k).map(|r| rref.matrix[(r, k)].clone()).collect()))
}

/// Dimension of the `su(2)`-span of `d²`, together with the dimension of
/// `V₀`, the span of the orbit of `d`.
///
/// The module lives in `S²(V₀)`, so the closure runs on `V₀`-coordinates:
/// each generator becomes a `dim V₀` square matrix `M` and acts on a
/// symmetric coefficient matrix by `S ↦ M S + S Mᵀ`.
pub fn orbit_dimension_d2(lattice: &H2Lattice, triple: &PeriodTriple) -> Result<OrbitReport> {
    let gens = su2_generators(lattice, triple)?;
    // covectors transform by ξ ↦ −Lᵀ ξ
    let dual: Vec<Matrix> = gens.iter().map(|l| l.transpose().scale(&q(-1))).collect();
    let d = lattice.delta_functional();
    let mut span = Span::new(d.len());
    let mut v0: Vec<Vec<Q>> = Vec::new();
    let mut frontier = vec![d.clone()];
    span.insert(&d);
    v0.push(d.clone());
    while let Some(x) = frontier.pop() {
        for m in &dual {
            let y = m.mul_vec(&x)?;
            if span.insert(&y) {
                v0.push(y.clone());
                frontier.push(y);
            }
        }
    }
    let k = v0.len();
    let mut local = Vec::with_capacity(3);
    for m in &dual {
        let mut mat = Matrix::zeros(k, k);
        for (j, b) in v0.iter().enumerate() {
            let image = m.mul_vec(b)?;
            let c = coordinates(&v0, &image)?
                .ok_or_else(|| Error::Construction("orbit of d is not closed".into()))?;
            for (i, ci) in c.into_iter().enumerate() {
                mat[(i, j)] = ci;
            }
        }
        local.push(mat);
    }
    let mut e0 = vec![Q::zero(); k];
    e0[0] = q(1);
    let seed = Matrix::outer(&e0, &e0);
    let orbit_dim = module_dimension(seed, upper_triangle, |s| {
        local
            .iter()
            .map(|m| m.mul(s)?.add(&s.mul(&m.transpose())?))
            .collect()
    })?;
    Ok(OrbitReport {
        orbit_dim,
        v0_dim: k,
        sym2_v0_dim: k * (k + 1) / 2,
    })
}

/// The same dimension computed directly on `S²(H²)*`. Quadratic in
/// `dim H²` per step; meant as a cross-check on small lattices.
pub fn orbit_dimension_d2_full(lattice: &H2Lattice, triple: &PeriodTriple) -> Result<usize> {
    let gens = su2_generators(lattice, triple)?;
    module_dimension(
        lattice.d_squared(),
        |t| upper_triangle(&t.matrix),
        |t| gens.iter().map(|l| derivation_action(l, t)).collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{self, DeltaMode};
    use crate::linalg::{dot, is_zero_vec};

    fn lattice() -> H2Lattice {
        H2Lattice::k3(3).unwrap()
    }

    #[test]
    fn generators_kill_complement_and_rotate() {
        let l = lattice();
        let mut rng = fixtures::rng(7);
        let w = fixtures::random_period_triple(&l, &mut rng, DeltaMode::Generic).unwrap();
        let gens = su2_generators(&l, &w).unwrap();
        let g = l.full_gram();
        let ws: Vec<Vec<Q>> = w.vectors().iter().map(H2Class::to_vec).collect();
        // a vector orthogonal to W: the residue of e_0 after projection
        let mut x = vec![q(0); l.dim()];
        x[0] = q(1);
        for wv in &ws {
            let c = dot(&g.mul_vec(wv).unwrap(), &x) / dot(&g.mul_vec(wv).unwrap(), wv);
            crate::linalg::axpy(&mut x, &-c, wv);
        }
        for gen in &gens {
            assert!(is_zero_vec(&gen.mul_vec(&x).unwrap()));
            // skew-adjoint: Lᵀ G + G L = 0
            assert!(gen
                .transpose()
                .mul(&g)
                .unwrap()
                .add(&g.mul(gen).unwrap())
                .unwrap()
                .is_zero());
        }
        // L_1 w_2 = (w_2, w_2) w_3
        let l1w2 = gens[0].mul_vec(&ws[1]).unwrap();
        let norm = g.bilinear(&ws[1], &ws[1]).unwrap();
        let scaled: Vec<Q> = ws[2].iter().map(|c| c * &norm).collect();
        assert_eq!(l1w2, scaled);
    }

    #[test]
    fn bb_form_is_invariant_and_d2_is_not() {
        let l = lattice();
        let mut rng = fixtures::rng(11);
        let w = fixtures::random_period_triple(&l, &mut rng, DeltaMode::Generic).unwrap();
        assert!(w.sees_delta());
        assert!(is_su2_invariant(&l, &l.bb_form(), &w).unwrap());
        assert!(!is_su2_invariant(&l, &l.d_squared(), &w).unwrap());
        let wo = fixtures::random_period_triple(&l, &mut rng, DeltaMode::Orthogonal).unwrap();
        assert!(!wo.sees_delta());
        assert!(is_su2_invariant(&l, &l.d_squared(), &wo).unwrap());
    }

    #[test]
    fn orbit_dimensions() {
        let l = lattice();
        let mut rng = fixtures::rng(3);
        let wo = fixtures::random_period_triple(&l, &mut rng, DeltaMode::Orthogonal).unwrap();
        assert_eq!(orbit_dimension_d2(&l, &wo).unwrap().orbit_dim, 1);
        let w = fixtures::random_period_triple(&l, &mut rng, DeltaMode::Generic).unwrap();
        let r = orbit_dimension_d2(&l, &w).unwrap();
        assert!(r.orbit_dim > 1);
        assert_eq!(r.v0_dim, 4);
        // spin 0 + 1 + 2: one short of S²(V₀)
        assert_eq!(r.orbit_dim, 9);
        assert_eq!(r.sym2_v0_dim, 10);
    }

    #[test]
    fn reduced_orbit_matches_full_computation() {
        // U ⊕ U ⊕ U ⊕ ⟨−2⟩: three positive directions, small enough for the full closure
        let u = Matrix::from_i64(&[&[0, 1], &[1, 0]]);
        let g = Matrix::block_diag(&[u.clone(), u.clone(), u, Matrix::from_i64(&[&[-2]])]);
        let l = H2Lattice::new(3, g).unwrap();
        let mut rng = fixtures::rng(21);
        for mode in [DeltaMode::Generic, DeltaMode::Orthogonal] {
            let w = fixtures::random_period_triple(&l, &mut rng, mode).unwrap();
            let r = orbit_dimension_d2(&l, &w).unwrap();
            assert_eq!(r.orbit_dim, orbit_dimension_d2_full(&l, &w).unwrap());
        }
    }

    #[test]
    fn rejects_non_orthogonal_triple() {
        let l = lattice();
        let mut e = vec![q(0); 22];
        e[16] = q(1);
        e[17] = q(1);
        let a = l.class_from_v(e.clone()).unwrap();
        assert!(PeriodTriple::new(&l, [a.clone(), a.clone(), a]).is_err());
    }
}
