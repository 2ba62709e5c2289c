use num_traits::{One, Zero};

use super::symspace::{sym_dimension, SymSpace};
use crate::exec::Mode;
use crate::linalg::{dot, is_zero_vec, Matrix, Rref, Q};
use crate::{Error, Result};

/// Largest `dim V` for which full multiplication tables are built.
pub const MAX_TABLE_DIM: usize = 6;
/// Largest `n` for which full multiplication tables are built.
pub const MAX_TABLE_N: usize = 4;

/// `dim A_i = dim S^min(i, 2n−i) V` for `i = 0..=2n`.
pub fn expected_dimensions(dim_v: usize, n: usize) -> Vec<usize> {
    (0..=2 * n)
        .map(|i| sym_dimension(dim_v, i.min(2 * n - i)))
        .collect()
}

struct Component {
    /// Echelon form of `I_i`; `None` below the generating degree.
    relations: Option<Rref>,
    /// Monomial indices standing for the quotient basis.
    basis: Vec<usize>,
    /// Normal form of every monomial of `S^i`, in quotient coordinates.
    normal_forms: Vec<Vec<Q>>,
}

impl Component {
    fn new(dim_s: usize, relations: Option<Rref>) -> Self {
        let mut is_pivot = vec![false; dim_s];
        if let Some(r) = &relations {
            for &p in &r.pivots {
                is_pivot[p] = true;
            }
        }
        let basis: Vec<usize> = (0..dim_s).filter(|&m| !is_pivot[m]).collect();
        let normal_forms = (0..dim_s)
            .map(|m| {
                let mut v = vec![Q::zero(); dim_s];
                v[m] = Q::one();
                if let Some(r) = &relations {
                    r.reduce(&mut v);
                }
                basis.iter().map(|&b| v[b].clone()).collect()
            })
            .collect();
        Component {
            relations,
            basis,
            normal_forms,
        }
    }
}

/// `A(V, n)` with its multiplication tables and counit.
pub struct FrobeniusAlgebra {
    n: usize,
    space: SymSpace,
    components: Vec<Component>,
}

impl std::fmt::Debug for FrobeniusAlgebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FrobeniusAlgebra")
            .field("n", &self.n)
            .field("dim_v", &self.space.dim_v())
            .field("dimensions", &self.dimensions())
            .finish()
    }
}

/// Builds `A(V, n)` for the form `gram`, checking the dimension pattern on
/// the way. Fails with [`Error::Construction`] if the quotient does not have
/// the expected shape.
pub fn build_algebra(gram: &Matrix, n: usize) -> Result<FrobeniusAlgebra> {
    if n == 0 {
        return Err(Error::Invalid("A(V, n) needs n >= 1".into()));
    }
    let dim_v = gram.rows();
    if dim_v > MAX_TABLE_DIM || n > MAX_TABLE_N {
        return Err(Error::Invalid(format!(
            "full tables are limited to dim V <= {MAX_TABLE_DIM} and n <= {MAX_TABLE_N}, got {dim_v}, {n}"
        )));
    }
    let space = SymSpace::new(gram.clone())?;
    let mut components = Vec::with_capacity(2 * n + 1);
    for i in 0..=n {
        components.push(Component::new(space.dimension(i), None));
    }
    let mut generators = space.harmonic_basis(n + 1)?;
    let mut top_degree_vanishes = false;
    for i in n + 1..=2 * n + 1 {
        let dim_s = space.dimension(i);
        let rref = Matrix::from_rows(generators, dim_s)?.rref();
        if i == 2 * n + 1 {
            top_degree_vanishes = rref.rank() == dim_s;
            break;
        }
        // I_{i+1} = V · I_i
        let mut next = Vec::with_capacity(rref.rank() * dim_v);
        for r in 0..rref.rank() {
            let row = rref.matrix.row(r);
            for k in 0..dim_v {
                let mut e = vec![Q::zero(); dim_v];
                e[k] = Q::one();
                next.push(space.multiply(row, i, &e, 1));
            }
        }
        generators = next;
        components.push(Component::new(dim_s, Some(rref)));
    }

    let alg = FrobeniusAlgebra {
        n,
        space,
        components,
    };
    let dims = alg.dimensions();
    let expected = expected_dimensions(dim_v, n);
    if dims != expected {
        return Err(Error::Construction(format!(
            "quotient dimensions {dims:?} do not match the Frobenius pattern {expected:?}"
        )));
    }
    if !top_degree_vanishes {
        return Err(Error::Construction(format!(
            "A(V, n) does not vanish in degree {}",
            2 * n + 1
        )));
    }
    Ok(alg)
}

/// Outcome of transporting the tables along `g ∈ O(V)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AutomorphismCheck {
    /// `g` maps `I_i` into `I_i` in every degree.
    pub preserves_ideal: bool,
    /// `ρ(ab) = ρ(a) ρ(b)` for `a` in a basis and `b` in `A_1`.
    pub multiplicative: bool,
    /// `ε ∘ ρ = ε`.
    pub preserves_counit: bool,
}

impl AutomorphismCheck {
    pub fn passed(&self) -> bool {
        self.preserves_ideal && self.multiplicative && self.preserves_counit
    }
}

impl FrobeniusAlgebra {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn space(&self) -> &SymSpace {
        &self.space
    }

    /// Top polynomial degree `2n`.
    pub fn top(&self) -> usize {
        2 * self.n
    }

    pub fn dimensions(&self) -> Vec<usize> {
        self.components.iter().map(|c| c.basis.len()).collect()
    }

    pub fn dimension(&self, i: usize) -> usize {
        self.components.get(i).map_or(0, |c| c.basis.len())
    }

    /// Exponent vector of the `k`-th basis element of `A_i`.
    pub fn basis_monomial(&self, i: usize, k: usize) -> Vec<u8> {
        self.space
            .monomials(i)
            .exponent(self.components[i].basis[k])
            .to_vec()
    }

    /// Rank of `I_i` inside `S^i`.
    pub fn relation_rank(&self, i: usize) -> usize {
        self.components
            .get(i)
            .and_then(|c| c.relations.as_ref())
            .map_or(0, Rref::rank)
    }

    /// Image of `x ∈ S^i` in `A_i`.
    pub fn reduce(&self, x: &[Q], i: usize) -> Result<Vec<Q>> {
        let dim_s = self.space.dimension(i);
        if x.len() != dim_s {
            return Err(Error::Dimension(format!(
                "element of S^{i} needs {dim_s} coordinates"
            )));
        }
        if i > self.top() {
            return Ok(Vec::new());
        }
        let c = &self.components[i];
        let mut out = vec![Q::zero(); c.basis.len()];
        for (m, xm) in x.iter().enumerate() {
            if !xm.is_zero() {
                for (o, v) in out.iter_mut().zip(&c.normal_forms[m]) {
                    *o += xm * v;
                }
            }
        }
        Ok(out)
    }

    /// Lift of `a ∈ A_i` to `S^i` along the monomial basis.
    pub fn lift(&self, a: &[Q], i: usize) -> Vec<Q> {
        let mut out = vec![Q::zero(); self.space.dimension(i)];
        for (k, &m) in self.components[i].basis.iter().enumerate() {
            out[m] = a[k].clone();
        }
        out
    }

    /// Product of basis elements `e_p ∈ A_i`, `e_q ∈ A_j`.
    pub fn basis_product(&self, i: usize, p: usize, j: usize, q: usize) -> Vec<Q> {
        if i + j > self.top() {
            return Vec::new();
        }
        let (mi, mj, mk) = (
            self.space.monomials(i),
            self.space.monomials(j),
            self.space.monomials(i + j),
        );
        let a = mi.exponent(self.components[i].basis[p]);
        let b = mj.exponent(self.components[j].basis[q]);
        let e: Vec<u8> = a.iter().zip(b).map(|(x, y)| x + y).collect();
        self.components[i + j].normal_forms[mk.position(&e).expect("degrees add")].clone()
    }

    /// Multiplication table `A_i × A_j → A_{i+j}`, indexed `[p][q]`.
    pub fn table(&self, i: usize, j: usize) -> Vec<Vec<Vec<Q>>> {
        (0..self.dimension(i))
            .map(|p| {
                (0..self.dimension(j))
                    .map(|q| self.basis_product(i, p, j, q))
                    .collect()
            })
            .collect()
    }

    /// `a · b` for `a ∈ A_i`, `b ∈ A_j`; empty when `i + j > 2n`.
    pub fn mul(&self, a: &[Q], i: usize, b: &[Q], j: usize) -> Vec<Q> {
        if i + j > self.top() {
            return Vec::new();
        }
        let mut out = vec![Q::zero(); self.dimension(i + j)];
        for (p, ap) in a.iter().enumerate() {
            if ap.is_zero() {
                continue;
            }
            for (q, bq) in b.iter().enumerate() {
                if bq.is_zero() {
                    continue;
                }
                let c = ap * bq;
                for (o, v) in out.iter_mut().zip(self.basis_product(i, p, j, q)) {
                    *o += &c * v;
                }
            }
        }
        out
    }

    /// `ε: A_{2n} → Q`, the coordinate along the unique basis monomial.
    pub fn counit(&self, top: &[Q]) -> Result<Q> {
        if top.len() != 1 {
            return Err(Error::Dimension(
                "counit takes an element of the top line".into(),
            ));
        }
        Ok(top[0].clone())
    }

    /// `(a, b) ↦ ε(ab)` on `A_i × A_{2n−i}`.
    pub fn pairing_matrix(&self, i: usize) -> Result<Matrix> {
        if i > self.top() {
            return Err(Error::Invalid(format!(
                "degree {i} above the top {}",
                self.top()
            )));
        }
        let j = self.top() - i;
        let (di, dj) = (self.dimension(i), self.dimension(j));
        let mut m = Matrix::zeros(di, dj);
        for p in 0..di {
            for q in 0..dj {
                m[(p, q)] = self.counit(&self.basis_product(i, p, j, q))?;
            }
        }
        Ok(m)
    }

    /// Determinant of every pairing matrix, degree 0 to `2n`.
    pub fn pairing_determinants(&self) -> Result<Vec<Q>> {
        (0..=self.top())
            .map(|i| self.pairing_matrix(i)?.det())
            .collect()
    }

    pub fn pairing_nondegenerate(&self) -> Result<bool> {
        Ok(self.pairing_determinants()?.iter().all(|d| !d.is_zero()))
    }

    /// `(e_p e_q) e_r = e_p (e_q e_r)` over every basis triple with total
    /// degree at most `2n`.
    pub fn check_associativity(&self, mode: Mode) -> bool {
        let top = self.top();
        let mut triples = Vec::new();
        for i in 0..=top {
            for j in 0..=top - i {
                for k in 0..=top - i - j {
                    triples.push((i, j, k));
                }
            }
        }
        mode.all(&triples, |&(i, j, k)| {
            for p in 0..self.dimension(i) {
                for q in 0..self.dimension(j) {
                    let pq = self.basis_product(i, p, j, q);
                    for r in 0..self.dimension(k) {
                        let mut er = vec![Q::zero(); self.dimension(k)];
                        er[r] = Q::one();
                        let left = self.mul(&pq, i + j, &er, k);
                        let qr = self.basis_product(j, q, k, r);
                        let mut ep = vec![Q::zero(); self.dimension(i)];
                        ep[p] = Q::one();
                        if left != self.mul(&ep, i, &qr, j + k) {
                            return false;
                        }
                    }
                }
            }
            true
        })
    }

    pub fn check_commutativity(&self) -> bool {
        let top = self.top();
        (0..=top).all(|i| {
            (i..=top - i).all(|j| {
                (0..self.dimension(i)).all(|p| {
                    (0..self.dimension(j))
                        .all(|q| self.basis_product(i, p, j, q) == self.basis_product(j, q, i, p))
                })
            })
        })
    }

    /// `v^k` in `A_k` for `v ∈ V`.
    pub fn power(&self, v: &[Q], k: usize) -> Result<Vec<Q>> {
        if v.len() != self.space.dim_v() {
            return Err(Error::Dimension(format!(
                "vector of length {} for dim V = {}",
                v.len(),
                self.space.dim_v()
            )));
        }
        self.reduce(&self.space.power(v, k), k)
    }

    /// Transports the algebra along `g` (columns are images of basis vectors).
    pub fn check_automorphism(&self, g: &Matrix) -> Result<AutomorphismCheck> {
        let dim_v = self.space.dim_v();
        if g.rows() != dim_v || g.cols() != dim_v {
            return Err(Error::Dimension("g must act on V".into()));
        }
        let top = self.top();
        let induced: Vec<Matrix> = (0..=top).map(|i| self.space.induced_matrix(g, i)).collect();

        let preserves_ideal = (0..=top).all(|i| match &self.components[i].relations {
            None => true,
            Some(r) => (0..r.rank()).all(|row| {
                let image = induced[i].mul_vec(r.matrix.row(row)).expect("square");
                is_zero_vec(&self.reduce(&image, i).expect("degree matches"))
            }),
        });

        // ρ_i(e_p) = reduce(g · lift(e_p))
        let rho: Vec<Vec<Vec<Q>>> = (0..=top)
            .map(|i| {
                self.components[i]
                    .basis
                    .iter()
                    .map(|&m| {
                        self.reduce(&induced[i].column(m), i)
                            .expect("degree matches")
                    })
                    .collect()
            })
            .collect();
        let apply = |i: usize, a: &[Q]| -> Vec<Q> {
            let mut out = vec![Q::zero(); self.dimension(i)];
            for (p, ap) in a.iter().enumerate() {
                if !ap.is_zero() {
                    for (o, v) in out.iter_mut().zip(&rho[i][p]) {
                        *o += ap * v;
                    }
                }
            }
            out
        };
        // A is generated by A_1, so ρ(a v) = ρ(a) ρ(v) for v ∈ A_1 suffices
        let multiplicative = (0..top).all(|i| {
            (0..self.dimension(i)).all(|p| {
                (0..self.dimension(1)).all(|k| {
                    let lhs = apply(i + 1, &self.basis_product(i, p, 1, k));
                    lhs == self.mul(&rho[i][p], i, &rho[1][k], 1)
                })
            })
        });
        let preserves_counit = rho[top][0] == vec![Q::one()];
        Ok(AutomorphismCheck {
            preserves_ideal,
            multiplicative,
            preserves_counit,
        })
    }

    /// `ε(v^{2n})`, which is `q(v)^n` up to a fixed nonzero constant.
    pub fn top_power(&self, v: &[Q]) -> Result<Q> {
        self.counit(&self.power(v, self.top())?)
    }

    /// Value of the quadratic form, used to tell isotropic inputs apart.
    pub fn norm(&self, v: &[Q]) -> Result<Q> {
        let gv = self.space.gram().mul_vec(v)?;
        Ok(dot(&gv, v))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::linalg::q;

    fn hyperbolic(dim: usize) -> Matrix {
        // U ⊕ ⟨1⟩ ⊕ ⟨−1⟩ ⊕ …
        let mut m = Matrix::zeros(dim, dim);
        if dim >= 2 {
            m[(0, 1)] = q(1);
            m[(1, 0)] = q(1);
        }
        for k in 2.min(dim)..dim {
            m[(k, k)] = q(if k % 2 == 0 { 1 } else { -2 });
        }
        if dim == 1 {
            m[(0, 0)] = q(1);
        }
        m
    }

    #[test]
    fn worked_dimensions() {
        let a = build_algebra(&hyperbolic(3), 2).unwrap();
        assert_eq!(a.dimensions(), vec![1, 3, 6, 3, 1]);
        let b = build_algebra(&hyperbolic(2), 1).unwrap();
        assert_eq!(b.dimensions(), vec![1, 2, 1]);
        assert!(b.pairing_nondegenerate().unwrap());
    }

    #[test]
    fn structure_checks() {
        let a = build_algebra(&hyperbolic(3), 2).unwrap();
        assert!(a.pairing_nondegenerate().unwrap());
        assert!(a.check_commutativity());
        assert!(a.check_associativity(Mode::Sequential));
        let g = fixtures::cayley_orthogonal(a.space().gram(), &mut fixtures::rng(4)).unwrap();
        assert!(a.check_automorphism(&g).unwrap().passed());
    }

    #[test]
    fn generic_linear_map_is_not_an_automorphism() {
        let a = build_algebra(&hyperbolic(3), 2).unwrap();
        let g = Matrix::from_i64(&[&[1, 1, 0], &[0, 1, 0], &[0, 0, 1]]);
        assert!(!a.check_automorphism(&g).unwrap().passed());
    }

    #[test]
    fn isotropic_and_anisotropic_powers() {
        let a = build_algebra(&hyperbolic(3), 2).unwrap();
        let iso = vec![q(1), q(0), q(0)];
        assert!(is_zero_vec(&a.power(&iso, 3).unwrap()));
        assert!(!is_zero_vec(&a.power(&iso, 2).unwrap()));
        let v = vec![q(1), q(1), q(1)];
        assert!(!a.norm(&v).unwrap().is_zero());
        assert!(!a.top_power(&v).unwrap().is_zero());
    }

    #[test]
    fn size_cap() {
        assert!(build_algebra(&Matrix::identity(7), 1).is_err());
        assert!(build_algebra(&Matrix::identity(2), 5).is_err());
        assert!(build_algebra(&Matrix::identity(2), 0).is_err());
    }
}
