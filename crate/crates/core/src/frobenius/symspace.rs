use std::collections::HashMap;

use num_traits::{One, Zero};

use crate::linalg::{q, Matrix, Q};
use crate::{Error, Result};

/// Exponent vectors of total degree `degree` in `dim` variables, in
/// decreasing lexicographic order.
#[derive(Clone, Debug)]
pub struct Monomials {
    dim: usize,
    degree: usize,
    exps: Vec<Vec<u8>>,
    index: HashMap<Vec<u8>, usize>,
}

impl Monomials {
    pub fn new(dim: usize, degree: usize) -> Self {
        fn go(var: usize, rest: usize, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
            if var + 1 == cur.len() {
                cur[var] = rest as u8;
                out.push(cur.clone());
                return;
            }
            for e in (0..=rest).rev() {
                cur[var] = e as u8;
                go(var + 1, rest - e, cur, out);
            }
        }
        let mut exps = Vec::new();
        if dim == 0 {
            if degree == 0 {
                exps.push(Vec::new());
            }
        } else {
            go(0, degree, &mut vec![0; dim], &mut exps);
        }
        let index = exps
            .iter()
            .enumerate()
            .map(|(i, e)| (e.clone(), i))
            .collect();
        Monomials {
            dim,
            degree,
            exps,
            index,
        }
    }

    pub fn len(&self) -> usize {
        self.exps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn exponent(&self, i: usize) -> &[u8] {
        &self.exps[i]
    }

    pub fn position(&self, exp: &[u8]) -> Option<usize> {
        self.index.get(exp).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = &[u8]> {
        self.exps.iter().map(Vec::as_slice)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }
}

/// `binom(dim + d − 1, d)`, the dimension of `S^d` of a `dim`-dimensional space.
pub fn sym_dimension(dim: usize, d: usize) -> usize {
    if dim == 0 {
        return usize::from(d == 0);
    }
    let (n, k) = (dim + d - 1, d.min(dim - 1));
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// The symmetric algebra of a quadratic space `(V, G)`, one degree at a time.
/// Elements of `S^d` are coefficient vectors over [`Monomials`] in a fixed
/// basis `e_1, …, e_m` of `V`.
#[derive(Clone, Debug)]
pub struct SymSpace {
    gram: Matrix,
    cache: std::sync::Arc<std::sync::Mutex<HashMap<usize, std::sync::Arc<Monomials>>>>,
}

impl SymSpace {
    pub fn new(gram: Matrix) -> Result<Self> {
        if !gram.is_symmetric() {
            return Err(Error::Invalid("Gram matrix is not symmetric".into()));
        }
        if gram.det()?.is_zero() {
            return Err(Error::Degenerate("Gram matrix is degenerate".into()));
        }
        Ok(SymSpace {
            gram,
            cache: Default::default(),
        })
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn dim_v(&self) -> usize {
        self.gram.rows()
    }

    pub fn monomials(&self, d: usize) -> std::sync::Arc<Monomials> {
        let mut cache = self.cache.lock().expect("monomial cache poisoned");
        cache
            .entry(d)
            .or_insert_with(|| std::sync::Arc::new(Monomials::new(self.dim_v(), d)))
            .clone()
    }

    pub fn dimension(&self, d: usize) -> usize {
        sym_dimension(self.dim_v(), d)
    }

    /// Product `S^a × S^b → S^{a+b}`.
    pub fn multiply(&self, x: &[Q], a: usize, y: &[Q], b: usize) -> Vec<Q> {
        let (ma, mb, mc) = (self.monomials(a), self.monomials(b), self.monomials(a + b));
        let mut out = vec![Q::zero(); mc.len()];
        let mut buf = vec![0u8; self.dim_v()];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                for (k, slot) in buf.iter_mut().enumerate() {
                    *slot = ma.exponent(i)[k] + mb.exponent(j)[k];
                }
                out[mc.position(&buf).expect("degree adds")] += xi * yj;
            }
        }
        out
    }

    /// `v^k` for `v ∈ V`.
    pub fn power(&self, v: &[Q], k: usize) -> Vec<Q> {
        let mut acc = vec![Q::one()];
        for d in 0..k {
            acc = self.multiply(&acc, d, v, 1);
        }
        acc
    }

    /// The invariant element `q = Σ G^{-1}_{ij} e_i e_j ∈ S²V`.
    pub fn q_element(&self) -> Result<Vec<Q>> {
        let ginv = self.gram.inverse()?;
        let m2 = self.monomials(2);
        let mut out = vec![Q::zero(); m2.len()];
        let dim = self.dim_v();
        for i in 0..dim {
            for j in 0..dim {
                let mut e = vec![0u8; dim];
                e[i] += 1;
                e[j] += 1;
                out[m2.position(&e).unwrap()] += &ginv[(i, j)];
            }
        }
        Ok(out)
    }

    /// Matrix of `Δ = Σ G_{ij} ∂_i ∂_j : S^d → S^{d−2}`.
    pub fn laplacian_matrix(&self, d: usize) -> Result<Matrix> {
        if d < 2 {
            return Err(Error::Invalid(format!(
                "Laplacian needs degree >= 2, got {d}"
            )));
        }
        let (src, dst) = (self.monomials(d), self.monomials(d - 2));
        let dim = self.dim_v();
        let mut m = Matrix::zeros(dst.len(), src.len());
        for (col, e) in src.iter().enumerate() {
            for i in 0..dim {
                for j in 0..dim {
                    let g = &self.gram[(i, j)];
                    if g.is_zero() {
                        continue;
                    }
                    let mut f = e.to_vec();
                    // ∂_i ∂_j x^e
                    let c1 = f[i] as i64;
                    if c1 == 0 {
                        continue;
                    }
                    f[i] -= 1;
                    let c2 = f[j] as i64;
                    if c2 == 0 {
                        continue;
                    }
                    f[j] -= 1;
                    let row = dst.position(&f).expect("degree drops by two");
                    m[(row, col)] += g * q(c1 * c2);
                }
            }
        }
        Ok(m)
    }

    pub fn laplacian(&self, x: &[Q], d: usize) -> Result<Vec<Q>> {
        self.laplacian_matrix(d)?.mul_vec(x)
    }

    /// Basis of the harmonic space `H^d = ker Δ ⊂ S^d`.
    pub fn harmonic_basis(&self, d: usize) -> Result<Vec<Vec<Q>>> {
        if d < 2 {
            let n = self.dimension(d);
            return Ok((0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| if i == j { Q::one() } else { Q::zero() })
                        .collect()
                })
                .collect());
        }
        Ok(self.laplacian_matrix(d)?.nullspace())
    }

    pub fn harmonic_dimension(&self, d: usize) -> Result<usize> {
        if d < 2 {
            return Ok(self.dimension(d));
        }
        Ok(self.dimension(d) - self.laplacian_matrix(d)?.rank())
    }

    /// Induced action of `g ∈ GL(V)` (columns are images of basis vectors) on `S^d`.
    pub fn induced_matrix(&self, g: &Matrix, d: usize) -> Matrix {
        let mons = self.monomials(d);
        let dim = self.dim_v();
        let images: Vec<Vec<Q>> = (0..dim).map(|j| g.column(j)).collect();
        let mut out = Matrix::zeros(mons.len(), mons.len());
        for (col, e) in mons.iter().enumerate() {
            let mut acc = vec![Q::one()];
            let mut deg = 0;
            for (j, &k) in e.iter().enumerate() {
                for _ in 0..k {
                    acc = self.multiply(&acc, deg, &images[j], 1);
                    deg += 1;
                }
            }
            for (row, v) in acc.into_iter().enumerate() {
                out[(row, col)] = v;
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::is_zero_vec;

    fn space3() -> SymSpace {
        SymSpace::new(Matrix::from_i64(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]])).unwrap()
    }

    #[test]
    fn monomial_counts() {
        assert_eq!(Monomials::new(3, 2).len(), 6);
        assert_eq!(Monomials::new(4, 3).len(), 20);
        assert_eq!(sym_dimension(23, 2), 276);
        assert_eq!(sym_dimension(3, 0), 1);
        for dim in 1..5 {
            for d in 0..6 {
                assert_eq!(Monomials::new(dim, d).len(), sym_dimension(dim, d));
            }
        }
    }

    #[test]
    fn laplacian_of_q_is_nonzero_scalar() {
        let s = space3();
        let lq = s.laplacian(&s.q_element().unwrap(), 2).unwrap();
        assert_eq!(lq.len(), 1);
        assert!(!lq[0].is_zero());
    }

    #[test]
    fn laplacian_of_square() {
        let s = space3();
        let v = vec![q(1), q(2), q(3)];
        let v2 = s.power(&v, 2);
        let qv = s.gram().bilinear(&v, &v).unwrap();
        assert_eq!(s.laplacian(&v2, 2).unwrap(), vec![q(2) * qv]);
        assert!(s.laplacian(&v, 1).is_err());
    }

    #[test]
    fn harmonic_dimensions() {
        let s = space3();
        assert_eq!(s.harmonic_dimension(0).unwrap(), 1);
        assert_eq!(s.harmonic_dimension(3).unwrap(), 7);
        for h in s.harmonic_basis(3).unwrap() {
            assert!(is_zero_vec(&s.laplacian(&h, 3).unwrap()));
        }
    }

    #[test]
    fn isotropic_powers_are_harmonic() {
        let s = space3();
        // (1, 0, 0) and (1, -2, 2) are isotropic for x0 x1 + x2²-type form 2ab + c²
        for v in [vec![q(1), q(0), q(0)], vec![q(2), q(-1), q(2)]] {
            assert!(s.gram().bilinear(&v, &v).unwrap().is_zero());
            for d in 2..5 {
                assert!(is_zero_vec(&s.laplacian(&s.power(&v, d), d).unwrap()));
            }
        }
    }
}
