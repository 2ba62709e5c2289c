//! Seeded random inputs for property checks: period triples, Gram
//! matrices, isotropic vectors and orthogonal transformations.
//!
//! Everything is driven by a ChaCha stream so a seed pins the output
//! across platforms and releases.

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bb_lattice::{H2Class, H2Lattice, PeriodTriple};
use crate::linalg::{axpy, dot, frac, q, Matrix, Q};
use crate::{Error, Result};

pub type FixtureRng = ChaCha8Rng;

pub fn rng(seed: u64) -> FixtureRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform in `{−max_num..=max_num} / {1..=max_den}`.
pub fn small_rational(rng: &mut FixtureRng, max_num: i64, max_den: i64) -> Q {
    frac(
        rng.gen_range(-max_num..=max_num),
        rng.gen_range(1..=max_den),
    )
}

pub fn random_vector(rng: &mut FixtureRng, dim: usize, max_num: i64, max_den: i64) -> Vec<Q> {
    (0..dim)
        .map(|_| small_rational(rng, max_num, max_den))
        .collect()
}

/// Symmetric nondegenerate rational matrix with small entries.
pub fn random_gram(rng: &mut FixtureRng, dim: usize) -> Matrix {
    loop {
        let mut m = Matrix::zeros(dim, dim);
        for i in 0..dim {
            for j in i..dim {
                let x = small_rational(rng, 4, 3);
                m[(i, j)] = x.clone();
                m[(j, i)] = x;
            }
        }
        if !m.det().expect("square").is_zero() {
            return m;
        }
    }
}

/// Whether the triple should see the δ direction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DeltaMode {
    /// Some `w_a` has a nonzero δ-component.
    Generic,
    /// All `w_a` lie in `V`, so `W ⊥ δ*`.
    Orthogonal,
}

/// A random positive orthogonal triple, built by perturbing a positive
/// 3-frame of the form and re-orthogonalising (Gram-Schmidt without
/// normalisation keeps everything rational).
pub fn random_period_triple(
    lattice: &H2Lattice,
    rng: &mut FixtureRng,
    mode: DeltaMode,
) -> Result<PeriodTriple> {
    let g = lattice.full_gram();
    let dim = lattice.dim();
    let (p, diag) = g.congruence_diagonalize()?;
    let positive: Vec<Vec<Q>> = (0..dim)
        .filter(|&i| diag[i].is_positive())
        .map(|i| p.column(i))
        .collect();
    if positive.len() < 3 {
        return Err(Error::Degenerate(format!(
            "form has only {} positive directions, need 3",
            positive.len()
        )));
    }
    let scale: Q = positive
        .iter()
        .take(3)
        .flat_map(|v| v.iter().map(|x| x.abs()))
        .fold(Q::one(), |a, b| if b > a { b } else { a });
    let mut eps = frac(1, 8) / scale;
    for _ in 0..64 {
        let mut frame: Vec<Vec<Q>> = Vec::with_capacity(3);
        for base in positive.iter().take(3) {
            let mut x = base.clone();
            let mut r = random_vector(rng, dim, 3, 4);
            match mode {
                DeltaMode::Orthogonal => r[dim - 1] = Q::zero(),
                DeltaMode::Generic => {
                    if r[dim - 1].is_zero() {
                        r[dim - 1] = Q::one();
                    }
                }
            }
            axpy(&mut x, &eps, &r);
            frame.push(x);
        }
        let mut w: Vec<Vec<Q>> = Vec::with_capacity(3);
        for x in frame {
            let mut y = x;
            for prev in &w {
                let gp = g.mul_vec(prev)?;
                let c = dot(&gp, &y) / dot(&gp, prev);
                axpy(&mut y, &-c, prev);
            }
            w.push(y);
        }
        let classes: Vec<H2Class> = w
            .into_iter()
            .map(H2Class::from_vec)
            .collect::<Result<_>>()?;
        let [a, b, c]: [H2Class; 3] = classes.try_into().expect("three vectors");
        if let Ok(t) = PeriodTriple::new(lattice, [a, b, c]) {
            if mode == DeltaMode::Orthogonal || t.sees_delta() {
                return Ok(t);
            }
        }
        eps /= q(2);
    }
    Err(Error::Construction(
        "could not perturb to a positive triple".into(),
    ))
}

/// An isotropic vector on the line through `base` (itself isotropic) and a
/// random direction `w`: `(w, w) base − 2 (base, w) w`.
pub fn isotropic_through(gram: &Matrix, base: &[Q], rng: &mut FixtureRng) -> Result<Vec<Q>> {
    if !gram.bilinear(base, base)?.is_zero() {
        return Err(Error::Invalid("base vector is not isotropic".into()));
    }
    loop {
        let w = random_vector(rng, gram.rows(), 5, 3);
        let bw = gram.bilinear(base, &w)?;
        if bw.is_zero() {
            continue;
        }
        let ww = gram.bilinear(&w, &w)?;
        let mut v: Vec<Q> = base.iter().map(|x| x * &ww).collect();
        axpy(&mut v, &(-q(2) * bw), &w);
        return Ok(v);
    }
}

/// A random element of `SO(gram)` by the Cayley transform
/// `(I − K)^{-1} (I + K)` with `K = G^{-1} S`, `S` skew.
pub fn cayley_orthogonal(gram: &Matrix, rng: &mut FixtureRng) -> Result<Matrix> {
    let n = gram.rows();
    let ginv = gram.inverse()?;
    loop {
        let mut s = Matrix::zeros(n, n);
        for i in 0..n {
            for j in i + 1..n {
                let x = small_rational(rng, 2, 3);
                s[(i, j)] = x.clone();
                s[(j, i)] = -x;
            }
        }
        let k = ginv.mul(&s)?;
        let id = Matrix::identity(n);
        let Ok(inv) = id.sub(&k)?.inverse() else {
            continue;
        };
        return inv.mul(&id.add(&k)?);
    }
}
