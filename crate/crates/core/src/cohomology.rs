//! Betti numbers of `M^(n)`, of the diagonals `Δ_(α)` and of `M^[n]`.
//!
//! The Hilbert-Chow map `M^[n] → M^(n)` is semismall with irreducible
//! fibres, so the rational cohomology of `M^[n]` splits as a sum over Young
//! diagrams of the cohomology of `Δ_(α)`, shifted up by its complex
//! codimension. Only surfaces without odd cohomology are handled.

use std::fmt;

use crate::exec::Mode;
use crate::partitions::{self, codim_diagonal, fiber_dimension, YoungDiagram};
use crate::{Error, Result};

/// Even Betti numbers of a connected compact surface with `b1 = b3 = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SurfaceBetti {
    pub b0: u64,
    pub b2: u64,
    pub b4: u64,
}

impl SurfaceBetti {
    /// `b2 = 22` for a K3 surface (a standard topological constant).
    pub const K3: SurfaceBetti = SurfaceBetti {
        b0: 1,
        b2: 22,
        b4: 1,
    };

    pub fn new(b0: u64, b2: u64, b4: u64) -> Result<Self> {
        if b0 != 1 || b4 != 1 {
            return Err(Error::Invalid(format!(
                "surface must be connected and compact (b0 = b4 = 1), got ({b0}, {b2}, {b4})"
            )));
        }
        Ok(SurfaceBetti { b0, b2, b4 })
    }

    /// From the full vector `(b0, b1, b2, b3, b4)`; nonzero odd entries are
    /// rejected.
    pub fn from_betti(betti: &[u64]) -> Result<Self> {
        match betti {
            [b0, b1, b2, b3, b4] => {
                if *b1 != 0 || *b3 != 0 {
                    return Err(Error::Invalid(format!(
                        "odd cohomology (b1 = {b1}, b3 = {b3}) is not supported"
                    )));
                }
                Self::new(*b0, *b2, *b4)
            }
            [b0, b2, b4] => Self::new(*b0, *b2, *b4),
            _ => Err(Error::Invalid(format!(
                "expected 3 even or 5 Betti numbers, got {}",
                betti.len()
            ))),
        }
    }

    /// Parses `"b0,b2,b4"` or `"b0,b1,b2,b3,b4"`.
    pub fn parse(s: &str) -> Result<Self> {
        let nums = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u64>()
                    .map_err(|_| Error::Parse(format!("bad Betti number {t:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_betti(&nums)
    }

    pub fn poincare(&self) -> PoincarePolynomial {
        PoincarePolynomial::new(vec![self.b0, 0, self.b2, 0, self.b4])
    }

    /// `(degree, count)` for each graded piece of the cohomology.
    fn graded_pieces(&self) -> [(usize, u64); 3] {
        [(0, self.b0), (2, self.b2), (4, self.b4)]
    }
}

impl Default for SurfaceBetti {
    fn default() -> Self {
        Self::K3
    }
}

/// Betti numbers indexed by cohomological degree.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PoincarePolynomial {
    betti: Vec<u64>,
}

impl PoincarePolynomial {
    /// Trailing zeros are trimmed; the zero polynomial is `[]`.
    pub fn new(mut betti: Vec<u64>) -> Self {
        while betti.last() == Some(&0) {
            betti.pop();
        }
        PoincarePolynomial { betti }
    }

    pub fn one() -> Self {
        PoincarePolynomial { betti: vec![1] }
    }

    pub fn betti(&self) -> &[u64] {
        &self.betti
    }

    /// `b_i`, zero outside the stored range.
    pub fn get(&self, i: usize) -> u64 {
        self.betti.get(i).copied().unwrap_or(0)
    }

    pub fn top_degree(&self) -> Option<usize> {
        self.betti.len().checked_sub(1)
    }

    /// Cohomology of a product (Künneth).
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.betti.is_empty() || other.betti.is_empty() {
            return Ok(PoincarePolynomial::new(Vec::new()));
        }
        let mut out = vec![0u64; self.betti.len() + other.betti.len() - 1];
        for (i, a) in self.betti.iter().enumerate() {
            for (j, b) in other.betti.iter().enumerate() {
                let p = a.checked_mul(*b).ok_or_else(overflow)?;
                out[i + j] = out[i + j].checked_add(p).ok_or_else(overflow)?;
            }
        }
        Ok(PoincarePolynomial::new(out))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let len = self.betti.len().max(other.betti.len());
        let out = (0..len)
            .map(|i| self.get(i).checked_add(other.get(i)).ok_or_else(overflow))
            .collect::<Result<Vec<_>>>()?;
        Ok(PoincarePolynomial::new(out))
    }

    /// Multiplication by `t^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.betti.is_empty() {
            return self.clone();
        }
        let mut betti = vec![0; k];
        betti.extend_from_slice(&self.betti);
        PoincarePolynomial { betti }
    }

    pub fn euler_characteristic(&self) -> i128 {
        self.betti
            .iter()
            .enumerate()
            .map(|(i, &b)| if i % 2 == 0 { b as i128 } else { -(b as i128) })
            .sum()
    }

    pub fn total_dimension(&self) -> u128 {
        self.betti.iter().map(|&b| b as u128).sum()
    }

    /// `b_i = b_{top − i}` for all `i`.
    pub fn satisfies_duality(&self) -> bool {
        self.betti.iter().eq(self.betti.iter().rev())
    }

    pub fn odd_vanish(&self) -> bool {
        self.betti.iter().skip(1).step_by(2).all(|&b| b == 0)
    }
}

impl fmt::Debug for PoincarePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.betti)
    }
}

fn overflow() -> Error {
    Error::Overflow("Betti number exceeds u64".into())
}

fn binomial(n: u64, k: u64) -> Result<u64> {
    let k = k.min(n.saturating_sub(k));
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return Err(overflow());
        }
    }
    Ok(acc as u64)
}

/// Betti numbers of `M^(n)`: the `q^n` coefficient of
/// `∏_d (1 − q t^d)^{−b_d}` over the even degrees `d`.
pub fn symmetric_power_poincare(s: &SurfaceBetti, n: usize) -> Result<PoincarePolynomial> {
    // by_q[m] = t-polynomial coefficient of q^m, truncated at q^n
    let mut by_q: Vec<Vec<u64>> = vec![Vec::new(); n + 1];
    by_q[0] = vec![1];
    for (deg, count) in s.graded_pieces() {
        if count == 0 {
            continue;
        }
        let mut next: Vec<Vec<u64>> = vec![Vec::new(); n + 1];
        for (m, poly) in by_q.iter().enumerate() {
            if poly.is_empty() {
                continue;
            }
            // (1 − q t^deg)^{−count} = Σ_j C(count + j − 1, j) q^j t^{deg j}
            for j in 0..=n - m {
                let c = binomial(count + j as u64 - 1, j as u64)?;
                let target = &mut next[m + j];
                let need = poly.len() + deg * j;
                if target.len() < need {
                    target.resize(need, 0);
                }
                for (i, &b) in poly.iter().enumerate() {
                    let p = b.checked_mul(c).ok_or_else(overflow)?;
                    let slot = &mut target[i + deg * j];
                    *slot = slot.checked_add(p).ok_or_else(overflow)?;
                }
            }
        }
        by_q = next;
    }
    Ok(PoincarePolynomial::new(std::mem::take(&mut by_q[n])))
}

/// Betti numbers of `Δ_(α)`, which is normal with the rational cohomology
/// of `∏_j M^(n'_j)` over the multiplicities of equal parts.
pub fn diagonal_poincare(s: &SurfaceBetti, alpha: &YoungDiagram) -> Result<PoincarePolynomial> {
    alpha
        .refinement()
        .multiplicities
        .iter()
        .try_fold(PoincarePolynomial::one(), |acc, &m| {
            acc.mul(&symmetric_power_poincare(s, m)?)
        })
}

/// One summand of the decomposition of `H^*(M^[n])`.
#[derive(Clone, Debug)]
pub struct StratumContribution {
    pub diagram: YoungDiagram,
    /// Complex codimension of `Δ_(α)`; also the degree shift.
    pub codim: usize,
    pub diagonal: PoincarePolynomial,
    /// `diagonal` shifted up by `codim`.
    pub contribution: PoincarePolynomial,
}

#[derive(Clone, Debug)]
pub struct HilbertCohomology {
    pub n: usize,
    pub total: PoincarePolynomial,
    pub ledger: Vec<StratumContribution>,
}

impl HilbertCohomology {
    /// Strata contributing to `b_i`, with their contributions.
    pub fn ledger_at(&self, degree: usize) -> Vec<(&YoungDiagram, u64)> {
        self.ledger
            .iter()
            .filter_map(|s| {
                let c = s.contribution.get(degree);
                (c != 0).then_some((&s.diagram, c))
            })
            .collect()
    }
}

/// `b_i(M^[n]) = Σ_α b_{i − codim Δ_(α)}(Δ_(α))`.
pub fn hilbert_poincare(s: &SurfaceBetti, n: usize) -> Result<HilbertCohomology> {
    hilbert_poincare_with(s, n, Mode::default())
}

pub fn hilbert_poincare_with(s: &SurfaceBetti, n: usize, mode: Mode) -> Result<HilbertCohomology> {
    if n == 0 {
        return Err(Error::Invalid(
            "Hilbert scheme of 0 points requested".into(),
        ));
    }
    let diagrams = partitions::partitions(n);
    let ledger = mode
        .map(&diagrams, |alpha| {
            let codim = codim_diagonal(alpha);
            let diagonal = diagonal_poincare(s, alpha)?;
            let contribution = diagonal.shift(codim);
            Ok(StratumContribution {
                diagram: alpha.clone(),
                codim,
                diagonal,
                contribution,
            })
        })
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    let total = ledger
        .iter()
        .try_fold(PoincarePolynomial::new(Vec::new()), |acc, c| {
            acc.add(&c.contribution)
        })?;
    Ok(HilbertCohomology { n, total, ledger })
}

#[derive(Clone, Debug)]
pub struct SemismallStratum {
    pub diagram: YoungDiagram,
    pub fiber_dim: usize,
    pub codim: usize,
    /// `fiber_dim ≤ codim / 2`
    pub passes: bool,
    /// `2 · fiber_dim = codim`
    pub equality: bool,
}

#[derive(Clone, Debug)]
pub struct SemismallReport {
    pub n: usize,
    pub strata: Vec<SemismallStratum>,
}

impl SemismallReport {
    pub fn all_pass(&self) -> bool {
        self.strata.iter().all(|s| s.passes)
    }

    pub fn all_equal(&self) -> bool {
        self.strata.iter().all(|s| s.equality)
    }
}

/// Checks the semismall inequality for the Hilbert-Chow map on every stratum.
pub fn verify_semismall(n: usize) -> Result<SemismallReport> {
    verify_semismall_with(n, Mode::default())
}

pub fn verify_semismall_with(n: usize, mode: Mode) -> Result<SemismallReport> {
    if n == 0 {
        return Err(Error::Invalid("n must be at least 1".into()));
    }
    let strata = mode.map(&partitions::partitions(n), |alpha| {
        let fiber_dim = fiber_dimension(alpha);
        let codim = codim_diagonal(alpha);
        SemismallStratum {
            diagram: alpha.clone(),
            fiber_dim,
            codim,
            passes: 2 * fiber_dim <= codim,
            equality: 2 * fiber_dim == codim,
        }
    });
    Ok(SemismallReport { n, strata })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn yd(p: &[usize]) -> YoungDiagram {
        YoungDiagram::new(p.to_vec()).unwrap()
    }

    #[test]
    fn surface_validation() {
        assert!(SurfaceBetti::new(2, 0, 1).is_err());
        assert!(SurfaceBetti::from_betti(&[1, 4, 6, 4, 1]).is_err());
        assert_eq!(SurfaceBetti::parse("1,22,1").unwrap(), SurfaceBetti::K3);
        assert_eq!(SurfaceBetti::parse("1,0,22,0,1").unwrap(), SurfaceBetti::K3);
        assert!(SurfaceBetti::parse("1,x,1").is_err());
        assert!(SurfaceBetti::parse("1,1").is_err());
    }

    #[test]
    fn symmetric_power_small_cases() {
        let k3 = SurfaceBetti::K3;
        assert_eq!(symmetric_power_poincare(&k3, 0).unwrap().betti(), &[1]);
        assert_eq!(
            symmetric_power_poincare(&k3, 1).unwrap().betti(),
            &[1, 0, 22, 0, 1]
        );
        assert_eq!(
            symmetric_power_poincare(&k3, 2).unwrap().betti(),
            &[1, 0, 22, 0, 254, 0, 22, 0, 1]
        );
    }

    #[test]
    fn diagonal_examples() {
        let k3 = SurfaceBetti::K3;
        assert_eq!(
            diagonal_poincare(&k3, &yd(&[2])).unwrap().betti(),
            &[1, 0, 22, 0, 1]
        );
        assert_eq!(
            diagonal_poincare(&k3, &yd(&[2, 2])).unwrap(),
            symmetric_power_poincare(&k3, 2).unwrap()
        );
        assert_eq!(
            diagonal_poincare(&k3, &YoungDiagram::trivial(3)).unwrap(),
            symmetric_power_poincare(&k3, 3).unwrap()
        );
    }

    #[test]
    fn hilbert_small_cases() {
        let k3 = SurfaceBetti::K3;
        assert_eq!(
            hilbert_poincare(&k3, 1).unwrap().total.betti(),
            &[1, 0, 22, 0, 1]
        );
        let h2 = hilbert_poincare(&k3, 2).unwrap();
        assert_eq!(h2.total.betti(), &[1, 0, 23, 0, 276, 0, 23, 0, 1]);
        assert_eq!(h2.ledger_at(2), vec![(&yd(&[2]), 1), (&yd(&[1, 1]), 22)]);
        assert!(hilbert_poincare(&k3, 0).is_err());
    }

    #[test]
    fn semismall_examples() {
        let r = verify_semismall(2).unwrap();
        assert_eq!(r.strata.len(), 2);
        assert!(r.all_pass() && r.all_equal());
        assert_eq!(verify_semismall(5).unwrap().strata.len(), 7);
        let r1 = verify_semismall(1).unwrap();
        assert_eq!((r1.strata[0].fiber_dim, r1.strata[0].codim), (0, 0));
    }

    #[test]
    fn polynomial_ops() {
        let p = PoincarePolynomial::new(vec![1, 0, 2, 0, 0]);
        assert_eq!(p.betti(), &[1, 0, 2]);
        assert_eq!(p.shift(2).betti(), &[0, 0, 1, 0, 2]);
        assert_eq!(p.euler_characteristic(), 3);
        assert!(!p.satisfies_duality());
        assert!(SurfaceBetti::K3.poincare().satisfies_duality());
    }

    #[test]
    fn overflow_is_reported() {
        let big = SurfaceBetti::new(1, u64::MAX / 2, 1).unwrap();
        assert!(matches!(
            symmetric_power_poincare(&big, 3),
            Err(Error::Overflow(_))
        ));
    }
}
