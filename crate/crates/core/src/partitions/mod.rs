//! Young diagrams and the stratification of the symmetric power `M^(n)`.
//!
//! A diagram `α = (n_1 ≥ … ≥ n_k)` of weight `n` labels the diagonal
//! `Δ_(α) ⊂ M^(n)` where the `n` points collide in clusters of sizes `n_i`.

mod candidates;
mod shapes;

use std::fmt;

pub use candidates::{
    trianalytic_candidates, trianalytic_candidates_with, Candidate, CandidateKind, CandidateReport,
};
pub use shapes::{
    natural_shapes, natural_shapes_by_grammar, natural_shapes_by_set_partitions, Block,
    NaturalShape, SpecialShape,
};

use crate::{Error, Result};

/// A partition written with weakly decreasing positive parts.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct YoungDiagram {
    parts: Vec<usize>,
}

impl YoungDiagram {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::Invalid(
                "a Young diagram needs at least one part".into(),
            ));
        }
        if parts.contains(&0) {
            return Err(Error::Invalid(format!("zero part in {parts:?}")));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Invalid(format!(
                "parts {parts:?} are not weakly decreasing"
            )));
        }
        Ok(YoungDiagram { parts })
    }

    /// Sorts the parts first; still rejects zeros and empty input.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Result<Self> {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self::new(parts)
    }

    /// `(1, …, 1)` with `n` parts: the open stratum.
    pub fn trivial(n: usize) -> Self {
        YoungDiagram {
            parts: vec![1; n.max(1)],
        }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// `n = Σ n_i`.
    pub fn weight(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Number of parts `k`.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn is_trivial(&self) -> bool {
        self.parts.iter().all(|&p| p == 1)
    }

    /// All parts equal.
    pub fn is_rectangular(&self) -> bool {
        self.parts.windows(2).all(|w| w[0] == w[1])
    }

    /// Run-length encoding of equal parts.
    pub fn refinement(&self) -> Refinement {
        let mut distinct_values = Vec::new();
        let mut multiplicities = Vec::new();
        for &p in &self.parts {
            if distinct_values.last() == Some(&p) {
                *multiplicities.last_mut().unwrap() += 1;
            } else {
                distinct_values.push(p);
                multiplicities.push(1);
            }
        }
        Refinement {
            distinct_values,
            multiplicities,
        }
    }
}

impl fmt::Display for YoungDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for YoungDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "YoungDiagram{self}")
    }
}

/// Equal parts of a diagram grouped together: part value `N(j)` occurs
/// `n'_j` times.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Refinement {
    /// Strictly decreasing part values.
    pub distinct_values: Vec<usize>,
    /// How often each value occurs; sums to the number of parts.
    pub multiplicities: Vec<usize>,
}

impl Refinement {
    pub fn to_diagram(&self) -> Result<YoungDiagram> {
        let parts = self
            .distinct_values
            .iter()
            .zip(&self.multiplicities)
            .flat_map(|(&v, &m)| std::iter::repeat_n(v, m))
            .collect();
        YoungDiagram::new(parts)
    }
}

/// All partitions of `n`, in decreasing lexicographic order, starting at
/// `(n)` and ending at `(1, …, 1)`. `n = 0` yields nothing.
pub fn partitions(n: usize) -> Vec<YoungDiagram> {
    fn go(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<YoungDiagram>) {
        if rest == 0 {
            out.push(YoungDiagram { parts: cur.clone() });
            return;
        }
        for p in (1..=max.min(rest)).rev() {
            cur.push(p);
            go(rest - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        go(n, n, &mut Vec::new(), &mut out);
    }
    out
}

/// Complex codimension of `Δ_(α)` in `M^(n)`: `2 Σ (n_i − 1)`.
pub fn codim_diagonal(alpha: &YoungDiagram) -> usize {
    2 * fiber_dimension(alpha)
}

/// Dimension of the general fibre of the Hilbert-Chow map over `Δ_(α)`.
///
/// The fibre is a product of punctual Hilbert schemes, and the punctual
/// scheme of length `m` is irreducible of dimension `m − 1`.
pub fn fiber_dimension(alpha: &YoungDiagram) -> usize {
    alpha.parts.iter().map(|&p| p - 1).sum()
}

/// `Some(l)` when `m = l(l+1)/2` with `l ≥ 1`.
pub fn is_triangular(m: usize) -> Option<usize> {
    if m == 0 {
        return None;
    }
    // l ≈ sqrt(2m); correct the float guess exactly
    let mut l = ((2.0 * m as f64).sqrt()) as usize;
    while l * (l + 1) / 2 > m {
        l -= 1;
    }
    while (l + 1) * (l + 2) / 2 <= m {
        l += 1;
    }
    (l >= 1 && l * (l + 1) / 2 == m).then_some(l)
}

/// Diagrams whose parts are all triangular: exactly the universal
/// subvarieties of relative dimension zero, one for each diagram.
pub fn enumerate_universal_reldim0(n: usize) -> Vec<YoungDiagram> {
    partitions(n)
        .into_iter()
        .filter(|a| a.parts.iter().all(|&p| is_triangular(p).is_some()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn yd(p: &[usize]) -> YoungDiagram {
        YoungDiagram::new(p.to_vec()).unwrap()
    }

    #[test]
    fn rejects_malformed_diagrams() {
        assert!(YoungDiagram::new(vec![]).is_err());
        assert!(YoungDiagram::new(vec![1, 2]).is_err());
        assert!(YoungDiagram::new(vec![2, 0]).is_err());
        assert_eq!(
            YoungDiagram::from_unsorted(vec![1, 3, 2]).unwrap(),
            yd(&[3, 2, 1])
        );
    }

    #[test]
    fn codim_examples() {
        assert_eq!(codim_diagonal(&YoungDiagram::trivial(5)), 0);
        assert_eq!(codim_diagonal(&yd(&[3, 1])), 4);
        assert_eq!(codim_diagonal(&yd(&[2])), 2);
    }

    #[test]
    fn fiber_examples() {
        assert_eq!(fiber_dimension(&YoungDiagram::trivial(4)), 0);
        assert_eq!(fiber_dimension(&yd(&[2])), 1);
        assert_eq!(fiber_dimension(&yd(&[3, 2, 1])), 3);
    }

    #[test]
    fn triangular_examples() {
        assert_eq!(is_triangular(1), Some(1));
        assert_eq!(is_triangular(6), Some(3));
        assert_eq!(is_triangular(4), None);
        assert_eq!(is_triangular(0), None);
        let brute: Vec<usize> = (1..200)
            .filter(|&m| (1..20).any(|l| l * (l + 1) / 2 == m))
            .collect();
        let fast: Vec<usize> = (1..200).filter(|&m| is_triangular(m).is_some()).collect();
        assert_eq!(brute, fast);
    }

    #[test]
    fn universal_reldim0_examples() {
        assert_eq!(enumerate_universal_reldim0(1), vec![yd(&[1])]);
        assert_eq!(
            enumerate_universal_reldim0(4),
            vec![yd(&[3, 1]), yd(&[1, 1, 1, 1])]
        );
        assert_eq!(enumerate_universal_reldim0(2), vec![yd(&[1, 1])]);
    }

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (1..=12).map(|n| partitions(n).len()).collect();
        assert_eq!(counts, vec![1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77]);
        assert!(partitions(0).is_empty());
        assert_eq!(partitions(4).first().unwrap(), &yd(&[4]));
    }

    #[test]
    fn refinement_round_trip() {
        let a = yd(&[3, 3, 2, 1, 1, 1]);
        let r = a.refinement();
        assert_eq!(r.distinct_values, vec![3, 2, 1]);
        assert_eq!(r.multiplicities, vec![2, 1, 3]);
        assert_eq!(r.multiplicities.iter().sum::<usize>(), a.len());
        assert_eq!(r.to_diagram().unwrap(), a);
    }
}
