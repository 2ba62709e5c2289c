//! The certification driver: every candidate that survives the
//! combinatorial filters gets a computed obstruction or an explicit flag.
//!
//! * `(n/l, …, n/l)` with `l ≥ 2`: the pulled-back BB form differs from the
//!   BB form of `M^[l]` by `c δ_l²`, and `c ≠ 0` rules the subvariety out.
//! * `(n)` with `n = k(k+1)/2`: the image of `M` would force the degree-4
//!   functional `f = B + 2(n − 1) d²` to be `su(2)`-invariant, and it is not.
//! * diagrams with distinct part values are flagged and never certified.

use num_traits::Zero;

use super::{
    is_su2_invariant, obstruction_coefficient, obstruction_coefficient_in, H2Lattice, PeriodTriple,
};
use crate::exec::Mode;
use crate::fixtures::{self, DeltaMode};
use crate::frobenius::restriction_functional;
use crate::linalg::{Matrix, Q};
use crate::partitions::{is_triangular, trianalytic_candidates_with, CandidateKind, YoungDiagram};
use crate::{Error, Result};

/// Number of seeded period triples tried per `l = 1` candidate.
pub const H4_TRIPLES: usize = 3;

/// `true` iff `f = B + 2(n − 1) d²` is not invariant under the `su(2)`
/// generated by `triple`, i.e. `M ⊂ M^[n]` cannot be trianalytic.
pub fn h4_obstruction(lattice: &H2Lattice, triple: &PeriodTriple) -> Result<bool> {
    if !triple.sees_delta() {
        return Err(Error::Degenerate(
            "period triple is orthogonal to the δ direction; d² is trivially invariant".into(),
        ));
    }
    let f = restriction_functional(lattice)?;
    Ok(!is_su2_invariant(lattice, &f, triple)?)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// `M^[n]` itself.
    Improper,
    /// `l ≥ 2`, with the nonzero `δ_l²` coefficient.
    Obstructed { l: usize, coefficient: Q },
    /// `l = 1`: `f` failed invariance for every tested triple.
    H4Obstructed { k: usize, triples: usize },
    /// Distinct part values; not covered by a computation.
    ProductCase,
    /// A simple candidate the computation could not rule out.
    Open,
}

impl Verdict {
    pub fn is_obstructed(&self) -> bool {
        matches!(
            self,
            Verdict::Obstructed { .. } | Verdict::H4Obstructed { .. }
        )
    }

    pub fn label(&self) -> String {
        match self {
            Verdict::Improper => "improper".into(),
            Verdict::Obstructed { coefficient, .. } => format!("obstructed, c = {coefficient}"),
            Verdict::H4Obstructed { .. } => "obstructed, h4 = true".into(),
            Verdict::ProductCase => "product case, flagged".into(),
            Verdict::Open => "not obstructed".into(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct CandidateVerdict {
    pub diagram: YoungDiagram,
    pub kind: CandidateKind,
    pub verdict: Verdict,
    pub trail: Vec<String>,
}

#[derive(Clone, Debug)]
pub struct CertificationReport {
    pub n: usize,
    pub seed: u64,
    pub candidates: Vec<CandidateVerdict>,
    /// Every proper simple candidate carries an obstruction.
    pub certified: bool,
    /// Mixed diagrams set aside.
    pub flagged: usize,
}

impl CertificationReport {
    pub fn proper_simple(&self) -> impl Iterator<Item = &CandidateVerdict> {
        self.candidates
            .iter()
            .filter(|c| matches!(c.kind, CandidateKind::Simple { .. }))
    }

    pub fn has_proper_candidates(&self) -> bool {
        self.candidates
            .iter()
            .any(|c| c.kind != CandidateKind::Improper)
    }
}

/// Runs [`certify_no_trianalytic_with`] in the default mode.
pub fn certify_no_trianalytic(
    n: usize,
    gram: Option<&Matrix>,
    seed: u64,
) -> Result<CertificationReport> {
    certify_no_trianalytic_with(n, gram, seed, Mode::default())
}

/// `gram` is the form on `H²(M)` (default: K3). `seed` drives the period
/// triples for the `l = 1` check only; coefficients do not depend on it.
pub fn certify_no_trianalytic_with(
    n: usize,
    gram: Option<&Matrix>,
    seed: u64,
    mode: Mode,
) -> Result<CertificationReport> {
    let gram = gram.cloned().unwrap_or_else(super::k3_gram);
    let source = H2Lattice::new(n, gram)?;
    let report = trianalytic_candidates_with(n, mode)?;

    let mut out = Vec::with_capacity(report.candidates.len());
    for cand in report.candidates {
        let mut trail = cand.trail.clone();
        let verdict = match cand.kind {
            CandidateKind::Improper => Verdict::Improper,
            CandidateKind::Mixed => {
                trail.push("product case: flagged, not certified".into());
                Verdict::ProductCase
            }
            CandidateKind::Simple { l } if l >= 2 => simple_verdict(&source, l, &mut trail)?,
            CandidateKind::Simple { .. } => h4_verdict(&source, seed, &mut trail)?,
        };
        out.push(CandidateVerdict {
            diagram: cand.diagram,
            kind: cand.kind,
            verdict,
            trail,
        });
    }

    let certified = out
        .iter()
        .filter(|c| matches!(c.kind, CandidateKind::Simple { .. }))
        .all(|c| c.verdict.is_obstructed());
    let flagged = out
        .iter()
        .filter(|c| c.verdict == Verdict::ProductCase)
        .count();
    Ok(CertificationReport {
        n,
        seed,
        candidates: out,
        certified,
        flagged,
    })
}

fn simple_verdict(source: &H2Lattice, l: usize, trail: &mut Vec<String>) -> Result<Verdict> {
    let n = source.n();
    let t = n / l;
    let c = obstruction_coefficient(n, l)?;
    let via_tensor = obstruction_coefficient_in(source, &source.with_n(l)?)?;
    if c != via_tensor {
        return Err(Error::Construction(format!(
            "obstruction coefficient {c} disagrees with the tensor computation {via_tensor}"
        )));
    }
    // c = 0 exactly when n − 1 = t (l − 1)
    let weak = n - 1 != t * (l - 1);
    if weak == c.is_zero() {
        return Err(Error::Construction(
            "weak criterion n-1 != t(l-1) disagrees with c".into(),
        ));
    }
    trail.push(format!("pullback: v -> v, delta_{n} -> {t} delta_{l}"));
    trail.push(format!(
        "phi^* B_[{n}] - B_[{l}] = c delta_{l}^2, c = 1/(2(l-1)) - (n/l)/(2(n-1)) = 1/{} - {t}/{} = {c}",
        2 * (l - 1),
        2 * (n - 1)
    ));
    trail.push(format!("n - 1 = {} vs t(l - 1) = {}", n - 1, t * (l - 1)));
    Ok(if c.is_zero() {
        trail.push("c = 0: no obstruction".into());
        Verdict::Open
    } else {
        trail.push("c != 0: the pulled-back form is not the BB form of M^[l]".into());
        Verdict::Obstructed { l, coefficient: c }
    })
}

fn h4_verdict(source: &H2Lattice, seed: u64, trail: &mut Vec<String>) -> Result<Verdict> {
    let n = source.n();
    let k = is_triangular(n).expect("l = 1 candidates have triangular n");
    let mut rng = fixtures::rng(seed);
    let mut all = true;
    for _ in 0..H4_TRIPLES {
        let triple = fixtures::random_period_triple(source, &mut rng, DeltaMode::Generic)?;
        all &= h4_obstruction(source, &triple)?;
    }
    trail.push(format!(
        "n = {k}*{}/2: image of M under the universal embedding",
        k + 1
    ));
    trail.push(format!(
        "f = B + 2(n-1) d^2 = B + {} d^2 on S^2 H^2; f(delta, delta) = 0",
        2 * (n - 1)
    ));
    trail.push(format!(
        "su(2) invariance of f tested on {H4_TRIPLES} seeded period triples with nonzero delta projection: {}",
        if all { "never invariant" } else { "invariant for some triple" }
    ));
    Ok(if all {
        Verdict::H4Obstructed {
            k,
            triples: H4_TRIPLES,
        }
    } else {
        Verdict::Open
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::frac;

    #[test]
    fn n6_matches_the_worked_example() {
        let r = certify_no_trianalytic(6, None, 0).unwrap();
        assert!(r.certified);
        let find = |parts: &[usize]| {
            r.candidates
                .iter()
                .find(|c| c.diagram.parts() == parts)
                .unwrap()
                .verdict
                .clone()
        };
        assert_eq!(
            find(&[3, 3]),
            Verdict::Obstructed {
                l: 2,
                coefficient: frac(1, 5)
            }
        );
        assert_eq!(
            find(&[6]),
            Verdict::H4Obstructed {
                k: 3,
                triples: H4_TRIPLES
            }
        );
        assert_eq!(find(&[1, 1, 1, 1, 1, 1]), Verdict::Improper);
        assert!(r.flagged > 0);
        assert_eq!(find(&[3, 1, 1, 1]), Verdict::ProductCase);
    }

    #[test]
    fn small_n() {
        let r2 = certify_no_trianalytic(2, None, 0).unwrap();
        assert!(!r2.has_proper_candidates());
        assert!(r2.certified);
        let r3 = certify_no_trianalytic(3, None, 0).unwrap();
        assert!(r3
            .candidates
            .iter()
            .any(|c| c.verdict == Verdict::H4Obstructed { k: 2, triples: 3 }));
    }

    #[test]
    fn h4_rejects_blind_triple_and_needs_triangular() {
        let l = H2Lattice::k3(3).unwrap();
        let mut rng = fixtures::rng(1);
        let w = fixtures::random_period_triple(&l, &mut rng, DeltaMode::Orthogonal).unwrap();
        assert!(h4_obstruction(&l, &w).is_err());
        let l4 = H2Lattice::k3(4).unwrap();
        let w4 = fixtures::random_period_triple(&l4, &mut rng, DeltaMode::Generic).unwrap();
        assert!(h4_obstruction(&l4, &w4).is_err());
    }

    #[test]
    fn seed_does_not_change_verdicts() {
        let a = certify_no_trianalytic(10, None, 1).unwrap();
        let b = certify_no_trianalytic(10, None, 99).unwrap();
        let va: Vec<_> = a.candidates.iter().map(|c| c.verdict.clone()).collect();
        let vb: Vec<_> = b.candidates.iter().map(|c| c.verdict.clone()).collect();
        assert_eq!(va, vb);
    }
}
