//! Narrowing special shapes down to possible trianalytic subvarieties.
//!
//! Three filters run in order over every `Δ_(α)(A, φ)`:
//!
//! 1. pinned parts must be singletons (`n_i = 1` for `i ∈ A`);
//! 2. nothing may be pinned at all (`A = ∅`), so the subvariety is universal;
//! 3. a universal trianalytic subvariety has relative dimension zero, so
//!    every part is triangular.
//!
//! Survivors are then sorted into the improper case `(1, …, 1)`, simple
//! candidates with all parts equal (birational to `M^[l]`, `l` = number of
//! parts) and mixed diagrams, which would give a product and are set aside.

use std::collections::BTreeMap;

use super::{is_triangular, SpecialShape, YoungDiagram};
use crate::exec::Mode;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CandidateKind {
    /// The whole Hilbert scheme.
    Improper,
    /// All parts equal to `n / l`; birational to `M^[l]`.
    Simple { l: usize },
    /// Distinct part values: a product of hyperkähler factors, excluded by
    /// the Hodge-number argument rather than by a computation here.
    Mixed,
}

impl CandidateKind {
    pub fn label(&self) -> String {
        match self {
            CandidateKind::Improper => "improper".into(),
            CandidateKind::Simple { l } => format!("simple candidate, l = {l}"),
            CandidateKind::Mixed => "mixed parts (product case)".into(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Candidate {
    pub diagram: YoungDiagram,
    pub kind: CandidateKind,
    pub trail: Vec<String>,
}

#[derive(Clone, Debug)]
pub struct CandidateReport {
    pub n: usize,
    pub shapes_total: usize,
    pub after_singleton_pins: usize,
    pub after_universal: usize,
    pub after_triangular: usize,
    pub candidates: Vec<Candidate>,
}

impl CandidateReport {
    pub fn proper(&self) -> impl Iterator<Item = &Candidate> {
        self.candidates
            .iter()
            .filter(|c| c.kind != CandidateKind::Improper)
    }
}

pub fn trianalytic_candidates(n: usize) -> Result<CandidateReport> {
    trianalytic_candidates_with(n, Mode::default())
}

pub fn trianalytic_candidates_with(n: usize, mode: Mode) -> Result<CandidateReport> {
    if n < 2 {
        return Err(Error::Invalid(format!(
            "trianalytic candidates need n >= 2, got {n}"
        )));
    }
    let shapes = SpecialShape::all(n);
    // (passes step 1, passes step 2) per shape
    let verdicts = mode.map(&shapes, |s| {
        let parts = s.diagram().parts();
        let pins_ok = s.fixed().iter().all(|&i| parts[i] == 1);
        (pins_ok, pins_ok && s.is_universal())
    });

    #[derive(Default)]
    struct Tally {
        total: usize,
        step1: usize,
        step2: usize,
    }
    let mut per_diagram: BTreeMap<std::cmp::Reverse<YoungDiagram>, Tally> = BTreeMap::new();
    for (s, (p1, p2)) in shapes.iter().zip(&verdicts) {
        let t = per_diagram
            .entry(std::cmp::Reverse(s.diagram().clone()))
            .or_default();
        t.total += 1;
        t.step1 += usize::from(*p1);
        t.step2 += usize::from(*p2);
    }

    let mut report = CandidateReport {
        n,
        shapes_total: shapes.len(),
        after_singleton_pins: verdicts.iter().filter(|v| v.0).count(),
        after_universal: verdicts.iter().filter(|v| v.1).count(),
        after_triangular: 0,
        candidates: Vec::new(),
    };

    for (std::cmp::Reverse(diagram), tally) in per_diagram {
        if tally.step2 == 0 {
            continue;
        }
        let non_triangular: Vec<usize> = diagram
            .parts()
            .iter()
            .copied()
            .filter(|&p| is_triangular(p).is_none())
            .collect();
        if !non_triangular.is_empty() {
            continue;
        }
        report.after_triangular += 1;
        let mut trail = vec![
            format!("{} special shapes over {diagram}", tally.total),
            format!("pinned parts are singletons: {} remain", tally.step1),
            format!("no pinned parts (universal): {} remains", tally.step2),
            format!(
                "all parts triangular: {}",
                diagram
                    .parts()
                    .iter()
                    .map(|&p| {
                        let m = is_triangular(p).unwrap();
                        format!("{p} = {m}*{}/2", m + 1)
                    })
                    .collect::<Vec<_>>()
                    .join(", ")
            ),
        ];
        let kind = if diagram.is_trivial() {
            trail.push("X = M^[n] itself".into());
            CandidateKind::Improper
        } else if diagram.is_rectangular() {
            let l = diagram.len();
            trail.push(format!(
                "equal parts {}: birational to M^[{l}]",
                diagram.parts()[0]
            ));
            CandidateKind::Simple { l }
        } else {
            trail.push("distinct part values: H^{2,0} has dimension > 1, product case".into());
            CandidateKind::Mixed
        };
        report.candidates.push(Candidate {
            diagram,
            kind,
            trail,
        });
    }
    Ok(report)
}
