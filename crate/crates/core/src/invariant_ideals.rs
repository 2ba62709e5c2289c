//! `sl2`-invariant ideals of the truncated ring `C[x, y] / m^N` and the
//! torus-fixed points of the punctual Hilbert scheme that survive the
//! `sl2` action.
//!
//! `sl2` acts by `e = x∂_y`, `f = y∂_x`, `h = x∂_x − y∂_y`. Each graded
//! piece `A_l` (homogeneous of degree `l`) is the irreducible module of
//! dimension `l + 1`, so invariant subspaces are sums of graded pieces and
//! the ideals among them are the powers of `m`.

use std::collections::BTreeSet;

use num_traits::{One, Zero};

use crate::exec::Mode;
use crate::linalg::{q, Matrix, Q};
use crate::partitions::{partitions, YoungDiagram};
use crate::{Error, Result};

/// `C[x, y] / m^N` with monomial basis `x^a y^b`, `a + b < N`, ordered by
/// degree and then by decreasing `a`.
#[derive(Clone, Debug)]
pub struct TruncatedRing {
    order: usize,
}

impl TruncatedRing {
    pub fn new(order: usize) -> Result<Self> {
        if order == 0 {
            return Err(Error::Invalid("truncation order must be positive".into()));
        }
        Ok(TruncatedRing { order })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn dim(&self) -> usize {
        self.order * (self.order + 1) / 2
    }

    /// Position of `x^a y^b`, or `None` if it is truncated away.
    pub fn index(&self, a: usize, b: usize) -> Option<usize> {
        let l = a + b;
        (l < self.order).then(|| l * (l + 1) / 2 + (l - a))
    }

    pub fn monomial(&self, idx: usize) -> (usize, usize) {
        let mut l = 0;
        while (l + 1) * (l + 2) / 2 <= idx {
            l += 1;
        }
        let a = l - (idx - l * (l + 1) / 2);
        (a, l - a)
    }

    /// Indices of the graded piece `A_l`.
    pub fn graded_piece(&self, l: usize) -> std::ops::Range<usize> {
        if l >= self.order {
            return 0..0;
        }
        l * (l + 1) / 2..(l + 1) * (l + 2) / 2
    }

    fn operator(&self, image: impl Fn(usize, usize) -> Option<(Q, usize, usize)>) -> Matrix {
        let mut m = Matrix::zeros(self.dim(), self.dim());
        for col in 0..self.dim() {
            let (a, b) = self.monomial(col);
            if let Some((c, a2, b2)) = image(a, b) {
                if let Some(row) = self.index(a2, b2) {
                    m[(row, col)] += c;
                }
            }
        }
        m
    }

    /// Multiplication by `x`.
    pub fn mul_x(&self) -> Matrix {
        self.operator(|a, b| Some((Q::one(), a + 1, b)))
    }

    /// Multiplication by `y`.
    pub fn mul_y(&self) -> Matrix {
        self.operator(|a, b| Some((Q::one(), a, b + 1)))
    }
}

/// The `sl2` operators on a [`TruncatedRing`].
#[derive(Clone, Debug)]
pub struct Sl2Action {
    pub e: Matrix,
    pub f: Matrix,
    pub h: Matrix,
}

impl Sl2Action {
    pub fn new(ring: &TruncatedRing) -> Self {
        let e = ring.operator(|a, b| (b > 0).then(|| (q(b as i64), a + 1, b - 1)));
        let f = ring.operator(|a, b| (a > 0).then(|| (q(a as i64), a - 1, b + 1)));
        let h = ring.operator(|a, b| Some((q(a as i64 - b as i64), a, b)));
        Sl2Action { e, f, h }
    }

    fn bracket(x: &Matrix, y: &Matrix) -> Matrix {
        x.mul(y)
            .expect("square")
            .sub(&y.mul(x).expect("square"))
            .expect("square")
    }

    /// `[e, f] = h`, `[h, e] = 2e`, `[h, f] = −2f`.
    pub fn brackets_hold(&self) -> bool {
        Self::bracket(&self.e, &self.f) == self.h
            && Self::bracket(&self.h, &self.e) == self.e.scale(&q(2))
            && Self::bracket(&self.h, &self.f) == self.f.scale(&q(-2))
    }
}

fn block(m: &Matrix, range: std::ops::Range<usize>) -> Matrix {
    let start = range.start;
    Matrix::from_fn(range.len(), range.len(), |i, j| {
        m[(start + i, start + j)].clone()
    })
}

/// Dimension of `ker e` on a module given by its `e` matrix. For a finite
/// dimensional `sl2`-module this counts irreducible summands.
pub fn highest_weight_count(e: &Matrix) -> usize {
    e.cols() - e.rank()
}

/// `true` iff `A_l ⊂ C[x, y]/m^N` has a single highest-weight line.
pub fn irreducibility_certificate(l: usize, order: usize) -> Result<bool> {
    if l >= order {
        return Err(Error::Invalid(format!(
            "A_{l} is truncated away in C[x,y]/m^{order}"
        )));
    }
    let ring = TruncatedRing::new(order)?;
    let sl2 = Sl2Action::new(&ring);
    Ok(highest_weight_count(&block(&sl2.e, ring.graded_piece(l))) == 1)
}

/// A subspace of the truncated ring spanned by whole graded pieces.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct GradedSubspace {
    pub degrees: BTreeSet<usize>,
}

impl GradedSubspace {
    /// `Some(j)` when the subspace is `m^j`.
    pub fn as_power(&self, order: usize) -> Option<usize> {
        let j = *self.degrees.iter().next()?;
        (self.degrees.len() == order - j && self.degrees.iter().copied().eq(j..order)).then_some(j)
    }

    fn contains_vector(&self, ring: &TruncatedRing, v: &[Q]) -> bool {
        v.iter().enumerate().all(|(i, c)| {
            c.is_zero() || {
                let (a, b) = ring.monomial(i);
                self.degrees.contains(&(a + b))
            }
        })
    }

    fn basis(&self, ring: &TruncatedRing) -> Vec<usize> {
        self.degrees
            .iter()
            .flat_map(|&l| ring.graded_piece(l))
            .collect()
    }

    /// Image of every basis vector under `op` stays inside.
    pub fn stable_under(&self, ring: &TruncatedRing, op: &Matrix) -> bool {
        self.basis(ring)
            .into_iter()
            .all(|i| self.contains_vector(ring, &op.column(i)))
    }
}

#[derive(Clone, Debug)]
pub struct IdealClassification {
    pub order: usize,
    /// `highest_weight_count` of each `A_l`.
    pub highest_weights: Vec<usize>,
    pub invariant_subspaces: usize,
    pub ideals: Vec<GradedSubspace>,
}

impl IdealClassification {
    /// The `j` with `m^j` in the list, in increasing order.
    pub fn powers(&self) -> Option<Vec<usize>> {
        self.ideals.iter().map(|i| i.as_power(self.order)).collect()
    }
}

/// All proper nonzero ideals of `C[x, y]/m^N` invariant under `e, f, h`.
pub fn classify_invariant_ideals(order: usize) -> Result<IdealClassification> {
    if !(2..=16).contains(&order) {
        return Err(Error::Invalid(format!(
            "truncation order must be in 2..=16, got {order}"
        )));
    }
    let ring = TruncatedRing::new(order)?;
    let sl2 = Sl2Action::new(&ring);
    if !sl2.brackets_hold() {
        return Err(Error::Construction("sl2 bracket relations fail".into()));
    }
    let highest_weights: Vec<usize> = (0..order)
        .map(|l| highest_weight_count(&block(&sl2.e, ring.graded_piece(l))))
        .collect();
    if highest_weights.iter().any(|&c| c != 1) {
        return Err(Error::Construction(format!(
            "graded pieces are not irreducible: highest weights {highest_weights:?}"
        )));
    }
    // irreducible pieces of distinct dimension: invariant subspaces are
    // exactly sums of graded pieces
    let (x, y) = (ring.mul_x(), ring.mul_y());
    let mut invariant_subspaces = 0;
    let mut ideals = Vec::new();
    for mask in 1u32..(1 << order) {
        let s = GradedSubspace {
            degrees: (0..order).filter(|&l| mask >> l & 1 == 1).collect(),
        };
        if !(s.stable_under(&ring, &sl2.e) && s.stable_under(&ring, &sl2.f)) {
            return Err(Error::Construction(format!(
                "{:?} is not sl2-stable",
                s.degrees
            )));
        }
        invariant_subspaces += 1;
        if s.degrees.contains(&0) {
            continue; // contains 1
        }
        if s.stable_under(&ring, &x) && s.stable_under(&ring, &y) {
            ideals.push(s);
        }
    }
    ideals.sort_by_key(|s| std::cmp::Reverse(s.degrees.len()));
    Ok(IdealClassification {
        order,
        highest_weights,
        invariant_subspaces,
        ideals,
    })
}

/// Torus-fixed ideal of colength `|λ|`: the quotient is spanned by the
/// staircase `x^a y^b`, `b < λ_a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialIdeal {
    pub staircase: YoungDiagram,
}

impl MonomialIdeal {
    pub fn new(staircase: YoungDiagram) -> Self {
        MonomialIdeal { staircase }
    }

    pub fn colength(&self) -> usize {
        self.staircase.weight()
    }

    pub fn contains(&self, a: usize, b: usize) -> bool {
        self.staircase.parts().get(a).is_none_or(|&p| b >= p)
    }

    /// Minimal monomial generators `x^a y^b`.
    pub fn generators(&self) -> Vec<(usize, usize)> {
        let parts = self.staircase.parts();
        let mut out = Vec::new();
        for a in 0..=parts.len() {
            let b = parts.get(a).copied().unwrap_or(0);
            let prev = if a == 0 { usize::MAX } else { parts[a - 1] };
            if b < prev {
                out.push((a, b));
            }
        }
        out
    }

    /// `Some(l)` if this is `m^l`, whose staircase is `(l, l−1, …, 1)`.
    pub fn as_power(&self) -> Option<usize> {
        let parts = self.staircase.parts();
        let l = parts.len();
        parts
            .iter()
            .enumerate()
            .all(|(a, &p)| p == l - a)
            .then_some(l)
    }

    /// Ideal membership of every basis monomial of `ring`.
    fn support(&self, ring: &TruncatedRing) -> Vec<bool> {
        (0..ring.dim())
            .map(|i| {
                let (a, b) = ring.monomial(i);
                self.contains(a, b)
            })
            .collect()
    }

    fn stable(support: &[bool], op: &OperatorSupport) -> bool {
        op.0.iter()
            .zip(support)
            .filter(|(_, inside)| **inside)
            .all(|(rows, _)| rows.iter().all(|&r| support[r]))
    }

    /// Closed under `x·`, `y·` inside `C[x,y]/m^N`.
    pub fn is_ideal_in(&self, ops: &PunctualOperators) -> bool {
        let s = self.support(&ops.ring);
        Self::stable(&s, &ops.x) && Self::stable(&s, &ops.y)
    }

    /// Stable under `e` and `f`.
    pub fn is_sl2_stable_in(&self, ops: &PunctualOperators) -> bool {
        let s = self.support(&ops.ring);
        Self::stable(&s, &ops.e) && Self::stable(&s, &ops.f)
    }

    /// `dim C[x,y]/m^N − dim I` computed on the ring.
    pub fn quotient_dimension(&self, ring: &TruncatedRing) -> usize {
        self.support(ring).iter().filter(|s| !**s).count()
    }
}

/// Rows with a nonzero entry, per column of an operator matrix.
#[derive(Clone, Debug)]
pub struct OperatorSupport(Vec<Vec<usize>>);

impl OperatorSupport {
    pub fn of(m: &Matrix) -> Self {
        OperatorSupport(
            (0..m.cols())
                .map(|c| (0..m.rows()).filter(|&r| !m[(r, c)].is_zero()).collect())
                .collect(),
        )
    }
}

/// `e`, `f`, `x·`, `y·` on one truncated ring, reduced to their supports.
#[derive(Clone, Debug)]
pub struct PunctualOperators {
    pub ring: TruncatedRing,
    e: OperatorSupport,
    f: OperatorSupport,
    x: OperatorSupport,
    y: OperatorSupport,
}

impl PunctualOperators {
    pub fn new(ring: TruncatedRing) -> Self {
        let sl2 = Sl2Action::new(&ring);
        PunctualOperators {
            e: OperatorSupport::of(&sl2.e),
            f: OperatorSupport::of(&sl2.f),
            x: OperatorSupport::of(&ring.mul_x()),
            y: OperatorSupport::of(&ring.mul_y()),
            ring,
        }
    }
}

impl std::fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.as_power() {
            Some(l) => write!(f, "m^{l}"),
            None => {
                let gens: Vec<String> = self
                    .generators()
                    .into_iter()
                    .map(|(a, b)| {
                        let pow = |v: &str, k: usize| match k {
                            0 => String::new(),
                            1 => v.to_string(),
                            k => format!("{v}^{k}"),
                        };
                        let s = pow("x", a) + &pow("y", b);
                        if s.is_empty() {
                            "1".into()
                        } else {
                            s
                        }
                    })
                    .collect();
                write!(f, "({})", gens.join(", "))
            }
        }
    }
}

/// Colength-`i` monomial ideals stable under `e` and `f`.
pub fn punctual_fixed_points(i: usize) -> Result<Vec<MonomialIdeal>> {
    punctual_fixed_points_with(i, Mode::default())
}

pub fn punctual_fixed_points_with(i: usize, mode: Mode) -> Result<Vec<MonomialIdeal>> {
    if i == 0 {
        return Err(Error::Invalid("colength must be positive".into()));
    }
    let ops = PunctualOperators::new(TruncatedRing::new(i + 1)?);
    let candidates: Vec<MonomialIdeal> =
        partitions(i).into_iter().map(MonomialIdeal::new).collect();
    let keep = mode.map(&candidates, |m| m.is_sl2_stable_in(&ops));
    let mut out = Vec::new();
    for (m, k) in candidates.into_iter().zip(keep) {
        if !k {
            continue;
        }
        if !m.is_ideal_in(&ops) || m.quotient_dimension(&ops.ring) != i {
            return Err(Error::Construction(format!(
                "staircase {} is not a colength-{i} ideal",
                m.staircase
            )));
        }
        out.push(m);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ring_indexing_round_trips() {
        let r = TruncatedRing::new(5).unwrap();
        assert_eq!(r.dim(), 15);
        for i in 0..r.dim() {
            let (a, b) = r.monomial(i);
            assert_eq!(r.index(a, b), Some(i));
        }
        assert_eq!(r.index(3, 2), None);
        assert_eq!(r.graded_piece(3).len(), 4);
    }

    #[test]
    fn brackets() {
        for n in 1..8 {
            assert!(Sl2Action::new(&TruncatedRing::new(n).unwrap()).brackets_hold());
        }
    }

    #[test]
    fn irreducibility_and_doubled_control() {
        assert!(irreducibility_certificate(0, 1).unwrap());
        assert!(irreducibility_certificate(5, 7).unwrap());
        assert!(irreducibility_certificate(7, 7).is_err());
        let ring = TruncatedRing::new(7).unwrap();
        let e = block(&Sl2Action::new(&ring).e, ring.graded_piece(5));
        assert_eq!(
            highest_weight_count(&Matrix::block_diag(&[e.clone(), e])),
            2
        );
    }

    #[test]
    fn worked_classifications() {
        assert_eq!(
            classify_invariant_ideals(2).unwrap().powers(),
            Some(vec![1])
        );
        assert_eq!(
            classify_invariant_ideals(3).unwrap().powers(),
            Some(vec![1, 2])
        );
        let c6 = classify_invariant_ideals(6).unwrap();
        assert_eq!(c6.powers(), Some(vec![1, 2, 3, 4, 5]));
        assert_eq!(c6.invariant_subspaces, 63);
    }

    #[test]
    fn worked_fixed_points() {
        let p3 = punctual_fixed_points(3).unwrap();
        assert_eq!(p3.len(), 1);
        assert_eq!(p3[0].staircase.parts(), &[2, 1]);
        assert_eq!(p3[0].to_string(), "m^2");
        assert!(punctual_fixed_points(4).unwrap().is_empty());
        assert_eq!(punctual_fixed_points(1).unwrap()[0].as_power(), Some(1));
        assert_eq!(punctual_fixed_points(10).unwrap()[0].as_power(), Some(4));
    }

    #[test]
    fn generators_of_staircases() {
        let m = MonomialIdeal::new(YoungDiagram::new(vec![3, 1]).unwrap());
        assert_eq!(m.generators(), vec![(0, 3), (1, 1), (2, 0)]);
        assert_eq!(m.to_string(), "(y^3, xy, x^2)");
        let m2 = MonomialIdeal::new(YoungDiagram::new(vec![2, 1]).unwrap());
        assert_eq!(m2.generators(), vec![(0, 2), (1, 1), (2, 0)]);
    }
}
