//! Natural subvarieties of `M^n` and special subvarieties of `M^(n)`.
//!
//! A natural subvariety of `M^n` is cut out by equations `m_i = m_j`
//! between coordinates and `m_i = t` pinning a coordinate to a point. Since
//! only incidence data matters here, a shape is a set partition of the
//! coordinates with every block marked free or fixed.

use std::collections::BTreeSet;
use std::fmt;

use super::YoungDiagram;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Block {
    /// Zero-based coordinate indices, increasing.
    pub elems: Vec<usize>,
    /// Pinned to a point of `M` rather than moving freely.
    pub fixed: bool,
}

/// Canonical form: blocks sorted by their minimal element.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NaturalShape {
    n: usize,
    blocks: Vec<Block>,
}

impl NaturalShape {
    pub fn new(n: usize, mut blocks: Vec<Block>) -> Result<Self> {
        let mut seen = vec![false; n];
        for b in &mut blocks {
            if b.elems.is_empty() {
                return Err(Error::Invalid("empty block".into()));
            }
            b.elems.sort_unstable();
            for &e in &b.elems {
                if e >= n || std::mem::replace(&mut seen[e], true) {
                    return Err(Error::Invalid(format!(
                        "coordinate {e} out of range or repeated"
                    )));
                }
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::Invalid("blocks do not cover all coordinates".into()));
        }
        blocks.sort_by_key(|b| b.elems[0]);
        Ok(NaturalShape { n, blocks })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    /// Complex dimension: two for every free block.
    pub fn dimension(&self) -> usize {
        2 * self.blocks.iter().filter(|b| !b.fixed).count()
    }

    /// Image in the symmetric power: block sizes give the diagram and the
    /// fixed blocks give the pinned parts.
    pub fn to_special(&self) -> SpecialShape {
        let mut sized: Vec<(usize, bool)> = self
            .blocks
            .iter()
            .map(|b| (b.elems.len(), b.fixed))
            .collect();
        // larger parts first; among equal parts put fixed ones first
        sized.sort_by(|a, b| b.cmp(a));
        let diagram = YoungDiagram::new(sized.iter().map(|s| s.0).collect())
            .expect("block sizes form a partition");
        let fixed = sized
            .iter()
            .enumerate()
            .filter(|(_, s)| s.1)
            .map(|(i, _)| i)
            .collect();
        SpecialShape { diagram, fixed }
    }

    fn push_block(&self, fixed: bool) -> Self {
        let mut blocks = self.blocks.clone();
        blocks.push(Block {
            elems: vec![self.n],
            fixed,
        });
        NaturalShape {
            n: self.n + 1,
            blocks,
        }
    }

    fn join(&self, coord: usize) -> Self {
        let mut blocks = self.blocks.clone();
        let b = blocks
            .iter_mut()
            .find(|b| b.elems.contains(&coord))
            .expect("coordinate in range");
        b.elems.push(self.n);
        NaturalShape {
            n: self.n + 1,
            blocks,
        }
    }
}

impl fmt::Display for NaturalShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.blocks {
            let e: Vec<String> = b.elems.iter().map(|x| (x + 1).to_string()).collect();
            write!(f, "{{{}}}{}", e.join(","), if b.fixed { "*" } else { "" })?;
        }
        Ok(())
    }
}

/// Closure under the recursive rules: `M` and points are natural in `M`,
/// and from `Z ⊂ M^n` one gets `Z × M`, `Z × {t}` and
/// `{m ∈ Z × M : m_i = m_{n+1}}`.
pub fn natural_shapes_by_grammar(n: usize) -> BTreeSet<NaturalShape> {
    let mut level: BTreeSet<NaturalShape> = BTreeSet::new();
    if n == 0 {
        return level;
    }
    let empty = NaturalShape {
        n: 0,
        blocks: Vec::new(),
    };
    level.insert(empty.push_block(false));
    level.insert(empty.push_block(true));
    for _ in 1..n {
        let mut next = BTreeSet::new();
        for z in &level {
            next.insert(z.push_block(false));
            next.insert(z.push_block(true));
            for i in 0..z.n {
                next.insert(z.join(i));
            }
        }
        level = next;
    }
    level
}

/// Every set partition of `{0..n}` (via restricted growth strings) with
/// every free/fixed marking of its blocks.
pub fn natural_shapes_by_set_partitions(n: usize) -> BTreeSet<NaturalShape> {
    fn growth(i: usize, n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == n {
            out.push(cur.clone());
            return;
        }
        for b in 0..=max + 1 {
            cur.push(b);
            growth(i + 1, n, max.max(b), cur, out);
            cur.pop();
        }
    }
    let mut out = BTreeSet::new();
    if n == 0 {
        return out;
    }
    let mut strings = Vec::new();
    // first element is always in block 0; start from there
    growth(1, n, 0, &mut vec![0], &mut strings);
    for s in strings {
        let k = s.iter().max().unwrap() + 1;
        let mut members = vec![Vec::new(); k];
        for (e, &b) in s.iter().enumerate() {
            members[b].push(e);
        }
        for mask in 0u64..(1 << k) {
            let blocks = members
                .iter()
                .enumerate()
                .map(|(j, m)| Block {
                    elems: m.clone(),
                    fixed: mask >> j & 1 == 1,
                })
                .collect();
            out.insert(NaturalShape::new(n, blocks).expect("valid set partition"));
        }
    }
    out
}

/// All natural shapes in `M^n`. Both constructions are run and must agree.
pub fn natural_shapes(n: usize) -> Result<Vec<NaturalShape>> {
    if n == 0 {
        return Err(Error::Invalid("n must be at least 1".into()));
    }
    let by_grammar = natural_shapes_by_grammar(n);
    let by_partitions = natural_shapes_by_set_partitions(n);
    if by_grammar != by_partitions {
        return Err(Error::Construction(format!(
            "grammar closure ({}) and marked set partitions ({}) disagree for n = {n}",
            by_grammar.len(),
            by_partitions.len()
        )));
    }
    Ok(by_grammar.into_iter().collect())
}

/// `Δ_(α)(A, φ)`: the diagonal `Δ_(α)` with the parts indexed by `A`
/// pinned to points. Only `|A|` and which parts are pinned matter, so the
/// points themselves are not stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SpecialShape {
    diagram: YoungDiagram,
    /// Zero-based indices into the parts of `diagram`.
    fixed: BTreeSet<usize>,
}

impl SpecialShape {
    pub fn new(diagram: YoungDiagram, fixed: impl IntoIterator<Item = usize>) -> Result<Self> {
        let fixed: BTreeSet<usize> = fixed.into_iter().collect();
        if let Some(&i) = fixed.iter().find(|&&i| i >= diagram.len()) {
            return Err(Error::Invalid(format!(
                "fixed index {i} out of range for {diagram} with {} parts",
                diagram.len()
            )));
        }
        Ok(SpecialShape { diagram, fixed })
    }

    /// `A = ∅`.
    pub fn universal(diagram: YoungDiagram) -> Self {
        SpecialShape {
            diagram,
            fixed: BTreeSet::new(),
        }
    }

    /// Every `(α, A)` with `α ⊢ n` and `A ⊆ {0..k}`.
    pub fn all(n: usize) -> Vec<SpecialShape> {
        super::partitions(n)
            .into_iter()
            .flat_map(|d| {
                let k = d.len();
                (0u64..1 << k).map(move |mask| SpecialShape {
                    diagram: d.clone(),
                    fixed: (0..k).filter(|i| mask >> i & 1 == 1).collect(),
                })
            })
            .collect()
    }

    pub fn diagram(&self) -> &YoungDiagram {
        &self.diagram
    }

    pub fn fixed(&self) -> &BTreeSet<usize> {
        &self.fixed
    }

    pub fn is_universal(&self) -> bool {
        self.fixed.is_empty()
    }

    /// Complex dimension `2 (k − |A|)`: each unpinned part moves in `M`.
    pub fn dimension(&self) -> usize {
        2 * (self.diagram.len() - self.fixed.len())
    }

    /// Local moduli: the points `φ(i)` move (2 each) and the punctual data
    /// over each pinned point moves in a fibre of dimension `n_i − 1`.
    pub fn deformation_dimension(&self) -> usize {
        let parts = self.diagram.parts();
        self.fixed.iter().map(|&i| 2 + parts[i] - 1).sum()
    }
}

impl fmt::Display for SpecialShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let a: Vec<String> = self.fixed.iter().map(|i| (i + 1).to_string()).collect();
        write!(f, "{} A={{{}}}", self.diagram, a.join(","))
    }
}
