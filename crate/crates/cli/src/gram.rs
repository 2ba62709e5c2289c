//! Gram matrices from JSON files: `{"dim": d, "rows": [["1", "0"], ["0", "-1/2"]]}`.

use std::path::Path;

use anyhow::{bail, Context, Result};
use serde::Deserialize;

use hilbk3::bb_lattice::{k3_gram, H2Lattice};
use hilbk3::linalg::{parse_rational, q, Matrix, Q};

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GramFile {
    dim: usize,
    rows: Vec<Vec<String>>,
}

pub fn load(path: &Path) -> Result<Matrix> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading Gram file {}", path.display()))?;
    parse(&text).with_context(|| format!("in Gram file {}", path.display()))
}

pub fn parse(text: &str) -> Result<Matrix> {
    let file: GramFile = serde_json::from_str(text)?;
    if file.dim == 0 {
        bail!("dim must be positive");
    }
    if file.rows.len() != file.dim || file.rows.iter().any(|r| r.len() != file.dim) {
        bail!("rows must form a {0}x{0} matrix", file.dim);
    }
    let rows: Vec<Vec<Q>> = file
        .rows
        .iter()
        .map(|r| {
            r.iter()
                .map(|s| parse_rational(s))
                .collect::<Result<_, _>>()
        })
        .collect::<Result<_, _>>()?;
    let m = Matrix::from_rows(rows, file.dim)?;
    if !m.is_symmetric() {
        bail!("Gram matrix is not symmetric");
    }
    Ok(m)
}

/// Default form for `A(V, n)`: the K3 lattice at rank 22, `H²(M^[n])` at
/// rank 23, and otherwise a hyperbolic plane `U` followed by up to two `⟨1⟩`
/// and then `⟨−1⟩`s, so the form is isotropic with at most 3 positive
/// directions.
pub fn default_for_dim(dim: usize, n: usize) -> Result<Matrix> {
    Ok(match dim {
        0 => bail!("dim V must be positive"),
        22 => k3_gram(),
        23 => H2Lattice::k3(n.max(2))?.full_gram(),
        1 => Matrix::identity(1),
        d => {
            let tail: Vec<Q> = (2..d).map(|i| q(if i < 4 { 1 } else { -1 })).collect();
            Matrix::block_diag(&[
                Matrix::from_i64(&[&[0, 1], &[1, 0]]),
                Matrix::diagonal(&tail),
            ])
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_validates() {
        let m = parse(r#"{"dim": 2, "rows": [["0", "1"], ["1", "-1/2"]]}"#).unwrap();
        assert_eq!(m[(1, 1)], hilbk3::linalg::frac(-1, 2));
        assert!(parse(r#"{"dim": 2, "rows": [["0", "1"], ["2", "0"]]}"#).is_err());
        assert!(parse(r#"{"dim": 2, "rows": [["0", "1"]]}"#).is_err());
        assert!(parse(r#"{"dim": 1, "rows": [["x"]]}"#).is_err());
    }

    #[test]
    fn defaults() {
        assert_eq!(default_for_dim(22, 1).unwrap().rows(), 22);
        assert_eq!(default_for_dim(23, 3).unwrap().rows(), 23);
        assert_eq!(default_for_dim(4, 1).unwrap().signature().unwrap(), (3, 1));
        assert_eq!(default_for_dim(3, 1).unwrap().signature().unwrap(), (2, 1));
        assert_eq!(default_for_dim(6, 1).unwrap().signature().unwrap(), (3, 3));
        assert!(default_for_dim(2, 1).unwrap()[(0, 0)] == q(0));
    }
}
