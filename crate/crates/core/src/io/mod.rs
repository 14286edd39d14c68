//! Matrix file formats and code bundles.

mod bundle;

pub use bundle::{
    read_bundle, write_bundle, AnyCode, Bundle, Construction, Manifest, Metadata, BUNDLE_SCHEMA,
    MANIFEST_FILE,
};

use std::fmt::Write as _;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2::BitMatrix;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MatrixFormat {
    /// MacKay alist: sparse, 1-based, zero-padded index lists.
    #[default]
    Alist,
    /// One row per line of `0`/`1` characters.
    Txt01,
}

impl MatrixFormat {
    pub fn extension(self) -> &'static str {
        match self {
            MatrixFormat::Alist => "alist",
            MatrixFormat::Txt01 => "txt",
        }
    }

    pub fn write(self, m: &BitMatrix) -> String {
        match self {
            MatrixFormat::Alist => write_alist(m),
            MatrixFormat::Txt01 => write_txt01(m),
        }
    }

    pub fn parse(self, s: &str) -> Result<BitMatrix> {
        match self {
            MatrixFormat::Alist => parse_alist(s),
            MatrixFormat::Txt01 => parse_txt01(s),
        }
    }
}

impl FromStr for MatrixFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "alist" => Ok(MatrixFormat::Alist),
            "txt01" | "txt" => Ok(MatrixFormat::Txt01),
            other => Err(Error::Parse(format!("unknown matrix format {other:?}"))),
        }
    }
}

fn join_padded(indices: &[usize], width: usize) -> String {
    let mut line = String::new();
    for slot in 0..width {
        if slot > 0 {
            line.push(' ');
        }
        let v = indices.get(slot).map_or(0, |&i| i + 1);
        write!(line, "{v}").unwrap();
    }
    line
}

pub fn write_alist(m: &BitMatrix) -> String {
    let t = m.transpose();
    let (n, r) = (m.cols(), m.rows());
    let col_weights: Vec<usize> = (0..n).map(|j| t.row_weight(j)).collect();
    let row_weights: Vec<usize> = (0..r).map(|i| m.row_weight(i)).collect();
    let max_col = col_weights.iter().copied().max().unwrap_or(0);
    let max_row = row_weights.iter().copied().max().unwrap_or(0);
    let list = |ws: &[usize]| {
        ws.iter()
            .map(usize::to_string)
            .collect::<Vec<_>>()
            .join(" ")
    };
    let mut out = format!(
        "{n} {r}\n{max_col} {max_row}\n{}\n{}\n",
        list(&col_weights),
        list(&row_weights)
    );
    for j in 0..n {
        out.push_str(&join_padded(&t.row_support(j), max_col));
        out.push('\n');
    }
    for i in 0..r {
        out.push_str(&join_padded(&m.row_support(i), max_row));
        out.push('\n');
    }
    out
}

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn numbers(line: &str) -> Result<Vec<usize>> {
    line.split_whitespace()
        .map(|t| {
            t.parse()
                .map_err(|_| parse_err(format!("bad integer {t:?}")))
        })
        .collect()
}

/// Parses an alist file. Column and row lists must describe the same matrix.
pub fn parse_alist(s: &str) -> Result<BitMatrix> {
    let mut lines = s.lines().map(str::trim).filter(|l| !l.is_empty());
    let mut header = |what: &str| -> Result<Vec<usize>> {
        numbers(
            lines
                .next()
                .ok_or_else(|| parse_err(format!("alist: missing {what}")))?,
        )
    };
    let dims = header("dimensions")?;
    let [n, r] = dims[..] else {
        return Err(parse_err("alist: first line must be `n m`"));
    };
    let maxes = header("maximum weights")?;
    let [max_col, max_row] = maxes[..] else {
        return Err(parse_err(
            "alist: second line must hold two maximum weights",
        ));
    };
    let col_weights = if n > 0 {
        header("column weights")?
    } else {
        Vec::new()
    };
    let row_weights = if r > 0 {
        header("row weights")?
    } else {
        Vec::new()
    };
    if col_weights.len() != n || row_weights.len() != r {
        return Err(parse_err(
            "alist: weight list lengths disagree with dimensions",
        ));
    }
    let mut from_cols = BitMatrix::zeros(r, n);
    let mut from_rows = BitMatrix::zeros(r, n);
    if max_col > 0 {
        for (j, &w) in col_weights.iter().enumerate() {
            let idx = header("column list")?;
            let support: Vec<usize> = idx.into_iter().filter(|&i| i > 0).collect();
            if support.len() != w || support.iter().any(|&i| i > r) {
                return Err(parse_err(format!(
                    "alist: column {} list is inconsistent",
                    j + 1
                )));
            }
            for i in support {
                from_cols.set(i - 1, j, true);
            }
        }
    }
    if max_row > 0 {
        for (i, &w) in row_weights.iter().enumerate() {
            let idx = header("row list")?;
            let support: Vec<usize> = idx.into_iter().filter(|&j| j > 0).collect();
            if support.len() != w || support.iter().any(|&j| j > n) {
                return Err(parse_err(format!(
                    "alist: row {} list is inconsistent",
                    i + 1
                )));
            }
            for j in support {
                from_rows.set(i, j - 1, true);
            }
        }
    }
    if from_cols != from_rows {
        return Err(parse_err("alist: column and row lists disagree"));
    }
    Ok(from_rows)
}

pub fn write_txt01(m: &BitMatrix) -> String {
    let mut out = String::with_capacity(m.rows() * (m.cols() + 1));
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            out.push(if m.get(i, j) { '1' } else { '0' });
        }
        out.push('\n');
    }
    out
}

/// Parses rows of `0`/`1` characters. Whitespace inside a row is ignored.
pub fn parse_txt01(s: &str) -> Result<BitMatrix> {
    let rows: Vec<Vec<u8>> = s
        .lines()
        .map(|l| l.chars().filter(|c| !c.is_whitespace()).collect::<String>())
        .filter(|l| !l.is_empty())
        .map(|l| {
            l.chars()
                .map(|c| match c {
                    '0' => Ok(0),
                    '1' => Ok(1),
                    other => Err(parse_err(format!("txt01: unexpected character {other:?}"))),
                })
                .collect()
        })
        .collect::<Result<_>>()?;
    if rows.windows(2).any(|w| w[0].len() != w[1].len()) {
        return Err(parse_err("txt01: rows differ in length"));
    }
    Ok(BitMatrix::from_dense(&rows))
}

pub fn read_matrix(path: &Path, format: MatrixFormat) -> Result<BitMatrix> {
    format.parse(&std::fs::read_to_string(path)?)
}

pub fn write_matrix(path: &Path, m: &BitMatrix, format: MatrixFormat) -> Result<()> {
    std::fs::write(path, format.write(m))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn alist_layout() {
        let m = BitMatrix::from_dense(&[[1u8, 1, 0], [0, 1, 1]]);
        let text = write_alist(&m);
        assert_eq!(text, "3 2\n2 2\n1 2 1\n2 2\n1 0\n1 2\n2 0\n1 2\n2 3\n");
        assert_eq!(parse_alist(&text).unwrap(), m);
    }

    #[test]
    fn alist_rejects_inconsistent_lists() {
        let bad = "3 2\n2 2\n1 2 1\n2 2\n1 0\n1 2\n2 0\n1 2\n1 3\n";
        assert!(parse_alist(bad).is_err());
        assert!(parse_alist("3\n").is_err());
    }

    #[test]
    fn empty_matrices_round_trip() {
        for m in [
            BitMatrix::zeros(0, 4),
            BitMatrix::zeros(3, 0),
            BitMatrix::zeros(2, 2),
        ] {
            assert_eq!(parse_alist(&write_alist(&m)).unwrap(), m);
        }
    }

    #[test]
    fn txt01_errors() {
        assert!(parse_txt01("101\n11\n").is_err());
        assert!(parse_txt01("1a1\n").is_err());
        assert_eq!(
            parse_txt01("1 0 1\n").unwrap(),
            BitMatrix::from_dense(&[[1u8, 0, 1]])
        );
    }

    proptest! {
        #[test]
        fn formats_round_trip(
            m in (1..12usize, 1..70usize).prop_flat_map(|(r, c)| {
                proptest::collection::vec(proptest::bool::ANY, r * c).prop_map(move |bits| {
                    let mut m = BitMatrix::zeros(r, c);
                    for (i, b) in bits.into_iter().enumerate() {
                        m.set(i / c, i % c, b);
                    }
                    m
                })
            })
        ) {
            prop_assert_eq!(&parse_alist(&write_alist(&m)).unwrap(), &m);
            prop_assert_eq!(&parse_txt01(&write_txt01(&m)).unwrap(), &m);
        }
    }
}
