//! Binary linear codes given by parity-check matrices.

use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::distance::{min_weight_excluding, Distance, DistanceResult, SearchConfig};
use crate::error::{Error, Result};
use crate::gf2::BitMatrix;
use crate::poly::{circulant, Gf2Poly};

pub use crate::poly::{generator_poly, reverse_poly};

/// `[n, k, d]` with `d` infinite exactly when `k = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ClassicalCodeParams {
    pub n: usize,
    pub k: usize,
    pub d: Distance,
}

impl fmt::Display for ClassicalCodeParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}, {}]", self.n, self.k, self.d)
    }
}

/// A code `{v : H·v = 0}`. The check matrix may have dependent rows.
#[derive(Debug)]
pub struct BinaryCode {
    check: BitMatrix,
    params: OnceLock<ClassicalCodeParams>,
    transposed: OnceLock<ClassicalCodeParams>,
}

impl Clone for BinaryCode {
    fn clone(&self) -> Self {
        BinaryCode {
            check: self.check.clone(),
            params: self.params.clone(),
            transposed: self.transposed.clone(),
        }
    }
}

impl PartialEq for BinaryCode {
    fn eq(&self, other: &Self) -> bool {
        self.check == other.check
    }
}

impl Eq for BinaryCode {}

impl BinaryCode {
    pub fn new(check: BitMatrix) -> Self {
        BinaryCode {
            check,
            params: OnceLock::new(),
            transposed: OnceLock::new(),
        }
    }

    pub fn check(&self) -> &BitMatrix {
        &self.check
    }

    pub fn into_check(self) -> BitMatrix {
        self.check
    }

    pub fn n(&self) -> usize {
        self.check.cols()
    }

    pub fn k(&self) -> usize {
        self.check.cols() - self.check.rank()
    }

    /// Parameters with the distance from a default search. Cached.
    pub fn params(&self) -> ClassicalCodeParams {
        *self.params.get_or_init(|| measure(&self.check))
    }

    /// Parameters of the code checked by `Hᵀ`; block length is the row count.
    pub fn transposed_params(&self) -> ClassicalCodeParams {
        *self
            .transposed
            .get_or_init(|| measure(&self.check.transpose()))
    }

    /// Full distance search outcome under `cfg`.
    pub fn distance(&self, cfg: &SearchConfig) -> DistanceResult {
        min_weight_excluding(&self.check, &BitMatrix::zeros(0, self.n()), cfg)
    }

    pub fn transposed(&self) -> BinaryCode {
        BinaryCode::new(self.check.transpose())
    }
}

fn measure(check: &BitMatrix) -> ClassicalCodeParams {
    let n = check.cols();
    let k = n - check.rank();
    let d = min_weight_excluding(check, &BitMatrix::zeros(0, n), &SearchConfig::default()).value;
    ClassicalCodeParams { n, k, d }
}

/// Cyclic code with check matrix `circulant(h, n)`.
pub fn cyclic_code(h: &Gf2Poly, n: usize) -> Result<BinaryCode> {
    Ok(BinaryCode::new(circulant(h, n)?))
}

/// `[[I, P], [Pᵀ, 0]]` for a full-rank `r × n` matrix `P`: a symmetric
/// check matrix of a `[2n − k, k, d]` code.
pub fn symmetrize(p: &BitMatrix) -> Result<BitMatrix> {
    let rank = p.rank();
    if rank != p.rows() {
        return Err(Error::RankDeficient {
            rank,
            rows: p.rows(),
        });
    }
    Ok(BitMatrix::block2x2(
        &BitMatrix::identity(p.rows()),
        p,
        &p.transpose(),
        &BitMatrix::zeros(p.cols(), p.cols()),
    ))
}

/// Symmetric circulant `circulant(x^((n − deg h)/2)·h, n)` of a palindromic `h`.
pub fn palindromic_symmetric_circulant(h: &Gf2Poly, n: usize) -> Result<BinaryCode> {
    let degree = h.degree().unwrap_or(0);
    if degree >= n {
        return Err(Error::DegreeTooLarge { degree, n });
    }
    if !h.is_palindromic() {
        return Err(Error::NotPalindromic(h.to_string()));
    }
    let gap = n - degree;
    if gap % 2 == 1 {
        return Err(Error::OddShift(gap));
    }
    let check = circulant(&h.shift(gap / 2), n)?;
    debug_assert!(check.is_symmetric());
    Ok(BinaryCode::new(check))
}

/// Dimensions of the symmetric and antisymmetric codeword subspaces of the
/// tiled check `[[a, b], [b, a]]` and of its transpose.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TileDimensions {
    pub k_sym: usize,
    pub k_asym: usize,
    pub k_sym_transposed: usize,
    pub k_asym_transposed: usize,
}

impl TileDimensions {
    pub fn k(&self) -> usize {
        self.k_sym + self.k_asym
    }

    pub fn k_transposed(&self) -> usize {
        self.k_sym_transposed + self.k_asym_transposed
    }
}

/// `[[a, b], [b, a]]`.
pub fn tiled_check(a: &BitMatrix, b: &BitMatrix) -> Result<BitMatrix> {
    same_shape(a, b)?;
    Ok(BitMatrix::block2x2(a, b, b, a))
}

/// Splits a matrix of the form `[[a, b], [b, a]]` into its tiles.
pub fn split_tiles(h: &BitMatrix) -> Option<(BitMatrix, BitMatrix)> {
    if h.rows() % 2 == 1 || h.cols() % 2 == 1 {
        return None;
    }
    let (r, c) = (h.rows() / 2, h.cols() / 2);
    let a = h.submatrix(0, 0, r, c);
    let b = h.submatrix(0, c, r, c);
    (h.submatrix(r, 0, r, c) == b && h.submatrix(r, c, r, c) == a).then_some((a, b))
}

pub fn tile_dimensions(a: &BitMatrix, b: &BitMatrix) -> Result<TileDimensions> {
    let tiled = tiled_check(a, b)?;
    let rank = tiled.rank();
    let k = tiled.cols() - rank;
    let k_t = tiled.rows() - rank;
    let k_sym = a.cols() - a.add(b).rank();
    let k_sym_transposed = a.rows() - a.transpose().add(&b.transpose()).rank();
    Ok(TileDimensions {
        k_sym,
        k_asym: k - k_sym,
        k_sym_transposed,
        k_asym_transposed: k_t - k_sym_transposed,
    })
}

pub(crate) fn same_shape(a: &BitMatrix, b: &BitMatrix) -> Result<()> {
    if a.rows() != b.rows() || a.cols() != b.cols() {
        return Err(Error::DimensionMismatch(format!(
            "tiles are {}x{} and {}x{}",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols()
        )));
    }
    Ok(())
}
