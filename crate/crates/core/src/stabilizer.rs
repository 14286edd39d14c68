//! Stabilizer codes in binary symplectic form and the CSS special case.

use serde::{Deserialize, Serialize};

use crate::distance::{css_min_weight, symplectic_min_weight, DistanceResult, SearchConfig};
use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVector};

/// Check matrix `H = (A_X | A_Z)` of a general stabilizer code. Generators
/// pairwise commute.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymplecticCheckMatrix {
    a_x: BitMatrix,
    a_z: BitMatrix,
}

impl SymplecticCheckMatrix {
    pub fn new(a_x: BitMatrix, a_z: BitMatrix) -> Result<Self> {
        if a_x.rows() != a_z.rows() || a_x.cols() != a_z.cols() {
            return Err(Error::DimensionMismatch(format!(
                "A_X is {}x{} but A_Z is {}x{}",
                a_x.rows(),
                a_x.cols(),
                a_z.rows(),
                a_z.cols()
            )));
        }
        let form = a_x.mul(&a_z.transpose()).add(&a_z.mul(&a_x.transpose()));
        if let Some((i, j)) = first_one(&form) {
            return Err(Error::NonCommuting(format!(
                "generators {i} and {j} anticommute"
            )));
        }
        Ok(SymplecticCheckMatrix { a_x, a_z })
    }

    pub fn a_x(&self) -> &BitMatrix {
        &self.a_x
    }

    pub fn a_z(&self) -> &BitMatrix {
        &self.a_z
    }

    /// `(A_X | A_Z)` as one `r × 2n` matrix.
    pub fn stacked(&self) -> BitMatrix {
        self.a_x.hconcat(&self.a_z)
    }
}

/// Check matrices `G_X`, `G_Z` of a CSS code with `G_X·G_Zᵀ = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CssCheckMatrix {
    g_x: BitMatrix,
    g_z: BitMatrix,
}

impl CssCheckMatrix {
    pub fn new(g_x: BitMatrix, g_z: BitMatrix) -> Result<Self> {
        if g_x.cols() != g_z.cols() {
            return Err(Error::DimensionMismatch(format!(
                "G_X has {} columns but G_Z has {}",
                g_x.cols(),
                g_z.cols()
            )));
        }
        if let Some((i, j)) = first_one(&g_x.mul(&g_z.transpose())) {
            return Err(Error::NonCommuting(format!(
                "X generator {i} anticommutes with Z generator {j}"
            )));
        }
        Ok(CssCheckMatrix { g_x, g_z })
    }

    pub fn n(&self) -> usize {
        self.g_x.cols()
    }

    pub fn g_x(&self) -> &BitMatrix {
        &self.g_x
    }

    pub fn g_z(&self) -> &BitMatrix {
        &self.g_z
    }
}

fn first_one(m: &BitMatrix) -> Option<(usize, usize)> {
    (0..m.rows()).find_map(|i| m.row_support(i).first().map(|&j| (i, j)))
}

/// A Pauli operator `X^a Z^b` up to phase.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LogicalOperator {
    x: BitVector,
    z: BitVector,
}

impl LogicalOperator {
    /// Panics if the parts differ in length.
    pub fn new(x_part: BitVector, z_part: BitVector) -> Self {
        assert_eq!(
            x_part.len(),
            z_part.len(),
            "operator parts differ in length"
        );
        LogicalOperator {
            x: x_part,
            z: z_part,
        }
    }

    pub fn x_part(&self) -> &BitVector {
        &self.x
    }

    pub fn z_part(&self) -> &BitVector {
        &self.z
    }

    pub fn n(&self) -> usize {
        self.x.len()
    }

    /// Number of qubits acted on nontrivially.
    pub fn weight(&self) -> usize {
        self.x.or(&self.z).weight()
    }

    pub fn is_identity(&self) -> bool {
        self.x.is_zero() && self.z.is_zero()
    }
}

/// Measured `[[n, k, d]]` with the largest generator weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuantumCodeParams {
    pub n: usize,
    pub k: usize,
    pub d: DistanceResult,
    pub w: usize,
}

/// Which representation a code is stored in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CodeForm {
    Css,
    Symplectic,
}

/// Operations shared by both representations.
pub trait StabilizerCode {
    fn n(&self) -> usize;
    /// Logical qubits, `n − rank H`.
    fn k(&self) -> usize;
    /// Largest generator weight over all rows.
    fn generator_weight(&self) -> usize;
    fn to_symplectic(&self) -> SymplecticCheckMatrix;
    fn distance(&self, cfg: &SearchConfig) -> DistanceResult;
    fn form(&self) -> CodeForm;

    /// `(rank G_X, rank G_Z)` for CSS codes.
    fn sector_ranks(&self) -> Option<(usize, usize)> {
        None
    }

    /// Commutes with every generator and is not itself a stabilizer.
    fn is_logical(&self, op: &LogicalOperator) -> bool {
        let s = self.to_symplectic();
        if op.n() != s.a_x.cols() {
            return false;
        }
        let commutes = (0..s.a_x.rows())
            .all(|i| s.a_x.row_vector(i).dot(op.z_part()) == s.a_z.row_vector(i).dot(op.x_part()));
        commutes
            && !s
                .stacked()
                .row_space_contains(&op.x_part().concat(op.z_part()))
    }

    fn params(&self, cfg: &SearchConfig) -> QuantumCodeParams {
        QuantumCodeParams {
            n: self.n(),
            k: self.k(),
            d: self.distance(cfg),
            w: self.generator_weight(),
        }
    }
}

impl StabilizerCode for SymplecticCheckMatrix {
    fn n(&self) -> usize {
        self.a_x.cols()
    }

    fn k(&self) -> usize {
        self.n() - self.stacked().rank()
    }

    fn generator_weight(&self) -> usize {
        (0..self.a_x.rows())
            .map(|i| self.a_x.row_vector(i).or(&self.a_z.row_vector(i)).weight())
            .max()
            .unwrap_or(0)
    }

    fn to_symplectic(&self) -> SymplecticCheckMatrix {
        self.clone()
    }

    fn distance(&self, cfg: &SearchConfig) -> DistanceResult {
        symplectic_min_weight(self, cfg)
    }

    fn form(&self) -> CodeForm {
        CodeForm::Symplectic
    }
}

impl StabilizerCode for CssCheckMatrix {
    fn n(&self) -> usize {
        self.g_x.cols()
    }

    fn k(&self) -> usize {
        self.n() - self.g_x.rank() - self.g_z.rank()
    }

    fn generator_weight(&self) -> usize {
        self.g_x.max_row_weight().max(self.g_z.max_row_weight())
    }

    fn to_symplectic(&self) -> SymplecticCheckMatrix {
        css_to_symplectic(self)
    }

    fn distance(&self, cfg: &SearchConfig) -> DistanceResult {
        css_min_weight(self, cfg)
    }

    fn form(&self) -> CodeForm {
        CodeForm::Css
    }

    fn sector_ranks(&self) -> Option<(usize, usize)> {
        Some((self.g_x.rank(), self.g_z.rank()))
    }
}

/// `A_X = [G_X; 0]`, `A_Z = [0; G_Z]`.
pub fn css_to_symplectic(code: &CssCheckMatrix) -> SymplecticCheckMatrix {
    let n = code.n();
    let a_x = code.g_x.vconcat(&BitMatrix::zeros(code.g_z.rows(), n));
    let a_z = BitMatrix::zeros(code.g_x.rows(), n).vconcat(&code.g_z);
    SymplecticCheckMatrix { a_x, a_z }
}

pub fn quantum_k(code: &impl StabilizerCode) -> usize {
    code.k()
}

pub fn is_logical(code: &impl StabilizerCode, op: &LogicalOperator) -> bool {
    code.is_logical(op)
}

pub fn distance(code: &impl StabilizerCode, cfg: &SearchConfig) -> DistanceResult {
    code.distance(cfg)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&str]) -> BitMatrix {
        let dense: Vec<Vec<u8>> = rows
            .iter()
            .map(|r| r.bytes().map(|b| b - b'0').collect())
            .collect();
        BitMatrix::from_dense(&dense)
    }

    #[test]
    fn rejects_anticommuting_generators() {
        // X on qubit 0 against Z on qubit 0.
        let err = CssCheckMatrix::new(m(&["10"]), m(&["10"])).unwrap_err();
        assert!(matches!(err, Error::NonCommuting(_)));
        let err = SymplecticCheckMatrix::new(m(&["10", "00"]), m(&["00", "10"])).unwrap_err();
        assert!(matches!(err, Error::NonCommuting(_)));
    }

    #[test]
    fn rejects_shape_mismatch() {
        assert!(CssCheckMatrix::new(m(&["11"]), m(&["111"])).is_err());
        assert!(SymplecticCheckMatrix::new(m(&["11"]), m(&["11", "11"])).is_err());
    }

    #[test]
    fn five_qubit_code() {
        // XZZXI and its cyclic shifts.
        let a_x = m(&["10010", "01001", "10100", "01010"]);
        let a_z = m(&["01100", "00110", "00011", "10001"]);
        let code = SymplecticCheckMatrix::new(a_x, a_z).unwrap();
        assert_eq!(code.k(), 1);
        assert_eq!(code.generator_weight(), 4);
        let d = code.distance(&SearchConfig::default());
        assert_eq!(d.value.finite(), Some(3));
        assert!(d.is_exact());
    }

    #[test]
    fn pure_x_code() {
        let code = CssCheckMatrix::new(m(&["110", "011"]), BitMatrix::zeros(0, 3)).unwrap();
        assert_eq!(code.k(), 1);
        assert_eq!(css_to_symplectic(&code).k(), 1);
    }

    #[test]
    fn stabilizers_and_identity_are_not_logical() {
        let code = CssCheckMatrix::new(m(&["1111"]), m(&["1111"])).unwrap();
        assert_eq!(code.k(), 2);
        let stab = LogicalOperator::new(BitVector::from_bits(&[1, 1, 1, 1]), BitVector::zeros(4));
        assert!(!code.is_logical(&stab));
        assert!(!code.is_logical(&LogicalOperator::new(
            BitVector::zeros(4),
            BitVector::zeros(4)
        )));
        let xx = LogicalOperator::new(BitVector::from_bits(&[1, 1, 0, 0]), BitVector::zeros(4));
        assert!(code.is_logical(&xx));
        let x = LogicalOperator::new(BitVector::from_bits(&[1, 0, 0, 0]), BitVector::zeros(4));
        assert!(!code.is_logical(&x));
    }

    #[test]
    fn dependent_rows_do_not_change_k() {
        let code = CssCheckMatrix::new(m(&["1111"]), m(&["1111", "1111", "0000"])).unwrap();
        assert_eq!(code.k(), 2);
    }

    #[test]
    fn or_weight() {
        let op = LogicalOperator::new(
            BitVector::from_bits(&[1, 1, 0]),
            BitVector::from_bits(&[0, 1, 1]),
        );
        assert_eq!(op.weight(), 3);
    }
}
