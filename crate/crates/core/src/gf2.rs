//! Dense bit-packed linear algebra over GF(2).
//!
//! Every check matrix in the crate is a [`BitMatrix`]: row-major, 64 entries
//! per word, with the unused high bits of each row's last word kept at zero.
//! Elimination always runs on a scratch copy, so a matrix never changes once
//! it has been built and shared.

use std::cmp::Ordering;
use std::fmt;

pub(crate) const WORD_BITS: usize = 64;

#[inline]
pub(crate) fn words_for(bits: usize) -> usize {
    bits.div_ceil(WORD_BITS)
}

#[inline]
fn tail_mask(bits: usize) -> u64 {
    match bits % WORD_BITS {
        0 => u64::MAX,
        r => (1u64 << r) - 1,
    }
}

#[inline]
pub(crate) fn xor_into(dst: &mut [u64], src: &[u64]) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d ^= *s;
    }
}

/// Orders two equal-length bit strings by their sorted support: the string
/// holding a one at the lowest differing position compares first.
pub(crate) fn support_order(a: &[u64], b: &[u64]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        let diff = x ^ y;
        if diff != 0 {
            let low = diff & diff.wrapping_neg();
            return if x & low != 0 {
                Ordering::Less
            } else {
                Ordering::Greater
            };
        }
    }
    Ordering::Equal
}

/// A vector over GF(2).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitVector {
    len: usize,
    words: Vec<u64>,
}

impl BitVector {
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            words: vec![0; words_for(len)],
        }
    }

    /// Builds a vector from 0/1 entries; any nonzero byte counts as one.
    pub fn from_bits(bits: &[u8]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b != 0 {
                v.set(i, true);
            }
        }
        v
    }

    /// Builds a vector with ones at `indices`; repeated indices cancel.
    pub fn from_indices(len: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut v = Self::zeros(len);
        for i in indices {
            v.toggle(i);
        }
        v
    }

    pub(crate) fn from_words(len: usize, mut words: Vec<u64>) -> Self {
        words.resize(words_for(len), 0);
        if let Some(last) = words.last_mut() {
            *last &= tail_mask(len);
        }
        Self { len, words }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        self.words[i / WORD_BITS] >> (i % WORD_BITS) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        let mask = 1u64 << (i % WORD_BITS);
        if value {
            self.words[i / WORD_BITS] |= mask;
        } else {
            self.words[i / WORD_BITS] &= !mask;
        }
    }

    #[inline]
    pub fn toggle(&mut self, i: usize) {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        self.words[i / WORD_BITS] ^= 1u64 << (i % WORD_BITS);
    }

    /// Hamming weight.
    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Indices of the one entries, ascending.
    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    None
                } else {
                    let tz = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    Some(wi * WORD_BITS + tz)
                }
            })
        })
    }

    pub fn to_bits(&self) -> Vec<u8> {
        (0..self.len).map(|i| self.get(i) as u8).collect()
    }

    pub fn xor_assign(&mut self, other: &BitVector) {
        assert_eq!(self.len, other.len, "vector length mismatch");
        xor_into(&mut self.words, &other.words);
    }

    pub fn xor(&self, other: &BitVector) -> BitVector {
        let mut out = self.clone();
        out.xor_assign(other);
        out
    }

    pub fn or(&self, other: &BitVector) -> BitVector {
        assert_eq!(self.len, other.len, "vector length mismatch");
        let words = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| a | b)
            .collect();
        BitVector {
            len: self.len,
            words,
        }
    }

    /// Inner product over GF(2).
    pub fn dot(&self, other: &BitVector) -> bool {
        assert_eq!(self.len, other.len, "vector length mismatch");
        dot_words(&self.words, &other.words)
    }

    pub fn concat(&self, other: &BitVector) -> BitVector {
        let mut out = BitVector::zeros(self.len + other.len);
        for i in self.ones() {
            out.set(i, true);
        }
        for i in other.ones() {
            out.set(self.len + i, true);
        }
        out
    }

    /// The `len` entries starting at `start`.
    pub fn slice(&self, start: usize, len: usize) -> BitVector {
        assert!(start + len <= self.len, "slice out of range");
        let mut out = BitVector::zeros(len);
        for i in 0..len {
            if self.get(start + i) {
                out.set(i, true);
            }
        }
        out
    }
}

#[inline]
pub(crate) fn dot_words(a: &[u64], b: &[u64]) -> bool {
    let mut acc = 0u64;
    for (x, y) in a.iter().zip(b) {
        acc ^= x & y;
    }
    acc.count_ones() & 1 == 1
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVector(")?;
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        write!(f, ")")
    }
}

/// A dense matrix over GF(2), row-major and bit-packed.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    stride: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let stride = words_for(cols);
        Self {
            rows,
            cols,
            stride,
            data: vec![0; rows * stride],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Builds a matrix from rows of 0/1 entries.
    ///
    /// # Panics
    ///
    /// Panics if the rows have different lengths.
    pub fn from_dense<R: AsRef<[u8]>>(rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut m = Self::zeros(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            assert_eq!(row.len(), cols, "ragged rows in from_dense");
            for (j, &b) in row.iter().enumerate() {
                if b != 0 {
                    m.set(i, j, true);
                }
            }
        }
        m
    }

    /// Stacks vectors of a common length `cols` as rows.
    pub fn from_rows(cols: usize, rows: &[BitVector]) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "row length mismatch");
            m.row_mut(i).copy_from_slice(r.words());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_empty(&self) -> bool {
        self.rows == 0 || self.cols == 0
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        assert!(
            i < self.rows && j < self.cols,
            "index ({i},{j}) out of range"
        );
        self.data[i * self.stride + j / WORD_BITS] >> (j % WORD_BITS) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        assert!(
            i < self.rows && j < self.cols,
            "index ({i},{j}) out of range"
        );
        let mask = 1u64 << (j % WORD_BITS);
        let w = &mut self.data[i * self.stride + j / WORD_BITS];
        if value {
            *w |= mask;
        } else {
            *w &= !mask;
        }
    }

    #[inline]
    pub fn toggle(&mut self, i: usize, j: usize) {
        assert!(
            i < self.rows && j < self.cols,
            "index ({i},{j}) out of range"
        );
        self.data[i * self.stride + j / WORD_BITS] ^= 1u64 << (j % WORD_BITS);
    }

    #[inline]
    pub(crate) fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.stride..(i + 1) * self.stride]
    }

    #[inline]
    pub(crate) fn row_mut(&mut self, i: usize) -> &mut [u64] {
        &mut self.data[i * self.stride..(i + 1) * self.stride]
    }

    pub(crate) fn stride(&self) -> usize {
        self.stride
    }

    pub fn row_vector(&self, i: usize) -> BitVector {
        BitVector::from_words(self.cols, self.row(i).to_vec())
    }

    pub fn row_vectors(&self) -> Vec<BitVector> {
        (0..self.rows).map(|i| self.row_vector(i)).collect()
    }

    pub fn column_vector(&self, j: usize) -> BitVector {
        let mut v = BitVector::zeros(self.rows);
        for i in 0..self.rows {
            if self.get(i, j) {
                v.set(i, true);
            }
        }
        v
    }

    /// Column indices of the ones in row `i`, ascending.
    pub fn row_support(&self, i: usize) -> Vec<usize> {
        let mut out = Vec::new();
        for (wi, &w) in self.row(i).iter().enumerate() {
            let mut rest = w;
            while rest != 0 {
                out.push(wi * WORD_BITS + rest.trailing_zeros() as usize);
                rest &= rest - 1;
            }
        }
        out
    }

    pub fn row_weight(&self, i: usize) -> usize {
        self.row(i).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn col_weight(&self, j: usize) -> usize {
        (0..self.rows).filter(|&i| self.get(i, j)).count()
    }

    pub fn max_row_weight(&self) -> usize {
        (0..self.rows)
            .map(|i| self.row_weight(i))
            .max()
            .unwrap_or(0)
    }

    pub fn max_col_weight(&self) -> usize {
        let t = self.transpose();
        t.max_row_weight()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&w| w == 0)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && *self == self.transpose()
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in self.row_support(i) {
                t.set(j, i, true);
            }
        }
        t
    }

    /// Matrix product `self · other`.
    ///
    /// # Panics
    ///
    /// Panics if `self.cols() != other.rows()`.
    pub fn mul(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!(
            self.cols, other.rows,
            "cannot multiply {}x{} by {}x{}",
            self.rows, self.cols, other.rows, other.cols
        );
        let mut out = BitMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in self.row_support(i) {
                let src = other.row(k).to_vec();
                xor_into(out.row_mut(i), &src);
            }
        }
        out
    }

    /// Matrix-vector product `self · v`.
    pub fn mul_vec(&self, v: &BitVector) -> BitVector {
        assert_eq!(self.cols, v.len(), "vector length mismatch");
        let mut out = BitVector::zeros(self.rows);
        for i in 0..self.rows {
            if dot_words(self.row(i), v.words()) {
                out.set(i, true);
            }
        }
        out
    }

    /// Entrywise sum.
    ///
    /// # Panics
    ///
    /// Panics on a shape mismatch.
    pub fn add(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!(
            (self.rows, self.cols),
            (other.rows, other.cols),
            "shape mismatch in add"
        );
        let mut out = self.clone();
        xor_into(&mut out.data, &other.data);
        out
    }

    /// Kronecker product: block `(i, j)` of the result is `self[i, j] · other`.
    pub fn kron(&self, other: &BitMatrix) -> BitMatrix {
        let mut out = BitMatrix::zeros(self.rows * other.rows, self.cols * other.cols);
        let other_supports: Vec<Vec<usize>> =
            (0..other.rows).map(|k| other.row_support(k)).collect();
        for i in 0..self.rows {
            for j in self.row_support(i) {
                for (k, support) in other_supports.iter().enumerate() {
                    let r = i * other.rows + k;
                    for &l in support {
                        out.set(r, j * other.cols + l, true);
                    }
                }
            }
        }
        out
    }

    /// `[self | other]`.
    pub fn hconcat(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!(self.rows, other.rows, "row count mismatch in hconcat");
        let mut out = BitMatrix::zeros(self.rows, self.cols + other.cols);
        out.paste(self, 0, 0);
        out.paste(other, 0, self.cols);
        out
    }

    /// `[self; other]`.
    pub fn vconcat(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!(self.cols, other.cols, "column count mismatch in vconcat");
        let mut out = BitMatrix::zeros(self.rows + other.rows, self.cols);
        out.data[..self.data.len()].copy_from_slice(&self.data);
        out.data[self.data.len()..].copy_from_slice(&other.data);
        out
    }

    /// `[[a, b], [c, d]]`.
    pub fn block2x2(a: &BitMatrix, b: &BitMatrix, c: &BitMatrix, d: &BitMatrix) -> BitMatrix {
        a.hconcat(b).vconcat(&c.hconcat(d))
    }

    /// Writes `block` into `self` with its top-left corner at `(r0, c0)`,
    /// XOR-ing over whatever is there.
    pub(crate) fn paste(&mut self, block: &BitMatrix, r0: usize, c0: usize) {
        assert!(r0 + block.rows <= self.rows && c0 + block.cols <= self.cols);
        for i in 0..block.rows {
            for j in block.row_support(i) {
                self.toggle(r0 + i, c0 + j);
            }
        }
    }

    pub fn submatrix(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> BitMatrix {
        assert!(
            r0 + rows <= self.rows && c0 + cols <= self.cols,
            "submatrix out of range"
        );
        let mut out = BitMatrix::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                if self.get(r0 + i, c0 + j) {
                    out.set(i, j, true);
                }
            }
        }
        out
    }

    /// Returns the matrix whose row `i` is row `row_perm[i]` of `self` and
    /// whose column `j` is column `col_perm[j]`.
    pub fn permute(&self, row_perm: &[usize], col_perm: &[usize]) -> BitMatrix {
        assert_eq!(row_perm.len(), self.rows);
        assert_eq!(col_perm.len(), self.cols);
        let mut out = BitMatrix::zeros(self.rows, self.cols);
        for (i, &src_row) in row_perm.iter().enumerate() {
            for (j, &src_col) in col_perm.iter().enumerate() {
                if self.get(src_row, src_col) {
                    out.set(i, j, true);
                }
            }
        }
        out
    }

    /// Reduced row echelon form of a copy of `self`.
    pub fn echelon(&self) -> RowEchelon {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut rank = 0;
        for col in 0..self.cols {
            if rank == self.rows {
                break;
            }
            let wi = col / WORD_BITS;
            let mask = 1u64 << (col % WORD_BITS);
            let Some(p) = (rank..self.rows).find(|&r| m.data[r * m.stride + wi] & mask != 0) else {
                continue;
            };
            m.swap_rows(p, rank);
            let pivot_row = m.row(rank)[wi..].to_vec();
            for r in 0..self.rows {
                if r != rank && m.data[r * m.stride + wi] & mask != 0 {
                    xor_into(&mut m.row_mut(r)[wi..], &pivot_row);
                }
            }
            pivots.push(col);
            rank += 1;
        }
        m.rows = rank;
        m.data.truncate(rank * m.stride);
        RowEchelon { reduced: m, pivots }
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for w in 0..self.stride {
                self.data.swap(a * self.stride + w, b * self.stride + w);
            }
        }
    }

    /// Rank over GF(2).
    pub fn rank(&self) -> usize {
        // Forward elimination only; cheaper than the full echelon form.
        let mut m = self.clone();
        let mut rank = 0;
        for col in 0..self.cols {
            if rank == self.rows {
                break;
            }
            let wi = col / WORD_BITS;
            let mask = 1u64 << (col % WORD_BITS);
            let Some(p) = (rank..self.rows).find(|&r| m.data[r * m.stride + wi] & mask != 0) else {
                continue;
            };
            m.swap_rows(p, rank);
            let pivot_row = m.row(rank)[wi..].to_vec();
            for r in rank + 1..self.rows {
                if m.data[r * m.stride + wi] & mask != 0 {
                    xor_into(&mut m.row_mut(r)[wi..], &pivot_row);
                }
            }
            rank += 1;
        }
        rank
    }

    /// A `(cols − rank) × cols` matrix whose rows span `{v : self · v = 0}`.
    pub fn kernel_basis(&self) -> BitMatrix {
        self.echelon().kernel_basis()
    }

    /// Whether `v` lies in the row space of `self`.
    pub fn row_space_contains(&self, v: &BitVector) -> bool {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        self.echelon().contains(v)
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            f.write_str("  ")?;
            for j in 0..self.cols {
                f.write_str(if self.get(i, j) { "1" } else { "0" })?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// Reduced row echelon form: `reduced` has exactly `rank` rows and row `i`
/// has its leading one in column `pivots[i]`, which is zero in every other row.
#[derive(Clone, Debug)]
pub struct RowEchelon {
    reduced: BitMatrix,
    pivots: Vec<usize>,
}

impl RowEchelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn reduced(&self) -> &BitMatrix {
        &self.reduced
    }

    /// Clears every pivot position of `v` using the echelon rows; what is
    /// left is zero exactly when `v` was in the row space.
    pub fn reduce_words(&self, v: &mut [u64]) {
        for (i, &p) in self.pivots.iter().enumerate() {
            if v[p / WORD_BITS] >> (p % WORD_BITS) & 1 == 1 {
                xor_into(v, self.reduced.row(i));
            }
        }
    }

    pub fn contains(&self, v: &BitVector) -> bool {
        let mut w = v.words().to_vec();
        self.reduce_words(&mut w);
        w.iter().all(|&x| x == 0)
    }

    pub fn kernel_basis(&self) -> BitMatrix {
        let cols = self.reduced.cols();
        let mut is_pivot = vec![false; cols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        let free: Vec<usize> = (0..cols).filter(|&c| !is_pivot[c]).collect();
        let mut out = BitMatrix::zeros(free.len(), cols);
        for (k, &f) in free.iter().enumerate() {
            out.set(k, f, true);
            for (i, &p) in self.pivots.iter().enumerate() {
                if self.reduced.get(i, f) {
                    out.set(k, p, true);
                }
            }
        }
        out
    }
}

/// A growing list of independent vectors, each reduced against the ones
/// inserted before it and keyed by its lowest set bit.
pub(crate) struct IncrementalBasis {
    rows: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

impl IncrementalBasis {
    pub fn new(initial: &BitMatrix) -> Self {
        let mut basis = IncrementalBasis {
            rows: Vec::new(),
            pivots: Vec::new(),
        };
        for i in 0..initial.rows() {
            basis.insert(initial.row(i));
        }
        basis
    }

    /// Adds `v` if it is independent of the current span; returns whether it was.
    pub fn insert(&mut self, v: &[u64]) -> bool {
        let mut w = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if w[p / WORD_BITS] >> (p % WORD_BITS) & 1 == 1 {
                xor_into(&mut w, row);
            }
        }
        let Some(wi) = w.iter().position(|&x| x != 0) else {
            return false;
        };
        self.pivots
            .push(wi * WORD_BITS + w[wi].trailing_zeros() as usize);
        self.rows.push(w);
        true
    }
}

/// Rows spanning `ker(constraint) ∩ rowspace(span)`.
pub(crate) fn kernel_intersection(constraint: &BitMatrix, span: &BitMatrix) -> BitMatrix {
    // y·span lies in ker(constraint) iff (constraint · spanᵀ) · y = 0.
    let coeffs = constraint.mul(&span.transpose()).kernel_basis();
    coeffs.mul(span)
}
