//! Dense linear algebra over GF(2).
//!
//! [`Gf2Matrix`] stores entries bit-packed in row-major order, one `u64`
//! word per 64 columns, so row operations during elimination work on whole
//! words. Matrices with zero rows or zero columns are ordinary values with
//! rank 0. Column vectors are represented as `n x 1` matrices.

mod text;

use std::fmt;
use std::ops::Range;

use crate::error::{Error, Result};

const WORD_BITS: usize = 64;

fn words_for(cols: usize) -> usize {
    cols.div_ceil(WORD_BITS)
}

/// A matrix over the two-element field.
///
/// Padding bits past the last column of each row are kept at zero, so
/// equality and hashing can compare the packed words directly.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Gf2Matrix {
    rows: usize,
    cols: usize,
    stride: usize,
    data: Vec<u64>,
}

impl Gf2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let stride = words_for(cols);
        Gf2Matrix {
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

    /// The `q x q` matrix `Q^e`, where `Q` has ones on the first
    /// subdiagonal. `Q^e` moves entry `i` of a vector to position `i + e`
    /// and drops whatever falls off the bottom; `e >= q` gives zero.
    pub fn shift_pow(q: usize, e: usize) -> Self {
        let mut m = Self::zeros(q, q);
        for c in 0..q.saturating_sub(e) {
            m.set(c + e, c, true);
        }
        m
    }

    /// Builds a matrix from rows of `0`/`1` values. Any nonzero byte is a one.
    ///
    /// All rows must have the same length. An empty slice gives a `0 x 0` matrix.
    pub fn from_rows<R: AsRef<[u8]>>(rows: &[R]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut m = Self::zeros(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != cols {
                return Err(Error::mismatch("from_rows", (1, cols), (1, row.len())));
            }
            for (j, &v) in row.iter().enumerate() {
                if v != 0 {
                    m.set(i, j, true);
                }
            }
        }
        Ok(m)
    }

    /// Column vector with entries taken from `bits` (nonzero means one).
    pub fn column(bits: &[u8]) -> Self {
        let mut m = Self::zeros(bits.len(), 1);
        for (i, &b) in bits.iter().enumerate() {
            if b != 0 {
                m.set(i, 0, true);
            }
        }
        m
    }

    /// Column vector of length `len` whose entry `i` is bit `i` of `mask`.
    pub fn column_from_mask(len: usize, mask: u64) -> Self {
        assert!(len <= WORD_BITS, "mask vectors hold at most 64 entries");
        let mut m = Self::zeros(len, 1);
        for i in 0..len {
            if (mask >> i) & 1 == 1 {
                m.data[i] = 1;
            }
        }
        m
    }

    /// Entries of a column vector packed into a mask, entry `i` at bit `i`.
    pub fn column_mask(&self) -> u64 {
        assert!(self.cols == 1 && self.rows <= WORD_BITS);
        (0..self.rows).fold(0, |acc, i| acc | (self.data[i] & 1) << i)
    }

    /// Entries of a column vector as `0`/`1` bytes.
    pub fn column_bits(&self) -> Vec<u8> {
        assert_eq!(self.cols, 1, "column_bits needs a column vector");
        (0..self.rows).map(|i| self.get(i, 0) as u8).collect()
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        assert!(r < self.rows && c < self.cols, "index ({r}, {c}) out of bounds");
        (self.data[r * self.stride + c / WORD_BITS] >> (c % WORD_BITS)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        assert!(r < self.rows && c < self.cols, "index ({r}, {c}) out of bounds");
        let word = &mut self.data[r * self.stride + c / WORD_BITS];
        let bit = 1u64 << (c % WORD_BITS);
        if value {
            *word |= bit;
        } else {
            *word &= !bit;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&w| w == 0)
    }

    /// Matrix product with addition mod 2.
    pub fn mul(&self, rhs: &Gf2Matrix) -> Result<Gf2Matrix> {
        if self.cols != rhs.rows {
            return Err(Error::mismatch("mul", self.shape(), rhs.shape()));
        }
        let mut out = Gf2Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self.get(i, k) {
                    let (dst, src) = (i * out.stride, k * rhs.stride);
                    for w in 0..out.stride {
                        out.data[dst + w] ^= rhs.data[src + w];
                    }
                }
            }
        }
        Ok(out)
    }

    /// Entrywise XOR.
    pub fn add(&self, rhs: &Gf2Matrix) -> Result<Gf2Matrix> {
        if self.shape() != rhs.shape() {
            return Err(Error::mismatch("add", self.shape(), rhs.shape()));
        }
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a ^ b).collect();
        Ok(Gf2Matrix { data, ..*self })
    }

    pub fn transpose(&self) -> Gf2Matrix {
        let mut out = Gf2Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                if self.get(r, c) {
                    out.set(c, r, true);
                }
            }
        }
        out
    }

    /// Columns of `self` followed by columns of `rhs`.
    pub fn hconcat(&self, rhs: &Gf2Matrix) -> Result<Gf2Matrix> {
        if self.rows != rhs.rows {
            return Err(Error::mismatch("hconcat", self.shape(), rhs.shape()));
        }
        let mut out = Gf2Matrix::zeros(self.rows, self.cols + rhs.cols);
        out.set_block(0, 0, self);
        out.set_block(0, self.cols, rhs);
        Ok(out)
    }

    /// Rows of `self` followed by rows of `rhs`.
    pub fn vconcat(&self, rhs: &Gf2Matrix) -> Result<Gf2Matrix> {
        if self.cols != rhs.cols {
            return Err(Error::mismatch("vconcat", self.shape(), rhs.shape()));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&rhs.data);
        Ok(Gf2Matrix {
            rows: self.rows + rhs.rows,
            data,
            ..*self
        })
    }

    pub fn submatrix(&self, rows: Range<usize>, cols: Range<usize>) -> Gf2Matrix {
        assert!(rows.end <= self.rows && cols.end <= self.cols, "submatrix out of bounds");
        let mut out = Gf2Matrix::zeros(rows.len(), cols.len());
        for (i, r) in rows.clone().enumerate() {
            for (j, c) in cols.clone().enumerate() {
                if self.get(r, c) {
                    out.set(i, j, true);
                }
            }
        }
        out
    }

    /// Overwrites the block starting at `(row, col)` with `block`.
    pub fn set_block(&mut self, row: usize, col: usize, block: &Gf2Matrix) {
        assert!(
            row + block.rows <= self.rows && col + block.cols <= self.cols,
            "block does not fit"
        );
        for r in 0..block.rows {
            for c in 0..block.cols {
                self.set(row + r, col + c, block.get(r, c));
            }
        }
    }

    /// Matrix made of the listed columns, in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> Gf2Matrix {
        let mut out = Gf2Matrix::zeros(self.rows, cols.len());
        for (j, &c) in cols.iter().enumerate() {
            for r in 0..self.rows {
                if self.get(r, c) {
                    out.set(r, j, true);
                }
            }
        }
        out
    }

    pub fn column_at(&self, c: usize) -> Gf2Matrix {
        self.select_columns(&[c])
    }

    fn xor_row_into(&mut self, src: usize, dst: usize) {
        let s = self.stride;
        let (src_start, dst_start) = (src * s, dst * s);
        for w in 0..s {
            let v = self.data[src_start + w];
            self.data[dst_start + w] ^= v;
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            let s = self.stride;
            for w in 0..s {
                self.data.swap(a * s + w, b * s + w);
            }
        }
    }

    /// Gauss-Jordan elimination in place, pivoting only on the first
    /// `limit` columns. Returns the pivot columns in increasing order.
    fn reduce(&mut self, limit: usize) -> Vec<usize> {
        let mut pivots = Vec::new();
        for c in 0..limit.min(self.cols) {
            let r0 = pivots.len();
            if r0 == self.rows {
                break;
            }
            let (w, bit) = (c / WORD_BITS, 1u64 << (c % WORD_BITS));
            let Some(p) = (r0..self.rows).find(|&r| self.data[r * self.stride + w] & bit != 0) else {
                continue;
            };
            self.swap_rows(p, r0);
            for r in 0..self.rows {
                if r != r0 && self.data[r * self.stride + w] & bit != 0 {
                    self.xor_row_into(r0, r);
                }
            }
            pivots.push(c);
        }
        pivots
    }

    /// Rank over GF(2).
    pub fn rank(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        // Forward elimination only; the back half of Gauss-Jordan is not needed.
        let mut m = self.clone();
        let mut rank = 0;
        for c in 0..m.cols {
            let (w, bit) = (c / WORD_BITS, 1u64 << (c % WORD_BITS));
            let Some(p) = (rank..m.rows).find(|&r| m.data[r * m.stride + w] & bit != 0) else {
                continue;
            };
            m.swap_rows(p, rank);
            for r in rank + 1..m.rows {
                if m.data[r * m.stride + w] & bit != 0 {
                    m.xor_row_into(rank, r);
                }
            }
            rank += 1;
            if rank == m.rows {
                break;
            }
        }
        rank
    }

    /// `dim(range(self) ∩ range(other))`, computed as
    /// `rank(self) + rank(other) - rank([self other])`.
    pub fn rank_intersection(&self, other: &Gf2Matrix) -> Result<usize> {
        let joint = self.hconcat(other)?.rank();
        Ok(self.rank() + other.rank() - joint)
    }

    /// `rank([self other]) - rank(other)`, which equals
    /// `rank(self) - rank_intersection(self, other)`: the number of
    /// dimensions `self` adds on top of `range(other)`.
    pub fn rank_deficit(&self, other: &Gf2Matrix) -> Result<usize> {
        let joint = self.hconcat(other)?.rank();
        Ok(joint - other.rank())
    }

    /// Columns of `self` forming a basis of its column space. Pivot columns
    /// are picked left to right, so the result is a column subset of `self`.
    pub fn column_space_basis(&self) -> Gf2Matrix {
        let pivots = self.clone().reduce(self.cols);
        self.select_columns(&pivots)
    }

    /// Columns of `whole` that extend the columns of `sub` to a basis of
    /// `range(whole)`.
    ///
    /// `sub` must have independent columns lying inside `range(whole)`.
    pub fn extend_basis(sub: &Gf2Matrix, whole: &Gf2Matrix) -> Result<Gf2Matrix> {
        let joint = sub.hconcat(whole)?;
        if sub.rank() != sub.cols {
            return Err(Error::ContractViolation(
                "extend_basis: columns of sub are dependent".into(),
            ));
        }
        let pivots = joint.clone().reduce(joint.cols);
        if pivots.len() != whole.rank() {
            return Err(Error::ContractViolation(
                "extend_basis: sub is not contained in range(whole)".into(),
            ));
        }
        let picked: Vec<usize> = pivots
            .into_iter()
            .filter(|&c| c >= sub.cols)
            .map(|c| c - sub.cols)
            .collect();
        Ok(whole.select_columns(&picked))
    }

    /// Some `x` with `self * x = b`, or `None` when the system is
    /// inconsistent. Free variables are set to zero.
    pub fn solve(&self, b: &Gf2Matrix) -> Result<Option<Gf2Matrix>> {
        if b.cols != 1 || b.rows != self.rows {
            return Err(Error::mismatch("solve", self.shape(), b.shape()));
        }
        let mut aug = self.hconcat(b)?;
        let pivots = aug.reduce(self.cols);
        let rhs = self.cols;
        if (pivots.len()..aug.rows).any(|r| aug.get(r, rhs)) {
            return Ok(None);
        }
        let mut x = Gf2Matrix::zeros(self.cols, 1);
        for (r, &c) in pivots.iter().enumerate() {
            x.set(c, 0, aug.get(r, rhs));
        }
        Ok(Some(x))
    }

    /// Basis of the null space `{x : self * x = 0}`, one vector per column.
    pub fn kernel_basis(&self) -> Gf2Matrix {
        let mut reduced = self.clone();
        let pivots = reduced.reduce(self.cols);
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let free: Vec<usize> = (0..self.cols).filter(|&c| !is_pivot[c]).collect();
        let mut basis = Gf2Matrix::zeros(self.cols, free.len());
        for (j, &f) in free.iter().enumerate() {
            basis.set(f, j, true);
            for (r, &p) in pivots.iter().enumerate() {
                if reduced.get(r, f) {
                    basis.set(p, j, true);
                }
            }
        }
        basis
    }

    /// Inverse of a square matrix, or `None` if it is singular.
    pub fn inverse(&self) -> Result<Option<Gf2Matrix>> {
        if self.rows != self.cols {
            return Err(Error::mismatch("inverse", self.shape(), (self.cols, self.rows)));
        }
        let n = self.rows;
        let mut aug = self.hconcat(&Gf2Matrix::identity(n))?;
        if aug.reduce(n).len() < n {
            return Ok(None);
        }
        Ok(Some(aug.submatrix(0..n, n..2 * n)))
    }
}

impl fmt::Debug for Gf2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Gf2Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            if r > 0 {
                f.write_str(",")?;
            }
            f.write_str(" ")?;
            for c in 0..self.cols {
                f.write_str(if self.get(r, c) { "1" } else { "0" })?;
            }
        }
        f.write_str(" ]")
    }
}
