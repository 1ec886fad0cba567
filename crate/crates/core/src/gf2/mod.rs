//! Dense linear algebra over the two-element field.
//!
//! Matrices are stored row-major with each row packed into `u64` words.
//! Every shape is legal, including `0 x n` and `n x 0`; the splice matrix of
//! two unknots is a `1 x 0` matrix and the rest of the crate leans on that.

mod block;
mod json;
mod subspace;

pub use block::BlockGrid;
pub use subspace::{complement_basis, intersection, span_rank, Subspace};

use std::fmt;
use std::ops::{Add, Mul};

use thiserror::Error;

const WORD: usize = 64;

fn words_for(bits: usize) -> usize {
    bits.div_ceil(WORD)
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Gf2Error {
    #[error("block ({row}, {col}) has shape {found:?}, expected {expected:?}")]
    ShapeMismatch {
        row: usize,
        col: usize,
        expected: (usize, usize),
        found: (usize, usize),
    },
    #[error("pivot entry ({row}, {col}) is zero")]
    PivotZero { row: usize, col: usize },
    #[error("index ({row}, {col}) out of range for a {rows} x {cols} matrix")]
    OutOfRange {
        row: usize,
        col: usize,
        rows: usize,
        cols: usize,
    },
}

/// A vector over GF(2).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        BitVec {
            len,
            words: vec![0; words_for(len)],
        }
    }

    pub fn unit(len: usize, index: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(index, true);
        v
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            v.set(i, b);
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit {i} out of range {}", self.len);
        self.words[i / WORD] >> (i % WORD) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit {i} out of range {}", self.len);
        let mask = 1u64 << (i % WORD);
        if value {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    #[inline]
    pub fn toggle(&mut self, i: usize) {
        assert!(i < self.len);
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    pub fn xor_assign(&mut self, other: &BitVec) {
        assert_eq!(self.len, other.len, "length mismatch");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(move |&i| self.get(i))
    }

    pub fn dot(&self, other: &BitVec) -> bool {
        assert_eq!(self.len, other.len);
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones())
            .sum::<u32>()
            % 2
            == 1
    }

    /// Concatenation `self ++ other`.
    pub fn concat(&self, other: &BitVec) -> BitVec {
        let mut out = BitVec::zeros(self.len + other.len);
        for i in self.ones() {
            out.set(i, true);
        }
        for i in other.ones() {
            out.set(self.len + i, true);
        }
        out
    }

    pub fn slice(&self, start: usize, end: usize) -> BitVec {
        let mut out = BitVec::zeros(end - start);
        for i in start..end {
            if self.get(i) {
                out.set(i - start, true);
            }
        }
        out
    }

    /// Kronecker product of vectors: index `i * other.len() + j`.
    pub fn kron(&self, other: &BitVec) -> BitVec {
        let mut out = BitVec::zeros(self.len * other.len);
        for i in self.ones() {
            for j in other.ones() {
                out.set(i * other.len + j, true);
            }
        }
        out
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = (0..self.len).map(|i| if self.get(i) { '1' } else { '0' }).collect();
        write!(f, "[{s}]")
    }
}

/// A dense `rows x cols` matrix over GF(2).
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

    /// Uniformly random entries.
    pub fn random(rng: &mut impl rand::Rng, rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |_, _| rng.gen_bool(0.5))
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut m = Self::zeros(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                if f(r, c) {
                    m.set(r, c, true);
                }
            }
        }
        m
    }

    /// Builds a matrix from rows written as strings of `0` and `1`.
    /// Whitespace inside a row is ignored.
    ///
    /// ```
    /// use splice_rank::gf2::Gf2Matrix;
    /// let m = Gf2Matrix::parse(&["10 1", "011"]);
    /// assert_eq!((m.rows(), m.cols()), (2, 3));
    /// assert_eq!(m.rank(), 2);
    /// ```
    pub fn parse(rows: &[&str]) -> Self {
        let parsed: Vec<Vec<bool>> = rows
            .iter()
            .map(|r| {
                r.chars()
                    .filter(|c| !c.is_whitespace())
                    .map(|c| match c {
                        '0' => false,
                        '1' => true,
                        other => panic!("invalid GF(2) digit {other:?}"),
                    })
                    .collect()
            })
            .collect();
        let cols = parsed.first().map_or(0, Vec::len);
        assert!(parsed.iter().all(|r| r.len() == cols), "ragged rows");
        Self::from_fn(parsed.len(), cols, |r, c| parsed[r][c])
    }

    pub fn from_columns(rows: usize, columns: &[BitVec]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (c, v) in columns.iter().enumerate() {
            assert_eq!(v.len(), rows, "column length mismatch");
            for r in v.ones() {
                m.set(r, c, true);
            }
        }
        m
    }

    pub fn from_rows(cols: usize, rows: &[BitVec]) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (r, v) in rows.iter().enumerate() {
            assert_eq!(v.len(), cols, "row length mismatch");
            m.data[r * m.stride..(r + 1) * m.stride].copy_from_slice(&v.words);
        }
        m
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
        assert!(
            r < self.rows && c < self.cols,
            "({r}, {c}) out of range {:?}",
            self.shape()
        );
        self.data[r * self.stride + c / WORD] >> (c % WORD) & 1 == 1
    }

    pub fn try_get(&self, r: usize, c: usize) -> Result<bool, Gf2Error> {
        if r < self.rows && c < self.cols {
            Ok(self.get(r, c))
        } else {
            Err(Gf2Error::OutOfRange {
                row: r,
                col: c,
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        assert!(
            r < self.rows && c < self.cols,
            "({r}, {c}) out of range {:?}",
            self.shape()
        );
        let w = &mut self.data[r * self.stride + c / WORD];
        let mask = 1u64 << (c % WORD);
        if value {
            *w |= mask;
        } else {
            *w &= !mask;
        }
    }

    #[inline]
    pub fn toggle(&mut self, r: usize, c: usize) {
        assert!(r < self.rows && c < self.cols);
        self.data[r * self.stride + c / WORD] ^= 1u64 << (c % WORD);
    }

    pub fn row(&self, r: usize) -> BitVec {
        BitVec {
            len: self.cols,
            words: self.row_words(r).to_vec(),
        }
    }

    pub fn column(&self, c: usize) -> BitVec {
        let mut v = BitVec::zeros(self.rows);
        for r in 0..self.rows {
            if self.get(r, c) {
                v.set(r, true);
            }
        }
        v
    }

    pub fn columns(&self) -> Vec<BitVec> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    fn row_words(&self, r: usize) -> &[u64] {
        &self.data[r * self.stride..(r + 1) * self.stride]
    }

    /// `row[dst] ^= row[src]`
    fn xor_row(&mut self, dst: usize, src: usize) {
        debug_assert_ne!(dst, src);
        let s = self.stride;
        let (a, b) = if dst < src {
            let (lo, hi) = self.data.split_at_mut(src * s);
            (&mut lo[dst * s..(dst + 1) * s], &hi[..s])
        } else {
            let (lo, hi) = self.data.split_at_mut(dst * s);
            (&mut hi[..s], &lo[src * s..(src + 1) * s])
        };
        for (x, y) in a.iter_mut().zip(b) {
            *x ^= y;
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let s = self.stride;
        for k in 0..s {
            self.data.swap(a * s + k, b * s + k);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&w| w == 0)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == Self::identity(self.rows)
    }

    pub fn count_ones(&self) -> usize {
        self.data.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn transpose(&self) -> Gf2Matrix {
        Self::from_fn(self.cols, self.rows, |r, c| self.get(c, r))
    }

    pub fn mul_vec(&self, v: &BitVec) -> BitVec {
        assert_eq!(self.cols, v.len(), "shape mismatch in mul_vec");
        let mut out = BitVec::zeros(self.rows);
        for r in 0..self.rows {
            let parity = self
                .row_words(r)
                .iter()
                .zip(&v.words)
                .map(|(a, b)| (a & b).count_ones())
                .sum::<u32>();
            if parity % 2 == 1 {
                out.set(r, true);
            }
        }
        out
    }

    pub fn try_mul(&self, other: &Gf2Matrix) -> Option<Gf2Matrix> {
        if self.cols != other.rows {
            return None;
        }
        let mut out = Gf2Matrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                if self.get(r, k) {
                    let s = out.stride;
                    let src = other.row_words(k);
                    for (x, y) in out.data[r * s..(r + 1) * s].iter_mut().zip(src) {
                        *x ^= y;
                    }
                }
            }
        }
        Some(out)
    }

    pub fn try_add(&self, other: &Gf2Matrix) -> Option<Gf2Matrix> {
        if self.shape() != other.shape() {
            return None;
        }
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            *a ^= b;
        }
        Some(out)
    }

    /// Kronecker product; entry `(i*p + k, j*q + l)` is `self[i][j] * other[k][l]`
    /// where `other` is `p x q`.
    pub fn kron(&self, other: &Gf2Matrix) -> Gf2Matrix {
        let (p, q) = other.shape();
        let mut out = Gf2Matrix::zeros(self.rows * p, self.cols * q);
        for i in 0..self.rows {
            for j in 0..self.cols {
                if !self.get(i, j) {
                    continue;
                }
                for k in 0..p {
                    for l in 0..q {
                        if other.get(k, l) {
                            out.set(i * p + k, j * q + l, true);
                        }
                    }
                }
            }
        }
        out
    }

    /// Copy of the rows `r0..r1` and columns `c0..c1`.
    pub fn submatrix(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Gf2Matrix {
        assert!(r0 <= r1 && r1 <= self.rows && c0 <= c1 && c1 <= self.cols);
        Self::from_fn(r1 - r0, c1 - c0, |r, c| self.get(r0 + r, c0 + c))
    }

    pub fn select_columns(&self, cols: &[usize]) -> Gf2Matrix {
        Self::from_fn(self.rows, cols.len(), |r, c| self.get(r, cols[c]))
    }

    pub fn select_rows(&self, rows: &[usize]) -> Gf2Matrix {
        Self::from_fn(rows.len(), self.cols, |r, c| self.get(rows[r], c))
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &Gf2Matrix) -> Gf2Matrix {
        assert_eq!(self.rows, other.rows, "hstack row mismatch");
        Self::from_fn(self.rows, self.cols + other.cols, |r, c| {
            if c < self.cols {
                self.get(r, c)
            } else {
                other.get(r, c - self.cols)
            }
        })
    }

    /// Vertical concatenation.
    pub fn vstack(&self, other: &Gf2Matrix) -> Gf2Matrix {
        assert_eq!(self.cols, other.cols, "vstack column mismatch");
        let mut out = Gf2Matrix::zeros(self.rows + other.rows, self.cols);
        out.data[..self.data.len()].copy_from_slice(&self.data);
        out.data[self.data.len()..].copy_from_slice(&other.data);
        out
    }

    /// Reduced row echelon form and the pivot column of each nonzero row.
    fn rref(&self) -> (Gf2Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| m.get(r, col)) else {
                continue;
            };
            m.swap_rows(row, p);
            for r in 0..m.rows {
                if r != row && m.get(r, col) {
                    m.xor_row(r, row);
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        // forward elimination only
        let mut m = self.clone();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| m.get(r, col)) else {
                continue;
            };
            m.swap_rows(row, p);
            for r in row + 1..m.rows {
                if m.get(r, col) {
                    m.xor_row(r, row);
                }
            }
            row += 1;
        }
        row
    }

    pub fn kernel_dim(&self) -> usize {
        self.cols - self.rank()
    }

    pub fn cokernel_dim(&self) -> usize {
        self.rows - self.rank()
    }

    /// `dim Ker + dim Coker`, i.e. `rows + cols - 2 rank`.
    pub fn h_number(&self) -> usize {
        self.rows + self.cols - 2 * self.rank()
    }

    /// A basis of the right kernel `{v : Mv = 0}`.
    pub fn kernel_basis(&self) -> Vec<BitVec> {
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = BitVec::unit(self.cols, free);
                for (row, &p) in pivots.iter().enumerate() {
                    if r.get(row, free) {
                        v.set(p, true);
                    }
                }
                v
            })
            .collect()
    }

    /// Kernel basis packed as the columns of a `cols x k` matrix.
    pub fn kernel_matrix(&self) -> Gf2Matrix {
        Gf2Matrix::from_columns(self.cols, &self.kernel_basis())
    }

    /// Row functionals `w` with `wM = 0`; their number is `rows - rank` and
    /// they detect exactly the cokernel.
    pub fn cokernel_basis(&self) -> Vec<BitVec> {
        self.transpose().kernel_basis()
    }

    /// Solves `self * X = rhs`, or `None` if some column of `rhs` is not in the
    /// column space.
    pub fn solve(&self, rhs: &Gf2Matrix) -> Option<Gf2Matrix> {
        assert_eq!(self.rows, rhs.rows, "solve row mismatch");
        let aug = self.hstack(rhs);
        let (r, pivots) = aug.rref();
        let mut x = Gf2Matrix::zeros(self.cols, rhs.cols);
        for (row, &p) in pivots.iter().enumerate() {
            if p >= self.cols {
                return None;
            }
            for c in 0..rhs.cols {
                if r.get(row, self.cols + c) {
                    x.set(p, c, true);
                }
            }
        }
        Some(x)
    }

    pub fn solve_vec(&self, rhs: &BitVec) -> Option<BitVec> {
        let b = Gf2Matrix::from_columns(self.rows, std::slice::from_ref(rhs));
        self.solve(&b).map(|x| x.column(0))
    }

    pub fn inverse(&self) -> Option<Gf2Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let x = self.solve(&Gf2Matrix::identity(self.rows))?;
        (x.try_mul(self)? == Gf2Matrix::identity(self.rows)).then_some(x)
    }

    /// Independent columns spanning the column space, in order of first
    /// appearance.
    pub fn column_space(&self) -> Gf2Matrix {
        let (_, pivots) = self.rref();
        self.select_columns(&pivots)
    }

    /// Eliminates the pivot at `(r, c)`: clears column `c` with row operations
    /// and row `r` with column operations, then deletes both. The result has
    /// the same kernel and cokernel dimensions as `self`.
    ///
    /// ```
    /// use splice_rank::gf2::Gf2Matrix;
    /// let ones = Gf2Matrix::parse(&["11", "11"]);
    /// let reduced = ones.cancel(0, 0).unwrap();
    /// assert!(reduced.is_zero() && reduced.shape() == (1, 1));
    /// assert_eq!(reduced.h_number(), ones.h_number());
    /// ```
    pub fn cancel(&self, r: usize, c: usize) -> Result<Gf2Matrix, Gf2Error> {
        if !self.try_get(r, c)? {
            return Err(Gf2Error::PivotZero { row: r, col: c });
        }
        let pivot_row = self.row(r);
        let mut out = Gf2Matrix::zeros(self.rows - 1, self.cols - 1);
        let mut oi = 0;
        for i in 0..self.rows {
            if i == r {
                continue;
            }
            let hit = self.get(i, c);
            let mut oj = 0;
            for j in 0..self.cols {
                if j == c {
                    continue;
                }
                let v = self.get(i, j) ^ (hit && pivot_row.get(j));
                if v {
                    out.set(oi, oj, true);
                }
                oj += 1;
            }
            oi += 1;
        }
        Ok(out)
    }
}

impl fmt::Debug for Gf2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Gf2Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let s: String = (0..self.cols).map(|c| if self.get(r, c) { '1' } else { '0' }).collect();
            writeln!(f, "  {s}")?;
        }
        write!(f, "]")
    }
}

impl Add for &Gf2Matrix {
    type Output = Gf2Matrix;
    fn add(self, rhs: &Gf2Matrix) -> Gf2Matrix {
        self.try_add(rhs)
            .unwrap_or_else(|| panic!("add shape mismatch {:?} vs {:?}", self.shape(), rhs.shape()))
    }
}

impl Mul for &Gf2Matrix {
    type Output = Gf2Matrix;
    fn mul(self, rhs: &Gf2Matrix) -> Gf2Matrix {
        self.try_mul(rhs)
            .unwrap_or_else(|| panic!("mul shape mismatch {:?} x {:?}", self.shape(), rhs.shape()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rank_by_enumeration(m: &Gf2Matrix) -> usize {
        // |image| = 2^rank
        let mut seen = std::collections::HashSet::new();
        for mask in 0u32..(1 << m.cols()) {
            let v = BitVec::from_bools(&(0..m.cols()).map(|i| mask >> i & 1 == 1).collect::<Vec<_>>());
            seen.insert(m.mul_vec(&v));
        }
        seen.len().trailing_zeros() as usize
    }

    fn kernel_size_by_enumeration(m: &Gf2Matrix) -> usize {
        (0u32..(1 << m.cols()))
            .filter(|mask| {
                let v = BitVec::from_bools(&(0..m.cols()).map(|i| mask >> i & 1 == 1).collect::<Vec<_>>());
                m.mul_vec(&v).is_zero()
            })
            .count()
    }

    #[test]
    fn identity_and_zero_ranks() {
        assert_eq!(Gf2Matrix::identity(3).rank(), 3);
        assert_eq!(Gf2Matrix::zeros(2, 3).rank(), 0);
        assert_eq!(Gf2Matrix::identity(4).h_number(), 0);
    }

    #[test]
    fn lower_left_identity_block() {
        // (0 0; I 0) with I of size a: rank a
        for a in 0..4 {
            for b in 0..3 {
                let n = a + b;
                let m = Gf2Matrix::from_fn(n, n, |r, c| r >= b && c < a && r - b == c);
                assert_eq!(m.rank(), a);
            }
        }
        let m = Gf2Matrix::parse(&["000", "100", "000"]);
        assert_eq!(m.rank(), 1);
        assert_eq!(m.h_number(), 4);
        let small = Gf2Matrix::parse(&["00", "10"]);
        assert_eq!(small.kernel_basis().len(), 1);
        assert_eq!(small.cokernel_basis().len(), 1);
    }

    #[test]
    fn degenerate_shapes() {
        let m = Gf2Matrix::zeros(1, 0);
        assert_eq!(m.rank(), 0);
        assert!(m.kernel_basis().is_empty());
        assert_eq!(m.cokernel_basis().len(), 1);
        assert_eq!(m.h_number(), 1);
        let e = Gf2Matrix::zeros(0, 0);
        assert_eq!(Gf2Matrix::identity(3).kron(&e).shape(), (0, 0));
        assert_eq!(e.inverse(), Some(Gf2Matrix::zeros(0, 0)));
    }

    #[test]
    fn kron_of_identities() {
        assert_eq!(
            Gf2Matrix::identity(2).kron(&Gf2Matrix::identity(3)),
            Gf2Matrix::identity(6)
        );
    }

    #[test]
    fn rank_four_five_by_seven() {
        // rows 0..3 independent, row 4 = row0 + row1
        let m = Gf2Matrix::parse(&["1011001", "0110100", "0001011", "1100010", "1101101"]);
        assert_eq!(rank_by_enumeration(&m), 4);
        assert_eq!(m.rank(), 4);
        assert_eq!(m.kernel_basis().len(), 3);
        assert_eq!(kernel_size_by_enumeration(&m), 8);
        assert_eq!(m.cokernel_basis().len(), 1);
        for v in m.kernel_basis() {
            assert!(m.mul_vec(&v).is_zero());
        }
        for w in m.cokernel_basis() {
            assert!(m.transpose().mul_vec(&w).is_zero());
        }
    }

    #[test]
    fn cancel_examples() {
        let c = Gf2Matrix::identity(2).cancel(0, 0).unwrap();
        assert_eq!(c, Gf2Matrix::identity(1));
        assert_eq!(c.h_number(), 0);
        let ones = Gf2Matrix::parse(&["11", "11"]);
        assert_eq!(ones.h_number(), 2);
        let r = ones.cancel(0, 0).unwrap();
        assert_eq!(r, Gf2Matrix::zeros(1, 1));
        assert_eq!(r.h_number(), 2);
        assert_eq!(
            Gf2Matrix::zeros(2, 2).cancel(1, 1),
            Err(Gf2Error::PivotZero { row: 1, col: 1 })
        );
    }

    #[test]
    fn cancel_six_by_six() {
        let m = Gf2Matrix::parse(&["101100", "010011", "110110", "001101", "111000", "010101"]);
        assert!(m.get(2, 3));
        let c = m.cancel(2, 3).unwrap();
        assert_eq!(c.kernel_dim(), kernel_size_by_enumeration(&m).trailing_zeros() as usize);
        assert_eq!(c.h_number(), m.h_number());
    }

    #[test]
    fn inverse_and_solve() {
        let m = Gf2Matrix::parse(&["110", "011", "001"]);
        let inv = m.inverse().unwrap();
        assert!((&m * &inv).is_identity());
        assert_eq!(Gf2Matrix::parse(&["11", "11"]).inverse(), None);
        let b = BitVec::from_bools(&[true, false, true]);
        let x = m.solve_vec(&b).unwrap();
        assert_eq!(m.mul_vec(&x), b);
    }
}
