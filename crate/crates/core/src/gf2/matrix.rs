use std::fmt;
use std::ops::{Add, Mul};

use super::BitVector;
use crate::error::{Error, Result};

/// Dense matrix over GF(2) stored as packed rows.
///
/// The shape is fixed at construction. Fallible operations (`try_mul`,
/// `try_add`, `inverse`, ...) report shape problems as [`Error`]; the
/// operator overloads panic on non-conforming shapes instead.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BitVector>,
}

/// Reduced row echelon form of a matrix: the nonzero rows plus their pivot
/// columns, in increasing pivot order.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub rows: Vec<BitVector>,
    pub pivots: Vec<usize>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![BitVector::zeros(cols); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> bool) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                if f(i, j) {
                    m.set(i, j, true);
                }
            }
        }
        m
    }

    /// Builds a matrix from its rows; all rows must share one length.
    pub fn from_rows(rows: Vec<BitVector>) -> Result<Self> {
        let cols = rows.first().map_or(0, BitVector::len);
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch {
                op: "from_rows",
                left: (1, cols),
                right: (1, bad.len()),
            });
        }
        Ok(Self {
            rows: rows.len(),
            cols,
            data: rows,
        })
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, columns: &[BitVector]) -> Result<Self> {
        if let Some(bad) = columns.iter().find(|c| c.len() != rows) {
            return Err(Error::DimensionMismatch {
                op: "from_columns",
                left: (rows, 1),
                right: (bad.len(), 1),
            });
        }
        Ok(Self::from_fn(rows, columns.len(), |i, j| columns[j].get(i)))
    }

    /// Parses rows of `0`/`1` characters, e.g. `["1001", "0110"]`.
    pub fn from_strs(rows: &[&str]) -> Result<Self> {
        let rows = rows
            .iter()
            .map(|r| r.parse::<BitVector>())
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(rows)
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

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        self.data[i].get(j)
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        self.data[i].set(j, value);
    }

    pub fn row(&self, i: usize) -> &BitVector {
        &self.data[i]
    }

    pub fn row_vectors(&self) -> &[BitVector] {
        &self.data
    }

    pub fn column(&self, j: usize) -> BitVector {
        let mut c = BitVector::zeros(self.rows);
        for i in 0..self.rows {
            if self.get(i, j) {
                c.set(i, true);
            }
        }
        c
    }

    pub fn columns(&self) -> Vec<BitVector> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(BitVector::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Self::identity(self.rows)
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && *self == self.transpose()
    }

    /// Matrix product; errors when `self.cols != rhs.rows`.
    pub fn try_mul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch {
                op: "mul",
                left: self.shape(),
                right: rhs.shape(),
            });
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for (out_row, row) in out.data.iter_mut().zip(&self.data) {
            for k in row.ones() {
                out_row.xor_assign(&rhs.data[k]);
            }
        }
        Ok(out)
    }

    pub fn try_add(&self, rhs: &Self) -> Result<Self> {
        if self.shape() != rhs.shape() {
            return Err(Error::DimensionMismatch {
                op: "add",
                left: self.shape(),
                right: rhs.shape(),
            });
        }
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&rhs.data) {
            a.xor_assign(b);
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &BitVector) -> Result<BitVector> {
        if self.cols != v.len() {
            return Err(Error::DimensionMismatch {
                op: "mul_vec",
                left: self.shape(),
                right: (v.len(), 1),
            });
        }
        let mut out = BitVector::zeros(self.rows);
        for (i, row) in self.data.iter().enumerate() {
            if row.dot(v) {
                out.set(i, true);
            }
        }
        Ok(out)
    }

    /// Panicking form of [`BitMatrix::mul_vec`] for internal use on shapes
    /// that are known to conform.
    pub fn apply(&self, v: &BitVector) -> BitVector {
        self.mul_vec(v).expect("mul_vec shape")
    }

    /// The quadratic-form value `x^T M y`.
    pub fn bilinear(&self, x: &BitVector, y: &BitVector) -> bool {
        x.dot(&self.apply(y))
    }

    /// Diagonal as a vector.
    pub fn diag(&self) -> BitVector {
        let k = self.rows.min(self.cols);
        let mut d = BitVector::zeros(k);
        for i in 0..k {
            if self.get(i, i) {
                d.set(i, true);
            }
        }
        d
    }

    /// Strictly lower-triangular part (diagonal excluded).
    pub fn lows(&self) -> Self {
        Self::from_fn(self.rows, self.cols, |i, j| j < i && self.get(i, j))
    }

    /// Outer product `u v^T`.
    pub fn outer(u: &BitVector, v: &BitVector) -> Self {
        let mut m = Self::zeros(u.len(), v.len());
        for i in u.ones() {
            m.data[i] = v.clone();
        }
        m
    }

    /// Copies the `rows x cols` block starting at `(r0, c0)`.
    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        assert!(r0 + rows <= self.rows && c0 + cols <= self.cols, "block out of range");
        Self::from_fn(rows, cols, |i, j| self.get(r0 + i, c0 + j))
    }

    /// Writes `src` into `self` with its top-left corner at `(r0, c0)`.
    pub fn set_block(&mut self, r0: usize, c0: usize, src: &Self) {
        assert!(
            r0 + src.rows <= self.rows && c0 + src.cols <= self.cols,
            "block out of range"
        );
        for i in 0..src.rows {
            for j in 0..src.cols {
                self.set(r0 + i, c0 + j, src.get(i, j));
            }
        }
    }

    /// Assembles `(tl tr; bl br)`.
    pub fn from_blocks(tl: &Self, tr: &Self, bl: &Self, br: &Self) -> Result<Self> {
        if tl.rows != tr.rows || bl.rows != br.rows || tl.cols != bl.cols || tr.cols != br.cols {
            return Err(Error::DimensionMismatch {
                op: "from_blocks",
                left: tl.shape(),
                right: br.shape(),
            });
        }
        let mut m = Self::zeros(tl.rows + bl.rows, tl.cols + tr.cols);
        m.set_block(0, 0, tl);
        m.set_block(0, tl.cols, tr);
        m.set_block(tl.rows, 0, bl);
        m.set_block(tl.rows, tl.cols, br);
        Ok(m)
    }

    /// Block-diagonal `(a 0; 0 b)`.
    pub fn block_diag(a: &Self, b: &Self) -> Self {
        let mut m = Self::zeros(a.rows + b.rows, a.cols + b.cols);
        m.set_block(0, 0, a);
        m.set_block(a.rows, a.cols, b);
        m
    }

    /// Reduced row echelon form, eliminating columns in the given order.
    fn echelon_in_order(&self, order: impl Iterator<Item = usize>) -> Echelon {
        let mut rows = self.data.clone();
        let mut pivots = Vec::new();
        let mut next = 0;
        for col in order {
            let Some(p) = (next..rows.len()).find(|&r| rows[r].get(col)) else {
                continue;
            };
            rows.swap(next, p);
            let pivot_row = rows[next].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r != next && row.get(col) {
                    row.xor_assign(&pivot_row);
                }
            }
            pivots.push(col);
            next += 1;
            if next == rows.len() {
                break;
            }
        }
        rows.truncate(next);
        Echelon { rows, pivots }
    }

    /// Reduced row echelon form (pivots scanned left to right).
    pub fn rref(&self) -> Echelon {
        self.echelon_in_order(0..self.cols)
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch {
                op: "inverse",
                left: self.shape(),
                right: self.shape(),
            });
        }
        let n = self.rows;
        let mut left = self.data.clone();
        let mut right = Self::identity(n).data;
        for col in 0..n {
            let p = (col..n).find(|&r| left[r].get(col)).ok_or(Error::Singular)?;
            left.swap(col, p);
            right.swap(col, p);
            let (lp, rp) = (left[col].clone(), right[col].clone());
            for r in 0..n {
                if r != col && left[r].get(col) {
                    left[r].xor_assign(&lp);
                    right[r].xor_assign(&rp);
                }
            }
        }
        Ok(Self {
            rows: n,
            cols: n,
            data: right,
        })
    }

    /// Some `x` with `self * x = rhs`, or `None` when the system is
    /// inconsistent.
    ///
    /// Pivots are taken from the highest column down, so every pivot variable
    /// depends only on lower-indexed free variables. Setting the free
    /// variables to zero then yields the lexicographically least solution
    /// (index 0 most significant).
    pub fn solve(&self, rhs: &BitVector) -> Result<Option<BitVector>> {
        if rhs.len() != self.rows {
            return Err(Error::DimensionMismatch {
                op: "solve",
                left: self.shape(),
                right: (rhs.len(), 1),
            });
        }
        let augmented = Self::from_fn(self.rows, self.cols + 1, |i, j| {
            if j < self.cols {
                self.get(i, j)
            } else {
                rhs.get(i)
            }
        });
        let ech = augmented.echelon_in_order((0..self.cols).rev().chain(std::iter::once(self.cols)));
        if ech.pivots.contains(&self.cols) {
            return Ok(None);
        }
        let mut x = BitVector::zeros(self.cols);
        for (row, &p) in ech.rows.iter().zip(&ech.pivots) {
            if row.get(self.cols) {
                x.set(p, true);
            }
        }
        Ok(Some(x))
    }

    /// Basis of the null space `{x : self * x = 0}`, one vector per free
    /// column of the reduced row echelon form.
    pub fn kernel_basis(&self) -> Vec<BitVector> {
        let ech = self.rref();
        let free = (0..self.cols).filter(|c| !ech.pivots.contains(c));
        free.map(|f| {
            let mut x = BitVector::unit(self.cols, f);
            for (row, &p) in ech.rows.iter().zip(&ech.pivots) {
                if row.get(f) {
                    x.set(p, true);
                }
            }
            x
        })
        .collect()
    }

    /// Indices of a maximal set of linearly independent columns (the pivot
    /// columns of the reduced row echelon form).
    pub fn pivot_columns(&self) -> Vec<usize> {
        self.rref().pivots
    }

    /// Basis of the column space, taken from the pivot columns.
    pub fn image_basis(&self) -> Vec<BitVector> {
        self.pivot_columns().into_iter().map(|j| self.column(j)).collect()
    }

    /// Row-wise `0`/`1` strings.
    pub fn to_strings(&self) -> Vec<String> {
        self.data.iter().map(ToString::to_string).collect()
    }
}

impl Mul for &BitMatrix {
    type Output = BitMatrix;

    fn mul(self, rhs: &BitMatrix) -> BitMatrix {
        self.try_mul(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Add for &BitMatrix {
    type Output = BitMatrix;

    fn add(self, rhs: &BitMatrix) -> BitMatrix {
        self.try_add(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl fmt::Display for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.data.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{row}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitMatrix {}x{} [", self.rows, self.cols)?;
        for (i, row) in self.data.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{row}")?;
        }
        f.write_str("]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_force_solutions(m: &BitMatrix, rhs: &BitVector) -> Vec<BitVector> {
        (0..1u64 << m.cols())
            .map(|bits| {
                // index 0 is the most significant coordinate
                let mut x = BitVector::zeros(m.cols());
                for i in 0..m.cols() {
                    if bits >> (m.cols() - 1 - i) & 1 == 1 {
                        x.set(i, true);
                    }
                }
                x
            })
            .filter(|x| m.apply(x) == *rhs)
            .collect()
    }

    #[test]
    fn identity_times_m_is_m() {
        let m = BitMatrix::from_strs(&["1011", "0110", "1110", "0001"]).unwrap();
        assert_eq!(&BitMatrix::identity(4) * &m, m);
    }

    #[test]
    fn mul_rejects_bad_shapes() {
        let a = BitMatrix::zeros(2, 3);
        let b = BitMatrix::zeros(2, 3);
        assert!(matches!(a.try_mul(&b), Err(Error::DimensionMismatch { .. })));
        assert!(a.try_add(&BitMatrix::zeros(3, 2)).is_err());
    }

    #[test]
    fn rank_examples() {
        assert_eq!(BitMatrix::zeros(3, 3).rank(), 0);
        assert_eq!(BitMatrix::identity(5).rank(), 5);
        // antidiagonal 2x2 block
        assert_eq!(BitMatrix::from_strs(&["01", "10"]).unwrap().rank(), 2);
        assert_eq!(BitMatrix::from_strs(&["11", "11"]).unwrap().rank(), 1);
    }

    #[test]
    fn inverse_of_singular_fails() {
        let m = BitMatrix::from_strs(&["11", "11"]).unwrap();
        assert_eq!(m.inverse(), Err(Error::Singular));
    }

    #[test]
    fn solve_identity_and_zero() {
        let v: BitVector = "1011".parse().unwrap();
        assert_eq!(BitMatrix::identity(4).solve(&v).unwrap(), Some(v.clone()));
        assert_eq!(BitMatrix::zeros(4, 4).solve(&v).unwrap(), None);
        assert!(BitMatrix::zeros(3, 4).solve(&v).is_err());
    }

    #[test]
    fn solve_picks_lexicographically_least_solution() {
        let m = BitMatrix::from_strs(&["1100", "0011"]).unwrap();
        let rhs: BitVector = "11".parse().unwrap();
        let x = m.solve(&rhs).unwrap().unwrap();
        assert_eq!(x.to_string(), "0101");

        // exhaustive check over every 3x4 system with a fixed right-hand side
        let rhs: BitVector = "101".parse().unwrap();
        for bits in 0..1u64 << 12 {
            let m = BitMatrix::from_fn(3, 4, |i, j| bits >> (i * 4 + j) & 1 == 1);
            let brute = brute_force_solutions(&m, &rhs);
            match m.solve(&rhs).unwrap() {
                None => assert!(brute.is_empty()),
                Some(x) => {
                    let least = brute.iter().min_by(|a, b| a.lex_cmp(b)).unwrap();
                    assert_eq!(&x, least, "matrix {m:?}");
                }
            }
        }
    }

    #[test]
    fn kernel_examples() {
        assert!(BitMatrix::identity(4).kernel_basis().is_empty());
        assert_eq!(BitMatrix::zeros(3, 3).kernel_basis().len(), 3);
    }

    #[test]
    fn lows_excludes_diagonal() {
        let m = BitMatrix::from_strs(&["111", "111", "111"]).unwrap();
        assert_eq!(m.lows(), BitMatrix::from_strs(&["000", "100", "110"]).unwrap());
    }

    #[test]
    fn blocks_round_trip() {
        let m = BitMatrix::from_strs(&["1001", "0110", "0010", "0001"]).unwrap();
        let (tl, tr) = (m.block(0, 0, 2, 2), m.block(0, 2, 2, 2));
        let (bl, br) = (m.block(2, 0, 2, 2), m.block(2, 2, 2, 2));
        assert_eq!(BitMatrix::from_blocks(&tl, &tr, &bl, &br).unwrap(), m);
        assert_eq!(tr, BitMatrix::from_strs(&["01", "10"]).unwrap());
    }
}
