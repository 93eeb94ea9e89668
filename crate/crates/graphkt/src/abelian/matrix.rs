use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Dense integer matrix with arbitrary-precision entries.
///
/// Matrices with zero rows or zero columns are first-class citizens: they
/// show up whenever an index class of a block decomposition is empty, and all
/// operations (products, stacking, normal forms) must degrade gracefully to
/// them.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>, // row-major
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from row slices. All rows must have equal length.
    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        let data = rows
            .iter()
            .flat_map(|row| row.iter().map(|&v| BigInt::from(v)))
            .collect();
        IntMatrix { rows: r, cols: c, data }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        IntMatrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| v.is_zero())
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> IntMatrix {
        IntMatrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn from_columns(rows: usize, cols: &[Vec<BigInt>]) -> IntMatrix {
        assert!(cols.iter().all(|c| c.len() == rows), "ragged columns");
        IntMatrix::from_fn(rows, cols.len(), |i, j| cols[j][i].clone())
    }

    /// Horizontal concatenation. All blocks must share the row count.
    pub fn hstack(blocks: &[&IntMatrix]) -> IntMatrix {
        assert!(!blocks.is_empty());
        let rows = blocks[0].rows;
        assert!(blocks.iter().all(|b| b.rows == rows), "row count mismatch");
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut m = IntMatrix::zeros(rows, cols);
        let mut offset = 0;
        for b in blocks {
            for i in 0..rows {
                for j in 0..b.cols {
                    m.set(i, offset + j, b.get(i, j).clone());
                }
            }
            offset += b.cols;
        }
        m
    }

    /// Vertical concatenation. All blocks must share the column count.
    pub fn vstack(blocks: &[&IntMatrix]) -> IntMatrix {
        assert!(!blocks.is_empty());
        let cols = blocks[0].cols;
        assert!(blocks.iter().all(|b| b.cols == cols), "column count mismatch");
        let rows = blocks.iter().map(|b| b.rows).sum();
        let mut m = IntMatrix::zeros(rows, cols);
        let mut offset = 0;
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..cols {
                    m.set(offset + i, j, b.get(i, j).clone());
                }
            }
            offset += b.rows;
        }
        m
    }

    /// Assembles a block matrix from a grid of blocks. Within each grid row
    /// the blocks must agree on row count, within each grid column on column
    /// count.
    pub fn from_blocks(grid: &[Vec<&IntMatrix>]) -> IntMatrix {
        assert!(!grid.is_empty());
        let rows: Vec<IntMatrix> = grid.iter().map(|row| IntMatrix::hstack(row)).collect();
        IntMatrix::vstack(&rows.iter().collect::<Vec<_>>())
    }

    pub fn select_rows(&self, indices: &[usize]) -> IntMatrix {
        IntMatrix::from_fn(indices.len(), self.cols, |i, j| {
            self.get(indices[i], j).clone()
        })
    }

    pub fn select_cols(&self, indices: &[usize]) -> IntMatrix {
        IntMatrix::from_fn(self.rows, indices.len(), |i, j| {
            self.get(i, indices[j]).clone()
        })
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j) * &v[j]).sum())
            .collect()
    }

    /// Exact determinant by Bareiss fraction-free elimination.
    pub fn determinant(&self) -> BigInt {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a: Vec<Vec<BigInt>> = (0..n).map(|i| self.row_vec(i)).collect();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(k, i);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = num / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        sign * a[n - 1][n - 1].clone()
    }

    fn row_vec(&self, i: usize) -> Vec<BigInt> {
        (0..self.cols).map(|j| self.get(i, j).clone()).collect()
    }

    // Elementary operations used by the normal-form algorithms.

    pub(crate) fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for k in 0..self.cols {
            self.data.swap(i * self.cols + k, j * self.cols + k);
        }
    }

    pub(crate) fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for k in 0..self.rows {
            self.data.swap(k * self.cols + i, k * self.cols + j);
        }
    }

    pub(crate) fn negate_row(&mut self, i: usize) {
        for k in 0..self.cols {
            let idx = i * self.cols + k;
            let v = std::mem::take(&mut self.data[idx]);
            self.data[idx] = -v;
        }
    }

    pub(crate) fn negate_col(&mut self, j: usize) {
        for k in 0..self.rows {
            let idx = k * self.cols + j;
            let v = std::mem::take(&mut self.data[idx]);
            self.data[idx] = -v;
        }
    }

    /// row_i += c * row_j
    pub(crate) fn add_row_multiple(&mut self, i: usize, j: usize, c: &BigInt) {
        assert_ne!(i, j);
        for k in 0..self.cols {
            let v = self.get(j, k) * c;
            let idx = i * self.cols + k;
            let cur = std::mem::take(&mut self.data[idx]);
            self.data[idx] = cur + v;
        }
    }

    /// col_i += c * col_j
    pub(crate) fn add_col_multiple(&mut self, i: usize, j: usize, c: &BigInt) {
        assert_ne!(i, j);
        for k in 0..self.rows {
            let v = self.get(k, j) * c;
            let idx = k * self.cols + i;
            let cur = std::mem::take(&mut self.data[idx]);
            self.data[idx] = cur + v;
        }
    }

    /// Conversion for report serialization; fails on entries outside i64.
    pub fn to_i64_rows(&self) -> Option<Vec<Vec<i64>>> {
        (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| i64::try_from(self.get(i, j)).ok())
                    .collect()
            })
            .collect()
    }
}

impl Mul for &IntMatrix {
    type Output = IntMatrix;

    fn mul(self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, rhs.rows, "inner dimension mismatch");
        IntMatrix::from_fn(self.rows, rhs.cols, |i, j| {
            (0..self.cols).map(|k| self.get(i, k) * rhs.get(k, j)).sum()
        })
    }
}

impl Add for &IntMatrix {
    type Output = IntMatrix;

    fn add(self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        IntMatrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j) + rhs.get(i, j))
    }
}

impl Sub for &IntMatrix {
    type Output = IntMatrix;

    fn sub(self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        IntMatrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j) - rhs.get(i, j))
    }
}

impl Neg for &IntMatrix {
    type Output = IntMatrix;

    fn neg(self) -> IntMatrix {
        IntMatrix::from_fn(self.rows, self.cols, |i, j| -self.get(i, j))
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  [")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            writeln!(f, "]")?;
        }
        write!(f, "]")
    }
}
