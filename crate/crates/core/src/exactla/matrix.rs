use std::fmt;

use num_traits::{One, Zero};

use super::{echelon, format_rational, LinalgError, Rational, Subspace};

/// Sparse rational matrix. Each row keeps its nonzero entries sorted by
/// column index; no explicit zeros are stored, so structural equality is
/// mathematical equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<(usize, Rational)>>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Vec::new(); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            rows: n,
            cols: n,
            data: (0..n).map(|i| vec![(i, Rational::one())]).collect(),
        }
    }

    /// Builds a matrix from `(row, col, value)` triplets. Repeated positions
    /// are summed.
    pub fn from_triplets<I>(rows: usize, cols: usize, entries: I) -> Result<Self, LinalgError>
    where
        I: IntoIterator<Item = (usize, usize, Rational)>,
    {
        let mut m = Self::zeros(rows, cols);
        for (r, c, v) in entries {
            if r >= rows || c >= cols {
                return Err(LinalgError::OutOfBounds {
                    row: r,
                    col: c,
                    rows,
                    cols,
                });
            }
            m.add_to(r, c, &v);
        }
        Ok(m)
    }

    /// Dense row-major constructor; `cols` is needed when there are no rows.
    pub fn from_rows(rows: &[Vec<Rational>], cols: usize) -> Result<Self, LinalgError> {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(LinalgError::Ragged {
                    row: i,
                    expected: cols,
                    found: row.len(),
                });
            }
            m.data[i] = row
                .iter()
                .enumerate()
                .filter(|(_, q)| !q.is_zero())
                .map(|(j, q)| (j, q.clone()))
                .collect();
        }
        Ok(m)
    }

    /// Integer convenience constructor. Panics on ragged input.
    pub fn from_ints(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let q: Vec<Vec<Rational>> = rows
            .iter()
            .map(|r| r.iter().map(|&v| super::int(v)).collect())
            .collect();
        Self::from_rows(&q, cols).expect("rectangular input")
    }

    /// Matrix whose columns are the given dense vectors of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<Rational>]) -> Result<Self, LinalgError> {
        let mut trip = Vec::new();
        for (j, col) in columns.iter().enumerate() {
            if col.len() != rows {
                return Err(LinalgError::Ragged {
                    row: j,
                    expected: rows,
                    found: col.len(),
                });
            }
            for (i, q) in col.iter().enumerate() {
                if !q.is_zero() {
                    trip.push((i, j, q.clone()));
                }
            }
        }
        Self::from_triplets(rows, columns.len(), trip)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Vec::is_empty)
    }

    pub fn row(&self, i: usize) -> &[(usize, Rational)] {
        &self.data[i]
    }

    pub fn get(&self, r: usize, c: usize) -> Rational {
        self.data[r]
            .binary_search_by_key(&c, |e| e.0)
            .map(|k| self.data[r][k].1.clone())
            .unwrap_or_else(|_| Rational::zero())
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        assert!(r < self.rows && c < self.cols, "index out of bounds");
        let row = &mut self.data[r];
        match row.binary_search_by_key(&c, |e| e.0) {
            Ok(k) if v.is_zero() => {
                row.remove(k);
            }
            Ok(k) => row[k].1 = v,
            Err(_) if v.is_zero() => {}
            Err(k) => row.insert(k, (c, v)),
        }
    }

    fn add_to(&mut self, r: usize, c: usize, v: &Rational) {
        if v.is_zero() {
            return;
        }
        let row = &mut self.data[r];
        match row.binary_search_by_key(&c, |e| e.0) {
            Ok(k) => {
                row[k].1 += v;
                if row[k].1.is_zero() {
                    row.remove(k);
                }
            }
            Err(k) => row.insert(k, (c, v.clone())),
        }
    }

    /// Iterates over the stored (nonzero) entries in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Rational)> + '_ {
        self.data
            .iter()
            .enumerate()
            .flat_map(|(i, row)| row.iter().map(move |(j, q)| (i, *j, q)))
    }

    pub fn to_dense(&self) -> Vec<Vec<Rational>> {
        let mut out = vec![vec![Rational::zero(); self.cols]; self.rows];
        for (i, j, q) in self.entries() {
            out[i][j] = q.clone();
        }
        out
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut data = vec![Vec::new(); self.cols];
        for (i, row) in self.data.iter().enumerate() {
            for (j, q) in row {
                data[*j].push((i, q.clone()));
            }
        }
        Self {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    pub fn mul(&self, rhs: &Matrix) -> Result<Matrix, LinalgError> {
        if self.cols != rhs.rows {
            return Err(LinalgError::DimensionMismatch {
                op: "product",
                left: self.shape(),
                right: rhs.shape(),
            });
        }
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        let mut acc: Vec<Rational> = vec![Rational::zero(); rhs.cols];
        let mut touched: Vec<usize> = Vec::new();
        for (i, row) in self.data.iter().enumerate() {
            for (k, a) in row {
                for (j, b) in &rhs.data[*k] {
                    if acc[*j].is_zero() {
                        touched.push(*j);
                    }
                    acc[*j] += a * b;
                }
            }
            touched.sort_unstable();
            touched.dedup();
            for &j in &touched {
                let v = std::mem::replace(&mut acc[j], Rational::zero());
                if !v.is_zero() {
                    out.data[i].push((j, v));
                }
            }
            touched.clear();
        }
        Ok(out)
    }

    pub fn add(&self, rhs: &Matrix) -> Result<Matrix, LinalgError> {
        self.combine(rhs, &Rational::one(), "sum")
    }

    pub fn sub(&self, rhs: &Matrix) -> Result<Matrix, LinalgError> {
        self.combine(rhs, &-Rational::one(), "difference")
    }

    fn combine(&self, rhs: &Matrix, s: &Rational, op: &'static str) -> Result<Matrix, LinalgError> {
        if self.shape() != rhs.shape() {
            return Err(LinalgError::DimensionMismatch {
                op,
                left: self.shape(),
                right: rhs.shape(),
            });
        }
        let mut out = self.clone();
        for (i, j, q) in rhs.entries() {
            out.add_to(i, j, &(q * s));
        }
        Ok(out)
    }

    pub fn scale(&self, s: &Rational) -> Matrix {
        if s.is_zero() {
            return Matrix::zeros(self.rows, self.cols);
        }
        let mut out = self.clone();
        for row in out.data.iter_mut() {
            for (_, q) in row.iter_mut() {
                *q *= s;
            }
        }
        out
    }

    pub fn neg(&self) -> Matrix {
        self.scale(&-Rational::one())
    }

    /// Writes `block` into `self` with its top-left corner at `(r0, c0)`,
    /// adding to whatever is already there.
    pub fn add_block(&mut self, r0: usize, c0: usize, block: &Matrix) {
        assert!(
            r0 + block.rows <= self.rows && c0 + block.cols <= self.cols,
            "block does not fit"
        );
        for (i, j, q) in block.entries() {
            self.add_to(r0 + i, c0 + j, q);
        }
    }

    /// Copy of the block with rows `r0..r0+nr` and columns `c0..c0+nc`.
    pub fn block(&self, r0: usize, c0: usize, nr: usize, nc: usize) -> Matrix {
        assert!(r0 + nr <= self.rows && c0 + nc <= self.cols, "block out of range");
        let mut out = Matrix::zeros(nr, nc);
        for i in 0..nr {
            out.data[i] = self.data[r0 + i]
                .iter()
                .filter(|(j, _)| *j >= c0 && *j < c0 + nc)
                .map(|(j, q)| (j - c0, q.clone()))
                .collect();
        }
        out
    }

    pub fn select_rows(&self, idx: &[usize]) -> Matrix {
        Matrix {
            rows: idx.len(),
            cols: self.cols,
            data: idx.iter().map(|&i| self.data[i].clone()).collect(),
        }
    }

    pub fn select_cols(&self, idx: &[usize]) -> Matrix {
        let mut pos = vec![usize::MAX; self.cols];
        for (k, &j) in idx.iter().enumerate() {
            pos[j] = k;
        }
        let mut out = Matrix::zeros(self.rows, idx.len());
        for (i, row) in self.data.iter().enumerate() {
            let mut r: Vec<(usize, Rational)> = row
                .iter()
                .filter(|(j, _)| pos[*j] != usize::MAX)
                .map(|(j, q)| (pos[*j], q.clone()))
                .collect();
            r.sort_by_key(|e| e.0);
            out.data[i] = r;
        }
        out
    }

    /// Side-by-side concatenation; all parts need the same row count.
    pub fn hstack(rows: usize, parts: &[&Matrix]) -> Result<Matrix, LinalgError> {
        let cols = parts.iter().map(|m| m.cols).sum();
        let mut out = Matrix::zeros(rows, cols);
        let mut c0 = 0;
        for m in parts {
            if m.rows != rows {
                return Err(LinalgError::DimensionMismatch {
                    op: "hstack",
                    left: (rows, c0),
                    right: m.shape(),
                });
            }
            out.add_block(0, c0, m);
            c0 += m.cols;
        }
        Ok(out)
    }

    pub fn vstack(cols: usize, parts: &[&Matrix]) -> Result<Matrix, LinalgError> {
        let rows = parts.iter().map(|m| m.rows).sum();
        let mut out = Matrix::zeros(rows, cols);
        let mut r0 = 0;
        for m in parts {
            if m.cols != cols {
                return Err(LinalgError::DimensionMismatch {
                    op: "vstack",
                    left: (r0, cols),
                    right: m.shape(),
                });
            }
            out.add_block(r0, 0, m);
            r0 += m.rows;
        }
        Ok(out)
    }

    /// Kronecker product, `(i1, i2) -> i1 * other.rows + i2`.
    pub fn kron(&self, other: &Matrix) -> Matrix {
        let mut out = Matrix::zeros(self.rows * other.rows, self.cols * other.cols);
        for (i1, j1, a) in self.entries() {
            for (i2, j2, b) in other.entries() {
                out.add_to(i1 * other.rows + i2, j1 * other.cols + j2, &(a * b));
            }
        }
        out
    }

    pub fn rank(&self) -> usize {
        echelon::rank(self)
    }

    pub fn kernel_basis(&self) -> Subspace {
        Subspace::from_independent_columns(echelon::kernel_columns(self))
    }

    /// Basis of the column space, taken from the pivot columns of `self`.
    pub fn image(&self) -> Subspace {
        let piv = echelon::pivot_columns(self);
        Subspace::from_independent_columns(self.select_cols(&piv))
    }

    /// Some `X` with `self * X = rhs`, `None` if there is none.
    pub fn solve(&self, rhs: &Matrix) -> Result<Option<Matrix>, LinalgError> {
        if self.rows != rhs.rows {
            return Err(LinalgError::DimensionMismatch {
                op: "solve",
                left: self.shape(),
                right: rhs.shape(),
            });
        }
        Ok(echelon::solve(self, rhs))
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols || self.rank() != self.rows {
            return None;
        }
        echelon::solve(self, &Matrix::identity(self.rows))
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for (i, row) in self.to_dense().iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            let cells: Vec<String> = row.iter().map(format_rational).collect();
            write!(f, "{}", cells.join(" "))?;
        }
        write!(f, "]")
    }
}
