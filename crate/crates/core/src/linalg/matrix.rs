use std::fmt;

use crate::scalar::Scalar;

/// Sparse vector: `(index, value)` pairs sorted by index, no stored zeros.
pub type SparseVec<T> = Vec<(usize, T)>;

/// Column-major sparse matrix with no stored zero entries.
#[derive(Clone, PartialEq)]
pub struct SparseMatrix<T: Scalar> {
    rows: usize,
    cols: Vec<SparseVec<T>>,
}

impl<T: Scalar> fmt::Debug for SparseMatrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SparseMatrix({}x{}, nnz={})", self.rows, self.cols.len(), self.nnz())
    }
}

impl<T: Scalar> SparseMatrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols: vec![Vec::new(); cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self { rows: n, cols: (0..n).map(|i| vec![(i, T::one())]).collect() }
    }

    /// Build from `(row, col, value)` triplets; duplicates are summed.
    pub fn from_triplets<I: IntoIterator<Item = (usize, usize, T)>>(rows: usize, cols: usize, entries: I) -> Self {
        let mut m = Self::zeros(rows, cols);
        for (r, c, v) in entries {
            m.add_to(r, c, v);
        }
        m
    }

    /// Build from columns given as unsorted sparse vectors (duplicates summed).
    pub fn from_columns(rows: usize, columns: Vec<SparseVec<T>>) -> Self {
        let cols = columns.into_iter().map(|c| normalize(c)).collect::<Vec<_>>();
        debug_assert!(cols.iter().flatten().all(|(r, _)| *r < rows));
        Self { rows, cols }
    }

    pub fn from_dense(rows: &[Vec<T>]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        Self::from_triplets(
            nrows,
            ncols,
            rows.iter().enumerate().flat_map(|(r, row)| row.iter().enumerate().map(move |(c, v)| (r, c, v.clone()))),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols.len()
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(Vec::is_empty)
    }

    pub fn column(&self, c: usize) -> &[(usize, T)] {
        &self.cols[c]
    }

    pub fn columns(&self) -> &[SparseVec<T>] {
        &self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> T {
        match self.cols[c].binary_search_by_key(&r, |(i, _)| *i) {
            Ok(k) => self.cols[c][k].1.clone(),
            Err(_) => T::zero(),
        }
    }

    pub fn add_to(&mut self, r: usize, c: usize, v: T) {
        assert!(r < self.rows && c < self.cols.len(), "entry ({r}, {c}) out of bounds");
        if v.is_zero() {
            return;
        }
        let col = &mut self.cols[c];
        match col.binary_search_by_key(&r, |(i, _)| *i) {
            Ok(k) => {
                let sum = col[k].1.clone() + v;
                if sum.is_zero() {
                    col.remove(k);
                } else {
                    col[k].1 = sum;
                }
            }
            Err(k) => col.insert(k, (r, v)),
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &T)> {
        self.cols.iter().enumerate().flat_map(|(c, col)| col.iter().map(move |(r, v)| (*r, c, v)))
    }

    /// Rows as sparse vectors.
    pub fn row_vectors(&self) -> Vec<SparseVec<T>> {
        let mut rows = vec![Vec::new(); self.rows];
        for (c, col) in self.cols.iter().enumerate() {
            for (r, v) in col {
                rows[*r].push((c, v.clone()));
            }
        }
        rows
    }

    pub fn transpose(&self) -> Self {
        Self { rows: self.cols.len(), cols: self.row_vectors() }
    }

    /// Matrix product `self · rhs`.
    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols(), rhs.rows, "inner dimensions differ");
        let cols = rhs
            .cols
            .iter()
            .map(|rc| {
                let mut acc: SparseVec<T> = Vec::new();
                for (k, b) in rc {
                    for (r, a) in &self.cols[*k] {
                        acc.push((*r, a.clone() * b.clone()));
                    }
                }
                normalize(acc)
            })
            .collect();
        Self { rows: self.rows, cols }
    }

    pub fn apply(&self, v: &[(usize, T)]) -> SparseVec<T> {
        let mut acc = Vec::new();
        for (k, b) in v {
            for (r, a) in &self.cols[*k] {
                acc.push((*r, a.clone() * b.clone()));
            }
        }
        normalize(acc)
    }

    /// Stack `self` on top of `below` (same column count).
    pub fn stack(&self, below: &Self) -> Self {
        assert_eq!(self.cols(), below.cols(), "column counts differ");
        let cols = self
            .cols
            .iter()
            .zip(&below.cols)
            .map(|(a, b)| a.iter().cloned().chain(b.iter().map(|(r, v)| (r + self.rows, v.clone()))).collect())
            .collect();
        Self { rows: self.rows + below.rows, cols }
    }

    pub fn scaled(&self, s: &T) -> Self {
        if s.is_zero() {
            return Self::zeros(self.rows, self.cols());
        }
        Self {
            rows: self.rows,
            cols: self.cols.iter().map(|c| c.iter().map(|(r, v)| (*r, v.clone() * s.clone())).collect()).collect(),
        }
    }

    pub fn to_dense(&self) -> Vec<Vec<T>> {
        let mut out = vec![vec![T::zero(); self.cols()]; self.rows];
        for (r, c, v) in self.entries() {
            out[r][c] = v.clone();
        }
        out
    }
}

/// Sort by index, sum duplicates, drop zeros.
pub fn normalize<T: Scalar>(mut v: SparseVec<T>) -> SparseVec<T> {
    v.sort_by_key(|(i, _)| *i);
    let mut out: SparseVec<T> = Vec::with_capacity(v.len());
    for (i, x) in v {
        match out.last_mut() {
            Some((j, y)) if *j == i => *y = y.clone() + x,
            _ => out.push((i, x)),
        }
    }
    out.retain(|(_, x)| !x.is_zero());
    out
}
