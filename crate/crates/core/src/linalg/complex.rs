use std::collections::BTreeMap;
use std::ops::RangeInclusive;

use rayon::prelude::*;

use super::elim::{independent_modulo, nullspace, primitive_form, rank};
use super::matrix::{SparseMatrix, SparseVec};
use crate::graded::GradedDims;
use crate::scalar::{ExactScalar, Scalar};
use crate::Error;

/// A finite window `[lo, hi]` of a cochain complex: a labeled basis in every
/// degree and differentials `d_k : C^k → C^{k+1}` for `lo ≤ k < hi`.
///
/// The matrix of `d_k` has one column per basis vector of `C^k` and one row
/// per basis vector of `C^{k+1}`.
#[derive(Clone, Debug)]
pub struct CochainComplex<T: Scalar> {
    lo: i64,
    hi: i64,
    basis: Vec<Vec<String>>,
    diffs: Vec<SparseMatrix<T>>,
}

/// Betti numbers of a complex, with cocycle representatives when requested.
#[derive(Clone, Debug)]
pub struct CohomologyDims<T: Scalar> {
    pub dims: GradedDims,
    /// Per degree, coordinate vectors in the basis of `C^k`.
    pub representatives: Option<BTreeMap<i64, Vec<SparseVec<T>>>>,
}

impl<T: Scalar> CochainComplex<T> {
    /// Assemble without validating shapes; see [`CochainComplex::verify`].
    pub fn from_parts(lo: i64, hi: i64, basis: Vec<Vec<String>>, diffs: Vec<SparseMatrix<T>>) -> Self {
        Self { lo, hi, basis, diffs }
    }

    /// Assemble and check that every matrix shape matches the adjacent bases.
    pub fn new(lo: i64, hi: i64, basis: Vec<Vec<String>>, diffs: Vec<SparseMatrix<T>>) -> Result<Self, Error> {
        let c = Self::from_parts(lo, hi, basis, diffs);
        c.check_shapes()?;
        Ok(c)
    }

    pub fn window(&self) -> RangeInclusive<i64> {
        self.lo..=self.hi
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.hi
    }

    fn slot(&self, k: i64) -> Option<usize> {
        (self.lo..=self.hi).contains(&k).then(|| (k - self.lo) as usize)
    }

    pub fn basis(&self, k: i64) -> &[String] {
        self.slot(k).map_or(&[][..], |i| &self.basis[i])
    }

    pub fn dim(&self, k: i64) -> usize {
        self.basis(k).len()
    }

    pub fn dims(&self) -> GradedDims {
        (self.lo..=self.hi).map(|k| (k, self.dim(k))).collect()
    }

    /// `d_k : C^k → C^{k+1}`, if both degrees are in the window.
    pub fn diff(&self, k: i64) -> Option<&SparseMatrix<T>> {
        if k >= self.lo && k < self.hi {
            self.diffs.get((k - self.lo) as usize)
        } else {
            None
        }
    }

    fn check_shapes(&self) -> Result<(), Error> {
        if self.hi < self.lo {
            return Err(Error::Shape { degree: self.lo, detail: format!("empty window [{}, {}]", self.lo, self.hi) });
        }
        let n = (self.hi - self.lo + 1) as usize;
        if self.basis.len() != n {
            return Err(Error::Shape { degree: self.lo, detail: format!("{} basis lists for {n} degrees", self.basis.len()) });
        }
        if self.diffs.len() != n - 1 {
            return Err(Error::Shape {
                degree: self.lo,
                detail: format!("{} differentials for {n} degrees", self.diffs.len()),
            });
        }
        for k in self.lo..self.hi {
            let d = &self.diffs[(k - self.lo) as usize];
            if d.cols() != self.dim(k) || d.rows() != self.dim(k + 1) {
                return Err(Error::Shape {
                    degree: k,
                    detail: format!(
                        "d_{k} is {}x{} but dim C^{k} = {}, dim C^{} = {}",
                        d.rows(),
                        d.cols(),
                        self.dim(k),
                        k + 1,
                        self.dim(k + 1)
                    ),
                });
            }
        }
        Ok(())
    }

    /// Check shapes, then whether every composable `d_{k+1} ∘ d_k` vanishes.
    pub fn verify(&self) -> Result<bool, Error> {
        self.check_shapes()?;
        let ok = (self.lo..self.hi - 1)
            .into_par_iter()
            .all(|k| self.diff(k + 1).unwrap().mul(self.diff(k).unwrap()).is_zero());
        Ok(ok)
    }

    /// The same complex with every degree moved by `by` (degree `k` becomes
    /// `k + by`). Differentials are unchanged; cohomology moves along.
    pub fn regraded(self, by: i64) -> Self {
        Self { lo: self.lo + by, hi: self.hi + by, ..self }
    }

    /// Alternating sum of the chain dimensions over the window.
    pub fn euler_characteristic(&self) -> i64 {
        self.dims().euler_characteristic()
    }

    /// Graded tensor product, truncated to `[lo, hi]`, with differential
    /// `d(a ⊗ b) = da ⊗ b + (-1)^{|a|} a ⊗ db`. Both factors must cover every
    /// degree that contributes to the window.
    pub fn tensor(&self, other: &Self, lo: i64, hi: i64) -> Self {
        // Basis of the product in degree k: pairs (a, b) with |a| + |b| = k,
        // ordered by |a| then index.
        let layout = |k: i64| -> Vec<(i64, usize, usize)> {
            let mut v = Vec::new();
            for a in self.lo..=self.hi {
                let b = k - a;
                for i in 0..self.dim(a) {
                    for j in 0..other.dim(b) {
                        v.push((a, i, j));
                    }
                }
            }
            v
        };
        let layouts: Vec<_> = (lo..=hi).map(layout).collect();
        let basis = layouts
            .iter()
            .zip(lo..=hi)
            .map(|(l, k)| l.iter().map(|(a, i, j)| format!("{} ⊗ {}", self.basis(*a)[*i], other.basis(k - a)[*j])).collect())
            .collect();
        let mut diffs = Vec::new();
        for k in lo..hi {
            let src = &layouts[(k - lo) as usize];
            let dst = &layouts[(k + 1 - lo) as usize];
            let index: std::collections::HashMap<(i64, usize, usize), usize> =
                dst.iter().enumerate().map(|(r, key)| (*key, r)).collect();
            let cols = src
                .iter()
                .map(|&(a, i, j)| {
                    let b = k - a;
                    let mut col = Vec::new();
                    if let Some(da) = self.diff(a) {
                        for (r, v) in da.column(i) {
                            if let Some(&row) = index.get(&(a + 1, *r, j)) {
                                col.push((row, v.clone()));
                            }
                        }
                    }
                    if let Some(db) = other.diff(b) {
                        let sign = if a.rem_euclid(2) == 1 { -T::one() } else { T::one() };
                        for (r, v) in db.column(j) {
                            if let Some(&row) = index.get(&(a, i, *r)) {
                                col.push((row, v.clone() * sign.clone()));
                            }
                        }
                    }
                    col
                })
                .collect();
            diffs.push(SparseMatrix::from_columns(dst.len(), cols));
        }
        Self::from_parts(lo, hi, basis, diffs)
    }
}

impl<T: ExactScalar> CochainComplex<T> {
    fn check_interior(&self, interior: &RangeInclusive<i64>) -> Result<(), Error> {
        for k in [*interior.start(), *interior.end()] {
            if k <= self.lo || k >= self.hi {
                return Err(Error::UntrustedBoundary { degree: k, lo: self.lo, hi: self.hi });
            }
        }
        Ok(())
    }

    /// Exact Betti numbers for every degree of `interior`, which must lie
    /// strictly inside the window.
    pub fn cohomology(&self, interior: RangeInclusive<i64>) -> Result<CohomologyDims<T>, Error> {
        self.check_shapes()?;
        if interior.is_empty() {
            return Ok(CohomologyDims { dims: GradedDims::new(), representatives: None });
        }
        self.check_interior(&interior)?;
        let (a, b) = (*interior.start(), *interior.end());
        let ranks: BTreeMap<i64, usize> =
            (a - 1..=b).into_par_iter().map(|k| (k, rank(self.diff(k).unwrap()))).collect();
        let dims = (a..=b).map(|k| (k, self.dim(k) - ranks[&k] - ranks[&(k - 1)])).collect();
        Ok(CohomologyDims { dims, representatives: None })
    }

    /// Betti numbers together with cocycle representatives: in each degree a
    /// set of cocycles whose classes form a basis of `ker d_k / im d_{k-1}`.
    pub fn cohomology_with_representatives(&self, interior: RangeInclusive<i64>) -> Result<CohomologyDims<T>, Error> {
        self.check_shapes()?;
        if interior.is_empty() {
            return Ok(CohomologyDims { dims: GradedDims::new(), representatives: Some(BTreeMap::new()) });
        }
        self.check_interior(&interior)?;
        let per_degree: Vec<(i64, Vec<SparseVec<T>>)> = interior
            .clone()
            .into_par_iter()
            .map(|k| {
                let kernel = nullspace(self.diff(k).unwrap());
                let image: Vec<SparseVec<T>> = self.diff(k - 1).unwrap().columns().to_vec();
                let keep = independent_modulo(self.dim(k), &image, &kernel);
                (k, keep.into_iter().map(|i| primitive_form(&kernel[i])).collect())
            })
            .collect();
        let dims = per_degree.iter().map(|(k, v)| (*k, v.len())).collect();
        Ok(CohomologyDims { dims, representatives: Some(per_degree.into_iter().collect()) })
    }

    /// Whether `v ∈ C^k` is a cocycle.
    pub fn is_cocycle(&self, k: i64, v: &[(usize, T)]) -> bool {
        self.diff(k).is_none_or(|d| d.apply(v).is_empty())
    }

    /// Whether the given cocycles in `C^k` are independent modulo coboundaries.
    pub fn independent_in_cohomology(&self, k: i64, vs: &[SparseVec<T>]) -> bool {
        let image: Vec<SparseVec<T>> = self.diff(k - 1).map(|d| d.columns().to_vec()).unwrap_or_default();
        independent_modulo(self.dim(k), &image, vs).len() == vs.len()
    }
}
