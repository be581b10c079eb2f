//! Exact elimination.
//!
//! Rank uses fraction-free elimination on primitive integer vectors: every
//! vector is scaled to coprime integer entries, combinations are
//! `b·v − a·r` (with `a`, `b` the leading entries divided by their gcd), and
//! the content is removed after every step. Among two vectors competing for
//! the same leading column the one with the smaller leading entry becomes the
//! pivot. Arithmetic first runs in `i64` with overflow checks and restarts
//! over `BigInt` if anything overflows.

use num_bigint::BigInt;

use super::matrix::{SparseMatrix, SparseVec};
use crate::scalar::{EliminationInt, ExactScalar, Scalar};

/// Marker for an arithmetic overflow in a checked elimination.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Overflow;

/// Row-echelon basis of a subspace of `Q^dim`, stored as primitive integer
/// vectors with distinct leading indices.
#[derive(Clone, Debug)]
pub struct IntEchelon<I: EliminationInt> {
    pivot_of: Vec<Option<usize>>,
    rows: Vec<SparseVec<I>>,
}

impl<I: EliminationInt> IntEchelon<I> {
    pub fn new(dim: usize) -> Self {
        Self { pivot_of: vec![None; dim], rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Add a primitive integer vector. Returns whether it was independent of
    /// the vectors already present.
    pub fn insert(&mut self, mut v: SparseVec<I>) -> Result<bool, Overflow> {
        loop {
            let Some(&(lead, _)) = v.first() else {
                return Ok(false);
            };
            match self.pivot_of[lead] {
                None => {
                    self.pivot_of[lead] = Some(self.rows.len());
                    self.rows.push(v);
                    return Ok(true);
                }
                Some(p) => {
                    if v[0].1.magnitude() < self.rows[p][0].1.magnitude() {
                        std::mem::swap(&mut v, &mut self.rows[p]);
                    }
                    v = combine(&v, &self.rows[p]).ok_or(Overflow)?;
                }
            }
        }
    }
}

/// Eliminate the common leading entry of `v` using `r`, then make the result
/// primitive.
fn combine<I: EliminationInt>(v: &[(usize, I)], r: &[(usize, I)]) -> Option<SparseVec<I>> {
    let a = &v[0].1;
    let b = &r[0].1;
    let g = a.gcd(b);
    let ca = a.clone() / g.clone();
    let cb = b.clone() / g;
    let mut out: SparseVec<I> = Vec::with_capacity(v.len() + r.len());
    let (mut i, mut j) = (1, 1);
    while i < v.len() || j < r.len() {
        let vi = v.get(i).map(|e| e.0);
        let rj = r.get(j).map(|e| e.0);
        let (idx, val) = match (vi, rj) {
            (Some(x), Some(y)) if x == y => {
                let t = cb.checked_mul(&v[i].1)?.checked_sub(&ca.checked_mul(&r[j].1)?)?;
                i += 1;
                j += 1;
                (x, t)
            }
            (Some(x), Some(y)) if x < y => {
                i += 1;
                (x, cb.checked_mul(&v[i - 1].1)?)
            }
            (Some(x), None) => {
                i += 1;
                (x, cb.checked_mul(&v[i - 1].1)?)
            }
            (_, Some(y)) => {
                j += 1;
                (y, I::zero().checked_sub(&ca.checked_mul(&r[j - 1].1)?)?)
            }
            (None, None) => unreachable!(),
        };
        if !val.is_zero() {
            out.push((idx, val));
        }
    }
    make_primitive(&mut out);
    Some(out)
}

fn make_primitive<I: EliminationInt>(v: &mut SparseVec<I>) {
    let mut g = I::zero();
    for (_, x) in v.iter() {
        g = g.gcd(x);
        if g.is_one() {
            break;
        }
    }
    if !g.is_zero() && !g.is_one() {
        for (_, x) in v.iter_mut() {
            *x = x.clone() / g.clone();
        }
    }
    if let Some((_, lead)) = v.first() {
        if lead.is_negative() {
            for (_, x) in v.iter_mut() {
                *x = -x.clone();
            }
        }
    }
}

fn echelon_rank<I: EliminationInt>(dim: usize, vectors: Vec<SparseVec<I>>) -> Result<usize, Overflow> {
    let mut ech = IntEchelon::new(dim);
    for v in vectors {
        ech.insert(v)?;
    }
    Ok(ech.rank())
}

/// Primitive integer forms of nonzero vectors, sparsest first.
fn primitive_vectors<T: ExactScalar>(vectors: &[SparseVec<T>]) -> Vec<SparseVec<T::Int>> {
    let mut out: Vec<SparseVec<T::Int>> =
        vectors.iter().filter(|v| !v.is_empty()).map(|v| T::primitive_row(v)).collect();
    out.sort_by_key(Vec::len);
    out
}

fn widen<I: EliminationInt>(vectors: Vec<SparseVec<I>>) -> Vec<SparseVec<BigInt>> {
    vectors.into_iter().map(|v| v.into_iter().map(|(i, x)| (i, x.into())).collect()).collect()
}

/// Exact rank over the rationals.
pub fn rank<T: ExactScalar>(m: &SparseMatrix<T>) -> usize {
    if m.is_zero() {
        return 0;
    }
    let (dim, vectors) =
        if m.rows() <= m.cols() { (m.cols(), m.row_vectors()) } else { (m.rows(), m.columns().to_vec()) };
    rank_of_vectors::<T>(dim, &vectors)
}

/// Dimension of the span of sparse vectors in `Q^dim`.
pub fn rank_of_vectors<T: ExactScalar>(dim: usize, vectors: &[SparseVec<T>]) -> usize {
    let prim = primitive_vectors::<T>(vectors);
    if let Some(small) = prim.iter().map(|v| T::narrow(v)).collect::<Option<Vec<_>>>() {
        if let Ok(r) = echelon_rank::<i64>(dim, small) {
            return r;
        }
    }
    echelon_rank::<BigInt>(dim, widen(prim)).expect("BigInt arithmetic cannot overflow")
}

/// Indices of `candidates` that are linearly independent modulo
/// `span(base) + span(earlier accepted candidates)`, greedily in order.
pub fn independent_modulo<T: ExactScalar>(
    dim: usize,
    base: &[SparseVec<T>],
    candidates: &[SparseVec<T>],
) -> Vec<usize> {
    let mut ech: IntEchelon<BigInt> = IntEchelon::new(dim);
    for v in widen(primitive_vectors::<T>(base)) {
        ech.insert(v).expect("BigInt arithmetic cannot overflow");
    }
    let mut keep = Vec::new();
    for (k, c) in candidates.iter().enumerate() {
        if c.is_empty() {
            continue;
        }
        let v = widen(vec![T::primitive_row(c)]).pop().unwrap();
        if ech.insert(v).expect("BigInt arithmetic cannot overflow") {
            keep.push(k);
        }
    }
    keep
}

/// Reduced row-echelon form over the field `T`: pivot rows with leading
/// entry 1 and zeros in every other pivot column.
pub struct Rref<T: Scalar> {
    pub pivots: Vec<(usize, SparseVec<T>)>,
    pub cols: usize,
}

pub fn rref<T: Scalar>(m: &SparseMatrix<T>) -> Rref<T> {
    let cols = m.cols();
    let mut pivot_row: Vec<Option<usize>> = vec![None; cols];
    let mut pivots: Vec<(usize, SparseVec<T>)> = Vec::new();
    for row in m.row_vectors() {
        let mut v = row;
        let hits: Vec<(usize, T)> =
            v.iter().filter(|(c, _)| pivot_row[*c].is_some()).map(|(c, x)| (*c, x.clone())).collect();
        for (c, x) in hits {
            let p = &pivots[pivot_row[c].unwrap()].1;
            v = axpy(&v, p, &-x);
        }
        let Some((lead, lv)) = v.first().cloned() else { continue };
        let inv = T::one() / lv;
        let v: SparseVec<T> = v.into_iter().map(|(c, x)| (c, x * inv.clone())).collect();
        for (_, p) in pivots.iter_mut() {
            let x = p.iter().find(|(c, _)| *c == lead).map(|(_, x)| x.clone());
            if let Some(x) = x {
                *p = axpy(p, &v, &-x);
            }
        }
        pivot_row[lead] = Some(pivots.len());
        pivots.push((lead, v));
    }
    Rref { pivots, cols }
}

/// `a + s·b` for sorted sparse vectors.
fn axpy<T: Scalar>(a: &[(usize, T)], b: &[(usize, T)], s: &T) -> SparseVec<T> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j >= b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i >= a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, b[j].1.clone() * s.clone()));
            j += 1;
        } else {
            let v = a[i].1.clone() + b[j].1.clone() * s.clone();
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Basis of the kernel `{x : m x = 0}`, one vector per free column.
pub fn nullspace<T: Scalar>(m: &SparseMatrix<T>) -> Vec<SparseVec<T>> {
    let r = rref(m);
    let mut is_pivot = vec![false; r.cols];
    for (c, _) in &r.pivots {
        is_pivot[*c] = true;
    }
    (0..r.cols)
        .filter(|c| !is_pivot[*c])
        .map(|free| {
            let mut v: SparseVec<T> = vec![(free, T::one())];
            for (pc, row) in &r.pivots {
                if let Some((_, x)) = row.iter().find(|(c, _)| *c == free) {
                    v.push((*pc, -x.clone()));
                }
            }
            v.sort_by_key(|(i, _)| *i);
            v
        })
        .collect()
}

/// Scale a nonzero vector to primitive integers with positive leading entry.
pub fn primitive_form<T: ExactScalar>(v: &[(usize, T)]) -> SparseVec<T> {
    let mut ints = widen(vec![T::primitive_row(v)]).pop().unwrap();
    make_primitive(&mut ints);
    ints.into_iter().map(|(i, x)| (i, T::from_big(&x))).collect()
}

/// Rank of a matrix computed with plain field arithmetic; an independent
/// route used to cross-check [`rank`].
pub fn rank_by_rref<T: Scalar>(m: &SparseMatrix<T>) -> usize {
    rref(m).pivots.len()
}
