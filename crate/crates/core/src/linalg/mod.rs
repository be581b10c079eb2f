//! Sparse exact linear algebra: matrices, rank, kernels and cochain complexes.

mod complex;
mod elim;
mod matrix;

pub use complex::{CochainComplex, CohomologyDims};
pub use elim::{independent_modulo, nullspace, primitive_form, rank, rank_by_rref, rank_of_vectors, rref, Rref};
pub use matrix::{normalize, SparseMatrix, SparseVec};
