//! Exact dense linear algebra: echelon forms, rank, kernels, subspaces.

mod matrix;
mod subspace;

pub use matrix::Matrix;
pub use subspace::{normalize_projective, Subspace};

use crate::field::Field;

/// Dot product of two equal-length vectors.
pub fn dot<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> F::Elem {
    a.iter().zip(b).fold(f.zero(), |acc, (x, y)| f.mul_add(&acc, x, y))
}
