//! Linear-algebra and special-function kernel.
//!
//! Everything here is a pure function of its inputs. Matrices are small
//! (a few hundred rows at most), so the algorithms favour accuracy and
//! simplicity over asymptotic speed.

mod dense;
mod minimize;
mod powers;
mod rotation;
mod special;
mod tridiag;

pub use dense::{eig_sym_dense, sqrtm_psd, DenseSymMatrix, CLAMP_TOLERANCE, NOT_PSD_TOLERANCE};
pub use minimize::{golden_section, minimize_scanned, Minimum};
pub use powers::{one_plus_signed_pow, SignedLog};
pub use rotation::{collective_rotation, expm_antisymmetric, spin_ladder_up, SquareMatrix};
pub use special::{log_binomial, log_binomial_row};
pub use tridiag::{eig_sym_tridiagonal, SymTriMatrix};

use crate::scalar::Real;

/// Eigenvalues in ascending order with matching orthonormal eigenvectors.
#[derive(Debug, Clone, PartialEq)]
pub struct EigDecomposition<T> {
    pub values: Vec<T>,
    /// `vectors[i]` is the eigenvector of `values[i]`.
    pub vectors: Vec<Vec<T>>,
}

impl<T: Real> EigDecomposition<T> {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Rebuilds `V diag(values) Vᵀ`.
    pub fn reconstruct(&self) -> DenseSymMatrix<T> {
        let n = self.len();
        let mut out = vec![T::zero(); n * n];
        for (lambda, v) in self.values.iter().zip(&self.vectors) {
            for i in 0..n {
                let vi = v[i] * *lambda;
                for j in 0..n {
                    out[i * n + j] += vi * v[j];
                }
            }
        }
        DenseSymMatrix::from_row_major_unchecked(n, out)
    }

    /// Sorts values ascending, carrying the vectors along.
    pub(crate) fn sort_ascending(&mut self) {
        let mut order: Vec<usize> = (0..self.values.len()).collect();
        order.sort_by(|&a, &b| {
            self.values[a]
                .partial_cmp(&self.values[b])
                .unwrap_or(std::cmp::Ordering::Equal)
        });
        self.values = order.iter().map(|&i| self.values[i]).collect();
        self.vectors = order.iter().map(|&i| self.vectors[i].clone()).collect();
    }
}
