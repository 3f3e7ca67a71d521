use super::EigDecomposition;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Eigenvalues of a PSD input down to this (absolute) value are treated as
/// roundoff and clamped to zero.
pub const CLAMP_TOLERANCE: f64 = 1e-10;
/// Below this the input is rejected as not positive semi-definite.
pub const NOT_PSD_TOLERANCE: f64 = 1e-8;

const SYMMETRY_TOLERANCE: f64 = 1e-9;
const JACOBI_THRESHOLD: f64 = 1e-14;
const JACOBI_MAX_SWEEPS: usize = 100;

/// Dense real symmetric matrix in row-major order.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseSymMatrix<T> {
    n: usize,
    data: Vec<T>,
}

impl<T: Real> DenseSymMatrix<T> {
    /// Builds from row-major entries. Symmetry is checked by the consumers
    /// that require it, so nearly-symmetric inputs can still be inspected.
    pub fn from_row_major(n: usize, data: Vec<T>) -> Result<Self> {
        if data.len() != n * n {
            return Err(Error::InvalidInput(format!(
                "expected {} entries for a {n}x{n} matrix, got {}",
                n * n,
                data.len()
            )));
        }
        if data.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidInput("non-finite matrix entry".into()));
        }
        Ok(Self { n, data })
    }

    pub(crate) fn from_row_major_unchecked(n: usize, data: Vec<T>) -> Self {
        Self { n, data }
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        Self { n, data }
    }

    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![T::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, |i, j| if i == j { T::one() } else { T::zero() })
    }

    pub fn diagonal(values: &[T]) -> Self {
        Self::from_fn(
            values.len(),
            |i, j| if i == j { values[i] } else { T::zero() },
        )
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> T {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: T) {
        self.data[i * self.n + j] = value;
    }

    pub fn as_row_major(&self) -> &[T] {
        &self.data
    }

    pub fn frobenius_norm(&self) -> T {
        self.data.iter().map(|x| *x * *x).sum::<T>().sqrt()
    }

    pub fn max_abs(&self) -> T {
        self.data.iter().fold(T::zero(), |m, x| m.max(x.abs()))
    }

    pub fn trace(&self) -> T {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    /// Largest `|a_ij - a_ji|`.
    pub fn asymmetry(&self) -> T {
        let mut worst = T::zero();
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                worst = worst.max((self.get(i, j) - self.get(j, i)).abs());
            }
        }
        worst
    }

    /// Plain matrix product; the result is symmetric only when the factors commute
    /// or form a congruence, which is what callers use it for.
    pub fn matmul(&self, other: &Self) -> Self {
        let n = self.n;
        let mut out = vec![T::zero(); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a == T::zero() {
                    continue;
                }
                for j in 0..n {
                    out[i * n + j] += a * other.get(k, j);
                }
            }
        }
        Self { n, data: out }
    }

    pub fn matvec(&self, x: &[T]) -> Vec<T> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j) * x[j]).sum())
            .collect()
    }

    pub fn sub(&self, other: &Self) -> Self {
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| *a - *b)
            .collect();
        Self { n: self.n, data }
    }

    /// Replaces the matrix by `(A + Aᵀ)/2`.
    pub fn symmetrized(&self) -> Self {
        Self::from_fn(self.n, |i, j| (self.get(i, j) + self.get(j, i)) * T::half())
    }
}

/// Eigendecomposition of a dense symmetric matrix by cyclic Jacobi rotations.
///
/// Rotations are only applied to non-zero off-diagonal entries, so exactly
/// block-diagonal inputs keep their block structure and exact zeros.
pub fn eig_sym_dense<T: Real>(m: &DenseSymMatrix<T>) -> Result<EigDecomposition<T>> {
    let n = m.dim();
    let scale = m.max_abs();
    if m.asymmetry() > T::lit(SYMMETRY_TOLERANCE) * scale.max(T::min_positive_value()) {
        return Err(Error::InvalidInput(format!(
            "matrix is not symmetric (asymmetry {:e})",
            m.asymmetry().to_f64_lossy()
        )));
    }
    let mut a = m.symmetrized();
    let mut v = DenseSymMatrix::<T>::identity(n);
    let total = a.frobenius_norm();
    let threshold = T::lit(JACOBI_THRESHOLD) * total;

    let mut converged = n < 2;
    for _ in 0..JACOBI_MAX_SWEEPS {
        let off: T = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a.get(i, j) * a.get(i, j))
            .sum::<T>()
            .sqrt();
        if off <= threshold {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a.get(p, q);
                if apq == T::zero() {
                    continue;
                }
                let app = a.get(p, p);
                let aqq = a.get(q, q);
                let tau = (aqq - app) / (T::two() * apq);
                let t = if tau == T::zero() {
                    T::one()
                } else {
                    tau.signum() / (tau.abs() + (T::one() + tau * tau).sqrt())
                };
                let c = T::one() / (T::one() + t * t).sqrt();
                let s = t * c;
                for k in 0..n {
                    if k == p || k == q {
                        continue;
                    }
                    let akp = a.get(k, p);
                    let akq = a.get(k, q);
                    let new_kp = c * akp - s * akq;
                    let new_kq = s * akp + c * akq;
                    a.set(k, p, new_kp);
                    a.set(p, k, new_kp);
                    a.set(k, q, new_kq);
                    a.set(q, k, new_kq);
                }
                a.set(p, p, app - t * apq);
                a.set(q, q, aqq + t * apq);
                a.set(p, q, T::zero());
                a.set(q, p, T::zero());
                for k in 0..n {
                    let vkp = v.get(k, p);
                    let vkq = v.get(k, q);
                    v.set(k, p, c * vkp - s * vkq);
                    v.set(k, q, s * vkp + c * vkq);
                }
            }
        }
    }
    if !converged {
        return Err(Error::NonConvergence("Jacobi sweeps exhausted".into()));
    }

    let mut out = EigDecomposition {
        values: (0..n).map(|i| a.get(i, i)).collect(),
        vectors: (0..n)
            .map(|col| (0..n).map(|row| v.get(row, col)).collect())
            .collect(),
    };
    out.sort_ascending();
    Ok(out)
}

/// Principal square root of a symmetric positive semi-definite matrix.
///
/// Negative eigenvalues above `-NOT_PSD_TOLERANCE` are clamped to zero, as
/// are positive ones at the rounding level of the largest eigenvalue; the
/// latter keeps rank-deficient inputs from acquiring `√ε`-sized noise.
pub fn sqrtm_psd<T: Real>(m: &DenseSymMatrix<T>) -> Result<DenseSymMatrix<T>> {
    let mut eig = eig_sym_dense(m)?;
    let min = eig.values.first().copied().unwrap_or_else(T::zero);
    if min < -T::lit(NOT_PSD_TOLERANCE) {
        return Err(Error::NotPsd(min.to_f64_lossy()));
    }
    let scale = eig.values.iter().fold(T::zero(), |a, v| a.max(v.abs()));
    let floor = T::lit(16.0) * T::from_usize_lossy(m.dim().max(1)) * T::epsilon() * scale;
    for value in eig.values.iter_mut() {
        *value = if *value <= floor {
            T::zero()
        } else {
            value.sqrt()
        };
    }
    Ok(eig.reconstruct())
}
