use crate::error::{Error, Result};
use crate::scalar::Real;

/// `⟨K+1| S₊ |K⟩` in the maximal-spin multiplet `S = Ω/2`, `M = K - Ω/2`.
#[inline]
pub fn spin_ladder_up<T: Real>(omega: usize, k: usize) -> T {
    debug_assert!(k < omega);
    T::from_usize_lossy((omega - k) * (k + 1)).sqrt()
}

/// General square matrix (row-major); used for the real orthogonal rotation.
#[derive(Debug, Clone, PartialEq)]
pub struct SquareMatrix<T> {
    n: usize,
    data: Vec<T>,
}

impl<T: Real> SquareMatrix<T> {
    pub fn identity(n: usize) -> Self {
        let mut data = vec![T::zero(); n * n];
        for i in 0..n {
            data[i * n + i] = T::one();
        }
        Self { n, data }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> T {
        self.data[i * self.n + j]
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.n).map(|i| self.get(i, j)).collect()
    }

    pub fn transpose(&self) -> Self {
        let n = self.n;
        let mut data = vec![T::zero(); n * n];
        for i in 0..n {
            for j in 0..n {
                data[j * n + i] = self.get(i, j);
            }
        }
        Self { n, data }
    }

    pub fn matmul(&self, other: &Self) -> Self {
        let n = self.n;
        let mut data = vec![T::zero(); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a == T::zero() {
                    continue;
                }
                let row = &other.data[k * n..(k + 1) * n];
                for (out, b) in data[i * n..(i + 1) * n].iter_mut().zip(row) {
                    *out += a * *b;
                }
            }
        }
        Self { n, data }
    }

    pub fn matvec(&self, x: &[T]) -> Vec<T> {
        (0..self.n)
            .map(|i| {
                self.data[i * self.n..(i + 1) * self.n]
                    .iter()
                    .zip(x)
                    .map(|(a, b)| *a * *b)
                    .sum()
            })
            .collect()
    }

    fn scale(&mut self, s: T) {
        for x in self.data.iter_mut() {
            *x *= s;
        }
    }

    fn add_assign(&mut self, other: &Self) {
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a += *b;
        }
    }

    fn norm_one(&self) -> T {
        (0..self.n)
            .map(|j| (0..self.n).map(|i| self.get(i, j).abs()).sum::<T>())
            .fold(T::zero(), T::max)
    }

    /// `max |Mᵀ M - I|`.
    pub fn orthogonality_defect(&self) -> T {
        let p = self.transpose().matmul(self);
        let mut worst = T::zero();
        for i in 0..self.n {
            for j in 0..self.n {
                let target = if i == j { T::one() } else { T::zero() };
                worst = worst.max((p.get(i, j) - target).abs());
            }
        }
        worst
    }
}

impl<T> SquareMatrix<T> {
    pub(crate) fn from_row_major(n: usize, data: Vec<T>) -> Self {
        assert_eq!(data.len(), n * n);
        Self { n, data }
    }
}

/// `exp(A)` for a real antisymmetric `A` by scaling and squaring of the Taylor
/// series. The result is orthogonal up to roundoff.
pub fn expm_antisymmetric<T: Real>(a: &SquareMatrix<T>) -> SquareMatrix<T> {
    let n = a.dim();
    let norm = a.norm_one();
    let mut squarings = 0u32;
    let mut scaled = norm;
    while scaled > T::lit(0.25) {
        scaled *= T::half();
        squarings += 1;
    }
    let mut b = a.clone();
    b.scale(T::one() / T::from_usize_lossy(1usize << squarings));

    let mut sum = SquareMatrix::identity(n);
    let mut term = SquareMatrix::identity(n);
    for k in 1..=30usize {
        term = term.matmul(&b);
        term.scale(T::one() / T::from_usize_lossy(k));
        sum.add_assign(&term);
        if term.norm_one() <= T::epsilon() * T::lit(1e-2) {
            break;
        }
    }
    for _ in 0..squarings {
        sum = sum.matmul(&sum);
    }
    sum
}

/// Collective rotation about the y axis in the `|K⟩` basis (`K = 0..=Ω`).
///
/// Returns `exp(θ (S₊ - S₋)/2)`, whose first column is the coherent state
/// `C_K(θ) = √C(Ω,K) cos^{Ω-K}(θ/2) sin^K(θ/2)` with all entries non-negative
/// for `θ ∈ [0, π]`.
pub fn collective_rotation<T: Real>(omega: usize, theta: T) -> Result<SquareMatrix<T>> {
    if omega < 1 {
        return Err(Error::InvalidInput("rotation needs omega >= 1".into()));
    }
    if !theta.is_finite() {
        return Err(Error::InvalidInput("rotation angle must be finite".into()));
    }
    let n = omega + 1;
    let mut data = vec![T::zero(); n * n];
    for k in 0..omega {
        let up = spin_ladder_up::<T>(omega, k) * theta * T::half();
        // (S₊)_{k+1,k} = up, (S₋)_{k,k+1} = up
        data[(k + 1) * n + k] = up;
        data[k * n + k + 1] = -up;
    }
    Ok(expm_antisymmetric(&SquareMatrix::from_row_major(n, data)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_angle_is_identity() {
        let r = collective_rotation(6, 0.0f64).unwrap();
        assert_eq!(r, SquareMatrix::identity(7));
    }

    #[test]
    fn spin_half_closed_form() {
        for &theta in &[0.1f64, 0.9, 2.0, -1.3, 3.0] {
            let r = collective_rotation(1, theta).unwrap();
            let (c, s) = ((theta / 2.0).cos(), (theta / 2.0).sin());
            assert!((r.get(0, 0) - c).abs() < 1e-14);
            assert!((r.get(0, 1) + s).abs() < 1e-14);
            assert!((r.get(1, 0) - s).abs() < 1e-14);
            assert!((r.get(1, 1) - c).abs() < 1e-14);
        }
    }

    #[test]
    fn group_law_and_orthogonality() {
        let (a, b) = (0.4f64, 1.1);
        let ra = collective_rotation(12, a).unwrap();
        let rb = collective_rotation(12, b).unwrap();
        let rab = collective_rotation(12, a + b).unwrap();
        let prod = ra.matmul(&rb);
        for i in 0..13 {
            for j in 0..13 {
                assert!((prod.get(i, j) - rab.get(i, j)).abs() < 1e-9);
            }
        }
        assert!(rab.orthogonality_defect() < 1e-10);
    }
}
