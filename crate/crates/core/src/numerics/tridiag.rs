use super::EigDecomposition;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Real symmetric tridiagonal matrix stored as its diagonal and first
/// off-diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct SymTriMatrix<T> {
    diag: Vec<T>,
    offdiag: Vec<T>,
}

impl<T: Real> SymTriMatrix<T> {
    pub fn new(diag: Vec<T>, offdiag: Vec<T>) -> Result<Self> {
        if diag.is_empty() {
            return Err(Error::InvalidInput(
                "tridiagonal matrix must be at least 1x1".into(),
            ));
        }
        if offdiag.len() + 1 != diag.len() {
            return Err(Error::InvalidInput(format!(
                "off-diagonal length {} does not match dimension {}",
                offdiag.len(),
                diag.len()
            )));
        }
        if diag.iter().chain(&offdiag).any(|x| !x.is_finite()) {
            return Err(Error::InvalidInput("non-finite tridiagonal entry".into()));
        }
        Ok(Self { diag, offdiag })
    }

    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    pub fn diag(&self) -> &[T] {
        &self.diag
    }

    pub fn offdiag(&self) -> &[T] {
        &self.offdiag
    }

    pub fn matvec(&self, x: &[T]) -> Vec<T> {
        let n = self.dim();
        (0..n)
            .map(|i| {
                let mut acc = self.diag[i] * x[i];
                if i > 0 {
                    acc += self.offdiag[i - 1] * x[i - 1];
                }
                if i + 1 < n {
                    acc += self.offdiag[i] * x[i + 1];
                }
                acc
            })
            .collect()
    }
}

const MAX_SWEEPS_PER_VALUE: usize = 64;

/// Full eigendecomposition by the implicit-shift QL algorithm (EISPACK `tql2`).
pub fn eig_sym_tridiagonal<T: Real>(m: &SymTriMatrix<T>) -> Result<EigDecomposition<T>> {
    let n = m.dim();
    let mut d = m.diag.clone();
    // e[i] couples i and i+1; e[n-1] is a zero sentinel.
    let mut e = m.offdiag.clone();
    e.push(T::zero());
    // z is stored column-major: z[col * n + row].
    let mut z = vec![T::zero(); n * n];
    for i in 0..n {
        z[i * n + i] = T::one();
    }

    let eps = T::epsilon();
    let mut f = T::zero();
    let mut tst1 = T::zero();
    for l in 0..n {
        tst1 = tst1.max(d[l].abs() + e[l].abs());
        let mut m_idx = l;
        while m_idx < n - 1 {
            if e[m_idx].abs() <= eps * tst1 {
                break;
            }
            m_idx += 1;
        }
        if m_idx > l {
            let mut iter = 0;
            loop {
                iter += 1;
                if iter > MAX_SWEEPS_PER_VALUE {
                    return Err(Error::NonConvergence(format!(
                        "tridiagonal QL stalled at index {l}"
                    )));
                }
                let mut g = d[l];
                let mut p = (d[l + 1] - g) / (T::two() * e[l]);
                let mut r = p.hypot(T::one());
                if p < T::zero() {
                    r = -r;
                }
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                let dl1 = d[l + 1];
                let mut h = g - d[l];
                for di in d.iter_mut().skip(l + 2) {
                    *di -= h;
                }
                f += h;

                p = d[m_idx];
                let mut c = T::one();
                let mut c2 = c;
                let mut c3 = c;
                let el1 = e[l + 1];
                let mut s = T::zero();
                let mut s2 = T::zero();
                for i in (l..m_idx).rev() {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    g = c * e[i];
                    h = c * p;
                    r = p.hypot(e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * g;
                    d[i + 1] = h + s * (c * g + s * d[i]);
                    for k in 0..n {
                        let zi1 = z[(i + 1) * n + k];
                        let zi = z[i * n + k];
                        z[(i + 1) * n + k] = s * zi + c * zi1;
                        z[i * n + k] = c * zi - s * zi1;
                    }
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;
                if e[l].abs() <= eps * tst1 {
                    break;
                }
            }
        }
        d[l] += f;
        e[l] = T::zero();
    }

    let vectors = (0..n)
        .map(|col| z[col * n..(col + 1) * n].to_vec())
        .collect();
    let mut out = EigDecomposition { values: d, vectors };
    out.sort_ascending();
    Ok(out)
}
