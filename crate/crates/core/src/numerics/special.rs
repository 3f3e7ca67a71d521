use crate::error::{Error, Result};
use crate::scalar::Real;

/// Natural logarithm of the binomial coefficient `C(n, k)`.
///
/// Summed as `Σ_{i=1}^{m} ln((n-m+i)/i)` with `m = min(k, n-k)`: every term is
/// positive, so the relative error stays at a few ulps times `m`, and the
/// result is exactly symmetric in `k ↔ n-k`.
pub fn log_binomial<T: Real>(n: u64, k: u64) -> Result<T> {
    if k > n {
        return Err(Error::Domain(format!("binomial C({n}, {k}) needs k <= n")));
    }
    let m = k.min(n - k);
    let base = n - m;
    let mut acc = 0.0f64;
    for i in 1..=m {
        acc += ((base + i) as f64 / i as f64).ln();
    }
    Ok(T::lit(acc))
}

/// `ln C(n, k)` for `k = 0..=n`.
pub fn log_binomial_row<T: Real>(n: usize) -> Vec<T> {
    (0..=n as u64)
        .map(|k| log_binomial(n as u64, k).expect("k <= n by construction"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases() {
        assert_eq!(log_binomial::<f64>(50, 0).unwrap(), 0.0);
        assert_eq!(log_binomial::<f64>(50, 50).unwrap(), 0.0);
        assert!((log_binomial::<f64>(2, 1).unwrap() - 2f64.ln()).abs() < 1e-15);
        assert!(matches!(log_binomial::<f64>(3, 4), Err(Error::Domain(_))));
    }

    #[test]
    fn exact_symmetry() {
        for n in 0..200u64 {
            for k in 0..=n {
                let a: f64 = log_binomial(n, k).unwrap();
                let b: f64 = log_binomial(n, n - k).unwrap();
                assert_eq!(a, b);
            }
        }
    }
}
