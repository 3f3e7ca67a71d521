use crate::scalar::Real;

/// A real number stored as `sign * exp(ln_abs)`; zero has `sign == 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SignedLog<T> {
    pub sign: i8,
    pub ln_abs: T,
}

impl<T: Real> SignedLog<T> {
    pub fn new(x: T) -> Self {
        if x == T::zero() {
            Self {
                sign: 0,
                ln_abs: T::neg_infinity(),
            }
        } else {
            Self {
                sign: if x > T::zero() { 1 } else { -1 },
                ln_abs: x.abs().ln(),
            }
        }
    }

    /// `x^n` without forming intermediate over- or underflows.
    pub fn powi(self, n: u32) -> Self {
        if n == 0 {
            return Self {
                sign: 1,
                ln_abs: T::zero(),
            };
        }
        if self.sign == 0 {
            return self;
        }
        let sign = if self.sign < 0 && n % 2 == 1 { -1 } else { 1 };
        Self {
            sign,
            ln_abs: self.ln_abs * T::from_usize_lossy(n as usize),
        }
    }

    pub fn value(self) -> T {
        match self.sign {
            0 => T::zero(),
            s => T::from(s).unwrap() * self.ln_abs.exp(),
        }
    }
}

/// `1 + sign * base^n`, accurate also when the result is close to zero
/// (e.g. `1 - cos^n θ` for small θ).
pub fn one_plus_signed_pow<T: Real>(sign: i8, base: T, n: u32) -> T {
    let p = SignedLog::new(base).powi(n);
    let s = sign * p.sign;
    match s {
        0 => T::one(),
        1 => T::one() + p.ln_abs.exp(),
        _ => -p.ln_abs.exp_m1(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matches_direct_evaluation() {
        for &c in &[0.3f64, -0.7, 0.999, 0.0, 1.0] {
            for n in 0..12u32 {
                let direct = c.powi(n as i32);
                assert!((SignedLog::new(c).powi(n).value() - direct).abs() < 1e-14);
                assert!((one_plus_signed_pow(1, c, n) - (1.0 + direct)).abs() < 1e-14);
                assert!((one_plus_signed_pow(-1, c, n) - (1.0 - direct)).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn small_difference_is_accurate() {
        // base = 1 - x exactly, 1 - base^50 = 50x - 1225x² + O(x³)
        let x = 2f64.powi(-30);
        let v = one_plus_signed_pow(-1, 1.0 - x, 50);
        let series = 50.0 * x - 1225.0 * x * x;
        assert!((v / series - 1.0).abs() < 1e-12);
    }
}
