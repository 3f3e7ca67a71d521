use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Minimum<T> {
    pub x: T,
    pub value: T,
}

/// Golden-section search for a minimum of `f` on `[a, b]`, stopping once the
/// bracket is narrower than `tol`.
pub fn golden_section<T: Real>(mut f: impl FnMut(T) -> T, a: T, b: T, tol: T) -> Minimum<T> {
    let inv_phi = (T::lit(5.0).sqrt() - T::one()) * T::half();
    let (mut lo, mut hi) = if a <= b { (a, b) } else { (b, a) };
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    // 200 iterations shrink any f64 bracket far below machine precision
    for _ in 0..200 {
        if hi - lo <= tol {
            break;
        }
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
        }
    }
    if f1 <= f2 {
        Minimum { x: x1, value: f1 }
    } else {
        Minimum { x: x2, value: f2 }
    }
}

/// Scans `[lo, hi]` on `n_scan` uniform points plus any `seeds` inside the
/// interval, then refines the best point by golden section inside its
/// neighbouring grid cells. Endpoints are returned as-is when they win.
pub fn minimize_scanned<T: Real>(
    mut f: impl FnMut(T) -> T,
    lo: T,
    hi: T,
    n_scan: usize,
    seeds: &[T],
    tol: T,
) -> Minimum<T> {
    let n_scan = n_scan.max(3);
    let step = (hi - lo) / T::from_usize_lossy(n_scan - 1);
    let mut points: Vec<T> = (0..n_scan)
        .map(|i| lo + step * T::from_usize_lossy(i))
        .collect();
    points.extend(
        seeds
            .iter()
            .copied()
            .filter(|s| s.is_finite() && *s >= lo && *s <= hi),
    );
    points.sort_by(|a, b| a.partial_cmp(b).unwrap());
    points.dedup();

    let values: Vec<T> = points.iter().map(|&x| f(x)).collect();
    let mut best = 0;
    for (i, v) in values.iter().enumerate() {
        if *v < values[best] {
            best = i;
        }
    }
    let left = if best == 0 {
        points[0]
    } else {
        points[best - 1]
    };
    let right = if best + 1 == points.len() {
        points[best]
    } else {
        points[best + 1]
    };
    let refined = golden_section(&mut f, left, right, tol);
    if refined.value < values[best] {
        refined
    } else {
        Minimum {
            x: points[best],
            value: values[best],
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parabola() {
        let m = golden_section(|x: f64| (x - 0.3).powi(2), 0.0, 1.0, 1e-10);
        assert!((m.x - 0.3).abs() < 1e-9);
    }

    #[test]
    fn scanned_finds_global_well() {
        let f = |x: f64| (x - 2.5).powi(2) * (x + 1.0).powi(2) + 0.1 * x;
        let m = minimize_scanned(f, -3.0, 4.0, 50, &[], 1e-10);
        assert!(m.x < 0.0, "expected the left well, got {}", m.x);
    }

    #[test]
    fn boundary_minimum() {
        let m = minimize_scanned(|x: f64| x, 0.0, 1.0, 10, &[], 1e-10);
        assert_eq!(m.x, 0.0);
    }
}
