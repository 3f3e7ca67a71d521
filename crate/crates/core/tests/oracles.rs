//! Cross-checks of production routines against independent slow paths.

use lipkin_core::meanfield::{mf_coefficients, pmf_measures, pmf_state};
use lipkin_core::measures::{
    concurrence_closed, concurrence_oracle, measures_from_coeffs, negativity_updown,
    reduced_pair_state, PairReducedState,
};
use lipkin_core::model::{ground_state, CollectiveHamiltonian, ModelParams, Parity};
use lipkin_core::numerics::{
    collective_rotation, eig_sym_dense, log_binomial, spin_ladder_up, DenseSymMatrix,
};
use lipkin_core::rpa::rpa_state;
use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

fn binomial_exact(n: u64, k: u64) -> BigUint {
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

#[test]
fn log_binomial_matches_big_integers() {
    let c = binomial_exact(50, 25);
    assert_eq!(c.to_string(), "126410606437752");
    let ln: f64 = log_binomial(50, 25).unwrap();
    assert!((ln - 32.470_556_505_812).abs() < 1e-11);
    assert!((ln / std::f64::consts::LN_2 - 46.845).abs() < 1e-3);
    for &(n, k) in &[
        (50u64, 25u64),
        (200, 17),
        (500, 250),
        (1000, 500),
        (1000, 3),
    ] {
        let exact = binomial_exact(n, k).to_f64().unwrap().ln();
        let ours: f64 = log_binomial(n, k).unwrap();
        assert!((ours - exact).abs() <= 1e-12 * exact.max(1.0), "C({n},{k})");
    }
}

/// `S₊` in the `|K⟩` basis as a dense row-major matrix.
fn raising(omega: usize) -> Vec<Vec<f64>> {
    let n = omega + 1;
    let mut m = vec![vec![0.0; n]; n];
    for k in 0..omega {
        m[k + 1][k] = spin_ladder_up(omega, k);
    }
    m
}

fn matmul(a: &[Vec<f64>], b: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let n = a.len();
    let mut out = vec![vec![0.0; n]; n];
    for i in 0..n {
        for k in 0..n {
            for j in 0..n {
                out[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    out
}

/// `exp(γ S₊²) e₀` by the full matrix Taylor series (nilpotent, so exact).
fn pair_state_dense(omega: usize, gamma: f64) -> Vec<f64> {
    let s = raising(omega);
    let a: Vec<Vec<f64>> = matmul(&s, &s)
        .into_iter()
        .map(|row| row.into_iter().map(|x| gamma * x).collect())
        .collect();
    let n = omega + 1;
    let mut term: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| (i == j) as u8 as f64).collect())
        .collect();
    let mut sum = term.clone();
    for m in 1..=n {
        term = matmul(&term, &a);
        let scale = 1.0 / (1..=m).map(|x| x as f64).product::<f64>();
        for i in 0..n {
            for j in 0..n {
                sum[i][j] += term[i][j] * scale;
            }
        }
    }
    let mut v: Vec<f64> = (0..n).map(|i| sum[i][0]).collect();
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    v.iter_mut().for_each(|x| *x /= norm);
    v
}

#[test]
fn pair_state_matches_dense_exponential() {
    for omega in [2usize, 4, 7, 12] {
        for &gamma in &[0.0, 0.01, -0.03, 0.05] {
            let p = ModelParams::new(omega, 1.0, 0.5, 0.0).unwrap();
            let ours = rpa_state(&p, gamma, None).unwrap();
            let dense = pair_state_dense(omega, gamma);
            for (a, b) in ours.iter().zip(&dense) {
                assert!((a - b).abs() < 1e-12, "omega {omega} gamma {gamma}");
            }
        }
    }
}

#[test]
fn broken_pair_state_is_rotated_dense_exponential() {
    let omega = 10;
    let p = ModelParams::new(omega, 1.0, 2.0, 0.3).unwrap();
    let theta = 0.5f64.acos();
    let rotated = collective_rotation(omega, theta)
        .unwrap()
        .matvec(&pair_state_dense(omega, 0.02));
    let ours = rpa_state(&p, 0.02, None).unwrap();
    for (a, b) in ours.iter().zip(&rotated) {
        assert!((a - b).abs() < 1e-12);
    }
    for parity in [Parity::Even, Parity::Odd] {
        let projected = rpa_state(&p, 0.02, Some(parity)).unwrap();
        let mut expect: Vec<f64> = rotated
            .iter()
            .enumerate()
            .map(|(k, x)| if parity.contains(k) { *x } else { 0.0 })
            .collect();
        let norm = expect.iter().map(|x| x * x).sum::<f64>().sqrt();
        expect.iter_mut().for_each(|x| *x /= norm);
        for (a, b) in projected.iter().zip(&expect) {
            assert!((a - b).abs() < 1e-12);
        }
    }
}

#[test]
fn coherent_state_is_first_rotation_column() {
    for omega in 1..=20 {
        for &theta in &[0.0f64, 0.4, 1.3, 2.9] {
            let col = collective_rotation(omega, theta).unwrap().column(0);
            for (a, b) in mf_coefficients(theta, omega).iter().zip(&col) {
                assert!((a - b).abs() < 1e-10);
            }
        }
    }
}

/// Up-down negativity from the partial transpose of the 16-dimensional
/// four-mode density matrix. Modes are ordered `(p-, q-, p+, q+)`, the lower
/// pair forming one side, and basis states are `|n_{p-} n_{q-} n_{p+} n_{q+}⟩`
/// with creation operators applied in that order.
fn negativity_partial_transpose(r: &PairReducedState<f64>) -> f64 {
    // (index, sign) of p+q+, p+q-, p-q+, p-q-
    let map = [
        (0b0011usize, 1.0),
        (0b0110, -1.0),
        (0b1001, 1.0),
        (0b1100, 1.0),
    ];
    let x = r.x_matrix();
    let mut rho = [[0.0f64; 16]; 16];
    for (i, &(bi, si)) in map.iter().enumerate() {
        for (j, &(bj, sj)) in map.iter().enumerate() {
            rho[bi][bj] = si * sj * x.get(i, j);
        }
    }
    // Lower-level occupations are the two high bits.
    let split = |s: usize| (s >> 2, s & 0b11);
    let join = |a: usize, b: usize| (a << 2) | b;
    let pt = DenseSymMatrix::from_fn(16, |i, j| {
        let ((ai, bi), (aj, bj)) = (split(i), split(j));
        rho[join(aj, bi)][join(ai, bj)]
    });
    let eig = eig_sym_dense(&pt).unwrap();
    -eig.values.iter().filter(|v| **v < 0.0).sum::<f64>()
}

fn property_grid() -> impl Iterator<Item = (usize, f64, f64)> {
    let omegas: Vec<usize> = (3..=12).chain([50]).collect();
    omegas.into_iter().flat_map(|o| {
        [-1.0, -0.5, 0.0, 0.5, 1.0]
            .into_iter()
            .flat_map(move |chi| (0..=10).map(move |i| (o, chi, 0.5 * i as f64)))
    })
}

#[test]
fn concurrence_and_negativity_oracles_over_grid() {
    let mut count = 0;
    for (omega, chi, vx) in property_grid() {
        let gs = ground_state(&ModelParams::new(omega, 1.0, vx, chi).unwrap()).unwrap();
        let r = reduced_pair_state(&gs.moments(), omega).unwrap();
        let closed = concurrence_closed(&r).0;
        let oracle = concurrence_oracle(&r).unwrap();
        assert!(
            (closed - oracle).abs() < 1e-9,
            "C at {omega} {chi} {vx}: {closed} {oracle}"
        );
        let n = negativity_updown(&r);
        let pt = negativity_partial_transpose(&r);
        assert!((n - pt).abs() < 1e-10, "N at {omega} {chi} {vx}: {n} {pt}");
        count += 1;
    }
    assert_eq!(count, 11 * 5 * 11);
}

#[test]
fn omega_two_pure_state_concurrence() {
    // |ψ⟩ = α|K=0⟩ + β|K=2⟩ has C = 2|αβ|.
    for &alpha in &[1.0f64, 0.9, 0.6, 0.3] {
        let beta = (1.0 - alpha * alpha).sqrt();
        let coeffs = [alpha, 0.0, beta];
        let r = reduced_pair_state(&lipkin_core::model::spin_moments(&coeffs).unwrap(), 2).unwrap();
        let expect = 2.0 * alpha * beta;
        assert!((concurrence_oracle(&r).unwrap() - expect).abs() < 1e-10);
        assert!((concurrence_closed(&r).0 - expect).abs() < 1e-12);
    }
}

#[test]
fn projected_closed_forms_match_generic_path() {
    for omega in [2usize, 5, 12, 50, 200] {
        for parity in [Parity::Even, Parity::Odd] {
            for i in 0..=20 {
                let theta = std::f64::consts::FRAC_PI_2 * i as f64 / 20.0;
                let closed = pmf_measures(theta, omega, parity).unwrap();
                let generic =
                    measures_from_coeffs(&pmf_state(theta, omega, parity).unwrap().coeffs).unwrap();
                for (a, b) in [
                    (closed.one_body, generic.one_body),
                    (closed.updown, generic.updown),
                    (closed.concurrence, generic.concurrence),
                    (closed.negativity, generic.negativity),
                ] {
                    assert!(
                        (a - b).abs() < 1e-9,
                        "omega {omega} {parity:?} theta {theta}: {a} {b}"
                    );
                }
            }
        }
    }
}

#[test]
fn tridiagonal_blocks_match_dense_spectrum() {
    for &(omega, vx, chi) in &[(7usize, 1.3, 0.2), (12, 0.4, -0.7), (20, 2.5, 0.9)] {
        let h = CollectiveHamiltonian::new(&ModelParams::new(omega, 1.0f64, vx, chi).unwrap());
        let dense = eig_sym_dense(&h.to_dense()).unwrap().values;
        let blocks = h.spectrum().unwrap();
        for (a, b) in dense.iter().zip(&blocks) {
            assert!((a - b).abs() < 1e-10);
        }
    }
}
