use lipkin_core::measures::{
    k_state_measures, measures_from_coeffs, mixed_one_body_entanglement, reduced_pair_state,
};
use lipkin_core::model::{ground_state, ModelParams, Parity};
use lipkin_core::numerics::{collective_rotation, eig_sym_dense, sqrtm_psd, DenseSymMatrix};
use proptest::prelude::*;

fn symmetric(n: usize, entries: &[f64]) -> DenseSymMatrix<f64> {
    DenseSymMatrix::from_fn(n, |i, j| {
        let (a, b) = if i <= j { (i, j) } else { (j, i) };
        entries[(a * n + b) % entries.len()]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn eigendecomposition_reconstructs(n in 1usize..24, entries in prop::collection::vec(-1.0f64..1.0, 1..600)) {
        let a = symmetric(n, &entries);
        let eig = eig_sym_dense(&a).unwrap();
        let defect = a.sub(&eig.reconstruct()).frobenius_norm();
        prop_assert!(defect <= 1e-10 * a.frobenius_norm().max(1e-300));
    }

    #[test]
    fn sqrt_of_projector_is_itself(n in 2usize..10, entries in prop::collection::vec(-1.0f64..1.0, 1..100), rank in 1usize..10) {
        let eig = eig_sym_dense(&symmetric(n, &entries)).unwrap();
        let rank = rank.min(n);
        let p = DenseSymMatrix::from_fn(n, |i, j| {
            eig.vectors[..rank].iter().map(|v| v[i] * v[j]).sum::<f64>()
        });
        let root = sqrtm_psd(&p).unwrap();
        prop_assert!(root.sub(&p).max_abs() < 1e-10);
    }

    #[test]
    fn rotation_group_law(omega in 1usize..16, t1 in -3.0f64..3.0, t2 in -3.0f64..3.0) {
        let a = collective_rotation(omega, t1).unwrap();
        let b = collective_rotation(omega, t2).unwrap();
        let ab = collective_rotation(omega, t1 + t2).unwrap();
        let prod = a.matmul(&b);
        for i in 0..=omega {
            for j in 0..=omega {
                prop_assert!((prod.get(i, j) - ab.get(i, j)).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn ground_state_invariants(omega in 2usize..40, chi in -1.0f64..1.0, vx in 0.0f64..5.0) {
        let p = ModelParams::new(omega, 1.0, vx, chi).unwrap();
        let gs = ground_state(&p).unwrap();
        let m = gs.moments();
        prop_assert!(m.kmean / omega as f64 <= 0.5 + 1e-12);
        if chi <= 0.0 {
            prop_assert_eq!(gs.parity, Parity::Even);
        }
        let r = reduced_pair_state(&m, omega).unwrap();
        prop_assert!((r.trace() - 1.0).abs() < 1e-12);
        prop_assert!(r.min_eigenvalue() > -1e-12);
        prop_assert!((r.a_pm - r.b_anti).abs() < 1e-12);
        let stronger = ground_state(&p.with_vx(vx + 0.1).unwrap()).unwrap();
        prop_assert!(stronger.energy <= gs.energy + 1e-12);
        let ms = measures_from_coeffs(&gs.coeffs).unwrap();
        prop_assert!((0.0..=1.0).contains(&ms.concurrence));
        prop_assert!(ms.one_body <= 2.0 * omega as f64 + 1e-9);
    }

    #[test]
    fn omega_two_identities(chi in -1.0f64..1.0, vx in 0.0f64..6.0) {
        let gs = ground_state(&ModelParams::new(2, 1.0, vx, chi).unwrap()).unwrap();
        let m = measures_from_coeffs(&gs.coeffs).unwrap();
        prop_assert!((m.concurrence - 2.0 * m.negativity).abs() < 1e-10);
        prop_assert!((m.one_body - 4.0 * m.updown).abs() < 1e-10);
        prop_assert!((m.one_body - mixed_one_body_entanglement(m.concurrence).unwrap()).abs() < 1e-10);
    }
}

#[test]
fn eigendecomposition_reconstructs_at_64() {
    let entries: Vec<f64> = (0..64 * 64)
        .map(|i| ((i * 7919) % 1000) as f64 / 500.0 - 1.0)
        .collect();
    let a = symmetric(64, &entries);
    let defect = a
        .sub(&eig_sym_dense(&a).unwrap().reconstruct())
        .frobenius_norm();
    assert!(defect <= 1e-10 * a.frobenius_norm());
}

#[test]
fn updown_exceeds_half_one_body_by_a_logarithm() {
    let omega = 50usize;
    for k in 1..omega {
        let m = k_state_measures::<f64>(omega, k).unwrap();
        let f = k as f64 / omega as f64;
        let bound = (2.0 * std::f64::consts::PI * omega as f64 * f * (1.0 - f))
            .sqrt()
            .log2()
            + 1.0;
        assert!((m.updown - m.one_body / 2.0).abs() <= bound, "K = {k}");
    }
}

#[test]
fn saturation_is_monotone() {
    let mut last = 0.0;
    for &vx in &[0.5, 1.0, 1.5, 2.0, 5.0, 20.0, 100.0] {
        let gs = ground_state(&ModelParams::new(50, 1.0, vx, 0.5).unwrap()).unwrap();
        let e = measures_from_coeffs(&gs.coeffs).unwrap().one_body / 100.0;
        assert!(e >= last);
        last = e;
    }
    assert!(last > 0.99);
}

#[test]
fn single_precision_tracks_double() {
    let p32 = ModelParams::new(20, 1.0f32, 1.7, 0.3).unwrap();
    let p64 = ModelParams::new(20, 1.0f64, 1.7, 0.3).unwrap();
    let m32 = measures_from_coeffs(&ground_state(&p32).unwrap().coeffs).unwrap();
    let m64 = measures_from_coeffs(&ground_state(&p64).unwrap().coeffs).unwrap();
    assert!((m32.one_body as f64 - m64.one_body).abs() < 1e-3);
    assert!((m32.negativity as f64 - m64.negativity).abs() < 1e-4);
}
