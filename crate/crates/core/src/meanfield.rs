//! Mean-field (coherent-state) approximation and its `S_z`-parity projections.
//!
//! The mean-field state is a product over sites of
//! `cos(θ/2)|−⟩ + sin(θ/2)|+⟩`. Projecting it onto a definite parity
//! `σ = ±1` gives closed forms that all share the overlap factor
//! `1 + σ cos^Ω θ`. Powers of `cos θ` are carried in log space so that
//! `Ω` in the thousands is fine.

use crate::error::{Error, Result};
use crate::measures::{
    binary_entropy, k_state_measures, mixed_one_body_entanglement, negativity_updown,
    ConcurrenceKind, MeasureSet, PairReducedState,
};
use crate::model::{CollectiveHamiltonian, ModelParams, Parity};
use crate::numerics::{log_binomial_row, minimize_scanned};
use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MfPhase {
    /// `v_x ≤ ε`: the unperturbed Slater determinant.
    Normal,
    /// `v_x > ε`: parity-breaking deformed determinant.
    Broken,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MfSolution<T> {
    pub theta: T,
    /// `Δ = sin θ`.
    pub order_param: T,
    /// `⟨H⟩` in the mean-field state, constant term included.
    pub energy: T,
    pub phase: MfPhase,
}

/// Minimises the mean-field energy `Ω[-ε cosθ/2 - v_x sin²θ/4]`.
///
/// That expression is the exact expectation value of `H` in the coherent
/// state, so it can be compared directly with exact energies.
pub fn mf_solve<T: Real>(p: &ModelParams<T>) -> MfSolution<T> {
    let (cos, phase) = if p.vx() <= p.eps() {
        (T::one(), MfPhase::Normal)
    } else {
        (p.eps() / p.vx(), MfPhase::Broken)
    };
    let theta = cos.acos();
    let sin2 = T::one() - cos * cos;
    let quarter = T::lit(0.25);
    let energy = p.omega_t() * (-p.eps() * cos * T::half() - p.vx() * sin2 * quarter);
    MfSolution {
        theta,
        order_param: sin2.sqrt(),
        energy,
        phase,
    }
}

/// Coherent-state amplitudes `C_K(θ) = √C(Ω,K) cos^{Ω-K}(θ/2) sin^K(θ/2)`.
pub fn mf_coefficients<T: Real>(theta: T, omega: usize) -> Vec<T> {
    let half = theta * T::half();
    let ln_cos = half.cos().abs().ln();
    let ln_sin = half.sin().abs().ln();
    let lb = log_binomial_row::<T>(omega);
    let mut coeffs: Vec<T> = (0..=omega)
        .map(|k| {
            let ln = lb[k] * T::half() + scaled_log(omega - k, ln_cos) + scaled_log(k, ln_sin);
            ln.exp()
        })
        .collect();
    // For θ ∈ [0, π] every amplitude is non-negative; outside, restore signs.
    let (cs, ss) = (half.cos() < T::zero(), half.sin() < T::zero());
    for (k, c) in coeffs.iter_mut().enumerate() {
        if (cs && (omega - k) % 2 == 1) ^ (ss && k % 2 == 1) {
            *c = -*c;
        }
    }
    normalize(&mut coeffs);
    coeffs
}

/// `n ln x` with `0 · ln 0 = 0`.
fn scaled_log<T: Real>(n: usize, ln_x: T) -> T {
    if n == 0 {
        T::zero()
    } else {
        T::from_usize_lossy(n) * ln_x
    }
}

fn normalize<T: Real>(c: &mut [T]) {
    let norm = c.iter().map(|x| *x * *x).sum::<T>().sqrt();
    for x in c.iter_mut() {
        *x /= norm;
    }
}

/// Unprojected mean-field measures. Every site is an independent two-level
/// system, so the pair concurrence vanishes and `E^{+-} = E/2`.
pub fn mf_measures<T: Real>(sol: &MfSolution<T>, chi: T, omega: usize) -> Result<MeasureSet<T>> {
    let cos = sol.theta.cos();
    let sin2 = sol.theta.sin().powi(2);
    let one_body =
        T::two() * T::from_usize_lossy(omega) * binary_entropy((T::one() - cos) * T::half())?;
    // Below χ = 1 the pair coherence is the Gaussian one; at χ = 1 the exact
    // |K⟩ ground state has no pair coherence and half the negativity.
    let negativity = if chi < T::one() {
        sin2 * T::half()
    } else {
        sin2 * T::lit(0.25)
    };
    Ok(MeasureSet {
        one_body,
        updown: one_body * T::half(),
        concurrence: T::zero(),
        kind: ConcurrenceKind::Zero,
        negativity,
        mixed_one_body: T::zero(),
    })
}

/// Powers of `cos θ` kept as sign and log-magnitude.
#[derive(Debug, Clone, Copy)]
struct CosPower<T> {
    negative: bool,
    ln_abs: T,
    zero: bool,
}

impl<T: Real> CosPower<T> {
    fn new(theta: T) -> Self {
        let c = theta.cos();
        let s = (theta * T::half()).sin();
        // ln|cos θ| = ln(1 - 2 sin²(θ/2)) keeps full relative accuracy near θ = 0.
        let ln_abs = if c > T::half() {
            (-T::two() * s * s).ln_1p()
        } else {
            c.abs().ln()
        };
        Self {
            negative: c < T::zero(),
            ln_abs,
            zero: c == T::zero(),
        }
    }

    /// `1 + sign · cos^n θ`, accurate when it nearly cancels.
    fn one_plus(self, sign: i8, n: usize) -> T {
        if n == 0 {
            return T::one() + T::from(sign).unwrap();
        }
        if self.zero {
            return T::one();
        }
        let x = T::from_usize_lossy(n) * self.ln_abs;
        let flip = self.negative && n % 2 == 1;
        if (sign > 0) ^ flip {
            T::one() + x.exp()
        } else {
            -x.exp_m1()
        }
    }

    /// Signed `cos^n θ`.
    fn pow(self, n: usize) -> T {
        if n == 0 {
            return T::one();
        }
        if self.zero {
            return T::zero();
        }
        let v = (T::from_usize_lossy(n) * self.ln_abs).exp();
        if self.negative && n % 2 == 1 {
            -v
        } else {
            v
        }
    }
}

/// Parity-projected coherent state.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectedMfState<T> {
    pub theta: T,
    pub parity: Parity,
    /// `C_K^±` over `K = 0..=Ω`; opposite-parity entries are exactly zero.
    pub coeffs: Vec<T>,
}

fn check_projection_input<T: Real>(theta: T, omega: usize) -> Result<()> {
    if omega < 2 {
        return Err(Error::Domain("parity projection needs omega >= 2".into()));
    }
    if !(theta.is_finite() && theta >= T::zero() && theta <= T::PI()) {
        return Err(Error::Domain(format!(
            "theta must lie in [0, pi], got {theta}"
        )));
    }
    Ok(())
}

/// `C_K^σ(θ) = √(2/(1+σ cos^Ω θ)) C_K(θ)` on the levels of parity `σ`.
///
/// At `θ = 0` the odd projection is the limit `|K=1⟩`.
pub fn pmf_state<T: Real>(theta: T, omega: usize, parity: Parity) -> Result<ProjectedMfState<T>> {
    check_projection_input(theta, omega)?;
    let mut coeffs = vec![T::zero(); omega + 1];
    let half = theta * T::half();
    if half.sin() == T::zero() || half.cos() == T::zero() {
        // Only K = 0 or K = Ω survives before projection.
        let k = match (half.sin() == T::zero(), parity) {
            (true, Parity::Even) => 0,
            (true, Parity::Odd) => 1,
            (false, _) if parity.contains(omega) => omega,
            (false, _) => omega - 1,
        };
        coeffs[k] = T::one();
        return Ok(ProjectedMfState {
            theta,
            parity,
            coeffs,
        });
    }
    let ln_cos = half.cos().ln();
    let ln_sin = half.sin().ln();
    let overlap = CosPower::new(theta).one_plus(parity.sign(), omega);
    let ln_norm = (T::two().ln() - overlap.ln()) * T::half();
    let lb = log_binomial_row::<T>(omega);
    for k in (0..=omega).filter(|&k| parity.contains(k)) {
        let ln =
            ln_norm + lb[k] * T::half() + scaled_log(omega - k, ln_cos) + scaled_log(k, ln_sin);
        coeffs[k] = ln.exp();
    }
    Ok(ProjectedMfState {
        theta,
        parity,
        coeffs,
    })
}

/// Exact four-mode reduced state of the projected coherent state.
pub fn pmf_pair_state<T: Real>(
    theta: T,
    omega: usize,
    parity: Parity,
) -> Result<PairReducedState<T>> {
    check_projection_input(theta, omega)?;
    if theta == T::zero() && parity == Parity::Odd {
        let o = T::from_usize_lossy(omega);
        let anti = T::one() / o;
        return Ok(PairReducedState {
            a_pp: T::zero(),
            a_pm: anti,
            a_mm: (o - T::two()) / o,
            b_par: T::zero(),
            b_anti: anti,
        });
    }
    let cp = CosPower::new(theta);
    let sigma = parity.sign();
    let overlap = cp.one_plus(sigma, omega);
    let same = cp.one_plus(sigma, omega - 2) / overlap;
    let opposite = cp.one_plus(-sigma, omega - 2) / overlap;
    let half = theta * T::half();
    let (a2, b2) = (half.cos().powi(2), half.sin().powi(2));
    let ab = theta.sin().powi(2) * T::lit(0.25);
    Ok(PairReducedState {
        a_pp: b2 * b2 * same,
        a_pm: ab * opposite,
        a_mm: a2 * a2 * same,
        b_par: ab * same,
        b_anti: ab * opposite,
    })
}

/// Closed-form measures of the projected coherent state.
pub fn pmf_measures<T: Real>(theta: T, omega: usize, parity: Parity) -> Result<MeasureSet<T>> {
    check_projection_input(theta, omega)?;
    if theta == T::zero() {
        return match parity {
            Parity::Even => Ok(MeasureSet::zero()),
            Parity::Odd => k_state_measures(omega, 1),
        };
    }
    let cp = CosPower::new(theta);
    let sigma = parity.sign();
    let overlap = cp.one_plus(sigma, omega);
    let half = theta * T::half();
    let (up, down) = (half.sin().powi(2), half.cos().powi(2));
    let f_up = up * cp.one_plus(-sigma, omega - 1) / overlap;
    let f_down = down * cp.one_plus(sigma, omega - 1) / overlap;
    let o = T::from_usize_lossy(omega);

    let one_body = T::two() * o * binary_entropy(f_up.min(T::one()))?;
    let updown = -o * (xlog2y(f_up, up) + xlog2y(f_down, down)) - (T::two() / overlap).log2();

    let pair = pmf_pair_state(theta, omega, parity)?;
    let signed = T::from(sigma).unwrap() * theta.sin().powi(2) * cp.pow(omega - 2) / overlap;
    let (concurrence, kind) = if signed > T::zero() {
        (signed, ConcurrenceKind::Parallel)
    } else if signed < T::zero() {
        (-signed, ConcurrenceKind::Antiparallel)
    } else {
        (T::zero(), ConcurrenceKind::Zero)
    };
    Ok(MeasureSet {
        one_body,
        updown,
        concurrence,
        kind,
        negativity: negativity_updown(&pair),
        mixed_one_body: mixed_one_body_entanglement(concurrence.min(T::one()))?,
    })
}

/// `x log₂ y` with `0 · log 0 = 0`.
fn xlog2y<T: Real>(x: T, y: T) -> T {
    if x == T::zero() {
        T::zero()
    } else {
        x * y.log2()
    }
}

/// Outcome of projecting before variation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PmfvSolution<T> {
    pub theta: T,
    pub parity: Parity,
    pub energy: T,
}

const PMFV_SCAN: usize = 64;
const PMFV_TOL: f64 = 1e-10;

/// Minimises `⟨H⟩` over projected coherent states of fixed parity,
/// `θ ∈ [0, π/2]`. Returns `(θ*, E(θ*))`.
pub fn pmf_variational_theta<T: Real>(p: &ModelParams<T>, parity: Parity) -> Result<(T, T)> {
    let omega = p.omega();
    check_projection_input(T::zero(), omega)?;
    let h = CollectiveHamiltonian::new(p);
    // Measured from the unperturbed level so small-θ differences stay resolved.
    let shift = h.diag()[if parity == Parity::Even { 0 } else { 1 }];
    let energy = |theta: T| -> T {
        match pmf_state(theta, omega, parity) {
            Ok(s) => h.expectation_shifted(&s.coeffs, shift),
            Err(_) => T::infinity(),
        }
    };
    let seed = mf_solve(p).theta;
    let best = minimize_scanned(
        energy,
        T::zero(),
        T::FRAC_PI_2(),
        PMFV_SCAN,
        &[seed],
        T::lit(PMFV_TOL),
    );
    Ok((best.x, best.value + shift))
}

/// Projection before variation in both sectors, keeping the lower energy
/// (even on a tie).
pub fn pmfv_solve<T: Real>(p: &ModelParams<T>) -> Result<PmfvSolution<T>> {
    let (te, ee) = pmf_variational_theta(p, Parity::Even)?;
    let (to, eo) = pmf_variational_theta(p, Parity::Odd)?;
    Ok(if eo < ee {
        PmfvSolution {
            theta: to,
            parity: Parity::Odd,
            energy: eo,
        }
    } else {
        PmfvSolution {
            theta: te,
            parity: Parity::Even,
            energy: ee,
        }
    })
}
