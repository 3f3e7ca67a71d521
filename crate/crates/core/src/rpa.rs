//! Boson (RPA) treatment around the mean-field minimum and the finite-`Ω`
//! pair-excitation states it suggests.

use crate::error::{Error, Result};
use crate::meanfield::{mf_solve, MfPhase};
use crate::measures::{measures_from_coeffs, ConcurrenceKind, MeasureSet};
use crate::model::{pair_raising_element, CollectiveHamiltonian, ModelParams, Parity};
use crate::numerics::{collective_rotation, minimize_scanned, SquareMatrix};
use crate::scalar::Real;

/// Relative half-width of the band around `v_x = ε` where the boson
/// expansion is not trusted.
pub const CRITICAL_BAND: f64 = 1e-6;

/// Effective quadratic boson Hamiltonian `(ε' - w') b†b - v'(b†² + b²)/2`
/// around the deformed minimum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BrokenCouplings<T> {
    pub eps: T,
    pub w: T,
    pub v: T,
    pub lambda: T,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RpaSolution<T> {
    pub phase: MfPhase,
    /// Boson energy in the normal phase, `λ'` in the broken one.
    pub lambda: T,
    pub alpha: T,
    pub beta: T,
    /// Pair amplitude `β/(2Ωα)` of `exp(γ S₊²)`.
    pub gamma: T,
    pub theta: T,
    pub primed: Option<BrokenCouplings<T>>,
    /// Mean-field energy plus the zero-point shift `(λ - (ε - w))/2`.
    pub energy: T,
}

fn check_critical<T: Real>(p: &ModelParams<T>) -> Result<()> {
    if (p.vx() - p.eps()).abs() < T::lit(CRITICAL_BAND) * p.eps() {
        return Err(Error::CriticalRegion {
            vx: p.vx().to_f64_lossy(),
            eps: p.eps().to_f64_lossy(),
        });
    }
    Ok(())
}

/// Bogoliubov amplitudes of `a b†b - v(b†² + b²)/2` with `λ = √(a² - v²)`.
fn bogoliubov<T: Real>(a: T, v: T, lambda: T) -> (T, T) {
    let two_l = T::two() * lambda;
    let alpha = ((a + lambda) / two_l).sqrt();
    let beta = ((a - lambda).max(T::zero()) / two_l).sqrt();
    (alpha, if v < T::zero() { -beta } else { beta })
}

/// Solves the quadratic boson problem in whichever phase `v_x` selects.
///
/// The normal phase uses the finite-`Ω` couplings `w = WΩ`, `v = VΩ`; when
/// those put the point past the finite-`Ω` instability a critical-region
/// error is returned. In the broken phase `λ' = 0` (only at `χ = 1`) is a
/// domain error.
pub fn rpa_solve<T: Real>(p: &ModelParams<T>) -> Result<RpaSolution<T>> {
    check_critical(p)?;
    let mf = mf_solve(p);
    let o = p.omega_t();
    let (a, v, lambda, primed) = match mf.phase {
        MfPhase::Normal => {
            let a = p.eps() - p.w() * o;
            let v = p.v() * o;
            let l2 = a * a - v * v;
            if l2.is_nan() || l2 <= T::zero() || a <= T::zero() {
                return Err(Error::CriticalRegion {
                    vx: p.vx().to_f64_lossy(),
                    eps: p.eps().to_f64_lossy(),
                });
            }
            (a, v, l2.sqrt(), None)
        }
        MfPhase::Broken => {
            let c = p.eps() / p.vx();
            let c2 = c * c;
            let eps_p = p.eps() * c;
            let w_p = (p.vx() * (T::lit(3.0) * c2 - T::two()) + p.vy()) * T::half();
            let v_p = (p.vx() * c2 - p.vy()) * T::half();
            let lambda = mf.order_param * (p.vx() * (p.vx() - p.vy())).sqrt();
            if lambda <= T::zero() {
                return Err(Error::Domain(
                    "broken-phase boson energy vanishes (isotropic coupling)".into(),
                ));
            }
            let primed = BrokenCouplings {
                eps: eps_p,
                w: w_p,
                v: v_p,
                lambda,
            };
            (eps_p - w_p, v_p, lambda, Some(primed))
        }
    };
    let (alpha, beta) = bogoliubov(a, v, lambda);
    Ok(RpaSolution {
        phase: mf.phase,
        lambda,
        alpha,
        beta,
        gamma: beta / (T::two() * o * alpha),
        theta: mf.theta,
        primed,
        energy: mf.energy + (lambda - a) * T::half(),
    })
}

/// Large-`Ω` pair concurrence of the boson vacuum.
pub fn rpa_concurrence_asymptotic<T: Real>(p: &ModelParams<T>) -> Result<(T, ConcurrenceKind)> {
    check_critical(p)?;
    if p.omega() < 2 {
        return Err(Error::Domain("concurrence needs omega >= 2".into()));
    }
    let scale = T::one() / T::from_usize_lossy(p.omega() - 1);
    let (eps, vx, vy, chi) = (p.eps(), p.vx(), p.vy(), p.chi());
    let (raw, kind) = if vx < eps {
        let lambda = ((eps - vx) * (eps - vy)).sqrt();
        (T::one() - lambda / (eps - vy), ConcurrenceKind::Parallel)
    } else {
        let sin = (T::one() - (eps / vx).powi(2)).sqrt();
        let lambda = sin * (vx * (vx - vy)).sqrt();
        if lambda <= T::zero() {
            return Err(Error::Domain(
                "isotropic broken phase has no boson mode".into(),
            ));
        }
        let below_separable = chi <= T::zero() || vx * chi.sqrt() < eps;
        if below_separable {
            (T::one() - lambda / (vx - vy), ConcurrenceKind::Parallel)
        } else {
            (T::one() - (vx - vy) / lambda, ConcurrenceKind::Antiparallel)
        }
    };
    let value = raw.max(T::zero()) * scale;
    Ok(if value > T::zero() {
        (value, kind)
    } else {
        (T::zero(), ConcurrenceKind::Zero)
    })
}

/// `exp(γ S₊²)|0⟩`, rotated to the mean-field frame in the broken phase and
/// optionally projected onto one parity; normalized.
pub fn rpa_state<T: Real>(p: &ModelParams<T>, gamma: T, parity: Option<Parity>) -> Result<Vec<T>> {
    PairStateFamily::new(p)?.state(gamma, parity)
}

/// The `γ`-independent part of [`rpa_state`], reused across a search.
struct PairStateFamily<T> {
    omega: usize,
    rotation: Option<SquareMatrix<T>>,
}

impl<T: Real> PairStateFamily<T> {
    fn new(p: &ModelParams<T>) -> Result<Self> {
        let mf = mf_solve(p);
        let rotation = match mf.phase {
            MfPhase::Broken => Some(collective_rotation(p.omega(), mf.theta)?),
            MfPhase::Normal => None,
        };
        Ok(Self {
            omega: p.omega(),
            rotation,
        })
    }

    fn state(&self, gamma: T, parity: Option<Parity>) -> Result<Vec<T>> {
        if !gamma.is_finite() {
            return Err(Error::InvalidInput("gamma must be finite".into()));
        }
        let mut coeffs = pair_ladder(self.omega, gamma)?;
        if let Some(r) = &self.rotation {
            coeffs = r.matvec(&coeffs);
        }
        if let Some(parity) = parity {
            for (k, c) in coeffs.iter_mut().enumerate() {
                if !parity.contains(k) {
                    *c = T::zero();
                }
            }
        }
        let norm = coeffs.iter().map(|c| *c * *c).sum::<T>().sqrt();
        if norm.is_nan() || norm <= T::zero() {
            return Err(Error::InvalidState("projected pair state vanishes".into()));
        }
        for c in coeffs.iter_mut() {
            *c /= norm;
        }
        Ok(coeffs)
    }
}

/// Normalized `Σ_m γ^m (S₊²)^m / m! |0⟩`, accumulated in log space.
fn pair_ladder<T: Real>(omega: usize, gamma: T) -> Result<Vec<T>> {
    let n = omega + 1;
    let mut ln = vec![T::neg_infinity(); n];
    let mut sign = vec![1i8; n];
    ln[0] = T::zero();
    if gamma != T::zero() {
        let ln_g = gamma.abs().ln();
        let mut k = 0;
        while k + 2 <= omega {
            let m = T::from_usize_lossy(k / 2 + 1);
            let g: T = pair_raising_element(omega, k);
            ln[k + 2] = ln[k] + ln_g + g.ln() - m.ln();
            sign[k + 2] = if gamma < T::zero() { -sign[k] } else { sign[k] };
            k += 2;
        }
    }
    let top = ln.iter().copied().fold(T::neg_infinity(), T::max);
    if !top.is_finite() {
        return Err(Error::NonConvergence(format!(
            "pair series diverges for gamma = {gamma}"
        )));
    }
    let mut out: Vec<T> = ln
        .iter()
        .zip(&sign)
        .map(|(l, s)| T::from(*s).unwrap() * (*l - top).exp())
        .collect();
    let norm = out.iter().map(|c| *c * *c).sum::<T>().sqrt();
    for c in out.iter_mut() {
        *c /= norm;
    }
    Ok(out)
}

const GAMMA_SCAN: usize = 61;
const GAMMA_RANGE: f64 = 0.75;
const GAMMA_TOL: f64 = 1e-10;

/// Pair amplitude minimising `⟨H⟩` on [`rpa_state`]; the search runs over
/// `γΩ ∈ [-0.75, 0.75]`, seeded with the RPA value where it exists.
pub fn variational_gamma<T: Real>(p: &ModelParams<T>, parity: Option<Parity>) -> Result<T> {
    Ok(variational_gamma_with_energy(p, parity)?.0)
}

fn variational_gamma_with_energy<T: Real>(
    p: &ModelParams<T>,
    parity: Option<Parity>,
) -> Result<(T, T)> {
    if p.vx() == T::zero() {
        let e = CollectiveHamiltonian::new(p).expectation(&rpa_state(p, T::zero(), parity)?);
        return Ok((T::zero(), e));
    }
    let o = p.omega_t();
    let h = CollectiveHamiltonian::new(p);
    let family = PairStateFamily::new(p)?;
    // Surface a bad parity choice before searching.
    family.state(T::zero(), parity)?;
    let shift = mf_solve(p).energy;
    let energy = |u: T| match family.state(u / o, parity) {
        Ok(c) => h.expectation_shifted(&c, shift),
        Err(_) => T::infinity(),
    };
    let seeds: Vec<T> = rpa_solve(p).map(|s| vec![s.gamma * o]).unwrap_or_default();
    let range = T::lit(GAMMA_RANGE);
    let best = minimize_scanned(energy, -range, range, GAMMA_SCAN, &seeds, T::lit(GAMMA_TOL));
    if !best.value.is_finite() {
        return Err(Error::NonConvergence(
            "no finite pair-state energy found".into(),
        ));
    }
    Ok((best.x / o, best.value + shift))
}

/// Projected pair state with variationally optimised `γ`.
#[derive(Debug, Clone, PartialEq)]
pub struct PrpaSolution<T> {
    pub gamma: T,
    pub parity: Parity,
    pub energy: T,
    pub coeffs: Vec<T>,
}

/// In the normal phase the state is even by construction; in the broken
/// phase both projections are optimised and the lower energy kept (even on
/// a tie).
pub fn prpa_solve<T: Real>(p: &ModelParams<T>) -> Result<PrpaSolution<T>> {
    let parities: &[Parity] = match mf_solve(p).phase {
        MfPhase::Normal => &[Parity::Even],
        MfPhase::Broken => &[Parity::Even, Parity::Odd],
    };
    let mut best: Option<PrpaSolution<T>> = None;
    for &parity in parities {
        let (gamma, energy) = variational_gamma_with_energy(p, Some(parity))?;
        if best.as_ref().is_none_or(|b| energy < b.energy) {
            let coeffs = rpa_state(p, gamma, Some(parity))?;
            best = Some(PrpaSolution {
                gamma,
                parity,
                energy,
                coeffs,
            });
        }
    }
    Ok(best.expect("at least one parity is tried"))
}

pub fn prpa_measures<T: Real>(p: &ModelParams<T>) -> Result<MeasureSet<T>> {
    measures_from_coeffs(&prpa_solve(p)?.coeffs)
}
