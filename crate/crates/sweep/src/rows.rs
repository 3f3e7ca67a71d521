//! One output row per (χ, v_x, method), plus the `|K⟩` rows.

use lipkin_core::meanfield::{mf_measures, mf_solve, pmf_measures, pmf_state, pmfv_solve, MfPhase};
use lipkin_core::measures::{k_state_measures, measures_from_coeffs, ConcurrenceKind, MeasureSet};
use lipkin_core::model::{ground_state, CollectiveHamiltonian, ModelParams, Parity};
use lipkin_core::rpa::{prpa_solve, rpa_concurrence_asymptotic, rpa_solve};
use lipkin_core::Error as CoreError;

use crate::config::Method;
use crate::error::Result;

#[derive(Debug, Clone, PartialEq)]
pub struct ResultRow {
    pub omega: usize,
    pub chi: f64,
    /// `v_x/ε`; for `kstates` rows this column carries `K`.
    pub vx_over_eps: f64,
    pub method: Method,
    /// In units of ε, constant term included.
    pub energy: f64,
    /// `+1`/`-1`, or `0` for a parity-breaking state.
    pub parity: i8,
    /// Mean-field angle; `0` where the method has none.
    pub theta: f64,
    pub one_body_e_per_2omega: f64,
    pub updown_e_per_omega: f64,
    pub concurrence: f64,
    /// `ΩC/2`.
    pub scaled_concurrence: f64,
    pub concurrence_kind: ConcurrenceKind,
    pub negativity: f64,
    /// Exact ground state degenerate between parities, or an `rpa` row
    /// replaced by the exact result inside the critical band.
    pub degenerate_flag: bool,
}

pub const HEADER: [&str; 14] = [
    "omega",
    "chi",
    "vx_over_eps",
    "method",
    "energy",
    "parity",
    "theta",
    "one_body_E_per_2omega",
    "updown_E_per_omega",
    "concurrence",
    "scaled_concurrence",
    "concurrence_kind",
    "negativity",
    "degenerate_flag",
];

struct Partial {
    energy: f64,
    parity: i8,
    theta: f64,
    measures: MeasureSet<f64>,
    flag: bool,
}

fn assemble(omega: usize, chi: f64, x: f64, method: Method, eps: f64, p: Partial) -> ResultRow {
    let o = omega as f64;
    let m = p.measures;
    ResultRow {
        omega,
        chi,
        vx_over_eps: x,
        method,
        energy: p.energy / eps,
        parity: p.parity,
        theta: p.theta,
        one_body_e_per_2omega: m.one_body / (2.0 * o),
        updown_e_per_omega: m.updown / o,
        concurrence: m.concurrence,
        scaled_concurrence: o * m.concurrence / 2.0,
        concurrence_kind: m.kind,
        negativity: m.negativity,
        degenerate_flag: p.flag,
    }
}

/// Evaluates one grid point. `kstates` is not a grid method; see [`kstate_row`].
pub fn evaluate_point(
    method: Method,
    omega: usize,
    eps: f64,
    chi: f64,
    vx_over_eps: f64,
) -> Result<ResultRow> {
    let p = ModelParams::new(omega, eps, vx_over_eps * eps, chi)?;
    let partial = match method {
        Method::Exact => exact(&p)?,
        Method::Mf => {
            let sol = mf_solve(&p);
            Partial {
                energy: sol.energy,
                parity: if sol.phase == MfPhase::Normal { 1 } else { 0 },
                theta: sol.theta,
                measures: mf_measures(&sol, chi, omega)?,
                flag: false,
            }
        }
        Method::Pmf => {
            let theta = mf_solve(&p).theta;
            let (parity, energy) = projected_parity(&p, theta)?;
            Partial {
                energy,
                parity: parity.sign(),
                theta,
                measures: pmf_measures(theta, omega, parity)?,
                flag: false,
            }
        }
        Method::Pmfv => {
            let sol = pmfv_solve(&p)?;
            Partial {
                energy: sol.energy,
                parity: sol.parity.sign(),
                theta: sol.theta,
                measures: pmf_measures(sol.theta, omega, sol.parity)?,
                flag: false,
            }
        }
        Method::Rpa => match (rpa_solve(&p), rpa_concurrence_asymptotic(&p)) {
            (Ok(sol), Ok((c, kind))) => {
                let mf = mf_solve(&p);
                let mut measures = mf_measures(&mf, chi, omega)?;
                measures.concurrence = c;
                measures.kind = kind;
                Partial {
                    energy: sol.energy,
                    parity: if sol.phase == MfPhase::Normal { 1 } else { 0 },
                    theta: sol.theta,
                    measures,
                    flag: false,
                }
            }
            (Err(e), _) | (_, Err(e)) if substitutable(&e) => Partial {
                flag: true,
                ..exact(&p)?
            },
            (Err(e), _) | (_, Err(e)) => return Err(e.into()),
        },
        Method::Prpa => {
            let sol = prpa_solve(&p)?;
            Partial {
                energy: sol.energy,
                parity: sol.parity.sign(),
                theta: mf_solve(&p).theta,
                measures: measures_from_coeffs(&sol.coeffs)?,
                flag: false,
            }
        }
        Method::Kstates => {
            return Err(crate::error::SweepError::config(
                "methods",
                "kstates rows are produced per K, not per grid point",
            ))
        }
    };
    Ok(assemble(omega, chi, vx_over_eps, method, eps, partial))
}

fn substitutable(e: &CoreError) -> bool {
    matches!(e, CoreError::CriticalRegion { .. } | CoreError::Domain(_))
}

fn exact(p: &ModelParams<f64>) -> Result<Partial> {
    let gs = ground_state(p)?;
    Ok(Partial {
        energy: gs.energy,
        parity: gs.parity.sign(),
        theta: 0.0,
        measures: measures_from_coeffs(&gs.coeffs)?,
        flag: gs.degenerate,
    })
}

/// Parity whose projection of the mean-field state has the lower energy
/// (even on a tie, and always even in the normal phase).
fn projected_parity(p: &ModelParams<f64>, theta: f64) -> Result<(Parity, f64)> {
    let h = CollectiveHamiltonian::new(p);
    let even = h.expectation(&pmf_state(theta, p.omega(), Parity::Even)?.coeffs);
    if theta == 0.0 {
        return Ok((Parity::Even, even));
    }
    let odd = h.expectation(&pmf_state(theta, p.omega(), Parity::Odd)?.coeffs);
    Ok(if odd < even {
        (Parity::Odd, odd)
    } else {
        (Parity::Even, even)
    })
}

/// Row for `|K⟩`: `χ = 1` (where these states are exact), `K` in the
/// `vx_over_eps` column and the unperturbed energy `K - Ω/2`.
pub fn kstate_row(omega: usize, k: usize) -> Result<ResultRow> {
    let measures = k_state_measures::<f64>(omega, k)?;
    let partial = Partial {
        energy: k as f64 - omega as f64 / 2.0,
        parity: Parity::of_level(k).sign(),
        theta: 0.0,
        measures,
        flag: false,
    };
    Ok(assemble(
        omega,
        1.0,
        k as f64,
        Method::Kstates,
        1.0,
        partial,
    ))
}
