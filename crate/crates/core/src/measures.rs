//! Entanglement measures of states in the `S = Ω/2` sector.
//!
//! All entropies are in bits and use `0 log 0 = 0`.

use crate::error::{Error, Result};
use crate::model::{spin_moments, SpinMoments};
use crate::numerics::{
    eig_sym_dense, log_binomial, log_binomial_row, sqrtm_psd, DenseSymMatrix, CLAMP_TOLERANCE,
};
use crate::scalar::Real;

const ENTROPY_SLACK: f64 = 1e-12;

/// Binary entropy `h(f) = -f log₂ f - (1-f) log₂(1-f)`.
pub fn binary_entropy<T: Real>(f: T) -> Result<T> {
    let slack = T::lit(ENTROPY_SLACK);
    if !f.is_finite() || f < -slack || f > T::one() + slack {
        return Err(Error::Domain(format!(
            "binary entropy needs f in [0, 1], got {f}"
        )));
    }
    let f = f.max(T::zero()).min(T::one());
    Ok(xlog2x_neg(f) + xlog2x_neg(T::one() - f))
}

#[inline]
fn xlog2x_neg<T: Real>(x: T) -> T {
    if x <= T::zero() {
        T::zero()
    } else {
        -x * x.log2()
    }
}

/// One-body entanglement entropy `E = 2Ω h(⟨K⟩/Ω)` of a definite-parity state.
pub fn one_body_entropy<T: Real>(kmean: T, omega: usize) -> Result<T> {
    if omega == 0 {
        return Err(Error::Domain("omega must be positive".into()));
    }
    let omega_t = T::from_usize_lossy(omega);
    Ok(T::two() * omega_t * binary_entropy(kmean / omega_t)?)
}

/// Up-down entanglement entropy `Σ C_K² [log₂ C(Ω,K) - log₂ C_K²]`.
pub fn updown_entropy<T: Real>(coeffs: &[T]) -> T {
    let omega = coeffs.len().saturating_sub(1);
    let log2_e = T::LOG2_E();
    coeffs
        .iter()
        .enumerate()
        .map(|(k, c)| (k, *c * *c))
        .filter(|(_, w)| *w > T::zero())
        .map(|(k, w)| {
            let lb: T = log_binomial(omega as u64, k as u64).expect("k <= omega");
            w * (lb * log2_e - w.log2())
        })
        .sum()
}

/// X-form reduced state of the four modes `p±, q±`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairReducedState<T> {
    /// `⟨n_{p+} n_{q+}⟩`
    pub a_pp: T,
    /// `⟨n_{p+} n_{q-}⟩ = ⟨n_{p-} n_{q+}⟩`
    pub a_pm: T,
    /// `⟨n_{p-} n_{q-}⟩`
    pub a_mm: T,
    /// `⟨s_{p+} s_{q+}⟩`, the pair-creation ("parallel") coherence.
    pub b_par: T,
    /// `⟨s_{p+} s_{q-}⟩`, the exchange ("antiparallel") coherence.
    pub b_anti: T,
}

impl<T: Real> PairReducedState<T> {
    pub fn trace(&self) -> T {
        self.a_pp + T::two() * self.a_pm + self.a_mm
    }

    /// 4x4 matrix in the basis `{p+q+, p+q-, p-q+, p-q-}`.
    pub fn x_matrix(&self) -> DenseSymMatrix<T> {
        let z = T::zero();
        let data = vec![
            self.a_pp,
            z,
            z,
            self.b_par, //
            z,
            self.a_pm,
            self.b_anti,
            z, //
            z,
            self.b_anti,
            self.a_pm,
            z, //
            self.b_par,
            z,
            z,
            self.a_mm,
        ];
        DenseSymMatrix::from_row_major(4, data).expect("finite entries")
    }

    /// Smallest eigenvalue of the X matrix, in closed form.
    pub fn min_eigenvalue(&self) -> T {
        let outer_mid = (self.a_pp + self.a_mm) * T::half();
        let outer_rad = ((self.a_pp - self.a_mm) * T::half()).hypot(self.b_par);
        let inner = self.a_pm - self.b_anti.abs();
        (outer_mid - outer_rad).min(inner)
    }
}

/// Pair reduced state from the global moments of a state.
pub fn reduced_pair_state<T: Real>(
    m: &SpinMoments<T>,
    omega: usize,
) -> Result<PairReducedState<T>> {
    if omega < 2 {
        return Err(Error::Domain(
            "the pair reduced state needs omega >= 2".into(),
        ));
    }
    let o = T::from_usize_lossy(omega);
    let denom = o * (o - T::one());
    let a_pm = m.pairs_mixed / denom;
    Ok(PairReducedState {
        a_pp: m.pairs_up / denom,
        a_pm,
        a_mm: m.pairs_down / denom,
        b_par: m.splus2 / denom,
        b_anti: a_pm,
    })
}

/// Which coherence makes the concurrence positive.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ConcurrenceKind {
    Parallel,
    Antiparallel,
    Zero,
}

impl ConcurrenceKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ConcurrenceKind::Parallel => "parallel",
            ConcurrenceKind::Antiparallel => "antiparallel",
            ConcurrenceKind::Zero => "zero",
        }
    }
}

/// Closed-form fermionic concurrence of an X-form state:
/// `2 max(|b_par| - a_pm, |b_anti| - √(a_pp a_mm), 0)`.
pub fn concurrence_closed<T: Real>(r: &PairReducedState<T>) -> (T, ConcurrenceKind) {
    let parallel = r.b_par.abs() - r.a_pm;
    let anti = r.b_anti.abs() - (r.a_pp.max(T::zero()) * r.a_mm.max(T::zero())).sqrt();
    if parallel <= T::zero() && anti <= T::zero() {
        (T::zero(), ConcurrenceKind::Zero)
    } else if parallel >= anti {
        (T::two() * parallel, ConcurrenceKind::Parallel)
    } else {
        (T::two() * anti, ConcurrenceKind::Antiparallel)
    }
}

/// Position of the four two-fermion states `{p+q+, p+q-, p-q+, p-q-}` in the
/// even-parity Fock basis
/// `{|0⟩, c₁†c₂†, c₁†c₃†, c₁†c₄†, -c₁†c₂†c₃†c₄†, c₃†c₄†, -c₂†c₄†, c₂†c₃†}`
/// with modes `1 = p+, 2 = p-, 3 = q+, 4 = q-`, and the sign relating them.
const FOCK_EMBEDDING: [(usize, i8); 4] = [(2, 1), (3, 1), (7, 1), (6, -1)];

/// Embeds the X matrix into the 8-dimensional even-parity Fock space.
pub fn fock_embedding<T: Real>(r: &PairReducedState<T>) -> DenseSymMatrix<T> {
    let x = r.x_matrix();
    let mut rho = DenseSymMatrix::zeros(8);
    for (i, &(bi, si)) in FOCK_EMBEDDING.iter().enumerate() {
        for (j, &(bj, sj)) in FOCK_EMBEDDING.iter().enumerate() {
            let s = T::from(si * sj).unwrap();
            rho.set(bi, bj, s * x.get(i, j));
        }
    }
    rho
}

/// Fermionic concurrence from the general four-mode formula
/// `max(2λ_max - Tr R, 0)` with `R = √(√ρ ρ̃ √ρ)` and `ρ̃ = T ρ* T`.
///
/// Independent of [`concurrence_closed`]; works for any real X-form input.
pub fn concurrence_oracle<T: Real>(r: &PairReducedState<T>) -> Result<T> {
    let rho = fock_embedding(r);
    let min = eig_sym_dense(&rho)?.values[0];
    if min < -T::lit(CLAMP_TOLERANCE) {
        return Err(Error::InvalidState(format!(
            "reduced state is not positive semi-definite (min eigenvalue {:e})",
            min.to_f64_lossy()
        )));
    }
    // T swaps the first and second halves of the basis.
    let tilde = DenseSymMatrix::from_fn(8, |i, j| rho.get((i + 4) % 8, (j + 4) % 8));
    let sqrt_rho = sqrtm_psd(&rho)?;
    let inner = sqrt_rho.matmul(&tilde).matmul(&sqrt_rho).symmetrized();
    let r_mat = sqrtm_psd(&inner)?;
    let eig = eig_sym_dense(&r_mat)?;
    let lambda_max = *eig.values.last().unwrap();
    let trace: T = eig.values.iter().copied().sum();
    Ok((T::two() * lambda_max - trace).max(T::zero()))
}

/// Entanglement of a four-mode mixed state with concurrence `C`:
/// `4 h((1 + √(1-C²))/2)`.
pub fn mixed_one_body_entanglement<T: Real>(c: T) -> Result<T> {
    let slack = T::lit(ENTROPY_SLACK);
    if !c.is_finite() || c < -slack || c > T::one() + slack {
        return Err(Error::Domain(format!(
            "concurrence must lie in [0, 1], got {c}"
        )));
    }
    let c = c.max(T::zero()).min(T::one());
    let f = (T::one() + (T::one() - c * c).sqrt()) * T::half();
    Ok(T::lit(4.0) * binary_entropy(f)?)
}

/// Up-down negativity of the pair reduced state, `|b_par| + |b_anti|`.
pub fn negativity_updown<T: Real>(r: &PairReducedState<T>) -> T {
    r.b_par.abs() + r.b_anti.abs()
}

/// Every measure for one state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasureSet<T> {
    /// One-body entanglement entropy `E` (bits).
    pub one_body: T,
    /// Up-down entanglement entropy `E^{+-}` (bits).
    pub updown: T,
    pub concurrence: T,
    pub kind: ConcurrenceKind,
    /// Up-down negativity of the pair reduced state.
    pub negativity: T,
    /// `4 h(f₊)` of the pair reduced state.
    pub mixed_one_body: T,
}

impl<T: Real> MeasureSet<T> {
    pub fn zero() -> Self {
        Self {
            one_body: T::zero(),
            updown: T::zero(),
            concurrence: T::zero(),
            kind: ConcurrenceKind::Zero,
            negativity: T::zero(),
            mixed_one_body: T::zero(),
        }
    }

    pub(crate) fn assemble(one_body: T, updown: T, pair: &PairReducedState<T>) -> Result<Self> {
        let (concurrence, kind) = concurrence_closed(pair);
        Ok(Self {
            one_body,
            updown,
            concurrence,
            kind,
            negativity: negativity_updown(pair),
            mixed_one_body: mixed_one_body_entanglement(concurrence)?,
        })
    }
}

/// Measures of a definite-parity state given by its `|K⟩` coefficients.
pub fn measures_from_coeffs<T: Real>(coeffs: &[T]) -> Result<MeasureSet<T>> {
    let omega = coeffs.len().saturating_sub(1);
    let m = spin_moments(coeffs)?;
    let pair = reduced_pair_state(&m, omega)?;
    MeasureSet::assemble(
        one_body_entropy(m.kmean, omega)?,
        updown_entropy(coeffs),
        &pair,
    )
}

/// Closed-form measures of the `S_z` eigenstate `|K⟩`.
pub fn k_state_measures<T: Real>(omega: usize, k: usize) -> Result<MeasureSet<T>> {
    if omega < 2 {
        return Err(Error::Domain("k-state measures need omega >= 2".into()));
    }
    if k > omega {
        return Err(Error::Domain(format!("K = {k} exceeds omega = {omega}")));
    }
    let o = T::from_usize_lossy(omega);
    let kk = T::from_usize_lossy(k);
    let frac = kk / o;
    let one_body = one_body_entropy(kk, omega)?;
    let updown = log_binomial_row::<T>(omega)[k] * T::LOG2_E();
    let negativity = o / (o - T::one()) * frac * (T::one() - frac);
    let (concurrence, kind) = if k == 0 || k == omega {
        (T::zero(), ConcurrenceKind::Zero)
    } else {
        let prod = T::from_usize_lossy(k * (omega - k));
        let radicand = T::one() - (o - T::one()) / prod;
        let c = T::two() / o / (T::one() + radicand.max(T::zero()).sqrt());
        (c, ConcurrenceKind::Antiparallel)
    };
    Ok(MeasureSet {
        one_body,
        updown,
        concurrence,
        kind,
        negativity,
        mixed_one_body: mixed_one_body_entanglement(concurrence)?,
    })
}
