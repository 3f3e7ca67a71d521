//! The Lipkin Hamiltonian in the maximal-spin sector `S = Ω/2`.
//!
//! States are expanded over `|K⟩`, `K = 0..=Ω` the number of fermions in the
//! upper level (`S_z = K - Ω/2`). The Hamiltonian only couples `K ↔ K±2`, so
//! it splits into an even and an odd `S_z`-parity block, each tridiagonal.

use crate::error::{Error, Result};
use crate::numerics::{eig_sym_tridiagonal, DenseSymMatrix, SymTriMatrix};
use crate::scalar::Real;

/// Physical inputs: `Ω` sites (and fermions), level splitting `ε`, scaled
/// coupling `v_x` and anisotropy `χ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams<T> {
    omega: usize,
    eps: T,
    vx: T,
    chi: T,
}

impl<T: Real> ModelParams<T> {
    pub fn new(omega: usize, eps: T, vx: T, chi: T) -> Result<Self> {
        if omega < 1 {
            return Err(Error::InvalidInput("omega must be at least 1".into()));
        }
        if !(eps.is_finite() && eps > T::zero()) {
            return Err(Error::InvalidInput(format!(
                "eps must be positive, got {eps}"
            )));
        }
        if !(vx.is_finite() && vx >= T::zero()) {
            return Err(Error::InvalidInput(format!("vx must be >= 0, got {vx}")));
        }
        if !(chi.is_finite() && chi.abs() <= T::one()) {
            return Err(Error::InvalidInput(format!(
                "chi must lie in [-1, 1], got {chi}"
            )));
        }
        if omega == 1 && vx > T::zero() {
            return Err(Error::InvalidInput(
                "omega = 1 admits no interaction (vx must be 0)".into(),
            ));
        }
        Ok(Self {
            omega,
            eps,
            vx,
            chi,
        })
    }

    pub fn omega(&self) -> usize {
        self.omega
    }

    pub fn eps(&self) -> T {
        self.eps
    }

    pub fn vx(&self) -> T {
        self.vx
    }

    pub fn chi(&self) -> T {
        self.chi
    }

    /// `v_y = χ v_x`.
    pub fn vy(&self) -> T {
        self.chi * self.vx
    }

    /// Unscaled coupling `V_x = v_x / (Ω - 1)`.
    pub fn coupling(&self) -> T {
        if self.omega < 2 {
            T::zero()
        } else {
            self.vx / T::from_usize_lossy(self.omega - 1)
        }
    }

    /// Pair-hopping strength `W = V_x (1+χ)/2`.
    pub fn w(&self) -> T {
        self.coupling() * (T::one() + self.chi) * T::half()
    }

    /// Pair-creation strength `V = V_x (1-χ)/2`.
    pub fn v(&self) -> T {
        self.coupling() * (T::one() - self.chi) * T::half()
    }

    pub fn with_vx(&self, vx: T) -> Result<Self> {
        Self::new(self.omega, self.eps, vx, self.chi)
    }

    pub fn omega_t(&self) -> T {
        T::from_usize_lossy(self.omega)
    }
}

/// `S_z`-parity `(-1)^K`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of_level(k: usize) -> Self {
        if k.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn sign(self) -> i8 {
        match self {
            Parity::Even => 1,
            Parity::Odd => -1,
        }
    }

    pub fn contains(self, k: usize) -> bool {
        Self::of_level(k) == self
    }

    pub fn flipped(self) -> Self {
        match self {
            Parity::Even => Parity::Odd,
            Parity::Odd => Parity::Even,
        }
    }

    fn first_level(self) -> usize {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }
}

/// `⟨K+2| S₊² |K⟩` in the `S = Ω/2` multiplet.
#[inline]
pub fn pair_raising_element<T: Real>(omega: usize, k: usize) -> T {
    debug_assert!(k + 2 <= omega);
    let a = (omega - k) * (k + 1);
    let b = (omega - k - 1) * (k + 2);
    (T::from_usize_lossy(a) * T::from_usize_lossy(b)).sqrt()
}

/// Full `(Ω+1)`-dimensional Hamiltonian in the `|K⟩` basis, constant term included.
#[derive(Debug, Clone, PartialEq)]
pub struct CollectiveHamiltonian<T> {
    omega: usize,
    diag: Vec<T>,
    /// `pair[K]` couples `K` and `K+2`.
    pair: Vec<T>,
}

impl<T: Real> CollectiveHamiltonian<T> {
    pub fn new(p: &ModelParams<T>) -> Self {
        let omega = p.omega();
        let half = p.omega_t() * T::half();
        let w = p.w();
        let v = p.v();
        // ε M - V_x(1+χ)/2 (S(S+1) - M²) + V_x(1+χ)Ω/4 collapses to ε M - W K(Ω-K)
        let diag = (0..=omega)
            .map(|k| {
                p.eps() * (T::from_usize_lossy(k) - half) - w * T::from_usize_lossy(k * (omega - k))
            })
            .collect();
        let pair = (0..omega.saturating_sub(1))
            .map(|k| -v * T::half() * pair_raising_element::<T>(omega, k))
            .collect();
        Self { omega, diag, pair }
    }

    pub fn omega(&self) -> usize {
        self.omega
    }

    pub fn diag(&self) -> &[T] {
        &self.diag
    }

    pub fn pair(&self) -> &[T] {
        &self.pair
    }

    /// Tridiagonal block over the levels of one parity, in ascending `K`.
    pub fn block(&self, parity: Parity) -> SymTriMatrix<T> {
        let levels: Vec<usize> = (parity.first_level()..=self.omega).step_by(2).collect();
        let diag = levels.iter().map(|&k| self.diag[k]).collect();
        let off = levels.windows(2).map(|w| self.pair[w[0]]).collect();
        SymTriMatrix::new(diag, off).expect("block is finite and well-shaped")
    }

    pub fn apply(&self, c: &[T]) -> Vec<T> {
        let n = self.omega + 1;
        (0..n)
            .map(|k| {
                let mut acc = self.diag[k] * c[k];
                if k >= 2 {
                    acc += self.pair[k - 2] * c[k - 2];
                }
                if k + 2 < n {
                    acc += self.pair[k] * c[k + 2];
                }
                acc
            })
            .collect()
    }

    /// Rayleigh quotient `cᵀHc / cᵀc`.
    pub fn expectation(&self, c: &[T]) -> T {
        let hc = self.apply(c);
        let num: T = c.iter().zip(&hc).map(|(a, b)| *a * *b).sum();
        let den: T = c.iter().map(|a| *a * *a).sum();
        num / den
    }

    /// `cᵀ(H - shift)c / cᵀc`. Choosing `shift` near the expected value keeps
    /// full relative accuracy when comparing nearly degenerate trial states.
    pub fn expectation_shifted(&self, c: &[T], shift: T) -> T {
        let n = self.omega + 1;
        let mut num = T::zero();
        for k in 0..n {
            num += c[k] * c[k] * (self.diag[k] - shift);
            if k + 2 < n {
                num += T::two() * c[k] * c[k + 2] * self.pair[k];
            }
        }
        let den: T = c.iter().map(|a| *a * *a).sum();
        num / den
    }

    pub fn to_dense(&self) -> DenseSymMatrix<T> {
        let n = self.omega + 1;
        DenseSymMatrix::from_fn(n, |i, j| {
            if i == j {
                self.diag[i]
            } else if i + 2 == j {
                self.pair[i]
            } else if j + 2 == i {
                self.pair[j]
            } else {
                T::zero()
            }
        })
    }

    /// Largest absolute eigenvalue over both parity blocks.
    pub fn spectral_norm(&self) -> Result<T> {
        let mut norm = T::zero();
        for parity in [Parity::Even, Parity::Odd] {
            if parity.first_level() > self.omega {
                continue;
            }
            let eig = eig_sym_tridiagonal(&self.block(parity))?;
            for v in eig.values {
                norm = norm.max(v.abs());
            }
        }
        Ok(norm)
    }

    /// Every eigenvalue of both blocks, ascending.
    pub fn spectrum(&self) -> Result<Vec<T>> {
        let mut all = eig_sym_tridiagonal(&self.block(Parity::Even))?.values;
        if self.omega >= 1 {
            all.extend(eig_sym_tridiagonal(&self.block(Parity::Odd))?.values);
        }
        all.sort_by(|a, b| a.partial_cmp(b).unwrap());
        Ok(all)
    }
}

/// One parity block of the Hamiltonian.
pub fn build_hamiltonian<T: Real>(p: &ModelParams<T>, parity: Parity) -> Result<SymTriMatrix<T>> {
    Ok(CollectiveHamiltonian::new(p).block(parity))
}

#[derive(Debug, Clone, PartialEq)]
pub struct GroundState<T> {
    /// `C_K` for `K = 0..=Ω`.
    pub coeffs: Vec<T>,
    pub parity: Parity,
    /// Energy including the constant term `V_x (1+χ) Ω / 4`.
    pub energy: T,
    /// Both parity blocks have the same lowest energy within `1e-9 ε`.
    pub degenerate: bool,
}

impl<T: Real> GroundState<T> {
    pub fn omega(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn moments(&self) -> SpinMoments<T> {
        spin_moments(&self.coeffs).expect("ground state is normalized")
    }

    /// Index of the dominant `|K⟩` component.
    pub fn dominant_level(&self) -> usize {
        let mut best = 0;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.abs() > self.coeffs[best].abs() {
                best = k;
            }
        }
        best
    }
}

const DEGENERACY_TOLERANCE: f64 = 1e-9;

/// Exact ground state: lowest eigenvector over both parity blocks.
///
/// Ties within `1e-9 ε` pick the even block and set `degenerate`. The sign is
/// fixed so that the first non-negligible coefficient is positive.
pub fn ground_state<T: Real>(p: &ModelParams<T>) -> Result<GroundState<T>> {
    let h = CollectiveHamiltonian::new(p);
    let mut lowest = Vec::with_capacity(2);
    for parity in [Parity::Even, Parity::Odd] {
        if parity.first_level() > p.omega() {
            continue;
        }
        let eig = eig_sym_tridiagonal(&h.block(parity))?;
        lowest.push((parity, eig.values[0], eig.vectors[0].clone()));
    }
    let even = &lowest[0];
    let (mut chosen, mut degenerate) = (0, false);
    if let Some(odd) = lowest.get(1) {
        let gap = odd.1 - even.1;
        if gap.abs() < T::lit(DEGENERACY_TOLERANCE) * p.eps() {
            degenerate = true;
        } else if gap < T::zero() {
            chosen = 1;
        }
    }
    let (parity, energy, block_vec) = lowest.swap_remove(chosen);

    let mut coeffs = vec![T::zero(); p.omega() + 1];
    for (i, c) in block_vec.into_iter().enumerate() {
        coeffs[parity.first_level() + 2 * i] = c;
    }
    fix_sign(&mut coeffs);
    Ok(GroundState {
        coeffs,
        parity,
        energy,
        degenerate,
    })
}

/// Makes the first coefficient above `1e-8 max|C|` positive.
pub(crate) fn fix_sign<T: Real>(coeffs: &mut [T]) {
    let max = coeffs.iter().fold(T::zero(), |m, c| m.max(c.abs()));
    let cutoff = max * T::lit(1e-8);
    if let Some(first) = coeffs.iter().find(|c| c.abs() > cutoff) {
        if *first < T::zero() {
            for c in coeffs.iter_mut() {
                *c = -*c;
            }
        }
    }
}

/// Ground-state level of the isotropic (`χ = 1`) model.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IsotropicLevel {
    pub k: usize,
    /// The coupling sits exactly on the `K → K+1` transition.
    pub degenerate: bool,
}

/// `K` minimising `ε(K-Ω/2) - V_x K(Ω-K)`: transitions `K → K+1` occur at
/// `V_x = ε/(Ω-1-2K)`. Exact ties resolve to the lower `K`.
pub fn isotropic_gs_level<T: Real>(p: &ModelParams<T>) -> Result<IsotropicLevel> {
    if p.chi() != T::one() {
        return Err(Error::Domain(format!(
            "isotropic level needs chi = 1, got {}",
            p.chi()
        )));
    }
    let omega = p.omega();
    let coupling = p.coupling();
    let tie = T::lit(1e-12);
    let mut k = 0;
    while k < omega / 2 {
        let threshold = p.eps() / T::from_usize_lossy(omega - 1 - 2 * k);
        if (coupling - threshold).abs() <= tie * threshold {
            return Ok(IsotropicLevel {
                k,
                degenerate: true,
            });
        }
        if coupling < threshold {
            break;
        }
        k += 1;
    }
    Ok(IsotropicLevel {
        k,
        degenerate: false,
    })
}

/// `⟨S_z⟩`, `⟨S_z²⟩`, `⟨S₊²⟩` and `⟨K⟩` of a state in the `|K⟩` basis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinMoments<T> {
    pub sz: T,
    pub sz2: T,
    pub splus2: T,
    pub kmean: T,
    /// `⟨K(K-1)⟩`, `⟨K(Ω-K)⟩` and `⟨(Ω-K)(Ω-K-1)⟩`: ordered pair counts of
    /// upper/upper, upper/lower and lower/lower sites. Summed term by term so
    /// that vanishing ones come out exactly zero.
    pub pairs_up: T,
    pub pairs_mixed: T,
    pub pairs_down: T,
}

/// Moments of a normalized coefficient vector over `K = 0..=Ω`.
pub fn spin_moments<T: Real>(coeffs: &[T]) -> Result<SpinMoments<T>> {
    if coeffs.is_empty() {
        return Err(Error::InvalidInput("empty coefficient vector".into()));
    }
    let omega = coeffs.len() - 1;
    let norm: T = coeffs.iter().map(|c| *c * *c).sum();
    let tolerance = T::lit(1e-8).max(T::lit(64.0) * T::from_usize_lossy(omega + 1) * T::epsilon());
    if (norm - T::one()).abs() > tolerance {
        return Err(Error::InvalidState(format!(
            "coefficients not normalized (norm² = {norm})"
        )));
    }
    let half = T::from_usize_lossy(omega) * T::half();
    let mut sz = T::zero();
    let mut sz2 = T::zero();
    let mut kmean = T::zero();
    let (mut pairs_up, mut pairs_mixed, mut pairs_down) = (T::zero(), T::zero(), T::zero());
    for (k, c) in coeffs.iter().enumerate() {
        let m = T::from_usize_lossy(k) - half;
        let w = *c * *c;
        sz += w * m;
        sz2 += w * m * m;
        kmean += w * T::from_usize_lossy(k);
        let down = omega - k;
        pairs_up += w * T::from_usize_lossy(k * k.saturating_sub(1));
        pairs_mixed += w * T::from_usize_lossy(k * down);
        pairs_down += w * T::from_usize_lossy(down * down.saturating_sub(1));
    }
    let splus2 = (0..omega.saturating_sub(1))
        .map(|k| coeffs[k + 2] * coeffs[k] * pair_raising_element::<T>(omega, k))
        .sum();
    Ok(SpinMoments {
        sz,
        sz2,
        splus2,
        kmean,
        pairs_up,
        pairs_mixed,
        pairs_down,
    })
}

/// `‖H c - (cᵀHc) c‖₂` for a normalized `c` over `K = 0..=Ω`.
pub fn eigenstate_residual<T: Real>(p: &ModelParams<T>, coeffs: &[T]) -> Result<T> {
    if coeffs.len() != p.omega() + 1 {
        return Err(Error::InvalidInput(format!(
            "expected {} coefficients, got {}",
            p.omega() + 1,
            coeffs.len()
        )));
    }
    let h = CollectiveHamiltonian::new(p);
    let hc = h.apply(coeffs);
    let e: T = coeffs.iter().zip(&hc).map(|(a, b)| *a * *b).sum();
    Ok(hc
        .iter()
        .zip(coeffs)
        .map(|(h, c)| {
            let r = *h - e * *c;
            r * r
        })
        .sum::<T>()
        .sqrt())
}
