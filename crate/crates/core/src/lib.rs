//! Exact diagonalization of the fermionic Lipkin model in its maximal-spin
//! sector, the fermionic and up-down entanglement of its ground state, and
//! mean-field / projected mean-field / RPA approximations to the same
//! quantities.
//!
//! Every routine is generic over the scalar type ([`Real`], implemented for
//! `f32` and `f64`); the aliases below fix the usual `f64` instantiation.

pub mod error;
pub mod meanfield;
pub mod measures;
pub mod model;
pub mod numerics;
pub mod rpa;
pub mod scalar;

pub use error::{Error, Result};
pub use meanfield::{MfPhase, MfSolution, ProjectedMfState};
pub use measures::{ConcurrenceKind, MeasureSet, PairReducedState};
pub use model::{GroundState, ModelParams, Parity, SpinMoments};
pub use rpa::RpaSolution;
pub use scalar::Real;

pub type ModelParamsF64 = model::ModelParams<f64>;
pub type GroundStateF64 = model::GroundState<f64>;
pub type SpinMomentsF64 = model::SpinMoments<f64>;
pub type PairReducedStateF64 = measures::PairReducedState<f64>;
pub type MeasureSetF64 = measures::MeasureSet<f64>;
pub type MfSolutionF64 = meanfield::MfSolution<f64>;
pub type ProjectedMfStateF64 = meanfield::ProjectedMfState<f64>;
pub type RpaSolutionF64 = rpa::RpaSolution<f64>;
pub type SymTriMatrixF64 = numerics::SymTriMatrix<f64>;
pub type DenseSymMatrixF64 = numerics::DenseSymMatrix<f64>;
pub type EigDecompositionF64 = numerics::EigDecomposition<f64>;

pub type ModelParamsF32 = model::ModelParams<f32>;
pub type GroundStateF32 = model::GroundState<f32>;
pub type MeasureSetF32 = measures::MeasureSet<f32>;
