//! Sweeps, figure presets and the verification suite behind the `lipkin`
//! command-line tool.

pub mod config;
pub mod error;
pub mod output;
pub mod presets;
pub mod rows;
pub mod sweep;
pub mod verify;

pub use config::{Emit, Method, PartialConfig, SweepConfig, VxGrid};
pub use error::{Result, SweepError};
pub use presets::figure_preset;
pub use rows::ResultRow;
pub use sweep::run_sweep;
