//! Local quantum uncertainty (LQU) and local quantum Fisher information (LQFI)
//! for qubit-qutrit axially symmetric density matrices.
//!
//! The crate is organised bottom-up:
//!
//! * [`state`] holds the nine-parameter axially symmetric density matrix, its
//!   validation and its analytic spectrum.
//! * [`closed_form`] evaluates the compact two-branch formulas for LQU and LQFI.
//! * [`oracle`] recomputes both measures from their trace definitions on dense
//!   6×6 matrices, without touching the compact formulas.
//! * [`thermal`] builds the ten-parameter Hamiltonian and its Gibbs state.
//! * [`asymptotics`] carries the high-temperature and isotropic limits.
//! * [`presets`] names the parameter sets studied in the thermal analysis.
//! * [`sweep`] runs parameter sweeps, locates branch crossings and writes CSV.
//! * [`cli`] is the command-line front end used by the `axial-qq` binary.

pub mod asymptotics;
pub mod cli;
pub mod closed_form;
mod error;
pub mod oracle;
pub mod presets;
pub mod state;
pub mod sweep;
pub mod thermal;

pub use closed_form::{correlations, Branch, CorrelationBranches, WMDiagonal};
pub use error::{Error, Result};
pub use state::{ASDensityMatrix, ASSpectrum, ValidationReport};
pub use thermal::{gibbs_state, HamiltonianParams, Temperature};

pub use num_complex::Complex64;

/// Absolute threshold below which a 2×2 coherence block counts as degenerate.
pub const EPS_DEG: f64 = 1e-12;
