//! Survival probability and mean first passage time (MFPT) of a 1-D active
//! Brownian (run-and-tumble) particle between absorbing walls at `x = ±1`.
//!
//! Four independent routes to the same quantities:
//!
//! - [`series`]: the small-Péclet eigenfunction expansion `μ₀ + Pe μ₁ + Pe² μ₂`
//!   together with the survival terms `S₀, S₁, S₂` and the expansion densities.
//! - [`pde`]: a θ-scheme finite-difference solver for the full forward
//!   density/polarization system from a delta start.
//! - [`oracles::mfpt_bvp`]: the backward equations for the orientation-resolved
//!   exit times, solved directly.
//! - [`oracles::mfpt_mc`]: particle simulation.
//!
//! [`run`] drives parameter sweeps and writes CSV/JSON tables; the `mfpt`
//! binary is a thin front end over it.

pub mod error;
pub mod expdiff;
pub mod linalg;
pub mod oracles;
pub mod params;
pub mod pde;
pub mod run;
pub mod series;
pub mod summation;

pub use error::{Error, Result};
pub use oracles::{mfpt_bvp, mfpt_mc, BvpSolution, McConfig, McEstimate};
pub use params::{nondimensionalize, redimensionalize_mfpt, DimensionalParams, ModelParams};
pub use pde::{mfpt_pde, FieldState, FptResult, GridConfig, SurvivalCurve};
pub use series::{mfpt_series, SeriesConfig, SeriesMfpt};
pub use summation::SummationMode;
