//! Ground-truth estimators that share no code path with the series.
//!
//! [`mfpt_bvp`] solves the backward equations for the orientation-resolved
//! mean exit times; [`mfpt_mc`] simulates the particles directly.

mod bvp;
mod mc;

pub use bvp::{mfpt_bvp, BvpSolution};
pub use mc::{mfpt_mc, McConfig, McEstimate};
