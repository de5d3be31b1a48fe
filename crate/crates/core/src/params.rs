//! Problem parameters in physical units and their dimensionless form.
//!
//! All solvers in this crate work on the dimensionless interval `[-1, 1]`
//! with time measured in units of the diffusive time `R²/D_T`.

use serde::{Deserialize, Serialize};

use crate::error::{finite, invalid, Result};

/// Physical description of a swimmer between two absorbing walls at `±R`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DimensionalParams {
    /// Swim speed `v_s` [length/time].
    pub v_s: f64,
    /// Translational diffusivity `D_T` [length²/time].
    pub d_t: f64,
    /// Domain half-length `R` [length].
    pub r: f64,
    /// Orientation persistence time `τ` [time]; flips happen at rate `1/τ`.
    pub tau: f64,
    /// Fraction of the initial mass oriented to the right.
    pub eta: f64,
    /// Starting position [length].
    pub x0_dim: f64,
}

impl DimensionalParams {
    pub fn validate(&self) -> Result<()> {
        let v_s = finite("v_s", self.v_s)?;
        let d_t = finite("D_T", self.d_t)?;
        let r = finite("R", self.r)?;
        let tau = finite("tau", self.tau)?;
        let eta = finite("eta", self.eta)?;
        let x0 = finite("x0_dim", self.x0_dim)?;
        if d_t <= 0.0 {
            return Err(invalid("D_T", format!("must be > 0, got {d_t}")));
        }
        if r <= 0.0 {
            return Err(invalid("R", format!("must be > 0, got {r}")));
        }
        if tau <= 0.0 {
            return Err(invalid("tau", format!("must be > 0, got {tau}")));
        }
        if v_s < 0.0 {
            return Err(invalid("v_s", format!("must be >= 0, got {v_s}")));
        }
        if !(0.0..=1.0).contains(&eta) {
            return Err(invalid("eta", format!("must lie in [0, 1], got {eta}")));
        }
        if x0.abs() > r {
            return Err(invalid(
                "x0_dim",
                format!("|x0_dim| = {} exceeds R = {r}", x0.abs()),
            ));
        }
        Ok(())
    }

    /// The diffusive time scale `R²/D_T`.
    pub fn diffusive_time(&self) -> f64 {
        self.r * self.r / self.d_t
    }
}

/// Dimensionless problem definition.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    /// Péclet number `v_s R / D_T`.
    pub pe: f64,
    /// Tumbling parameter `R² / (τ D_T)`: the per-direction flip rate.
    pub beta: f64,
    /// Initial right-orientation fraction.
    pub eta: f64,
    /// Starting position in `[-1, 1]`.
    pub x0: f64,
}

impl ModelParams {
    /// Builds and validates a parameter set.
    pub fn new(pe: f64, beta: f64, eta: f64, x0: f64) -> Result<Self> {
        let p = Self { pe, beta, eta, x0 };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        let pe = finite("pe", self.pe)?;
        let beta = finite("beta", self.beta)?;
        let eta = finite("eta", self.eta)?;
        let x0 = finite("x0", self.x0)?;
        if pe < 0.0 {
            return Err(invalid("pe", format!("must be >= 0, got {pe}")));
        }
        if beta <= 0.0 {
            return Err(invalid("beta", format!("must be > 0, got {beta}")));
        }
        if !(0.0..=1.0).contains(&eta) {
            return Err(invalid("eta", format!("must lie in [0, 1], got {eta}")));
        }
        if !(-1.0..=1.0).contains(&x0) {
            return Err(invalid("x0", format!("must lie in [-1, 1], got {x0}")));
        }
        Ok(())
    }

    /// The mirror-image problem: `x0 → -x0`, `η → 1 - η`.
    pub fn reflected(&self) -> Self {
        Self {
            x0: -self.x0,
            eta: 1.0 - self.eta,
            ..*self
        }
    }

    /// Initial polarization weight `2η - 1`.
    pub fn polarization(&self) -> f64 {
        2.0 * self.eta - 1.0
    }
}

/// Scales lengths by `R` and times by `R²/D_T`.
pub fn nondimensionalize(p: &DimensionalParams) -> Result<ModelParams> {
    p.validate()?;
    Ok(ModelParams {
        pe: p.v_s * p.r / p.d_t,
        beta: p.r * p.r / (p.tau * p.d_t),
        eta: p.eta,
        x0: p.x0_dim / p.r,
    })
}

/// Converts a dimensionless MFPT back to physical time.
pub fn redimensionalize_mfpt(mu: f64, p: &DimensionalParams) -> Result<f64> {
    let mu = finite("mu", mu)?;
    if mu < 0.0 {
        return Err(invalid("mu", format!("must be >= 0, got {mu}")));
    }
    p.validate()?;
    Ok(mu * p.diffusive_time())
}
