use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::{sign, Eigenvalues, SeriesConfig, Spectrum};
use crate::error::Result;
use crate::params::ModelParams;
use crate::summation::Accumulator;

/// The three coefficients of the small-Pe MFPT expansion
/// `μ ≈ μ₀ + Pe μ₁ + Pe² μ₂`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeriesMfpt {
    pub mu0: f64,
    pub mu1: f64,
    pub mu2: f64,
    pub params: ModelParams,
    pub config: SeriesConfig,
}

impl SeriesMfpt {
    /// `μ₀ + Pe μ₁`
    pub fn two_term(&self) -> f64 {
        self.mu0 + self.params.pe * self.mu1
    }

    /// `μ₀ + Pe μ₁ + Pe² μ₂`
    pub fn three_term(&self) -> f64 {
        let pe = self.params.pe;
        self.mu0 + pe * self.mu1 + pe * pe * self.mu2
    }
}

/// Passive Brownian MFPT as an even-mode series.
pub fn mu0(x0: f64, cfg: &SeriesConfig) -> f64 {
    let mut acc = Accumulator::new(cfg.summation);
    for n in 0..cfg.n_terms {
        let l = Eigenvalues::lambda1(n);
        acc.add(2.0 * sign(n) / (l * l * l) * (l * x0).cos());
    }
    acc.value()
}

/// First-order swimming correction. Vanishes identically for `η = 1/2` or `x0 = 0`.
pub fn mu1(params: &ModelParams, cfg: &SeriesConfig) -> f64 {
    let sp = Spectrum::new(cfg.n_terms, params.beta);
    mu1_with(&sp, params, cfg)
}

pub(crate) fn mu1_with(sp: &Spectrum, params: &ModelParams, cfg: &SeriesConfig) -> f64 {
    let bias = 1.0 - 2.0 * params.eta;
    let two_beta = 2.0 * params.beta;
    // m-dependent factor 2m (1-2η) sin(λ₂ₘ x0) / (2β + λ₂ₘ²); zero at m = 0
    let weight: Vec<f64> = (0..sp.n)
        .map(|m| {
            2.0 * m as f64 * bias * (sp.lambda2[m] * params.x0).sin() / (two_beta + sp.rate2[m])
        })
        .collect();
    let mut outer = Accumulator::new(cfg.summation);
    for n in 0..sp.n {
        let mut inner = Accumulator::new(cfg.summation);
        for (m, w) in weight.iter().enumerate() {
            inner.add(w * sp.coeffs.a(m, n));
        }
        let l = sp.lambda1[n];
        outer.add(2.0 * sign(n) / (l * l * l) * inner.value());
    }
    outer.value()
}

/// Second-order swimming correction; even in `x0` and independent of `η`.
///
/// The triple sum factorizes, so it is evaluated in `O(N²)`: innermost
/// index `k` first, then `m`, then `n`.
pub fn mu2(x0: f64, beta: f64, cfg: &SeriesConfig) -> f64 {
    let sp = Spectrum::new(cfg.n_terms, beta);
    mu2_with(&sp, x0, cfg)
}

pub(crate) fn mu2_with(sp: &Spectrum, x0: f64, cfg: &SeriesConfig) -> f64 {
    let n = sp.n;
    let cos_term: Vec<f64> = (0..n)
        .map(|k| (sp.lambda1[k] * x0).cos() / sp.lambda1[k])
        .collect();
    // v_m = Σ_k B(k,m) cos(λ₁ₖ x0) / λ₁ₖ, pre-weighted by λ₂ₘ / χ₂ₘ²
    let v: Vec<f64> = (0..n)
        .map(|m| {
            let mut acc = Accumulator::new(cfg.summation);
            for (k, c) in cos_term.iter().enumerate() {
                acc.add(sp.coeffs.b(k, m) * c);
            }
            sp.lambda2[m] / sp.chi2_sq[m] * acc.value()
        })
        .collect();
    let mut outer = Accumulator::new(cfg.summation);
    for j in 0..n {
        let mut acc = Accumulator::new(cfg.summation);
        for (m, vm) in v.iter().enumerate() {
            acc.add(sp.coeffs.a(m, j) * vm);
        }
        let l = sp.lambda1[j];
        outer.add(-sign(j) / (l * l * l) * acc.value());
    }
    8.0 / (PI * PI) * outer.value()
}

/// Assembles all three MFPT coefficients.
pub fn mfpt_series(params: &ModelParams, cfg: &SeriesConfig) -> Result<SeriesMfpt> {
    params.validate()?;
    cfg.validate()?;
    let sp = Spectrum::new(cfg.n_terms, params.beta);
    Ok(SeriesMfpt {
        mu0: mu0(params.x0, cfg),
        mu1: mu1_with(&sp, params, cfg),
        mu2: mu2_with(&sp, params.x0, cfg),
        params: *params,
        config: *cfg,
    })
}
