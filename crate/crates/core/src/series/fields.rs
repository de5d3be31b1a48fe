//! Pointwise evaluators of the expansion densities `n₀, f₀, n₁, f₁, n₂`.
//!
//! Each field is `Σ_n [cos(λ₁ₙ x) a_n(t) + sin(λ₂ₙ x) b_n(t)]` with mode
//! amplitudes built from [`relax1`]/[`relax2`](crate::expdiff::relax2)
//! responses. Used for cross-validation against the PDE solver, so the
//! amplitudes are recomputed on every call.

use std::f64::consts::PI;

use super::survival::g_amplitudes;
use super::{nested_response, SeriesConfig, Spectrum};
use crate::expdiff::relax1;
use crate::params::ModelParams;
use crate::summation::{sum_with, Accumulator};

fn assemble(sp: &Spectrum, x: f64, even: &[f64], odd: &[f64], cfg: &SeriesConfig) -> f64 {
    sum_with(
        cfg.summation,
        (0..sp.n).map(|n| (sp.lambda1[n] * x).cos() * even[n] + (sp.lambda2[n] * x).sin() * odd[n]),
    )
}

fn free_modes(
    sp: &Spectrum,
    x0: f64,
    even_rate: &[f64],
    odd_rate: &[f64],
    t: f64,
) -> (Vec<f64>, Vec<f64>) {
    let even = (0..sp.n)
        .map(|n| (sp.lambda1[n] * x0).cos() * (-even_rate[n] * t).exp())
        .collect();
    let odd = (0..sp.n)
        .map(|n| (sp.lambda2[n] * x0).sin() * (-odd_rate[n] * t).exp())
        .collect();
    (even, odd)
}

/// Leading-order density: the passive Green's function.
pub fn field_n0(x: f64, t: f64, x0: f64, cfg: &SeriesConfig) -> f64 {
    let sp = Spectrum::new(cfg.n_terms, 1.0);
    let (even, odd) = free_modes(&sp, x0, &sp.rate1, &sp.rate2, t);
    assemble(&sp, x, &even, &odd, cfg)
}

/// Leading-order polarization; zero when `η = 1/2`.
pub fn field_f0(x: f64, t: f64, params: &ModelParams, cfg: &SeriesConfig) -> f64 {
    let sp = Spectrum::new(cfg.n_terms, params.beta);
    let (even, odd) = free_modes(&sp, params.x0, &sp.chi1_sq, &sp.chi2_sq, t);
    params.polarization() * assemble(&sp, x, &even, &odd, cfg)
}

/// Sums `Σ_m weight(m) · coupling(m, n) · relax1(forcing_rate_m, own_rate_n)` for every `n`.
fn forced_modes(
    n_modes: usize,
    weight: &[f64],
    coupling: impl Fn(usize, usize) -> f64,
    forcing_rate: &[f64],
    own_rate: &[f64],
    t: f64,
    cfg: &SeriesConfig,
) -> Vec<f64> {
    (0..n_modes)
        .map(|n| {
            let mut acc = Accumulator::new(cfg.summation);
            for (m, w) in weight.iter().enumerate() {
                if *w != 0.0 {
                    acc.add(
                        w * coupling(m, n)
                            * relax1(forcing_rate[m], own_rate[n], t, cfg.resonance_eps),
                    );
                }
            }
            acc.value()
        })
        .collect()
}

/// First-order density correction, driven by `-∂f₀/∂x`.
pub fn field_n1(x: f64, t: f64, params: &ModelParams, cfg: &SeriesConfig) -> f64 {
    let sp = Spectrum::new(cfg.n_terms, params.beta);
    let pol = params.polarization();
    let x0 = params.x0;
    // -∂ₓ of the odd part of f₀ projects onto cos(λ₁ₙ x) with weight -2m A(m,n);
    // -∂ₓ of the even part projects onto sin(λ₂ₙ x) with weight +(2m+1) B(m,n).
    let w_even: Vec<f64> = (0..sp.n)
        .map(|m| -pol * 2.0 * m as f64 * (sp.lambda2[m] * x0).sin())
        .collect();
    let w_odd: Vec<f64> = (0..sp.n)
        .map(|m| pol * (2 * m + 1) as f64 * (sp.lambda1[m] * x0).cos())
        .collect();
    let p = forced_modes(
        sp.n,
        &w_even,
        |m, n| sp.coeffs.a(m, n),
        &sp.chi2_sq,
        &sp.rate1,
        t,
        cfg,
    );
    let q = forced_modes(
        sp.n,
        &w_odd,
        |m, n| sp.coeffs.b(m, n),
        &sp.chi1_sq,
        &sp.rate2,
        t,
        cfg,
    );
    assemble(&sp, x, &p, &q, cfg)
}

/// First-order polarization correction, driven by `-∂n₀/∂x`; independent of `η`.
pub fn field_f1(x: f64, t: f64, params: &ModelParams, cfg: &SeriesConfig) -> f64 {
    let sp = Spectrum::new(cfg.n_terms, params.beta);
    let x0 = params.x0;
    let w_even: Vec<f64> = (0..sp.n)
        .map(|m| -2.0 / PI * sp.lambda2[m] * (sp.lambda2[m] * x0).sin())
        .collect();
    let w_odd: Vec<f64> = (0..sp.n)
        .map(|m| 2.0 / PI * sp.lambda1[m] * (sp.lambda1[m] * x0).cos())
        .collect();
    let u = forced_modes(
        sp.n,
        &w_even,
        |m, n| sp.coeffs.a(m, n),
        &sp.rate2,
        &sp.chi1_sq,
        t,
        cfg,
    );
    let w = forced_modes(
        sp.n,
        &w_odd,
        |m, n| sp.coeffs.b(m, n),
        &sp.rate1,
        &sp.chi2_sq,
        t,
        cfg,
    );
    assemble(&sp, x, &u, &w, cfg)
}

/// Second-order density correction, driven by `-∂f₁/∂x`; independent of `η`.
pub fn field_n2(x: f64, t: f64, params: &ModelParams, cfg: &SeriesConfig) -> f64 {
    let sp = Spectrum::new(cfg.n_terms, params.beta);
    let x0 = params.x0;
    let g = g_amplitudes(&sp, t, x0, cfg);
    let sin_w: Vec<f64> = (0..sp.n)
        .map(|k| sp.lambda2[k] * (sp.lambda2[k] * x0).sin())
        .collect();
    let h: Vec<f64> = nested_response(
        &sp.rate2,
        &sp.chi1_sq,
        |m, n| sp.lambda1[m] * sp.coeffs.b(m, n),
        |k, m| sin_w[k] * sp.coeffs.a(k, m),
        t,
        cfg,
    )
    .into_iter()
    .map(|v| -4.0 / (PI * PI) * v)
    .collect();
    assemble(&sp, x, &g, &h, cfg)
}
