use std::f64::consts::PI;

use log::warn;
use serde::{Deserialize, Serialize};

use super::{nested_response, sign, Eigenvalues, SeriesConfig, Spectrum};
use crate::expdiff::relax1;
use crate::params::ModelParams;
use crate::summation::Accumulator;

/// Truncation order of the assembled survival probability.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SeriesOrder {
    /// `S₀`
    Leading,
    /// `S₀ + Pe S₁`
    TwoTerm,
    /// `S₀ + Pe S₁ + Pe² S₂`
    ThreeTerm,
}

/// Smallest time at which the truncated even-mode series is resolved to
/// double precision: the first dropped mode has decayed by `e^{-36}`.
pub fn t_min_reliable(cfg: &SeriesConfig) -> f64 {
    let l = Eigenvalues::lambda1(cfg.n_terms);
    36.0 / (l * l)
}

fn check_time(t: f64, cfg: &SeriesConfig) {
    if t < t_min_reliable(cfg) {
        warn!(
            "survival series evaluated at t = {t:e} below the reliable limit {:e} for {} terms; \
             expect Gibbs truncation error",
            t_min_reliable(cfg),
            cfg.n_terms
        );
    }
}

/// Passive survival probability.
pub fn survival_s0(t: f64, x0: f64, cfg: &SeriesConfig) -> f64 {
    check_time(t, cfg);
    let mut acc = Accumulator::new(cfg.summation);
    for n in 0..cfg.n_terms {
        let l = Eigenvalues::lambda1(n);
        acc.add(2.0 * sign(n) / l * (l * x0).cos() * (-l * l * t).exp());
    }
    acc.value()
}

/// `O(Pe)` survival correction.
pub fn survival_s1(t: f64, params: &ModelParams, cfg: &SeriesConfig) -> f64 {
    check_time(t, cfg);
    let sp = Spectrum::new(cfg.n_terms, params.beta);
    s1_with(&sp, t, params, cfg)
}

pub(crate) fn s1_with(sp: &Spectrum, t: f64, params: &ModelParams, cfg: &SeriesConfig) -> f64 {
    let bias = 1.0 - 2.0 * params.eta;
    let weight: Vec<f64> = (0..sp.n)
        .map(|m| 2.0 * m as f64 * bias * (sp.lambda2[m] * params.x0).sin())
        .collect();
    let mut outer = Accumulator::new(cfg.summation);
    for n in 0..sp.n {
        let mut inner = Accumulator::new(cfg.summation);
        for (m, w) in weight.iter().enumerate() {
            if *w == 0.0 {
                continue;
            }
            inner.add(
                w * sp.coeffs.a(m, n) * relax1(sp.chi2_sq[m], sp.rate1[n], t, cfg.resonance_eps),
            );
        }
        outer.add(2.0 * sign(n) / sp.lambda1[n] * inner.value());
    }
    outer.value()
}

/// `O(Pe²)` survival correction; even in `x0`, independent of `η`.
pub fn survival_s2(t: f64, x0: f64, beta: f64, cfg: &SeriesConfig) -> f64 {
    check_time(t, cfg);
    let sp = Spectrum::new(cfg.n_terms, beta);
    s2_with(&sp, t, x0, cfg)
}

/// Even-mode amplitudes `g_n(t)` of the second-order density.
pub(crate) fn g_amplitudes(sp: &Spectrum, t: f64, x0: f64, cfg: &SeriesConfig) -> Vec<f64> {
    let cos_w: Vec<f64> = (0..sp.n)
        .map(|k| sp.lambda1[k] * (sp.lambda1[k] * x0).cos())
        .collect();
    let raw = nested_response(
        &sp.rate1,
        &sp.chi2_sq,
        |m, n| sp.lambda2[m] * sp.coeffs.a(m, n),
        |k, m| cos_w[k] * sp.coeffs.b(k, m),
        t,
        cfg,
    );
    raw.into_iter().map(|v| -4.0 / (PI * PI) * v).collect()
}

pub(crate) fn s2_with(sp: &Spectrum, t: f64, x0: f64, cfg: &SeriesConfig) -> f64 {
    let g = g_amplitudes(sp, t, x0, cfg);
    let mut acc = Accumulator::new(cfg.summation);
    for (n, gn) in g.iter().enumerate() {
        acc.add(2.0 * sign(n) / sp.lambda1[n] * gn);
    }
    acc.value()
}

/// Assembled small-Pe survival probability to the requested order.
pub fn survival_series(
    t: f64,
    params: &ModelParams,
    cfg: &SeriesConfig,
    order: SeriesOrder,
) -> f64 {
    let mut s = survival_s0(t, params.x0, cfg);
    if order == SeriesOrder::Leading || params.pe == 0.0 {
        return s;
    }
    let sp = Spectrum::new(cfg.n_terms, params.beta);
    s += params.pe * s1_with(&sp, t, params, cfg);
    if order == SeriesOrder::ThreeTerm {
        s += params.pe * params.pe * s2_with(&sp, t, params.x0, cfg);
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s0_partition_of_unity_at_t0() {
        let cfg = SeriesConfig::with_terms(10_000);
        assert!((survival_s0(0.0, 0.0, &cfg) - 1.0).abs() < 1e-3);
    }

    #[test]
    fn s0_single_mode_dominates_late() {
        let cfg = SeriesConfig::default();
        for x0 in [0.0, 0.3, -0.6] {
            let t = 2.0;
            let lead = 4.0 / PI * (PI * x0 / 2.0).cos() * (-PI * PI * t / 4.0).exp();
            let s = survival_s0(t, x0, &cfg);
            assert!((s / lead - 1.0).abs() < 1e-8, "x0 = {x0}");
        }
    }

    #[test]
    fn s0_truncation_tail_negligible() {
        let t = 0.01;
        let a = survival_s0(t, 0.2, &SeriesConfig::default());
        let b = survival_s0(t, 0.2, &SeriesConfig::with_terms(400));
        assert!((a - b).abs() < 1e-12);
    }

    #[test]
    fn s1_vanishing_cases() {
        let cfg = SeriesConfig::default();
        let p = ModelParams::new(0.4, 1.0, 0.5, 0.5).unwrap();
        for t in [0.01, 0.1, 1.0] {
            assert_eq!(survival_s1(t, &p, &cfg), 0.0);
        }
        let q = ModelParams::new(0.4, 1.0, 1.0, 0.5).unwrap();
        assert_eq!(survival_s1(0.0, &q, &cfg), 0.0);
        assert!(survival_s1(0.1, &q, &cfg) < 0.0);
    }

    #[test]
    fn s2_vanishes_at_zero_and_is_even() {
        let cfg = SeriesConfig::with_terms(40);
        assert_eq!(survival_s2(0.0, 0.3, 1.0, &cfg), 0.0);
        for t in [0.05, 0.3] {
            let a = survival_s2(t, 0.4, 1.0, &cfg);
            let b = survival_s2(t, -0.4, 1.0, &cfg);
            assert!((a - b).abs() <= 1e-15 * a.abs().max(1e-300) * 10.0);
        }
    }

    #[test]
    fn s2_matches_direct_triple_sum() {
        use crate::expdiff::relax2;
        let cfg = SeriesConfig::with_terms(25);
        let (t, x0, beta) = (0.07, 0.35, 1.3);
        let sp = Spectrum::new(cfg.n_terms, beta);
        let mut direct = 0.0;
        for n in 0..cfg.n_terms {
            for m in 0..cfg.n_terms {
                for k in 0..cfg.n_terms {
                    direct += -8.0 / (PI * PI) * sign(n) / sp.lambda1[n]
                        * sp.lambda2[m]
                        * sp.coeffs.a(m, n)
                        * sp.lambda1[k]
                        * sp.coeffs.b(k, m)
                        * (sp.lambda1[k] * x0).cos()
                        * relax2(sp.rate1[k], sp.chi2_sq[m], sp.rate1[n], t, 1e-9);
                }
            }
        }
        let v = survival_s2(t, x0, beta, &cfg);
        assert!((v - direct).abs() < 1e-13, "{v} vs {direct}");
    }

    #[test]
    fn resonant_beta_is_finite_and_continuous() {
        // 2β + λ₂,₁² = λ₁,₁²  ⇒  β = (9π²/4 - π²)/2
        let beta_res = (9.0 * PI * PI / 4.0 - PI * PI) / 2.0;
        let cfg = SeriesConfig::with_terms(30);
        let at = |beta: f64| {
            let p = ModelParams::new(0.3, beta, 1.0, 0.4).unwrap();
            (
                survival_s1(0.1, &p, &cfg),
                survival_s2(0.1, 0.4, beta, &cfg),
            )
        };
        let (s1, s2) = at(beta_res);
        assert!(s1.is_finite() && s2.is_finite());
        let (s1b, s2b) = at(beta_res * (1.0 + 1e-7));
        assert!((s1 - s1b).abs() < 1e-6);
        assert!((s2 - s2b).abs() < 1e-6);
    }

    #[test]
    fn passive_total_is_s0() {
        let cfg = SeriesConfig::default();
        let p = ModelParams::new(0.0, 1.0, 1.0, 0.3).unwrap();
        assert_eq!(
            survival_series(0.2, &p, &cfg, SeriesOrder::ThreeTerm),
            survival_s0(0.2, 0.3, &cfg)
        );
    }
}
