//! Eigenfunction series for the weak-swimming expansion.
//!
//! Densities are expanded in the Dirichlet eigenfunctions of `[-1, 1]`:
//! even modes `cos(λ₁ₙ x)` with `λ₁ₙ = (2n+1)π/2` and odd modes
//! `sin(λ₂ₙ x)` with `λ₂ₙ = nπ`. Swimming couples the two families through
//! the overlap coefficients `A(m,n)` and `B(m,n)`.

mod fields;
mod mfpt;
mod survival;

pub use fields::{field_f0, field_f1, field_n0, field_n1, field_n2};
pub use mfpt::{mfpt_series, mu0, mu1, mu2, SeriesMfpt};
pub use survival::{
    survival_s0, survival_s1, survival_s2, survival_series, t_min_reliable, SeriesOrder,
};

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::summation::SummationMode;

/// Truncation and accumulation controls shared by every series.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeriesConfig {
    /// Number of terms kept in each summation index.
    pub n_terms: usize,
    /// Rate gap below which two decay rates are treated as coincident.
    pub resonance_eps: f64,
    pub summation: SummationMode,
}

impl Default for SeriesConfig {
    fn default() -> Self {
        Self {
            n_terms: 100,
            resonance_eps: 1e-9,
            summation: SummationMode::Compensated,
        }
    }
}

impl SeriesConfig {
    pub fn with_terms(n_terms: usize) -> Self {
        Self {
            n_terms,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_terms < 1 {
            return Err(invalid("n_terms", "must be >= 1"));
        }
        if !(self.resonance_eps > 0.0 && self.resonance_eps.is_finite()) {
            return Err(invalid(
                "resonance_eps",
                format!(
                    "must be a positive finite number, got {}",
                    self.resonance_eps
                ),
            ));
        }
        Ok(())
    }
}

/// Dirichlet eigenvalues of `-d²/dx²` on `[-1, 1]` and their `2β`-shifted squares.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Eigenvalues {
    pub beta: f64,
}

impl Eigenvalues {
    pub fn new(beta: f64) -> Self {
        Self { beta }
    }

    /// Even-mode wavenumber `(2n+1)π/2`.
    #[inline]
    pub fn lambda1(n: usize) -> f64 {
        (2 * n + 1) as f64 * PI / 2.0
    }

    /// Odd-mode wavenumber `nπ`.
    #[inline]
    pub fn lambda2(n: usize) -> f64 {
        n as f64 * PI
    }

    #[inline]
    pub fn chi1_sq(&self, n: usize) -> f64 {
        let l = Self::lambda1(n);
        l * l + 2.0 * self.beta
    }

    #[inline]
    pub fn chi2_sq(&self, n: usize) -> f64 {
        let l = Self::lambda2(n);
        l * l + 2.0 * self.beta
    }
}

#[inline]
pub(crate) fn sign(n: usize) -> f64 {
    if n.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

/// `(π/2) ∫ cos(λ₂ₘ x) cos(λ₁ₙ x) dx` over `[-1, 1]`, in closed form.
pub fn coeff_a(m: usize, n: usize) -> f64 {
    let (m, n) = (m as i64, n as i64);
    let s = |k: i64| if k.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
    s(m + n) / (1 + 2 * (m + n)) as f64 + s(m - n) / (1 - 2 * (m - n)) as f64
}

/// `(π/2) ∫ sin(λ₁ₘ x) sin(λ₂ₙ x) dx` over `[-1, 1]`, in closed form.
pub fn coeff_b(m: usize, n: usize) -> f64 {
    let (m, n) = (m as i64, n as i64);
    let s = |k: i64| if k.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
    -s(m + n) / (1 + 2 * (m + n)) as f64 + s(m - n) / (1 + 2 * (m - n)) as f64
}

/// Precomputed `A(m,n)` and `B(m,n)` for `0 <= m, n < size`.
#[derive(Debug, Clone)]
pub struct CouplingCoefficients {
    size: usize,
    a: Vec<f64>,
    b: Vec<f64>,
}

impl CouplingCoefficients {
    pub fn new(size: usize) -> Self {
        let mut a = Vec::with_capacity(size * size);
        let mut b = Vec::with_capacity(size * size);
        for m in 0..size {
            for n in 0..size {
                a.push(coeff_a(m, n));
                b.push(coeff_b(m, n));
            }
        }
        Self { size, a, b }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn a(&self, m: usize, n: usize) -> f64 {
        self.a[m * self.size + n]
    }

    #[inline]
    pub fn b(&self, m: usize, n: usize) -> f64 {
        self.b[m * self.size + n]
    }
}

/// Everything a series evaluation needs for one `(β, n_terms)` pair:
/// eigenvalue vectors and coefficient tables. Immutable once built.
#[derive(Debug, Clone)]
pub(crate) struct Spectrum {
    pub n: usize,
    pub lambda1: Vec<f64>,
    pub lambda2: Vec<f64>,
    /// `λ₁ₙ²`
    pub rate1: Vec<f64>,
    /// `λ₂ₙ²`
    pub rate2: Vec<f64>,
    pub chi1_sq: Vec<f64>,
    pub chi2_sq: Vec<f64>,
    pub coeffs: CouplingCoefficients,
}

impl Spectrum {
    pub fn new(n_terms: usize, beta: f64) -> Self {
        let ev = Eigenvalues::new(beta);
        let lambda1: Vec<f64> = (0..n_terms).map(Eigenvalues::lambda1).collect();
        let lambda2: Vec<f64> = (0..n_terms).map(Eigenvalues::lambda2).collect();
        Self {
            n: n_terms,
            rate1: lambda1.iter().map(|l| l * l).collect(),
            rate2: lambda2.iter().map(|l| l * l).collect(),
            chi1_sq: (0..n_terms).map(|n| ev.chi1_sq(n)).collect(),
            chi2_sq: (0..n_terms).map(|n| ev.chi2_sq(n)).collect(),
            lambda1,
            lambda2,
            coeffs: CouplingCoefficients::new(n_terms),
        }
    }
}

/// `out_n = Σ_m mid_w(m, n) Σ_k inner_w(k, m) relax2(r_k, c_m, r_n; t)` where the
/// innermost and outermost rates are drawn from the same set `r`.
///
/// The second divided difference over `{r_k, c_m, r_n}` with `k ≠ n` splits
/// into first differences `(R(k,m) - R(n,m)) / (r_n - r_k)`, `R = relax1(r, c)`,
/// so only `O(N²)` exponentials are evaluated per call.
pub(crate) fn nested_response(
    rates: &[f64],
    mid_rates: &[f64],
    mid_w: impl Fn(usize, usize) -> f64,
    inner_w: impl Fn(usize, usize) -> f64,
    t: f64,
    cfg: &SeriesConfig,
) -> Vec<f64> {
    use crate::expdiff::{relax1, relax2};
    use crate::summation::Accumulator;

    let n = rates.len();
    let eps = cfg.resonance_eps;
    // r1[m * n + j] = relax1(r_j, c_m)
    let mut r1 = vec![0.0; n * n];
    // w[m * n + k] = inner_w(k, m)
    let mut w = vec![0.0; n * n];
    for m in 0..n {
        for j in 0..n {
            r1[m * n + j] = relax1(rates[j], mid_rates[m], t, eps);
            w[m * n + j] = inner_w(j, m);
        }
    }
    let mut out = vec![0.0; n];
    let mut inv_gap = vec![0.0; n];
    for (i, o) in out.iter_mut().enumerate() {
        for (k, g) in inv_gap.iter_mut().enumerate() {
            *g = if k == i {
                0.0
            } else {
                1.0 / (rates[i] - rates[k])
            };
        }
        let mut outer = Accumulator::new(cfg.summation);
        for m in 0..n {
            let mw = mid_w(m, i);
            if mw == 0.0 {
                continue;
            }
            let row_r = &r1[m * n..(m + 1) * n];
            let row_w = &w[m * n..(m + 1) * n];
            let r_i = row_r[i];
            let mut inner = Accumulator::new(cfg.summation);
            for k in 0..n {
                let g = if k == i {
                    relax2(rates[i], mid_rates[m], rates[i], t, eps)
                } else {
                    (row_r[k] - r_i) * inv_gap[k]
                };
                inner.add(row_w[k] * g);
            }
            outer.add(mw * inner.value());
        }
        *o = outer.value();
    }
    out
}
