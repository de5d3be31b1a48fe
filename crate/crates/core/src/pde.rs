//! Forward solver for the coupled density/polarization system
//!
//! ```text
//! ∂n/∂t = ∂²n/∂x² - Pe ∂f/∂x
//! ∂f/∂t = ∂²f/∂x² - Pe ∂n/∂x - 2β f
//! n(±1, t) = f(±1, t) = 0,   n(x, 0) = δ(x - x0),   f(x, 0) = (2η - 1) δ(x - x0)
//! ```
//!
//! Second-order central differences in space and a θ-scheme in time with a
//! few fully implicit start-up steps to damp the delta spike. The survival
//! probability is integrated with the same θ-weights the time-stepper uses,
//! which makes the MFPT quadrature consistent with the discrete dynamics.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::linalg::{mat_vec, BlockLu, BlockTridiag, Mat2, Vec2};
use crate::params::ModelParams;

/// Discretization controls for the forward solver.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridConfig {
    /// Interior node count; the grid has `nx + 2` nodes including both walls.
    pub nx: usize,
    pub dt: f64,
    /// Hard horizon; reaching it before the tail threshold is an error.
    pub t_max: f64,
    /// Survival level at which stepping stops and the tail is extrapolated.
    pub s_tail: f64,
    /// Implicitness: 0.5 is Crank–Nicolson, 1 is backward Euler.
    pub theta: f64,
    /// Number of initial backward-Euler steps.
    pub startup_steps: usize,
}

impl Default for GridConfig {
    fn default() -> Self {
        Self {
            nx: 401,
            dt: 2.5e-5,
            t_max: 20.0,
            s_tail: 1e-6,
            theta: 0.5,
            startup_steps: 4,
        }
    }
}

impl GridConfig {
    pub fn validate(&self) -> Result<()> {
        if self.nx < 16 {
            return Err(invalid("nx", format!("must be >= 16, got {}", self.nx)));
        }
        if !(self.dt > 0.0 && self.dt.is_finite()) {
            return Err(invalid("dt", format!("must be > 0, got {}", self.dt)));
        }
        if !(self.t_max > 0.0 && self.t_max.is_finite()) {
            return Err(invalid("t_max", format!("must be > 0, got {}", self.t_max)));
        }
        if !(self.s_tail > 0.0 && self.s_tail < 1.0) {
            return Err(invalid(
                "s_tail",
                format!("must lie in (0, 1), got {}", self.s_tail),
            ));
        }
        if !(0.5..=1.0).contains(&self.theta) {
            return Err(invalid(
                "theta",
                format!("must lie in [0.5, 1], got {}", self.theta),
            ));
        }
        Ok(())
    }

    pub fn spacing(&self) -> f64 {
        2.0 / (self.nx + 1) as f64
    }

    /// Node coordinates including both walls.
    pub fn nodes(&self) -> Vec<f64> {
        let h = self.spacing();
        let last = self.nx + 1;
        (0..=last)
            .map(|i| {
                if i == last {
                    1.0
                } else if 2 * i == last {
                    0.0
                } else {
                    -1.0 + i as f64 * h
                }
            })
            .collect()
    }
}

/// Nodal `(n, f)` at one time level. Wall values are stored and always zero.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FieldState {
    pub x_nodes: Vec<f64>,
    pub n_values: Vec<f64>,
    pub f_values: Vec<f64>,
    pub t: f64,
}

impl FieldState {
    /// Trapezoid integral of `n`, i.e. the survival probability.
    pub fn mass(&self) -> f64 {
        trapezoid(&self.x_nodes, &self.n_values)
    }

    /// Linear interpolation of `n` at `x`.
    pub fn n_at(&self, x: f64) -> f64 {
        interpolate(&self.x_nodes, &self.n_values, x)
    }

    /// Linear interpolation of `f` at `x`.
    pub fn f_at(&self, x: f64) -> f64 {
        interpolate(&self.x_nodes, &self.f_values, x)
    }
}

fn trapezoid(x: &[f64], y: &[f64]) -> f64 {
    x.windows(2)
        .zip(y.windows(2))
        .map(|(xs, ys)| 0.5 * (xs[1] - xs[0]) * (ys[0] + ys[1]))
        .sum()
}

/// Piecewise-linear interpolation on a sorted grid, clamped at the ends.
pub(crate) fn interpolate(x: &[f64], y: &[f64], at: f64) -> f64 {
    if at <= x[0] {
        return y[0];
    }
    let last = x.len() - 1;
    if at >= x[last] {
        return y[last];
    }
    let j = x
        .partition_point(|&v| v <= at)
        .saturating_sub(1)
        .min(last - 1);
    let w = (at - x[j]) / (x[j + 1] - x[j]);
    (1.0 - w) * y[j] + w * y[j + 1]
}

/// Sampled survival probability with its fitted exponential tail.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SurvivalCurve {
    pub times: Vec<f64>,
    pub values: Vec<f64>,
    /// Decay rate of `S` beyond the last sample.
    pub tail_rate: f64,
    /// `S(t) ≈ tail_amp · exp(-tail_rate · t)` beyond the last sample.
    pub tail_amp: f64,
    /// Largest step-to-step increase of `S` observed.
    pub max_increase: f64,
    /// Set when `S` increased by more than [`MONOTONE_TOL`] somewhere.
    pub under_resolved: bool,
}

/// Allowed step-to-step growth of the sampled survival probability.
pub const MONOTONE_TOL: f64 = 1e-10;

impl SurvivalCurve {
    /// `S(t)`, interpolated between samples and extrapolated along the tail.
    pub fn at(&self, t: f64) -> f64 {
        let last = *self.times.last().expect("non-empty curve");
        if t > last {
            self.tail_amp * (-self.tail_rate * t).exp()
        } else {
            interpolate(&self.times, &self.values, t)
        }
    }
}

/// First-passage statistics from one forward run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FptResult {
    pub mfpt: f64,
    /// `F = -dS/dt` at the survival sample times.
    pub fpt_density: Vec<f64>,
    /// `∫ F dt` including the tail; should be 1.
    pub mass_check: f64,
    pub survival: SurvivalCurve,
}

/// Unit-mass nodal spike at `x0`, split linearly between the two bracketing nodes.
pub fn init_delta(params: &ModelParams, grid: &GridConfig) -> Result<FieldState> {
    params.validate()?;
    grid.validate()?;
    if params.x0.abs() >= 1.0 {
        return Err(Error::Domain { x0: params.x0 });
    }
    let x_nodes = grid.nodes();
    let h = grid.spacing();
    let mut n_values = vec![0.0; x_nodes.len()];
    let pos = (params.x0 + 1.0) / h;
    let j = (pos.floor() as usize).min(grid.nx);
    let w = pos - j as f64;
    n_values[j] += (1.0 - w) / h;
    n_values[j + 1] += w / h;
    let last = x_nodes.len() - 1;
    n_values[0] = 0.0;
    n_values[last] = 0.0;
    let pol = params.polarization();
    let f_values = n_values.iter().map(|v| pol * v).collect();
    Ok(FieldState {
        x_nodes,
        n_values,
        f_values,
        t: 0.0,
    })
}

/// Spatial operator blocks `(lower, diag, upper)` acting on `(n_i, f_i)`.
fn operator_blocks(params: &ModelParams, h: f64) -> (Mat2, Mat2, Mat2) {
    let d = 1.0 / (h * h);
    let a = params.pe / (2.0 * h);
    let lower = [[d, a], [a, d]];
    let diag = [[-2.0 * d, 0.0], [0.0, -2.0 * d - 2.0 * params.beta]];
    let upper = [[d, -a], [-a, d]];
    (lower, diag, upper)
}

fn scaled_identity_plus(c: f64, blocks: &(Mat2, Mat2, Mat2)) -> (Mat2, Mat2, Mat2) {
    let s = |m: &Mat2| [[c * m[0][0], c * m[0][1]], [c * m[1][0], c * m[1][1]]];
    let (l, d, u) = blocks;
    let mut dd = s(d);
    dd[0][0] += 1.0;
    dd[1][1] += 1.0;
    (s(l), dd, s(u))
}

/// One θ-step with its factorized implicit side.
struct ThetaStep {
    theta: f64,
    explicit: (Mat2, Mat2, Mat2),
    implicit: BlockLu,
}

impl ThetaStep {
    fn new(theta: f64, dt: f64, blocks: &(Mat2, Mat2, Mat2), nx: usize) -> Result<Self> {
        let explicit = scaled_identity_plus((1.0 - theta) * dt, blocks);
        let (l, d, u) = scaled_identity_plus(-theta * dt, blocks);
        let implicit = BlockTridiag::constant(nx, l, d, u).factor()?;
        Ok(Self {
            theta,
            explicit,
            implicit,
        })
    }

    fn advance(&self, u: &mut [Vec2], scratch: &mut [Vec2]) {
        let n = u.len();
        let (l, d, up) = &self.explicit;
        if self.theta == 1.0 {
            scratch.copy_from_slice(u);
        } else {
            for i in 0..n {
                let mut v = mat_vec(d, &u[i]);
                if i > 0 {
                    let a = mat_vec(l, &u[i - 1]);
                    v[0] += a[0];
                    v[1] += a[1];
                }
                if i + 1 < n {
                    let a = mat_vec(up, &u[i + 1]);
                    v[0] += a[0];
                    v[1] += a[1];
                }
                scratch[i] = v;
            }
        }
        self.implicit.solve(scratch);
        u.copy_from_slice(scratch);
    }
}

/// A forward run that owns its state.
pub struct PdeSolver {
    grid: GridConfig,
    h: f64,
    x_nodes: Vec<f64>,
    u: Vec<Vec2>,
    scratch: Vec<Vec2>,
    t: f64,
    steps_taken: usize,
    startup: ThetaStep,
    main: ThetaStep,
}

impl PdeSolver {
    pub fn new(params: &ModelParams, grid: &GridConfig) -> Result<Self> {
        let state = init_delta(params, grid)?;
        Self::from_state(&state, params, grid)
    }

    pub fn from_state(state: &FieldState, params: &ModelParams, grid: &GridConfig) -> Result<Self> {
        params.validate()?;
        grid.validate()?;
        if state.x_nodes.len() != grid.nx + 2 {
            return Err(invalid("state", "node count does not match the grid"));
        }
        let h = grid.spacing();
        let blocks = operator_blocks(params, h);
        let u = (1..=grid.nx)
            .map(|i| [state.n_values[i], state.f_values[i]])
            .collect::<Vec<_>>();
        Ok(Self {
            grid: *grid,
            h,
            x_nodes: state.x_nodes.clone(),
            scratch: u.clone(),
            u,
            t: state.t,
            steps_taken: 0,
            startup: ThetaStep::new(1.0, grid.dt, &blocks, grid.nx)?,
            main: ThetaStep::new(grid.theta, grid.dt, &blocks, grid.nx)?,
        })
    }

    pub fn time(&self) -> f64 {
        self.t
    }

    /// Implicitness weight of the next step.
    fn next_theta(&self) -> f64 {
        if self.steps_taken < self.grid.startup_steps {
            1.0
        } else {
            self.grid.theta
        }
    }

    pub fn step(&mut self) {
        let stepper = if self.steps_taken < self.grid.startup_steps {
            &self.startup
        } else {
            &self.main
        };
        stepper.advance(&mut self.u, &mut self.scratch);
        self.steps_taken += 1;
        self.t += self.grid.dt;
    }

    /// Survival probability of the current state.
    pub fn survival(&self) -> f64 {
        self.h * self.u.iter().map(|v| v[0]).sum::<f64>()
    }

    pub fn state(&self) -> FieldState {
        let mut n_values = Vec::with_capacity(self.u.len() + 2);
        let mut f_values = Vec::with_capacity(self.u.len() + 2);
        n_values.push(0.0);
        f_values.push(0.0);
        for v in &self.u {
            n_values.push(v[0]);
            f_values.push(v[1]);
        }
        n_values.push(0.0);
        f_values.push(0.0);
        FieldState {
            x_nodes: self.x_nodes.clone(),
            n_values,
            f_values,
            t: self.t,
        }
    }

    /// Steps until `t >= t_end` (at most one step past).
    pub fn advance_to(&mut self, t_end: f64) {
        while self.t < t_end - 0.5 * self.grid.dt {
            self.step();
        }
    }

    /// Steps until the survival probability drops below `s_tail`, then fits the tail.
    pub fn run_to_tail(&mut self) -> Result<(SurvivalCurve, f64)> {
        let mut times = vec![self.t];
        let mut values = vec![self.survival()];
        let mut integral = 0.0;
        let mut max_increase = 0.0f64;
        loop {
            if self.t >= self.grid.t_max {
                return Err(Error::Horizon {
                    t_max: self.grid.t_max,
                    survival: *values.last().unwrap(),
                    s_tail: self.grid.s_tail,
                });
            }
            let theta = self.next_theta();
            self.step();
            let s = self.survival();
            if !s.is_finite() {
                return Err(Error::Numerical(format!(
                    "non-finite survival at t = {}",
                    self.t
                )));
            }
            let prev = *values.last().unwrap();
            integral += self.grid.dt * (theta * s + (1.0 - theta) * prev);
            max_increase = max_increase.max(s - prev);
            times.push(self.t);
            values.push(s);
            if s < self.grid.s_tail {
                break;
            }
        }
        let (tail_rate, tail_amp) = fit_tail(&times, &values, self.grid.s_tail)?;
        let t_last = *times.last().unwrap();
        integral += tail_amp * (-tail_rate * t_last).exp() / tail_rate;
        let curve = SurvivalCurve {
            times,
            values,
            tail_rate,
            tail_amp,
            max_increase,
            under_resolved: max_increase > MONOTONE_TOL,
        };
        Ok((curve, integral))
    }
}

/// Least-squares fit of `ln S = ln A - r t` over the final decade of samples.
fn fit_tail(times: &[f64], values: &[f64], s_tail: f64) -> Result<(f64, f64)> {
    let start = values
        .iter()
        .rposition(|&s| s > 10.0 * s_tail)
        .map_or(0, |i| i + 1)
        .min(values.len().saturating_sub(2));
    let ts = &times[start..];
    let ls: Vec<f64> = values[start..].iter().map(|s| s.ln()).collect();
    let n = ts.len() as f64;
    let mt = ts.iter().sum::<f64>() / n;
    let ml = ls.iter().sum::<f64>() / n;
    let sxy: f64 = ts.iter().zip(&ls).map(|(t, l)| (t - mt) * (l - ml)).sum();
    let sxx: f64 = ts.iter().map(|t| (t - mt) * (t - mt)).sum();
    let rate = -sxy / sxx;
    if !(rate > 0.0 && rate.is_finite()) {
        return Err(Error::Numerical(format!(
            "tail fit produced a non-decaying rate {rate} over {} samples",
            ts.len()
        )));
    }
    let amp = (ml + rate * mt).exp();
    Ok((rate, amp))
}

/// Advances a state by one θ-step. Convenience wrapper; [`PdeSolver`] reuses
/// its factorization across steps.
pub fn step(state: &FieldState, params: &ModelParams, grid: &GridConfig) -> Result<FieldState> {
    let mut solver = PdeSolver::from_state(state, params, grid)?;
    solver.steps_taken = grid.startup_steps;
    solver.step();
    Ok(solver.state())
}

/// Survival curve of a full forward run.
pub fn survival(params: &ModelParams, grid: &GridConfig) -> Result<SurvivalCurve> {
    Ok(PdeSolver::new(params, grid)?.run_to_tail()?.0)
}

/// MFPT and first-passage density from a full forward run.
pub fn mfpt_pde(params: &ModelParams, grid: &GridConfig) -> Result<FptResult> {
    let mut solver = PdeSolver::new(params, grid)?;
    let (curve, mfpt) = solver.run_to_tail()?;
    let fpt_density = differentiate(&curve.times, &curve.values);
    let t = &curve.times;
    let mut mass_check: f64 = t
        .windows(2)
        .zip(fpt_density.windows(2))
        .map(|(ts, fs)| 0.5 * (ts[1] - ts[0]) * (fs[0] + fs[1]))
        .sum();
    let t_last = *t.last().unwrap();
    mass_check += curve.tail_amp * (-curve.tail_rate * t_last).exp();
    Ok(FptResult {
        mfpt,
        fpt_density,
        mass_check,
        survival: curve,
    })
}

/// `-dS/dt`: central differences inside, one-sided at the ends.
fn differentiate(t: &[f64], s: &[f64]) -> Vec<f64> {
    let n = t.len();
    (0..n)
        .map(|i| {
            let (a, b) = match i {
                0 => (0, 1.min(n - 1)),
                _ if i == n - 1 => (n - 2, n - 1),
                _ => (i - 1, i + 1),
            };
            if a == b {
                0.0
            } else {
                -(s[b] - s[a]) / (t[b] - t[a])
            }
        })
        .collect()
}
