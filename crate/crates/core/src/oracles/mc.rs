use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Exp1, StandardNormal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::params::ModelParams;

/// Particles simulated per RNG stream. Streams are keyed by block index,
/// so estimates do not depend on how many threads run the blocks.
pub const BLOCK_SIZE: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct McConfig {
    pub n_particles: usize,
    pub dt_mc: f64,
    pub seed: u64,
}

impl Default for McConfig {
    fn default() -> Self {
        Self {
            n_particles: 100_000,
            dt_mc: 1e-4,
            seed: 20_240_601,
        }
    }
}

impl McConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n_particles < 1 {
            return Err(invalid("n_particles", "must be >= 1"));
        }
        if !(self.dt_mc > 0.0 && self.dt_mc.is_finite()) {
            return Err(invalid("dt_mc", format!("must be > 0, got {}", self.dt_mc)));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct McEstimate {
    pub mean_fpt: f64,
    pub std_err: f64,
    pub n_escaped_left: usize,
    pub n_escaped_right: usize,
    pub config: McConfig,
    /// Rayon worker threads available when the estimate was produced.
    pub workers: usize,
}

#[derive(Default, Clone, Copy)]
struct Tally {
    sum: f64,
    sum_sq: f64,
    left: usize,
    right: usize,
}

/// Direct simulation: Euler–Maruyama position updates with drift `±Pe`,
/// orientation flips with per-step probability `1 - exp(-β dt)`, and
/// Brownian-bridge detection of wall hits between steps.
pub fn mfpt_mc(params: &ModelParams, mc: &McConfig) -> Result<McEstimate> {
    params.validate()?;
    mc.validate()?;
    let blocks = mc.n_particles.div_ceil(BLOCK_SIZE);
    let tallies: Vec<Tally> = (0..blocks)
        .into_par_iter()
        .map(|b| {
            let mut rng = ChaCha8Rng::seed_from_u64(mc.seed);
            rng.set_stream(b as u64);
            let count = BLOCK_SIZE.min(mc.n_particles - b * BLOCK_SIZE);
            let mut tally = Tally::default();
            for _ in 0..count {
                let (t, right) = first_exit(params, mc.dt_mc, &mut rng);
                tally.sum += t;
                tally.sum_sq += t * t;
                if right {
                    tally.right += 1;
                } else {
                    tally.left += 1;
                }
            }
            tally
        })
        .collect();

    // Combined in block order so the result is independent of scheduling.
    let total = tallies.iter().fold(Tally::default(), |acc, t| Tally {
        sum: acc.sum + t.sum,
        sum_sq: acc.sum_sq + t.sum_sq,
        left: acc.left + t.left,
        right: acc.right + t.right,
    });
    let n = mc.n_particles as f64;
    let mean = total.sum / n;
    let var = if mc.n_particles > 1 {
        ((total.sum_sq - n * mean * mean) / (n - 1.0)).max(0.0)
    } else {
        0.0
    };
    Ok(McEstimate {
        mean_fpt: mean,
        std_err: (var / n).sqrt(),
        n_escaped_left: total.left,
        n_escaped_right: total.right,
        config: *mc,
        workers: rayon::current_num_threads(),
    })
}

/// Steps until the next flip under per-step Bernoulli(1 - e^{-β dt}) trials:
/// geometric on {1, 2, ...}, sampled by inversion.
#[inline]
fn steps_to_flip<R: Rng>(rate_dt: f64, rng: &mut R) -> u64 {
    let e: f64 = rng.sample(Exp1);
    1 + (e / rate_dt).floor().min(u64::MAX as f64 / 2.0) as u64
}

/// Bridge hits are ignored when the crossing probability is below `e^{-BRIDGE_CUT}`.
const BRIDGE_CUT: f64 = 40.0;

/// Returns the exit time and whether the particle left through `x = +1`.
fn first_exit<R: Rng>(params: &ModelParams, dt: f64, rng: &mut R) -> (f64, bool) {
    let mut x = params.x0;
    if x >= 1.0 {
        return (0.0, true);
    }
    if x <= -1.0 {
        return (0.0, false);
    }
    let mut sigma = if rng.random::<f64>() < params.eta {
        1.0
    } else {
        -1.0
    };
    let rate_dt = params.beta * dt;
    let mut flip_in = steps_to_flip(rate_dt, rng);
    let drift = params.pe * dt;
    let sd = (2.0 * dt).sqrt();
    let cut = BRIDGE_CUT * dt;
    let mut k: u64 = 0;
    loop {
        let t = k as f64 * dt;
        let z: f64 = rng.sample(StandardNormal);
        let y = x + sigma * drift + sd * z;
        if y >= 1.0 {
            return (t + dt * (1.0 - x) / (y - x), true);
        }
        if y <= -1.0 {
            return (t + dt * (x + 1.0) / (x - y), false);
        }
        // Probability that the bridge from x to y (variance 2 dt) touched a wall.
        let gap_r = (1.0 - x) * (1.0 - y);
        let gap_l = (1.0 + x) * (1.0 + y);
        if gap_r < cut || gap_l < cut {
            let p_r = if gap_r < cut {
                (-gap_r / dt).exp()
            } else {
                0.0
            };
            let p_l = if gap_l < cut {
                (-gap_l / dt).exp()
            } else {
                0.0
            };
            let u: f64 = rng.random();
            if u < p_r {
                return (t + 0.5 * dt, true);
            }
            if u < p_r + p_l {
                return (t + 0.5 * dt, false);
            }
        }
        x = y;
        k += 1;
        flip_in -= 1;
        if flip_in == 0 {
            sigma = -sigma;
            flip_in = steps_to_flip(rate_dt, rng);
        }
    }
}
