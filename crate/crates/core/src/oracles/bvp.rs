use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::linalg::BlockTridiag;
use crate::params::ModelParams;
use crate::pde::interpolate;

/// Mean exit times `T₊(x)`, `T₋(x)` for a particle starting at `x` oriented
/// right or left. Solves
///
/// ```text
/// T₊'' + Pe T₊' + β (T₋ - T₊) = -1
/// T₋'' - Pe T₋' + β (T₊ - T₋) = -1
/// T±(±1) = 0
/// ```
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BvpSolution {
    /// Grid including both walls.
    pub x_nodes: Vec<f64>,
    pub t_plus: Vec<f64>,
    pub t_minus: Vec<f64>,
}

impl BvpSolution {
    /// `η T₊(x0) + (1 - η) T₋(x0)` with linear interpolation between nodes.
    pub fn mfpt(&self, x0: f64, eta: f64) -> f64 {
        let tp = interpolate(&self.x_nodes, &self.t_plus, x0);
        let tm = interpolate(&self.x_nodes, &self.t_minus, x0);
        eta * tp + (1.0 - eta) * tm
    }

    pub fn spacing(&self) -> f64 {
        self.x_nodes[1] - self.x_nodes[0]
    }
}

/// Central-difference solve of the backward system on `nx` interior nodes.
pub fn mfpt_bvp(params: &ModelParams, nx: usize) -> Result<BvpSolution> {
    params.validate()?;
    if nx < 16 {
        return Err(invalid("nx", format!("must be >= 16, got {nx}")));
    }
    let h = 2.0 / (nx + 1) as f64;
    let d = 1.0 / (h * h);
    let a = params.pe / (2.0 * h);
    let beta = params.beta;
    let system = BlockTridiag::constant(
        nx,
        [[d - a, 0.0], [0.0, d + a]],
        [[-2.0 * d - beta, beta], [beta, -2.0 * d - beta]],
        [[d + a, 0.0], [0.0, d - a]],
    );
    let mut rhs = vec![[-1.0, -1.0]; nx];
    system.factor()?.solve(&mut rhs);

    let last = nx + 1;
    let x_nodes = (0..=last)
        .map(|i| {
            if i == last {
                1.0
            } else if 2 * i == last {
                0.0
            } else {
                -1.0 + i as f64 * h
            }
        })
        .collect();
    let mut t_plus = Vec::with_capacity(nx + 2);
    let mut t_minus = Vec::with_capacity(nx + 2);
    t_plus.push(0.0);
    t_minus.push(0.0);
    for v in rhs {
        t_plus.push(v[0]);
        t_minus.push(v[1]);
    }
    t_plus.push(0.0);
    t_minus.push(0.0);
    Ok(BvpSolution {
        x_nodes,
        t_plus,
        t_minus,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn passive_limit_is_parabola() {
        for beta in [0.1, 1.0, 10.0] {
            let p = ModelParams::new(0.0, beta, 0.5, 0.0).unwrap();
            let s = mfpt_bvp(&p, 63).unwrap();
            for (i, &x) in s.x_nodes.iter().enumerate() {
                let exact = (1.0 - x * x) / 2.0;
                assert!((s.t_plus[i] - exact).abs() < 1e-11);
                assert!((s.t_minus[i] - exact).abs() < 1e-11);
            }
        }
    }

    #[test]
    fn orientation_reflection() {
        let p = ModelParams::new(0.8, 2.0, 1.0, 0.0).unwrap();
        let s = mfpt_bvp(&p, 201).unwrap();
        let last = s.x_nodes.len() - 1;
        for i in 0..=last {
            assert!((s.t_plus[i] - s.t_minus[last - i]).abs() < 1e-12);
            assert!(s.t_plus[i] >= 0.0 && s.t_minus[i] >= 0.0);
        }
        assert_eq!(s.t_plus[0], 0.0);
        assert_eq!(s.t_minus[last], 0.0);
    }

    #[test]
    fn swimming_toward_the_near_wall_helps() {
        let p = ModelParams::new(0.5, 1.0, 1.0, 0.5).unwrap();
        let s = mfpt_bvp(&p, 399).unwrap();
        assert!(s.mfpt(0.5, 1.0) < 0.375);
    }

    #[test]
    fn mixture_is_affine_in_eta() {
        let p = ModelParams::new(0.6, 1.0, 0.5, 0.3).unwrap();
        let s = mfpt_bvp(&p, 199).unwrap();
        let slope = s.mfpt(0.3, 1.0) - s.mfpt(0.3, 0.0);
        for eta in [0.1, 0.4, 0.9] {
            let lin = s.mfpt(0.3, 0.0) + eta * slope;
            assert!((s.mfpt(0.3, eta) - lin).abs() < 1e-14);
        }
    }

    #[test]
    fn rejects_tiny_grid() {
        let p = ModelParams::new(0.6, 1.0, 0.5, 0.3).unwrap();
        assert!(mfpt_bvp(&p, 8).is_err());
    }
}
