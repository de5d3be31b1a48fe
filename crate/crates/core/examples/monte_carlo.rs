//! Particle-simulation estimate of the MFPT, checked against the backward equations.
//!
//! cargo run --release --example monte_carlo -- [particles]

use abp_mfpt::{mfpt_bvp, mfpt_mc, McConfig, ModelParams};

fn main() -> abp_mfpt::Result<()> {
    let n = std::env::args()
        .nth(1)
        .and_then(|a| a.parse().ok())
        .unwrap_or(100_000);
    let mc = McConfig {
        n_particles: n,
        ..McConfig::default()
    };
    println!(
        "{:>5} {:>6} {:>9} {:>9} {:>8} {:>6} {:>7}",
        "pe", "x0", "mc", "stderr", "bvp", "z", "right"
    );
    for pe in [0.0, 1.0] {
        for x0 in [-0.5, 0.0, 0.5] {
            let p = ModelParams::new(pe, 1.0, 1.0, x0)?;
            let e = mfpt_mc(&p, &mc)?;
            let b = mfpt_bvp(&p, 4001)?.mfpt(x0, p.eta);
            println!(
                "{pe:>5.1} {x0:>6.2} {:>9.5} {:>9.5} {b:>8.5} {:>6.2} {:>7.3}",
                e.mean_fpt,
                e.std_err,
                (e.mean_fpt - b) / e.std_err,
                e.n_escaped_right as f64 / n as f64
            );
        }
    }
    Ok(())
}
