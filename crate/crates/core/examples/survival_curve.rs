//! Survival probability from the expansion (one, two, three terms) and the
//! forward solver, with the first-passage density.
//!
//! cargo run --release --example survival_curve

use abp_mfpt::series::{survival_series, SeriesOrder};
use abp_mfpt::{mfpt_pde, GridConfig, ModelParams, SeriesConfig};

fn main() -> abp_mfpt::Result<()> {
    let p = ModelParams::new(0.4, 1.0, 1.0, 0.5)?;
    let cfg = SeriesConfig::default();
    let r = mfpt_pde(&p, &GridConfig::default())?;
    let curve = &r.survival;
    println!(
        "mfpt {:.6}, int F dt = {:.6}, tail rate {:.4}",
        r.mfpt, r.mass_check, curve.tail_rate
    );
    println!(
        "{:>5} {:>8} {:>8} {:>8} {:>8} {:>8}",
        "t", "S0", "S 2-term", "S 3-term", "S pde", "F pde"
    );
    for i in 1..=20 {
        let t = 0.1 * i as f64;
        let k = curve
            .times
            .partition_point(|&s| s < t)
            .min(curve.times.len() - 1);
        println!(
            "{t:>5.2} {:>8.5} {:>8.5} {:>8.5} {:>8.5} {:>8.5}",
            survival_series(t, &p, &cfg, SeriesOrder::Leading),
            survival_series(t, &p, &cfg, SeriesOrder::TwoTerm),
            survival_series(t, &p, &cfg, SeriesOrder::ThreeTerm),
            curve.at(t),
            r.fpt_density[k]
        );
    }
    Ok(())
}
