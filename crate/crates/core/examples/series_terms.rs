//! The three MFPT expansion terms across the domain for slow, moderate and
//! fast tumbling, with every particle starting right-facing.
//!
//! cargo run --release --example series_terms

use abp_mfpt::series::{mu0, mu1, mu2};
use abp_mfpt::{ModelParams, SeriesConfig};

fn main() -> abp_mfpt::Result<()> {
    let cfg = SeriesConfig::default();
    println!(
        "{:>6} {:>9} {:>10} {:>10} {:>10} {:>10} {:>10} {:>10}",
        "x0", "mu0", "mu1 b=0.1", "mu1 b=1", "mu1 b=10", "mu2 b=0.1", "mu2 b=1", "mu2 b=10"
    );
    for i in 0..=20 {
        let x0 = -1.0 + 0.1 * i as f64;
        let mut row = format!("{x0:>6.2} {:>9.5}", mu0(x0, &cfg));
        for beta in [0.1, 1.0, 10.0] {
            let p = ModelParams::new(0.0, beta, 1.0, x0)?;
            row += &format!(" {:>10.5}", mu1(&p, &cfg));
        }
        for beta in [0.1, 1.0, 10.0] {
            row += &format!(" {:>10.5}", mu2(x0, beta, &cfg));
        }
        println!("{row}");
    }
    Ok(())
}
