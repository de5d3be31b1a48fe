//! Orientation-resolved exit times T+(x), T-(x) from the backward equations.
//!
//! cargo run --release --example backward_oracle

use abp_mfpt::{mfpt_bvp, ModelParams};

fn main() -> abp_mfpt::Result<()> {
    let p = ModelParams::new(1.0, 1.0, 1.0, 0.0)?;
    let sol = mfpt_bvp(&p, 4001)?;
    println!("pe = {}, beta = {}", p.pe, p.beta);
    println!("{:>6} {:>10} {:>10} {:>10}", "x", "T+", "T-", "eta=0.5");
    for i in 0..=20 {
        let x = -1.0 + 0.1 * i as f64;
        let tp = sol.mfpt(x, 1.0);
        let tm = sol.mfpt(x, 0.0);
        println!("{x:>6.2} {tp:>10.6} {tm:>10.6} {:>10.6}", 0.5 * (tp + tm));
    }
    Ok(())
}
