//! MFPT against swim speed: two- and three-term expansions next to the
//! forward PDE solution.
//!
//! cargo run --release --example series_vs_pde -- [x0] [eta] [beta]

use abp_mfpt::{mfpt_pde, mfpt_series, GridConfig, ModelParams, SeriesConfig};

fn main() -> abp_mfpt::Result<()> {
    let args: Vec<f64> = std::env::args()
        .skip(1)
        .filter_map(|a| a.parse().ok())
        .collect();
    let x0 = args.first().copied().unwrap_or(0.5);
    let eta = args.get(1).copied().unwrap_or(1.0);
    let beta = args.get(2).copied().unwrap_or(1.0);

    let cfg = SeriesConfig::default();
    let grid = GridConfig::default();
    println!("x0 = {x0}, eta = {eta}, beta = {beta}");
    println!(
        "{:>5} {:>10} {:>10} {:>10} {:>9}",
        "pe", "two-term", "three-term", "pde", "rel err"
    );
    for i in 0..=10 {
        let pe = 0.1 * i as f64;
        let p = ModelParams::new(pe, beta, eta, x0)?;
        let s = mfpt_series(&p, &cfg)?;
        let pde = mfpt_pde(&p, &grid)?.mfpt;
        println!(
            "{pe:>5.2} {:>10.6} {:>10.6} {:>10.6} {:>9.2e}",
            s.two_term(),
            s.three_term(),
            pde,
            (s.three_term() - pde) / pde
        );
    }
    Ok(())
}
