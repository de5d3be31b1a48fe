//! Density profiles of the expansion, n0 + Pe n1 + Pe² n2, next to the
//! forward solver at one instant.
//!
//! cargo run --release --example expansion_fields

use abp_mfpt::pde::PdeSolver;
use abp_mfpt::series::{field_n0, field_n1, field_n2};
use abp_mfpt::{GridConfig, ModelParams, SeriesConfig};

fn main() -> abp_mfpt::Result<()> {
    let (pe, t) = (0.3, 0.1);
    let p = ModelParams::new(pe, 1.0, 1.0, 0.5)?;
    let cfg = SeriesConfig::default();
    let mut solver = PdeSolver::new(&p, &GridConfig::default())?;
    solver.advance_to(t);
    let state = solver.state();
    println!("t = {t}, pe = {pe}");
    println!(
        "{:>6} {:>9} {:>9} {:>9} {:>9} {:>9}",
        "x", "n0", "n1", "n2", "series", "pde"
    );
    for i in 0..=20 {
        let x = -1.0 + 0.1 * i as f64;
        let n0 = field_n0(x, t, p.x0, &cfg);
        let n1 = field_n1(x, t, &p, &cfg);
        let n2 = field_n2(x, t, &p, &cfg);
        println!(
            "{x:>6.2} {n0:>9.5} {n1:>9.5} {n2:>9.5} {:>9.5} {:>9.5}",
            n0 + pe * n1 + pe * pe * n2,
            state.n_at(x)
        );
    }
    Ok(())
}
