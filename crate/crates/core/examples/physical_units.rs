//! From laboratory parameters to an exit time in seconds.
//!
//! cargo run --release --example physical_units

use abp_mfpt::{
    mfpt_bvp, mfpt_series, nondimensionalize, redimensionalize_mfpt, DimensionalParams,
    SeriesConfig,
};

fn main() -> abp_mfpt::Result<()> {
    // a swimmer in a 20 µm channel: lengths in µm, times in s
    let lab = DimensionalParams {
        v_s: 0.2,
        d_t: 5.0,
        r: 10.0,
        tau: 20.0,
        eta: 1.0,
        x0_dim: 5.0,
    };
    let p = nondimensionalize(&lab)?;
    println!("Pe = {:.3}, beta = {:.3}, x0 = {:.3}", p.pe, p.beta, p.x0);
    let s = mfpt_series(&p, &SeriesConfig::default())?;
    let exact = mfpt_bvp(&p, 4001)?.mfpt(p.x0, p.eta);
    println!(
        "dimensionless mfpt: series {:.5}, backward equations {:.5}",
        s.three_term(),
        exact
    );
    println!("diffusive time R^2/D = {:.1} s", lab.diffusive_time());
    println!(
        "mfpt = {:.2} s",
        redimensionalize_mfpt(s.three_term(), &lab)?
    );
    Ok(())
}
