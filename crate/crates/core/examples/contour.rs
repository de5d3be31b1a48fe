//! One contour panel as a coarse text map, then the long-format table.
//!
//! cargo run --release --example contour -- [fig4a|fig4b|fig4c|fig4d]

use abp_mfpt::run::{contour_table, Method, Preset, RunSpec};

fn main() -> abp_mfpt::Result<()> {
    let preset = match std::env::args().nth(1).as_deref() {
        Some("fig4b") => Preset::Fig4b,
        Some("fig4c") => Preset::Fig4c,
        Some("fig4d") => Preset::Fig4d,
        _ => Preset::Fig4a,
    };
    // backward equations: same surface as the forward solver, much faster
    let spec = RunSpec::preset(preset, Method::Bvp)?;
    let table = contour_table(&spec)?;
    let pes = spec.sweep[1].range.values();
    let (beta, eta) = preset.beta_eta();
    println!(
        "{}: beta = {beta}, eta = {eta}; rows pe, columns x0",
        preset.name()
    );
    for (j, pe) in pes.iter().enumerate().rev() {
        let line: String = table
            .rows
            .iter()
            .skip(j)
            .step_by(pes.len())
            .map(|r| format!("{:6.3}", r[2].unwrap()))
            .collect();
        println!("{pe:4.1} |{line}");
    }
    println!();
    print!("{}", table.to_csv());
    Ok(())
}
