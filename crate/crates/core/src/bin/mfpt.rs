use std::path::PathBuf;
use std::process::ExitCode;

use abp_mfpt::run::{
    cmd_contour, cmd_mfpt, cmd_survival, Format, Method, ParamValue, Preset, Range, RunSpec,
    Written, OUTPUT_DIR_ENV,
};
use abp_mfpt::series::SeriesOrder;
use abp_mfpt::Result;
use clap::{Args, Parser, Subcommand};

/// Mean first passage time of a 1-D run-and-tumble particle between absorbing walls.
///
/// Without a subcommand, writes one MFPT row per parameter point. Any of
/// --x0, --pe, --beta, --eta accepts `min:max:count` (inclusive) to sweep it.
#[derive(Parser, Debug)]
#[command(name = "mfpt", version, args_conflicts_with_subcommands = true)]
struct Cli {
    #[command(subcommand)]
    command: Option<Command>,
    #[command(flatten)]
    table: TableArgs,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Long-format (x0, pe, mu) grid for a contour panel.
    Contour(ContourArgs),
    /// Survival probability and first-passage density against time.
    Survival(SurvivalArgs),
}

#[derive(Args, Debug)]
struct TableArgs {
    #[arg(long, value_enum, default_value = "series")]
    method: Method,
    #[command(flatten)]
    point: PointArgs,
    #[command(flatten)]
    num: NumericArgs,
}

#[derive(Args, Debug)]
struct ContourArgs {
    #[arg(long, value_enum, default_value = "fig4a")]
    preset: Preset,
    #[arg(long, value_enum, default_value = "pde")]
    method: Method,
    /// Override the preset's x0 axis.
    #[arg(long, allow_hyphen_values = true)]
    x0: Option<Range>,
    /// Override the preset's pe axis.
    #[arg(long, allow_hyphen_values = true)]
    pe: Option<Range>,
    #[command(flatten)]
    num: NumericArgs,
}

#[derive(Args, Debug)]
struct SurvivalArgs {
    #[arg(long, value_enum, default_value = "all")]
    method: Method,
    #[command(flatten)]
    point: PointArgs,
    /// Output times as min:max:count.
    #[arg(long, default_value = "0:2:201")]
    times: Range,
    /// Number of series terms kept: 1 (S0), 2 (+Pe S1) or 3 (+Pe² S2).
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u8).range(1..=3))]
    order: u8,
    #[command(flatten)]
    num: NumericArgs,
}

#[derive(Args, Debug)]
struct PointArgs {
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    x0: ParamValue,
    #[arg(long, default_value = "0")]
    pe: ParamValue,
    #[arg(long, default_value = "1")]
    beta: ParamValue,
    #[arg(long, default_value = "0.5")]
    eta: ParamValue,
}

#[derive(Args, Debug)]
struct NumericArgs {
    /// Series truncation per index.
    #[arg(long, default_value_t = 100)]
    n_terms: usize,
    /// Interior nodes of the forward solver grid.
    #[arg(long, default_value_t = 401)]
    nx: usize,
    /// Forward solver time step.
    #[arg(long, default_value_t = 2.5e-5)]
    dt: f64,
    /// Forward solver horizon.
    #[arg(long, default_value_t = 20.0)]
    t_max: f64,
    /// Monte Carlo particle count.
    #[arg(long, default_value_t = 100_000)]
    particles: usize,
    #[arg(long, default_value_t = 20_240_601)]
    seed: u64,
    /// Concurrent sweep cells.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Output file [default: $MFPT_OUTPUT_DIR/<command>.<ext>, else stdout].
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
}

impl NumericArgs {
    fn apply(&self, spec: &mut RunSpec) -> Result<()> {
        spec.series.n_terms = self.n_terms;
        spec.grid.nx = self.nx;
        spec.grid.dt = self.dt;
        spec.grid.t_max = self.t_max;
        spec.mc.n_particles = self.particles;
        spec.mc.seed = self.seed;
        spec.jobs = self.jobs;
        spec.output.path = self.output.clone();
        spec.output.format = self.format;
        spec.validate()
    }
}

fn spec_for(method: Method, p: &PointArgs, num: &NumericArgs) -> Result<RunSpec> {
    let mut spec = RunSpec::new(method, p.x0, p.pe, p.beta, p.eta)?;
    num.apply(&mut spec)?;
    Ok(spec)
}

fn run(cli: Cli) -> Result<Written> {
    match cli.command {
        None => {
            let a = &cli.table;
            cmd_mfpt(&spec_for(a.method, &a.point, &a.num)?)
        }
        Some(Command::Contour(a)) => {
            let mut spec = RunSpec::preset(a.preset, a.method)?;
            if let Some(r) = a.x0 {
                spec.sweep[0].range = r;
            }
            if let Some(r) = a.pe {
                spec.sweep[1].range = r;
            }
            a.num.apply(&mut spec)?;
            cmd_contour(&spec)
        }
        Some(Command::Survival(a)) => {
            let mut spec = spec_for(a.method, &a.point, &a.num)?;
            spec.times = a.times;
            spec.order = match a.order {
                1 => SeriesOrder::Leading,
                2 => SeriesOrder::TwoTerm,
                _ => SeriesOrder::ThreeTerm,
            };
            spec.validate()?;
            cmd_survival(&spec)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(w) => {
            for msg in &w.warnings {
                eprintln!("mfpt: warning: {msg}");
            }
            if let Some(path) = w.path {
                eprintln!("wrote {}", path.display());
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("mfpt: {e}");
            if e.exit_code() == 1 {
                eprintln!("(check --output or ${OUTPUT_DIR_ENV})");
            }
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
