//! Batch drivers behind the `mfpt` binary: MFPT tables over parameter
//! sweeps, `(x0, Pe)` contour grids and survival curves, written as CSV or
//! JSON with a provenance header.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::oracles::{mfpt_bvp, mfpt_mc, McConfig};
use crate::params::ModelParams;
use crate::pde::{interpolate, mfpt_pde, GridConfig};
use crate::series::{mfpt_series, survival_series, t_min_reliable, SeriesConfig, SeriesOrder};

/// Default output directory when `--output` is not given.
pub const OUTPUT_DIR_ENV: &str = "MFPT_OUTPUT_DIR";

/// Largest Pe at which the two- and three-term series track the full solution.
const TWO_TERM_PE: f64 = 0.2;
const THREE_TERM_PE: f64 = 0.7;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Series,
    Pde,
    Bvp,
    Mc,
    All,
}

impl Method {
    fn name(self) -> &'static str {
        match self {
            Method::Series => "series",
            Method::Pde => "pde",
            Method::Bvp => "bvp",
            Method::Mc => "mc",
            Method::All => "all",
        }
    }

    fn includes(self, other: Method) -> bool {
        self == other || self == Method::All
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl Format {
    fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variable {
    X0,
    Pe,
    Beta,
    Eta,
}

impl Variable {
    pub const ALL: [Variable; 4] = [Variable::X0, Variable::Pe, Variable::Beta, Variable::Eta];

    pub fn name(self) -> &'static str {
        match self {
            Variable::X0 => "x0",
            Variable::Pe => "pe",
            Variable::Beta => "beta",
            Variable::Eta => "eta",
        }
    }

    fn get(self, p: &ModelParams) -> f64 {
        match self {
            Variable::X0 => p.x0,
            Variable::Pe => p.pe,
            Variable::Beta => p.beta,
            Variable::Eta => p.eta,
        }
    }

    fn set(self, p: &mut ModelParams, v: f64) {
        match self {
            Variable::X0 => p.x0 = v,
            Variable::Pe => p.pe = v,
            Variable::Beta => p.beta = v,
            Variable::Eta => p.eta = v,
        }
    }
}

/// Inclusive range `min:max:count`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Range {
    pub min: f64,
    pub max: f64,
    pub count: usize,
}

impl Range {
    pub fn validate(&self, field: &'static str) -> Result<()> {
        if !(self.min.is_finite() && self.max.is_finite()) {
            return Err(invalid(field, "range bounds must be finite"));
        }
        if self.count < 2 {
            return Err(invalid(
                field,
                format!("range count must be >= 2, got {}", self.count),
            ));
        }
        if self.min >= self.max {
            return Err(invalid(
                field,
                format!("range needs min < max, got {}:{}", self.min, self.max),
            ));
        }
        Ok(())
    }

    /// Equispaced values, hitting both endpoints exactly.
    pub fn values(&self) -> Vec<f64> {
        let last = self.count - 1;
        let step = (self.max - self.min) / last as f64;
        (0..self.count)
            .map(|i| {
                if i == last {
                    self.max
                } else {
                    self.min + i as f64 * step
                }
            })
            .collect()
    }
}

impl std::fmt::Display for Range {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}:{}:{}", self.min, self.max, self.count)
    }
}

impl FromStr for Range {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.parse::<ParamValue>()? {
            ParamValue::Sweep(r) => Ok(r),
            ParamValue::Fixed(_) => Err(format!("expected min:max:count, got `{s}`")),
        }
    }
}

/// A command-line parameter: one value or a sweep.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum ParamValue {
    Fixed(f64),
    Sweep(Range),
}

impl FromStr for ParamValue {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        let num = |t: &str| {
            t.trim()
                .parse::<f64>()
                .map_err(|_| format!("`{t}` is not a number"))
        };
        match parts.as_slice() {
            [v] => Ok(ParamValue::Fixed(num(v)?)),
            [lo, hi, n] => {
                let count = n
                    .trim()
                    .parse::<usize>()
                    .map_err(|_| format!("sweep count `{n}` is not a positive integer"))?;
                Ok(ParamValue::Sweep(Range {
                    min: num(lo)?,
                    max: num(hi)?,
                    count,
                }))
            }
            _ => Err(format!("expected a number or min:max:count, got `{s}`")),
        }
    }
}

/// One swept parameter.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Axis {
    pub variable: Variable,
    pub range: Range,
}

/// Named configurations of the `(x0, Pe)` contour panels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
pub enum Preset {
    Fig4a,
    Fig4b,
    Fig4c,
    Fig4d,
}

impl Preset {
    /// `(β, η)` of the panel.
    pub fn beta_eta(self) -> (f64, f64) {
        match self {
            Preset::Fig4a => (1.0, 0.5),
            Preset::Fig4b => (1.0, 1.0),
            Preset::Fig4c => (10.0, 0.5),
            Preset::Fig4d => (10.0, 1.0),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Preset::Fig4a => "fig4a",
            Preset::Fig4b => "fig4b",
            Preset::Fig4c => "fig4c",
            Preset::Fig4d => "fig4d",
        }
    }

    /// Default axes: `x0 ∈ [-0.9, 0.9]`, symmetric about the centre, and `Pe ∈ [0, 2]`.
    pub fn axes(self) -> [Axis; 2] {
        [
            Axis {
                variable: Variable::X0,
                range: Range {
                    min: -0.9,
                    max: 0.9,
                    count: 19,
                },
            },
            Axis {
                variable: Variable::Pe,
                range: Range {
                    min: 0.0,
                    max: 2.0,
                    count: 11,
                },
            },
        ]
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct OutputSpec {
    /// Explicit file; falls back to [`OUTPUT_DIR_ENV`], then standard output.
    pub path: Option<PathBuf>,
    pub format: Format,
}

/// Everything one command needs. Swept variables override the matching field of `params`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunSpec {
    pub method: Method,
    pub params: ModelParams,
    pub sweep: Vec<Axis>,
    pub output: OutputSpec,
    pub series: SeriesConfig,
    pub grid: GridConfig,
    pub bvp_nx: usize,
    pub mc: McConfig,
    /// Concurrent sweep cells.
    pub jobs: usize,
    /// Truncation order of `S_series` for survival output.
    pub order: SeriesOrder,
    /// Output times for survival output.
    pub times: Range,
}

impl RunSpec {
    /// Default numerics around the given parameters; any value may be a sweep.
    pub fn new(
        method: Method,
        x0: ParamValue,
        pe: ParamValue,
        beta: ParamValue,
        eta: ParamValue,
    ) -> Result<Self> {
        let mut params = ModelParams {
            pe: 0.0,
            beta: 1.0,
            eta: 0.5,
            x0: 0.0,
        };
        let mut sweep = Vec::new();
        for (var, value) in Variable::ALL.into_iter().zip([x0, pe, beta, eta]) {
            match value {
                ParamValue::Fixed(v) => var.set(&mut params, v),
                ParamValue::Sweep(range) => {
                    var.set(&mut params, range.min);
                    sweep.push(Axis {
                        variable: var,
                        range,
                    });
                }
            }
        }
        let spec = Self {
            method,
            params,
            sweep,
            output: OutputSpec::default(),
            series: SeriesConfig::default(),
            grid: GridConfig::default(),
            bvp_nx: 4001,
            mc: McConfig::default(),
            jobs: 1,
            order: SeriesOrder::TwoTerm,
            times: Range {
                min: 0.0,
                max: 2.0,
                count: 201,
            },
        };
        spec.validate()?;
        Ok(spec)
    }

    /// A contour panel preset at the given method.
    pub fn preset(preset: Preset, method: Method) -> Result<Self> {
        let (beta, eta) = preset.beta_eta();
        let [ax, ap] = preset.axes();
        Self::new(
            method,
            ParamValue::Sweep(ax.range),
            ParamValue::Sweep(ap.range),
            ParamValue::Fixed(beta),
            ParamValue::Fixed(eta),
        )
    }

    pub fn validate(&self) -> Result<()> {
        if self.sweep.len() > 2 {
            return Err(invalid(
                "sweep",
                format!("at most 2 axes, got {}", self.sweep.len()),
            ));
        }
        for (i, a) in self.sweep.iter().enumerate() {
            a.range.validate(a.variable.name())?;
            if self.sweep[..i].iter().any(|b| b.variable == a.variable) {
                return Err(invalid(
                    "sweep",
                    format!("`{}` swept twice", a.variable.name()),
                ));
            }
        }
        for p in self.points() {
            p.validate()?;
        }
        self.series.validate()?;
        self.grid.validate()?;
        self.mc.validate()?;
        if self.bvp_nx < 16 {
            return Err(invalid(
                "bvp_nx",
                format!("must be >= 16, got {}", self.bvp_nx),
            ));
        }
        if self.jobs == 0 {
            return Err(invalid("jobs", "must be >= 1"));
        }
        self.times.validate("times")?;
        if self.times.min < 0.0 {
            return Err(invalid("times", "must be >= 0"));
        }
        Ok(())
    }

    /// Grid points in row order: the first axis varies slowest.
    pub fn points(&self) -> Vec<ModelParams> {
        let mut points = vec![self.params];
        for axis in &self.sweep {
            let values = axis.range.values();
            points = points
                .into_iter()
                .flat_map(|p| {
                    values.iter().map(move |&v| {
                        let mut q = p;
                        axis.variable.set(&mut q, v);
                        q
                    })
                })
                .collect();
        }
        points
    }

    fn pool(&self) -> Result<rayon::ThreadPool> {
        rayon::ThreadPoolBuilder::new()
            .num_threads(self.jobs)
            .build()
            .map_err(|e| Error::Numerical(format!("thread pool: {e}")))
    }

    fn provenance(&self, command: &str) -> Vec<(String, String)> {
        let mut v = vec![
            (
                "tool".to_string(),
                format!("abp-mfpt {}", env!("CARGO_PKG_VERSION")),
            ),
            ("command".to_string(), command.to_string()),
            ("method".to_string(), self.method.name().to_string()),
        ];
        for var in Variable::ALL {
            let value = match self.sweep.iter().find(|a| a.variable == var) {
                Some(a) => format!("sweep {}", a.range),
                None => var.get(&self.params).to_string(),
            };
            v.push((var.name().to_string(), value));
        }
        let s = &self.series;
        let g = &self.grid;
        let m = &self.mc;
        v.extend([
            ("series.n_terms".into(), s.n_terms.to_string()),
            ("series.resonance_eps".into(), s.resonance_eps.to_string()),
            (
                "series.summation".into(),
                format!("{:?}", s.summation).to_lowercase(),
            ),
            ("pde.nx".into(), g.nx.to_string()),
            ("pde.dt".into(), g.dt.to_string()),
            ("pde.t_max".into(), g.t_max.to_string()),
            ("pde.s_tail".into(), g.s_tail.to_string()),
            ("pde.theta".into(), g.theta.to_string()),
            ("pde.startup_steps".into(), g.startup_steps.to_string()),
            ("bvp.nx".into(), self.bvp_nx.to_string()),
            ("mc.n_particles".into(), m.n_particles.to_string()),
            ("mc.dt".into(), m.dt_mc.to_string()),
            ("mc.seed".into(), m.seed.to_string()),
            ("jobs".into(), self.jobs.to_string()),
        ]);
        v
    }
}

/// A numeric table with provenance. Missing cells are `None`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Table {
    pub provenance: Vec<(String, String)>,
    pub warnings: Vec<String>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Option<f64>>>,
}

impl Table {
    fn new(provenance: Vec<(String, String)>, columns: &[&str]) -> Self {
        Self {
            provenance,
            warnings: Vec::new(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    /// One column by name.
    pub fn column(&self, name: &str) -> Option<Vec<Option<f64>>> {
        let j = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| r[j]).collect())
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.provenance {
            let _ = writeln!(out, "# {k}: {v}");
        }
        for w in &self.warnings {
            let _ = writeln!(out, "# warning: {w}");
        }
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row
                .iter()
                .map(|c| c.map(fmt_num).unwrap_or_default())
                .collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        let provenance: serde_json::Map<String, serde_json::Value> = self
            .provenance
            .iter()
            .map(|(k, v)| (k.clone(), serde_json::Value::String(v.clone())))
            .collect();
        let doc = serde_json::json!({
            "provenance": provenance,
            "warnings": self.warnings,
            "columns": self.columns,
            "rows": self.rows,
        });
        let mut s = serde_json::to_string_pretty(&doc).expect("table serializes");
        s.push('\n');
        s
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => self.to_json(),
        }
    }
}

/// Shortest round-trip decimal, switching to exponent form for very small or large magnitudes.
fn fmt_num(v: f64) -> String {
    let a = v.abs();
    if v == 0.0 || (1e-4..1e15).contains(&a) || !v.is_finite() {
        format!("{v}")
    } else {
        format!("{v:e}")
    }
}

/// Column layout of [`mfpt_table`].
pub const MFPT_COLUMNS: [&str; 13] = [
    "x0",
    "pe",
    "beta",
    "eta",
    "mu0",
    "mu1",
    "mu2",
    "mu_two_term",
    "mu_three_term",
    "mu_pde",
    "mu_bvp",
    "mu_mc",
    "mu_mc_stderr",
];

pub const CONTOUR_COLUMNS: [&str; 3] = ["x0", "pe", "mu"];

pub const SURVIVAL_COLUMNS: [&str; 4] = ["t", "S_series", "S_PDE", "F_PDE"];

fn pe_warnings(spec: &RunSpec) -> Vec<String> {
    let pe_max = spec.points().iter().map(|p| p.pe).fold(0.0f64, f64::max);
    let mut w = Vec::new();
    if pe_max > THREE_TERM_PE {
        w.push(format!(
            "pe up to {pe_max} exceeds {THREE_TERM_PE}; the three-term series is unreliable there"
        ));
    } else if pe_max > TWO_TERM_PE {
        w.push(format!(
            "pe up to {pe_max} exceeds {TWO_TERM_PE}; the two-term series is unreliable there"
        ));
    }
    w
}

fn pde_mfpt(p: &ModelParams, grid: &GridConfig) -> Result<f64> {
    // exit is immediate from a wall
    if p.x0.abs() == 1.0 {
        return Ok(0.0);
    }
    Ok(mfpt_pde(p, grid)?.mfpt)
}

fn mfpt_row(spec: &RunSpec, p: &ModelParams) -> Result<Vec<Option<f64>>> {
    let s = mfpt_series(p, &spec.series)?;
    let m = spec.method;
    let pde = if m.includes(Method::Pde) {
        Some(pde_mfpt(p, &spec.grid)?)
    } else {
        None
    };
    let bvp = if m.includes(Method::Bvp) {
        Some(mfpt_bvp(p, spec.bvp_nx)?.mfpt(p.x0, p.eta))
    } else {
        None
    };
    let (mc, mc_err) = if m.includes(Method::Mc) {
        let e = mfpt_mc(p, &spec.mc)?;
        (Some(e.mean_fpt), Some(e.std_err))
    } else {
        (None, None)
    };
    Ok(vec![
        Some(p.x0),
        Some(p.pe),
        Some(p.beta),
        Some(p.eta),
        Some(s.mu0),
        Some(s.mu1),
        Some(s.mu2),
        Some(s.two_term()),
        Some(s.three_term()),
        pde,
        bvp,
        mc,
        mc_err,
    ])
}

/// One row per grid point with every series term and the requested solvers.
pub fn mfpt_table(spec: &RunSpec) -> Result<Table> {
    spec.validate()?;
    let points = spec.points();
    let rows = spec.pool()?.install(|| {
        points
            .par_iter()
            .map(|p| mfpt_row(spec, p))
            .collect::<Result<Vec<_>>>()
    })?;
    let mut table = Table::new(spec.provenance("mfpt"), &MFPT_COLUMNS);
    table.warnings = pe_warnings(spec);
    table.rows = rows;
    Ok(table)
}

/// Long-format `(x0, pe, mu)` grid from a single method.
pub fn contour_table(spec: &RunSpec) -> Result<Table> {
    spec.validate()?;
    let vars: Vec<Variable> = spec.sweep.iter().map(|a| a.variable).collect();
    if vars != [Variable::X0, Variable::Pe] {
        return Err(invalid(
            "sweep",
            "contour needs exactly the two axes x0 and pe",
        ));
    }
    if spec.method == Method::All {
        return Err(invalid("method", "contour needs a single method"));
    }
    let cell = |p: &ModelParams| -> Result<Vec<Option<f64>>> {
        let mu = match spec.method {
            Method::Series => mfpt_series(p, &spec.series)?.three_term(),
            Method::Pde => pde_mfpt(p, &spec.grid)?,
            Method::Bvp => mfpt_bvp(p, spec.bvp_nx)?.mfpt(p.x0, p.eta),
            Method::Mc => mfpt_mc(p, &spec.mc)?.mean_fpt,
            Method::All => unreachable!(),
        };
        Ok(vec![Some(p.x0), Some(p.pe), Some(mu)])
    };
    let points = spec.points();
    let rows = spec
        .pool()?
        .install(|| points.par_iter().map(cell).collect::<Result<Vec<_>>>())?;
    let mut table = Table::new(spec.provenance("contour"), &CONTOUR_COLUMNS);
    if spec.method == Method::Series {
        table.warnings = pe_warnings(spec);
    }
    table.rows = rows;
    Ok(table)
}

/// `S(t)` from the series and the forward solver, with the first-passage density.
pub fn survival_table(spec: &RunSpec) -> Result<Table> {
    spec.validate()?;
    if !spec.sweep.is_empty() {
        return Err(invalid("sweep", "survival takes a single parameter point"));
    }
    let use_series = matches!(spec.method, Method::Series | Method::All);
    let use_pde = matches!(spec.method, Method::Pde | Method::All);
    if !(use_series || use_pde) {
        return Err(invalid("method", "survival supports series, pde or all"));
    }
    let p = spec.params;
    let times = spec.times.values();
    let pde = if use_pde {
        Some(mfpt_pde(&p, &spec.grid)?)
    } else {
        None
    };

    let mut table = Table::new(spec.provenance("survival"), &SURVIVAL_COLUMNS);
    table
        .provenance
        .push(("times".into(), spec.times.to_string()));
    table.provenance.push((
        "series.order".into(),
        format!("{:?}", spec.order).to_lowercase(),
    ));
    if use_series {
        table.warnings = pe_warnings(spec);
        let t_min = t_min_reliable(&spec.series);
        if times.iter().any(|&t| t < t_min) {
            table.warnings.push(format!(
                "S_series below t = {t_min:.3e} is truncation-limited at n_terms = {}",
                spec.series.n_terms
            ));
        }
    }
    let series_vals: Vec<f64> = if use_series {
        spec.pool()?.install(|| {
            times
                .par_iter()
                .map(|&t| survival_series(t, &p, &spec.series, spec.order))
                .collect()
        })
    } else {
        Vec::new()
    };
    for (i, &t) in times.iter().enumerate() {
        let (s_pde, f_pde) = match &pde {
            Some(r) => {
                let c = &r.survival;
                let last = *c.times.last().unwrap();
                let f = if t > last {
                    c.tail_rate * c.tail_amp * (-c.tail_rate * t).exp()
                } else {
                    interpolate(&c.times, &r.fpt_density, t)
                };
                (Some(c.at(t)), Some(f))
            }
            None => (None, None),
        };
        let s_series = if use_series {
            Some(series_vals[i])
        } else {
            None
        };
        table.rows.push(vec![Some(t), s_series, s_pde, f_pde]);
    }
    Ok(table)
}

/// Where a command's output goes: `--output`, else `$MFPT_OUTPUT_DIR/<stem>.<ext>`, else stdout.
pub fn resolve_output(output: &OutputSpec, stem: &str) -> Option<PathBuf> {
    if let Some(p) = &output.path {
        return Some(p.clone());
    }
    std::env::var_os(OUTPUT_DIR_ENV)
        .filter(|d| !d.is_empty())
        .map(|d| Path::new(&d).join(format!("{stem}.{}", output.format.extension())))
}

/// Writes a rendered table, returning the file path if one was used.
pub fn write_table(table: &Table, output: &OutputSpec, stem: &str) -> Result<Option<PathBuf>> {
    let text = table.render(output.format);
    match resolve_output(output, stem) {
        Some(path) => {
            if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
                std::fs::create_dir_all(dir)?;
            }
            std::fs::write(&path, text)?;
            Ok(Some(path))
        }
        None => {
            std::io::stdout().lock().write_all(text.as_bytes())?;
            Ok(None)
        }
    }
}

/// Result of a `cmd_*` call.
#[derive(Debug, Clone, PartialEq)]
pub struct Written {
    /// `None` when the table went to standard output.
    pub path: Option<PathBuf>,
    /// Also embedded in the table header.
    pub warnings: Vec<String>,
}

fn emit(table: Table, output: &OutputSpec, stem: &str) -> Result<Written> {
    let path = write_table(&table, output, stem)?;
    Ok(Written {
        path,
        warnings: table.warnings,
    })
}

pub fn cmd_mfpt(spec: &RunSpec) -> Result<Written> {
    emit(mfpt_table(spec)?, &spec.output, "mfpt")
}

pub fn cmd_contour(spec: &RunSpec) -> Result<Written> {
    emit(contour_table(spec)?, &spec.output, "contour")
}

pub fn cmd_survival(spec: &RunSpec) -> Result<Written> {
    emit(survival_table(spec)?, &spec.output, "survival")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fixed(v: f64) -> ParamValue {
        ParamValue::Fixed(v)
    }

    #[test]
    fn parses_values_and_sweeps() {
        assert_eq!("0.5".parse::<ParamValue>().unwrap(), fixed(0.5));
        assert_eq!(
            "-1:1:101".parse::<ParamValue>().unwrap(),
            ParamValue::Sweep(Range {
                min: -1.0,
                max: 1.0,
                count: 101
            })
        );
        assert!("1:2".parse::<ParamValue>().is_err());
        assert!("a".parse::<ParamValue>().is_err());
        assert!("0:1:2.5".parse::<ParamValue>().is_err());
    }

    #[test]
    fn range_hits_endpoints() {
        let v = Range {
            min: 0.0,
            max: 1.0,
            count: 21,
        }
        .values();
        assert_eq!(v.len(), 21);
        assert_eq!(v[0], 0.0);
        assert_eq!(v[20], 1.0);
        assert!((v[10] - 0.5).abs() < 1e-15);
    }

    #[test]
    fn rejects_bad_sweeps() {
        let bad = |r: Range| {
            RunSpec::new(
                Method::Series,
                fixed(0.0),
                ParamValue::Sweep(r),
                fixed(1.0),
                fixed(0.5),
            )
        };
        assert!(bad(Range {
            min: 0.0,
            max: 1.0,
            count: 1
        })
        .is_err());
        assert!(bad(Range {
            min: 1.0,
            max: 1.0,
            count: 3
        })
        .is_err());
        assert!(bad(Range {
            min: -1.0,
            max: 1.0,
            count: 3
        })
        .is_err());
        let three = RunSpec::new(
            Method::Series,
            ParamValue::Sweep(Range {
                min: 0.0,
                max: 0.5,
                count: 2,
            }),
            ParamValue::Sweep(Range {
                min: 0.0,
                max: 0.5,
                count: 2,
            }),
            ParamValue::Sweep(Range {
                min: 1.0,
                max: 2.0,
                count: 2,
            }),
            fixed(0.5),
        );
        assert!(matches!(
            three,
            Err(Error::Validation { field: "sweep", .. })
        ));
    }

    #[test]
    fn points_are_row_major() {
        let spec = RunSpec::new(
            Method::Series,
            ParamValue::Sweep(Range {
                min: -0.5,
                max: 0.5,
                count: 3,
            }),
            ParamValue::Sweep(Range {
                min: 0.0,
                max: 1.0,
                count: 2,
            }),
            fixed(1.0),
            fixed(1.0),
        )
        .unwrap();
        let pts: Vec<(f64, f64)> = spec.points().iter().map(|p| (p.x0, p.pe)).collect();
        assert_eq!(
            pts,
            [
                (-0.5, 0.0),
                (-0.5, 1.0),
                (0.0, 0.0),
                (0.0, 1.0),
                (0.5, 0.0),
                (0.5, 1.0)
            ]
        );
    }

    #[test]
    fn series_table_brownian_column() {
        let spec = RunSpec::new(
            Method::Series,
            ParamValue::Sweep(Range {
                min: -1.0,
                max: 1.0,
                count: 101,
            }),
            fixed(0.0),
            fixed(1.0),
            fixed(0.5),
        )
        .unwrap();
        let t = mfpt_table(&spec).unwrap();
        assert_eq!(t.rows.len(), 101);
        let x0 = t.column("x0").unwrap();
        let mu = t.column("mu_three_term").unwrap();
        for (x, m) in x0.iter().zip(&mu) {
            let x = x.unwrap();
            assert!((m.unwrap() - (1.0 - x * x) / 2.0).abs() < 1e-5);
        }
        assert!(t.column("mu_pde").unwrap().iter().all(Option::is_none));
        assert!(t.warnings.is_empty());
    }

    #[test]
    fn csv_and_json_mirror() {
        let mut spec = RunSpec::new(
            Method::Bvp,
            fixed(0.5),
            ParamValue::Sweep(Range {
                min: 0.0,
                max: 1.0,
                count: 3,
            }),
            fixed(1.0),
            fixed(1.0),
        )
        .unwrap();
        spec.bvp_nx = 401;
        let t = mfpt_table(&spec).unwrap();
        let csv = t.to_csv();
        let header = csv.lines().find(|l| !l.starts_with('#')).unwrap();
        assert_eq!(header, MFPT_COLUMNS.join(","));
        assert_eq!(csv.lines().filter(|l| !l.starts_with('#')).count(), 4);
        assert!(csv.contains("# pe: sweep 0:1:3"));
        assert!(csv.contains("# warning: pe up to 1"));
        let json: serde_json::Value = serde_json::from_str(&t.to_json()).unwrap();
        assert_eq!(json["rows"].as_array().unwrap().len(), 3);
        assert!(json["rows"][0][11].is_null());
        assert_eq!(json["rows"][2][10].as_f64(), t.rows[2][10]);
    }

    #[test]
    fn contour_requires_x0_pe_axes() {
        let spec = RunSpec::new(
            Method::Series,
            fixed(0.5),
            fixed(0.1),
            fixed(1.0),
            fixed(1.0),
        )
        .unwrap();
        assert!(contour_table(&spec).is_err());
        let all = RunSpec::preset(Preset::Fig4a, Method::All).unwrap();
        assert!(contour_table(&all).is_err());
    }

    #[test]
    fn presets_agree_at_zero_pe() {
        let rows: Vec<Vec<f64>> = [Preset::Fig4a, Preset::Fig4b, Preset::Fig4c, Preset::Fig4d]
            .iter()
            .map(|&p| {
                let t = contour_table(&RunSpec::preset(p, Method::Series).unwrap()).unwrap();
                t.rows
                    .iter()
                    .filter(|r| r[1] == Some(0.0))
                    .map(|r| r[2].unwrap())
                    .collect()
            })
            .collect();
        for r in &rows[1..] {
            for (a, b) in r.iter().zip(&rows[0]) {
                assert!((a - b).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn exit_codes() {
        assert_eq!(invalid("x", "y").exit_code(), 2);
        assert_eq!(Error::Numerical("z".into()).exit_code(), 3);
    }
}
