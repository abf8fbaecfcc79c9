//! `gte-fermi`: command-line front end. Every result is assembled in memory
//! and written only on success, so a failing run never leaves a partial table.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use gte_fermi::bisep::{bisep_hull, r_max_solver, SectionSpec, DEFAULT_SAMPLES};
use gte_fermi::format::{format_csv_number, ScalarResult, Table};
use gte_fermi::geometry::{self, TriangleConfig};
use gte_fermi::linalg::DIM;
use gte_fermi::scan::{self, linspace};
use gte_fermi::specfun::f_factor;
use gte_fermi::tristate::{rho3, werner_coords};
use gte_fermi::witnesses::{er_lower_bound, grid_scan_ghz_w};
use gte_fermi::{couplings_from_config, couplings_zero_limit, Couplings, Dimensionality, Error};

const DEFAULT_GRID_POINTS: usize = 201;
const FIGURE_KFR: [f64; 7] = [0.0, 0.5, 1.0, 1.5, 2.0, 2.5, 2.59];
const FIGURE_2_KFR: [f64; 4] = [0.0, 1.0, 2.0, 2.5];
const FIGURE_3_MAX_KFR: f64 = 3.0;
const WITNESS_TOL: f64 = 1e-6;
const POLYGON_TOL: f64 = 1e-5;

#[derive(Parser, Debug)]
#[command(name = "gte-fermi", version, about = "Three-fermion spin entanglement in the ideal Fermi gas")]
struct Cli {
    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Worker threads for parallel sweeps.
    #[arg(long, global = true, env = "GTE_FERMI_THREADS")]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Pair correlation kernel f(x).
    F {
        #[arg(long, default_value = "3d")]
        dim: Dimensionality,
        #[arg(long, allow_negative_numbers = true)]
        x: f64,
    },
    /// Singlet weights p12, p13, p23 of a configuration.
    Couplings(ConfigArgs),
    /// Three-spin density matrix, one row per line.
    Rho3(ConfigArgs),
    /// Werner-state coordinates of the density matrix.
    Werner(ConfigArgs),
    /// Extremal GHZ/W witness grid scan.
    WitnessScan {
        /// Include per-family minima.
        #[arg(long)]
        detail: bool,
    },
    /// Robustness lower bound for a named geometry.
    Er(ErArgs),
    /// Lower (witness) or upper (polygon) bound on the GTE distance.
    GteDistance(DistanceArgs),
    /// Data behind the sweep figures.
    Sweep(SweepArgs),
    /// Biseparable polygon of the (r1, r2) section at the given r+.
    Polygon {
        #[arg(long)]
        rplus: f64,
        #[arg(long, default_value_t = DEFAULT_SAMPLES)]
        n_samples: usize,
    },
}

#[derive(Args, Debug)]
struct ConfigArgs {
    #[arg(long, default_value = "3d")]
    dim: Dimensionality,
    #[arg(long, allow_negative_numbers = true)]
    d12: f64,
    #[arg(long, allow_negative_numbers = true)]
    d13: f64,
    #[arg(long, allow_negative_numbers = true)]
    d23: f64,
    /// Zero-distance limit of the configuration's shape.
    #[arg(long)]
    limit: bool,
}

impl ConfigArgs {
    fn couplings(&self) -> Result<Couplings, Error> {
        if self.limit {
            couplings_zero_limit(self.d12, self.d13, self.d23)
        } else {
            couplings_from_config(&TriangleConfig::new(self.d12, self.d13, self.d23, self.dim)?)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum GeometryKind {
    Collinear,
    Isosceles,
    Polar,
    Equilateral,
    Triangle,
}

#[derive(Args, Debug)]
struct ErArgs {
    #[arg(long, default_value = "3d")]
    dim: Dimensionality,
    #[arg(long, value_enum)]
    geometry: GeometryKind,
    /// Separation k_F r; 0 selects the zero-distance limit.
    #[arg(long, default_value_t = 0.0)]
    kfr: f64,
    #[arg(long)]
    x_over_r: Option<f64>,
    #[arg(long)]
    y_over_r: Option<f64>,
    #[arg(long)]
    theta: Option<f64>,
    #[arg(long)]
    q_over_r: Option<f64>,
    #[arg(long)]
    d12: Option<f64>,
    #[arg(long)]
    d13: Option<f64>,
    #[arg(long)]
    d23: Option<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Method {
    Witness,
    Polygon,
}

#[derive(Args, Debug)]
struct DistanceArgs {
    #[arg(long, default_value = "3d")]
    dim: Dimensionality,
    #[arg(long, value_enum, default_value_t = Method::Witness)]
    method: Method,
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long, default_value_t = DEFAULT_SAMPLES)]
    n_samples: usize,
    /// Polygon bracket as `lo,hi`.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    bracket: Option<Vec<f64>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Figure {
    #[value(name = "1a")]
    Collinear,
    #[value(name = "1b")]
    Isosceles,
    #[value(name = "2")]
    Polar,
    #[value(name = "3")]
    Distance,
}

#[derive(Args, Debug)]
struct SweepArgs {
    #[arg(long, value_enum)]
    figure: Figure,
    /// Gas dimension; figure 3 covers both unless given.
    #[arg(long)]
    dim: Option<Dimensionality>,
    /// Comma-separated separations (0 = limit).
    #[arg(long, value_delimiter = ',')]
    kfr: Option<Vec<f64>>,
    /// Points on the swept axis.
    #[arg(long, default_value_t = DEFAULT_GRID_POINTS)]
    points: usize,
}

#[derive(Debug)]
enum CliError {
    Core(Error),
    Usage(String),
    Io(std::io::Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(e) if e.is_convergence() => 3,
            CliError::Core(_) | CliError::Usage(_) => 2,
            CliError::Io(_) => 1,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Usage(m) => f.write_str(m),
            CliError::Io(e) => write!(f, "i/o: {e}"),
        }
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli).and_then(|text| emit(cli.out.as_ref(), &text)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("gte-fermi: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn emit(out: Option<&PathBuf>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(CliError::Io),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes()).and_then(|_| stdout.flush()).map_err(CliError::Io)
        }
    }
}

fn run(cli: &Cli) -> Result<String, CliError> {
    if let Some(n) = cli.threads {
        if n == 0 {
            return Err(usage("--threads must be at least 1"));
        }
        gte_fermi::exec::configure_threads(n).map_err(usage)?;
    }
    let fmt = cli.format;
    match &cli.command {
        Command::F { dim, x } => scalar(fmt, "f", Some(*dim), f_factor(*dim, *x)?, None),
        Command::Couplings(args) => {
            let c = args.couplings()?;
            let mut t = Table::new(&["p12", "p13", "p23", "p"]);
            t.push(vec![c.p12, c.p13, c.p23, c.p]);
            record(fmt, &c, &t)
        }
        Command::Rho3(args) => {
            let rho = rho3(&args.couplings()?)?;
            match fmt {
                Format::Csv => Ok(rho.to_dump()),
                Format::Json => {
                    let m = rho.matrix();
                    let part = |f: fn(&gte_fermi::linalg::C64) -> f64| -> Vec<Vec<f64>> {
                        (0..DIM).map(|r| (0..DIM).map(|c| f(&m[(r, c)])).collect()).collect()
                    };
                    json(&serde_json::json!({ "re": part(|z| z.re), "im": part(|z| z.im) }))
                }
            }
        }
        Command::Werner(args) => {
            let w = werner_coords(&args.couplings()?);
            let mut t = Table::new(&["r_plus", "r0", "r1", "r2", "r3"]);
            t.push(vec![w.r_plus, w.r0, w.r1, w.r2, w.r3]);
            record(fmt, &w, &t)
        }
        Command::WitnessScan { detail } => {
            let report = grid_scan_ghz_w(*detail)?;
            let mut t = Table::new(&["min_value", "nodes_evaluated"]);
            t.push(vec![report.min_value, report.nodes_evaluated as f64]);
            record(fmt, &report, &t)
        }
        Command::Er(args) => scalar(fmt, "er_lower_bound", Some(args.dim), er_value(args)?, None),
        Command::GteDistance(args) => gte_distance(fmt, args),
        Command::Sweep(args) => sweep(fmt, args),
        Command::Polygon { rplus, n_samples } => {
            let hull = bisep_hull(&SectionSpec::new(*rplus, 0.0)?, *n_samples)?;
            match fmt {
                Format::Csv => Ok(hull.to_csv()),
                Format::Json => json(&serde_json::json!({ "r_plus": rplus, "vertices": hull.vertices() })),
            }
        }
    }
}

fn need(v: Option<f64>, flag: &str) -> Result<f64, CliError> {
    v.ok_or_else(|| usage(format!("--{flag} is required for this geometry")))
}

fn er_value(a: &ErArgs) -> Result<f64, CliError> {
    let (dim, kfr) = (a.dim, a.kfr);
    Ok(match a.geometry {
        GeometryKind::Collinear => scan::collinear_row(dim, kfr, need(a.x_over_r, "x-over-r")?)?.er,
        GeometryKind::Isosceles => scan::isosceles_row(dim, kfr, need(a.y_over_r, "y-over-r")?)?.er,
        GeometryKind::Polar => scan::polar_er(dim, kfr, need(a.theta, "theta")?, need(a.q_over_r, "q-over-r")?)?,
        GeometryKind::Equilateral => {
            if kfr == 0.0 {
                couplings_zero_limit(1.0, 1.0, 1.0)?;
            }
            er_lower_bound(&couplings_from_config(&geometry::equilateral(kfr, dim)?)?)
        }
        GeometryKind::Triangle => {
            let (d12, d13, d23) = (need(a.d12, "d12")?, need(a.d13, "d13")?, need(a.d23, "d23")?);
            er_lower_bound(&couplings_from_config(&TriangleConfig::new(d12, d13, d23, dim)?)?)
        }
    })
}

fn gte_distance(fmt: Format, a: &DistanceArgs) -> Result<String, CliError> {
    match a.method {
        Method::Witness => {
            let tol = a.tol.unwrap_or(WITNESS_TOL);
            scalar(fmt, "r_min", Some(a.dim), scan::find_rmin(a.dim, tol)?, Some(tol))
        }
        Method::Polygon => {
            let tol = a.tol.unwrap_or(POLYGON_TOL);
            let bracket = match (&a.bracket, a.dim) {
                (Some(b), _) if b.len() == 2 => (b[0], b[1]),
                (Some(_), _) => return Err(usage("--bracket takes exactly two values `lo,hi`")),
                (None, Dimensionality::ThreeD) => (2.0, 3.2),
                (None, Dimensionality::TwoD) => (1.8, 3.0),
            };
            let r = r_max_solver(a.dim, bracket, tol, a.n_samples)?;
            scalar(fmt, "r_max", Some(a.dim), r, Some(tol))
        }
    }
}

fn sweep(fmt: Format, a: &SweepArgs) -> Result<String, CliError> {
    if a.points < 2 {
        return Err(usage("--points must be at least 2"));
    }
    let dim = a.dim.unwrap_or(Dimensionality::ThreeD);
    let kfr = |default: &[f64]| a.kfr.clone().unwrap_or_else(|| default.to_vec());
    let table = match a.figure {
        Figure::Collinear => scan::sweep_collinear(dim, &kfr(&FIGURE_KFR), &linspace(0.0, 1.0, a.points))?.to_table(),
        Figure::Isosceles => scan::sweep_isosceles(dim, &kfr(&FIGURE_KFR), &linspace(0.0, 1.0, a.points))?.to_table(),
        Figure::Polar => {
            let thetas = linspace(0.0, std::f64::consts::FRAC_PI_2, a.points);
            scan::boundary_table(&scan::sweep_polar_boundary(dim, &kfr(&FIGURE_2_KFR), &thetas)?)
        }
        Figure::Distance => {
            let dims = match a.dim {
                Some(d) => vec![d],
                None => Dimensionality::ALL.to_vec(),
            };
            let grid = a.kfr.clone().unwrap_or_else(|| linspace(0.0, FIGURE_3_MAX_KFR, a.points));
            scan::sweep_distance(&dims, &grid)?.to_table()
        }
    };
    match fmt {
        Format::Csv => Ok(table.to_csv()),
        Format::Json => json(&serde_json::json!({ "columns": table.columns, "rows": table.rows })),
    }
}

fn scalar(
    fmt: Format,
    quantity: &str,
    dim: Option<Dimensionality>,
    value: f64,
    tolerance_used: Option<f64>,
) -> Result<String, CliError> {
    match fmt {
        Format::Json => json(&ScalarResult {
            quantity: quantity.to_string(),
            dim: dim.map(|d| d.label().to_string()),
            value,
            tolerance_used,
        }),
        Format::Csv => Ok(format!("{quantity}\n{}\n", format_csv_number(value))),
    }
}

fn record<T: Serialize>(fmt: Format, value: &T, table: &Table) -> Result<String, CliError> {
    match fmt {
        Format::Json => json(value),
        Format::Csv => Ok(table.to_csv()),
    }
}

fn json<T: Serialize + ?Sized>(value: &T) -> Result<String, CliError> {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| usage(e.to_string()))?;
    s.push('\n');
    Ok(s)
}
