//! `optres`: optimal relative backward error of one-step methods on
//! `y' = lambda y`.

mod audit;

use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;

use optres::backward_error::{delta_series, measure_order};
use optres::field::{
    contours, default_levels, emit_csv, emit_svg, preset, sample_field_with_threads, write_csv, ContourSource,
    FieldError, GridSpec,
};
use optres::methods::{catalog, resolve, MethodError, MethodSpec};
use optres::oracle::verify;

/// Environment variable naming the directory that relative output paths
/// are written under.
const OUT_DIR_VAR: &str = "OPTRES_OUT_DIR";

#[derive(Parser)]
#[command(name = "optres", version, about = "Optimal relative backward error of one-step ODE methods")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List builtin methods with their nominal orders.
    List {
        #[arg(long)]
        json: bool,
    },
    /// Sample |delta|, |R| and the order star over a grid of mu.
    ///
    /// METHOD is a spec such as theta:0.5, taylor:4, pade:2,2, rk:rkf4,
    /// rk:@tableau.json, sdirk3:large or tau:1. The aliases euler, midpoint
    /// and backward-euler stand for theta:0, theta:0.5 and theta:1.
    ///
    /// Without --out or --svg the CSV goes to stdout. Relative output paths
    /// are resolved against $OPTRES_OUT_DIR when it is set.
    Field {
        method: String,
        /// re_min,re_max,im_min,im_max
        #[arg(long, allow_hyphen_values = true)]
        window: Option<String>,
        /// Nodes per axis.
        #[arg(long)]
        res: Option<usize>,
        /// Named window from the shipped presets (fig1a .. fig8d, orderstar-rkf5).
        #[arg(long)]
        preset: Option<String>,
        /// CSV output path.
        #[arg(long)]
        out: Option<PathBuf>,
        /// SVG output path.
        #[arg(long)]
        svg: Option<PathBuf>,
        /// Worker threads for sampling; the output does not depend on it.
        #[arg(long, default_value_t = 0)]
        threads: usize,
        /// Contoured quantity: abs_delta, abs_R or orderstar.
        #[arg(long, default_value = "abs_delta")]
        source: String,
        /// Comma-separated contour levels; default 0.05,0.10,...,1.00.
        #[arg(long)]
        levels: Option<String>,
    },
    /// Fit the order of delta from step sizes and print its leading series terms.
    Order {
        method: String,
        /// Comma-separated decreasing step sizes in (0, 0.5].
        #[arg(long)]
        h: Option<String>,
    },
    /// Per-step optimal backward error of a skeleton file with columns t,y_re,y_im.
    Audit {
        #[arg(long)]
        skeleton: PathBuf,
        /// lambda as re,im
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        /// Steps with alpha above this are flagged.
        #[arg(long, default_value_t = 0.05)]
        warn_level: f64,
        /// Print CSV instead of a table.
        #[arg(long)]
        csv: bool,
    },
    /// Check the unwinding number and constant-residual optimality against brute force.
    Verify {
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Numerical(String),
    Io(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Numerical(_) => 3,
            CliError::Io(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Numerical(m) | CliError::Io(m) => m,
        }
    }
}

impl From<MethodError> for CliError {
    fn from(e: MethodError) -> Self {
        match e {
            MethodError::Io { .. } => CliError::Io(e.to_string()),
            MethodError::DegenerateSystem(_) => CliError::Numerical(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<FieldError> for CliError {
    fn from(e: FieldError) -> Self {
        match e {
            FieldError::Io { .. } => CliError::Io(e.to_string()),
            FieldError::Method(m) => m.into(),
            FieldError::Residual(_) | FieldError::Threads(_) => CliError::Numerical(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

fn io_error(e: io::Error) -> CliError {
    CliError::Io(e.to_string())
}

fn parse_list(s: &str, what: &str) -> Result<Vec<f64>, CliError> {
    s.split(',')
        .map(|v| v.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|_| CliError::Usage(format!("{what}: expected comma-separated numbers, got {s:?}")))
}

fn parse_spec(s: &str) -> Result<MethodSpec, CliError> {
    Ok(MethodSpec::parse(s)?)
}

fn output_path(p: &Path) -> PathBuf {
    match std::env::var_os(OUT_DIR_VAR) {
        Some(dir) if p.is_relative() => Path::new(&dir).join(p),
        _ => p.to_path_buf(),
    }
}

#[derive(Serialize)]
struct ListEntry {
    spec: String,
    nominal_order: usize,
    label: String,
}

fn cmd_list(json: bool) -> Result<(), CliError> {
    let entries: Vec<ListEntry> = catalog()
        .iter()
        .map(|spec| {
            let info = resolve::<f64>(spec)?;
            Ok(ListEntry { spec: spec.to_string(), nominal_order: info.nominal_order, label: spec.label() })
        })
        .collect::<Result<_, CliError>>()?;
    let mut out = io::stdout().lock();
    if json {
        serde_json::to_writer_pretty(&mut out, &entries).map_err(|e| CliError::Io(e.to_string()))?;
        writeln!(out).map_err(io_error)?;
    } else {
        for e in &entries {
            writeln!(out, "{:<14} order {:>2}  {}", e.spec, e.nominal_order, e.label).map_err(io_error)?;
        }
    }
    Ok(())
}

const DEFAULT_WINDOW: [f64; 4] = [-5.0, 5.0, -5.0, 5.0];
const DEFAULT_RES: usize = 128;

#[allow(clippy::too_many_arguments)]
fn cmd_field(
    method: &str,
    window: Option<&str>,
    res: Option<usize>,
    preset_name: Option<&str>,
    out: Option<&Path>,
    svg: Option<&Path>,
    threads: usize,
    source: &str,
    levels: Option<&str>,
) -> Result<(), CliError> {
    let spec = parse_spec(method)?;
    let source = ContourSource::parse(source)
        .ok_or_else(|| CliError::Usage(format!("unknown contour source {source:?}")))?;
    let levels = match levels {
        Some(l) => parse_list(l, "--levels")?,
        None => default_levels(),
    };
    let base = match preset_name {
        Some(name) => Some(preset(name)?.grid),
        None => None,
    };
    let win = match window {
        Some(w) => {
            let v = parse_list(w, "--window")?;
            <[f64; 4]>::try_from(v).map_err(|_| CliError::Usage("--window needs four numbers".into()))?
        }
        None => base.map_or(DEFAULT_WINDOW, |g| [g.re_min, g.re_max, g.im_min, g.im_max]),
    };
    let res = res.or(base.map(|g| g.nx)).unwrap_or(DEFAULT_RES);
    let grid = GridSpec::square(win, res)?;
    let threads = if threads == 0 { std::thread::available_parallelism().map_or(1, |n| n.get()) } else { threads };
    let field = sample_field_with_threads(&spec, &grid, threads)?;

    if let Some(p) = out {
        emit_csv(&field, &output_path(p))?;
    }
    if let Some(p) = svg {
        let set = contours(&field, source, &levels)?;
        emit_svg(&field, &[set], &output_path(p))?;
    }
    if out.is_none() && svg.is_none() {
        let stdout = io::stdout().lock();
        write_csv(&field, io::BufWriter::new(stdout)).map_err(|e| CliError::Io(e.to_string()))?;
    }
    Ok(())
}

const DEFAULT_H: [f64; 4] = [0.1, 0.05, 0.025, 0.0125];

/// Series coefficients at or below this are reported as zero.
const SERIES_FLOOR: f64 = 1e-12;

/// Four geometric step sizes in (0, 0.5], as small as possible while
/// `|delta|` at the smallest one stays well above rounding. High-order
/// methods need this because `|delta(-0.0125)|` is lost in `f64`.
fn step_sizes(r: &optres::RationalFunction64) -> Vec<f64> {
    let usable = |h: f64| {
        optres::backward_error::optimal_delta(optres::Complex64::new(-h, 0.0), r)
            .is_ok_and(|s| !s.singular && s.abs_delta > 1e-13)
    };
    let mut top = DEFAULT_H[0];
    while top <= 0.5 {
        for ratio in [2.0, 1.5, 1.25, 1.1] {
            let hs: Vec<f64> = (0..4).map(|i| top / f64::powi(ratio, i)).collect();
            if hs.iter().all(|&h| usable(h)) {
                return hs;
            }
        }
        top *= 1.25;
    }
    DEFAULT_H.to_vec()
}

fn cmd_order(method: &str, h: Option<&str>) -> Result<(), CliError> {
    let spec = parse_spec(method)?;
    let info = resolve::<f64>(&spec)?;
    let hs = match h {
        Some(h) => parse_list(h, "--h")?,
        None => step_sizes(&info.r),
    };
    let slope = measure_order(&info.r, &hs);
    if let Err(optres::backward_error::ResidualError::BadInput(m)) = &slope {
        if h.is_some() {
            return Err(CliError::Usage(m.clone()));
        }
    }
    let series = delta_series(&info.r, 20).map_err(|e| CliError::Numerical(e.to_string()))?;
    let mut out = io::stdout().lock();
    let w = |r: io::Result<()>| r.map_err(io_error);
    w(writeln!(out, "method: {spec} ({})", spec.label()))?;
    w(writeln!(out, "nominal order: {}", info.nominal_order))?;
    let hs_text: Vec<String> = hs.iter().map(|h| h.to_string()).collect();
    w(writeln!(out, "h: {}", hs_text.join(", ")))?;
    match &slope {
        Ok(s) => w(writeln!(out, "fitted slope: {s:.4}"))?,
        Err(e) => w(writeln!(out, "fitted slope: not measurable in double precision ({e})"))?,
    }
    w(writeln!(out, "delta series through mu^19, leading terms above 1e-12:"))?;
    let leading = series.iter().enumerate().filter(|(_, c)| c.norm() > SERIES_FLOOR).take(3);
    for (j, c) in leading {
        if c.im == 0.0 {
            w(writeln!(out, "  mu^{j}: {:.15e}", c.re))?;
        } else {
            w(writeln!(out, "  mu^{j}: {:.15e}{:+.15e}i", c.re, c.im))?;
        }
    }
    slope.map(|_| ()).map_err(|e| CliError::Numerical(e.to_string()))
}

fn cmd_verify(samples: usize, seed: u64) -> Result<(), CliError> {
    let report = verify(samples, seed);
    let mut out = io::stdout().lock();
    if let Some(c) = report.counterexamples.first() {
        writeln!(out, "FAIL: {} of {} instances", report.counterexamples.len(), report.instances).map_err(io_error)?;
        writeln!(out, "counterexample: {c}").map_err(io_error)?;
        return Err(CliError::Numerical("verification failed".into()));
    }
    writeln!(out, "PASS: {} instances checked, {} singular draws skipped", report.instances, report.skipped)
        .map_err(io_error)?;
    Ok(())
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::List { json } => cmd_list(json),
        Command::Field { method, window, res, preset, out, svg, threads, source, levels } => cmd_field(
            &method,
            window.as_deref(),
            res,
            preset.as_deref(),
            out.as_deref(),
            svg.as_deref(),
            threads,
            &source,
            levels.as_deref(),
        ),
        Command::Order { method, h } => cmd_order(&method, h.as_deref()),
        Command::Audit { skeleton, lambda, warn_level, csv } => audit::run(&skeleton, &lambda, warn_level, csv),
        Command::Verify { samples, seed } => cmd_verify(samples, seed),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("optres: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}
