//! Command-line front end.
//!
//! Exit codes: 0 success, 1 numerical failure, 2 input error, 3 infinite
//! upper bound, 4 missing artifact.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::cuttail::{find_t_cut, simplify_bounds, BoundAction, CutTailResult, Simplify};
use crate::engine::{bisect_sigma, write_polytopes, BisectOptions, BisectionReport, EngineConfig, MultiPolytope};
use crate::lpcore::HullStrategy;
use crate::numlin::{spectral_abscissa, Vector};
use crate::oracle::best_periodic_lower_bound;
use crate::sysmodel::{FiniteSwitchingLaw, MatrixJson, RestrictedSystem};
use crate::{Error, Result};

#[derive(Debug, Parser)]
#[command(name = "switchbound", version, about = "Certified Lyapunov exponent bounds for restricted switching systems")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Also write a manifest that `switchbound run` can replay.
    #[arg(long, global = true)]
    pub manifest: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Subcommand, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Command {
    /// Bisect for a certified interval containing the exponent.
    Compute {
        system: PathBuf,
        #[command(flatten)]
        #[serde(flatten)]
        engine: EngineArgs,
        /// Report JSON path.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// STABLE, UNSTABLE or UNDECIDED with the interval found.
    CheckStability {
        system: PathBuf,
        #[command(flatten)]
        #[serde(flatten)]
        engine: EngineArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// T_cut of every mode; optionally rewrite the upper bounds.
    CutTail {
        /// System JSON or a single matrix given as a list of rows.
        input: PathBuf,
        #[arg(long, value_enum)]
        simplify: Option<SimplifyArg>,
        /// Where the rewritten system goes (stdout otherwise).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Best periodic lower bound over a duration grid.
    Oracle {
        system: PathBuf,
        #[arg(long, default_value_t = 4)]
        max_legs: usize,
        /// Durations per mode, endpoints included.
        #[arg(long, default_value_t = 5)]
        grid_points: usize,
        /// Where the best law goes.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Trajectory of a law from `x0`.
    Simulate {
        system: PathBuf,
        #[arg(long)]
        law: PathBuf,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        x0: Vec<f64>,
        #[arg(long, default_value_t = 0.1)]
        step: f64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// One file per space from a compute report.
    Export {
        report: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        /// Output directory.
        #[arg(long)]
        out: PathBuf,
    },
    /// Replay a manifest.
    Run { file: PathBuf },
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct EngineArgs {
    #[arg(long = "n-grid", default_value_t = 10)]
    pub n_grid: usize,
    #[arg(long, default_value_t = 1e-4)]
    pub delta: f64,
    #[arg(long, default_value_t = 60)]
    pub kmax: usize,
    #[arg(long, value_enum, default_value_t = HullArg::Sym)]
    pub hull: HullArg,
    /// Target width of the interval.
    #[arg(long, default_value_t = 0.01)]
    pub width: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Evaluate each iteration's candidates on all cores.
    #[arg(long)]
    pub parallel: bool,
}

impl Default for EngineArgs {
    fn default() -> Self {
        EngineArgs { n_grid: 10, delta: 1e-4, kmax: 60, hull: HullArg::Sym, width: 0.01, seed: 0, parallel: false }
    }
}

impl EngineArgs {
    pub fn config(&self) -> EngineConfig {
        EngineConfig {
            n_grid: self.n_grid,
            delta: self.delta,
            k_max: self.kmax,
            hull: match self.hull {
                HullArg::Sym => HullStrategy::Symmetrized,
                HullArg::Pos => HullStrategy::Positive,
            },
            seed: self.seed,
            parallel: self.parallel,
            ..EngineConfig::default()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum HullArg {
    Sym,
    Pos,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SimplifyArg {
    Reduce,
    Cancel,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

/// A replayable record of one invocation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub version: String,
    #[serde(flatten)]
    pub command: Command,
    /// Resolved engine settings, for reference.
    pub config: Option<EngineConfig>,
}

impl RunManifest {
    pub fn new(command: Command) -> Self {
        let config = match &command {
            Command::Compute { engine, .. } | Command::CheckStability { engine, .. } => Some(engine.config()),
            _ => None,
        };
        RunManifest { version: env!("CARGO_PKG_VERSION").to_string(), command, config }
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = read(path)?;
        serde_json::from_str(&text).map_err(|e| input_error(path, e))
    }
}

/// Three-valued stability verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Stability {
    Stable,
    Unstable,
    Undecided,
}

impl Stability {
    pub fn of(report: &BisectionReport) -> Self {
        if report.hi < 0.0 {
            Stability::Stable
        } else if report.lo > 0.0 {
            Stability::Unstable
        } else {
            Stability::Undecided
        }
    }
}

/// Exit code for an error.
pub fn exit_code(err: &Error) -> u8 {
    match err {
        Error::InfiniteBound { .. } => 3,
        Error::MissingArtifact(_) => 4,
        Error::Io(_)
        | Error::Json(_)
        | Error::InvalidSystem(_)
        | Error::InvalidLaw(_)
        | Error::InvalidArgument(_)
        | Error::DimensionMismatch { .. }
        | Error::NotPeriodizable
        | Error::NotStable { .. } => 2,
        _ => 1,
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::Io(std::io::Error::new(e.kind(), format!("{}: {e}", path.display()))))
}

fn input_error(path: &Path, e: serde_json::Error) -> Error {
    Error::InvalidSystem(format!("{}: {e}", path.display()))
}

fn load_system(path: &Path) -> Result<RestrictedSystem> {
    RestrictedSystem::from_json_str(&read(path)?).map_err(|e| match e {
        Error::Json(j) => input_error(path, j),
        Error::InvalidSystem(m) => Error::InvalidSystem(format!("{}: {m}", path.display())),
        other => other,
    })
}

fn write_or_print(out: &mut dyn Write, path: Option<&Path>, body: &str) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, body)?,
        None => out.write_all(body.as_bytes())?,
    }
    Ok(())
}

fn json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serializable") + "\n"
}

/// Parses `args` and runs the command, writing human output to `out`.
pub fn run_from_args<I, T>(args: I, out: &mut dyn Write) -> Result<()>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = Cli::try_parse_from(args).map_err(|e| Error::InvalidArgument(e.to_string()))?;
    run(&cli, out)
}

pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<()> {
    if let Some(path) = &cli.manifest {
        std::fs::write(path, json(&RunManifest::new(cli.command.clone())))?;
    }
    execute(&cli.command, out)
}

pub fn execute(command: &Command, out: &mut dyn Write) -> Result<()> {
    match command {
        Command::Compute { system, engine, out: path } => {
            let sys = load_system(system)?;
            let report = bisect_sigma(&sys, &engine.config(), &BisectOptions::width(engine.width))?;
            print_interval(out, &report)?;
            if let Some(p) = path {
                std::fs::write(p, json(&report))?;
                writeln!(out, "report written to {}", p.display())?;
            }
            Ok(())
        }
        Command::CheckStability { system, engine, out: path } => {
            let sys = load_system(system)?;
            let opts = BisectOptions { stop_on_sign: true, ..BisectOptions::width(engine.width) };
            let report = bisect_sigma(&sys, &engine.config(), &opts)?;
            let verdict = Stability::of(&report);
            let label = serde_json::to_value(verdict)?.as_str().unwrap_or_default().to_string();
            match verdict {
                Stability::Undecided => writeln!(out, "{label} sigma in [{}, {}]", report.lo, report.hi)?,
                _ => writeln!(out, "{label}")?,
            }
            print_interval(out, &report)?;
            if let Some(p) = path {
                std::fs::write(p, json(&report))?;
            }
            Ok(())
        }
        Command::CutTail { input, simplify, out: path } => cut_tail(input, *simplify, path.as_deref(), out),
        Command::Oracle { system, max_legs, grid_points, out: path } => {
            let sys = load_system(system)?;
            let best = best_periodic_lower_bound(&sys, *max_legs, *grid_points)?;
            writeln!(
                out,
                "sigma >= {} ({} laws, {})",
                best.bound,
                best.evaluated,
                if best.exhaustive { "exhaustive" } else { "budget reached" }
            )?;
            if let Some(law) = &best.law {
                writeln!(out, "law {}", law.to_json_string())?;
                if let Some(p) = path {
                    std::fs::write(p, law.to_json_string() + "\n")?;
                }
            }
            Ok(())
        }
        Command::Simulate { system, law, x0, step, format, out: path } => {
            let sys = load_system(system)?;
            let law = FiniteSwitchingLaw::from_json_str(&read(law)?)?;
            if x0.len() != sys.dim() {
                return Err(Error::DimensionMismatch { expected: sys.dim(), found: x0.len() });
            }
            let traj = sys.simulate(&law, &Vector::from_column_slice(x0), *step)?;
            let body = match format {
                Format::Json => json(&traj),
                Format::Csv => {
                    let mut s = String::from("t");
                    for i in 1..=sys.dim() {
                        s.push_str(&format!(",x{i}"));
                    }
                    s.push('\n');
                    for (t, p) in traj.times.iter().zip(&traj.points) {
                        s.push_str(&t.to_string());
                        for v in p {
                            s.push(',');
                            s.push_str(&v.to_string());
                        }
                        s.push('\n');
                    }
                    s
                }
            };
            write_or_print(out, path.as_deref(), &body)
        }
        Command::Export { report, format, out: dir } => export(report, *format, dir, out),
        Command::Run { file } => {
            let m = RunManifest::load(file)?;
            if matches!(m.command, Command::Run { .. }) {
                return Err(Error::InvalidArgument("a manifest cannot replay another manifest".into()));
            }
            execute(&m.command, out)
        }
    }
}

fn print_interval(out: &mut dyn Write, r: &BisectionReport) -> Result<()> {
    writeln!(out, "sigma in [{}, {}] (width {}, {} probes{})", r.lo, r.hi, r.width(), r.probes.len(),
        if r.converged { "" } else { ", target width not reached" })?;
    match &r.lower_law {
        Some(law) => writeln!(out, "lower end: periodic law {}", law.to_json_string())?,
        None => writeln!(out, "lower end: logarithmic norm bound")?,
    }
    match (&r.upper_shift, &r.upper_report) {
        (Some(alpha), Some(rep)) => writeln!(
            out,
            "upper end: multinorm for shift {alpha} with nu = {} (N = {}, |A^2|_P = {}, len P = {:?})",
            rep.nu.unwrap_or(f64::NAN),
            rep.config.n_grid,
            rep.a2_norm.unwrap_or(f64::NAN),
            rep.len_p
        )?,
        _ => writeln!(out, "upper end: logarithmic norm bound")?,
    }
    Ok(())
}

fn cut_tail(input: &Path, simplify: Option<SimplifyArg>, path: Option<&Path>, out: &mut dyn Write) -> Result<()> {
    let text = read(input)?;
    let sys = match RestrictedSystem::from_json_str(&text) {
        Ok(sys) => Some(sys),
        Err(sys_err) => match serde_json::from_str::<MatrixJson>(&text) {
            Ok(m) => {
                let a = m.to_matrix(0)?;
                if simplify.is_some() {
                    return Err(Error::InvalidArgument("--simplify needs a system file".into()));
                }
                writeln!(out, "mode\tT_cut\tmethod")?;
                print_t_cut(out, 1, &a)?;
                return Ok(());
            }
            Err(_) => {
                return Err(match sys_err {
                    Error::Json(j) => input_error(input, j),
                    other => other,
                })
            }
        },
    }
    .expect("matched above");
    match simplify {
        None => {
            writeln!(out, "mode\tT_cut\tmethod")?;
            for j in 0..sys.n_modes() {
                print_t_cut(out, j + 1, sys.mode(j))?;
            }
            Ok(())
        }
        Some(how) => {
            let how = match how {
                SimplifyArg::Reduce => Simplify::Reduce,
                SimplifyArg::Cancel => Simplify::Cancel,
            };
            let s = simplify_bounds(&sys, how)?;
            let mut log = Vec::new();
            for c in &s.changes {
                let line = match &c.action {
                    BoundAction::Reduced { from, to } => format!("mode {}: M {from} -> {to} (T_cut {})", c.mode, c.t_cut.unwrap_or(0.0)),
                    BoundAction::Cancelled { from } => format!("mode {}: M {from} -> inf (T_cut {})", c.mode, c.t_cut.unwrap_or(0.0)),
                    BoundAction::Unchanged { reason } => format!("mode {}: unchanged ({reason})", c.mode),
                    BoundAction::SkippedUnstable { .. } => format!("mode {}: skipped (unstable)", c.mode),
                };
                log.push(line);
            }
            let body = s.system.to_json_string() + "\n";
            match path {
                Some(p) => {
                    for line in &log {
                        writeln!(out, "{line}")?;
                    }
                    std::fs::write(p, body)?;
                    std::fs::write(p.with_extension("changes.json"), json(&s.changes))?;
                    writeln!(out, "system written to {}", p.display())?;
                }
                None => {
                    out.write_all(body.as_bytes())?;
                    for line in &log {
                        writeln!(out, "# {line}")?;
                    }
                }
            }
            if s.has_infinite_bounds {
                writeln!(out, "note: some upper bounds are infinite; compute needs finite bounds")?;
            }
            Ok(())
        }
    }
}

fn print_t_cut(out: &mut dyn Write, mode: usize, a: &crate::numlin::Matrix) -> Result<()> {
    if spectral_abscissa(a) >= 0.0 {
        writeln!(out, "{mode}\t-\tskipped (unstable)")?;
        return Ok(());
    }
    let CutTailResult { t_cut, method, .. } = find_t_cut(a)?;
    let tag = serde_json::to_value(method)?.as_str().unwrap_or_default().to_string();
    writeln!(out, "{mode}\t{t_cut}\t{tag}")?;
    Ok(())
}

fn export(report: &Path, format: Format, dir: &Path, out: &mut dyn Write) -> Result<()> {
    let missing = || Error::MissingArtifact(format!("{} contains no polytopes", report.display()));
    let text = std::fs::read_to_string(report)
        .map_err(|e| Error::MissingArtifact(format!("{}: {e}", report.display())))?;
    let value: serde_json::Value = serde_json::from_str(&text).map_err(|_| missing())?;
    let node = value
        .get("polytopes")
        .or_else(|| value.get("upper_report").and_then(|r| r.get("polytopes")))
        .ok_or_else(missing)?;
    let polytopes: MultiPolytope = serde_json::from_value(node.clone()).map_err(|_| missing())?;
    if polytopes.spaces.iter().all(Vec::is_empty) {
        return Err(missing());
    }
    let paths = write_polytopes(&polytopes, dir, format == Format::Csv)?;
    let half = polytopes.strategy == HullStrategy::Symmetrized;
    for (j, p) in paths.iter().enumerate() {
        writeln!(
            out,
            "space {}: {} stored vertices{} -> {}",
            j + 1,
            polytopes.spaces[j].len(),
            if half { " (half count of the symmetrized hull)" } else { "" },
            p.display()
        )?;
    }
    Ok(())
}
