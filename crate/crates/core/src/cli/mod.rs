//! The `eprb` command line.
//!
//! Exit codes: 0 success, 2 invalid arguments, 3 numerical or model errors
//! (boundary hits, unavailable modes), 4 a violated inequality under
//! `--fail-on-violation`.

mod angle;
mod format;

pub use angle::{parse_angle, parse_angle_list, AngleLiteral};
pub use format::sig9;

use std::f64::consts::PI;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::error::Error;
use crate::geometry::MeasurementSetting;
use crate::inequalities::{check_model, BuiltinModel, Inequality, InequalityReport, Mode};
use crate::lhv::{estimate_correlation, MonteCarlo, DEFAULT_SAMPLES};
use crate::quantum::{correlation_at, p_prime, p_same, JointDistribution, SingletSampler};
use crate::tube::{
    richer_tube_disagreement, tube_correlation_exact, Ball, OvalBall, StripeModel, TubeSpec,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_MODEL: i32 = 3;
pub const EXIT_VIOLATION: i32 = 4;

/// Sweeps longer than this are refused.
const MAX_SWEEP_ROWS: f64 = 1e7;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Text,
    Csv,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "eprb", version, about = "EPRB singlet statistics, Bell-type inequalities and striped-tube models")]
#[command(allow_negative_numbers = true)]
struct Cli {
    /// Master seed for every random stream.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Monte Carlo sample count.
    #[arg(long, global = true)]
    samples: Option<u64>,
    /// Parallel estimator workers.
    #[arg(long, global = true)]
    workers: Option<usize>,
    #[arg(long, global = true, value_enum)]
    format: Option<OutputFormat>,
    /// JSON file with any of `seed`, `samples`, `workers`, `format`; flags win.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Closed-form singlet statistics.
    #[command(subcommand)]
    Qm(QmCommand),
    /// Draw singlet pairs.
    #[command(subcommand)]
    Sample(SampleCommand),
    /// Evaluate an inequality against a model.
    #[command(subcommand)]
    Bell(BellCommand),
    /// The four-face striped tube.
    #[command(subcommand)]
    Tube(TubeCommand),
    /// The oval ball.
    #[command(subcommand)]
    Oval(OvalCommand),
    /// Tabulate quantum and triangle disagreement over [0, π].
    Sweep(SweepArgs),
}

#[derive(Debug, Subcommand)]
enum QmCommand {
    /// P(θ) and P'(θ).
    Prob(ThetaArg),
    /// -cos θ.
    Correlation(ThetaArg),
    /// The four joint outcome probabilities.
    Joint(ThetaArg),
}

#[derive(Debug, clap::Args)]
struct ThetaArg {
    #[arg(long, allow_hyphen_values = true)]
    theta: String,
}

#[derive(Debug, Subcommand)]
enum SampleCommand {
    /// Pairs at settings 0 and θ.
    Singlet {
        #[arg(long, allow_hyphen_values = true)]
        theta: String,
        /// Emit every pair as CSV (index,outcome1,outcome2).
        #[arg(long)]
        csv: bool,
    },
}

#[derive(Debug, Subcommand)]
enum BellCommand {
    Check {
        #[arg(long, value_parser = ["star", "doublestar"])]
        inequality: String,
        #[arg(long, value_parser = ["qm", "tube4", "richer-tube"])]
        model: String,
        /// Comma-separated angles, e.g. `pi/4,pi/4,pi/4`.
        #[arg(long)]
        angles: String,
        #[arg(long, value_parser = ["exact", "mc"], default_value = "exact")]
        mode: String,
        /// Exit with status 4 when the verdict is violated.
        #[arg(long)]
        fail_on_violation: bool,
    },
}

#[derive(Debug, Subcommand)]
enum TubeCommand {
    /// The four k-values of a ball at height α.
    Faces {
        #[arg(long)]
        alpha: f64,
    },
    /// Correlation between two faces.
    Corr {
        /// Two face indices in 1..=4, e.g. `1,3`.
        #[arg(long)]
        faces: String,
        #[arg(long, value_parser = ["exact", "mc"], default_value = "exact")]
        mode: String,
    },
}

#[derive(Debug, Subcommand)]
enum OvalCommand {
    /// Push a fresh oval ball against one face.
    Measure {
        #[arg(long)]
        beta: f64,
        #[arg(long)]
        face: usize,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Curve {
    Qm,
    Triangle,
}

#[derive(Debug, clap::Args)]
struct SweepArgs {
    #[arg(long, value_enum, default_value = "qm")]
    curve: Curve,
    #[arg(long)]
    step: String,
    #[arg(long)]
    csv: bool,
}

/// Run parameters after merging the config file and the flags.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RunConfig {
    pub seed: u64,
    pub samples: u64,
    pub workers: usize,
    #[serde(skip)]
    pub format: Option<OutputFormat>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            samples: DEFAULT_SAMPLES,
            workers: 1,
            format: None,
        }
    }
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    seed: Option<u64>,
    samples: Option<u64>,
    workers: Option<usize>,
    format: Option<OutputFormat>,
}

impl RunConfig {
    fn resolve(cli: &Cli) -> Result<Self, Failure> {
        let file = match &cli.config {
            Some(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
                serde_json::from_str::<ConfigFile>(&text)
                    .map_err(|e| Failure::Usage(format!("bad config {}: {e}", path.display())))?
            }
            None => ConfigFile::default(),
        };
        let d = RunConfig::default();
        let cfg = RunConfig {
            seed: cli.seed.or(file.seed).unwrap_or(d.seed),
            samples: cli.samples.or(file.samples).unwrap_or(d.samples),
            workers: cli.workers.or(file.workers).unwrap_or(d.workers),
            format: cli.format.or(file.format),
        };
        if cfg.samples == 0 || cfg.workers == 0 {
            return Err(Failure::Usage("--samples and --workers must be positive".into()));
        }
        Ok(cfg)
    }

    fn monte_carlo(&self) -> MonteCarlo {
        MonteCarlo::new(self.samples, self.seed).with_workers(self.workers)
    }

    fn format_or(&self, default: OutputFormat) -> OutputFormat {
        self.format.unwrap_or(default)
    }
}

enum Failure {
    Usage(String),
    Model(Error),
    Io(std::io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Argument(msg) => Failure::Usage(msg),
            other => Failure::Model(other),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Io(e.into())
    }
}

/// Runs the command line `args` (program name first), writing results to
/// `out` and diagnostics to standard error. Returns the exit code.
pub fn run<I, T, W>(args: I, out: &mut W) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
    W: Write,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind::{DisplayHelp, DisplayVersion};
            if matches!(e.kind(), DisplayHelp | DisplayVersion) {
                let _ = write!(out, "{e}");
                return EXIT_OK;
            }
            eprint!("{e}");
            return EXIT_USAGE;
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Model(e)) => {
            eprintln!("error: {e}");
            EXIT_MODEL
        }
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            1
        }
    }
}

fn execute<W: Write>(cli: &Cli, out: &mut W) -> Result<i32, Failure> {
    let cfg = RunConfig::resolve(cli)?;
    match &cli.command {
        Command::Qm(cmd) => qm(cmd, &cfg, out),
        Command::Sample(SampleCommand::Singlet { theta, csv }) => sample(theta, *csv, &cfg, out),
        Command::Bell(BellCommand::Check {
            inequality,
            model,
            angles,
            mode,
            fail_on_violation,
        }) => {
            let report = check_model(
                model.parse::<BuiltinModel>()?,
                inequality.parse::<Inequality>()?,
                &parse_angle_list(angles)?,
                mode.parse::<Mode>()?,
                &cfg.monte_carlo(),
            )?;
            write_report(&report, &cfg, out)?;
            Ok(if *fail_on_violation && report.is_violated() {
                EXIT_VIOLATION
            } else {
                EXIT_OK
            })
        }
        Command::Tube(cmd) => tube(cmd, &cfg, out),
        Command::Oval(OvalCommand::Measure { beta, face }) => {
            let mut ball = OvalBall::new(*beta)?;
            let value = ball.measure(*face)?;
            match cfg.format_or(OutputFormat::Text) {
                OutputFormat::Text => writeln!(out, "face {face}: {value} (ball consumed)")?,
                OutputFormat::Csv => writeln!(out, "beta,face,value\n{},{face},{value}", sig9(*beta))?,
                OutputFormat::Json => {
                    writeln!(out, "{}", json!({"beta": beta, "face": face, "value": value.value()}))?
                }
            }
            Ok(EXIT_OK)
        }
        Command::Sweep(args) => sweep(args, &cfg, out),
    }
}

fn qm<W: Write>(cmd: &QmCommand, cfg: &RunConfig, out: &mut W) -> Result<i32, Failure> {
    let format = cfg.format_or(OutputFormat::Text);
    let (theta, rows): (f64, Vec<(&str, f64)>) = match cmd {
        QmCommand::Prob(t) => {
            let theta = parse_angle(&t.theta)?;
            (theta, vec![("p_same", p_same(theta)?), ("p_prime", p_prime(theta)?)])
        }
        QmCommand::Correlation(t) => {
            let theta = parse_angle(&t.theta)?;
            (theta, vec![("correlation", correlation_at(theta)?)])
        }
        QmCommand::Joint(t) => {
            let theta = parse_angle(&t.theta)?;
            let j = JointDistribution::at_angle(theta)?;
            (theta, vec![("p_pp", j.p_pp), ("p_pm", j.p_pm), ("p_mp", j.p_mp), ("p_mm", j.p_mm)])
        }
    };
    match format {
        OutputFormat::Text => {
            writeln!(out, "theta = {}", sig9(theta))?;
            for (name, v) in &rows {
                let label = match *name {
                    "p_same" => "P(theta)",
                    "p_prime" => "P'(theta)",
                    "correlation" => "E(theta)",
                    other => other,
                };
                writeln!(out, "{label} = {}", sig9(*v))?;
            }
        }
        OutputFormat::Csv => {
            let names: Vec<&str> = rows.iter().map(|r| r.0).collect();
            let values: Vec<String> = rows.iter().map(|r| sig9(r.1)).collect();
            writeln!(out, "theta,{}", names.join(","))?;
            writeln!(out, "{},{}", sig9(theta), values.join(","))?;
        }
        OutputFormat::Json => {
            let mut obj = serde_json::Map::new();
            obj.insert("theta".into(), json!(theta));
            for (name, v) in rows {
                obj.insert(name.into(), json!(v));
            }
            writeln!(out, "{}", serde_json::Value::Object(obj))?;
        }
    }
    Ok(EXIT_OK)
}

fn sample<W: Write>(theta: &str, csv: bool, cfg: &RunConfig, out: &mut W) -> Result<i32, Failure> {
    let theta = parse_angle(theta)?;
    let a = MeasurementSetting::new(0.0)?;
    let b = MeasurementSetting::new(theta)?;
    let mut sampler = SingletSampler::new(cfg.seed);
    let format = if csv { OutputFormat::Csv } else { cfg.format_or(OutputFormat::Text) };
    if format == OutputFormat::Csv {
        writeln!(out, "index,outcome1,outcome2")?;
        for i in 0..cfg.samples {
            let (x, y) = sampler.sample(a, b);
            writeln!(out, "{i},{},{}", x.value(), y.value())?;
        }
        return Ok(EXIT_OK);
    }
    let mut tally = [0u64; 4];
    for _ in 0..cfg.samples {
        let (x, y) = sampler.sample(a, b);
        let cell = usize::from(x.value() < 0) * 2 + usize::from(y.value() < 0);
        tally[cell] += 1;
    }
    let n = cfg.samples as f64;
    let corr = (tally[0] + tally[3]) as f64 / n - (tally[1] + tally[2]) as f64 / n;
    match format {
        OutputFormat::Json => {
            let v = json!({
                "theta": theta,
                "seed": cfg.seed,
                "samples": cfg.samples,
                "counts": {"pp": tally[0], "pm": tally[1], "mp": tally[2], "mm": tally[3]},
                "correlation": corr,
                "correlation_qm": correlation_at(theta)?,
            });
            writeln!(out, "{v}")?;
        }
        _ => {
            writeln!(out, "theta = {}  samples = {}  seed = {}", sig9(theta), cfg.samples, cfg.seed)?;
            for (label, count) in ["++", "+-", "-+", "--"].iter().zip(tally) {
                writeln!(out, "{label} {count:>10}  {}", sig9(count as f64 / n))?;
            }
            writeln!(out, "correlation = {} (closed form {})", sig9(corr), sig9(correlation_at(theta)?))?;
        }
    }
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct ReportOutput<'a> {
    #[serde(flatten)]
    report: &'a InequalityReport,
    config: RunConfig,
}

fn write_report<W: Write>(report: &InequalityReport, cfg: &RunConfig, out: &mut W) -> Result<(), Failure> {
    match cfg.format_or(OutputFormat::Json) {
        OutputFormat::Json => {
            let body = serde_json::to_string_pretty(&ReportOutput { report, config: *cfg })?;
            writeln!(out, "{body}")?;
        }
        OutputFormat::Csv => {
            writeln!(out, "inequality,model,mode,angles,lhs,rhs,slack,stderr,verdict,seed,samples,workers")?;
            let angles: Vec<String> = report.angles.iter().map(|a| sig9(*a)).collect();
            writeln!(
                out,
                "{},{},{},{},{},{},{},{},{},{},{},{}",
                report.inequality,
                report.model,
                serde_json::to_value(report.mode)?.as_str().unwrap_or_default(),
                angles.join(";"),
                sig9(report.lhs),
                sig9(report.rhs),
                sig9(report.slack),
                report.stderr.map(sig9).unwrap_or_default(),
                serde_json::to_value(report.verdict)?.as_str().unwrap_or_default(),
                cfg.seed,
                cfg.samples,
                cfg.workers
            )?;
        }
        OutputFormat::Text => {
            let angles: Vec<String> = report.angles.iter().map(|a| sig9(*a)).collect();
            writeln!(out, "{} on {} at ({})", report.inequality, report.model, angles.join(", "))?;
            writeln!(out, "lhs   = {}", sig9(report.lhs))?;
            writeln!(out, "rhs   = {}", sig9(report.rhs))?;
            match report.stderr {
                Some(se) => writeln!(out, "slack = {} ± {}", sig9(report.slack), sig9(se))?,
                None => writeln!(out, "slack = {}", sig9(report.slack))?,
            }
            writeln!(out, "verdict: {:?}", report.verdict)?;
        }
    }
    Ok(())
}

fn tube<W: Write>(cmd: &TubeCommand, cfg: &RunConfig, out: &mut W) -> Result<i32, Failure> {
    let spec = TubeSpec::canonical();
    match cmd {
        TubeCommand::Faces { alpha } => {
            let ball = Ball::new(*alpha, &spec)?;
            let values = spec
                .faces()
                .iter()
                .map(|f| ball.value(*f))
                .collect::<Result<Vec<_>, _>>()?;
            match cfg.format_or(OutputFormat::Text) {
                OutputFormat::Text => {
                    for (k, (f, v)) in spec.faces().iter().zip(&values).enumerate() {
                        writeln!(out, "F{} (Z = {}): {v}", k + 1, f.shift())?;
                    }
                }
                OutputFormat::Csv => {
                    writeln!(out, "alpha,k1,k2,k3,k4")?;
                    let vs: Vec<String> = values.iter().map(|v| v.value().to_string()).collect();
                    writeln!(out, "{},{}", sig9(*alpha), vs.join(","))?;
                }
                OutputFormat::Json => {
                    let vs: Vec<i8> = values.iter().map(|v| v.value()).collect();
                    writeln!(out, "{}", json!({"alpha": alpha, "k_values": vs}))?;
                }
            }
        }
        TubeCommand::Corr { faces, mode } => {
            let idx: Vec<usize> = faces
                .split(',')
                .map(|s| s.trim().parse::<usize>())
                .collect::<Result<_, _>>()
                .map_err(|_| Failure::Usage(format!("cannot parse faces `{faces}`")))?;
            let [i, j] = idx[..] else {
                return Err(Failure::Usage("--faces takes exactly two indices".into()));
            };
            let (fi, fj) = (spec.face(i)?, spec.face(j)?);
            let format = cfg.format_or(OutputFormat::Text);
            match mode.parse::<Mode>()? {
                Mode::Exact => {
                    let exact = tube_correlation_exact(fi, fj);
                    let value = num_traits::ToPrimitive::to_f64(&exact).unwrap_or(f64::NAN);
                    match format {
                        OutputFormat::Text => writeln!(out, "{exact}")?,
                        OutputFormat::Csv => writeln!(out, "face_i,face_j,mode,correlation\n{i},{j},exact,{}", sig9(value))?,
                        OutputFormat::Json => writeln!(
                            out,
                            "{}",
                            json!({"faces": [i, j], "mode": "exact", "correlation": value, "rational": exact.to_string()})
                        )?,
                    }
                }
                Mode::MonteCarlo => {
                    let model = StripeModel::four_face();
                    let est = estimate_correlation(&model, fi.setting(), fj.setting(), &cfg.monte_carlo())?;
                    match format {
                        OutputFormat::Text => writeln!(
                            out,
                            "{} ± {} (n = {}, seed = {})",
                            sig9(est.value),
                            sig9(est.stderr),
                            cfg.samples,
                            cfg.seed
                        )?,
                        OutputFormat::Csv => writeln!(
                            out,
                            "face_i,face_j,mode,correlation,stderr,seed,samples,workers\n{i},{j},monte-carlo,{},{},{},{},{}",
                            sig9(est.value),
                            sig9(est.stderr),
                            cfg.seed,
                            cfg.samples,
                            cfg.workers
                        )?,
                        OutputFormat::Json => writeln!(
                            out,
                            "{}",
                            json!({"faces": [i, j], "mode": "monte-carlo", "correlation": est.value,
                                   "stderr": est.stderr, "config": cfg})
                        )?,
                    }
                }
            }
        }
    }
    Ok(EXIT_OK)
}

/// One row of the quantum-versus-triangle table.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepRow {
    pub theta: f64,
    pub p_prime_qm: f64,
    pub p_prime_triangle: f64,
    /// `p_prime_triangle - p_prime_qm`
    pub deviation: f64,
}

/// Samples both disagreement curves at `0, step, 2·step, …` up to π.
pub fn sweep_rows(step: f64) -> crate::Result<Vec<SweepRow>> {
    if !(step.is_finite() && step > 0.0) || PI / step > MAX_SWEEP_ROWS {
        return Err(Error::Argument(format!("unusable sweep step {step}")));
    }
    let count = (PI / step + 1e-9).floor() as u64;
    (0..=count)
        .map(|i| {
            let theta = (i as f64 * step).min(PI);
            let qm = p_prime(theta)?;
            let tri = richer_tube_disagreement(theta)?;
            Ok(SweepRow {
                theta,
                p_prime_qm: qm,
                p_prime_triangle: tri,
                deviation: tri - qm,
            })
        })
        .collect()
}

fn sweep<W: Write>(args: &SweepArgs, cfg: &RunConfig, out: &mut W) -> Result<i32, Failure> {
    let rows = sweep_rows(parse_angle(&args.step)?)?;
    let format = if args.csv { OutputFormat::Csv } else { cfg.format_or(OutputFormat::Text) };
    match format {
        OutputFormat::Csv => {
            writeln!(out, "theta,p_prime_qm,p_prime_triangle,deviation")?;
            for r in &rows {
                writeln!(
                    out,
                    "{},{},{},{}",
                    sig9(r.theta),
                    sig9(r.p_prime_qm),
                    sig9(r.p_prime_triangle),
                    sig9(r.deviation)
                )?;
            }
        }
        OutputFormat::Json => writeln!(out, "{}", serde_json::to_string(&rows)?)?,
        OutputFormat::Text => {
            let (label, pick): (&str, fn(&SweepRow) -> f64) = match args.curve {
                Curve::Qm => ("p_prime_qm", |r| r.p_prime_qm),
                Curve::Triangle => ("p_prime_triangle", |r| r.p_prime_triangle),
            };
            writeln!(out, "{:>12}  {label:>16}", "theta")?;
            for r in &rows {
                writeln!(out, "{:>12}  {:>16}", sig9(r.theta), sig9(pick(r)))?;
            }
            if let Some(worst) = rows
                .iter()
                .max_by(|a, b| a.deviation.abs().total_cmp(&b.deviation.abs()))
            {
                writeln!(
                    out,
                    "max |deviation| = {} at theta = {}",
                    sig9(worst.deviation.abs()),
                    sig9(worst.theta)
                )?;
            }
        }
    }
    Ok(EXIT_OK)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String) {
        let mut out = Vec::new();
        let code = run(std::iter::once("eprb").chain(args.iter().copied()), &mut out);
        (code, String::from_utf8(out).unwrap())
    }

    #[test]
    fn prob_text() {
        let (code, out) = run_str(&["qm", "prob", "--theta", "0.7853981633974483"]);
        assert_eq!(code, 0);
        assert!(out.contains("0.1464466"), "{out}");
    }

    #[test]
    fn exit_codes() {
        assert_eq!(run_str(&["qm", "prob"]).0, EXIT_USAGE);
        assert_eq!(run_str(&["qm", "prob", "--theta", "pi/0"]).0, EXIT_USAGE);
        assert_eq!(run_str(&["tube", "faces", "--alpha", "0.25"]).0, EXIT_MODEL);
        assert_eq!(run_str(&["tube", "corr", "--faces", "1,9"]).0, EXIT_USAGE);
        assert_eq!(
            run_str(&["bell", "check", "--inequality", "star", "--model", "qm", "--angles", "pi/4,pi/4,pi/4", "--fail-on-violation"]).0,
            EXIT_VIOLATION
        );
        assert_eq!(
            run_str(&["bell", "check", "--inequality", "star", "--model", "tube4", "--angles", "0.1,0.2,0.3"]).0,
            EXIT_MODEL
        );
    }

    #[test]
    fn sweep_endpoints() {
        let rows = sweep_rows(PI / 512.0).unwrap();
        assert_eq!(rows.len(), 513);
        assert_eq!(rows[512].theta, PI);
        assert!(sweep_rows(0.0).is_err());
    }
}
