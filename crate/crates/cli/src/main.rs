//! Command-line front door for the boundedness workbench.
//!
//! Subcommands map one-to-one onto the library constructions; presets encode
//! the worked examples so each construction is demo-able with zero input
//! authoring. Stdout carries exactly the payload the selected format
//! promises (JSON object, CSV, or a human-readable table); progress and
//! errors go to stderr, errors as one JSON object per failure.
//!
//! Exit codes: 0 success, 1 a certified claim failed or the computation
//! broke down, 2 the input is bounded (no witness can exist in the sample),
//! 3 term budget exhausted, 4 pointwise hypothesis violated, 64 bad usage.

use std::path::{Path, PathBuf};

use clap::error::ErrorKind as ClapErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use ubp_forge::certificate::{digest_inputs, Certificate};
use ubp_forge::dual::{
    coordinate_unbounded_direction, diagonal_dual_witness, dual_witness, DualWitness, SetSample,
};
use ubp_forge::error::Error;
use ubp_forge::fourier::{decay_profile, DecayProfile, PeriodicFn};
use ubp_forge::hump::{build_witness, FamilySpec};
use ubp_forge::series::{
    accelerate_convergent, decelerate_divergent_with_progress,
    q3_divergence_certificate_with_progress, SeriesSpec,
};
use ubp_forge::{Operator, SeqVector};

const DEFAULT_TERM_BUDGET: u64 = 100_000_000;
const PROGRESS_EVERY: u64 = 1_000_000;
const BUDGET_ENV_VAR: &str = "UBP_FORGE_BUDGET";

const EXIT_CLAIM_FAILED: i32 = 1;
const EXIT_BOUNDED: i32 = 2;
const EXIT_HORIZON: i32 = 3;
const EXIT_HYPOTHESIS: i32 = 4;
const EXIT_USAGE: i32 = 64;

#[derive(Parser)]
#[command(
    name = "ubp-forge",
    version,
    about = "Constructive boundedness witnesses with machine-checkable certificates",
    disable_help_subcommand = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    config: ConfigArgs,
}

#[derive(Args, Debug)]
struct ConfigArgs {
    /// Truncation dimension presets are built inside.
    #[arg(long, global = true, default_value_t = 4096)]
    dim: usize,
    /// Subsequence depth for witness constructions.
    #[arg(long, global = true, default_value_t = 6)]
    depth: usize,
    /// Numeric tolerance (power iteration, quadrature).
    #[arg(long, global = true, default_value_t = 1e-10)]
    tol: f64,
    /// Term budget for series scans; UBP_FORGE_BUDGET overrides the default.
    #[arg(long, global = true)]
    budget: Option<u64>,
    /// Seed for the power-iteration start vector.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Output format on stdout.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Pretty,
}

#[derive(Subcommand)]
enum Command {
    /// Build and certify an escalating-image witness for an operator family.
    Hump {
        /// diagonal-growth | rank1-growth | constant-norms
        #[arg(long, conflicts_with = "file")]
        preset: Option<String>,
        /// JSON file: {"operators": [...], "labels": [...]?}
        #[arg(long)]
        file: Option<PathBuf>,
    },
    /// Construct a functional witnessing unboundedness of a set sample.
    Dual {
        /// sqrt-n-diagonal | k2-on-k4 | bounded
        #[arg(long, conflicts_with = "file")]
        preset: Option<String>,
        /// JSON file: {"elements": [...]}
        #[arg(long)]
        file: Option<PathBuf>,
        /// Picks for the diagonal construction.
        #[arg(long, default_value_t = 10)]
        count: usize,
    },
    /// Series boundary transforms.
    Series {
        #[command(subcommand)]
        sub: SeriesCmd,
    },
    /// Weighted Fourier-coefficient decay profile of a periodic function.
    Fourier {
        /// sawtooth | triangle | smooth | bandlimited:<max-freq>
        #[arg(long = "fn")]
        function: String,
        /// Weight exponent.
        #[arg(long, default_value_t = 0)]
        k: u32,
        /// Frequency cutoff.
        #[arg(long = "N", default_value_t = 64)]
        cutoff: usize,
    },
    /// Coordinate-projection bound over a JSON points file.
    Prop1 {
        /// JSON file: [[x1, ..., xd], ...]
        #[arg(long)]
        file: PathBuf,
    },
}

#[derive(Subcommand)]
enum SeriesCmd {
    /// Blow up a convergent series without losing convergence.
    Accelerate {
        /// geometric:<r> | constant[:<c>] | one-over-n-squared | explicit file via gen=@path
        #[arg(long)]
        gen: String,
        #[arg(long, default_value_t = 50)]
        horizon: u64,
    },
    /// Damp a divergent series without losing divergence.
    Decelerate {
        #[arg(long)]
        gen: String,
        #[arg(long)]
        target: f64,
    },
    /// Certify that a square-dominating sequence is not square-summable.
    Q3cert {
        /// one-over-sqrt-n | one-over-n
        #[arg(long)]
        y: String,
        #[arg(long, default_value_t = 1.0)]
        c: f64,
        #[arg(long, default_value_t = 1)]
        n0: u64,
        #[arg(long)]
        target: f64,
    },
}

/// A terminal failure: exit code plus a machine-readable stderr record.
struct Failure {
    code: i32,
    kind: String,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            kind: "Usage".into(),
            message: message.into(),
        }
    }

    fn claims(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_CLAIM_FAILED,
            kind: "ClaimFailed".into(),
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let (code, kind) = match &e {
            Error::FamilyUniformlyBounded { .. } => (EXIT_BOUNDED, "FamilyUniformlyBounded"),
            Error::HorizonExceeded { .. } => (EXIT_HORIZON, "HorizonExceeded"),
            Error::HypothesisViolated { .. } => (EXIT_HYPOTHESIS, "HypothesisViolated"),
            Error::SampleExhausted { .. } => (EXIT_BOUNDED, "SampleExhausted"),
            Error::InvalidInput(_) => (EXIT_USAGE, "InvalidInput"),
            Error::Precondition(_) => (EXIT_USAGE, "Precondition"),
            Error::NotConvergent(_) => (EXIT_USAGE, "NotConvergent"),
            Error::NotDivergent(_) => (EXIT_USAGE, "NotDivergent"),
            Error::IndexOutOfTruncation { .. } => (EXIT_USAGE, "IndexOutOfTruncation"),
            Error::PowerIterationStall { .. } => (EXIT_CLAIM_FAILED, "PowerIterationStall"),
            Error::ZeroOperator => (EXIT_CLAIM_FAILED, "ZeroOperator"),
            Error::QualityNotMet { .. } => (EXIT_CLAIM_FAILED, "QualityNotMet"),
            Error::InternalInvariantViolation(_) => {
                (EXIT_CLAIM_FAILED, "InternalInvariantViolation")
            }
            Error::OverflowDetected(_) => (EXIT_CLAIM_FAILED, "OverflowDetected"),
            Error::QuadratureBudgetExceeded { .. } => {
                (EXIT_CLAIM_FAILED, "QuadratureBudgetExceeded")
            }
        };
        Failure {
            code,
            kind: kind.into(),
            message: e.to_string(),
        }
    }
}

fn main() {
    // Die quietly when the consumer closes the pipe (e.g. `| head`).
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    std::process::exit(run());
}

fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            if matches!(
                e.kind(),
                ClapErrorKind::DisplayHelp | ClapErrorKind::DisplayVersion
            ) {
                print!("{e}");
                return 0;
            }
            report_failure(&Failure::usage(e.to_string()));
            return EXIT_USAGE;
        }
    };
    match dispatch(cli) {
        Ok(()) => 0,
        Err(failure) => {
            report_failure(&failure);
            failure.code
        }
    }
}

fn report_failure(failure: &Failure) {
    let record = serde_json::json!({
        "error": failure.kind,
        "message": failure.message,
    });
    eprintln!("{record}");
}

fn resolve_budget(flag: Option<u64>) -> Result<u64, Failure> {
    if let Some(b) = flag {
        return Ok(b);
    }
    match std::env::var(BUDGET_ENV_VAR) {
        Ok(raw) => raw.parse::<u64>().map_err(|_| {
            Failure::usage(format!("{BUDGET_ENV_VAR} must be an integer, got {raw:?}"))
        }),
        Err(_) => Ok(DEFAULT_TERM_BUDGET),
    }
}

fn dispatch(cli: Cli) -> Result<(), Failure> {
    let config = cli.config;
    match cli.command {
        Command::Hump { preset, file } => cmd_hump(preset.as_deref(), file.as_deref(), &config),
        Command::Dual {
            preset,
            file,
            count,
        } => cmd_dual(preset.as_deref(), file.as_deref(), count, &config),
        Command::Series { sub } => cmd_series(sub, &config),
        Command::Fourier {
            function,
            k,
            cutoff,
        } => cmd_fourier(&function, k, cutoff, &config),
        Command::Prop1 { file } => cmd_prop1(&file, &config),
    }
}

// ---------------------------------------------------------------------------
// hump

#[derive(Deserialize)]
struct FamilyFile {
    operators: Vec<Operator>,
    #[serde(default)]
    labels: Option<Vec<String>>,
}

fn pow4(e: i32) -> f64 {
    2.0_f64.powi(2 * e)
}

/// Growth weights riding the 4^{2n+1} chain exactly.
fn chain_weights(depth: usize) -> Vec<f64> {
    let mut weights = Vec::with_capacity(depth);
    let mut w = 1.0;
    for n in 0..depth {
        if n > 0 {
            w *= pow4(2 * n as i32 + 1);
        }
        weights.push(w);
    }
    weights
}

fn hump_family(preset: &str, config: &ConfigArgs) -> Result<FamilySpec, Failure> {
    let depth = config.depth.max(2);
    let operators: Vec<Operator> = match preset {
        "diagonal-growth" => chain_weights(depth)
            .iter()
            .enumerate()
            .map(|(i, &w)| Operator::diagonal([(i + 1, w)]))
            .collect(),
        "rank1-growth" => chain_weights(depth)
            .iter()
            .map(|&w| Operator::matrix_from_rows(&[&[0.6 * w, 0.0], &[0.8 * w, 0.0]], 2))
            .collect(),
        "constant-norms" => (1..=8).map(|i| Operator::diagonal([(i, 1.0)])).collect(),
        other => return Err(Failure::usage(format!("unknown hump preset {other:?}"))),
    };
    FamilySpec::with_options(operators, None, config.tol, config.seed).map_err(Into::into)
}

fn cmd_hump(preset: Option<&str>, file: Option<&Path>, config: &ConfigArgs) -> Result<(), Failure> {
    let family = match (preset, file) {
        (Some(p), None) => hump_family(p, config)?,
        (None, Some(path)) => {
            let parsed: FamilyFile = read_json(path)?;
            FamilySpec::with_options(parsed.operators, parsed.labels, config.tol, config.seed)?
        }
        _ => {
            return Err(Failure::usage(
                "hump needs exactly one of --preset or --file",
            ))
        }
    };
    let (_witness, certificate) = build_witness(&family, config.depth, config.tol)?;
    emit_certificate(&certificate, config.format);
    if certificate.all_pass() {
        Ok(())
    } else {
        Err(Failure::claims(format!(
            "{} certified claim(s) failed",
            certificate.failures().count()
        )))
    }
}

// ---------------------------------------------------------------------------
// dual

#[derive(Deserialize)]
struct SampleFile {
    elements: Vec<SeqVector>,
}

#[derive(Serialize)]
struct DualOutput {
    #[serde(flatten)]
    witness: DualWitness,
    #[serde(skip_serializing_if = "Option::is_none")]
    certificate: Option<Certificate>,
}

fn cmd_dual(
    preset: Option<&str>,
    file: Option<&Path>,
    count: usize,
    config: &ConfigArgs,
) -> Result<(), Failure> {
    let output = match (preset, file) {
        (Some("sqrt-n-diagonal"), None) => {
            // n must reach count^4 for the last pick to exist.
            let len = config.dim.max(count.pow(4));
            let values: Vec<f64> = (1..=len).map(|n| (n as f64).sqrt()).collect();
            let witness = diagonal_dual_witness(&values, count)?;
            DualOutput {
                witness,
                certificate: None,
            }
        }
        (Some("k2-on-k4"), None) => {
            let k_max = (config.dim as f64).powf(0.25).floor() as usize;
            let elements: Vec<SeqVector> = (1..=k_max.max(1))
                .map(|k| SeqVector::from_entries([(k.pow(4), (k * k) as f64)]))
                .collect();
            let sample = SetSample::new(elements)?;
            let (witness, certificate) = dual_witness(&sample, config.depth, config.tol)?;
            DualOutput {
                witness,
                certificate: Some(certificate),
            }
        }
        (Some("bounded"), None) => {
            let elements: Vec<SeqVector> = (1..=16)
                .map(|n| SeqVector::from_entries([(n, 1.0)]))
                .collect();
            let sample = SetSample::new(elements)?;
            let (witness, certificate) = dual_witness(&sample, config.depth, config.tol)?;
            DualOutput {
                witness,
                certificate: Some(certificate),
            }
        }
        (Some(other), None) => {
            return Err(Failure::usage(format!("unknown dual preset {other:?}")))
        }
        (None, Some(path)) => {
            let parsed: SampleFile = read_json(path)?;
            let sample = SetSample::new(parsed.elements)?;
            let (witness, certificate) = dual_witness(&sample, config.depth, config.tol)?;
            DualOutput {
                witness,
                certificate: Some(certificate),
            }
        }
        _ => {
            return Err(Failure::usage(
                "dual needs exactly one of --preset or --file",
            ))
        }
    };

    match config.format {
        Format::Json => println!("{}", serde_json::to_string(&output).expect("serializable")),
        Format::Csv => {
            println!("k,position,value,norm");
            for (k, ((&pos, &value), &norm)) in output
                .witness
                .subsequence
                .iter()
                .zip(&output.witness.values)
                .zip(&output.witness.norms)
                .enumerate()
            {
                println!("{},{},{},{}", k + 1, pos, value, norm);
            }
        }
        Format::Pretty => {
            println!("dual witness: {} picks", output.witness.subsequence.len());
            println!("representer norm: {}", output.witness.rep.norm2());
            println!(
                "{:>4} {:>10} {:>18} {:>18}",
                "k", "position", "value", "norm"
            );
            for (k, ((&pos, &value), &norm)) in output
                .witness
                .subsequence
                .iter()
                .zip(&output.witness.values)
                .zip(&output.witness.norms)
                .enumerate()
            {
                println!("{:>4} {:>10} {:>18} {:>18}", k + 1, pos, value, norm);
            }
            if let Some(cert) = &output.certificate {
                print_certificate_pretty(cert);
            }
        }
    }

    match &output.certificate {
        Some(cert) if !cert.all_pass() => Err(Failure::claims(format!(
            "{} certified claim(s) failed",
            cert.failures().count()
        ))),
        _ => Ok(()),
    }
}

// ---------------------------------------------------------------------------
// series

fn parse_generator(gen: &str) -> Result<SeriesSpec, Failure> {
    let (name, arg) = match gen.split_once(':') {
        Some((name, arg)) => (name, Some(arg)),
        None => (gen, None),
    };
    let parse_value = |arg: Option<&str>, default: Option<f64>| -> Result<f64, Failure> {
        match (arg, default) {
            (Some(raw), _) => raw
                .parse::<f64>()
                .map_err(|_| Failure::usage(format!("bad generator parameter {raw:?}"))),
            (None, Some(d)) => Ok(d),
            (None, None) => Err(Failure::usage(format!(
                "generator {name:?} needs a parameter"
            ))),
        }
    };
    match name {
        "geometric" => Ok(SeriesSpec::geometric(parse_value(arg, None)?)?),
        "constant" => Ok(SeriesSpec::constant(parse_value(arg, Some(1.0))?)?),
        "one-over-n" => Ok(SeriesSpec::OneOverN),
        "one-over-sqrt-n" => Ok(SeriesSpec::OneOverSqrtN),
        "one-over-n-squared" => Ok(SeriesSpec::OneOverNSquared),
        other => Err(Failure::usage(format!(
            "unknown series generator {other:?}"
        ))),
    }
}

fn parse_term_oracle(name: &str) -> Result<fn(u64) -> f64, Failure> {
    match name {
        "one-over-sqrt-n" => Ok(|n| 1.0 / (n as f64).sqrt()),
        "one-over-n" => Ok(|n| 1.0 / n as f64),
        other => Err(Failure::usage(format!("unknown term oracle {other:?}"))),
    }
}

fn progress_sink() -> impl FnMut(u64, f64) {
    |scanned: u64, partial_sum: f64| {
        eprintln!(
            "{}",
            serde_json::json!({ "scanned": scanned, "partial_sum": partial_sum })
        );
    }
}

fn cmd_series(sub: SeriesCmd, config: &ConfigArgs) -> Result<(), Failure> {
    let budget = resolve_budget(config.budget)?;
    match sub {
        SeriesCmd::Accelerate { gen, horizon } => {
            let spec = parse_generator(&gen)?;
            let report = accelerate_convergent(&spec, horizon)?;
            let digest = digest_inputs(&("accelerate", &spec, horizon));
            let certificate = report.to_certificate(digest);
            match config.format {
                Format::Json => {
                    let payload = serde_json::json!({
                        "y": report.y,
                        "transformed_partials": report.transformed_partials,
                        "telescoped_bound": report.telescoped_bound,
                        "global_bound": report.global_bound,
                        "certificate": certificate,
                    });
                    println!("{payload}");
                }
                Format::Csv => {
                    println!("n,y,transformed_partial");
                    for (i, (y, p)) in report
                        .y
                        .iter()
                        .zip(&report.transformed_partials)
                        .enumerate()
                    {
                        println!("{},{},{}", i + 1, y, p);
                    }
                }
                Format::Pretty => {
                    println!("accelerated {} terms of {}", report.y.len(), spec.name());
                    println!(
                        "final transformed partial: {}",
                        report.transformed_partials.last().unwrap_or(&0.0)
                    );
                    println!("telescoped bound: {}", report.telescoped_bound);
                    println!("global bound 2*sqrt(r0): {}", report.global_bound);
                    print_certificate_pretty(&certificate);
                }
            }
            ensure_certificate_passes(&certificate)
        }
        SeriesCmd::Decelerate { gen, target } => {
            let spec = parse_generator(&gen)?;
            let (_y, record) = decelerate_divergent_with_progress(
                &spec,
                target,
                budget,
                PROGRESS_EVERY,
                &mut progress_sink(),
            )?;
            let digest = digest_inputs(&("decelerate", &spec, target.to_bits()));
            let certificate = record.to_certificate(digest);
            emit_divergence(&record, &certificate, config.format);
            ensure_certificate_passes(&certificate)
        }
        SeriesCmd::Q3cert { y, c, n0, target } => {
            let oracle = parse_term_oracle(&y)?;
            let record = q3_divergence_certificate_with_progress(
                oracle,
                c,
                n0,
                target,
                budget,
                PROGRESS_EVERY,
                &mut progress_sink(),
            )?;
            let digest = digest_inputs(&("q3cert", &y, c.to_bits(), n0, target.to_bits()));
            let certificate = record.to_certificate(digest);
            emit_divergence(&record, &certificate, config.format);
            ensure_certificate_passes(&certificate)
        }
    }
}

fn emit_divergence(
    record: &ubp_forge::series::DivergenceCertificate,
    certificate: &Certificate,
    format: Format,
) {
    match format {
        Format::Json => {
            let mut payload = serde_json::to_value(record).expect("serializable");
            payload["certificate"] = serde_json::to_value(certificate).expect("serializable");
            println!("{payload}");
        }
        Format::Csv => emit_claims_csv(certificate),
        Format::Pretty => {
            println!("target {} reached at index {}", record.target, record.index);
            println!("partial sum: {}", record.partial_sum);
            if let (Some(c), Some(n0)) = (record.comparison_constant, record.threshold_index) {
                println!("pointwise bound: y_n^2 >= {c}/n enforced from n = {n0}");
            }
            print_certificate_pretty(certificate);
        }
    }
}

// ---------------------------------------------------------------------------
// fourier

fn parse_periodic_fn(name: &str) -> Result<PeriodicFn, Failure> {
    match name {
        "sawtooth" => return Ok(PeriodicFn::sawtooth()),
        "triangle" => return Ok(PeriodicFn::triangle()),
        "smooth" => return Ok(PeriodicFn::smooth()),
        _ => {}
    }
    if let Some(raw) = name.strip_prefix("bandlimited:") {
        let max_freq: i64 = raw
            .parse()
            .map_err(|_| Failure::usage(format!("bad band-limited frequency {raw:?}")))?;
        if max_freq < 0 {
            return Err(Failure::usage("band-limited frequency must be nonnegative"));
        }
        return Ok(PeriodicFn::band_limited([(
            max_freq,
            Complex64::new(1.0, 0.0),
        )]));
    }
    Err(Failure::usage(format!(
        "unknown periodic function {name:?}"
    )))
}

fn cmd_fourier(function: &str, k: u32, cutoff: usize, config: &ConfigArgs) -> Result<(), Failure> {
    let f = parse_periodic_fn(function)?;
    let profile: DecayProfile = decay_profile(&f, k, cutoff, config.tol)?;
    match config.format {
        Format::Json => {
            let mut payload = profile.summary_json();
            payload["partial_sums"] =
                serde_json::to_value(&profile.partial_sums).expect("serializable");
            println!("{payload}");
        }
        Format::Csv => print!("{}", profile.to_csv()),
        Format::Pretty => {
            println!("function: {}", f.label());
            println!(
                "weight exponent k = {}, cutoff N = {}",
                profile.k, profile.cutoff
            );
            println!(
                "verdict: {:?} (heuristic last-quarter ratio vs 1.05)",
                profile.verdict
            );
            println!(
                "final weighted energy: {}",
                profile.partial_sums.last().unwrap()
            );
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// prop1

fn cmd_prop1(file: &Path, config: &ConfigArgs) -> Result<(), Failure> {
    let points: Vec<Vec<f64>> = read_json(file)?;
    let bound = coordinate_unbounded_direction(&points)?;
    match config.format {
        Format::Json => println!("{}", serde_json::to_string(&bound).expect("serializable")),
        Format::Csv => {
            println!("coordinate,bound");
            for (i, m) in bound.bounds.iter().enumerate() {
                println!("{},{}", i + 1, m);
            }
        }
        Format::Pretty => {
            println!("largest observed projection: coordinate {}", bound.index);
            println!("per-coordinate bounds: {:?}", bound.bounds);
            println!("norm bound sqrt(sum M_i^2): {}", bound.norm_bound);
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// shared plumbing

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let raw = std::fs::read_to_string(path)
        .map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&raw)
        .map_err(|e| Failure::usage(format!("cannot parse {}: {e}", path.display())))
}

fn ensure_certificate_passes(certificate: &Certificate) -> Result<(), Failure> {
    if certificate.all_pass() {
        Ok(())
    } else {
        Err(Failure::claims(format!(
            "{} certified claim(s) failed",
            certificate.failures().count()
        )))
    }
}

fn emit_certificate(certificate: &Certificate, format: Format) {
    match format {
        Format::Json => {
            println!(
                "{}",
                serde_json::to_string(certificate).expect("serializable")
            )
        }
        Format::Csv => emit_claims_csv(certificate),
        Format::Pretty => print_certificate_pretty(certificate),
    }
}

fn emit_claims_csv(certificate: &Certificate) {
    println!("description,lhs,relation,rhs,pass");
    for claim in &certificate.claims {
        println!(
            "\"{}\",{},{},{},{}",
            claim.description.replace('"', "\"\""),
            claim.lhs,
            claim.relation.symbol(),
            claim.rhs,
            claim.pass
        );
    }
}

fn print_certificate_pretty(certificate: &Certificate) {
    println!(
        "certificate {:?}: {}/{} claims pass (inputs digest {})",
        certificate.kind,
        certificate.claims.iter().filter(|c| c.pass).count(),
        certificate.claims.len(),
        certificate.inputs_digest
    );
    for claim in &certificate.claims {
        println!(
            "  [{}] {}: {} {} {}",
            if claim.pass { "ok" } else { "FAIL" },
            claim.description,
            claim.lhs,
            claim.relation.symbol(),
            claim.rhs
        );
    }
}
