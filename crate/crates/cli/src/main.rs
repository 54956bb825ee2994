//! `permseq` command-line front end.
//!
//! Exit codes: 0 success, 1 engine or verification failure, 2 usage error.

mod output;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;

use permseq::io::{matrix_from_csv, matrix_from_json};
use permseq::verify::{
    verify_cassini, verify_contraction_invariance_with, verify_detper, verify_thm1_with,
    verify_thm2_with,
};
use permseq::{
    contraction_chain, range, DeterminantEngine, EngineCaps, Error, Family, Matrix,
    PermanentEngine, SequenceKind, VerificationReport,
};

use output::Format;

const RYSER_CAP_ENV: &str = "PERMSEQ_MAX_RYSER_N";

#[derive(Parser)]
#[command(
    name = "permseq",
    version,
    about = "Exact permanents and determinants of Jacobsthal matrix families"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print a range of Jacobsthal or Jacobsthal-Lucas numbers.
    Seq(SeqArgs),
    /// Print a member of one of the matrix families.
    Matrix(MatrixArgs),
    /// Compute a permanent.
    Permanent(PermanentArgs),
    /// Compute a determinant.
    Det(DetArgs),
    /// Run verification suites.
    Verify(VerifyArgs),
    /// Time permanent engines on a matrix family and cross-check their values.
    Bench(BenchArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Jacobsthal,
    JacobsthalLucas,
}

impl From<KindArg> for SequenceKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Jacobsthal => SequenceKind::Jacobsthal,
            KindArg::JacobsthalLucas => SequenceKind::JacobsthalLucas,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    #[value(name = "H", alias = "h")]
    H,
    #[value(name = "K", alias = "k")]
    K,
    #[value(name = "S", alias = "s")]
    S,
    #[value(name = "A", alias = "a")]
    A,
    #[value(name = "B", alias = "b")]
    B,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::H => Family::H,
            FamilyArg::K => Family::K,
            FamilyArg::S => Family::S,
            FamilyArg::A => Family::A,
            FamilyArg::B => Family::B,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PermanentMethod {
    Laplace,
    Ryser,
    Contraction,
}

impl From<PermanentMethod> for PermanentEngine {
    fn from(m: PermanentMethod) -> Self {
        match m {
            PermanentMethod::Laplace => PermanentEngine::Laplace,
            PermanentMethod::Ryser => PermanentEngine::Ryser,
            PermanentMethod::Contraction => PermanentEngine::Contraction,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum DetMethod {
    Bareiss,
    Laplace,
}

impl From<DetMethod> for DeterminantEngine {
    fn from(m: DetMethod) -> Self {
        match m {
            DetMethod::Bareiss => DeterminantEngine::Bareiss,
            DetMethod::Laplace => DeterminantEngine::Laplace,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SuiteArg {
    Thm1,
    Thm2,
    Detper,
    Cassini,
    Contraction,
    All,
}

#[derive(Args)]
struct SeqArgs {
    #[arg(value_enum)]
    kind: KindArg,
    #[arg(long)]
    from: u64,
    #[arg(long)]
    to: u64,
    #[arg(long, value_enum, default_value_t = Format::Plain)]
    format: Format,
}

#[derive(Args)]
struct MatrixArgs {
    #[arg(long, value_enum)]
    family: FamilyArg,
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    n: u32,
    #[arg(long, value_enum, default_value_t = Format::Plain)]
    format: Format,
}

/// A built family member or a matrix file (JSON, or CSV by `.csv` extension).
#[derive(Args)]
struct Input {
    #[arg(long, value_enum, requires = "n", conflicts_with = "file")]
    family: Option<FamilyArg>,
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    n: Option<u32>,
    #[arg(long, required_unless_present = "family")]
    file: Option<PathBuf>,
}

#[derive(Args)]
struct PermanentArgs {
    #[command(flatten)]
    input: Input,
    #[arg(long, value_enum, default_value_t = PermanentMethod::Contraction)]
    method: PermanentMethod,
    /// Also emit the contraction trace (contraction method only).
    #[arg(long)]
    trace: bool,
    #[arg(long, value_enum, default_value_t = Format::Plain)]
    format: Format,
}

#[derive(Args)]
struct DetArgs {
    #[command(flatten)]
    input: Input,
    #[arg(long, value_enum, default_value_t = DetMethod::Bareiss)]
    method: DetMethod,
    #[arg(long, value_enum, default_value_t = Format::Plain)]
    format: Format,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_enum)]
    suite: SuiteArg,
    /// Upper bound for every selected suite; each suite has its own default.
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    max_n: Option<u32>,
    /// Permanent engine for thm1 and thm2.
    #[arg(long, value_enum, default_value_t = PermanentMethod::Contraction)]
    engine: PermanentMethod,
    /// Seed for the contraction suite.
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Number of random matrices in the contraction suite.
    #[arg(long, default_value_t = 200)]
    trials: usize,
    #[arg(long, value_enum, default_value_t = Format::Plain)]
    format: Format,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long, value_enum, value_delimiter = ',', required = true)]
    methods: Vec<PermanentMethod>,
    #[arg(long, value_enum, default_value_t = FamilyArg::H)]
    family: FamilyArg,
    #[arg(long, value_delimiter = ',', required = true, value_parser = clap::value_parser!(u32).range(1..))]
    n: Vec<u32>,
    #[arg(long, default_value_t = 5, value_parser = clap::value_parser!(u32).range(1..))]
    repeats: u32,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

/// What went wrong, mapped onto the exit code contract.
enum Failure {
    Usage(String),
    Engine(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvertedRange { .. } | Error::Parse(_) | Error::EmptyFamily => {
                Failure::Usage(e.to_string())
            }
            other => Failure::Engine(other.to_string()),
        }
    }
}

/// Successful run; `passed = false` means a verification or cross-check failure.
struct Outcome {
    passed: bool,
}

const OK: Outcome = Outcome { passed: true };

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Seq(args) => cmd_seq(args),
        Command::Matrix(args) => cmd_matrix(args),
        Command::Permanent(args) => cmd_permanent(args),
        Command::Det(args) => cmd_det(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Bench(args) => cmd_bench(args),
    };
    match result {
        Ok(Outcome { passed: true }) => ExitCode::SUCCESS,
        Ok(Outcome { passed: false }) => ExitCode::from(1),
        Err(Failure::Engine(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            eprintln!("run `permseq --help` for usage");
            ExitCode::from(2)
        }
    }
}

fn engine_caps() -> Result<EngineCaps, Failure> {
    let mut caps = EngineCaps::default();
    if let Ok(raw) = std::env::var(RYSER_CAP_ENV) {
        caps.ryser = raw.trim().parse().map_err(|_| {
            Failure::Usage(format!(
                "{RYSER_CAP_ENV} must be a nonnegative integer, got {raw:?}"
            ))
        })?;
    }
    Ok(caps)
}

fn cmd_seq(args: SeqArgs) -> Result<Outcome, Failure> {
    let kind = SequenceKind::from(args.kind);
    let terms = range(kind, args.from, args.to)?;
    println!(
        "{}",
        output::sequence(args.format, kind, args.from, args.to, &terms)
    );
    Ok(OK)
}

fn cmd_matrix(args: MatrixArgs) -> Result<Outcome, Failure> {
    let m = Family::from(args.family).build(args.n as usize)?;
    println!("{}", output::matrix(args.format, &m));
    Ok(OK)
}

fn load_input(input: &Input) -> Result<Matrix, Failure> {
    match (&input.family, input.n, &input.file) {
        (Some(family), Some(n), _) => Ok(Family::from(*family).build(n as usize)?),
        (_, _, Some(path)) => read_matrix_file(path),
        _ => Err(Failure::Usage(
            "give either --family with --n, or --file".into(),
        )),
    }
}

fn read_matrix_file(path: &Path) -> Result<Matrix, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    let is_csv = path
        .extension()
        .is_some_and(|ext| ext.eq_ignore_ascii_case("csv"));
    let parsed = if is_csv {
        matrix_from_csv(&text)
    } else {
        matrix_from_json(&text)
    };
    parsed.map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn cmd_permanent(args: PermanentArgs) -> Result<Outcome, Failure> {
    if args.trace && args.method != PermanentMethod::Contraction {
        return Err(Failure::Usage(
            "--trace requires --method contraction".into(),
        ));
    }
    let caps = engine_caps()?;
    let m = load_input(&args.input)?;
    let engine = PermanentEngine::from(args.method);
    let (value, trace) = if args.trace {
        let trace = contraction_chain(&m)?;
        (trace.value.clone(), Some(trace))
    } else {
        (engine.permanent(&m, &caps)?, None)
    };
    println!(
        "{}",
        output::value(
            args.format,
            "permanent",
            engine.name(),
            &value,
            trace.as_ref()
        )
    );
    Ok(OK)
}

fn cmd_det(args: DetArgs) -> Result<Outcome, Failure> {
    let m = load_input(&args.input)?;
    let engine = DeterminantEngine::from(args.method);
    let value = engine.determinant(&m)?;
    println!(
        "{}",
        output::value(args.format, "determinant", engine.name(), &value, None)
    );
    Ok(OK)
}

fn cmd_verify(args: VerifyArgs) -> Result<Outcome, Failure> {
    let caps = engine_caps()?;
    let engine = PermanentEngine::from(args.engine);
    let bound = |default: usize| args.max_n.map_or(default, |n| n as usize);
    let selected: Vec<SuiteArg> = match args.suite {
        SuiteArg::All => vec![
            SuiteArg::Thm1,
            SuiteArg::Thm2,
            SuiteArg::Detper,
            SuiteArg::Cassini,
            SuiteArg::Contraction,
        ],
        one => vec![one],
    };
    let run = |suite: SuiteArg| -> VerificationReport {
        match suite {
            SuiteArg::Thm1 => verify_thm1_with(bound(9), engine, &caps),
            SuiteArg::Thm2 => verify_thm2_with(bound(9), engine, &caps),
            SuiteArg::Detper => verify_detper(bound(64)),
            SuiteArg::Cassini => verify_cassini(bound(256)),
            SuiteArg::Contraction => {
                verify_contraction_invariance_with(args.trials, bound(6), args.seed, caps.laplace)
            }
            SuiteArg::All => unreachable!("expanded above"),
        }
    };
    let reports: Vec<VerificationReport> = std::thread::scope(|scope| {
        let handles: Vec<_> = selected
            .iter()
            .map(|&suite| scope.spawn(move || run(suite)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("suite thread panicked"))
            .collect()
    });
    let passed = reports.iter().all(|r| r.passed);
    let single = args.suite != SuiteArg::All;
    println!("{}", output::reports(args.format, &reports, single));
    Ok(Outcome { passed })
}

pub struct BenchRow {
    pub method: &'static str,
    pub n: usize,
    pub median: Duration,
    pub value: BigInt,
}

fn cmd_bench(args: BenchArgs) -> Result<Outcome, Failure> {
    let caps = engine_caps()?;
    let family = Family::from(args.family);
    for &method in &args.methods {
        let engine = PermanentEngine::from(method);
        if let Some(cap) = engine.cap(&caps) {
            if let Some(&n) = args.n.iter().find(|&&n| n as usize > cap) {
                return Err(Failure::Usage(format!(
                    "{engine} is capped at n = {cap}, requested n = {n}"
                )));
            }
        }
    }

    let mut rows = Vec::new();
    for &n in &args.n {
        let m = family.build(n as usize)?;
        for &method in &args.methods {
            let engine = PermanentEngine::from(method);
            let mut times = Vec::with_capacity(args.repeats as usize);
            let mut value = None;
            for _ in 0..args.repeats {
                let start = Instant::now();
                let v = engine.permanent(&m, &caps)?;
                times.push(start.elapsed());
                value = Some(v);
            }
            times.sort();
            rows.push(BenchRow {
                method: engine.name(),
                n: n as usize,
                median: times[times.len() / 2],
                value: value.expect("repeats >= 1"),
            });
        }
    }

    println!("{}", output::bench(args.format, family, &rows));
    let mut passed = true;
    for row in &rows {
        if let Some(other) = rows.iter().find(|o| o.n == row.n && o.value != row.value) {
            eprintln!(
                "error: engines disagree at n = {}: {} gives {}, {} gives {}",
                row.n, row.method, row.value, other.method, other.value
            );
            passed = false;
            break;
        }
    }
    Ok(Outcome { passed })
}
