//! Command-line front end.
//!
//! Exit codes: 0 success, 1 a checked property failed, 2 invalid
//! arguments, 3 a resource limit was hit.

use std::ffi::OsString;

use clap::{Args, Parser, Subcommand, ValueEnum};
use suborbital_core::oracle::Oracle;
use suborbital_core::rational::{dedekind_psi, phi_pair};
use suborbital_core::suborbital::{enumerate_graph, is_self_paired, paired_partner};
use suborbital_core::{Error, Family, GraphSpec};

use crate::graph_io::{emit_dot, emit_json, emit_svg, GraphIoError};
use crate::report::{render_json, render_text, SuiteReport};
use crate::verify;

/// Environment variable overriding the oracle scan ceiling.
pub const SCAN_CEILING_ENV: &str = "SUBORBITAL_SCAN_CEILING";

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFICATION_FAILED: i32 = 1;
pub const EXIT_INVALID_ARGUMENTS: i32 = 2;
pub const EXIT_RESOURCE_LIMIT: i32 = 3;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandOutcome {
    pub exit_code: i32,
    /// Standard output.
    pub payload: String,
    /// Standard error.
    pub diagnostics: String,
}

impl CommandOutcome {
    fn ok(payload: String) -> Self {
        Self { exit_code: EXIT_OK, payload, diagnostics: String::new() }
    }

    fn error(exit_code: i32, diagnostics: String) -> Self {
        Self { exit_code, payload: String::new(), diagnostics }
    }
}

impl From<Error> for CommandOutcome {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::BoundTooLarge { .. } | Error::ArithmeticOverflow => EXIT_RESOURCE_LIMIT,
            Error::InvariantViolation(_) => EXIT_VERIFICATION_FAILED,
            _ => EXIT_INVALID_ARGUMENTS,
        };
        Self::error(code, format!("error: {e}\n"))
    }
}

#[derive(Debug, Parser)]
#[command(name = "suborbital", version, about = "Suborbital graphs of the congruence subgroups Γ₀(L,M)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FamilyArg {
    /// F_{u,L}, rooted at ∞
    Finf,
    /// F_{M,u}, rooted at 0
    Fzero,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::Finf => Family::FInfinity,
            FamilyArg::Fzero => Family::FZero,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GraphFormat {
    Json,
    Dot,
    Svg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ReportFormat {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    Oracle,
    Blocks,
    Selfpaired,
    Pairing,
    Lattice,
    All,
}

#[derive(Debug, Args)]
struct SpecArgs {
    #[arg(long, value_enum)]
    family: FamilyArg,
    #[arg(long, allow_negative_numbers = true)]
    u: i64,
    #[arg(long = "mod", allow_negative_numbers = true)]
    modulus: i64,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Enumerate a graph within a height bound.
    Edges {
        #[command(flatten)]
        spec: SpecArgs,
        /// Use the paired graph with every edge reversed.
        #[arg(long)]
        reversed: bool,
        #[arg(long, default_value_t = 10, allow_negative_numbers = true)]
        bound: i64,
        #[arg(long, value_enum, default_value_t = GraphFormat::Json)]
        format: GraphFormat,
        /// SVG width in pixels.
        #[arg(long, default_value_t = 800)]
        width: u32,
    },
    /// Run verification suites against the brute-force oracle.
    Verify(VerifyArgs),
    /// Dedekind psi function.
    Psi {
        #[arg(allow_negative_numbers = true)]
        n: i64,
    },
    /// Number of invariant congruence relations, psi(L) + psi(M).
    PhiPair {
        #[arg(allow_negative_numbers = true)]
        l: i64,
        #[arg(allow_negative_numbers = true)]
        m: i64,
    },
    /// The paired graph.
    Partner {
        #[arg(long, allow_negative_numbers = true)]
        u: i64,
        #[arg(long = "mod", allow_negative_numbers = true)]
        modulus: i64,
        #[arg(long, value_enum, default_value_t = FamilyArg::Fzero)]
        family: FamilyArg,
    },
    /// Whether u^2 = ±1 modulo the modulus.
    Selfpaired {
        #[arg(long, allow_negative_numbers = true)]
        u: i64,
        #[arg(long = "mod", allow_negative_numbers = true)]
        modulus: i64,
        #[arg(long, value_enum, default_value_t = FamilyArg::Finf)]
        family: FamilyArg,
    },
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = Suite::All)]
    suite: Suite,
    #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
    format: ReportFormat,
    /// Level L of Γ₀(L,M) (oracle suite).
    #[arg(long, allow_negative_numbers = true)]
    l: Option<i64>,
    /// Level M of Γ₀(L,M) (oracle suite).
    #[arg(long, allow_negative_numbers = true)]
    m: Option<i64>,
    #[arg(long, allow_negative_numbers = true)]
    u: Option<i64>,
    /// Graph modulus (selfpaired and pairing suites).
    #[arg(long = "mod", allow_negative_numbers = true)]
    modulus: Option<i64>,
    #[arg(long, value_enum, default_value_t = FamilyArg::Finf)]
    family: FamilyArg,
    #[arg(long, allow_negative_numbers = true)]
    entry_bound: Option<i64>,
    #[arg(long, allow_negative_numbers = true)]
    height_bound: Option<i64>,
    /// Largest n for the blocks suite.
    #[arg(long, allow_negative_numbers = true)]
    max: Option<i64>,
    #[arg(long, allow_negative_numbers = true)]
    n1: Option<i64>,
    #[arg(long, allow_negative_numbers = true)]
    n2: Option<i64>,
}

/// Parses `args` (including the program name) and runs the command, with
/// the scan ceiling taken from the environment.
pub fn run<I, T>(args: I) -> CommandOutcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let ceiling = std::env::var(SCAN_CEILING_ENV).ok();
    run_with_ceiling(args, ceiling.as_deref())
}

/// As [`run`] with an explicit scan-ceiling override.
pub fn run_with_ceiling<I, T>(args: I, scan_ceiling: Option<&str>) -> CommandOutcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                CommandOutcome::error(EXIT_INVALID_ARGUMENTS, text)
            } else {
                CommandOutcome::ok(text)
            };
        }
    };
    let oracle = match scan_ceiling {
        None => Oracle::default(),
        Some(s) => match s.trim().parse::<i64>() {
            Ok(c) if c >= 1 => Oracle::with_scan_ceiling(c),
            _ => {
                return CommandOutcome::error(
                    EXIT_INVALID_ARGUMENTS,
                    format!("error: {SCAN_CEILING_ENV} must be a positive integer, got {s:?}\n"),
                )
            }
        },
    };
    match execute(cli.command, &oracle) {
        Ok(outcome) => outcome,
        Err(e) => e.into(),
    }
}

fn execute(command: Command, oracle: &Oracle) -> Result<CommandOutcome, Error> {
    match command {
        Command::Edges { spec, reversed, bound, format, width } => {
            let spec = GraphSpec::new(spec.family.into(), spec.u, spec.modulus, reversed)?;
            let g = enumerate_graph(&spec, bound)?;
            let text = match format {
                GraphFormat::Json => emit_json(&g) + "\n",
                GraphFormat::Dot => emit_dot(&g),
                GraphFormat::Svg => match emit_svg(&g, width) {
                    Ok(t) => t,
                    Err(e @ GraphIoError::WidthTooSmall(_)) => {
                        return Ok(CommandOutcome::error(EXIT_INVALID_ARGUMENTS, format!("error: {e}\n")))
                    }
                    Err(e) => return Ok(CommandOutcome::error(EXIT_VERIFICATION_FAILED, format!("error: {e}\n"))),
                },
            };
            Ok(CommandOutcome::ok(text))
        }
        Command::Verify(args) => run_verify(&args, oracle),
        Command::Psi { n } => Ok(CommandOutcome::ok(format!("{}\n", dedekind_psi(n)?))),
        Command::PhiPair { l, m } => Ok(CommandOutcome::ok(format!("{}\n", phi_pair(l, m)?))),
        Command::Partner { u, modulus, family } => {
            let spec = GraphSpec::new(family.into(), u, modulus, false)?;
            Ok(CommandOutcome::ok(format!("{}\n", paired_partner(&spec)?)))
        }
        Command::Selfpaired { u, modulus, family } => {
            let spec = GraphSpec::new(family.into(), u, modulus, false)?;
            Ok(CommandOutcome::ok(format!("{}\n", is_self_paired(&spec))))
        }
    }
}

fn run_verify(args: &VerifyArgs, oracle: &Oracle) -> Result<CommandOutcome, Error> {
    let wants = |s: Suite| args.suite == s || args.suite == Suite::All;
    let mut suites: Vec<SuiteReport> = Vec::new();

    if wants(Suite::Blocks) {
        suites.push(verify::blocks(args.max.unwrap_or(verify::DEFAULT_BLOCKS_MAX))?);
    }
    if wants(Suite::Oracle) {
        let configs = match (args.l, args.m) {
            (None, None) => verify::default_orbital_configs(),
            (l, m) => verify::orbital_configs_for(l.unwrap_or(1), m.unwrap_or(1), args.u)?,
        };
        let entry = args.entry_bound.unwrap_or(verify::DEFAULT_ORBITAL_ENTRY_BOUND);
        let height = args.height_bound.unwrap_or(verify::DEFAULT_HEIGHT_BOUND);
        suites.push(verify::orbital(oracle, &configs, entry, height)?);
    }
    if wants(Suite::Selfpaired) {
        let specs = match (args.u, args.modulus) {
            (Some(u), Some(n)) => vec![GraphSpec::new(args.family.into(), u, n, false)?],
            (None, None) => verify::self_paired_sweep(verify::DEFAULT_SELF_PAIRED_MAX),
            _ => return Err(Error::InvalidSpec("--u and --mod must be given together".to_string())),
        };
        suites.push(verify::self_paired(oracle, &specs, args.entry_bound)?);
    }
    if wants(Suite::Pairing) {
        let specs = match (args.u, args.modulus.or(args.m)) {
            (Some(u), Some(m)) => vec![(m, u)],
            (None, None) => verify::DEFAULT_PAIRING_SPECS.to_vec(),
            _ => return Err(Error::InvalidSpec("--u and --mod must be given together".to_string())),
        };
        suites.push(verify::pairing(&specs, args.height_bound.unwrap_or(verify::DEFAULT_HEIGHT_BOUND))?);
    }
    if wants(Suite::Lattice) {
        let pairs = match (args.n1, args.n2) {
            (Some(a), Some(b)) => vec![(a, b)],
            (None, None) => verify::DEFAULT_LATTICE_PAIRS.to_vec(),
            _ => return Err(Error::InvalidSpec("--n1 and --n2 must be given together".to_string())),
        };
        let entry = args.entry_bound.unwrap_or(verify::DEFAULT_LATTICE_ENTRY_BOUND);
        suites.push(verify::lattice(oracle, &pairs, entry)?);
    }

    let passed = suites.iter().all(|s| s.passed);
    let payload = match args.format {
        ReportFormat::Text => render_text(&suites),
        ReportFormat::Json => render_json(&suites) + "\n",
    };
    Ok(CommandOutcome {
        exit_code: if passed { EXIT_OK } else { EXIT_VERIFICATION_FAILED },
        payload,
        diagnostics: String::new(),
    })
}

