//! Argument handling and the request pipeline, kept free of process globals so
//! it can be driven from tests.

use std::ffi::OsString;
use std::io::Read;
use std::path::Path;

use clap::{Args, Parser, Subcommand};
use formleb::Tolerance;
use sha2::{Digest, Sha256};

use crate::error::{codes, CliError};
use crate::input::{parse_input_with_default, Kind};
use crate::output::{emit_output, ResultOutput};
use crate::run_command;
use crate::selftest::{selftest, DEFAULT_SEED};

pub const TOL_ENV: &str = "FORMLEB_TOL";

#[derive(Debug, Parser)]
#[command(
    name = "formleb",
    version,
    about = "Lebesgue-type decompositions of sesquilinear forms"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Split t into regular, mixed and strongly singular parts.
    Decompose(RequestArgs),
    /// Split a non-negative form into absolutely continuous and singular parts.
    DecomposeNonneg(RequestArgs),
    /// Report which standard regions contain the numerical range of t.
    Classify(RequestArgs),
    /// Evaluate a single predicate; the request's "check" field selects it.
    Check(RequestArgs),
    /// Construct a dominating non-negative form for t.
    Dominate(RequestArgs),
    /// Decompose a complex measure on a finite atomic space.
    Measure(RequestArgs),
    /// Run the built-in reference examples and randomized checks.
    Selftest(SelftestArgs),
}

#[derive(Debug, Args)]
pub struct RequestArgs {
    /// Request file, or "-" for standard input.
    #[arg(long, default_value = "-")]
    pub input: String,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Args)]
pub struct SelftestArgs {
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Args)]
pub struct CommonArgs {
    /// Result file, or "-" for standard output.
    #[arg(long, default_value = "-")]
    pub output: String,
    /// Relative rank cutoff; overrides FORMLEB_TOL and the request's tol.rank_rel.
    #[arg(long)]
    pub tol: Option<f64>,
    /// Indent the result document.
    #[arg(long)]
    pub pretty: bool,
}

/// What the process should print and return.
#[derive(Debug, Default, PartialEq)]
pub struct Execution {
    pub stdout: Vec<u8>,
    pub stderr: String,
    pub exit_code: i32,
}

impl Command {
    fn kind(&self) -> Option<Kind> {
        match self {
            Command::Decompose(_) => Some(Kind::Decompose),
            Command::DecomposeNonneg(_) => Some(Kind::DecomposeNonneg),
            Command::Classify(_) => Some(Kind::Classify),
            Command::Check(_) => Some(Kind::Check),
            Command::Dominate(_) => Some(Kind::Dominate),
            Command::Measure(_) => Some(Kind::Measure),
            Command::Selftest(_) => None,
        }
    }

    fn common(&self) -> &CommonArgs {
        match self {
            Command::Decompose(a)
            | Command::DecomposeNonneg(a)
            | Command::Classify(a)
            | Command::Check(a)
            | Command::Dominate(a)
            | Command::Measure(a) => &a.common,
            Command::Selftest(a) => &a.common,
        }
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Default tolerance with `FORMLEB_TOL` applied to `rank_rel`.
pub fn base_tolerance(env_tol: Option<&str>) -> Result<Tolerance, CliError> {
    let mut tol = Tolerance::default();
    if let Some(raw) = env_tol {
        tol.rank_rel = raw.trim().parse().map_err(|_| {
            CliError::at(
                codes::INVALID_TOLERANCE,
                TOL_ENV,
                format!("not a number: {raw:?}"),
            )
        })?;
    }
    Ok(tol)
}

fn validated(tol: Tolerance) -> Result<Tolerance, CliError> {
    tol.validate()
        .map_err(|e| CliError::usage(codes::INVALID_TOLERANCE, e.to_string()))?;
    Ok(tol)
}

/// Parses arguments and runs one request end to end.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, env_tol: Option<&str>) -> Execution
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let informational = matches!(
                e.kind(),
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion
            );
            return Execution {
                stdout: if informational {
                    e.to_string().into_bytes()
                } else {
                    Vec::new()
                },
                stderr: if informational {
                    String::new()
                } else {
                    e.to_string()
                },
                exit_code: if informational { 0 } else { 1 },
            };
        }
    };
    let common = cli.command.common();
    let (result, exit_code) = respond(&cli.command, stdin, env_tol);
    let bytes = emit_output(&result, common.pretty);
    deliver(bytes, &common.output, exit_code)
}

fn respond(command: &Command, stdin: &mut dyn Read, env_tol: Option<&str>) -> (ResultOutput, i32) {
    let kind = command.kind();
    let kind_name = kind.map_or("selftest", Kind::name);
    let fail = |e: CliError| {
        (
            ResultOutput::failure(Some(kind_name), &e),
            e.stage.exit_code(),
        )
    };
    let common = command.common();
    // The flag replaces the environment default outright, so a bad FORMLEB_TOL
    // cannot fail a run that passes --tol.
    let env_tol = if common.tol.is_some() { None } else { env_tol };
    let base = match base_tolerance(env_tol) {
        Ok(t) => t,
        Err(e) => return fail(e),
    };

    let args = match command {
        Command::Selftest(args) => {
            let mut tol = base;
            if let Some(r) = common.tol {
                tol.rank_rel = r;
            }
            return match validated(tol) {
                Ok(tol) => {
                    let out = selftest(args.seed, &tol);
                    let code = if out.is_ok() { 0 } else { 2 };
                    (out, code)
                }
                Err(e) => fail(e),
            };
        }
        Command::Decompose(args)
        | Command::DecomposeNonneg(args)
        | Command::Classify(args)
        | Command::Check(args)
        | Command::Dominate(args)
        | Command::Measure(args) => args,
    };

    let bytes = match read_input(&args.input, stdin) {
        Ok(b) => b,
        Err(e) => return fail(e),
    };
    let hash = sha256_hex(&bytes);
    let with_hash = |(mut out, code): (ResultOutput, i32)| {
        out.input_sha256 = Some(hash.clone());
        (out, code)
    };
    let kind = kind.expect("request commands carry a kind");
    let input = match parse_input_with_default(&bytes, Some(kind)) {
        Ok(i) => i,
        Err(e) => return with_hash(fail(e)),
    };
    if input.kind != kind {
        return with_hash(fail(CliError::at(
            codes::KIND_MISMATCH,
            "kind",
            format!(
                "request kind {:?} sent to subcommand {:?}",
                input.kind.name(),
                kind.name()
            ),
        )));
    }
    let mut tol = input.tol.apply(base);
    if let Some(r) = common.tol {
        tol.rank_rel = r;
    }
    let tol = match validated(tol) {
        Ok(t) => t,
        Err(e) => return with_hash(fail(e)),
    };
    let out = run_command(&input, &tol);
    let code = if out.is_ok() { 0 } else { 2 };
    with_hash((out, code))
}

fn read_input(path: &str, stdin: &mut dyn Read) -> Result<Vec<u8>, CliError> {
    let mut bytes = Vec::new();
    let result = if path == "-" {
        stdin.read_to_end(&mut bytes).map(|_| ())
    } else {
        std::fs::read(Path::new(path)).map(|b| bytes = b)
    };
    result.map_err(|e| {
        CliError::at(
            codes::IO_ERROR,
            "--input",
            format!("cannot read {path}: {e}"),
        )
    })?;
    Ok(bytes)
}

fn deliver(bytes: Vec<u8>, output: &str, exit_code: i32) -> Execution {
    if output == "-" {
        return Execution {
            stdout: bytes,
            stderr: String::new(),
            exit_code,
        };
    }
    match std::fs::write(output, &bytes) {
        Ok(()) => Execution {
            exit_code,
            ..Default::default()
        },
        Err(e) => Execution {
            stdout: Vec::new(),
            stderr: format!("cannot write {output}: {e}"),
            exit_code: 1,
        },
    }
}
