//! The `tprod` command line.

mod analyze;
mod args;
mod pathology;

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, Write};
use std::path::Path;

use clap::Parser;
use num_complex::Complex64;
use tprod_core::symbol::{parse_symbol, L2Symbol, SymbolExpr};

pub use args::{Cli, Command};

/// Analysis completed, or the checked predicate holds.
pub const EXIT_OK: u8 = 0;
/// The checked predicate is false.
pub const EXIT_FALSE: u8 = 1;
/// A symbol failed to parse.
pub const EXIT_PARSE: u8 = 2;
/// Invalid configuration or parameters.
pub const EXIT_CONFIG: u8 = 3;

#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn parse(message: impl Into<String>) -> CliError {
        CliError { code: EXIT_PARSE, message: message.into() }
    }

    pub fn config(message: impl Into<String>) -> CliError {
        CliError { code: EXIT_CONFIG, message: message.into() }
    }
}

pub type CliResult<T> = Result<T, CliError>;

/// Parse arguments and run; returns the process exit code.
pub fn run<I, T>(argv: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
        }
    };
    match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {}", e.message);
            e.code
        }
    }
}

fn dispatch(cli: Cli) -> CliResult<u8> {
    configure_threads(cli.threads)?;
    match cli.command {
        Command::Analyze(a) => analyze::cmd_analyze(&a),
        Command::Admissible(p) => analyze::cmd_admissible(&p),
        Command::Pathology(p) => pathology::cmd_pathology(p),
    }
}

fn configure_threads(flag: Option<usize>) -> CliResult<()> {
    let threads = match std::env::var("TP_THREADS") {
        Ok(s) => Some(
            s.trim()
                .parse::<usize>()
                .map_err(|_| CliError::config(format!("TP_THREADS must be a positive integer, got {s:?}")))?,
        ),
        Err(_) => flag,
    };
    match threads {
        Some(0) => Err(CliError::config("thread count must be positive")),
        Some(n) => {
            // a second call in the same process keeps the first pool
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
            Ok(())
        }
        None => Ok(()),
    }
}

pub(crate) fn parse_expr(label: &str, text: &str) -> CliResult<SymbolExpr> {
    parse_symbol(text).map_err(|e| CliError::parse(format!("{label}: {e}")))
}

pub(crate) fn parse_pair(p: &args::PairArgs) -> CliResult<(SymbolExpr, L2Symbol)> {
    let u = parse_expr("--u", &p.u)?;
    let plus = parse_expr("--v-plus", &p.v_plus)?;
    let minus = match &p.v_minus {
        Some(t) => parse_expr("--v-minus", t)?,
        None => SymbolExpr::zero(),
    };
    let v = L2Symbol::new(plus, minus).map_err(|e| CliError::parse(format!("v: {e}")))?;
    Ok((u, v))
}

/// A constant such as `1`, `-0.5i` or `0.3+0.4i`.
pub(crate) fn parse_constant(label: &str, text: &str) -> CliResult<Complex64> {
    let e = parse_expr(label, text)?;
    if !e.is_constant() {
        return Err(CliError::parse(format!("{label}: expected a constant, got {text:?}")));
    }
    e.eval(Complex64::new(0.0, 0.0)).map_err(|err| CliError::parse(format!("{label}: {err}")))
}

/// File at `path`, or stdout.
pub(crate) fn sink(path: Option<&Path>) -> CliResult<Box<dyn Write>> {
    match path {
        Some(p) => File::create(p)
            .map(|f| Box::new(io::BufWriter::new(f)) as Box<dyn Write>)
            .map_err(|e| CliError::config(format!("cannot write {}: {e}", p.display()))),
        None => Ok(Box::new(io::stdout().lock())),
    }
}

pub(crate) fn io_error(e: impl std::fmt::Display) -> CliError {
    CliError::config(format!("write failed: {e}"))
}

pub(crate) fn write_csv<R: serde::Serialize>(path: Option<&Path>, rows: &[R]) -> CliResult<()> {
    let mut w = csv::Writer::from_writer(sink(path)?);
    for r in rows {
        w.serialize(r).map_err(io_error)?;
    }
    w.flush().map_err(io_error)
}
