//! Subcommand bodies. Each writes its normal output to `out` and returns a
//! [`CliError`] that maps onto the process exit code.

use std::fs;
use std::io::Write;
use std::path::Path;

use anyhow::Context;
use hexbubble::singlebubble::{isoperimetric_optimum, regular_hexagon};
use hexbubble::{solve, sweep};

use crate::format::sig;
use crate::record::OutputRecord;
use crate::svg::{render_result, render_single};
use crate::verify::{self, Hooks, Suite};

/// Environment variable that overrides `--seed`.
pub const SEED_ENV: &str = "HEXBUBBLE_SEED";

#[derive(Debug)]
pub enum CliError {
    /// Bad arguments or inputs outside the model's domain.
    Usage(String),
    /// A self-test failed.
    VerifyFailed,
    Io(anyhow::Error),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "error: {m}"),
            CliError::VerifyFailed => f.write_str("error: verification failed"),
            CliError::Io(e) => write!(f, "error: {e:#}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<hexbubble::Error> for CliError {
    fn from(e: hexbubble::Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

pub fn exit_code(r: &Result<(), CliError>) -> i32 {
    match r {
        Ok(()) => 0,
        Err(CliError::VerifyFailed) => 1,
        Err(CliError::Usage(_)) => 2,
        Err(CliError::Io(_)) => 3,
    }
}

fn io<T>(r: std::io::Result<T>, what: impl FnOnce() -> String) -> Result<T, CliError> {
    r.with_context(what).map_err(CliError::Io)
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    io(fs::write(path, bytes), || format!("cannot write {}", path.display()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

pub fn cmd_solve(alpha: f64, format: Format, out: &mut dyn Write) -> Result<(), CliError> {
    let record = OutputRecord::new(&solve(alpha)?);
    let body = match format {
        Format::Json => record.to_json() + "\n",
        Format::Text => record.to_text(),
    };
    io(out.write_all(body.as_bytes()), || "cannot write output".into())
}

/// CSV with header `alpha,case,perimeter,L1,L2`, LF line endings.
pub fn sweep_csv(from: f64, to: f64, steps: usize) -> Result<Vec<u8>, CliError> {
    let rows = sweep(from, to, steps)?;
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    let mut write = || -> csv::Result<()> {
        w.write_record(["alpha", "case", "perimeter", "L1", "L2"])?;
        for r in &rows {
            let first = &r.solutions[0];
            w.write_record([sig(r.alpha), r.case.as_str().into(), sig(r.perimeter), sig(first.l1()), sig(first.l2())])?;
        }
        w.flush()?;
        Ok(())
    };
    write().map_err(|e| CliError::Io(e.into()))?;
    w.into_inner().map_err(|e| CliError::Io(anyhow::anyhow!("{e}")))
}

pub fn cmd_sweep(from: f64, to: f64, steps: usize, path: Option<&Path>, out: &mut dyn Write) -> Result<(), CliError> {
    let bytes = sweep_csv(from, to, steps)?;
    match path {
        Some(p) => write_file(p, &bytes),
        None => io(out.write_all(&bytes), || "cannot write output".into()),
    }
}

/// `HEXBUBBLE_SEED` when set, otherwise the flag value.
pub fn effective_seed(flag: u64, env: Option<&str>) -> Result<u64, CliError> {
    match env {
        Some(s) => s
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("{SEED_ENV} must be an unsigned integer, got {s:?}"))),
        None => Ok(flag),
    }
}

pub fn cmd_verify(suite: Suite, seed: u64, hooks: &Hooks, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    let report = verify::run(suite, seed, hooks);
    io(write!(out, "{report}"), || "cannot write output".into())?;
    if report.passed() {
        return Ok(());
    }
    for c in report.failed() {
        let detail = c.first_failure.as_deref().unwrap_or("");
        io(writeln!(err, "failed check {}: {detail}", c.name), || "cannot write diagnostics".into())?;
    }
    Err(CliError::VerifyFailed)
}

pub fn cmd_render(alpha: f64, path: &Path) -> Result<(), CliError> {
    let svg = render_result(&solve(alpha)?);
    write_file(path, svg.as_bytes())
}

pub fn cmd_iso(volume: f64, svg: Option<&Path>, out: &mut dyn Write) -> Result<(), CliError> {
    let (l0, perimeter) = isoperimetric_optimum(volume)?;
    io(writeln!(out, "L0 {}\nperimeter {}", sig(l0), sig(perimeter)), || "cannot write output".into())?;
    if let Some(path) = svg {
        let hex = regular_hexagon(volume)?;
        let caption = format!("regular hexagon V = {} perimeter = {}", sig(volume), sig(perimeter));
        write_file(path, render_single(&hex, caption).as_bytes())?;
    }
    Ok(())
}
