//! Command-line surface. Exit codes: 0 pass, 1 usage or parse error,
//! 2 verification failure.

pub mod file;
pub mod obj;
pub mod report;

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::catalog::{make_solid, Scenario, SolidSpec};
use crate::dissection::verify_certificate;
use crate::formulas::{moscow_trace, nine_chapters_trace, TraceStyle};
use crate::geometry::Rational;

pub use file::{parse_certificate, render_certificate, CertificateFile, FileError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_FAILED: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "frusta",
    version,
    about = "Exact verification of frustum volume rules and block dissections"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Verify a certificate file.
    Verify {
        file: PathBuf,
        /// Emit the report as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Build a catalog certificate and write it to a file.
    Build {
        scenario: String,
        #[arg(allow_negative_numbers = true)]
        params: Vec<Rational>,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Reproduce every pinned value and compare against the expected one.
    Report {
        #[arg(long)]
        json: bool,
    },
    /// Export a certificate file or a solid spec (e.g. `symmetric_frustum:4,2,6`) as OBJ.
    Export {
        input: String,
        #[arg(short, long)]
        output: PathBuf,
        /// Significant digits of the decimal coordinates.
        #[arg(long, default_value_t = obj::DEFAULT_DIGITS)]
        digits: usize,
    },
    /// Step-by-step trace of a historical algorithm.
    Trace {
        style: TraceStyle,
        #[arg(allow_negative_numbers = true)]
        a: Rational,
        #[arg(allow_negative_numbers = true)]
        b: Rational,
        #[arg(allow_negative_numbers = true)]
        h: Rational,
        #[arg(long)]
        unit: Option<String>,
    },
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(msg) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
    }
}

fn execute(command: Command, out: &mut dyn Write) -> Result<i32, String> {
    let io = |e: std::io::Error| e.to_string();
    match command {
        Command::Verify { file, json } => {
            let text = read(&file)?;
            let cert = parse_certificate(&text).map_err(|e| format!("{}: {e}", file.display()))?;
            let verdict = verify_certificate(&cert).map_err(|e| e.to_string())?;
            let report = report::VerificationReport::new(&cert, &verdict);
            if json {
                writeln!(
                    out,
                    "{}",
                    serde_json::to_string_pretty(&report).map_err(|e| e.to_string())?
                )
                .map_err(io)?;
            } else {
                write!(out, "{}", report.render()).map_err(io)?;
            }
            Ok(if verdict.passed() {
                EXIT_OK
            } else {
                EXIT_FAILED
            })
        }
        Command::Build {
            scenario,
            params,
            output,
        } => {
            let scenario: Scenario = scenario
                .parse()
                .map_err(|e: crate::catalog::CatalogError| e.to_string())?;
            let cert = scenario.build(&params).map_err(|e| e.to_string())?;
            std::fs::write(&output, render_certificate(&cert))
                .map_err(|e| format!("{}: {e}", output.display()))?;
            writeln!(
                out,
                "wrote {} ({} solids, {} pieces, {} claims)",
                output.display(),
                cert.sources.len() + cert.targets.len() + cert.regions.len(),
                cert.pieces.len(),
                cert.claims.len()
            )
            .map_err(io)?;
            Ok(EXIT_OK)
        }
        Command::Report { json } => {
            let report = report::golden_report();
            if json {
                writeln!(
                    out,
                    "{}",
                    serde_json::to_string_pretty(&report).map_err(|e| e.to_string())?
                )
                .map_err(io)?;
            } else {
                write!(out, "{}", report.render()).map_err(io)?;
            }
            Ok(if report.passed() {
                EXIT_OK
            } else {
                EXIT_FAILED
            })
        }
        Command::Export {
            input,
            output,
            digits,
        } => {
            if digits == 0 {
                return Err("--digits must be at least 1".into());
            }
            let objects = if Path::new(&input).is_file() {
                let cert = parse_certificate(&read(Path::new(&input))?)
                    .map_err(|e| format!("{input}: {e}"))?;
                obj::certificate_objects(&cert)
            } else {
                let spec = SolidSpec::parse(&input).map_err(|e| format!("{input}: {e}"))?;
                obj::solid_objects(&make_solid(&spec).map_err(|e| e.to_string())?)
            };
            std::fs::write(&output, obj::render_obj(&objects, digits))
                .map_err(|e| format!("{}: {e}", output.display()))?;
            writeln!(
                out,
                "wrote {} ({} objects)",
                output.display(),
                objects.len()
            )
            .map_err(io)?;
            Ok(EXIT_OK)
        }
        Command::Trace {
            style,
            a,
            b,
            h,
            unit,
        } => {
            let trace = match style {
                TraceStyle::Moscow => moscow_trace(&a, &b, &h),
                TraceStyle::NineChapters => nine_chapters_trace(&a, &b, &h),
            }
            .map_err(|e| e.to_string())?;
            let trace = match unit {
                Some(u) => trace.with_unit(u),
                None => trace,
            };
            write!(out, "{}", trace.render()).map_err(io)?;
            Ok(EXIT_OK)
        }
    }
}

fn read(path: &Path) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}
