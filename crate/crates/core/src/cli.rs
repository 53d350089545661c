//! Command-line front end: construct, verify, certify, and export.
//!
//! Exit codes: 0 on success, 1 when a verification or certificate fails on
//! a well-formed input, 2 on usage or malformed-input errors (clap uses 2
//! for usage errors on its own). Machine output (JSON or geometry) goes to
//! `--out` or stdout; the human summary goes to stderr.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::certificate::{certify, CertificateReport};
use crate::constructions::theta::ThetaGraph;
use crate::constructions::{b2_demo, construction_a, construction_b};
use crate::error::{Error, Result};
use crate::export::{export_document, ExportFormat};
use crate::io::{read_document, Document};
use crate::tol;
use crate::verify::{all_pass, verify_all, verify_theta, CheckReport, VerifyOptions};

#[derive(Parser)]
#[command(
    name = "equibouquet",
    version,
    about = "Equivariant embeddings of bouquets of circles: construct, verify, certify, export"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build an embedding and write it as JSON.
    Construct(ConstructArgs),
    /// Run the checker suite on an embedding file.
    Verify(VerifyArgs),
    /// Check the dimension-bound certificate on an embedding file.
    Certify(CertifyArgs),
    /// Sample circle polylines into OFF, CSV, or JSON.
    Export(ExportArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Scheme {
    /// Simplex frame plus standard basis in dimension 2g−1, vertex at the origin.
    A,
    /// Unit-sphere family in dimension 2g, one coordinate plane per circle.
    B,
    /// Hand-built two-circle demo in three-space.
    B2r3,
    /// Theta graph on the two-sphere with its twelve symmetries.
    M3,
}

#[derive(Args)]
struct ConstructArgs {
    /// Which construction to build.
    #[arg(long, value_enum)]
    scheme: Scheme,
    /// Number of circles; required for schemes a and b, ignored otherwise.
    #[arg(long)]
    genus: Option<usize>,
    /// Lift a flat embedding onto the unit sphere one dimension up.
    #[arg(long)]
    compactify: bool,
    /// Output path (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct InputArg {
    /// Embedding file (alternative to the positional form).
    #[arg(long = "in", value_name = "FILE")]
    input_flag: Option<PathBuf>,
    /// Embedding file.
    #[arg(value_name = "FILE")]
    input_pos: Option<PathBuf>,
}

impl InputArg {
    fn resolve(&self) -> Result<&PathBuf> {
        match (&self.input_flag, &self.input_pos) {
            (Some(p), None) | (None, Some(p)) => Ok(p),
            (Some(_), Some(_)) => Err(Error::Domain(
                "input given both positionally and with --in".into(),
            )),
            (None, None) => Err(Error::Domain("no input file; pass FILE or --in FILE".into())),
        }
    }
}

fn parse_seed(s: &str) -> std::result::Result<u64, String> {
    let s = s.trim();
    let parsed = if let Some(hex) = s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
        u64::from_str_radix(hex, 16)
    } else {
        s.parse()
    };
    parsed.map_err(|e| format!("invalid seed {s:?}: {e}"))
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    input: InputArg,
    /// Report path (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Sample points per circle.
    #[arg(long, default_value_t = tol::DEFAULT_SAMPLES)]
    samples: usize,
    /// Geometric residual tolerance.
    #[arg(long = "tol-geom", default_value_t = tol::GEOMETRY)]
    tol_geom: f64,
    /// Orthogonality residual tolerance.
    #[arg(long = "tol-orth", default_value_t = tol::ORTHOGONALITY)]
    tol_orth: f64,
    /// RNG seed for sampled checks; decimal or 0x-hex.
    #[arg(long, env = "EQUIBOUQUET_SEED", default_value = "0x5EED", value_parser = parse_seed)]
    seed: u64,
}

#[derive(Args)]
struct CertifyArgs {
    #[command(flatten)]
    input: InputArg,
    /// Report path (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Off,
    Csv,
    Json,
}

#[derive(Args)]
struct ExportArgs {
    #[command(flatten)]
    input: InputArg,
    /// Geometry format.
    #[arg(long, value_enum)]
    format: FormatArg,
    /// Sample points per curve.
    #[arg(long, default_value_t = tol::DEFAULT_SAMPLES)]
    samples: usize,
    /// Output path (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => println!("{text}"),
    }
    Ok(())
}

fn required_genus(args: &ConstructArgs) -> Result<usize> {
    args.genus
        .ok_or_else(|| Error::Domain("--genus is required for schemes a and b".into()))
}

fn run_construct(args: ConstructArgs) -> Result<i32> {
    let doc = match args.scheme {
        Scheme::A => {
            let e = construction_a(required_genus(&args)?)?;
            Document::Bouquet(if args.compactify { e.compactify()? } else { e })
        }
        Scheme::B => {
            let e = construction_b(required_genus(&args)?)?;
            Document::Bouquet(if args.compactify { e.compactify()? } else { e })
        }
        Scheme::B2r3 => {
            let e = b2_demo();
            Document::Bouquet(if args.compactify { e.compactify()? } else { e })
        }
        Scheme::M3 => {
            if args.compactify {
                return Err(Error::Domain(
                    "scheme m3 already lives on the sphere; --compactify does not apply".into(),
                ));
            }
            Document::Theta(ThetaGraph::standard())
        }
    };
    emit(&args.out, &doc.to_json()?)?;
    match &doc {
        Document::Bouquet(e) => eprintln!(
            "constructed genus-{} embedding in dimension {}",
            e.genus(),
            e.ambient_dim()
        ),
        Document::Theta(_) => eprintln!("constructed theta graph on the two-sphere"),
    }
    Ok(0)
}

fn summarize_checks(reports: &[CheckReport]) {
    for r in reports {
        let mark = if r.pass { "ok  " } else { "FAIL" };
        match &r.witness {
            Some(w) => eprintln!("{mark} {:<20} residual {:.3e}  ({w})", r.check, r.residual),
            None => eprintln!("{mark} {:<20} residual {:.3e}", r.check, r.residual),
        }
    }
}

fn run_verify(args: VerifyArgs) -> Result<i32> {
    let opts = VerifyOptions {
        samples: args.samples,
        seed: args.seed,
        tol_geom: args.tol_geom,
        tol_orth: args.tol_orth,
        ..VerifyOptions::default()
    };
    let reports = match read_document(args.input.resolve()?)? {
        Document::Bouquet(e) => verify_all(&e, &opts)?,
        Document::Theta(t) => verify_theta(&t, &opts),
    };
    emit(&args.out, &serde_json::to_string(&reports)?)?;
    summarize_checks(&reports);
    Ok(if all_pass(&reports) { 0 } else { 1 })
}

fn summarize_certificate(report: &CertificateReport) {
    for step in &report.steps {
        let mark = if step.ok { "ok  " } else { "FAIL" };
        eprintln!("{mark} {:<32} {}", step.step, step.detail);
    }
    eprintln!(
        "{} ambient {} = dim V {} + dim V-perp {}, genus {}",
        if report.holds { "holds:" } else { "FAILS:" },
        report.ambient_dim,
        report.dim_v,
        report.dim_v_perp,
        report.genus
    );
}

fn run_certify(args: CertifyArgs) -> Result<i32> {
    let report = match read_document(args.input.resolve()?)? {
        Document::Bouquet(e) => certify(&e)?,
        Document::Theta(_) => {
            return Err(Error::Domain(
                "the dimension certificate applies to bouquet embeddings, not the theta graph"
                    .into(),
            ))
        }
    };
    emit(&args.out, &serde_json::to_string(&report)?)?;
    summarize_certificate(&report);
    Ok(if report.holds { 0 } else { 1 })
}

fn run_export(args: ExportArgs) -> Result<i32> {
    let doc = read_document(args.input.resolve()?)?;
    let format = match args.format {
        FormatArg::Off => ExportFormat::Off,
        FormatArg::Csv => ExportFormat::Csv,
        FormatArg::Json => ExportFormat::Json,
    };
    emit(&args.out, &export_document(&doc, format, args.samples)?)?;
    Ok(0)
}

fn execute(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Construct(args) => run_construct(args),
        Command::Verify(args) => run_verify(args),
        Command::Certify(args) => run_certify(args),
        Command::Export(args) => run_export(args),
    }
}

/// Exit code for an error surfaced to the top level: inputs that parsed
/// but are mathematically inconsistent count as failed checks (1), all
/// usage, format, and I/O problems count as bad invocations (2).
fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::Inconsistent(_) => 1,
        Error::Domain(_) | Error::Json(_) | Error::Io(_) => 2,
    }
}

/// Parse std::env::args and run; returns the process exit code.
pub fn run() -> i32 {
    let cli = Cli::parse();
    match execute(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code_for(&e)
        }
    }
}
