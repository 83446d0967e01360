use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use csdepth::algebra::Rational;
use csdepth::analysis::{run_analysis, AnalysisRequest, FiberSource};
use csdepth::enumeration::EnumerationOptions;
use csdepth::lattice::FieldSpec;
use csdepth::Error;

/// Exit codes: 0 success, 2 usage, 3 enumeration cap, 4 I/O, 5 catalog schema.
#[derive(Parser)]
#[command(name = "csdepth", version, about = "C-symplectic posets and depths of relative Sullivan models")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build the catalog for one fiber, its poset and its depth.
    Analyze(AnalyzeArgs),
}

#[derive(Args)]
struct AnalyzeArgs {
    /// Fiber degrees, e.g. 3,5,9 (even d needs a partner 2d-1).
    #[arg(long, value_delimiter = ',')]
    degrees: Option<Vec<u32>>,
    /// CP^n x S^(2n+1) family.
    #[arg(long, conflicts_with_all = ["sp", "fixture", "catalog"])]
    cp: Option<u32>,
    /// Sp(n) chain.
    #[arg(long, conflicts_with_all = ["fixture", "catalog"])]
    sp: Option<u32>,
    /// Built-in catalog by name.
    #[arg(long, conflicts_with = "catalog")]
    fixture: Option<String>,
    /// Catalog JSON written by an earlier run.
    #[arg(long)]
    catalog: Option<PathBuf>,
    /// q, cyc:<m> or qbar.
    #[arg(long, default_value = "qbar")]
    field: String,
    /// Nonzero coefficients tried on entangled terms.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    coeffs: Option<Vec<String>>,
    #[arg(long)]
    max_terms: Option<usize>,
    #[arg(long)]
    max_assignments: Option<u64>,
    #[arg(long)]
    dot: Option<PathBuf>,
    #[arg(long)]
    json: Option<PathBuf>,
    /// Suppress the summary.
    #[arg(long)]
    quiet: bool,
}

fn parse_coefficient(s: &str) -> Result<Rational, Error> {
    let bad = || Error::Usage(format!("bad coefficient `{s}`"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim().parse().map_err(|_| bad())?, d.trim().parse().map_err(|_| bad())?),
        None => (s.trim().parse().map_err(|_| bad())?, 1.into()),
    };
    if d == 0.into() {
        return Err(bad());
    }
    Ok(Rational::new(n, d))
}

fn request(a: AnalyzeArgs) -> Result<AnalysisRequest, Error> {
    let source = if let Some(n) = a.cp {
        FiberSource::Cp(n)
    } else if let Some(n) = a.sp {
        FiberSource::Sp(n)
    } else if let Some(name) = a.fixture {
        FiberSource::Fixture(name)
    } else if let Some(path) = a.catalog {
        FiberSource::Catalog(path)
    } else if let Some(d) = &a.degrees {
        FiberSource::Degrees(d.clone())
    } else {
        return Err(Error::Usage(
            "give one of --degrees, --cp, --sp, --fixture, --catalog".into(),
        ));
    };
    let mut req = AnalysisRequest::new(source);
    req.degrees = a.degrees;
    req.field = FieldSpec::parse(&a.field)?;
    let mut opts = EnumerationOptions {
        field: req.field,
        ..EnumerationOptions::default()
    };
    if let Some(c) = a.coeffs {
        opts.coefficients = c.iter().map(|s| parse_coefficient(s)).collect::<Result<_, _>>()?;
    }
    if let Some(m) = a.max_terms {
        opts.max_terms = m;
    }
    if let Some(m) = a.max_assignments {
        opts.max_assignments = m;
    }
    req.options = opts;
    req.dot = a.dot;
    req.json = a.json;
    Ok(req)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let Command::Analyze(args) = cli.command;
    let quiet = args.quiet;
    let outcome = request(args).and_then(|r| run_analysis(&r));
    match outcome {
        Ok(out) => {
            if !quiet {
                for line in &out.summary {
                    println!("{line}");
                }
            }
            ExitCode::from(out.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("csdepth: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
