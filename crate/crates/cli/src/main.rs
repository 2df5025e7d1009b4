//! `gcorr`: validation, properness certificates, transfer, and Morita
//! reports for finite groupoid correspondences described in JSON.
//!
//! Exit codes: 0 all checks pass, 1 some verdict failed, 2 input error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use gcorr::{commands, schema};
use gcorr::report::Report;
use gcorr::schema::CliError;
use gcorr_core::fixtures;

#[derive(Parser)]
#[command(name = "gcorr", version, about = "Finite groupoid correspondence toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct RunArgs {
    /// Input document (JSON).
    #[arg(long)]
    input: PathBuf,
    /// Object to check; defaults to the only bispace.
    #[arg(long)]
    object: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct TransferArgs {
    #[command(flatten)]
    run: RunArgs,
    /// Algebra element over the left groupoid, e.g. "δ_s", "delta_s" or
    /// a JSON object {"s": "1+0i"}.
    #[arg(long)]
    element: String,
}

#[derive(Args)]
struct FixtureArgs {
    /// Fixture name: PT, Z2, PAIR2, SUBGRP(Z4,2Z4), SWAP, ZCIRC(4), QUIV,
    /// GBUND(3), TRANSV(3,2), MODH, ZEROATOM.
    #[arg(long)]
    name: String,
    /// Output path; stdout when omitted.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Check groupoid, Haar, action, bispace, and invariance axioms.
    Validate(RunArgs),
    /// Compute the adjoining function of a correspondence.
    Adjoining(RunArgs),
    /// Decide properness and emit the certificate.
    CheckProper(RunArgs),
    /// Brute-force the literal properness equation against the certificate.
    VerifyEquation(RunArgs),
    /// Transfer an algebra element into the hypergroupoid algebra.
    Transfer(TransferArgs),
    /// Verify the imprimitivity identity and report span ranks.
    Morita(RunArgs),
    /// Replace the family by the counting family; emit the density.
    NormalizeEtale(RunArgs),
    /// Forget the left action down to the unit-space groupoid.
    RestrictUnits(RunArgs),
    /// Run the full pipeline (or the tasks listed in the document).
    Report(RunArgs),
    /// Emit a named fixture as an input document.
    Fixture(FixtureArgs),
}

fn load(args: &RunArgs) -> Result<schema::ResolvedDocument, CliError> {
    schema::resolve(schema::parse_file(&args.input)?)
}

fn emit(report: &Report, format: Format) -> ExitCode {
    let text = match format {
        Format::Json => report.render_json(),
        Format::Text => report.render_text(),
    };
    print!("{text}");
    if report.all_pass() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    match cli.command {
        Command::Validate(args) => {
            let doc = load(&args)?;
            let report = commands::cmd_validate(&doc, args.object.as_deref())?;
            Ok(emit(&report, args.format))
        }
        Command::Adjoining(args) => {
            let doc = load(&args)?;
            let report = commands::cmd_adjoining(&doc, args.object.as_deref())?;
            Ok(emit(&report, args.format))
        }
        Command::CheckProper(args) => {
            let doc = load(&args)?;
            let report = commands::cmd_check_proper(&doc, args.object.as_deref())?;
            Ok(emit(&report, args.format))
        }
        Command::VerifyEquation(args) => {
            let doc = load(&args)?;
            let report = commands::cmd_verify_equation(&doc, args.object.as_deref())?;
            Ok(emit(&report, args.format))
        }
        Command::Transfer(args) => {
            let doc = load(&args.run)?;
            let report =
                commands::cmd_transfer(&doc, args.run.object.as_deref(), &args.element)?;
            Ok(emit(&report, args.run.format))
        }
        Command::Morita(args) => {
            let doc = load(&args)?;
            let report = commands::cmd_morita(&doc, args.object.as_deref())?;
            Ok(emit(&report, args.format))
        }
        Command::NormalizeEtale(args) => {
            let doc = load(&args)?;
            let report = commands::cmd_normalize_etale(&doc, args.object.as_deref())?;
            Ok(emit(&report, args.format))
        }
        Command::RestrictUnits(args) => {
            let doc = load(&args)?;
            let report = commands::cmd_restrict_units(&doc, args.object.as_deref())?;
            Ok(emit(&report, args.format))
        }
        Command::Report(args) => {
            let doc = load(&args)?;
            let report = commands::cmd_report(&doc, args.object.as_deref())?;
            Ok(emit(&report, args.format))
        }
        Command::Fixture(args) => {
            let fixture = fixtures::generate(&args.name)
                .map_err(|e| CliError::ParseError(e.to_string()))?;
            let text = schema::to_json(&schema::document_from_fixture(&fixture));
            match &args.output {
                Some(path) => std::fs::write(path, text)?,
                None => print!("{text}"),
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
