//! Command-line front end for the resolution engine: list the model
//! catalog, compute Euler characteristics and Hodge numbers, expand the
//! bundled generating functions, and re-verify every bundled reference row.

use clap::{Parser, Subcommand, ValueEnum};
use crepant::hodge;
use crepant::models::{self, ModelError, ModelKey, ModelSpec, VerifyReport, VerifyScope};
use crepant::output::{latex_math, ListEntry, OutputRecord, Parameters, Provenance};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "crepant",
    version,
    about = "Euler characteristics and Hodge numbers of crepant resolutions of Weierstrass models"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    /// Canonical polynomial text.
    Text,
    /// A JSON output record (an array of them for `verify`).
    Json,
    /// A LaTeX math expression, for visual diffing against typeset tables.
    Latex,
}

#[derive(Subcommand)]
enum Command {
    /// List cataloged models, optionally filtered by key or a `PREFIX*` glob.
    List { filter: Option<String> },
    /// Euler characteristic over a base of the given dimension.
    Chi {
        /// Model key, e.g. SU5 or SmoothWeierstrass.
        #[arg(long)]
        model: String,
        /// Base dimension, at least 1.
        #[arg(long)]
        dim: u32,
        /// Impose the Calabi-Yau condition by rewriting L as c1.
        #[arg(long)]
        cy: bool,
    },
    /// Expand the bundled generating function through a weight.
    Genfun {
        #[arg(long)]
        model: String,
        /// Highest weight kept in the expansion.
        #[arg(long, default_value_t = 5)]
        order: u32,
    },
    /// Hodge numbers of the model's Calabi-Yau threefold.
    Hodge {
        #[arg(long)]
        model: String,
    },
    /// Recompute bundled reference rows and report every comparison.
    Verify {
        /// all, table11, table12, table13, table14, table15, or coincidences.
        #[arg(long, default_value = "all")]
        scope: String,
        /// Series order for the table11 scope (default 5).
        #[arg(long)]
        order: Option<u32>,
    },
}

enum Failure {
    Usage(String),
    Internal(String),
}

fn classify(err: ModelError) -> Failure {
    match err {
        ModelError::BadDimension(_) | ModelError::UnknownModel(_) => {
            Failure::Usage(err.to_string())
        }
        other => Failure::Internal(other.to_string()),
    }
}

fn lookup<'a>(catalog: &'a [ModelSpec], name: &str) -> Result<&'a ModelSpec, Failure> {
    match ModelKey::parse(name) {
        Some(key) => Ok(models::find(catalog, key)),
        None => Err(classify(ModelError::UnknownModel(name.to_string()))),
    }
}

/// Prints one record in the chosen format; `latex_form` is the math-aware
/// rendering used when the canonical text form is not wanted.
fn emit(record: &OutputRecord, latex_form: &str, format: Format) {
    match format {
        Format::Text => println!("{}", record.result),
        Format::Json => println!("{}", record.to_json()),
        Format::Latex => println!("{latex_form}"),
    }
}

fn cmd_list(catalog: &[ModelSpec], filter: Option<&str>, format: Format) -> ExitCode {
    let selected: Vec<&ModelSpec> = catalog
        .iter()
        .filter(|spec| match filter {
            None => true,
            Some(f) => match f.strip_suffix('*') {
                Some(prefix) => spec
                    .key
                    .as_str()
                    .to_ascii_lowercase()
                    .starts_with(&prefix.to_ascii_lowercase()),
                None => spec.key.as_str().eq_ignore_ascii_case(f),
            },
        })
        .collect();
    if format == Format::Json {
        let entries: Vec<ListEntry> = selected
            .iter()
            .map(|spec| ListEntry {
                model: spec.key.to_string(),
                group: spec.group.to_string(),
                algebra: spec.algebra.to_string(),
                rank: spec.rank,
                kodaira: spec.kodaira.to_string(),
                steps: spec.steps.len(),
            })
            .collect();
        println!(
            "{}",
            serde_json::to_string_pretty(&entries).expect("entries serialize")
        );
    } else {
        for spec in selected {
            println!(
                "{:<18} {:<9} {:<3} rank={:<2} steps={}  {}",
                spec.key,
                spec.group,
                spec.algebra,
                spec.rank,
                spec.steps.len(),
                spec.kodaira
            );
        }
    }
    ExitCode::SUCCESS
}

fn cmd_chi(
    catalog: &[ModelSpec],
    model: &str,
    dim: u32,
    cy: bool,
    format: Format,
) -> Result<ExitCode, Failure> {
    let spec = lookup(catalog, model)?;
    let poly = models::euler_polynomial(spec, dim, cy).map_err(classify)?;
    let record = OutputRecord {
        model: spec.key.to_string(),
        operation: "chi".to_string(),
        parameters: Parameters {
            base_dim: Some(dim),
            cy: Some(cy),
            ..Parameters::default()
        },
        result: poly.to_string(),
        provenance: Provenance::Computed,
    };
    emit(&record, &latex_math(&poly), format);
    Ok(ExitCode::SUCCESS)
}

fn cmd_genfun(
    catalog: &[ModelSpec],
    model: &str,
    order: u32,
    format: Format,
) -> Result<ExitCode, Failure> {
    let spec = lookup(catalog, model)?;
    let series = models::expand_reference(spec, order).map_err(classify)?;
    let record = OutputRecord {
        model: spec.key.to_string(),
        operation: "genfun".to_string(),
        parameters: Parameters {
            order: Some(order),
            ..Parameters::default()
        },
        result: series.to_string(),
        provenance: Provenance::Fixture,
    };
    emit(&record, &latex_math(&series), format);
    Ok(ExitCode::SUCCESS)
}

fn cmd_hodge(catalog: &[ModelSpec], model: &str, format: Format) -> Result<ExitCode, Failure> {
    let spec = lookup(catalog, model)?;
    let pair = hodge::hodge_cy3(spec).map_err(classify)?;
    let record = OutputRecord {
        model: spec.key.to_string(),
        operation: "hodge".to_string(),
        parameters: Parameters::default(),
        result: format!(
            "h11 = {}; h21 = {}; chi = {}",
            pair.h11, pair.h21, pair.chi
        ),
        provenance: Provenance::Computed,
    };
    let latex_form = format!(
        "h^{{1,1}} = {} \\quad h^{{2,1}} = {} \\quad \\chi = {}",
        latex_math(&pair.h11),
        latex_math(&pair.h21),
        latex_math(&pair.chi)
    );
    emit(&record, &latex_form, format);
    Ok(ExitCode::SUCCESS)
}

fn parse_scope(name: &str, order: Option<u32>) -> Result<(VerifyScope, String), Failure> {
    let canonical = name.to_ascii_lowercase();
    let scope = match canonical.as_str() {
        "all" => VerifyScope::All,
        "table11" => VerifyScope::Table11 {
            order: order.unwrap_or(5),
        },
        "table12" => VerifyScope::Table12,
        "table13" => VerifyScope::Table13,
        "table14" => VerifyScope::Table14,
        "table15" => VerifyScope::Table15,
        "coincidences" => VerifyScope::Coincidences,
        other => {
            return Err(Failure::Usage(format!(
                "unknown scope `{other}` (expected all, table11..table15, or coincidences)",
            )))
        }
    };
    if order.is_some() && !matches!(scope, VerifyScope::Table11 { .. }) {
        return Err(Failure::Usage(
            "--order only applies to --scope table11".to_string(),
        ));
    }
    Ok((scope, canonical))
}

fn cmd_verify(
    catalog: &[ModelSpec],
    scope_name: &str,
    order: Option<u32>,
    format: Format,
) -> Result<ExitCode, Failure> {
    let (scope, canonical) = parse_scope(scope_name, order)?;
    let report: VerifyReport = models::verify_reference(catalog, scope).map_err(classify)?;
    if format == Format::Json {
        let records: Vec<OutputRecord> = report
            .checks
            .iter()
            .map(|check| OutputRecord {
                model: check.model.to_string(),
                operation: "verify".to_string(),
                parameters: Parameters {
                    scope: Some(canonical.clone()),
                    order: match scope {
                        VerifyScope::Table11 { order } => Some(order),
                        _ => None,
                    },
                    ..Parameters::default()
                },
                result: if check.pass {
                    format!("{}: pass", check.subject)
                } else {
                    format!(
                        "{}: fail (expected {}, actual {})",
                        check.subject, check.expected, check.actual
                    )
                },
                provenance: Provenance::Computed,
            })
            .collect();
        println!(
            "{}",
            serde_json::to_string_pretty(&records).expect("records serialize")
        );
    } else {
        for check in &report.checks {
            if check.pass {
                println!("PASS {} {}", check.model, check.subject);
            } else {
                println!(
                    "FAIL {} {} (expected {}, actual {})",
                    check.model, check.subject, check.expected, check.actual
                );
            }
        }
        println!(
            "verified {} checks, {} failures",
            report.checks.len(),
            report.failures()
        );
    }
    Ok(if report.all_passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn run(cli: Cli) -> Result<ExitCode, Failure> {
    let catalog = models::catalog().map_err(classify)?;
    match cli.command {
        Command::List { filter } => Ok(cmd_list(&catalog, filter.as_deref(), cli.format)),
        Command::Chi { model, dim, cy } => cmd_chi(&catalog, &model, dim, cy, cli.format),
        Command::Genfun { model, order } => cmd_genfun(&catalog, &model, order, cli.format),
        Command::Hodge { model } => cmd_hodge(&catalog, &model, cli.format),
        Command::Verify { scope, order } => cmd_verify(&catalog, &scope, order, cli.format),
    }
}

fn main() -> ExitCode {
    // Die quietly when downstream closes the pipe, like other line tools.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(Failure::Usage(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
        Err(Failure::Internal(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
    }
}
