use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use splitpack::verifier::Check;
use splitpack_cli::commands::{Distribution, GenParams};
use splitpack_cli::docs::{ContainerSpec, PackingDocument};
use splitpack_cli::{
    cmd_approx, cmd_decide, cmd_gen, cmd_pack, cmd_verify, parse_instance, svg, CliError, CliResult,
};

#[derive(Parser)]
#[command(
    name = "splitpack",
    version,
    about = "Pack circles into squares and non-acute triangles"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Report whether the instance is guaranteed to be packable.
    Decide(InstanceArgs),
    /// Pack the instance and print the placements.
    Pack {
        #[command(flatten)]
        instance: InstanceArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Find the smallest container of the given shape and pack into it.
    Approx {
        #[command(flatten)]
        instance: InstanceArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Check a packing document for overlaps and containment.
    Verify {
        /// Packing document, or `-` for stdin.
        #[arg(default_value = "-")]
        packing: String,
        /// Original instance; also checks that the placed circles match it.
        #[arg(long)]
        circles: Option<String>,
        /// Absolute tolerance; defaults to 1e-9 times the container diameter.
        #[arg(long)]
        tolerance: Option<f64>,
    },
    /// Generate a random instance.
    Gen {
        #[arg(long, short = 'n')]
        n: usize,
        /// Combined area as a fraction of the critical area.
        #[arg(long, default_value_t = 1.0)]
        ratio: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Distribution::Uniform)]
        distribution: Distribution,
        #[arg(long, default_value = "square:1", value_parser = parse_container)]
        container: ContainerSpec,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct InstanceArgs {
    /// `square:SIDE` or `triangle:X,Y,Z`; overrides the instance file.
    #[arg(long, value_parser = parse_container)]
    container: Option<ContainerSpec>,
    /// Instance file, or `-` for stdin.
    #[arg(long, default_value = "-")]
    circles: String,
    /// Lower bound on every circle area.
    #[arg(long)]
    min_size: Option<f64>,
}

#[derive(Args)]
struct OutputArgs {
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Svg,
}

fn parse_container(s: &str) -> Result<ContainerSpec, String> {
    ContainerSpec::parse(s).map_err(|e| e.to_string())
}

fn read_source(name: &str) -> CliResult<String> {
    if name == "-" {
        let mut text = String::new();
        io::stdin().read_to_string(&mut text)?;
        Ok(text)
    } else {
        Ok(fs::read_to_string(name)?)
    }
}

fn emit(text: &str, out: Option<&PathBuf>) -> CliResult<()> {
    match out {
        Some(path) => fs::write(path, text)?,
        None => io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn json<T: Serialize>(value: &T) -> CliResult<String> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

fn emit_packing<T: Serialize>(
    report: &T,
    packing: &PackingDocument,
    output: &OutputArgs,
) -> CliResult<()> {
    let text = match output.format {
        Format::Json => json(report)?,
        Format::Svg => svg::render(packing)?,
    };
    emit(&text, output.out.as_ref())
}

#[derive(Serialize)]
struct VerifySummary<'a> {
    passed: bool,
    worst_slack: Option<f64>,
    tolerance: f64,
    checks: usize,
    failures: Vec<&'a Check>,
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Decide(args) => {
            let instance =
                parse_instance(&read_source(&args.circles)?, args.container, args.min_size)?;
            emit(&json(&cmd_decide(&instance)?)?, None)
        }
        Command::Pack { instance, output } => {
            let text = read_source(&instance.circles)?;
            let instance = parse_instance(&text, instance.container, instance.min_size)?;
            let packing = cmd_pack(&instance)?;
            emit_packing(&packing, &packing, &output)
        }
        Command::Approx { instance, output } => {
            let text = read_source(&instance.circles)?;
            let instance = parse_instance(&text, instance.container, instance.min_size)?;
            let report = cmd_approx(&instance)?;
            emit_packing(&report, &report.packing, &output)
        }
        Command::Verify {
            packing,
            circles,
            tolerance,
        } => {
            let doc: PackingDocument = serde_json::from_str(&read_source(&packing)?)?;
            let areas = match circles {
                Some(src) => {
                    let instance =
                        parse_instance(&read_source(&src)?, Some(doc.container.clone()), None)?;
                    Some(instance.areas()?)
                }
                None => None,
            };
            let report = cmd_verify(&doc, tolerance, areas.as_deref())?;
            let summary = VerifySummary {
                passed: report.passed,
                worst_slack: report.worst_slack.is_finite().then_some(report.worst_slack),
                tolerance: report.tolerance,
                checks: report.checks.len(),
                failures: report.failures().collect(),
            };
            emit(&json(&summary)?, None)?;
            if report.passed {
                Ok(())
            } else {
                let first = report.failures().next().map_or(String::new(), |c| {
                    format!("{:?} on {:?} with slack {}", c.kind, c.ids, c.slack)
                });
                Err(CliError::VerificationFailed(first))
            }
        }
        Command::Gen {
            n,
            ratio,
            seed,
            distribution,
            container,
            out,
        } => {
            let doc = cmd_gen(&GenParams {
                n,
                target_ratio: ratio,
                seed,
                distribution,
                container,
            })?;
            emit(&json(&doc)?, out.as_ref())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("splitpack: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
