//! The `chainspec` command line.
//!
//! Exit status is 0 when every verdict passes, 1 when some verdict fails and 2
//! on malformed input or usage errors.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::dynamics::{
    delta_ladder, dual_endomorphism_case, induced_system, AbstractPds, DeltaLadder,
};
use crate::error::{Error, Result};
use crate::format::{self, Input};
use crate::fuzz::{fuzz, FuzzConfig, Granularity, PartitionStrategy};
use crate::model::{classify_operator, validate_concrete, ConcreteModel};
use crate::oracle::character_sequences;
use crate::spectrum::{full_spectrum, SpectrumDescription};
use crate::verify::{verify_level, Level};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "chainspec",
    version,
    about = "Spectra of coefficient algebras of partial isometries, predicted and brute-forced"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
    Dot,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum LevelArg {
    Embed,
    Lower,
    Equal,
    All,
}

impl From<LevelArg> for Level {
    fn from(l: LevelArg) -> Self {
        match l {
            LevelArg::Embed => Level::Embed,
            LevelArg::Lower => Level::Lower,
            LevelArg::Equal => Level::Equal,
            LevelArg::All => Level::All,
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum PartitionArg {
    Singletons,
    RandomCompatible,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct InputArgs {
    /// Concrete model file.
    #[arg(long)]
    model: Option<PathBuf>,
    /// Abstract partial dynamical system file.
    #[arg(long)]
    pds: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the standing hypotheses of a concrete model.
    Validate {
        #[arg(long)]
        model: PathBuf,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
    },
    /// Print the induced partial dynamical system and its Δ ladder.
    Analyze {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
    },
    /// Print the predicted spectrum and the upper-bound families.
    Spectrum {
        #[command(flatten)]
        input: InputArgs,
        /// Materialize tail families up to this length index in text output.
        #[arg(long)]
        depth: Option<usize>,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
    },
    /// Brute-force the atoms of E_*(A) and their character sequences.
    Oracle {
        #[arg(long)]
        model: PathBuf,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
    },
    /// Cross-check the predicted spectrum against the oracle.
    Verify {
        #[arg(long)]
        model: PathBuf,
        #[arg(long, value_enum, default_value_t = LevelArg::All)]
        level: LevelArg,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
    },
    /// Verify every theorem on seeded random models.
    Fuzz {
        #[arg(long, default_value_t = 1000)]
        count: usize,
        #[arg(long = "size-max", default_value_t = 10)]
        size_max: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = PartitionArg::RandomCompatible)]
        partition: PartitionArg,
        /// List the verdicts of every model.
        #[arg(long)]
        per_model: bool,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
    },
    /// Graphviz rendering of α and of the chain forest.
    ExportDot {
        #[command(flatten)]
        input: InputArgs,
    },
}

/// Parses `args` (including the program name) and runs one command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                Error::Internal(_) => EXIT_FAILED,
                _ => EXIT_INPUT,
            }
        }
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn with_path<T>(path: &Path, r: Result<T>) -> Result<T> {
    r.map_err(|e| match e {
        Error::Parse(msg) => Error::Parse(format!("{}: {msg}", path.display())),
        other => other,
    })
}

fn load_model(path: &Path) -> Result<ConcreteModel> {
    with_path(path, format::parse_model(&read(path)?))
}

fn load_input(input: &InputArgs) -> Result<Input> {
    match (&input.model, &input.pds) {
        (Some(path), None) => load_model(path).map(Input::Concrete),
        (None, Some(path)) => with_path(path, format::parse_pds(&read(path)?)).map(Input::Pds),
        _ => unreachable!("clap enforces exactly one input"),
    }
}

/// The system to analyse, with the model it came from when concrete.
fn system_of(input: &Input) -> Result<(AbstractPds, Option<&ConcreteModel>)> {
    match input {
        Input::Concrete(m) => Ok((induced_system(m)?, Some(m))),
        Input::Pds(p) => Ok((p.clone(), None)),
    }
}

fn emit_json(out: &mut dyn Write, value: &impl Serialize) -> Result<()> {
    let text = serde_json::to_string_pretty(value).expect("serializable");
    writeln!(out, "{text}")?;
    Ok(())
}

fn execute(command: Command, out: &mut dyn Write) -> Result<i32> {
    match command {
        Command::Validate { model, format } => {
            let model = load_model(&model)?;
            let report = validate_concrete(&model);
            let kind = classify_operator(&model);
            match format {
                OutputFormat::Json => emit_json(
                    out,
                    &serde_json::json!({
                        "valid": report.is_valid(),
                        "operator": kind,
                        "checks": report,
                    }),
                )?,
                _ => {
                    writeln!(out, "model: {}", format::model_to_json(&model))?;
                    writeln!(out, "operator: {kind}")?;
                    for (name, check) in report.checks() {
                        let verdict = if check.passed { "pass" } else { "FAIL" };
                        write!(out, "{name:<24} {verdict}")?;
                        if !check.passed {
                            write!(out, "  witnesses {:?}", check.witnesses)?;
                        }
                        writeln!(out)?;
                    }
                    writeln!(out, "valid: {}", report.is_valid())?;
                }
            }
            Ok(if report.is_valid() {
                EXIT_OK
            } else {
                EXIT_FAILED
            })
        }
        Command::Analyze { input, format } => {
            let input = load_input(&input)?;
            let (pds, model) = system_of(&input)?;
            let ladder = delta_ladder(&pds);
            let dual = model.map(dual_endomorphism_case).transpose()?.flatten();
            match format {
                OutputFormat::Json => {
                    let sets = |s: &[crate::dynamics::PointSet]| -> Vec<Vec<String>> {
                        s.iter()
                            .map(|x| x.iter().map(|&p| pds.label(p).to_owned()).collect())
                            .collect()
                    };
                    let labels = |s: &crate::dynamics::PointSet| -> Vec<String> {
                        s.iter().map(|&p| pds.label(p).to_owned()).collect()
                    };
                    emit_json(
                        out,
                        &serde_json::json!({
                            "system": serde_json::from_str::<serde_json::Value>(&format::pds_to_json(&pds)).expect("json"),
                            "operator": model.map(classify_operator),
                            "ladder": {
                                "forward": sets(ladder.forward()),
                                "backward": sets(ladder.backward()),
                                "core": labels(ladder.core()),
                                "stab_forward": ladder.stab_forward(),
                                "stab_backward": ladder.stab_backward(),
                            },
                            "dual_homeomorphism": dual.as_ref().map(|w| {
                                w.inverse.iter()
                                    .map(|(&q, &p)| [pds.label(q).to_owned(), pds.label(p).to_owned()])
                                    .collect::<Vec<_>>()
                            }),
                        }),
                    )?;
                }
                _ => {
                    write_system(out, &pds, &ladder)?;
                    if let Some(m) = model {
                        writeln!(out, "operator: {}", classify_operator(m))?;
                        match &dual {
                            Some(w) => {
                                let pairs: Vec<String> = w
                                    .inverse
                                    .iter()
                                    .map(|(&q, &p)| format!("{}→{}", pds.label(q), pds.label(p)))
                                    .collect();
                                writeln!(out, "δ_* endomorphism: α′ = {{{}}}", pairs.join(", "))?;
                            }
                            None => writeln!(out, "δ_* endomorphism: no")?,
                        }
                    }
                }
            }
            Ok(EXIT_OK)
        }
        Command::Spectrum {
            input,
            depth,
            format,
        } => {
            let input = load_input(&input)?;
            let (pds, _) = system_of(&input)?;
            let ladder = delta_ladder(&pds);
            let spectrum = full_spectrum(&pds, &ladder);
            match format {
                OutputFormat::Json => emit_json(out, &format::spectrum_to_json(&spectrum, &pds))?,
                OutputFormat::Dot => write!(out, "{}", format::to_dot(&pds, &ladder, &spectrum))?,
                OutputFormat::Text => {
                    write_spectrum(out, "predicted", &pds, &spectrum, depth)?;
                    if let Some(upper) = &spectrum.upper {
                        write_spectrum(out, "upper", &pds, upper, depth)?;
                    }
                }
            }
            Ok(EXIT_OK)
        }
        Command::Oracle { model, format } => {
            let model = load_model(&model)?;
            let oracle = character_sequences(&model)?;
            match format {
                OutputFormat::Json => emit_json(out, &format::oracle_to_json(&oracle, &model))?,
                _ => {
                    let pds = induced_system(&model)?;
                    writeln!(
                        out,
                        "{} atoms, generation depth {}",
                        oracle.len(),
                        oracle.atoms.generation_depth
                    )?;
                    for (atom, seq) in oracle.iter() {
                        writeln!(out, "  {atom:?}  {}", seq.format(&pds))?;
                    }
                }
            }
            Ok(EXIT_OK)
        }
        Command::Verify {
            model,
            level,
            format,
        } => {
            let model = load_model(&model)?;
            let reports = verify_level(&model, level.into())?;
            match format {
                OutputFormat::Json => emit_json(out, &reports)?,
                _ => {
                    for r in &reports {
                        writeln!(out, "{r}")?;
                    }
                }
            }
            Ok(if reports.iter().any(|r| r.failed()) {
                EXIT_FAILED
            } else {
                EXIT_OK
            })
        }
        Command::Fuzz {
            count,
            size_max,
            seed,
            partition,
            per_model,
            format,
        } => {
            let config = FuzzConfig {
                count,
                max_size: size_max,
                seed,
                partition: match partition {
                    PartitionArg::Singletons => PartitionStrategy::Singletons,
                    PartitionArg::RandomCompatible => PartitionStrategy::RandomCompatible,
                },
                granularity: if per_model {
                    Granularity::PerModel
                } else {
                    Granularity::Summary
                },
            };
            let report = fuzz(&config)?;
            match format {
                OutputFormat::Json => emit_json(out, &report)?,
                _ => {
                    writeln!(
                        out,
                        "seed {} | {} models, size ≤ {} | {} via extension | {} singleton fallbacks",
                        config.seed,
                        report.models,
                        config.max_size,
                        report.extension_models,
                        report.singleton_fallbacks
                    )?;
                    for (theorem, t) in &report.tallies {
                        writeln!(
                            out,
                            "{:<20} pass {:>5}  fail {:>5}  n/a {:>5}",
                            theorem.to_string(),
                            t.pass,
                            t.fail,
                            t.not_applicable
                        )?;
                    }
                    for (theorem, f) in &report.failures {
                        writeln!(out, "least failing model for {theorem}: {}", f.model)?;
                        writeln!(out, "  {}", f.report)?;
                    }
                    writeln!(
                        out,
                        "both inclusions strict in {} models{}",
                        report.both_inclusions_strict,
                        report
                            .both_strict_example
                            .as_ref()
                            .map(|m| format!(", e.g. {m}"))
                            .unwrap_or_default()
                    )?;
                    if let Some(lines) = &report.per_model {
                        for line in lines {
                            let verdicts: Vec<String> = line
                                .verdicts
                                .iter()
                                .map(|(t, v)| format!("{t}={v}"))
                                .collect();
                            writeln!(
                                out,
                                "#{:<4} {}  {}",
                                line.index,
                                line.model,
                                verdicts.join(" ")
                            )?;
                        }
                    }
                }
            }
            Ok(if report.all_passed() {
                EXIT_OK
            } else {
                EXIT_FAILED
            })
        }
        Command::ExportDot { input } => {
            let input = load_input(&input)?;
            let (pds, _) = system_of(&input)?;
            let ladder = delta_ladder(&pds);
            write!(
                out,
                "{}",
                format::to_dot(&pds, &ladder, &full_spectrum(&pds, &ladder))
            )?;
            Ok(EXIT_OK)
        }
    }
}

fn write_system(out: &mut dyn Write, pds: &AbstractPds, ladder: &DeltaLadder) -> Result<()> {
    writeln!(out, "M = {}", pds.format_set(&pds.all_points()))?;
    writeln!(out, "Δ = {}", pds.format_set(&pds.domain()))?;
    let alpha: Vec<String> = pds
        .domain()
        .iter()
        .map(|&p| {
            format!(
                "{}→{}",
                pds.label(p),
                pds.label(pds.alpha(p).expect("in domain"))
            )
        })
        .collect();
    writeln!(out, "α = {{{}}}", alpha.join(", "))?;
    for (n, set) in ladder.forward().iter().enumerate().skip(1) {
        writeln!(out, "Δ_{n} = {}", pds.format_set(set))?;
    }
    writeln!(out, "Δ_n constant from n = {}", ladder.stab_forward())?;
    for (i, set) in ladder.backward().iter().enumerate() {
        writeln!(out, "Δ_-{} = {}", i + 1, pds.format_set(set))?;
    }
    writeln!(out, "Δ_-n constant from n = {}", ladder.stab_backward())?;
    writeln!(out, "Δ_-∞ = {}", pds.format_set(ladder.core()))?;
    Ok(())
}

fn write_spectrum(
    out: &mut dyn Write,
    name: &str,
    pds: &AbstractPds,
    spectrum: &SpectrumDescription,
    depth: Option<usize>,
) -> Result<()> {
    writeln!(out, "{name}:")?;
    let last = depth
        .unwrap_or(0)
        .max(spectrum.hat_tail.from.saturating_sub(1));
    for n in 0..=last {
        let family = spectrum.family(pds, n);
        let chains: Vec<String> = family.iter().map(|c| c.format(pds)).collect();
        writeln!(out, "  N = {n}: {{{}}}", chains.join(", "))?;
    }
    writeln!(
        out,
        "  N ≥ {}: chains ending at {}",
        spectrum.hat_tail.from,
        pds.format_set(&spectrum.hat_tail.roots)
    )?;
    let inf: Vec<String> = spectrum.m_infinity.iter().map(|c| c.format(pds)).collect();
    writeln!(out, "  M_∞: {{{}}}", inf.join(", "))?;
    Ok(())
}
