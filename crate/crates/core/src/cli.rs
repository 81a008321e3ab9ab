//! The `hvw` command line.
//!
//! Exit status: 0 when a property holds, a construction succeeds or a model
//! is admissible; 1 when a property fails or a no-go argument is confirmed;
//! 2 on usage or input errors.

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::classify::{check_guard, full_report};
use crate::constructions::ConstructionMethod;
use crate::error::{Error, Result};
use crate::model::io::{read_model, serialize_model, write_model};
use crate::model::random::{generate_random_model, parse_shape};
use crate::model::{equivalent_empirical, equivalent_hvm, Model, PropertyVerdict};
use crate::nogo::{
    bell_certificate, ks_parity_certificate, ks_search, ks_table, local_polytope_feasibility,
    verify_bell, verify_epr, verify_ks, Canonical, ParityVerdict, DEFAULT_GUARD,
};
use crate::properties::{check, PropertyId};

#[derive(Debug, Parser)]
#[command(
    name = "hvw",
    version,
    about = "Exact checks on finite hidden-variable models"
)]
pub struct Cli {
    /// Output format for reports.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Seed for `random`.
    #[arg(long, global = true)]
    pub seed: Option<u64>,

    /// Largest enumeration or λ set to build (strategies, |Ψ| for E1, L for E2).
    #[arg(long, global = true, env = "HVW_GUARD")]
    pub guard: Option<u64>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check one property of a model.
    Check {
        model: PathBuf,
        #[arg(long, value_parser = parse_property)]
        property: PropertyId,
    },
    /// Build an equivalent hidden-variable model.
    Construct {
        model: PathBuf,
        #[arg(long, value_parser = parse_method)]
        method: ConstructionMethod,
        /// Write the model here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decide whether two models are equivalent.
    Equiv { first: PathBuf, second: PathBuf },
    /// Run a no-go verifier on a canonical model.
    Nogo {
        #[arg(value_parser = parse_canonical)]
        target: Canonical,
        #[arg(long, value_enum, default_value_t = NogoMethod::Default)]
        method: NogoMethod,
    },
    /// Classify the 21 property regions.
    Classify {
        /// Re-check every achievable region's constructions on this model.
        #[arg(long)]
        sample: Option<PathBuf>,
    },
    /// Write a canonical model file.
    Canon {
        #[arg(value_parser = parse_canonical)]
        target: Canonical,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Generate a random model (seeded by --seed, default 0).
    Random {
        /// Per-site `MxO` (measurements x outcomes), comma separated.
        #[arg(long)]
        shape: String,
        /// Size of Λ; omit for an empirical model.
        #[arg(long)]
        lambda: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum NogoMethod {
    Default,
    Polytope,
    Certificate,
    Coloring,
    Parity,
}

fn parse_property(s: &str) -> std::result::Result<PropertyId, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_method(s: &str) -> std::result::Result<ConstructionMethod, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_canonical(s: &str) -> std::result::Result<Canonical, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub property: PropertyId,
    pub verdict: PropertyVerdict,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructReport {
    pub method: ConstructionMethod,
    pub lambda_size: usize,
    pub equivalence: PropertyVerdict,
    pub out: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquivReport {
    pub verdict: PropertyVerdict,
}

impl Cli {
    fn guard(&self) -> u64 {
        self.guard.unwrap_or(DEFAULT_GUARD)
    }
}

/// Runs a parsed command, writing reports to `out`; returns the exit status.
pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<i32> {
    match &cli.command {
        Command::Check { model, property } => {
            let m = read_model(model)?;
            let verdict = check(*property, &m)?;
            let code = i32::from(!verdict.holds);
            let report = CheckReport {
                property: *property,
                verdict,
            };
            emit(cli, out, &report, || {
                format!("{}: {}", report.property, report.verdict)
            })?;
            Ok(code)
        }
        Command::Construct {
            model,
            method,
            out: path,
        } => {
            let m = read_model(model)?;
            let e = m.to_empirical();
            check_guard(&e, *method, cli.guard())?;
            let h = method.construct(&e);
            let equivalence = match &m {
                Model::Empirical(e) => equivalent_empirical(e, &h)?,
                Model::Hidden(orig) => equivalent_hvm(orig, &h)?,
            };
            if !equivalence.holds {
                return Err(Error::NotApplicable(format!(
                    "internal error: construction is not equivalent: {equivalence}"
                )));
            }
            match path {
                None => out.write_all(serialize_model(&Model::Hidden(h)).as_bytes())?,
                Some(p) => {
                    let report = ConstructReport {
                        method: *method,
                        lambda_size: h.lambdas().len(),
                        equivalence,
                        out: p.display().to_string(),
                    };
                    write_model(p, &Model::Hidden(h))?;
                    emit(cli, out, &report, || {
                        format!(
                            "wrote {} ({} construction, |Λ| = {}); equivalence: {}",
                            report.out, report.method, report.lambda_size, report.equivalence
                        )
                    })?;
                }
            }
            Ok(0)
        }
        Command::Equiv { first, second } => {
            let a = read_model(first)?;
            let b = read_model(second)?;
            let verdict = match (&a, &b) {
                (Model::Empirical(e), Model::Hidden(h))
                | (Model::Hidden(h), Model::Empirical(e)) => equivalent_empirical(e, h)?,
                (Model::Hidden(h1), Model::Hidden(h2)) => equivalent_hvm(h1, h2)?,
                (Model::Empirical(e1), Model::Empirical(e2)) => {
                    let as_hidden = crate::constructions::construct_sv(e2);
                    equivalent_empirical(e1, &as_hidden)?
                }
            };
            let code = i32::from(!verdict.holds);
            let report = EquivReport { verdict };
            emit(cli, out, &report, || {
                format!("equivalence: {}", report.verdict)
            })?;
            Ok(code)
        }
        Command::Nogo { target, method } => nogo(cli, out, *target, *method),
        Command::Classify { sample } => {
            let sample = sample
                .as_ref()
                .map(|p| read_model(p).map(|m| m.to_empirical()))
                .transpose()?;
            let report = full_report(sample.as_ref(), cli.guard())?;
            let ok = report
                .regions
                .iter()
                .all(|r| r.live.iter().all(|l| l.passed) && r.nogo_confirmed != Some(false));
            emit(cli, out, &report, || report.to_string())?;
            Ok(i32::from(!ok))
        }
        Command::Canon { target, out: path } => {
            let model = Model::Empirical(target.model());
            write_or_print(out, path.as_ref(), &model)?;
            Ok(0)
        }
        Command::Random {
            shape,
            lambda,
            out: path,
        } => {
            let sig = parse_shape(shape)?;
            let model = generate_random_model(cli.seed.unwrap_or(0), &sig, *lambda)?;
            write_or_print(out, path.as_ref(), &model)?;
            Ok(0)
        }
    }
}

fn nogo(cli: &Cli, out: &mut dyn Write, target: Canonical, method: NogoMethod) -> Result<i32> {
    let code = |confirmed: bool| Ok(i32::from(confirmed));
    match (target, method) {
        (Canonical::Epr, NogoMethod::Default) => {
            let r = verify_epr();
            emit(cli, out, &r, || r.to_string())?;
            code(r.confirmed)
        }
        (Canonical::Bell, NogoMethod::Default) => {
            let r = verify_bell(cli.guard())?;
            emit(cli, out, &r, || r.to_string())?;
            code(r.confirmed)
        }
        (Canonical::Bell, NogoMethod::Certificate) => {
            let r = bell_certificate();
            emit(cli, out, &r, || r.to_string())?;
            code(r.impossible)
        }
        (_, NogoMethod::Polytope) => {
            let r = local_polytope_feasibility(&target.model(), cli.guard())?;
            emit(cli, out, &r, || r.to_string())?;
            code(!r.feasible && r.certificate_verified)
        }
        (Canonical::Ks, NogoMethod::Default) => {
            let r = verify_ks();
            emit(cli, out, &r, || r.to_string())?;
            code(r.confirmed)
        }
        (Canonical::Ks, NogoMethod::Coloring) => {
            let r = ks_search(&ks_table())?;
            emit(cli, out, &r, || r.to_string())?;
            code(r.colorings.is_empty())
        }
        (Canonical::Ks, NogoMethod::Parity) => {
            let r = ks_parity_certificate(&ks_table());
            emit(cli, out, &r, || r.to_string())?;
            code(r.verdict == ParityVerdict::Impossible)
        }
        (t, m) => Err(Error::Usage(format!(
            "method `{}` does not apply to `{t}`",
            m.to_possible_value().expect("named").get_name()
        ))),
    }
}

fn emit<T: Serialize>(
    cli: &Cli,
    out: &mut dyn Write,
    report: &T,
    text: impl FnOnce() -> String,
) -> Result<()> {
    match cli.format {
        Format::Text => writeln!(out, "{}", text())?,
        Format::Json => writeln!(
            out,
            "{}",
            serde_json::to_string_pretty(report).expect("reports serialize")
        )?,
    }
    Ok(())
}

fn write_or_print(out: &mut dyn Write, path: Option<&PathBuf>, model: &Model) -> Result<()> {
    match path {
        Some(p) => write_model(p, model),
        None => Ok(out.write_all(serialize_model(model).as_bytes())?),
    }
}

/// Parses arguments, runs, and maps errors to exit status 2.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    match run(&cli, &mut lock) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}
