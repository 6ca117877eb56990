//! `linkhom`: Kirk invariants, realization and unlinking certificates from
//! JSON artifacts.
//!
//! Exit codes: 0 ok, 1 verification failure, 2 parse error, 3 input
//! invariant violation, 4 invalid Kirk pair, 5 z-decomposition domain error.

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand};
use serde_json::Value;

use linkhom::artifact::{
    self, Artifact, ExpansionReport, InvariantsReport, VerdictReport, WitnessReport,
};
use linkhom::kirk::{jk_kirk, make_kirk, JkInput};
use linkhom::laurent::ZPoly;
use linkhom::realize::{realization_checks, realize};
use linkhom::report::{first_failure, render, Check};
use linkhom::unlink::{
    classify, construct_isometry, verify_witness_for, UnlinkError, DEFAULT_SEED,
};
use linkhom::{LaurentPoly, Presentation};

#[derive(Parser)]
#[command(
    name = "linkhom",
    version,
    about = "Exact link-homotopy algebra for 2-spheres in the 4-sphere"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Kirk invariants and per-pair multiplicities of a presentation.
    Invariants {
        input: PathBuf,
        #[arg(short, long, default_value = "-")]
        output: PathBuf,
    },
    /// Decide link-homotopy triviality, optionally writing an unlinking certificate.
    Classify {
        input: PathBuf,
        #[arg(short, long, default_value = "-")]
        output: PathBuf,
        #[arg(long, value_name = "PATH")]
        certificate: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Build a presentation realizing a Kirk pair.
    Realize {
        input: PathBuf,
        #[arg(short, long, default_value = "-")]
        output: PathBuf,
        #[arg(long, value_name = "PATH")]
        transcript: Option<PathBuf>,
    },
    /// Re-run every invariant check of an artifact file.
    Verify { input: PathBuf },
    /// Construct the metabolic isometry witness for a presentation.
    Isometry {
        input: PathBuf,
        #[arg(short, long, default_value = "-")]
        output: PathBuf,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, value_name = "PATH")]
        transcript: Option<PathBuf>,
    },
    /// I-adic coefficients and z-decomposition of a Laurent polynomial.
    Expand {
        input: PathBuf,
        #[arg(long)]
        depth: usize,
        /// Decompose as z^k·p(z); failure exits with code 5.
        #[arg(long)]
        k: Option<u32>,
        #[arg(short, long, default_value = "-")]
        output: PathBuf,
    },
    /// Kirk invariants of the link map built from a classical link's β-invariants.
    Jk {
        input: PathBuf,
        #[arg(short, long, default_value = "-")]
        output: PathBuf,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Failure {
            code,
            message: message.into(),
        }
    }
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::new(2, format!("{e:#}"))
    }
}

const VERIFY_FAILED: u8 = 1;
const PARSE: u8 = 2;
const INPUT_INVARIANT: u8 = 3;
const INVALID_PAIR: u8 = 4;
const NOT_IN_CONE: u8 = 5;

fn read_input(path: &Path) -> anyhow::Result<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .context("reading stdin")?;
        Ok(s)
    } else {
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
    }
}

fn write_output(path: &Path, text: &str) -> Result<(), Failure> {
    let res = if path.as_os_str() == "-" {
        io::stdout().lock().write_all(text.as_bytes())
    } else {
        fs::write(path, text)
    };
    res.with_context(|| format!("writing {}", path.display()))
        .map_err(|e| Failure::new(1, format!("{e:#}")))
}

/// Reads a file of the given type; content that parses as JSON with the
/// right header but violates the type's invariants is exit code 3.
fn load(path: &Path, expected: &str) -> Result<Artifact, Failure> {
    let text = read_input(path)?;
    let (_, ty) = artifact::read_header(&text).map_err(|e| Failure::new(PARSE, e.to_string()))?;
    if ty != expected {
        return Err(Failure::new(
            PARSE,
            format!("expected a {expected} file, found {ty}"),
        ));
    }
    artifact::read(&text).map_err(|e| Failure::new(INPUT_INVARIANT, e.to_string()))
}

fn zpoly_field(value: &Value, key: &str) -> Result<ZPoly, Failure> {
    let v = value
        .get(key)
        .ok_or_else(|| Failure::new(PARSE, format!("missing field {key:?}")))?;
    serde_json::from_value(v.clone())
        .map_err(|e| Failure::new(PARSE, format!("field {key:?}: {e}")))
}

fn presentation(path: &Path) -> Result<Presentation, Failure> {
    match load(path, "presentation")? {
        Artifact::Presentation(p) => Ok(p),
        _ => unreachable!("type checked by load"),
    }
}

fn write_checks(path: Option<&Path>, checks: &[Check]) -> Result<(), Failure> {
    match path {
        Some(p) => write_output(p, &render(checks)),
        None => {
            eprint!("{}", render(checks));
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Invariants { input, output } => {
            let p = presentation(&input)?;
            let report = InvariantsReport::compute(&p);
            write_output(&output, &artifact::write(&Artifact::Invariants(report)))
        }
        Command::Classify {
            input,
            output,
            certificate,
            seed,
        } => {
            let p = presentation(&input)?;
            let mut verdict = classify(&p, seed);
            let cert = verdict.certificate.take();
            if let Some(path) = &certificate {
                match cert {
                    Some(c) => write_output(path, &artifact::write(&Artifact::UnlinkCertificate(c)))?,
                    None => eprintln!(
                        "no certificate: needs trivial Kirk invariants and λ(f₂, f₂) = 0 with Whitney pairings in zΛ"
                    ),
                }
            }
            let report = VerdictReport {
                presentation: p,
                verdict,
            };
            write_output(&output, &artifact::write(&Artifact::Verdict(report)))
        }
        Command::Realize {
            input,
            output,
            transcript,
        } => {
            let text = read_input(&input)?;
            let (value, ty) =
                artifact::read_header(&text).map_err(|e| Failure::new(PARSE, e.to_string()))?;
            if ty != "kirk_pair" {
                return Err(Failure::new(
                    PARSE,
                    format!("expected a kirk_pair file, found {ty}"),
                ));
            }
            let s1 = zpoly_field(&value, "sigma1")?;
            let s2 = zpoly_field(&value, "sigma2")?;
            let target =
                make_kirk(s1, s2).map_err(|e| Failure::new(INVALID_PAIR, e.to_string()))?;
            let p = realize(&target).map_err(|e| Failure::new(VERIFY_FAILED, e.to_string()))?;
            write_checks(transcript.as_deref(), &realization_checks(&target, &p))?;
            write_output(&output, &artifact::write(&Artifact::Presentation(p)))
        }
        Command::Verify { input } => {
            let text = read_input(&input)?;
            let checks =
                artifact::verify_text(&text).map_err(|e| Failure::new(PARSE, e.to_string()))?;
            write_output(Path::new("-"), &render(&checks))?;
            match first_failure(&checks) {
                None => Ok(()),
                Some(c) => Err(Failure::new(
                    VERIFY_FAILED,
                    format!("verification failed: {}", c.claim),
                )),
            }
        }
        Command::Isometry {
            input,
            output,
            seed,
            transcript,
        } => {
            let p = presentation(&input)?;
            let witness = construct_isometry(&p, seed).map_err(|e| match e {
                UnlinkError::ConditionsNotMet(_) => Failure::new(INPUT_INVARIANT, e.to_string()),
                _ => Failure::new(VERIFY_FAILED, e.to_string()),
            })?;
            write_checks(transcript.as_deref(), &verify_witness_for(&p, &witness))?;
            let report = WitnessReport {
                presentation: p,
                witness,
            };
            write_output(
                &output,
                &artifact::write(&Artifact::IsometryWitness(report)),
            )
        }
        Command::Expand {
            input,
            depth,
            k,
            output,
        } => {
            let poly: LaurentPoly = match load(&input, "laurent")? {
                Artifact::Laurent(p) => p,
                _ => unreachable!("type checked by load"),
            };
            let report = ExpansionReport::compute(&poly, depth, k)
                .map_err(|e| Failure::new(NOT_IN_CONE, e.to_string()))?;
            write_output(&output, &artifact::write(&Artifact::Expansion(report)))
        }
        Command::Jk { input, output } => {
            let input: JkInput = match load(&input, "jk_input")? {
                Artifact::JkInput(j) => j,
                _ => unreachable!("type checked by load"),
            };
            let k = jk_kirk(&input).map_err(|e| Failure::new(INVALID_PAIR, e.to_string()))?;
            write_output(&output, &artifact::write(&Artifact::KirkPair(k)))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
