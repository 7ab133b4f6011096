//! Subcommands of the `xsep` binary.
//!
//! Exit codes: 0 ok, 2 domain rejection, 3 parse error, 4 internal
//! inconsistency between the closed-form criterion and the PPT oracle.

use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use xsep::gallery;
use xsep::hull::{decompose, DecomposeOptions, HullQuestion, Verdict};
use xsep::separability::PPT_TOL;
use xsep::witness::WitnessScope;
use xsep::xstate::XDocument;
use xsep::{is_ppt, is_separable, membership_vector, Bipartition, ClassLabel, MembershipVector, XHermitian, XState, XWitness};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Default positivity tolerance for input states.
pub const INPUT_TOL: f64 = 1e-12;

#[derive(Debug, Parser)]
#[command(name = "xsep", version, about = "Partial separability of three-qubit X-states")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args, Clone)]
pub struct Common {
    /// Positivity tolerance used when reading the input state.
    #[arg(long, default_value_t = INPUT_TOL)]
    pub tolerance: f64,
    /// Write the JSON document here instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args, Clone)]
pub struct Search {
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Augmenting-path budget of the decomposition search.
    #[arg(long, default_value_t = 10_000)]
    pub budget: usize,
}

impl Search {
    fn options(&self) -> DecomposeOptions {
        DecomposeOptions {
            seed: self.seed,
            max_iterations: self.budget,
            ..DecomposeOptions::default()
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check that a file holds a positive semidefinite X-state.
    Validate {
        path: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Per-bipartition separability, with the PPT oracle as a cross-check.
    Check {
        path: PathBuf,
        /// Only this bipartition (A-BC, B-CA or C-AB); all three by default.
        #[arg(long)]
        bipartition: Option<Bipartition>,
        #[command(flatten)]
        common: Common,
    },
    /// Membership vector, class label and certificates.
    Classify {
        path: PathBuf,
        #[command(flatten)]
        search: Search,
        #[command(flatten)]
        common: Common,
    },
    /// Search for a decomposition into separable X-shaped components.
    Decompose {
        path: PathBuf,
        /// Allowed bipartitions; repeat the flag. All three by default.
        #[arg(long)]
        bipartition: Vec<Bipartition>,
        #[command(flatten)]
        search: Search,
        #[command(flatten)]
        common: Common,
    },
    /// Pair a witness file with a state file and report block positivity.
    Witness {
        witness: PathBuf,
        state: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Write the constructed example states.
    Gallery {
        /// One entry by name; all entries when absent.
        #[arg(long)]
        name: Option<String>,
        /// File for one entry, directory for all of them.
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn domain(message: impl Into<String>) -> Self {
        Self { code: 2, message: message.into() }
    }

    fn parse(message: impl Into<String>) -> Self {
        Self { code: 3, message: message.into() }
    }

    fn internal(message: impl Into<String>) -> Self {
        Self { code: 4, message: message.into() }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::parse(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::parse(format!("{}: {e}", path.display())))
}

pub fn read_state(path: &Path, tol: f64) -> Result<XState, Failure> {
    let x: XHermitian = read_json(path)?;
    XState::new(x, tol).map_err(|e| Failure::domain(format!("{}: {e}", path.display())))
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("documents serialize");
    s.push('\n');
    s
}

fn to_compact_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("documents serialize");
    s.push('\n');
    s
}

fn emit(text: &str, output: Option<&Path>, out: &mut dyn Write) -> Result<(), Failure> {
    match output {
        Some(path) => fs::write(path, text).map_err(|e| Failure::domain(format!("{}: {e}", path.display()))),
        None => out
            .write_all(text.as_bytes())
            .map_err(|e| Failure::domain(format!("stdout: {e}"))),
    }
}

#[derive(Debug, Serialize)]
pub struct CheckLine {
    pub bipartition: Bipartition,
    pub separable: bool,
    pub ppt: bool,
}

#[derive(Debug, Serialize)]
pub struct Timings {
    pub total_ms: f64,
}

/// Full `classify` output. Everything except `timings` is a function of the
/// input and options.
#[derive(Debug, Serialize)]
pub struct ReportDocument {
    pub tool: &'static str,
    pub version: &'static str,
    pub input: XDocument,
    pub seed: u64,
    pub budget: usize,
    pub separable: BTreeMap<&'static str, bool>,
    pub ppt: BTreeMap<&'static str, bool>,
    pub membership: MembershipVector,
    pub label: ClassLabel,
    pub label_detail: String,
    pub certificates: BTreeMap<&'static str, Verdict>,
    pub timings: Timings,
}

fn checks(x: &XState, parts: &[Bipartition]) -> Vec<CheckLine> {
    parts
        .iter()
        .map(|&p| CheckLine {
            bipartition: p,
            separable: is_separable(x, p),
            ppt: is_ppt(x, p, PPT_TOL),
        })
        .collect()
}

pub fn report(x: &XState, search: &Search) -> Result<ReportDocument, Failure> {
    let start = Instant::now();
    let lines = checks(x, &Bipartition::ALL);
    if let Some(bad) = lines.iter().find(|l| l.separable != l.ppt) {
        return Err(Failure::internal(format!(
            "criterion and PPT oracle disagree on {}",
            bad.bipartition
        )));
    }
    let m = membership_vector(x, &search.options()).map_err(|e| Failure::domain(e.to_string()))?;
    let label = m.label();
    let certificates = HullQuestion::ALL
        .into_iter()
        .map(|q| (q.as_str(), m.verdict(q).clone()))
        .collect();
    Ok(ReportDocument {
        tool: "xsep",
        version: VERSION,
        input: XDocument::from(*x.as_hermitian()),
        seed: search.seed,
        budget: search.budget,
        separable: lines.iter().map(|l| (l.bipartition.as_str(), l.separable)).collect(),
        ppt: lines.iter().map(|l| (l.bipartition.as_str(), l.ppt)).collect(),
        membership: m.vector,
        label,
        label_detail: label.to_string(),
        certificates,
        timings: Timings {
            total_ms: start.elapsed().as_secs_f64() * 1e3,
        },
    })
}

#[derive(Debug, Serialize)]
struct WitnessReport {
    pairing: f64,
    block_positive: BTreeMap<String, bool>,
    detects: Vec<String>,
}

/// Runs one subcommand, writing its primary output to `out`.
pub fn run(cli: Cli, out: &mut dyn Write) -> Result<(), Failure> {
    match cli.command {
        Command::Validate { path, common } => {
            let x = read_state(&path, common.tolerance)?;
            emit(&format!("valid: trace {}\n", x.trace()), common.output.as_deref(), out)
        }
        Command::Check { path, bipartition, common } => {
            let x = read_state(&path, common.tolerance)?;
            let parts = bipartition.map_or(Bipartition::ALL.to_vec(), |p| vec![p]);
            let lines = checks(&x, &parts);
            let text = match &common.output {
                Some(_) => to_json(&lines),
                None => lines
                    .iter()
                    .map(|l| format!("{}: separable: {}, ppt: {}\n", l.bipartition, l.separable, l.ppt))
                    .collect(),
            };
            emit(&text, common.output.as_deref(), out)?;
            match lines.iter().find(|l| l.separable != l.ppt) {
                Some(l) => Err(Failure::internal(format!(
                    "criterion and PPT oracle disagree on {}",
                    l.bipartition
                ))),
                None => Ok(()),
            }
        }
        Command::Classify { path, search, common } => {
            let x = read_state(&path, common.tolerance)?;
            let doc = report(&x, &search)?;
            emit(&to_json(&doc), common.output.as_deref(), out)
        }
        Command::Decompose {
            path,
            bipartition,
            search,
            common,
        } => {
            let x = read_state(&path, common.tolerance)?;
            let parts = if bipartition.is_empty() {
                Bipartition::ALL.to_vec()
            } else {
                bipartition
            };
            let v = decompose(&x, &parts, &search.options()).map_err(|e| Failure::domain(e.to_string()))?;
            emit(&to_json(&v), common.output.as_deref(), out)
        }
        Command::Witness { witness, state, common } => {
            let w: XWitness = read_json(&witness)?;
            let x = read_state(&state, common.tolerance)?;
            let pairing = w.pairing(&x);
            let block_positive = WitnessScope::ALL
                .iter()
                .map(|&s| (s.to_string(), w.is_valid_for(s)))
                .collect();
            let detects = WitnessScope::ALL
                .iter()
                .filter(|&&s| w.is_valid_for(s) && pairing < 0.0)
                .map(|s| format!("not in {s}"))
                .collect();
            let doc = WitnessReport {
                pairing,
                block_positive,
                detects,
            };
            emit(&to_json(&doc), common.output.as_deref(), out)
        }
        Command::Gallery { name, output } => match name {
            Some(name) => {
                let entry = gallery::by_name(&name).ok_or_else(|| {
                    Failure::domain(format!("unknown gallery entry {name:?}; known: {}", gallery::names().join(", ")))
                })?;
                emit(&to_compact_json(&entry.state), output.as_deref(), out)
            }
            None => match output {
                Some(dir) => {
                    fs::create_dir_all(&dir).map_err(|e| Failure::domain(format!("{}: {e}", dir.display())))?;
                    for e in gallery::gallery() {
                        emit(&to_compact_json(&e.state), Some(&dir.join(format!("{}.json", e.name))), out)?;
                    }
                    Ok(())
                }
                None => {
                    let all: BTreeMap<_, _> = gallery::gallery().into_iter().map(|e| (e.name, e.state)).collect();
                    emit(&to_json(&all), None, out)
                }
            },
        },
    }
}
