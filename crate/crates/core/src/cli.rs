//! The `lincomp` command line: one subcommand per module, each producing a
//! deterministic JSON report.
//!
//! Exit codes: 0 success or true, 1 input error, 2 unsolvable or false,
//! 3 solvable without a constructor, 4 cut violation.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::code::{self, LinearCode, TargetMatrix};
use crate::counterex;
use crate::cuts;
use crate::equiv;
use crate::ff::Felem;
use crate::mvpoly::{self, GroebnerOptions, Indeterminate, Verdict};
use crate::netmodel::Network;
use crate::synth::{self, Outcome, SynthError, SynthOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_FALSE: i32 = 2;
pub const EXIT_NO_CONSTRUCTOR: i32 = 3;
pub const EXIT_CUT: i32 = 4;

/// Exhaustive simulation is attempted when `q^{n s}` is at most this.
const EXHAUSTIVE_LIMIT: u64 = 4096;

#[derive(Debug, Parser)]
#[command(name = "lincomp", version, about = "Linear network codes for computing linear functions")]
pub struct Cli {
    /// Print the full JSON report instead of a summary.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse and validate a network file.
    Validate {
        #[arg(long)]
        network: PathBuf,
    },
    /// Exact min-cut ratio with a minimizing cut.
    Mincut {
        #[arg(long)]
        network: PathBuf,
        #[arg(long)]
        target: PathBuf,
    },
    /// Decide linear solvability from the reduced Gröbner basis.
    GroebnerTest {
        #[arg(long)]
        network: PathBuf,
        #[arg(long)]
        target: PathBuf,
        /// Fix an indeterminate before the computation, e.g. `A,1,0=1`.
        #[arg(long = "pin", value_name = "KIND,I,J=VALUE")]
        pins: Vec<String>,
        /// Include the basis polynomials in the report.
        #[arg(long)]
        dump_basis: bool,
    },
    /// Classify a target up to equivalence.
    Classify {
        #[arg(long)]
        target: PathBuf,
    },
    /// Construct a code, or report why none is constructed.
    Synthesize {
        #[arg(long)]
        network: PathBuf,
        #[arg(long)]
        target: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// First extension degree for the randomized stage.
        #[arg(long)]
        start_degree: Option<usize>,
        /// Write the code file here instead of embedding it in the report.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check that a code computes the target.
    Verify {
        #[arg(long)]
        network: PathBuf,
        #[arg(long)]
        target: PathBuf,
        #[arg(long)]
        code: PathBuf,
    },
    /// Build a min-cut-1 network on which the target is not linearly solvable.
    Counterexample {
        /// Target to build for; omit to emit the three-source network N1.
        #[arg(long)]
        target: Option<PathBuf>,
        /// Field order for N1.
        #[arg(long, default_value_t = 2)]
        q: u32,
        #[arg(long)]
        out_dir: PathBuf,
    },
    /// Run a code on one message per source.
    Simulate {
        #[arg(long)]
        network: PathBuf,
        #[arg(long)]
        code: PathBuf,
        /// JSON list with one message per source; an element is a coefficient
        /// list (constant term first) or a plain integer.
        #[arg(long)]
        messages: String,
    },
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub inputs: BTreeMap<String, String>,
    pub result: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub tool_version: String,
}

/// An input problem; reported with exit code 1.
#[derive(Debug)]
struct InputError {
    kind: String,
    message: String,
}

impl InputError {
    /// Splits `Kind: message` as produced by the library's error types.
    fn from_display(e: impl std::fmt::Display) -> Self {
        let text = e.to_string();
        match text.split_once(": ") {
            Some((kind, msg)) if !kind.contains(' ') => Self { kind: kind.into(), message: msg.into() },
            None if !text.contains(' ') => Self { kind: text.clone(), message: text },
            _ => Self { kind: "Error".into(), message: text },
        }
    }

    fn new(kind: &str, message: impl Into<String>) -> Self {
        Self { kind: kind.into(), message: message.into() }
    }
}

struct Ctx {
    inputs: BTreeMap<String, String>,
}

impl Ctx {
    fn read(&mut self, key: &str, path: &Path) -> Result<String, InputError> {
        let bytes = fs::read(path).map_err(|e| InputError::new("IoError", format!("{}: {e}", path.display())))?;
        let digest = Sha256::digest(&bytes);
        self.inputs.insert(key.into(), digest.iter().map(|b| format!("{b:02x}")).collect());
        String::from_utf8(bytes).map_err(|e| InputError::new("ParseError", e.to_string()))
    }

    fn network(&mut self, path: &Path) -> Result<Network, InputError> {
        Network::parse(&self.read("network", path)?).map_err(InputError::from_display)
    }

    fn target(&mut self, path: &Path) -> Result<TargetMatrix, InputError> {
        TargetMatrix::parse(&self.read("target", path)?).map_err(InputError::from_display)
    }

    fn code(&mut self, path: &Path) -> Result<LinearCode, InputError> {
        LinearCode::parse(&self.read("code", path)?).map_err(InputError::from_display)
    }
}

fn write(path: &Path, text: &str) -> Result<(), InputError> {
    fs::write(path, format!("{text}\n")).map_err(|e| InputError::new("IoError", format!("{}: {e}", path.display())))
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report values serialize")
}

fn parse_pin(text: &str) -> Result<(Indeterminate, u32), InputError> {
    let bad = || InputError::new("ParseError", format!("bad pin `{text}`, expected KIND,I,J=VALUE"));
    let (var, val) = text.split_once('=').ok_or_else(bad)?;
    Ok((Indeterminate::parse(var).ok_or_else(bad)?, val.trim().parse().map_err(|_| bad())?))
}

fn parse_messages(text: &str, code: &LinearCode) -> Result<Vec<Felem>, InputError> {
    let bad = |m: String| InputError::new("ParseError", m);
    let items: Vec<Value> = serde_json::from_str(text).map_err(|e| bad(e.to_string()))?;
    let fld = code.field();
    items
        .into_iter()
        .map(|item| {
            let coeffs: Vec<u32> = match item {
                Value::Number(_) => vec![serde_json::from_value(item).map_err(|e| bad(e.to_string()))?],
                other => serde_json::from_value(other).map_err(|e| bad(e.to_string()))?,
            };
            fld.elem(coeffs).map_err(InputError::from_display)
        })
        .collect()
}

fn cut_result(report: &cuts::CutReport) -> Value {
    to_value(&report.to_json_value())
}

/// Runs one command. Returns the report and the exit code.
pub fn execute(command: &Command) -> (Report, i32) {
    let mut ctx = Ctx { inputs: BTreeMap::new() };
    let name = match command {
        Command::Validate { .. } => "validate",
        Command::Mincut { .. } => "mincut",
        Command::GroebnerTest { .. } => "groebner-test",
        Command::Classify { .. } => "classify",
        Command::Synthesize { .. } => "synthesize",
        Command::Verify { .. } => "verify",
        Command::Counterexample { .. } => "counterexample",
        Command::Simulate { .. } => "simulate",
    };
    let seed = match command {
        Command::Synthesize { seed, .. } => Some(*seed),
        _ => None,
    };
    let (result, code) = match dispatch(command, &mut ctx) {
        Ok(pair) => pair,
        Err(e) => (json!({"error": {"kind": e.kind, "message": e.message}}), EXIT_INPUT),
    };
    let report = Report {
        command: name.into(),
        inputs: ctx.inputs,
        result,
        seed,
        tool_version: env!("CARGO_PKG_VERSION").into(),
    };
    (report, code)
}

fn dispatch(command: &Command, ctx: &mut Ctx) -> Result<(Value, i32), InputError> {
    match command {
        Command::Validate { network } => {
            let net = ctx.network(network)?;
            Ok((
                json!({
                    "valid": true,
                    "q": net.q(),
                    "nodes": net.nodes().len(),
                    "sources": net.num_sources(),
                    "edges": net.edges().iter().map(|e| [net.node_name(e.tail), net.node_name(e.head)]).collect::<Vec<_>>(),
                }),
                EXIT_OK,
            ))
        }
        Command::Mincut { network, target } => {
            let net = ctx.network(network)?;
            let t = ctx.target(target)?;
            let report = cuts::mincut_ratio(&net, &t).map_err(InputError::from_display)?;
            let exit = if report.value >= 1.into() { EXIT_OK } else { EXIT_CUT };
            Ok((cut_result(&report), exit))
        }
        Command::GroebnerTest { network, target, pins, dump_basis } => {
            let net = ctx.network(network)?;
            let t = ctx.target(target)?;
            let pins = pins.iter().map(|p| parse_pin(p)).collect::<Result<Vec<_>, _>>()?;
            let report = mvpoly::solvable_with(&net, &t, &pins, GroebnerOptions::default())
                .map_err(InputError::from_display)?;
            let mut result = json!({
                "verdict": report.verdict.as_str(),
                "basis_size": report.basis.basis.len(),
                "variables": report.ideal.vars().len(),
                "generators": report.ideal.generators().len(),
                "reductions": report.basis.reductions,
            });
            if *dump_basis {
                let basis: Vec<String> = report.basis.basis.iter().map(|p| report.ideal.format(p)).collect();
                result["basis"] = to_value(&basis);
            }
            let exit = if report.verdict == Verdict::Unsolvable { EXIT_FALSE } else { EXIT_OK };
            Ok((result, exit))
        }
        Command::Classify { target } => {
            let t = ctx.target(target)?;
            let class = equiv::classify(&t).map_err(InputError::from_display)?;
            let mut result = to_value(&class.witness().to_json_value());
            result["class"] = json!(class.name());
            Ok((result, EXIT_OK))
        }
        Command::Synthesize { network, target, seed, start_degree, out } => {
            let net = ctx.network(network)?;
            let t = ctx.target(target)?;
            let opts = SynthOptions { seed: *seed, start_degree: *start_degree, ..SynthOptions::default() };
            match synth::synthesize(&net, &t, opts) {
                Ok(Outcome::Solved(r)) => {
                    let mut result = json!({
                        "outcome": "solved",
                        "method": r.method.as_str(),
                        "n": r.n,
                        "attempts": r.attempts,
                    });
                    match out {
                        Some(path) => {
                            write(path, &r.code.to_json())?;
                            result["code_file"] = json!(path.display().to_string());
                        }
                        None => result["code"] = to_value(&r.code.to_file()),
                    }
                    Ok((result, EXIT_OK))
                }
                Ok(Outcome::Unsolvable) => Ok((json!({"outcome": "unsolvable"}), EXIT_FALSE)),
                Ok(Outcome::SolvableNoConstructor) => {
                    Ok((json!({"outcome": "solvable-no-constructor"}), EXIT_NO_CONSTRUCTOR))
                }
                Err(SynthError::CutViolation(report)) => {
                    Ok((json!({"outcome": "cut-violation", "mincut": cut_result(&report)}), EXIT_CUT))
                }
                Err(e) => Err(InputError::from_display(e)),
            }
        }
        Command::Verify { network, target, code } => {
            let net = ctx.network(network)?;
            let t = ctx.target(target)?;
            let c = ctx.code(code)?;
            let ok = code::is_solution(&net, &c, &t).map_err(InputError::from_display)?;
            let exhaustive = code::exhaustive_check(&net, &c, &t, EXHAUSTIVE_LIMIT).map_err(InputError::from_display)?;
            let pass = ok && exhaustive != Some(false);
            Ok((
                json!({"is_solution": ok, "exhaustive": exhaustive}),
                if pass { EXIT_OK } else { EXIT_FALSE },
            ))
        }
        Command::Counterexample { target, q, out_dir } => {
            let bundle = match target {
                Some(path) => {
                    let t = ctx.target(path)?;
                    counterex::build_for_target(&t)
                }
                None => counterex::build_n1(*q),
            }
            .map_err(InputError::from_display)?;
            fs::create_dir_all(out_dir)
                .map_err(|e| InputError::new("IoError", format!("{}: {e}", out_dir.display())))?;
            let report = json!({
                "mincut": cut_result(&bundle.mincut),
                "verdict": Verdict::Unsolvable.as_str(),
                "construction": to_value(&bundle.construction),
            });
            write(&out_dir.join("network.json"), &bundle.network.to_json())?;
            write(&out_dir.join("target.json"), &bundle.target.to_json())?;
            write(&out_dir.join("report.json"), &serde_json::to_string_pretty(&report).expect("serializes"))?;
            Ok((report, EXIT_OK))
        }
        Command::Simulate { network, code, messages } => {
            let net = ctx.network(network)?;
            let c = ctx.code(code)?;
            let msgs = parse_messages(messages, &c)?;
            let out = code::simulate(&net, &c, &msgs).map_err(InputError::from_display)?;
            Ok((json!({"outputs": out}), EXIT_OK))
        }
    }
}

/// Short human-readable rendering of a report.
pub fn summary(report: &Report) -> String {
    let mut lines = vec![format!("{}:", report.command)];
    match &report.result {
        Value::Object(map) => {
            for (k, v) in map {
                lines.push(format!("  {k}: {v}"));
            }
        }
        other => lines.push(format!("  {other}")),
    }
    lines.join("\n")
}

/// Parses `args`, runs the command, prints the output. Returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
        }
    };
    let (report, code) = execute(&cli.command);
    if cli.json {
        println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
    } else if code == EXIT_INPUT {
        eprintln!("{}", summary(&report));
    } else {
        println!("{}", summary(&report));
    }
    code
}
