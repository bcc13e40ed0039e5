//! Command-line front end: `prove`, `check`, `decide`, `render`,
//! `enumerate`.
//!
//! Exit codes: 0 success (proved, valid, no mismatches), 1 negative result
//! (unprovable, invalid proof, mismatches found), 2 usage, input or budget
//! errors.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use cirquent::calculus::Proof;
use cirquent::cirquent::Cirquent;
use cirquent::cl2::Cl2Proof;
use cirquent::enumerate::{assess, for_each_formula, Leaves, Status};
use cirquent::formula::{Atom, Formula};
use cirquent::prover::{prove_formula, ProveOutcome, ProverConfig, Witness};
use cirquent::truth::DEFAULT_MAX_ATOMS;

/// Environment variable overriding the tautology atom budget.
pub const MAX_ATOMS_ENV: &str = "CIRQUENT_MAX_ATOMS";

#[derive(Parser, Debug)]
#[command(name = "cirquent", version, about = "Cirquent calculus CL6 prover, checker and CL2 decider")]
struct Cli {
    /// Most distinct atoms a tautology check may range over.
    #[arg(long, global = true)]
    max_atoms: Option<usize>,
    /// Most CL2 search states before giving up.
    #[arg(long, global = true)]
    max_pairings: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Prove a formula given inline or in a file.
    Prove {
        input: String,
        /// Write the proof as JSON to this file instead of printing diagrams.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Check a proof file.
    Check {
        proof: PathBuf,
        /// The file holds a CL2 proof.
        #[arg(long)]
        cl2: bool,
    },
    /// Print the verdict record of a formula as JSON.
    Decide { input: String },
    /// Draw a cirquent given as JSON.
    Render { cirquent: PathBuf },
    /// Decide every formula up to a size and cross-check the procedures.
    Enumerate {
        #[arg(long)]
        max_nodes: usize,
        /// Comma-separated atom names, e.g. `P,Q,p`.
        #[arg(long, value_delimiter = ',', required = true)]
        atoms: Vec<String>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        /// Leave `1` and `0` out of the leaf alphabet.
        #[arg(long)]
        no_constants: bool,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

struct Failure {
    code: i32,
    message: String,
}

fn fail(code: i32, message: impl Into<String>) -> Failure {
    Failure {
        code,
        message: message.into(),
    }
}

fn io_fail(e: std::io::Error) -> Failure {
    fail(2, format!("write failed: {e}"))
}

/// Runs the command line `args` (program name first) and returns the exit
/// code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match execute(cli, out) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn config(cli: &Cli) -> Result<ProverConfig, Failure> {
    let mut config = ProverConfig::default();
    config.max_atoms = match (cli.max_atoms, std::env::var(MAX_ATOMS_ENV)) {
        (Some(n), _) => n,
        (None, Ok(v)) => v
            .trim()
            .parse()
            .map_err(|_| fail(2, format!("{MAX_ATOMS_ENV} must be a number, got `{v}`")))?,
        (None, Err(_)) => DEFAULT_MAX_ATOMS,
    };
    config.cl2.max_atoms = config.max_atoms;
    if let Some(n) = cli.max_pairings {
        config.cl2.max_states = n;
    }
    Ok(config)
}

fn execute(cli: Cli, out: &mut dyn Write) -> Result<i32, Failure> {
    let config = config(&cli)?;
    match cli.command {
        Command::Prove { input, json } => prove(&input, json.as_deref(), &config, out),
        Command::Check { proof, cl2 } => check(&proof, cl2, out),
        Command::Decide { input } => {
            let f = read_formula(&input)?;
            let a = assess(&f, &config).map_err(|e| fail(2, e.to_string()))?;
            let line = serde_json::to_string(&a.verdict).expect("verdicts serialize");
            writeln!(out, "{line}").map_err(io_fail)?;
            Ok(0)
        }
        Command::Render { cirquent } => {
            let text = read_file(&cirquent)?;
            let c: Cirquent = serde_json::from_str(&text)
                .map_err(|e| fail(2, format!("{}: {e}", cirquent.display())))?;
            if let Some(d) = c.validate().into_iter().next() {
                return Err(fail(2, format!("{}: {d}", cirquent.display())));
            }
            writeln!(out, "{}", c.render()).map_err(io_fail)?;
            Ok(0)
        }
        Command::Enumerate {
            max_nodes,
            atoms,
            format,
            no_constants,
        } => enumerate(max_nodes, &atoms, format, !no_constants, &config, out),
    }
}

fn read_file(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| fail(2, format!("{}: {e}", path.display())))
}

/// An existing file is read; anything else is taken as the formula text.
fn read_formula(input: &str) -> Result<Formula, Failure> {
    let path = Path::new(input);
    let text = if path.is_file() {
        read_file(path)?
    } else {
        input.to_string()
    };
    let text = text.trim();
    Formula::parse(text).map_err(|e| {
        let mut msg = format!("parse error: {e}");
        if let Some(p) = e.position() {
            msg.push_str(&format!("\n  {text}\n  {}^", " ".repeat(p)));
        }
        fail(2, msg)
    })
}

fn certificate(w: &Witness) -> Value {
    match w {
        Witness::Countermodel(m) => {
            let model: serde_json::Map<String, Value> =
                m.iter().map(|(a, v)| (a.to_string(), Value::Bool(v))).collect();
            json!({ "countermodel": model })
        }
        Witness::Cl2Exhausted(ex) => json!({ "cl2-exhausted": ex }),
    }
}

fn prove(
    input: &str,
    json_out: Option<&Path>,
    config: &ProverConfig,
    out: &mut dyn Write,
) -> Result<i32, Failure> {
    let f = read_formula(input)?;
    match prove_formula(&f, config).map_err(|e| fail(2, e.to_string()))? {
        ProveOutcome::Proved(proof) => {
            match json_out {
                Some(path) => {
                    std::fs::write(path, proof.to_json())
                        .map_err(|e| fail(2, format!("{}: {e}", path.display())))?;
                    writeln!(out, "proved {f}: {} nodes written to {}", proof.len(), path.display())
                        .map_err(io_fail)?;
                }
                None => write_proof(&f, &proof, out).map_err(io_fail)?,
            }
            Ok(0)
        }
        ProveOutcome::NotProvable(w) => {
            let v = json!({ "verdict": "unprovable", "certificate": certificate(&w) });
            writeln!(out, "{v}").map_err(io_fail)?;
            Ok(1)
        }
        ProveOutcome::BudgetExceeded(m) => Err(fail(2, format!("budget exceeded: {m}"))),
    }
}

fn write_proof(f: &Formula, proof: &Proof, out: &mut dyn Write) -> std::io::Result<()> {
    writeln!(out, "proved {f} ({} nodes, root #{})", proof.len(), proof.root)?;
    for node in &proof.nodes {
        writeln!(out)?;
        if node.premises.is_empty() {
            writeln!(out, "#{} {}", node.id, node.rule)?;
        } else {
            let from: Vec<String> = node.premises.iter().map(|p| format!("#{p}")).collect();
            writeln!(out, "#{} {} from {}", node.id, node.rule, from.join(", "))?;
        }
        writeln!(out, "{}", node.cirquent.render())?;
    }
    Ok(())
}

fn check(path: &Path, cl2: bool, out: &mut dyn Write) -> Result<i32, Failure> {
    let text = read_file(path)?;
    let bad_json = |e: serde_json::Error| fail(2, format!("{}: {e}", path.display()));
    let result = if cl2 {
        Cl2Proof::from_json(&text)
            .map_err(bad_json)?
            .check()
            .map_err(|v| v.to_string())
    } else {
        Proof::from_json(&text)
            .map_err(bad_json)?
            .check()
            .map_err(|v| v.to_string())
    };
    match result {
        Ok(()) => {
            writeln!(out, "ok").map_err(io_fail)?;
            Ok(0)
        }
        Err(v) => {
            writeln!(out, "violation {v}").map_err(io_fail)?;
            Ok(1)
        }
    }
}

fn enumerate(
    max_nodes: usize,
    names: &[String],
    format: Format,
    constants: bool,
    config: &ProverConfig,
    out: &mut dyn Write,
) -> Result<i32, Failure> {
    let atoms = names
        .iter()
        .map(|n| {
            Atom::named(n.trim()).ok_or_else(|| fail(2, format!("`{n}` is not an atom name")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let leaves = Leaves::new(&atoms, constants);
    if format == Format::Csv {
        writeln!(out, "{}", cirquent::enumerate::Verdict::csv_header()).map_err(io_fail)?;
    }
    let (mut total, mut mismatches, mut budget) = (0usize, 0usize, 0usize);
    let mut failure: Option<Failure> = None;
    for_each_formula(&leaves, max_nodes, |f| {
        if failure.is_some() {
            return;
        }
        let a = match assess(f, config) {
            Ok(a) => a,
            Err(e) => {
                failure = Some(fail(2, format!("{f}: {e}")));
                return;
            }
        };
        let v = &a.verdict;
        total += 1;
        budget += (v.cl6 == Status::Budget || v.cl2 == Status::Budget) as usize;
        let conservative = !f.is_elementary() || v.cl6 == Status::Budget || (v.cl6 == Status::Provable) == v.classical;
        if v.is_mismatch() || !conservative {
            mismatches += 1;
        }
        let line = match format {
            Format::Csv => v.to_csv(),
            Format::Json => serde_json::to_string(v).expect("verdicts serialize"),
        };
        if let Err(e) = writeln!(out, "{line}") {
            failure = Some(io_fail(e));
        }
    });
    if let Some(f) = failure {
        return Err(f);
    }
    out.flush().map_err(io_fail)?;
    if mismatches > 0 {
        return Err(fail(
            1,
            format!("{mismatches} mismatches among {total} formulas ({budget} over budget)"),
        ));
    }
    Ok(0)
}
