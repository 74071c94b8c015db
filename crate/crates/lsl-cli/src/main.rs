//! Command-line front end: parsing, evaluation, truth tables,
//! construction sequences, tautology checks, and the generation demo.
//!
//! Exit codes: 0 success, 1 I/O or bad arguments, 2 domain errors (parse
//! failures, invalid sequences, out-of-domain symbols). Every domain
//! error prints a single `error: ...` line to stderr.

use std::collections::BTreeSet;
use std::fs;
use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use lsl::{
    check_free, construct, construct_randomized, generate, h_eval, is_s_based, is_tautology,
    lsl_system, parse_str, truth_table, validate, BinaryConnective, ConstructionSequence,
    Justification, TruthAssignment, Wff,
};

/// Element cap for the generation demo; stages beyond it abort with a
/// domain error.
const GEN_DEMO_CAP: usize = 100_000;

#[derive(Parser)]
#[command(name = "lsl", version, about = "Sentential-logic toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a formula and print its tree and token count
    Parse {
        formula: Option<String>,
        /// Read the formula from standard input
        #[arg(long)]
        stdin: bool,
    },
    /// Evaluate a formula under an assignment file (lines `A<n>=T|F`)
    Eval {
        formula: Option<String>,
        /// Path to the assignment file
        assignment: Option<String>,
        /// Read the formula from standard input
        #[arg(long)]
        stdin: bool,
    },
    /// Print the full truth table of a formula
    Table {
        formula: Option<String>,
        /// Read the formula from standard input
        #[arg(long)]
        stdin: bool,
    },
    /// Print a construction sequence for a formula
    Seq {
        formula: Option<String>,
        /// Randomize the sequence with this seed (canonical otherwise)
        #[arg(long)]
        seed: Option<u64>,
        /// Read the formula from standard input
        #[arg(long)]
        stdin: bool,
    },
    /// Check a sequence file (one expression per line, `#` comments)
    VerifySeq {
        file: String,
        /// Comma-separated sentence-symbol indices for the S-based check
        #[arg(long)]
        symbols: Option<String>,
    },
    /// Report whether a formula is a tautology
    Taut {
        formula: Option<String>,
        /// Read the formula from standard input
        #[arg(long)]
        stdin: bool,
    },
    /// Generate stages of wffs over a symbol set and audit freeness
    GenDemo {
        /// Comma-separated sentence-symbol indices
        #[arg(long)]
        symbols: String,
        /// Number of stages beyond the base
        #[arg(long)]
        depth: usize,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let code = run(
        cli.command,
        &mut io::stdout().lock(),
        &mut io::stderr().lock(),
    );
    ExitCode::from(code)
}

fn run(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> u8 {
    match try_run(cmd, out) {
        Ok(()) => 0,
        Err(failure) => {
            let _ = writeln!(err, "error: {}", failure.message);
            failure.code
        }
    }
}

struct Failure {
    code: u8,
    message: String,
}

fn domain(message: impl ToString) -> Failure {
    Failure {
        code: 2,
        message: message.to_string(),
    }
}

fn usage(message: impl ToString) -> Failure {
    Failure {
        code: 1,
        message: message.to_string(),
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Failure {
        usage(e)
    }
}

fn try_run(cmd: Command, out: &mut dyn Write) -> Result<(), Failure> {
    match cmd {
        Command::Parse { formula, stdin } => {
            let w = formula_arg(formula, stdin)?;
            write_tree(out, &w, 0)?;
            writeln!(out, "tokens: {}", w.render().len())?;
        }
        Command::Eval {
            mut formula,
            mut assignment,
            stdin,
        } => {
            // With --stdin the single positional is the assignment file.
            if stdin && assignment.is_none() {
                assignment = formula.take();
            }
            let w = formula_arg(formula, stdin)?;
            let path = assignment.ok_or_else(|| usage("missing assignment file"))?;
            let text = fs::read_to_string(&path)
                .map_err(|e| usage(format!("cannot read {path}: {e}")))?;
            let v = TruthAssignment::parse_text(&text).map_err(domain)?;
            let value = h_eval(&w, &v).map_err(domain)?;
            writeln!(out, "{value}")?;
        }
        Command::Table { formula, stdin } => {
            let w = formula_arg(formula, stdin)?;
            let symbols = w.sentence_symbols();
            let header: Vec<String> = symbols.iter().map(|n| format!("A{n}")).collect();
            writeln!(out, "{} value", header.join(" "))?;
            for (v, value) in truth_table(&w) {
                let cells: Vec<String> = v.iter().map(|(_, t)| t.to_string()).collect();
                writeln!(out, "{} {}", cells.join(" "), value)?;
            }
        }
        Command::Seq {
            formula,
            seed,
            stdin,
        } => {
            let w = formula_arg(formula, stdin)?;
            let cs = match seed {
                Some(seed) => construct_randomized(&w, seed),
                None => construct(&w),
            };
            write_sequence(out, &cs)?;
        }
        Command::VerifySeq { file, symbols } => {
            let s = symbols.map(|spec| parse_symbol_spec(&spec)).transpose()?;
            let text = fs::read_to_string(&file)
                .map_err(|e| usage(format!("cannot read {file}: {e}")))?;
            let exprs = lsl::construction::parse_sequence_text(&text).map_err(domain)?;
            let cs = validate(&exprs).map_err(domain)?;
            writeln!(out, "VALID")?;
            write_sequence(out, &cs)?;
            if let Some(s) = s {
                let based = if is_s_based(&cs, &s) { "yes" } else { "no" };
                writeln!(out, "S-BASED: {based}")?;
            }
        }
        Command::Taut { formula, stdin } => {
            let w = formula_arg(formula, stdin)?;
            let answer = if is_tautology(&w) { "yes" } else { "no" };
            writeln!(out, "TAUTOLOGY: {answer}")?;
        }
        Command::GenDemo { symbols, depth } => {
            let s = parse_symbol_spec(&symbols)?;
            let sys = lsl_system(&s).map_err(domain)?;
            let stage = generate(&sys, depth, GEN_DEMO_CAP).map_err(domain)?;
            for d in 0..=depth {
                let added = stage.added_at(d);
                writeln!(
                    out,
                    "stage {d}: {} elements ({} new)",
                    stage.stage_ends()[d],
                    added.len()
                )?;
                for e in added.iter().take(10) {
                    writeln!(out, "  {e}")?;
                }
            }
            let report = check_free(&stage, &sys);
            writeln!(
                out,
                "free report: F1={} F2={} F3={}",
                report.f1.len(),
                report.f2.len(),
                report.f3.len()
            )?;
        }
    }
    Ok(())
}

/// Resolves the formula argument, honoring `--stdin`, and parses it.
fn formula_arg(formula: Option<String>, stdin: bool) -> Result<Wff, Failure> {
    let text = match (formula, stdin) {
        (Some(_), true) => return Err(usage("--stdin conflicts with a formula argument")),
        (Some(text), false) => text,
        (None, true) => io::read_to_string(io::stdin())?,
        (None, false) => return Err(usage("missing formula (or pass --stdin)")),
    };
    parse_str(text.trim()).map_err(domain)
}

/// Parses a comma-separated list of sentence-symbol indices.
fn parse_symbol_spec(spec: &str) -> Result<BTreeSet<u64>, Failure> {
    let mut out = BTreeSet::new();
    for part in spec.split(',') {
        let part = part.trim();
        let index: u64 = part
            .parse()
            .map_err(|_| usage(format!("invalid symbol index {part:?}")))?;
        if index == 0 {
            return Err(usage("symbol indices start at 1"));
        }
        out.insert(index);
    }
    Ok(out)
}

fn write_tree(out: &mut dyn Write, w: &Wff, indent: usize) -> io::Result<()> {
    let pad = "  ".repeat(indent);
    match w {
        Wff::Atom(n) => writeln!(out, "{pad}A{n}"),
        Wff::Not(inner) => {
            writeln!(out, "{pad}Not")?;
            write_tree(out, inner, indent + 1)
        }
        Wff::Binary(c, l, r) => {
            writeln!(out, "{pad}{}", connective_label(*c))?;
            write_tree(out, l, indent + 1)?;
            write_tree(out, r, indent + 1)
        }
    }
}

fn connective_label(c: BinaryConnective) -> &'static str {
    match c {
        BinaryConnective::And => "And",
        BinaryConnective::Or => "Or",
        BinaryConnective::Implies => "Implies",
        BinaryConnective::Iff => "Iff",
    }
}

fn connective_word(c: BinaryConnective) -> &'static str {
    match c {
        BinaryConnective::And => "and",
        BinaryConnective::Or => "or",
        BinaryConnective::Implies => "implies",
        BinaryConnective::Iff => "iff",
    }
}

/// Prints a numbered sequence; step references in justifications are
/// one-based to match the numbering.
fn write_sequence(out: &mut dyn Write, cs: &ConstructionSequence) -> io::Result<()> {
    for (i, step) in cs.steps().iter().enumerate() {
        let label = match step.justification {
            Justification::Symbol => "symbol".to_string(),
            Justification::Neg { premise } => format!("neg {}", premise + 1),
            Justification::Binary { conn, left, right } => {
                format!("{} {} {}", connective_word(conn), left + 1, right + 1)
            }
        };
        writeln!(out, "{}. {}  [{}]", i + 1, step.expr, label)?;
    }
    Ok(())
}
