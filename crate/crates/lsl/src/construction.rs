//! Construction sequences.
//!
//! A construction sequence is a finite list of expressions in which every
//! entry is a sentence symbol or is built from strictly earlier entries by
//! one of the formula-building operations. [`validate`] recovers one
//! justification per step; [`construct`] and [`construct_randomized`]
//! produce sequences for a given formula; [`combine`] concatenates two
//! sequences under a binary connective.

use std::collections::BTreeSet;
use std::collections::HashMap;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::expr::{build_binary, build_neg, BinaryConnective, Expression, Symbol};
use crate::parser::{self, ParseError, Wff};

/// Why a step belongs in a construction sequence. Step references are
/// zero-based indices into the sequence and always point strictly earlier.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Justification {
    /// The entry is a single sentence symbol.
    Symbol,
    /// The entry is `build_neg` of the referenced step.
    Neg { premise: usize },
    /// The entry is `build_binary` of the two referenced steps.
    Binary {
        conn: BinaryConnective,
        left: usize,
        right: usize,
    },
}

/// One justified entry of a construction sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Step {
    pub expr: Expression,
    pub justification: Justification,
}

/// A nonempty sequence of justified expressions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstructionSequence {
    steps: Vec<Step>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SequenceError {
    #[error("empty sequence")]
    Empty,
    #[error("step {step}: no justification from earlier steps")]
    Unjustifiable { step: usize },
}

impl ConstructionSequence {
    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn last_expr(&self) -> &Expression {
        &self.steps.last().expect("sequence is nonempty").expr
    }

    /// The first `len` steps as a sequence of their own. Justifications
    /// only ever point backwards, so any prefix is again valid.
    pub fn prefix(&self, len: usize) -> ConstructionSequence {
        assert!(len >= 1 && len <= self.steps.len(), "prefix length out of range");
        ConstructionSequence {
            steps: self.steps[..len].to_vec(),
        }
    }

    /// Sorted indices of every sentence symbol occurring anywhere in the
    /// sequence.
    pub fn sentence_symbols(&self) -> BTreeSet<u64> {
        self.steps
            .iter()
            .flat_map(|step| step.expr.sentence_indices())
            .collect()
    }
}

/// Checks that every entry is justified by earlier entries and records one
/// justification per step.
///
/// When several earlier steps qualify, the smallest indices win: for a
/// negation the smallest premise, for a binary compound the smallest
/// `(left, right)` pair in lexicographic order.
pub fn validate(exprs: &[Expression]) -> Result<ConstructionSequence, SequenceError> {
    if exprs.is_empty() {
        return Err(SequenceError::Empty);
    }
    // First occurrence of each expression seen so far.
    let mut first_seen: HashMap<&Expression, usize> = HashMap::new();
    let mut steps = Vec::with_capacity(exprs.len());
    for (i, expr) in exprs.iter().enumerate() {
        let justification = justify(expr, &first_seen)
            .ok_or(SequenceError::Unjustifiable { step: i + 1 })?;
        steps.push(Step {
            expr: expr.clone(),
            justification,
        });
        first_seen.entry(expr).or_insert(i);
    }
    Ok(ConstructionSequence { steps })
}

fn justify(
    expr: &Expression,
    first_seen: &HashMap<&Expression, usize>,
) -> Option<Justification> {
    if expr.as_sentence_symbol().is_some() {
        return Some(Justification::Symbol);
    }
    let symbols = expr.symbols();
    let n = symbols.len();
    // Builder outputs are parenthesized and wrap a nonempty body.
    if n < 4 || symbols[0] != Symbol::LParen || symbols[n - 1] != Symbol::RParen {
        return None;
    }
    if symbols[1] == Symbol::Neg {
        let body = Expression::new(symbols[2..n - 1].to_vec()).expect("body is nonempty");
        if let Some(&premise) = first_seen.get(&body) {
            return Some(Justification::Neg { premise });
        }
    }
    // Try every split position for a binary connective; keep the smallest
    // (left, right) pair.
    let mut best: Option<(usize, usize, BinaryConnective)> = None;
    for split in 2..n - 2 {
        let Some(conn) = BinaryConnective::from_symbol(symbols[split]) else {
            continue;
        };
        let left = Expression::new(symbols[1..split].to_vec()).expect("operand is nonempty");
        let right = Expression::new(symbols[split + 1..n - 1].to_vec())
            .expect("operand is nonempty");
        if let (Some(&j), Some(&k)) = (first_seen.get(&left), first_seen.get(&right)) {
            if best.is_none_or(|(bj, bk, _)| (j, k) < (bj, bk)) {
                best = Some((j, k, conn));
            }
        }
    }
    best.map(|(left, right, conn)| Justification::Binary { conn, left, right })
}

/// The canonical construction sequence for a formula: its sentence symbols
/// in increasing index order, then each compound subformula in post-order,
/// with repeated subexpressions emitted once.
pub fn construct(w: &Wff) -> ConstructionSequence {
    let mut steps = Vec::new();
    let mut emitted: HashMap<Expression, usize> = HashMap::new();
    for index in w.sentence_symbols() {
        let expr = Expression::sentence(index);
        emitted.insert(expr.clone(), steps.len());
        steps.push(Step {
            expr,
            justification: Justification::Symbol,
        });
    }
    emit_compounds(w, &mut steps, &mut emitted);
    ConstructionSequence { steps }
}

fn emit_compounds(
    w: &Wff,
    steps: &mut Vec<Step>,
    emitted: &mut HashMap<Expression, usize>,
) -> usize {
    match w {
        Wff::Atom(n) => emitted[&Expression::sentence(*n)],
        Wff::Not(inner) => {
            let premise = emit_compounds(inner, steps, emitted);
            let expr = build_neg(&steps[premise].expr);
            push_once(steps, emitted, expr, Justification::Neg { premise })
        }
        Wff::Binary(conn, l, r) => {
            let left = emit_compounds(l, steps, emitted);
            let right = emit_compounds(r, steps, emitted);
            let expr = build_binary(*conn, &steps[left].expr, &steps[right].expr);
            push_once(
                steps,
                emitted,
                expr,
                Justification::Binary {
                    conn: *conn,
                    left,
                    right,
                },
            )
        }
    }
}

fn push_once(
    steps: &mut Vec<Step>,
    emitted: &mut HashMap<Expression, usize>,
    expr: Expression,
    justification: Justification,
) -> usize {
    if let Some(&i) = emitted.get(&expr) {
        return i;
    }
    let i = steps.len();
    emitted.insert(expr.clone(), i);
    steps.push(Step {
        expr,
        justification,
    });
    i
}

/// A valid construction sequence for `w` with randomized step order,
/// optional duplicate entries, and interspersed irrelevant steps built
/// from earlier entries. Deterministic for a fixed seed; the final step is
/// always `w.render()`.
pub fn construct_randomized(w: &Wff, seed: u64) -> ConstructionSequence {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    // Distinct subformulas in post-order; the root comes last and every
    // other node is (transitively) one of its dependencies.
    let mut nodes: Vec<Wff> = Vec::new();
    let mut seen: HashMap<Expression, usize> = HashMap::new();
    collect_subformulas(w, &mut nodes, &mut seen);

    let mut steps: Vec<Step> = Vec::new();
    let mut emitted: HashMap<Expression, usize> = HashMap::new();
    let mut done = vec![false; nodes.len()];
    let mut remaining = nodes.len();

    while remaining > 0 {
        if !steps.is_empty() && rng.random_bool(0.25) {
            push_junk_step(&mut rng, &mut steps);
        }
        let ready: Vec<usize> = (0..nodes.len())
            .filter(|&i| !done[i] && deps_emitted(&nodes[i], &emitted))
            .collect();
        let pick = ready[rng.random_range(0..ready.len())];
        let node = &nodes[pick];
        let expr = node.render();
        let justification = match node {
            Wff::Atom(_) => Justification::Symbol,
            Wff::Not(inner) => Justification::Neg {
                premise: emitted[&inner.render()],
            },
            Wff::Binary(conn, l, r) => Justification::Binary {
                conn: *conn,
                left: emitted[&l.render()],
                right: emitted[&r.render()],
            },
        };
        emitted.entry(expr.clone()).or_insert(steps.len());
        steps.push(Step {
            expr,
            justification,
        });
        done[pick] = true;
        remaining -= 1;
    }
    ConstructionSequence { steps }
}

fn collect_subformulas(w: &Wff, nodes: &mut Vec<Wff>, seen: &mut HashMap<Expression, usize>) {
    let expr = w.render();
    if seen.contains_key(&expr) {
        return;
    }
    match w {
        Wff::Atom(_) => {}
        Wff::Not(inner) => collect_subformulas(inner, nodes, seen),
        Wff::Binary(_, l, r) => {
            collect_subformulas(l, nodes, seen);
            collect_subformulas(r, nodes, seen);
        }
    }
    seen.insert(expr, nodes.len());
    nodes.push(w.clone());
}

fn deps_emitted(w: &Wff, emitted: &HashMap<Expression, usize>) -> bool {
    match w {
        Wff::Atom(_) => true,
        Wff::Not(inner) => emitted.contains_key(&inner.render()),
        Wff::Binary(_, l, r) => {
            emitted.contains_key(&l.render()) && emitted.contains_key(&r.render())
        }
    }
}

/// Appends a redundant step: a duplicate of an earlier entry or a fresh
/// compound over two earlier entries.
fn push_junk_step(rng: &mut ChaCha8Rng, steps: &mut Vec<Step>) {
    let n = steps.len();
    let step = match rng.random_range(0..3u8) {
        0 => {
            let i = rng.random_range(0..n);
            steps[i].clone()
        }
        1 => {
            let premise = rng.random_range(0..n);
            Step {
                expr: build_neg(&steps[premise].expr),
                justification: Justification::Neg { premise },
            }
        }
        _ => {
            let conn = BinaryConnective::ALL[rng.random_range(0..4)];
            let left = rng.random_range(0..n);
            let right = rng.random_range(0..n);
            Step {
                expr: build_binary(conn, &steps[left].expr, &steps[right].expr),
                justification: Justification::Binary { conn, left, right },
            }
        }
    };
    steps.push(step);
}

/// Concatenates two sequences and closes with the binary compound of their
/// final entries.
pub fn combine(
    a: &ConstructionSequence,
    b: &ConstructionSequence,
    c: BinaryConnective,
) -> ConstructionSequence {
    let offset = a.len();
    let mut steps = a.steps.clone();
    for step in &b.steps {
        let justification = match step.justification {
            Justification::Symbol => Justification::Symbol,
            Justification::Neg { premise } => Justification::Neg {
                premise: premise + offset,
            },
            Justification::Binary { conn, left, right } => Justification::Binary {
                conn,
                left: left + offset,
                right: right + offset,
            },
        };
        steps.push(Step {
            expr: step.expr.clone(),
            justification,
        });
    }
    let expr = build_binary(c, a.last_expr(), b.last_expr());
    steps.push(Step {
        expr,
        justification: Justification::Binary {
            conn: c,
            left: offset - 1,
            right: offset + b.len() - 1,
        },
    });
    ConstructionSequence { steps }
}

/// True when every sentence symbol occurring in the sequence belongs to `s`.
pub fn is_s_based(cs: &ConstructionSequence, s: &BTreeSet<u64>) -> bool {
    cs.steps
        .iter()
        .flat_map(|step| step.expr.sentence_indices())
        .all(|index| s.contains(&index))
}

/// Membership in the set of wffs over `s`: the expression parses and all
/// its sentence symbols belong to `s`.
pub fn in_s_bar(e: &Expression, s: &BTreeSet<u64>) -> bool {
    match parser::parse(e) {
        Ok(w) => w.sentence_symbols().is_subset(s),
        Err(_) => false,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {source}")]
pub struct SequenceTextError {
    pub line: usize,
    pub source: ParseError,
}

/// Reads the one-expression-per-line sequence format. Blank lines and `#`
/// comments are ignored. `line` in errors is one-based.
pub fn parse_sequence_text(text: &str) -> Result<Vec<Expression>, SequenceTextError> {
    let mut exprs = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let expr = parser::tokenize(line).map_err(|source| SequenceTextError {
            line: i + 1,
            source,
        })?;
        exprs.push(expr);
    }
    Ok(exprs)
}
