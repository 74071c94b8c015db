//! Truth assignments and the two evaluators.
//!
//! [`truth_sequence`] walks a construction sequence and assigns each step a
//! truth value from its justification; [`h_eval`] is the last value of the
//! canonical sequence. [`recursive_eval`] computes the same function by
//! structural recursion on the parse tree, sharing nothing with `h_eval`
//! beyond [`connective_table`]. The two agreeing on every formula is the
//! point of the exercise.

use std::collections::BTreeMap;
use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::construction::{construct, ConstructionSequence, Justification};
use crate::expr::Connective;
use crate::parser::Wff;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TruthValue {
    True,
    False,
}

impl TruthValue {
    pub fn from_bool(b: bool) -> TruthValue {
        if b {
            TruthValue::True
        } else {
            TruthValue::False
        }
    }

    pub fn as_bool(self) -> bool {
        self == TruthValue::True
    }
}

impl fmt::Display for TruthValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TruthValue::True => "T",
            TruthValue::False => "F",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("sentence symbol A{0} is not in the assignment's domain")]
    SymbolNotInDomain(u64),
    #[error("connective {conn:?} takes {expected} argument(s), got {given}")]
    ArityMismatch {
        conn: Connective,
        expected: usize,
        given: usize,
    },
}

/// A total map from a finite set of sentence symbols to truth values.
/// Lookups outside the domain are errors, never defaults.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruthAssignment {
    map: BTreeMap<u64, TruthValue>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AssignmentTextError {
    #[error("line {line}: expected 'A<n>=T' or 'A<n>=F', found {found:?}")]
    Malformed { line: usize, found: String },
    #[error("line {line}: duplicate entry for A{index}")]
    Duplicate { line: usize, index: u64 },
}

impl TruthAssignment {
    pub fn new(map: BTreeMap<u64, TruthValue>) -> TruthAssignment {
        TruthAssignment { map }
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (u64, TruthValue)>) -> TruthAssignment {
        TruthAssignment {
            map: pairs.into_iter().collect(),
        }
    }

    /// The set of sentence symbols the assignment is defined on.
    pub fn domain(&self) -> BTreeSet<u64> {
        self.map.keys().copied().collect()
    }

    pub fn get(&self, index: u64) -> Result<TruthValue, EvalError> {
        self.map
            .get(&index)
            .copied()
            .ok_or(EvalError::SymbolNotInDomain(index))
    }

    pub fn iter(&self) -> impl Iterator<Item = (u64, TruthValue)> + '_ {
        self.map.iter().map(|(&k, &v)| (k, v))
    }

    /// All `2^|symbols|` assignments over a symbol set, ordered with the
    /// highest-index symbol varying fastest and `F` before `T`.
    pub fn enumerate(symbols: &BTreeSet<u64>) -> Vec<TruthAssignment> {
        let symbols: Vec<u64> = symbols.iter().copied().collect();
        let k = symbols.len();
        let mut out = Vec::with_capacity(1usize << k);
        for row in 0..(1usize << k) {
            let map = symbols
                .iter()
                .enumerate()
                .map(|(j, &sym)| {
                    let bit = (row >> (k - 1 - j)) & 1;
                    (sym, TruthValue::from_bool(bit == 1))
                })
                .collect();
            out.push(TruthAssignment { map });
        }
        out
    }

    /// Reads the `A<n>=T` / `A<n>=F` one-per-line format. The keys listed
    /// are exactly the domain; duplicates are an error.
    pub fn parse_text(text: &str) -> Result<TruthAssignment, AssignmentTextError> {
        let mut map = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() {
                continue;
            }
            let entry = parse_assignment_line(line).ok_or_else(|| {
                AssignmentTextError::Malformed {
                    line: i + 1,
                    found: line.to_string(),
                }
            })?;
            let (index, value) = entry;
            if map.insert(index, value).is_some() {
                return Err(AssignmentTextError::Duplicate { line: i + 1, index });
            }
        }
        Ok(TruthAssignment { map })
    }
}

fn parse_assignment_line(line: &str) -> Option<(u64, TruthValue)> {
    let rest = line.strip_prefix('A')?;
    let (digits, value_text) = rest.split_once('=')?;
    if digits.is_empty() || digits.starts_with('0') || !digits.bytes().all(|b| b.is_ascii_digit())
    {
        return None;
    }
    let index: u64 = digits.parse().ok()?;
    let value = match value_text.trim() {
        "T" => TruthValue::True,
        "F" => TruthValue::False,
        _ => return None,
    };
    Some((index, value))
}

/// The sequence of truth values associated with a construction sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruthSequence {
    values: Vec<TruthValue>,
}

impl TruthSequence {
    pub fn values(&self) -> &[TruthValue] {
        &self.values
    }

    pub fn last(&self) -> TruthValue {
        *self.values.last().expect("sequence is nonempty")
    }
}

/// The truth tables of the five connectives. `b` must be present exactly
/// when the connective is binary.
pub fn connective_table(
    c: Connective,
    a: TruthValue,
    b: Option<TruthValue>,
) -> Result<TruthValue, EvalError> {
    let given = 1 + b.is_some() as usize;
    if given != c.arity() {
        return Err(EvalError::ArityMismatch {
            conn: c,
            expected: c.arity(),
            given,
        });
    }
    let a = a.as_bool();
    let value = match c {
        Connective::Neg => !a,
        Connective::And => a && b.unwrap().as_bool(),
        Connective::Or => a || b.unwrap().as_bool(),
        Connective::Implies => !a || b.unwrap().as_bool(),
        Connective::Iff => a == b.unwrap().as_bool(),
    };
    Ok(TruthValue::from_bool(value))
}

/// The truth value of each step of a construction sequence under `v`:
/// sentence-symbol steps read the assignment, built steps apply the
/// connective table to the values of their premises.
pub fn truth_sequence(
    cs: &ConstructionSequence,
    v: &TruthAssignment,
) -> Result<TruthSequence, EvalError> {
    let mut values: Vec<TruthValue> = Vec::with_capacity(cs.len());
    for step in cs.steps() {
        let value = match step.justification {
            Justification::Symbol => {
                let index = step
                    .expr
                    .as_sentence_symbol()
                    .expect("symbol-justified step is a single sentence symbol");
                v.get(index)?
            }
            Justification::Neg { premise } => {
                connective_table(Connective::Neg, values[premise], None)?
            }
            Justification::Binary { conn, left, right } => {
                connective_table(conn.into(), values[left], Some(values[right]))?
            }
        };
        values.push(value);
    }
    Ok(TruthSequence { values })
}

/// The sequence-based evaluator: the final truth value of a construction
/// sequence for `w`. Any valid sequence gives the same answer, so the
/// canonical one is used.
pub fn h_eval(w: &Wff, v: &TruthAssignment) -> Result<TruthValue, EvalError> {
    Ok(truth_sequence(&construct(w), v)?.last())
}

/// The structural evaluator: recursion on the parse tree. Independent of
/// the sequence machinery; shares only [`connective_table`] with
/// [`h_eval`].
pub fn recursive_eval(w: &Wff, v: &TruthAssignment) -> Result<TruthValue, EvalError> {
    match w {
        Wff::Atom(n) => v.get(*n),
        Wff::Not(inner) => connective_table(Connective::Neg, recursive_eval(inner, v)?, None),
        Wff::Binary(c, l, r) => connective_table(
            (*c).into(),
            recursive_eval(l, v)?,
            Some(recursive_eval(r, v)?),
        ),
    }
}

/// One row per assignment over the formula's sentence symbols, in
/// [`TruthAssignment::enumerate`] order.
pub fn truth_table(w: &Wff) -> Vec<(TruthAssignment, TruthValue)> {
    TruthAssignment::enumerate(&w.sentence_symbols())
        .into_iter()
        .map(|v| {
            let value = recursive_eval(w, &v).expect("assignment covers the formula's symbols");
            (v, value)
        })
        .collect()
}

/// True when every truth-table row evaluates to `T`.
pub fn is_tautology(w: &Wff) -> bool {
    truth_table(w)
        .iter()
        .all(|(_, value)| *value == TruthValue::True)
}
