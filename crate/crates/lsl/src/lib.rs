//! A toolkit for the language of sentential logic.
//!
//! Formulas are fully parenthesized and built from sentence symbols
//! `A1, A2, ...` by five operations: negation and the four binary
//! connectives. The crate covers the whole pipeline around that language:
//!
//! - [`expr`]: symbols, raw expressions, and the formula-building
//!   operations, which act on arbitrary expressions.
//! - [`parser`]: tokenization, unique-readability parsing into [`Wff`]
//!   trees, six-way decomposition, and rendering back to text.
//! - [`construction`]: construction sequences with per-step
//!   justifications, canonical and randomized sequence construction,
//!   sequence combination, and symbol-set checks.
//! - [`evaluation`]: truth assignments, the truth-value sequence attached
//!   to a construction sequence, two independently implemented evaluators,
//!   truth tables, and tautology checking.
//! - [`generation`]: a generic engine for sets generated from a base by
//!   n-ary operations, with a freeness audit and a provenance-driven
//!   fold, instantiated to sentential logic.
//!
//! The ASCII syntax is `!` `&` `|` `->` `<->` with Unicode aliases
//! `¬ ∧ ∨ → ↔` accepted on input.

pub mod construction;
pub mod evaluation;
pub mod expr;
pub mod generation;
pub mod parser;

pub use construction::{
    combine, construct, construct_randomized, in_s_bar, is_s_based, validate,
    ConstructionSequence, Justification, SequenceError, Step,
};
pub use evaluation::{
    connective_table, h_eval, is_tautology, recursive_eval, truth_sequence, truth_table,
    EvalError, TruthAssignment, TruthSequence, TruthValue,
};
pub use expr::{
    build_binary, build_neg, BinaryConnective, Connective, ExprError, Expression, Symbol,
};
pub use generation::{
    check_closed, check_free, fold, generate, lsl_system, Closure, FreeReport, GenError, GenOp,
    GeneratedStage, GeneratorSystem, Provenance,
};
pub use parser::{parse, parse_str, tokenize, Decomposition, ParseError, Wff};
