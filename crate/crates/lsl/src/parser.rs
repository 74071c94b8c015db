//! Tokenization and unique-readability parsing.
//!
//! The grammar is fully parenthesized, so every well-formed formula admits
//! exactly one reading: a sentence symbol, a negation `(!b)`, or a binary
//! compound `(b c g)` for one of the four binary connectives. [`parse`]
//! recovers that unique reading; [`Wff::decompose`] exposes it as a
//! six-way case split.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::expr::{build_binary, build_neg, BinaryConnective, Expression, Symbol};

/// A well-formed formula as its unique parse tree.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Wff {
    Atom(u64),
    Not(Box<Wff>),
    Binary(BinaryConnective, Box<Wff>, Box<Wff>),
}

/// The six mutually exclusive shapes a wff can take.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Decomposition<'a> {
    Atom(u64),
    Neg(&'a Wff),
    And(&'a Wff, &'a Wff),
    Or(&'a Wff, &'a Wff),
    Implies(&'a Wff, &'a Wff),
    Iff(&'a Wff, &'a Wff),
}

impl Wff {
    /// The atomic formula `A<index>`. Panics if `index` is zero.
    pub fn atom(index: u64) -> Wff {
        assert!(index >= 1, "sentence symbol index must be >= 1");
        Wff::Atom(index)
    }

    // A constructor, not std::ops::Not; the name mirrors the variant.
    #[allow(clippy::should_implement_trait)]
    pub fn not(inner: Wff) -> Wff {
        Wff::Not(Box::new(inner))
    }

    pub fn binary(c: BinaryConnective, left: Wff, right: Wff) -> Wff {
        Wff::Binary(c, Box::new(left), Box::new(right))
    }

    /// The expression this tree denotes, built by the formula-building
    /// operations.
    pub fn render(&self) -> Expression {
        match self {
            Wff::Atom(n) => Expression::sentence(*n),
            Wff::Not(inner) => build_neg(&inner.render()),
            Wff::Binary(c, left, right) => build_binary(*c, &left.render(), &right.render()),
        }
    }

    /// Exactly one of the six cases.
    pub fn decompose(&self) -> Decomposition<'_> {
        match self {
            Wff::Atom(n) => Decomposition::Atom(*n),
            Wff::Not(inner) => Decomposition::Neg(inner),
            Wff::Binary(BinaryConnective::And, l, r) => Decomposition::And(l, r),
            Wff::Binary(BinaryConnective::Or, l, r) => Decomposition::Or(l, r),
            Wff::Binary(BinaryConnective::Implies, l, r) => Decomposition::Implies(l, r),
            Wff::Binary(BinaryConnective::Iff, l, r) => Decomposition::Iff(l, r),
        }
    }

    /// Indices of the sentence symbols occurring in the formula.
    pub fn sentence_symbols(&self) -> BTreeSet<u64> {
        fn walk(w: &Wff, out: &mut BTreeSet<u64>) {
            match w {
                Wff::Atom(n) => {
                    out.insert(*n);
                }
                Wff::Not(inner) => walk(inner, out),
                Wff::Binary(_, l, r) => {
                    walk(l, out);
                    walk(r, out);
                }
            }
        }
        let mut out = BTreeSet::new();
        walk(self, &mut out);
        out
    }

    /// Tree height with atoms at depth 0.
    pub fn depth(&self) -> usize {
        match self {
            Wff::Atom(_) => 0,
            Wff::Not(inner) => inner.depth() + 1,
            Wff::Binary(_, l, r) => l.depth().max(r.depth()) + 1,
        }
    }
}

impl fmt::Display for Wff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("unknown character '{ch}' at position {pos}")]
    UnknownCharacter { ch: char, pos: usize },
    #[error("sentence symbol 'A' without index at position {pos}")]
    MissingIndex { pos: usize },
    #[error("leading zero in sentence symbol index at position {pos}")]
    LeadingZero { pos: usize },
    #[error("sentence symbol index out of range at position {pos}")]
    IndexOverflow { pos: usize },
    #[error("incomplete connective '{ch}' at position {pos}")]
    IncompleteConnective { ch: char, pos: usize },
    #[error("empty expression")]
    Empty,
    #[error("unexpected end of input at symbol {pos}")]
    UnexpectedEnd { pos: usize },
    #[error("unexpected symbol '{symbol}' at symbol {pos}")]
    UnexpectedSymbol { symbol: Symbol, pos: usize },
    #[error("expected a binary connective at symbol {pos}")]
    ExpectedConnective { pos: usize },
    #[error("expected ')' at symbol {pos}")]
    ExpectedRParen { pos: usize },
    #[error("trailing symbols starting at symbol {pos}")]
    TrailingSymbols { pos: usize },
}

/// Lexes a formula text into an [`Expression`].
///
/// ASCII connectives `! & | -> <->` are canonical; the aliases
/// `¬ ∧ ∨ → ↔` are accepted. Whitespace between tokens is skipped.
/// Sentence symbols are `A` followed by digits with no leading zero.
/// Positions in errors are zero-based character offsets.
pub fn tokenize(text: &str) -> Result<Expression, ParseError> {
    let mut symbols = Vec::new();
    let mut chars = text.chars().enumerate().peekable();
    while let Some((pos, ch)) = chars.next() {
        let sym = match ch {
            c if c.is_whitespace() => continue,
            '(' => Symbol::LParen,
            ')' => Symbol::RParen,
            '!' | '¬' => Symbol::Neg,
            '&' | '∧' => Symbol::And,
            '|' | '∨' => Symbol::Or,
            '→' => Symbol::Implies,
            '↔' => Symbol::Iff,
            '-' => match chars.peek() {
                Some((_, '>')) => {
                    chars.next();
                    Symbol::Implies
                }
                _ => return Err(ParseError::IncompleteConnective { ch, pos }),
            },
            '<' => match (chars.next(), chars.next()) {
                (Some((_, '-')), Some((_, '>'))) => Symbol::Iff,
                _ => return Err(ParseError::IncompleteConnective { ch, pos }),
            },
            'A' => {
                let mut digits = String::new();
                let start = pos + 1;
                while let Some((_, d)) = chars.peek() {
                    if d.is_ascii_digit() {
                        digits.push(*d);
                        chars.next();
                    } else {
                        break;
                    }
                }
                if digits.is_empty() {
                    return Err(ParseError::MissingIndex { pos });
                }
                if digits.starts_with('0') {
                    return Err(ParseError::LeadingZero { pos: start });
                }
                let index: u64 = digits
                    .parse()
                    .map_err(|_| ParseError::IndexOverflow { pos: start })?;
                Symbol::Sentence(index)
            }
            _ => return Err(ParseError::UnknownCharacter { ch, pos }),
        };
        symbols.push(sym);
    }
    Expression::new(symbols).map_err(|_| ParseError::Empty)
}

/// Parses an expression into the unique [`Wff`] it denotes.
///
/// The whole expression must be consumed. Error positions are zero-based
/// symbol indices.
pub fn parse(e: &Expression) -> Result<Wff, ParseError> {
    let symbols = e.symbols();
    let (wff, next) = parse_at(symbols, 0)?;
    if next != symbols.len() {
        return Err(ParseError::TrailingSymbols { pos: next });
    }
    Ok(wff)
}

/// Tokenizes and parses in one step.
pub fn parse_str(text: &str) -> Result<Wff, ParseError> {
    parse(&tokenize(text)?)
}

fn parse_at(symbols: &[Symbol], pos: usize) -> Result<(Wff, usize), ParseError> {
    match symbols.get(pos) {
        None => Err(ParseError::UnexpectedEnd { pos }),
        Some(Symbol::Sentence(n)) => Ok((Wff::Atom(*n), pos + 1)),
        Some(Symbol::LParen) => match symbols.get(pos + 1) {
            Some(Symbol::Neg) => {
                let (inner, next) = parse_at(symbols, pos + 2)?;
                expect_rparen(symbols, next)?;
                Ok((Wff::not(inner), next + 1))
            }
            _ => {
                let (left, next) = parse_at(symbols, pos + 1)?;
                let conn = match symbols.get(next) {
                    None => return Err(ParseError::UnexpectedEnd { pos: next }),
                    Some(sym) => BinaryConnective::from_symbol(*sym)
                        .ok_or(ParseError::ExpectedConnective { pos: next })?,
                };
                let (right, next) = parse_at(symbols, next + 1)?;
                expect_rparen(symbols, next)?;
                Ok((Wff::binary(conn, left, right), next + 1))
            }
        },
        Some(sym) => Err(ParseError::UnexpectedSymbol { symbol: *sym, pos }),
    }
}

fn expect_rparen(symbols: &[Symbol], pos: usize) -> Result<(), ParseError> {
    match symbols.get(pos) {
        Some(Symbol::RParen) => Ok(()),
        Some(_) => Err(ParseError::ExpectedRParen { pos }),
        None => Err(ParseError::UnexpectedEnd { pos }),
    }
}
