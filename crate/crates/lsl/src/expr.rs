//! Symbols, expressions, and the formula-building operations.
//!
//! An [`Expression`] is any nonempty finite sequence of symbols of the
//! sentential language. The building operations wrap *arbitrary*
//! expressions, not just well-formed ones; well-formedness is the parser's
//! concern.

use std::fmt;

use thiserror::Error;

/// A single symbol of the sentential language.
///
/// Sentence symbols are written `A1`, `A2`, ... and carry an index `>= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Symbol {
    Sentence(u64),
    LParen,
    RParen,
    Neg,
    And,
    Or,
    Implies,
    Iff,
}

impl Symbol {
    /// The sentence symbol `A<index>`. Panics if `index` is zero.
    pub fn sentence(index: u64) -> Symbol {
        assert!(index >= 1, "sentence symbol index must be >= 1");
        Symbol::Sentence(index)
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Symbol::Sentence(n) => write!(f, "A{n}"),
            Symbol::LParen => f.write_str("("),
            Symbol::RParen => f.write_str(")"),
            Symbol::Neg => f.write_str("!"),
            Symbol::And => f.write_str("&"),
            Symbol::Or => f.write_str("|"),
            Symbol::Implies => f.write_str("->"),
            Symbol::Iff => f.write_str("<->"),
        }
    }
}

/// One of the four binary connectives.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BinaryConnective {
    And,
    Or,
    Implies,
    Iff,
}

impl BinaryConnective {
    pub const ALL: [BinaryConnective; 4] = [
        BinaryConnective::And,
        BinaryConnective::Or,
        BinaryConnective::Implies,
        BinaryConnective::Iff,
    ];

    /// The symbol that stands between the two operands.
    pub fn symbol(self) -> Symbol {
        match self {
            BinaryConnective::And => Symbol::And,
            BinaryConnective::Or => Symbol::Or,
            BinaryConnective::Implies => Symbol::Implies,
            BinaryConnective::Iff => Symbol::Iff,
        }
    }

    pub fn from_symbol(sym: Symbol) -> Option<BinaryConnective> {
        match sym {
            Symbol::And => Some(BinaryConnective::And),
            Symbol::Or => Some(BinaryConnective::Or),
            Symbol::Implies => Some(BinaryConnective::Implies),
            Symbol::Iff => Some(BinaryConnective::Iff),
            _ => None,
        }
    }
}

/// Any of the five connectives, negation included.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Connective {
    Neg,
    And,
    Or,
    Implies,
    Iff,
}

impl Connective {
    pub const ALL: [Connective; 5] = [
        Connective::Neg,
        Connective::And,
        Connective::Or,
        Connective::Implies,
        Connective::Iff,
    ];

    pub fn arity(self) -> usize {
        match self {
            Connective::Neg => 1,
            _ => 2,
        }
    }

    /// The binary form, or `None` for negation.
    pub fn binary(self) -> Option<BinaryConnective> {
        match self {
            Connective::Neg => None,
            Connective::And => Some(BinaryConnective::And),
            Connective::Or => Some(BinaryConnective::Or),
            Connective::Implies => Some(BinaryConnective::Implies),
            Connective::Iff => Some(BinaryConnective::Iff),
        }
    }
}

impl From<BinaryConnective> for Connective {
    fn from(c: BinaryConnective) -> Connective {
        match c {
            BinaryConnective::And => Connective::And,
            BinaryConnective::Or => Connective::Or,
            BinaryConnective::Implies => Connective::Implies,
            BinaryConnective::Iff => Connective::Iff,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExprError {
    #[error("empty expression")]
    Empty,
}

/// A nonempty finite sequence of symbols.
///
/// Equality is element-wise. Emptiness is rejected at construction, so
/// every `Expression` in circulation is nonempty.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Expression(Vec<Symbol>);

impl Expression {
    pub fn new(symbols: Vec<Symbol>) -> Result<Expression, ExprError> {
        if symbols.is_empty() {
            return Err(ExprError::Empty);
        }
        Ok(Expression(symbols))
    }

    /// The one-symbol expression `A<index>`.
    pub fn sentence(index: u64) -> Expression {
        Expression(vec![Symbol::sentence(index)])
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// `Some(n)` when the expression is the single sentence symbol `A<n>`.
    pub fn as_sentence_symbol(&self) -> Option<u64> {
        match self.0.as_slice() {
            [Symbol::Sentence(n)] => Some(*n),
            _ => None,
        }
    }

    /// Indices of every sentence symbol occurring in the expression.
    pub fn sentence_indices(&self) -> impl Iterator<Item = u64> + '_ {
        self.0.iter().filter_map(|sym| match sym {
            Symbol::Sentence(n) => Some(*n),
            _ => None,
        })
    }
}

impl fmt::Display for Expression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for sym in &self.0 {
            write!(f, "{sym}")?;
        }
        Ok(())
    }
}

/// `(!a)`: wraps an expression in negation.
pub fn build_neg(a: &Expression) -> Expression {
    let mut symbols = Vec::with_capacity(a.len() + 3);
    symbols.push(Symbol::LParen);
    symbols.push(Symbol::Neg);
    symbols.extend_from_slice(a.symbols());
    symbols.push(Symbol::RParen);
    Expression(symbols)
}

/// `(a c b)`: joins two expressions with a binary connective.
pub fn build_binary(c: BinaryConnective, a: &Expression, b: &Expression) -> Expression {
    let mut symbols = Vec::with_capacity(a.len() + b.len() + 3);
    symbols.push(Symbol::LParen);
    symbols.extend_from_slice(a.symbols());
    symbols.push(c.symbol());
    symbols.extend_from_slice(b.symbols());
    symbols.push(Symbol::RParen);
    Expression(symbols)
}
