//! Shared helpers for the integration and acceptance suites: exhaustive
//! formula enumeration, seeded random formulas, and token-level mutation.
//! These are oracles, so they deliberately avoid the library paths they
//! are used to check.
#![allow(dead_code)]

use std::collections::BTreeSet;
use std::collections::HashSet;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use lsl::{BinaryConnective, Expression, Symbol, TruthAssignment, TruthValue, Wff};

/// Every wff of node-height at most `depth` (atoms at height 0) over the
/// given sentence symbols, by brute enumeration.
pub fn enumerate_wffs(symbols: &[u64], depth: usize) -> Vec<Wff> {
    let mut all: Vec<Wff> = symbols.iter().map(|&n| Wff::Atom(n)).collect();
    let mut seen: HashSet<Wff> = all.iter().cloned().collect();
    for _ in 0..depth {
        let prev = all.clone();
        for w in &prev {
            let candidate = Wff::not(w.clone());
            if seen.insert(candidate.clone()) {
                all.push(candidate);
            }
        }
        for c in BinaryConnective::ALL {
            for l in &prev {
                for r in &prev {
                    let candidate = Wff::binary(c, l.clone(), r.clone());
                    if seen.insert(candidate.clone()) {
                        all.push(candidate);
                    }
                }
            }
        }
    }
    all
}

/// A random wff of node-height at most `depth` over the given symbols.
pub fn random_wff(rng: &mut ChaCha8Rng, symbols: &[u64], depth: usize) -> Wff {
    if depth == 0 || rng.random_range(0..5u8) == 0 {
        return Wff::Atom(symbols[rng.random_range(0..symbols.len())]);
    }
    if rng.random_range(0..3u8) == 0 {
        Wff::not(random_wff(rng, symbols, depth - 1))
    } else {
        let c = BinaryConnective::ALL[rng.random_range(0..4)];
        Wff::binary(
            c,
            random_wff(rng, symbols, depth - 1),
            random_wff(rng, symbols, depth - 1),
        )
    }
}

/// A random truth assignment with exactly the given domain.
pub fn random_assignment(rng: &mut ChaCha8Rng, symbols: &BTreeSet<u64>) -> TruthAssignment {
    TruthAssignment::from_pairs(
        symbols
            .iter()
            .map(|&s| (s, TruthValue::from_bool(rng.random_bool(0.5)))),
    )
}

fn random_symbol(rng: &mut ChaCha8Rng) -> Symbol {
    match rng.random_range(0..8u8) {
        0 => Symbol::LParen,
        1 => Symbol::RParen,
        2 => Symbol::Neg,
        3 => Symbol::And,
        4 => Symbol::Or,
        5 => Symbol::Implies,
        6 => Symbol::Iff,
        _ => Symbol::sentence(rng.random_range(1..=4)),
    }
}

/// One random token-level corruption: replace, delete, insert, or swap.
/// May return an empty token list.
pub fn mutate_tokens(rng: &mut ChaCha8Rng, e: &Expression) -> Vec<Symbol> {
    let mut tokens: Vec<Symbol> = e.symbols().to_vec();
    let n = tokens.len();
    match rng.random_range(0..4u8) {
        0 => {
            let i = rng.random_range(0..n);
            tokens[i] = random_symbol(rng);
        }
        1 => {
            let i = rng.random_range(0..n);
            tokens.remove(i);
        }
        2 => {
            let i = rng.random_range(0..=n);
            tokens.insert(i, random_symbol(rng));
        }
        _ => {
            let i = rng.random_range(0..n);
            let j = rng.random_range(0..n);
            tokens.swap(i, j);
        }
    }
    tokens
}

/// Truth-table row evaluation written from scratch, as a check against
/// the library's evaluators.
pub fn brute_eval(w: &Wff, assignment: &[(u64, bool)]) -> bool {
    match w {
        Wff::Atom(n) => {
            assignment
                .iter()
                .find(|(s, _)| s == n)
                .expect("assignment covers symbol")
                .1
        }
        Wff::Not(inner) => !brute_eval(inner, assignment),
        Wff::Binary(c, l, r) => {
            let a = brute_eval(l, assignment);
            let b = brute_eval(r, assignment);
            match c {
                BinaryConnective::And => a && b,
                BinaryConnective::Or => a || b,
                BinaryConnective::Implies => !a || b,
                BinaryConnective::Iff => a == b,
            }
        }
    }
}

/// Brute-force tautology check over all bitmask assignments.
pub fn brute_is_tautology(w: &Wff) -> bool {
    let symbols: Vec<u64> = w.sentence_symbols().into_iter().collect();
    let k = symbols.len();
    (0..(1u32 << k)).all(|mask| {
        let assignment: Vec<(u64, bool)> = symbols
            .iter()
            .enumerate()
            .map(|(j, &s)| (s, mask >> j & 1 == 1))
            .collect();
        brute_eval(w, &assignment)
    })
}
