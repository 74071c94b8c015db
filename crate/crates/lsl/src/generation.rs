//! Bounded closure of a base set under n-ary operations, freeness
//! auditing, and a provenance-driven fold.
//!
//! The closure of a base set under operations is infinite in the cases of
//! interest, so [`generate`] computes depth-bounded stages instead: stage 0
//! is the base, stage d+1 adds every operation applied to stage-d
//! elements, and an element cap guards against blowup. Each element
//! records the first derivation that produced it; [`fold`] assigns values
//! along those derivations, and [`check_free`] audits the stage for
//! injectivity and range-disjointness of the operations.
//!
//! [`lsl_system`] instantiates the machinery for sentential logic: the
//! universe is expressions, the base is a set of sentence symbols, and the
//! operations are the five formula builders.

use std::collections::BTreeSet;
use std::collections::HashMap;
use std::fmt::Display;
use std::hash::Hash;

use thiserror::Error;

use crate::evaluation::{connective_table, TruthAssignment, TruthValue};
use crate::expr::{build_binary, build_neg, BinaryConnective, Connective, Expression};

/// The function backing a [`GenOp`], taking its arguments by reference.
pub type OpFn<T> = Box<dyn Fn(&[&T]) -> T + Send + Sync>;

/// An n-ary operation over a universe `T`. Arity 0 denotes a constant.
pub struct GenOp<T> {
    name: String,
    arity: usize,
    apply: OpFn<T>,
}

impl<T> GenOp<T> {
    pub fn new(
        name: impl Into<String>,
        arity: usize,
        apply: impl Fn(&[&T]) -> T + Send + Sync + 'static,
    ) -> GenOp<T> {
        GenOp {
            name: name.into(),
            arity,
            apply: Box::new(apply),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn apply(&self, args: &[&T]) -> T {
        debug_assert_eq!(args.len(), self.arity);
        (self.apply)(args)
    }
}

impl<T> std::fmt::Debug for GenOp<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("GenOp")
            .field("name", &self.name)
            .field("arity", &self.arity)
            .finish()
    }
}

/// A base set together with a family of operations over one universe.
#[derive(Debug)]
pub struct GeneratorSystem<T> {
    base: Vec<T>,
    ops: Vec<GenOp<T>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("base set is empty")]
    EmptyBase,
    #[error("duplicate operation name {0:?}")]
    DuplicateOpName(String),
    #[error("element cap {cap} exceeded while building stage {stage}; {reached} stage(s) completed")]
    CapExceeded {
        cap: usize,
        stage: usize,
        reached: usize,
    },
    #[error("element {0:?} is not in the stage")]
    ElementNotInStage(String),
    #[error("no rule for operation {0:?}")]
    MissingRule(String),
    #[error("no base value for element {0:?}")]
    MissingBaseValue(String),
    #[error("element {element:?} (position {position}) is not derivable from earlier elements")]
    Underivable { position: usize, element: String },
}

impl<T: Clone + Eq + Hash> GeneratorSystem<T> {
    /// Duplicate base entries are dropped; operation names must be
    /// distinct.
    pub fn new(base: Vec<T>, ops: Vec<GenOp<T>>) -> Result<GeneratorSystem<T>, GenError> {
        let mut names = std::collections::HashSet::new();
        for op in &ops {
            if !names.insert(op.name.clone()) {
                return Err(GenError::DuplicateOpName(op.name.clone()));
            }
        }
        let mut seen = std::collections::HashSet::new();
        let base = base.into_iter().filter(|b| seen.insert(b.clone())).collect();
        Ok(GeneratorSystem { base, ops })
    }

    pub fn base(&self) -> &[T] {
        &self.base
    }

    pub fn ops(&self) -> &[GenOp<T>] {
        &self.ops
    }
}

/// How an element first entered a stage.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Provenance {
    /// A base element.
    Base,
    /// Produced by the op (index into the system's op list) applied to the
    /// elements at the given indices. Argument indices are always smaller
    /// than the element's own index.
    Built { op: usize, args: Vec<usize> },
}

/// A depth-bounded approximation of the generated set.
///
/// Elements are stored in insertion order; each has exactly one
/// [`Provenance`], the first derivation discovered.
#[derive(Debug, Clone)]
pub struct GeneratedStage<T> {
    depth: usize,
    elements: Vec<T>,
    index: HashMap<T, usize>,
    provenance: Vec<Provenance>,
    op_names: Vec<String>,
    /// `stage_ends[d]` is the element count after completing stage `d`.
    stage_ends: Vec<usize>,
}

impl<T: Clone + Eq + Hash> GeneratedStage<T> {
    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[T] {
        &self.elements
    }

    pub fn contains(&self, x: &T) -> bool {
        self.index.contains_key(x)
    }

    pub fn index_of(&self, x: &T) -> Option<usize> {
        self.index.get(x).copied()
    }

    pub fn provenance(&self, index: usize) -> &Provenance {
        &self.provenance[index]
    }

    pub fn op_name(&self, op: usize) -> &str {
        &self.op_names[op]
    }

    /// Element counts after each completed stage, base first.
    pub fn stage_ends(&self) -> &[usize] {
        &self.stage_ends
    }

    /// The elements first added at stage `d`.
    pub fn added_at(&self, d: usize) -> &[T] {
        let start = if d == 0 { 0 } else { self.stage_ends[d - 1] };
        &self.elements[start..self.stage_ends[d]]
    }

    fn insert(&mut self, element: T, provenance: Provenance) -> bool {
        if self.index.contains_key(&element) {
            return false;
        }
        self.index.insert(element.clone(), self.elements.len());
        self.elements.push(element);
        self.provenance.push(provenance);
        true
    }

    /// A stage containing the base plus the given elements, each derived
    /// by searching the operations over the elements already present. The
    /// targets must therefore be listed derivation-first, like the entries
    /// of a construction sequence.
    pub fn covering(sys: &GeneratorSystem<T>, targets: &[T]) -> Result<GeneratedStage<T>, GenError>
    where
        T: Display,
    {
        let mut stage = empty_stage(sys);
        for b in &sys.base {
            stage.insert(b.clone(), Provenance::Base);
        }
        stage.stage_ends.push(stage.len());
        for (position, target) in targets.iter().enumerate() {
            if stage.contains(target) {
                continue;
            }
            let found = find_derivation(sys, &stage.elements, target);
            match found {
                Some((op, args)) => {
                    stage.insert(target.clone(), Provenance::Built { op, args });
                }
                None => {
                    return Err(GenError::Underivable {
                        position,
                        element: target.to_string(),
                    })
                }
            }
        }
        stage.depth = 1;
        stage.stage_ends.push(stage.len());
        Ok(stage)
    }
}

fn empty_stage<T>(sys: &GeneratorSystem<T>) -> GeneratedStage<T> {
    GeneratedStage {
        depth: 0,
        elements: Vec::new(),
        index: HashMap::new(),
        provenance: Vec::new(),
        op_names: sys.ops.iter().map(|op| op.name.clone()).collect(),
        stage_ends: Vec::new(),
    }
}

/// First `(op, args)` pair over `elements` producing `target`, scanning
/// ops in declaration order and argument tuples in insertion order.
fn find_derivation<T: Clone + Eq + Hash>(
    sys: &GeneratorSystem<T>,
    elements: &[T],
    target: &T,
) -> Option<(usize, Vec<usize>)> {
    for (op_idx, op) in sys.ops.iter().enumerate() {
        let mut found = None;
        visit_tuples(elements.len(), op.arity, |tuple| {
            let args: Vec<&T> = tuple.iter().map(|&i| &elements[i]).collect();
            if op.apply(&args) == *target {
                found = Some(tuple.to_vec());
                false
            } else {
                true
            }
        });
        if let Some(args) = found {
            return Some((op_idx, args));
        }
    }
    None
}

/// Calls `f` on every tuple in `0..radix` of the given length, in
/// lexicographic order, until `f` returns `false`. Returns `false` if the
/// visit was cut short.
fn visit_tuples(radix: usize, arity: usize, mut f: impl FnMut(&[usize]) -> bool) -> bool {
    if arity == 0 {
        return f(&[]);
    }
    if radix == 0 {
        return true;
    }
    let mut tuple = vec![0usize; arity];
    loop {
        if !f(&tuple) {
            return false;
        }
        // Odometer increment, last position fastest.
        let mut pos = arity;
        loop {
            if pos == 0 {
                return true;
            }
            pos -= 1;
            tuple[pos] += 1;
            if tuple[pos] < radix {
                break;
            }
            tuple[pos] = 0;
        }
    }
}

/// Computes stages 0..=depth of the closure of the base under the
/// system's operations, recording first-found provenance. Fails once the
/// element count exceeds `cap`.
pub fn generate<T: Clone + Eq + Hash>(
    sys: &GeneratorSystem<T>,
    depth: usize,
    cap: usize,
) -> Result<GeneratedStage<T>, GenError> {
    let mut stage = empty_stage(sys);
    for b in &sys.base {
        stage.insert(b.clone(), Provenance::Base);
        if stage.len() > cap {
            return Err(GenError::CapExceeded {
                cap,
                stage: 0,
                reached: 0,
            });
        }
    }
    stage.stage_ends.push(stage.len());
    for d in 1..=depth {
        let snapshot = stage.len();
        for (op_idx, op) in sys.ops.iter().enumerate() {
            let mut overflow = false;
            visit_tuples(snapshot, op.arity, |tuple| {
                let args: Vec<&T> = tuple.iter().map(|&i| &stage.elements[i]).collect();
                let result = op.apply(&args);
                stage.insert(
                    result,
                    Provenance::Built {
                        op: op_idx,
                        args: tuple.to_vec(),
                    },
                );
                if stage.len() > cap {
                    overflow = true;
                    return false;
                }
                true
            });
            if overflow {
                return Err(GenError::CapExceeded {
                    cap,
                    stage: d,
                    reached: d - 1,
                });
            }
        }
        stage.depth = d;
        stage.stage_ends.push(stage.len());
    }
    Ok(stage)
}

/// Outcome of [`check_closed`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Closure<T> {
    /// Every operation over the candidate whose result stays inside the
    /// stage lands back in the candidate.
    Closed,
    /// One concrete escape.
    Witness {
        op: String,
        args: Vec<T>,
        result: T,
    },
}

/// Checks whether `candidate` (a subset of the stage's elements) is closed
/// under the system's operations, restricted to results that lie within
/// the stage. Results outside the stage belong to deeper stages and are
/// ignored, which keeps the check finite.
pub fn check_closed<T: Clone + Eq + Hash>(
    candidate: &[T],
    sys: &GeneratorSystem<T>,
    stage: &GeneratedStage<T>,
) -> Closure<T> {
    let member: std::collections::HashSet<&T> = candidate.iter().collect();
    for op in &sys.ops {
        let mut witness = None;
        visit_tuples(candidate.len(), op.arity, |tuple| {
            let args: Vec<&T> = tuple.iter().map(|&i| &candidate[i]).collect();
            let result = op.apply(&args);
            if stage.contains(&result) && !member.contains(&result) {
                witness = Some(Closure::Witness {
                    op: op.name.clone(),
                    args: args.into_iter().cloned().collect(),
                    result,
                });
                return false;
            }
            true
        });
        if let Some(w) = witness {
            return w;
        }
    }
    Closure::Closed
}

/// Two distinct argument tuples with the same result under one op.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct F1Violation<T> {
    pub op: String,
    pub args_a: Vec<T>,
    pub args_b: Vec<T>,
    pub result: T,
}

/// An op result that is a base element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct F2Violation<T> {
    pub op: String,
    pub args: Vec<T>,
    pub result: T,
}

/// Two different ops with a common result.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct F3Violation<T> {
    pub op_a: String,
    pub args_a: Vec<T>,
    pub op_b: String,
    pub args_b: Vec<T>,
    pub result: T,
}

/// The audit result of [`check_free`]: empty lists mean the stage shows
/// the system free so far.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FreeReport<T> {
    pub f1: Vec<F1Violation<T>>,
    pub f2: Vec<F2Violation<T>>,
    pub f3: Vec<F3Violation<T>>,
}

impl<T> FreeReport<T> {
    pub fn is_free(&self) -> bool {
        self.f1.is_empty() && self.f2.is_empty() && self.f3.is_empty()
    }
}

/// Audits the stage against the three freeness conditions: operations
/// one-to-one (F1), ranges disjoint from the base (F2), and ranges
/// pairwise disjoint (F3).
///
/// Every op is applied to every argument tuple over the stage's elements;
/// as in [`check_closed`], applications whose result falls outside the
/// stage are part of a deeper stage and are not inspected.
pub fn check_free<T: Clone + Eq + Hash>(
    stage: &GeneratedStage<T>,
    sys: &GeneratorSystem<T>,
) -> FreeReport<T> {
    let mut report = FreeReport {
        f1: Vec::new(),
        f2: Vec::new(),
        f3: Vec::new(),
    };
    let n = stage.elements.len();
    for (op_idx, op) in sys.ops.iter().enumerate() {
        // First tuple seen (by this op) for each in-stage result.
        let mut first_tuple: HashMap<usize, Vec<usize>> = HashMap::new();
        visit_tuples(n, op.arity, |tuple| {
            let args: Vec<&T> = tuple.iter().map(|&i| &stage.elements[i]).collect();
            let result = op.apply(&args);
            let Some(&r) = stage.index.get(&result) else {
                return true;
            };
            match &stage.provenance[r] {
                Provenance::Base => report.f2.push(F2Violation {
                    op: op.name.clone(),
                    args: clone_args(stage, tuple),
                    result: stage.elements[r].clone(),
                }),
                Provenance::Built { op: p_op, args: p_args } if *p_op != op_idx => {
                    report.f3.push(F3Violation {
                        op_a: op.name.clone(),
                        args_a: clone_args(stage, tuple),
                        op_b: stage.op_names[*p_op].clone(),
                        args_b: clone_args(stage, p_args),
                        result: stage.elements[r].clone(),
                    })
                }
                _ => {}
            }
            match first_tuple.get(&r) {
                None => {
                    first_tuple.insert(r, tuple.to_vec());
                }
                Some(prev) => report.f1.push(F1Violation {
                    op: op.name.clone(),
                    args_a: clone_args(stage, prev),
                    args_b: clone_args(stage, tuple),
                    result: stage.elements[r].clone(),
                }),
            }
            true
        });
    }
    report
}

fn clone_args<T: Clone + Eq + Hash>(stage: &GeneratedStage<T>, tuple: &[usize]) -> Vec<T> {
    tuple.iter().map(|&i| stage.elements[i].clone()).collect()
}

/// A per-operation value rule for [`fold`].
pub type FoldRule<V> = Box<dyn Fn(&[V]) -> V + Send + Sync>;

/// Assigns a value to a stage element by walking its provenance: base
/// elements take their value from `base_values`, built elements apply the
/// rule named after the op that built them. Memoized across the element's
/// derivation.
pub fn fold<T, V>(
    x: &T,
    stage: &GeneratedStage<T>,
    base_values: &HashMap<T, V>,
    rules: &HashMap<String, FoldRule<V>>,
) -> Result<V, GenError>
where
    T: Clone + Eq + Hash + Display,
    V: Clone,
{
    let start = stage
        .index_of(x)
        .ok_or_else(|| GenError::ElementNotInStage(x.to_string()))?;
    let mut memo: Vec<Option<V>> = vec![None; stage.elements.len()];
    fold_at(start, stage, base_values, rules, &mut memo)
}

fn fold_at<T, V>(
    index: usize,
    stage: &GeneratedStage<T>,
    base_values: &HashMap<T, V>,
    rules: &HashMap<String, FoldRule<V>>,
    memo: &mut Vec<Option<V>>,
) -> Result<V, GenError>
where
    T: Clone + Eq + Hash + Display,
    V: Clone,
{
    if let Some(v) = &memo[index] {
        return Ok(v.clone());
    }
    let value = match &stage.provenance[index] {
        Provenance::Base => {
            let element = &stage.elements[index];
            base_values
                .get(element)
                .cloned()
                .ok_or_else(|| GenError::MissingBaseValue(element.to_string()))?
        }
        Provenance::Built { op, args } => {
            let name = &stage.op_names[*op];
            let rule = rules
                .get(name)
                .ok_or_else(|| GenError::MissingRule(name.clone()))?;
            let mut values = Vec::with_capacity(args.len());
            for &a in args {
                values.push(fold_at(a, stage, base_values, rules, memo)?);
            }
            rule(&values)
        }
    };
    memo[index] = Some(value.clone());
    Ok(value)
}

/// The sentential-logic instance: the base is the one-symbol expressions
/// of `s`, the operations are the five formula builders.
pub fn lsl_system(s: &BTreeSet<u64>) -> Result<GeneratorSystem<Expression>, GenError> {
    if s.is_empty() {
        return Err(GenError::EmptyBase);
    }
    let base = s.iter().map(|&n| Expression::sentence(n)).collect();
    let mut ops = vec![GenOp::new("neg", 1, |args: &[&Expression]| {
        build_neg(args[0])
    })];
    for c in BinaryConnective::ALL {
        ops.push(GenOp::new(
            binary_op_name(c),
            2,
            move |args: &[&Expression]| build_binary(c, args[0], args[1]),
        ));
    }
    GeneratorSystem::new(base, ops)
}

fn binary_op_name(c: BinaryConnective) -> &'static str {
    match c {
        BinaryConnective::And => "and",
        BinaryConnective::Or => "or",
        BinaryConnective::Implies => "implies",
        BinaryConnective::Iff => "iff",
    }
}

/// The truth-table rules for the five builders, keyed by the op names
/// used in [`lsl_system`].
pub fn truth_rules() -> HashMap<String, FoldRule<TruthValue>> {
    let mut rules: HashMap<String, FoldRule<TruthValue>> = HashMap::new();
    rules.insert(
        "neg".to_string(),
        Box::new(|vals: &[TruthValue]| {
            connective_table(Connective::Neg, vals[0], None).expect("arity matches")
        }),
    );
    for c in BinaryConnective::ALL {
        rules.insert(
            binary_op_name(c).to_string(),
            Box::new(move |vals: &[TruthValue]| {
                connective_table(c.into(), vals[0], Some(vals[1])).expect("arity matches")
            }),
        );
    }
    rules
}

/// The base map for [`fold`] induced by a truth assignment: each sentence
/// symbol in the assignment's domain maps to its value.
pub fn assignment_base_values(v: &TruthAssignment) -> HashMap<Expression, TruthValue> {
    v.iter()
        .map(|(index, value)| (Expression::sentence(index), value))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::evaluation::recursive_eval;
    use crate::parser::{parse, parse_str};

    fn lsl_stage(s: &[u64], depth: usize) -> GeneratedStage<Expression> {
        let sys = lsl_system(&s.iter().copied().collect()).unwrap();
        generate(&sys, depth, 1_000_000).unwrap()
    }

    #[test]
    fn stage_zero_is_the_base() {
        let stage = lsl_stage(&[1, 2], 0);
        let texts: Vec<String> = stage.elements().iter().map(|e| e.to_string()).collect();
        assert_eq!(texts, ["A1", "A2"]);
    }

    #[test]
    fn stage_one_counts() {
        // One symbol: the atom, its negation, and four binary squares.
        assert_eq!(lsl_stage(&[1], 1).len(), 6);
        // Two symbols: 2 atoms + 2 negations + 4 ops over 2x2 pairs.
        assert_eq!(lsl_stage(&[1, 2], 1).len(), 20);
    }

    #[test]
    fn stages_are_monotone_and_sound() {
        let stage = lsl_stage(&[1, 2], 2);
        let ends = stage.stage_ends();
        assert!(ends.windows(2).all(|w| w[0] <= w[1]));
        // Base is contained in every stage.
        assert!(stage.contains(&Expression::sentence(1)));
        // Every element is a wff over S.
        let s = BTreeSet::from([1, 2]);
        for e in stage.elements() {
            let w = parse(e).unwrap();
            assert!(w.sentence_symbols().is_subset(&s));
        }
    }

    #[test]
    fn cap_exceeded_reports_the_stage_reached() {
        let sys = lsl_system(&BTreeSet::from([1])).unwrap();
        let err = generate(&sys, 2, 10).unwrap_err();
        assert_eq!(
            err,
            GenError::CapExceeded {
                cap: 10,
                stage: 2,
                reached: 1
            }
        );
    }

    #[test]
    fn closed_check_finds_witnesses() {
        let sys = lsl_system(&BTreeSet::from([1])).unwrap();
        let stage = generate(&sys, 1, 1000).unwrap();

        // The whole stage is closed within itself.
        assert_eq!(
            check_closed(stage.elements(), &sys, &stage),
            Closure::Closed
        );

        // The base alone escapes through negation.
        let base = vec![Expression::sentence(1)];
        let witness = check_closed(&base, &sys, &stage);
        assert_eq!(
            witness,
            Closure::Witness {
                op: "neg".to_string(),
                args: vec![Expression::sentence(1)],
                result: parse_str("(!A1)").unwrap().render(),
            }
        );

        // Removing one element reopens the set: the minimality probe.
        let neg_a1 = parse_str("(!A1)").unwrap().render();
        let smaller: Vec<Expression> = stage
            .elements()
            .iter()
            .filter(|e| **e != neg_a1)
            .cloned()
            .collect();
        match check_closed(&smaller, &sys, &stage) {
            Closure::Witness { op, result, .. } => {
                assert_eq!(op, "neg");
                assert_eq!(result, neg_a1);
            }
            Closure::Closed => panic!("expected a witness"),
        }
    }

    #[test]
    fn lsl_stages_audit_free() {
        let sys = lsl_system(&BTreeSet::from([1, 2])).unwrap();
        let stage = generate(&sys, 1, 1000).unwrap();
        assert!(check_free(&stage, &sys).is_free());
    }

    #[test]
    #[allow(clippy::erasing_op)] // landing back in the base is the point
    fn f2_counterexample_constant_zero() {
        let sys = GeneratorSystem::new(
            vec![0i64],
            vec![GenOp::new("times-zero", 1, |args: &[&i64]| args[0] * 0)],
        )
        .unwrap();
        let stage = generate(&sys, 1, 100).unwrap();
        let report = check_free(&stage, &sys);
        assert_eq!(report.f2.len(), 1);
        assert_eq!(report.f2[0].result, 0);
        assert!(report.f1.is_empty() && report.f3.is_empty());
    }

    #[test]
    fn f3_counterexample_succ_vs_double() {
        let sys = GeneratorSystem::new(
            vec![1i64],
            vec![
                GenOp::new("succ", 1, |args: &[&i64]| args[0] + 1),
                GenOp::new("double", 1, |args: &[&i64]| args[0] * 2),
            ],
        )
        .unwrap();
        let stage = generate(&sys, 2, 100).unwrap();
        let report = check_free(&stage, &sys);
        assert!(report
            .f3
            .iter()
            .any(|v| v.result == 2), "1+1 and 2*1 both give 2: {report:?}");
    }

    #[test]
    fn fold_base_element_uses_the_base_map() {
        let sys = GeneratorSystem::new(
            vec!["z".to_string()],
            vec![GenOp::new("s", 1, |args: &[&String]| format!("s({})", args[0]))],
        )
        .unwrap();
        let stage = generate(&sys, 2, 100).unwrap();
        let base_values = HashMap::from([("z".to_string(), 0i64)]);
        let mut rules: HashMap<String, FoldRule<i64>> = HashMap::new();
        rules.insert("s".to_string(), Box::new(|vals: &[i64]| vals[0] + 1));

        assert_eq!(fold(&"z".to_string(), &stage, &base_values, &rules), Ok(0));
        assert_eq!(
            fold(&"s(s(z))".to_string(), &stage, &base_values, &rules),
            Ok(2)
        );
        assert_eq!(
            fold(&"s(s(s(z)))".to_string(), &stage, &base_values, &rules),
            Err(GenError::ElementNotInStage("s(s(s(z)))".to_string()))
        );
    }

    #[test]
    fn fold_on_a_non_free_system_follows_first_provenance() {
        // 2 arises both as succ(1) and double(1); succ is declared first,
        // so its derivation is the one recorded and folded. The audit
        // flags the system, so no uniqueness claim is being made.
        let sys = GeneratorSystem::new(
            vec![1i64],
            vec![
                GenOp::new("succ", 1, |args: &[&i64]| args[0] + 1),
                GenOp::new("double", 1, |args: &[&i64]| args[0] * 2),
            ],
        )
        .unwrap();
        let stage = generate(&sys, 1, 100).unwrap();
        assert!(!check_free(&stage, &sys).is_free());

        let base_values = HashMap::from([(1i64, "1".to_string())]);
        let mut rules: HashMap<String, FoldRule<String>> = HashMap::new();
        rules.insert(
            "succ".to_string(),
            Box::new(|vals: &[String]| format!("s({})", vals[0])),
        );
        rules.insert(
            "double".to_string(),
            Box::new(|vals: &[String]| format!("d({})", vals[0])),
        );
        assert_eq!(
            fold(&2i64, &stage, &base_values, &rules),
            Ok("s(1)".to_string())
        );
    }

    #[test]
    fn fold_reports_missing_rules() {
        let sys = lsl_system(&BTreeSet::from([1])).unwrap();
        let stage = generate(&sys, 1, 100).unwrap();
        let v = TruthAssignment::from_pairs([(1, TruthValue::True)]);
        let empty_rules: HashMap<String, FoldRule<TruthValue>> = HashMap::new();
        assert_eq!(
            fold(
                &parse_str("(!A1)").unwrap().render(),
                &stage,
                &assignment_base_values(&v),
                &empty_rules
            ),
            Err(GenError::MissingRule("neg".to_string()))
        );
    }

    #[test]
    fn fold_worked_example_over_a_covering_stage() {
        let sys = lsl_system(&BTreeSet::from([1, 2, 3])).unwrap();
        let steps: Vec<Expression> = ["(!A2)", "(A3|(!A2))", "((A3|(!A2))<->A1)"]
            .iter()
            .map(|t| crate::parser::tokenize(t).unwrap())
            .collect();
        let stage = GeneratedStage::covering(&sys, &steps).unwrap();
        let v = TruthAssignment::from_pairs([
            (1, TruthValue::False),
            (2, TruthValue::True),
            (3, TruthValue::False),
        ]);
        let value = fold(
            &steps[2],
            &stage,
            &assignment_base_values(&v),
            &truth_rules(),
        )
        .unwrap();
        assert_eq!(value, TruthValue::True);
    }

    #[test]
    fn covering_rejects_underivable_targets() {
        let sys = lsl_system(&BTreeSet::from([1])).unwrap();
        // (!A2) needs A2, which is neither base nor derivable.
        let target = crate::parser::tokenize("(!A2)").unwrap();
        let err = GeneratedStage::covering(&sys, std::slice::from_ref(&target)).unwrap_err();
        assert!(matches!(err, GenError::Underivable { position: 0, .. }));
    }

    #[test]
    fn fold_agrees_with_recursive_eval_on_stage_one() {
        let s = BTreeSet::from([1, 2]);
        let sys = lsl_system(&s).unwrap();
        let stage = generate(&sys, 1, 1000).unwrap();
        let rules = truth_rules();
        for v in TruthAssignment::enumerate(&s) {
            let base_values = assignment_base_values(&v);
            for e in stage.elements() {
                let w = parse(e).unwrap();
                assert_eq!(
                    fold(e, &stage, &base_values, &rules).unwrap(),
                    recursive_eval(&w, &v).unwrap()
                );
            }
        }
    }

    #[test]
    fn generated_stage_contains_nested_formula_at_depth_two() {
        let stage = lsl_stage(&[1, 2], 2);
        let target = parse_str("((A1&A2)|(!A1))").unwrap().render();
        assert!(stage.contains(&target));
    }

    #[test]
    fn duplicate_op_names_rejected() {
        let result = GeneratorSystem::new(
            vec![0i64],
            vec![
                GenOp::new("f", 1, |args: &[&i64]| *args[0]),
                GenOp::new("f", 1, |args: &[&i64]| *args[0]),
            ],
        );
        assert_eq!(result.unwrap_err(), GenError::DuplicateOpName("f".to_string()));
        assert_eq!(
            lsl_system(&BTreeSet::new()).unwrap_err(),
            GenError::EmptyBase
        );
    }
}
