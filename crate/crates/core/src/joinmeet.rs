//! Joins and meets in `Π(X)` from quadruples of tests.
//!
//! Every upper bound of `π(f), π(g)` sits above the class of some
//! [`ub_candidate`], and every candidate class is an upper bound, so the join
//! exists exactly when the candidate classes have a least element. Meets
//! are dual through [`lb_candidate`]. The brute-force [`oracle_join`] and
//! [`oracle_meet`] scan the order matrix instead and serve as the
//! independent check.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::etspace::{Event, TestTable};
use crate::pialgebra::{ClassId, PiAlgebra};
use crate::scalar::Coord;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundKind {
    Upper,
    Lower,
}

/// Indices `(f1, f2, f3, f4)` into the table's tests.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct BoundTuple {
    pub tests: [usize; 4],
    pub kind: BoundKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LatticeAnswer {
    pub exists: bool,
    pub value: Option<ClassId>,
    /// First tuple (by test indices) producing `value`; absent for oracle answers.
    pub witness: Option<BoundTuple>,
    /// Candidate classes, ascending. For the oracle: every upper (lower) bound.
    pub candidates: Vec<ClassId>,
    /// Minimal (for joins) or maximal (for meets) candidates.
    pub extremal: Vec<ClassId>,
}

fn quadruples(n: usize) -> impl Iterator<Item = [usize; 4]> {
    (0..n).flat_map(move |a| (0..n).flat_map(move |b| (0..n).flat_map(move |c| (0..n).map(move |d| [a, b, c, d]))))
}

/// All of `ub(f, g)`: `f <= f1`, `g <= f3`, `f - f1 + f2 <= f4`, `g - f3 + f4 <= f2`.
pub fn enumerate_ub<S: Coord>(table: &TestTable<S>, f: &Event<S>, g: &Event<S>) -> Vec<BoundTuple> {
    let t = |i: usize| table.test(i);
    let (f, g) = (f.vec(), g.vec());
    quadruples(table.num_tests())
        .filter(|&[a, b, c, d]| {
            f.leq(t(a))
                && g.leq(t(c))
                && (&(f - t(a)) + t(b)).leq(t(d))
                && (&(g - t(c)) + t(d)).leq(t(b))
        })
        .map(|tests| BoundTuple { tests, kind: BoundKind::Upper })
        .collect()
}

/// All of `lb(f, g)`: `f <= f2`, `g <= f4`, `f - f2 + f1 >= 0`, `g - f4 + f3 >= 0`.
pub fn enumerate_lb<S: Coord>(table: &TestTable<S>, f: &Event<S>, g: &Event<S>) -> Vec<BoundTuple> {
    let t = |i: usize| table.test(i);
    let (f, g) = (f.vec(), g.vec());
    quadruples(table.num_tests())
        .filter(|&[a, b, c, d]| {
            f.leq(t(b))
                && g.leq(t(d))
                && (&(f - t(b)) + t(a)).is_nonnegative()
                && (&(g - t(d)) + t(c)).is_nonnegative()
        })
        .map(|tests| BoundTuple { tests, kind: BoundKind::Lower })
        .collect()
}

/// `max(f - f1 + f2, g - f3 + f4, f_0)`, an event below `f2`.
pub fn ub_candidate<S: Coord>(table: &TestTable<S>, f: &Event<S>, g: &Event<S>, u: &BoundTuple) -> Event<S> {
    let t = |i: usize| table.test(u.tests[i]);
    let left = &(f.vec() - t(0)) + t(1);
    let right = &(g.vec() - t(2)) + t(3);
    let v = left.pointwise_max(&right).clamp_nonnegative();
    table.event(v).expect("upper candidate lies below f2")
}

/// `min(f - f2 + f1, g - f4 + f3)`, an event below `f1`.
pub fn lb_candidate<S: Coord>(table: &TestTable<S>, f: &Event<S>, g: &Event<S>, l: &BoundTuple) -> Event<S> {
    let t = |i: usize| table.test(l.tests[i]);
    let left = &(f.vec() - t(1)) + t(0);
    let right = &(g.vec() - t(3)) + t(2);
    table.event(left.pointwise_min(&right)).expect("lower candidate lies below f1")
}

/// Candidate classes with the first tuple producing each, in tuple order.
fn candidate_classes<S: Coord>(
    alg: &PiAlgebra<S>,
    f: &Event<S>,
    g: &Event<S>,
    kind: BoundKind,
) -> Vec<(BoundTuple, ClassId)> {
    let table = alg.table();
    match kind {
        BoundKind::Upper => enumerate_ub(table, f, g)
            .into_iter()
            .map(|u| (u, alg.class_of_event(&ub_candidate(table, f, g, &u))))
            .collect(),
        BoundKind::Lower => enumerate_lb(table, f, g)
            .into_iter()
            .map(|l| (l, alg.class_of_event(&lb_candidate(table, f, g, &l))))
            .collect(),
    }
}

/// `below(x, y)` is `x <= y` for joins and `x >= y` for meets.
fn oriented<S: Coord>(alg: &PiAlgebra<S>, kind: BoundKind) -> impl Fn(ClassId, ClassId) -> bool + '_ {
    move |x, y| match kind {
        BoundKind::Upper => alg.leq(x, y),
        BoundKind::Lower => alg.leq(y, x),
    }
}

fn extremal_of<S: Coord>(alg: &PiAlgebra<S>, set: &[ClassId], kind: BoundKind) -> Vec<ClassId> {
    let below = oriented(alg, kind);
    set.iter().copied().filter(|&x| !set.iter().any(|&y| y != x && below(y, x))).collect()
}

fn answer_from_candidates<S: Coord>(
    alg: &PiAlgebra<S>,
    tagged: Vec<(BoundTuple, ClassId)>,
    kind: BoundKind,
) -> LatticeAnswer {
    let mut first: BTreeMap<ClassId, BoundTuple> = BTreeMap::new();
    for (u, c) in tagged {
        first.entry(c).or_insert(u);
    }
    let candidates: Vec<ClassId> = first.keys().copied().collect();
    let below = oriented(alg, kind);
    let value = candidates.iter().copied().find(|&c| candidates.iter().all(|&d| below(c, d)));
    LatticeAnswer {
        exists: value.is_some(),
        value,
        witness: value.map(|c| first[&c]),
        extremal: extremal_of(alg, &candidates, kind),
        candidates,
    }
}

/// `π(f) ∨ π(g)` through the least candidate class.
pub fn join<S: Coord>(alg: &PiAlgebra<S>, f: &Event<S>, g: &Event<S>) -> LatticeAnswer {
    answer_from_candidates(alg, candidate_classes(alg, f, g, BoundKind::Upper), BoundKind::Upper)
}

/// `π(f) ∧ π(g)` through the greatest candidate class.
pub fn meet<S: Coord>(alg: &PiAlgebra<S>, f: &Event<S>, g: &Event<S>) -> LatticeAnswer {
    answer_from_candidates(alg, candidate_classes(alg, f, g, BoundKind::Lower), BoundKind::Lower)
}

pub fn join_classes<S: Coord>(alg: &PiAlgebra<S>, p: ClassId, q: ClassId) -> LatticeAnswer {
    join(alg, alg.representative(p), alg.representative(q))
}

pub fn meet_classes<S: Coord>(alg: &PiAlgebra<S>, p: ClassId, q: ClassId) -> LatticeAnswer {
    meet(alg, alg.representative(p), alg.representative(q))
}

/// Searches for a tuple whose candidate lies below (or above) the candidate
/// of every competing tuple.
fn literal<S: Coord>(alg: &PiAlgebra<S>, f: &Event<S>, g: &Event<S>, kind: BoundKind) -> LatticeAnswer {
    let tagged = candidate_classes(alg, f, g, kind);
    let below = oriented(alg, kind);
    let hit = tagged.iter().find(|(_, c)| tagged.iter().all(|(_, d)| below(*c, *d))).copied();
    let mut candidates: Vec<ClassId> = tagged.iter().map(|&(_, c)| c).collect();
    candidates.sort_unstable();
    candidates.dedup();
    LatticeAnswer {
        exists: hit.is_some(),
        value: hit.map(|(_, c)| c),
        witness: hit.map(|(u, _)| u),
        extremal: extremal_of(alg, &candidates, kind),
        candidates,
    }
}

/// Join decided tuple by tuple: the witness tuple must bound every competitor.
pub fn join_literal<S: Coord>(alg: &PiAlgebra<S>, f: &Event<S>, g: &Event<S>) -> LatticeAnswer {
    literal(alg, f, g, BoundKind::Upper)
}

/// Meet decided tuple by tuple, with competing tuples evaluated as `min(f - g2 + g1, g - g4 + g3)`.
pub fn meet_literal<S: Coord>(alg: &PiAlgebra<S>, f: &Event<S>, g: &Event<S>) -> LatticeAnswer {
    literal(alg, f, g, BoundKind::Lower)
}

fn oracle<S: Coord>(alg: &PiAlgebra<S>, p: ClassId, q: ClassId, kind: BoundKind) -> LatticeAnswer {
    let below = oriented(alg, kind);
    let bounds: Vec<ClassId> = alg.ids().filter(|&r| below(p, r) && below(q, r)).collect();
    let value = bounds.iter().copied().find(|&c| bounds.iter().all(|&d| below(c, d)));
    LatticeAnswer {
        exists: value.is_some(),
        value,
        witness: None,
        extremal: extremal_of(alg, &bounds, kind),
        candidates: bounds,
    }
}

/// Least upper bound found by scanning every class.
pub fn oracle_join<S: Coord>(alg: &PiAlgebra<S>, p: ClassId, q: ClassId) -> LatticeAnswer {
    oracle(alg, p, q, BoundKind::Upper)
}

/// Greatest lower bound found by scanning every class.
pub fn oracle_meet<S: Coord>(alg: &PiAlgebra<S>, p: ClassId, q: ClassId) -> LatticeAnswer {
    oracle(alg, p, q, BoundKind::Lower)
}

/// Joins of every pair `p <= q`, computed in parallel.
pub fn all_joins<S: Coord>(alg: &PiAlgebra<S>) -> BTreeMap<(ClassId, ClassId), LatticeAnswer> {
    all_pairs(alg, join_classes)
}

/// Meets of every pair `p <= q`, computed in parallel.
pub fn all_meets<S: Coord>(alg: &PiAlgebra<S>) -> BTreeMap<(ClassId, ClassId), LatticeAnswer> {
    all_pairs(alg, meet_classes)
}

fn all_pairs<S: Coord>(
    alg: &PiAlgebra<S>,
    op: fn(&PiAlgebra<S>, ClassId, ClassId) -> LatticeAnswer,
) -> BTreeMap<(ClassId, ClassId), LatticeAnswer> {
    let pairs: Vec<(ClassId, ClassId)> = alg.ids().flat_map(|p| (p..alg.len()).map(move |q| (p, q))).collect();
    pairs.into_par_iter().map(|(p, q)| ((p, q), op(alg, p, q))).collect()
}
