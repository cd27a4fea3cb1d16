//! JSON and DOT renderings of built algebras and reports.
//!
//! JSON field order is fixed by the structs below, so output is
//! byte-deterministic for a given input.

use std::fmt::Write as _;

use serde::Serialize;

use crate::joinmeet::LatticeAnswer;
use crate::pialgebra::{ClassId, PiAlgebra};
use crate::scalar::Coord;
use crate::structure::StructureReport;

#[derive(Serialize)]
struct ClassJson {
    id: ClassId,
    label: String,
    canonical: Vec<i64>,
    members: Vec<Vec<i64>>,
}

#[derive(Serialize)]
struct PiJson<'a> {
    outcomes: &'a [String],
    zero: ClassId,
    unit: ClassId,
    classes: Vec<ClassJson>,
    oplus: Vec<[ClassId; 3]>,
    leq: Vec<Vec<bool>>,
}

fn coords<S: Coord>(v: &crate::vector::IntVec<S>) -> Vec<i64> {
    v.iter().map(|c| c.as_i64()).collect()
}

/// `{outcomes, zero, unit, classes:[{id, label, canonical, members}], oplus:[[i,j,k]], leq}`.
pub fn pi_json<S: Coord>(alg: &PiAlgebra<S>) -> String {
    let classes = alg
        .ids()
        .map(|p| ClassJson {
            id: p,
            label: alg.label(p),
            canonical: coords(&alg.class(p).canonical),
            members: alg.members(p).map(|e| coords(e.vec())).collect(),
        })
        .collect();
    let oplus = alg
        .ids()
        .flat_map(|p| alg.ids().filter_map(move |q| alg.oplus(p, q).map(|r| [p, q, r])))
        .collect();
    let leq = alg.ids().map(|p| alg.ids().map(|q| alg.leq(p, q)).collect()).collect();
    let doc = PiJson {
        outcomes: alg.table().outcomes().names(),
        zero: alg.zero(),
        unit: alg.unit(),
        classes,
        oplus,
        leq,
    };
    serde_json::to_string_pretty(&doc).expect("serializable")
}

/// Hasse diagram in Graphviz DOT, drawn bottom to top.
pub fn hasse_dot<S: Coord>(alg: &PiAlgebra<S>) -> String {
    let mut out = String::from("digraph hasse {\n  rankdir=BT;\n  node [shape=plaintext];\n");
    for p in alg.ids() {
        let _ = writeln!(out, "  n{p} [label=\"{}\"];", alg.label(p));
    }
    for (p, q) in alg.hasse_covers() {
        let _ = writeln!(out, "  n{p} -> n{q} [arrowhead=none];");
    }
    out.push_str("}\n");
    out
}

#[derive(Serialize)]
struct LabelledReport<'a> {
    labels: Vec<String>,
    report: &'a StructureReport,
}

pub fn report_json<S: Coord>(alg: &PiAlgebra<S>, report: &StructureReport) -> String {
    let doc = LabelledReport { labels: alg.ids().map(|p| alg.label(p)).collect(), report };
    serde_json::to_string_pretty(&doc).expect("serializable")
}

#[derive(Serialize)]
struct AnswerJson<'a> {
    op: &'a str,
    exists: bool,
    value: Option<String>,
    witness: Option<[usize; 4]>,
    candidates: Vec<String>,
    extremal: Vec<String>,
}

/// A join or meet answer with class labels; witness test indices are 1-based.
pub fn answer_json<S: Coord>(alg: &PiAlgebra<S>, op: &str, ans: &LatticeAnswer) -> String {
    let names = |ids: &[ClassId]| ids.iter().map(|&p| alg.label(p)).collect();
    let doc = AnswerJson {
        op,
        exists: ans.exists,
        value: ans.value.map(|p| alg.label(p)),
        witness: ans.witness.map(|w| w.tests.map(|i| i + 1)),
        candidates: names(&ans.candidates),
        extremal: names(&ans.extremal),
    };
    serde_json::to_string_pretty(&doc).expect("serializable")
}
