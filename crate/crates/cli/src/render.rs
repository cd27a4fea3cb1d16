//! Text renderings for the subcommands.

use std::fmt::Write as _;

use etkit::export;
use etkit::format::write_eta;
use etkit::search::SearchOutcome;
use etkit::structure::{HomogeneityWitness, LatticeCheck};
use etkit::{ClassId, EventSpace, LatticeAnswer, PiAlgebra, StructureReport, TestTable};
use serde_json::json;

use crate::Format;

fn vec_json(v: &etkit::IntVec) -> Vec<i64> {
    v.coords().to_vec()
}

fn labels(alg: &PiAlgebra, ids: &[ClassId]) -> String {
    if ids.is_empty() {
        return "none".into();
    }
    ids.iter().map(|&p| alg.label(p)).collect::<Vec<_>>().join(", ")
}

pub fn validated(table: &TestTable, format: Format) -> String {
    match format {
        Format::Json => pretty(&json!({
            "valid": true,
            "outcomes": table.outcomes().names(),
            "tests": table.tests().iter().map(vec_json).collect::<Vec<_>>(),
        })),
        _ => format!(
            "valid: {} tests over {} outcomes\n{}",
            table.num_tests(),
            table.num_outcomes(),
            write_eta(table)
        ),
    }
}

pub fn events(space: &EventSpace, format: Format) -> String {
    match format {
        Format::Json => pretty(&json!({
            "outcomes": space.table().outcomes().names(),
            "events": space.events().iter().map(|e| vec_json(e.vec())).collect::<Vec<_>>(),
        })),
        _ => {
            let mut out = String::new();
            for e in space.events() {
                let _ = writeln!(out, "{}", e.vec());
            }
            out
        }
    }
}

pub fn pi(alg: &PiAlgebra, as_json: bool) -> String {
    if as_json {
        return export::pi_json(alg);
    }
    let mut out = format!("{} classes\n", alg.len());
    for c in alg.classes() {
        let members = alg.members(c.id).map(|e| e.vec().to_string()).collect::<Vec<_>>();
        let _ = writeln!(out, "{:>3}  {:<8} {}", c.id, alg.label(c.id), members.join(" "));
    }
    out
}

pub fn hasse(alg: &PiAlgebra, format: Format) -> String {
    let covers = alg.hasse_covers();
    match format {
        Format::Dot => export::hasse_dot(alg),
        Format::Json => pretty(&json!({
            "covers": covers.iter().map(|&(p, q)| json!([alg.label(p), alg.label(q)])).collect::<Vec<_>>(),
        })),
        Format::Text => {
            let mut out = String::new();
            for (p, q) in covers {
                let _ = writeln!(out, "{} < {}", alg.label(p), alg.label(q));
            }
            out
        }
    }
}

/// Bound lists read best largest-first by canonical member.
fn by_canonical_desc(alg: &PiAlgebra, ids: &[ClassId]) -> Vec<ClassId> {
    let mut v = ids.to_vec();
    v.sort_by(|&p, &q| alg.class(q).canonical.cmp(&alg.class(p).canonical));
    v
}

pub fn answer(alg: &PiAlgebra, op: &str, ans: &LatticeAnswer) -> String {
    let mut out = String::new();
    match ans.value {
        Some(v) => {
            let _ = writeln!(out, "{op}: {}", alg.label(v));
            if let Some(w) = &ans.witness {
                let t = w.tests.map(|i| format!("t{}", i + 1));
                let _ = writeln!(out, "witness: ({})", t.join(","));
            }
        }
        None => {
            let bound = if op == "join" { "minimal upper" } else { "maximal lower" };
            let _ = writeln!(out, "no {op}; {bound} bounds: {}", labels(alg, &by_canonical_desc(alg, &ans.extremal)));
        }
    }
    let _ = writeln!(out, "candidates: {}", labels(alg, &by_canonical_desc(alg, &ans.candidates)));
    out
}

#[derive(Clone, Copy)]
pub struct Sections {
    pub homogeneous: bool,
    pub sharp: bool,
    pub lattice: bool,
    pub sharp_lattice: bool,
}

fn lattice_line(alg: &PiAlgebra, name: &str, check: &LatticeCheck) -> String {
    match check.failing_pair() {
        None => format!("{name} is a lattice"),
        Some((p, q)) => format!(
            "{name} is not a lattice: {} and {} lack a join or a meet ({} failing pairs)",
            alg.label(p),
            alg.label(q),
            check.failing_pairs.len()
        ),
    }
}

pub fn check(alg: &PiAlgebra, report: &StructureReport, s: Sections) -> String {
    let mut out = String::new();
    if s.homogeneous {
        let line = match &report.homogeneity.witness {
            None => "homogeneous".to_string(),
            Some(HomogeneityWitness::Isotropy { test, atom, value, iota }) => {
                let a = alg.label(*atom);
                format!("not homogeneous: t{}({a})={value} < ι({a})={iota}", test + 1)
            }
            Some(HomogeneityWitness::Agreement { first, second, atom, first_value, second_value }) => {
                let a = alg.label(*atom);
                format!("not homogeneous: t{}({a})={first_value} ≠ t{}({a})={second_value}", first + 1, second + 1)
            }
            Some(HomogeneityWitness::Definition { u, u1, u2 }) => format!(
                "not homogeneous: {} ≤ {} ⊕ {} does not split",
                alg.label(*u),
                alg.label(*u1),
                alg.label(*u2)
            ),
        };
        let _ = writeln!(out, "{line}");
    }
    if s.sharp {
        let _ = writeln!(out, "sharp: {}", labels(alg, &report.sharp));
    }
    if s.lattice {
        let _ = writeln!(out, "{}", lattice_line(alg, "E", &report.e_lattice));
    }
    if s.sharp_lattice {
        let _ = writeln!(out, "{}", lattice_line(alg, "E_S", &report.es_lattice));
        let closed = if report.es_sublattice { "is" } else { "is not" };
        let _ = writeln!(out, "E_S {closed} a sublattice of E");
    }
    out
}

pub fn search_summary(outcome: &SearchOutcome<i64>) -> String {
    let mut out = format!(
        "{} tables, {} non-algebraic, {} findings\n",
        outcome.tables,
        outcome.non_algebraic,
        outcome.findings.len()
    );
    for f in &outcome.findings {
        let _ = writeln!(out, "{}", f.canonical_key);
    }
    out
}

fn pretty(v: &serde_json::Value) -> String {
    serde_json::to_string_pretty(v).expect("serializable")
}
