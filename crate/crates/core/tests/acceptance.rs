//! Acceptance criteria, one line per criterion.
//!
//! Run with `cargo test -p etkit --test acceptance`.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use etkit::joinmeet::{join, join_classes, join_literal, meet, meet_classes, meet_literal, oracle_join, oracle_meet};
use etkit::pialgebra::{pi_equal_by_remainder, pi_leq_by_shift};
use etkit::search::{run_search, table_key, Predicate, SearchConfig};
use etkit::structure::{
    analyze, atomic_tests, atoms, homogeneity, is_lattice, isotropic_index, sharp_elements, sharpness_by_support,
    HomogeneityWitness,
};
use etkit::{build_pi, ClassId, EventSpace, IntVec, Limits, PiAlgebra, TestTable};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn labels(alg: &PiAlgebra, ids: &[ClassId]) -> BTreeSet<String> {
    ids.iter().map(|&p| alg.label(p)).collect()
}

fn set(items: &[&str]) -> BTreeSet<String> {
    items.iter().map(|s| s.to_string()).collect()
}

/// Every valid table with 1..=3 outcomes, 1..=3 distinct rows, entries in 0..=2.
fn family_tables() -> Vec<TestTable> {
    let mut out = Vec::new();
    for width in 1..=3usize {
        let rows: Vec<Vec<i64>> = (1..3i64.pow(width as u32))
            .map(|mut code| {
                (0..width)
                    .map(|_| {
                        let d = code % 3;
                        code /= 3;
                        d
                    })
                    .collect()
            })
            .collect();
        let n = rows.len();
        let mut pick = |idx: &[usize]| {
            if let Ok(t) = TestTable::validate(idx.iter().map(|&i| rows[i].clone()).collect()) {
                out.push(t);
            }
        };
        for i in 0..n {
            pick(&[i]);
            for j in i + 1..n {
                pick(&[i, j]);
                for k in j + 1..n {
                    pick(&[i, j, k]);
                }
            }
        }
    }
    out
}

fn family() -> Vec<PiAlgebra> {
    family_tables()
        .into_iter()
        .filter_map(|t| {
            let space = EventSpace::new(t, &Limits::default()).unwrap();
            space.is_algebraic().then(|| PiAlgebra::build(space).unwrap())
        })
        .collect()
}

fn criterion_1_example() -> Outcome {
    let start = Instant::now();
    let space = EventSpace::new(TestTable::validate(vec![vec![2, 2, 0], vec![1, 0, 2]]).unwrap(), &Limits::default()).unwrap();
    ensure!(space.is_algebraic(), "example table is not algebraic");
    let alg = PiAlgebra::build(space).map_err(|e| e.to_string())?;
    ensure!(alg.len() == 11, "{} classes", alg.len());

    let at = atoms(&alg);
    ensure!(labels(&alg, &at) == set(&["a", "b", "c"]), "atoms {:?}", labels(&alg, &at));
    for &a in &at {
        ensure!(isotropic_index(&alg, a) == Ok(2), "ι({}) = {:?}", alg.label(a), isotropic_index(&alg, a));
    }

    let report = analyze(&alg).map_err(|e| e.to_string())?;
    ensure!(!report.homogeneity.homogeneous, "reported homogeneous");
    let a = alg.class_by_label("a").unwrap();
    match report.homogeneity.witness {
        Some(HomogeneityWitness::Isotropy { test, atom, value: 1, iota: 2 })
            if atom == a && report.atomic_tests[test].mult == vec![1, 0, 2] => {}
        ref w => return Err(format!("homogeneity witness {w:?}")),
    }
    ensure!(labels(&alg, &report.sharp) == set(&["0", "1", "2a", "2b"]), "sharp {:?}", labels(&alg, &report.sharp));
    ensure!(report.es_lattice.is_lattice, "E_S is not a lattice");
    ensure!(!report.e_lattice.is_lattice, "E is a lattice");
    let (p, q) = report.e_lattice.failing_pair().unwrap();
    ensure!(labels(&alg, &[p, q]) == set(&["a", "c"]), "failing pair {:?}", labels(&alg, &[p, q]));
    let ub = oracle_join(&alg, p, q).candidates;
    ensure!(labels(&alg, &ub) == set(&["a⊕c", "2c", "1"]), "upper bounds {:?}", labels(&alg, &ub));
    let via_tuples = join_classes(&alg, p, q).candidates;
    ensure!(labels(&alg, &via_tuples) == set(&["a⊕c", "2c", "1"]), "candidates {:?}", labels(&alg, &via_tuples));

    let expected: BTreeSet<(String, String)> = [
        ("0", "a"), ("0", "b"), ("0", "c"),
        ("a", "2a"), ("b", "a⊕b"), ("a", "a⊕b"), ("b", "2b"), ("a", "a⊕c"), ("c", "a⊕c"),
        ("2a", "2a⊕b"), ("a⊕b", "2a⊕b"), ("a⊕b", "2c"), ("c", "2c"), ("2b", "2c"),
        ("2a⊕b", "1"), ("2c", "1"), ("a⊕c", "1"),
    ]
    .iter()
    .map(|(x, y)| (x.to_string(), y.to_string()))
    .collect();
    let got: BTreeSet<(String, String)> = alg.hasse_covers().iter().map(|&(x, y)| (alg.label(x), alg.label(y))).collect();
    ensure!(got == expected, "Hasse edges differ: {:?}", got.symmetric_difference(&expected).collect::<Vec<_>>());

    let elapsed = start.elapsed();
    ensure!(elapsed < Duration::from_secs(1), "took {elapsed:?}");
    Ok(format!("11 classes, 17 covers, {elapsed:.2?}"))
}

fn criterion_2_order_routes(fam: &[PiAlgebra]) -> Outcome {
    let mut pairs = 0usize;
    for alg in fam {
        let space = alg.space();
        let table = alg.table();
        for f in space.events() {
            for g in space.events() {
                pairs += 1;
                let (p, q) = (alg.class_of_event(f), alg.class_of_event(g));
                ensure!(pi_equal_by_remainder(table, f, g) == space.approx(f, g), "remainder test vs ≈ at {f:?}, {g:?} in {table:?}");
                let by_shift = pi_leq_by_shift(table, f, g);
                ensure!(by_shift == alg.leq_by_oplus(p, q), "shift test vs ⊕ order at {f:?}, {g:?} in {table:?}");
                ensure!(by_shift == alg.leq_by_members(f, g), "shift test vs member test at {f:?}, {g:?} in {table:?}");
            }
        }
    }
    Ok(format!("{} algebraic tables, {pairs} event pairs", fam.len()))
}

fn criterion_3_bound_routes(fam: &[PiAlgebra]) -> Outcome {
    let mut pairs = 0usize;
    for alg in fam {
        let events = alg.space().events();
        for f in events {
            for g in events {
                pairs += 1;
                let (p, q) = (alg.class_of_event(f), alg.class_of_event(g));
                let j = join(alg, f, g);
                let oj = oracle_join(alg, p, q);
                let lj = join_literal(alg, f, g);
                ensure!(j.exists == oj.exists && j.value == oj.value, "join vs oracle at {f:?}, {g:?}");
                ensure!(j.exists == lj.exists && j.value == lj.value, "join vs J-condition at {f:?}, {g:?}");
                let m = meet(alg, f, g);
                let om = oracle_meet(alg, p, q);
                let lm = meet_literal(alg, f, g);
                ensure!(m.exists == om.exists && m.value == om.value, "meet vs oracle at {f:?}, {g:?}");
                ensure!(m.exists == lm.exists && m.value == lm.value, "meet vs M-condition at {f:?}, {g:?}");
            }
        }
    }
    Ok(format!("{pairs} event pairs, join and meet by three routes"))
}

fn criterion_4_axioms(fam: &[PiAlgebra]) -> Outcome {
    for alg in fam {
        let ids: Vec<ClassId> = alg.ids().collect();
        let name = |p: ClassId| alg.label(p);
        for &p in &ids {
            let supplements: Vec<_> = ids.iter().filter(|&&q| alg.oplus(p, q) == Some(alg.unit())).collect();
            ensure!(supplements.len() == 1, "{} has {} orthosupplements", name(p), supplements.len());
            ensure!(p == alg.zero() || alg.oplus(alg.unit(), p).is_none(), "1 ⊕ {} defined", name(p));
            for &q in &ids {
                ensure!(alg.oplus(p, q) == alg.oplus(q, p), "commutativity at {}, {}", name(p), name(q));
                let ps = alg.orthosupplement(p);
                ensure!(alg.oplus(q, p).is_some() == alg.leq(q, ps), "q⊥p vs q≤p′ at {}, {}", name(q), name(p));
                for &r in &ids {
                    if let Some(qr) = alg.oplus(q, r) {
                        if let Some(lhs) = alg.oplus(p, qr) {
                            let pq = alg.oplus(p, q);
                            let rhs = pq.and_then(|pq| alg.oplus(pq, r));
                            ensure!(rhs == Some(lhs), "associativity at {}, {}, {}", name(p), name(q), name(r));
                        }
                    }
                    if let (Some(pq), Some(rq)) = (alg.oplus(p, q), alg.oplus(r, q)) {
                        ensure!(!alg.leq(pq, rq) || alg.leq(p, r), "cancellation at {}, {}, {}", name(p), name(q), name(r));
                    }
                }
            }
        }
    }
    Ok(format!("{} algebras", fam.len()))
}

/// `u <= u1 ⊕ u2 <= u′` implies `u = v1 ⊕ v2` with `v1 <= u1`, `v2 <= u2`.
fn homogeneous_by_definition(alg: &PiAlgebra) -> bool {
    let ids: Vec<ClassId> = alg.ids().collect();
    ids.iter().all(|&u| {
        ids.iter().all(|&u1| {
            ids.iter().all(|&u2| match alg.oplus(u1, u2) {
                Some(s) if alg.leq(u, s) && alg.leq(s, alg.orthosupplement(u)) => ids.iter().any(|&v1| {
                    ids.iter().any(|&v2| alg.oplus(v1, v2) == Some(u) && alg.leq(v1, u1) && alg.leq(v2, u2))
                }),
                _ => true,
            })
        })
    })
}

fn criterion_5_homogeneity(fam: &[PiAlgebra]) -> Outcome {
    let mut homogeneous = 0;
    for alg in fam {
        let tests = atomic_tests(alg);
        let h = homogeneity(alg, &tests, usize::MAX).map_err(|e| format!("{e} in {:?}", alg.table()))?;
        let def = homogeneous_by_definition(alg);
        ensure!(h.by_definition == Some(def), "library definitional check disagrees in {:?}", alg.table());
        ensure!(def == h.by_agreement && def == h.by_isotropy, "(a) {def}, (d) {}, (e) {} in {:?}", h.by_agreement, h.by_isotropy, alg.table());
        if def {
            homogeneous += 1;
            let by_support = sharpness_by_support(alg, &tests).map_err(|e| e.to_string())?;
            let sharp = sharp_elements(alg).map_err(|e| e.to_string())?;
            ensure!(by_support == sharp, "sharp sets differ in {:?}", alg.table());
        }
    }
    Ok(format!("{homogeneous} of {} homogeneous", fam.len()))
}

fn criterion_6_de_morgan(fam: &[PiAlgebra]) -> Outcome {
    let mut pairs = 0;
    for alg in fam {
        for p in alg.ids() {
            for q in alg.ids() {
                pairs += 1;
                let m = meet_classes(alg, p, q);
                let j = join_classes(alg, alg.orthosupplement(p), alg.orthosupplement(q));
                ensure!(m.exists == j.exists, "existence differs at {}, {}", alg.label(p), alg.label(q));
                ensure!(
                    m.value == j.value.map(|v| alg.orthosupplement(v)),
                    "p∧q ≠ (p′∨q′)′ at {}, {}",
                    alg.label(p),
                    alg.label(q)
                );
            }
        }
    }
    Ok(format!("{pairs} class pairs"))
}

fn criterion_7_search() -> Outcome {
    let start = Instant::now();
    let cfg = SearchConfig::new(3, 2, 2).with_predicates(vec![
        Predicate::Algebraic,
        Predicate::NotHomogeneous,
        Predicate::EsLattice,
        Predicate::NotELattice,
    ]);
    let out = run_search::<i64>(&cfg, &Limits::default()).map_err(|e| e.to_string())?;
    let key = table_key(&TestTable::validate(vec![vec![2, 2, 0], vec![1, 0, 2]]).unwrap());
    ensure!(out.findings.iter().any(|f| f.canonical_key == key), "example {key} not among {} findings", out.findings.len());
    let elapsed = start.elapsed();
    ensure!(elapsed < Duration::from_secs(60), "took {elapsed:?}");
    Ok(format!("{} tables, {} findings, {elapsed:.2?}", out.tables, out.findings.len()))
}

fn criterion_8_trivial_families() -> Outcome {
    for n in 1..=5i64 {
        let alg = build_pi(TestTable::validate(vec![vec![n]]).unwrap()).unwrap();
        ensure!(alg.len() == n as usize + 1, "chain {n} has {} classes", alg.len());
        let height = |p: ClassId| alg.class(p).canonical[0];
        for p in alg.ids() {
            for q in alg.ids() {
                ensure!(alg.leq(p, q) == (height(p) <= height(q)), "chain {n} order");
                let top = if height(p) >= height(q) { p } else { q };
                let bottom = if top == p { q } else { p };
                ensure!(join_classes(&alg, p, q).value == Some(top), "chain {n} join");
                ensure!(meet_classes(&alg, p, q).value == Some(bottom), "chain {n} meet");
            }
        }
        let sharp = sharp_elements(&alg).unwrap();
        ensure!(sharp == vec![0, alg.unit()], "chain {n} sharp {:?}", sharp);
    }
    for k in 1..=4usize {
        let alg = build_pi(TestTable::validate(vec![vec![1; k]]).unwrap()).unwrap();
        ensure!(alg.len() == 1 << k, "Boolean {k} has {} classes", alg.len());
        let bits = |p: ClassId| alg.class(p).canonical.clone();
        for p in alg.ids() {
            for q in alg.ids() {
                let (x, y) = (bits(p), bits(q));
                ensure!(alg.leq(p, q) == x.leq(&y), "Boolean {k} order");
                let or: IntVec = x.pointwise_max(&y);
                let and: IntVec = x.pointwise_min(&y);
                ensure!(join_classes(&alg, p, q).value == alg.class_of(&or), "Boolean {k} join");
                ensure!(meet_classes(&alg, p, q).value == alg.class_of(&and), "Boolean {k} meet");
            }
        }
        ensure!(is_lattice(&alg, None).is_lattice, "Boolean {k} not a lattice");
        ensure!(sharp_elements(&alg).unwrap().len() == 1 << k, "Boolean {k} not all sharp");
    }
    Ok("chains 1..=5, Boolean 1..=4".into())
}

fn main() -> ExitCode {
    let fam = family();
    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome + '_>)> = vec![
        ("1 example end-to-end", Box::new(criterion_1_example)),
        ("2 order and equality routes agree", Box::new(|| criterion_2_order_routes(&fam))),
        ("3 join and meet routes agree", Box::new(|| criterion_3_bound_routes(&fam))),
        ("4 effect-algebra axioms", Box::new(|| criterion_4_axioms(&fam))),
        ("5 homogeneity criteria", Box::new(|| criterion_5_homogeneity(&fam))),
        ("6 De Morgan duality", Box::new(|| criterion_6_de_morgan(&fam))),
        ("7 search rediscovery", Box::new(criterion_7_search)),
        ("8 trivial families", Box::new(criterion_8_trivial_families)),
    ];
    let mut failed = 0;
    for (name, run) in &criteria {
        match run() {
            Ok(detail) => println!("PASS  {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL  {name}: {why}");
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
