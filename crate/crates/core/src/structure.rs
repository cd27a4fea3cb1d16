//! Atoms, isotropic indices, atomic tests, homogeneity, sharp elements and
//! lattice checks on a built `Π(X)`.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::joinmeet::{join_classes, meet_classes, oracle_meet};
use crate::pialgebra::{ClassId, PiAlgebra};
use crate::scalar::Coord;

/// Largest `n` such that `n·p` is defined.
pub fn isotropic_index<S: Coord>(alg: &PiAlgebra<S>, p: ClassId) -> Result<usize> {
    if p == alg.zero() {
        return Err(Error::ZeroIsotropy);
    }
    Ok(alg.iota_raw(p))
}

/// The classes covering 0, ordered by descending canonical member. When
/// the outcome indicators are the atoms this is the outcome order.
pub fn atoms<S: Coord>(alg: &PiAlgebra<S>) -> Vec<ClassId> {
    let mut out: Vec<ClassId> = alg.ids().filter(|&p| alg.is_atom(p)).collect();
    out.sort_by(|&p, &q| alg.class(q).canonical.cmp(&alg.class(p).canonical));
    out
}

/// Multiplicities of atoms whose iterated ⊕ is 1, aligned with [`atoms`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct AtomicTest {
    pub atoms: Vec<ClassId>,
    pub mult: Vec<usize>,
}

impl AtomicTest {
    pub fn get(&self, atom: ClassId) -> usize {
        self.atoms.iter().position(|&a| a == atom).map_or(0, |i| self.mult[i])
    }

    pub fn support(&self) -> impl Iterator<Item = ClassId> + '_ {
        self.atoms.iter().zip(&self.mult).filter(|(_, &m)| m > 0).map(|(&a, _)| a)
    }
}

/// `⊕ mult(a)·a` if defined.
pub fn orthosum<S: Coord>(alg: &PiAlgebra<S>, atoms: &[ClassId], mult: &[usize]) -> Option<ClassId> {
    let mut acc = alg.zero();
    for (&a, &m) in atoms.iter().zip(mult) {
        for _ in 0..m {
            acc = alg.oplus(acc, a)?;
        }
    }
    Some(acc)
}

/// Every atomic test, in descending order of multiplicity vectors.
pub fn atomic_tests<S: Coord>(alg: &PiAlgebra<S>) -> Vec<AtomicTest> {
    let atoms = atoms(alg);
    let bounds: Vec<usize> = atoms.iter().map(|&a| alg.iota_raw(a)).collect();
    let mut found = Vec::new();
    let mut mult = vec![0; atoms.len()];
    extend_tests(alg, &atoms, &bounds, 0, alg.zero(), &mut mult, &mut found);
    found.sort_by(|x: &Vec<usize>, y| y.cmp(x));
    found.into_iter().map(|mult| AtomicTest { atoms: atoms.clone(), mult }).collect()
}

fn extend_tests<S: Coord>(
    alg: &PiAlgebra<S>,
    atoms: &[ClassId],
    bounds: &[usize],
    at: usize,
    partial: ClassId,
    mult: &mut Vec<usize>,
    found: &mut Vec<Vec<usize>>,
) {
    if partial == alg.unit() {
        // 1 ⊕ a is never defined, so the remaining multiplicities are 0
        found.push(mult.clone());
        return;
    }
    if at == atoms.len() {
        return;
    }
    let mut acc = partial;
    for m in 0..=bounds[at] {
        mult[at] = m;
        extend_tests(alg, atoms, bounds, at + 1, acc, mult, found);
        match alg.oplus(acc, atoms[at]) {
            Some(next) if m < bounds[at] => acc = next,
            _ => break,
        }
    }
    mult[at] = 0;
}

/// Atomic events with the class of their orthosum, deduplicated, in
/// ascending order of multiplicity vectors.
pub fn atomic_events<S: Coord>(alg: &PiAlgebra<S>, tests: &[AtomicTest]) -> Vec<(Vec<usize>, ClassId)> {
    let mut seen: BTreeMap<Vec<usize>, ClassId> = BTreeMap::new();
    for t in tests {
        let mut w = vec![0; t.mult.len()];
        loop {
            if !seen.contains_key(&w) {
                let class = orthosum(alg, &t.atoms, &w).expect("sub-sum of a defined orthosum");
                seen.insert(w.clone(), class);
            }
            // odometer over the box below t
            let mut i = w.len();
            loop {
                if i == 0 {
                    break;
                }
                i -= 1;
                if w[i] < t.mult[i] {
                    w[i] += 1;
                    break;
                }
                w[i] = 0;
            }
            if w.iter().all(|&x| x == 0) {
                break;
            }
        }
    }
    seen.into_iter().collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "criterion", rename_all = "snake_case")]
pub enum HomogeneityWitness {
    /// An atomic test takes a value below the isotropic index on an atom
    /// of its support.
    Isotropy { test: usize, atom: ClassId, value: usize, iota: usize },
    /// Two atomic tests disagree on a shared atom.
    Agreement { first: usize, second: usize, atom: ClassId, first_value: usize, second_value: usize },
    /// `u <= u1 ⊕ u2 <= u′` but `u` does not split below `u1`, `u2`.
    Definition { u: ClassId, u1: ClassId, u2: ClassId },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Homogeneity {
    pub homogeneous: bool,
    /// Every atomic test equals the isotropic index on its support.
    pub by_isotropy: bool,
    /// Atomic tests agree on shared atoms.
    pub by_agreement: bool,
    /// The defining splitting property, when it was evaluated.
    pub by_definition: Option<bool>,
    pub witness: Option<HomogeneityWitness>,
}

/// Default class-count ceiling for the definitional homogeneity check.
pub const DEFINITIONAL_LIMIT: usize = 64;

fn isotropy_witness<S: Coord>(alg: &PiAlgebra<S>, tests: &[AtomicTest]) -> Option<HomogeneityWitness> {
    tests.iter().enumerate().find_map(|(i, t)| {
        t.support().find_map(|a| {
            let (value, iota) = (t.get(a), alg.iota_raw(a));
            (value != iota).then_some(HomogeneityWitness::Isotropy { test: i, atom: a, value, iota })
        })
    })
}

fn agreement_witness(tests: &[AtomicTest]) -> Option<HomogeneityWitness> {
    for (i, s) in tests.iter().enumerate() {
        for (j, t) in tests.iter().enumerate().skip(i + 1) {
            for a in s.support() {
                let (x, y) = (s.get(a), t.get(a));
                if y > 0 && x != y {
                    return Some(HomogeneityWitness::Agreement {
                        first: i,
                        second: j,
                        atom: a,
                        first_value: x,
                        second_value: y,
                    });
                }
            }
        }
    }
    None
}

/// Checks the splitting property over all triples `u, u1, u2`.
pub fn definition_witness<S: Coord>(alg: &PiAlgebra<S>) -> Option<HomogeneityWitness> {
    let n = alg.len();
    // diff[v * n + u] = the r with v ⊕ r = u
    let mut diff = vec![None; n * n];
    for v in alg.ids() {
        for r in alg.ids() {
            if let Some(u) = alg.oplus(v, r) {
                diff[v * n + u] = Some(r);
            }
        }
    }
    for u in alg.ids() {
        let us = alg.orthosupplement(u);
        for u1 in alg.ids() {
            for u2 in alg.ids() {
                let Some(s) = alg.oplus(u1, u2) else { continue };
                if !(alg.leq(u, s) && alg.leq(s, us)) {
                    continue;
                }
                let splits = alg.ids().any(|v1| {
                    alg.leq(v1, u1) && diff[v1 * n + u].is_some_and(|v2| alg.leq(v2, u2))
                });
                if !splits {
                    return Some(HomogeneityWitness::Definition { u, u1, u2 });
                }
            }
        }
    }
    None
}

/// Homogeneity by the isotropy criterion, cross-checked against test
/// agreement and, for algebras with at most [`DEFINITIONAL_LIMIT`] classes,
/// against the definition.
pub fn is_homogeneous<S: Coord>(alg: &PiAlgebra<S>) -> Result<Homogeneity> {
    homogeneity(alg, &atomic_tests(alg), DEFINITIONAL_LIMIT)
}

pub fn homogeneity<S: Coord>(alg: &PiAlgebra<S>, tests: &[AtomicTest], definitional_limit: usize) -> Result<Homogeneity> {
    let iso = isotropy_witness(alg, tests);
    let agree = agreement_witness(tests);
    let def = (alg.len() <= definitional_limit).then(|| definition_witness(alg));
    let by_isotropy = iso.is_none();
    let by_agreement = agree.is_none();
    let by_definition = def.as_ref().map(Option::is_none);
    if by_isotropy != by_agreement || by_definition.is_some_and(|d| d != by_isotropy) {
        return Err(Error::CriteriaDisagree(format!(
            "homogeneity: isotropy {by_isotropy}, agreement {by_agreement}, definition {by_definition:?}"
        )));
    }
    Ok(Homogeneity {
        homogeneous: by_isotropy,
        by_isotropy,
        by_agreement,
        by_definition,
        witness: iso.or(agree).or(def.flatten()),
    })
}

/// Classes `p` with `p ∧ p′ = 0`, each meet checked against the oracle.
pub fn sharp_elements<S: Coord>(alg: &PiAlgebra<S>) -> Result<Vec<ClassId>> {
    let mut out = Vec::new();
    for p in alg.ids() {
        let ps = alg.orthosupplement(p);
        let via_tuples = meet_classes(alg, p, ps).value;
        let via_scan = oracle_meet(alg, p, ps).value;
        if via_tuples != via_scan {
            return Err(Error::CriteriaDisagree(format!("meet of {} with its supplement", alg.label(p))));
        }
        if via_tuples == Some(alg.zero()) {
            out.push(p);
        }
    }
    Ok(out)
}

/// Sharp elements read off atomic events: `⊕w` is sharp when `w(a) = ι(a)`
/// on the support of `w`. Only meaningful for homogeneous algebras.
pub fn sharpness_by_support<S: Coord>(alg: &PiAlgebra<S>, tests: &[AtomicTest]) -> Result<Vec<ClassId>> {
    if isotropy_witness(alg, tests).is_some() {
        return Err(Error::NotHomogeneous);
    }
    let atoms = tests.first().map(|t| t.atoms.clone()).unwrap_or_default();
    let mut verdict: Vec<Option<bool>> = vec![None; alg.len()];
    for (w, class) in atomic_events(alg, tests) {
        let ok = atoms.iter().zip(&w).all(|(&a, &m)| m == 0 || m == alg.iota_raw(a));
        let slot = &mut verdict[class];
        *slot = Some(slot.unwrap_or(true) && ok);
    }
    let mut out = Vec::new();
    for (p, v) in verdict.into_iter().enumerate() {
        match v {
            Some(true) => out.push(p),
            Some(false) => {}
            None => return Err(Error::CriteriaDisagree(format!("{} is no orthosum of atoms", alg.label(p)))),
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LatticeCheck {
    pub is_lattice: bool,
    /// Pairs `p < q` by id lacking a join or a meet, ascending.
    pub failing_pairs: Vec<(ClassId, ClassId)>,
}

impl LatticeCheck {
    pub fn failing_pair(&self) -> Option<(ClassId, ClassId)> {
        self.failing_pairs.first().copied()
    }

    fn from_failures(mut failing_pairs: Vec<(ClassId, ClassId)>) -> Self {
        failing_pairs.sort_unstable();
        LatticeCheck { is_lattice: failing_pairs.is_empty(), failing_pairs }
    }
}

fn pairs(ids: &[ClassId]) -> Vec<(ClassId, ClassId)> {
    ids.iter().enumerate().flat_map(|(i, &p)| ids[i + 1..].iter().map(move |&q| (p, q))).collect()
}

/// Full algebra: every pair has a join and a meet in `Π(X)`. With a
/// subset: the induced subposet is a lattice in its own right.
pub fn is_lattice<S: Coord>(alg: &PiAlgebra<S>, subset: Option<&[ClassId]>) -> LatticeCheck {
    match subset {
        None => {
            let ids: Vec<ClassId> = alg.ids().collect();
            let failing = pairs(&ids)
                .into_par_iter()
                .filter(|&(p, q)| !(join_classes(alg, p, q).exists && meet_classes(alg, p, q).exists))
                .collect();
            LatticeCheck::from_failures(failing)
        }
        Some(sub) => {
            let mut ids = sub.to_vec();
            ids.sort_unstable();
            ids.dedup();
            let extreme = |bounds: Vec<ClassId>, below: &dyn Fn(ClassId, ClassId) -> bool| {
                bounds.iter().any(|&c| bounds.iter().all(|&d| below(c, d)))
            };
            let failing = pairs(&ids)
                .into_iter()
                .filter(|&(p, q)| {
                    let up: Vec<_> = ids.iter().copied().filter(|&r| alg.leq(p, r) && alg.leq(q, r)).collect();
                    let down: Vec<_> = ids.iter().copied().filter(|&r| alg.leq(r, p) && alg.leq(r, q)).collect();
                    !(extreme(up, &|c, d| alg.leq(c, d)) && extreme(down, &|c, d| alg.leq(d, c)))
                })
                .collect();
            LatticeCheck::from_failures(failing)
        }
    }
}

/// Whether joins and meets taken in `Π(X)` exist for all pairs of `subset`
/// and stay inside it.
pub fn is_sublattice<S: Coord>(alg: &PiAlgebra<S>, subset: &[ClassId]) -> bool {
    pairs(subset).into_iter().all(|(p, q)| {
        let inside = |v: Option<ClassId>| v.is_some_and(|v| subset.contains(&v));
        inside(join_classes(alg, p, q).value) && inside(meet_classes(alg, p, q).value)
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StructureReport {
    pub classes: usize,
    pub atoms: Vec<ClassId>,
    /// Isotropic index of every nonzero class.
    pub iota: BTreeMap<ClassId, usize>,
    pub atomic_tests: Vec<AtomicTest>,
    pub sharp: Vec<ClassId>,
    /// Present when the algebra is homogeneous.
    pub sharp_by_support: Option<Vec<ClassId>>,
    pub homogeneity: Homogeneity,
    pub e_lattice: LatticeCheck,
    /// The sharp elements as a poset in their own right.
    pub es_lattice: LatticeCheck,
    /// The sharp elements closed under joins and meets of the whole algebra.
    pub es_sublattice: bool,
}

pub fn analyze<S: Coord>(alg: &PiAlgebra<S>) -> Result<StructureReport> {
    analyze_with(alg, DEFINITIONAL_LIMIT)
}

pub fn analyze_with<S: Coord>(alg: &PiAlgebra<S>, definitional_limit: usize) -> Result<StructureReport> {
    let tests = atomic_tests(alg);
    let homogeneity = homogeneity(alg, &tests, definitional_limit)?;
    let sharp = sharp_elements(alg)?;
    let sharp_by_support = if homogeneity.homogeneous { Some(sharpness_by_support(alg, &tests)?) } else { None };
    Ok(StructureReport {
        classes: alg.len(),
        atoms: atoms(alg),
        iota: alg.ids().skip(1).map(|p| (p, alg.iota_raw(p))).collect(),
        atomic_tests: tests,
        e_lattice: is_lattice(alg, None),
        es_lattice: is_lattice(alg, Some(&sharp)),
        es_sublattice: is_sublattice(alg, &sharp),
        sharp_by_support,
        sharp,
        homogeneity,
    })
}
