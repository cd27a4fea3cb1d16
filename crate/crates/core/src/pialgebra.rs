//! The quotient effect algebra `Π(X)` of an algebraic E-test space.
//!
//! Classes are numbered by the lexicographic order of their canonical
//! (least) members, so the zero class always has id 0.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::etspace::{Event, EventSpace, Limits, TestTable};
use crate::scalar::Coord;
use crate::vector::IntVec;

pub type ClassId = usize;

/// One perspectivity class `π(f)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PiElement<S> {
    pub id: ClassId,
    /// Lexicographically least member.
    pub canonical: IntVec<S>,
    /// Indices into the event list of the underlying space, ascending.
    pub members: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct PiAlgebra<S> {
    space: EventSpace<S>,
    classes: Vec<PiElement<S>>,
    class_of: Vec<ClassId>,
    unit: ClassId,
    oplus: Vec<Option<ClassId>>,
    supplement: Vec<ClassId>,
    leq: Vec<bool>,
    iota: Vec<usize>,
    atom_labels: bool,
}

/// Builds `Π(X)` for a table, enumerating its events under `limits`.
pub fn build_pi<S: Coord>(table: TestTable<S>, limits: &Limits) -> Result<PiAlgebra<S>> {
    PiAlgebra::build(EventSpace::new(table, limits)?)
}

/// `π(f) = π(g)` iff there are tests `t1 >= f`, `t2 >= g` with `t1 - f = t2 - g`.
pub fn pi_equal_by_remainder<S: Coord>(table: &TestTable<S>, f: &Event<S>, g: &Event<S>) -> bool {
    let (f, g) = (f.vec(), g.vec());
    table.tests().iter().filter(|t1| f.leq(t1)).any(|t1| {
        let rest = t1 - f;
        table.tests().iter().filter(|t2| g.leq(t2)).any(|t2| &(t2 - g) == &rest)
    })
}

/// `π(f) <= π(g)` iff there are tests with `g <= t2` and `f <= t1 + g - t2`,
/// compared over the signed integers.
pub fn pi_leq_by_shift<S: Coord>(table: &TestTable<S>, f: &Event<S>, g: &Event<S>) -> bool {
    let (f, g) = (f.vec(), g.vec());
    table.tests().iter().filter(|t2| g.leq(t2)).any(|t2| {
        let shifted = g - t2;
        table.tests().iter().any(|t1| f.leq(&(t1 + &shifted)))
    })
}

fn violation(msg: String) -> Error {
    Error::AxiomViolation(msg)
}

impl<S: Coord> PiAlgebra<S> {
    pub fn build(space: EventSpace<S>) -> Result<Self> {
        let persp = space.perspective_lists();
        space.algebraicity_with(&persp).into_result()?;
        let n_events = space.len();

        // ≈ must be an equivalence relation for the classes to exist
        for (f, related) in persp.iter().enumerate() {
            for &g in related {
                if persp[g] != *related {
                    return Err(violation(format!(
                        "perspectivity is not transitive at {} and {}",
                        space.event(f).vec(),
                        space.event(g).vec()
                    )));
                }
            }
        }

        // events are sorted, so the first member of each list is canonical
        let mut leaders: Vec<usize> = persp.iter().map(|r| r[0]).collect();
        leaders.sort_unstable();
        leaders.dedup();
        let leader_id: HashMap<usize, ClassId> = leaders.iter().enumerate().map(|(id, &e)| (e, id)).collect();
        let class_of: Vec<ClassId> = persp.iter().map(|r| leader_id[&r[0]]).collect();
        let classes: Vec<PiElement<S>> = leaders
            .iter()
            .enumerate()
            .map(|(id, &e)| PiElement { id, canonical: space.event(e).vec().clone(), members: persp[e].clone() })
            .collect();
        let n = classes.len();

        if classes[0].members != [0] || !space.event(0).vec().is_zero() {
            return Err(violation("the zero class contains a nonzero event".into()));
        }
        let table = space.table();
        let test_classes: Vec<ClassId> =
            table.tests().iter().map(|t| class_of[space.index_of(t).expect("tests are events")]).collect();
        let unit = test_classes[0];
        if test_classes.iter().any(|&c| c != unit) {
            return Err(violation("tests fall into more than one class".into()));
        }

        // ⊕ over classes, checked to be independent of the chosen members
        let mut oplus: Vec<Option<ClassId>> = vec![None; n * n];
        for i in 0..n_events {
            for j in i..n_events {
                let sum = space.event(i).vec() + space.event(j).vec();
                let Some(k) = space.index_of(&sum) else { continue };
                let (p, q, r) = (class_of[i], class_of[j], class_of[k]);
                for (a, b) in [(p, q), (q, p)] {
                    match oplus[a * n + b] {
                        None => oplus[a * n + b] = Some(r),
                        Some(prev) if prev != r => {
                            return Err(violation(format!(
                                "⊕ is not well defined: {} + {} lands outside the class of {}",
                                space.event(i).vec(),
                                space.event(j).vec(),
                                classes[prev].canonical
                            )));
                        }
                        Some(_) => {}
                    }
                }
            }
        }

        let mut supplement = Vec::with_capacity(n);
        for p in 0..n {
            let mut hits = (0..n).filter(|&q| oplus[p * n + q] == Some(unit));
            let q = hits.next().ok_or_else(|| violation(format!("{} has no orthosupplement", classes[p].canonical)))?;
            if let Some(other) = hits.next() {
                return Err(violation(format!(
                    "{} has two orthosupplements, {} and {}",
                    classes[p].canonical, classes[q].canonical, classes[other].canonical
                )));
            }
            let f = space.event(leaders[p]);
            let complement = table.test(f.witness()) - f.vec();
            let via_test = class_of[space.index_of(&complement).expect("complement is an event")];
            if via_test != q {
                return Err(violation(format!("complement of {} disagrees with ⊕", classes[p].canonical)));
            }
            supplement.push(q);
        }

        let mut leq = vec![false; n * n];
        for p in 0..n {
            for q in 0..n {
                leq[p * n + q] = pi_leq_by_shift(table, space.event(leaders[p]), space.event(leaders[q]));
            }
        }

        let mut iota = vec![0; n];
        for (p, slot) in iota.iter_mut().enumerate().skip(1) {
            let (mut k, mut cur) = (1, p);
            while let Some(next) = oplus[cur * n + p] {
                k += 1;
                cur = next;
            }
            *slot = k;
        }

        let mut alg = PiAlgebra { space, classes, class_of, unit, oplus, supplement, leq, iota, atom_labels: false };
        alg.check_axioms()?;
        alg.atom_labels = (0..alg.space.table().num_outcomes()).all(|x| {
            let idx = alg.space.index_of(&IntVec::unit(alg.num_outcomes(), x)).expect("axiom 1");
            alg.is_atom(alg.class_of[idx])
        });
        Ok(alg)
    }

    pub fn space(&self) -> &EventSpace<S> {
        &self.space
    }

    pub fn table(&self) -> &TestTable<S> {
        self.space.table()
    }

    fn num_outcomes(&self) -> usize {
        self.table().num_outcomes()
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn classes(&self) -> &[PiElement<S>] {
        &self.classes
    }

    pub fn class(&self, p: ClassId) -> &PiElement<S> {
        &self.classes[p]
    }

    pub fn ids(&self) -> std::ops::Range<ClassId> {
        0..self.classes.len()
    }

    pub fn zero(&self) -> ClassId {
        0
    }

    pub fn unit(&self) -> ClassId {
        self.unit
    }

    /// Class of the event at `index` in the space's event list.
    pub fn class_of_index(&self, index: usize) -> ClassId {
        self.class_of[index]
    }

    pub fn class_of(&self, v: &IntVec<S>) -> Option<ClassId> {
        self.space.index_of(v).map(|i| self.class_of[i])
    }

    pub fn class_of_event(&self, e: &Event<S>) -> ClassId {
        self.class_of(e.vec()).expect("event of this space")
    }

    /// The canonical member of `p` as an event.
    pub fn representative(&self, p: ClassId) -> &Event<S> {
        self.space.event(self.classes[p].members[0])
    }

    pub fn members(&self, p: ClassId) -> impl Iterator<Item = &Event<S>> + '_ {
        self.classes[p].members.iter().map(|&i| self.space.event(i))
    }

    pub fn oplus(&self, p: ClassId, q: ClassId) -> Option<ClassId> {
        self.oplus[p * self.len() + q]
    }

    pub fn orthogonal(&self, p: ClassId, q: ClassId) -> bool {
        self.oplus(p, q).is_some()
    }

    /// `p′`, the unique class with `p ⊕ p′ = 1`.
    pub fn orthosupplement(&self, p: ClassId) -> ClassId {
        self.supplement[p]
    }

    pub fn leq(&self, p: ClassId, q: ClassId) -> bool {
        self.leq[p * self.len() + q]
    }

    pub fn lt(&self, p: ClassId, q: ClassId) -> bool {
        p != q && self.leq(p, q)
    }

    /// `p <= q` by definition: some `r` has `p ⊕ r = q`.
    pub fn leq_by_oplus(&self, p: ClassId, q: ClassId) -> bool {
        self.ids().any(|r| self.oplus(p, r) == Some(q))
    }

    /// `x <= y` read off the members: some member of `π(g)` lies pointwise above `f`.
    pub fn leq_by_members(&self, f: &Event<S>, g: &Event<S>) -> bool {
        self.members(self.class_of_event(g)).any(|h| f.vec().leq(h.vec()))
    }

    /// Largest `n` with `n·p` defined; 0 for the zero class.
    pub(crate) fn iota_raw(&self, p: ClassId) -> usize {
        self.iota[p]
    }

    pub fn is_atom(&self, p: ClassId) -> bool {
        p != 0 && !self.ids().any(|r| r != 0 && self.lt(r, p))
    }

    /// Cover relation (transitive reduction of `<=`), sorted.
    pub fn hasse_covers(&self) -> Vec<(ClassId, ClassId)> {
        let mut out = Vec::new();
        for p in self.ids() {
            for q in self.ids() {
                if self.lt(p, q) && !self.ids().any(|r| self.lt(p, r) && self.lt(r, q)) {
                    out.push((p, q));
                }
            }
        }
        out
    }

    /// Human label: `0`, `1`, or the canonical member in ⊕-of-atoms
    /// notation (`a⊕2b`) when every outcome indicator is an atom, else the
    /// raw vector.
    pub fn label(&self, p: ClassId) -> String {
        if p == 0 {
            return "0".into();
        }
        if p == self.unit {
            return "1".into();
        }
        let v = &self.classes[p].canonical;
        if !self.atom_labels {
            return v.to_string();
        }
        let mut out = String::new();
        for x in v.support() {
            if !out.is_empty() {
                out.push('⊕');
            }
            if !v[x].is_one() {
                let _ = write!(out, "{}", v[x]);
            }
            out.push_str(self.table().outcomes().name(x));
        }
        out
    }

    pub fn class_by_label(&self, label: &str) -> Option<ClassId> {
        self.ids().find(|&p| self.label(p) == label)
    }

    /// Rechecks the effect-algebra laws and the order on the built tables.
    pub fn check_axioms(&self) -> Result<()> {
        let n = self.len();
        let name = |p: ClassId| self.classes[p].canonical.to_string();
        for p in 0..n {
            if !self.leq(p, p) {
                return Err(violation(format!("<= is not reflexive at {}", name(p))));
            }
            if !self.leq(0, p) || !self.leq(p, self.unit) {
                return Err(violation(format!("{} is not between 0 and 1", name(p))));
            }
            for q in 0..n {
                if p != q && self.leq(p, q) && self.leq(q, p) {
                    return Err(violation(format!("<= is not antisymmetric at {}, {}", name(p), name(q))));
                }
                if self.leq(p, q) != self.leq_by_oplus(p, q) {
                    return Err(violation(format!("order by test shifts and by ⊕ differ at {}, {}", name(p), name(q))));
                }
                if self.oplus(p, q) != self.oplus(q, p) {
                    return Err(violation(format!("⊕ is not commutative at {}, {}", name(p), name(q))));
                }
                if self.orthogonal(q, p) != self.leq(q, self.supplement[p]) {
                    return Err(violation(format!("q ⊥ p disagrees with q <= p′ at {}, {}", name(q), name(p))));
                }
                if self.leq(p, q) && !self.leq(self.supplement[q], self.supplement[p]) {
                    return Err(violation(format!("′ is not order reversing at {}, {}", name(p), name(q))));
                }
                for r in 0..n {
                    if self.leq(p, q) && self.leq(q, r) && !self.leq(p, r) {
                        return Err(violation(format!("<= is not transitive at {}", name(q))));
                    }
                    if let Some(qr) = self.oplus(q, r) {
                        if let Some(lhs) = self.oplus(p, qr) {
                            let rhs = self.oplus(p, q).and_then(|pq| self.oplus(pq, r));
                            if rhs != Some(lhs) {
                                return Err(violation(format!(
                                    "⊕ is not associative at {}, {}, {}",
                                    name(p),
                                    name(q),
                                    name(r)
                                )));
                            }
                        }
                    }
                    if let (Some(pq), Some(rq)) = (self.oplus(p, q), self.oplus(r, q)) {
                        if self.leq(pq, rq) && !self.leq(p, r) {
                            return Err(violation(format!("cancellation fails at {}, {}, {}", name(p), name(q), name(r))));
                        }
                    }
                }
            }
            if self.supplement[self.supplement[p]] != p {
                return Err(violation(format!("′ is not an involution at {}", name(p))));
            }
            if p != 0 && self.orthogonal(self.unit, p) {
                return Err(violation(format!("1 ⊕ {} is defined", name(p))));
            }
        }
        Ok(())
    }
}
