//! E-test spaces: validated test tables, their events, and the relations
//! between events.

use std::collections::{HashMap, HashSet};

use crate::error::{Error, Result};
use crate::scalar::Coord;
use crate::vector::IntVec;

/// Safety limits applied while loading tables and enumerating events.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest accepted table entry.
    pub max_entry: u64,
    /// Largest accepted number of events.
    pub max_events: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_entry: 1_000_000, max_events: 1_000_000 }
    }
}

/// Ordered, uniquely labelled outcomes.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OutcomeSet {
    names: Vec<String>,
}

impl OutcomeSet {
    pub fn new(names: Vec<String>) -> Result<Self> {
        let mut seen = HashSet::new();
        for n in &names {
            if !seen.insert(n.as_str()) {
                return Err(Error::DuplicateOutcome(n.clone()));
            }
        }
        Ok(OutcomeSet { names })
    }

    /// `a, b, c, ...` for up to 26 outcomes, `x1, x2, ...` beyond that.
    pub fn default_names(len: usize) -> Self {
        let names = if len <= 26 {
            (0..len).map(|i| char::from(b'a' + i as u8).to_string()).collect()
        } else {
            (1..=len).map(|i| format!("x{i}")).collect()
        };
        OutcomeSet { names }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }
}

/// A finite E-test space `(X, T)`.
///
/// Tests are kept in descending lexicographic order; duplicate input rows
/// collapse to one test.
#[derive(Debug, Clone)]
pub struct TestTable<S> {
    outcomes: OutcomeSet,
    tests: Vec<IntVec<S>>,
    index: HashMap<IntVec<S>, usize>,
}

impl<S: Coord> PartialEq for TestTable<S> {
    fn eq(&self, other: &Self) -> bool {
        self.outcomes == other.outcomes && self.tests == other.tests
    }
}

impl<S: Coord> Eq for TestTable<S> {}

impl<S: Coord> TestTable<S> {
    /// Validates a raw matrix, one test per row, with default outcome names
    /// and limits.
    pub fn validate(rows: Vec<Vec<S>>) -> Result<Self> {
        Self::from_rows(rows, None, &Limits::default())
    }

    pub fn from_rows(rows: Vec<Vec<S>>, outcomes: Option<OutcomeSet>, limits: &Limits) -> Result<Self> {
        let width = match rows.first() {
            Some(r) if !r.is_empty() => r.len(),
            _ => return Err(Error::EmptyTable),
        };
        for (i, r) in rows.iter().enumerate() {
            if r.len() != width {
                return Err(Error::RaggedRow { row: i, expected: width, found: r.len() });
            }
            for (j, &c) in r.iter().enumerate() {
                if c.is_negative() {
                    return Err(Error::NegativeEntry { row: i, col: j });
                }
                if c.to_u64().is_none_or(|c| c > limits.max_entry) {
                    return Err(Error::EntryTooLarge { row: i, col: j, bound: limits.max_entry });
                }
            }
        }
        let outcomes = match outcomes {
            Some(o) if o.len() != width => {
                return Err(Error::OutcomeCount { names: o.len(), width });
            }
            Some(o) => o,
            None => OutcomeSet::default_names(width),
        };

        let mut tests: Vec<IntVec<S>> = rows.into_iter().map(IntVec::new).collect();
        tests.sort_by(|a, b| b.cmp(a));
        tests.dedup();

        for s in &tests {
            for t in &tests {
                if s != t && s.leq(t) {
                    return Err(Error::AntichainViolation { smaller: s.to_string(), larger: t.to_string() });
                }
            }
        }
        for x in 0..width {
            if tests.iter().all(|t| t[x].is_zero()) {
                return Err(Error::ZeroColumn(outcomes.name(x).to_string()));
            }
        }

        let index = tests.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect();
        Ok(TestTable { outcomes, tests, index })
    }

    pub fn outcomes(&self) -> &OutcomeSet {
        &self.outcomes
    }

    pub fn num_outcomes(&self) -> usize {
        self.outcomes.len()
    }

    pub fn tests(&self) -> &[IntVec<S>] {
        &self.tests
    }

    pub fn num_tests(&self) -> usize {
        self.tests.len()
    }

    pub fn test(&self, i: usize) -> &IntVec<S> {
        &self.tests[i]
    }

    /// Index of `v` if it is a test.
    pub fn test_index(&self, v: &IntVec<S>) -> Option<usize> {
        self.index.get(v).copied()
    }

    pub fn is_test(&self, v: &IntVec<S>) -> bool {
        self.index.contains_key(v)
    }

    /// The first test above `v`, if `v` is an event.
    pub fn witness(&self, v: &IntVec<S>) -> Option<usize> {
        if v.len() != self.num_outcomes() || !v.is_nonnegative() {
            return None;
        }
        self.tests.iter().position(|t| v.leq(t))
    }

    pub fn is_event(&self, v: &IntVec<S>) -> bool {
        self.witness(v).is_some()
    }

    /// Checks that `v` lies in `E(X, T)` and attaches a witness test.
    pub fn event(&self, v: IntVec<S>) -> Result<Event<S>> {
        if v.len() != self.num_outcomes() {
            return Err(Error::DimensionMismatch { expected: self.num_outcomes(), found: v.len() });
        }
        match self.witness(&v) {
            Some(witness) => Ok(Event { vec: v, witness }),
            None => Err(Error::NotAnEvent(v.to_string())),
        }
    }

    pub fn zero_event(&self) -> Event<S> {
        Event { vec: IntVec::zeros(self.num_outcomes()), witness: 0 }
    }

    /// `f ⊥ g`: the sum is an event.
    pub fn is_orthogonal(&self, f: &Event<S>, g: &Event<S>) -> bool {
        self.is_event(&(f.vec() + g.vec()))
    }

    /// `f loc g`: the sum is a test.
    pub fn is_local_complement(&self, f: &Event<S>, g: &Event<S>) -> bool {
        self.is_test(&(f.vec() + g.vec()))
    }

    /// `f ≈_h g`: both `f + h` and `g + h` are tests.
    pub fn approx_via(&self, f: &Event<S>, g: &Event<S>, h: &Event<S>) -> bool {
        self.is_test(&(f.vec() + h.vec())) && self.is_test(&(g.vec() + h.vec()))
    }
}

/// A member of `E(X, T)` together with one test above it.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Event<S> {
    vec: IntVec<S>,
    witness: usize,
}

impl<S: Coord> Event<S> {
    pub fn vec(&self) -> &IntVec<S> {
        &self.vec
    }

    pub fn witness(&self) -> usize {
        self.witness
    }

    pub fn into_vec(self) -> IntVec<S> {
        self.vec
    }
}

/// Every event of `table`, deduplicated and in ascending lexicographic
/// order, so `f_0` comes first.
pub fn enumerate_events<S: Coord>(table: &TestTable<S>, limits: &Limits) -> Result<Vec<Event<S>>> {
    let cap = limits.max_events;
    let mut seen: HashSet<IntVec<S>> = HashSet::new();
    for t in table.tests() {
        if t.down_set_size() > cap {
            return Err(Error::EventBudgetExceeded { cap });
        }
        for f in t.down_set() {
            seen.insert(f);
            if seen.len() > cap {
                return Err(Error::EventBudgetExceeded { cap });
            }
        }
    }
    let mut vecs: Vec<_> = seen.into_iter().collect();
    vecs.sort();
    Ok(vecs
        .into_iter()
        .map(|v| {
            let witness = table.witness(&v).expect("enumerated below a test");
            Event { vec: v, witness }
        })
        .collect())
}

/// Outcome of the algebraicity check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Algebraicity<S> {
    Algebraic,
    /// `f ≈ g` and `h ⊥ f`, yet `h` is not orthogonal to `g`.
    Violated { f: IntVec<S>, g: IntVec<S>, h: IntVec<S> },
}

impl<S: Coord> Algebraicity<S> {
    pub fn is_algebraic(&self) -> bool {
        matches!(self, Algebraicity::Algebraic)
    }

    pub fn into_result(self) -> Result<()> {
        match self {
            Algebraicity::Algebraic => Ok(()),
            Algebraicity::Violated { f, g, h } => {
                Err(Error::NotAlgebraic { f: f.to_string(), g: g.to_string(), h: h.to_string() })
            }
        }
    }
}

/// A test table together with its enumerated events.
#[derive(Debug, Clone)]
pub struct EventSpace<S> {
    table: TestTable<S>,
    events: Vec<Event<S>>,
    index: HashMap<IntVec<S>, usize>,
}

impl<S: Coord> EventSpace<S> {
    pub fn new(table: TestTable<S>, limits: &Limits) -> Result<Self> {
        let events = enumerate_events(&table, limits)?;
        let index = events.iter().enumerate().map(|(i, e)| (e.vec.clone(), i)).collect();
        Ok(EventSpace { table, events, index })
    }

    pub fn table(&self) -> &TestTable<S> {
        &self.table
    }

    pub fn events(&self) -> &[Event<S>] {
        &self.events
    }

    pub fn len(&self) -> usize {
        self.events.len()
    }

    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }

    pub fn event(&self, i: usize) -> &Event<S> {
        &self.events[i]
    }

    pub fn index_of(&self, v: &IntVec<S>) -> Option<usize> {
        self.index.get(v).copied()
    }

    /// `f ≈ g`, decided by scanning every event as a candidate witness.
    pub fn approx(&self, f: &Event<S>, g: &Event<S>) -> bool {
        self.approx_witness(f, g).is_some()
    }

    /// The lexicographically least `h` with `f ≈_h g`.
    pub fn approx_witness(&self, f: &Event<S>, g: &Event<S>) -> Option<&Event<S>> {
        self.events.iter().find(|h| self.table.approx_via(f, g, h))
    }

    fn orthogonal_idx(&self, a: usize, b: usize) -> bool {
        self.index.contains_key(&(self.events[a].vec() + self.events[b].vec()))
    }

    /// For each event, the sorted indices of the events perspective to it.
    ///
    /// Computed through complements: `g ≈ f` iff `g = s - (t - f)` for tests
    /// `t >= f` and `s >= t - f`.
    pub fn perspective_lists(&self) -> Vec<Vec<usize>> {
        self.events
            .iter()
            .map(|f| {
                let mut out: Vec<usize> = Vec::new();
                for t in self.table.tests().iter().filter(|t| f.vec().leq(t)) {
                    let h = t - f.vec();
                    for s in self.table.tests().iter().filter(|s| h.leq(s)) {
                        let g = s - &h;
                        out.push(self.index[&g]);
                    }
                }
                out.sort_unstable();
                out.dedup();
                out
            })
            .collect()
    }

    /// Checks that `f ≈ g` and `h ⊥ f` imply `h ⊥ g` for all events.
    pub fn algebraicity(&self) -> Algebraicity<S> {
        let persp = self.perspective_lists();
        self.algebraicity_with(&persp)
    }

    pub(crate) fn algebraicity_with(&self, persp: &[Vec<usize>]) -> Algebraicity<S> {
        for (f, related) in persp.iter().enumerate() {
            for h in 0..self.events.len() {
                if !self.orthogonal_idx(h, f) {
                    continue;
                }
                if let Some(&g) = related.iter().find(|&&g| !self.orthogonal_idx(h, g)) {
                    return Algebraicity::Violated {
                        f: self.events[f].vec.clone(),
                        g: self.events[g].vec.clone(),
                        h: self.events[h].vec.clone(),
                    };
                }
            }
        }
        Algebraicity::Algebraic
    }

    pub fn is_algebraic(&self) -> bool {
        self.algebraicity().is_algebraic()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example() -> TestTable<i64> {
        TestTable::validate(vec![vec![2, 2, 0], vec![1, 0, 2]]).unwrap()
    }

    fn ev(t: &TestTable<i64>, c: &[i64]) -> Event<i64> {
        t.event(IntVec::new(c.to_vec())).unwrap()
    }

    #[test]
    fn validates_the_example_table() {
        let t = example();
        assert_eq!(t.num_tests(), 2);
        assert_eq!(t.num_outcomes(), 3);
        assert_eq!(t.test(0).coords(), &[2, 2, 0]);
        assert_eq!(t.outcomes().names(), &["a", "b", "c"]);
        let single = TestTable::<i64>::validate(vec![vec![1]]).unwrap();
        assert_eq!(single.num_tests(), 1);
    }

    #[test]
    fn rejects_malformed_tables() {
        let v = |rows: Vec<Vec<i64>>| TestTable::validate(rows).unwrap_err();
        assert!(matches!(v(vec![vec![2, 2, 0], vec![1, 2, 0]]), Error::AntichainViolation { .. }));
        assert_eq!(v(vec![vec![1, 0]]), Error::ZeroColumn("b".into()));
        assert!(matches!(v(vec![vec![1, -1]]), Error::NegativeEntry { row: 0, col: 1 }));
        assert_eq!(v(vec![]), Error::EmptyTable);
        assert!(matches!(v(vec![vec![1, 1], vec![1]]), Error::RaggedRow { .. }));
        assert!(matches!(v(vec![vec![2_000_000]]), Error::EntryTooLarge { .. }));
    }

    #[test]
    fn duplicate_rows_collapse() {
        let t = TestTable::<i64>::validate(vec![vec![1, 0, 2], vec![2, 2, 0], vec![1, 0, 2]]).unwrap();
        assert_eq!(t, example());
    }

    #[test]
    fn outcome_labels_must_match() {
        let names = OutcomeSet::new(vec!["x".into(), "y".into()]).unwrap();
        let err = TestTable::<i64>::from_rows(vec![vec![1, 1, 1]], Some(names), &Limits::default());
        assert!(matches!(err, Err(Error::OutcomeCount { names: 2, width: 3 })));
        assert!(OutcomeSet::new(vec!["x".into(), "x".into()]).is_err());
    }

    #[test]
    fn event_counts() {
        let lim = Limits::default();
        // brute force over the box [0,2]^3
        let t = example();
        let brute = IntVec::<i64>::new(vec![2, 2, 2]).down_set().filter(|f| t.tests().iter().any(|s| f.leq(s))).count();
        assert_eq!(brute, 13);
        assert_eq!(enumerate_events(&t, &lim).unwrap().len(), 13);
        let one = TestTable::<i64>::validate(vec![vec![1]]).unwrap();
        let evs = enumerate_events(&one, &lim).unwrap();
        assert_eq!(evs.iter().map(|e| e.vec()[0]).collect::<Vec<_>>(), vec![0, 1]);
        for n in 1..6 {
            let chain = TestTable::<i64>::validate(vec![vec![n]]).unwrap();
            assert_eq!(enumerate_events(&chain, &lim).unwrap().len(), n as usize + 1);
        }
    }

    #[test]
    fn event_cap_is_enforced() {
        let t = TestTable::<i64>::validate(vec![vec![9, 9, 9]]).unwrap();
        let lim = Limits { max_events: 999, ..Limits::default() };
        assert_eq!(enumerate_events(&t, &lim).unwrap_err(), Error::EventBudgetExceeded { cap: 999 });
        let lim = Limits { max_events: 1000, ..Limits::default() };
        assert_eq!(enumerate_events(&t, &lim).unwrap().len(), 1000);
    }

    #[test]
    fn relations_on_example() {
        let t = example();
        let z = t.zero_event();
        assert!(t.is_orthogonal(&ev(&t, &[1, 0, 0]), &ev(&t, &[0, 0, 2])));
        assert!(!t.is_orthogonal(&ev(&t, &[2, 2, 0]), &ev(&t, &[1, 0, 0])));
        for i in 0..t.num_tests() {
            let test = ev(&t, t.test(i).coords());
            assert!(t.is_orthogonal(&test, &z));
            assert!(t.is_local_complement(&z, &test));
        }
        assert!(t.is_local_complement(&ev(&t, &[1, 0, 0]), &ev(&t, &[0, 0, 2])));
        assert!(!t.is_local_complement(&ev(&t, &[1, 0, 0]), &ev(&t, &[1, 0, 0])));
        let a = ev(&t, &[1, 0, 0]);
        assert!(t.approx_via(&ev(&t, &[1, 2, 0]), &ev(&t, &[0, 0, 2]), &a));
        assert!(!t.approx_via(&a, &ev(&t, &[0, 1, 0]), &a));
        let t1 = ev(&t, &[2, 2, 0]);
        assert!(t.approx_via(&t1, &t1, &z));
    }

    #[test]
    fn approx_on_example() {
        let t = example();
        let sp = EventSpace::new(t.clone(), &Limits::default()).unwrap();
        assert!(sp.approx(&ev(&t, &[2, 2, 0]), &ev(&t, &[1, 0, 2])));
        assert_eq!(sp.approx_witness(&ev(&t, &[2, 2, 0]), &ev(&t, &[1, 0, 2])).unwrap().vec().coords(), &[0, 0, 0]);
        assert_eq!(sp.approx_witness(&ev(&t, &[1, 2, 0]), &ev(&t, &[0, 0, 2])).unwrap().vec().coords(), &[1, 0, 0]);
        assert!(!sp.approx(&ev(&t, &[1, 0, 0]), &ev(&t, &[0, 1, 0])));
    }

    #[test]
    fn perspective_lists_match_scan() {
        let t = example();
        let sp = EventSpace::new(t, &Limits::default()).unwrap();
        let lists = sp.perspective_lists();
        for (i, f) in sp.events().iter().enumerate() {
            for (j, g) in sp.events().iter().enumerate() {
                assert_eq!(lists[i].contains(&j), sp.approx(f, g));
            }
        }
    }

    #[test]
    fn algebraicity() {
        let sp = EventSpace::new(example(), &Limits::default()).unwrap();
        assert!(sp.is_algebraic());
        let one = EventSpace::new(TestTable::<i64>::validate(vec![vec![1]]).unwrap(), &Limits::default()).unwrap();
        assert!(one.is_algebraic());
        // (1,1) ≈ (0,2) via (1,0), and (0,1) ⊥ (1,1) while (0,3) is no event
        let bad = TestTable::<i64>::validate(vec![vec![2, 1], vec![1, 2]]).unwrap();
        let sp = EventSpace::new(bad, &Limits::default()).unwrap();
        match sp.algebraicity() {
            Algebraicity::Violated { f, g, h } => {
                let table = sp.table();
                let (f, g, h) = (table.event(f).unwrap(), table.event(g).unwrap(), table.event(h).unwrap());
                assert!(sp.approx(&f, &g));
                assert!(table.is_orthogonal(&h, &f));
                assert!(!table.is_orthogonal(&h, &g));
            }
            Algebraicity::Algebraic => panic!("expected a violation"),
        }
    }
}
