//! Bounded exhaustive search over small test tables.
//!
//! Tables are enumerated once per canonical class: the lexicographically
//! least matrix over all column permutations, rows sorted descending.
//! Non-algebraic tables are counted and skipped.

use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicUsize, Ordering};

use itertools::Itertools;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::etspace::{EventSpace, Limits, TestTable};
use crate::format::write_eta;
use crate::pialgebra::PiAlgebra;
use crate::scalar::Coord;
use crate::structure::{analyze, StructureReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Predicate {
    Algebraic,
    Homogeneous,
    NotHomogeneous,
    ELattice,
    NotELattice,
    EsLattice,
    NotEsLattice,
}

impl Predicate {
    pub const ALL: [Predicate; 7] = [
        Predicate::Algebraic,
        Predicate::Homogeneous,
        Predicate::NotHomogeneous,
        Predicate::ELattice,
        Predicate::NotELattice,
        Predicate::EsLattice,
        Predicate::NotEsLattice,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Predicate::Algebraic => "algebraic",
            Predicate::Homogeneous => "homogeneous",
            Predicate::NotHomogeneous => "not-homogeneous",
            Predicate::ELattice => "E-lattice",
            Predicate::NotELattice => "not-E-lattice",
            Predicate::EsLattice => "ES-lattice",
            Predicate::NotEsLattice => "not-ES-lattice",
        }
    }

    /// Holds for a report of an algebraic table.
    pub fn holds(self, report: &StructureReport) -> bool {
        match self {
            Predicate::Algebraic => true,
            Predicate::Homogeneous => report.homogeneity.homogeneous,
            Predicate::NotHomogeneous => !report.homogeneity.homogeneous,
            Predicate::ELattice => report.e_lattice.is_lattice,
            Predicate::NotELattice => !report.e_lattice.is_lattice,
            Predicate::EsLattice => report.es_lattice.is_lattice,
            Predicate::NotEsLattice => !report.es_lattice.is_lattice,
        }
    }
}

impl FromStr for Predicate {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Predicate::ALL
            .into_iter()
            .find(|p| p.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::UnknownPredicate(s.to_string()))
    }
}

impl fmt::Display for Predicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Parses a comma-separated predicate list.
pub fn parse_predicates(s: &str) -> Result<Vec<Predicate>> {
    s.split(',').filter(|p| !p.trim().is_empty()).map(str::parse).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchConfig {
    /// Exact number of outcomes (columns).
    pub outcomes: usize,
    /// Tables with 1 to `max_tests` tests are enumerated.
    pub max_tests: usize,
    /// Entries range over `0..=max_entry`.
    pub max_entry: u32,
    pub predicates: Vec<Predicate>,
    /// Cap on the number of canonical tables.
    pub budget: usize,
}

impl SearchConfig {
    pub fn new(outcomes: usize, max_tests: usize, max_entry: u32) -> Self {
        SearchConfig { outcomes, max_tests, max_entry, predicates: vec![Predicate::Algebraic], budget: 1_000_000 }
    }

    pub fn with_predicates(mut self, predicates: Vec<Predicate>) -> Self {
        self.predicates = predicates;
        self
    }

    pub fn with_budget(mut self, budget: usize) -> Self {
        self.budget = budget;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.outcomes == 0 || self.max_tests == 0 || self.max_entry == 0 || self.budget == 0 {
            return Err(Error::InvalidConfig("all bounds and the budget must be at least 1".into()));
        }
        if self.outcomes > 8 {
            return Err(Error::InvalidConfig("column-permutation canonicalization supports at most 8 outcomes".into()));
        }
        Ok(())
    }
}

/// Lexicographically least row-sorted matrix over all column permutations.
pub fn canonical_form<S: Coord>(rows: &[Vec<S>]) -> Vec<Vec<S>> {
    let width = rows.first().map_or(0, Vec::len);
    (0..width)
        .permutations(width)
        .map(|perm| {
            let mut m: Vec<Vec<S>> = rows.iter().map(|r| perm.iter().map(|&j| r[j]).collect()).collect();
            m.sort_by(|a, b| b.cmp(a));
            m.dedup();
            m
        })
        .min()
        .unwrap_or_default()
}

fn key_of<S: Coord>(rows: &[Vec<S>]) -> String {
    rows.iter().map(|r| r.iter().join(",")).join(";")
}

/// Key identifying a table up to row order and column permutation.
pub fn canonical_key<S: Coord>(rows: &[Vec<S>]) -> String {
    key_of(&canonical_form(rows))
}

pub fn table_key<S: Coord>(table: &TestTable<S>) -> String {
    canonical_key(&table_rows(table))
}

fn table_rows<S: Coord>(table: &TestTable<S>) -> Vec<Vec<S>> {
    table.tests().iter().map(|t| t.coords().to_vec()).collect()
}

/// The canonical representative of a table, with default outcome names.
pub fn canonicalize<S: Coord>(table: &TestTable<S>) -> TestTable<S> {
    TestTable::validate(canonical_form(&table_rows(table))).expect("canonical form of a valid table is valid")
}

fn incomparable<S: Coord>(a: &[S], b: &[S]) -> bool {
    let le = a.iter().zip(b).all(|(x, y)| x <= y);
    let ge = a.iter().zip(b).all(|(x, y)| x >= y);
    !le && !ge
}

/// Every canonical E-test space within the bounds, sorted by canonical key.
pub fn enumerate_tables<S: Coord>(cfg: &SearchConfig) -> Result<Vec<TestTable<S>>> {
    cfg.validate()?;
    let values: Vec<S> = (0..=cfg.max_entry as usize)
        .map(S::from_count)
        .collect::<Option<_>>()
        .ok_or_else(|| Error::InvalidConfig("entry bound too large".into()))?;
    let mut rows: Vec<Vec<S>> = (0..cfg.outcomes)
        .map(|_| values.iter().copied())
        .multi_cartesian_product()
        .filter(|r| r.iter().any(|c| !c.is_zero()))
        .collect();
    rows.sort_by(|a, b| b.cmp(a));

    let emitted = AtomicUsize::new(0);
    let ctx = Ctx { rows: &rows, cfg, emitted: &emitted };
    let mut found: Vec<(String, Vec<Vec<S>>)> = (0..rows.len())
        .into_par_iter()
        .map(|first| {
            let mut out = Vec::new();
            ctx.extend(&mut vec![first], &mut out)?;
            Ok(out)
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    found.sort();
    found
        .into_iter()
        .map(|(_, m)| TestTable::validate(m))
        .collect()
}

struct Ctx<'a, S> {
    rows: &'a [Vec<S>],
    cfg: &'a SearchConfig,
    emitted: &'a AtomicUsize,
}

impl<S: Coord> Ctx<'_, S> {
    fn extend(&self, chosen: &mut Vec<usize>, out: &mut Vec<(String, Vec<Vec<S>>)>) -> Result<()> {
        let m: Vec<Vec<S>> = chosen.iter().map(|&i| self.rows[i].clone()).collect();
        let covers = (0..self.cfg.outcomes).all(|x| m.iter().any(|r| !r[x].is_zero()));
        if covers && canonical_form(&m) == m {
            if self.emitted.fetch_add(1, Ordering::Relaxed) >= self.cfg.budget {
                return Err(Error::BudgetExceeded { budget: self.cfg.budget });
            }
            out.push((key_of(&m), m));
        }
        if chosen.len() == self.cfg.max_tests {
            return Ok(());
        }
        let last = *chosen.last().expect("nonempty");
        for next in last + 1..self.rows.len() {
            if chosen.iter().all(|&i| incomparable(&self.rows[i], &self.rows[next])) {
                chosen.push(next);
                self.extend(chosen, out)?;
                chosen.pop();
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Finding<S> {
    #[serde(skip)]
    pub table: TestTable<S>,
    /// The table in `.eta` text.
    pub eta: String,
    pub canonical_key: String,
    /// Human labels of the classes, indexed by class id.
    pub labels: Vec<String>,
    pub report: StructureReport,
}

#[derive(Debug, Clone, Serialize)]
pub struct SearchOutcome<S> {
    /// Canonical tables enumerated.
    pub tables: usize,
    pub non_algebraic: usize,
    pub findings: Vec<Finding<S>>,
}

/// Analyzes every algebraic canonical table and keeps those satisfying all
/// predicates. Output order is the canonical-key order, independent of the
/// number of worker threads.
pub fn run_search<S: Coord>(cfg: &SearchConfig, limits: &Limits) -> Result<SearchOutcome<S>> {
    let tables = enumerate_tables::<S>(cfg)?;
    let analyzed: Vec<Option<Option<Finding<S>>>> = tables
        .par_iter()
        .map(|table| {
            let space = EventSpace::new(table.clone(), limits)?;
            if !space.is_algebraic() {
                return Ok(None);
            }
            let alg = PiAlgebra::build(space)?;
            let report = analyze(&alg)?;
            if !cfg.predicates.iter().all(|p| p.holds(&report)) {
                return Ok(Some(None));
            }
            Ok(Some(Some(Finding {
                eta: write_eta(table),
                canonical_key: table_key(table),
                labels: alg.ids().map(|p| alg.label(p)).collect(),
                table: table.clone(),
                report,
            })))
        })
        .collect::<Result<_>>()?;
    let non_algebraic = analyzed.iter().filter(|a| a.is_none()).count();
    Ok(SearchOutcome { tables: tables.len(), non_algebraic, findings: analyzed.into_iter().flatten().flatten().collect() })
}
