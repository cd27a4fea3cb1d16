//! Finite effect algebras built from algebraic E-test spaces.
//!
//! A [`TestTable`] lists the tests of an E-test space as rows of
//! nonnegative integers. [`build_pi`] forms the quotient effect algebra
//! `Π(X)`; [`joinmeet`] decides joins and meets from quadruples of tests;
//! [`structure`] reports atoms, isotropic indices, homogeneity and sharp
//! elements; [`search`] enumerates small tables looking for structural
//! counterexamples.
//!
//! The modules are generic over the coordinate type (see [`scalar::Coord`]).
//! The aliases exported here fix it to `i64`.

pub mod error;
pub mod etspace;
pub mod export;
pub mod format;
pub mod joinmeet;
pub mod pialgebra;
pub mod scalar;
pub mod search;
pub mod structure;
pub mod vector;

pub use error::{Error, Result};
pub use etspace::{Limits, OutcomeSet};
pub use pialgebra::ClassId;

pub type IntVec = vector::IntVec<i64>;
pub type TestTable = etspace::TestTable<i64>;
pub type Event = etspace::Event<i64>;
pub type EventSpace = etspace::EventSpace<i64>;
pub type PiAlgebra = pialgebra::PiAlgebra<i64>;
pub type LatticeAnswer = joinmeet::LatticeAnswer;
pub type StructureReport = structure::StructureReport;
pub type Finding = search::Finding<i64>;

/// Validates `rows` and builds `Π(X)` with default limits.
pub fn build_pi(table: TestTable) -> Result<PiAlgebra> {
    pialgebra::build_pi(table, &Limits::default())
}
