use thiserror::Error;

/// Errors raised by table validation, algebra construction and analysis.
///
/// Vectors are carried in their rendered form so the type stays independent
/// of the coordinate type.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("table has no tests")]
    EmptyTable,
    #[error("row {row} has {found} entries, expected {expected}")]
    RaggedRow { row: usize, expected: usize, found: usize },
    #[error("negative entry at row {row}, column {col}")]
    NegativeEntry { row: usize, col: usize },
    #[error("entry at row {row}, column {col} exceeds the bound {bound}")]
    EntryTooLarge { row: usize, col: usize, bound: u64 },
    #[error("outcome {0} is zero in every test")]
    ZeroColumn(String),
    #[error("tests are not an antichain: {smaller} <= {larger}")]
    AntichainViolation { smaller: String, larger: String },
    #[error("outcome label {0} is used twice")]
    DuplicateOutcome(String),
    #[error("{names} outcome labels for {width} columns")]
    OutcomeCount { names: usize, width: usize },
    #[error("more than {cap} events")]
    EventBudgetExceeded { cap: usize },
    #[error("vector has {found} coordinates, expected {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("{0} is not below any test")]
    NotAnEvent(String),
    #[error("table is not algebraic: {f} ~ {g} and {h} is orthogonal to {f} but not to {g}")]
    NotAlgebraic { f: String, g: String, h: String },
    #[error("effect-algebra axiom violated: {0}")]
    AxiomViolation(String),
    #[error("the isotropic index of 0 is unbounded")]
    ZeroIsotropy,
    #[error("algebra is not homogeneous")]
    NotHomogeneous,
    #[error("equivalent criteria disagree: {0}")]
    CriteriaDisagree(String),
    #[error("search budget of {budget} tables exceeded")]
    BudgetExceeded { budget: usize },
    #[error("invalid search configuration: {0}")]
    InvalidConfig(String),
    #[error("unknown predicate {0:?}")]
    UnknownPredicate(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

impl Error {
    /// True for failures that indicate a bug rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::AxiomViolation(_) | Error::CriteriaDisagree(_))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
