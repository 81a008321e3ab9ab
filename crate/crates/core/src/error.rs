use thiserror::Error;

use crate::rational::Rational;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown {kind} label `{label}`")]
    UnknownLabel { kind: &'static str, label: String },

    #[error("duplicate {kind} label `{label}`")]
    DuplicateLabel { kind: &'static str, label: String },

    #[error("site `{0}` must declare at least one measurement and one outcome")]
    EmptySite(String),

    #[error("a model needs at least one site")]
    NoSites,

    #[error("expected {expected} labels per tuple, found {found}")]
    Arity { expected: usize, found: usize },

    #[error("conditioning event {0} has probability zero")]
    NullConditioning(String),

    #[error("site signatures differ")]
    SignatureMismatch,

    #[error("malformed model file: {0}")]
    Syntax(String),

    #[error("`{0}` is not a fraction of the form num/den")]
    BadFraction(String),

    #[error("negative weight {weight} at {at}")]
    NegativeWeight { at: String, weight: Box<Rational> },

    #[error("weights sum to {total}, not 1 (deficit {deficit})")]
    WeightSum {
        total: Box<Rational>,
        deficit: Box<Rational>,
    },

    #[error("tuple {0} is listed more than once")]
    DuplicateEntry(String),

    #[error("{0}")]
    LambdaMismatch(String),

    #[error("{0}")]
    NotApplicable(String),

    #[error("sites are not exchangeable: {0}")]
    Heterogeneous(String),

    #[error("{what} needs {count} items, above the guard of {guard}")]
    SizeGuard {
        what: &'static str,
        count: String,
        guard: u64,
    },

    #[error("property set {0} is not closed under the implication rules")]
    NotClosed(String),

    #[error("{0}")]
    Usage(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
