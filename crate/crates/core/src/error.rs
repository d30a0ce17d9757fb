use thiserror::Error;

/// Errors raised by the library.
///
/// Every fallible operation reports why its precondition failed; none of the
/// variants carry partial results.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("unknown variable `{name}` at byte {pos}: the language has variables x1..x{n_vars}")]
    UnknownVariable {
        pos: usize,
        name: String,
        n_vars: usize,
    },

    #[error("{0} variables exceed the supported maximum of {1}")]
    TooManyVariables(usize, usize),

    #[error("model set over {found} worlds used where {expected} were expected")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("world index {0} out of range for {1} worlds")]
    WorldOutOfRange(usize, usize),

    #[error("mass vector of length {0} is not a power of two between 2 and 65536")]
    BadMassCount(usize),

    #[error("masses sum to {0}, expected exactly 1")]
    MassSumNotOne(String),

    #[error("negative mass {0} at world {1}")]
    NegativeMass(String, usize),

    #[error("world {0} has zero mass but a positive distribution was required")]
    NotPositive(usize),

    #[error("threshold {0} lies outside the admissible interval (1/2, 1]")]
    InvalidThreshold(String),

    #[error("cannot condition on an event of probability zero")]
    NullConditioning,

    #[error("Jeffrey update requires an event with probability strictly between 0 and 1")]
    JeffreyDomain,

    #[error("revision input must be consistent (non-empty event)")]
    InconsistentRevision,

    #[error("operation requires a positive distribution")]
    PositiveRequired,

    #[error("relative entropy undefined: reference mass is zero at world {0} where the argument is positive")]
    KlSupport(usize),

    #[error("exhaustive event scan is limited to {max} variables, got {n_vars}")]
    SizeGate { n_vars: usize, max: usize },

    #[error("threshold 1 not admitted here: the bound divides by 1 - lambda")]
    ThresholdOne,

    #[error("invalid rational literal `{0}`")]
    BadRational(String),

    #[error("unknown theorem tag `{0}`; expected one of T1, T2, T3, P3, F1, P4, C1")]
    UnknownTheorem(String),
}

pub type Result<T> = std::result::Result<T, Error>;
