use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at offset {offset}: expected {}{}", expected.join(" or "), found.as_ref().map(|f| format!(", found {f}")).unwrap_or_default())]
    Syntax {
        offset: usize,
        expected: Vec<String>,
        found: Option<String>,
    },

    #[error("unknown label `{0}`")]
    UnknownLabel(String),

    #[error("invalid label `{0}`")]
    InvalidLabel(String),

    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),

    #[error("malformed tree: {0}")]
    MalformedTree(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("limit exceeded: {0}")]
    LimitExceeded(String),

    #[error("enumeration of {required} candidates exceeds the step budget of {budget}")]
    BoundsTooLarge { required: u128, budget: u128 },

    #[error("order violates the representation conditions: {0}")]
    ConditionsViolated(String),

    #[error("seed pair is already derivable")]
    SeedDerivable,

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("linear engines disagree on feasibility")]
    EngineDisagreement,

    #[error("internal invariant broken: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn syntax(offset: usize, expected: &[&str], found: Option<String>) -> Self {
        Error::Syntax {
            offset,
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found,
        }
    }

    /// True for errors caused by resource bounds rather than bad input.
    pub fn is_resource_limit(&self) -> bool {
        matches!(self, Error::LimitExceeded(_) | Error::BoundsTooLarge { .. })
    }
}
