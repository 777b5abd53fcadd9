use thiserror::Error;

/// Every failure the library can report.
///
/// The CLI maps these onto its exit codes through [`Error::exit_code`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid modulus {0}: expected a prime")]
    InvalidModulus(u64),
    #[error("malformed numeral: {0}")]
    MalformedNumeral(String),
    #[error("numerals use different moduli ({0} and {1})")]
    MismatchedModuli(u32, u32),
    #[error("every digit above the suffix is p-1; left-pad the numeral with a zero first")]
    NoAnchorDigit,
    #[error("even fold needs a zero middle coefficient, got a0 = {0}")]
    InapplicableFold(i64),
    #[error("unsupported trinomial shape: {0}")]
    UnsupportedShape(String),
    #[error("out of scope: {0}")]
    OutOfScope(String),
    #[error("p = {p} divides 2*a1 = {twice_a1}; use the periodic branch")]
    DegenerateSide { p: u32, twice_a1: i64 },
    #[error("invalid combination: {0}")]
    InvalidCombo(String),
    #[error("hypothesis violated: p = {p} divides a_{zero_digit}")]
    HypothesisViolated { p: u32, zero_digit: u32 },
    #[error("inapplicable: {0}")]
    Inapplicable(String),
    #[error("unknown sequence {0:?}")]
    UnknownSequence(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("work budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("internal construction failure: {0}")]
    ConstructionBug(String),
}

impl Error {
    /// 2 inapplicable / hypothesis violated, 3 malformed input, 4 budget exceeded.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::NoAnchorDigit
            | Error::InapplicableFold(_)
            | Error::UnsupportedShape(_)
            | Error::OutOfScope(_)
            | Error::DegenerateSide { .. }
            | Error::InvalidCombo(_)
            | Error::HypothesisViolated { .. }
            | Error::Inapplicable(_) => 2,
            Error::InvalidModulus(_)
            | Error::MalformedNumeral(_)
            | Error::MismatchedModuli(..)
            | Error::UnknownSequence(_)
            | Error::Parse(_) => 3,
            Error::BudgetExceeded(_) => 4,
            Error::ConstructionBug(_) => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
