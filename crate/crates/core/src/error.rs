use thiserror::Error;

/// Errors shared across the crate.
///
/// Variants split into precondition violations (bad inputs, exceeded
/// budgets) and precision failures (a computation that cannot certify its
/// result at the requested precision). The CLI maps the two classes to
/// distinct exit codes.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("extension degree {0} out of range 1..={1}")]
    DegreeOutOfRange(u32, u32),
    #[error("enumeration budget exceeded: need {needed} elements, budget {budget}")]
    BudgetExceeded { needed: u128, budget: u64 },
    #[error("field order {0} exceeds the configured bound {1}")]
    OrderBoundExceeded(u128, u64),
    #[error("characteristics differ: {0} vs {1}")]
    CharacteristicMismatch(u32, u32),
    #[error("degree {0} does not divide degree {1}")]
    NonDivisibleDegrees(u32, u32),
    #[error("discrete log of zero is undefined")]
    DlogOfZero,
    #[error("element is not primitive")]
    NotPrimitive,
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("polynomial is not irreducible")]
    NotIrreducible,
    #[error("division by zero")]
    DivisionByZero,
    #[error("series is zero to its known precision; cannot invert")]
    InvertZeroSeries,
    #[error("series is exact with infinite tail demand; truncate before this operation")]
    TruncationRequired,
    #[error("series is not a one-unit")]
    NotOneUnit,
    #[error("local field descriptors differ")]
    DescriptorMismatch,
    #[error("ramification index {0} is divisible by the characteristic {1}")]
    WildRamification(u32, u32),
    #[error("insufficient precision to certify the Newton polygon near index {0}")]
    InsufficientPrecision(usize),
    #[error("requested precision {requested} unreachable; achievable {achievable}")]
    PrecisionUnderflow { requested: i64, achievable: i64 },
    #[error("Newton iteration stalled at residual valuation {0}")]
    Stalled(i64),
    #[error("segment slope is fractional; no residual polynomial")]
    FractionalSlope,
    #[error("empty polynomial input")]
    EmptyInput,
    #[error("leading coefficient of x^0 vanishes to known precision")]
    VanishingConstantTerm,
    #[error("permutation support exceeds the representable digit window")]
    WindowExceeded,
    #[error("series monomial exponents outside the window of the digit action")]
    ExponentOutsideWindow,
    #[error("integer overflow in digit/integer conversion")]
    Overflow,
    #[error("subgroup index {0} does not divide the group order {1}")]
    IndexDoesNotDivide(u64, u64),
    #[error("subgroup index {0} is divisible by the characteristic {1}")]
    IndexDivisibleByP(u64, u32),
    #[error("character index {0} out of range [0, {1})")]
    CharacterIndexOutOfRange(u64, u64),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// True for failures of precision or iteration convergence rather than
    /// of input validity.
    pub fn is_precision_failure(&self) -> bool {
        matches!(
            self,
            Error::InsufficientPrecision(_)
                | Error::PrecisionUnderflow { .. }
                | Error::Stalled(_)
                | Error::InvertZeroSeries
                | Error::TruncationRequired
        )
    }
}
