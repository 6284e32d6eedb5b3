use thiserror::Error;

/// Every failure the library can report.
///
/// The variants group into the classes used for CLI exit codes, see
/// [`Error::exit_code`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("d = {0} is not squarefree")]
    NotSquarefree(u64),

    #[error("d must be a positive integer, got {0}")]
    InvalidField(u64),

    #[error("the zero ideal is not supported")]
    ZeroIdeal,

    #[error("ideals belong to different fields (D = {0} and D = {1})")]
    FieldMismatch(i64, i64),

    #[error("norm {norm} has a prime factor above the trial-division bound {bound}")]
    NormFactorizationFailure { norm: u64, bound: u64 },

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("{r} is not a root of the minimal polynomial of w modulo {p}")]
    NotARoot { p: u64, r: u64 },

    #[error("the prime 2 is non-decomposed in K (D = {disc}); no index formula is available")]
    Prime2NonDecomposed { disc: i64 },

    #[error("expected a prime-power ideal, got {0} distinct prime factors")]
    NotPrimePower(usize),

    #[error("class number formula produced {0}, which is not a positive integer")]
    NonIntegralClassNumber(String),

    #[error("congruence subgroup is not certified neat; the dimension formula does not apply")]
    NotNeat,

    #[error("weight k = {0} is below 2")]
    WeightTooSmall(i64),

    #[error("dimension formula produced {value} for k = {k}, which is not a nonnegative integer")]
    NonIntegralDimension { k: i64, value: String },

    #[error("division by zero: {0}")]
    DivisionByZero(&'static str),

    #[error("enumeration needs {needed} elements, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("{0}")]
    Io(String),
}

impl Error {
    /// Process exit code for the CLI.
    ///
    /// 2 input/parse, 3 unsupported (non-decomposed 2), 4 hypothesis
    /// violation, 5 internal invariant breach, 1 I/O.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::NotSquarefree(_)
            | Error::InvalidField(_)
            | Error::ZeroIdeal
            | Error::NotPrime(_)
            | Error::NotARoot { .. }
            | Error::Parse(_)
            | Error::FieldMismatch(..) => 2,
            Error::Prime2NonDecomposed { .. } | Error::NormFactorizationFailure { .. } => 3,
            Error::NotNeat | Error::WeightTooSmall(_) | Error::NotPrimePower(_) => 4,
            Error::NonIntegralClassNumber(_)
            | Error::NonIntegralDimension { .. }
            | Error::DivisionByZero(_) => 5,
            Error::BudgetExceeded { .. } | Error::Io(_) => 1,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
