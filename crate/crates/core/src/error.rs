use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown token `{0}`")]
    UnknownToken(String),

    #[error("token `{token}` has index outside 1..={m}")]
    IndexOutOfRange { token: String, m: u16 },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A level `t` outside the open domain of the spectrum, or a similar
    /// range violation on a real-valued argument.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("numeric failure: {0}")]
    Numeric(String),

    #[error("work budget exceeded: (M+1)^n = {estimate:.3e} for M={m}, n={n} exceeds budget {budget:.3e}")]
    WorkBudget {
        m: u16,
        n: usize,
        estimate: f64,
        budget: f64,
    },

    #[error("io: {0}")]
    Io(#[from] std::io::Error),

    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Numeric(_) => 2,
            Error::WorkBudget { .. } => 3,
            _ => 1,
        }
    }

    /// Short stable identifier of the error class.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::UnknownToken(_) | Error::IndexOutOfRange { .. } => "parse",
            Error::InvalidInput(_) => "invalid-input",
            Error::Domain(_) => "domain",
            Error::Numeric(_) => "numeric",
            Error::WorkBudget { .. } => "work-budget",
            Error::Io(_) => "io",
            Error::Csv(_) => "csv",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
