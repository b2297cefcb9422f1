use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("configuration error: {0}")]
    Config(String),
    #[error("budget refused: {0}")]
    Budget(String),
    #[error("solver failure: {0}")]
    Solver(String),
    #[error("quadrature did not converge: {message} (achieved bound {achieved:e})")]
    Quadrature { message: String, achieved: f64 },
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Process exit code used by the command line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Domain(_) | Error::Config(_) => 2,
            Error::Budget(_) => 3,
            Error::Solver(_) | Error::Quadrature { .. } | Error::Io(_) => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
