use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid potential: {0}")]
    InvalidPotential(String),

    #[error("cannot parse {what}: {detail}")]
    Parse { what: &'static str, detail: String },

    #[error("{0}")]
    Argument(String),

    #[error("no convergence: {0}")]
    Convergence(String),

    #[error("potential is not one-cut regular: {0}")]
    NotOneCut(String),

    #[error("singular quadrature self-check failed: {0}")]
    Quadrature(String),

    #[error("series arithmetic failed: {0}")]
    Series(String),

    #[error("A1/B1 dependence of beta1 did not cancel: {0}")]
    Cancellation(String),

    #[error("precision budget exceeded: {0}")]
    Precision(String),

    #[error("ill-conditioned fit: {0}")]
    IllConditioned(String),
}

impl Error {
    pub(crate) fn parse(what: &'static str, detail: impl Into<String>) -> Self {
        Error::Parse { what, detail: detail.into() }
    }
}
