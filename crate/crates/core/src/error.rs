use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A family, coefficient or run parameter is inconsistent.
    #[error("configuration error: {0}")]
    Config(String),

    /// `alpha_1(0) <= eps`: there is no spectrum below `-eps`.
    #[error("no negative spectrum below -{eps}: alpha_1(0) = {alpha0} does not exceed eps")]
    NoNegativeSpectrum { eps: f64, alpha0: f64 },

    /// The partition needs `psi_1(eps)^a >= 2`.
    #[error(
        "eps = {eps} too large for a = {a}: psi_1(eps)^a = {power} < 2 \
         (admissible eps satisfy psi_1(eps) >= 2^(1/a) = {min_psi1})"
    )]
    EpsTooLarge { eps: f64, a: f64, power: f64, min_psi1: f64 },

    /// `m` violates the admissibility range of the power-decay exponents.
    #[error("m = {m} not admissible for a0 = {a0}: need 0 < m < {sup}")]
    Admissibility { a0: f64, m: f64, sup: f64 },

    /// The oracle can only decouple families with an x-independent eigenbasis.
    #[error("unsupported decoupling: the oracle requires a fixed eigenbasis")]
    UnsupportedDecoupling,

    /// Quadrature, root finding or factorization failure.
    #[error("numeric failure{}: {message}", branch.map(|j| format!(" on branch {j}")).unwrap_or_default())]
    Numeric { branch: Option<usize>, message: String },
}

impl Error {
    pub(crate) fn numeric(message: impl Into<String>) -> Self {
        Error::Numeric { branch: None, message: message.into() }
    }

    pub(crate) fn on_branch(self, j: usize) -> Self {
        match self {
            Error::Numeric { message, .. } => Error::Numeric { branch: Some(j), message },
            other => other,
        }
    }
}
