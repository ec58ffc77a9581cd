use thiserror::Error;

/// Errors raised by library operations.
///
/// Every variant except [`Error::Parse`] is a domain error: the input was
/// well-formed but violates the precondition of the operation.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("form is degenerate")]
    Degenerate,
    #[error("form is not {0}")]
    NotDefinite(&'static str),
    #[error("pairing is not unimodular (det = {0})")]
    NotUnimodular(String),
    #[error("vector is not primitive (content {0})")]
    NotPrimitive(String),
    #[error("vector is not isotropic (square {0})")]
    NotIsotropic(String),
    #[error("subgroup is not a direct summand")]
    NotSummand,
    #[error("knot has infinite order in H_1")]
    InfiniteOrder,
    #[error("invalid class: {0}")]
    InvalidClass(String),
    #[error("unknown manifold '{0}'")]
    UnknownManifold(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("internal inconsistency: {0}")]
    Inconsistency(String),
    #[error("integer overflow in {0}")]
    Overflow(&'static str),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Stable machine-readable tag, used in JSON error documents.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Dimension(_) => "dimension",
            Error::NotSquare { .. } => "not_square",
            Error::NotSymmetric => "not_symmetric",
            Error::Degenerate => "degenerate",
            Error::NotDefinite(_) => "not_definite",
            Error::NotUnimodular(_) => "not_unimodular",
            Error::NotPrimitive(_) => "not_primitive",
            Error::NotIsotropic(_) => "not_isotropic",
            Error::NotSummand => "not_summand",
            Error::InfiniteOrder => "infinite_order",
            Error::InvalidClass(_) => "invalid_class",
            Error::UnknownManifold(_) => "unknown_manifold",
            Error::Precondition(_) => "precondition",
            Error::Inconsistency(_) => "inconsistency",
            Error::Overflow(_) => "overflow",
            Error::Parse(_) => "parse",
        }
    }

    pub fn is_parse(&self) -> bool {
        matches!(self, Error::Parse(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
