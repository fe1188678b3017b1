use thiserror::Error;

use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected} coordinates, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("malformed model: {0}")]
    MalformedModel(String),

    #[error("model failed validation: {}", .0.join("; "))]
    InvalidModel(Vec<String>),

    #[error("curve subset {0:?} is not strictly increasing within range")]
    InvalidSubset(Vec<usize>),

    #[error("class is not pseudoeffective")]
    NotPseudoeffective,

    #[error("class is not big")]
    NotBig,

    #[error("class is not nef")]
    NotNef,

    #[error("flag curve must be big and nef")]
    FlagNotBigAndNef,

    #[error("inadmissible flag: {0}")]
    InadmissibleFlag(String),

    #[error("pseudoeffective threshold is unbounded along the given curve class")]
    UnboundedThreshold,

    #[error("support {0:?} does not have a negative definite intersection matrix")]
    NotNegativeDefinite(Vec<usize>),

    #[error("condition (star) fails for negative curves {first} and {second}; use the upper bound instead")]
    StarViolated { first: String, second: String },

    #[error("model is not simple-Weyl: chamber support {0:?} has a non-diagonal intersection matrix")]
    NotSimpleWeyl(Vec<usize>),

    #[error("no ample class found: the nef cone has empty interior against the effective generators")]
    NoAmpleClass,

    #[error("no polygon-verified Minkowski decomposition; tried {} coordinate candidates", .candidates.len())]
    NoVerifiedDecomposition {
        candidates: Vec<Vec<(usize, Rational)>>,
    },

    #[error("parameter t = {t} lies outside [{lo}, {hi}]")]
    OutOfRange {
        t: Rational,
        lo: Rational,
        hi: Rational,
    },

    #[error("scale factor must be positive, got {0}")]
    NonPositiveScale(Rational),

    #[error("beta must be positive, got {0}")]
    NonPositiveBeta(Rational),

    #[error("class difference D - A is not pseudoeffective")]
    NotDominated,

    #[error("origin is not contained in the Okounkov polygon of A")]
    OriginNotInBody,

    #[error("no finite scaling of the polygon of A covers the polygon of D")]
    DeltaUndefined,

    #[error("internal invariant violated: {0}")]
    Invariant(String),

    #[error("{line}:{column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
