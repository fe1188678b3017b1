//! Exit codes. Clap uses 2 for usage errors.

use okounkov_core::Error;

pub const IO: u8 = 1;
pub const PARSE: u8 = 3;
pub const INVALID_MODEL: u8 = 4;
pub const PRECONDITION: u8 = 5;
pub const INTERNAL: u8 = 70;

pub fn classify(e: &anyhow::Error) -> (u8, &'static str) {
    let Some(err) = e.downcast_ref::<Error>() else {
        return (IO, "io");
    };
    match err {
        Error::Parse { .. } | Error::DimensionMismatch { .. } => (PARSE, "parse"),
        Error::MalformedModel(_) | Error::InvalidModel(_) => (INVALID_MODEL, "invalid-model"),
        Error::Invariant(_) => (INTERNAL, "internal"),
        Error::NotPseudoeffective => (PRECONDITION, "not-pseudoeffective"),
        Error::NotBig => (PRECONDITION, "not-big"),
        Error::NotNef => (PRECONDITION, "not-nef"),
        Error::FlagNotBigAndNef => (PRECONDITION, "flag-not-big-and-nef"),
        Error::InadmissibleFlag(_) => (PRECONDITION, "inadmissible-flag"),
        Error::StarViolated { .. } => (PRECONDITION, "star-violated"),
        Error::NotSimpleWeyl(_) => (PRECONDITION, "not-simple-weyl"),
        Error::NotDominated => (PRECONDITION, "not-dominated"),
        Error::OriginNotInBody | Error::DeltaUndefined => (PRECONDITION, "delta-undefined"),
        _ => (PRECONDITION, "precondition"),
    }
}
