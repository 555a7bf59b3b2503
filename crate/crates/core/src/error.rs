//! Crate-wide error type.

use thiserror::Error;

use crate::detect::Diagnostics;
use crate::model::{Term, TermError};
use crate::ntriples::ParseError;

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Term(#[from] TermError),

    #[error(transparent)]
    Parse(#[from] ParseError),

    /// An entity carries more than one object for a property assumed functional.
    #[error("functionality violated: {subject} has multiple objects for {property}")]
    FunctionalityViolation { subject: Term, property: Term },

    /// Multiplicity inverse requested for a tuple no entity matches.
    #[error("multiplicity inverse undefined: no entity matches tuple {tuple}")]
    UndefinedInverse { tuple: String },

    #[error("property set must be non-empty")]
    EmptyPropertySet,

    #[error("properties {missing:?} are not part of the full property set")]
    NotASubset { missing: Vec<String> },

    #[error(
        "{properties} properties exceed the cap of {cap}: enumerating \
         {estimated_subsets} subsets refused"
    )]
    SubsetCapExceeded {
        properties: usize,
        cap: usize,
        estimated_subsets: u128,
    },

    #[error("no candidate property subsets to evaluate")]
    NoCandidates,

    #[error("detection needs at least 2 properties, found {found}")]
    TooFewProperties { found: usize },

    #[error("pattern space does not cover the requested property set: {0}")]
    IncompletePatternSpace(String),

    #[error("invalid subset chain: {0}")]
    InvalidSubsetChain(String),

    #[error("assumptions violated:\n{0}")]
    AssumptionsViolated(Diagnostics),

    /// An entity points at more than one surrogate.
    #[error("entity {entity} is linked to multiple surrogates")]
    NotFunctionalInstanceOf { entity: Term },

    /// A surrogate referenced by an entity owns no triples.
    #[error("surrogate {surrogate} has no triples to expand from")]
    DanglingSurrogate { surrogate: Term },

    #[error("savings undefined: the original graph has no counted edges")]
    UndefinedSavings,

    #[error("invalid generator spec: {0}")]
    InvalidGeneratorSpec(String),
}

pub type Result<T> = std::result::Result<T, Error>;
