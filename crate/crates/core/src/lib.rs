//! Frequent star pattern detection and RDF graph factorization.
//!
//! Entities of one class often share the same objects on a group of
//! properties. This crate finds the property subset for which those shared
//! star patterns dominate, rewrites each shared pattern into a compact
//! molecule rooted at a deterministic surrogate entity, and reports the node
//! and edge savings. The rewrite is lossless: `expand` rebuilds the original
//! graph from the factorized one.
//!
//! Modules follow the pipeline: [`model`] and [`graph`] hold the RDF data
//! model with its indexes, [`ntriples`] reads and writes the line format,
//! [`stats`] computes the grouping and edge arithmetic, [`detect`] searches
//! the property-subset space, [`factorize`] materializes and expands the
//! rewritten graph, and [`generate`] produces seeded synthetic datasets.
//!
//! ```
//! use fsp_core::detect::detect_greedy;
//! use fsp_core::factorize::{expand, factorize, savings_report};
//! use fsp_core::{parse_ntriples_str, EdgeConvention, Term};
//!
//! let g = parse_ntriples_str(fsp_core::fixture::FIXTURE_NT)?;
//! let class = Term::iri("urn:ex:C")?;
//! let s = g.class_properties(&class);
//!
//! let found = detect_greedy(&g, &class, &s)?;
//! let (compact, mapping) = factorize(&g, &class, &found.best_properties)?;
//! let report = savings_report(&g, &compact, &class, &s, EdgeConvention::WithTypeEdges)?;
//! assert_eq!(report.percent_savings, 40.0);
//! assert_eq!(expand(&compact, Some(&mapping))?, g);
//! # Ok::<(), fsp_core::Error>(())
//! ```

pub mod detect;
pub mod error;
pub mod factorize;
pub mod fixture;
pub mod generate;
pub mod graph;
pub mod model;
pub mod ntriples;
pub mod stats;

pub use error::{Error, Result};
pub use graph::{Graph, Vocabulary, INSTANCE_OF, RDF_TYPE};
pub use model::{canonical_properties, Literal, ObjectTuple, Term, TermError, Triple};
pub use ntriples::{parse_ntriples, parse_ntriples_str, serialize_ntriples, ParseError};
pub use stats::{
    build_star_table, edge_count_objective, factorized_edge_count, labeled_edge_count,
    repetition_histogram, EdgeConvention, StarPatternTable,
};
