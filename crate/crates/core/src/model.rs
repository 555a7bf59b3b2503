//! RDF terms, triples, and object tuples.
//!
//! Terms are compared exactly on (kind, lexical form, datatype, language tag);
//! literals never compare by value. All canonical orderings in this crate
//! derive from the `Ord` impls here: IRIs sort before blank nodes, blank nodes
//! before literals, and within a kind terms sort by their lexical form.

use std::fmt;

use thiserror::Error;

/// Violations of the term-level invariants.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TermError {
    #[error("IRI must be a non-empty absolute IRI, got {0:?}")]
    InvalidIri(String),
    #[error("blank node label must be non-empty alphanumeric, got {0:?}")]
    InvalidBlankLabel(String),
    #[error("literal {0:?} cannot appear in subject position")]
    LiteralSubject(String),
    #[error("predicate must be an IRI, got {0}")]
    NonIriPredicate(String),
}

/// A literal value with optional datatype IRI or language tag (never both).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Literal {
    pub lexical: String,
    pub datatype: Option<String>,
    pub language: Option<String>,
}

/// An RDF term: IRI, blank node, or literal.
///
/// The literal payload is boxed to keep terms small; triples and indexes
/// copy terms around freely.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Iri(String),
    Blank(String),
    Literal(Box<Literal>),
}

fn valid_iri(s: &str) -> bool {
    !s.is_empty()
        && s.contains(':')
        && !s
            .chars()
            .any(|c| c.is_whitespace() || matches!(c, '<' | '>' | '"'))
}

fn valid_blank_label(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Term {
    /// Builds an IRI term, checking the absolute-IRI invariant.
    pub fn iri(s: impl Into<String>) -> Result<Self, TermError> {
        let s = s.into();
        if valid_iri(&s) {
            Ok(Term::Iri(s))
        } else {
            Err(TermError::InvalidIri(s))
        }
    }

    /// Builds an IRI term without validation. The caller must pass a
    /// non-empty absolute IRI with no whitespace or angle brackets.
    pub fn iri_unchecked(s: impl Into<String>) -> Self {
        Term::Iri(s.into())
    }

    pub fn blank(label: impl Into<String>) -> Result<Self, TermError> {
        let label = label.into();
        if valid_blank_label(&label) {
            Ok(Term::Blank(label))
        } else {
            Err(TermError::InvalidBlankLabel(label))
        }
    }

    pub fn literal(lexical: impl Into<String>) -> Self {
        Term::Literal(Box::new(Literal {
            lexical: lexical.into(),
            datatype: None,
            language: None,
        }))
    }

    pub fn typed_literal(lexical: impl Into<String>, datatype: impl Into<String>) -> Self {
        Term::Literal(Box::new(Literal {
            lexical: lexical.into(),
            datatype: Some(datatype.into()),
            language: None,
        }))
    }

    pub fn lang_literal(lexical: impl Into<String>, tag: impl Into<String>) -> Self {
        Term::Literal(Box::new(Literal {
            lexical: lexical.into(),
            datatype: None,
            language: Some(tag.into()),
        }))
    }

    pub fn is_iri(&self) -> bool {
        matches!(self, Term::Iri(_))
    }

    pub fn is_literal(&self) -> bool {
        matches!(self, Term::Literal(_))
    }

    /// The bare lexical form, without N-Triples delimiters.
    pub fn lexical(&self) -> &str {
        match self {
            Term::Iri(s) | Term::Blank(s) => s,
            Term::Literal(l) => &l.lexical,
        }
    }
}

fn escape_into(out: &mut String, s: &str) {
    for c in s.chars() {
        match c {
            '\\' => out.push_str("\\\\"),
            '"' => out.push_str("\\\""),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c if (c as u32) < 0x20 => {
                out.push_str(&format!("\\u{:04X}", c as u32));
            }
            c => out.push(c),
        }
    }
}

impl fmt::Display for Term {
    /// Canonical N-Triples rendering of the term.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Iri(s) => write!(f, "<{s}>"),
            Term::Blank(label) => write!(f, "_:{label}"),
            Term::Literal(l) => {
                let mut buf = String::with_capacity(l.lexical.len() + 2);
                escape_into(&mut buf, &l.lexical);
                write!(f, "\"{buf}\"")?;
                if let Some(dt) = &l.datatype {
                    write!(f, "^^<{dt}>")?;
                } else if let Some(tag) = &l.language {
                    write!(f, "@{tag}")?;
                }
                Ok(())
            }
        }
    }
}

/// A directed labeled edge (subject, predicate, object).
///
/// Subjects are IRIs or blank nodes, predicates are IRIs.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Triple {
    pub subject: Term,
    pub predicate: Term,
    pub object: Term,
}

impl Triple {
    pub fn new(subject: Term, predicate: Term, object: Term) -> Result<Self, TermError> {
        if subject.is_literal() {
            return Err(TermError::LiteralSubject(subject.lexical().to_owned()));
        }
        if !predicate.is_iri() {
            return Err(TermError::NonIriPredicate(predicate.to_string()));
        }
        Ok(Triple {
            subject,
            predicate,
            object,
        })
    }

    /// Builds a triple without validating the positional invariants.
    pub fn new_unchecked(subject: Term, predicate: Term, object: Term) -> Self {
        debug_assert!(!subject.is_literal());
        debug_assert!(predicate.is_iri());
        Triple {
            subject,
            predicate,
            object,
        }
    }
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {} .", self.subject, self.predicate, self.object)
    }
}

/// The objects of one entity under a canonically ordered property list,
/// aligned position by position with that list.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ObjectTuple(Vec<Term>);

impl ObjectTuple {
    pub fn new(objects: Vec<Term>) -> Self {
        ObjectTuple(objects)
    }

    pub fn objects(&self) -> &[Term] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for ObjectTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, o) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{o}")?;
        }
        write!(f, ")")
    }
}

/// Returns the canonical form of a property list: sorted lexicographically
/// by predicate IRI, duplicates removed.
pub fn canonical_properties(props: &[Term]) -> Vec<Term> {
    let mut sorted: Vec<Term> = props.to_vec();
    sorted.sort();
    sorted.dedup();
    sorted
}
