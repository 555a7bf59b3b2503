//! In-memory indexed RDF graph.
//!
//! The graph keeps set semantics over its triples and maintains three
//! indexes: subject -> triples, (predicate, object) -> subjects, and
//! class -> instances (built from triples whose predicate is the configured
//! type predicate). Graphs are append-only; once loaded they are safe to
//! share across threads for reading.

use std::collections::{BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::model::{ObjectTuple, Term, Triple};

/// The full IRI the `type` predicate abbreviates.
pub const RDF_TYPE: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";

/// Default predicate linking an original entity to its surrogate.
pub const INSTANCE_OF: &str = "urn:fsp:instanceOf";

/// The two predicates with structural meaning, overridable per graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vocabulary {
    pub type_predicate: Term,
    pub instance_of: Term,
}

impl Default for Vocabulary {
    fn default() -> Self {
        Vocabulary {
            type_predicate: Term::iri_unchecked(RDF_TYPE),
            instance_of: Term::iri_unchecked(INSTANCE_OF),
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct Graph {
    vocab: Vocabulary,
    triples: BTreeSet<Triple>,
    by_subject: HashMap<Term, BTreeSet<Triple>>,
    subjects_by_po: HashMap<(Term, Term), BTreeSet<Term>>,
    instances_by_class: HashMap<Term, BTreeSet<Term>>,
}

impl Graph {
    pub fn new() -> Self {
        Self::with_vocabulary(Vocabulary::default())
    }

    pub fn with_vocabulary(vocab: Vocabulary) -> Self {
        Graph {
            vocab,
            triples: BTreeSet::new(),
            by_subject: HashMap::new(),
            subjects_by_po: HashMap::new(),
            instances_by_class: HashMap::new(),
        }
    }

    pub fn from_triples(triples: impl IntoIterator<Item = Triple>) -> Self {
        let mut g = Graph::new();
        g.extend(triples);
        g
    }

    pub fn vocabulary(&self) -> &Vocabulary {
        &self.vocab
    }

    pub fn type_predicate(&self) -> &Term {
        &self.vocab.type_predicate
    }

    pub fn instance_of_predicate(&self) -> &Term {
        &self.vocab.instance_of
    }

    /// Inserts one triple; returns false when it was already present.
    pub fn insert(&mut self, triple: Triple) -> bool {
        if !self.triples.insert(triple.clone()) {
            return false;
        }
        if triple.predicate == self.vocab.type_predicate {
            self.instances_by_class
                .entry(triple.object.clone())
                .or_default()
                .insert(triple.subject.clone());
        }
        self.subjects_by_po
            .entry((triple.predicate.clone(), triple.object.clone()))
            .or_default()
            .insert(triple.subject.clone());
        self.by_subject
            .entry(triple.subject.clone())
            .or_default()
            .insert(triple);
        true
    }

    pub fn extend(&mut self, triples: impl IntoIterator<Item = Triple>) {
        for t in triples {
            self.insert(t);
        }
    }

    pub fn len(&self) -> usize {
        self.triples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triples.is_empty()
    }

    pub fn contains(&self, triple: &Triple) -> bool {
        self.triples.contains(triple)
    }

    /// All triples in canonical (subject, predicate, object) term order.
    pub fn iter(&self) -> impl Iterator<Item = &Triple> {
        self.triples.iter()
    }

    /// Triples with the given subject, in canonical order.
    pub fn subject_triples<'a>(&'a self, subject: &Term) -> impl Iterator<Item = &'a Triple> {
        self.by_subject.get(subject).into_iter().flatten()
    }

    /// Subjects s such that (s, p, o) is in the graph.
    pub fn subjects_with<'a>(&'a self, p: &Term, o: &Term) -> impl Iterator<Item = &'a Term> {
        self.subjects_by_po
            .get(&(p.clone(), o.clone()))
            .into_iter()
            .flatten()
    }

    /// All s with (s type c) in the graph; empty for unknown classes.
    pub fn entities_of_class<'a>(&'a self, class: &Term) -> impl Iterator<Item = &'a Term> {
        self.instances_by_class.get(class).into_iter().flatten()
    }

    /// Number of instances of the class.
    pub fn class_instance_count(&self, class: &Term) -> u64 {
        self.instances_by_class
            .get(class)
            .map_or(0, |s| s.len() as u64)
    }

    /// Classes appearing as objects of type edges, in canonical order.
    pub fn classes(&self) -> Vec<&Term> {
        let mut classes: Vec<&Term> = self.instances_by_class.keys().collect();
        classes.sort();
        classes
    }

    /// Canonically ordered predicates (other than the type predicate) used by
    /// at least one instance of the class.
    pub fn class_properties(&self, class: &Term) -> Vec<Term> {
        let mut props = BTreeSet::new();
        for entity in self.entities_of_class(class) {
            for triple in self.subject_triples(entity) {
                if triple.predicate != self.vocab.type_predicate {
                    props.insert(triple.predicate.clone());
                }
            }
        }
        props.into_iter().collect()
    }

    /// The unique object tuple of `subject` under the canonically ordered
    /// property list `sp`, or `None` when some property has no edge.
    ///
    /// Two objects for one property violate the functionality assumption and
    /// raise an error naming the subject and property.
    pub fn object_tuple(&self, subject: &Term, sp: &[Term]) -> Result<Option<ObjectTuple>> {
        let mut objects = Vec::with_capacity(sp.len());
        for p in sp {
            let mut found: Option<&Term> = None;
            for triple in self.subject_triples(subject) {
                if &triple.predicate == p {
                    if found.is_some() {
                        return Err(Error::FunctionalityViolation {
                            subject: subject.clone(),
                            property: p.clone(),
                        });
                    }
                    found = Some(&triple.object);
                }
            }
            match found {
                Some(o) => objects.push(o.clone()),
                None => return Ok(None),
            }
        }
        Ok(Some(ObjectTuple::new(objects)))
    }

    /// Every node of the graph: subjects and objects, never predicates.
    pub fn nodes(&self) -> BTreeSet<&Term> {
        let mut nodes = BTreeSet::new();
        for t in &self.triples {
            nodes.insert(&t.subject);
            nodes.insert(&t.object);
        }
        nodes
    }
}

/// Graphs compare by triple set alone; vocabulary and indexes are derived.
impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.triples == other.triples
    }
}

impl Eq for Graph {}
