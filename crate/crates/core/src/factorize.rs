//! Graph rewriting: compact molecules with surrogate entities, lossless
//! expansion, and the savings report.
//!
//! Factorization maps every entity matching a full object tuple over the
//! chosen properties to a surrogate entity, one surrogate per distinct
//! tuple. Each mapped entity keeps a single linking edge to its surrogate;
//! the surrogate carries the shared property edges and the type edge.
//! Everything else is preserved verbatim, so expansion only has to copy the
//! surrogate's edges back onto the linked entities and drop the surrogates.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::model::{canonical_properties, ObjectTuple, Term, Triple};
use crate::stats::{build_star_table, labeled_edge_count, EdgeConvention};

/// Partial map from original entities to surrogate entities.
///
/// Only entities matching some star pattern over `properties` appear; two
/// entities share a surrogate exactly when their object tuples are equal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EntityMapping {
    class: Term,
    properties: Vec<Term>,
    pairs: BTreeMap<Term, Term>,
}

impl EntityMapping {
    pub fn class(&self) -> &Term {
        &self.class
    }

    pub fn properties(&self) -> &[Term] {
        &self.properties
    }

    pub fn pairs(&self) -> &BTreeMap<Term, Term> {
        &self.pairs
    }

    pub fn surrogate_for(&self, entity: &Term) -> Option<&Term> {
        self.pairs.get(entity)
    }

    pub fn surrogates(&self) -> BTreeSet<&Term> {
        self.pairs.values().collect()
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// The mapping as an RDF graph of linking edges, so it can be stored as
    /// N-Triples and concatenated with a factorized graph before expansion.
    pub fn as_graph(&self, like: &Graph) -> Graph {
        let instance_of = like.instance_of_predicate().clone();
        let mut g = Graph::with_vocabulary(like.vocabulary().clone());
        for (entity, surrogate) in &self.pairs {
            g.insert(Triple::new_unchecked(
                entity.clone(),
                instance_of.clone(),
                surrogate.clone(),
            ));
        }
        g
    }
}

/// Deterministic surrogate IRI for one star pattern: `urn:fsp:` followed by
/// 16 hex digits hashed from the class and the property/object pairs.
pub fn surrogate_iri(class: &Term, properties: &[Term], tuple: &ObjectTuple) -> Term {
    surrogate_iri_salted(class, properties, tuple, 0)
}

fn surrogate_iri_salted(class: &Term, properties: &[Term], tuple: &ObjectTuple, salt: u64) -> Term {
    let mut hasher = Sha256::new();
    hasher.update(class.to_string().as_bytes());
    for (p, o) in properties.iter().zip(tuple.objects()) {
        hasher.update(b"\n");
        hasher.update(p.to_string().as_bytes());
        hasher.update(b"\n");
        hasher.update(o.to_string().as_bytes());
    }
    if salt > 0 {
        hasher.update(b"\n");
        hasher.update(salt.to_string().as_bytes());
    }
    let digest = hasher.finalize();
    let mut hex = String::with_capacity(16);
    for byte in &digest[..8] {
        let _ = write!(hex, "{byte:02x}");
    }
    Term::iri_unchecked(format!("urn:fsp:{hex}"))
}

/// Maps every instance of `class` with a full tuple over `sp` to a
/// surrogate, one surrogate per distinct tuple. Instances with incomplete
/// tuples are left unmapped.
pub fn build_mapping(g: &Graph, class: &Term, sp: &[Term]) -> Result<EntityMapping> {
    let properties = canonical_properties(sp);
    if properties.is_empty() {
        return Err(Error::EmptyPropertySet);
    }
    let table = build_star_table(g, class, &properties)?;
    let mut pairs = BTreeMap::new();
    let mut taken: BTreeMap<Term, ObjectTuple> = BTreeMap::new();
    for (tuple, entities) in table.groups() {
        // Truncated digests can collide in principle; salt until unique so
        // distinct tuples always get distinct surrogates.
        let mut salt = 0;
        let surrogate = loop {
            let candidate = surrogate_iri_salted(class, &properties, tuple, salt);
            match taken.get(&candidate) {
                None => {
                    taken.insert(candidate.clone(), tuple.clone());
                    break candidate;
                }
                Some(existing) if existing == tuple => break candidate,
                Some(_) => salt += 1,
            }
        };
        for entity in entities {
            pairs.insert(entity.clone(), surrogate.clone());
        }
    }
    Ok(EntityMapping {
        class: class.clone(),
        properties,
        pairs,
    })
}

/// Rewrites `g` so each star pattern over `sp` is carried once by its
/// surrogate. For a mapped entity s: the type edge to `class` becomes a
/// linking edge plus the surrogate's type edge, edges over `sp` move to the
/// surrogate, and every other triple (including type edges to other
/// classes) is preserved. Unmapped subjects pass through verbatim, so a
/// graph without matching entities comes back set-equal with an empty
/// mapping.
pub fn factorize(g: &Graph, class: &Term, sp: &[Term]) -> Result<(Graph, EntityMapping)> {
    let mapping = build_mapping(g, class, sp)?;
    let type_predicate = g.type_predicate().clone();
    let instance_of = g.instance_of_predicate().clone();
    let sp_set: BTreeSet<&Term> = mapping.properties.iter().collect();

    let mut out = Graph::with_vocabulary(g.vocabulary().clone());
    for triple in g.iter() {
        match mapping.surrogate_for(&triple.subject) {
            Some(surrogate) => {
                if triple.predicate == type_predicate && &triple.object == class {
                    out.insert(Triple::new_unchecked(
                        triple.subject.clone(),
                        instance_of.clone(),
                        surrogate.clone(),
                    ));
                    out.insert(Triple::new_unchecked(
                        surrogate.clone(),
                        type_predicate.clone(),
                        triple.object.clone(),
                    ));
                } else if sp_set.contains(&triple.predicate) {
                    out.insert(Triple::new_unchecked(
                        surrogate.clone(),
                        triple.predicate.clone(),
                        triple.object.clone(),
                    ));
                } else {
                    out.insert(triple.clone());
                }
            }
            None => {
                out.insert(triple.clone());
            }
        }
    }
    Ok((out, mapping))
}

/// Undoes factorization by applying the two linking axioms, then dropping
/// every linking edge and every surrogate-owned triple.
///
/// Surrogates are the objects of linking edges; a mapping hint adds pairs
/// that are not inline in the graph. Each linked entity must point at
/// exactly one surrogate, and each surrogate must own at least one triple.
pub fn expand(g: &Graph, hint: Option<&EntityMapping>) -> Result<Graph> {
    let instance_of = g.instance_of_predicate().clone();

    let mut links: BTreeMap<Term, BTreeSet<Term>> = BTreeMap::new();
    for triple in g.iter() {
        if triple.predicate == instance_of {
            links
                .entry(triple.subject.clone())
                .or_default()
                .insert(triple.object.clone());
        }
    }
    if let Some(mapping) = hint {
        for (entity, surrogate) in mapping.pairs() {
            links
                .entry(entity.clone())
                .or_default()
                .insert(surrogate.clone());
        }
    }

    let mut surrogates: BTreeSet<Term> = BTreeSet::new();
    for (entity, targets) in &links {
        if targets.len() > 1 {
            return Err(Error::NotFunctionalInstanceOf {
                entity: entity.clone(),
            });
        }
        surrogates.extend(targets.iter().cloned());
    }
    for surrogate in &surrogates {
        if g.subject_triples(surrogate).next().is_none() {
            return Err(Error::DanglingSurrogate {
                surrogate: surrogate.clone(),
            });
        }
    }

    let mut out = Graph::with_vocabulary(g.vocabulary().clone());
    for triple in g.iter() {
        if triple.predicate == instance_of || surrogates.contains(&triple.subject) {
            continue;
        }
        out.insert(triple.clone());
    }
    for (entity, targets) in &links {
        let surrogate = targets.iter().next().expect("checked non-empty");
        for owned in g.subject_triples(surrogate) {
            if owned.predicate == instance_of {
                continue;
            }
            // Both axioms take the same shape: the entity inherits the
            // surrogate's edge, type edges included.
            out.insert(Triple::new_unchecked(
                entity.clone(),
                owned.predicate.clone(),
                owned.object.clone(),
            ));
        }
    }
    Ok(out)
}

/// Node and labeled-edge counts before and after factorization, plus the
/// signed percentage savings. Negative savings mean the rewrite added edges.
#[derive(Debug, Clone, PartialEq)]
pub struct FactorizationReport {
    pub nodes_before: u64,
    pub nodes_after: u64,
    pub edges_before: u64,
    pub edges_after: u64,
    pub percent_savings: f64,
    pub convention: EdgeConvention,
}

/// Entities of the class, surrogates, and the objects they reach over the
/// class properties `s`.
fn node_count(g: &Graph, class: &Term, s: &[Term]) -> u64 {
    let instance_of = g.instance_of_predicate().clone();
    let mut subjects: BTreeSet<Term> = g.entities_of_class(class).cloned().collect();
    for surrogate in g.entities_of_class(class) {
        for entity in g.subjects_with(&instance_of, surrogate) {
            subjects.insert(entity.clone());
        }
    }
    let props: BTreeSet<&Term> = s.iter().collect();
    let mut nodes = subjects.clone();
    for subject in &subjects {
        for triple in g.subject_triples(subject) {
            if props.contains(&triple.predicate) {
                nodes.insert(triple.object.clone());
            }
        }
    }
    nodes.len() as u64
}

/// Compares labeled edges over the full class property list `s` between the
/// original and factorized graphs. Savings are undefined when the original
/// graph has nothing to count.
pub fn savings_report(
    original: &Graph,
    factorized: &Graph,
    class: &Term,
    s: &[Term],
    convention: EdgeConvention,
) -> Result<FactorizationReport> {
    let s = canonical_properties(s);
    let edges_before = labeled_edge_count(original, class, &s, convention);
    let edges_after = labeled_edge_count(factorized, class, &s, convention);
    if edges_before == 0 {
        return Err(Error::UndefinedSavings);
    }
    let percent_savings = 100.0 * (edges_before as f64 - edges_after as f64) / edges_before as f64;
    Ok(FactorizationReport {
        nodes_before: node_count(original, class, &s),
        nodes_after: node_count(factorized, class, &s),
        edges_before,
        edges_after,
        percent_savings,
        convention,
    })
}
