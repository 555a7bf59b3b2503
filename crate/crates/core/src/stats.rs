//! Star-pattern grouping and the edge-count arithmetic built on it.
//!
//! For a class `C` and a canonically ordered property list `SP`, the star
//! table groups the instances of `C` by their object tuple over `SP`. Every
//! number the detectors and reports need derives from that table:
//!
//! * multiplicity of a tuple — how many entities share it;
//! * multiplicity inverse — the exact rational `1/M`;
//! * pattern multiplicity — ceiling of the summed inverses, which under the
//!   completeness and functionality assumptions equals the group count;
//! * the edge-count objective `patterns*(|SP|+1) + instances*|S-SP|`;
//! * the candidate factorized edge count `patterns*|SP| + instances +
//!   instances*|S-SP|`, i.e. the edges the rewritten graph would carry when
//!   type edges are left out of the count.
//!
//! Two labeled-edge conventions coexist on purpose: detection arithmetic
//! never counts type edges, while savings reports default to counting them.
//! Everything here is pure over an immutable graph.

use std::collections::BTreeMap;
use std::collections::BTreeSet;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::model::{canonical_properties, ObjectTuple, Term};

/// Whether type edges participate in labeled-edge counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeConvention {
    WithTypeEdges,
    WithoutTypeEdges,
}

/// Instances of one class grouped by object tuple over a property list.
///
/// Groups partition the matched entities; instances lacking an edge for some
/// listed property are collected in `skipped` instead of failing the build.
#[derive(Debug, Clone)]
pub struct StarPatternTable {
    class: Term,
    properties: Vec<Term>,
    groups: BTreeMap<ObjectTuple, BTreeSet<Term>>,
    skipped: BTreeSet<Term>,
    pattern_multiplicity: OnceLock<u64>,
}

impl PartialEq for StarPatternTable {
    fn eq(&self, other: &Self) -> bool {
        self.class == other.class
            && self.properties == other.properties
            && self.groups == other.groups
            && self.skipped == other.skipped
    }
}

impl Eq for StarPatternTable {}

impl StarPatternTable {
    pub fn class(&self) -> &Term {
        &self.class
    }

    /// The canonically ordered property list the tuples align with.
    pub fn properties(&self) -> &[Term] {
        &self.properties
    }

    pub fn groups(&self) -> &BTreeMap<ObjectTuple, BTreeSet<Term>> {
        &self.groups
    }

    pub fn skipped(&self) -> &BTreeSet<Term> {
        &self.skipped
    }

    pub fn group_count(&self) -> u64 {
        self.groups.len() as u64
    }

    pub fn matched_count(&self) -> u64 {
        self.groups.values().map(|g| g.len() as u64).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.groups.is_empty()
    }

    /// Number of entities sharing `tuple`; 0 when no entity matches it.
    pub fn multiplicity(&self, tuple: &ObjectTuple) -> u64 {
        self.groups.get(tuple).map_or(0, |g| g.len() as u64)
    }

    /// Exact rational `1/multiplicity`; an error when the tuple is absent.
    pub fn multiplicity_inverse(&self, tuple: &ObjectTuple) -> Result<Rational64> {
        match self.multiplicity(tuple) {
            0 => Err(Error::UndefinedInverse {
                tuple: tuple.to_string(),
            }),
            m => Ok(Rational64::new(1, m as i64)),
        }
    }

    /// Ceiling of the summed multiplicity inverses over all matched entities.
    ///
    /// Computed twice: as an exact rational sum and as the group count. The
    /// two always agree for tables built here, which is asserted before the
    /// group count is returned. The result is cached; tables are immutable.
    pub fn pattern_multiplicity(&self) -> u64 {
        *self.pattern_multiplicity.get_or_init(|| {
            // Entities with equal multiplicity m contribute count/m in one
            // exact addition; regrouping equal terms keeps the sum exact.
            let mut entities_per_multiplicity: BTreeMap<usize, usize> = BTreeMap::new();
            for group in self.groups.values() {
                *entities_per_multiplicity.entry(group.len()).or_default() += group.len();
            }
            let mut sum = BigRational::zero();
            for (m, entity_count) in entities_per_multiplicity {
                sum += BigRational::new(BigInt::from(entity_count), BigInt::from(m));
            }
            let ceiling = sum.ceil().to_integer();
            let count = self.groups.len();
            assert_eq!(
                ceiling,
                BigInt::from(count),
                "ceiling of summed inverses diverged from the group count"
            );
            count as u64
        })
    }
}

/// Groups the instances of `class` by object tuple over `sp`.
///
/// `sp` is canonicalized (sorted, deduplicated) first. Entities with a
/// missing edge land in `skipped`; a double edge is a functionality error.
pub fn build_star_table(g: &Graph, class: &Term, sp: &[Term]) -> Result<StarPatternTable> {
    let properties = canonical_properties(sp);
    if properties.is_empty() {
        return Err(Error::EmptyPropertySet);
    }
    let mut groups: BTreeMap<ObjectTuple, BTreeSet<Term>> = BTreeMap::new();
    let mut skipped = BTreeSet::new();
    for entity in g.entities_of_class(class) {
        match g.object_tuple(entity, &properties)? {
            Some(tuple) => {
                groups.entry(tuple).or_default().insert(entity.clone());
            }
            None => {
                skipped.insert(entity.clone());
            }
        }
    }
    Ok(StarPatternTable {
        class: class.clone(),
        properties,
        groups,
        skipped,
        pattern_multiplicity: OnceLock::new(),
    })
}

/// Checks `sp ⊆ s` after canonicalizing both; returns (|s|, canonical sp).
fn checked_subset(s: &[Term], sp: &[Term]) -> Result<(Vec<Term>, Vec<Term>)> {
    let full = canonical_properties(s);
    let sub = canonical_properties(sp);
    if sub.is_empty() {
        return Err(Error::EmptyPropertySet);
    }
    let missing: Vec<String> = sub
        .iter()
        .filter(|p| !full.contains(p))
        .map(|p| p.lexical().to_owned())
        .collect();
    if !missing.is_empty() {
        return Err(Error::NotASubset { missing });
    }
    Ok((full, sub))
}

pub(crate) fn objective_from_parts(patterns: u64, instances: u64, full: usize, sub: usize) -> u64 {
    patterns * (sub as u64 + 1) + instances * (full - sub) as u64
}

pub(crate) fn factorized_from_parts(patterns: u64, instances: u64, full: usize, sub: usize) -> u64 {
    patterns * sub as u64 + instances + instances * (full - sub) as u64
}

/// The minimization objective for subset `sp` of the class properties `s`:
/// `patterns*(|sp|+1) + instances*|s-sp|`.
pub fn edge_count_objective(g: &Graph, class: &Term, s: &[Term], sp: &[Term]) -> Result<u64> {
    let (full, sub) = checked_subset(s, sp)?;
    let table = build_star_table(g, class, &sub)?;
    let instances = g.class_instance_count(class);
    Ok(objective_from_parts(
        table.pattern_multiplicity(),
        instances,
        full.len(),
        sub.len(),
    ))
}

/// Edge count of the candidate factorized graph for subset `sp`, without
/// type edges: property edges on surrogates, one linking edge per instance,
/// and the untouched property edges.
pub fn factorized_edge_count(g: &Graph, class: &Term, s: &[Term], sp: &[Term]) -> Result<u64> {
    let (full, sub) = checked_subset(s, sp)?;
    let table = build_star_table(g, class, &sub)?;
    let instances = g.class_instance_count(class);
    Ok(factorized_from_parts(
        table.pattern_multiplicity(),
        instances,
        full.len(),
        sub.len(),
    ))
}

/// Counts labeled edges owned by the instances of `class` (directly typed or
/// linked through a surrogate) whose predicate is one of `props`, the
/// surrogate-linking predicate, or the type predicate when the convention
/// includes type edges. Edges owned by a surrogate count once no matter how
/// many entities share it.
pub fn labeled_edge_count(
    g: &Graph,
    class: &Term,
    props: &[Term],
    convention: EdgeConvention,
) -> u64 {
    let instance_of = g.instance_of_predicate().clone();
    let type_predicate = g.type_predicate().clone();

    // Directly typed instances, including surrogates typed with the class.
    let mut subjects: BTreeSet<Term> = g.entities_of_class(class).cloned().collect();
    // Entities reaching the class through a surrogate.
    for surrogate in g.entities_of_class(class) {
        for entity in g.subjects_with(&instance_of, surrogate) {
            subjects.insert(entity.clone());
        }
    }

    let props: BTreeSet<&Term> = props.iter().collect();
    let mut count = 0u64;
    for subject in &subjects {
        for triple in g.subject_triples(subject) {
            let p = &triple.predicate;
            let counted = props.contains(p)
                || *p == instance_of
                || (*p == type_predicate && convention == EdgeConvention::WithTypeEdges);
            if counted {
                count += 1;
            }
        }
    }
    count
}

/// For each object of `p` over instances of `class`, the percentage of
/// `p`-edges pointing at it. Percentages sum to 100 when any edge exists.
pub fn repetition_histogram(g: &Graph, class: &Term, p: &Term) -> BTreeMap<Term, f64> {
    let mut counts: BTreeMap<Term, u64> = BTreeMap::new();
    let mut total = 0u64;
    for entity in g.entities_of_class(class) {
        for triple in g.subject_triples(entity) {
            if &triple.predicate == p {
                *counts.entry(triple.object.clone()).or_default() += 1;
                total += 1;
            }
        }
    }
    counts
        .into_iter()
        .map(|(o, n)| (o, 100.0 * n as f64 / total as f64))
        .collect()
}
