//! Property-subset search: exhaustive and greedy detection.
//!
//! Both detectors look for the property subset whose star patterns are most
//! shared. The exhaustive search scans a pre-enumerated space of all subsets
//! with at least two properties, largest subsets first, minimizing the
//! candidate factorized edge count. The greedy search starts from the full
//! property set, re-evaluates the edge-count objective after dropping each
//! single property, descends into the best child, and stops as soon as no
//! child improves on the current value or some child collapses to a single
//! star pattern.

use std::collections::BTreeMap;
use std::fmt;
use std::time::{Duration, Instant};

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::model::{canonical_properties, Term};
use crate::stats::{
    build_star_table, factorized_from_parts, objective_from_parts, StarPatternTable,
};

/// Largest property set the exhaustive enumerator accepts by default.
pub const DEFAULT_SUBSET_CAP: usize = 20;

/// Star tables for every subset (cardinality >= 2) of one property set,
/// keyed by canonically ordered subset.
#[derive(Debug)]
pub struct PatternSpace {
    class: Term,
    full: Vec<Term>,
    tables: BTreeMap<Vec<Term>, StarPatternTable>,
}

impl PatternSpace {
    pub fn class(&self) -> &Term {
        &self.class
    }

    pub fn full_properties(&self) -> &[Term] {
        &self.full
    }

    pub fn len(&self) -> usize {
        self.tables.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tables.is_empty()
    }

    pub fn table(&self, subset: &[Term]) -> Option<&StarPatternTable> {
        self.tables.get(subset)
    }

    pub fn subsets(&self) -> impl Iterator<Item = &Vec<Term>> {
        self.tables.keys()
    }
}

/// Number of subsets with cardinality >= 2 of an n-element set.
pub fn subset_count(n: usize) -> u128 {
    if n < 2 {
        return 0;
    }
    (1u128 << n) - 1 - n as u128
}

/// Builds the star table for every subset of `s` with at least two
/// properties. Refuses property sets larger than `cap`, reporting how many
/// subsets the enumeration would have produced.
pub fn enumerate_pattern_space(
    g: &Graph,
    class: &Term,
    s: &[Term],
    cap: usize,
) -> Result<PatternSpace> {
    let full = canonical_properties(s);
    if full.len() > cap {
        return Err(Error::SubsetCapExceeded {
            properties: full.len(),
            cap,
            estimated_subsets: subset_count(full.len()),
        });
    }
    let mut tables = BTreeMap::new();
    for size in 2..=full.len() {
        for subset in full.iter().cloned().combinations(size) {
            let table = build_star_table(g, class, &subset)?;
            tables.insert(subset, table);
        }
    }
    Ok(PatternSpace {
        class: class.clone(),
        full,
        tables,
    })
}

/// Every number the detectors report for one property subset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Objective {
    pub properties: Vec<Term>,
    /// Number of distinct star patterns over the subset.
    pub pattern_multiplicity: u64,
    /// The minimization objective `patterns*(|sp|+1) + instances*|s-sp|`.
    pub objective_value: u64,
    /// Candidate factorized edge count, type edges excluded.
    pub factorized_edges: u64,
}

/// One evaluated candidate: the subset and the value the algorithm assigned
/// to it (factorized edge count for the exhaustive search, the edge-count
/// objective for the greedy search).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceEntry {
    pub properties: Vec<Term>,
    pub value: u64,
}

#[derive(Debug)]
pub struct DetectionResult {
    pub best_properties: Vec<Term>,
    /// Star table over `best_properties`.
    pub patterns: StarPatternTable,
    pub objective: Objective,
    /// Candidates in evaluation order; its length is the iteration count.
    pub trace: Vec<TraceEntry>,
    pub elapsed: Duration,
}

impl DetectionResult {
    pub fn evaluations(&self) -> usize {
        self.trace.len()
    }
}

fn objective_for(g: &Graph, class: &Term, s_len: usize, table: &StarPatternTable) -> Objective {
    let patterns = table.pattern_multiplicity();
    let instances = g.class_instance_count(class);
    let sp_len = table.properties().len();
    Objective {
        properties: table.properties().to_vec(),
        pattern_multiplicity: patterns,
        objective_value: objective_from_parts(patterns, instances, s_len, sp_len),
        factorized_edges: factorized_from_parts(patterns, instances, s_len, sp_len),
    }
}

/// Exhaustive search over a complete pattern space.
///
/// Visits subsets in decreasing cardinality, canonical order within each
/// cardinality, minimizing the factorized edge count. Ties keep the first
/// candidate visited.
pub fn detect_exhaustive(space: &PatternSpace, g: &Graph) -> Result<DetectionResult> {
    let started = Instant::now();
    let class = space.class.clone();
    let full = &space.full;
    if space.is_empty() {
        return Err(Error::NoCandidates);
    }
    let expected = subset_count(full.len());
    if space.len() as u128 != expected {
        return Err(Error::IncompletePatternSpace(format!(
            "{} properties need {} subsets, space holds {}",
            full.len(),
            expected,
            space.len()
        )));
    }

    let instances = g.class_instance_count(&class);
    let mut trace = Vec::with_capacity(space.len());
    let mut best: Option<(Vec<Term>, u64)> = None;
    for size in (2..=full.len()).rev() {
        for subset in full.iter().cloned().combinations(size) {
            let table = space
                .table(&subset)
                .ok_or_else(|| Error::IncompletePatternSpace(format!("missing {subset:?}")))?;
            let value =
                factorized_from_parts(table.pattern_multiplicity(), instances, full.len(), size);
            trace.push(TraceEntry {
                properties: subset.clone(),
                value,
            });
            let better = match &best {
                None => true,
                Some((_, current)) => value < *current,
            };
            if better {
                best = Some((subset, value));
            }
        }
    }

    let (best_properties, _) = best.ok_or(Error::NoCandidates)?;
    let patterns = build_star_table(g, &class, &best_properties)?;
    let objective = objective_for(g, &class, full.len(), &patterns);
    Ok(DetectionResult {
        best_properties,
        patterns,
        objective,
        trace,
        elapsed: started.elapsed(),
    })
}

/// Knobs for the greedy search.
#[derive(Debug, Clone, Copy)]
pub struct GreedyOptions {
    /// Return immediately when a candidate collapses to one star pattern.
    /// Disable for exhaustive audits of the descent.
    pub early_stop_on_single_pattern: bool,
}

impl Default for GreedyOptions {
    fn default() -> Self {
        GreedyOptions {
            early_stop_on_single_pattern: true,
        }
    }
}

pub fn detect_greedy(g: &Graph, class: &Term, s: &[Term]) -> Result<DetectionResult> {
    detect_greedy_with(g, class, s, GreedyOptions::default())
}

/// Greedy descent from the full property set.
///
/// Each round evaluates every child obtained by dropping one property (ties
/// go to the child whose dropped property sorts first). The search descends
/// while the best child does not exceed the current value and stops on the
/// first candidate with a single star pattern. Worst case it evaluates
/// `n*(n+1)/2` candidates.
pub fn detect_greedy_with(
    g: &Graph,
    class: &Term,
    s: &[Term],
    options: GreedyOptions,
) -> Result<DetectionResult> {
    let started = Instant::now();
    let full = canonical_properties(s);
    let n = full.len();
    if n < 2 {
        return Err(Error::TooFewProperties { found: n });
    }
    let instances = g.class_instance_count(class);
    let value_of = |table: &StarPatternTable| {
        objective_from_parts(
            table.pattern_multiplicity(),
            instances,
            n,
            table.properties().len(),
        )
    };

    let mut trace = Vec::new();
    let mut current = build_star_table(g, class, &full)?;
    let mut current_value = value_of(&current);
    trace.push(TraceEntry {
        properties: current.properties().to_vec(),
        value: current_value,
    });

    let finish = |table: StarPatternTable, trace: Vec<TraceEntry>| {
        let objective = objective_for(g, class, n, &table);
        Ok(DetectionResult {
            best_properties: table.properties().to_vec(),
            patterns: table,
            objective,
            trace,
            elapsed: started.elapsed(),
        })
    };

    if options.early_stop_on_single_pattern && current.pattern_multiplicity() == 1 {
        return finish(current, trace);
    }

    loop {
        if current.properties().len() == 2 {
            // Children would have one property; nothing left to evaluate.
            return finish(current, trace);
        }

        let mut round_best: Option<(StarPatternTable, u64)> = None;
        let mut single_pattern_child = None;
        for dropped in current.properties().to_vec() {
            let child_props: Vec<Term> = current
                .properties()
                .iter()
                .filter(|p| **p != dropped)
                .cloned()
                .collect();
            let child = build_star_table(g, class, &child_props)?;
            let value = value_of(&child);
            trace.push(TraceEntry {
                properties: child_props,
                value,
            });
            if options.early_stop_on_single_pattern && child.pattern_multiplicity() == 1 {
                single_pattern_child = Some(child);
                break;
            }
            let better = match &round_best {
                None => true,
                Some((_, best_value)) => value < *best_value,
            };
            if better {
                round_best = Some((child, value));
            }
        }

        if let Some(child) = single_pattern_child {
            return finish(child, trace);
        }

        match round_best {
            Some((child, value)) if value <= current_value => {
                current = child;
                current_value = value;
            }
            // Best child exceeds the current value (or none exists): stop
            // with the current set, not the child.
            _ => return finish(current, trace),
        }
    }
}

/// One entity missing a property edge required for completeness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompletenessViolation {
    pub entity: Term,
    pub missing_property: Term,
}

/// One entity with several objects for a property assumed functional.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FunctionalityIssue {
    pub entity: Term,
    pub property: Term,
}

/// Outcome of the assumption check; empty diagnostics mean both the
/// completeness and functionality assumptions hold.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Diagnostics {
    pub completeness: Vec<CompletenessViolation>,
    pub functionality: Vec<FunctionalityIssue>,
}

impl Diagnostics {
    pub fn is_empty(&self) -> bool {
        self.completeness.is_empty() && self.functionality.is_empty()
    }
}

impl fmt::Display for Diagnostics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in &self.completeness {
            writeln!(f, "incomplete: {} lacks {}", v.entity, v.missing_property)?;
        }
        for v in &self.functionality {
            writeln!(
                f,
                "not functional: {} has multiple objects for {}",
                v.entity, v.property
            )?;
        }
        Ok(())
    }
}

/// Lists every instance of `class` violating completeness (missing one of
/// the properties in `s`) or functionality (several objects for one of them).
pub fn check_assumptions(g: &Graph, class: &Term, s: &[Term]) -> Diagnostics {
    let props = canonical_properties(s);
    let mut diagnostics = Diagnostics::default();
    for entity in g.entities_of_class(class) {
        for p in &props {
            let count = g
                .subject_triples(entity)
                .filter(|t| &t.predicate == p)
                .count();
            match count {
                0 => diagnostics.completeness.push(CompletenessViolation {
                    entity: entity.clone(),
                    missing_property: p.clone(),
                }),
                1 => {}
                _ => diagnostics.functionality.push(FunctionalityIssue {
                    entity: entity.clone(),
                    property: p.clone(),
                }),
            }
        }
    }
    diagnostics
}

fn strict_subset(inner: &[Term], outer: &[Term]) -> bool {
    inner.len() < outer.len() && inner.iter().all(|p| outer.contains(p))
}

/// The implication behind the greedy stop rule, as a testable predicate:
/// if dropping to `sp_prime` worsened the objective, every deeper subset
/// `sp_double_prime` is at least as bad as `sp`. Requires the strict chain
/// `sp_double_prime ⊂ sp_prime ⊂ sp ⊂ s` with all sets non-empty.
pub fn pruning_property_holds(
    g: &Graph,
    class: &Term,
    s: &[Term],
    sp: &[Term],
    sp_prime: &[Term],
    sp_double_prime: &[Term],
) -> Result<bool> {
    let s = canonical_properties(s);
    let sp = canonical_properties(sp);
    let sp_prime = canonical_properties(sp_prime);
    let sp_double_prime = canonical_properties(sp_double_prime);
    if sp_double_prime.is_empty() {
        return Err(Error::InvalidSubsetChain("sets must be non-empty".into()));
    }
    if !(strict_subset(&sp_double_prime, &sp_prime)
        && strict_subset(&sp_prime, &sp)
        && strict_subset(&sp, &s))
    {
        return Err(Error::InvalidSubsetChain(
            "expected sp'' ⊂ sp' ⊂ sp ⊂ s with strict inclusions".into(),
        ));
    }
    let instances = g.class_instance_count(class);
    let value = |subset: &[Term]| -> Result<u64> {
        let table = build_star_table(g, class, subset)?;
        Ok(objective_from_parts(
            table.pattern_multiplicity(),
            instances,
            s.len(),
            subset.len(),
        ))
    };
    let at_sp = value(&sp)?;
    let at_prime = value(&sp_prime)?;
    if at_prime <= at_sp {
        return Ok(true); // premise does not fire
    }
    Ok(value(&sp_double_prime)? >= at_sp)
}
