//! Seeded synthetic dataset generator.
//!
//! Produces a complete, functional graph for one class: every entity has
//! exactly one literal value per property plus a type edge, so a spec of
//! N entities and P properties always yields exactly N*(P+1) triples.
//!
//! `repetition_skew` controls tuple sharing through the number of distinct
//! full tuples `T = clamp(round(N * (1-skew)^4), 1, N)`: skew 0 keeps every
//! tuple unique, skew 1 collapses the class onto a single shared tuple, and
//! the quartic curve concentrates sharing quickly as skew rises. Entities
//! are dealt to tuples in balanced fashion and shuffled by the seeded RNG,
//! so the same seed always produces the same bytes.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::model::{Term, Triple};

/// IRI of the generated class.
pub const GENERATED_CLASS: &str = "urn:gen:Measurement";

#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorSpec {
    pub num_entities: usize,
    pub num_properties: usize,
    /// Tuple sharing in [0, 1]: 0 keeps all tuples unique, 1 shares one.
    pub repetition_skew: f64,
    /// Size of the per-property value pool tuples draw from.
    pub value_cardinality: usize,
}

impl GeneratorSpec {
    pub fn validate(&self) -> Result<()> {
        if self.num_entities < 1 || self.num_properties < 1 || self.value_cardinality < 1 {
            return Err(Error::InvalidGeneratorSpec(
                "entity, property, and value counts must all be at least 1".into(),
            ));
        }
        if !(0.0..=1.0).contains(&self.repetition_skew) || self.repetition_skew.is_nan() {
            return Err(Error::InvalidGeneratorSpec(format!(
                "repetition skew must lie in [0, 1], got {}",
                self.repetition_skew
            )));
        }
        let capacity = (self.value_cardinality as u128)
            .checked_pow(self.num_properties as u32)
            .unwrap_or(u128::MAX);
        if (self.distinct_tuple_target() as u128) > capacity {
            return Err(Error::InvalidGeneratorSpec(format!(
                "value pool of {} per property cannot form {} distinct tuples",
                self.value_cardinality,
                self.distinct_tuple_target()
            )));
        }
        Ok(())
    }

    /// Number of distinct full tuples the skew asks for.
    pub fn distinct_tuple_target(&self) -> usize {
        let n = self.num_entities as f64;
        let raw = (n * (1.0 - self.repetition_skew).powi(4)).round() as usize;
        raw.clamp(1, self.num_entities)
    }
}

pub fn class_term() -> Term {
    Term::iri_unchecked(GENERATED_CLASS)
}

pub fn entity_term(i: usize) -> Term {
    Term::iri_unchecked(format!("urn:gen:m{i}"))
}

pub fn property_term(i: usize) -> Term {
    Term::iri_unchecked(format!("urn:gen:p{i}"))
}

pub fn value_term(property: usize, value: usize) -> Term {
    Term::literal(format!("p{property}v{value}"))
}

/// Value index of tuple `k` for property `i`.
///
/// While the tuple count fits the pool, every property uses index `k`
/// directly, which keeps the distinct-tuple count identical across every
/// property subset. Larger tuple counts fall back to mixed-radix digits so
/// full tuples stay distinct within the pool capacity.
fn value_index(spec: &GeneratorSpec, tuple: usize, property: usize) -> usize {
    let v = spec.value_cardinality;
    if spec.distinct_tuple_target() <= v {
        tuple
    } else {
        match (v as u128).checked_pow(property as u32) {
            Some(divisor) => ((tuple as u128 / divisor) % v as u128) as usize,
            None => 0,
        }
    }
}

/// Generates the synthetic graph for `spec`, deterministically under `seed`.
pub fn generate(spec: &GeneratorSpec, seed: u64) -> Result<Graph> {
    spec.validate()?;
    let tuple_count = spec.distinct_tuple_target();

    // Balanced deal: entity j draws tuple j mod T, then a seeded shuffle
    // decides which entities end up sharing.
    let mut assignment: Vec<usize> = (0..spec.num_entities).map(|j| j % tuple_count).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    assignment.shuffle(&mut rng);

    let mut g = Graph::new();
    let class = class_term();
    let type_predicate = g.type_predicate().clone();
    for (j, &tuple) in assignment.iter().enumerate() {
        let entity = entity_term(j);
        g.insert(Triple::new_unchecked(
            entity.clone(),
            type_predicate.clone(),
            class.clone(),
        ));
        for i in 0..spec.num_properties {
            g.insert(Triple::new_unchecked(
                entity.clone(),
                property_term(i),
                value_term(i, value_index(spec, tuple, i)),
            ));
        }
    }
    Ok(g)
}
