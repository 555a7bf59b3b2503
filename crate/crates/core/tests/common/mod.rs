//! Random graph builders shared by the integration suites.
#![allow(dead_code)] // each test target compiles its own copy

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use fsp_core::{Graph, Term, Triple};

/// A complete, functional single-class graph with independently drawn
/// per-property value pools, so properties differ in how shared they are.
/// Returns the graph, its class, and the canonical property list.
pub fn random_class_graph(
    seed: u64,
    entities: usize,
    properties: usize,
    max_pool: usize,
) -> (Graph, Term, Vec<Term>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let class = Term::iri_unchecked("urn:rnd:C");
    let pools: Vec<usize> = (0..properties)
        .map(|_| rng.gen_range(1..=max_pool))
        .collect();
    let mut g = Graph::new();
    for e in 0..entities {
        let subject = Term::iri_unchecked(format!("urn:rnd:s{e}"));
        g.insert(Triple::new_unchecked(
            subject.clone(),
            g.type_predicate().clone(),
            class.clone(),
        ));
        for (p, pool) in pools.iter().enumerate() {
            let v = rng.gen_range(0..*pool);
            g.insert(Triple::new_unchecked(
                subject.clone(),
                Term::iri_unchecked(format!("urn:rnd:p{p}")),
                Term::iri_unchecked(format!("urn:rnd:p{p}v{v}")),
            ));
        }
    }
    let s = g.class_properties(&class);
    (g, class, s)
}

/// Like [`random_class_graph`] but drops each property edge with the given
/// probability, producing entities with incomplete tuples.
pub fn random_incomplete_graph(
    seed: u64,
    entities: usize,
    properties: usize,
    max_pool: usize,
    drop_probability: f64,
) -> (Graph, Term) {
    let (complete, class, _) = random_class_graph(seed, entities, properties, max_pool);
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e3779b97f4a7c15);
    let mut g = Graph::new();
    for t in complete.iter() {
        let droppable = t.predicate != *complete.type_predicate();
        if droppable && rng.gen_bool(drop_probability) {
            continue;
        }
        g.insert(t.clone());
    }
    (g, class)
}
