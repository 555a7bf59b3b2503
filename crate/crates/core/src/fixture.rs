//! A small reference graph shared by the test suites.
//!
//! Four entities `c1..c4` of class `C` carry identical objects `e1,e2,e3` on
//! properties `p1,p2,p3`, while `p4` points at `e4,e5,e6` with share counts
//! 2/1/1. The graph has 4 type edges and 16 property edges, 20 triples total.

use crate::graph::{Graph, RDF_TYPE};
use crate::model::Term;
use crate::ntriples::parse_ntriples_str;

/// The reference graph in N-Triples form.
pub const FIXTURE_NT: &str = "\
<urn:ex:c1> <http://www.w3.org/1999/02/22-rdf-syntax-ns#type> <urn:ex:C> .
<urn:ex:c2> <http://www.w3.org/1999/02/22-rdf-syntax-ns#type> <urn:ex:C> .
<urn:ex:c3> <http://www.w3.org/1999/02/22-rdf-syntax-ns#type> <urn:ex:C> .
<urn:ex:c4> <http://www.w3.org/1999/02/22-rdf-syntax-ns#type> <urn:ex:C> .
<urn:ex:c1> <urn:ex:p1> <urn:ex:e1> .
<urn:ex:c2> <urn:ex:p1> <urn:ex:e1> .
<urn:ex:c3> <urn:ex:p1> <urn:ex:e1> .
<urn:ex:c4> <urn:ex:p1> <urn:ex:e1> .
<urn:ex:c1> <urn:ex:p2> <urn:ex:e2> .
<urn:ex:c2> <urn:ex:p2> <urn:ex:e2> .
<urn:ex:c3> <urn:ex:p2> <urn:ex:e2> .
<urn:ex:c4> <urn:ex:p2> <urn:ex:e2> .
<urn:ex:c1> <urn:ex:p3> <urn:ex:e3> .
<urn:ex:c2> <urn:ex:p3> <urn:ex:e3> .
<urn:ex:c3> <urn:ex:p3> <urn:ex:e3> .
<urn:ex:c4> <urn:ex:p3> <urn:ex:e3> .
<urn:ex:c1> <urn:ex:p4> <urn:ex:e4> .
<urn:ex:c2> <urn:ex:p4> <urn:ex:e4> .
<urn:ex:c3> <urn:ex:p4> <urn:ex:e5> .
<urn:ex:c4> <urn:ex:p4> <urn:ex:e6> .
";

pub fn fixture_graph() -> Graph {
    parse_ntriples_str(FIXTURE_NT).expect("fixture parses")
}

pub fn class_c() -> Term {
    Term::iri_unchecked("urn:ex:C")
}

/// `c1..c4`
pub fn entity(i: usize) -> Term {
    Term::iri_unchecked(format!("urn:ex:c{i}"))
}

/// `p1..p4`
pub fn property(i: usize) -> Term {
    Term::iri_unchecked(format!("urn:ex:p{i}"))
}

/// `e1..e6`
pub fn object(i: usize) -> Term {
    Term::iri_unchecked(format!("urn:ex:e{i}"))
}

pub fn properties(indices: &[usize]) -> Vec<Term> {
    indices.iter().map(|&i| property(i)).collect()
}

pub fn type_predicate() -> Term {
    Term::iri_unchecked(RDF_TYPE)
}
