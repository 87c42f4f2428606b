//! List link sets with their link predicates using an in-memory BGP.

use voidext::ns::{rdf, void};
use voidext::rdf::{bgp_solve, Iri, PatternTerm, Term, TriplePattern};
use voidext::turtle::parse_turtle;

fn main() {
    let text = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/lindas_dbpedia.ttl")).unwrap();
    let graph = parse_turtle(&text).unwrap();

    let v = PatternTerm::var;
    let c = |iri: &'static str| PatternTerm::Term(Term::Iri(Iri::from_static(iri)));
    let bgp = [
        TriplePattern::new(v("ls"), c(rdf::TYPE), c(void::LINKSET)),
        TriplePattern::new(v("ls"), c(void::LINK_PREDICATE), v("pred")),
        TriplePattern::new(v("host"), c(void::SUBSET), v("ls")),
    ];
    for row in bgp_solve(&graph, &bgp) {
        let short = |t: &Term| {
            let iri = t.as_iri().unwrap().as_str();
            graph.prefixes().compact_str(iri).unwrap_or_else(|| format!("<{iri}>"))
        };
        println!("{} in {} links with {}", short(&row["ls"]), short(&row["host"]), short(&row["pred"]));
    }
}
