//! Parse a Turtle file and print its canonical form.
//!
//!     cargo run --example parse_and_format -- fixtures/legacy_m2.ttl

use voidext::rdf::is_isomorphic;
use voidext::turtle::{parse_turtle, serialize_turtle};

fn main() {
    let path = std::env::args()
        .nth(1)
        .unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/lindas_dbpedia.ttl").to_owned());
    let text = std::fs::read_to_string(&path).expect("readable file");
    let graph = match parse_turtle(&text) {
        Ok(g) => g,
        Err(d) => {
            eprintln!("{path}:{d}");
            std::process::exit(2);
        }
    };
    let out = serialize_turtle(&graph, graph.prefixes());
    print!("{out}");

    // Blank node labels differ after a round trip; the graphs are still the same.
    let again = parse_turtle(&out).unwrap();
    assert!(is_isomorphic(&graph, &again));
    eprintln!("{} triples, {} prefixes", graph.len(), graph.prefixes().len());
}
