//! Convert the two legacy VoID encodings of the canton link and show they agree.

use voidext::canon::{detect_legacy_pattern, import_legacy, DEFAULT_MINT_BASE};
use voidext::rdf::{is_isomorphic, Term};
use voidext::turtle::{parse_turtle, serialize_turtle};

fn main() {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures");
    let load = |name: &str| parse_turtle(&std::fs::read_to_string(format!("{dir}/{name}")).unwrap()).unwrap();

    let m1 = load("legacy_m1.ttl");
    let node = Term::iri("http://example.org/voidext#DS1_lindas").unwrap();
    println!("DS1_lindas in legacy_m1.ttl: {}", detect_legacy_pattern(&m1, &node).unwrap());

    let (a, report) = import_legacy(&m1, DEFAULT_MINT_BASE).unwrap();
    for r in &report.rewrites {
        println!("{} {} {:?}", r.node, r.pattern, r.notes);
    }
    let (b, _) = import_legacy(&load("legacy_m2.ttl"), DEFAULT_MINT_BASE).unwrap();
    println!("m1 and m2 converge: {}", is_isomorphic(&a, &b));
    print!("\n{}", serialize_turtle(&a, a.prefixes()));
}
