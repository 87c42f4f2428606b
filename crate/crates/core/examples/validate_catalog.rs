//! Validate link-set descriptions and show what a seeded fault looks like.

use voidext::turtle::parse_turtle;
use voidext::validate::{has_errors, validate, Code};

fn main() {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures");
    for name in ["lindas_dbpedia.ttl", "ebi_uniprot.ttl", "oma_uniprot.ttl", "mutants/c6_mismatch.ttl"] {
        let graph = parse_turtle(&std::fs::read_to_string(format!("{dir}/{name}")).unwrap()).unwrap();
        let diags = validate(&graph);
        println!("{name}: {}", if has_errors(&diags) { "invalid" } else { "ok" });
        for d in &diags {
            println!("  {d}");
        }
    }
    println!();
    for code in Code::ALL {
        println!("{code:?}: {}", code.topic());
    }
}
