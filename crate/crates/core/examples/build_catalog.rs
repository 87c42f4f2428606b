//! Emit the tuple catalog for all canonical fixtures, as text and as JSON.

use voidext::catalog::{emit_tuples, to_json};
use voidext::rdf::Graph;
use voidext::turtle::parse_turtle;

fn main() {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures");
    let mut graph = Graph::new();
    for name in ["lindas_dbpedia.ttl", "ebi_uniprot.ttl", "oma_uniprot.ttl"] {
        graph.merge(&parse_turtle(&std::fs::read_to_string(format!("{dir}/{name}")).unwrap()).unwrap());
    }
    let catalog = emit_tuples(&graph).expect("classifiable link sets");
    for t in &catalog.tuples {
        let ends: Vec<&str> = t.sides.iter().filter_map(|s| s.endpoint.as_ref().map(|e| e.as_str())).collect();
        println!("{} [{}] {}", t.vl.as_str(), t.kind.as_str(), ends.join(" <-> "));
        if let Some(m) = &t.mapping {
            println!("    ?{} -> ?{}", m.input_var, m.output_var);
        }
    }
    println!("{}", serde_json::to_string_pretty(&to_json(&catalog, graph.prefixes())).unwrap());
}
