//! Draft the assays-in-rodents federated query from the EBI/UniProt link set.

use voidext::catalog::emit_tuples;
use voidext::scaffold::{check_wellformed, scaffold, QueryFragment, ScaffoldOptions};
use voidext::turtle::parse_turtle;

fn main() {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures");
    let read = |name: &str| std::fs::read_to_string(format!("{dir}/{name}")).unwrap();

    let catalog = emit_tuples(&parse_turtle(&read("ebi_uniprot.ttl")).unwrap()).unwrap();
    let tuple = &catalog.tuples[0];
    let gleevec = QueryFragment::parse(&read("fragments/gleevec_ebi.rq")).unwrap();
    let rodents = QueryFragment::parse(&read("fragments/rodent_uniprot.rq")).unwrap();

    let query = scaffold(tuple, Some(&gleevec), Some(&rodents), &ScaffoldOptions::default()).unwrap();
    check_wellformed(&query).expect("scaffolds are well-formed");
    println!("{query}");

    // Without fragments the join alone is produced, here run at UniProt instead.
    let at_uniprot = ScaffoldOptions {
        at: Some("https://sparql.uniprot.org/sparql/".into()),
        ..Default::default()
    };
    println!("{}", scaffold(tuple, None, None, &at_uniprot).unwrap());
}
