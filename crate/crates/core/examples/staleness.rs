//! Check link-set dates against a dataset release and record a measured quality.

use voidext::endpoint::{assess_staleness, attach_performance, read_performance};
use voidext::rdf::{Iri, Term};
use voidext::turtle::{parse_turtle, serialize_turtle};
use voidext::vocab::Dates;

fn main() {
    let text = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/ebi_uniprot.ttl")).unwrap();
    let graph = parse_turtle(&text).unwrap();
    let vl = Iri::new("http://purl.org/query/bioquery#EBI_UNIPROT_12").unwrap();

    // This description carries no dates, so there is nothing to compare.
    let dates = Dates::read(&graph, &Term::Iri(vl.clone()));
    match assess_staleness(&vl, &dates, "2019-08") {
        Ok(v) => println!("stale: {}", v.stale),
        Err(e) => println!("cannot assess: {e}"),
    }

    let june = Dates {
        issued: None,
        modified: Some("2019-06".into()),
    };
    let v = assess_staleness(&vl, &june, "2019-08").unwrap();
    println!("modified {} vs release {}: stale = {}", v.metadata_date, v.reference_date, v.stale);

    let annotated = attach_performance(&graph, &vl, "recall", 0.7).unwrap();
    println!("{:?}", read_performance(&annotated, &vl));
    print!("{}", serialize_turtle(&annotated, annotated.prefixes()));
}
