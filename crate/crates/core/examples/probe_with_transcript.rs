//! Probe the canton link set against recorded endpoint responses.
//!
//! Pass `--live` to query the real endpoints instead.

use voidext::catalog::emit_tuples;
use voidext::endpoint::{probe_link_set, HttpTransport, ProbeOptions, TranscriptTransport, Transport};
use voidext::turtle::parse_turtle;

fn main() {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures");
    let graph = parse_turtle(&std::fs::read_to_string(format!("{dir}/lindas_dbpedia.ttl")).unwrap()).unwrap();
    let tuple = emit_tuples(&graph).unwrap().tuples.remove(0);

    let live = std::env::args().any(|a| a == "--live");
    let runs: Vec<(String, Box<dyn Transport>, usize)> = if live {
        vec![("live".into(), Box::new(HttpTransport::default()), 100)]
    } else {
        ["cantons_26.json", "regions_7_of_10.json"]
            .into_iter()
            .zip([100, 10])
            .map(|(f, limit)| {
                let t = TranscriptTransport::load(format!("{dir}/transcripts/{f}").as_ref()).unwrap();
                (f.to_owned(), Box::new(t) as Box<dyn Transport>, limit)
            })
            .collect()
    };
    for (label, transport, sample_limit) in runs {
        let opts = ProbeOptions {
            sample_limit,
            ..Default::default()
        };
        let report = probe_link_set(transport.as_ref(), &tuple, &opts).unwrap();
        println!("{label}: {}", serde_json::to_string(&report).unwrap());
    }
}
