//! End-to-end acceptance checks. Each criterion prints one PASS/FAIL line
//! with its runtime; the test fails if any criterion does.

mod common;

use std::time::{Duration, Instant};

use common::oracle::{bgp_mismatches, link_facts};
use common::{all_turtle_fixtures, fixture_graph, fixture_path, fixture_text};
use serde_json::Value;
use voidext::canon::{import_legacy, DEFAULT_MINT_BASE};
use voidext::catalog::emit_tuples;
use voidext::cli;
use voidext::endpoint::{assess_staleness, probe_link_set, ProbeOptions, TranscriptTransport};
use voidext::rdf::{is_isomorphic, Graph};
use voidext::scaffold::check_wellformed;
use voidext::sparql::{contains_token_run, significant, tokenize};
use voidext::turtle::{parse_turtle, serialize_turtle};
use voidext::validate::{validate, Code};

type Check = Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn run_cli(args: &[&str]) -> (i32, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut argv = vec!["voidext"];
    argv.extend_from_slice(args);
    let code = cli::run(argv, &mut out, &mut err, false);
    (code, String::from_utf8(out).expect("utf-8 output"))
}

fn path(rel: &str) -> String {
    fixture_path(rel).to_string_lossy().into_owned()
}

fn tokens(text: &str) -> Vec<String> {
    let toks = tokenize(text).expect("tokenizable");
    significant(&toks).map(|t| t.text(text).to_owned()).collect()
}

// Reference taxonomy mapping, typed in independently of the fixture file.
const TAXONOMY_MAPPING: &str = r#"?IRI_EBI a <http://www.biopax.org/release/biopax-level3.owl#BioSource>.
BIND(IRI(CONCAT("http://purl.uniprot.org/taxonomy/", STRAFTER(
STR(?IRI_EBI), "http://identifiers.org/taxonomy/"))) as ?IRI_UNIPROT)
FILTER(STRSTARTS(STR(?IRI_EBI), "http://identifiers.org/taxonomy/"))"#;

const EBI: &str = "https://www.ebi.ac.uk/rdf/services/sparql";
const UNIPROT: &str = "https://sparql.uniprot.org/sparql/";

fn ebi_uniprot_tuple() -> Check {
    let (code, out) = run_cli(&["catalog", &path("ebi_uniprot.ttl"), "--json"]);
    ensure(code == 0, || format!("catalog exited with {code}"))?;
    let doc: Value = serde_json::from_str(&out).map_err(|e| e.to_string())?;
    let sets = doc["virtual_link_sets"].as_array().ok_or("no virtual_link_sets array")?;
    let t = sets
        .iter()
        .find(|t| t["iri"] == "http://purl.org/query/bioquery#EBI_UNIPROT_12")
        .ok_or("EBI_UNIPROT_12 missing")?;
    ensure(t["kind"] == "ComplexOfSharedInstanceSets", || format!("kind {}", t["kind"]))?;
    ensure(t["types"] == serde_json::json!(["biopax:BioSource", "up:Taxon"]), || {
        format!("types {}", t["types"])
    })?;
    let endpoints: Vec<&str> = t["datasets"]
        .as_array()
        .ok_or("no datasets")?
        .iter()
        .filter_map(|d| d["endpoint"].as_str())
        .collect();
    ensure(endpoints == [EBI, UNIPROT], || format!("endpoints {endpoints:?}"))?;
    let titles: Vec<&str> = t["datasets"].as_array().unwrap().iter().filter_map(|d| d["title"].as_str()).collect();
    ensure(
        titles == ["Linked Open Data platform for EBI data.", "The Universal Protein Resource (UniProt)"],
        || format!("titles {titles:?}"),
    )?;
    let m = &t["mapping"];
    ensure(m["input_var"] == "IRI_EBI" && m["output_var"] == "IRI_UNIPROT", || {
        format!("mapping variables {} -> {}", m["input_var"], m["output_var"])
    })?;
    let snippet = m["snippet"].as_str().ok_or("no snippet")?;
    ensure(tokens(snippet) == tokens(TAXONOMY_MAPPING), || format!("snippet differs: {snippet}"))
}

fn gleevec_query() -> Check {
    let (code, query) = run_cli(&[
        "scaffold",
        "--catalog",
        &path("ebi_uniprot.ttl"),
        "--link-set",
        "bioquery:EBI_UNIPROT_12",
        "--local",
        &path("fragments/gleevec_ebi.rq"),
        "--remote",
        &path("fragments/rodent_uniprot.rq"),
    ]);
    ensure(code == 0, || format!("scaffold exited with {code}"))?;
    ensure(contains_token_run(&query, "cco:hasMolecule chembl:CHEMBL941"), || {
        "molecule pattern missing".into()
    })?;
    let toks = tokens(&query);
    let services: Vec<&String> = toks
        .iter()
        .zip(toks.iter().skip(1))
        .filter(|(a, _)| a.eq_ignore_ascii_case("SERVICE"))
        .map(|(_, iri)| iri)
        .collect();
    ensure(services == [&format!("<{UNIPROT}>")], || format!("SERVICE blocks {services:?}"))?;
    let bridge = r#"BIND(IRI(CONCAT("http://purl.uniprot.org/taxonomy/", STRAFTER(STR(?IRI_EBI), "http://identifiers.org/taxonomy/")))"#;
    ensure(contains_token_run(&query, bridge), || "CONCAT/STRAFTER bridge missing".into())?;
    check_wellformed(&query).map_err(|f| format!("not well-formed: {f:?}"))
}

fn mutant_suite() -> Check {
    let mut covered = std::collections::BTreeSet::new();
    let mut count = 0;
    for rel in all_turtle_fixtures().iter().filter(|f| f.starts_with("mutants/")) {
        let text = fixture_text(rel);
        let expect = text
            .lines()
            .find_map(|l| l.strip_prefix("# expect: "))
            .ok_or_else(|| format!("{rel}: no expect header"))?;
        let (code, subject) = expect.split_once(' ').ok_or_else(|| format!("{rel}: bad header"))?;
        let code = Code::parse(code).ok_or_else(|| format!("{rel}: unknown code"))?;
        let g = parse_turtle(&text).map_err(|e| format!("{rel}: {e}"))?;
        let errors: Vec<_> = validate(&g).into_iter().filter(|d| d.is_error()).collect();
        ensure(errors.len() == 1 && errors[0].code == code && errors[0].subject == subject.trim(), || {
            format!("{rel}: expected {code:?} on {subject}, got {errors:?}")
        })?;
        covered.insert(code);
        count += 1;
    }
    ensure(count >= 12, || format!("only {count} mutants"))?;
    for c in Code::ALL.iter().filter(|c| **c != Code::C9) {
        ensure(covered.contains(c), || format!("{c:?} has no mutant"))?;
    }
    for f in ["lindas_dbpedia.ttl", "ebi_uniprot.ttl", "oma_uniprot.ttl"] {
        let errs: Vec<_> = validate(&fixture_graph(f)).into_iter().filter(|d| d.is_error()).collect();
        ensure(errs.is_empty(), || format!("{f}: {errs:?}"))?;
    }
    Ok(())
}

fn canon(g: &Graph) -> Result<Graph, String> {
    import_legacy(g, DEFAULT_MINT_BASE).map(|(g, _)| g).map_err(|e| e.to_string())
}

fn legacy_canonicalization() -> Check {
    let expected = fixture_graph("legacy_canonical.ttl");
    for f in ["legacy_m1.ttl", "legacy_m2.ttl", "legacy_m2_symmetric.ttl"] {
        let legacy = fixture_graph(f);
        let once = canon(&legacy)?;
        ensure(is_isomorphic(&once, &expected), || format!("{f}: not isomorphic to the canonical form"))?;
        let twice = canon(&once)?;
        ensure(is_isomorphic(&once, &twice), || format!("{f}: second import changed the graph"))?;
        ensure(link_facts(&legacy) == link_facts(&once), || {
            format!("{f}: facts {:?} became {:?}", link_facts(&legacy), link_facts(&once))
        })?;
    }
    for f in ["lindas_dbpedia.ttl", "ebi_uniprot.ttl", "oma_uniprot.ttl", "legacy_canonical.ttl"] {
        let g = fixture_graph(f);
        let out = canon(&g)?;
        ensure(is_isomorphic(&g, &out), || format!("{f}: canonical input changed"))?;
        ensure(link_facts(&g) == link_facts(&out), || format!("{f}: facts changed"))?;
    }
    Ok(())
}

fn bgp_equivalence() -> Check {
    let bad = bgp_mismatches(1000);
    ensure(bad.is_empty(), || format!("mismatching seeds {bad:?}"))
}

fn round_trip() -> Check {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    for rel in all_turtle_fixtures() {
        let g = fixture_graph(&rel);
        let again = parse_turtle(&serialize_turtle(&g, g.prefixes())).map_err(|e| format!("{rel}: {e}"))?;
        ensure(is_isomorphic(&g, &again), || format!("{rel}: round trip not isomorphic"))?;

        let (code, first) = run_cli(&["fmt", &path(&rel)]);
        ensure(code == 0, || format!("{rel}: fmt exited with {code}"))?;
        let tmp = dir.path().join("once.ttl");
        std::fs::write(&tmp, &first).map_err(|e| e.to_string())?;
        let (_, second) = run_cli(&["fmt", tmp.to_str().unwrap()]);
        ensure(first == second, || format!("{rel}: fmt not idempotent"))?;
    }
    Ok(())
}

fn probe_determinism() -> Check {
    let tuple = emit_tuples(&fixture_graph("lindas_dbpedia.ttl"))
        .map_err(|e| e.to_string())?
        .tuples
        .remove(0);
    for (file, limit, sampled, matched, coverage) in
        [("cantons_26.json", 100, 26, 26, 1.0), ("regions_7_of_10.json", 10, 10, 7, 0.7)]
    {
        let replay = TranscriptTransport::load(&fixture_path("transcripts").join(file)).map_err(|e| e.to_string())?;
        let opts = ProbeOptions {
            sample_limit: limit,
            ..Default::default()
        };
        let a = probe_link_set(&replay, &tuple, &opts).map_err(|e| e.to_string())?.without_timing();
        let b = probe_link_set(&replay, &tuple, &opts).map_err(|e| e.to_string())?.without_timing();
        ensure(a.sampled == sampled && a.matched == matched && a.coverage == Some(coverage), || {
            format!("{file}: {}/{} coverage {:?}", a.matched, a.sampled, a.coverage)
        })?;
        ensure(a.errors.is_empty(), || format!("{file}: {:?}", a.errors))?;
        let (ja, jb) = (serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
        ensure(ja == jb, || format!("{file}: reports differ"))?;
    }
    let verdict = assess_staleness(&tuple.vl, &tuple.dates, "2019-08").map_err(|e| e.to_string())?;
    ensure(
        verdict.stale && verdict.metadata_date.to_string() == "2019-06-01",
        || format!("staleness {verdict:?}"),
    )
}

/// A pass over every fixture through every offline command.
fn offline_sweep() -> Check {
    for rel in all_turtle_fixtures() {
        let p = path(&rel);
        let (code, _) = run_cli(&["validate", &p, "--json"]);
        ensure(code <= 1, || format!("validate {rel}: {code}"))?;
        run_cli(&["catalog", &p, "--json"]);
        run_cli(&["import-legacy", &p]);
    }
    Ok(())
}

struct Criterion {
    id: u8,
    name: &'static str,
    budget: Duration,
    check: fn() -> Check,
}

#[test]
fn acceptance() {
    let started = Instant::now();
    let criteria = [
        Criterion { id: 1, name: "EBI-UniProt tuple reproduction", budget: Duration::from_secs(1), check: ebi_uniprot_tuple },
        Criterion { id: 2, name: "Gleevec federated query structure", budget: Duration::from_secs(1), check: gleevec_query },
        Criterion { id: 3, name: "validator mutant suite", budget: Duration::from_secs(2), check: mutant_suite },
        Criterion { id: 4, name: "legacy canonicalization", budget: Duration::from_secs(1), check: legacy_canonicalization },
        Criterion { id: 5, name: "BGP brute-force equivalence (1000 cases)", budget: Duration::from_secs(30), check: bgp_equivalence },
        Criterion { id: 6, name: "round trip and fmt idempotence", budget: Duration::from_secs(2), check: round_trip },
        Criterion { id: 7, name: "probe determinism and staleness", budget: Duration::from_secs(1), check: probe_determinism },
    ];
    let mut failed = Vec::new();
    let mut line = |id: u8, name: &str, elapsed: Duration, budget: Duration, result: Check| {
        let pass = result.is_ok() && elapsed < budget;
        let detail = match (&result, pass) {
            (Err(e), _) => format!(": {e}"),
            (Ok(()), false) => format!(": over the {} ms budget", budget.as_millis()),
            _ => String::new(),
        };
        println!(
            "criterion {id} {} {name} ({} ms){detail}",
            if pass { "PASS" } else { "FAIL" },
            elapsed.as_millis()
        );
        if !pass {
            failed.push(id);
        }
    };
    for c in &criteria {
        let t = Instant::now();
        let result = (c.check)();
        line(c.id, c.name, t.elapsed(), c.budget, result);
    }
    let sweep = offline_sweep();
    line(8, "full offline run", started.elapsed(), Duration::from_secs(60), sweep);
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
