//! Helpers shared by the integration tests.
#![allow(dead_code)]

pub mod oracle;

use std::path::PathBuf;

use voidext::endpoint::{HttpRequest, HttpResponse, Method};
use voidext::rdf::Graph;
use voidext::turtle::parse_turtle;

pub fn fixture_path(rel: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(rel)
}

pub fn fixture_text(rel: &str) -> String {
    std::fs::read_to_string(fixture_path(rel)).unwrap_or_else(|e| panic!("{rel}: {e}"))
}

pub fn fixture_graph(rel: &str) -> Graph {
    parse_turtle(&fixture_text(rel)).unwrap_or_else(|e| panic!("{rel}: {e}"))
}

/// Every Turtle fixture, relative to the fixtures directory, sorted.
pub fn all_turtle_fixtures() -> Vec<String> {
    let mut out = Vec::new();
    for dir in ["", "mutants"] {
        for entry in std::fs::read_dir(fixture_path(dir)).unwrap() {
            let name = entry.unwrap().file_name().into_string().unwrap();
            if name.ends_with(".ttl") {
                out.push(if dir.is_empty() { name } else { format!("{dir}/{name}") });
            }
        }
    }
    out.sort();
    out
}

pub const LINDAS: &str = "https://lindas-data.ch/sparql";
pub const DBPEDIA: &str = "http://dbpedia.org/sparql";

/// A toy DBpedia/LINDAS pair answering the probe's two query shapes.
/// `dbpedia` holds English short names, `lindas` canton long names.
pub struct CantonWorld {
    pub dbpedia: Vec<&'static str>,
    pub lindas: Vec<&'static str>,
}

/// The resource mapping written out as a lookup, independently of the query text.
fn lindas_name_for(dbp: &str) -> &str {
    match dbp {
        "Grisons" => "Graubünden / Grigioni / Grischun",
        "Geneva" => "Genève",
        "Lucerne" => "Luzern",
        "Valais" => "Valais / Wallis",
        "Bern" => "Bern / Berne",
        "Fribourg" => "Fribourg / Freiburg",
        other => other,
    }
}

const SAME_NAMES: [&str; 20] = [
    "Aargau",
    "Appenzell Ausserrhoden",
    "Appenzell Innerrhoden",
    "Basel-Landschaft",
    "Basel-Stadt",
    "Glarus",
    "Jura",
    "Neuchâtel",
    "Nidwalden",
    "Obwalden",
    "Schaffhausen",
    "Schwyz",
    "Solothurn",
    "St. Gallen",
    "Thurgau",
    "Ticino",
    "Uri",
    "Vaud",
    "Zug",
    "Zürich",
];

const RENAMED: [&str; 6] = ["Bern", "Fribourg", "Geneva", "Grisons", "Lucerne", "Valais"];

impl CantonWorld {
    /// All 26 cantons on both sides.
    pub fn all_cantons() -> Self {
        let dbpedia: Vec<&str> = SAME_NAMES.iter().chain(RENAMED.iter()).copied().collect();
        let lindas = dbpedia.iter().map(|n| lindas_name_for(n)).collect();
        CantonWorld { dbpedia, lindas }
    }

    /// Ten DBpedia regions, three of which are not cantons and so have no LINDAS partner.
    pub fn seven_of_ten() -> Self {
        let cantons = ["Aargau", "Bern", "Geneva", "Jura", "Uri", "Vaud", "Zug"];
        let regions = ["Bernese Oberland", "Emmental", "Engadin"];
        let dbpedia: Vec<&str> = cantons.iter().chain(regions.iter()).copied().collect();
        let lindas = CantonWorld::all_cantons().lindas;
        CantonWorld { dbpedia, lindas }
    }

    pub fn answer(&self, req: &HttpRequest) -> HttpResponse {
        let query = query_text(req);
        if req.url.starts_with(DBPEDIA) {
            let limit: usize = query
                .split("LIMIT")
                .nth(1)
                .and_then(|t| t.trim().parse().ok())
                .unwrap_or(usize::MAX);
            let mut names = self.dbpedia.clone();
            names.sort();
            names.truncate(limit);
            let rows: Vec<serde_json::Value> = names
                .iter()
                .map(|n| {
                    serde_json::json!({
                        "dbp_name": {"type": "literal", "value": n, "xml:lang": "en"},
                        "lindas_name": {"type": "literal", "value": lindas_name_for(n)},
                    })
                })
                .collect();
            results(&["dbp_name", "lindas_name"], rows)
        } else if req.url.starts_with(LINDAS) {
            let values = query.split("VALUES").nth(1).expect("check query carries VALUES");
            let values = &values[..values.find('}').unwrap()];
            let rows: Vec<serde_json::Value> = values
                .split('"')
                .skip(1)
                .step_by(2)
                .filter(|n| self.lindas.contains(n))
                .map(|n| serde_json::json!({"lindas_name": {"type": "literal", "value": n}}))
                .collect();
            results(&["lindas_name"], rows)
        } else {
            HttpResponse {
                status: 404,
                body: String::new(),
            }
        }
    }
}

fn query_text(req: &HttpRequest) -> String {
    let encoded = match req.method {
        Method::Get => req.url.split_once('?').map(|(_, q)| q.to_owned()).unwrap_or_default(),
        Method::Post => req.body.clone().unwrap_or_default(),
    };
    url::form_urlencoded::parse(encoded.as_bytes())
        .find(|(k, _)| k == "query")
        .map(|(_, v)| v.into_owned())
        .unwrap_or_default()
}

fn results(vars: &[&str], rows: Vec<serde_json::Value>) -> HttpResponse {
    let doc = serde_json::json!({"head": {"vars": vars}, "results": {"bindings": rows}});
    HttpResponse {
        status: 200,
        body: serde_json::to_string(&doc).unwrap(),
    }
}
