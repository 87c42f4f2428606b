//! SPARQL 1.1 protocol client, link-set probing and maintenance annotations.
//!
//! All network traffic goes through [`Transport`], so tests can replay
//! recorded exchanges instead of contacting real endpoints.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;
use std::sync::{Arc, Mutex};
use std::time::{Duration, Instant};

use chrono::NaiveDate;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::catalog::VirtualLinkTuple;
use crate::ns::{rdf, rdfs, void, voidext, xsd};
use crate::rdf::{Binding, BlankNode, Graph, Iri, Literal, Term};
use crate::scaffold::{build_skeleton, ScaffoldOptions};
use crate::vocab::{is_virtual_link_set, parse_date, Dates};

pub const RESULTS_JSON: &str = "application/sparql-results+json";

/// Longest URL-encoded query sent with GET; longer ones are POSTed.
pub const MAX_GET_QUERY: usize = 2000;

/// Mapped resources checked per probe request.
pub const PROBE_BATCH: usize = 50;

pub const DEFAULT_TIMEOUT_MS: u64 = 30_000;
pub const DEFAULT_PARALLEL: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Method {
    Get,
    Post,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct HttpRequest {
    pub method: Method,
    pub url: String,
    /// Form-encoded body of a POST.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub body: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HttpResponse {
    pub status: u16,
    pub body: String,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum EndpointError {
    #[error("{endpoint}: HTTP status {status}")]
    Status { endpoint: String, status: u16 },
    #[error("{endpoint}: timed out")]
    Timeout { endpoint: String },
    #[error("{endpoint}: {message}")]
    Transport { endpoint: String, message: String },
    #[error("{endpoint}: malformed results document: {message}")]
    Malformed { endpoint: String, message: String },
    #[error("{0}")]
    Precondition(String),
}

impl EndpointError {
    pub fn status(&self) -> Option<u16> {
        match self {
            EndpointError::Status { status, .. } => Some(*status),
            _ => None,
        }
    }

    /// Worth trying again: timeouts, connection trouble and server-side failures.
    pub fn is_transient(&self) -> bool {
        match self {
            EndpointError::Timeout { .. } | EndpointError::Transport { .. } => true,
            EndpointError::Status { status, .. } => *status >= 500 || *status == 429,
            _ => false,
        }
    }
}

/// Sends one HTTP request and returns the response, whatever its status.
pub trait Transport: Send + Sync {
    fn send(&self, request: &HttpRequest, timeout_ms: u64) -> Result<HttpResponse, EndpointError>;
}

impl<T: Transport + ?Sized> Transport for Arc<T> {
    fn send(&self, request: &HttpRequest, timeout_ms: u64) -> Result<HttpResponse, EndpointError> {
        (**self).send(request, timeout_ms)
    }
}

impl<T: Transport + ?Sized> Transport for &T {
    fn send(&self, request: &HttpRequest, timeout_ms: u64) -> Result<HttpResponse, EndpointError> {
        (**self).send(request, timeout_ms)
    }
}

fn endpoint_of(url: &str) -> String {
    url.split('?').next().unwrap_or(url).to_owned()
}

/// Real HTTP over `ureq`; proxy settings come from the usual environment variables.
pub struct HttpTransport {
    agent: ureq::Agent,
}

impl Default for HttpTransport {
    fn default() -> Self {
        let agent: ureq::Agent = ureq::Agent::config_builder()
            .http_status_as_error(false)
            .build()
            .into();
        HttpTransport { agent }
    }
}

impl Transport for HttpTransport {
    fn send(&self, request: &HttpRequest, timeout_ms: u64) -> Result<HttpResponse, EndpointError> {
        let endpoint = endpoint_of(&request.url);
        let timeout = Some(Duration::from_millis(timeout_ms));
        let result = match request.method {
            Method::Get => self
                .agent
                .get(&request.url)
                .header("Accept", RESULTS_JSON)
                .config()
                .timeout_global(timeout)
                .build()
                .call(),
            Method::Post => self
                .agent
                .post(&request.url)
                .header("Accept", RESULTS_JSON)
                .header("Content-Type", "application/x-www-form-urlencoded")
                .config()
                .timeout_global(timeout)
                .build()
                .send(request.body.clone().unwrap_or_default()),
        };
        let mut resp = result.map_err(|e| match e {
            ureq::Error::Timeout(_) => EndpointError::Timeout {
                endpoint: endpoint.clone(),
            },
            other => EndpointError::Transport {
                endpoint: endpoint.clone(),
                message: other.to_string(),
            },
        })?;
        let status = resp.status().as_u16();
        let body = resp.body_mut().read_to_string().map_err(|e| EndpointError::Transport {
            endpoint: endpoint.clone(),
            message: e.to_string(),
        })?;
        Ok(HttpResponse { status, body })
    }
}

/// A transport answering from a function; handy for simulations.
pub struct FnTransport<F>(pub F);

impl<F> Transport for FnTransport<F>
where
    F: Fn(&HttpRequest) -> Result<HttpResponse, EndpointError> + Send + Sync,
{
    fn send(&self, request: &HttpRequest, _timeout_ms: u64) -> Result<HttpResponse, EndpointError> {
        (self.0)(request)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Exchange {
    pub request: HttpRequest,
    pub response: HttpResponse,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Transcript {
    pub exchanges: Vec<Exchange>,
}

impl Transcript {
    pub fn load(path: &Path) -> std::io::Result<Self> {
        let text = std::fs::read_to_string(path)?;
        serde_json::from_str(&text).map_err(|e| std::io::Error::new(std::io::ErrorKind::InvalidData, e))
    }

    pub fn save(&self, path: &Path) -> std::io::Result<()> {
        let mut text = serde_json::to_string_pretty(self).expect("plain data");
        text.push('\n');
        std::fs::write(path, text)
    }
}

/// Replays recorded responses, matching on method, URL and body.
pub struct TranscriptTransport {
    responses: BTreeMap<HttpRequest, HttpResponse>,
}

impl TranscriptTransport {
    pub fn new(transcript: Transcript) -> Self {
        TranscriptTransport {
            responses: transcript
                .exchanges
                .into_iter()
                .map(|e| (e.request, e.response))
                .collect(),
        }
    }

    pub fn load(path: &Path) -> std::io::Result<Self> {
        Transcript::load(path).map(Self::new)
    }
}

impl Transport for TranscriptTransport {
    fn send(&self, request: &HttpRequest, _timeout_ms: u64) -> Result<HttpResponse, EndpointError> {
        self.responses
            .get(request)
            .cloned()
            .ok_or_else(|| EndpointError::Transport {
                endpoint: endpoint_of(&request.url),
                message: "no recorded response for this request".into(),
            })
    }
}

/// Wraps a transport and keeps every successful exchange.
pub struct RecordingTransport<T> {
    inner: T,
    log: Mutex<Vec<Exchange>>,
}

impl<T: Transport> RecordingTransport<T> {
    pub fn new(inner: T) -> Self {
        RecordingTransport {
            inner,
            log: Mutex::new(Vec::new()),
        }
    }

    /// Exchanges sorted by request, so the file does not depend on timing.
    pub fn transcript(&self) -> Transcript {
        let mut exchanges = self.log.lock().expect("log lock").clone();
        exchanges.sort_by(|a, b| a.request.cmp(&b.request));
        exchanges.dedup_by(|a, b| a.request == b.request);
        Transcript { exchanges }
    }
}

impl<T: Transport> Transport for RecordingTransport<T> {
    fn send(&self, request: &HttpRequest, timeout_ms: u64) -> Result<HttpResponse, EndpointError> {
        let response = self.inner.send(request, timeout_ms)?;
        self.log.lock().expect("log lock").push(Exchange {
            request: request.clone(),
            response: response.clone(),
        });
        Ok(response)
    }
}

/// Retries transient failures with exponential backoff starting at `base`.
pub struct Retrying<T> {
    pub inner: T,
    pub max_retries: u32,
    pub base: Duration,
}

impl<T: Transport> Transport for Retrying<T> {
    fn send(&self, request: &HttpRequest, timeout_ms: u64) -> Result<HttpResponse, EndpointError> {
        let mut attempt = 0;
        loop {
            let outcome = self.inner.send(request, timeout_ms).and_then(|r| {
                if r.status >= 500 || r.status == 429 {
                    Err(EndpointError::Status {
                        endpoint: endpoint_of(&request.url),
                        status: r.status,
                    })
                } else {
                    Ok(r)
                }
            });
            match outcome {
                Err(e) if e.is_transient() && attempt < self.max_retries => {
                    std::thread::sleep(self.base * 2u32.pow(attempt));
                    attempt += 1;
                }
                other => return other,
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SparqlResult {
    pub variables: Vec<String>,
    pub rows: Vec<Binding>,
}

/// GET when the encoded query is short enough, POST otherwise.
pub fn build_request(endpoint: &str, query: &str) -> HttpRequest {
    let encoded = url::form_urlencoded::Serializer::new(String::new())
        .append_pair("query", query)
        .finish();
    if encoded.len() <= MAX_GET_QUERY {
        let sep = if endpoint.contains('?') { '&' } else { '?' };
        HttpRequest {
            method: Method::Get,
            url: format!("{endpoint}{sep}{encoded}"),
            body: None,
        }
    } else {
        HttpRequest {
            method: Method::Post,
            url: endpoint.to_owned(),
            body: Some(encoded),
        }
    }
}

fn parse_term(v: &Value) -> Result<Term, String> {
    let kind = v["type"].as_str().ok_or("binding without a type")?;
    let value = v["value"].as_str().ok_or("binding without a value")?;
    match kind {
        "uri" => Iri::new(value).map(Term::Iri).map_err(|e| e.to_string()),
        "bnode" => Ok(Term::BlankNode(BlankNode::new(value))),
        "literal" | "typed-literal" => {
            if let Some(lang) = v["xml:lang"].as_str() {
                Ok(Term::Literal(Literal::lang(value, lang)))
            } else if let Some(dt) = v["datatype"].as_str() {
                Ok(Term::Literal(Literal::typed(value, Iri::new(dt).map_err(|e| e.to_string())?)))
            } else {
                Ok(Term::Literal(Literal::string(value)))
            }
        }
        other => Err(format!("unknown term type {other:?}")),
    }
}

/// Reads an `application/sparql-results+json` SELECT document.
pub fn parse_results(body: &str) -> Result<SparqlResult, String> {
    let doc: Value = serde_json::from_str(body).map_err(|e| e.to_string())?;
    let variables = doc["head"]["vars"]
        .as_array()
        .ok_or("missing head.vars")?
        .iter()
        .map(|v| v.as_str().map(str::to_owned).ok_or("non-string variable name"))
        .collect::<Result<Vec<_>, _>>()?;
    let mut rows = Vec::new();
    for b in doc["results"]["bindings"].as_array().ok_or("missing results.bindings")? {
        let obj = b.as_object().ok_or("binding row is not an object")?;
        let mut row = Binding::new();
        for (name, v) in obj {
            if !variables.contains(name) {
                return Err(format!("row binds undeclared variable {name:?}"));
            }
            row.insert(name.clone(), parse_term(v)?);
        }
        rows.push(row);
    }
    Ok(SparqlResult { variables, rows })
}

/// Runs a SELECT query. Never retries; wrap the transport in [`Retrying`] for that.
pub fn execute_select(
    transport: &dyn Transport,
    endpoint: &str,
    query: &str,
    timeout_ms: u64,
) -> Result<SparqlResult, EndpointError> {
    if !(endpoint.starts_with("http://") || endpoint.starts_with("https://")) {
        return Err(EndpointError::Precondition(format!("{endpoint} is not an http(s) endpoint")));
    }
    let resp = transport.send(&build_request(endpoint, query), timeout_ms)?;
    if resp.status >= 400 {
        return Err(EndpointError::Status {
            endpoint: endpoint.to_owned(),
            status: resp.status,
        });
    }
    parse_results(&resp.body).map_err(|message| EndpointError::Malformed {
        endpoint: endpoint.to_owned(),
        message,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ProbeReport {
    pub link_set: String,
    /// What `coverage` measures.
    pub measure: &'static str,
    pub sampled: usize,
    pub matched: usize,
    /// `matched / sampled`, absent when nothing was sampled.
    pub coverage: Option<f64>,
    pub elapsed_ms: u64,
    pub errors: Vec<String>,
}

impl ProbeReport {
    /// The report with timing zeroed, for byte-level comparisons.
    pub fn without_timing(mut self) -> Self {
        self.elapsed_ms = 0;
        self
    }
}

#[derive(Clone, Debug)]
pub struct ProbeOptions {
    pub sample_limit: usize,
    pub timeout_ms: u64,
    pub parallel: usize,
}

impl Default for ProbeOptions {
    fn default() -> Self {
        ProbeOptions {
            sample_limit: 100,
            timeout_ms: DEFAULT_TIMEOUT_MS,
            parallel: DEFAULT_PARALLEL,
        }
    }
}

/// PREFIX lines for the labels `body` actually mentions.
fn prologue_for(sk: &crate::scaffold::FederatedQuerySkeleton, body: &str) -> String {
    use crate::sparql::{significant, tokenize, TokenKind};
    let tokens = tokenize(body).unwrap_or_default();
    let used: BTreeSet<&str> = significant(&tokens)
        .filter(|t| t.kind == TokenKind::PName)
        .map(|t| t.text(body).split(':').next().unwrap_or(""))
        .collect();
    sk.prologue
        .iter()
        .filter(|(l, _)| used.contains(l))
        .map(|(l, ns)| format!("PREFIX {l}: <{ns}>\n"))
        .collect()
}

/// The sampling query and the per-batch check queries a probe sends.
pub struct ProbePlan {
    pub sample_endpoint: String,
    pub sample_query: String,
    pub check_endpoint: String,
    pub in_var: String,
    pub out_var: String,
    check_body: String,
    check_prefixes: String,
}

impl ProbePlan {
    pub fn new(tuple: &VirtualLinkTuple, sample_limit: usize) -> Result<Self, EndpointError> {
        if sample_limit == 0 {
            return Err(EndpointError::Precondition("sample limit must be at least 1".into()));
        }
        let sk = build_skeleton(tuple, None, None, &ScaffoldOptions::default())
            .map_err(|e| EndpointError::Precondition(e.to_string()))?;
        let from = sk.bridge_at.unwrap_or(0);
        let to = 1 - from;
        let endpoint = |k: usize| {
            tuple.sides[k]
                .endpoint
                .as_ref()
                .map(|e| e.as_str().to_owned())
                .expect("skeleton requires endpoints")
        };
        let (in_var, out_var) = (sk.join_vars[from].clone(), sk.join_vars[to].clone());
        let proj = if in_var == out_var {
            format!("?{in_var}")
        } else {
            format!("?{in_var} ?{out_var}")
        };
        let sample_query = format!(
            "{}SELECT DISTINCT {proj} WHERE {{\n{}\n}}\nORDER BY ?{in_var}\nLIMIT {sample_limit}\n",
            prologue_for(&sk, &sk.side_blocks[from]),
            sk.side_blocks[from]
        );
        Ok(ProbePlan {
            sample_endpoint: endpoint(from),
            sample_query,
            check_endpoint: endpoint(to),
            in_var,
            out_var,
            check_body: sk.side_blocks[to].clone(),
            check_prefixes: prologue_for(&sk, &sk.side_blocks[to]),
        })
    }

    pub fn check_query(&self, values: &[Term]) -> String {
        let vals: Vec<String> = values.iter().map(Term::to_string).collect();
        format!(
            "{}SELECT DISTINCT ?{v} WHERE {{\nVALUES ?{v} {{ {} }}\n{}\n}}\n",
            self.check_prefixes,
            vals.join(" "),
            self.check_body,
            v = self.out_var
        )
    }
}

/// Samples resources on the side that feeds the mapping, maps them, and
/// counts how many exist on the other side: a directional coverage figure,
/// a lower-bound stand-in for recall.
pub fn probe_link_set(
    transport: &dyn Transport,
    tuple: &VirtualLinkTuple,
    options: &ProbeOptions,
) -> Result<ProbeReport, EndpointError> {
    let plan = ProbePlan::new(tuple, options.sample_limit)?;
    let started = Instant::now();
    let mut report = ProbeReport {
        link_set: tuple.vl.as_str().to_owned(),
        measure: "directional-coverage",
        sampled: 0,
        matched: 0,
        coverage: None,
        elapsed_ms: 0,
        errors: Vec::new(),
    };
    let sample = match execute_select(transport, &plan.sample_endpoint, &plan.sample_query, options.timeout_ms) {
        Ok(s) => s,
        Err(e) => {
            report.errors.push(e.to_string());
            report.elapsed_ms = started.elapsed().as_millis() as u64;
            return Ok(report);
        }
    };
    let outs: Vec<Option<Term>> = sample.rows.iter().map(|r| r.get(&plan.out_var).cloned()).collect();
    report.sampled = outs.len();
    let distinct: Vec<Term> = outs.iter().flatten().cloned().collect::<BTreeSet<_>>().into_iter().collect();
    let batches: Vec<&[Term]> = distinct.chunks(PROBE_BATCH).collect();

    // Batches run on up to `parallel` threads; results are merged in batch order.
    let results: Vec<Result<SparqlResult, EndpointError>> = {
        let slots: Vec<Mutex<Option<Result<SparqlResult, EndpointError>>>> =
            batches.iter().map(|_| Mutex::new(None)).collect();
        let next = Mutex::new(0usize);
        let workers = options.parallel.max(1).min(batches.len().max(1));
        std::thread::scope(|scope| {
            for _ in 0..workers {
                scope.spawn(|| loop {
                    let k = {
                        let mut n = next.lock().expect("queue lock");
                        let k = *n;
                        *n += 1;
                        k
                    };
                    let Some(batch) = batches.get(k) else { break };
                    let q = plan.check_query(batch);
                    let r = execute_select(transport, &plan.check_endpoint, &q, options.timeout_ms);
                    *slots[k].lock().expect("slot lock") = Some(r);
                });
            }
        });
        slots
            .into_iter()
            .map(|s| s.into_inner().expect("slot lock").expect("every batch ran"))
            .collect()
    };

    let mut found: BTreeSet<Term> = BTreeSet::new();
    for (k, r) in results.into_iter().enumerate() {
        match r {
            Ok(res) => found.extend(res.rows.into_iter().filter_map(|mut row| row.remove(&plan.out_var))),
            Err(e) => report.errors.push(format!("batch {}: {e}", k + 1)),
        }
    }
    report.matched = outs.iter().filter(|o| o.as_ref().is_some_and(|t| found.contains(t))).count();
    report.coverage = (report.sampled > 0).then(|| report.matched as f64 / report.sampled as f64);
    report.elapsed_ms = started.elapsed().as_millis() as u64;
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StalenessVerdict {
    pub link_set: String,
    pub metadata_date: NaiveDate,
    pub reference_date: NaiveDate,
    pub stale: bool,
}

/// Compares the newer of issued/modified with a reference date such as a dataset release.
pub fn assess_staleness(link_set: &Iri, dates: &Dates, reference: &str) -> Result<StalenessVerdict, EndpointError> {
    let metadata_date = dates
        .latest()
        .map_err(EndpointError::Precondition)?
        .ok_or_else(|| EndpointError::Precondition(format!("{link_set} has neither issued nor modified date")))?;
    let reference_date = parse_date(reference)
        .ok_or_else(|| EndpointError::Precondition(format!("invalid reference date {reference:?}")))?;
    Ok(StalenessVerdict {
        link_set: link_set.as_str().to_owned(),
        metadata_date,
        reference_date,
        stale: metadata_date < reference_date,
    })
}

fn is_annotatable(g: &Graph, node: &Term) -> bool {
    is_virtual_link_set(g, node)
        || g.has_type(node, void::LINKSET)
        || g.has_type(node, voidext::SHARED_INSTANCE_SET)
}

/// Adds a measure node: the `hasPerformanceMeasure` arc, a label and a value.
pub fn attach_performance(graph: &Graph, link_set: &Iri, name: &str, value: f64) -> Result<Graph, EndpointError> {
    let node = Term::Iri(link_set.clone());
    if !is_annotatable(graph, &node) {
        return Err(EndpointError::Precondition(format!("{link_set} is not a typed link set")));
    }
    let mut g = graph.clone();
    for (label, ns) in [("rdf", rdf::NS), ("rdfs", rdfs::NS), ("xsd", xsd::NS)] {
        let bound = g.prefixes().iter().any(|(_, n)| n == ns);
        if !bound && g.prefixes().get(label).is_none() {
            g.prefixes_mut().insert(label, ns);
        }
    }
    let m = Term::BlankNode(g.fresh_blank());
    let iri = Iri::from_static;
    let add = |g: &mut Graph, s: Term, p: &'static str, o: Term| {
        g.add(s, iri(p), o).expect("well-formed triple");
    };
    add(&mut g, node, voidext::HAS_PERFORMANCE_MEASURE, m.clone());
    add(&mut g, m.clone(), rdfs::LABEL, Term::Literal(Literal::string(name)));
    add(
        &mut g,
        m,
        rdf::VALUE,
        Term::Literal(Literal::typed(format!("{value:?}"), iri(xsd::DOUBLE))),
    );
    Ok(g)
}

/// Labelled numeric measures attached to `link_set`, sorted by label.
pub fn read_performance(graph: &Graph, link_set: &Iri) -> Vec<(String, f64)> {
    let node = Term::Iri(link_set.clone());
    let mut out: Vec<(String, f64)> = graph
        .objects(&node, voidext::HAS_PERFORMANCE_MEASURE)
        .into_iter()
        .filter_map(|m| {
            let label = graph.object(m, rdfs::LABEL)?.as_literal()?.lexical().to_owned();
            let value = graph.object(m, rdf::VALUE)?.as_literal()?.lexical().parse().ok()?;
            Some((label, value))
        })
        .collect();
    out.sort_by(|a, b| a.0.cmp(&b.0).then(a.1.total_cmp(&b.1)));
    out
}
