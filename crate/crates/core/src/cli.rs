//! The `voidext` command line.
//!
//! Exit codes: 0 success, 1 domain failure (validation errors, unusable link
//! set, coverage below `--min-coverage`), 2 usage or parse failure, 3 transport
//! failure.

use std::ffi::OsString;
use std::io::{IsTerminal, Write};
use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::canon::{import_legacy, DEFAULT_MINT_BASE};
use crate::catalog::{emit_tuples, to_json, Catalog, VirtualLinkTuple};
use crate::endpoint::{
    assess_staleness, probe_link_set, HttpTransport, ProbeOptions, Retrying, TranscriptTransport, Transport,
    DEFAULT_PARALLEL, DEFAULT_TIMEOUT_MS,
};
use crate::rdf::Graph;
use crate::scaffold::{scaffold, BridgeSide, QueryFragment, ScaffoldOptions};
use crate::turtle::{parse_turtle, serialize_turtle};
use crate::validate::{has_errors, validate};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_TRANSPORT: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "voidext", version, about = "Validate, catalog and query VoIDext virtual link sets")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check link-set metadata and print diagnostics.
    Validate {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// List every virtual link set with its kind and join tuple.
    Catalog {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Draft a federated query joining the two sides of a link set.
    Scaffold {
        #[command(flatten)]
        target: Target,
        /// Endpoint the query runs at; the other side goes in a SERVICE block.
        #[arg(long)]
        at: Option<String>,
        /// Fragment for the side queried at `--at`.
        #[arg(long)]
        local: Option<PathBuf>,
        /// Fragment for the side wrapped in SERVICE.
        #[arg(long)]
        remote: Option<PathBuf>,
        /// Put the mapping snippet in this side's block.
        #[arg(long, value_enum)]
        bridge_side: Option<SideArg>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Rewrite legacy VoID link patterns into the VoIDext shape.
    ImportLegacy {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        /// Where to write the canonical Turtle; standard output when absent.
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Base for minted complex link set IRIs.
        #[arg(long, default_value = DEFAULT_MINT_BASE)]
        mint_base: String,
        #[arg(long)]
        json: bool,
    },
    /// Sample a link set against its endpoints and report directional coverage.
    Probe {
        #[command(flatten)]
        target: Target,
        #[arg(long, default_value_t = 100)]
        sample_limit: usize,
        #[arg(long, default_value_t = DEFAULT_TIMEOUT_MS)]
        timeout_ms: u64,
        /// Concurrent check requests.
        #[arg(long, default_value_t = DEFAULT_PARALLEL)]
        parallel: usize,
        /// Exit with 1 when coverage falls below this.
        #[arg(long)]
        min_coverage: Option<f64>,
        /// Replay responses from a recorded transcript instead of the network.
        #[arg(long)]
        transcript: Option<PathBuf>,
        /// Retries for transient failures, with exponential backoff.
        #[arg(long, default_value_t = 0, value_parser = clap::value_parser!(u32).range(0..=2))]
        retries: u32,
        /// Also judge staleness against this date (YYYY, YYYY-MM or YYYY-MM-DD).
        #[arg(long)]
        reference_date: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Print the canonical Turtle serialization.
    Fmt {
        file: PathBuf,
    },
}

#[derive(Args, Debug)]
struct Target {
    /// Turtle files describing the link set.
    #[arg(long = "catalog", required = true)]
    catalogs: Vec<PathBuf>,
    /// Full IRI or prefixed name of the virtual link set.
    #[arg(long)]
    link_set: String,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SideArg {
    Ds1,
    Ds2,
}

struct Failure {
    code: i32,
    message: String,
}

fn fail(code: i32, message: impl Into<String>) -> Failure {
    Failure {
        code,
        message: message.into(),
    }
}

type Outcome = Result<i32, Failure>;

struct Ctx<'a> {
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
    color: bool,
}

impl Ctx<'_> {
    fn paint(&self, code: &str, text: &str) -> String {
        if self.color {
            format!("\x1b[{code}m{text}\x1b[0m")
        } else {
            text.to_owned()
        }
    }
}

/// Entry point for the binary: real arguments, real streams.
pub fn main_from_env() -> i32 {
    let color = std::env::var_os("NO_COLOR").is_none_or(|v| v.is_empty()) && std::io::stderr().is_terminal();
    let mut out = std::io::stdout().lock();
    let mut err = std::io::stderr().lock();
    run(std::env::args_os(), &mut out, &mut err, color)
}

/// Runs one command. `args` includes the program name.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write, color: bool) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    let mut ctx = Ctx { out, err, color };
    let result = match cli.command {
        Command::Validate { files, json } => cmd_validate(&mut ctx, &files, json),
        Command::Catalog { files, json } => cmd_catalog(&mut ctx, &files, json),
        Command::Scaffold {
            target,
            at,
            local,
            remote,
            bridge_side,
            output,
        } => cmd_scaffold(&mut ctx, &target, at, local, remote, bridge_side, output),
        Command::ImportLegacy {
            files,
            output,
            mint_base,
            json,
        } => cmd_import(&mut ctx, &files, output, &mint_base, json),
        Command::Probe {
            target,
            sample_limit,
            timeout_ms,
            parallel,
            min_coverage,
            transcript,
            retries,
            reference_date,
            json,
        } => {
            let opts = ProbeOptions {
                sample_limit,
                timeout_ms,
                parallel,
            };
            cmd_probe(&mut ctx, &target, &opts, min_coverage, transcript, retries, reference_date, json)
        }
        Command::Fmt { file } => cmd_fmt(&mut ctx, &file),
    };
    let code = match result {
        Ok(code) => code,
        Err(f) => {
            let label = ctx.paint("1;31", "error");
            let _ = writeln!(ctx.err, "{label}: {}", f.message);
            f.code
        }
    };
    let _ = ctx.out.flush();
    code
}

fn read_text(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| fail(EXIT_USAGE, format!("{}: {e}", path.display())))
}

fn load_graph(path: &Path) -> Result<Graph, Failure> {
    parse_turtle(&read_text(path)?).map_err(|d| fail(EXIT_USAGE, format!("{}:{d}", path.display())))
}

/// Union of all files; blank nodes from different files never merge.
fn load_graphs(paths: &[PathBuf]) -> Result<Graph, Failure> {
    let mut merged = Graph::new();
    for p in paths {
        merged.merge(&load_graph(p)?);
    }
    Ok(merged)
}

fn write_json(ctx: &mut Ctx, value: &serde_json::Value) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(value).expect("JSON values serialize");
    writeln!(ctx.out, "{text}").map_err(|e| fail(EXIT_USAGE, e.to_string()))
}

fn write_out(ctx: &mut Ctx, output: Option<&Path>, text: &str) -> Result<(), Failure> {
    match output {
        Some(p) => std::fs::write(p, text).map_err(|e| fail(EXIT_USAGE, format!("{}: {e}", p.display()))),
        None => ctx.out.write_all(text.as_bytes()).map_err(|e| fail(EXIT_USAGE, e.to_string())),
    }
}

fn cmd_validate(ctx: &mut Ctx, files: &[PathBuf], json: bool) -> Outcome {
    let graph = load_graphs(files)?;
    let diags = validate(&graph);
    if json {
        write_json(ctx, &json!({ "diagnostics": diags, "errors": has_errors(&diags) }))?;
    } else {
        for d in &diags {
            let line = if d.is_error() {
                ctx.paint("31", &d.to_string())
            } else {
                ctx.paint("33", &d.to_string())
            };
            let _ = writeln!(ctx.out, "{line}");
        }
        let errors = diags.iter().filter(|d| d.is_error()).count();
        let _ = writeln!(ctx.err, "{errors} error(s), {} warning(s)", diags.len() - errors);
    }
    Ok(if has_errors(&diags) { EXIT_DOMAIN } else { EXIT_OK })
}

fn build_catalog(graph: &Graph) -> Result<Catalog, Failure> {
    emit_tuples(graph).map_err(|e| fail(EXIT_DOMAIN, e.to_string()))
}

fn cmd_catalog(ctx: &mut Ctx, files: &[PathBuf], json: bool) -> Outcome {
    let graph = load_graphs(files)?;
    let cat = build_catalog(&graph)?;
    for w in &cat.warnings {
        let _ = writeln!(ctx.err, "{}: {w}", ctx.paint("33", "warning"));
    }
    if json {
        write_json(ctx, &to_json(&cat, graph.prefixes()))?;
        return Ok(EXIT_OK);
    }
    let p = graph.prefixes();
    let short = |iri: &str| p.compact_str(iri).unwrap_or_else(|| format!("<{iri}>"));
    for t in &cat.tuples {
        let _ = writeln!(ctx.out, "{} {}", short(t.vl.as_str()), t.kind.as_str());
        for (k, s) in t.sides.iter().enumerate() {
            let endpoint = s.endpoint.as_ref().map_or("-".to_owned(), |e| e.as_str().to_owned());
            let types = s.types.as_ref().map_or("-".to_owned(), |c| c.display(p));
            let _ = writeln!(ctx.out, "  ds{}: {endpoint} types {types}", k + 1);
        }
        if let Some(j) = t.join {
            let _ = writeln!(ctx.out, "  join: {}", j.as_str());
        }
        if let Some(m) = &t.mapping {
            let _ = writeln!(ctx.out, "  mapping: ?{} -> ?{}", m.input_var, m.output_var);
        }
    }
    Ok(EXIT_OK)
}

fn find_tuple(target: &Target) -> Result<VirtualLinkTuple, Failure> {
    let graph = load_graphs(&target.catalogs)?;
    let cat = build_catalog(&graph)?;
    let wanted = graph
        .prefixes()
        .expand(&target.link_set)
        .filter(|_| !target.link_set.contains("://"))
        .unwrap_or_else(|| target.link_set.trim_matches(['<', '>']).to_owned());
    cat.get(&wanted)
        .cloned()
        .ok_or_else(|| fail(EXIT_DOMAIN, format!("no virtual link set {wanted} in the catalog")))
}

fn load_fragment(path: Option<PathBuf>) -> Result<Option<QueryFragment>, Failure> {
    path.map(|p| QueryFragment::parse(&read_text(&p)?).map_err(|e| fail(EXIT_USAGE, format!("{}: {e}", p.display()))))
        .transpose()
}

fn cmd_scaffold(
    ctx: &mut Ctx,
    target: &Target,
    at: Option<String>,
    local: Option<PathBuf>,
    remote: Option<PathBuf>,
    bridge_side: Option<SideArg>,
    output: Option<PathBuf>,
) -> Outcome {
    let tuple = find_tuple(target)?;
    let (local, remote) = (load_fragment(local)?, load_fragment(remote)?);
    let opts = ScaffoldOptions {
        at,
        bridge_side: bridge_side.map(|s| match s {
            SideArg::Ds1 => BridgeSide::Ds1,
            SideArg::Ds2 => BridgeSide::Ds2,
        }),
    };
    let query = scaffold(&tuple, local.as_ref(), remote.as_ref(), &opts).map_err(|e| fail(EXIT_DOMAIN, e.to_string()))?;
    write_out(ctx, output.as_deref(), &query)?;
    Ok(EXIT_OK)
}

fn cmd_import(ctx: &mut Ctx, files: &[PathBuf], output: Option<PathBuf>, mint_base: &str, json: bool) -> Outcome {
    let graph = load_graphs(files)?;
    let (canonical, report) = import_legacy(&graph, mint_base).map_err(|e| fail(EXIT_DOMAIN, e.to_string()))?;
    write_out(ctx, output.as_deref(), &serialize_turtle(&canonical, canonical.prefixes()))?;
    // With Turtle on stdout the report moves to stderr.
    let report_text = if json {
        serde_json::to_string_pretty(&report).expect("report serializes")
    } else {
        let mut s = String::new();
        for r in &report.rewrites {
            s.push_str(&format!("{} {}", r.node, r.pattern));
            for n in &r.notes {
                s.push_str(&format!("; {n}"));
            }
            s.push('\n');
        }
        for w in &report.warnings {
            s.push_str(&format!("warning: {w}\n"));
        }
        s.trim_end().to_owned()
    };
    if !report_text.is_empty() {
        let sink: &mut dyn Write = if output.is_some() { &mut *ctx.out } else { &mut *ctx.err };
        let _ = writeln!(sink, "{report_text}");
    }
    Ok(EXIT_OK)
}

#[allow(clippy::too_many_arguments)]
fn cmd_probe(
    ctx: &mut Ctx,
    target: &Target,
    opts: &ProbeOptions,
    min_coverage: Option<f64>,
    transcript: Option<PathBuf>,
    retries: u32,
    reference_date: Option<String>,
    json: bool,
) -> Outcome {
    let tuple = find_tuple(target)?;
    let verdict = reference_date
        .map(|r| assess_staleness(&tuple.vl, &tuple.dates, &r).map_err(|e| fail(EXIT_DOMAIN, e.to_string())))
        .transpose()?;
    let replaying = transcript.is_some();
    let base: Box<dyn Transport> = match transcript {
        Some(p) => Box::new(TranscriptTransport::load(&p).map_err(|e| fail(EXIT_USAGE, format!("{}: {e}", p.display())))?),
        None => Box::new(HttpTransport::default()),
    };
    let transport = Retrying {
        inner: base,
        max_retries: retries,
        base: Duration::from_millis(500),
    };
    let mut report = probe_link_set(&transport, &tuple, opts).map_err(|e| fail(EXIT_USAGE, e.to_string()))?;
    if replaying && json {
        // Replays are byte-reproducible; wall-clock time is not.
        report = report.without_timing();
    }
    if json {
        write_json(ctx, &json!({ "probe": report, "staleness": verdict }))?;
    } else {
        let cov = report.coverage.map_or("n/a".to_owned(), |c| format!("{c:.3}"));
        let _ = writeln!(
            ctx.out,
            "{}: {}/{} matched, {} {cov} ({} ms)",
            report.link_set, report.matched, report.sampled, report.measure, report.elapsed_ms
        );
        if let Some(v) = &verdict {
            let state = if v.stale { "stale" } else { "current" };
            let _ = writeln!(ctx.out, "metadata {} vs reference {}: {state}", v.metadata_date, v.reference_date);
        }
    }
    for e in &report.errors {
        let _ = writeln!(ctx.err, "{}: {e}", ctx.paint("31", "error"));
    }
    if !report.errors.is_empty() {
        return Ok(EXIT_TRANSPORT);
    }
    if let Some(min) = min_coverage {
        if report.coverage.unwrap_or(0.0) < min {
            return Ok(EXIT_DOMAIN);
        }
    }
    Ok(EXIT_OK)
}

impl<T: Transport + ?Sized> Transport for Box<T> {
    fn send(
        &self,
        request: &crate::endpoint::HttpRequest,
        timeout_ms: u64,
    ) -> Result<crate::endpoint::HttpResponse, crate::endpoint::EndpointError> {
        (**self).send(request, timeout_ms)
    }
}

fn cmd_fmt(ctx: &mut Ctx, file: &Path) -> Outcome {
    let graph = load_graph(file)?;
    write_out(ctx, None, &serialize_turtle(&graph, graph.prefixes()))?;
    Ok(EXIT_OK)
}
