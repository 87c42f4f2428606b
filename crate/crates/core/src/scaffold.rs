//! Federated query drafts built from a catalog tuple.
//!
//! Each side of the virtual link becomes a block of triple patterns: the
//! user's fragment for that dataset when there is one, plus generated
//! patterns that reach the join resource when the fragment does not. The
//! block for the execution endpoint is inlined; the other is wrapped in
//! `SERVICE`. The mapping snippet goes into the block that binds its input
//! variable, so its `BIND` sees a bound value.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use crate::catalog::{same_endpoint, VirtualLinkTuple};
use crate::ns::{rdf, well_known_prefixes};
use crate::rdf::{Iri, PrefixMap};
use crate::sparql::{self, significant, tokenize, TokenKind};
use crate::vocab::{ClassExpression, Position};

/// Variables named `vlj_<k>` are reserved for generated patterns.
pub const RESERVED_PREFIX: &str = "vlj_";

/// Variable shared by both sides when no mapping is involved.
pub const SHARED_VAR: &str = "instance";

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ScaffoldError {
    #[error("fragment: {0}")]
    Fragment(String),
    #[error("side {side} ({dataset}) has no SPARQL endpoint")]
    MissingEndpoint { side: usize, dataset: String },
    #[error("fragment endpoint {0} matches neither side of the link")]
    UnknownEndpoint(String),
    #[error("both fragments describe the dataset at {0}")]
    SameSide(String),
    #[error("variable ?{0} is in the reserved ?{RESERVED_PREFIX}* namespace")]
    Reserved(String),
    #[error("cannot rename ?{from} to ?{to}: ?{to} already occurs")]
    Collision { from: String, to: String },
    #[error("prefix {0}: is used but not declared and not well known")]
    UnknownPrefix(String),
    #[error("snippet: {0}")]
    Lex(#[from] sparql::LexError),
}

/// A user-supplied pattern for one dataset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QueryFragment {
    pub dataset_endpoint: Iri,
    /// Group graph pattern body, without PREFIX or header lines.
    pub pattern_text: String,
    pub exposed_vars: Vec<String>,
    /// Prefixes declared by the fragment.
    pub prefixes: PrefixMap,
}

impl QueryFragment {
    /// Reads the `# endpoint:` / `# vars:` header, PREFIX lines and body.
    pub fn parse(text: &str) -> Result<Self, ScaffoldError> {
        let bad = |m: String| ScaffoldError::Fragment(m);
        let mut endpoint = None;
        let mut vars = Vec::new();
        let mut prefixes = PrefixMap::new();
        let mut body = Vec::new();
        for line in text.lines() {
            let trimmed = line.trim();
            if let Some(rest) = trimmed.strip_prefix('#') {
                let rest = rest.trim();
                if let Some(e) = rest.strip_prefix("endpoint:") {
                    let e = e.trim().trim_start_matches('<').trim_end_matches('>');
                    endpoint = Some(Iri::new(e).map_err(|e| bad(e.to_string()))?);
                    continue;
                }
                if let Some(v) = rest.strip_prefix("vars:") {
                    for name in v.split_whitespace() {
                        let n = name.trim_start_matches(['?', '$']);
                        if n.is_empty() {
                            return Err(bad(format!("bad variable {name:?} in vars header")));
                        }
                        vars.push(n.to_owned());
                    }
                    continue;
                }
            }
            if trimmed.len() > 6 && trimmed[..6].eq_ignore_ascii_case("PREFIX") {
                let decl = trimmed[6..].trim();
                let (label, ns) = decl
                    .split_once(':')
                    .ok_or_else(|| bad(format!("malformed PREFIX line {trimmed:?}")))?;
                let ns = ns.trim();
                if !(ns.starts_with('<') && ns.ends_with('>')) {
                    return Err(bad(format!("malformed PREFIX line {trimmed:?}")));
                }
                prefixes.insert(label.trim(), &ns[1..ns.len() - 1]);
                continue;
            }
            body.push(line);
        }
        while body.last().is_some_and(|l| l.trim().is_empty()) {
            body.pop();
        }
        while body.first().is_some_and(|l| l.trim().is_empty()) {
            body.remove(0);
        }
        let pattern_text = body.join("\n");
        let endpoint = endpoint.ok_or_else(|| bad("missing `# endpoint: <IRI>` header".into()))?;
        let tokens = tokenize(&pattern_text)?;
        if let Some((o, m)) = sparql::unbalanced(&pattern_text, &tokens).into_iter().next() {
            return Err(bad(format!("offset {o}: {m}")));
        }
        let present = sparql::variables(&pattern_text, &tokens);
        for v in &vars {
            if !present.contains(v) {
                return Err(bad(format!("exposed variable ?{v} does not occur in the pattern")));
            }
        }
        Ok(QueryFragment {
            dataset_endpoint: endpoint,
            pattern_text,
            exposed_vars: vars,
            prefixes,
        })
    }

    pub fn variables(&self) -> Vec<String> {
        tokenize(&self.pattern_text)
            .map(|t| sparql::variables(&self.pattern_text, &t))
            .unwrap_or_default()
    }
}

/// Which side's block receives the mapping snippet.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BridgeSide {
    Ds1,
    Ds2,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ScaffoldOptions {
    /// Endpoint the query will be sent to; defaults to the first side's.
    pub at: Option<String>,
    pub bridge_side: Option<BridgeSide>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FederatedQuerySkeleton {
    pub prologue: PrefixMap,
    /// Empty means `SELECT *`.
    pub projection: Vec<String>,
    /// Body of the inlined block, if one side runs at the execution endpoint.
    pub local_block: Option<String>,
    pub service_blocks: Vec<(Iri, String)>,
    /// The mapping snippet after renaming.
    pub bridge: Option<String>,
    /// Renaming applied to the snippet, old name to new.
    pub renaming: BTreeMap<String, String>,
    /// Pattern body of each side, before placement.
    pub side_blocks: [String; 2],
    /// Variable carrying the join resource on each side.
    pub join_vars: [String; 2],
    /// Side whose block holds the bridge.
    pub bridge_at: Option<usize>,
}

fn indent(text: &str, by: usize) -> String {
    let pad = " ".repeat(by);
    text.lines()
        .map(|l| if l.trim().is_empty() { String::new() } else { format!("{pad}{l}") })
        .collect::<Vec<_>>()
        .join("\n")
}

impl FederatedQuerySkeleton {
    pub fn render(&self) -> String {
        let mut out = String::new();
        for (label, ns) in self.prologue.iter() {
            let _ = writeln!(out, "PREFIX {label}: <{ns}>");
        }
        if !self.prologue.is_empty() {
            out.push('\n');
        }
        let proj = if self.projection.is_empty() {
            "*".to_owned()
        } else {
            self.projection.iter().map(|v| format!("?{v}")).collect::<Vec<_>>().join(" ")
        };
        let _ = writeln!(out, "SELECT {proj} WHERE {{");
        if let Some(local) = &self.local_block {
            out.push_str(&indent(local, 2));
            out.push('\n');
        }
        for (endpoint, body) in &self.service_blocks {
            let _ = writeln!(out, "  SERVICE {endpoint} {{");
            out.push_str(&indent(body, 4));
            out.push_str("\n  }\n");
        }
        out.push_str("}\n");
        out
    }
}

/// Replaces variables token by token; strings, IRIs and comments are untouched.
pub fn rename_vars(snippet: &str, renaming: &BTreeMap<String, String>) -> Result<String, ScaffoldError> {
    let tokens = tokenize(snippet)?;
    let present = sparql::variables(snippet, &tokens);
    for (from, to) in renaming {
        if from != to && present.contains(to) {
            return Err(ScaffoldError::Collision {
                from: from.clone(),
                to: to.clone(),
            });
        }
    }
    let mut out = String::with_capacity(snippet.len());
    for t in &tokens {
        match t.var_name(snippet).and_then(|n| renaming.get(n)) {
            Some(new) => {
                out.push_str(&snippet[t.start..t.start + 1]);
                out.push_str(new);
            }
            None => out.push_str(t.text(snippet)),
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Finding {
    pub offset: usize,
    pub message: String,
}

/// Light structural checks on query text.
pub fn check_wellformed(query: &str) -> Result<(), Vec<Finding>> {
    let tokens = match tokenize(query) {
        Ok(t) => t,
        Err(e) => {
            return Err(vec![Finding {
                offset: e.offset,
                message: e.message,
            }])
        }
    };
    let mut findings: Vec<Finding> = sparql::unbalanced(query, &tokens)
        .into_iter()
        .map(|(offset, message)| Finding { offset, message })
        .collect();
    let sig: Vec<_> = significant(&tokens).collect();
    let word = |k: usize, w: &str| {
        sig.get(k)
            .is_some_and(|t| t.kind == TokenKind::Word && t.text(query).eq_ignore_ascii_case(w))
    };
    for w in ["SELECT", "WHERE"] {
        if !(0..sig.len()).any(|k| word(k, w)) {
            findings.push(Finding {
                offset: query.len(),
                message: format!("no {w} keyword"),
            });
        }
    }
    let mut declared: BTreeMap<String, usize> = BTreeMap::new();
    let mut used: BTreeMap<String, usize> = BTreeMap::new();
    let mut k = 0;
    while k < sig.len() {
        if word(k, "PREFIX") {
            match (sig.get(k + 1), sig.get(k + 2)) {
                (Some(p), Some(i)) if p.kind == TokenKind::PName && i.kind == TokenKind::Iri => {
                    let label = p.text(query).trim_end_matches(':').to_owned();
                    declared.entry(label).or_insert(p.start);
                    k += 3;
                    continue;
                }
                _ => findings.push(Finding {
                    offset: sig[k].start,
                    message: "PREFIX not followed by a prefix label and an IRI".into(),
                }),
            }
        } else if word(k, "SERVICE") {
            let next = if word(k + 1, "SILENT") { k + 2 } else { k + 1 };
            if !sig.get(next).is_some_and(|t| t.kind == TokenKind::Iri) {
                findings.push(Finding {
                    offset: sig[k].start,
                    message: "SERVICE not followed by an IRI".into(),
                });
            }
        } else if sig[k].kind == TokenKind::PName {
            let text = sig[k].text(query);
            let label = &text[..text.find(':').unwrap_or(0)];
            used.entry(label.to_owned()).or_insert(sig[k].start);
        }
        k += 1;
    }
    for (label, at) in &used {
        if !declared.contains_key(label) {
            findings.push(Finding {
                offset: *at,
                message: format!("prefix {label}: used but not declared"),
            });
        }
    }
    for (label, at) in &declared {
        if !used.contains_key(label) {
            findings.push(Finding {
                offset: *at,
                message: format!("prefix {label}: declared but not used"),
            });
        }
    }
    findings.sort_by_key(|f| f.offset);
    if findings.is_empty() {
        Ok(())
    } else {
        Err(findings)
    }
}

struct Namer<'a> {
    taken: &'a BTreeSet<String>,
    next: usize,
}

impl Namer<'_> {
    fn fresh(&mut self) -> String {
        loop {
            self.next += 1;
            let name = format!("{RESERVED_PREFIX}{}", self.next);
            if !self.taken.contains(&name) {
                return name;
            }
        }
    }
}

fn term(iri: &Iri, prefixes: &PrefixMap) -> String {
    prefixes.compact_str(iri.as_str()).unwrap_or_else(|| iri.to_string())
}

/// `?var a C` for a class expression; unions become `UNION` groups.
fn type_pattern(var: &str, ce: &ClassExpression, prefixes: &PrefixMap) -> Option<String> {
    match ce {
        ClassExpression::LiteralRange(_) => None,
        ClassExpression::Named(i) => Some(format!("?{var} a {} .", term(i, prefixes))),
        ClassExpression::Intersection(ops) => {
            let parts: Vec<String> = ops.iter().filter_map(|o| type_pattern(var, o, prefixes)).collect();
            (!parts.is_empty()).then(|| parts.join("\n"))
        }
        ClassExpression::Union(ops) => {
            let parts: Vec<String> = ops
                .iter()
                .filter_map(|o| type_pattern(var, o, prefixes))
                .map(|p| format!("{{ {} }}", p.replace('\n', " ")))
                .collect();
            (!parts.is_empty()).then(|| parts.join(" UNION "))
        }
    }
}

/// Builds the query skeleton; [`scaffold`] renders it.
pub fn build_skeleton(
    tuple: &VirtualLinkTuple,
    local: Option<&QueryFragment>,
    remote: Option<&QueryFragment>,
    options: &ScaffoldOptions,
) -> Result<FederatedQuerySkeleton, ScaffoldError> {
    let mut endpoints = Vec::new();
    for (k, s) in tuple.sides.iter().enumerate() {
        let e = s.endpoint.clone().ok_or_else(|| ScaffoldError::MissingEndpoint {
            side: k + 1,
            dataset: s.dataset.as_ref().map_or("unknown dataset".into(), |d| d.to_string()),
        })?;
        endpoints.push(e);
    }

    // Fragments go to the side whose endpoint they name.
    let mut frags: [Option<&QueryFragment>; 2] = [None, None];
    for f in [local, remote].into_iter().flatten() {
        let k = tuple
            .side_at(f.dataset_endpoint.as_str())
            .ok_or_else(|| ScaffoldError::UnknownEndpoint(f.dataset_endpoint.to_string()))?;
        if frags[k].is_some() {
            return Err(ScaffoldError::SameSide(endpoints[k].to_string()));
        }
        frags[k] = Some(f);
    }
    let frag_vars: Vec<Vec<String>> = frags.iter().map(|f| f.map(|f| f.variables()).unwrap_or_default()).collect();
    for v in frag_vars.iter().flatten() {
        if v.starts_with(RESERVED_PREFIX) {
            return Err(ScaffoldError::Reserved(v.clone()));
        }
    }

    let mut prefixes = well_known_prefixes();
    for f in frags.iter().flatten() {
        for (l, ns) in f.prefixes.iter() {
            prefixes.insert(l, ns);
        }
    }

    let at_side = match &options.at {
        None => Some(0),
        Some(at) => endpoints.iter().position(|e| same_endpoint(e.as_str(), at)),
    };

    // Join variable on each side, and where the bridge goes.
    let (join_vars, bridge_side) = match &tuple.mapping {
        Some(m) => {
            let uses = |k: usize, v: &str| frag_vars[k].iter().any(|x| x == v);
            let input_side = (0..2)
                .find(|&k| uses(k, &m.input_var))
                .or_else(|| (0..2).find(|&k| uses(k, &m.output_var)).map(|k| 1 - k))
                .or_else(|| hinted_side(tuple, &m.snippet, &m.input_var))
                .or_else(|| tuple.holder_side().map(|h| 1 - h))
                .unwrap_or(0);
            let mut vars = [m.output_var.clone(), m.output_var.clone()];
            vars[input_side] = m.input_var.clone();
            let bridge = match options.bridge_side {
                Some(BridgeSide::Ds1) => 0,
                Some(BridgeSide::Ds2) => 1,
                None => input_side,
            };
            (vars, Some(bridge))
        }
        None => ([SHARED_VAR.to_owned(), SHARED_VAR.to_owned()], None),
    };

    let mut taken: BTreeSet<String> = frag_vars.iter().flatten().cloned().collect();
    let mut renaming = BTreeMap::new();
    let bridge = match &tuple.mapping {
        Some(m) => {
            let tokens = tokenize(&m.snippet)?;
            let snippet_vars = sparql::variables(&m.snippet, &tokens);
            if let Some(v) = snippet_vars.iter().find(|v| v.starts_with(RESERVED_PREFIX)) {
                return Err(ScaffoldError::Reserved(v.clone()));
            }
            taken.extend(snippet_vars.iter().cloned());
            let mut namer = Namer { taken: &taken, next: 0 };
            for v in &snippet_vars {
                if *v != m.input_var && *v != m.output_var && frag_vars.iter().flatten().any(|f| f == v) {
                    renaming.insert(v.clone(), namer.fresh());
                }
            }
            let next = namer.next;
            let text = rename_vars(&m.snippet, &renaming)?;
            Some((text, next))
        }
        None => None,
    };
    let mut namer = Namer {
        taken: &taken,
        next: bridge.as_ref().map_or(0, |(_, n)| *n),
    };

    let mut blocks: Vec<String> = Vec::new();
    for k in 0..2 {
        let side = &tuple.sides[k];
        let jv = &join_vars[k];
        let mut parts: Vec<String> = Vec::new();
        if let Some(f) = frags[k] {
            parts.push(f.pattern_text.clone());
        }
        if !frag_vars[k].contains(jv) {
            let pred = tuple.link_predicates.as_ref().map(|(a, b)| if k == 0 { a } else { b });
            let pred = pred.filter(|p| p.as_str() != rdf::TYPE);
            let mut generated = Vec::new();
            let subject = match side.position {
                Some(Position::Object) => {
                    let s = namer.fresh();
                    if let Some(p) = pred {
                        generated.push(format!("?{s} {} ?{jv} .", term(p, &prefixes)));
                    }
                    s
                }
                _ => {
                    if let Some(p) = pred {
                        let o = namer.fresh();
                        generated.push(format!("?{jv} {} ?{o} .", term(p, &prefixes)));
                    }
                    jv.clone()
                }
            };
            if let Some(tp) = side.types.as_ref().and_then(|t| type_pattern(&subject, t, &prefixes)) {
                generated.insert(0, tp);
            }
            parts.push(generated.join("\n"));
        }
        if let (Some((text, _)), Some(b)) = (&bridge, bridge_side) {
            if b == k {
                parts.push(text.clone());
            }
        }
        blocks.push(parts.into_iter().filter(|p| !p.trim().is_empty()).collect::<Vec<_>>().join("\n"));
    }

    let mut local_block = None;
    let mut service_blocks = Vec::new();
    let side_blocks: [String; 2] = [blocks[0].clone(), blocks[1].clone()];
    for (k, body) in blocks.into_iter().enumerate() {
        if Some(k) == at_side {
            local_block = Some(body);
        } else {
            service_blocks.push((endpoints[k].clone(), body));
        }
    }

    let mut projection: Vec<String> = Vec::new();
    for f in frags.iter().flatten() {
        for v in &f.exposed_vars {
            if !projection.contains(v) {
                projection.push(v.clone());
            }
        }
    }

    // Declare exactly the prefixes the body uses.
    let mut prologue = PrefixMap::new();
    let texts = local_block.iter().chain(service_blocks.iter().map(|(_, b)| b));
    for text in texts {
        let tokens = tokenize(text)?;
        for t in significant(&tokens).filter(|t| t.kind == TokenKind::PName) {
            let pn = t.text(text);
            let label = &pn[..pn.find(':').unwrap_or(0)];
            let ns = prefixes
                .get(label)
                .ok_or_else(|| ScaffoldError::UnknownPrefix(label.to_owned()))?;
            prologue.insert(label, ns);
        }
    }

    Ok(FederatedQuerySkeleton {
        prologue,
        projection,
        local_block,
        service_blocks,
        bridge: bridge.map(|(t, _)| t),
        renaming,
        side_blocks,
        join_vars,
        bridge_at: bridge_side,
    })
}

/// Side named by a `?input a <Class>` pattern in the snippet, if the class is one of that side's types.
fn hinted_side(tuple: &VirtualLinkTuple, snippet: &str, input: &str) -> Option<usize> {
    let tokens = tokenize(snippet).ok()?;
    let sig: Vec<_> = significant(&tokens).collect();
    let prefixes = well_known_prefixes();
    for w in sig.windows(3) {
        if w[0].var_name(snippet) != Some(input) || w[1].text(snippet) != "a" {
            continue;
        }
        let class = match w[2].kind {
            TokenKind::Iri => {
                let t = w[2].text(snippet);
                t[1..t.len() - 1].to_owned()
            }
            TokenKind::PName => prefixes.expand(w[2].text(snippet))?,
            _ => continue,
        };
        let found = tuple.sides.iter().position(|s| {
            s.types
                .as_ref()
                .is_some_and(|ce| ce.classes().iter().any(|c| c.as_str() == class))
        });
        if found.is_some() {
            return found;
        }
    }
    None
}

/// Renders a federated SELECT query for `tuple`.
pub fn scaffold(
    tuple: &VirtualLinkTuple,
    local: Option<&QueryFragment>,
    remote: Option<&QueryFragment>,
    options: &ScaffoldOptions,
) -> Result<String, ScaffoldError> {
    build_skeleton(tuple, local, remote, options).map(|s| s.render())
}
