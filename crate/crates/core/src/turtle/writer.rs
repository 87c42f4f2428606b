use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use crate::ns::{rdf, xsd};
use crate::rdf::prefix::is_valid_prefix_label;
use crate::rdf::{canonicalize, Graph, Iri, Literal, PrefixMap, Term, Triple};

/// Serializes `graph` as Turtle.
///
/// Blank nodes are relabeled canonically first, so isomorphic graphs produce
/// identical text. Blank nodes referenced exactly once are written inline as
/// `[ ... ]`, well-formed collections as `( ... )`. Subjects are grouped and
/// sorted by term order; `rdf:type` is written first as `a`. Bindings whose
/// label is not a legal Turtle prefix are ignored.
pub fn serialize_turtle(graph: &Graph, prefixes: &PrefixMap) -> String {
    let graph = canonicalize(graph);
    let mut prefixes = prefixes.clone();
    prefixes.retain(is_valid_prefix_label);
    let prefixes = &prefixes;
    let writer = Writer::new(&graph, prefixes);
    let mut out = String::new();
    for (label, ns) in prefixes.iter() {
        let _ = writeln!(out, "@prefix {label}: <{ns}> .");
    }
    if !prefixes.is_empty() && !graph.is_empty() {
        out.push('\n');
    }
    let mut first = true;
    for subject in &writer.roots {
        if !first {
            out.push('\n');
        }
        first = false;
        out.push_str(&writer.term(subject));
        writer.predicate_objects(&mut out, subject, "    ", " ;\n");
        out.push_str(" .\n");
    }
    out
}

struct Writer<'a> {
    prefixes: &'a PrefixMap,
    by_subject: BTreeMap<&'a Term, BTreeMap<&'a Iri, Vec<&'a Term>>>,
    inline: BTreeSet<&'a Term>,
    lists: BTreeMap<&'a Term, Vec<&'a Term>>,
    roots: Vec<&'a Term>,
}

impl<'a> Writer<'a> {
    fn new(graph: &'a Graph, prefixes: &'a PrefixMap) -> Self {
        let mut by_subject: BTreeMap<&Term, BTreeMap<&Iri, Vec<&Term>>> = BTreeMap::new();
        let mut refs: BTreeMap<&Term, usize> = BTreeMap::new();
        for Triple {
            subject,
            predicate,
            object,
        } in graph
        {
            by_subject
                .entry(subject)
                .or_default()
                .entry(predicate)
                .or_default()
                .push(object);
            if object.is_blank() {
                *refs.entry(object).or_default() += 1;
            }
        }
        let referenced_once =
            |t: &Term| t.is_blank() && refs.get(t).copied() == Some(1);

        // Collections: chains of once-referenced blank nodes holding exactly
        // rdf:first and rdf:rest, ending at rdf:nil.
        let mut lists: BTreeMap<&Term, Vec<&Term>> = BTreeMap::new();
        let mut list_cells: BTreeSet<&Term> = BTreeSet::new();
        let is_cell = |t: &Term| {
            by_subject.get(t).is_some_and(|props| {
                props.len() == 2
                    && props
                        .iter()
                        .all(|(p, os)| (*p == rdf::FIRST || *p == rdf::REST) && os.len() == 1)
            })
        };
        let rest_targets: BTreeSet<&Term> = by_subject
            .iter()
            .filter(|(s, _)| is_cell(s))
            .flat_map(|(_, props)| props.iter().filter(|(p, _)| **p == rdf::REST))
            .map(|(_, os)| os[0])
            .collect();
        for head in by_subject.keys().copied() {
            if !referenced_once(head) || !is_cell(head) || rest_targets.contains(head) {
                continue;
            }
            let mut items = Vec::new();
            let mut cells = vec![head];
            let mut node = head;
            let ok = loop {
                let props = &by_subject[node];
                let first = props.iter().find(|(p, _)| **p == rdf::FIRST).map(|(_, os)| os[0]);
                let rest = props.iter().find(|(p, _)| **p == rdf::REST).map(|(_, os)| os[0]);
                let (Some(first), Some(rest)) = (first, rest) else { break false };
                items.push(first);
                if matches!(rest, Term::Iri(i) if i == rdf::NIL) {
                    break true;
                }
                if !referenced_once(rest) || !is_cell(rest) || cells.contains(&rest) {
                    break false;
                }
                cells.push(rest);
                node = rest;
            };
            if ok {
                list_cells.extend(cells);
                lists.insert(head, items);
            }
        }

        let mut inline: BTreeSet<&Term> = refs
            .keys()
            .copied()
            .filter(|t| referenced_once(t))
            .collect();

        // Roots are subjects that are not inlined; inline-only cycles get their
        // smallest member promoted to a root.
        let mut roots: BTreeSet<&Term> = by_subject
            .keys()
            .copied()
            .filter(|s| !inline.contains(s) && !list_cells.contains(s))
            .collect();
        loop {
            let mut reached: BTreeSet<&Term> = BTreeSet::new();
            let mut stack: Vec<&Term> = roots.iter().copied().collect();
            while let Some(node) = stack.pop() {
                if let Some(props) = by_subject.get(node) {
                    for o in props.values().flatten() {
                        if (inline.contains(o) || list_cells.contains(o)) && reached.insert(o) {
                            stack.push(o);
                        }
                    }
                }
            }
            let orphan = by_subject
                .keys()
                .copied()
                .find(|s| !roots.contains(s) && !reached.contains(s));
            match orphan {
                Some(o) if list_cells.contains(o) => {
                    // A cycle runs through a collection: write every collection long-hand.
                    inline.extend(list_cells.iter().copied());
                    list_cells.clear();
                    lists.clear();
                }
                Some(o) => {
                    inline.remove(o);
                    roots.insert(o);
                }
                None => break,
            }
        }
        Writer {
            prefixes,
            by_subject,
            inline,
            lists,
            roots: roots.into_iter().collect(),
        }
    }

    fn predicate_objects(&self, out: &mut String, subject: &Term, indent: &str, sep: &str) {
        let Some(props) = self.by_subject.get(subject) else {
            return;
        };
        let mut ordered: Vec<(&&Iri, &Vec<&Term>)> = props.iter().collect();
        ordered.sort_by_key(|(p, _)| **p != rdf::TYPE);
        for (i, (predicate, objects)) in ordered.into_iter().enumerate() {
            if i > 0 {
                out.push_str(sep);
                out.push_str(indent);
            } else {
                out.push(' ');
            }
            if **predicate == rdf::TYPE {
                out.push('a');
            } else {
                out.push_str(&self.iri(predicate));
            }
            for (j, object) in objects.iter().enumerate() {
                out.push_str(if j == 0 { " " } else { ", " });
                out.push_str(&self.object(object));
            }
        }
    }

    fn object(&self, term: &Term) -> String {
        if let Some(items) = self.lists.get(term) {
            let inner: Vec<String> = items.iter().map(|t| self.object(t)).collect();
            return format!("( {} )", inner.join(" "));
        }
        if self.inline.contains(term) {
            if !self.by_subject.contains_key(term) {
                return "[]".to_owned();
            }
            let mut out = String::from("[");
            self.predicate_objects(&mut out, term, "", " ; ");
            out.push_str(" ]");
            return out;
        }
        self.term(term)
    }

    fn term(&self, term: &Term) -> String {
        match term {
            Term::Iri(iri) => self.iri(iri),
            Term::BlankNode(b) => b.to_string(),
            Term::Literal(lit) => self.literal(lit),
        }
    }

    fn iri(&self, iri: &Iri) -> String {
        self.prefixes
            .compact_str(iri.as_str())
            .unwrap_or_else(|| iri.to_string())
    }

    fn literal(&self, lit: &Literal) -> String {
        let mut out = quote(lit.lexical());
        if let Some(lang) = lit.language() {
            out.push('@');
            out.push_str(lang);
        } else if *lit.datatype() != xsd::STRING {
            out.push_str("^^");
            out.push_str(&self.iri(lit.datatype()));
        }
        out
    }
}

/// Quotes a lexical form, switching to `"""` when it holds a newline or a quote.
fn quote(lexical: &str) -> String {
    let long = lexical.contains('\n') || lexical.contains('"');
    let delim = if long { "\"\"\"" } else { "\"" };
    let mut out = String::from(delim);
    let chars: Vec<char> = lexical.chars().collect();
    for (i, &c) in chars.iter().enumerate() {
        match c {
            '\\' => out.push_str("\\\\"),
            '\r' => out.push_str("\\r"),
            '\n' if !long => out.push_str("\\n"),
            '\t' if !long => out.push_str("\\t"),
            '"' => {
                // Inside """...""", a quote is only ambiguous next to another quote or at the end.
                if chars.get(i + 1).is_none_or(|n| *n == '"') {
                    out.push_str("\\\"");
                } else {
                    out.push('"');
                }
            }
            c if (c as u32) < 0x20 && c != '\n' && c != '\t' => {
                let _ = write!(out, "\\u{:04X}", c as u32);
            }
            c => out.push(c),
        }
    }
    out.push_str(delim);
    out
}
