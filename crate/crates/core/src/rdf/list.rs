use std::collections::HashSet;

use crate::ns::rdf;

use super::{Graph, Iri, RdfError, Term};

/// Reads the RDF collection starting at `head`.
pub fn parse_rdf_list(graph: &Graph, head: &Term) -> Result<Vec<Term>, RdfError> {
    let mut items = Vec::new();
    let mut visited = HashSet::new();
    let mut node = head.clone();
    loop {
        if matches!(&node, Term::Iri(i) if i == rdf::NIL) {
            return Ok(items);
        }
        let malformed = |reason: &str| RdfError::MalformedList {
            node: node.to_string(),
            reason: reason.to_owned(),
        };
        if node.is_literal() {
            return Err(malformed("list node is a literal"));
        }
        if !visited.insert(node.clone()) {
            return Err(malformed("cycle in rdf:rest chain"));
        }
        let firsts = graph.objects(&node, rdf::FIRST);
        let rests = graph.objects(&node, rdf::REST);
        match (firsts.as_slice(), rests.as_slice()) {
            ([first], [rest]) => {
                items.push((*first).clone());
                node = (*rest).clone();
            }
            ([], _) => return Err(malformed("missing rdf:first")),
            (_, []) => return Err(malformed("missing rdf:rest")),
            ([_, _, ..], _) => return Err(malformed("more than one rdf:first")),
            (_, _) => return Err(malformed("more than one rdf:rest")),
        }
    }
}

/// Writes `items` as a fresh RDF collection and returns its head
/// (`rdf:nil` for an empty list).
pub fn build_list(graph: &mut Graph, items: &[Term]) -> Term {
    let nil = Term::Iri(Iri::from_static(rdf::NIL));
    let nodes: Vec<Term> = items
        .iter()
        .map(|_| Term::BlankNode(graph.fresh_blank()))
        .collect();
    for (i, item) in items.iter().enumerate() {
        let rest = nodes.get(i + 1).cloned().unwrap_or_else(|| nil.clone());
        graph.insert(super::Triple {
            subject: nodes[i].clone(),
            predicate: Iri::from_static(rdf::FIRST),
            object: item.clone(),
        });
        graph.insert(super::Triple {
            subject: nodes[i].clone(),
            predicate: Iri::from_static(rdf::REST),
            object: rest,
        });
    }
    nodes.into_iter().next().unwrap_or(nil)
}
