use std::fmt::Write as _;

use crate::ns::{owl, rdf, rdfs, xsd};
use crate::rdf::{build_list, parse_rdf_list, Graph, Iri, PrefixMap, Term};

use super::VocabError;

/// The type of the resources on one side of a link: a named class, a union or
/// intersection of class expressions, or a literal range.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ClassExpression {
    Named(Iri),
    Union(Vec<ClassExpression>),
    Intersection(Vec<ClassExpression>),
    /// `rdfs:Literal` or a datatype IRI.
    LiteralRange(Iri),
}

/// Datatype IRIs (and `rdfs:Literal`) are read as literal ranges rather than classes.
pub fn is_literal_range(iri: &str) -> bool {
    iri == rdfs::LITERAL || iri == rdf::LANG_STRING || iri.starts_with(xsd::NS)
}

impl ClassExpression {
    pub fn named(iri: Iri) -> Self {
        if is_literal_range(iri.as_str()) {
            ClassExpression::LiteralRange(iri)
        } else {
            ClassExpression::Named(iri)
        }
    }

    /// Operands of unions and intersections sorted and deduplicated, recursively.
    pub fn normalized(&self) -> Self {
        let norm = |ops: &[ClassExpression]| {
            let mut v: Vec<ClassExpression> = ops.iter().map(Self::normalized).collect();
            v.sort();
            v.dedup();
            v
        };
        match self {
            ClassExpression::Union(ops) => ClassExpression::Union(norm(ops)),
            ClassExpression::Intersection(ops) => ClassExpression::Intersection(norm(ops)),
            other => other.clone(),
        }
    }

    /// Named classes mentioned anywhere in the expression.
    pub fn classes(&self) -> Vec<&Iri> {
        match self {
            ClassExpression::Named(i) => vec![i],
            ClassExpression::LiteralRange(_) => vec![],
            ClassExpression::Union(ops) | ClassExpression::Intersection(ops) => {
                ops.iter().flat_map(Self::classes).collect()
            }
        }
    }

    /// Compact notation: prefixed names where possible, `(A ∪ B)` and `(A ∩ B)`.
    pub fn display(&self, prefixes: &PrefixMap) -> String {
        let mut out = String::new();
        self.write(prefixes, &mut out);
        out
    }

    fn write(&self, prefixes: &PrefixMap, out: &mut String) {
        match self {
            ClassExpression::Named(i) | ClassExpression::LiteralRange(i) => {
                match prefixes.compact_str(i.as_str()) {
                    Some(p) => out.push_str(&p),
                    None => {
                        let _ = write!(out, "{i}");
                    }
                }
            }
            ClassExpression::Union(ops) | ClassExpression::Intersection(ops) => {
                let sep = if matches!(self, ClassExpression::Union(_)) { " ∪ " } else { " ∩ " };
                out.push('(');
                for (k, op) in ops.iter().enumerate() {
                    if k > 0 {
                        out.push_str(sep);
                    }
                    op.write(prefixes, out);
                }
                out.push(')');
            }
        }
    }

    /// Writes the expression into `graph` and returns the node that denotes it.
    pub fn to_graph(&self, graph: &mut Graph) -> Term {
        match self {
            ClassExpression::Named(i) | ClassExpression::LiteralRange(i) => Term::Iri(i.clone()),
            ClassExpression::Union(ops) | ClassExpression::Intersection(ops) => {
                let items: Vec<Term> = ops.iter().map(|op| op.to_graph(graph)).collect();
                let head = build_list(graph, &items);
                let node = Term::BlankNode(graph.fresh_blank());
                let p = if matches!(self, ClassExpression::Union(_)) {
                    owl::UNION_OF
                } else {
                    owl::INTERSECTION_OF
                };
                let _ = graph.add(node.clone(), Iri::from_static(p), head);
                node
            }
        }
    }
}

pub fn extract_class_expression(graph: &Graph, node: &Term) -> Result<ClassExpression, VocabError> {
    extract(graph, node, &mut Vec::new())
}

fn extract(graph: &Graph, node: &Term, path: &mut Vec<Term>) -> Result<ClassExpression, VocabError> {
    let fail = |reason: String| VocabError::ClassExpression {
        node: node.to_string(),
        reason,
    };
    if path.contains(node) {
        return Err(fail("class expression refers to itself".into()));
    }
    let unions = graph.objects(node, owl::UNION_OF);
    let inters = graph.objects(node, owl::INTERSECTION_OF);
    let (list, union) = match (unions.as_slice(), inters.as_slice()) {
        ([], []) => {
            return match node {
                Term::Iri(i) => Ok(ClassExpression::named(i.clone())),
                Term::BlankNode(_) => Err(fail(
                    "blank node without owl:unionOf or owl:intersectionOf".into(),
                )),
                Term::Literal(_) => Err(fail("a literal cannot denote a class".into())),
            };
        }
        ([l], []) => (*l, true),
        ([], [l]) => (*l, false),
        _ => return Err(fail("expected exactly one owl:unionOf or owl:intersectionOf".into())),
    };
    let members = parse_rdf_list(graph, list).map_err(|e| fail(e.to_string()))?;
    if members.len() < 2 {
        return Err(fail(format!("{} operand(s), at least 2 required", members.len())));
    }
    path.push(node.clone());
    let ops = members
        .iter()
        .map(|m| extract(graph, m, path))
        .collect::<Result<Vec<_>, _>>()?;
    path.pop();
    Ok(if union {
        ClassExpression::Union(ops)
    } else {
        ClassExpression::Intersection(ops)
    })
}
