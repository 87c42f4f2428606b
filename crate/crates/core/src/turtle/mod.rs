//! Turtle reading and writing.
//!
//! The reader covers directives (`@prefix`, `@base`, `PREFIX`, `BASE`),
//! prefixed names, `a`, predicate and object lists, blank node property
//! lists, collections, short and long string literals with language tags or
//! datatypes, numeric and boolean shorthand, and comments. Relative IRIs are
//! resolved by appending them to the base; references that would need dot
//! segment removal are rejected.

mod parser;
mod writer;

use std::fmt;

pub use parser::parse_turtle;
pub use writer::serialize_turtle;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Severity {
    Error,
    Warning,
}

/// A positioned parse problem. Lines and columns are 1-based; columns count characters.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, thiserror::Error)]
pub struct ParseDiagnostic {
    pub line: usize,
    pub column: usize,
    pub message: String,
    pub severity: Severity,
}

impl fmt::Display for ParseDiagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sev = match self.severity {
            Severity::Error => "error",
            Severity::Warning => "warning",
        };
        write!(f, "{}:{}: {sev}: {}", self.line, self.column, self.message)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ns::{rdf, xsd};
    use crate::rdf::{is_isomorphic, Literal, Term};

    #[test]
    fn voidext_prefix_expands() {
        let g = parse_turtle(
            "@prefix voidext: <http://purl.org/query/voidext#> . voidext:x a voidext:ComplexLinkSet .",
        )
        .unwrap();
        assert_eq!(g.len(), 1);
        let t = g.iter().next().unwrap();
        assert_eq!(t.subject, Term::iri("http://purl.org/query/voidext#x").unwrap());
        assert_eq!(t.predicate, rdf::TYPE);
        assert_eq!(
            t.object,
            Term::iri("http://purl.org/query/voidext#ComplexLinkSet").unwrap()
        );
        assert_eq!(g.prefixes().get("voidext"), Some("http://purl.org/query/voidext#"));
    }

    #[test]
    fn empty_document() {
        let g = parse_turtle("").unwrap();
        assert!(g.is_empty());
        assert!(g.prefixes().is_empty());
    }

    #[test]
    fn language_tagged_literal() {
        let g = parse_turtle("<http://ex/s> <http://ex/p> \"Grisons\"@en .").unwrap();
        let lit = g.iter().next().unwrap().object.as_literal().unwrap().clone();
        assert_eq!(lit.lexical(), "Grisons");
        assert_eq!(lit.datatype(), &rdf::LANG_STRING);
        assert_eq!(lit.language(), Some("en"));
    }

    #[test]
    fn numeric_and_boolean_shorthand() {
        let g = parse_turtle(
            "@prefix ex: <http://ex/> . ex:s ex:i 42 ; ex:d -1.5 ; ex:e 1e3 ; ex:b true .",
        )
        .unwrap();
        let dts: Vec<String> = g
            .iter()
            .map(|t| t.object.as_literal().unwrap().datatype().as_str().to_owned())
            .collect();
        assert!(dts.contains(&xsd::INTEGER.to_owned()));
        assert!(dts.contains(&xsd::DECIMAL.to_owned()));
        assert!(dts.contains(&xsd::DOUBLE.to_owned()));
        assert!(dts.contains(&xsd::BOOLEAN.to_owned()));
        let out = serialize_turtle(&g, g.prefixes());
        assert!(out.contains("\"42\"^^<http://www.w3.org/2001/XMLSchema#integer>"), "{out}");
    }

    #[test]
    fn integer_then_statement_end() {
        let g = parse_turtle("<http://ex/s> <http://ex/p> 1.").unwrap();
        assert_eq!(g.iter().next().unwrap().object.as_literal().unwrap().lexical(), "1");
    }

    #[test]
    fn sparql_style_directives_and_base() {
        let g = parse_turtle(
            "BASE <http://ex.org/data/>\nPREFIX ex: <vocab#>\n<item> ex:p <other#frag> .",
        )
        .unwrap();
        let t = g.iter().next().unwrap();
        assert_eq!(t.subject, Term::iri("http://ex.org/data/item").unwrap());
        assert_eq!(t.predicate, "http://ex.org/data/vocab#p");
        assert_eq!(t.object, Term::iri("http://ex.org/data/other#frag").unwrap());
    }

    #[test]
    fn escapes() {
        let g = parse_turtle(r#"<http://ex/s> <http://ex/p> "a\"b\\c\n\t\u00e9\U0001F600" ."#).unwrap();
        let lit = g.iter().next().unwrap().object.as_literal().unwrap().clone();
        assert_eq!(lit.lexical(), "a\"b\\c\n\t\u{e9}\u{1F600}");
    }

    #[test]
    fn blank_nodes_and_collections() {
        let g = parse_turtle(
            "@prefix ex: <http://ex/> .\n_:x ex:p [ ex:q ( ex:a ex:b ) ] .\n_:x ex:r _:y .",
        )
        .unwrap();
        // _:x p [], [] q head, 2 cells x 2, _:x r _:y
        assert_eq!(g.len(), 7);
        let labels: Vec<String> = g.blank_nodes().iter().map(|b| b.label().to_owned()).collect();
        assert!(labels.contains(&"b1".to_owned()));
    }

    #[test]
    fn triple_quoted_literal_with_quotes() {
        let snippet = "BIND(IRI(CONCAT(\"http://purl.uniprot.org/taxonomy/\", STRAFTER(\nSTR(?IRI_EBI), \"http://identifiers.org/taxonomy/\"))) as ?IRI_UNIPROT)";
        let mut g = crate::rdf::Graph::new();
        g.add(
            Term::iri("http://ex/s").unwrap(),
            crate::rdf::Iri::new("http://ex/m").unwrap(),
            Term::Literal(Literal::string(snippet)),
        )
        .unwrap();
        let text = serialize_turtle(&g, g.prefixes());
        assert!(text.contains("\"\"\""), "{text}");
        let back = parse_turtle(&text).unwrap();
        assert_eq!(
            back.iter().next().unwrap().object.as_literal().unwrap().lexical(),
            snippet
        );
    }

    #[test]
    fn writer_inlines_and_round_trips() {
        let src = "@prefix ex: <http://ex/> .\n@prefix owl: <http://www.w3.org/2002/07/owl#> .\nex:ls ex:domain [ owl:unionOf ( ex:A ex:B ) ] ; ex:label \"x\"@en .";
        let g = parse_turtle(src).unwrap();
        let out = serialize_turtle(&g, g.prefixes());
        assert!(out.contains("[ owl:unionOf ( ex:A ex:B ) ]"), "{out}");
        let back = parse_turtle(&out).unwrap();
        assert!(is_isomorphic(&g, &back));
        assert_eq!(serialize_turtle(&back, back.prefixes()), out);
    }

    #[test]
    fn cyclic_blank_nodes_get_labels() {
        let g = parse_turtle("<http://ex/s> <http://ex/p> _:a . _:b <http://ex/p> _:c . _:c <http://ex/p> _:b .").unwrap();
        let out = serialize_turtle(&g, g.prefixes());
        let back = parse_turtle(&out).unwrap();
        assert!(is_isomorphic(&g, &back), "{out}");
    }

    /// Each malformed document with the position of its first offending character.
    const MALFORMED: &[(&str, usize, usize)] = &[
        ("ex:s ex:p ex:o .", 1, 1),
        ("@prefix ex: <http://ex/> .\nex:s ex:p \"open .", 2, 11),
        ("<rel> <http://ex/p> <http://ex/o> .", 1, 1),
        ("<http://ex/s> <http://ex/p> <http://ex/o>", 1, 42),
        ("<http://ex/s> <http://ex/p> .", 1, 29),
        ("\"lit\" <http://ex/p> <http://ex/o> .", 1, 1),
        ("<http://ex/s> <http://ex/p> \"x\"@ .", 1, 32),
        ("<http://ex/s> <http://ex/p> \"bad \\q\" .", 1, 34),
        ("<http://ex/s> <http://ex/p> <http://ex/o .", 1, 41),
        ("@prefix ex <http://ex/> .", 1, 9),
        ("@prefx ex: <http://ex/> .", 1, 1),
        ("<http://ex/s> <http://ex/p> ( <http://ex/a> .", 1, 45),
        ("<http://ex/s> <http://ex/p> [ <http://ex/q> <http://ex/o> .", 1, 59),
        ("BASE <http://ex/>\n<http://ex/s> <http://ex/p> <../up> .", 2, 29),
        ("<http://ex/s> <http://ex/p> \"\"\"never closed\n.", 1, 29),
        ("<http://ex/s> <http://ex/p> <http://ex/a b> .", 1, 41),
        ("<http://ex/s> <http://ex/p> 1e .", 1, 30),
        ("<http://ex/s> <http://ex/p> \"x\"^^nope:t .", 1, 34),
    ];

    #[test]
    fn malformed_corpus_positions() {
        assert!(MALFORMED.len() >= 15);
        let mut wrong = Vec::new();
        for (doc, line, column) in MALFORMED {
            let err = parse_turtle(doc).expect_err(doc);
            assert_eq!(err.severity, Severity::Error);
            if (err.line, err.column) != (*line, *column) {
                wrong.push(format!("{doc:?}: expected {line}:{column}, got {err}"));
            }
        }
        assert!(wrong.is_empty(), "{}", wrong.join("\n"));
    }
}
