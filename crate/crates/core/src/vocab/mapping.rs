use serde::{Deserialize, Serialize};

use crate::rdf::Literal;
use crate::sparql::{self, significant, TokenKind};

/// A resource mapping written as a SPARQL fragment.
///
/// The output variable is the target of the last `BIND(... AS ?v)`; the input
/// variable is the first variable read by a `BIND` expression that no `BIND`
/// assigns. A fragment without `BIND` (only filters or patterns) is an
/// identity mapping on its first variable.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct MappingFunction {
    pub snippet: String,
    pub input_var: String,
    pub output_var: String,
}

impl MappingFunction {
    pub fn is_identity(&self) -> bool {
        self.input_var == self.output_var
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("{message}")]
pub struct MappingError {
    /// Byte offset in the snippet, when the problem has one.
    pub offset: Option<usize>,
    pub message: String,
}

fn err(offset: Option<usize>, message: impl Into<String>) -> MappingError {
    MappingError {
        offset,
        message: message.into(),
    }
}

pub fn parse_mapping(literal: &Literal) -> Result<MappingFunction, MappingError> {
    if !literal.is_string() && literal.language().is_none() {
        return Err(err(
            None,
            format!("mapping must be a string literal, found datatype {}", literal.datatype()),
        ));
    }
    parse_mapping_str(literal.lexical())
}

pub fn parse_mapping_str(snippet: &str) -> Result<MappingFunction, MappingError> {
    let tokens = sparql::tokenize(snippet).map_err(|e| err(Some(e.offset), e.message))?;
    if let Some((offset, msg)) = sparql::unbalanced(snippet, &tokens).into_iter().next() {
        return Err(err(Some(offset), msg));
    }
    let vars = sparql::variables(snippet, &tokens);
    let Some(first) = vars.first() else {
        return Err(err(None, "mapping mentions no variable"));
    };
    let sig: Vec<_> = significant(&tokens).collect();
    let text = |k: usize| sig[k].text(snippet);

    // (assigned variable, variables read by the expression)
    let mut binds: Vec<(String, Vec<String>)> = Vec::new();
    let mut k = 0;
    while k < sig.len() {
        let is_bind = sig[k].kind == TokenKind::Word
            && text(k).eq_ignore_ascii_case("BIND")
            && sig.get(k + 1).is_some_and(|t| t.text(snippet) == "(");
        if !is_bind {
            k += 1;
            continue;
        }
        let open = k + 1;
        let mut depth = 0usize;
        let mut close = None;
        let mut as_at = None;
        for (j, t) in sig.iter().enumerate().skip(open) {
            match t.text(snippet) {
                "(" => depth += 1,
                ")" => {
                    depth -= 1;
                    if depth == 0 {
                        close = Some(j);
                        break;
                    }
                }
                w if depth == 1 && t.kind == TokenKind::Word && w.eq_ignore_ascii_case("AS") => {
                    as_at = Some(j);
                }
                _ => {}
            }
        }
        let close = close.ok_or_else(|| err(Some(sig[k].start), "unclosed BIND"))?;
        let as_at = as_at
            .filter(|&a| a + 2 == close && sig[a + 1].kind == TokenKind::Var)
            .ok_or_else(|| err(Some(sig[k].start), "BIND without a final `AS ?variable`"))?;
        let assigned = sig[as_at + 1].var_name(snippet).unwrap_or_default().to_owned();
        let mut read: Vec<String> = Vec::new();
        for t in &sig[open + 1..as_at] {
            if let Some(v) = t.var_name(snippet) {
                if !read.iter().any(|r| r == v) {
                    read.push(v.to_owned());
                }
            }
        }
        binds.push((assigned, read));
        k = close + 1;
    }

    let Some((output, _)) = binds.last() else {
        return Ok(MappingFunction {
            snippet: snippet.to_owned(),
            input_var: first.clone(),
            output_var: first.clone(),
        });
    };
    let input = binds
        .iter()
        .flat_map(|(_, read)| read)
        .find(|v| !binds.iter().any(|(a, _)| a == *v))
        .ok_or_else(|| err(None, "no BIND expression reads a variable that is not itself bound"))?;
    Ok(MappingFunction {
        snippet: snippet.to_owned(),
        input_var: input.clone(),
        output_var: output.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) const EBI_UNIPROT: &str = "?IRI_EBI a <http://www.biopax.org/release/biopax-level3.owl#BioSource>.\nBIND(IRI(CONCAT(\"http://purl.uniprot.org/taxonomy/\", STRAFTER(\nSTR(?IRI_EBI), \"http://identifiers.org/taxonomy/\"))) as ?IRI_UNIPROT)\nFILTER(STRSTARTS(STR(?IRI_EBI), \"http://identifiers.org/taxonomy/\"))";

    const CANTONS: &str = "BIND(IF(STR(?dbp_name)=\"Grisons\", \"Graubünden / Grigioni / Grischun\",\n    IF(STR(?dbp_name)=\"Geneva\", \"Genève\",\n        STR(?dbp_name) )) AS ?lindas_name)";

    #[test]
    fn taxonomy_mapping() {
        let m = parse_mapping_str(EBI_UNIPROT).unwrap();
        assert_eq!((m.input_var.as_str(), m.output_var.as_str()), ("IRI_EBI", "IRI_UNIPROT"));
    }

    #[test]
    fn if_chain_mapping() {
        let m = parse_mapping_str(CANTONS).unwrap();
        assert_eq!((m.input_var.as_str(), m.output_var.as_str()), ("dbp_name", "lindas_name"));
    }

    #[test]
    fn filter_only_is_identity() {
        let m = parse_mapping_str("FILTER(?x = ?x)").unwrap();
        assert!(m.is_identity());
        assert_eq!(m.input_var, "x");
    }

    #[test]
    fn chained_binds() {
        let m = parse_mapping_str("BIND(STR(?a) AS ?tmp) BIND(UCASE(?tmp) AS ?b)").unwrap();
        assert_eq!((m.input_var.as_str(), m.output_var.as_str()), ("a", "b"));
    }

    #[test]
    fn errors() {
        assert!(parse_mapping_str("BIND(STR(?a) AS ?b").is_err());
        assert!(parse_mapping_str("BIND(\"x\" AS ?b)").is_err());
        assert!(parse_mapping_str("FILTER(true)").is_err());
        assert!(parse_mapping_str("FILTER(STR(?a) = \"open)").is_err());
        let e = parse_mapping_str("FILTER((?a)").unwrap_err();
        assert_eq!(e.offset, Some(6));
    }

    #[test]
    fn typed_literal_is_rejected() {
        let lit = Literal::typed("BIND(?a AS ?b)", crate::rdf::Iri::from_static(crate::ns::xsd::INTEGER));
        assert!(parse_mapping(&lit).is_err());
    }
}
