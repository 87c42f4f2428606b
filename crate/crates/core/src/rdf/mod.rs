//! In-memory RDF: terms, triples, graphs with prefix maps, basic graph pattern
//! matching, RDF collections and blank-node-insensitive graph comparison.

mod bgp;
mod graph;
mod iso;
mod list;
pub(crate) mod prefix;
mod term;

pub use bgp::{bgp_solve, graph_match, Binding, PatternTerm, TriplePattern};
pub use graph::{Graph, Triple};
pub use iso::{canonical_labels, canonicalize, is_isomorphic};
pub use list::{build_list, parse_rdf_list};
pub use prefix::PrefixMap;
pub use term::{is_absolute_iri, BlankNode, Iri, Literal, Term};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RdfError {
    #[error("not an absolute IRI: {0}")]
    InvalidIri(String),
    #[error("a literal cannot be the subject of a triple: {0}")]
    LiteralSubject(String),
    #[error("malformed RDF list at {node}: {reason}")]
    MalformedList { node: String, reason: String },
}
