pub mod ns;
pub mod rdf;
pub mod turtle;
pub mod sparql;
pub mod vocab;
pub mod canon;
pub mod validate;
pub mod catalog;
pub mod scaffold;
pub mod endpoint;
pub mod cli;
