use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::ns::rdf;

use super::{BlankNode, Iri, PrefixMap, RdfError, Term};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Triple {
    pub subject: Term,
    pub predicate: Iri,
    pub object: Term,
}

impl Triple {
    pub fn new(subject: Term, predicate: Iri, object: Term) -> Result<Self, RdfError> {
        if let Term::Literal(lit) = &subject {
            return Err(RdfError::LiteralSubject(lit.to_string()));
        }
        Ok(Triple {
            subject,
            predicate,
            object,
        })
    }
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {} .", self.subject, self.predicate, self.object)
    }
}

/// A set of triples plus the prefix bindings it was read with.
///
/// Triples iterate in subject/predicate/object term order. Blank node labels
/// are scoped to one graph; [`Graph::merge`] relabels incoming blank nodes.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Graph {
    triples: BTreeSet<Triple>,
    prefixes: PrefixMap,
    next_blank: usize,
}

impl Graph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_prefixes(prefixes: PrefixMap) -> Self {
        Graph {
            prefixes,
            ..Self::default()
        }
    }

    pub fn prefixes(&self) -> &PrefixMap {
        &self.prefixes
    }

    pub fn prefixes_mut(&mut self) -> &mut PrefixMap {
        &mut self.prefixes
    }

    pub fn len(&self) -> usize {
        self.triples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triples.is_empty()
    }

    /// Returns `true` if the triple was not present before.
    pub fn insert(&mut self, triple: Triple) -> bool {
        if let Term::BlankNode(b) = &triple.subject {
            self.reserve_label(b);
        }
        if let Term::BlankNode(b) = &triple.object {
            self.reserve_label(b);
        }
        self.triples.insert(triple)
    }

    /// Builds and inserts a triple, rejecting literal subjects.
    pub fn add(
        &mut self,
        subject: impl Into<Term>,
        predicate: Iri,
        object: impl Into<Term>,
    ) -> Result<bool, RdfError> {
        Ok(self.insert(Triple::new(subject.into(), predicate, object.into())?))
    }

    pub fn remove(&mut self, triple: &Triple) -> bool {
        self.triples.remove(triple)
    }

    pub fn contains(&self, triple: &Triple) -> bool {
        self.triples.contains(triple)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Triple> + '_ {
        self.triples.iter()
    }

    /// Triples matching the given positions; `None` is a wildcard.
    pub fn matching<'a>(
        &'a self,
        subject: Option<&'a Term>,
        predicate: Option<&'a str>,
        object: Option<&'a Term>,
    ) -> impl Iterator<Item = &'a Triple> + 'a {
        self.triples.iter().filter(move |t| {
            subject.is_none_or(|s| &t.subject == s)
                && predicate.is_none_or(|p| t.predicate == p)
                && object.is_none_or(|o| &t.object == o)
        })
    }

    pub fn objects<'a>(&'a self, subject: &'a Term, predicate: &'a str) -> Vec<&'a Term> {
        self.matching(Some(subject), Some(predicate), None)
            .map(|t| &t.object)
            .collect()
    }

    pub fn object<'a>(&'a self, subject: &'a Term, predicate: &'a str) -> Option<&'a Term> {
        self.matching(Some(subject), Some(predicate), None)
            .map(|t| &t.object)
            .next()
    }

    pub fn subjects<'a>(&'a self, predicate: &'a str, object: &'a Term) -> Vec<&'a Term> {
        self.matching(None, Some(predicate), Some(object))
            .map(|t| &t.subject)
            .collect()
    }

    pub fn has_type(&self, node: &Term, class: &str) -> bool {
        self.matching(Some(node), Some(rdf::TYPE), None)
            .any(|t| matches!(&t.object, Term::Iri(c) if c == class))
    }

    /// Distinct subjects typed with `class`, in term order.
    pub fn instances_of(&self, class: &str) -> Vec<Term> {
        let set: BTreeSet<Term> = self
            .triples
            .iter()
            .filter(|t| t.predicate == rdf::TYPE && matches!(&t.object, Term::Iri(c) if c == class))
            .map(|t| t.subject.clone())
            .collect();
        set.into_iter().collect()
    }

    pub fn blank_nodes(&self) -> BTreeSet<BlankNode> {
        let mut out = BTreeSet::new();
        for t in &self.triples {
            if let Term::BlankNode(b) = &t.subject {
                out.insert(b.clone());
            }
            if let Term::BlankNode(b) = &t.object {
                out.insert(b.clone());
            }
        }
        out
    }

    /// A blank node whose label is not used anywhere in this graph.
    pub fn fresh_blank(&mut self) -> BlankNode {
        loop {
            self.next_blank += 1;
            let candidate = BlankNode::new(format!("b{}", self.next_blank));
            if !self.blank_nodes().contains(&candidate) {
                return candidate;
            }
        }
    }

    fn reserve_label(&mut self, b: &BlankNode) {
        if let Some(n) = b.label().strip_prefix('b').and_then(|n| n.parse::<usize>().ok()) {
            self.next_blank = self.next_blank.max(n);
        }
    }

    /// Union-merges `other` into `self`, keeping its blank nodes distinct from ours.
    /// Prefixes already bound in `self` win.
    pub fn merge(&mut self, other: &Graph) {
        let mut relabel: BTreeMap<BlankNode, BlankNode> = BTreeMap::new();
        for b in other.blank_nodes() {
            let fresh = self.fresh_blank();
            relabel.insert(b, fresh);
        }
        let map = |t: &Term| match t {
            Term::BlankNode(b) => Term::BlankNode(relabel[b].clone()),
            other => other.clone(),
        };
        for t in &other.triples {
            self.insert(Triple {
                subject: map(&t.subject),
                predicate: t.predicate.clone(),
                object: map(&t.object),
            });
        }
        for (label, ns) in other.prefixes.iter() {
            if self.prefixes.get(label).is_none() {
                self.prefixes.insert(label, ns);
            }
        }
    }

    /// Removes every triple mentioning `node` in subject or object position.
    pub fn remove_node(&mut self, node: &Term) {
        self.triples
            .retain(|t| &t.subject != node && &t.object != node);
    }

    /// Exact triple-set equality, blank node labels included. See
    /// [`super::is_isomorphic`] for label-insensitive comparison.
    pub fn same_triples(&self, other: &Graph) -> bool {
        self.triples == other.triples
    }
}

impl<'a> IntoIterator for &'a Graph {
    type Item = &'a Triple;
    type IntoIter = std::collections::btree_set::Iter<'a, Triple>;

    fn into_iter(self) -> Self::IntoIter {
        self.triples.iter()
    }
}

impl FromIterator<Triple> for Graph {
    fn from_iter<I: IntoIterator<Item = Triple>>(iter: I) -> Self {
        let mut g = Graph::new();
        for t in iter {
            g.insert(t);
        }
        g
    }
}
