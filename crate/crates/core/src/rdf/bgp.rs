use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::{Graph, Iri, Term, Triple};

/// A position in a triple pattern: a concrete term or a named variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PatternTerm {
    Term(Term),
    Var(String),
}

impl PatternTerm {
    pub fn var(name: impl Into<String>) -> Self {
        PatternTerm::Var(name.into())
    }

    pub fn iri(iri: &Iri) -> Self {
        PatternTerm::Term(Term::Iri(iri.clone()))
    }
}

impl From<Term> for PatternTerm {
    fn from(t: Term) -> Self {
        PatternTerm::Term(t)
    }
}

impl fmt::Display for PatternTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PatternTerm::Term(t) => t.fmt(f),
            PatternTerm::Var(v) => write!(f, "?{v}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TriplePattern {
    pub subject: PatternTerm,
    pub predicate: PatternTerm,
    pub object: PatternTerm,
}

impl TriplePattern {
    pub fn new(
        subject: impl Into<PatternTerm>,
        predicate: impl Into<PatternTerm>,
        object: impl Into<PatternTerm>,
    ) -> Self {
        TriplePattern {
            subject: subject.into(),
            predicate: predicate.into(),
            object: object.into(),
        }
    }

    pub fn variables(&self) -> impl Iterator<Item = &str> {
        [&self.subject, &self.predicate, &self.object]
            .into_iter()
            .filter_map(|p| match p {
                PatternTerm::Var(v) => Some(v.as_str()),
                PatternTerm::Term(_) => None,
            })
    }

    fn substitute(&self, binding: &Binding) -> TriplePattern {
        let sub = |p: &PatternTerm| match p {
            PatternTerm::Var(v) => binding
                .get(v)
                .map(|t| PatternTerm::Term(t.clone()))
                .unwrap_or_else(|| p.clone()),
            PatternTerm::Term(_) => p.clone(),
        };
        TriplePattern {
            subject: sub(&self.subject),
            predicate: sub(&self.predicate),
            object: sub(&self.object),
        }
    }

    fn matches_position(pattern: &PatternTerm, term: &Term) -> bool {
        match pattern {
            PatternTerm::Var(_) => true,
            PatternTerm::Term(t) => t == term,
        }
    }

    fn matches(&self, triple: &Triple) -> bool {
        Self::matches_position(&self.subject, &triple.subject)
            && match &self.predicate {
                PatternTerm::Var(_) => true,
                PatternTerm::Term(Term::Iri(p)) => p == &triple.predicate,
                PatternTerm::Term(_) => false,
            }
            && Self::matches_position(&self.object, &triple.object)
    }

    /// Extends `binding` with the variables of this pattern bound against `triple`,
    /// or `None` when a variable would have to take two different values.
    fn bind(&self, triple: &Triple, binding: &Binding) -> Option<Binding> {
        let mut out = binding.clone();
        let predicate = Term::Iri(triple.predicate.clone());
        for (pattern, term) in [
            (&self.subject, &triple.subject),
            (&self.predicate, &predicate),
            (&self.object, &triple.object),
        ] {
            if let PatternTerm::Var(v) = pattern {
                match out.get(v) {
                    Some(existing) if existing != term => return None,
                    Some(_) => {}
                    None => {
                        out.insert(v.clone(), term.clone());
                    }
                }
            }
        }
        Some(out)
    }
}

impl fmt::Display for TriplePattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {} .", self.subject, self.predicate, self.object)
    }
}

/// Variable name to term. Ordered by variable name, so a sorted list of
/// bindings is ordered variable-by-variable on term order.
pub type Binding = BTreeMap<String, Term>;

/// Triples whose constant positions equal the pattern's terms.
pub fn graph_match(graph: &Graph, pattern: &TriplePattern) -> Vec<Triple> {
    graph.iter().filter(|t| pattern.matches(t)).cloned().collect()
}

/// Solves a basic graph pattern with a nested-loop join. Patterns are joined
/// in ascending order of their standalone match counts; the result is
/// duplicate-free and sorted.
pub fn bgp_solve(graph: &Graph, patterns: &[TriplePattern]) -> Vec<Binding> {
    let mut ordered: Vec<(usize, usize, &TriplePattern)> = patterns
        .iter()
        .enumerate()
        .map(|(i, p)| (graph.iter().filter(|t| p.matches(t)).count(), i, p))
        .collect();
    ordered.sort();

    let mut partial = vec![Binding::new()];
    for (count, _, pattern) in ordered {
        if count == 0 {
            return Vec::new();
        }
        let mut next = Vec::new();
        for binding in &partial {
            let bound = pattern.substitute(binding);
            for triple in graph.iter().filter(|t| bound.matches(t)) {
                if let Some(extended) = bound.bind(triple, binding) {
                    next.push(extended);
                }
            }
        }
        if next.is_empty() {
            return Vec::new();
        }
        partial = next;
    }
    partial
        .into_iter()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ns::{rdf, void};

    fn iri(s: &str) -> Term {
        Term::iri(s).unwrap()
    }

    fn fixture() -> Graph {
        let mut g = Graph::new();
        let ty = Iri::new(rdf::TYPE).unwrap();
        let lp = Iri::new(void::LINK_PREDICATE).unwrap();
        g.add(iri("http://ex/ls1"), ty.clone(), iri(void::LINKSET)).unwrap();
        g.add(iri("http://ex/ls2"), ty.clone(), iri(void::LINKSET)).unwrap();
        g.add(iri("http://ex/ds"), ty, iri(void::DATASET)).unwrap();
        g.add(iri("http://ex/ls1"), lp.clone(), iri("http://ex/p1")).unwrap();
        g.add(iri("http://ex/ls2"), lp, iri("http://ex/p2")).unwrap();
        g
    }

    #[test]
    fn all_wildcard_returns_everything() {
        let g = fixture();
        let p = TriplePattern::new(PatternTerm::var("s"), PatternTerm::var("p"), PatternTerm::var("o"));
        assert_eq!(graph_match(&g, &p).len(), 5);
    }

    #[test]
    fn typed_linksets() {
        let g = fixture();
        let p = TriplePattern::new(
            PatternTerm::var("s"),
            PatternTerm::Term(iri(rdf::TYPE)),
            PatternTerm::Term(iri(void::LINKSET)),
        );
        assert_eq!(graph_match(&g, &p).len(), 2);
    }

    #[test]
    fn absent_constant() {
        let g = fixture();
        let p = TriplePattern::new(
            PatternTerm::var("s"),
            PatternTerm::var("p"),
            PatternTerm::Term(iri("http://ex/nowhere")),
        );
        assert!(graph_match(&g, &p).is_empty());
    }

    #[test]
    fn empty_bgp_has_one_empty_solution() {
        assert_eq!(bgp_solve(&fixture(), &[]), vec![Binding::new()]);
        assert_eq!(bgp_solve(&Graph::new(), &[]), vec![Binding::new()]);
    }

    #[test]
    fn join_across_patterns() {
        let g = fixture();
        let patterns = [
            TriplePattern::new(
                PatternTerm::var("ls"),
                PatternTerm::Term(iri(rdf::TYPE)),
                PatternTerm::Term(iri(void::LINKSET)),
            ),
            TriplePattern::new(
                PatternTerm::var("ls"),
                PatternTerm::Term(iri(void::LINK_PREDICATE)),
                PatternTerm::var("p"),
            ),
        ];
        let solutions = bgp_solve(&g, &patterns);
        assert_eq!(solutions.len(), 2);
        assert_eq!(solutions[0]["ls"], iri("http://ex/ls1"));
        assert_eq!(solutions[1]["p"], iri("http://ex/p2"));
    }

    #[test]
    fn repeated_variable_must_agree() {
        let mut g = Graph::new();
        let p = Iri::new("http://ex/p").unwrap();
        g.add(iri("http://ex/a"), p.clone(), iri("http://ex/a")).unwrap();
        g.add(iri("http://ex/a"), p, iri("http://ex/b")).unwrap();
        let pattern = TriplePattern::new(
            PatternTerm::var("x"),
            PatternTerm::Term(iri("http://ex/p")),
            PatternTerm::var("x"),
        );
        assert_eq!(bgp_solve(&g, &[pattern]).len(), 1);
    }
}
