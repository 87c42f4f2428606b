//! Blank-node-insensitive graph comparison.
//!
//! Blank nodes are colored by iterative refinement: each round, a node's new
//! color is the rank of its signature (old color plus the sorted list of its
//! incident edges, where neighbouring blank nodes contribute their colors).
//! When refinement stalls with tied colors, each member of the first tied cell
//! is individualized in turn and the lexicographically smallest relabeled
//! triple list wins, which makes the labeling canonical.

use std::collections::{BTreeMap, BTreeSet};

use super::{BlankNode, Graph, Iri, Term, Triple};

/// Search leaves explored before settling for the best labeling found so far.
/// Only highly symmetric graphs ever reach it.
const LEAF_LIMIT: usize = 20_000;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
enum Neighbour<'a> {
    Term(&'a Term),
    Blank(usize),
    Itself,
}

/// A node's color and its sorted edge view.
type Signature<'a> = (usize, Vec<(u8, &'a Iri, Neighbour<'a>)>);

struct Incidence<'a> {
    // (direction, predicate, other end): direction 0 = outgoing, 1 = incoming.
    edges: Vec<Vec<(u8, &'a Iri, End<'a>)>>,
}

#[derive(Clone, Copy)]
enum End<'a> {
    Term(&'a Term),
    Blank(usize),
    Itself,
}

struct Search<'a> {
    graph: &'a Graph,
    nodes: Vec<BlankNode>,
    incidence: Incidence<'a>,
    best: Option<(Vec<Triple>, Vec<usize>)>,
    leaves: usize,
}

fn index_graph(graph: &Graph) -> (Vec<BlankNode>, Incidence<'_>) {
    let nodes: Vec<BlankNode> = graph.blank_nodes().into_iter().collect();
    let index: BTreeMap<&BlankNode, usize> = nodes.iter().enumerate().map(|(i, b)| (b, i)).collect();
    let mut edges = vec![Vec::new(); nodes.len()];
    for t in graph {
        let s = t.subject.as_blank().map(|b| index[b]);
        let o = t.object.as_blank().map(|b| index[b]);
        if let Some(si) = s {
            let end = match o {
                Some(oi) if oi == si => End::Itself,
                Some(oi) => End::Blank(oi),
                None => End::Term(&t.object),
            };
            edges[si].push((0, &t.predicate, end));
        }
        if let Some(oi) = o {
            if s == Some(oi) {
                continue;
            }
            let end = match s {
                Some(si) => End::Blank(si),
                None => End::Term(&t.subject),
            };
            edges[oi].push((1, &t.predicate, end));
        }
    }
    (nodes, Incidence { edges })
}

impl<'a> Search<'a> {
    fn refine(&self, mut colors: Vec<usize>) -> Vec<usize> {
        let mut classes = colors.iter().collect::<BTreeSet<_>>().len();
        loop {
            let signatures: Vec<Signature<'_>> = self
                .incidence
                .edges
                .iter()
                .enumerate()
                .map(|(i, edges)| {
                    let mut sig: Vec<_> = edges
                        .iter()
                        .map(|(dir, p, end)| {
                            let n = match *end {
                                End::Term(t) => Neighbour::Term(t),
                                End::Blank(j) => Neighbour::Blank(colors[j]),
                                End::Itself => Neighbour::Itself,
                            };
                            (*dir, *p, n)
                        })
                        .collect();
                    sig.sort();
                    (colors[i], sig)
                })
                .collect();
            let ranks: BTreeMap<&Signature<'_>, usize> = signatures
                .iter()
                .collect::<BTreeSet<_>>()
                .into_iter()
                .enumerate()
                .map(|(rank, sig)| (sig, rank))
                .collect();
            let next: Vec<usize> = signatures.iter().map(|s| ranks[s]).collect();
            let next_classes = ranks.len();
            colors = next;
            if next_classes == classes {
                return colors;
            }
            classes = next_classes;
        }
    }

    fn relabeled(&self, colors: &[usize]) -> Vec<Triple> {
        let index: BTreeMap<&BlankNode, usize> =
            self.nodes.iter().enumerate().map(|(i, b)| (b, i)).collect();
        let map = |t: &Term| match t {
            Term::BlankNode(b) => Term::blank(format!("c{}", colors[index[b]])),
            other => other.clone(),
        };
        let set: BTreeSet<Triple> = self
            .graph
            .iter()
            .map(|t| Triple {
                subject: map(&t.subject),
                predicate: t.predicate.clone(),
                object: map(&t.object),
            })
            .collect();
        set.into_iter().collect()
    }

    fn search(&mut self, colors: Vec<usize>) {
        if self.leaves >= LEAF_LIMIT {
            return;
        }
        let colors = self.refine(colors);
        let mut cells: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (i, c) in colors.iter().enumerate() {
            cells.entry(*c).or_default().push(i);
        }
        let Some((&cell_color, members)) = cells.iter().find(|(_, m)| m.len() > 1) else {
            self.leaves += 1;
            let form = self.relabeled(&colors);
            if self.best.as_ref().is_none_or(|(best, _)| form < *best) {
                self.best = Some((form, colors));
            }
            return;
        };
        for &chosen in &members.clone() {
            let keyed: Vec<(usize, u8)> = colors
                .iter()
                .enumerate()
                .map(|(i, &c)| (c, u8::from(!(c == cell_color && i == chosen))))
                .collect();
            let ranks: BTreeMap<(usize, u8), usize> = keyed
                .iter()
                .copied()
                .collect::<BTreeSet<_>>()
                .into_iter()
                .enumerate()
                .map(|(r, k)| (k, r))
                .collect();
            self.search(keyed.iter().map(|k| ranks[k]).collect());
        }
    }
}

fn run(graph: &Graph) -> (Vec<BlankNode>, Vec<Triple>, Vec<usize>) {
    let (nodes, incidence) = index_graph(graph);
    let n = nodes.len();
    let mut search = Search {
        graph,
        nodes,
        incidence,
        best: None,
        leaves: 0,
    };
    search.search(vec![0; n]);
    let (form, colors) = search.best.expect("search visits at least one leaf");
    (search.nodes, form, colors)
}

/// A canonical number for every blank node of `graph`. Isomorphic graphs get
/// the same numbers for corresponding nodes.
pub fn canonical_labels(graph: &Graph) -> BTreeMap<BlankNode, usize> {
    let (nodes, _, colors) = run(graph);
    nodes.into_iter().zip(colors).collect()
}

/// `graph` with blank nodes relabeled `c0`, `c1`, ... canonically. Prefixes are kept.
pub fn canonicalize(graph: &Graph) -> Graph {
    let (_, form, _) = run(graph);
    let mut out = Graph::with_prefixes(graph.prefixes().clone());
    for t in form {
        out.insert(t);
    }
    out
}

/// Graph isomorphism up to blank node relabeling. Prefix maps are ignored.
pub fn is_isomorphic(a: &Graph, b: &Graph) -> bool {
    if a.len() != b.len() || a.blank_nodes().len() != b.blank_nodes().len() {
        return false;
    }
    run(a).1 == run(b).1
}
