//! Brute-force reference implementations used to check the library.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use voidext::rdf::{bgp_solve, Binding, Graph, Iri, Literal, PatternTerm, Term, TriplePattern};

pub struct BgpCase {
    pub graph: Graph,
    pub patterns: Vec<TriplePattern>,
}

fn pool() -> (Vec<Term>, Vec<Term>, Vec<Term>) {
    let iri = |s: String| Term::Iri(Iri::new(s).unwrap());
    let resources: Vec<Term> = (0..5).map(|k| iri(format!("http://example.org/r{k}"))).collect();
    let predicates: Vec<Term> = (0..3).map(|k| iri(format!("http://example.org/p{k}"))).collect();
    let mut objects = resources.clone();
    objects.extend(predicates.iter().take(1).cloned());
    objects.push(Term::Literal(Literal::string("a")));
    objects.push(Term::Literal(Literal::lang("a", "en")));
    objects.push(Term::Literal(Literal::typed(
        "1",
        Iri::new("http://www.w3.org/2001/XMLSchema#integer").unwrap(),
    )));
    (resources, predicates, objects)
}

fn pick(rng: &mut StdRng, xs: &[Term]) -> Term {
    xs[rng.gen_range(0..xs.len())].clone()
}

/// A random graph of at most 40 triples and a BGP of at most 4 patterns over at most 4 variables.
pub fn random_case(seed: u64) -> BgpCase {
    let mut rng = StdRng::seed_from_u64(seed);
    let (mut subjects, predicates, mut objects) = pool();
    let blanks: Vec<Term> = (0..2).map(|k| Term::blank(format!("b{k}"))).collect();
    subjects.extend(blanks.iter().cloned());
    objects.extend(blanks.iter().cloned());
    let mut graph = Graph::new();
    for _ in 0..rng.gen_range(0..=40) {
        let p = pick(&mut rng, &predicates).as_iri().unwrap().clone();
        graph.add(pick(&mut rng, &subjects), p, pick(&mut rng, &objects)).unwrap();
    }
    let nvars = rng.gen_range(1..=4);
    let missing = Term::Iri(Iri::new("http://example.org/absent").unwrap());
    let existing: Vec<[Term; 3]> = graph
        .iter()
        .map(|t| [t.subject.clone(), Term::Iri(t.predicate.clone()), t.object.clone()])
        .collect();
    let mut patterns = Vec::new();
    for _ in 0..rng.gen_range(0..=4) {
        // Most patterns start from a real triple so that joins have something to find.
        let base: [Term; 3] = if !existing.is_empty() && rng.gen_bool(0.7) {
            existing[rng.gen_range(0..existing.len())].clone()
        } else {
            [pick(&mut rng, &subjects), pick(&mut rng, &predicates), pick(&mut rng, &objects)]
        };
        let pos = |rng: &mut StdRng, t: Term| -> PatternTerm {
            if rng.gen_bool(0.5) {
                PatternTerm::var(format!("v{}", rng.gen_range(0..nvars)))
            } else if rng.gen_bool(0.03) {
                PatternTerm::Term(missing.clone())
            } else {
                PatternTerm::Term(t)
            }
        };
        let [s, p, o] = base;
        let (s, p, o) = (pos(&mut rng, s), pos(&mut rng, p), pos(&mut rng, o));
        patterns.push(TriplePattern::new(s, p, o));
    }
    BgpCase { graph, patterns }
}

/// Every assignment of graph terms to the pattern variables, kept when all
/// instantiated patterns are triples of the graph.
pub fn brute_force(graph: &Graph, patterns: &[TriplePattern]) -> Vec<Binding> {
    let mut terms: BTreeSet<Term> = BTreeSet::new();
    for t in graph.iter() {
        terms.insert(t.subject.clone());
        terms.insert(Term::Iri(t.predicate.clone()));
        terms.insert(t.object.clone());
    }
    let terms: Vec<Term> = terms.into_iter().collect();
    let index: HashMap<&Term, usize> = terms.iter().enumerate().map(|(k, t)| (t, k)).collect();
    let triples: HashSet<(usize, usize, usize)> = graph
        .iter()
        .map(|t| (index[&t.subject], index[&Term::Iri(t.predicate.clone())], index[&t.object]))
        .collect();

    let vars: Vec<String> = patterns
        .iter()
        .flat_map(|p| p.variables().map(str::to_owned).collect::<Vec<_>>())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let var_slot: HashMap<&str, usize> = vars.iter().enumerate().map(|(k, v)| (v.as_str(), k)).collect();
    // A constant absent from the graph can never match.
    enum Slot {
        Var(usize),
        Const(usize),
        Never,
    }
    let slot = |p: &PatternTerm| match p {
        PatternTerm::Var(v) => Slot::Var(var_slot[v.as_str()]),
        PatternTerm::Term(t) => index.get(t).map_or(Slot::Never, |&k| Slot::Const(k)),
    };
    let compiled: Vec<[Slot; 3]> = patterns
        .iter()
        .map(|p| [slot(&p.subject), slot(&p.predicate), slot(&p.object)])
        .collect();

    let mut out = Vec::new();
    if terms.is_empty() && !vars.is_empty() {
        return out;
    }
    let mut assignment = vec![0usize; vars.len()];
    loop {
        let value = |s: &Slot| match s {
            Slot::Var(k) => Some(assignment[*k]),
            Slot::Const(k) => Some(*k),
            Slot::Never => None,
        };
        let ok = compiled.iter().all(|[s, p, o]| match (value(s), value(p), value(o)) {
            (Some(s), Some(p), Some(o)) => triples.contains(&(s, p, o)),
            _ => false,
        });
        if ok {
            let b: BTreeMap<String, Term> = vars
                .iter()
                .zip(&assignment)
                .map(|(v, &k)| (v.clone(), terms[k].clone()))
                .collect();
            out.push(b);
        }
        // Odometer increment over the assignment space.
        let mut k = 0;
        loop {
            if k == assignment.len() {
                out.sort();
                return out;
            }
            assignment[k] += 1;
            if assignment[k] < terms.len() {
                break;
            }
            assignment[k] = 0;
            k += 1;
        }
    }
}

/// Runs `cases` random cases; returns the seeds where the two disagree.
pub fn bgp_mismatches(cases: u64) -> Vec<u64> {
    (0..cases)
        .filter(|&seed| {
            let case = random_case(seed);
            let mut got = bgp_solve(&case.graph, &case.patterns);
            got.sort();
            got != brute_force(&case.graph, &case.patterns)
        })
        .collect()
}

/// One (link predicate, domain classes, range classes, mapping) fact.
pub type Fact = (String, Vec<String>, Vec<String>, Option<String>);

const VOID: &str = "http://rdfs.org/ns/void#";
const VOIDEXT: &str = "http://purl.org/query/voidext#";
const OWL_UNION: &str = "http://www.w3.org/2002/07/owl#unionOf";
const RDF_FIRST: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#first";
const RDF_REST: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#rest";

fn objs(g: &Graph, s: &Term, p: &str) -> Vec<Term> {
    g.iter()
        .filter(|t| &t.subject == s && t.predicate.as_str() == p)
        .map(|t| t.object.clone())
        .collect()
}

/// Class IRIs named by a class expression, flattening unions.
fn classes_of(g: &Graph, node: &Term, out: &mut BTreeSet<String>) {
    match node {
        Term::Iri(i) => {
            out.insert(i.as_str().to_owned());
        }
        _ => {
            for list in objs(g, node, OWL_UNION) {
                let mut cur = list;
                while let Some(first) = objs(g, &cur, RDF_FIRST).pop() {
                    classes_of(g, &first, out);
                    match objs(g, &cur, RDF_REST).pop() {
                        Some(rest) => cur = rest,
                        None => break,
                    }
                }
            }
        }
    }
}

fn partition_classes(g: &Graph, node: &Term, out: &mut BTreeSet<String>) {
    for cp in objs(g, node, &format!("{VOID}classPartition")) {
        for c in objs(g, &cp, &format!("{VOID}class")) {
            classes_of(g, &c, out);
        }
    }
}

/// Reads link facts straight off the triples, understanding both the
/// VoIDext shape and the legacy partition shapes. A property partition only
/// states a fact of its own when no link set declares that predicate; otherwise
/// it is a pointer at the partner.
pub fn link_facts(g: &Graph) -> Vec<Fact> {
    let declared: BTreeSet<String> = g
        .iter()
        .filter(|t| t.predicate.as_str() == format!("{VOID}linkPredicate"))
        .filter_map(|t| t.object.as_iri().map(|i| i.as_str().to_owned()))
        .collect();
    let mut nodes: BTreeSet<Term> = BTreeSet::new();
    for t in g.iter() {
        let p = t.predicate.as_str();
        if p == format!("{VOID}linkPredicate") || p == format!("{VOID}propertyPartition") {
            nodes.insert(t.subject.clone());
        }
    }
    let mut facts = Vec::new();
    for n in nodes {
        let mut preds: Vec<String> = objs(g, &n, &format!("{VOID}linkPredicate"))
            .iter()
            .map(|t| t.as_iri().unwrap().as_str().to_owned())
            .collect();
        for pp in objs(g, &n, &format!("{VOID}propertyPartition")) {
            preds.extend(
                objs(g, &pp, &format!("{VOID}property"))
                    .iter()
                    .map(|t| t.as_iri().unwrap().as_str().to_owned())
                    .filter(|p| !declared.contains(p)),
            );
        }
        let mut domain = BTreeSet::new();
        let mut range = BTreeSet::new();
        for d in objs(g, &n, &format!("{VOIDEXT}linkPredicateDomain")) {
            classes_of(g, &d, &mut domain);
        }
        for r in objs(g, &n, &format!("{VOIDEXT}linkPredicateRange")) {
            classes_of(g, &r, &mut range);
        }
        partition_classes(g, &n, &mut domain);
        for s in objs(g, &n, &format!("{VOID}subset")) {
            partition_classes(g, &s, &mut domain);
        }
        let mapping = objs(g, &n, &format!("{VOIDEXT}resourceMapping"))
            .pop()
            .and_then(|t| t.as_literal().map(|l| l.lexical().split_whitespace().collect::<Vec<_>>().join(" ")));
        for p in preds {
            facts.push((p, domain.iter().cloned().collect(), range.iter().cloned().collect(), mapping.clone()));
        }
    }
    facts.sort();
    facts
}
