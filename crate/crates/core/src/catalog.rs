//! Virtual link sets as tuples a query writer can use directly: the two
//! datasets, their endpoints, the instance types on each side, the join
//! position and the mapping function to apply.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::{json, Value};

use crate::ns::{dcterms, rdf, void, voidext};
use crate::rdf::{bgp_solve, Graph, Iri, PatternTerm, PrefixMap, Term, TriplePattern};
use crate::vocab::{
    extract_class_expression, extract_complex_link_set, extract_link_set,
    extract_shared_instance_set, parse_mapping, ClassExpression, ComplexLinkSetDescriptor, Dates,
    IntersectionAliases, IntersectionType, MappingFunction, MemberKind, Position, VocabError,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum VirtualLinkKind {
    ComplexOfLinkSets,
    ComplexOfSharedInstanceSets,
    SimpleLinkSet,
    SimpleSharedInstanceSet,
}

impl VirtualLinkKind {
    pub fn as_str(self) -> &'static str {
        match self {
            VirtualLinkKind::ComplexOfLinkSets => "ComplexOfLinkSets",
            VirtualLinkKind::ComplexOfSharedInstanceSets => "ComplexOfSharedInstanceSets",
            VirtualLinkKind::SimpleLinkSet => "SimpleLinkSet",
            VirtualLinkKind::SimpleSharedInstanceSet => "SimpleSharedInstanceSet",
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CatalogError {
    #[error("{node}: cannot tell which kind of virtual link set this is: {reason}")]
    Unclassifiable { node: String, reason: String },
    #[error(transparent)]
    Vocab(#[from] VocabError),
}

/// One end of a virtual link.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Side {
    /// The member link set or shared instance set, when there is one.
    pub member: Option<Iri>,
    pub dataset: Option<Iri>,
    pub title: Option<String>,
    pub endpoint: Option<Iri>,
    /// Instance type on this side.
    pub types: Option<ClassExpression>,
    /// Triple position of the shared resource in this side's link triples.
    pub position: Option<Position>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VirtualLinkTuple {
    pub vl: Iri,
    pub kind: VirtualLinkKind,
    pub sides: [Side; 2],
    pub mapping: Option<MappingFunction>,
    /// The member whose mapping was chosen.
    pub mapping_holder: Option<Iri>,
    pub join: Option<IntersectionType>,
    pub link_predicates: Option<(Iri, Iri)>,
    pub dates: Dates,
}

impl VirtualLinkTuple {
    /// Index of the side holding the chosen mapping.
    pub fn holder_side(&self) -> Option<usize> {
        let h = self.mapping_holder.as_ref()?;
        self.sides.iter().position(|s| s.member.as_ref() == Some(h))
    }

    /// Index of the side whose endpoint is `endpoint`, ignoring a trailing slash.
    pub fn side_at(&self, endpoint: &str) -> Option<usize> {
        self.sides
            .iter()
            .position(|s| s.endpoint.as_ref().is_some_and(|e| same_endpoint(e.as_str(), endpoint)))
    }
}

pub fn same_endpoint(a: &str, b: &str) -> bool {
    a.trim_end_matches('/') == b.trim_end_matches('/')
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Catalog {
    /// Sorted by IRI.
    pub tuples: Vec<VirtualLinkTuple>,
    pub warnings: Vec<String>,
}

impl Catalog {
    pub fn get(&self, iri: &str) -> Option<&VirtualLinkTuple> {
        self.tuples.iter().find(|t| t.vl.as_str() == iri)
    }
}

/// Kind of every virtual link set in the graph.
pub fn classify(graph: &Graph) -> Result<BTreeMap<Iri, VirtualLinkKind>, CatalogError> {
    let mut out = BTreeMap::new();
    let unclassifiable = |node: &Term, reason: &str| CatalogError::Unclassifiable {
        node: node.to_string(),
        reason: reason.to_owned(),
    };
    let mut nodes = graph.instances_of(voidext::VIRTUAL_LINK_SET);
    nodes.extend(graph.instances_of(voidext::COMPLEX_LINK_SET));
    nodes.extend(graph.instances_of(voidext::SIMPLE_LINK_SET));
    nodes.sort();
    nodes.dedup();
    for node in nodes {
        let Some(iri) = node.as_iri().cloned() else {
            return Err(unclassifiable(&node, "not named by an IRI"));
        };
        let complex = graph.has_type(&node, voidext::COMPLEX_LINK_SET);
        let simple = graph.has_type(&node, voidext::SIMPLE_LINK_SET);
        let kind = match (complex, simple) {
            (true, true) => return Err(unclassifiable(&node, "typed both complex and simple")),
            (true, false) => {
                let d = extract_complex_link_set(graph, &node, &IntersectionAliases::default())?;
                match (d.member_kind, d.members.len()) {
                    (Some(MemberKind::LinkSet), 2) => VirtualLinkKind::ComplexOfLinkSets,
                    (Some(MemberKind::SharedInstanceSet), 2) => {
                        VirtualLinkKind::ComplexOfSharedInstanceSets
                    }
                    _ => return Err(unclassifiable(&node, "members are not two sets of one kind")),
                }
            }
            (false, true) => {
                let ls = graph.has_type(&node, void::LINKSET);
                let sis = graph.has_type(&node, voidext::SHARED_INSTANCE_SET);
                match (ls, sis) {
                    (true, false) => VirtualLinkKind::SimpleLinkSet,
                    (false, true) => VirtualLinkKind::SimpleSharedInstanceSet,
                    _ => {
                        return Err(unclassifiable(
                            &node,
                            "simple set must be exactly one of void:Linkset and voidext:SharedInstanceSet",
                        ))
                    }
                }
            }
            (false, false) => return Err(unclassifiable(&node, "typed only voidext:VirtualLinkSet")),
        };
        out.insert(iri, kind);
    }
    Ok(out)
}

fn is_plain_dataset(g: &Graph, t: &Term) -> bool {
    g.has_type(t, void::DATASET)
        && !g.has_type(t, void::LINKSET)
        && !g.has_type(t, voidext::SHARED_INSTANCE_SET)
        && !g.has_type(t, voidext::COMPLEX_LINK_SET)
        && !g.has_type(t, voidext::SIMPLE_LINK_SET)
}

/// The dataset a member describes: the plain dataset holding it as a subset,
/// else the first plain dataset among its targets.
pub fn member_dataset(g: &Graph, member: &Term) -> Option<Iri> {
    let mut hosts: Vec<&Term> = g
        .subjects(void::SUBSET, member)
        .into_iter()
        .filter(|h| is_plain_dataset(g, h))
        .collect();
    hosts.sort();
    if let Some(h) = hosts.first().and_then(|h| h.as_iri()) {
        return Some(h.clone());
    }
    for p in [void::TARGET, void::SUBJECTS_TARGET, void::OBJECTS_TARGET] {
        let mut ts: Vec<&Term> = g.objects(member, p).into_iter().filter(|t| is_plain_dataset(g, t)).collect();
        ts.sort();
        if let Some(t) = ts.first().and_then(|t| t.as_iri()) {
            return Some(t.clone());
        }
    }
    None
}

fn dataset_side(
    g: &Graph,
    member: Option<Iri>,
    dataset: Option<Iri>,
    types: Option<ClassExpression>,
    position: Option<Position>,
) -> Side {
    let (title, endpoint) = match &dataset {
        Some(d) => {
            let node = Term::Iri(d.clone());
            let title = crate::vocab::extract_datasets(g)
                .into_iter()
                .find(|x| &x.iri == d)
                .and_then(|x| x.title);
            let endpoint = g.objects(&node, void::SPARQL_ENDPOINT).into_iter().find_map(|t| t.as_iri().cloned());
            (title, endpoint)
        }
        None => (None, None),
    };
    Side {
        member,
        dataset,
        title,
        endpoint,
        types,
        position,
    }
}

/// Picks the mapping to apply: the recommended member's, else the only one defined.
pub fn select_mapping(
    cls: &ComplexLinkSetDescriptor,
    members: &[(Iri, Option<MappingFunction>)],
) -> (Option<(Iri, MappingFunction)>, Option<String>) {
    if let Some(rec) = &cls.recommended_mapping {
        let chosen = members
            .iter()
            .find(|(m, _)| m == rec)
            .and_then(|(m, f)| f.clone().map(|f| (m.clone(), f)));
        return match chosen {
            Some(c) => (Some(c), None),
            None => (None, Some(format!("{}: recommended member {rec} has no mapping", cls.iri))),
        };
    }
    let mapped: Vec<_> = members
        .iter()
        .filter_map(|(m, f)| f.clone().map(|f| (m.clone(), f)))
        .collect();
    match mapped.len() {
        0 => (None, None),
        1 => (mapped.into_iter().next(), None),
        _ => (
            None,
            Some(format!(
                "{}: several members define a mapping and none is recommended",
                cls.iri
            )),
        ),
    }
}

/// One tuple per virtual link set, sorted by IRI.
pub fn emit_tuples(graph: &Graph) -> Result<Catalog, CatalogError> {
    let kinds = classify(graph)?;
    let mut cat = Catalog::default();
    for (iri, kind) in kinds {
        let node = Term::Iri(iri.clone());
        let tuple = match kind {
            VirtualLinkKind::ComplexOfLinkSets | VirtualLinkKind::ComplexOfSharedInstanceSets => {
                let d = extract_complex_link_set(graph, &node, &IntersectionAliases::default())?;
                let mut sides = Vec::new();
                let mut mappings = Vec::new();
                let mut preds = Vec::new();
                for (k, m) in d.members.iter().enumerate() {
                    let mt = Term::Iri(m.clone());
                    let position = if kind == VirtualLinkKind::ComplexOfLinkSets {
                        crate::vocab::position_towards(graph, &mt, &Term::Iri(d.members[1 - k].clone()))
                    } else {
                        Some(Position::Subject)
                    };
                    let (types, mapping) = if kind == VirtualLinkKind::ComplexOfLinkSets {
                        let ls = extract_link_set(graph, &mt)?;
                        preds.push(ls.link_predicate.clone());
                        (ls.domain, ls.mapping)
                    } else {
                        let s = extract_shared_instance_set(graph, &mt)?;
                        (Some(s.shared_instance_type), s.mapping)
                    };
                    mappings.push((m.clone(), mapping));
                    sides.push(dataset_side(graph, Some(m.clone()), member_dataset(graph, &mt), types, position));
                }
                let (chosen, warning) = select_mapping(&d, &mappings);
                cat.warnings.extend(warning);
                let [s1, s2]: [Side; 2] = sides.try_into().expect("two members");
                VirtualLinkTuple {
                    vl: iri.clone(),
                    kind,
                    sides: [s1, s2],
                    mapping_holder: chosen.as_ref().map(|(m, _)| m.clone()),
                    mapping: chosen.map(|(_, f)| f),
                    join: d.join(),
                    link_predicates: match preds.as_slice() {
                        [a, b] => Some((a.clone(), b.clone())),
                        _ => None,
                    },
                    dates: d.dates.clone(),
                }
            }
            VirtualLinkKind::SimpleLinkSet => {
                let ls = extract_link_set(graph, &node)?;
                let ds1 = ls.subjects_target.clone().or_else(|| ls.host_dataset.clone());
                let ds2 = ls.objects_target.clone();
                VirtualLinkTuple {
                    vl: iri.clone(),
                    kind,
                    sides: [
                        dataset_side(graph, Some(iri.clone()), ds1, ls.domain.clone(), Some(Position::Object)),
                        dataset_side(graph, None, ds2, ls.range.clone(), Some(Position::Subject)),
                    ],
                    mapping_holder: ls.mapping.as_ref().map(|_| iri.clone()),
                    mapping: ls.mapping.clone(),
                    join: Some(IntersectionType::SubjectObject),
                    link_predicates: Some((ls.link_predicate.clone(), Iri::from_static(rdf::TYPE))),
                    dates: ls.dates.clone(),
                }
            }
            VirtualLinkKind::SimpleSharedInstanceSet => {
                let s = extract_shared_instance_set(graph, &node)?;
                let mut targets = s.targets.clone();
                targets.sort();
                let side = |k: usize| {
                    dataset_side(
                        graph,
                        (k == 0).then(|| iri.clone()),
                        targets.get(k).cloned(),
                        Some(s.shared_instance_type.clone()),
                        Some(Position::Subject),
                    )
                };
                VirtualLinkTuple {
                    vl: iri.clone(),
                    kind,
                    sides: [side(0), side(1)],
                    mapping_holder: s.mapping.as_ref().map(|_| iri.clone()),
                    mapping: s.mapping.clone(),
                    join: Some(IntersectionType::SubjectSubject),
                    link_predicates: None,
                    dates: s.dates.clone(),
                }
            }
        };
        for (k, side) in tuple.sides.iter().enumerate() {
            if side.endpoint.is_none() {
                cat.warnings.push(format!(
                    "{}: side {} ({}) has no SPARQL endpoint",
                    tuple.vl,
                    k + 1,
                    side.dataset.as_ref().map_or("unknown dataset".to_owned(), |d| d.to_string())
                ));
            }
        }
        cat.tuples.push(tuple);
    }
    Ok(cat)
}

fn v(name: &str) -> PatternTerm {
    PatternTerm::var(name)
}

fn c(iri: &'static str) -> PatternTerm {
    PatternTerm::Term(Term::Iri(Iri::from_static(iri)))
}

fn t(term: &Term) -> PatternTerm {
    PatternTerm::Term(term.clone())
}

/// Values of `?o` for `subject p ?o`, sorted.
fn solve_objects(g: &Graph, subject: &Term, p: &'static str) -> Vec<Term> {
    bgp_solve(g, &[TriplePattern::new(t(subject), c(p), v("o"))])
        .into_iter()
        .filter_map(|mut b| b.remove("o"))
        .collect()
}

fn solve_first_iri(g: &Graph, subject: &Term, p: &'static str) -> Option<Iri> {
    solve_objects(g, subject, p).into_iter().find_map(|t| t.as_iri().cloned())
}

fn solve_mapping(g: &Graph, member: &Term) -> Option<MappingFunction> {
    solve_objects(g, member, voidext::RESOURCE_MAPPING)
        .into_iter()
        .find_map(|t| t.as_literal().and_then(|l| parse_mapping(l).ok()))
}

fn solve_expression(g: &Graph, member: &Term, p: &'static str) -> Option<ClassExpression> {
    solve_objects(g, member, p)
        .first()
        .and_then(|n| extract_class_expression(g, n).ok())
}

fn solve_dates(g: &Graph, node: &Term) -> Dates {
    let lex = |p| {
        solve_objects(g, node, p)
            .into_iter()
            .find_map(|t| t.as_literal().map(|l| l.lexical().to_owned()))
    };
    Dates {
        issued: lex(dcterms::ISSUED),
        modified: lex(dcterms::MODIFIED),
    }
}

fn solve_plain(g: &Graph, d: &Term) -> bool {
    let types: Vec<Term> = solve_objects(g, d, rdf::TYPE);
    let has = |c: &str| types.iter().any(|t| t.as_iri().is_some_and(|i| i.as_str() == c));
    has(void::DATASET)
        && !has(void::LINKSET)
        && !has(voidext::SHARED_INSTANCE_SET)
        && !has(voidext::COMPLEX_LINK_SET)
        && !has(voidext::SIMPLE_LINK_SET)
}

fn solve_dataset(g: &Graph, member: &Term) -> Option<Iri> {
    let hosts = bgp_solve(g, &[TriplePattern::new(v("h"), c(void::SUBSET), t(member))]);
    if let Some(h) = hosts
        .into_iter()
        .filter_map(|mut b| b.remove("h"))
        .find(|h| solve_plain(g, h))
    {
        return h.as_iri().cloned();
    }
    [void::TARGET, void::SUBJECTS_TARGET, void::OBJECTS_TARGET]
        .into_iter()
        .flat_map(|p| solve_objects(g, member, p))
        .find(|d| solve_plain(g, d))
        .and_then(|d| d.as_iri().cloned())
}

fn solve_side(
    g: &Graph,
    member: Option<Iri>,
    dataset: Option<Iri>,
    types: Option<ClassExpression>,
    position: Option<Position>,
) -> Side {
    let (title, endpoint) = match &dataset {
        Some(d) => {
            let node = Term::Iri(d.clone());
            let titles: Vec<_> = solve_objects(g, &node, dcterms::TITLE)
                .into_iter()
                .filter_map(|t| t.as_literal().cloned())
                .collect();
            let title = titles
                .iter()
                .find(|l| l.language().is_none())
                .or_else(|| titles.iter().find(|l| l.language() == Some("en")))
                .or_else(|| titles.first())
                .map(|l| l.lexical().to_owned());
            (title, solve_first_iri(g, &node, void::SPARQL_ENDPOINT))
        }
        None => (None, None),
    };
    Side {
        member,
        dataset,
        title,
        endpoint,
        types,
        position,
    }
}

/// The same tuples as [`emit_tuples`], computed by solving the retrieval
/// patterns as basic graph patterns. Kept as an independent check.
pub fn emit_tuples_bgp(graph: &Graph) -> Vec<VirtualLinkTuple> {
    let mut out = Vec::new();
    let typed = |class: &'static str| TriplePattern::new(v("m"), c(rdf::TYPE), c(class));

    let pairs = bgp_solve(
        graph,
        &[
            TriplePattern::new(v("vl"), c(rdf::TYPE), c(voidext::COMPLEX_LINK_SET)),
            TriplePattern::new(v("vl"), c(voidext::INTERSECT_AT), v("m1")),
            TriplePattern::new(v("vl"), c(voidext::INTERSECT_AT), v("m2")),
        ],
    );
    for b in pairs {
        let (vl, m1, m2) = (&b["vl"], &b["m1"], &b["m2"]);
        if m1 >= m2 || solve_objects(graph, vl, voidext::INTERSECT_AT).len() != 2 {
            continue;
        }
        let kind_of = |m: &Term| {
            let has = |class| !bgp_solve(graph, &[typed(class)].map(|p| bind_m(p, m))).is_empty();
            match (has(void::LINKSET), has(voidext::SHARED_INSTANCE_SET)) {
                (true, false) => Some(VirtualLinkKind::ComplexOfLinkSets),
                (false, true) => Some(VirtualLinkKind::ComplexOfSharedInstanceSets),
                _ => None,
            }
        };
        let (Some(kind), Some(k2)) = (kind_of(m1), kind_of(m2)) else { continue };
        if kind != k2 {
            continue;
        }
        let type_prop = if kind == VirtualLinkKind::ComplexOfLinkSets {
            voidext::LINK_PREDICATE_DOMAIN
        } else {
            voidext::SHARED_INSTANCE_TYPE
        };
        let pos = |a: &Term, b: &Term| {
            if kind == VirtualLinkKind::ComplexOfSharedInstanceSets {
                return Some(Position::Subject);
            }
            let hits = |p| solve_objects(graph, a, p).contains(b);
            match (hits(void::OBJECTS_TARGET), hits(void::SUBJECTS_TARGET)) {
                (true, false) => Some(Position::Object),
                (false, true) => Some(Position::Subject),
                _ => None,
            }
        };
        let side = |m: &Term, other: &Term| {
            solve_side(
                graph,
                m.as_iri().cloned(),
                solve_dataset(graph, m),
                solve_expression(graph, m, type_prop),
                pos(m, other),
            )
        };
        let rec = solve_first_iri(graph, vl, voidext::RECOMMENDED_MAPPING);
        let maps = [(m1, solve_mapping(graph, m1)), (m2, solve_mapping(graph, m2))];
        let chosen = match &rec {
            Some(r) => maps
                .iter()
                .find(|(m, f)| m.as_iri() == Some(r) && f.is_some())
                .cloned(),
            None => {
                let mapped: Vec<_> = maps.iter().filter(|(_, f)| f.is_some()).cloned().collect();
                (mapped.len() == 1).then(|| mapped[0].clone())
            }
        };
        let stated = solve_first_iri(graph, vl, voidext::INTERSECTION_TYPE)
            .and_then(|i| IntersectionAliases::default().resolve(i.as_str()));
        let derived = pos(m1, m2)
            .zip(pos(m2, m1))
            .map(|(a, b)| IntersectionType::from_positions(a, b));
        let link_predicates = if kind == VirtualLinkKind::ComplexOfLinkSets {
            solve_first_iri(graph, m1, void::LINK_PREDICATE).zip(solve_first_iri(graph, m2, void::LINK_PREDICATE))
        } else {
            None
        };
        out.push(VirtualLinkTuple {
            vl: vl.as_iri().cloned().expect("typed subject is an IRI"),
            kind,
            sides: [side(m1, m2), side(m2, m1)],
            mapping_holder: chosen.as_ref().and_then(|(m, _)| m.as_iri().cloned()),
            mapping: chosen.and_then(|(_, f)| f),
            join: stated.or(derived),
            link_predicates,
            dates: solve_dates(graph, vl),
        });
    }

    let simple = bgp_solve(
        graph,
        &[
            TriplePattern::new(v("vl"), c(rdf::TYPE), c(voidext::SIMPLE_LINK_SET)),
            TriplePattern::new(v("vl"), c(rdf::TYPE), c(void::LINKSET)),
            TriplePattern::new(v("vl"), c(void::LINK_PREDICATE), v("p")),
        ],
    );
    for b in simple {
        let vl = &b["vl"];
        let iri = vl.as_iri().cloned().expect("typed subject is an IRI");
        let ds1 = solve_first_iri(graph, vl, void::SUBJECTS_TARGET).or_else(|| {
            bgp_solve(graph, &[TriplePattern::new(v("h"), c(void::SUBSET), t(vl))])
                .into_iter()
                .find_map(|mut b| b.remove("h").and_then(|h| h.as_iri().cloned()))
        });
        let mapping = solve_mapping(graph, vl);
        out.push(VirtualLinkTuple {
            vl: iri.clone(),
            kind: VirtualLinkKind::SimpleLinkSet,
            sides: [
                solve_side(
                    graph,
                    Some(iri.clone()),
                    ds1,
                    solve_expression(graph, vl, voidext::LINK_PREDICATE_DOMAIN),
                    Some(Position::Object),
                ),
                solve_side(
                    graph,
                    None,
                    solve_first_iri(graph, vl, void::OBJECTS_TARGET),
                    solve_expression(graph, vl, voidext::LINK_PREDICATE_RANGE),
                    Some(Position::Subject),
                ),
            ],
            mapping_holder: mapping.as_ref().map(|_| iri.clone()),
            mapping,
            join: Some(IntersectionType::SubjectObject),
            link_predicates: b["p"].as_iri().map(|p| (p.clone(), Iri::from_static(rdf::TYPE))),
            dates: solve_dates(graph, vl),
        });
    }

    let shared = bgp_solve(
        graph,
        &[
            TriplePattern::new(v("vl"), c(rdf::TYPE), c(voidext::SIMPLE_LINK_SET)),
            TriplePattern::new(v("vl"), c(rdf::TYPE), c(voidext::SHARED_INSTANCE_SET)),
        ],
    );
    for b in shared {
        let vl = &b["vl"];
        let iri = vl.as_iri().cloned().expect("typed subject is an IRI");
        let ty = solve_expression(graph, vl, voidext::SHARED_INSTANCE_TYPE);
        let targets: Vec<Iri> = solve_objects(graph, vl, void::TARGET)
            .into_iter()
            .filter_map(|t| t.as_iri().cloned())
            .collect();
        let mapping = solve_mapping(graph, vl);
        let side = |k: usize| {
            solve_side(
                graph,
                (k == 0).then(|| iri.clone()),
                targets.get(k).cloned(),
                ty.clone(),
                Some(Position::Subject),
            )
        };
        out.push(VirtualLinkTuple {
            vl: iri.clone(),
            kind: VirtualLinkKind::SimpleSharedInstanceSet,
            sides: [side(0), side(1)],
            mapping_holder: mapping.as_ref().map(|_| iri.clone()),
            mapping,
            join: Some(IntersectionType::SubjectSubject),
            link_predicates: None,
            dates: solve_dates(graph, vl),
        });
    }
    out.sort_by(|a, b| a.vl.cmp(&b.vl));
    out
}

fn bind_m(p: TriplePattern, m: &Term) -> TriplePattern {
    TriplePattern::new(t(m), p.predicate, p.object)
}

fn date_value(s: &Option<String>) -> Option<Value> {
    s.as_ref().map(|d| Value::String(d.clone()))
}

/// The JSON catalog document.
pub fn to_json(catalog: &Catalog, prefixes: &PrefixMap) -> Value {
    let sets: Vec<Value> = catalog
        .tuples
        .iter()
        .map(|tp| {
            let mut o = serde_json::Map::new();
            o.insert("iri".into(), json!(tp.vl.as_str()));
            o.insert("kind".into(), json!(tp.kind.as_str()));
            o.insert(
                "datasets".into(),
                Value::Array(
                    tp.sides
                        .iter()
                        .map(|s| {
                            json!({
                                "title": s.title,
                                "endpoint": s.endpoint.as_ref().map(Iri::as_str),
                            })
                        })
                        .collect(),
                ),
            );
            o.insert(
                "types".into(),
                Value::Array(
                    tp.sides
                        .iter()
                        .map(|s| s.types.as_ref().map_or(Value::Null, |ce| json!(ce.display(prefixes))))
                        .collect(),
                ),
            );
            o.insert("join".into(), json!(tp.join.map(IntersectionType::as_str)));
            if let Some((a, b)) = &tp.link_predicates {
                o.insert("link_predicates".into(), json!([a.as_str(), b.as_str()]));
            }
            if let Some(m) = &tp.mapping {
                o.insert("mapping".into(), serde_json::to_value(m).expect("plain struct"));
            }
            if let Some(d) = date_value(&tp.dates.issued) {
                o.insert("issued".into(), d);
            }
            if let Some(d) = date_value(&tp.dates.modified) {
                o.insert("modified".into(), d);
            }
            Value::Object(o)
        })
        .collect();
    json!({ "virtual_link_sets": sets })
}
