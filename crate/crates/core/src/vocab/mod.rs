//! Typed views over VoID and VoIDext descriptions.
//!
//! Extraction is deliberately literal: descriptors record what the graph
//! says, including structural faults of complex link sets, and leave judging
//! to the validator.

mod class_expr;
mod mapping;

use std::collections::BTreeMap;
use std::fmt;

use chrono::NaiveDate;
use serde::{Deserialize, Serialize};

use crate::ns::{dcterms, void, voidext};
use crate::rdf::{Graph, Iri, Term};

pub use class_expr::{extract_class_expression, is_literal_range, ClassExpression};
pub use mapping::{parse_mapping, parse_mapping_str, MappingError, MappingFunction};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum VocabError {
    #[error("{node}: malformed class expression: {reason}")]
    ClassExpression { node: String, reason: String },
    #[error("{node}: {count} link predicates, a link set has exactly one")]
    LinkPredicateCount { node: String, count: usize },
    #[error("{node}: shared instance set without voidext:sharedInstanceType")]
    MissingSharedInstanceType { node: String },
    #[error("{node}: {count} shared instance types, expected one")]
    SharedInstanceTypeCount { node: String, count: usize },
    #[error("{node}: invalid resource mapping: {source}")]
    Mapping { node: String, source: MappingError },
    #[error("{node}: must be named by an IRI")]
    NotAnIri { node: String },
}

impl VocabError {
    pub fn node(&self) -> &str {
        match self {
            VocabError::ClassExpression { node, .. }
            | VocabError::LinkPredicateCount { node, .. }
            | VocabError::MissingSharedInstanceType { node }
            | VocabError::SharedInstanceTypeCount { node, .. }
            | VocabError::Mapping { node, .. }
            | VocabError::NotAnIri { node } => node,
        }
    }
}

/// Where the resources of two link sets meet.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum IntersectionType {
    #[serde(rename = "subject-subject")]
    SubjectSubject,
    #[serde(rename = "subject-object")]
    SubjectObject,
    #[serde(rename = "object-object")]
    ObjectObject,
}

impl IntersectionType {
    pub fn iri(self) -> &'static str {
        match self {
            IntersectionType::SubjectSubject => voidext::SUBJECT_SUBJECT,
            IntersectionType::SubjectObject => voidext::SUBJECT_OBJECT,
            IntersectionType::ObjectObject => voidext::OBJECT_OBJECT,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            IntersectionType::SubjectSubject => "subject-subject",
            IntersectionType::SubjectObject => "subject-object",
            IntersectionType::ObjectObject => "object-object",
        }
    }

    /// The type implied by where each member meets the other.
    pub fn from_positions(a: Position, b: Position) -> Self {
        match (a, b) {
            (Position::Object, Position::Object) => IntersectionType::ObjectObject,
            (Position::Subject, Position::Subject) => IntersectionType::SubjectSubject,
            _ => IntersectionType::SubjectObject,
        }
    }
}

impl fmt::Display for IntersectionType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Triple position at which a link set meets its partner.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Position {
    Subject,
    Object,
}

/// Maps intersection-type individuals to their meaning. Starts with the
/// three `voidext:` individuals; other vocabularies can be added.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectionAliases {
    map: BTreeMap<String, IntersectionType>,
}

impl Default for IntersectionAliases {
    fn default() -> Self {
        let mut map = BTreeMap::new();
        for t in [
            IntersectionType::SubjectSubject,
            IntersectionType::SubjectObject,
            IntersectionType::ObjectObject,
        ] {
            map.insert(t.iri().to_owned(), t);
        }
        IntersectionAliases { map }
    }
}

impl IntersectionAliases {
    pub fn insert(&mut self, iri: impl Into<String>, t: IntersectionType) {
        self.map.insert(iri.into(), t);
    }

    pub fn resolve(&self, iri: &str) -> Option<IntersectionType> {
        self.map.get(iri).copied()
    }
}

/// Parses an ISO-8601 date of year, month, day or date-time granularity.
/// Coarser dates normalize to the first day of their period.
pub fn parse_date(s: &str) -> Option<NaiveDate> {
    let s = s.trim();
    let date_part = s.split_once('T').map_or(s, |(d, _)| d);
    if s.contains('T') {
        let ok = chrono::DateTime::parse_from_rfc3339(s).is_ok()
            || chrono::NaiveDateTime::parse_from_str(s, "%Y-%m-%dT%H:%M:%S%.f").is_ok();
        if !ok {
            return None;
        }
    }
    let parts: Vec<&str> = date_part.split('-').collect();
    let digits = |p: &str, n: usize| p.len() == n && p.bytes().all(|b| b.is_ascii_digit());
    let full = match parts.as_slice() {
        [y] if digits(y, 4) => format!("{y}-01-01"),
        [y, m] if digits(y, 4) && digits(m, 2) => format!("{y}-{m}-01"),
        [y, m, d] if digits(y, 4) && digits(m, 2) && digits(d, 2) => date_part.to_owned(),
        _ => return None,
    };
    NaiveDate::parse_from_str(&full, "%Y-%m-%d").ok()
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Dates {
    pub issued: Option<String>,
    pub modified: Option<String>,
}

impl Dates {
    pub fn read(graph: &Graph, node: &Term) -> Self {
        let lexical = |p: &str| {
            graph
                .objects(node, p)
                .into_iter()
                .find_map(|t| t.as_literal().map(|l| l.lexical().to_owned()))
        };
        Dates {
            issued: lexical(dcterms::ISSUED),
            modified: lexical(dcterms::MODIFIED),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.issued.is_none() && self.modified.is_none()
    }

    /// The later of the two dates, or an error naming an unparseable one.
    pub fn latest(&self) -> Result<Option<NaiveDate>, String> {
        let mut best = None;
        for s in [&self.issued, &self.modified].into_iter().flatten() {
            let d = parse_date(s).ok_or_else(|| format!("invalid date {s:?}"))?;
            best = best.max(Some(d));
        }
        Ok(best)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DatasetDescriptor {
    pub iri: Iri,
    pub title: Option<String>,
    pub endpoint: Option<Iri>,
    pub dates: Dates,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkSetDescriptor {
    pub iri: Iri,
    /// Typed `voidext:SimpleLinkSet` as well.
    pub simple: bool,
    /// Dataset holding this set through `void:subset`.
    pub host_dataset: Option<Iri>,
    pub link_predicate: Iri,
    pub domain: Option<ClassExpression>,
    pub range: Option<ClassExpression>,
    pub objects_target: Option<Iri>,
    pub subjects_target: Option<Iri>,
    pub targets: Vec<Iri>,
    pub mapping: Option<MappingFunction>,
    pub performance: Vec<Term>,
    pub dates: Dates,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SharedInstanceSetDescriptor {
    pub iri: Iri,
    pub simple: bool,
    pub host_dataset: Option<Iri>,
    /// `void:target` values; one for a member of a complex set, two for a simple set.
    pub targets: Vec<Iri>,
    pub shared_instance_type: ClassExpression,
    pub mapping: Option<MappingFunction>,
    pub performance: Vec<Term>,
    pub dates: Dates,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum MemberKind {
    LinkSet,
    SharedInstanceSet,
}

/// Structural problems of a complex link set, kept for the validator.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum ComplexFault {
    MemberCount(usize),
    /// Member not typed `void:Linkset` or `voidext:SharedInstanceSet` (or a blank node).
    DanglingMember(Term),
    MixedMembers,
    UnknownIntersectionType(Term),
    /// A property that takes one value has several.
    MultipleValues(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexLinkSetDescriptor {
    pub iri: Iri,
    pub member_kind: Option<MemberKind>,
    /// Sorted member IRIs.
    pub members: Vec<Iri>,
    /// As stated by `voidext:intersectionType`.
    pub intersection_type: Option<IntersectionType>,
    /// As implied by the members' targets.
    pub derived_intersection: Option<IntersectionType>,
    pub recommended_mapping: Option<Iri>,
    pub performance: Vec<Term>,
    pub dates: Dates,
    pub faults: Vec<ComplexFault>,
}

impl ComplexLinkSetDescriptor {
    /// Stated intersection type, else the derived one.
    pub fn join(&self) -> Option<IntersectionType> {
        self.intersection_type.or(self.derived_intersection)
    }
}

/// Everything extractable from one graph.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Descriptors {
    pub datasets: Vec<DatasetDescriptor>,
    pub link_sets: Vec<LinkSetDescriptor>,
    pub shared_instance_sets: Vec<SharedInstanceSetDescriptor>,
    pub complex_link_sets: Vec<ComplexLinkSetDescriptor>,
}

impl Descriptors {
    pub fn extract(graph: &Graph) -> Result<Self, VocabError> {
        Ok(Descriptors {
            datasets: extract_datasets(graph),
            link_sets: extract_link_sets(graph)?,
            shared_instance_sets: extract_shared_instance_sets(graph)?,
            complex_link_sets: extract_complex_link_sets(graph),
        })
    }
}

pub fn is_virtual_link_set(graph: &Graph, node: &Term) -> bool {
    [voidext::VIRTUAL_LINK_SET, voidext::COMPLEX_LINK_SET, voidext::SIMPLE_LINK_SET]
        .iter()
        .any(|c| graph.has_type(node, c))
}

fn iri_of(node: &Term) -> Result<Iri, VocabError> {
    node.as_iri().cloned().ok_or_else(|| VocabError::NotAnIri {
        node: node.to_string(),
    })
}

fn iri_objects(graph: &Graph, node: &Term, p: &str) -> Vec<Iri> {
    graph
        .objects(node, p)
        .into_iter()
        .filter_map(|t| t.as_iri().cloned())
        .collect()
}

fn objects_sorted(graph: &Graph, node: &Term, p: &str) -> Vec<Term> {
    graph.objects(node, p).into_iter().cloned().collect()
}

fn first_iri(graph: &Graph, node: &Term, p: &str) -> Option<Iri> {
    iri_objects(graph, node, p).into_iter().next()
}

fn host_dataset(graph: &Graph, node: &Term) -> Option<Iri> {
    graph
        .subjects(void::SUBSET, node)
        .into_iter()
        .find_map(|t| t.as_iri().cloned())
}

fn mapping_of(graph: &Graph, node: &Term) -> Result<Option<MappingFunction>, VocabError> {
    let Some(t) = graph.object(node, voidext::RESOURCE_MAPPING) else {
        return Ok(None);
    };
    let fail = |source: MappingError| VocabError::Mapping {
        node: node.to_string(),
        source,
    };
    match t {
        Term::Literal(l) => parse_mapping(l).map(Some).map_err(fail),
        _ => Err(fail(MappingError {
            offset: None,
            message: "voidext:resourceMapping must be a literal".into(),
        })),
    }
}

fn optional_expression(graph: &Graph, node: &Term, p: &str) -> Result<Option<ClassExpression>, VocabError> {
    graph
        .object(node, p)
        .map(|n| extract_class_expression(graph, n))
        .transpose()
}

fn preferred_title(graph: &Graph, node: &Term) -> Option<String> {
    let lits: Vec<_> = graph
        .objects(node, dcterms::TITLE)
        .into_iter()
        .filter_map(Term::as_literal)
        .collect();
    lits.iter()
        .find(|l| l.language().is_none())
        .or_else(|| lits.iter().find(|l| l.language() == Some("en")))
        .or_else(|| lits.first())
        .map(|l| l.lexical().to_owned())
}

/// Dataset descriptions, excluding nodes that are also virtual link sets or
/// shared instance sets.
pub fn extract_datasets(graph: &Graph) -> Vec<DatasetDescriptor> {
    graph
        .instances_of(void::DATASET)
        .into_iter()
        .filter(|n| {
            !is_virtual_link_set(graph, n)
                && !graph.has_type(n, voidext::SHARED_INSTANCE_SET)
                && !graph.has_type(n, void::LINKSET)
        })
        .filter_map(|n| {
            let iri = n.as_iri()?.clone();
            Some(DatasetDescriptor {
                iri,
                title: preferred_title(graph, &n),
                endpoint: first_iri(graph, &n, void::SPARQL_ENDPOINT),
                dates: Dates::read(graph, &n),
            })
        })
        .collect()
}

pub fn extract_link_set(graph: &Graph, node: &Term) -> Result<LinkSetDescriptor, VocabError> {
    let iri = iri_of(node)?;
    let preds = iri_objects(graph, node, void::LINK_PREDICATE);
    let [link_predicate] = preds.as_slice() else {
        return Err(VocabError::LinkPredicateCount {
            node: node.to_string(),
            count: graph.objects(node, void::LINK_PREDICATE).len(),
        });
    };
    Ok(LinkSetDescriptor {
        iri,
        simple: graph.has_type(node, voidext::SIMPLE_LINK_SET),
        host_dataset: host_dataset(graph, node),
        link_predicate: link_predicate.clone(),
        domain: optional_expression(graph, node, voidext::LINK_PREDICATE_DOMAIN)?,
        range: optional_expression(graph, node, voidext::LINK_PREDICATE_RANGE)?,
        objects_target: first_iri(graph, node, void::OBJECTS_TARGET),
        subjects_target: first_iri(graph, node, void::SUBJECTS_TARGET),
        targets: iri_objects(graph, node, void::TARGET),
        mapping: mapping_of(graph, node)?,
        performance: objects_sorted(graph, node, voidext::HAS_PERFORMANCE_MEASURE),
        dates: Dates::read(graph, node),
    })
}

/// One descriptor per `void:Linkset`; fails on the first malformed one.
pub fn extract_link_sets(graph: &Graph) -> Result<Vec<LinkSetDescriptor>, VocabError> {
    graph
        .instances_of(void::LINKSET)
        .iter()
        .map(|n| extract_link_set(graph, n))
        .collect()
}

pub fn extract_shared_instance_set(
    graph: &Graph,
    node: &Term,
) -> Result<SharedInstanceSetDescriptor, VocabError> {
    let iri = iri_of(node)?;
    let types = graph.objects(node, voidext::SHARED_INSTANCE_TYPE);
    let sit = match types.as_slice() {
        [] => {
            return Err(VocabError::MissingSharedInstanceType {
                node: node.to_string(),
            })
        }
        [t] => extract_class_expression(graph, t)?,
        _ => {
            return Err(VocabError::SharedInstanceTypeCount {
                node: node.to_string(),
                count: types.len(),
            })
        }
    };
    Ok(SharedInstanceSetDescriptor {
        iri,
        simple: graph.has_type(node, voidext::SIMPLE_LINK_SET),
        host_dataset: host_dataset(graph, node),
        targets: iri_objects(graph, node, void::TARGET),
        shared_instance_type: sit,
        mapping: mapping_of(graph, node)?,
        performance: objects_sorted(graph, node, voidext::HAS_PERFORMANCE_MEASURE),
        dates: Dates::read(graph, node),
    })
}

pub fn extract_shared_instance_sets(
    graph: &Graph,
) -> Result<Vec<SharedInstanceSetDescriptor>, VocabError> {
    graph
        .instances_of(voidext::SHARED_INSTANCE_SET)
        .iter()
        .map(|n| extract_shared_instance_set(graph, n))
        .collect()
}

pub fn member_kind_of(graph: &Graph, node: &Term) -> Option<MemberKind> {
    let ls = graph.has_type(node, void::LINKSET);
    let sis = graph.has_type(node, voidext::SHARED_INSTANCE_SET);
    match (ls, sis) {
        (true, false) => Some(MemberKind::LinkSet),
        (false, true) => Some(MemberKind::SharedInstanceSet),
        _ => None,
    }
}

/// Position at which `member` meets `partner`, read from its target properties.
pub fn position_towards(graph: &Graph, member: &Term, partner: &Term) -> Option<Position> {
    let points = |p: &str| graph.objects(member, p).contains(&partner);
    match (points(void::OBJECTS_TARGET), points(void::SUBJECTS_TARGET)) {
        (true, false) => Some(Position::Object),
        (false, true) => Some(Position::Subject),
        _ => None,
    }
}

pub fn extract_complex_link_set(
    graph: &Graph,
    node: &Term,
    aliases: &IntersectionAliases,
) -> Result<ComplexLinkSetDescriptor, VocabError> {
    let iri = iri_of(node)?;
    let mut faults = Vec::new();
    let member_terms: Vec<&Term> = graph.objects(node, voidext::INTERSECT_AT);
    if member_terms.len() != 2 {
        faults.push(ComplexFault::MemberCount(member_terms.len()));
    }
    let mut kinds = Vec::new();
    for m in &member_terms {
        match (m.as_iri(), member_kind_of(graph, m)) {
            (Some(_), Some(k)) => kinds.push(k),
            _ => faults.push(ComplexFault::DanglingMember((*m).clone())),
        }
    }
    kinds.sort();
    kinds.dedup();
    let member_kind = match kinds.as_slice() {
        [k] => Some(*k),
        [] => None,
        _ => {
            faults.push(ComplexFault::MixedMembers);
            None
        }
    };
    let single = |p: &str, faults: &mut Vec<ComplexFault>| {
        let vals = graph.objects(node, p);
        if vals.len() > 1 {
            faults.push(ComplexFault::MultipleValues(p.to_owned()));
        }
        vals.first().map(|t| (*t).clone())
    };
    let stated = single(voidext::INTERSECTION_TYPE, &mut faults);
    let intersection_type = match &stated {
        None => None,
        Some(t) => match t.as_iri().and_then(|i| aliases.resolve(i.as_str())) {
            Some(it) => Some(it),
            None => {
                faults.push(ComplexFault::UnknownIntersectionType(t.clone()));
                None
            }
        },
    };
    let derived_intersection = match (member_terms.as_slice(), member_kind) {
        ([_, _], Some(MemberKind::SharedInstanceSet)) => Some(IntersectionType::SubjectSubject),
        ([a, b], Some(MemberKind::LinkSet)) => {
            match (position_towards(graph, a, b), position_towards(graph, b, a)) {
                (Some(pa), Some(pb)) => Some(IntersectionType::from_positions(pa, pb)),
                _ => None,
            }
        }
        _ => None,
    };
    let recommended_mapping = single(voidext::RECOMMENDED_MAPPING, &mut faults)
        .and_then(|t| t.as_iri().cloned());
    let performance = objects_sorted(graph, node, voidext::HAS_PERFORMANCE_MEASURE);
    let mut members: Vec<Iri> = member_terms.iter().filter_map(|t| t.as_iri().cloned()).collect();
    members.sort();
    Ok(ComplexLinkSetDescriptor {
        iri,
        member_kind,
        members,
        intersection_type,
        derived_intersection,
        recommended_mapping,
        performance,
        dates: Dates::read(graph, node),
        faults,
    })
}

/// One descriptor per `voidext:ComplexLinkSet` named by an IRI.
pub fn extract_complex_link_sets(graph: &Graph) -> Vec<ComplexLinkSetDescriptor> {
    extract_complex_link_sets_with(graph, &IntersectionAliases::default())
}

pub fn extract_complex_link_sets_with(
    graph: &Graph,
    aliases: &IntersectionAliases,
) -> Vec<ComplexLinkSetDescriptor> {
    graph
        .instances_of(voidext::COMPLEX_LINK_SET)
        .iter()
        .filter_map(|n| extract_complex_link_set(graph, n, aliases).ok())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::turtle::parse_turtle;

    const HEAD: &str = "@prefix void: <http://rdfs.org/ns/void#> .\n\
        @prefix voidext: <http://purl.org/query/voidext#> .\n\
        @prefix dcterms: <http://purl.org/dc/terms/> .\n\
        @prefix up: <http://purl.uniprot.org/core/> .\n\
        @prefix biopax: <http://www.biopax.org/release/biopax-level3.owl#> .\n\
        @prefix lindas: <https://gont.ch/> .\n\
        @prefix dbp: <http://dbpedia.org/property/> .\n\
        @prefix ex: <http://example.org/voidext#> .\n";

    fn graph(body: &str) -> Graph {
        parse_turtle(&format!("{HEAD}{body}")).unwrap()
    }

    fn iri(s: &str) -> Iri {
        Iri::new(s).unwrap()
    }

    #[test]
    fn dates() {
        assert_eq!(parse_date("2019-06"), NaiveDate::from_ymd_opt(2019, 6, 1));
        assert_eq!(parse_date("2019"), NaiveDate::from_ymd_opt(2019, 1, 1));
        assert_eq!(parse_date("2019-06-14"), NaiveDate::from_ymd_opt(2019, 6, 14));
        assert_eq!(parse_date("2019-06-14T10:00:00Z"), NaiveDate::from_ymd_opt(2019, 6, 14));
        assert_eq!(parse_date("2019-13"), None);
        assert_eq!(parse_date("June 2019"), None);
        assert_eq!(parse_date("2019-06-14Tnoon"), None);
        let d = Dates {
            issued: Some("2019-06-01".into()),
            modified: Some("2019-06-20".into()),
        };
        assert_eq!(d.latest().unwrap(), NaiveDate::from_ymd_opt(2019, 6, 20));
    }

    #[test]
    fn datasets() {
        assert!(extract_datasets(&Graph::new()).is_empty());
        let g = graph(
            "ex:UNIPROT a void:Dataset ; dcterms:title \"UniProt\"@en ; void:sparqlEndpoint <https://sparql.uniprot.org/sparql> .\n\
             ex:S a void:Dataset , voidext:SharedInstanceSet .",
        );
        let ds = extract_datasets(&g);
        assert_eq!(ds.len(), 1);
        assert_eq!(ds[0].endpoint, Some(iri("https://sparql.uniprot.org/sparql")));
        assert_eq!(ds[0].title.as_deref(), Some("UniProt"));
    }

    #[test]
    fn link_set_fields() {
        let g = graph(
            "ex:LINDAS void:subset ex:ls .\n\
             ex:ls a void:Linkset ; void:linkPredicate lindas:longName ; voidext:linkPredicateDomain lindas:Canton ;\n\
               void:objectsTarget ex:other ; voidext:resourceMapping \"BIND(STR(?a) AS ?b)\" .",
        );
        let ls = extract_link_sets(&g).unwrap();
        assert_eq!(ls.len(), 1);
        let ls = &ls[0];
        assert_eq!(ls.link_predicate, iri("https://gont.ch/longName"));
        assert_eq!(ls.domain, Some(ClassExpression::Named(iri("https://gont.ch/Canton"))));
        assert_eq!(ls.host_dataset, Some(iri("http://example.org/voidext#LINDAS")));
        assert_eq!(ls.mapping.as_ref().unwrap().output_var, "b");
        assert!(!ls.simple);
    }

    #[test]
    fn two_link_predicates_is_an_error() {
        let g = graph("ex:ls a void:Linkset ; void:linkPredicate lindas:longName , dbp:shortName .");
        let err = extract_link_sets(&g).unwrap_err();
        assert!(matches!(err, VocabError::LinkPredicateCount { count: 2, .. }));
    }

    #[test]
    fn shared_instance_sets() {
        let g = graph(
            "ex:ebi a voidext:SharedInstanceSet ; void:target ex:EBI ; voidext:sharedInstanceType biopax:BioSource .\n\
             ex:up a voidext:SharedInstanceSet ; void:target ex:UNIPROT ; voidext:sharedInstanceType up:Taxon .",
        );
        let sets = extract_shared_instance_sets(&g).unwrap();
        assert_eq!(sets.len(), 2);
        assert_eq!(
            sets[0].shared_instance_type,
            ClassExpression::Named(iri("http://www.biopax.org/release/biopax-level3.owl#BioSource"))
        );
        let g = graph("ex:x a voidext:SharedInstanceSet ; void:target ex:EBI .");
        assert!(matches!(
            extract_shared_instance_sets(&g),
            Err(VocabError::MissingSharedInstanceType { .. })
        ));
    }

    #[test]
    fn complex_link_set_derivation() {
        let g = graph(
            "ex:a a void:Linkset ; void:linkPredicate lindas:longName ; void:objectsTarget ex:b .\n\
             ex:b a void:Linkset ; void:linkPredicate dbp:shortName ; void:objectsTarget ex:a .\n\
             ex:c a voidext:ComplexLinkSet ; voidext:intersectAt ex:b , ex:a .",
        );
        let c = &extract_complex_link_sets(&g)[0];
        assert_eq!(c.member_kind, Some(MemberKind::LinkSet));
        assert_eq!(c.members, [iri("http://example.org/voidext#a"), iri("http://example.org/voidext#b")]);
        assert_eq!(c.intersection_type, None);
        assert_eq!(c.join(), Some(IntersectionType::ObjectObject));
        assert!(c.faults.is_empty());
    }

    #[test]
    fn complex_link_set_faults_are_kept() {
        let g = graph(
            "ex:a a void:Linkset ; void:linkPredicate lindas:longName .\n\
             ex:b a voidext:SharedInstanceSet ; voidext:sharedInstanceType up:Taxon .\n\
             ex:c a voidext:ComplexLinkSet ; voidext:intersectAt ex:a , ex:b , ex:z ;\n\
               voidext:intersectionType ex:SIDEWAYS .",
        );
        let c = &extract_complex_link_sets(&g)[0];
        assert!(c.faults.contains(&ComplexFault::MemberCount(3)));
        assert!(c.faults.contains(&ComplexFault::MixedMembers));
        assert!(c
            .faults
            .contains(&ComplexFault::DanglingMember(Term::iri("http://example.org/voidext#z").unwrap())));
        assert!(c.faults.iter().any(|f| matches!(f, ComplexFault::UnknownIntersectionType(_))));
    }

    #[test]
    fn alias_table() {
        let g = graph(
            "ex:a a voidext:SharedInstanceSet ; voidext:sharedInstanceType up:Taxon .\n\
             ex:b a voidext:SharedInstanceSet ; voidext:sharedInstanceType up:Taxon .\n\
             ex:c a voidext:ComplexLinkSet ; voidext:intersectAt ex:a , ex:b ; voidext:intersectionType ex:SS .",
        );
        let mut aliases = IntersectionAliases::default();
        aliases.insert("http://example.org/voidext#SS", IntersectionType::SubjectSubject);
        let c = &extract_complex_link_sets_with(&g, &aliases)[0];
        assert_eq!(c.intersection_type, Some(IntersectionType::SubjectSubject));
        assert!(c.faults.is_empty());
    }
}
