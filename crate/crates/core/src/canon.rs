//! Rewriting legacy VoID encodings of virtual link sets into VoIDext.
//!
//! Two legacy shapes are recognised. In the first (`VlM1`) two link sets
//! name each other as objects or subjects target. In the second (`VlM2`) a
//! link set targets a plain dataset whose single property partition names the
//! partner's link predicate; the partner is either another link set doing the
//! same, or the dataset itself, which is then promoted to a link set. Both
//! become a pair of link sets targeting each other, joined by a freshly minted
//! `voidext:ComplexLinkSet`. Domains stated as class partitions of subsets move
//! to `voidext:linkPredicateDomain`.

use std::collections::BTreeSet;
use std::fmt;

use crate::ns::{rdf, void, voidext};
use crate::rdf::{Graph, Iri, PrefixMap, Term, Triple};
use crate::vocab::{
    extract_class_expression, position_towards, ClassExpression, ComplexLinkSetDescriptor,
    DatasetDescriptor, Dates, Descriptors, IntersectionType, LinkSetDescriptor,
    SharedInstanceSetDescriptor, VocabError,
};

pub const DEFAULT_MINT_BASE: &str = "http://example.org/voidext";

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, serde::Serialize)]
pub enum LegacyPattern {
    #[serde(rename = "VL_m1")]
    VlM1,
    #[serde(rename = "VL_m2")]
    VlM2,
    #[serde(rename = "already-canonical")]
    Canonical,
    #[serde(rename = "unknown")]
    Unknown,
}

impl fmt::Display for LegacyPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LegacyPattern::VlM1 => "VL_m1",
            LegacyPattern::VlM2 => "VL_m2",
            LegacyPattern::Canonical => "already-canonical",
            LegacyPattern::Unknown => "unknown",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct Rewrite {
    pub node: String,
    pub pattern: LegacyPattern,
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, serde::Serialize)]
pub struct CanonReport {
    pub rewrites: Vec<Rewrite>,
    pub warnings: Vec<String>,
}

#[derive(Debug, thiserror::Error)]
pub enum CanonError {
    #[error("{node}: {count} property partitions on a link set target, cannot tell which predicate links")]
    AmbiguousPartitions { node: String, count: usize },
    #[error(transparent)]
    Vocab(#[from] VocabError),
    #[error("invalid mint base {0:?}")]
    MintBase(String),
}

fn t(iri: &'static str) -> Iri {
    Iri::from_static(iri)
}

fn is_plain_dataset(g: &Graph, node: &Term) -> bool {
    g.has_type(node, void::DATASET)
        && !g.has_type(node, void::LINKSET)
        && !g.has_type(node, voidext::SHARED_INSTANCE_SET)
        && !g.has_type(node, voidext::COMPLEX_LINK_SET)
}

/// Properties named by the direct property partitions of `node`.
fn partition_properties(g: &Graph, node: &Term) -> Vec<Term> {
    g.objects(node, void::PROPERTY_PARTITION)
        .into_iter()
        .flat_map(|pp| g.objects(pp, void::PROPERTY))
        .cloned()
        .collect()
}

fn single_partition(g: &Graph, node: &Term) -> Result<Option<Term>, CanonError> {
    let props = partition_properties(g, node);
    match props.as_slice() {
        [] => Ok(None),
        [p] => Ok(Some(p.clone())),
        _ => Err(CanonError::AmbiguousPartitions {
            node: node.to_string(),
            count: props.len(),
        }),
    }
}

fn targets(g: &Graph, node: &Term) -> Vec<(Iri, Term)> {
    let mut out = Vec::new();
    for p in [void::OBJECTS_TARGET, void::SUBJECTS_TARGET] {
        for o in g.objects(node, p) {
            out.push((t(p), o.clone()));
        }
    }
    out
}

fn link_predicate(g: &Graph, node: &Term) -> Option<Term> {
    g.object(node, void::LINK_PREDICATE).cloned()
}

/// Classifies how `node` takes part in a virtual link.
pub fn detect_legacy_pattern(graph: &Graph, node: &Term) -> Result<LegacyPattern, CanonError> {
    if !graph.subjects(voidext::INTERSECT_AT, node).is_empty() {
        return Ok(LegacyPattern::Canonical);
    }
    if graph.has_type(node, void::LINKSET) {
        for (_, target) in targets(graph, node) {
            if graph.has_type(&target, void::LINKSET)
                && targets(graph, &target).iter().any(|(_, back)| back == node)
            {
                return Ok(LegacyPattern::VlM1);
            }
            if is_plain_dataset(graph, &target) && single_partition(graph, &target)?.is_some() {
                return Ok(LegacyPattern::VlM2);
            }
        }
        return Ok(LegacyPattern::Unknown);
    }
    if is_plain_dataset(graph, node) {
        let targeted_by_link_set = graph
            .matching(None, None, Some(node))
            .any(|tr| {
                (tr.predicate == void::OBJECTS_TARGET || tr.predicate == void::SUBJECTS_TARGET)
                    && graph.has_type(&tr.subject, void::LINKSET)
            });
        if targeted_by_link_set && single_partition(graph, node)?.is_some() {
            return Ok(LegacyPattern::VlM2);
        }
    }
    Ok(LegacyPattern::Unknown)
}

/// Removes the triples of `node` and, recursively, of blank nodes it alone refers to.
fn remove_tree(g: &mut Graph, node: &Term) {
    let owned: Vec<Triple> = g.matching(Some(node), None, None).cloned().collect();
    for tr in &owned {
        g.remove(tr);
    }
    for tr in owned {
        if tr.object.is_blank() && g.matching(None, None, Some(&tr.object)).next().is_none() {
            remove_tree(g, &tr.object);
        }
    }
}

/// Removes `node` entirely: its own triples, blank nodes hanging off it, and arcs pointing at it.
fn remove_scaffold(g: &mut Graph, node: &Term) {
    remove_tree(g, node);
    g.remove_node(node);
}

fn replace_object(g: &mut Graph, s: &Term, p: &Iri, old: &Term, new: &Term) {
    let old_t = Triple {
        subject: s.clone(),
        predicate: p.clone(),
        object: old.clone(),
    };
    if g.remove(&old_t) {
        g.insert(Triple {
            subject: s.clone(),
            predicate: p.clone(),
            object: new.clone(),
        });
    }
}

/// Moves class partitions (direct, or on dedicated subsets) into one
/// `voidext:linkPredicateDomain` and removes the partition scaffolding.
fn migrate_domain(g: &mut Graph, member: &Term, notes: &mut Vec<String>) -> Result<(), CanonError> {
    let mut found: Vec<ClassExpression> = Vec::new();
    let mut partitions: Vec<Term> = g
        .objects(member, void::CLASS_PARTITION)
        .into_iter()
        .cloned()
        .collect();
    let subsets: Vec<Term> = g
        .objects(member, void::SUBSET)
        .into_iter()
        .filter(|s| {
            is_plain_dataset(g, s)
                && !g.objects(s, void::CLASS_PARTITION).is_empty()
                && g.objects(s, void::PROPERTY_PARTITION).is_empty()
        })
        .cloned()
        .collect();
    for s in &subsets {
        partitions.extend(g.objects(s, void::CLASS_PARTITION).into_iter().cloned());
    }
    for cp in &partitions {
        for c in g.objects(cp, void::CLASS) {
            found.push(extract_class_expression(g, c)?);
        }
    }
    if found.is_empty() {
        return Ok(());
    }
    let from_partitions = found.len();
    let existing: Vec<Term> = g
        .objects(member, voidext::LINK_PREDICATE_DOMAIN)
        .into_iter()
        .cloned()
        .collect();
    for d in &existing {
        found.push(extract_class_expression(g, d)?);
    }
    if !existing.is_empty() {
        notes.push("class partitions mixed with an existing domain; all unioned".into());
    }
    let mut ops: Vec<ClassExpression> = found.iter().map(ClassExpression::normalized).collect();
    ops.sort();
    ops.dedup();
    let domain = if ops.len() == 1 {
        ops.remove(0)
    } else {
        ClassExpression::Union(ops)
    };

    for cp in &partitions {
        remove_scaffold(g, cp);
    }
    for s in &subsets {
        remove_scaffold(g, s);
    }
    for d in &existing {
        g.remove(&Triple {
            subject: member.clone(),
            predicate: t(voidext::LINK_PREDICATE_DOMAIN),
            object: d.clone(),
        });
        if d.is_blank() {
            remove_tree(g, d);
        }
    }
    let node = domain.to_graph(g);
    g.insert(Triple {
        subject: member.clone(),
        predicate: t(voidext::LINK_PREDICATE_DOMAIN),
        object: node,
    });
    notes.push(format!("domain taken from {from_partitions} class partition(s)"));
    Ok(())
}

fn mint(g: &Graph, base: &str, next: &mut usize) -> Result<Term, CanonError> {
    loop {
        let candidate = Term::iri(format!("{base}#vls-{next}"))
            .map_err(|_| CanonError::MintBase(base.to_owned()))?;
        *next += 1;
        let used = g.matching(Some(&candidate), None, None).next().is_some()
            || g.matching(None, None, Some(&candidate)).next().is_some();
        if !used {
            return Ok(candidate);
        }
    }
}

/// Rewrites every legacy pair in `graph`; other triples pass through.
pub fn import_legacy(graph: &Graph, mint_base: &str) -> Result<(Graph, CanonReport), CanonError> {
    let mut g = graph.clone();
    let mut report = CanonReport::default();
    let mut done: BTreeSet<Term> = BTreeSet::new();
    let mut next = 1;

    for node in graph.instances_of(void::LINKSET) {
        if done.contains(&node) {
            continue;
        }
        let pattern = detect_legacy_pattern(&g, &node)?;
        let mut notes_a = Vec::new();
        let mut notes_b = Vec::new();
        let (partner, partner_pattern) = match pattern {
            LegacyPattern::Canonical => {
                done.insert(node.clone());
                report.rewrites.push(Rewrite {
                    node: node.to_string(),
                    pattern,
                    notes: vec![],
                });
                continue;
            }
            LegacyPattern::Unknown => continue,
            LegacyPattern::VlM1 => {
                let partner = targets(&g, &node)
                    .into_iter()
                    .map(|(_, o)| o)
                    .find(|o| {
                        g.has_type(o, void::LINKSET)
                            && targets(&g, o).iter().any(|(_, back)| *back == node)
                    })
                    .expect("detected pair");
                (partner, LegacyPattern::VlM1)
            }
            LegacyPattern::VlM2 => {
                let (via, part) = targets(&g, &node)
                    .into_iter()
                    .find(|(_, o)| is_plain_dataset(&g, o) && !partition_properties(&g, o).is_empty())
                    .expect("detected partition target");
                let prop = single_partition(&g, &part)?.expect("one partition");
                let own_pred = link_predicate(&g, &node);
                // A link set on the partitioned predicate that targets back, directly or through its own partition.
                let sym = g
                    .instances_of(void::LINKSET)
                    .into_iter()
                    .filter(|p| *p != node && !done.contains(p))
                    .filter(|p| link_predicate(&g, p).as_ref() == Some(&prop))
                    .find_map(|p| {
                        targets(&g, &p).into_iter().find_map(|(pvia, o)| {
                            let back = o == node
                                || (is_plain_dataset(&g, &o)
                                    && own_pred.is_some()
                                    && partition_properties(&g, &o) == vec![own_pred.clone()?]);
                            back.then(|| (p.clone(), pvia, o))
                        })
                    });
                match sym {
                    Some((p, pvia, ppart)) => {
                        replace_object(&mut g, &node, &via, &part, &p);
                        if ppart != node {
                            replace_object(&mut g, &p, &pvia, &ppart, &node);
                            remove_scaffold(&mut g, &ppart);
                            notes_b.push(format!("target {ppart} replaced by its link set"));
                        }
                        remove_scaffold(&mut g, &part);
                        notes_a.push(format!("target {part} replaced by its link set"));
                        (p, LegacyPattern::VlM2)
                    }
                    None => {
                        // The partitioned dataset is the partner: promote it.
                        let partitions: Vec<Term> = g
                            .objects(&part, void::PROPERTY_PARTITION)
                            .into_iter()
                            .cloned()
                            .collect();
                        for pp in &partitions {
                            remove_scaffold(&mut g, pp);
                        }
                        g.remove(&Triple {
                            subject: part.clone(),
                            predicate: t(rdf::TYPE),
                            object: Term::Iri(t(void::DATASET)),
                        });
                        let _ = g.add(part.clone(), t(rdf::TYPE), Term::Iri(t(void::LINKSET)));
                        let _ = g.add(part.clone(), t(void::LINK_PREDICATE), prop);
                        let _ = g.add(part.clone(), via.clone(), node.clone());
                        notes_b.push("plain dataset promoted to void:Linkset".into());
                        (part, LegacyPattern::VlM2)
                    }
                }
            }
        };

        migrate_domain(&mut g, &node, &mut notes_a)?;
        migrate_domain(&mut g, &partner, &mut notes_b)?;

        let vls = mint(&g, mint_base, &mut next)?;
        let _ = g.add(vls.clone(), t(rdf::TYPE), Term::Iri(t(voidext::COMPLEX_LINK_SET)));
        let _ = g.add(vls.clone(), t(voidext::INTERSECT_AT), node.clone());
        let _ = g.add(vls.clone(), t(voidext::INTERSECT_AT), partner.clone());
        if let (Some(a), Some(b)) = (
            position_towards(&g, &node, &partner),
            position_towards(&g, &partner, &node),
        ) {
            let it = IntersectionType::from_positions(a, b);
            let _ = g.add(vls.clone(), t(voidext::INTERSECTION_TYPE), Term::Iri(t(it.iri())));
        }
        let mapped = [&node, &partner]
            .iter()
            .filter(|m| g.object(m, voidext::RESOURCE_MAPPING).is_some())
            .count();
        if mapped == 2 {
            report.warnings.push(format!(
                "{vls}: both members define a resource mapping; no recommendation emitted"
            ));
        }
        notes_a.push(format!("joined with {partner} in {vls}"));
        notes_b.push(format!("joined with {node} in {vls}"));

        done.insert(node.clone());
        done.insert(partner.clone());
        report.rewrites.push(Rewrite {
            node: node.to_string(),
            pattern,
            notes: notes_a,
        });
        report.rewrites.push(Rewrite {
            node: partner.to_string(),
            pattern: partner_pattern,
            notes: notes_b,
        });
    }
    report.rewrites.sort_by(|a, b| a.node.cmp(&b.node));
    Ok((g, report))
}

fn date_literal(s: &str) -> Term {
    use crate::ns::xsd;
    use crate::rdf::Literal;
    let dt = if s.contains('T') {
        xsd::DATE_TIME
    } else {
        match s.split('-').count() {
            1 => "http://www.w3.org/2001/XMLSchema#gYear",
            2 => xsd::G_YEAR_MONTH,
            _ => xsd::DATE,
        }
    };
    Term::Literal(Literal::typed(s, t(dt)))
}

fn write_dates(g: &mut Graph, node: &Term, dates: &Dates) {
    use crate::ns::dcterms;
    if let Some(d) = &dates.issued {
        let _ = g.add(node.clone(), t(dcterms::ISSUED), date_literal(d));
    }
    if let Some(d) = &dates.modified {
        let _ = g.add(node.clone(), t(dcterms::MODIFIED), date_literal(d));
    }
}

fn write_common(
    g: &mut Graph,
    node: &Term,
    simple: bool,
    host: &Option<Iri>,
    mapping: Option<&crate::vocab::MappingFunction>,
    performance: &[Term],
    dates: &Dates,
) {
    use crate::rdf::Literal;
    if simple {
        let _ = g.add(node.clone(), t(rdf::TYPE), Term::Iri(t(voidext::SIMPLE_LINK_SET)));
    }
    if let Some(h) = host {
        let _ = g.add(Term::Iri(h.clone()), t(void::SUBSET), node.clone());
    }
    if let Some(m) = mapping {
        let _ = g.add(
            node.clone(),
            t(voidext::RESOURCE_MAPPING),
            Term::Literal(Literal::string(m.snippet.clone())),
        );
    }
    for p in performance {
        let _ = g.add(node.clone(), t(voidext::HAS_PERFORMANCE_MEASURE), p.clone());
    }
    write_dates(g, node, dates);
}

fn write_dataset(g: &mut Graph, d: &DatasetDescriptor) {
    use crate::ns::dcterms;
    use crate::rdf::Literal;
    let node = Term::Iri(d.iri.clone());
    let _ = g.add(node.clone(), t(rdf::TYPE), Term::Iri(t(void::DATASET)));
    if let Some(title) = &d.title {
        let _ = g.add(node.clone(), t(dcterms::TITLE), Term::Literal(Literal::string(title.clone())));
    }
    if let Some(e) = &d.endpoint {
        let _ = g.add(node.clone(), t(void::SPARQL_ENDPOINT), Term::Iri(e.clone()));
    }
    write_dates(g, &node, &d.dates);
}

fn write_link_set(g: &mut Graph, d: &LinkSetDescriptor) {
    let node = Term::Iri(d.iri.clone());
    let _ = g.add(node.clone(), t(rdf::TYPE), Term::Iri(t(void::LINKSET)));
    let _ = g.add(node.clone(), t(void::LINK_PREDICATE), Term::Iri(d.link_predicate.clone()));
    for (p, ce) in [
        (voidext::LINK_PREDICATE_DOMAIN, &d.domain),
        (voidext::LINK_PREDICATE_RANGE, &d.range),
    ] {
        if let Some(ce) = ce {
            let o = ce.to_graph(g);
            let _ = g.add(node.clone(), t(p), o);
        }
    }
    for (p, o) in [
        (void::OBJECTS_TARGET, &d.objects_target),
        (void::SUBJECTS_TARGET, &d.subjects_target),
    ] {
        if let Some(o) = o {
            let _ = g.add(node.clone(), t(p), Term::Iri(o.clone()));
        }
    }
    for o in &d.targets {
        let _ = g.add(node.clone(), t(void::TARGET), Term::Iri(o.clone()));
    }
    write_common(g, &node, d.simple, &d.host_dataset, d.mapping.as_ref(), &d.performance, &d.dates);
}

fn write_shared_instance_set(g: &mut Graph, d: &SharedInstanceSetDescriptor) {
    let node = Term::Iri(d.iri.clone());
    let _ = g.add(node.clone(), t(rdf::TYPE), Term::Iri(t(voidext::SHARED_INSTANCE_SET)));
    let o = d.shared_instance_type.to_graph(g);
    let _ = g.add(node.clone(), t(voidext::SHARED_INSTANCE_TYPE), o);
    for o in &d.targets {
        let _ = g.add(node.clone(), t(void::TARGET), Term::Iri(o.clone()));
    }
    write_common(g, &node, d.simple, &d.host_dataset, d.mapping.as_ref(), &d.performance, &d.dates);
}

fn write_complex(g: &mut Graph, d: &ComplexLinkSetDescriptor) {
    let node = Term::Iri(d.iri.clone());
    let _ = g.add(node.clone(), t(rdf::TYPE), Term::Iri(t(voidext::COMPLEX_LINK_SET)));
    for m in &d.members {
        let _ = g.add(node.clone(), t(voidext::INTERSECT_AT), Term::Iri(m.clone()));
    }
    if let Some(it) = d.intersection_type {
        let _ = g.add(node.clone(), t(voidext::INTERSECTION_TYPE), Term::Iri(t(it.iri())));
    }
    if let Some(r) = &d.recommended_mapping {
        let _ = g.add(node.clone(), t(voidext::RECOMMENDED_MAPPING), Term::Iri(r.clone()));
    }
    for p in &d.performance {
        let _ = g.add(node.clone(), t(voidext::HAS_PERFORMANCE_MEASURE), p.clone());
    }
    write_dates(g, &node, &d.dates);
}

/// Writes descriptors back as a VoIDext graph in canonical shape.
pub fn serialize_descriptors(descriptors: &Descriptors, prefixes: &PrefixMap) -> Graph {
    let mut g = Graph::with_prefixes(prefixes.clone());
    for d in &descriptors.datasets {
        write_dataset(&mut g, d);
    }
    for d in &descriptors.link_sets {
        write_link_set(&mut g, d);
    }
    for d in &descriptors.shared_instance_sets {
        write_shared_instance_set(&mut g, d);
    }
    for d in &descriptors.complex_link_sets {
        write_complex(&mut g, d);
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rdf::is_isomorphic;
    use crate::turtle::parse_turtle;

    fn fixture(name: &str) -> Graph {
        let path = format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"));
        parse_turtle(&std::fs::read_to_string(path).unwrap()).unwrap()
    }

    fn term(s: &str) -> Term {
        Term::iri(format!("http://example.org/voidext#{s}")).unwrap()
    }

    #[test]
    fn detection() {
        let m1 = fixture("legacy_m1.ttl");
        assert_eq!(detect_legacy_pattern(&m1, &term("DS1_lindas")).unwrap(), LegacyPattern::VlM1);
        let m2 = fixture("legacy_m2.ttl");
        assert_eq!(detect_legacy_pattern(&m2, &term("DS2_dbpedia")).unwrap(), LegacyPattern::VlM2);
        assert_eq!(detect_legacy_pattern(&m2, &term("DS1_lindas")).unwrap(), LegacyPattern::VlM2);
        assert_eq!(detect_legacy_pattern(&m2, &term("DBPEDIA")).unwrap(), LegacyPattern::Unknown);
        let canon = fixture("legacy_canonical.ttl");
        assert_eq!(
            detect_legacy_pattern(&canon, &term("DS1_lindas")).unwrap(),
            LegacyPattern::Canonical
        );
    }

    #[test]
    fn two_partitions_are_ambiguous() {
        let src = std::fs::read_to_string(format!(
            "{}/fixtures/legacy_m2.ttl",
            env!("CARGO_MANIFEST_DIR")
        ))
        .unwrap()
        .replace(
            "void:propertyPartition [ void:property lindas:longName ] ;",
            "void:propertyPartition [ void:property lindas:longName ] , [ void:property lindas:name ] ;",
        );
        let g = parse_turtle(&src).unwrap();
        let err = detect_legacy_pattern(&g, &term("DS2_dbpedia")).unwrap_err();
        assert!(matches!(err, CanonError::AmbiguousPartitions { count: 2, .. }), "{err}");
        assert!(import_legacy(&g, DEFAULT_MINT_BASE).is_err());
    }

    #[test]
    fn all_legacy_shapes_converge() {
        let expected = fixture("legacy_canonical.ttl");
        for name in ["legacy_m1.ttl", "legacy_m2.ttl", "legacy_m2_symmetric.ttl"] {
            let (out, report) = import_legacy(&fixture(name), DEFAULT_MINT_BASE).unwrap();
            assert!(is_isomorphic(&out, &expected), "{name}:\n{}", crate::turtle::serialize_turtle(&out, out.prefixes()));
            assert_eq!(report.rewrites.len(), 2, "{name}");
            assert!(report.warnings.is_empty());
        }
    }

    #[test]
    fn canonical_input_is_left_alone() {
        let g = fixture("legacy_canonical.ttl");
        let (out, report) = import_legacy(&g, DEFAULT_MINT_BASE).unwrap();
        assert!(out.same_triples(&g));
        assert!(report.rewrites.iter().all(|r| r.pattern == LegacyPattern::Canonical));
        assert_eq!(report.rewrites.len(), 2);
    }

    #[test]
    fn mappings_on_both_sides_warn() {
        let src = std::fs::read_to_string(format!("{}/fixtures/legacy_m1.ttl", env!("CARGO_MANIFEST_DIR")))
            .unwrap()
            .replace(
                "void:subset ex:DS2_domain .",
                "void:subset ex:DS2_domain ; voidext:resourceMapping \"BIND(STR(?x) AS ?y)\" .",
            );
        let (out, report) = import_legacy(&parse_turtle(&src).unwrap(), DEFAULT_MINT_BASE).unwrap();
        assert_eq!(report.warnings.len(), 1);
        assert!(out.matching(None, Some(voidext::RECOMMENDED_MAPPING), None).next().is_none());
    }

    #[test]
    fn mint_base_and_collisions() {
        let mut g = fixture("legacy_m1.ttl");
        let taken = Term::iri("http://data.example/vl#vls-1").unwrap();
        g.add(taken, t(rdf::TYPE), Term::Iri(t(void::DATASET))).unwrap();
        let (out, _) = import_legacy(&g, "http://data.example/vl").unwrap();
        let minted = out.instances_of(voidext::COMPLEX_LINK_SET);
        assert_eq!(minted, vec![Term::iri("http://data.example/vl#vls-2").unwrap()]);
    }

    #[test]
    fn descriptor_fixpoint() {
        for name in ["lindas_dbpedia.ttl", "ebi_uniprot.ttl", "oma_uniprot.ttl", "legacy_canonical.ttl"] {
            let g = fixture(name);
            let d = Descriptors::extract(&g).unwrap();
            let again = Descriptors::extract(&serialize_descriptors(&d, g.prefixes())).unwrap();
            assert_eq!(d, again, "{name}");
        }
    }

    #[test]
    fn serialized_complex_set_shape() {
        let d = Descriptors::extract(&fixture("ebi_uniprot.ttl")).unwrap();
        let g = serialize_descriptors(&d, &PrefixMap::new());
        assert_eq!(g.matching(None, Some(voidext::INTERSECT_AT), None).count(), 2);
        assert_eq!(g.matching(None, Some(voidext::RECOMMENDED_MAPPING), None).count(), 1);
        assert!(serialize_descriptors(&Descriptors::default(), &PrefixMap::new()).is_empty());
    }
}
