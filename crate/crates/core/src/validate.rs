//! Structural checks over VoIDext descriptions.
//!
//! Each check owns one code. The checks read the graph directly rather than
//! extracted descriptors so that one broken node does not hide problems
//! elsewhere, and each check stays quiet about faults another check reports.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::ns::{void, voidext};
use crate::rdf::{Graph, Term};
use crate::turtle::Severity;
use crate::vocab::{
    extract_class_expression, extract_complex_link_set, is_virtual_link_set, member_kind_of,
    parse_mapping, ClassExpression, ComplexFault, Dates, IntersectionAliases, MemberKind,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Code {
    C1,
    C2,
    C3,
    C4,
    C5,
    C6,
    C7,
    C8,
    C9,
}

impl Code {
    pub const ALL: [Code; 9] = [
        Code::C1,
        Code::C2,
        Code::C3,
        Code::C4,
        Code::C5,
        Code::C6,
        Code::C7,
        Code::C8,
        Code::C9,
    ];

    /// Short name of the constraint.
    pub fn topic(self) -> &'static str {
        match self {
            Code::C1 => "cardinality",
            Code::C2 => "homogeneity",
            Code::C3 => "disjointness",
            Code::C4 => "simplicity",
            Code::C5 => "recommendation",
            Code::C6 => "intersection consistency",
            Code::C7 => "mapping syntax",
            Code::C8 => "range obligation",
            Code::C9 => "provenance",
        }
    }

    pub fn severity(self) -> Severity {
        if self == Code::C9 {
            Severity::Warning
        } else {
            Severity::Error
        }
    }

    pub fn parse(s: &str) -> Option<Code> {
        Code::ALL.into_iter().find(|c| format!("{c:?}") == s)
    }
}

impl fmt::Display for Code {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Diagnostic {
    pub code: Code,
    /// IRI (or `_:label`) of the offending node.
    pub subject: String,
    pub severity: Severity,
    pub message: String,
}

impl Diagnostic {
    fn new(code: Code, subject: &Term, message: impl Into<String>) -> Self {
        Diagnostic {
            code,
            subject: node_id(subject),
            severity: code.severity(),
            message: message.into(),
        }
    }

    pub fn is_error(&self) -> bool {
        self.severity == Severity::Error
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sev = match self.severity {
            Severity::Error => "error",
            Severity::Warning => "warning",
        };
        write!(f, "{sev}[{}] {}: {}", self.code, self.subject, self.message)
    }
}

pub fn node_id(t: &Term) -> String {
    match t {
        Term::Iri(i) => i.as_str().to_owned(),
        other => other.to_string(),
    }
}

/// Runs every check; diagnostics are sorted by code, then subject.
pub fn validate(graph: &Graph) -> Vec<Diagnostic> {
    validate_with(graph, &IntersectionAliases::default())
}

pub fn validate_with(graph: &Graph, aliases: &IntersectionAliases) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    check_complex_sets(graph, aliases, &mut out);
    check_disjointness(graph, &mut out);
    check_simple_sets(graph, &mut out);
    check_mappings(graph, &mut out);
    check_types(graph, &mut out);
    check_provenance(graph, &mut out);
    out.sort();
    out.dedup();
    out
}

pub fn has_errors(diags: &[Diagnostic]) -> bool {
    diags.iter().any(Diagnostic::is_error)
}

/// C1, C2, C5 and C6: one complex set at a time.
fn check_complex_sets(g: &Graph, aliases: &IntersectionAliases, out: &mut Vec<Diagnostic>) {
    for node in g.instances_of(voidext::COMPLEX_LINK_SET) {
        let Ok(d) = extract_complex_link_set(g, &node, aliases) else {
            out.push(Diagnostic::new(Code::C1, &node, "complex link set must be named by an IRI"));
            continue;
        };
        let mut structural = false;
        for f in &d.faults {
            match f {
                ComplexFault::MemberCount(n) => {
                    structural = true;
                    out.push(Diagnostic::new(
                        Code::C1,
                        &node,
                        format!("{n} voidext:intersectAt members, exactly 2 required"),
                    ));
                }
                ComplexFault::DanglingMember(m) => {
                    structural = true;
                    out.push(Diagnostic::new(
                        Code::C2,
                        &node,
                        format!("member {m} is neither a void:Linkset nor a voidext:SharedInstanceSet"),
                    ));
                }
                ComplexFault::MixedMembers => {
                    structural = true;
                    out.push(Diagnostic::new(
                        Code::C2,
                        &node,
                        "members mix link sets and shared instance sets",
                    ));
                }
                ComplexFault::UnknownIntersectionType(t) => {
                    out.push(Diagnostic::new(Code::C6, &node, format!("unknown intersection type {t}")));
                }
                ComplexFault::MultipleValues(p) if p == voidext::RECOMMENDED_MAPPING => {
                    out.push(Diagnostic::new(Code::C5, &node, "more than one recommended mapping"));
                }
                ComplexFault::MultipleValues(p) => {
                    out.push(Diagnostic::new(Code::C6, &node, format!("several values for <{p}>")));
                }
            }
        }

        if let Some(rec) = &d.recommended_mapping {
            if !d.members.contains(rec) {
                out.push(Diagnostic::new(
                    Code::C5,
                    &node,
                    format!("recommended mapping {rec} is not a member"),
                ));
            } else if g.object(&Term::Iri(rec.clone()), voidext::RESOURCE_MAPPING).is_none() {
                out.push(Diagnostic::new(
                    Code::C5,
                    &node,
                    format!("recommended member {rec} has no voidext:resourceMapping"),
                ));
            }
        } else if let Some(t) = g.object(&node, voidext::RECOMMENDED_MAPPING) {
            out.push(Diagnostic::new(Code::C5, &node, format!("recommended mapping {t} is not an IRI")));
        }

        if structural {
            continue;
        }
        if let (Some(stated), Some(derived)) = (d.intersection_type, d.derived_intersection) {
            if stated != derived {
                out.push(Diagnostic::new(
                    Code::C6,
                    &node,
                    format!(
                        "stated intersection type {} but the members' targets give {}",
                        stated.as_str(),
                        derived.as_str()
                    ),
                ));
            }
        }
    }
}

/// C3: complex link sets are not datasets.
fn check_disjointness(g: &Graph, out: &mut Vec<Diagnostic>) {
    for node in g.instances_of(voidext::COMPLEX_LINK_SET) {
        let mut why = Vec::new();
        if g.has_type(&node, void::DATASET) {
            why.push("typed void:Dataset");
        }
        if g.has_type(&node, void::LINKSET) {
            why.push("typed void:Linkset");
        }
        if !g.objects(&node, void::PROPERTY_PARTITION).is_empty() {
            why.push("carries void:propertyPartition");
        }
        if !why.is_empty() {
            out.push(Diagnostic::new(
                Code::C3,
                &node,
                format!("complex link set {}", why.join(" and ")),
            ));
        }
    }
}

const TARGETS: [&str; 3] = [void::TARGET, void::OBJECTS_TARGET, void::SUBJECTS_TARGET];

fn is_link_set_like(g: &Graph, t: &Term) -> bool {
    g.has_type(t, void::LINKSET) || g.has_type(t, voidext::SHARED_INSTANCE_SET)
}

fn shared_type(g: &Graph, t: &Term) -> Option<ClassExpression> {
    let types = g.objects(t, voidext::SHARED_INSTANCE_TYPE);
    match types.as_slice() {
        [one] => extract_class_expression(g, one).ok().map(|c| c.normalized()),
        _ => None,
    }
}

/// Two shared instance sets of the same (normalized) type may refer to each other.
fn same_type_shared(g: &Graph, a: &Term, b: &Term) -> bool {
    member_kind_of(g, a) == Some(MemberKind::SharedInstanceSet)
        && member_kind_of(g, b) == Some(MemberKind::SharedInstanceSet)
        && shared_type(g, a).is_some()
        && shared_type(g, a) == shared_type(g, b)
}

/// C4 and C8 on simple link sets, plus the one-predicate rule for every link set a complex set uses.
fn check_simple_sets(g: &Graph, out: &mut Vec<Diagnostic>) {
    let members: BTreeSet<Term> = g
        .matching(None, Some(voidext::INTERSECT_AT), None)
        .map(|t| t.object.clone())
        .collect();

    for node in g.instances_of(void::LINKSET) {
        let simple = g.has_type(&node, voidext::SIMPLE_LINK_SET);
        if !simple && !members.contains(&node) {
            continue;
        }
        let n = g.objects(&node, void::LINK_PREDICATE).len();
        if n != 1 {
            out.push(Diagnostic::new(
                Code::C4,
                &node,
                format!("{n} void:linkPredicate values, a link set has exactly one"),
            ));
        }
    }

    for node in g.instances_of(voidext::SIMPLE_LINK_SET) {
        let mut why = Vec::new();
        for p in TARGETS {
            for t in g.objects(&node, p) {
                if is_link_set_like(g, t) && !same_type_shared(g, &node, t) {
                    why.push(format!("targets link set {t}"));
                }
            }
        }
        for tr in g.matching(None, None, Some(&node)) {
            if TARGETS.contains(&tr.predicate.as_str())
                && is_link_set_like(g, &tr.subject)
                && !same_type_shared(g, &node, &tr.subject)
            {
                why.push(format!("is the target of {}", tr.subject));
            }
        }
        if members.contains(&node) {
            why.push("is a member of a complex link set".to_owned());
        }
        if !why.is_empty() {
            why.sort();
            why.dedup();
            out.push(Diagnostic::new(
                Code::C4,
                &node,
                format!("simple link set {}", why.join("; ")),
            ));
        }

        if g.has_type(&node, void::LINKSET)
            && g.object(&node, void::OBJECTS_TARGET).is_some()
            && g.object(&node, voidext::LINK_PREDICATE_RANGE).is_none()
        {
            out.push(Diagnostic::new(
                Code::C8,
                &node,
                "links through the predicate's object but states no voidext:linkPredicateRange",
            ));
        }
    }
}

/// C7: every mapping literal parses.
fn check_mappings(g: &Graph, out: &mut Vec<Diagnostic>) {
    for tr in g.matching(None, Some(voidext::RESOURCE_MAPPING), None) {
        let problem = match &tr.object {
            Term::Literal(l) => parse_mapping(l).err().map(|e| match e.offset {
                Some(o) => format!("resource mapping at offset {o}: {e}"),
                None => format!("resource mapping: {e}"),
            }),
            other => Some(format!("resource mapping {other} is not a literal")),
        };
        if let Some(msg) = problem {
            out.push(Diagnostic::new(Code::C7, &tr.subject, msg));
        }
    }
}

/// C8: class expressions are well formed and shared instance sets name their type.
fn check_types(g: &Graph, out: &mut Vec<Diagnostic>) {
    for p in [
        voidext::LINK_PREDICATE_DOMAIN,
        voidext::LINK_PREDICATE_RANGE,
        voidext::SHARED_INSTANCE_TYPE,
    ] {
        for tr in g.matching(None, Some(p), None) {
            if let Err(e) = extract_class_expression(g, &tr.object) {
                out.push(Diagnostic::new(Code::C8, &tr.subject, e.to_string()));
            }
        }
    }
    for node in g.instances_of(voidext::SHARED_INSTANCE_SET) {
        let n = g.objects(&node, voidext::SHARED_INSTANCE_TYPE).len();
        if n != 1 {
            out.push(Diagnostic::new(
                Code::C8,
                &node,
                format!("{n} voidext:sharedInstanceType values, exactly 1 required"),
            ));
        }
    }
}

/// C9: virtual link sets should be dated.
fn check_provenance(g: &Graph, out: &mut Vec<Diagnostic>) {
    let mut nodes: BTreeSet<Term> = BTreeSet::new();
    for c in [voidext::VIRTUAL_LINK_SET, voidext::COMPLEX_LINK_SET, voidext::SIMPLE_LINK_SET] {
        nodes.extend(g.instances_of(c));
    }
    for node in nodes.into_iter().filter(|n| is_virtual_link_set(g, n)) {
        let dates = Dates::read(g, &node);
        if dates.is_empty() {
            out.push(Diagnostic::new(
                Code::C9,
                &node,
                "no dcterms:issued or dcterms:modified date",
            ));
        } else if let Err(e) = dates.latest() {
            out.push(Diagnostic::new(Code::C9, &node, e));
        }
    }
}
