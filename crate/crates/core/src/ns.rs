//! Namespace IRIs and the well-known prefix bindings used throughout the crate.

use crate::rdf::PrefixMap;

macro_rules! terms {
    ($ns:literal; $($name:ident = $local:literal),* $(,)?) => {
        pub const NS: &str = $ns;
        $(pub const $name: &str = concat!($ns, $local);)*
    };
}

pub mod rdf {
    terms!("http://www.w3.org/1999/02/22-rdf-syntax-ns#";
        TYPE = "type", FIRST = "first", REST = "rest", NIL = "nil",
        LANG_STRING = "langString", VALUE = "value");
}

pub mod rdfs {
    terms!("http://www.w3.org/2000/01/rdf-schema#";
        LITERAL = "Literal", LABEL = "label", SUB_CLASS_OF = "subClassOf", DOMAIN = "domain");
}

pub mod xsd {
    terms!("http://www.w3.org/2001/XMLSchema#";
        STRING = "string", INTEGER = "integer", DECIMAL = "decimal", DOUBLE = "double",
        BOOLEAN = "boolean", DATE = "date", DATE_TIME = "dateTime", G_YEAR_MONTH = "gYearMonth");
}

pub mod owl {
    terms!("http://www.w3.org/2002/07/owl#";
        UNION_OF = "unionOf", INTERSECTION_OF = "intersectionOf", CLASS = "Class");
}

pub mod void {
    terms!("http://rdfs.org/ns/void#";
        DATASET = "Dataset", LINKSET = "Linkset", TARGET = "target",
        OBJECTS_TARGET = "objectsTarget", SUBJECTS_TARGET = "subjectsTarget",
        LINK_PREDICATE = "linkPredicate", SUBSET = "subset",
        PROPERTY_PARTITION = "propertyPartition", CLASS_PARTITION = "classPartition",
        CLASS = "class", PROPERTY = "property", SPARQL_ENDPOINT = "sparqlEndpoint");
}

pub mod voidext {
    terms!("http://purl.org/query/voidext#";
        VIRTUAL_LINK_SET = "VirtualLinkSet", COMPLEX_LINK_SET = "ComplexLinkSet",
        SIMPLE_LINK_SET = "SimpleLinkSet", SHARED_INSTANCE_SET = "SharedInstanceSet",
        INTERSECT_AT = "intersectAt", INTERSECTION_TYPE = "intersectionType",
        LINK_PREDICATE_DOMAIN = "linkPredicateDomain", LINK_PREDICATE_RANGE = "linkPredicateRange",
        RESOURCE_MAPPING = "resourceMapping", RECOMMENDED_MAPPING = "recommendedMapping",
        SHARED_INSTANCE_TYPE = "sharedInstanceType",
        HAS_PERFORMANCE_MEASURE = "hasPerformanceMeasure",
        QUERY_LINKSET = "queryLinkset", QUERY_SHARED_INSTANCE_SET = "querySharedInstanceSet",
        SUBJECT_OBJECT = "SUBJECT_OBJECT", OBJECT_OBJECT = "OBJECT_OBJECT",
        SUBJECT_SUBJECT = "SUBJECT_SUBJECT");
}

pub mod dcterms {
    terms!("http://purl.org/dc/terms/";
        ISSUED = "issued", MODIFIED = "modified", TITLE = "title", SUBJECT = "subject");
}

pub mod mexperf {
    terms!("http://mex.aksw.org/mex-perf#"; PERFORMANCE_MEASURE = "PerformanceMeasure");
}

/// The prefix bindings assumed by the VoIDext examples, plus `owl:`, `xsd:`, `dct:` and `mexperf:`.
pub const WELL_KNOWN_PREFIXES: &[(&str, &str)] = &[
    ("rdfs", rdfs::NS),
    ("rdf", rdf::NS),
    ("orth", "http://purl.org/net/orth#"),
    ("up", "http://purl.uniprot.org/core/"),
    ("oboowl", "http://www.geneontology.org/formats/oboInOwl#"),
    ("cco", "http://rdf.ebi.ac.uk/terms/chembl#"),
    ("chembl", "http://rdf.ebi.ac.uk/resource/chembl/molecule/"),
    ("ex", "http://example.org/voidext#"),
    ("dbo", "http://dbpedia.org/ontology/"),
    ("skos", "http://www.w3.org/2004/02/skos/core#"),
    ("dbr", "http://dbpedia.org/resource/"),
    ("dbrc", "http://dbpedia.org/resource/Category:"),
    ("dbp", "http://dbpedia.org/property/"),
    ("lindas", "https://gont.ch/"),
    ("dcterms", dcterms::NS),
    ("dct", dcterms::NS),
    ("biopax", "http://www.biopax.org/release/biopax-level3.owl#"),
    ("lscr", "http://purl.org/lscr#"),
    ("void", void::NS),
    ("voidext", voidext::NS),
    ("bioquery", "http://purl.org/query/bioquery#"),
    ("owl", owl::NS),
    ("xsd", xsd::NS),
    ("mexperf", mexperf::NS),
];

pub fn well_known_prefixes() -> PrefixMap {
    let mut map = PrefixMap::new();
    for (label, ns) in WELL_KNOWN_PREFIXES {
        map.insert(*label, *ns);
    }
    map
}
