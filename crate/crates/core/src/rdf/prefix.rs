use std::collections::BTreeMap;

/// Prefix label to namespace IRI bindings, iterated sorted by label.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PrefixMap {
    entries: BTreeMap<String, String>,
}

impl PrefixMap {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, label: impl Into<String>, namespace: impl Into<String>) {
        self.entries.insert(label.into(), namespace.into());
    }

    pub fn get(&self, label: &str) -> Option<&str> {
        self.entries.get(label).map(String::as_str)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &str)> + '_ {
        self.entries.iter().map(|(k, v)| (k.as_str(), v.as_str()))
    }

    /// Expands `label:local` into a full IRI string.
    pub fn expand(&self, prefixed: &str) -> Option<String> {
        let (label, local) = prefixed.split_once(':')?;
        self.get(label).map(|ns| format!("{ns}{local}"))
    }

    /// Compacts an IRI using the longest matching namespace whose remainder is a
    /// local name that can be written without escapes. Ties on namespace length
    /// go to the alphabetically first label.
    pub fn compact(&self, iri: &str) -> Option<(String, String)> {
        self.entries
            .iter()
            .filter(|(_, ns)| iri.starts_with(ns.as_str()))
            .filter(|(_, ns)| is_plain_local(&iri[ns.len()..]))
            .max_by(|(la, a), (lb, b)| a.len().cmp(&b.len()).then(lb.cmp(la)))
            .map(|(label, ns)| (label.clone(), iri[ns.len()..].to_owned()))
    }

    pub fn compact_str(&self, iri: &str) -> Option<String> {
        self.compact(iri).map(|(l, local)| format!("{l}:{local}"))
    }

    /// Keeps only bindings whose label satisfies `keep`.
    pub fn retain(&mut self, mut keep: impl FnMut(&str) -> bool) {
        self.entries.retain(|k, _| keep(k));
    }
}

impl<K: Into<String>, V: Into<String>> FromIterator<(K, V)> for PrefixMap {
    fn from_iter<I: IntoIterator<Item = (K, V)>>(iter: I) -> Self {
        let mut map = PrefixMap::new();
        for (k, v) in iter {
            map.insert(k, v);
        }
        map
    }
}

/// A conservative subset of Turtle's PN_LOCAL that needs no escaping.
pub(crate) fn is_plain_local(local: &str) -> bool {
    let mut chars = local.chars();
    let Some(first) = chars.next() else {
        return true;
    };
    let body_ok = |c: char| c.is_alphanumeric() || matches!(c, '_' | '-' | '.' | ':');
    (first.is_alphanumeric() || first == '_' || first == ':')
        && chars.all(body_ok)
        && !local.ends_with('.')
}

/// Valid Turtle PN_PREFIX labels (empty label allowed).
pub(crate) fn is_valid_prefix_label(label: &str) -> bool {
    let mut chars = label.chars();
    match chars.next() {
        None => true,
        Some(c) if c.is_alphabetic() => {
            chars.all(|c| c.is_alphanumeric() || matches!(c, '_' | '-' | '.')) && !label.ends_with('.')
        }
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn table() -> PrefixMap {
        crate::ns::well_known_prefixes()
    }

    #[test]
    fn longest_namespace_wins() {
        let map = table();
        assert_eq!(
            map.compact_str("http://dbpedia.org/resource/Category:Cantons_of_Switzerland"),
            Some("dbrc:Cantons_of_Switzerland".to_owned())
        );
        assert_eq!(
            map.compact_str("http://dbpedia.org/resource/Vaud"),
            Some("dbr:Vaud".to_owned())
        );
    }

    #[test]
    fn unwritable_locals_are_not_compacted() {
        let map = table();
        assert_eq!(map.compact_str("http://dbpedia.org/resource/a/b"), None);
        assert_eq!(map.compact_str("http://unknown.example/x"), None);
    }

    #[test]
    fn expand_unknown_prefix() {
        assert_eq!(table().expand("nope:x"), None);
        assert_eq!(
            table().expand("voidext:ComplexLinkSet").as_deref(),
            Some("http://purl.org/query/voidext#ComplexLinkSet")
        );
    }

    proptest! {
        #[test]
        fn compact_then_expand_is_identity(
            ns in prop::sample::select(crate::ns::WELL_KNOWN_PREFIXES.to_vec()),
            local in "[A-Za-z_][A-Za-z0-9_-]{0,12}",
        ) {
            let map = table();
            let iri = format!("{}{}", ns.1, local);
            let compact = map.compact_str(&iri).expect("a namespace matches");
            prop_assert_eq!(map.expand(&compact), Some(iri));
        }
    }
}
