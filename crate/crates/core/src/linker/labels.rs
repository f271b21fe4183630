use std::collections::BTreeMap;

use unicode_normalization::UnicodeNormalization;

use crate::index::{DatasetIndex, TermId, TermPartition};
use crate::rdf::Term;

/// NFC, lowercase, internal whitespace collapsed, outer whitespace removed.
pub fn normalize_label(raw: &str) -> String {
    let lowered: String = raw.nfc().collect::<String>().to_lowercase();
    lowered.split_whitespace().collect::<Vec<_>>().join(" ")
}

/// Normalized labels per instance.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LabelMap {
    /// Sorted, deduplicated labels of every labeled instance.
    pub labels: BTreeMap<TermId, Vec<String>>,
    /// Instances without any label; they take no part in matching.
    pub unlabeled: usize,
}

impl LabelMap {
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn get(&self, id: TermId) -> Option<&[String]> {
        self.labels.get(&id).map(Vec::as_slice)
    }

    pub fn iter(&self) -> impl Iterator<Item = (TermId, &[String])> {
        self.labels.iter().map(|(&id, l)| (id, l.as_slice()))
    }

    /// Builds a map from raw labels; used for label sets that do not come
    /// from an index.
    pub fn from_raw<'a>(entries: impl IntoIterator<Item = (TermId, &'a str)>) -> Self {
        let mut labels: BTreeMap<TermId, Vec<String>> = BTreeMap::new();
        for (id, raw) in entries {
            labels.entry(id).or_default().push(normalize_label(raw));
        }
        for l in labels.values_mut() {
            l.sort_unstable();
            l.dedup();
        }
        Self { labels, unlabeled: 0 }
    }
}

/// Collects the literal objects of `label_predicates` for every instance.
pub fn extract_labels(index: &DatasetIndex, partition: &TermPartition, label_predicates: &[String]) -> LabelMap {
    let predicates: Vec<TermId> = label_predicates.iter().filter_map(|p| index.iri_id(p)).collect();
    let mut map = LabelMap::default();
    for &instance in partition.instances() {
        let mut labels: Vec<String> = index
            .outgoing(instance)
            .iter()
            .filter(|t| predicates.contains(&t.predicate))
            .filter_map(|t| match index.term(t.object) {
                Some(Term::Literal { lexical, .. }) => Some(normalize_label(lexical)),
                _ => None,
            })
            .collect();
        if labels.is_empty() {
            map.unlabeled += 1;
            continue;
        }
        labels.sort_unstable();
        labels.dedup();
        map.labels.insert(instance, labels);
    }
    map
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::index::IndexConfig;
    use crate::rdf::TripleRecord;
    use crate::vocab;

    #[test]
    fn normalization_rules() {
        assert_eq!(normalize_label("  University of  Mannheim "), "university of mannheim");
        assert_eq!(normalize_label("Cafe\u{301}\tX"), "caf\u{e9} x");
    }

    #[test]
    fn multilingual_labels_are_kept() {
        let x = Term::iri("http://ex.org/x");
        let label = Term::iri(vocab::RDFS_LABEL);
        let triples = vec![
            TripleRecord::new(x.clone(), Term::iri(vocab::RDF_TYPE), Term::iri("http://ex.org/C")).unwrap(),
            TripleRecord::new(x.clone(), label.clone(), Term::lang_literal("Mannheim", "de")).unwrap(),
            TripleRecord::new(x.clone(), label.clone(), Term::lang_literal("Mannheim City", "en")).unwrap(),
            TripleRecord::new(
                Term::iri("http://ex.org/y"),
                Term::iri(vocab::RDF_TYPE),
                Term::iri("http://ex.org/C"),
            )
            .unwrap(),
        ];
        let index = DatasetIndex::build(triples, IndexConfig::default()).unwrap();
        let partition = TermPartition::compute(&index);
        let map = extract_labels(&index, &partition, &[vocab::RDFS_LABEL.to_string()]);
        assert_eq!(map.len(), 1);
        assert_eq!(map.unlabeled, 1);
        let id = index.id_of(&x).unwrap();
        assert_eq!(
            map.get(id).unwrap(),
            &["mannheim".to_string(), "mannheim city".to_string()]
        );
    }
}
