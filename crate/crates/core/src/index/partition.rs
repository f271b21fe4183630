use super::{DatasetIndex, TermId};
use crate::rdf::Term;
use crate::vocab;

/// Split of a graph's terms into classes, instances and relations.
///
/// Rules:
/// - classes are IRIs typed `owl:Class`/`rdfs:Class`, IRIs on either side of
///   `rdfs:subClassOf`, IRI objects of `rdf:type` whose subject is not one of
///   the former, and the metaclasses themselves when used as types;
/// - instances are subjects of `rdf:type` statements pointing at a
///   non-meta class. A term that is both is kept in both sets;
/// - object and data relations are non-reserved predicates used with
///   resource or literal objects respectively, plus declared
///   `owl:ObjectProperty`/`owl:DatatypeProperty` terms.
#[derive(Clone, Debug, Default)]
pub struct TermPartition {
    classes: Vec<TermId>,
    instances: Vec<TermId>,
    object_relations: Vec<TermId>,
    data_relations: Vec<TermId>,
    is_class: Vec<bool>,
    is_instance: Vec<bool>,
}

fn collect(flags: &[bool]) -> Vec<TermId> {
    flags
        .iter()
        .enumerate()
        .filter(|(_, &f)| f)
        .map(|(i, _)| i as TermId)
        .collect()
}

impl TermPartition {
    pub fn compute(index: &DatasetIndex) -> Self {
        let n = index.term_count();
        let is_iri = |id: TermId| matches!(index.term(id), Some(Term::Iri(_)));
        let iri_of = |id: TermId| index.term(id).and_then(Term::as_iri);

        let mut is_class = vec![false; n];
        let type_id = index.iri_id(vocab::RDF_TYPE);
        let subclass_id = index.iri_id(vocab::RDFS_SUBCLASS_OF);

        // declared classes and subclass participants
        if let Some(type_id) = type_id {
            for t in index.with_predicate(type_id) {
                if iri_of(t.object).is_some_and(vocab::is_metaclass) && is_iri(t.subject) {
                    is_class[t.subject as usize] = true;
                }
            }
        }
        if let Some(subclass_id) = subclass_id {
            for t in index.with_predicate(subclass_id) {
                for id in [t.subject, t.object] {
                    if is_iri(id) {
                        is_class[id as usize] = true;
                    }
                }
            }
        }

        // types of non-class subjects, and metaclasses used as types
        if let Some(type_id) = type_id {
            let base = is_class.clone();
            for t in index.with_predicate(type_id) {
                let Some(object) = iri_of(t.object) else { continue };
                if vocab::is_metaclass(object)
                    || (!base[t.subject as usize] && (!vocab::is_builtin(object) || object == vocab::OWL_THING))
                {
                    is_class[t.object as usize] = true;
                }
            }
        }

        let mut is_instance = vec![false; n];
        if let Some(type_id) = type_id {
            for t in index.with_predicate(type_id) {
                let target_is_domain_class =
                    is_class[t.object as usize] && !iri_of(t.object).is_some_and(vocab::is_metaclass);
                if target_is_domain_class {
                    is_instance[t.subject as usize] = true;
                }
            }
        }

        let mut is_object_rel = vec![false; n];
        let mut is_data_rel = vec![false; n];
        for t in index.triples() {
            if index.is_reserved_predicate(t.predicate) {
                continue;
            }
            match index.term(t.object) {
                Some(Term::Literal { .. }) => is_data_rel[t.predicate as usize] = true,
                Some(_) => is_object_rel[t.predicate as usize] = true,
                None => {}
            }
        }
        if let Some(type_id) = type_id {
            for t in index.with_predicate(type_id) {
                if !is_iri(t.subject) || index.is_reserved_predicate(t.subject) {
                    continue;
                }
                match iri_of(t.object) {
                    Some(vocab::OWL_OBJECT_PROPERTY) => is_object_rel[t.subject as usize] = true,
                    Some(vocab::OWL_DATATYPE_PROPERTY) => is_data_rel[t.subject as usize] = true,
                    _ => {}
                }
            }
        }

        Self {
            classes: collect(&is_class),
            instances: collect(&is_instance),
            object_relations: collect(&is_object_rel),
            data_relations: collect(&is_data_rel),
            is_class,
            is_instance,
        }
    }

    pub fn classes(&self) -> &[TermId] {
        &self.classes
    }

    pub fn instances(&self) -> &[TermId] {
        &self.instances
    }

    pub fn object_relations(&self) -> &[TermId] {
        &self.object_relations
    }

    pub fn data_relations(&self) -> &[TermId] {
        &self.data_relations
    }

    pub fn is_class(&self, id: TermId) -> bool {
        self.is_class.get(id as usize).copied().unwrap_or(false)
    }

    pub fn is_instance(&self, id: TermId) -> bool {
        self.is_instance.get(id as usize).copied().unwrap_or(false)
    }

    /// Terms recorded both as class and as instance.
    pub fn dual_typed_count(&self) -> usize {
        self.instances.iter().filter(|&&i| self.is_class(i)).count()
    }

    /// Size of the union of object and data relations.
    pub fn relation_count(&self) -> usize {
        let mut n = self.object_relations.len();
        n += self
            .data_relations
            .iter()
            .filter(|id| self.object_relations.binary_search(id).is_err())
            .count();
        n
    }

    /// Predicates used with both resource and literal objects.
    pub fn mixed_relation_count(&self) -> usize {
        self.object_relations.len() + self.data_relations.len() - self.relation_count()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::index::IndexConfig;
    use crate::rdf::TripleRecord;
    use std::collections::BTreeSet;

    fn term(s: &str) -> Term {
        if s.starts_with("http") {
            Term::iri(s)
        } else {
            Term::iri(format!("http://ex.org/{s}"))
        }
    }

    fn build(triples: &[(&str, &str, &str)]) -> DatasetIndex {
        DatasetIndex::build(
            triples
                .iter()
                .map(|(s, p, o)| TripleRecord::new(term(s), term(p), term(o)).unwrap()),
            IndexConfig::default(),
        )
        .unwrap()
    }

    fn names(index: &DatasetIndex, ids: &[TermId]) -> BTreeSet<String> {
        ids.iter()
            .map(|&i| {
                index
                    .term(i)
                    .unwrap()
                    .lexical()
                    .trim_start_matches("http://ex.org/")
                    .to_string()
            })
            .collect()
    }

    #[test]
    fn typed_instance_and_declared_class() {
        let index = build(&[("A", vocab::RDF_TYPE, "C"), ("C", vocab::RDF_TYPE, vocab::OWL_CLASS)]);
        let p = TermPartition::compute(&index);
        assert_eq!(
            names(&index, p.classes()),
            ["C", vocab::OWL_CLASS].iter().map(|s| s.to_string()).collect()
        );
        assert_eq!(names(&index, p.instances()), ["A".to_string()].into());
        assert_eq!(p.dual_typed_count(), 0);
    }

    #[test]
    fn untyped_graph_has_no_classes() {
        let index = build(&[("A", "p", "B")]);
        let p = TermPartition::compute(&index);
        assert!(p.classes().is_empty());
        assert!(p.instances().is_empty());
        assert_eq!(names(&index, p.object_relations()), ["p".to_string()].into());
    }

    #[test]
    fn subclass_terms_are_classes() {
        let index = build(&[("C", vocab::RDFS_SUBCLASS_OF, "D")]);
        let p = TermPartition::compute(&index);
        assert_eq!(names(&index, p.classes()), ["C".to_string(), "D".to_string()].into());
        assert!(p.instances().is_empty());
    }

    #[test]
    fn metapattern_terms_are_dual_typed() {
        let index = build(&[
            ("x", vocab::RDF_TYPE, "Species"),
            ("Species", vocab::RDFS_SUBCLASS_OF, "Taxon"),
            ("Species", vocab::RDF_TYPE, "Rank"),
            ("y", vocab::RDF_TYPE, "Rank"),
        ]);
        let p = TermPartition::compute(&index);
        assert!(p.is_class(index.id_of(&term("Species")).unwrap()));
        assert!(p.is_instance(index.id_of(&term("Species")).unwrap()));
        assert_eq!(p.dual_typed_count(), 1);
    }

    #[test]
    fn property_declarations_are_not_instances() {
        let index = build(&[
            ("p", vocab::RDF_TYPE, vocab::OWL_OBJECT_PROPERTY),
            ("q", vocab::RDF_TYPE, vocab::OWL_DATATYPE_PROPERTY),
        ]);
        let p = TermPartition::compute(&index);
        assert!(p.classes().is_empty());
        assert!(p.instances().is_empty());
        assert_eq!(p.relation_count(), 2);
    }
}
