//! Graph-level metrics: size, linkage degree, schema size and shape,
//! and the description logic expressivity of the schema.

mod expressivity;

pub use expressivity::{detect_expressivity, Base, Cardinality, Expressivity};

use serde::{Deserialize, Serialize};

use crate::index::{ClassHierarchy, DatasetIndex, DegreeTable, TermPartition};

/// Lower median: the element at 1-based position ceil(n/2) of the sorted
/// sequence. Zero for an empty sequence.
pub fn lower_median(values: &[usize]) -> usize {
    if values.is_empty() {
        return 0;
    }
    let mut v = values.to_vec();
    let mid = (v.len() - 1) / 2;
    *v.select_nth_unstable(mid).1
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct GeneralMetrics {
    #[serde(rename = "instanceCount")]
    pub instances: usize,
    #[serde(rename = "assertionCount")]
    pub assertions: usize,
    pub inter_instance_edges: usize,
    pub avg_linking_degree: f64,
    #[serde(rename = "medianInDegree")]
    pub median_ingoing_edges: usize,
    #[serde(rename = "medianOutDegree")]
    pub median_outgoing_edges: usize,
    pub dual_typed_terms: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SchemaMetrics {
    #[serde(rename = "classCount")]
    pub classes: usize,
    #[serde(rename = "relationCount")]
    pub relations: usize,
    #[serde(rename = "avgDepth")]
    pub avg_depth_of_class_tree: f64,
    #[serde(rename = "avgBranching")]
    pub avg_branching_factor_of_class_tree: f64,
}

/// All Table-1 style metrics of one graph.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ProfileReport {
    pub graph: String,
    #[serde(flatten)]
    pub general: GeneralMetrics,
    #[serde(flatten)]
    pub schema: SchemaMetrics,
    #[serde(rename = "expressivity")]
    pub ontology_complexity: String,
}

impl ProfileReport {
    pub fn compute(
        graph: impl Into<String>,
        index: &DatasetIndex,
        partition: &TermPartition,
        hierarchy: &ClassHierarchy,
    ) -> Self {
        Self {
            graph: graph.into(),
            general: general_metrics(index, partition),
            schema: schema_metrics(hierarchy, partition),
            ontology_complexity: detect_expressivity(index).to_string(),
        }
    }
}

/// Instance and assertion counts, linking degree and degree medians.
pub fn general_metrics(index: &DatasetIndex, partition: &TermPartition) -> GeneralMetrics {
    general_from_degrees(&index.degree_table(partition), partition.dual_typed_count())
}

pub(crate) fn general_from_degrees(degrees: &DegreeTable, dual_typed_terms: usize) -> GeneralMetrics {
    let instances = degrees.out_all.len();
    let inter_instance_edges: usize = degrees.out_entity.iter().sum();
    GeneralMetrics {
        instances,
        assertions: degrees.out_all.iter().sum(),
        inter_instance_edges,
        avg_linking_degree: if instances == 0 {
            0.0
        } else {
            inter_instance_edges as f64 / instances as f64
        },
        median_ingoing_edges: lower_median(&degrees.in_entity),
        median_outgoing_edges: lower_median(&degrees.out_all),
        dual_typed_terms,
    }
}

/// Class and relation counts plus average depth and branching of the
/// condensed class tree.
pub fn schema_metrics(hierarchy: &ClassHierarchy, partition: &TermPartition) -> SchemaMetrics {
    let nodes = hierarchy.nodes();
    let avg_depth = if nodes.is_empty() {
        0.0
    } else {
        nodes.iter().map(|n| n.depth as f64).sum::<f64>() / nodes.len() as f64
    };
    let branching: Vec<usize> = nodes.iter().map(|n| n.children.len()).filter(|&c| c > 0).collect();
    let avg_branching = if branching.is_empty() {
        0.0
    } else {
        branching.iter().sum::<usize>() as f64 / branching.len() as f64
    };
    SchemaMetrics {
        classes: partition.classes().len(),
        relations: partition.relation_count(),
        avg_depth_of_class_tree: avg_depth,
        avg_branching_factor_of_class_tree: avg_branching,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::index::IndexConfig;
    use crate::rdf::{Term, TripleRecord};
    use crate::vocab;

    fn term(s: &str) -> Term {
        if s.starts_with("http") {
            Term::iri(s)
        } else if let Some(lit) = s.strip_prefix('"') {
            Term::plain_literal(lit)
        } else {
            Term::iri(format!("http://ex.org/{s}"))
        }
    }

    fn profile(triples: &[(&str, &str, &str)]) -> ProfileReport {
        let index = DatasetIndex::build(
            triples
                .iter()
                .map(|(s, p, o)| TripleRecord::new(term(s), term(p), term(o)).unwrap()),
            IndexConfig::default(),
        )
        .unwrap();
        let partition = TermPartition::compute(&index);
        let hierarchy = ClassHierarchy::build(&index, &partition);
        ProfileReport::compute("test", &index, &partition, &hierarchy)
    }

    const TYPE: &str = vocab::RDF_TYPE;
    const SUB: &str = vocab::RDFS_SUBCLASS_OF;

    #[test]
    fn lower_median_convention() {
        assert_eq!(lower_median(&[]), 0);
        assert_eq!(lower_median(&[5]), 5);
        assert_eq!(lower_median(&[0, 15]), 0);
        assert_eq!(lower_median(&[3, 1, 2]), 2);
        assert_eq!(lower_median(&[4, 1, 3, 2]), 2);
    }

    #[test]
    fn empty_graph() {
        let report = profile(&[]);
        assert_eq!(report.general, GeneralMetrics::default());
        assert_eq!(report.schema, SchemaMetrics::default());
        assert_eq!(report.ontology_complexity, "AL");
    }

    #[test]
    fn linking_degree_over_three_instances() {
        let report = profile(&[
            ("a", TYPE, "C"),
            ("b", TYPE, "C"),
            ("c", TYPE, "C"),
            ("c", "p", "a"),
            ("c", "p", "b"),
            ("c", "q", "a"),
            ("c", "q", "b"),
            ("c", "name", "\"see"),
        ]);
        let g = &report.general;
        assert_eq!(g.instances, 3);
        assert_eq!(g.inter_instance_edges, 4);
        assert!((g.avg_linking_degree - 4.0 / 3.0).abs() < 1e-12);
        // in-degrees {2, 2, 0}, out-degrees {0, 0, 5}
        assert_eq!(g.median_ingoing_edges, 2);
        assert_eq!(g.median_outgoing_edges, 0);
        assert_eq!(g.assertions, 5);
    }

    #[test]
    fn chain_schema() {
        let s = profile(&[("A", SUB, "B"), ("B", SUB, "C")]).schema;
        assert_eq!(s.classes, 3);
        assert!((s.avg_depth_of_class_tree - 1.0).abs() < 1e-12);
        assert!((s.avg_branching_factor_of_class_tree - 1.0).abs() < 1e-12);
    }

    #[test]
    fn star_schema() {
        let s = profile(&[("A", SUB, "R"), ("B", SUB, "R"), ("C", SUB, "R")]).schema;
        assert!((s.avg_depth_of_class_tree - 0.75).abs() < 1e-12);
        assert!((s.avg_branching_factor_of_class_tree - 3.0).abs() < 1e-12);
    }

    #[test]
    fn adding_triples_never_decreases_assertions() {
        let mut triples = vec![("a", TYPE, "C"), ("b", TYPE, "C")];
        let mut last = profile(&triples).general.assertions;
        for extra in [("a", "p", "b"), ("a", "name", "\"x"), ("z", "p", "a"), ("b", "p", "z")] {
            triples.push(extra);
            let now = profile(&triples).general.assertions;
            assert!(now >= last);
            last = now;
        }
    }
}
