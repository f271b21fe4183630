//! Per-class detail statistics: instance count, average entity out-degree
//! and degree medians for canonical classes mapped onto graph-specific IRIs.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::index::{ClassHierarchy, DatasetIndex, DegreeMode, Direction, TermId, TermPartition};
use crate::profile::lower_median;

const DEFAULT_MAPPING: &str = include_str!("../data/prominent_classes.json");

/// One canonical class and the IRIs that stand for it in each graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ClassMapping {
    pub canonical_name: String,
    #[serde(default)]
    pub per_graph: BTreeMap<String, Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassMappingFile {
    pub classes: Vec<ClassMapping>,
}

impl ClassMappingFile {
    /// The ten prominent classes with DBpedia and Wikidata IRIs.
    pub fn prominent_classes() -> Self {
        serde_json::from_str(DEFAULT_MAPPING).expect("bundled class mapping is valid JSON")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    pub fn load(path: impl AsRef<Path>) -> std::io::Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_json(&text).map_err(std::io::Error::other)
    }
}

/// Deduplicated members of a set of classes.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MemberSet {
    pub members: Vec<TermId>,
    /// Mapped IRIs that are not classes of the graph.
    pub unresolved: Vec<String>,
}

/// Union of the transitive instance populations of `class_iris`.
pub fn class_members(index: &DatasetIndex, hierarchy: &ClassHierarchy, class_iris: &[String]) -> MemberSet {
    let mut nodes = Vec::new();
    let mut unresolved = Vec::new();
    for iri in class_iris {
        match index.iri_id(iri).and_then(|id| hierarchy.node_of(id)) {
            Some(n) => nodes.push(n),
            None => unresolved.push(iri.clone()),
        }
    }
    MemberSet {
        members: hierarchy.members(&nodes),
        unresolved,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ClassDetail {
    pub canonical_name: String,
    #[serde(rename = "instanceCount")]
    pub instances: usize,
    pub avg_degree: f64,
    pub median_in: usize,
    pub median_out: usize,
    /// No members in this graph; rendered as "-" cells.
    pub absent: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub unresolved_iris: Vec<String>,
}

/// Statistics over `members`, with the same degree semantics as the
/// graph-level profile.
pub fn class_stats(
    index: &DatasetIndex,
    partition: &TermPartition,
    canonical_name: &str,
    members: &[TermId],
) -> ClassDetail {
    let mut out_entity = 0usize;
    let mut in_entity = Vec::with_capacity(members.len());
    let mut out_all = Vec::with_capacity(members.len());
    for &m in members {
        out_entity += index.degree_unchecked(partition, m, Direction::Out, DegreeMode::EntityEdges);
        in_entity.push(index.degree_unchecked(partition, m, Direction::In, DegreeMode::EntityEdges));
        out_all.push(index.degree_unchecked(partition, m, Direction::Out, DegreeMode::AllAssertions));
    }
    let n = members.len();
    ClassDetail {
        canonical_name: canonical_name.to_string(),
        instances: n,
        avg_degree: if n == 0 { 0.0 } else { out_entity as f64 / n as f64 },
        median_in: lower_median(&in_entity),
        median_out: lower_median(&out_all),
        absent: n == 0,
        unresolved_iris: Vec::new(),
    }
}

/// Detail rows for every mapped class of `graph`, in mapping order.
pub fn class_table(
    index: &DatasetIndex,
    partition: &TermPartition,
    hierarchy: &ClassHierarchy,
    mapping: &ClassMappingFile,
    graph: &str,
) -> Vec<ClassDetail> {
    mapping
        .classes
        .par_iter()
        .map(|class| {
            let iris = class.per_graph.get(graph).map(Vec::as_slice).unwrap_or_default();
            let set = class_members(index, hierarchy, iris);
            let mut detail = class_stats(index, partition, &class.canonical_name, &set.members);
            detail.unresolved_iris = set.unresolved;
            detail
        })
        .collect()
}

/// Writes the rows as CSV with absent classes rendered as "-".
pub fn write_class_csv(rows: &[ClassDetail], w: impl Write) -> csv::Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(["Class", "Instances", "Avg. Deg.", "Med-in", "Med-out"])?;
    for r in rows {
        if r.absent {
            out.write_record([r.canonical_name.as_str(), "0", "-", "-", "-"])?;
        } else {
            out.write_record([
                r.canonical_name.clone(),
                r.instances.to_string(),
                format!("{:.2}", r.avg_degree),
                r.median_in.to_string(),
                r.median_out.to_string(),
            ])?;
        }
    }
    out.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::index::IndexConfig;
    use crate::rdf::{Term, TripleRecord};
    use crate::vocab;

    fn setup(triples: &[(&str, &str, &str)]) -> (DatasetIndex, TermPartition, ClassHierarchy) {
        let term = |s: &str| {
            if s.starts_with("http") {
                Term::iri(s)
            } else {
                Term::iri(format!("http://ex.org/{s}"))
            }
        };
        let index = DatasetIndex::build(
            triples
                .iter()
                .map(|(s, p, o)| TripleRecord::new(term(s), term(p), term(o)).unwrap()),
            IndexConfig::default(),
        )
        .unwrap();
        let partition = TermPartition::compute(&index);
        let hierarchy = ClassHierarchy::build(&index, &partition);
        (index, partition, hierarchy)
    }

    const TYPE: &str = vocab::RDF_TYPE;
    const SUB: &str = vocab::RDFS_SUBCLASS_OF;

    fn iris(names: &[&str]) -> Vec<String> {
        names.iter().map(|n| format!("http://ex.org/{n}")).collect()
    }

    #[test]
    fn class_without_instances() {
        let (index, _, h) = setup(&[("C", SUB, "D")]);
        let set = class_members(&index, &h, &iris(&["C"]));
        assert!(set.members.is_empty());
        assert!(set.unresolved.is_empty());
    }

    #[test]
    fn overlapping_classes_union_once() {
        let (index, _, h) = setup(&[("x", TYPE, "A"), ("y", TYPE, "A"), ("y", TYPE, "B"), ("z", TYPE, "B")]);
        let set = class_members(&index, &h, &iris(&["A", "B", "Missing"]));
        assert_eq!(set.members.len(), 3);
        assert_eq!(set.unresolved, iris(&["Missing"]));
    }

    #[test]
    fn singleton_member_degree() {
        let (index, p, h) = setup(&[
            ("x", TYPE, "A"),
            ("y", TYPE, "B"),
            ("z", TYPE, "B"),
            ("x", "knows", "y"),
            ("x", "knows", "z"),
        ]);
        let set = class_members(&index, &h, &iris(&["A"]));
        let d = class_stats(&index, &p, "A", &set.members);
        assert_eq!(d.instances, 1);
        assert!((d.avg_degree - 2.0).abs() < 1e-12);
        assert_eq!(d.median_out, 2);
        assert_eq!(d.median_in, 0);
    }

    #[test]
    fn empty_members_are_absent() {
        let (index, p, _) = setup(&[]);
        let d = class_stats(&index, &p, "Gene", &[]);
        assert!(d.absent);
        assert_eq!((d.instances, d.median_in, d.median_out), (0, 0, 0));
        let mut buf = Vec::new();
        write_class_csv(&[d], &mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "Class,Instances,Avg. Deg.,Med-in,Med-out\nGene,0,-,-,-\n"
        );
    }

    #[test]
    fn bundled_mapping_has_ten_classes() {
        let m = ClassMappingFile::prominent_classes();
        assert_eq!(m.classes.len(), 10);
        assert_eq!(m.classes[0].canonical_name, "Person");
    }
}
