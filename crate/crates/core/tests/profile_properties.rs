use kgprof_core::index::{read_snapshot, write_snapshot, ClassHierarchy, DatasetIndex, IndexConfig, TermPartition};
use kgprof_core::profile::ProfileReport;
use kgprof_core::rdf::Strictness;
use kgprof_core::report::{build_sunburst, SunburstNode};
use kgprof_testkit::generate::{synthetic_graph, SyntheticSpec};
use kgprof_testkit::model::{to_ntriples, RDFS_LABEL};
use kgprof_testkit::oracle::OracleGraph;
use kgprof_testkit::Triple;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn index_of(triples: &[Triple]) -> DatasetIndex {
    DatasetIndex::from_ntriples(
        to_ntriples(triples).as_bytes(),
        Strictness::Strict,
        IndexConfig::default(),
    )
    .unwrap()
    .0
}

fn profile(index: &DatasetIndex) -> ProfileReport {
    let partition = TermPartition::compute(index);
    let hierarchy = ClassHierarchy::build(index, &partition);
    ProfileReport::compute("g", index, &partition, &hierarchy)
}

#[test]
fn profile_ignores_triple_order_and_duplicates() {
    for seed in [3, 4] {
        let triples = synthetic_graph(&SyntheticSpec::small(seed));
        let reference = profile(&index_of(&triples));
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut shuffled = triples.clone();
        shuffled.extend(triples.iter().take(500).cloned());
        shuffled.shuffle(&mut rng);
        assert_eq!(profile(&index_of(&shuffled)), reference);
    }
}

#[test]
fn snapshot_preserves_the_profile() {
    let index = index_of(&synthetic_graph(&SyntheticSpec::small(8)));
    let mut bytes = Vec::new();
    write_snapshot(&index, &mut bytes).unwrap();
    let restored = read_snapshot(bytes.as_slice()).unwrap();
    assert_eq!(profile(&restored), profile(&index));
    assert_eq!(restored.triple_count(), index.triple_count());
}

#[test]
fn truncated_snapshot_is_an_error() {
    let index = index_of(&synthetic_graph(&SyntheticSpec::small(9)));
    let mut bytes = Vec::new();
    write_snapshot(&index, &mut bytes).unwrap();
    bytes.truncate(bytes.len() / 2);
    assert!(read_snapshot(bytes.as_slice()).is_err());
}

fn class_nodes<'a>(node: &'a SunburstNode, out: &mut Vec<&'a SunburstNode>) {
    if node.class_iri.is_some() && !node.other {
        out.push(node);
    }
    for c in &node.children {
        class_nodes(c, out);
    }
}

#[test]
fn sunburst_counts_match_oracle_populations() {
    for (seed, use_thing) in [(50, true), (51, false)] {
        let spec = SyntheticSpec {
            classes: 50,
            use_thing,
            ..SyntheticSpec::small(seed)
        };
        let triples = synthetic_graph(&spec);
        let index = index_of(&triples);
        let partition = TermPartition::compute(&index);
        let hierarchy = ClassHierarchy::build(&index, &partition);
        let tree = build_sunburst(&hierarchy, &index, partition.instances().len(), 64, 1000);
        let oracle = OracleGraph::new(&triples, &[RDFS_LABEL]);
        let mut nodes = Vec::new();
        class_nodes(&tree, &mut nodes);
        assert!(nodes.len() >= 40, "seed {seed}: only {} class nodes", nodes.len());
        for n in nodes {
            let iri = n.class_iri.as_deref().unwrap();
            assert_eq!(
                n.transitive_instance_count,
                oracle.transitive_count(iri),
                "seed {seed}: {iri}"
            );
        }
    }
}
