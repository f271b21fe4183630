use kgprof_core::index::{DatasetIndex, IndexConfig, TermPartition};
use kgprof_core::linker::{extract_labels, match_grid, HeuristicGrid, MatchOptions};
use kgprof_core::overlap::{load_gold_links, GraphSide, OverlapEstimate, Provenance};
use kgprof_core::rdf::Strictness;
use kgprof_testkit::generate::{planted_pair, PlantedSpec};
use kgprof_testkit::model::{to_ntriples, RDFS_LABEL};
use kgprof_testkit::Triple;

fn graph(triples: &[Triple]) -> (DatasetIndex, TermPartition) {
    let (index, _) = DatasetIndex::from_ntriples(
        to_ntriples(triples).as_bytes(),
        Strictness::Strict,
        IndexConfig::default(),
    )
    .unwrap();
    let partition = TermPartition::compute(&index);
    (index, partition)
}

#[test]
fn per_heuristic_estimates_are_stable_on_planted_pairs() {
    let spec = PlantedSpec {
        seed: 31,
        size_a: 2500,
        size_b: 2000,
        overlap: 900,
        noise: 0.1,
        gold_fraction: 0.3,
    };
    let pair = planted_pair(&spec);
    let (ia, pa) = graph(&pair.a);
    let (ib, pb) = graph(&pair.b);
    let dir = tempfile::tempdir().unwrap();
    let gold_path = dir.path().join("gold.nt");
    std::fs::write(&gold_path, to_ntriples(&pair.gold)).unwrap();
    let gold = load_gold_links(
        &[&gold_path],
        &GraphSide {
            index: &ia,
            partition: &pa,
        },
        &GraphSide {
            index: &ib,
            partition: &pb,
        },
    )
    .unwrap();
    assert_eq!(gold.len(), pair.gold.len());
    assert_eq!(gold.count(Provenance::Explicit), gold.len());

    let labels = [RDFS_LABEL.to_string()];
    let sets = match_grid(
        &HeuristicGrid::default(),
        &extract_labels(&ia, &pa, &labels),
        &extract_labels(&ib, &pb, &labels),
        &MatchOptions::default(),
    );
    let est = OverlapEstimate::compute(&sets, &gold);
    assert!(est.excluded.is_empty(), "{:?}", est.excluded);
    let cv = est.coefficient_of_variation().unwrap();
    assert!(cv < 0.25, "coefficient of variation {cv}");
    // the raw link counts vary far more than the estimates
    let sizes: Vec<f64> = sets.iter().map(|s| s.size_f as f64).collect();
    let max = sizes.iter().cloned().fold(0.0, f64::max);
    let min = sizes.iter().cloned().fold(f64::INFINITY, f64::min);
    assert!(max / min > 1.5, "link counts {min}..{max}");
}

#[test]
fn gold_from_a_mapping_table_is_tagged() {
    let spec = PlantedSpec {
        seed: 5,
        size_a: 50,
        size_b: 50,
        overlap: 30,
        noise: 0.0,
        gold_fraction: 1.0,
    };
    let pair = planted_pair(&spec);
    let (ia, pa) = graph(&pair.a);
    let (ib, pb) = graph(&pair.b);
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("mapping.csv");
    let body: String = pair.true_links.iter().map(|(a, b)| format!("{a},{b}\n")).collect();
    std::fs::write(&csv, format!("a,b\n{body}")).unwrap();
    let gold = load_gold_links(
        &[&csv],
        &GraphSide {
            index: &ia,
            partition: &pa,
        },
        &GraphSide {
            index: &ib,
            partition: &pb,
        },
    )
    .unwrap();
    assert_eq!(gold.len(), 30);
    assert_eq!(gold.count(Provenance::ExternalMapping), 30);
}
