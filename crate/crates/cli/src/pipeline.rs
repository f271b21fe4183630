//! Loading graphs and running the per-graph and per-pair analyses.

use std::fs::File;
use std::io::Read;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use serde::Serialize;

use kgprof_core::class_detail::{class_table, ClassDetail, ClassMappingFile};
use kgprof_core::index::{read_snapshot, ClassHierarchy, DatasetIndex, IndexConfig, TermPartition, SNAPSHOT_MAGIC};
use kgprof_core::linker::{extract_labels, match_grid, HeuristicGrid, MatchOptions};
use kgprof_core::overlap::{
    load_gold_links, pair_statistics, GoldStats, GraphSide, OverlapEstimate, PairStatistics, Provenance,
};
use kgprof_core::profile::ProfileReport;
use kgprof_core::rdf::{ParseReport, Strictness};
use kgprof_core::report::{build_sunburst, SunburstNode};
use kgprof_core::vocab;

pub struct Graph {
    pub label: String,
    pub index: DatasetIndex,
    pub partition: TermPartition,
    pub hierarchy: ClassHierarchy,
    /// `None` when the graph came from a snapshot.
    pub parse_report: Option<ParseReport>,
}

fn is_snapshot(path: &Path) -> Result<bool> {
    let mut head = [0u8; 8];
    let mut f = File::open(path).with_context(|| format!("cannot open {}", path.display()))?;
    let n = f.read(&mut head)?;
    Ok(n == head.len() && head == SNAPSHOT_MAGIC)
}

pub fn default_label(path: &Path) -> String {
    let name = path
        .file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_default();
    let mut stem = name.as_str();
    for ext in [".gz", ".nt", ".kgidx"] {
        stem = stem.strip_suffix(ext).unwrap_or(stem);
    }
    stem.to_string()
}

/// Reads an N-Triples dump (plain or gzip) or an index snapshot.
pub fn load_graph(label: &str, path: &Path, label_predicates: &[String], strictness: Strictness) -> Result<Graph> {
    let (index, parse_report) = if is_snapshot(path)? {
        let f = File::open(path)?;
        let index = read_snapshot(std::io::BufReader::new(f))
            .with_context(|| format!("cannot read snapshot {}", path.display()))?;
        (index, None)
    } else {
        let config = IndexConfig {
            label_predicates: if label_predicates.is_empty() {
                vec![vocab::RDFS_LABEL.to_string()]
            } else {
                label_predicates.to_vec()
            },
            ..IndexConfig::default()
        };
        let (index, report) =
            DatasetIndex::load(path, strictness, config).with_context(|| format!("cannot load {}", path.display()))?;
        if report.lines_skipped > 0 {
            log::warn!("{}: skipped {} malformed lines", path.display(), report.lines_skipped);
        }
        (index, Some(report))
    };
    let partition = TermPartition::compute(&index);
    let hierarchy = ClassHierarchy::build(&index, &partition);
    Ok(Graph {
        label: label.to_string(),
        index,
        partition,
        hierarchy,
        parse_report,
    })
}

impl Graph {
    pub fn profile(&self) -> ProfileReport {
        ProfileReport::compute(&self.label, &self.index, &self.partition, &self.hierarchy)
    }

    pub fn classes(&self, mapping: &ClassMappingFile, key: &str) -> Vec<ClassDetail> {
        class_table(&self.index, &self.partition, &self.hierarchy, mapping, key)
    }

    pub fn sunburst(&self, depth: usize, top_k: usize) -> SunburstNode {
        build_sunburst(
            &self.hierarchy,
            &self.index,
            self.partition.instances().len(),
            depth,
            top_k,
        )
    }

    pub fn side(&self) -> GraphSide<'_> {
        GraphSide {
            index: &self.index,
            partition: &self.partition,
        }
    }

    pub fn instance_count(&self) -> usize {
        self.partition.instances().len()
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct GoldSummary {
    pub links: usize,
    pub explicit: usize,
    pub external_mapping: usize,
    pub transitive: usize,
    #[serde(flatten)]
    pub stats: GoldStats,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct PairReport {
    pub graph_a: String,
    pub graph_b: String,
    pub size_a: usize,
    pub size_b: usize,
    pub labeled_a: usize,
    pub labeled_b: usize,
    pub gold: GoldSummary,
    pub estimate: OverlapEstimate,
    /// Present when the aggregate estimate is defined.
    pub statistics: Option<PairStatistics>,
}

pub fn load_grid(path: Option<&PathBuf>) -> Result<HeuristicGrid> {
    match path {
        Some(p) => HeuristicGrid::load(p).with_context(|| format!("cannot load grid {}", p.display())),
        None => Ok(HeuristicGrid::default()),
    }
}

pub fn estimate_pair(
    a: &Graph,
    b: &Graph,
    gold_files: &[PathBuf],
    grid: &HeuristicGrid,
    options: &MatchOptions,
) -> Result<PairReport> {
    let gold = load_gold_links(gold_files, &a.side(), &b.side())?;
    let labels_a = extract_labels(&a.index, &a.partition, a.index.label_predicates());
    let labels_b = extract_labels(&b.index, &b.partition, b.index.label_predicates());
    let links = match_grid(grid, &labels_a, &labels_b, options);
    let estimate = OverlapEstimate::compute(&links, &gold);
    if !estimate.excluded.is_empty() {
        log::warn!(
            "{} / {}: {} heuristics excluded (undefined precision or zero recall)",
            a.label,
            b.label,
            estimate.excluded.len()
        );
    }
    let statistics = estimate
        .aggregate
        .map(|c| pair_statistics(c, a.instance_count(), b.instance_count(), gold.len()));
    Ok(PairReport {
        graph_a: a.label.clone(),
        graph_b: b.label.clone(),
        size_a: a.instance_count(),
        size_b: b.instance_count(),
        labeled_a: labels_a.len(),
        labeled_b: labels_b.len(),
        gold: GoldSummary {
            links: gold.len(),
            explicit: gold.count(Provenance::Explicit),
            external_mapping: gold.count(Provenance::ExternalMapping),
            transitive: gold.count(Provenance::Transitive),
            stats: gold.stats.clone(),
        },
        estimate,
        statistics,
    })
}
