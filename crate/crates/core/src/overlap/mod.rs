//! Overlap estimation between two graphs.
//!
//! Each heuristic's links `F` are scored against the incomplete gold links
//! `G`. Precision is measured only on entities the gold set covers, since an
//! uncovered match may well be correct. Recall is the share of `G` that `F`
//! recovers. The true number of links `C` is then estimated as
//! `|F| * P / R`, and the estimates of all usable heuristics are averaged.

mod gold;

pub use gold::{
    load_gold_links, read_link_file, GoldError, GoldLinkSet, GoldPair, GoldStats, GraphSide, Provenance,
    SameAsStatement,
};

use serde::{Deserialize, Serialize};

use crate::linker::{CandidateLinkSet, HeuristicConfig};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct HeuristicEvaluation {
    pub size_f: usize,
    /// Links whose A-side entity is covered by the gold set.
    pub size_f_eval: usize,
    /// Correct links among the evaluated ones.
    pub size_f_plus: usize,
    /// Gold pairs recovered by the heuristic.
    pub gold_found: usize,
    pub precision: Option<f64>,
    pub recall: Option<f64>,
}

pub fn evaluate_heuristic(found: &CandidateLinkSet, gold: &GoldLinkSet) -> HeuristicEvaluation {
    let mut size_f_eval = 0;
    let mut size_f_plus = 0;
    let mut gold_found = 0;
    for p in &found.pairs {
        let correct = gold.contains(p.a, p.b);
        if correct {
            gold_found += 1;
        }
        if gold.covers_a(p.a) {
            size_f_eval += 1;
            if correct {
                size_f_plus += 1;
            }
        }
    }
    HeuristicEvaluation {
        size_f: found.size_f,
        size_f_eval,
        size_f_plus,
        gold_found,
        precision: (size_f_eval > 0).then(|| size_f_plus as f64 / size_f_eval as f64),
        recall: (!gold.is_empty()).then(|| gold_found as f64 / gold.len() as f64),
    }
}

/// `|F| * P / R`; `None` when recall is zero.
pub fn estimate_overlap(size_f: usize, precision: f64, recall: f64) -> Option<f64> {
    (recall > 0.0).then(|| size_f as f64 * precision / recall)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct HeuristicEstimate {
    pub heuristic: HeuristicConfig,
    #[serde(flatten)]
    pub evaluation: HeuristicEvaluation,
    pub estimate: Option<f64>,
    pub excluded: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct OverlapEstimate {
    pub gold_links: usize,
    pub per_heuristic: Vec<HeuristicEstimate>,
    /// Mean estimate over heuristics with defined precision and non-zero recall.
    pub aggregate: Option<f64>,
    pub excluded: Vec<HeuristicConfig>,
}

impl OverlapEstimate {
    pub fn compute(link_sets: &[CandidateLinkSet], gold: &GoldLinkSet) -> Self {
        let per_heuristic: Vec<HeuristicEstimate> = link_sets
            .iter()
            .map(|set| {
                let evaluation = evaluate_heuristic(set, gold);
                let estimate = match (evaluation.precision, evaluation.recall) {
                    (Some(p), Some(r)) => estimate_overlap(set.size_f, p, r),
                    _ => None,
                };
                HeuristicEstimate {
                    heuristic: set.heuristic,
                    evaluation,
                    estimate,
                    excluded: estimate.is_none(),
                }
            })
            .collect();
        let usable: Vec<f64> = per_heuristic.iter().filter_map(|h| h.estimate).collect();
        let aggregate = (!usable.is_empty()).then(|| usable.iter().sum::<f64>() / usable.len() as f64);
        Self {
            gold_links: gold.len(),
            excluded: per_heuristic
                .iter()
                .filter(|h| h.excluded)
                .map(|h| h.heuristic)
                .collect(),
            per_heuristic,
            aggregate,
        }
    }

    /// Coefficient of variation of the usable per-heuristic estimates.
    pub fn coefficient_of_variation(&self) -> Option<f64> {
        let v: Vec<f64> = self.per_heuristic.iter().filter_map(|h| h.estimate).collect();
        let mean = self.aggregate?;
        if mean == 0.0 {
            return None;
        }
        let var = v.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / v.len() as f64;
        Some(var.sqrt() / mean)
    }
}

/// Derived pairwise quantities for the heatmaps.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct PairStatistics {
    /// Share of the smaller graph's entities missing from the larger one.
    pub gain_fraction: f64,
    /// The estimate reached or exceeded the smaller graph's size.
    pub gain_clamped: bool,
    /// Estimated links relative to the larger graph's entity count.
    pub larger_graph_ratio: f64,
    /// Existing links relative to the estimated links, capped at 1.
    pub linkage_completeness: Option<f64>,
}

pub fn pair_statistics(estimate: f64, size_a: usize, size_b: usize, gold_links: usize) -> PairStatistics {
    let smaller = size_a.min(size_b) as f64;
    let larger = size_a.max(size_b) as f64;
    let missing = smaller - estimate;
    let gain_clamped = missing <= 0.0;
    if gain_clamped && estimate > smaller {
        log::warn!("estimated overlap {estimate:.1} exceeds the smaller graph ({smaller}); gain clamped to 0");
    }
    PairStatistics {
        gain_fraction: if smaller > 0.0 { missing.max(0.0) / smaller } else { 0.0 },
        gain_clamped,
        larger_graph_ratio: if larger > 0.0 { estimate / larger } else { 0.0 },
        linkage_completeness: (estimate > 0.0).then(|| (gold_links as f64 / estimate).min(1.0)),
    }
}
