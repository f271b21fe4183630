//! Candidate identity links between two graphs from label similarity.

mod blocking;
mod labels;
pub mod similarity;

pub use blocking::{generate_candidates, BlockIndex, BlockingOptions, CandidateSet};
pub use labels::{extract_labels, normalize_label, LabelMap};
pub use similarity::Measure;

use std::fmt;
use std::io::Write;
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::index::{DatasetIndex, TermId};

#[derive(Debug, Error)]
pub enum GridError {
    #[error("threshold {0} is outside [0, 1]")]
    ThresholdOutOfRange(f64),
    #[error("heuristic grid is empty")]
    Empty,
    #[error("invalid grid file: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// A similarity measure with its acceptance threshold.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct HeuristicConfig {
    pub measure: Measure,
    pub threshold: f64,
}

impl HeuristicConfig {
    pub fn new(measure: Measure, threshold: f64) -> Result<Self, GridError> {
        if !(0.0..=1.0).contains(&threshold) {
            return Err(GridError::ThresholdOutOfRange(threshold));
        }
        Ok(Self { measure, threshold })
    }

    pub fn accepts(&self, score: f64) -> bool {
        score >= self.threshold
    }
}

impl fmt::Display for HeuristicConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}", self.measure.name(), self.threshold)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HeuristicGrid {
    pub heuristics: Vec<HeuristicConfig>,
}

impl Default for HeuristicGrid {
    /// Equality plus three thresholds for each of the five fuzzy measures.
    fn default() -> Self {
        let mut heuristics = vec![HeuristicConfig {
            measure: Measure::Equality,
            threshold: 1.0,
        }];
        let fuzzy = [
            (Measure::ScaledLevenshtein, [0.8, 0.9, 1.0]),
            (Measure::Jaccard, [0.6, 0.8, 1.0]),
            (Measure::Jaro, [0.9, 0.95, 1.0]),
            (Measure::JaroWinkler, [0.9, 0.95, 1.0]),
            (Measure::MongeElkan, [0.9, 0.95, 1.0]),
        ];
        for (measure, thresholds) in fuzzy {
            heuristics.extend(thresholds.map(|threshold| HeuristicConfig { measure, threshold }));
        }
        Self { heuristics }
    }
}

impl HeuristicGrid {
    pub fn from_json(text: &str) -> Result<Self, GridError> {
        let grid: Self = serde_json::from_str(text)?;
        grid.validate()?;
        Ok(grid)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, GridError> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn validate(&self) -> Result<(), GridError> {
        if self.heuristics.is_empty() {
            return Err(GridError::Empty);
        }
        for h in &self.heuristics {
            HeuristicConfig::new(h.measure, h.threshold)?;
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.heuristics.len()
    }

    pub fn is_empty(&self) -> bool {
        self.heuristics.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatchOptions {
    pub blocking: BlockingOptions,
    /// Token-level measure inside Monge-Elkan.
    pub monge_elkan_inner: Measure,
}

impl Default for MatchOptions {
    fn default() -> Self {
        Self {
            blocking: BlockingOptions::default(),
            monge_elkan_inner: Measure::JaroWinkler,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScoredPair {
    pub a: TermId,
    pub b: TermId,
    pub score: f64,
}

/// Links accepted by one heuristic; `size_f` is the number of pairs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CandidateLinkSet {
    pub heuristic: HeuristicConfig,
    /// Sorted by (a, b).
    pub pairs: Vec<ScoredPair>,
    pub size_f: usize,
}

impl CandidateLinkSet {
    pub fn contains(&self, a: TermId, b: TermId) -> bool {
        self.pairs.binary_search_by(|p| (p.a, p.b).cmp(&(a, b))).is_ok()
    }
}

fn best_score(measure: Measure, inner: Measure, la: &[String], lb: &[String]) -> f64 {
    let mut best = 0.0f64;
    for x in la {
        for y in lb {
            best = best.max(measure.similarity_with(x, y, inner));
            if best >= 1.0 {
                return best;
            }
        }
    }
    best
}

/// Matches every heuristic of `grid` in one pass over the candidates.
/// Each candidate pair is scored once per distinct measure.
pub fn match_grid(grid: &HeuristicGrid, a: &LabelMap, b: &LabelMap, options: &MatchOptions) -> Vec<CandidateLinkSet> {
    let mut measures: Vec<Measure> = grid.heuristics.iter().map(|h| h.measure).collect();
    measures.sort_unstable();
    measures.dedup();
    let slot: Vec<usize> = grid
        .heuristics
        .iter()
        .map(|h| measures.binary_search(&h.measure).expect("measure listed"))
        .collect();

    let index = BlockIndex::new(b, &options.blocking);
    let per_entity: Vec<Vec<Vec<ScoredPair>>> = a
        .labels
        .par_iter()
        .map(|(&ea, la)| {
            let mut accepted = vec![Vec::new(); grid.len()];
            let mut scores = vec![0.0; measures.len()];
            for eb in index.candidates(la) {
                let lb = b.get(eb).unwrap_or_default();
                for (s, &m) in scores.iter_mut().zip(&measures) {
                    *s = best_score(m, options.monge_elkan_inner, la, lb);
                }
                for (h, heuristic) in grid.heuristics.iter().enumerate() {
                    let score = scores[slot[h]];
                    if heuristic.accepts(score) {
                        accepted[h].push(ScoredPair { a: ea, b: eb, score });
                    }
                }
            }
            accepted
        })
        .collect();

    grid.heuristics
        .iter()
        .enumerate()
        .map(|(h, &heuristic)| {
            let pairs: Vec<ScoredPair> = per_entity.iter().flat_map(|e| e[h].iter().copied()).collect();
            CandidateLinkSet {
                heuristic,
                size_f: pairs.len(),
                pairs,
            }
        })
        .collect()
}

/// Links accepted by a single heuristic.
pub fn match_heuristic(
    heuristic: HeuristicConfig,
    a: &LabelMap,
    b: &LabelMap,
    options: &MatchOptions,
) -> CandidateLinkSet {
    let grid = HeuristicGrid {
        heuristics: vec![heuristic],
    };
    match_grid(&grid, a, b, options)
        .pop()
        .expect("one heuristic in, one link set out")
}

/// Writes link sets as CSV rows of (entityA IRI, entityB IRI, score, measure, threshold).
pub fn write_links_csv(
    sets: &[CandidateLinkSet],
    index_a: &DatasetIndex,
    index_b: &DatasetIndex,
    w: impl Write,
) -> csv::Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(["entityA", "entityB", "score", "measure", "threshold"])?;
    let lexical = |index: &DatasetIndex, id| index.term(id).map(|t| t.lexical().to_string()).unwrap_or_default();
    for set in sets {
        for p in &set.pairs {
            out.write_record([
                lexical(index_a, p.a),
                lexical(index_b, p.b),
                format!("{:.6}", p.score),
                set.heuristic.measure.name().to_string(),
                set.heuristic.threshold.to_string(),
            ])?;
        }
    }
    out.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_grid_has_sixteen_configurations() {
        let grid = HeuristicGrid::default();
        assert_eq!(grid.len(), 16);
        let count = |m| grid.heuristics.iter().filter(|h| h.measure == m).count();
        assert_eq!(count(Measure::Equality), 1);
        for m in &Measure::ALL[1..] {
            assert_eq!(count(*m), 3);
        }
        grid.validate().unwrap();
    }

    #[test]
    fn grid_json_round_trip_and_validation() {
        let text = serde_json::to_string(&HeuristicGrid::default()).unwrap();
        assert!(text.contains("\"scaledLevenshtein\""));
        assert_eq!(HeuristicGrid::from_json(&text).unwrap(), HeuristicGrid::default());
        assert!(matches!(
            HeuristicGrid::from_json(r#"{"heuristics":[{"measure":"jaro","threshold":1.5}]}"#),
            Err(GridError::ThresholdOutOfRange(_))
        ));
        assert!(matches!(
            HeuristicGrid::from_json(r#"{"heuristics":[]}"#),
            Err(GridError::Empty)
        ));
    }

    #[test]
    fn equality_at_one_is_exact_label_match() {
        let a = LabelMap::from_raw([(1, "Berlin"), (2, "Paris"), (3, "Rome")]);
        let b = LabelMap::from_raw([(10, "berlin"), (11, "paris "), (12, "roma")]);
        let links = match_heuristic(
            HeuristicConfig::new(Measure::Equality, 1.0).unwrap(),
            &a,
            &b,
            &MatchOptions::default(),
        );
        assert_eq!(links.size_f, 2);
        assert!(links.contains(1, 10) && links.contains(2, 11));
    }

    #[test]
    fn raising_threshold_never_adds_pairs() {
        let a = LabelMap::from_raw([(1, "john smith"), (2, "jon smith"), (3, "mary jones")]);
        let b = LabelMap::from_raw([(10, "john smyth"), (11, "mary jane jones"), (12, "smith john")]);
        for m in Measure::ALL {
            let mut prev: Option<CandidateLinkSet> = None;
            for t in [0.0, 0.3, 0.6, 0.8, 0.9, 0.95, 1.0] {
                let cur = match_heuristic(HeuristicConfig::new(m, t).unwrap(), &a, &b, &MatchOptions::default());
                if let Some(p) = &prev {
                    assert!(cur.pairs.iter().all(|x| p.contains(x.a, x.b)), "{m:?}@{t}");
                }
                prev = Some(cur);
            }
        }
    }

    #[test]
    fn an_entity_may_link_to_several() {
        let a = LabelMap::from_raw([(1, "springfield")]);
        let b = LabelMap::from_raw([(10, "springfield"), (11, "springfield")]);
        let links = match_heuristic(
            HeuristicConfig::new(Measure::Equality, 1.0).unwrap(),
            &a,
            &b,
            &MatchOptions::default(),
        );
        assert_eq!(links.size_f, 2);
    }
}
