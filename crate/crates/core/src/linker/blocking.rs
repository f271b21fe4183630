//! Token blocking: only entity pairs sharing a normalized label token (or an
//! identical label) are compared.

use rayon::prelude::*;
use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};

use super::LabelMap;
use crate::index::TermId;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct BlockingOptions {
    /// When false, every pair of labeled entities is a candidate.
    pub enabled: bool,
    /// Blocks with more entities than this are subsampled.
    pub max_block_size: Option<usize>,
}

impl Default for BlockingOptions {
    fn default() -> Self {
        Self {
            enabled: true,
            max_block_size: Some(10_000),
        }
    }
}

/// Inverted index over the labels of one side.
pub struct BlockIndex<'a> {
    entities: Vec<TermId>,
    by_token: FxHashMap<&'a str, Vec<u32>>,
    by_label: FxHashMap<&'a str, Vec<u32>>,
    enabled: bool,
    subsampled_blocks: usize,
}

fn subsample(block: &mut Vec<u32>, cap: usize) {
    let n = block.len();
    *block = (0..cap).map(|i| block[i * n / cap]).collect();
}

impl<'a> BlockIndex<'a> {
    pub fn new(side: &'a LabelMap, options: &BlockingOptions) -> Self {
        let entities: Vec<TermId> = side.labels.keys().copied().collect();
        let mut by_token: FxHashMap<&str, Vec<u32>> = FxHashMap::default();
        let mut by_label: FxHashMap<&str, Vec<u32>> = FxHashMap::default();
        if options.enabled {
            for (pos, labels) in side.labels.values().enumerate() {
                for label in labels {
                    by_label.entry(label.as_str()).or_default().push(pos as u32);
                    for token in label.split_whitespace() {
                        by_token.entry(token).or_default().push(pos as u32);
                    }
                }
            }
        }
        let mut subsampled_blocks = 0;
        for (token, block) in by_token.iter_mut() {
            block.dedup();
            if let Some(cap) = options.max_block_size {
                if block.len() > cap {
                    log::warn!(
                        "block for token {token:?} has {} entities; subsampling to {cap}",
                        block.len()
                    );
                    subsample(block, cap);
                    subsampled_blocks += 1;
                }
            }
        }
        for block in by_label.values_mut() {
            block.dedup();
        }
        Self {
            entities,
            by_token,
            by_label,
            enabled: options.enabled,
            subsampled_blocks,
        }
    }

    /// Number of token blocks that exceeded the size cap.
    pub fn subsampled_blocks(&self) -> usize {
        self.subsampled_blocks
    }

    /// Candidate partners for an entity with the given labels, sorted by id.
    pub fn candidates(&self, labels: &[String]) -> Vec<TermId> {
        if !self.enabled {
            return self.entities.clone();
        }
        let mut positions: Vec<u32> = Vec::new();
        for label in labels {
            // exact labels are never lost to subsampling
            if let Some(block) = self.by_label.get(label.as_str()) {
                positions.extend_from_slice(block);
            }
            for token in label.split_whitespace() {
                if let Some(block) = self.by_token.get(token) {
                    positions.extend_from_slice(block);
                }
            }
        }
        positions.sort_unstable();
        positions.dedup();
        positions.into_iter().map(|p| self.entities[p as usize]).collect()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CandidateSet {
    /// Distinct (A entity, B entity) pairs, sorted.
    pub pairs: Vec<(TermId, TermId)>,
    pub subsampled_blocks: usize,
}

/// All candidate pairs between two label maps.
pub fn generate_candidates(a: &LabelMap, b: &LabelMap, options: &BlockingOptions) -> CandidateSet {
    let index = BlockIndex::new(b, options);
    let pairs = a
        .labels
        .par_iter()
        .flat_map_iter(|(&ea, labels)| index.candidates(labels).into_iter().map(move |eb| (ea, eb)))
        .collect();
    CandidateSet {
        pairs,
        subsampled_blocks: index.subsampled_blocks(),
    }
}
