//! Declarative description of a multi-graph comparison.
//!
//! ```json
//! {
//!   "graphs": [{"label": "A", "dump": "a.nt", "labelPredicates": ["..."]}],
//!   "gold": [{"graphs": ["A", "B"], "files": ["links/a-b.nt"]}],
//!   "sharedLinks": ["links/hub.nt"],
//!   "classMapping": "classes.json",
//!   "grid": "grid.json",
//!   "sunburst": {"depth": 3, "topK": 12}
//! }
//! ```
//!
//! Relative paths are resolved against the manifest's directory.

use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use serde::Deserialize;

#[derive(Clone, Debug, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct GraphEntry {
    pub label: String,
    pub dump: PathBuf,
    #[serde(default)]
    pub label_predicates: Vec<String>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct GoldEntry {
    pub graphs: [String; 2],
    pub files: Vec<PathBuf>,
}

#[derive(Clone, Copy, Debug, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct SunburstSettings {
    #[serde(default = "default_depth")]
    pub depth: usize,
    #[serde(default = "default_top_k")]
    pub top_k: usize,
}

fn default_depth() -> usize {
    3
}

fn default_top_k() -> usize {
    12
}

impl Default for SunburstSettings {
    fn default() -> Self {
        Self {
            depth: default_depth(),
            top_k: default_top_k(),
        }
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct Manifest {
    pub graphs: Vec<GraphEntry>,
    #[serde(default)]
    pub gold: Vec<GoldEntry>,
    /// Link files consulted for every pair, e.g. a hub of identifiers.
    #[serde(default)]
    pub shared_links: Vec<PathBuf>,
    pub class_mapping: Option<PathBuf>,
    pub grid: Option<PathBuf>,
    #[serde(default)]
    pub sunburst: SunburstSettings,
    #[serde(default)]
    pub no_blocking: bool,
}

impl Manifest {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("cannot read manifest {}", path.display()))?;
        let mut m: Manifest =
            serde_json::from_str(&text).with_context(|| format!("invalid manifest {}", path.display()))?;
        let dir = path.parent().unwrap_or(Path::new("."));
        let resolve = |p: &mut PathBuf| {
            if p.is_relative() {
                *p = dir.join(&*p);
            }
        };
        for g in &mut m.graphs {
            resolve(&mut g.dump);
        }
        for g in &mut m.gold {
            g.files.iter_mut().for_each(resolve);
        }
        m.shared_links.iter_mut().for_each(resolve);
        m.class_mapping.iter_mut().for_each(resolve);
        m.grid.iter_mut().for_each(resolve);
        m.validate()?;
        Ok(m)
    }

    fn validate(&self) -> Result<()> {
        if self.graphs.is_empty() {
            bail!("manifest lists no graphs");
        }
        let mut labels: Vec<&str> = self.graphs.iter().map(|g| g.label.as_str()).collect();
        labels.sort_unstable();
        if let Some(w) = labels.windows(2).find(|w| w[0] == w[1]) {
            bail!("graph label {:?} appears twice", w[0]);
        }
        for g in &self.gold {
            for l in &g.graphs {
                if labels.binary_search(&l.as_str()).is_err() {
                    bail!("gold entry names unknown graph {l:?}");
                }
            }
        }
        Ok(())
    }

    /// Link files for the unordered pair (a, b), shared files last.
    pub fn gold_files(&self, a: &str, b: &str) -> Vec<PathBuf> {
        let mut files: Vec<PathBuf> = self
            .gold
            .iter()
            .filter(|g| (g.graphs[0] == a && g.graphs[1] == b) || (g.graphs[0] == b && g.graphs[1] == a))
            .flat_map(|g| g.files.iter().cloned())
            .collect();
        files.extend(self.shared_links.iter().cloned());
        files
    }
}
