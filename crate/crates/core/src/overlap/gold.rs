//! Existing identity links between two graphs, closed under `owl:sameAs`
//! transitivity across all supplied link files.

use std::collections::{BTreeMap, HashMap};
use std::fs::File;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::index::{DatasetIndex, TermId, TermPartition};
use crate::rdf::{open_dump, IngestError, NTriplesParser, Strictness, Term};
use crate::vocab;

#[derive(Debug, Error)]
pub enum GoldError {
    #[error("cannot read link file {path}: {source}")]
    Read { path: String, source: IngestError },
    #[error("cannot read link file {path}: {source}")]
    Csv { path: String, source: csv::Error },
}

/// Where a gold pair comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum Provenance {
    /// A direct `owl:sameAs` statement between the two entities.
    Explicit,
    /// A direct row of an external mapping table.
    ExternalMapping,
    /// Derived through one or more intermediate identifiers.
    Transitive,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GoldPair {
    pub a: TermId,
    pub b: TermId,
    pub provenance: Provenance,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct GoldStats {
    pub statements: usize,
    /// Statements with no endpoint among the instances of either graph.
    /// They are kept only as closure intermediates.
    pub unresolved_statements: usize,
    /// Triples with a predicate other than `owl:sameAs`, or non-IRI endpoints.
    pub ignored_lines: usize,
}

/// An identity statement from a link file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SameAsStatement {
    pub left: String,
    pub right: String,
    pub provenance: Provenance,
}

/// Reads `owl:sameAs` statements from an N-Triples file, or IRI pairs from
/// a two-column `.csv` file.
pub fn read_link_file(path: &Path, stats: &mut GoldStats) -> Result<Vec<SameAsStatement>, GoldError> {
    let name = path.display().to_string();
    let is_csv = path.extension().is_some_and(|e| e.eq_ignore_ascii_case("csv"));
    let mut out = Vec::new();
    if is_csv {
        let file = File::open(path).map_err(|e| GoldError::Read {
            path: name.clone(),
            source: e.into(),
        })?;
        let mut reader = csv::ReaderBuilder::new()
            .has_headers(false)
            .flexible(true)
            .from_reader(file);
        for (row, record) in reader.records().enumerate() {
            let record = record.map_err(|source| GoldError::Csv {
                path: name.clone(),
                source,
            })?;
            let (Some(left), Some(right)) = (record.get(0), record.get(1)) else {
                stats.ignored_lines += 1;
                continue;
            };
            let (left, right) = (left.trim(), right.trim());
            // optional header row
            if row == 0 && !(left.contains(':') && right.contains(':')) {
                continue;
            }
            out.push(SameAsStatement {
                left: left.to_string(),
                right: right.to_string(),
                provenance: Provenance::ExternalMapping,
            });
        }
    } else {
        let reader = open_dump(path).map_err(|e| GoldError::Read {
            path: name.clone(),
            source: e.into(),
        })?;
        for triple in NTriplesParser::new(reader, Strictness::Tolerant) {
            let triple = triple.map_err(|source| GoldError::Read {
                path: name.clone(),
                source,
            })?;
            match (&triple.subject, triple.predicate.as_iri(), &triple.object) {
                (Term::Iri(s), Some(vocab::OWL_SAME_AS), Term::Iri(o)) => out.push(SameAsStatement {
                    left: s.clone(),
                    right: o.clone(),
                    provenance: Provenance::Explicit,
                }),
                _ => stats.ignored_lines += 1,
            }
        }
    }
    stats.statements += out.len();
    Ok(out)
}

/// Gold links restricted to (instance of A, instance of B) pairs.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct GoldLinkSet {
    /// Sorted by (a, b).
    pub pairs: Vec<GoldPair>,
    pub stats: GoldStats,
    #[serde(skip)]
    covered_a: Vec<TermId>,
}

struct UnionFind {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl UnionFind {
    fn add(&mut self) -> usize {
        self.parent.push(self.parent.len());
        self.rank.push(0);
        self.parent.len() - 1
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        match self.rank[ra].cmp(&self.rank[rb]) {
            std::cmp::Ordering::Less => self.parent[ra] = rb,
            std::cmp::Ordering::Greater => self.parent[rb] = ra,
            std::cmp::Ordering::Equal => {
                self.parent[rb] = ra;
                self.rank[ra] += 1;
            }
        }
    }
}

/// Side of the graph pair a resolved IRI belongs to.
pub struct GraphSide<'a> {
    pub index: &'a DatasetIndex,
    pub partition: &'a TermPartition,
}

impl GraphSide<'_> {
    fn instance(&self, iri: &str) -> Option<TermId> {
        self.index.iri_id(iri).filter(|&id| self.partition.is_instance(id))
    }
}

impl GoldLinkSet {
    /// Closes `statements` transitively and keeps the cross-graph pairs.
    pub fn from_statements(
        statements: &[SameAsStatement],
        a: &GraphSide<'_>,
        b: &GraphSide<'_>,
        mut stats: GoldStats,
    ) -> Self {
        let mut ids: HashMap<&str, usize> = HashMap::new();
        let mut uf = UnionFind {
            parent: Vec::new(),
            rank: Vec::new(),
        };
        let mut direct: HashMap<(&str, &str), Provenance> = HashMap::new();
        for st in statements {
            let l = *ids.entry(st.left.as_str()).or_insert_with(|| uf.add());
            let r = *ids.entry(st.right.as_str()).or_insert_with(|| uf.add());
            uf.union(l, r);
            for key in [
                (st.left.as_str(), st.right.as_str()),
                (st.right.as_str(), st.left.as_str()),
            ] {
                let e = direct.entry(key).or_insert(st.provenance);
                *e = (*e).min(st.provenance);
            }
            let known = |iri: &str| a.instance(iri).is_some() || b.instance(iri).is_some();
            if !known(&st.left) && !known(&st.right) {
                stats.unresolved_statements += 1;
            }
        }

        let mut components: BTreeMap<usize, (Vec<(TermId, &str)>, Vec<(TermId, &str)>)> = BTreeMap::new();
        for (&iri, &node) in &ids {
            let root = uf.find(node);
            if let Some(id) = a.instance(iri) {
                components.entry(root).or_default().0.push((id, iri));
            }
            if let Some(id) = b.instance(iri) {
                components.entry(root).or_default().1.push((id, iri));
            }
        }

        let mut pairs = Vec::new();
        for (side_a, side_b) in components.values() {
            for &(ia, iri_a) in side_a {
                for &(ib, iri_b) in side_b {
                    if iri_a == iri_b {
                        continue;
                    }
                    let provenance = direct.get(&(iri_a, iri_b)).copied().unwrap_or(Provenance::Transitive);
                    pairs.push(GoldPair {
                        a: ia,
                        b: ib,
                        provenance,
                    });
                }
            }
        }
        pairs.sort_unstable();
        pairs.dedup_by_key(|p| (p.a, p.b));
        let mut covered_a: Vec<TermId> = pairs.iter().map(|p| p.a).collect();
        covered_a.dedup();
        Self {
            pairs,
            stats,
            covered_a,
        }
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn contains(&self, a: TermId, b: TermId) -> bool {
        self.pairs.binary_search_by(|p| (p.a, p.b).cmp(&(a, b))).is_ok()
    }

    /// Whether `a` takes part in at least one gold pair.
    pub fn covers_a(&self, a: TermId) -> bool {
        self.covered_a.binary_search(&a).is_ok()
    }

    pub fn count(&self, provenance: Provenance) -> usize {
        self.pairs.iter().filter(|p| p.provenance == provenance).count()
    }
}

/// Loads and closes the link files for the graph pair (A, B).
pub fn load_gold_links(
    files: &[impl AsRef<Path>],
    a: &GraphSide<'_>,
    b: &GraphSide<'_>,
) -> Result<GoldLinkSet, GoldError> {
    let mut stats = GoldStats::default();
    let mut statements = Vec::new();
    for f in files {
        statements.extend(read_link_file(f.as_ref(), &mut stats)?);
    }
    Ok(GoldLinkSet::from_statements(&statements, a, b, stats))
}
