//! Dictionary-encoded triple index for a single knowledge graph.
//!
//! Terms are interned into dense ids starting at 0. Deduplicated triples are
//! kept twice: sorted by subject (`spo`) and sorted by object (`ops`), each
//! with a CSR offset table so that the outgoing and incoming statements of a
//! term are contiguous slices.

mod hierarchy;
mod partition;
mod snapshot;

pub use hierarchy::{ClassHierarchy, ClassNode};
pub use partition::TermPartition;
pub use snapshot::{read_snapshot, write_snapshot, SnapshotError, SNAPSHOT_MAGIC, SNAPSHOT_VERSION};

use std::path::Path;

use indexmap::IndexSet;
use rustc_hash::FxBuildHasher;
use thiserror::Error;

use crate::rdf::{open_dump, IngestError, NTriplesParser, ParseReport, Strictness, Term, TripleRecord};
use crate::vocab;

pub type TermId = u32;

#[derive(Debug, Error)]
pub enum IndexError {
    #[error("distinct term count exceeds the configured cap of {cap}")]
    TermCapExceeded { cap: usize },
    #[error("unknown term id {0}")]
    UnknownId(TermId),
    #[error("term id {0} is not an instance")]
    NotAnInstance(TermId),
}

#[derive(Debug, Error)]
pub enum LoadError {
    #[error(transparent)]
    Ingest(#[from] IngestError),
    #[error(transparent)]
    Index(#[from] IndexError),
}

#[derive(Clone, Debug)]
pub struct IndexConfig {
    /// Predicates whose literal objects are entity labels.
    pub label_predicates: Vec<String>,
    /// Abort once more distinct terms than this have been seen.
    pub max_terms: Option<usize>,
}

impl Default for IndexConfig {
    fn default() -> Self {
        Self {
            label_predicates: vec![vocab::RDFS_LABEL.to_string()],
            max_terms: None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EncodedTriple {
    pub subject: TermId,
    pub predicate: TermId,
    pub object: TermId,
}

impl EncodedTriple {
    fn object_key(&self) -> (TermId, TermId, TermId) {
        (self.object, self.predicate, self.subject)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    In,
    Out,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DegreeMode {
    /// Only statements linking two instances.
    EntityEdges,
    /// Every non-reserved statement, including literal- and schema-valued ones.
    AllAssertions,
}

/// Incremental index construction.
pub struct IndexBuilder {
    config: IndexConfig,
    terms: IndexSet<Term, FxBuildHasher>,
    triples: Vec<EncodedTriple>,
}

impl IndexBuilder {
    pub fn new(config: IndexConfig) -> Self {
        Self {
            config,
            terms: IndexSet::default(),
            triples: Vec::new(),
        }
    }

    fn intern(&mut self, term: Term) -> Result<TermId, IndexError> {
        if let Some(id) = self.terms.get_index_of(&term) {
            return Ok(id as TermId);
        }
        if let Some(cap) = self.config.max_terms {
            if self.terms.len() >= cap {
                return Err(IndexError::TermCapExceeded { cap });
            }
        }
        let (id, _) = self.terms.insert_full(term);
        Ok(id as TermId)
    }

    pub fn insert(&mut self, triple: TripleRecord) -> Result<(), IndexError> {
        let subject = self.intern(triple.subject)?;
        let predicate = self.intern(triple.predicate)?;
        let object = self.intern(triple.object)?;
        self.triples.push(EncodedTriple {
            subject,
            predicate,
            object,
        });
        Ok(())
    }

    pub fn finish(self) -> DatasetIndex {
        DatasetIndex::from_parts(self.terms, self.triples, self.config.label_predicates)
    }
}

/// Immutable, bidirectionally indexed triple set of one graph.
#[derive(Debug)]
pub struct DatasetIndex {
    terms: IndexSet<Term, FxBuildHasher>,
    spo: Vec<EncodedTriple>,
    subject_offsets: Vec<usize>,
    ops: Vec<EncodedTriple>,
    object_offsets: Vec<usize>,
    reserved: Vec<bool>,
    label_predicates: Vec<String>,
}

fn csr_offsets(sorted: &[EncodedTriple], n: usize, key: impl Fn(&EncodedTriple) -> TermId) -> Vec<usize> {
    let mut offsets = vec![0usize; n + 1];
    for t in sorted {
        offsets[key(t) as usize + 1] += 1;
    }
    for i in 0..n {
        offsets[i + 1] += offsets[i];
    }
    offsets
}

impl DatasetIndex {
    pub fn build(triples: impl IntoIterator<Item = TripleRecord>, config: IndexConfig) -> Result<Self, IndexError> {
        let mut builder = IndexBuilder::new(config);
        for t in triples {
            builder.insert(t)?;
        }
        Ok(builder.finish())
    }

    /// Parses an N-Triples stream and indexes it in one pass.
    pub fn from_ntriples<R: std::io::BufRead>(
        reader: R,
        strictness: Strictness,
        config: IndexConfig,
    ) -> Result<(Self, ParseReport), LoadError> {
        let mut builder = IndexBuilder::new(config);
        let mut parser = NTriplesParser::new(reader, strictness);
        for triple in parser.by_ref() {
            builder.insert(triple?)?;
        }
        Ok((builder.finish(), parser.into_report()))
    }

    /// Loads a (possibly gzip-compressed) N-Triples dump from disk.
    pub fn load(
        path: impl AsRef<Path>,
        strictness: Strictness,
        config: IndexConfig,
    ) -> Result<(Self, ParseReport), LoadError> {
        let reader = open_dump(path).map_err(IngestError::from)?;
        Self::from_ntriples(reader, strictness, config)
    }

    fn from_parts(
        terms: IndexSet<Term, FxBuildHasher>,
        mut spo: Vec<EncodedTriple>,
        label_predicates: Vec<String>,
    ) -> Self {
        spo.sort_unstable();
        spo.dedup();
        spo.shrink_to_fit();
        let mut ops = spo.clone();
        ops.sort_unstable_by_key(EncodedTriple::object_key);

        let n = terms.len();
        let subject_offsets = csr_offsets(&spo, n, |t| t.subject);
        let object_offsets = csr_offsets(&ops, n, |t| t.object);

        let reserved = terms
            .iter()
            .map(|t| match t {
                Term::Iri(iri) => {
                    vocab::is_builtin(iri)
                        || vocab::ANNOTATION_PREDICATES.contains(&iri.as_str())
                        || label_predicates.iter().any(|l| l == iri)
                }
                _ => false,
            })
            .collect();

        Self {
            terms,
            spo,
            subject_offsets,
            ops,
            object_offsets,
            reserved,
            label_predicates,
        }
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn triple_count(&self) -> usize {
        self.spo.len()
    }

    pub fn term(&self, id: TermId) -> Option<&Term> {
        self.terms.get_index(id as usize)
    }

    pub fn id_of(&self, term: &Term) -> Option<TermId> {
        self.terms.get_index_of(term).map(|i| i as TermId)
    }

    pub fn iri_id(&self, iri: &str) -> Option<TermId> {
        self.id_of(&Term::Iri(iri.to_string()))
    }

    pub fn terms(&self) -> impl ExactSizeIterator<Item = &Term> {
        self.terms.iter()
    }

    /// All triples in subject order.
    pub fn triples(&self) -> &[EncodedTriple] {
        &self.spo
    }

    /// Triples with `id` in subject position.
    pub fn outgoing(&self, id: TermId) -> &[EncodedTriple] {
        let i = id as usize;
        match self.subject_offsets.get(i..i + 2) {
            Some(w) => &self.spo[w[0]..w[1]],
            None => &[],
        }
    }

    /// Triples with `id` in object position.
    pub fn incoming(&self, id: TermId) -> &[EncodedTriple] {
        let i = id as usize;
        match self.object_offsets.get(i..i + 2) {
            Some(w) => &self.ops[w[0]..w[1]],
            None => &[],
        }
    }

    /// Triples whose predicate is `predicate`, scanning the subject index.
    pub fn with_predicate(&self, predicate: TermId) -> impl Iterator<Item = &EncodedTriple> {
        self.spo.iter().filter(move |t| t.predicate == predicate)
    }

    /// Schema, linkage and label predicates, which are not domain assertions.
    pub fn is_reserved_predicate(&self, id: TermId) -> bool {
        self.reserved.get(id as usize).copied().unwrap_or(false)
    }

    pub fn label_predicates(&self) -> &[String] {
        &self.label_predicates
    }

    pub fn contains_triple(&self, triple: &EncodedTriple) -> bool {
        self.outgoing(triple.subject).binary_search(triple).is_ok()
    }

    /// Number of statements touching `entity` in the given direction and mode.
    pub fn degree(
        &self,
        partition: &TermPartition,
        entity: TermId,
        direction: Direction,
        mode: DegreeMode,
    ) -> Result<usize, IndexError> {
        if entity as usize >= self.term_count() {
            return Err(IndexError::UnknownId(entity));
        }
        if !partition.is_instance(entity) {
            return Err(IndexError::NotAnInstance(entity));
        }
        Ok(self.degree_unchecked(partition, entity, direction, mode))
    }

    pub(crate) fn degree_unchecked(
        &self,
        partition: &TermPartition,
        entity: TermId,
        direction: Direction,
        mode: DegreeMode,
    ) -> usize {
        let (edges, other): (&[EncodedTriple], fn(&EncodedTriple) -> TermId) = match direction {
            Direction::Out => (self.outgoing(entity), |t| t.object),
            Direction::In => (self.incoming(entity), |t| t.subject),
        };
        edges
            .iter()
            .filter(|t| !self.is_reserved_predicate(t.predicate))
            .filter(|t| match mode {
                DegreeMode::AllAssertions => true,
                DegreeMode::EntityEdges => partition.is_instance(other(t)),
            })
            .count()
    }

    /// Degrees of every instance, in the order of `partition.instances()`.
    pub fn degree_table(&self, partition: &TermPartition) -> DegreeTable {
        let instances = partition.instances();
        let mut table = DegreeTable {
            out_entity: Vec::with_capacity(instances.len()),
            in_entity: Vec::with_capacity(instances.len()),
            out_all: Vec::with_capacity(instances.len()),
        };
        for &id in instances {
            table
                .out_entity
                .push(self.degree_unchecked(partition, id, Direction::Out, DegreeMode::EntityEdges));
            table
                .in_entity
                .push(self.degree_unchecked(partition, id, Direction::In, DegreeMode::EntityEdges));
            table
                .out_all
                .push(self.degree_unchecked(partition, id, Direction::Out, DegreeMode::AllAssertions));
        }
        table
    }
}

/// Per-instance degrees used by the profiler and the class statistics.
#[derive(Clone, Debug, Default)]
pub struct DegreeTable {
    pub out_entity: Vec<usize>,
    pub in_entity: Vec<usize>,
    pub out_all: Vec<usize>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iri(s: &str) -> Term {
        Term::iri(format!("http://ex.org/{s}"))
    }

    fn t(s: &str, p: &str, o: Term) -> TripleRecord {
        TripleRecord::new(iri(s), iri(p), o).unwrap()
    }

    #[test]
    fn empty_stream() {
        let index = DatasetIndex::build(Vec::new(), IndexConfig::default()).unwrap();
        assert_eq!(index.triple_count(), 0);
        assert_eq!(index.term_count(), 0);
        assert!(index.outgoing(0).is_empty());
    }

    #[test]
    fn duplicates_are_stored_once() {
        let triple = t("a", "p", iri("b"));
        let index = DatasetIndex::build(vec![triple.clone(), triple], IndexConfig::default()).unwrap();
        assert_eq!(index.triple_count(), 1);
        assert_eq!(index.term_count(), 3);
    }

    #[test]
    fn dictionary_is_a_dense_bijection() {
        let index = DatasetIndex::build(
            vec![t("a", "p", iri("b")), t("b", "p", Term::plain_literal("x"))],
            IndexConfig::default(),
        )
        .unwrap();
        for id in 0..index.term_count() as TermId {
            assert_eq!(index.id_of(index.term(id).unwrap()), Some(id));
        }
        assert!(index.term(index.term_count() as TermId).is_none());
    }

    #[test]
    fn triples_reachable_from_both_sides() {
        let index = DatasetIndex::build(
            vec![
                t("a", "p", iri("b")),
                t("b", "p", iri("a")),
                t("a", "q", iri("c")),
                t("c", "q", Term::plain_literal("lit")),
            ],
            IndexConfig::default(),
        )
        .unwrap();
        for triple in index.triples() {
            assert!(index.outgoing(triple.subject).contains(triple));
            assert!(index.incoming(triple.object).contains(triple));
        }
        let total_in: usize = (0..index.term_count() as TermId).map(|i| index.incoming(i).len()).sum();
        assert_eq!(total_in, index.triple_count());
    }

    #[test]
    fn term_cap_aborts() {
        let config = IndexConfig {
            max_terms: Some(2),
            ..IndexConfig::default()
        };
        let err = DatasetIndex::build(vec![t("a", "p", iri("b"))], config).unwrap_err();
        assert!(matches!(err, IndexError::TermCapExceeded { cap: 2 }));
    }

    #[test]
    fn degree_modes() {
        let typ = Term::iri(vocab::RDF_TYPE);
        let class = iri("C");
        let triples = vec![
            TripleRecord::new(iri("x"), typ.clone(), class.clone()).unwrap(),
            TripleRecord::new(iri("y"), typ.clone(), class.clone()).unwrap(),
            TripleRecord::new(iri("z"), typ, class).unwrap(),
            t("x", "name", Term::plain_literal("X")),
            t(
                "x",
                "born",
                Term::typed_literal("1900", "http://www.w3.org/2001/XMLSchema#gYear"),
            ),
            t("x", "knows", iri("y")),
        ];
        let index = DatasetIndex::build(triples, IndexConfig::default()).unwrap();
        let partition = TermPartition::compute(&index);
        let x = index.id_of(&iri("x")).unwrap();
        let y = index.id_of(&iri("y")).unwrap();
        let z = index.id_of(&iri("z")).unwrap();
        let d = |e, dir, mode| index.degree(&partition, e, dir, mode).unwrap();
        assert_eq!(d(x, Direction::Out, DegreeMode::EntityEdges), 1);
        assert_eq!(d(x, Direction::Out, DegreeMode::AllAssertions), 3);
        assert_eq!(d(y, Direction::In, DegreeMode::EntityEdges), 1);
        for dir in [Direction::In, Direction::Out] {
            for mode in [DegreeMode::EntityEdges, DegreeMode::AllAssertions] {
                assert_eq!(d(z, dir, mode), 0);
            }
        }
        assert!(matches!(
            index.degree(&partition, 999, Direction::Out, DegreeMode::EntityEdges),
            Err(IndexError::UnknownId(999))
        ));
        let c = index.id_of(&iri("C")).unwrap();
        assert!(matches!(
            index.degree(&partition, c, Direction::Out, DegreeMode::EntityEdges),
            Err(IndexError::NotAnInstance(_))
        ));
    }
}
