//! Binary snapshot of a built index.
//!
//! Layout, all integers little-endian:
//!
//! ```text
//! magic    8 bytes  "KGPROFIX"
//! version  u32
//! labels   u32 count, then per label predicate: u32 byte length + UTF-8
//! terms    u64 count, then per term: u8 tag, string, and for tags 3/4 a second string
//!          tag 0 = IRI, 1 = blank node, 2 = plain literal,
//!          3 = typed literal (lexical, datatype), 4 = language literal (lexical, tag)
//! triples  u64 count, then per triple: u32 subject, u32 predicate, u32 object
//! ```
//!
//! Strings are a u32 byte length followed by UTF-8 bytes. Triples are stored
//! deduplicated in subject order.

use std::io::{self, Read, Write};

use indexmap::IndexSet;
use thiserror::Error;

use super::{DatasetIndex, EncodedTriple};
use crate::rdf::{LiteralTag, Term};

pub const SNAPSHOT_MAGIC: [u8; 8] = *b"KGPROFIX";
pub const SNAPSHOT_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum SnapshotError {
    #[error("not an index snapshot (bad magic number)")]
    BadMagic,
    #[error("unsupported snapshot version {0}")]
    UnsupportedVersion(u32),
    #[error("corrupt snapshot: {0}")]
    Corrupt(&'static str),
    #[error(transparent)]
    Io(#[from] io::Error),
}

fn write_str(w: &mut impl Write, s: &str) -> io::Result<()> {
    w.write_all(&(s.len() as u32).to_le_bytes())?;
    w.write_all(s.as_bytes())
}

pub fn write_snapshot(index: &DatasetIndex, mut w: impl Write) -> io::Result<()> {
    w.write_all(&SNAPSHOT_MAGIC)?;
    w.write_all(&SNAPSHOT_VERSION.to_le_bytes())?;
    w.write_all(&(index.label_predicates.len() as u32).to_le_bytes())?;
    for l in &index.label_predicates {
        write_str(&mut w, l)?;
    }
    w.write_all(&(index.terms.len() as u64).to_le_bytes())?;
    for term in &index.terms {
        match term {
            Term::Iri(s) => {
                w.write_all(&[0])?;
                write_str(&mut w, s)?;
            }
            Term::BlankNode(s) => {
                w.write_all(&[1])?;
                write_str(&mut w, s)?;
            }
            Term::Literal { lexical, tag } => match tag {
                LiteralTag::Plain => {
                    w.write_all(&[2])?;
                    write_str(&mut w, lexical)?;
                }
                LiteralTag::Datatype(dt) => {
                    w.write_all(&[3])?;
                    write_str(&mut w, lexical)?;
                    write_str(&mut w, dt)?;
                }
                LiteralTag::Language(lang) => {
                    w.write_all(&[4])?;
                    write_str(&mut w, lexical)?;
                    write_str(&mut w, lang)?;
                }
            },
        }
    }
    w.write_all(&(index.spo.len() as u64).to_le_bytes())?;
    for t in &index.spo {
        w.write_all(&t.subject.to_le_bytes())?;
        w.write_all(&t.predicate.to_le_bytes())?;
        w.write_all(&t.object.to_le_bytes())?;
    }
    w.flush()
}

struct Reader<R> {
    inner: R,
}

impl<R: Read> Reader<R> {
    fn bytes<const N: usize>(&mut self) -> Result<[u8; N], SnapshotError> {
        let mut buf = [0u8; N];
        self.inner.read_exact(&mut buf)?;
        Ok(buf)
    }

    fn u32(&mut self) -> Result<u32, SnapshotError> {
        Ok(u32::from_le_bytes(self.bytes()?))
    }

    fn u64(&mut self) -> Result<u64, SnapshotError> {
        Ok(u64::from_le_bytes(self.bytes()?))
    }

    fn string(&mut self) -> Result<String, SnapshotError> {
        let len = self.u32()? as usize;
        let mut buf = vec![0u8; len];
        self.inner.read_exact(&mut buf)?;
        String::from_utf8(buf).map_err(|_| SnapshotError::Corrupt("invalid UTF-8 in string"))
    }
}

pub fn read_snapshot(r: impl Read) -> Result<DatasetIndex, SnapshotError> {
    let mut r = Reader { inner: r };
    if r.bytes::<8>()? != SNAPSHOT_MAGIC {
        return Err(SnapshotError::BadMagic);
    }
    let version = r.u32()?;
    if version != SNAPSHOT_VERSION {
        return Err(SnapshotError::UnsupportedVersion(version));
    }
    let label_count = r.u32()?;
    let label_predicates = (0..label_count).map(|_| r.string()).collect::<Result<Vec<_>, _>>()?;

    let term_count = r.u64()? as usize;
    let mut terms = IndexSet::with_capacity_and_hasher(term_count, Default::default());
    for _ in 0..term_count {
        let [tag] = r.bytes::<1>()?;
        let term = match tag {
            0 => Term::Iri(r.string()?),
            1 => Term::BlankNode(r.string()?),
            2 => Term::plain_literal(r.string()?),
            3 => {
                let lexical = r.string()?;
                Term::typed_literal(lexical, r.string()?)
            }
            4 => {
                let lexical = r.string()?;
                Term::lang_literal(lexical, r.string()?)
            }
            _ => return Err(SnapshotError::Corrupt("unknown term tag")),
        };
        if !terms.insert(term) {
            return Err(SnapshotError::Corrupt("duplicate term"));
        }
    }

    let triple_count = r.u64()? as usize;
    let mut triples = Vec::with_capacity(triple_count);
    for _ in 0..triple_count {
        let t = EncodedTriple {
            subject: r.u32()?,
            predicate: r.u32()?,
            object: r.u32()?,
        };
        if [t.subject, t.predicate, t.object]
            .iter()
            .any(|&id| id as usize >= term_count)
        {
            return Err(SnapshotError::Corrupt("triple references unknown term"));
        }
        triples.push(t);
    }
    Ok(DatasetIndex::from_parts(terms, triples, label_predicates))
}
