//! RDF terms, triples and the streaming N-Triples reader.

mod parser;

pub use parser::{open_dump, parse_line, IngestError, NTriplesParser, ParseReport, Strictness};

use std::fmt;

/// Annotation carried by a literal: none, a datatype IRI or a language tag.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LiteralTag {
    Plain,
    Datatype(String),
    Language(String),
}

/// A parsed RDF term.
///
/// A literal holds at most one of datatype and language tag; [`LiteralTag`]
/// makes the other combinations unrepresentable.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Iri(String),
    BlankNode(String),
    Literal { lexical: String, tag: LiteralTag },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TermKind {
    Iri,
    BlankNode,
    Literal,
}

impl Term {
    pub fn iri(value: impl Into<String>) -> Self {
        Term::Iri(value.into())
    }

    pub fn blank(label: impl Into<String>) -> Self {
        Term::BlankNode(label.into())
    }

    pub fn plain_literal(lexical: impl Into<String>) -> Self {
        Term::Literal {
            lexical: lexical.into(),
            tag: LiteralTag::Plain,
        }
    }

    pub fn typed_literal(lexical: impl Into<String>, datatype: impl Into<String>) -> Self {
        Term::Literal {
            lexical: lexical.into(),
            tag: LiteralTag::Datatype(datatype.into()),
        }
    }

    pub fn lang_literal(lexical: impl Into<String>, lang: impl Into<String>) -> Self {
        Term::Literal {
            lexical: lexical.into(),
            tag: LiteralTag::Language(lang.into()),
        }
    }

    pub fn kind(&self) -> TermKind {
        match self {
            Term::Iri(_) => TermKind::Iri,
            Term::BlankNode(_) => TermKind::BlankNode,
            Term::Literal { .. } => TermKind::Literal,
        }
    }

    /// The lexical form: IRI text, blank node label or literal value.
    pub fn lexical(&self) -> &str {
        match self {
            Term::Iri(s) | Term::BlankNode(s) => s,
            Term::Literal { lexical, .. } => lexical,
        }
    }

    pub fn as_iri(&self) -> Option<&str> {
        match self {
            Term::Iri(s) => Some(s),
            _ => None,
        }
    }

    pub fn is_literal(&self) -> bool {
        matches!(self, Term::Literal { .. })
    }

    pub fn datatype(&self) -> Option<&str> {
        match self {
            Term::Literal {
                tag: LiteralTag::Datatype(dt),
                ..
            } => Some(dt),
            _ => None,
        }
    }

    pub fn language(&self) -> Option<&str> {
        match self {
            Term::Literal {
                tag: LiteralTag::Language(l),
                ..
            } => Some(l),
            _ => None,
        }
    }
}

/// One subject-predicate-object statement.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TripleRecord {
    pub subject: Term,
    pub predicate: Term,
    pub object: Term,
}

impl TripleRecord {
    /// Builds a triple, rejecting literal subjects and non-IRI predicates.
    pub fn new(subject: Term, predicate: Term, object: Term) -> Option<Self> {
        if subject.is_literal() || predicate.kind() != TermKind::Iri {
            return None;
        }
        Some(Self {
            subject,
            predicate,
            object,
        })
    }
}

fn write_iri(f: &mut fmt::Formatter<'_>, iri: &str) -> fmt::Result {
    f.write_str("<")?;
    for c in iri.chars() {
        match c {
            '\u{0}'..='\u{20}' | '<' | '>' | '"' | '{' | '}' | '|' | '^' | '`' | '\\' => {
                write!(f, "\\u{:04X}", c as u32)?
            }
            _ => write!(f, "{c}")?,
        }
    }
    f.write_str(">")
}

fn write_string(f: &mut fmt::Formatter<'_>, value: &str) -> fmt::Result {
    f.write_str("\"")?;
    for c in value.chars() {
        match c {
            '"' => f.write_str("\\\"")?,
            '\\' => f.write_str("\\\\")?,
            '\n' => f.write_str("\\n")?,
            '\r' => f.write_str("\\r")?,
            _ => write!(f, "{c}")?,
        }
    }
    f.write_str("\"")
}

/// Canonical N-Triples form.
impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Iri(iri) => write_iri(f, iri),
            Term::BlankNode(label) => write!(f, "_:{label}"),
            Term::Literal { lexical, tag } => {
                write_string(f, lexical)?;
                match tag {
                    LiteralTag::Plain => Ok(()),
                    LiteralTag::Datatype(dt) => {
                        f.write_str("^^")?;
                        write_iri(f, dt)
                    }
                    LiteralTag::Language(lang) => write!(f, "@{lang}"),
                }
            }
        }
    }
}

impl fmt::Display for TripleRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {} .", self.subject, self.predicate, self.object)
    }
}
