use std::fmt;
use std::io::{self, Write};

pub const RDF_TYPE: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";
pub const RDFS_LABEL: &str = "http://www.w3.org/2000/01/rdf-schema#label";
pub const RDFS_SUBCLASS_OF: &str = "http://www.w3.org/2000/01/rdf-schema#subClassOf";
pub const RDFS_CLASS: &str = "http://www.w3.org/2000/01/rdf-schema#Class";
pub const OWL_CLASS: &str = "http://www.w3.org/2002/07/owl#Class";
pub const OWL_THING: &str = "http://www.w3.org/2002/07/owl#Thing";
pub const OWL_SAME_AS: &str = "http://www.w3.org/2002/07/owl#sameAs";
pub const OWL_OBJECT_PROPERTY: &str = "http://www.w3.org/2002/07/owl#ObjectProperty";
pub const OWL_DATATYPE_PROPERTY: &str = "http://www.w3.org/2002/07/owl#DatatypeProperty";
pub const XSD_INTEGER: &str = "http://www.w3.org/2001/XMLSchema#integer";
pub const SKOS_PREF_LABEL: &str = "http://www.w3.org/2004/02/skos/core#prefLabel";
pub const SKOS_ALT_LABEL: &str = "http://www.w3.org/2004/02/skos/core#altLabel";

pub const NAMESPACES_RESERVED: [&str; 3] = [
    "http://www.w3.org/1999/02/22-rdf-syntax-ns#",
    "http://www.w3.org/2000/01/rdf-schema#",
    "http://www.w3.org/2002/07/owl#",
];

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Node {
    Iri(String),
    Blank(String),
    Literal {
        lexical: String,
        datatype: Option<String>,
        lang: Option<String>,
    },
}

impl Node {
    pub fn iri(s: impl Into<String>) -> Self {
        Node::Iri(s.into())
    }

    pub fn blank(s: impl Into<String>) -> Self {
        Node::Blank(s.into())
    }

    pub fn lit(s: impl Into<String>) -> Self {
        Node::Literal {
            lexical: s.into(),
            datatype: None,
            lang: None,
        }
    }

    pub fn typed(s: impl Into<String>, dt: &str) -> Self {
        Node::Literal {
            lexical: s.into(),
            datatype: Some(dt.to_string()),
            lang: None,
        }
    }

    pub fn lang(s: impl Into<String>, lang: &str) -> Self {
        Node::Literal {
            lexical: s.into(),
            datatype: None,
            lang: Some(lang.to_string()),
        }
    }

    pub fn as_iri(&self) -> Option<&str> {
        match self {
            Node::Iri(s) => Some(s),
            _ => None,
        }
    }

    pub fn is_literal(&self) -> bool {
        matches!(self, Node::Literal { .. })
    }
}

fn escape_iri(s: &str, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    for c in s.chars() {
        if c <= ' ' || "<>\"{}|^`\\".contains(c) {
            write!(f, "\\u{:04X}", c as u32)?;
        } else {
            write!(f, "{c}")?;
        }
    }
    Ok(())
}

impl fmt::Display for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Node::Iri(s) => {
                f.write_str("<")?;
                escape_iri(s, f)?;
                f.write_str(">")
            }
            Node::Blank(s) => write!(f, "_:{s}"),
            Node::Literal {
                lexical,
                datatype,
                lang,
            } => {
                f.write_str("\"")?;
                for c in lexical.chars() {
                    match c {
                        '"' => f.write_str("\\\"")?,
                        '\\' => f.write_str("\\\\")?,
                        '\n' => f.write_str("\\n")?,
                        '\r' => f.write_str("\\r")?,
                        c => write!(f, "{c}")?,
                    }
                }
                f.write_str("\"")?;
                if let Some(l) = lang {
                    write!(f, "@{l}")?;
                } else if let Some(dt) = datatype {
                    f.write_str("^^<")?;
                    escape_iri(dt, f)?;
                    f.write_str(">")?;
                }
                Ok(())
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Triple {
    pub s: Node,
    pub p: String,
    pub o: Node,
}

impl Triple {
    pub fn new(s: Node, p: &str, o: Node) -> Self {
        Self { s, p: p.to_string(), o }
    }
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {} .", self.s, Node::Iri(self.p.clone()), self.o)
    }
}

pub fn write_ntriples(triples: &[Triple], mut w: impl Write) -> io::Result<()> {
    for t in triples {
        writeln!(w, "{t}")?;
    }
    Ok(())
}

pub fn to_ntriples(triples: &[Triple]) -> String {
    let mut out = Vec::new();
    write_ntriples(triples, &mut out).expect("writing to memory");
    String::from_utf8(out).expect("utf-8 output")
}
