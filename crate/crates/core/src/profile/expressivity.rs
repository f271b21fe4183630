use std::fmt;

use serde::{Deserialize, Serialize};

use crate::index::DatasetIndex;
use crate::rdf::Term;
use crate::vocab;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Base {
    #[default]
    AL,
    ALC,
    S,
}

/// Strongest number restriction in use; only one letter is reported.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Cardinality {
    F,
    N,
    Q,
}

/// Description logic name assembled from the OWL constructs a graph uses.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Expressivity {
    pub base: Base,
    pub role_hierarchy: bool,
    pub complex_roles: bool,
    pub nominals: bool,
    pub inverse: bool,
    pub cardinality: Option<Cardinality>,
    pub datatypes: bool,
}

impl fmt::Display for Expressivity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::from(match self.base {
            Base::AL => "AL",
            Base::ALC => "ALC",
            Base::S => "S",
        });
        // R subsumes H
        if self.complex_roles {
            out.push('R');
        } else if self.role_hierarchy {
            out.push('H');
        }
        if self.nominals {
            out.push('O');
        }
        if self.inverse {
            out.push('I');
        }
        match self.cardinality {
            Some(Cardinality::F) => out.push('F'),
            Some(Cardinality::N) => out.push('N'),
            Some(Cardinality::Q) => out.push('Q'),
            None => {}
        }
        if self.datatypes {
            out.push('D');
        }
        f.write_str(&out)
    }
}

pub fn detect_expressivity(index: &DatasetIndex) -> Expressivity {
    let present = |iri: &str| index.iri_id(iri).is_some();
    let any = |iris: &[&str]| iris.iter().any(|i| present(i));

    let base = if present(vocab::OWL_TRANSITIVE_PROPERTY) {
        Base::S
    } else if any(&[vocab::OWL_COMPLEMENT_OF, vocab::OWL_UNION_OF]) {
        Base::ALC
    } else {
        Base::AL
    };

    let role_hierarchy = index.iri_id(vocab::RDFS_SUBPROPERTY_OF).is_some_and(|sub| {
        index.with_predicate(sub).any(|t| {
            [t.subject, t.object]
                .iter()
                .all(|&id| matches!(index.term(id), Some(Term::Iri(iri)) if !vocab::is_builtin(iri)))
        })
    });

    let cardinality = if any(&[
        vocab::OWL_QUALIFIED_CARDINALITY,
        vocab::OWL_MIN_QUALIFIED_CARDINALITY,
        vocab::OWL_MAX_QUALIFIED_CARDINALITY,
    ]) {
        Some(Cardinality::Q)
    } else if any(&[
        vocab::OWL_CARDINALITY,
        vocab::OWL_MIN_CARDINALITY,
        vocab::OWL_MAX_CARDINALITY,
    ]) {
        Some(Cardinality::N)
    } else if any(&[vocab::OWL_FUNCTIONAL_PROPERTY, vocab::OWL_INVERSE_FUNCTIONAL_PROPERTY]) {
        Some(Cardinality::F)
    } else {
        None
    };

    let datatypes = present(vocab::OWL_DATATYPE_PROPERTY) || index.terms().any(|t| t.datatype().is_some());

    Expressivity {
        base,
        role_hierarchy,
        complex_roles: any(&[vocab::OWL_PROPERTY_CHAIN_AXIOM, vocab::OWL_HAS_SELF]),
        nominals: any(&[vocab::OWL_ONE_OF, vocab::OWL_HAS_VALUE]),
        inverse: any(&[vocab::OWL_INVERSE_OF, vocab::OWL_SYMMETRIC_PROPERTY]),
        cardinality,
        datatypes,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn letter_order_and_subsumption() {
        let e = Expressivity {
            base: Base::S,
            role_hierarchy: true,
            complex_roles: true,
            nominals: true,
            inverse: true,
            cardinality: Some(Cardinality::F),
            datatypes: false,
        };
        assert_eq!(e.to_string(), "SROIF");
        let e = Expressivity {
            base: Base::ALC,
            role_hierarchy: true,
            cardinality: Some(Cardinality::Q),
            datatypes: true,
            ..Default::default()
        };
        assert_eq!(e.to_string(), "ALCHQD");
        assert_eq!(Expressivity::default().to_string(), "AL");
    }
}
