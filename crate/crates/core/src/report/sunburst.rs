//! Class-size hierarchy for sunburst plots.

use serde::{Deserialize, Serialize};

use crate::index::{ClassHierarchy, DatasetIndex, TermId};
use crate::rdf::Term;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SunburstNode {
    /// `None` for the synthetic root and for "other" nodes.
    #[serde(rename = "classIRI")]
    pub class_iri: Option<String>,
    pub label: String,
    pub transitive_instance_count: usize,
    /// Remainder node standing for everything not shown as a child.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub other: bool,
    /// Child counts add up to more than this node's count, so children
    /// share instances through multi-typing.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub overlap: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub children: Vec<SunburstNode>,
}

impl SunburstNode {
    /// Number of nodes in this subtree.
    pub fn size(&self) -> usize {
        1 + self.children.iter().map(SunburstNode::size).sum::<usize>()
    }

    /// Height of this subtree; a leaf has depth 0.
    pub fn depth(&self) -> usize {
        self.children.iter().map(|c| c.depth() + 1).max().unwrap_or(0)
    }

    pub fn walk(&self, f: &mut impl FnMut(&SunburstNode)) {
        f(self);
        for c in &self.children {
            c.walk(f);
        }
    }
}

fn local_name(iri: &str) -> &str {
    let cut = iri.rfind(['#', '/']).map_or(0, |i| i + 1);
    if cut < iri.len() {
        &iri[cut..]
    } else {
        iri
    }
}

/// English or untagged label of `class`, or the last IRI segment.
fn class_label(index: &DatasetIndex, class: TermId) -> String {
    let predicates: Vec<TermId> = index
        .label_predicates()
        .iter()
        .filter_map(|p| index.iri_id(p))
        .collect();
    let mut best: Option<(bool, &str)> = None;
    for t in index.outgoing(class) {
        if !predicates.contains(&t.predicate) {
            continue;
        }
        if let Some(lit @ Term::Literal { lexical, .. }) = index.term(t.object) {
            let preferred = lit.language().is_none_or(|l| l.eq_ignore_ascii_case("en"));
            let key = (!preferred, lexical.as_str());
            if best.is_none_or(|b| key < b) {
                best = Some(key);
            }
        }
    }
    match best {
        Some((_, l)) => l.to_string(),
        None => index
            .term(class)
            .map(|t| local_name(t.lexical()).to_string())
            .unwrap_or_default(),
    }
}

struct Builder<'a> {
    hierarchy: &'a ClassHierarchy,
    index: &'a DatasetIndex,
    max_depth: usize,
    top_k: usize,
}

impl Builder<'_> {
    fn class_node(&self, n: usize, depth: usize) -> SunburstNode {
        let node = self.hierarchy.node(n);
        let rep = node.members[0];
        let mut out = SunburstNode {
            class_iri: self.index.term(rep).map(|t| t.lexical().to_string()),
            label: class_label(self.index, rep),
            transitive_instance_count: node.transitive_instance_count,
            other: false,
            overlap: false,
            children: Vec::new(),
        };
        self.attach(&mut out, &node.children, depth);
        out
    }

    fn attach(&self, parent: &mut SunburstNode, children: &[usize], depth: usize) {
        if depth >= self.max_depth || children.is_empty() {
            return;
        }
        let mut ranked: Vec<(usize, &str, usize)> = children
            .iter()
            .map(|&c| {
                let node = self.hierarchy.node(c);
                let iri = self.index.term(node.members[0]).map(Term::lexical).unwrap_or("");
                (node.transitive_instance_count, iri, c)
            })
            .collect();
        ranked.sort_by(|x, y| y.0.cmp(&x.0).then_with(|| x.1.cmp(y.1)));
        let total: usize = ranked.iter().map(|r| r.0).sum();
        parent.overlap = total > parent.transitive_instance_count;
        ranked.truncate(self.top_k);
        let shown: usize = ranked.iter().map(|r| r.0).sum();
        parent.children = ranked
            .into_iter()
            .map(|(_, _, c)| self.class_node(c, depth + 1))
            .collect();
        let remainder = parent.transitive_instance_count.saturating_sub(shown);
        if remainder > 0 {
            parent.children.push(SunburstNode {
                class_iri: None,
                label: "other".to_string(),
                transitive_instance_count: remainder,
                other: true,
                overlap: false,
                children: Vec::new(),
            });
        }
    }
}

/// Class sizes from the top concept downward, at most `max_depth` levels
/// below the root and `top_k` classes per parent plus an "other" node.
///
/// The root is `owl:Thing` when the graph uses it, otherwise a synthetic
/// node over all roots whose count is `total_instances`.
pub fn build_sunburst(
    hierarchy: &ClassHierarchy,
    index: &DatasetIndex,
    total_instances: usize,
    max_depth: usize,
    top_k: usize,
) -> SunburstNode {
    let builder = Builder {
        hierarchy,
        index,
        max_depth,
        top_k,
    };
    match hierarchy.top() {
        Some(top) => builder.class_node(top, 0),
        None => {
            let mut root = SunburstNode {
                class_iri: None,
                label: "root".to_string(),
                transitive_instance_count: total_instances,
                other: false,
                overlap: false,
                children: Vec::new(),
            };
            builder.attach(&mut root, hierarchy.roots(), 0);
            root
        }
    }
}
