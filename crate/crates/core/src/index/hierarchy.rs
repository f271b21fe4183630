use std::collections::VecDeque;

use super::{DatasetIndex, TermId, TermPartition};
use crate::vocab;

/// A strongly connected set of mutually-subclass classes.
#[derive(Clone, Debug)]
pub struct ClassNode {
    /// Member classes, ordered by IRI.
    pub members: Vec<TermId>,
    pub parents: Vec<usize>,
    pub children: Vec<usize>,
    /// Instances typed with one of the members, sorted by id.
    pub direct_instances: Vec<TermId>,
    /// Distinct instances of this node and all of its descendants.
    pub transitive_instance_count: usize,
    /// Shortest distance from a root.
    pub depth: usize,
}

impl ClassNode {
    pub fn direct_instance_count(&self) -> usize {
        self.direct_instances.len()
    }
}

/// `rdfs:subClassOf` hierarchy condensed over cycles.
///
/// When `owl:Thing` is a class its node is the only root and every other
/// parentless node is attached beneath it.
#[derive(Clone, Debug, Default)]
pub struct ClassHierarchy {
    nodes: Vec<ClassNode>,
    roots: Vec<usize>,
    node_of: Vec<Option<usize>>,
    top: Option<usize>,
}

impl ClassHierarchy {
    pub fn build(index: &DatasetIndex, partition: &TermPartition) -> Self {
        let classes = partition.classes();
        let mut local = vec![usize::MAX; index.term_count()];
        for (i, &c) in classes.iter().enumerate() {
            local[c as usize] = i;
        }
        let thing = index.iri_id(vocab::OWL_THING).filter(|&t| partition.is_class(t));

        let mut succ: Vec<Vec<usize>> = vec![Vec::new(); classes.len()];
        if let Some(sub) = index.iri_id(vocab::RDFS_SUBCLASS_OF) {
            for t in index.with_predicate(sub) {
                let (s, o) = (local[t.subject as usize], local[t.object as usize]);
                // superclasses of the top concept would make it a non-root
                if s == usize::MAX || o == usize::MAX || s == o || Some(t.subject) == thing {
                    continue;
                }
                succ[s].push(o);
            }
        }

        let component = tarjan_scc(&succ);
        let component_count = component.iter().map(|&c| c + 1).max().unwrap_or(0);
        let mut members: Vec<Vec<TermId>> = vec![Vec::new(); component_count];
        for (i, &c) in component.iter().enumerate() {
            members[c].push(classes[i]);
        }
        let label = |id: &TermId| index.term(*id).map(|t| t.to_string()).unwrap_or_default();
        for m in &mut members {
            m.sort_by_cached_key(label);
        }
        // deterministic node order, independent of term id assignment
        let mut order: Vec<usize> = (0..component_count).collect();
        order.sort_by_cached_key(|&c| label(&members[c][0]));
        let mut rank = vec![0; component_count];
        for (new, &old) in order.iter().enumerate() {
            rank[old] = new;
        }

        let mut nodes: Vec<ClassNode> = order
            .iter()
            .map(|&c| ClassNode {
                members: std::mem::take(&mut members[c]),
                parents: Vec::new(),
                children: Vec::new(),
                direct_instances: Vec::new(),
                transitive_instance_count: 0,
                depth: 0,
            })
            .collect();
        for (s, targets) in succ.iter().enumerate() {
            let child = rank[component[s]];
            for &o in targets {
                let parent = rank[component[o]];
                if parent != child {
                    nodes[child].parents.push(parent);
                    nodes[parent].children.push(child);
                }
            }
        }
        for node in &mut nodes {
            node.parents.sort_unstable();
            node.parents.dedup();
            node.children.sort_unstable();
            node.children.dedup();
        }

        let mut node_of = vec![None; index.term_count()];
        for (n, node) in nodes.iter().enumerate() {
            for &m in &node.members {
                node_of[m as usize] = Some(n);
            }
        }

        let top = thing.and_then(|t| node_of[t as usize]);
        let parentless: Vec<usize> = (0..nodes.len()).filter(|&n| nodes[n].parents.is_empty()).collect();
        let roots = match top {
            Some(top) => {
                for &n in parentless.iter().filter(|&&n| n != top) {
                    nodes[n].parents.push(top);
                    nodes[top].children.push(n);
                }
                nodes[top].children.sort_unstable();
                vec![top]
            }
            None => parentless,
        };

        let mut hierarchy = Self {
            nodes,
            roots,
            node_of,
            top,
        };
        hierarchy.assign_depths();
        hierarchy.assign_instances(index, partition);
        hierarchy
    }

    fn assign_depths(&mut self) {
        let mut depth = vec![usize::MAX; self.nodes.len()];
        let mut queue = VecDeque::new();
        for &r in &self.roots {
            depth[r] = 0;
            queue.push_back(r);
        }
        while let Some(n) = queue.pop_front() {
            for &c in &self.nodes[n].children {
                if depth[c] == usize::MAX {
                    depth[c] = depth[n] + 1;
                    queue.push_back(c);
                }
            }
        }
        for (node, d) in self.nodes.iter_mut().zip(depth) {
            node.depth = d;
        }
    }

    fn assign_instances(&mut self, index: &DatasetIndex, partition: &TermPartition) {
        let Some(type_id) = index.iri_id(vocab::RDF_TYPE) else {
            return;
        };
        let mut types_of: Vec<(TermId, usize)> = Vec::new();
        for t in index.with_predicate(type_id) {
            if !partition.is_instance(t.subject) {
                continue;
            }
            if let Some(n) = self.node_of(t.object) {
                types_of.push((t.subject, n));
                self.nodes[n].direct_instances.push(t.subject);
            }
        }
        for node in &mut self.nodes {
            node.direct_instances.sort_unstable();
            node.direct_instances.dedup();
        }

        // walk each instance's ancestor set once
        types_of.sort_unstable();
        let mut stamp = vec![u32::MAX; self.nodes.len()];
        let mut stack = Vec::new();
        let mut counts = vec![0usize; self.nodes.len()];
        for (k, group) in types_of.chunk_by(|a, b| a.0 == b.0).enumerate() {
            let mark = k as u32;
            for &(_, n) in group {
                if stamp[n] != mark {
                    stamp[n] = mark;
                    stack.push(n);
                }
            }
            while let Some(n) = stack.pop() {
                counts[n] += 1;
                for &p in &self.nodes[n].parents {
                    if stamp[p] != mark {
                        stamp[p] = mark;
                        stack.push(p);
                    }
                }
            }
        }
        for (node, c) in self.nodes.iter_mut().zip(counts) {
            node.transitive_instance_count = c;
        }
    }

    pub fn nodes(&self) -> &[ClassNode] {
        &self.nodes
    }

    pub fn node(&self, n: usize) -> &ClassNode {
        &self.nodes[n]
    }

    pub fn roots(&self) -> &[usize] {
        &self.roots
    }

    /// The node of `owl:Thing`, when present.
    pub fn top(&self) -> Option<usize> {
        self.top
    }

    pub fn node_of(&self, class: TermId) -> Option<usize> {
        self.node_of.get(class as usize).copied().flatten()
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// `start` plus every node below it.
    pub fn descendants(&self, start: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.nodes.len()];
        let mut stack: Vec<usize> = start.to_vec();
        let mut out = Vec::new();
        while let Some(n) = stack.pop() {
            if std::mem::replace(&mut seen[n], true) {
                continue;
            }
            out.push(n);
            stack.extend(self.nodes[n].children.iter().copied());
        }
        out.sort_unstable();
        out
    }

    /// Distinct instances of the given nodes and all their descendants.
    pub fn members(&self, start: &[usize]) -> Vec<TermId> {
        let mut out: Vec<TermId> = self
            .descendants(start)
            .into_iter()
            .flat_map(|n| self.nodes[n].direct_instances.iter().copied())
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }
}

/// Iterative Tarjan; returns the component index of every vertex.
fn tarjan_scc(succ: &[Vec<usize>]) -> Vec<usize> {
    const UNVISITED: usize = usize::MAX;
    let n = succ.len();
    let mut index = vec![UNVISITED; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut component = vec![UNVISITED; n];
    let mut stack = Vec::new();
    let mut call: Vec<(usize, usize)> = Vec::new();
    let mut next_index = 0;
    let mut next_component = 0;

    for root in 0..n {
        if index[root] != UNVISITED {
            continue;
        }
        call.push((root, 0));
        while let Some(&(v, edge)) = call.last() {
            if edge == 0 && index[v] == UNVISITED {
                index[v] = next_index;
                low[v] = next_index;
                next_index += 1;
                stack.push(v);
                on_stack[v] = true;
            }
            if let Some(&w) = succ[v].get(edge) {
                if let Some(frame) = call.last_mut() {
                    frame.1 += 1;
                }
                if index[w] == UNVISITED {
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            call.pop();
            if let Some(&(parent, _)) = call.last() {
                low[parent] = low[parent].min(low[v]);
            }
            if low[v] == index[v] {
                loop {
                    let w = stack.pop().expect("tarjan stack underflow");
                    on_stack[w] = false;
                    component[w] = next_component;
                    if w == v {
                        break;
                    }
                }
                next_component += 1;
            }
        }
    }
    component
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::index::IndexConfig;
    use crate::rdf::{Term, TripleRecord};

    fn build(triples: &[(&str, &str, &str)]) -> (DatasetIndex, TermPartition, ClassHierarchy) {
        let term = |s: &str| {
            if s.starts_with("http") {
                Term::iri(s)
            } else {
                Term::iri(format!("http://ex.org/{s}"))
            }
        };
        let index = DatasetIndex::build(
            triples
                .iter()
                .map(|(s, p, o)| TripleRecord::new(term(s), term(p), term(o)).unwrap()),
            IndexConfig::default(),
        )
        .unwrap();
        let partition = TermPartition::compute(&index);
        let hierarchy = ClassHierarchy::build(&index, &partition);
        (index, partition, hierarchy)
    }

    fn node(index: &DatasetIndex, h: &ClassHierarchy, name: &str) -> usize {
        h.node_of(index.iri_id(&format!("http://ex.org/{name}")).unwrap())
            .unwrap()
    }

    const SUB: &str = vocab::RDFS_SUBCLASS_OF;
    const TYPE: &str = vocab::RDF_TYPE;

    #[test]
    fn chain() {
        let (index, _, h) = build(&[("A", SUB, "B"), ("B", SUB, "C")]);
        assert_eq!(h.len(), 3);
        assert_eq!(h.roots(), &[node(&index, &h, "C")]);
        assert_eq!(h.node(node(&index, &h, "A")).depth, 2);
    }

    #[test]
    fn cycle_is_condensed() {
        let (index, _, h) = build(&[("A", SUB, "B"), ("B", SUB, "A")]);
        assert_eq!(h.len(), 1);
        assert_eq!(node(&index, &h, "A"), node(&index, &h, "B"));
        assert_eq!(h.node(0).members.len(), 2);
        assert!(h.node(0).parents.is_empty());
    }

    #[test]
    fn transitive_counts_deduplicate_multi_typing() {
        let (index, _, h) = build(&[("A", SUB, "B"), ("x", TYPE, "A"), ("y", TYPE, "A"), ("y", TYPE, "B")]);
        let b = h.node(node(&index, &h, "B"));
        assert_eq!(b.transitive_instance_count, 2);
        assert_eq!(b.direct_instance_count(), 1);
        assert_eq!(h.node(node(&index, &h, "A")).transitive_instance_count, 2);
    }

    #[test]
    fn thing_is_sole_root() {
        let (index, _, h) = build(&[
            ("A", SUB, "B"),
            ("C", SUB, vocab::OWL_THING),
            ("D", TYPE, vocab::OWL_CLASS),
            (vocab::OWL_THING, SUB, "A"),
        ]);
        let thing = h.top().unwrap();
        assert_eq!(h.roots(), &[thing]);
        assert_eq!(h.node(node(&index, &h, "A")).depth, 2);
        assert_eq!(h.node(node(&index, &h, "D")).depth, 1);
        assert!(h.nodes().iter().all(|n| n.depth != usize::MAX));
    }

    #[test]
    fn long_chain_does_not_overflow() {
        let names: Vec<String> = (0..20_000).map(|i| format!("C{i}")).collect();
        let triples: Vec<(&str, &str, &str)> = names
            .windows(2)
            .map(|w| (w[0].as_str(), SUB, w[1].as_str()))
            .chain(std::iter::once((names[19_999].as_str(), SUB, names[0].as_str())))
            .collect();
        let (_, _, h) = build(&triples);
        assert_eq!(h.len(), 1);
    }
}
