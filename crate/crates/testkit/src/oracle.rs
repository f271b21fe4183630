//! Brute-force reference computations over plain triples.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};

use crate::model::*;

fn is_builtin(iri: &str) -> bool {
    NAMESPACES_RESERVED.iter().any(|ns| iri.starts_with(ns))
}

fn is_meta(iri: &str) -> bool {
    iri == OWL_CLASS || iri == RDFS_CLASS
}

/// Reference profile of a graph, field by field.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct OracleProfile {
    pub instances: usize,
    pub assertions: usize,
    pub inter_instance_edges: usize,
    pub avg_linking_degree: f64,
    pub median_ingoing_edges: usize,
    pub median_outgoing_edges: usize,
    pub dual_typed_terms: usize,
    pub classes: usize,
    pub relations: usize,
    pub avg_depth: f64,
    pub avg_branching: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct OracleClassDetail {
    pub instances: usize,
    pub avg_degree: f64,
    pub median_in: usize,
    pub median_out: usize,
}

/// Sorts and takes the element at position (n - 1) / 2.
pub fn lower_median(mut v: Vec<usize>) -> usize {
    if v.is_empty() {
        return 0;
    }
    v.sort();
    v[(v.len() - 1) / 2]
}

/// A graph prepared for the reference computations.
pub struct OracleGraph {
    triples: Vec<Triple>,
    reserved_extra: Vec<String>,
    pub classes: BTreeSet<String>,
    pub instances: BTreeSet<Node>,
}

impl OracleGraph {
    pub fn new(triples: &[Triple], label_predicates: &[&str]) -> Self {
        let set: BTreeSet<Triple> = triples.iter().cloned().collect();
        let triples: Vec<Triple> = set.into_iter().collect();
        let mut reserved_extra: Vec<String> = label_predicates.iter().map(|s| s.to_string()).collect();
        reserved_extra.push(SKOS_PREF_LABEL.to_string());
        reserved_extra.push(SKOS_ALT_LABEL.to_string());

        let mut base: BTreeSet<String> = BTreeSet::new();
        for t in &triples {
            if t.p == RDF_TYPE && t.o.as_iri().is_some_and(is_meta) {
                if let Node::Iri(s) = &t.s {
                    base.insert(s.clone());
                }
            }
            if t.p == RDFS_SUBCLASS_OF {
                for n in [&t.s, &t.o] {
                    if let Node::Iri(s) = n {
                        base.insert(s.clone());
                    }
                }
            }
        }
        let mut classes = base.clone();
        for t in &triples {
            if t.p != RDF_TYPE {
                continue;
            }
            let Some(o) = t.o.as_iri() else { continue };
            let subject_is_class = matches!(&t.s, Node::Iri(s) if base.contains(s));
            if is_meta(o) || (!subject_is_class && (!is_builtin(o) || o == OWL_THING)) {
                classes.insert(o.to_string());
            }
        }
        let instances = triples
            .iter()
            .filter(|t| t.p == RDF_TYPE)
            .filter(|t| t.o.as_iri().is_some_and(|o| classes.contains(o) && !is_meta(o)))
            .map(|t| t.s.clone())
            .collect();
        Self {
            triples,
            reserved_extra,
            classes,
            instances,
        }
    }

    pub fn triples(&self) -> &[Triple] {
        &self.triples
    }

    fn reserved(&self, p: &str) -> bool {
        is_builtin(p) || self.reserved_extra.iter().any(|r| r == p)
    }

    /// (out entity edges, in entity edges, out assertions) per instance.
    fn degrees(&self) -> HashMap<&Node, (usize, usize, usize)> {
        let mut d: HashMap<&Node, (usize, usize, usize)> = self.instances.iter().map(|i| (i, (0, 0, 0))).collect();
        for t in &self.triples {
            if self.reserved(&t.p) {
                continue;
            }
            let s_inst = self.instances.contains(&t.s);
            let o_inst = self.instances.contains(&t.o);
            if s_inst {
                let e = d.get_mut(&t.s).unwrap();
                e.2 += 1;
                if o_inst {
                    e.0 += 1;
                }
            }
            if o_inst && s_inst {
                d.get_mut(&t.o).unwrap().1 += 1;
            }
        }
        d
    }

    fn relations(&self) -> usize {
        let mut rel: BTreeSet<&str> = BTreeSet::new();
        for t in &self.triples {
            if !self.reserved(&t.p) {
                rel.insert(&t.p);
            }
            if t.p == RDF_TYPE {
                if let (Node::Iri(s), Some(o)) = (&t.s, t.o.as_iri()) {
                    if (o == OWL_OBJECT_PROPERTY || o == OWL_DATATYPE_PROPERTY) && !self.reserved(s) {
                        rel.insert(s);
                    }
                }
            }
        }
        rel.len()
    }

    /// Subclass edges between classes, without self loops and without
    /// edges leaving the top concept.
    fn subclass_edges(&self) -> Vec<(&str, &str)> {
        let mut e: Vec<(&str, &str)> = self
            .triples
            .iter()
            .filter(|t| t.p == RDFS_SUBCLASS_OF)
            .filter_map(|t| Some((t.s.as_iri()?, t.o.as_iri()?)))
            .filter(|(s, o)| s != o && *s != OWL_THING)
            .collect();
        e.sort();
        e.dedup();
        e
    }

    /// Every class reachable from `c` via subclass edges, including `c`.
    fn ancestors(&self, edges: &[(&str, &str)]) -> BTreeMap<String, BTreeSet<String>> {
        let mut up: HashMap<&str, Vec<&str>> = HashMap::new();
        for &(s, o) in edges {
            up.entry(s).or_default().push(o);
        }
        let mut out = BTreeMap::new();
        for c in &self.classes {
            let mut seen: BTreeSet<String> = BTreeSet::new();
            let mut queue = vec![c.as_str()];
            while let Some(x) = queue.pop() {
                if seen.insert(x.to_string()) {
                    queue.extend(up.get(x).into_iter().flatten().copied());
                }
            }
            out.insert(c.clone(), seen);
        }
        out
    }

    /// Average depth and branching of the condensed hierarchy.
    fn tree_shape(&self) -> (f64, f64) {
        let edges = self.subclass_edges();
        let anc = self.ancestors(&edges);
        // component = set of mutually reachable classes, named by its smallest member
        let mut comp_of: BTreeMap<&str, String> = BTreeMap::new();
        for c in &self.classes {
            let name = anc[c].iter().filter(|a| anc[*a].contains(c)).min().cloned().unwrap();
            comp_of.insert(c, name);
        }
        let comps: BTreeSet<String> = comp_of.values().cloned().collect();
        if comps.is_empty() {
            return (0.0, 0.0);
        }
        let mut parents: BTreeMap<String, BTreeSet<String>> =
            comps.iter().map(|c| (c.clone(), BTreeSet::new())).collect();
        for &(s, o) in &edges {
            let (cs, co) = (&comp_of[s], &comp_of[o]);
            if cs != co {
                parents.get_mut(cs).unwrap().insert(co.clone());
            }
        }
        let top = self.classes.contains(OWL_THING).then(|| comp_of[OWL_THING].clone());
        if let Some(top) = &top {
            for (c, p) in parents.iter_mut() {
                if p.is_empty() && c != top {
                    p.insert(top.clone());
                }
            }
        }
        let is_root = |c: &String| match &top {
            Some(t) => c == t,
            None => parents[c].is_empty(),
        };
        // relax depth[c] = 1 + min over parents until stable
        let mut depth: BTreeMap<String, usize> = comps
            .iter()
            .map(|c| (c.clone(), if is_root(c) { 0 } else { usize::MAX }))
            .collect();
        loop {
            let mut changed = false;
            for c in &comps {
                if is_root(c) {
                    continue;
                }
                let best = parents[c]
                    .iter()
                    .map(|p| depth[p].saturating_add(1))
                    .min()
                    .unwrap_or(usize::MAX);
                if best < depth[c] {
                    depth.insert(c.clone(), best);
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        let avg_depth = depth.values().map(|&d| d as f64).sum::<f64>() / comps.len() as f64;
        let mut children: BTreeMap<&String, usize> = BTreeMap::new();
        for p in parents.values() {
            for x in p {
                *children.entry(x).or_default() += 1;
            }
        }
        let avg_branching = if children.is_empty() {
            0.0
        } else {
            children.values().sum::<usize>() as f64 / children.len() as f64
        };
        (avg_depth, avg_branching)
    }

    pub fn profile(&self) -> OracleProfile {
        let d = self.degrees();
        let n = self.instances.len();
        let inter: usize = d.values().map(|x| x.0).sum();
        let (avg_depth, avg_branching) = self.tree_shape();
        OracleProfile {
            instances: n,
            assertions: d.values().map(|x| x.2).sum(),
            inter_instance_edges: inter,
            avg_linking_degree: if n == 0 { 0.0 } else { inter as f64 / n as f64 },
            median_ingoing_edges: lower_median(d.values().map(|x| x.1).collect()),
            median_outgoing_edges: lower_median(d.values().map(|x| x.2).collect()),
            dual_typed_terms: self
                .instances
                .iter()
                .filter(|i| matches!(i, Node::Iri(s) if self.classes.contains(s)))
                .count(),
            classes: self.classes.len(),
            relations: self.relations(),
            avg_depth,
            avg_branching,
        }
    }

    /// Instances typed with a class that is a (reflexive, transitive)
    /// subclass of one of `classes`.
    pub fn class_members(&self, classes: &[&str]) -> BTreeSet<Node> {
        let edges = self.subclass_edges();
        self.members_with(&self.ancestors(&edges), classes)
    }

    fn members_with(&self, anc: &BTreeMap<String, BTreeSet<String>>, classes: &[&str]) -> BTreeSet<Node> {
        let mut out = BTreeSet::new();
        for t in &self.triples {
            if t.p != RDF_TYPE || !self.instances.contains(&t.s) {
                continue;
            }
            let Some(ty) = t.o.as_iri() else { continue };
            let Some(a) = anc.get(ty) else { continue };
            if classes.iter().any(|c| a.contains(*c)) {
                out.insert(t.s.clone());
            }
        }
        out
    }

    /// Members of each class, with the top concept above every parentless class.
    pub fn transitive_count(&self, class: &str) -> usize {
        if class == OWL_THING && self.classes.contains(OWL_THING) {
            return self
                .triples
                .iter()
                .filter(|t| t.p == RDF_TYPE && self.instances.contains(&t.s))
                .filter(|t| t.o.as_iri().is_some_and(|o| self.classes.contains(o)))
                .map(|t| &t.s)
                .collect::<HashSet<_>>()
                .len();
        }
        self.class_members(&[class]).len()
    }

    pub fn class_detail(&self, classes: &[&str]) -> OracleClassDetail {
        self.class_details(&[classes.to_vec()]).remove(0)
    }

    /// Detail rows for several class sets, sharing one pass over the graph.
    pub fn class_details(&self, sets: &[Vec<&str>]) -> Vec<OracleClassDetail> {
        let edges = self.subclass_edges();
        let anc = self.ancestors(&edges);
        let d = self.degrees();
        sets.iter()
            .map(|set| Self::detail_of(&self.members_with(&anc, set), &d))
            .collect()
    }

    fn detail_of(members: &BTreeSet<Node>, d: &HashMap<&Node, (usize, usize, usize)>) -> OracleClassDetail {
        let n = members.len();
        let out_entity: usize = members.iter().map(|m| d[m].0).sum();
        OracleClassDetail {
            instances: n,
            avg_degree: if n == 0 { 0.0 } else { out_entity as f64 / n as f64 },
            median_in: lower_median(members.iter().map(|m| d[m].1).collect()),
            median_out: lower_median(members.iter().map(|m| d[m].2).collect()),
        }
    }
}

/// Cross pairs (a, b) of identity links after transitive closure, found by
/// breadth-first search over the undirected statement graph. Pairs with the
/// same IRI on both sides are dropped.
pub fn closure_pairs(
    statements: &[(String, String)],
    in_a: impl Fn(&str) -> bool,
    in_b: impl Fn(&str) -> bool,
) -> BTreeSet<(String, String)> {
    let mut adj: BTreeMap<&str, Vec<&str>> = BTreeMap::new();
    for (l, r) in statements {
        adj.entry(l).or_default().push(r);
        adj.entry(r).or_default().push(l);
    }
    let mut seen: HashSet<&str> = HashSet::new();
    let mut out = BTreeSet::new();
    for &start in adj.keys() {
        if seen.contains(start) {
            continue;
        }
        let mut component = Vec::new();
        let mut queue = VecDeque::from([start]);
        seen.insert(start);
        while let Some(x) = queue.pop_front() {
            component.push(x);
            for &y in &adj[x] {
                if seen.insert(y) {
                    queue.push_back(y);
                }
            }
        }
        for &a in component.iter().filter(|x| in_a(x)) {
            for &b in component.iter().filter(|x| in_b(x)) {
                if a != b {
                    out.insert((a.to_string(), b.to_string()));
                }
            }
        }
    }
    out
}
