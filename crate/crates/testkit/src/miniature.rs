//! An eight-graph miniature of a cross-graph comparison: overlapping
//! entity populations with per-graph IRIs, schemas, label noise and
//! partial identity links.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::generate::{add_noise, unique_labels};
use crate::model::*;

pub const GRAPHS: [&str; 8] = [
    "dbpedia",
    "yago",
    "wikidata",
    "babelnet",
    "opencyc",
    "nell",
    "caligraph",
    "voldemort",
];

/// Canonical classes and the local class names under which they appear.
const CANONICAL: [(&str, &str, &str); 10] = [
    ("Person", "Person", "Agent"),
    ("Organization", "Organisation", "Agent"),
    ("Populated place", "Settlement", "Place"),
    ("Uninhabited place", "NaturalPlace", "Place"),
    ("Species", "Species", "LivingThing"),
    ("Work", "Work", "Thing"),
    ("Building", "Building", "Place"),
    ("Gene", "Gene", "Biomolecule"),
    ("Protein", "Protein", "Biomolecule"),
    ("Event", "Event", "Thing"),
];

const SKOS: &str = "http://www.w3.org/2004/02/skos/core#prefLabel";

pub struct MiniGraph {
    pub label: &'static str,
    pub triples: Vec<Triple>,
    pub label_predicate: &'static str,
}

pub struct MiniSuite {
    pub graphs: Vec<MiniGraph>,
    /// Direct links per pair (i < j), written as N-Triples or CSV.
    pub gold: Vec<((usize, usize), Vec<(String, String)>)>,
    /// Links from graph entities to hub identifiers, shared by all pairs.
    pub hub: Vec<(String, String)>,
    pub mapping_json: String,
}

fn ns(graph: &str) -> String {
    format!("http://{graph}.mini.example/")
}

pub fn entity_iri(graph: &str, k: usize) -> String {
    format!("{}resource/E{k}", ns(graph))
}

fn class_iri(graph: &str, name: &str) -> String {
    format!("{}ontology/{name}", ns(graph))
}

/// Schema axioms that give each graph a different expressivity.
fn axioms(g: usize, graph: &str) -> Vec<Triple> {
    let p = |n: &str| Node::iri(format!("{}ontology/{n}", ns(graph)));
    let owl = |n: &str| Node::iri(format!("http://www.w3.org/2002/07/owl#{n}"));
    let rdfs = |n: &str| format!("http://www.w3.org/2000/01/rdf-schema#{n}");
    let owl_p = |n: &str| format!("http://www.w3.org/2002/07/owl#{n}");
    let mut t = vec![Triple::new(p("related"), RDF_TYPE, owl("ObjectProperty"))];
    if g % 2 == 0 {
        t.push(Triple::new(p("knows"), &rdfs("subPropertyOf"), p("related")));
    }
    if g % 3 == 0 {
        t.push(Triple::new(p("partOf"), RDF_TYPE, owl("TransitiveProperty")));
    }
    if g % 4 == 1 {
        t.push(Triple::new(p("spouse"), RDF_TYPE, owl("SymmetricProperty")));
    }
    if g == 2 || g == 5 {
        t.push(Triple::new(p("birthPlace"), RDF_TYPE, owl("FunctionalProperty")));
    }
    if g == 6 {
        t.push(Triple::new(
            Node::blank("r1"),
            &owl_p("minCardinality"),
            Node::typed("1", "http://www.w3.org/2001/XMLSchema#nonNegativeInteger"),
        ));
    }
    if g == 0 || g == 3 {
        t.push(Triple::new(Node::blank("e1"), &owl_p("oneOf"), Node::blank("list1")));
    }
    if g == 4 {
        t.push(Triple::new(p("Person"), &owl_p("complementOf"), p("Organisation")));
    }
    t
}

pub fn miniature_suite(seed: u64) -> MiniSuite {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let universe = 1200;
    let names = unique_labels(&mut rng, universe);
    let kinds: Vec<usize> = (0..universe).map(|_| rng.gen_range(0..CANONICAL.len())).collect();
    let coverage = [0.45, 0.40, 0.70, 0.50, 0.12, 0.10, 0.55, 0.08];
    let noise = [0.0, 0.02, 0.03, 0.05, 0.04, 0.06, 0.02, 0.05];
    // graphs without a given canonical class
    let missing: [&[usize]; 8] = [&[7, 8], &[7], &[], &[6], &[7, 8, 9], &[3, 7, 8], &[8], &[4, 7, 8]];

    let mut members: Vec<Vec<usize>> = Vec::new();
    let mut graphs = Vec::new();
    let mut mapping: BTreeMap<usize, Vec<(String, String)>> = BTreeMap::new();
    for (g, &graph) in GRAPHS.iter().enumerate() {
        let mut t = Vec::new();
        let thing = Node::iri(OWL_THING);
        let label_predicate = if graph == "nell" { SKOS } else { RDFS_LABEL };
        let mut parents: Vec<&str> = CANONICAL.iter().map(|c| c.2).collect();
        parents.sort_unstable();
        parents.dedup();
        for p in &parents {
            if *p != "Thing" {
                t.push(Triple::new(
                    Node::iri(class_iri(graph, p)),
                    RDFS_SUBCLASS_OF,
                    thing.clone(),
                ));
            }
        }
        for (k, (canonical, local, parent)) in CANONICAL.iter().enumerate() {
            if missing[g].contains(&k) {
                continue;
            }
            let c = Node::iri(class_iri(graph, local));
            let up = if *parent == "Thing" {
                thing.clone()
            } else {
                Node::iri(class_iri(graph, parent))
            };
            t.push(Triple::new(c.clone(), RDFS_SUBCLASS_OF, up));
            t.push(Triple::new(c.clone(), RDFS_LABEL, Node::lang(*canonical, "en")));
            // a deeper subclass for some kinds
            let sub = Node::iri(class_iri(graph, &format!("Notable{local}")));
            t.push(Triple::new(sub, RDFS_SUBCLASS_OF, c));
            mapping
                .entry(k)
                .or_default()
                .push((graph.to_string(), class_iri(graph, local)));
        }
        if g == 1 {
            // a cycle between two equivalent classes
            t.push(Triple::new(
                Node::iri(class_iri(graph, "Human")),
                RDFS_SUBCLASS_OF,
                Node::iri(class_iri(graph, "Person")),
            ));
            t.push(Triple::new(
                Node::iri(class_iri(graph, "Person")),
                RDFS_SUBCLASS_OF,
                Node::iri(class_iri(graph, "Human")),
            ));
        }
        t.extend(axioms(g, graph));

        let mut chosen: Vec<usize> = (0..universe)
            .filter(|&k| !missing[g].contains(&kinds[k]) && rng.gen_bool(coverage[g]))
            .collect();
        chosen.sort_unstable();
        for &k in &chosen {
            let e = Node::iri(entity_iri(graph, k));
            let (_, local, _) = CANONICAL[kinds[k]];
            let class = if rng.gen_bool(0.3) {
                format!("Notable{local}")
            } else {
                local.to_string()
            };
            t.push(Triple::new(e.clone(), RDF_TYPE, Node::iri(class_iri(graph, &class))));
            if rng.gen_bool(0.05) {
                t.push(Triple::new(e.clone(), RDF_TYPE, thing.clone()));
            }
            let text = add_noise(&mut rng, &names[k], noise[g]);
            t.push(Triple::new(e.clone(), label_predicate, Node::lang(text, "en")));
            if g % 2 == 0 {
                t.push(Triple::new(
                    e.clone(),
                    &format!("{}ontology/rank", ns(graph)),
                    Node::typed(rng.gen_range(1..500).to_string(), XSD_INTEGER),
                ));
            } else {
                t.push(Triple::new(
                    e.clone(),
                    &format!("{}ontology/note", ns(graph)),
                    Node::lit(format!("item {k}")),
                ));
            }
            for _ in 0..rng.gen_range(0..4) {
                let o = *chosen.choose(&mut rng).unwrap();
                let p = ["related", "knows", "partOf"][rng.gen_range(0..3)];
                t.push(Triple::new(
                    e.clone(),
                    &format!("{}ontology/{p}", ns(graph)),
                    Node::iri(entity_iri(graph, o)),
                ));
            }
        }
        // an untyped subject
        t.push(Triple::new(
            Node::iri(format!("{}resource/orphan", ns(graph))),
            &format!("{}ontology/related", ns(graph)),
            Node::iri(entity_iri(graph, chosen[0])),
        ));
        members.push(chosen);
        graphs.push(MiniGraph {
            label: graph,
            triples: t,
            label_predicate,
        });
    }

    let mut gold = Vec::new();
    for i in 0..GRAPHS.len() {
        for j in i + 1..GRAPHS.len() {
            let common: Vec<usize> = members[i]
                .iter()
                .copied()
                .filter(|k| members[j].binary_search(k).is_ok())
                .collect();
            let fraction = 0.3 + 0.6 * rng.gen::<f64>();
            let mut links: Vec<(String, String)> = common
                .iter()
                .filter(|_| rng.gen_bool(fraction))
                .map(|&k| (entity_iri(GRAPHS[i], k), entity_iri(GRAPHS[j], k)))
                .collect();
            if links.is_empty() {
                if let Some(&k) = common.first() {
                    links.push((entity_iri(GRAPHS[i], k), entity_iri(GRAPHS[j], k)));
                }
            }
            gold.push(((i, j), links));
        }
    }
    let mut hub = Vec::new();
    for (g, chosen) in members.iter().enumerate() {
        for &k in chosen.iter().filter(|_| rng.gen_bool(0.1)) {
            hub.push((entity_iri(GRAPHS[g], k), format!("http://hub.mini.example/id/{k}")));
        }
    }
    hub.shuffle(&mut rng);

    let mut mapping_json = String::from("{\n  \"classes\": [\n");
    for (k, (canonical, _, _)) in CANONICAL.iter().enumerate() {
        let per: Vec<String> = mapping
            .get(&k)
            .into_iter()
            .flatten()
            .map(|(g, iri)| format!("        \"{g}\": [\"{iri}\"]"))
            .collect();
        let _ = write!(
            mapping_json,
            "    {{\n      \"canonicalName\": \"{canonical}\",\n      \"perGraph\": {{\n{}\n      }}\n    }}{}\n",
            per.join(",\n"),
            if k + 1 < CANONICAL.len() { "," } else { "" }
        );
    }
    mapping_json.push_str("  ]\n}\n");

    MiniSuite {
        graphs,
        gold,
        hub,
        mapping_json,
    }
}

impl MiniSuite {
    /// File name of the link file for pair (i, j); every third pair uses CSV.
    pub fn gold_file_name(&self, pair: (usize, usize), n: usize) -> String {
        let ext = if n % 3 == 2 { "csv" } else { "nt" };
        format!("links/{}-{}.{ext}", GRAPHS[pair.0], GRAPHS[pair.1])
    }

    /// All files of the suite as (relative path, contents).
    pub fn files(&self) -> Vec<(String, String)> {
        let mut out = Vec::new();
        for g in &self.graphs {
            out.push((format!("graphs/{}.nt", g.label), to_ntriples(&g.triples)));
        }
        for (n, (pair, links)) in self.gold.iter().enumerate() {
            let name = self.gold_file_name(*pair, n);
            let body = if name.ends_with(".csv") {
                let mut s = String::from("source,target\n");
                for (a, b) in links {
                    let _ = writeln!(s, "{a},{b}");
                }
                s
            } else {
                let t: Vec<Triple> = links
                    .iter()
                    .map(|(a, b)| Triple::new(Node::iri(a.clone()), OWL_SAME_AS, Node::iri(b.clone())))
                    .collect();
                to_ntriples(&t)
            };
            out.push((name, body));
        }
        let hub: Vec<Triple> = self
            .hub
            .iter()
            .map(|(a, b)| Triple::new(Node::iri(a.clone()), OWL_SAME_AS, Node::iri(b.clone())))
            .collect();
        out.push(("links/hub.nt".to_string(), to_ntriples(&hub)));
        out.push(("classes.json".to_string(), self.mapping_json.clone()));

        let mut m = String::from("{\n  \"graphs\": [\n");
        for (i, g) in self.graphs.iter().enumerate() {
            let _ = writeln!(
                m,
                "    {{\"label\": \"{0}\", \"dump\": \"graphs/{0}.nt\", \"labelPredicates\": [\"{1}\"]}}{2}",
                g.label,
                g.label_predicate,
                if i + 1 < self.graphs.len() { "," } else { "" }
            );
        }
        m.push_str("  ],\n  \"gold\": [\n");
        for (n, (pair, _)) in self.gold.iter().enumerate() {
            let _ = writeln!(
                m,
                "    {{\"graphs\": [\"{}\", \"{}\"], \"files\": [\"{}\"]}}{}",
                GRAPHS[pair.0],
                GRAPHS[pair.1],
                self.gold_file_name(*pair, n),
                if n + 1 < self.gold.len() { "," } else { "" }
            );
        }
        m.push_str("  ],\n  \"sharedLinks\": [\"links/hub.nt\"],\n  \"classMapping\": \"classes.json\",\n  \"sunburst\": {\"depth\": 3, \"topK\": 12}\n}\n");
        out.push(("manifest.json".to_string(), m));
        out
    }
}
