//! Seeded synthetic graphs.

use std::collections::HashSet;
use std::io::{self, Write};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::model::*;

/// Shape of a synthetic profiling fixture.
#[derive(Clone, Debug)]
pub struct SyntheticSpec {
    pub seed: u64,
    pub classes: usize,
    pub instances: usize,
    pub untyped_subjects: usize,
    pub edges_per_instance: usize,
    /// Probability that an instance carries a second and third type.
    pub multi_typing: f64,
    /// Number of subclass cycles (including one self loop) to inject.
    pub cycles: usize,
    /// Fraction of triples emitted twice.
    pub duplicates: f64,
    /// Root the hierarchy at owl:Thing and leave a few classes parentless.
    pub use_thing: bool,
    pub blank_instances: usize,
}

impl SyntheticSpec {
    pub fn small(seed: u64) -> Self {
        Self {
            seed,
            classes: 40,
            instances: 600,
            untyped_subjects: 60,
            edges_per_instance: 4,
            multi_typing: 0.15,
            cycles: 2,
            duplicates: 0.05,
            use_thing: seed % 2 == 0,
            blank_instances: 10,
        }
    }
}

fn base(seed: u64) -> String {
    format!("http://syn{seed}.example/")
}

/// A fixture graph with cycles, multi-typing, untyped subjects, duplicate
/// triples, dual-typed terms, blank nodes and mixed literal kinds.
pub fn synthetic_graph(spec: &SyntheticSpec) -> Vec<Triple> {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let ns = base(spec.seed);
    let class = |i: usize| Node::iri(format!("{ns}class/C{i}"));
    let pred = |i: usize| format!("{ns}prop/p{i}");
    let mut out = Vec::new();

    // hierarchy: random tree, extra parents, cycles
    let parentless = if spec.use_thing { 3.min(spec.classes) } else { 0 };
    for i in 1..spec.classes {
        if i < parentless {
            out.push(Triple::new(class(i), RDF_TYPE, Node::iri(OWL_CLASS)));
            continue;
        }
        let p = rng.gen_range(0..i);
        out.push(Triple::new(class(i), RDFS_SUBCLASS_OF, class(p)));
        if rng.gen_bool(0.1) {
            let q = rng.gen_range(0..i);
            out.push(Triple::new(class(i), RDFS_SUBCLASS_OF, class(q)));
        }
    }
    if spec.classes > 0 {
        if spec.use_thing {
            out.push(Triple::new(class(0), RDFS_SUBCLASS_OF, Node::iri(OWL_THING)));
        } else {
            out.push(Triple::new(class(0), RDF_TYPE, Node::iri(OWL_CLASS)));
        }
    }
    for c in 0..spec.cycles {
        if spec.classes < 4 {
            break;
        }
        if c == 0 {
            let i = rng.gen_range(0..spec.classes);
            out.push(Triple::new(class(i), RDFS_SUBCLASS_OF, class(i)));
        } else {
            // an edge from an early class down to a late one closes a loop
            // whenever the late one descends from the early one
            let hi = rng.gen_range(spec.classes / 2..spec.classes);
            let lo = rng.gen_range(0..spec.classes / 4);
            out.push(Triple::new(class(lo), RDFS_SUBCLASS_OF, class(hi)));
            out.push(Triple::new(class(hi), RDFS_SUBCLASS_OF, class(lo)));
        }
    }
    // a class also used as an instance of another class
    if spec.classes >= 6 {
        out.push(Triple::new(class(5), RDF_TYPE, class(1)));
    }

    // instances with types, labels and literals
    let mut entities: Vec<Node> = (0..spec.instances)
        .map(|i| Node::iri(format!("{ns}resource/e{i}")))
        .collect();
    entities.extend((0..spec.blank_instances).map(|i| Node::blank(format!("b{i}"))));
    for (i, e) in entities.iter().enumerate() {
        if spec.classes == 0 {
            break;
        }
        out.push(Triple::new(e.clone(), RDF_TYPE, class(rng.gen_range(0..spec.classes))));
        if rng.gen_bool(spec.multi_typing) {
            for _ in 0..rng.gen_range(1..=2) {
                out.push(Triple::new(e.clone(), RDF_TYPE, class(rng.gen_range(0..spec.classes))));
            }
        }
        if spec.use_thing && i % 7 == 0 {
            out.push(Triple::new(e.clone(), RDF_TYPE, Node::iri(OWL_THING)));
        }
        out.push(Triple::new(
            e.clone(),
            RDFS_LABEL,
            Node::lang(format!("entity {i}"), "en"),
        ));
        match i % 3 {
            0 => out.push(Triple::new(
                e.clone(),
                &pred(100),
                Node::typed(i.to_string(), XSD_INTEGER),
            )),
            1 => out.push(Triple::new(
                e.clone(),
                &pred(101),
                Node::lit(format!("note \"{i}\"\nline")),
            )),
            _ => {}
        }
    }

    let untyped: Vec<Node> = (0..spec.untyped_subjects)
        .map(|i| Node::iri(format!("{ns}resource/u{i}")))
        .collect();
    let targets: Vec<Node> = entities.iter().chain(&untyped).cloned().collect();
    let relations = 8;
    for s in entities.iter().chain(&untyped) {
        let n = rng.gen_range(0..=2 * spec.edges_per_instance);
        for _ in 0..n {
            let o = targets.choose(&mut rng).unwrap().clone();
            out.push(Triple::new(s.clone(), &pred(rng.gen_range(0..relations)), o));
        }
        if rng.gen_bool(0.1) {
            out.push(Triple::new(
                s.clone(),
                &pred(7),
                Node::iri(format!("{ns}external/x{}", rng.gen::<u16>())),
            ));
        }
    }

    // property declarations, one of them unused
    out.push(Triple::new(
        Node::iri(pred(0)),
        RDF_TYPE,
        Node::iri(OWL_OBJECT_PROPERTY),
    ));
    out.push(Triple::new(
        Node::iri(pred(200)),
        RDF_TYPE,
        Node::iri(OWL_DATATYPE_PROPERTY),
    ));
    out.push(Triple::new(
        Node::iri(pred(201)),
        RDF_TYPE,
        Node::iri("http://www.w3.org/1999/02/22-rdf-syntax-ns#Property"),
    ));

    let dups: Vec<Triple> = out.iter().filter(|_| rng.gen_bool(spec.duplicates)).cloned().collect();
    out.extend(dups);
    out.shuffle(&mut rng);
    out
}

const CONSONANTS: &[u8] = b"bdfgklmnprstvz";
const VOWELS: &[u8] = b"aeiou";

fn word(rng: &mut impl Rng) -> String {
    let syllables = rng.gen_range(2..=3);
    let mut w = String::new();
    for _ in 0..syllables {
        w.push(*CONSONANTS.choose(rng).unwrap() as char);
        w.push(*VOWELS.choose(rng).unwrap() as char);
    }
    w
}

/// Two-word labels that are distinct from each other.
pub fn unique_labels(rng: &mut impl Rng, n: usize) -> Vec<String> {
    let mut seen = HashSet::new();
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let label = format!("{} {}", word(rng), word(rng));
        if seen.insert(label.clone()) {
            out.push(label);
        }
    }
    out
}

/// Replaces each non-space character with a different letter with
/// probability `rate`.
pub fn add_noise(rng: &mut impl Rng, label: &str, rate: f64) -> String {
    label
        .chars()
        .map(|c| {
            if c == ' ' || !rng.gen_bool(rate) {
                return c;
            }
            loop {
                let r = rng.gen_range(b'a'..=b'z') as char;
                if r != c {
                    return r;
                }
            }
        })
        .collect()
}

#[derive(Clone, Debug)]
pub struct PlantedSpec {
    pub seed: u64,
    pub size_a: usize,
    pub size_b: usize,
    /// True number of shared entities.
    pub overlap: usize,
    /// Per-character substitution probability on the B side.
    pub noise: f64,
    /// Share of the true links published as gold links.
    pub gold_fraction: f64,
}

/// Two graphs that describe `overlap` common entities under different IRIs.
#[derive(Clone, Debug)]
pub struct PlantedPair {
    pub a: Vec<Triple>,
    pub b: Vec<Triple>,
    /// The published subset of the true links, as owl:sameAs triples.
    pub gold: Vec<Triple>,
    pub true_links: Vec<(String, String)>,
}

pub fn planted_pair(spec: &PlantedSpec) -> PlantedPair {
    assert!(spec.overlap <= spec.size_a.min(spec.size_b));
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let labels = unique_labels(&mut rng, spec.size_a + spec.size_b - spec.overlap);
    let a_iri = |i: usize| format!("http://a.example/resource/{i}");
    let b_iri = |i: usize| format!("http://b.example/entity/{i}");

    // A gets labels [0, size_a); B shares [0, overlap) and adds the rest
    let mut b_labels: Vec<usize> = (0..spec.overlap).collect();
    b_labels.extend(spec.size_a..spec.size_a + spec.size_b - spec.overlap);
    b_labels.shuffle(&mut rng);

    let graph = |iri: &dyn Fn(usize) -> String, class: &str, texts: Vec<String>, rng: &mut ChaCha8Rng| {
        let mut out = Vec::new();
        let n = texts.len();
        for (i, text) in texts.into_iter().enumerate() {
            let s = Node::iri(iri(i));
            out.push(Triple::new(s.clone(), RDF_TYPE, Node::iri(class)));
            out.push(Triple::new(s.clone(), RDFS_LABEL, Node::lit(text)));
            let o = Node::iri(iri(rng.gen_range(0..n)));
            out.push(Triple::new(s, "http://schema.example/related", o));
        }
        out
    };
    let a_texts: Vec<String> = labels[..spec.size_a].to_vec();
    let b_texts: Vec<String> = b_labels
        .iter()
        .map(|&l| add_noise(&mut rng, &labels[l], spec.noise))
        .collect();
    let a = graph(&a_iri, "http://a.example/ontology/Thing", a_texts, &mut rng);
    let b = graph(&b_iri, "http://b.example/ontology/Item", b_texts, &mut rng);

    let mut true_links: Vec<(String, String)> = b_labels
        .iter()
        .enumerate()
        .filter(|(_, &l)| l < spec.overlap)
        .map(|(j, &l)| (a_iri(l), b_iri(j)))
        .collect();
    true_links.sort();
    let gold = true_links
        .iter()
        .filter(|_| rng.gen_bool(spec.gold_fraction))
        .map(|(x, y)| Triple::new(Node::iri(x.clone()), OWL_SAME_AS, Node::iri(y.clone())))
        .collect();
    PlantedPair { a, b, gold, true_links }
}

/// Labels for blocking checks: a shared token vocabulary so that many
/// pairs overlap partially and some match exactly.
pub fn token_label_sets(seed: u64, n: usize) -> (Vec<String>, Vec<String>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let vocab: Vec<String> = (0..400).map(|_| word(&mut rng)).collect();
    let label = |rng: &mut ChaCha8Rng| {
        let k = rng.gen_range(1..=4);
        (0..k)
            .map(|_| vocab.choose(rng).unwrap().as_str())
            .collect::<Vec<_>>()
            .join(" ")
    };
    let a: Vec<String> = (0..n).map(|_| label(&mut rng)).collect();
    let b = (0..n)
        .map(|i| {
            if rng.gen_bool(0.5) {
                // derived from an A label by dropping, adding or swapping a token
                let mut t: Vec<&str> = a[rng.gen_range(0..n)].split(' ').collect();
                match rng.gen_range(0..4) {
                    0 if t.len() > 1 => {
                        t.remove(rng.gen_range(0..t.len()));
                    }
                    1 => t.push(vocab.choose(&mut rng).unwrap()),
                    2 => {
                        let k = rng.gen_range(0..t.len());
                        t[k] = vocab.choose(&mut rng).unwrap();
                    }
                    _ => {}
                }
                t.join(" ")
            } else {
                let _ = i;
                label(&mut rng)
            }
        })
        .collect();
    (a, b)
}

/// Writes `n_triples` triples over `distinct_terms` resource IRIs and 16
/// predicates. IRIs have a fixed width, so files with the same triple count
/// have the same size whatever the number of distinct terms.
pub fn write_scaling_dump(mut w: impl Write, seed: u64, n_triples: usize, distinct_terms: usize) -> io::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // a stride coprime with the pool size visits every term as a subject
    let mut stride = 7_919usize;
    while gcd(stride, distinct_terms) != 1 {
        stride += 2;
    }
    for i in 0..n_triples {
        let s = (i * stride) % distinct_terms;
        let o = rng.gen_range(0..distinct_terms);
        let p = rng.gen_range(0..16);
        writeln!(
            w,
            "<http://scale.example/r/{s:010}> <http://scale.example/p/{p:02}> <http://scale.example/r/{o:010}> ."
        )?;
    }
    Ok(())
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators_are_deterministic() {
        let s = SyntheticSpec::small(3);
        assert_eq!(synthetic_graph(&s), synthetic_graph(&s));
        let p = PlantedSpec {
            seed: 1,
            size_a: 200,
            size_b: 300,
            overlap: 100,
            noise: 0.1,
            gold_fraction: 0.6,
        };
        let x = planted_pair(&p);
        assert_eq!(x.true_links.len(), 100);
        assert_eq!(x.a.len(), 600);
        assert_eq!(planted_pair(&p).gold, x.gold);
    }

    #[test]
    fn noise_keeps_length_and_spaces() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let n = add_noise(&mut rng, "abc def", 1.0);
        assert_eq!(n.len(), 7);
        assert_eq!(&n[3..4], " ");
        assert!(n.chars().zip("abc def".chars()).all(|(x, y)| x != y || x == ' '));
    }

    #[test]
    fn scaling_dump_size_is_independent_of_term_count() {
        let mut small = Vec::new();
        let mut large = Vec::new();
        write_scaling_dump(&mut small, 1, 1000, 100).unwrap();
        write_scaling_dump(&mut large, 1, 1000, 900).unwrap();
        assert_eq!(small.len(), large.len());
    }
}
