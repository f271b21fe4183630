//! String similarity measures over normalized labels. All measures work on
//! Unicode scalar values and return a score in [0, 1].

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum Measure {
    Equality,
    ScaledLevenshtein,
    Jaccard,
    Jaro,
    JaroWinkler,
    MongeElkan,
}

impl Measure {
    pub const ALL: [Measure; 6] = [
        Measure::Equality,
        Measure::ScaledLevenshtein,
        Measure::Jaccard,
        Measure::Jaro,
        Measure::JaroWinkler,
        Measure::MongeElkan,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Measure::Equality => "equality",
            Measure::ScaledLevenshtein => "scaledLevenshtein",
            Measure::Jaccard => "jaccard",
            Measure::Jaro => "jaro",
            Measure::JaroWinkler => "jaroWinkler",
            Measure::MongeElkan => "mongeElkan",
        }
    }

    /// Similarity with Jaro-Winkler as the Monge-Elkan token measure.
    pub fn similarity(self, a: &str, b: &str) -> f64 {
        self.similarity_with(a, b, Measure::JaroWinkler)
    }

    /// Similarity with an explicit Monge-Elkan token measure. `inner` is
    /// ignored by the other measures.
    pub fn similarity_with(self, a: &str, b: &str, inner: Measure) -> f64 {
        match self {
            Measure::Equality => equality(a, b),
            Measure::ScaledLevenshtein => scaled_levenshtein(a, b),
            Measure::Jaccard => jaccard(a, b),
            Measure::Jaro => jaro(a, b),
            Measure::JaroWinkler => jaro_winkler(a, b),
            Measure::MongeElkan => {
                let inner = match inner {
                    // token-level Monge-Elkan of Monge-Elkan would recurse forever
                    Measure::MongeElkan => Measure::JaroWinkler,
                    m => m,
                };
                monge_elkan(a, b, |x, y| inner.similarity_with(x, y, inner))
            }
        }
    }
}

pub fn equality(a: &str, b: &str) -> f64 {
    if a == b {
        1.0
    } else {
        0.0
    }
}

pub fn levenshtein(a: &str, b: &str) -> usize {
    let a: Vec<char> = a.chars().collect();
    let b: Vec<char> = b.chars().collect();
    if a.is_empty() {
        return b.len();
    }
    let mut prev: Vec<usize> = (0..=b.len()).collect();
    let mut cur = vec![0; b.len() + 1];
    for (i, ca) in a.iter().enumerate() {
        cur[0] = i + 1;
        for (j, cb) in b.iter().enumerate() {
            let substitution = prev[j] + usize::from(ca != cb);
            cur[j + 1] = substitution.min(prev[j + 1] + 1).min(cur[j] + 1);
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    prev[b.len()]
}

/// 1 - edit distance / longer length; 1.0 for two empty strings.
pub fn scaled_levenshtein(a: &str, b: &str) -> f64 {
    let longest = a.chars().count().max(b.chars().count());
    if longest == 0 {
        return 1.0;
    }
    1.0 - levenshtein(a, b) as f64 / longest as f64
}

fn token_set(s: &str) -> Vec<&str> {
    let mut tokens: Vec<&str> = s.split_whitespace().collect();
    tokens.sort_unstable();
    tokens.dedup();
    tokens
}

/// Jaccard coefficient of the whitespace token sets.
pub fn jaccard(a: &str, b: &str) -> f64 {
    let ta = token_set(a);
    let tb = token_set(b);
    if ta.is_empty() && tb.is_empty() {
        return 1.0;
    }
    let shared = ta.iter().filter(|t| tb.binary_search(t).is_ok()).count();
    shared as f64 / (ta.len() + tb.len() - shared) as f64
}

pub fn jaro(a: &str, b: &str) -> f64 {
    let a: Vec<char> = a.chars().collect();
    let b: Vec<char> = b.chars().collect();
    if a.is_empty() && b.is_empty() {
        return 1.0;
    }
    if a.is_empty() || b.is_empty() {
        return 0.0;
    }
    let window = (a.len().max(b.len()) / 2).saturating_sub(1);
    let mut b_used = vec![false; b.len()];
    let mut a_matched = Vec::with_capacity(a.len());
    for (i, ca) in a.iter().enumerate() {
        let lo = i.saturating_sub(window);
        let hi = (i + window + 1).min(b.len());
        for j in lo..hi {
            if !b_used[j] && b[j] == *ca {
                b_used[j] = true;
                a_matched.push(*ca);
                break;
            }
        }
    }
    let m = a_matched.len();
    if m == 0 {
        return 0.0;
    }
    let b_matched = b.iter().zip(&b_used).filter(|(_, &u)| u).map(|(c, _)| c);
    let half_transpositions = a_matched.iter().zip(b_matched).filter(|(x, y)| x != y).count();
    let m = m as f64;
    let t = half_transpositions as f64 / 2.0;
    (m / a.len() as f64 + m / b.len() as f64 + (m - t) / m) / 3.0
}

pub const WINKLER_PREFIX_SCALE: f64 = 0.1;
pub const WINKLER_MAX_PREFIX: usize = 4;

pub fn jaro_winkler(a: &str, b: &str) -> f64 {
    let j = jaro(a, b);
    let prefix = a
        .chars()
        .zip(b.chars())
        .take(WINKLER_MAX_PREFIX)
        .take_while(|(x, y)| x == y)
        .count();
    j + prefix as f64 * WINKLER_PREFIX_SCALE * (1.0 - j)
}

fn monge_elkan_directed(a: &[&str], b: &[&str], inner: &impl Fn(&str, &str) -> f64) -> f64 {
    let total: f64 = a
        .iter()
        .map(|ta| b.iter().map(|tb| inner(ta, tb)).fold(0.0, f64::max))
        .sum();
    total / a.len() as f64
}

/// Symmetrized Monge-Elkan: the larger of the two directed scores.
pub fn monge_elkan(a: &str, b: &str, inner: impl Fn(&str, &str) -> f64) -> f64 {
    let ta: Vec<&str> = a.split_whitespace().collect();
    let tb: Vec<&str> = b.split_whitespace().collect();
    match (ta.is_empty(), tb.is_empty()) {
        (true, true) => 1.0,
        (true, false) | (false, true) => 0.0,
        _ => monge_elkan_directed(&ta, &tb, &inner).max(monge_elkan_directed(&tb, &ta, &inner)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kitten_sitting() {
        assert_eq!(levenshtein("kitten", "sitting"), 3);
        assert!((scaled_levenshtein("kitten", "sitting") - (1.0 - 3.0 / 7.0)).abs() < 1e-12);
    }

    #[test]
    fn jaro_reference_values() {
        assert!((jaro("martha", "marhta") - 0.944_444_444_444_444_4).abs() < 1e-12);
        assert!((jaro_winkler("martha", "marhta") - 0.961_111_111_111_111_1).abs() < 1e-12);
        assert_eq!(jaro("abc", "xyz"), 0.0);
    }

    #[test]
    fn identity_and_empty_strings() {
        for m in Measure::ALL {
            assert_eq!(
                m.similarity("university of mannheim", "university of mannheim"),
                1.0,
                "{m:?}"
            );
            assert_eq!(m.similarity("", ""), 1.0, "{m:?}");
            assert_eq!(m.similarity("", "abc"), 0.0, "{m:?}");
        }
    }

    #[test]
    fn jaccard_tokens() {
        assert!((jaccard("a b c", "b c d") - 0.5).abs() < 1e-12);
        assert_eq!(jaccard("a a b", "b a"), 1.0);
    }

    #[test]
    fn monge_elkan_is_symmetrized() {
        let a = "paul";
        let b = "paul johnson";
        let me = monge_elkan(a, b, jaro_winkler);
        assert_eq!(me, 1.0);
        assert_eq!(me, monge_elkan(b, a, jaro_winkler));
        let inner_eq = Measure::MongeElkan.similarity_with("x y", "x z", Measure::Equality);
        assert!((inner_eq - 0.5).abs() < 1e-12);
    }
}
