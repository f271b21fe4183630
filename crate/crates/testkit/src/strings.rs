//! Reference string similarities written straight from their definitions.

use std::collections::BTreeSet;

/// Wagner-Fischer edit distance over the full (n+1) x (m+1) table.
pub fn edit_distance(a: &str, b: &str) -> usize {
    let a: Vec<char> = a.chars().collect();
    let b: Vec<char> = b.chars().collect();
    let mut d = vec![vec![0usize; b.len() + 1]; a.len() + 1];
    for (i, row) in d.iter_mut().enumerate() {
        row[0] = i;
    }
    for j in 0..=b.len() {
        d[0][j] = j;
    }
    for i in 1..=a.len() {
        for j in 1..=b.len() {
            let cost = if a[i - 1] == b[j - 1] { 0 } else { 1 };
            d[i][j] = (d[i - 1][j] + 1).min(d[i][j - 1] + 1).min(d[i - 1][j - 1] + cost);
        }
    }
    d[a.len()][b.len()]
}

pub fn scaled_levenshtein(a: &str, b: &str) -> f64 {
    let n = a.chars().count().max(b.chars().count());
    if n == 0 {
        1.0
    } else {
        1.0 - edit_distance(a, b) as f64 / n as f64
    }
}

pub fn jaccard(a: &str, b: &str) -> f64 {
    let sa: BTreeSet<&str> = a.split_whitespace().collect();
    let sb: BTreeSet<&str> = b.split_whitespace().collect();
    let union = sa.union(&sb).count();
    if union == 0 {
        return 1.0;
    }
    sa.intersection(&sb).count() as f64 / union as f64
}

/// Jaro similarity: characters match when equal and no further apart than
/// floor(max(|a|, |b|) / 2) - 1; t is half the number of matched characters
/// that appear in a different order.
pub fn jaro(a: &str, b: &str) -> f64 {
    let a: Vec<char> = a.chars().collect();
    let b: Vec<char> = b.chars().collect();
    if a.is_empty() && b.is_empty() {
        return 1.0;
    }
    let window = (a.len().max(b.len()) / 2) as isize - 1;
    let window = window.max(0);
    let mut partner: Vec<Option<usize>> = vec![None; b.len()];
    for (i, ca) in a.iter().enumerate() {
        let found =
            (0..b.len()).find(|&j| (i as isize - j as isize).abs() <= window && partner[j].is_none() && b[j] == *ca);
        if let Some(j) = found {
            partner[j] = Some(i);
        }
    }
    let mut a_order: Vec<usize> = partner.iter().flatten().copied().collect();
    let b_seq: Vec<char> = partner
        .iter()
        .enumerate()
        .filter(|(_, p)| p.is_some())
        .map(|(j, _)| b[j])
        .collect();
    a_order.sort();
    let a_seq: Vec<char> = a_order.iter().map(|&i| a[i]).collect();
    let m = a_seq.len();
    if m == 0 {
        return 0.0;
    }
    let out_of_order = a_seq.iter().zip(&b_seq).filter(|(x, y)| x != y).count();
    let (m, t) = (m as f64, out_of_order as f64 / 2.0);
    (m / a.len() as f64 + m / b.len() as f64 + (m - t) / m) / 3.0
}

/// Jaro-Winkler with prefix scale 0.1 over at most four characters.
pub fn jaro_winkler(a: &str, b: &str) -> f64 {
    let j = jaro(a, b);
    let ac: Vec<char> = a.chars().collect();
    let bc: Vec<char> = b.chars().collect();
    let mut l = 0;
    while l < 4 && l < ac.len() && l < bc.len() && ac[l] == bc[l] {
        l += 1;
    }
    j + l as f64 * 0.1 * (1.0 - j)
}

/// Monge-Elkan over whitespace tokens: the full token score matrix is
/// computed, each row contributes its maximum, and the two directions are
/// combined by taking the larger mean.
pub fn monge_elkan(a: &str, b: &str, inner: fn(&str, &str) -> f64) -> f64 {
    let ta: Vec<&str> = a.split_whitespace().collect();
    let tb: Vec<&str> = b.split_whitespace().collect();
    if ta.is_empty() || tb.is_empty() {
        return if ta.is_empty() && tb.is_empty() { 1.0 } else { 0.0 };
    }
    let matrix: Vec<Vec<f64>> = ta.iter().map(|x| tb.iter().map(|y| inner(x, y)).collect()).collect();
    let row_max: f64 = matrix
        .iter()
        .map(|r| r.iter().cloned().fold(f64::NEG_INFINITY, f64::max))
        .sum();
    let col_max: f64 = (0..tb.len())
        .map(|j| matrix.iter().map(|r| r[j]).fold(f64::NEG_INFINITY, f64::max))
        .sum();
    (row_max / ta.len() as f64).max(col_max / tb.len() as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn textbook_values() {
        assert_eq!(edit_distance("kitten", "sitting"), 3);
        assert_eq!(edit_distance("", "abc"), 3);
        assert!((jaro("dixon", "dicksonx") - 0.7666666666666666).abs() < 1e-12);
        assert!((jaro_winkler("dwayne", "duane") - 0.84).abs() < 1e-12);
        assert!((jaro("crate", "trace") - 0.7333333333333333).abs() < 1e-12);
    }
}
