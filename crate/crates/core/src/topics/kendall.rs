use std::collections::{HashMap, HashSet};

use super::{top_k, KeywordRanking, TopicsError};

/// Number of discordant pairs between two orderings of the same items.
pub fn kendall_distance<S: AsRef<str>>(rank_a: &[S], rank_b: &[S]) -> Result<u64, TopicsError> {
    if rank_a.len() != rank_b.len() {
        return Err(TopicsError::DomainMismatch(format!("lengths {} and {}", rank_a.len(), rank_b.len())));
    }
    let pos: HashMap<&str, usize> = rank_b.iter().enumerate().map(|(i, w)| (w.as_ref(), i)).collect();
    if pos.len() != rank_b.len() {
        return Err(TopicsError::DomainMismatch("duplicate item".into()));
    }
    let mut seq = Vec::with_capacity(rank_a.len());
    let mut seen = HashSet::new();
    for w in rank_a {
        let w = w.as_ref();
        if !seen.insert(w) {
            return Err(TopicsError::DomainMismatch("duplicate item".into()));
        }
        match pos.get(w) {
            Some(&p) => seq.push(p),
            None => return Err(TopicsError::DomainMismatch(format!("{w:?} missing from second ranking"))),
        }
    }
    Ok(count_inversions(&mut seq))
}

fn count_inversions(seq: &mut [usize]) -> u64 {
    let n = seq.len();
    if n < 2 {
        return 0;
    }
    let mid = n / 2;
    let mut inv = count_inversions(&mut seq[..mid]) + count_inversions(&mut seq[mid..]);
    let mut merged = Vec::with_capacity(n);
    let (mut i, mut j) = (0, mid);
    while i < mid && j < n {
        if seq[i] <= seq[j] {
            merged.push(seq[i]);
            i += 1;
        } else {
            merged.push(seq[j]);
            inv += (mid - i) as u64;
            j += 1;
        }
    }
    merged.extend_from_slice(&seq[i..mid]);
    merged.extend_from_slice(&seq[j..]);
    seq.copy_from_slice(&merged);
    inv
}

/// Discordant pairs divided by the number of pairs; 0 for fewer than two items.
pub fn normalized_kendall_tau<S: AsRef<str>>(rank_a: &[S], rank_b: &[S]) -> Result<f64, TopicsError> {
    let d = kendall_distance(rank_a, rank_b)?;
    let m = rank_a.len() as u64;
    if m < 2 {
        return Ok(0.0);
    }
    Ok(d as f64 / (m * (m - 1) / 2) as f64)
}

/// Normalized Kendall tau between two top-`k` lists restricted to the words
/// they share, each keeping its own relative order.
pub fn aligned_kendall_tau(day_a: &KeywordRanking, day_b: &KeywordRanking, k: usize) -> f64 {
    let a = top_k(day_a, k);
    let b = top_k(day_b, k);
    let in_a: HashSet<&str> = a.iter().copied().collect();
    let in_b: HashSet<&str> = b.iter().copied().collect();
    let a: Vec<&str> = a.into_iter().filter(|w| in_b.contains(w)).collect();
    let b: Vec<&str> = b.into_iter().filter(|w| in_a.contains(w)).collect();
    normalized_kendall_tau(&a, &b).expect("aligned lists share their items")
}
