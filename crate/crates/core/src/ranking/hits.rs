use std::collections::BTreeMap;

use serde::Serialize;

use super::{RankableThread, RankedEntry, RankedList, RankingError};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HitsResult {
    /// Threads by authority.
    pub ranking: RankedList,
    /// User hub weights keyed by user id.
    pub hubs: BTreeMap<String, f64>,
    pub iterations: usize,
    pub converged: bool,
}

fn normalize(v: &mut [f64]) {
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    if norm > 0.0 {
        v.iter_mut().for_each(|x| *x /= norm);
    }
}

fn distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

/// HITS on the bipartite user/thread participation graph with unweighted
/// edges. Authorities start uniform; each round sets hubs to the sum of their
/// threads' authorities, normalizes, then sets authorities to the sum of
/// their users' hubs and normalizes. Stops once both vectors move less than
/// `tolerance` in ℓ2. If `max_iters` is reached the last iterate is returned
/// with `converged == false`.
pub fn hits_rank(threads: &[RankableThread], tolerance: f64, max_iters: usize) -> Result<HitsResult, RankingError> {
    let mut user_index: BTreeMap<&str, usize> = BTreeMap::new();
    for t in threads {
        for u in &t.participants {
            let next = user_index.len();
            user_index.entry(u.as_str()).or_insert(next);
        }
    }
    let edges: Vec<Vec<usize>> = threads
        .iter()
        .map(|t| {
            let mut us: Vec<usize> = t.participants.iter().map(|u| user_index[u.as_str()]).collect();
            us.sort_unstable();
            us.dedup();
            us
        })
        .collect();
    if edges.iter().all(Vec::is_empty) {
        return Err(RankingError::EmptyGraph);
    }
    let n_threads = threads.len();
    let mut auth = vec![1.0 / (n_threads as f64).sqrt(); n_threads];
    let mut hub = vec![0.0; user_index.len()];
    let mut converged = false;
    let mut iterations = 0;
    while iterations < max_iters {
        iterations += 1;
        let mut new_hub = vec![0.0; hub.len()];
        for (t, us) in edges.iter().enumerate() {
            for &u in us {
                new_hub[u] += auth[t];
            }
        }
        normalize(&mut new_hub);
        let new_auth: Vec<f64> = {
            let mut a: Vec<f64> = edges.iter().map(|us| us.iter().map(|&u| new_hub[u]).sum()).collect();
            normalize(&mut a);
            a
        };
        let moved = distance(&new_hub, &hub).max(distance(&new_auth, &auth));
        hub = new_hub;
        auth = new_auth;
        if iterations > 1 && moved < tolerance {
            converged = true;
            break;
        }
    }
    if !converged {
        log::warn!("HITS did not converge within {max_iters} iterations");
    }
    let ranking = RankedList::new(
        threads
            .iter()
            .zip(&auth)
            .map(|(t, &a)| RankedEntry {
                thread_id: t.thread_id.clone(),
                created_at: t.created_at,
                score: a,
            })
            .collect(),
    );
    let hubs = user_index.iter().map(|(u, &i)| (u.to_string(), hub[i])).collect();
    Ok(HitsResult {
        ranking,
        hubs,
        iterations,
        converged,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn thread(id: &str, users: &[&str]) -> RankableThread {
        RankableThread {
            thread_id: id.into(),
            created_at: 0,
            tokens: Vec::new(),
            participants: users.iter().map(|s| s.to_string()).collect(),
        }
    }

    #[test]
    fn complete_bipartite_is_uniform() {
        let ts: Vec<_> = (0..4).map(|i| thread(&format!("t{i}"), &["a", "b", "c"])).collect();
        let r = hits_rank(&ts, 1e-10, 1000).unwrap();
        assert!(r.converged);
        for e in r.ranking.entries() {
            assert!((e.score - 0.5).abs() < 1e-12);
        }
    }

    #[test]
    fn star_thread_beats_isolated_thread() {
        // hub user "s" joins t1 and t2; t1 also has "x"; t3 only its creator
        let ts = vec![thread("t1", &["s", "x"]), thread("t2", &["s"]), thread("t3", &["z"])];
        let r = hits_rank(&ts, 1e-10, 1000).unwrap();
        assert_eq!(r.ranking.top_ids(3), ["t1", "t2", "t3"]);
        assert!(r.ranking.score_of("t3").unwrap() < r.ranking.score_of("t1").unwrap());
    }

    #[test]
    fn iteration_cap_reports_non_convergence() {
        let ts = vec![thread("t1", &["a", "b"]), thread("t2", &["b"]), thread("t3", &["c"])];
        let r = hits_rank(&ts, 1e-10, 1).unwrap();
        assert!(!r.converged);
        assert_eq!(r.iterations, 1);
    }

    #[test]
    fn no_edges_rejected() {
        assert!(matches!(hits_rank(&[thread("t", &[])], 1e-10, 10), Err(RankingError::EmptyGraph)));
    }
}
