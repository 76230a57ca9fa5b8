use nalgebra::{DMatrix, DVector, SymmetricEigen};
use proptest::prelude::*;

use forumlens::ranking::{hits_rank, topical_rank, topk_diff, RankableThread, RankedEntry, RankedList};
use forumlens::stats::{fit_ols, mann_whitney, smalltalk_moving_average, trim_and_diff, MaDenominator};
use forumlens::topics::KeywordRanking;

fn thread(id: usize, tokens: Vec<String>, participants: Vec<String>) -> RankableThread {
    RankableThread {
        thread_id: format!("t{id}"),
        created_at: id as i64,
        tokens,
        participants,
    }
}

/// Users × threads incidence matrices up to 8 × 8 with every thread touched.
fn incidence() -> impl Strategy<Value = Vec<Vec<bool>>> {
    (1usize..=8, 1usize..=8).prop_flat_map(|(users, threads)| {
        prop::collection::vec(prop::collection::vec(any::<bool>(), users), threads).prop_map(|mut rows| {
            for (t, row) in rows.iter_mut().enumerate() {
                if !row.iter().any(|&b| b) {
                    let users = row.len();
                    row[t % users] = true;
                }
            }
            rows
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn hits_authorities_match_dense_eigenvector(rows in incidence()) {
        let users = rows[0].len();
        let threads: Vec<RankableThread> = rows
            .iter()
            .enumerate()
            .map(|(t, row)| {
                let ps = (0..users).filter(|&u| row[u]).map(|u| format!("u{u}")).collect();
                thread(t, Vec::new(), ps)
            })
            .collect();
        let a = DMatrix::from_fn(users, rows.len(), |u, t| if rows[t][u] { 1.0 } else { 0.0 });
        let eig: SymmetricEigen<f64, nalgebra::Dyn> = SymmetricEigen::new(a.transpose() * &a);
        let values: Vec<f64> = eig.eigenvalues.iter().copied().collect();
        let mut order: Vec<usize> = (0..values.len()).collect();
        order.sort_by(|&i, &j| values[j].total_cmp(&values[i]));
        let top = values[order[0]];
        let second = order.get(1).map_or(0.0, |&i| values[i]);
        // the principal direction is only defined with a spectral gap
        prop_assume!(top - second > 1e-3 * top);
        let principal = eig.eigenvectors.column(order[0]).abs();

        let result = hits_rank(&threads, 1e-13, 100_000).unwrap();
        let auth = DVector::from_iterator(
            threads.len(),
            threads.iter().map(|t| result.ranking.score_of(&t.thread_id).unwrap()),
        );
        let cosine = auth.dot(&principal) / (auth.norm() * principal.norm());
        prop_assert!(cosine >= 1.0 - 1e-6, "cosine {cosine}");
    }

    #[test]
    fn ols_matches_normal_equations(
        n in 6usize..60,
        p in 1usize..5,
        seed in any::<u64>(),
    ) {
        prop_assume!(n > p + 1);
        let mut state = seed | 1;
        let mut next = move || {
            // xorshift keeps the fixture self-contained
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state >> 11) as f64 / (1u64 << 53) as f64 * 2.0 - 1.0
        };
        let x = DMatrix::from_fn(n, p + 1, |_, j| if j == 0 { 1.0 } else { 3.0 * next() });
        let y: Vec<f64> = (0..n).map(|_| 5.0 * next()).collect();
        let xtx = x.transpose() * &x;
        prop_assume!(xtx.clone().try_inverse().is_some_and(|inv| inv.norm() * xtx.norm() < 1e8));
        let terms: Vec<String> = (0..=p).map(|j| format!("x{j}")).collect();
        let fit = fit_ols(&x, &y, &terms).unwrap();
        let beta = xtx.cholesky().unwrap().solve(&(x.transpose() * DVector::from_column_slice(&y)));
        for (a, b) in fit.coefficients.iter().zip(beta.iter()) {
            prop_assert!((a - b).abs() <= 1e-8 * b.abs().max(1.0), "{a} vs {b}");
        }
        let resid: f64 = fit.residuals.iter().map(|r| r * r).sum();
        let oracle: f64 = (DVector::from_column_slice(&y) - &x * &beta).norm_squared();
        prop_assert!((resid - oracle).abs() <= 1e-8 * oracle.max(1.0));
    }

    #[test]
    fn mann_whitney_exact_matches_enumeration(
        g1 in prop::collection::vec(0u8..6, 2..=5),
        g2 in prop::collection::vec(0u8..6, 2..=5),
    ) {
        let g1: Vec<f64> = g1.into_iter().map(f64::from).collect();
        let g2: Vec<f64> = g2.into_iter().map(f64::from).collect();
        prop_assume!(g1.iter().chain(&g2).any(|v| *v != g1[0]));
        let u = |a: &[f64], b: &[f64]| -> f64 {
            a.iter().flat_map(|x| b.iter().map(move |y| if x > y { 1.0 } else if x == y { 0.5 } else { 0.0 })).sum()
        };
        let pooled: Vec<f64> = g1.iter().chain(&g2).copied().collect();
        let observed = u(&g1, &g2);
        let (mut at_least, mut total) = (0usize, 0usize);
        for mask in 0u32..(1 << pooled.len()) {
            if mask.count_ones() as usize != g1.len() {
                continue;
            }
            let a: Vec<f64> = (0..pooled.len()).filter(|i| mask & (1 << i) != 0).map(|i| pooled[i]).collect();
            let b: Vec<f64> = (0..pooled.len()).filter(|i| mask & (1 << i) == 0).map(|i| pooled[i]).collect();
            total += 1;
            at_least += usize::from(u(&a, &b) >= observed - 1e-9);
        }
        let mw = mann_whitney(&g1, &g2).unwrap();
        prop_assert_eq!(mw.u, observed);
        prop_assert!((mw.p_one_sided - at_least as f64 / total as f64).abs() < 1e-12);
    }

    #[test]
    fn topical_score_ignores_token_order(
        words in prop::collection::vec(0usize..12, 0..40),
        shift in 0usize..40,
    ) {
        let keywords = KeywordRanking::new((0..8).map(|i| (format!("k{i}"), 8.0 - i as f64)));
        let tokens: Vec<String> = words.iter().map(|&i| format!("k{i}")).collect();
        let mut rotated = tokens.clone();
        if !rotated.is_empty() {
            let by = shift % rotated.len();
            rotated.rotate_left(by);
        }
        let a = topical_rank(&keywords, &[thread(0, tokens, vec![])], 0.96).unwrap();
        let b = topical_rank(&keywords, &[thread(0, rotated, vec![])], 0.96).unwrap();
        prop_assert!((a.entries()[0].score - b.entries()[0].score).abs() < 1e-12);
    }

    #[test]
    fn topk_differences_have_equal_size(
        scores_a in prop::collection::vec(0.0f64..1.0, 1..30),
        scores_b in prop::collection::vec(0.0f64..1.0, 1..30),
        k in 1usize..20,
    ) {
        let list = |scores: &[f64]| {
            RankedList::new(
                scores
                    .iter()
                    .enumerate()
                    .map(|(i, &s)| RankedEntry { thread_id: format!("t{i}"), created_at: i as i64, score: s })
                    .collect(),
            )
        };
        let n = scores_a.len().min(scores_b.len());
        let (a, b) = (list(&scores_a[..n]), list(&scores_b[..n]));
        let (d1, d2) = topk_diff(&a, &b, k);
        prop_assert_eq!(d1.len(), d2.len());
        prop_assert!(d1.is_disjoint(&d2));
    }

    #[test]
    fn ranked_lists_are_sorted(scores in prop::collection::vec(-5.0f64..5.0, 0..40)) {
        let list = RankedList::new(
            scores
                .iter()
                .enumerate()
                .map(|(i, &s)| RankedEntry { thread_id: format!("t{i:02}"), created_at: (i % 3) as i64, score: s })
                .collect(),
        );
        for w in list.entries().windows(2) {
            prop_assert!(w[0].score >= w[1].score);
            if w[0].score == w[1].score {
                prop_assert!((w[0].created_at, &w[0].thread_id) < (w[1].created_at, &w[1].thread_id));
            }
        }
    }

    #[test]
    fn moving_average_stays_in_printed_bounds(
        eta in prop::collection::vec(prop::bool::ANY, 1..200),
        alpha in 0.5f64..0.999,
    ) {
        let eta: Vec<f64> = eta.into_iter().map(|b| if b { 1.0 } else { 0.0 }).collect();
        let s = smalltalk_moving_average(&eta, alpha, MaDenominator::Printed).unwrap();
        for v in &s {
            prop_assert!(*v >= 0.0 && *v <= 1.0 / alpha + 1e-12);
        }
        let aligned = smalltalk_moving_average(&eta, alpha, MaDenominator::TimeAligned).unwrap();
        for v in &aligned {
            prop_assert!(*v >= 0.0 && *v <= 1.0 + 1e-12);
        }
    }

    #[test]
    fn trimming_removes_both_tails(y in prop::collection::vec(-100.0f64..100.0, 3..120)) {
        let diffs: Vec<f64> = y.windows(2).map(|w| w[1] - w[0]).collect();
        let kept = trim_and_diff(&y, 0.03).unwrap();
        let cut = (0.03 * diffs.len() as f64 - 1e-9).ceil() as usize;
        prop_assert_eq!(kept.len(), diffs.len() - 2 * cut);
        let mut sorted = diffs.clone();
        sorted.sort_by(f64::total_cmp);
        if let (Some(lo), Some(hi)) = (kept.iter().cloned().reduce(f64::min), kept.iter().cloned().reduce(f64::max)) {
            prop_assert!(lo >= sorted[cut] && hi <= sorted[sorted.len() - 1 - cut]);
        }
    }
}
