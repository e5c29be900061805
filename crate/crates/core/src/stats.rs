//! Rank assignment and rank-correlation helpers.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RankError {
    #[error("rank vectors differ in length: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("rank vector of length {n} is not a permutation of 1..={n}")]
    NotAPermutation { n: usize },
    #[error("rank correlation needs at least 2 items, got {n}")]
    TooFewItems { n: usize },
}

/// Assigns 1-based ranks by descending value; ties go to the lower index.
///
/// `result[i]` is the rank of item `i`, with 1 the largest value.
pub fn rank_descending(values: &[f64]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| {
        values[b]
            .partial_cmp(&values[a])
            .expect("rank values must not be NaN")
            .then(a.cmp(&b))
    });
    let mut ranks = vec![0; values.len()];
    for (position, &item) in order.iter().enumerate() {
        ranks[item] = position + 1;
    }
    ranks
}

fn check_permutation(ranks: &[usize]) -> Result<(), RankError> {
    let n = ranks.len();
    let mut seen = vec![false; n];
    for &r in ranks {
        if r < 1 || r > n || seen[r - 1] {
            return Err(RankError::NotAPermutation { n });
        }
        seen[r - 1] = true;
    }
    Ok(())
}

/// Spearman rank correlation `1 - 6 Σd² / (n(n²-1))` between two
/// permutations of `1..=n`.
pub fn spearman(rank_a: &[usize], rank_b: &[usize]) -> Result<f64, RankError> {
    if rank_a.len() != rank_b.len() {
        return Err(RankError::LengthMismatch {
            left: rank_a.len(),
            right: rank_b.len(),
        });
    }
    let n = rank_a.len();
    if n < 2 {
        return Err(RankError::TooFewItems { n });
    }
    check_permutation(rank_a)?;
    check_permutation(rank_b)?;
    let d_squared: f64 = rank_a
        .iter()
        .zip(rank_b)
        .map(|(&a, &b)| {
            let d = a as f64 - b as f64;
            d * d
        })
        .sum();
    let n = n as f64;
    Ok(1.0 - 6.0 * d_squared / (n * (n * n - 1.0)))
}
