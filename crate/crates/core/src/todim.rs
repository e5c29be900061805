//! TODIM prospect-theoretic ranking.
//!
//! Alternatives are compared pairwise on every criterion; a positive rating
//! difference contributes a gain term, a negative one a loss term attenuated
//! by `θ`, and the per-criterion contributions sum into the dominance matrix
//! `δ`. Row sums of `δ` are min-max normalized into global values `ξ`, and a
//! complementary loss-share reading yields final weights that sum to one.

use crate::matrix::Matrix;
use crate::stats::rank_descending;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TodimError {
    #[error("decision matrix must not be empty")]
    EmptyDecision,
    #[error("ranking needs at least 2 alternatives, got {m}")]
    TooFewAlternatives { m: usize },
    #[error("decision entry ({row}, {col}) = {value} must be a finite non-negative number")]
    InvalidEntry { row: usize, col: usize, value: f64 },
    #[error("{found} weights supplied for {expected} criteria")]
    WeightCountMismatch { expected: usize, found: usize },
    #[error("weight {index} = {value} must be a finite non-negative number")]
    InvalidWeight { index: usize, value: f64 },
    #[error("weights sum to {sum}, expected 1 within 1e-9")]
    WeightsNotNormalized { sum: f64 },
    #[error("loss attenuation theta = {theta} must be a finite positive number")]
    InvalidTheta { theta: f64 },
    #[error("reference criterion index {reference} out of range for {n} criteria")]
    ReferenceOutOfRange { reference: usize, n: usize },
    #[error("reference criterion {reference} has zero weight")]
    ZeroReferenceWeight { reference: usize },
    #[error("decision column {col} sums to zero; cannot normalize")]
    ZeroColumn { col: usize },
}

/// Validated input to the TODIM stage.
///
/// In the hybrid pipeline the alternatives are the criteria themselves and
/// the decision matrix is the direct-relation matrix, so `m == n`; the stage
/// itself accepts any `m x n` ratings.
#[derive(Debug, Clone, PartialEq)]
pub struct TodimInput {
    decision: Matrix,
    weights: Vec<f64>,
    theta: f64,
    reference: usize,
    normalize_columns: bool,
}

impl TodimInput {
    /// Validates ratings, weights and `θ`; `reference` defaults to the
    /// criterion of greatest weight (ties to the lower index).
    pub fn new(
        decision: Matrix,
        weights: Vec<f64>,
        theta: f64,
        reference: Option<usize>,
        normalize_columns: bool,
    ) -> Result<Self, TodimError> {
        let (m, n) = (decision.n_rows(), decision.n_cols());
        if m == 0 || n == 0 {
            return Err(TodimError::EmptyDecision);
        }
        for i in 0..m {
            for j in 0..n {
                let value = decision[(i, j)];
                if !value.is_finite() || value < 0.0 {
                    return Err(TodimError::InvalidEntry { row: i, col: j, value });
                }
            }
        }
        if weights.len() != n {
            return Err(TodimError::WeightCountMismatch {
                expected: n,
                found: weights.len(),
            });
        }
        for (index, &value) in weights.iter().enumerate() {
            if !value.is_finite() || value < 0.0 {
                return Err(TodimError::InvalidWeight { index, value });
            }
        }
        let sum: f64 = weights.iter().sum();
        if (sum - 1.0).abs() > 1e-9 {
            return Err(TodimError::WeightsNotNormalized { sum });
        }
        if !theta.is_finite() || theta <= 0.0 {
            return Err(TodimError::InvalidTheta { theta });
        }
        let reference = match reference {
            Some(r) if r >= n => return Err(TodimError::ReferenceOutOfRange { reference: r, n }),
            Some(r) => r,
            None => argmax(&weights),
        };
        Ok(Self {
            decision,
            weights,
            theta,
            reference,
            normalize_columns,
        })
    }

    pub fn decision(&self) -> &Matrix {
        &self.decision
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn reference(&self) -> usize {
        self.reference
    }

    pub fn normalize_columns(&self) -> bool {
        self.normalize_columns
    }
}

fn argmax(values: &[f64]) -> usize {
    let mut best = 0;
    for (i, &v) in values.iter().enumerate().skip(1) {
        if v > values[best] {
            best = i;
        }
    }
    best
}

/// Normalization, dominance and global-value outputs of one TODIM run.
#[derive(Debug, Clone, PartialEq)]
pub struct TodimResult {
    /// Weight of each criterion relative to the reference criterion.
    pub relative_weights: Vec<f64>,
    /// Ratings actually compared (column-normalized when requested).
    pub ratings: Matrix,
    /// Pairwise dominance `δ(i, j)`, zero diagonal.
    pub dominance: Matrix,
    /// Row sums of the dominance matrix.
    pub dominance_sums: Vec<f64>,
    /// Min-max normalized global values, in `[0, 1]`.
    pub xi: Vec<f64>,
    /// Complementary dominance deficit, summing to 1; smaller is better.
    pub loss_share: Vec<f64>,
    /// `(1 - loss_share) / (m - 1)`, summing to 1; larger is better.
    pub final_weights: Vec<f64>,
    /// 1-based rank per alternative by descending dominance sum.
    pub rank: Vec<usize>,
    /// True when every dominance sum is equal and the outputs are uniform.
    pub degenerate: bool,
}

/// Weights of each criterion relative to the reference criterion `w_c / w_r`.
pub fn relative_weights(weights: &[f64], reference: usize) -> Result<Vec<f64>, TodimError> {
    if reference >= weights.len() {
        return Err(TodimError::ReferenceOutOfRange {
            reference,
            n: weights.len(),
        });
    }
    let w_r = weights[reference];
    if w_r <= 0.0 {
        return Err(TodimError::ZeroReferenceWeight { reference });
    }
    Ok(weights.iter().map(|w| w / w_r).collect())
}

/// Divides every column by its sum, making the ratings column-stochastic.
pub fn normalize_decision(decision: &Matrix) -> Result<Matrix, TodimError> {
    let sums = decision.col_sums();
    if let Some(col) = sums.iter().position(|&s| s <= 0.0) {
        return Err(TodimError::ZeroColumn { col });
    }
    let mut out = decision.clone();
    for i in 0..out.n_rows() {
        for (j, &s) in sums.iter().enumerate() {
            out[(i, j)] /= s;
        }
    }
    Ok(out)
}

/// Gain/loss contribution of criterion `c` when alternative `i` is compared
/// against `j` with rating difference `x_ic - x_jc`.
///
/// Gains contribute `sqrt(w_rc·d / Σw_rc)`, equal ratings contribute zero,
/// and losses contribute `-(1/θ)·sqrt(Σw_rc·(-d) / w_rc)`.
pub fn phi(relative_weights: &[f64], c: usize, x_ic: f64, x_jc: f64, theta: f64) -> f64 {
    let sum: f64 = relative_weights.iter().sum();
    let w_rc = relative_weights[c];
    let diff = x_ic - x_jc;
    if diff > 0.0 {
        (w_rc * diff / sum).sqrt()
    } else if diff == 0.0 {
        0.0
    } else {
        -(sum * -diff / w_rc).sqrt() / theta
    }
}

/// Dominance matrix `δ(i, j) = Σ_c φ_c(i, j)` and its row sums.
pub fn dominance(input: &TodimInput) -> Result<(Matrix, Vec<f64>), TodimError> {
    let ratings = if input.normalize_columns() {
        normalize_decision(input.decision())?
    } else {
        input.decision().clone()
    };
    let w_rc = relative_weights(input.weights(), input.reference())?;
    let m = ratings.n_rows();
    let n = ratings.n_cols();
    let mut delta = Matrix::zeros(m, m);
    for i in 0..m {
        for j in 0..m {
            if i == j {
                continue;
            }
            let mut sum = 0.0;
            for c in 0..n {
                sum += phi(&w_rc, c, ratings[(i, c)], ratings[(j, c)], input.theta());
            }
            delta[(i, j)] = sum;
        }
    }
    let sums = delta.row_sums();
    Ok((delta, sums))
}

/// Global values and final weights from the dominance row sums.
#[derive(Debug, Clone, PartialEq)]
pub struct GlobalValues {
    pub xi: Vec<f64>,
    pub loss_share: Vec<f64>,
    pub final_weights: Vec<f64>,
    pub rank: Vec<usize>,
    pub degenerate: bool,
}

/// Normalizes dominance sums into `ξ`, loss shares and final weights.
///
/// `ξ_i = (S_i - min S) / (max S - min S)`; the loss share
/// `ℓ_i = (max S - S_i) / Σ_k (max S - S_k)` sums to one with smaller
/// better, and `(1 - ℓ_i) / (m - 1)` turns it into final weights that sum
/// to one with larger better. When all sums are equal the outputs are
/// uniform and flagged degenerate.
pub fn global_values(dominance_sums: &[f64]) -> Result<GlobalValues, TodimError> {
    let m = dominance_sums.len();
    if m < 2 {
        return Err(TodimError::TooFewAlternatives { m });
    }
    let min = dominance_sums.iter().copied().fold(f64::INFINITY, f64::min);
    let max = dominance_sums
        .iter()
        .copied()
        .fold(f64::NEG_INFINITY, f64::max);
    let rank = rank_descending(dominance_sums);
    if max == min {
        let uniform = 1.0 / m as f64;
        return Ok(GlobalValues {
            xi: vec![0.0; m],
            loss_share: vec![uniform; m],
            final_weights: vec![uniform; m],
            rank,
            degenerate: true,
        });
    }
    let xi: Vec<f64> = dominance_sums.iter().map(|s| (s - min) / (max - min)).collect();
    let deficit_total: f64 = dominance_sums.iter().map(|s| max - s).sum();
    let loss_share: Vec<f64> = dominance_sums
        .iter()
        .map(|s| (max - s) / deficit_total)
        .collect();
    let final_weights: Vec<f64> = loss_share
        .iter()
        .map(|l| (1.0 - l) / (m as f64 - 1.0))
        .collect();
    Ok(GlobalValues {
        xi,
        loss_share,
        final_weights,
        rank,
        degenerate: false,
    })
}

/// Runs the full TODIM stage, retaining every intermediate.
pub fn run_todim(input: &TodimInput) -> Result<TodimResult, TodimError> {
    let ratings = if input.normalize_columns() {
        normalize_decision(input.decision())?
    } else {
        input.decision().clone()
    };
    let rel = relative_weights(input.weights(), input.reference())?;
    let (delta, sums) = dominance(input)?;
    let globals = global_values(&sums)?;
    Ok(TodimResult {
        relative_weights: rel,
        ratings,
        dominance: delta,
        dominance_sums: sums,
        xi: globals.xi,
        loss_share: globals.loss_share,
        final_weights: globals.final_weights,
        rank: globals.rank,
        degenerate: globals.degenerate,
    })
}
