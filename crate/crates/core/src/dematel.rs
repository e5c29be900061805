//! DEMATEL criterion weighting.
//!
//! From a crisp direct-relation matrix `A` the stage derives the normalized
//! matrix `D = A / max-row-sum`, the total-relation matrix `T = D(I-D)⁻¹`
//! (direct plus all indirect influence), the row/column influence sums `r`
//! and `c`, and prominence-based weights `w_i = (r_i + c_i) / Σ(r + c)`.

use crate::matrix::{lu_solve, Matrix};
use crate::stats::rank_descending;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DematelError {
    #[error("direct-relation matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("direct-relation matrix needs at least 2 criteria, got {n}")]
    TooFewCriteria { n: usize },
    #[error("direct-relation entry ({row}, {col}) = {value} must be a finite non-negative number")]
    InvalidEntry { row: usize, col: usize, value: f64 },
    #[error("direct-relation diagonal entry ({index}, {index}) = {value} must be zero")]
    NonzeroDiagonal { index: usize, value: f64 },
    #[error("direct-relation matrix is all zeros; nothing to normalize")]
    ZeroMatrix,
    #[error("total-relation system (I - D) is singular: pivot magnitude {pivot:e} below threshold")]
    SingularSystem { pivot: f64 },
    #[error("influence sums are all zero; weights are undefined")]
    DegenerateInfluence,
}

/// Crisp pairwise influence strengths among `n` criteria.
///
/// Square with a zero diagonal, all entries finite and non-negative, and at
/// least one entry strictly positive.
#[derive(Debug, Clone, PartialEq)]
pub struct DirectRelationMatrix {
    entries: Matrix,
}

impl DirectRelationMatrix {
    pub fn new(entries: Matrix) -> Result<Self, DematelError> {
        if !entries.is_square() {
            return Err(DematelError::NotSquare {
                rows: entries.n_rows(),
                cols: entries.n_cols(),
            });
        }
        let n = entries.n_rows();
        if n < 2 {
            return Err(DematelError::TooFewCriteria { n });
        }
        let mut any_positive = false;
        for i in 0..n {
            for j in 0..n {
                let value = entries[(i, j)];
                if !value.is_finite() || value < 0.0 {
                    return Err(DematelError::InvalidEntry { row: i, col: j, value });
                }
                if i == j && value != 0.0 {
                    return Err(DematelError::NonzeroDiagonal { index: i, value });
                }
                if value > 0.0 {
                    any_positive = true;
                }
            }
        }
        if !any_positive {
            return Err(DematelError::ZeroMatrix);
        }
        Ok(Self { entries })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self, DematelError> {
        Self::new(Matrix::from_rows(rows))
    }

    pub fn n(&self) -> usize {
        self.entries.n_rows()
    }

    pub fn entries(&self) -> &Matrix {
        &self.entries
    }

    /// Rescales every entry by `factor > 0`; weights are invariant under this.
    pub fn scaled(&self, factor: f64) -> Result<Self, DematelError> {
        Self::new(self.entries.scale(factor))
    }
}

/// All intermediates of one DEMATEL run.
#[derive(Debug, Clone, PartialEq)]
pub struct DematelResult {
    /// Normalized direct-relation matrix `D`.
    pub normalized: Matrix,
    /// Total-relation matrix `T`.
    pub total: Matrix,
    /// Row sums of `T`: influence given by each criterion.
    pub r: Vec<f64>,
    /// Column sums of `T`: influence received by each criterion.
    pub c: Vec<f64>,
    /// Prominence `r + c`, the weighting basis.
    pub prominence: Vec<f64>,
    /// Net cause/effect `r - c`; informational, unused by the pipeline.
    pub net_effect: Vec<f64>,
    /// Normalized prominence weights, summing to 1.
    pub weights: Vec<f64>,
    /// 1-based rank per criterion by descending weight, ties to lower index.
    pub rank: Vec<usize>,
}

/// Divides `A` by its maximum row sum.
pub fn normalize_direct(a: &DirectRelationMatrix) -> Result<Matrix, DematelError> {
    let s = a
        .entries()
        .row_sums()
        .into_iter()
        .fold(0.0_f64, f64::max);
    if s <= 0.0 {
        return Err(DematelError::ZeroMatrix);
    }
    Ok(a.entries().scale(1.0 / s))
}

/// Total-relation matrix `T = D (I - D)⁻¹`.
///
/// Solved as the `n` linear systems `(I - D) x_j = d_j` with a partially
/// pivoted LU factorization; `D` commutes with `(I - D)⁻¹`, so this equals
/// the textbook right-multiplied form.
pub fn total_relation(d: &Matrix) -> Result<Matrix, DematelError> {
    assert!(d.is_square(), "normalized matrix must be square");
    let n = d.n_rows();
    let mut coeff = Matrix::identity(n);
    for i in 0..n {
        for j in 0..n {
            coeff[(i, j)] -= d[(i, j)];
        }
    }
    lu_solve(&coeff, d).map_err(|pivot| DematelError::SingularSystem { pivot })
}

/// Row and column sums of the total-relation matrix.
pub fn influence_sums(t: &Matrix) -> (Vec<f64>, Vec<f64>) {
    (t.row_sums(), t.col_sums())
}

/// Prominence weights `w_i = (r_i + c_i) / Σ_k (r_k + c_k)` and their ranks.
pub fn initial_weights(r: &[f64], c: &[f64]) -> Result<(Vec<f64>, Vec<usize>), DematelError> {
    assert_eq!(r.len(), c.len(), "r and c must have equal length");
    let prominence: Vec<f64> = r.iter().zip(c).map(|(ri, ci)| ri + ci).collect();
    let total: f64 = prominence.iter().sum();
    if total <= 0.0 {
        return Err(DematelError::DegenerateInfluence);
    }
    let weights: Vec<f64> = prominence.iter().map(|p| p / total).collect();
    let rank = rank_descending(&weights);
    Ok((weights, rank))
}

/// Runs the full DEMATEL stage, retaining every intermediate.
pub fn run_dematel(a: &DirectRelationMatrix) -> Result<DematelResult, DematelError> {
    let normalized = normalize_direct(a)?;
    let total = total_relation(&normalized)?;
    let (r, c) = influence_sums(&total);
    let (weights, rank) = initial_weights(&r, &c)?;
    let prominence: Vec<f64> = r.iter().zip(&c).map(|(ri, ci)| ri + ci).collect();
    let net_effect: Vec<f64> = r.iter().zip(&c).map(|(ri, ci)| ri - ci).collect();
    Ok(DematelResult {
        normalized,
        total,
        r,
        c,
        prominence,
        net_effect,
        weights,
        rank,
    })
}
