//! CFCS defuzzification: converting multi-expert fuzzy judgments into
//! crisp scores.
//!
//! For one criterion pair the experts' triangular judgments are standardized
//! against the common spread `Δ = max_k r_k - min_k l_k`, reduced to left and
//! right normalized values, combined into a total normalized value, and
//! mapped back to a crisp best non-fuzzy performance value (BNP) per expert.
//! The cell's crisp score is the mean BNP over experts.

use crate::dematel::{DematelError, DirectRelationMatrix};
use crate::matrix::Matrix;
use crate::tfn::TriangularFuzzyNumber;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CfcsError {
    #[error("judgment cell holds no expert values")]
    EmptyCell,
    #[error("judgment grid needs at least 2 criteria, got {n}")]
    TooFewCriteria { n: usize },
    #[error("judgment grid for {n} criteria needs {expected} cells, got {found}")]
    GridSizeMismatch { n: usize, expected: usize, found: usize },
    #[error("missing judgment cell at ({row}, {col})")]
    MissingCell { row: usize, col: usize },
    #[error("cell ({row}, {col}) has {found} expert values, expected {expected}")]
    RaggedExperts {
        row: usize,
        col: usize,
        expected: usize,
        found: usize,
    },
    #[error("defuzzified matrix is invalid: {0}")]
    Matrix(#[from] DematelError),
}

/// The `K` expert judgments for one ordered criterion pair.
#[derive(Debug, Clone, PartialEq)]
pub struct ExpertJudgmentCell {
    values: Vec<TriangularFuzzyNumber>,
}

impl ExpertJudgmentCell {
    pub fn new(values: Vec<TriangularFuzzyNumber>) -> Self {
        Self { values }
    }

    pub fn values(&self) -> &[TriangularFuzzyNumber] {
        &self.values
    }

    pub fn expert_count(&self) -> usize {
        self.values.len()
    }
}

/// Per-expert intermediates of one CFCS evaluation.
#[derive(Debug, Clone, PartialEq)]
pub struct ExpertCfcsStep {
    /// Standardized triple `(xl, xm, xr)`, each in `[0, 1]`.
    pub standardized: (f64, f64, f64),
    /// Left normalized value `xls = xm / (1 + xm - xl)`.
    pub left_normalized: f64,
    /// Right normalized value `xrs = xr / (1 + xr - xm)`.
    pub right_normalized: f64,
    /// Total normalized value `x = [xls(1-xls) + xrs²] / [1 + xrs - xls]`.
    pub total_normalized: f64,
    /// Crisp value `BNP = min_l + x·Δ`.
    pub crisp: f64,
}

/// Full trace of one cell's defuzzification.
#[derive(Debug, Clone, PartialEq)]
pub struct CfcsTrace {
    /// Spread `Δ = max_k r_k - min_k l_k` across experts.
    pub delta: f64,
    /// Smallest lower bound over experts.
    pub min_lower: f64,
    /// One step per expert, in input order.
    pub steps: Vec<ExpertCfcsStep>,
    /// Mean crisp value over experts.
    pub aggregate: f64,
    /// True when `Δ = 0`: all experts gave the identical crisp value, which
    /// is passed through directly and the normalized intermediates are
    /// recorded as zero.
    pub degenerate: bool,
}

/// Defuzzifies one cell, returning the crisp score and the full trace.
pub fn cfcs_cell(cell: &ExpertJudgmentCell) -> Result<(f64, CfcsTrace), CfcsError> {
    let values = cell.values();
    if values.is_empty() {
        return Err(CfcsError::EmptyCell);
    }
    let min_lower = values
        .iter()
        .map(TriangularFuzzyNumber::lower)
        .fold(f64::INFINITY, f64::min);
    let max_upper = values
        .iter()
        .map(TriangularFuzzyNumber::upper)
        .fold(f64::NEG_INFINITY, f64::max);
    let delta = max_upper - min_lower;

    if delta == 0.0 {
        // Every triple collapses to the same crisp value.
        let crisp = min_lower;
        let steps = values
            .iter()
            .map(|_| ExpertCfcsStep {
                standardized: (0.0, 0.0, 0.0),
                left_normalized: 0.0,
                right_normalized: 0.0,
                total_normalized: 0.0,
                crisp,
            })
            .collect();
        let trace = CfcsTrace {
            delta,
            min_lower,
            steps,
            aggregate: crisp,
            degenerate: true,
        };
        return Ok((crisp, trace));
    }

    let mut steps = Vec::with_capacity(values.len());
    for value in values {
        let xl = (value.lower() - min_lower) / delta;
        let xm = (value.mode() - min_lower) / delta;
        let xr = (value.upper() - min_lower) / delta;
        let xls = xm / (1.0 + xm - xl);
        let xrs = xr / (1.0 + xr - xm);
        let x = (xls * (1.0 - xls) + xrs * xrs) / (1.0 + xrs - xls);
        let crisp = min_lower + x * delta;
        steps.push(ExpertCfcsStep {
            standardized: (xl, xm, xr),
            left_normalized: xls,
            right_normalized: xrs,
            total_normalized: x,
            crisp,
        });
    }
    // Summing in value order makes the aggregate bit-identical no matter how
    // the experts were ordered.
    let mut sorted_bnp: Vec<f64> = steps.iter().map(|s| s.crisp).collect();
    sorted_bnp.sort_by(f64::total_cmp);
    let aggregate = sorted_bnp.iter().sum::<f64>() / values.len() as f64;
    let trace = CfcsTrace {
        delta,
        min_lower,
        steps,
        aggregate,
        degenerate: false,
    };
    Ok((aggregate, trace))
}

/// Defuzzifies an `n x n` grid of judgment cells into a direct-relation
/// matrix.
///
/// `cells` is row-major with `n²` entries; diagonal entries are ignored and
/// the diagonal of the result is fixed at zero. All off-diagonal cells must
/// be present and agree on the expert count.
pub fn defuzzify_surveys(
    n: usize,
    cells: &[Option<ExpertJudgmentCell>],
) -> Result<DirectRelationMatrix, CfcsError> {
    if n < 2 {
        return Err(CfcsError::TooFewCriteria { n });
    }
    if cells.len() != n * n {
        return Err(CfcsError::GridSizeMismatch {
            n,
            expected: n * n,
            found: cells.len(),
        });
    }

    let mut expert_count: Option<usize> = None;
    let mut entries = Matrix::zeros(n, n);
    for row in 0..n {
        for col in 0..n {
            if row == col {
                continue;
            }
            let cell = cells[row * n + col]
                .as_ref()
                .ok_or(CfcsError::MissingCell { row, col })?;
            if cell.expert_count() == 0 {
                return Err(CfcsError::MissingCell { row, col });
            }
            match expert_count {
                None => expert_count = Some(cell.expert_count()),
                Some(expected) if expected != cell.expert_count() => {
                    return Err(CfcsError::RaggedExperts {
                        row,
                        col,
                        expected,
                        found: cell.expert_count(),
                    });
                }
                Some(_) => {}
            }
            let (crisp, _) = cfcs_cell(cell)?;
            entries[(row, col)] = crisp;
        }
    }
    Ok(DirectRelationMatrix::new(entries)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tfn(l: f64, m: f64, r: f64) -> TriangularFuzzyNumber {
        TriangularFuzzyNumber::new(l, m, r).unwrap()
    }

    #[test]
    fn single_symmetric_expert_hand_values() {
        // Δ=0.5, xl=0, xm=0.5, xr=1, xls=1/3, xrs=2/3, x=1/2, BNP=0.5.
        let cell = ExpertJudgmentCell::new(vec![tfn(0.25, 0.5, 0.75)]);
        let (crisp, trace) = cfcs_cell(&cell).unwrap();
        assert!((crisp - 0.5).abs() < 1e-12);
        assert!((trace.delta - 0.5).abs() < 1e-15);
        let step = &trace.steps[0];
        assert!((step.standardized.0 - 0.0).abs() < 1e-15);
        assert!((step.standardized.1 - 0.5).abs() < 1e-15);
        assert!((step.standardized.2 - 1.0).abs() < 1e-15);
        assert!((step.left_normalized - 1.0 / 3.0).abs() < 1e-15);
        assert!((step.right_normalized - 2.0 / 3.0).abs() < 1e-15);
        assert!((step.total_normalized - 0.5).abs() < 1e-15);
        assert!(!trace.degenerate);
    }

    #[test]
    fn identical_crisp_experts_pass_through() {
        let cell = ExpertJudgmentCell::new(vec![tfn(0.4, 0.4, 0.4); 3]);
        let (crisp, trace) = cfcs_cell(&cell).unwrap();
        assert_eq!(crisp, 0.4);
        assert!(trace.degenerate);
        assert_eq!(trace.delta, 0.0);
        assert_eq!(trace.steps.len(), 3);
    }

    #[test]
    fn two_experts_hand_values() {
        // Δ=0.75; BNP₁=0.2625, BNP₂=0.4875, mean 0.375.
        let cell =
            ExpertJudgmentCell::new(vec![tfn(0.0, 0.25, 0.5), tfn(0.25, 0.5, 0.75)]);
        let (crisp, trace) = cfcs_cell(&cell).unwrap();
        assert!((crisp - 0.375).abs() < 1e-12);
        assert!((trace.steps[0].crisp - 0.2625).abs() < 1e-12);
        assert!((trace.steps[1].crisp - 0.4875).abs() < 1e-12);
    }

    #[test]
    fn empty_cell_is_an_error() {
        assert_eq!(
            cfcs_cell(&ExpertJudgmentCell::new(Vec::new())).unwrap_err(),
            CfcsError::EmptyCell
        );
    }

    #[test]
    fn bnp_stays_within_expert_bounds() {
        let cell = ExpertJudgmentCell::new(vec![
            tfn(0.1, 0.2, 0.9),
            tfn(0.0, 0.7, 0.8),
            tfn(0.3, 0.3, 0.4),
        ]);
        let (crisp, trace) = cfcs_cell(&cell).unwrap();
        for step in &trace.steps {
            assert!(step.crisp >= 0.0 && step.crisp <= 0.9);
        }
        assert!(crisp >= 0.0 && crisp <= 0.9);
    }

    fn grid_2x2(
        upper: ExpertJudgmentCell,
        lower: ExpertJudgmentCell,
    ) -> Vec<Option<ExpertJudgmentCell>> {
        vec![None, Some(upper), Some(lower), None]
    }

    #[test]
    fn grid_of_crisp_cells() {
        let crisp = ExpertJudgmentCell::new(vec![tfn(0.4, 0.4, 0.4)]);
        let a = defuzzify_surveys(2, &grid_2x2(crisp.clone(), crisp)).unwrap();
        assert_eq!(
            a.entries().to_rows(),
            vec![vec![0.0, 0.4], vec![0.4, 0.0]]
        );
    }

    #[test]
    fn grid_symmetric_tfns_defuzzify_to_modes() {
        let a = defuzzify_surveys(
            2,
            &grid_2x2(
                ExpertJudgmentCell::new(vec![tfn(0.25, 0.5, 0.75)]),
                ExpertJudgmentCell::new(vec![tfn(0.5, 0.75, 1.0)]),
            ),
        )
        .unwrap();
        assert!((a.entries()[(0, 1)] - 0.5).abs() < 1e-12);
        assert!((a.entries()[(1, 0)] - 0.75).abs() < 1e-12);
        assert_eq!(a.entries()[(0, 0)], 0.0);
        assert_eq!(a.entries()[(1, 1)], 0.0);
    }

    #[test]
    fn grid_missing_cell() {
        let crisp = ExpertJudgmentCell::new(vec![tfn(0.4, 0.4, 0.4)]);
        let mut cells = vec![None; 9];
        cells[1] = Some(crisp.clone());
        cells[2] = Some(crisp.clone());
        cells[3] = Some(crisp.clone());
        cells[5] = Some(crisp.clone());
        cells[6] = Some(crisp.clone());
        // (2, 1) left out.
        assert_eq!(
            defuzzify_surveys(3, &cells).unwrap_err(),
            CfcsError::MissingCell { row: 2, col: 1 }
        );
    }

    #[test]
    fn grid_ragged_expert_counts() {
        let one = ExpertJudgmentCell::new(vec![tfn(0.4, 0.4, 0.4)]);
        let two = ExpertJudgmentCell::new(vec![tfn(0.4, 0.4, 0.4), tfn(0.2, 0.3, 0.4)]);
        assert_eq!(
            defuzzify_surveys(2, &grid_2x2(one, two)).unwrap_err(),
            CfcsError::RaggedExperts {
                row: 1,
                col: 0,
                expected: 1,
                found: 2
            }
        );
    }

    #[test]
    fn grid_too_small() {
        assert_eq!(
            defuzzify_surveys(1, &[None]).unwrap_err(),
            CfcsError::TooFewCriteria { n: 1 }
        );
    }
}
