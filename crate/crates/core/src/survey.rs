//! Survey-document and crisp-matrix ingestion.
//!
//! Two input shapes feed the pipeline:
//!
//! - a JSON survey document with named criteria, a linguistic scale and one
//!   pairwise label matrix per expert (diagonal cells written as empty
//!   strings and always ignored);
//! - a delimited numeric grid whose first row lists the criterion ids and
//!   whose next `n` rows hold the crisp direct-relation entries.

use crate::cfcs::ExpertJudgmentCell;
use crate::dematel::{DematelError, DirectRelationMatrix};
use crate::matrix::Matrix;
use crate::tfn::{FuzzyError, LinguisticScale, TriangularFuzzyNumber};
use indexmap::IndexMap;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SurveyError {
    #[error("survey document is not valid JSON: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("survey needs at least 2 criteria, got {n}")]
    TooFewCriteria { n: usize },
    #[error("criterion {index} has an empty id")]
    EmptyCriterionId { index: usize },
    #[error("duplicate criterion id: {id:?}")]
    DuplicateCriterionId { id: String },
    #[error("invalid linguistic scale: {0}")]
    Scale(#[from] FuzzyError),
    #[error("survey lists no experts")]
    NoExperts,
    #[error("duplicate expert id: {id:?}")]
    DuplicateExpertId { id: String },
    #[error("expert {expert:?}: matrix has {found} rows, expected {expected}")]
    MatrixRowCount {
        expert: String,
        expected: usize,
        found: usize,
    },
    #[error("expert {expert:?}: row {row} has {found} cells, expected {expected}")]
    RaggedRow {
        expert: String,
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("expert {expert:?}: cell ({row}, {col}) is empty")]
    EmptyJudgment {
        expert: String,
        row: usize,
        col: usize,
    },
    #[error("expert {expert:?}: cell ({row}, {col}) holds unknown label {label:?}")]
    UnknownLabel {
        expert: String,
        row: usize,
        col: usize,
        label: String,
    },
}

/// One ranked criterion: identifier, display name and grouping category.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Criterion {
    pub id: String,
    pub name: String,
    pub category: String,
}

/// One expert's full pairwise label matrix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpertOpinion {
    pub id: String,
    pub matrix: Vec<Vec<String>>,
}

#[derive(Debug, Deserialize)]
struct RawSurvey {
    criteria: Vec<Criterion>,
    scale: IndexMap<String, [f64; 3]>,
    experts: Vec<ExpertOpinion>,
}

/// A validated multi-expert linguistic survey.
#[derive(Debug, Clone, PartialEq)]
pub struct SurveyDocument {
    criteria: Vec<Criterion>,
    scale: LinguisticScale,
    experts: Vec<ExpertOpinion>,
    cells: Vec<Option<ExpertJudgmentCell>>,
}

impl SurveyDocument {
    pub fn n(&self) -> usize {
        self.criteria.len()
    }

    pub fn criteria(&self) -> &[Criterion] {
        &self.criteria
    }

    pub fn criterion_ids(&self) -> Vec<String> {
        self.criteria.iter().map(|c| c.id.clone()).collect()
    }

    pub fn scale(&self) -> &LinguisticScale {
        &self.scale
    }

    pub fn experts(&self) -> &[ExpertOpinion] {
        &self.experts
    }

    pub fn expert_count(&self) -> usize {
        self.experts.len()
    }

    /// Row-major `n x n` grid of resolved judgment cells, diagonal `None`.
    pub fn judgment_grid(&self) -> &[Option<ExpertJudgmentCell>] {
        &self.cells
    }
}

/// Parses and validates a UTF-8 JSON survey document.
pub fn load_survey(source: &[u8]) -> Result<SurveyDocument, SurveyError> {
    let raw: RawSurvey = serde_json::from_slice(source)?;

    let n = raw.criteria.len();
    if n < 2 {
        return Err(SurveyError::TooFewCriteria { n });
    }
    for (index, criterion) in raw.criteria.iter().enumerate() {
        if criterion.id.trim().is_empty() {
            return Err(SurveyError::EmptyCriterionId { index });
        }
        if raw.criteria[..index].iter().any(|c| c.id == criterion.id) {
            return Err(SurveyError::DuplicateCriterionId {
                id: criterion.id.clone(),
            });
        }
    }

    let scale = LinguisticScale::new(raw.scale.into_iter().map(|(label, [l, m, r])| {
        TriangularFuzzyNumber::new(l, m, r).map(|tfn| (label, tfn))
    }).collect::<Result<Vec<_>, _>>()?)?;

    if raw.experts.is_empty() {
        return Err(SurveyError::NoExperts);
    }
    for (index, expert) in raw.experts.iter().enumerate() {
        if raw.experts[..index].iter().any(|e| e.id == expert.id) {
            return Err(SurveyError::DuplicateExpertId {
                id: expert.id.clone(),
            });
        }
        if expert.matrix.len() != n {
            return Err(SurveyError::MatrixRowCount {
                expert: expert.id.clone(),
                expected: n,
                found: expert.matrix.len(),
            });
        }
        for (row, cells) in expert.matrix.iter().enumerate() {
            if cells.len() != n {
                return Err(SurveyError::RaggedRow {
                    expert: expert.id.clone(),
                    row,
                    expected: n,
                    found: cells.len(),
                });
            }
        }
    }

    // Resolve every off-diagonal label once, per cell across experts.
    let mut grid: Vec<Option<ExpertJudgmentCell>> = vec![None; n * n];
    for row in 0..n {
        for col in 0..n {
            if row == col {
                continue;
            }
            let mut values = Vec::with_capacity(raw.experts.len());
            for expert in &raw.experts {
                let label = expert.matrix[row][col].trim();
                if label.is_empty() {
                    return Err(SurveyError::EmptyJudgment {
                        expert: expert.id.clone(),
                        row,
                        col,
                    });
                }
                let value = scale.lookup(label).map_err(|_| SurveyError::UnknownLabel {
                    expert: expert.id.clone(),
                    row,
                    col,
                    label: label.to_owned(),
                })?;
                values.push(value);
            }
            grid[row * n + col] = Some(ExpertJudgmentCell::new(values));
        }
    }

    Ok(SurveyDocument {
        criteria: raw.criteria,
        scale,
        experts: raw.experts,
        cells: grid,
    })
}

#[derive(Debug, Error)]
pub enum MatrixFormatError {
    #[error("matrix file is not valid UTF-8")]
    Utf8(#[from] std::str::Utf8Error),
    #[error("matrix file is empty")]
    Empty,
    #[error("header column {index} has an empty criterion id")]
    EmptyId { index: usize },
    #[error("duplicate criterion id in header: {id:?}")]
    DuplicateId { id: String },
    #[error("line {line}: cannot parse {token:?} as a decimal number")]
    Parse { line: usize, token: String },
    #[error("matrix is not square: header names {expected} criteria but line {line} has {found} values")]
    NonSquareRow {
        expected: usize,
        line: usize,
        found: usize,
    },
    #[error("matrix is not square: header names {expected} criteria but {found} data rows follow")]
    NonSquare { expected: usize, found: usize },
    #[error("entry ({row}, {col}) = {value} must not be negative")]
    NegativeEntry { row: usize, col: usize, value: f64 },
    #[error("entry ({row}, {col}) is not finite")]
    NonFiniteEntry { row: usize, col: usize },
    #[error("invalid direct-relation matrix: {0}")]
    Matrix(#[from] DematelError),
}

/// A crisp direct-relation matrix with its header of criterion ids.
#[derive(Debug, Clone, PartialEq)]
pub struct CrispMatrixDocument {
    ids: Vec<String>,
    matrix: DirectRelationMatrix,
}

impl CrispMatrixDocument {
    pub fn new(ids: Vec<String>, matrix: DirectRelationMatrix) -> Self {
        assert_eq!(ids.len(), matrix.n(), "header and matrix size must agree");
        Self { ids, matrix }
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn matrix(&self) -> &DirectRelationMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> DirectRelationMatrix {
        self.matrix
    }
}

/// Parses a delimited crisp-matrix grid.
///
/// The first non-blank line holds comma-separated criterion ids; each of the
/// next `n` lines holds `n` comma-separated decimals. The diagonal is forced
/// to zero, everything else is kept exactly as the decimal text converts.
pub fn load_crisp_matrix(source: &[u8]) -> Result<CrispMatrixDocument, MatrixFormatError> {
    let text = std::str::from_utf8(source)?;
    // Line numbers are 1-based over the raw file; blank lines are skipped.
    let lines: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty())
        .collect();
    let Some(((_, header), data_lines)) = lines.split_first() else {
        return Err(MatrixFormatError::Empty);
    };

    let ids: Vec<String> = header.split(',').map(|s| s.trim().to_owned()).collect();
    let n = ids.len();
    for (index, id) in ids.iter().enumerate() {
        if id.is_empty() {
            return Err(MatrixFormatError::EmptyId { index });
        }
        if ids[..index].contains(id) {
            return Err(MatrixFormatError::DuplicateId { id: id.clone() });
        }
    }
    if data_lines.len() != n {
        return Err(MatrixFormatError::NonSquare {
            expected: n,
            found: data_lines.len(),
        });
    }

    let mut entries = Matrix::zeros(n, n);
    for (row, &(line, content)) in data_lines.iter().enumerate() {
        let tokens: Vec<&str> = content.split(',').map(str::trim).collect();
        if tokens.len() != n {
            return Err(MatrixFormatError::NonSquareRow {
                expected: n,
                line,
                found: tokens.len(),
            });
        }
        for (col, token) in tokens.iter().enumerate() {
            let value: f64 = token.parse().map_err(|_| MatrixFormatError::Parse {
                line,
                token: (*token).to_owned(),
            })?;
            if !value.is_finite() {
                return Err(MatrixFormatError::NonFiniteEntry { row, col });
            }
            if value < 0.0 {
                return Err(MatrixFormatError::NegativeEntry { row, col, value });
            }
            entries[(row, col)] = if row == col { 0.0 } else { value };
        }
    }

    let matrix = DirectRelationMatrix::new(entries)?;
    Ok(CrispMatrixDocument { ids, matrix })
}

/// Serializes a crisp matrix back into the delimited-grid format.
///
/// Values print in the shortest round-trip decimal form, so a write followed
/// by [`load_crisp_matrix`] reproduces the entries bitwise.
pub fn format_crisp_matrix(doc: &CrispMatrixDocument) -> String {
    let mut out = String::new();
    out.push_str(&doc.ids().join(","));
    out.push('\n');
    for row in doc.matrix().entries().to_rows() {
        let cells: Vec<String> = row.iter().map(|v| format!("{v}")).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}
