//! End-to-end orchestration: ingest, defuzzify, weight, rank, report.

use crate::cfcs::{defuzzify_surveys, CfcsError};
use crate::dematel::{run_dematel, DematelError, DematelResult, DirectRelationMatrix};
use crate::stats::RankError;
use crate::survey::{Criterion, CrispMatrixDocument, MatrixFormatError, SurveyDocument, SurveyError};
use crate::todim::{run_todim, TodimError, TodimInput, TodimResult};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum HybridError {
    #[error("survey ingestion: {0}")]
    Survey(#[from] SurveyError),
    #[error("matrix ingestion: {0}")]
    MatrixFormat(#[from] MatrixFormatError),
    #[error("defuzzification stage: {0}")]
    Defuzzify(#[from] CfcsError),
    #[error("weighting stage: {0}")]
    Dematel(#[from] DematelError),
    #[error("ranking stage: {0}")]
    Todim(#[from] TodimError),
    #[error("rank comparison: {0}")]
    Rank(#[from] RankError),
    #[error("bundled fixture unavailable: {message}")]
    Fixture { message: String },
    #[error("unknown criterion id {id:?} for reference selection")]
    UnknownReference { id: String },
}

impl HybridError {
    /// True for degenerate-influence-structure failures (as opposed to
    /// malformed input); the CLI maps these to a distinct exit code.
    pub fn is_numerical(&self) -> bool {
        use DematelError::{DegenerateInfluence, SingularSystem, ZeroMatrix};
        match self {
            HybridError::Dematel(e) => {
                matches!(e, ZeroMatrix | SingularSystem { .. } | DegenerateInfluence)
            }
            HybridError::Defuzzify(CfcsError::Matrix(e)) => {
                matches!(e, ZeroMatrix | SingularSystem { .. } | DegenerateInfluence)
            }
            _ => false,
        }
    }
}

/// Pipeline configuration; everything beyond the input itself.
#[derive(Debug, Clone, PartialEq)]
pub struct HybridConfig {
    /// Loss attenuation factor for the ranking stage.
    pub theta: f64,
    /// Reference criterion override (0-based); defaults to the criterion of
    /// greatest weight.
    pub reference: Option<usize>,
    /// Column-normalize the decision matrix before ranking.
    pub normalize_columns: bool,
}

impl Default for HybridConfig {
    fn default() -> Self {
        Self {
            theta: 1.0,
            reference: None,
            normalize_columns: false,
        }
    }
}

/// Either input shape accepted by the pipeline.
#[derive(Debug, Clone, PartialEq)]
pub enum HybridInput {
    Survey(SurveyDocument),
    Matrix(CrispMatrixDocument),
}

impl HybridInput {
    fn criteria(&self) -> Vec<Criterion> {
        match self {
            HybridInput::Survey(doc) => doc.criteria().to_vec(),
            HybridInput::Matrix(doc) => doc
                .ids()
                .iter()
                .map(|id| Criterion {
                    id: id.clone(),
                    name: id.clone(),
                    category: String::new(),
                })
                .collect(),
        }
    }
}

/// What went in: enough to reproduce the run.
#[derive(Debug, Clone, PartialEq)]
pub struct InputDigest {
    /// `"survey"` or `"matrix"`.
    pub source: String,
    pub criteria: Vec<Criterion>,
    /// Number of experts aggregated; absent for crisp-matrix input.
    pub expert_count: Option<usize>,
    /// Linguistic scale as `(label, (l, m, r))` pairs; absent for crisp input.
    pub scale: Option<Vec<(String, (f64, f64, f64))>>,
    pub theta: f64,
    /// Resolved reference criterion (0-based) and its id.
    pub reference: usize,
    pub reference_id: String,
    pub normalize_columns: bool,
}

/// A named rank comparison against external reference ranks.
#[derive(Debug, Clone, PartialEq)]
pub struct Comparison {
    pub name: String,
    pub spearman: f64,
    pub detail: String,
}

/// Full output of one hybrid run: every stage's intermediates plus any
/// comparisons and discrepancy notes attached by the verification harness.
#[derive(Debug, Clone, PartialEq)]
pub struct HybridReport {
    pub input: InputDigest,
    pub direct_relation: DirectRelationMatrix,
    pub dematel: DematelResult,
    pub todim: TodimResult,
    pub comparisons: Vec<Comparison>,
    pub discrepancy_notes: Vec<String>,
}

/// Runs defuzzify (for surveys), DEMATEL and TODIM, with the DEMATEL weights
/// parameterizing TODIM and the direct-relation matrix as its decision
/// matrix.
pub fn run_hybrid(input: &HybridInput, config: &HybridConfig) -> Result<HybridReport, HybridError> {
    let criteria = input.criteria();
    let direct_relation = match input {
        HybridInput::Survey(doc) => defuzzify_surveys(doc.n(), doc.judgment_grid())?,
        HybridInput::Matrix(doc) => doc.matrix().clone(),
    };

    let dematel = run_dematel(&direct_relation)?;

    if let Some(reference) = config.reference {
        if reference >= criteria.len() {
            return Err(HybridError::Todim(TodimError::ReferenceOutOfRange {
                reference,
                n: criteria.len(),
            }));
        }
    }
    let todim_input = TodimInput::new(
        direct_relation.entries().clone(),
        dematel.weights.clone(),
        config.theta,
        config.reference,
        config.normalize_columns,
    )?;
    let todim = run_todim(&todim_input)?;

    let reference = todim_input.reference();
    let (expert_count, scale) = match input {
        HybridInput::Survey(doc) => (
            Some(doc.expert_count()),
            Some(
                doc.scale()
                    .entries()
                    .iter()
                    .map(|(label, tfn)| (label.clone(), (*tfn).into()))
                    .collect::<Vec<(String, (f64, f64, f64))>>(),
            ),
        ),
        HybridInput::Matrix(_) => (None, None),
    };

    Ok(HybridReport {
        input: InputDigest {
            source: match input {
                HybridInput::Survey(_) => "survey".to_owned(),
                HybridInput::Matrix(_) => "matrix".to_owned(),
            },
            reference_id: criteria[reference].id.clone(),
            criteria,
            expert_count,
            scale,
            theta: config.theta,
            reference,
            normalize_columns: config.normalize_columns,
        },
        direct_relation,
        dematel,
        todim,
        comparisons: Vec::new(),
        discrepancy_notes: Vec::new(),
    })
}

/// Resolves a reference criterion id against the input's criterion list.
pub fn resolve_reference_id(input: &HybridInput, id: &str) -> Result<usize, HybridError> {
    let ids: Vec<String> = match input {
        HybridInput::Survey(doc) => doc.criterion_ids(),
        HybridInput::Matrix(doc) => doc.ids().to_vec(),
    };
    ids.iter()
        .position(|candidate| candidate == id)
        .ok_or_else(|| HybridError::UnknownReference { id: id.to_owned() })
}
