//! Hybrid fuzzy DEMATEL-TODIM multi-criteria decision analysis.
//!
//! The pipeline ingests multi-expert linguistic pairwise-influence judgments,
//! defuzzifies them with CFCS into a crisp direct-relation matrix, derives
//! criterion weights with DEMATEL, and ranks the criteria against each other
//! with the prospect-theoretic TODIM method using those weights. A bundled
//! seventeen-criterion knowledge-management case study serves as a
//! regression fixture for the whole chain.
//!
//! Stage by stage:
//!
//! - [`tfn`]: triangular fuzzy numbers and linguistic scales.
//! - [`cfcs`]: CFCS defuzzification of expert judgments.
//! - [`dematel`]: total-relation analysis and prominence weights.
//! - [`todim`]: pairwise gain/loss dominance and global values.
//! - [`survey`]: survey-document and crisp-matrix ingestion.
//! - [`pipeline`]: end-to-end orchestration into a [`pipeline::HybridReport`].
//! - [`report`]: deterministic table and machine-readable emission.
//! - [`verify`]: regression harness against the bundled case study.

pub mod cfcs;
pub mod dematel;
pub mod fixtures;
pub mod matrix;
pub mod pipeline;
pub mod report;
pub mod stats;
pub mod survey;
pub mod tfn;
pub mod todim;
pub mod verify;

pub use cfcs::{cfcs_cell, defuzzify_surveys, CfcsError, CfcsTrace, ExpertJudgmentCell};
pub use dematel::{run_dematel, DematelError, DematelResult, DirectRelationMatrix};
pub use matrix::Matrix;
pub use pipeline::{run_hybrid, HybridConfig, HybridError, HybridInput, HybridReport};
pub use stats::{rank_descending, spearman, RankError};
pub use survey::{load_crisp_matrix, load_survey, SurveyDocument, SurveyError};
pub use tfn::{FuzzyError, LinguisticScale, TriangularFuzzyNumber};
pub use todim::{run_todim, TodimError, TodimInput, TodimResult};
pub use verify::verify_paper;
