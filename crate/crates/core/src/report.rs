//! Deterministic report emission and machine-format reload.
//!
//! Two formats share one [`HybridReport`]:
//!
//! - `table`: human-readable per-criterion tables with reals printed to six
//!   significant digits;
//! - `machine`: JSON with a six-significant-digit summary plus a
//!   `full_precision` block that round-trips every matrix and vector
//!   bitwise through [`load_machine_report`].
//!
//! Emission is byte-deterministic: identical reports serialize identically.

use crate::dematel::{DematelResult, DirectRelationMatrix};
use crate::matrix::Matrix;
use crate::pipeline::{Comparison, HybridReport, InputDigest};
use crate::survey::Criterion;
use crate::todim::TodimResult;
use indexmap::IndexMap;
use serde::{Deserialize, Serialize};
use std::io::Write;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ReportError {
    #[error("cannot write report: {0}")]
    Sink(#[from] std::io::Error),
    #[error("machine report is not valid JSON: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("machine report format {found:?} not supported, expected {expected:?}")]
    UnsupportedFormat { expected: String, found: String },
    #[error("machine report is inconsistent: {message}")]
    Inconsistent { message: String },
}

/// Output flavor for [`emit_report`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Table,
    Machine,
}

const MACHINE_FORMAT_TAG: &str = "dematel-todim/report/v1";

/// Formats `x` with six significant digits, plain decimal where reasonable.
pub fn fmt_sig(x: f64) -> String {
    if x == 0.0 {
        return "0".to_owned();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let exp = x.abs().log10().floor() as i32;
    if !(-4..=5).contains(&exp) {
        format!("{x:.5e}")
    } else {
        let decimals = (5 - exp) as usize;
        format!("{x:.decimals$}")
    }
}

/// Rounds `x` to six significant digits.
fn round_sig(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    let exp = x.abs().log10().floor() as i32;
    let factor = 10f64.powi(5 - exp);
    (x * factor).round() / factor
}

fn round_vec(values: &[f64]) -> Vec<f64> {
    values.iter().copied().map(round_sig).collect()
}

#[derive(Debug, Serialize, Deserialize)]
struct MachineInput {
    source: String,
    criteria: Vec<Criterion>,
    #[serde(skip_serializing_if = "Option::is_none")]
    expert_count: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    scale: Option<IndexMap<String, [f64; 3]>>,
    theta: f64,
    reference_index: usize,
    reference_id: String,
    normalize_columns: bool,
}

#[derive(Debug, Serialize, Deserialize)]
struct MachineDematelSummary {
    r: Vec<f64>,
    c: Vec<f64>,
    prominence: Vec<f64>,
    net_effect: Vec<f64>,
    weights: Vec<f64>,
    rank: Vec<usize>,
}

#[derive(Debug, Serialize, Deserialize)]
struct MachineTodimSummary {
    relative_weights: Vec<f64>,
    dominance_sums: Vec<f64>,
    xi: Vec<f64>,
    loss_share: Vec<f64>,
    final_weights: Vec<f64>,
    rank: Vec<usize>,
    degenerate: bool,
}

#[derive(Debug, Serialize, Deserialize)]
struct MachineSummary {
    criteria: Vec<String>,
    dematel: MachineDematelSummary,
    todim: MachineTodimSummary,
}

#[derive(Debug, Serialize, Deserialize)]
struct MachineComparison {
    name: String,
    spearman: f64,
    detail: String,
}

#[derive(Debug, Serialize, Deserialize)]
struct MachineFullPrecision {
    direct_relation: Vec<Vec<f64>>,
    normalized: Vec<Vec<f64>>,
    total_relation: Vec<Vec<f64>>,
    r: Vec<f64>,
    c: Vec<f64>,
    prominence: Vec<f64>,
    net_effect: Vec<f64>,
    weights: Vec<f64>,
    relative_weights: Vec<f64>,
    ratings: Vec<Vec<f64>>,
    dominance: Vec<Vec<f64>>,
    dominance_sums: Vec<f64>,
    xi: Vec<f64>,
    loss_share: Vec<f64>,
    final_weights: Vec<f64>,
}

#[derive(Debug, Serialize, Deserialize)]
struct MachineReport {
    format: String,
    input: MachineInput,
    summary: MachineSummary,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    comparisons: Vec<MachineComparison>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    discrepancy_notes: Vec<String>,
    full_precision: MachineFullPrecision,
}

fn to_machine(report: &HybridReport) -> MachineReport {
    let input = &report.input;
    let dematel = &report.dematel;
    let todim = &report.todim;
    MachineReport {
        format: MACHINE_FORMAT_TAG.to_owned(),
        input: MachineInput {
            source: input.source.clone(),
            criteria: input.criteria.clone(),
            expert_count: input.expert_count,
            scale: input.scale.as_ref().map(|pairs| {
                pairs
                    .iter()
                    .map(|(label, (l, m, r))| (label.clone(), [*l, *m, *r]))
                    .collect()
            }),
            theta: input.theta,
            reference_index: input.reference,
            reference_id: input.reference_id.clone(),
            normalize_columns: input.normalize_columns,
        },
        summary: MachineSummary {
            criteria: input.criteria.iter().map(|c| c.id.clone()).collect(),
            dematel: MachineDematelSummary {
                r: round_vec(&dematel.r),
                c: round_vec(&dematel.c),
                prominence: round_vec(&dematel.prominence),
                net_effect: round_vec(&dematel.net_effect),
                weights: round_vec(&dematel.weights),
                rank: dematel.rank.clone(),
            },
            todim: MachineTodimSummary {
                relative_weights: round_vec(&todim.relative_weights),
                dominance_sums: round_vec(&todim.dominance_sums),
                xi: round_vec(&todim.xi),
                loss_share: round_vec(&todim.loss_share),
                final_weights: round_vec(&todim.final_weights),
                rank: todim.rank.clone(),
                degenerate: todim.degenerate,
            },
        },
        comparisons: report
            .comparisons
            .iter()
            .map(|c| MachineComparison {
                name: c.name.clone(),
                spearman: c.spearman,
                detail: c.detail.clone(),
            })
            .collect(),
        discrepancy_notes: report.discrepancy_notes.clone(),
        full_precision: MachineFullPrecision {
            direct_relation: report.direct_relation.entries().to_rows(),
            normalized: dematel.normalized.to_rows(),
            total_relation: dematel.total.to_rows(),
            r: dematel.r.clone(),
            c: dematel.c.clone(),
            prominence: dematel.prominence.clone(),
            net_effect: dematel.net_effect.clone(),
            weights: dematel.weights.clone(),
            relative_weights: todim.relative_weights.clone(),
            ratings: todim.ratings.to_rows(),
            dominance: todim.dominance.to_rows(),
            dominance_sums: todim.dominance_sums.clone(),
            xi: todim.xi.clone(),
            loss_share: todim.loss_share.clone(),
            final_weights: todim.final_weights.clone(),
        },
    }
}

fn from_machine(doc: MachineReport) -> Result<HybridReport, ReportError> {
    if doc.format != MACHINE_FORMAT_TAG {
        return Err(ReportError::UnsupportedFormat {
            expected: MACHINE_FORMAT_TAG.to_owned(),
            found: doc.format,
        });
    }
    let full = doc.full_precision;
    let direct_relation = DirectRelationMatrix::new(Matrix::from_rows(&full.direct_relation))
        .map_err(|e| ReportError::Inconsistent {
            message: e.to_string(),
        })?;
    let n = direct_relation.n();
    let summary = doc.summary;
    if summary.dematel.rank.len() != n || full.weights.len() != n {
        return Err(ReportError::Inconsistent {
            message: format!("vector lengths do not match {n} criteria"),
        });
    }
    let input = doc.input;
    Ok(HybridReport {
        input: InputDigest {
            source: input.source,
            criteria: input.criteria,
            expert_count: input.expert_count,
            scale: input.scale.map(|map| {
                map.into_iter()
                    .map(|(label, [l, m, r])| (label, (l, m, r)))
                    .collect()
            }),
            theta: input.theta,
            reference: input.reference_index,
            reference_id: input.reference_id,
            normalize_columns: input.normalize_columns,
        },
        direct_relation,
        dematel: DematelResult {
            normalized: Matrix::from_rows(&full.normalized),
            total: Matrix::from_rows(&full.total_relation),
            r: full.r,
            c: full.c,
            prominence: full.prominence,
            net_effect: full.net_effect,
            weights: full.weights,
            rank: summary.dematel.rank,
        },
        todim: TodimResult {
            relative_weights: full.relative_weights,
            ratings: Matrix::from_rows(&full.ratings),
            dominance: Matrix::from_rows(&full.dominance),
            dominance_sums: full.dominance_sums,
            xi: full.xi,
            loss_share: full.loss_share,
            final_weights: full.final_weights,
            rank: summary.todim.rank,
            degenerate: summary.todim.degenerate,
        },
        comparisons: doc
            .comparisons
            .into_iter()
            .map(|c| Comparison {
                name: c.name,
                spearman: c.spearman,
                detail: c.detail,
            })
            .collect(),
        discrepancy_notes: doc.discrepancy_notes,
    })
}

fn render_table(report: &HybridReport) -> String {
    let input = &report.input;
    let mut out = String::new();
    out.push_str("hybrid dematel-todim report\n");
    out.push_str("===========================\n");
    match input.expert_count {
        Some(k) => out.push_str(&format!(
            "source: survey ({} criteria, {} expert{})\n",
            input.criteria.len(),
            k,
            if k == 1 { "" } else { "s" }
        )),
        None => out.push_str(&format!(
            "source: matrix ({} criteria)\n",
            input.criteria.len()
        )),
    }
    out.push_str(&format!(
        "theta: {}  reference: {}  column-normalization: {}\n",
        fmt_sig(input.theta),
        input.reference_id,
        if input.normalize_columns { "on" } else { "off" }
    ));

    let id_width = input
        .criteria
        .iter()
        .map(|c| c.id.len())
        .max()
        .unwrap_or(0)
        .max("criterion".len());

    let dematel = &report.dematel;
    out.push_str("\nweighting (dematel)\n");
    out.push_str(&format!(
        "{:<id_width$}  {:>10} {:>10} {:>10} {:>10} {:>10} {:>4}\n",
        "criterion", "r", "c", "r+c", "r-c", "weight", "rank"
    ));
    for (i, criterion) in input.criteria.iter().enumerate() {
        out.push_str(&format!(
            "{:<id_width$}  {:>10} {:>10} {:>10} {:>10} {:>10} {:>4}\n",
            criterion.id,
            fmt_sig(dematel.r[i]),
            fmt_sig(dematel.c[i]),
            fmt_sig(dematel.prominence[i]),
            fmt_sig(dematel.net_effect[i]),
            fmt_sig(dematel.weights[i]),
            dematel.rank[i],
        ));
    }

    let todim = &report.todim;
    out.push_str("\nranking (todim)\n");
    out.push_str(&format!(
        "{:<id_width$}  {:>12} {:>10} {:>10} {:>12} {:>4}\n",
        "criterion", "dominance", "xi", "loss-share", "final-weight", "rank"
    ));
    for (i, criterion) in input.criteria.iter().enumerate() {
        out.push_str(&format!(
            "{:<id_width$}  {:>12} {:>10} {:>10} {:>12} {:>4}\n",
            criterion.id,
            fmt_sig(todim.dominance_sums[i]),
            fmt_sig(todim.xi[i]),
            fmt_sig(todim.loss_share[i]),
            fmt_sig(todim.final_weights[i]),
            todim.rank[i],
        ));
    }
    if todim.degenerate {
        out.push_str("(all dominance sums equal; uniform degenerate ranking)\n");
    }

    if !report.comparisons.is_empty() {
        out.push_str("\ncomparisons\n");
        for comparison in &report.comparisons {
            out.push_str(&format!(
                "{:<34} spearman {:>9}  {}\n",
                comparison.name,
                fmt_sig(comparison.spearman),
                comparison.detail
            ));
        }
    }

    if !report.discrepancy_notes.is_empty() {
        out.push_str("\ndiscrepancy notes\n");
        for note in &report.discrepancy_notes {
            out.push_str(&format!("- {note}\n"));
        }
    }
    out
}

/// Writes the report to `sink` in the chosen format.
pub fn emit_report(
    report: &HybridReport,
    format: ReportFormat,
    sink: &mut dyn Write,
) -> Result<(), ReportError> {
    match format {
        ReportFormat::Table => sink.write_all(render_table(report).as_bytes())?,
        ReportFormat::Machine => {
            let doc = to_machine(report);
            let mut text = serde_json::to_string_pretty(&doc)?;
            text.push('\n');
            sink.write_all(text.as_bytes())?;
        }
    }
    Ok(())
}

/// Renders the report to a `String` in the chosen format.
pub fn render_report(report: &HybridReport, format: ReportFormat) -> Result<String, ReportError> {
    let mut buffer = Vec::new();
    emit_report(report, format, &mut buffer)?;
    Ok(String::from_utf8(buffer).expect("report output is UTF-8"))
}

/// Reconstructs a report from machine-format bytes; the `full_precision`
/// block is authoritative, so matrices reload bitwise.
pub fn load_machine_report(source: &[u8]) -> Result<HybridReport, ReportError> {
    let doc: MachineReport = serde_json::from_slice(source)?;
    from_machine(doc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pipeline::{run_hybrid, HybridConfig, HybridInput};
    use crate::survey::load_crisp_matrix;

    fn sample_report() -> HybridReport {
        let doc =
            load_crisp_matrix(b"C1,C2,C3\n0,0.4,0.17\n0.25,0,0.31\n0.09,0.55,0\n").unwrap();
        let mut report =
            run_hybrid(&HybridInput::Matrix(doc), &HybridConfig::default()).unwrap();
        report.comparisons.push(Comparison {
            name: "sample".to_owned(),
            spearman: 0.75,
            detail: "demo".to_owned(),
        });
        report.discrepancy_notes.push("a note".to_owned());
        report
    }

    #[test]
    fn fmt_sig_six_significant_digits() {
        assert_eq!(fmt_sig(0.0), "0");
        assert_eq!(fmt_sig(4.830062), "4.83006");
        assert_eq!(fmt_sig(0.07955), "0.0795500");
        assert_eq!(fmt_sig(-0.658539), "-0.658539");
        assert_eq!(fmt_sig(62.5653), "62.5653");
        assert_eq!(fmt_sig(1.0), "1.00000");
        assert_eq!(fmt_sig(123456789.0), "1.23457e8");
    }

    #[test]
    fn round_sig_is_idempotent() {
        for x in [0.07955, -0.658539, 4.830062, 1.0, 0.0] {
            assert_eq!(round_sig(round_sig(x)), round_sig(x));
        }
        assert_eq!(round_sig(0.123456789), 0.123457);
    }

    #[test]
    fn emission_is_deterministic() {
        let report = sample_report();
        for format in [ReportFormat::Table, ReportFormat::Machine] {
            let a = render_report(&report, format).unwrap();
            let b = render_report(&report, format).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn machine_report_round_trips_bitwise() {
        let report = sample_report();
        let text = render_report(&report, ReportFormat::Machine).unwrap();
        let reloaded = load_machine_report(text.as_bytes()).unwrap();
        assert_eq!(reloaded, report);
        let again = render_report(&reloaded, ReportFormat::Machine).unwrap();
        assert_eq!(again, text);
    }

    #[test]
    fn table_report_mentions_key_sections() {
        let report = sample_report();
        let text = render_report(&report, ReportFormat::Table).unwrap();
        assert!(text.contains("weighting (dematel)"));
        assert!(text.contains("ranking (todim)"));
        assert!(text.contains("comparisons"));
        assert!(text.contains("discrepancy notes"));
        assert!(text.contains("C3"));
    }

    #[test]
    fn empty_comparisons_section_omitted() {
        let mut report = sample_report();
        report.comparisons.clear();
        report.discrepancy_notes.clear();
        let table = render_report(&report, ReportFormat::Table).unwrap();
        assert!(!table.contains("comparisons"));
        let machine = render_report(&report, ReportFormat::Machine).unwrap();
        assert!(!machine.contains("comparisons"));
    }

    #[test]
    fn wrong_format_tag_is_rejected() {
        let report = sample_report();
        let text = render_report(&report, ReportFormat::Machine)
            .unwrap()
            .replace(MACHINE_FORMAT_TAG, "other/format");
        assert!(matches!(
            load_machine_report(text.as_bytes()).unwrap_err(),
            ReportError::UnsupportedFormat { .. }
        ));
    }
}
