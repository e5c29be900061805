//! Command-line interface for the hybrid DEMATEL-TODIM pipeline.
//!
//! Exit codes: 0 on success, 1 on validation or ingestion errors, 2 on
//! numerical errors (singular total-relation system, degenerate influence
//! structure, all-zero matrix).

use clap::{Parser, Subcommand, ValueEnum};
use dematel_todim::pipeline::{
    resolve_reference_id, run_hybrid, HybridConfig, HybridError, HybridInput, HybridReport,
};
use dematel_todim::report::{emit_report, fmt_sig, ReportError, ReportFormat};
use dematel_todim::survey::{format_crisp_matrix, load_crisp_matrix, load_survey, CrispMatrixDocument};
use dematel_todim::verify::verify_paper;
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "dematel-todim",
    version,
    about = "Hybrid fuzzy DEMATEL-TODIM multi-criteria weighting and ranking"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Table,
    Machine,
}

#[derive(Subcommand)]
enum Command {
    /// Defuzzify a survey document into a crisp direct-relation grid
    Defuzzify {
        /// Survey document (JSON)
        survey: PathBuf,
        /// Write the grid here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the DEMATEL weighting stage on a crisp grid or survey document
    Dematel {
        /// Crisp matrix grid or survey document (detected by content)
        input: PathBuf,
        /// Write the table here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the TODIM ranking stage on a crisp grid
    Todim {
        /// Crisp matrix grid; rows are the alternatives, columns the criteria
        matrix: PathBuf,
        /// Weights file (decimals summing to 1) or "dematel" to derive them
        /// from the matrix itself
        #[arg(long)]
        weights: String,
        /// Loss attenuation factor
        #[arg(long, default_value_t = 1.0)]
        theta: f64,
        /// Reference criterion id, or "auto" for the greatest weight
        #[arg(long, default_value = "auto")]
        reference: String,
        /// Column-normalize the decision matrix first
        #[arg(long)]
        normalize_columns: bool,
    },
    /// Run the full hybrid pipeline and emit a report
    Hybrid {
        /// Survey document or crisp matrix grid (detected by content)
        input: PathBuf,
        /// Loss attenuation factor
        #[arg(long, default_value_t = 1.0)]
        theta: f64,
        /// Reference criterion id, or "auto" for the greatest weight
        #[arg(long, default_value = "auto")]
        reference: String,
        /// Column-normalize the decision matrix before ranking
        #[arg(long)]
        normalize_columns: bool,
        /// Report flavor
        #[arg(long, value_enum, default_value_t = OutputFormat::Table)]
        format: OutputFormat,
        /// Write the report here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the bundled case study and compare against its published tables
    VerifyPaper {
        /// Loss attenuation factor
        #[arg(long, default_value_t = 1.0)]
        theta: f64,
    },
}

#[derive(Debug)]
enum CliError {
    Pipeline(HybridError),
    Report(ReportError),
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    Weights {
        path: PathBuf,
        token: String,
    },
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Pipeline(e) => write!(f, "{e}"),
            CliError::Report(e) => write!(f, "{e}"),
            CliError::Io { path, source } => write!(f, "{}: {source}", path.display()),
            CliError::Weights { path, token } => write!(
                f,
                "{}: cannot parse {token:?} as a decimal weight",
                path.display()
            ),
        }
    }
}

impl From<HybridError> for CliError {
    fn from(e: HybridError) -> Self {
        CliError::Pipeline(e)
    }
}

impl From<ReportError> for CliError {
    fn from(e: ReportError) -> Self {
        CliError::Report(e)
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Pipeline(e) if e.is_numerical() => 2,
            _ => 1,
        }
    }
}

fn read_file(path: &Path) -> Result<Vec<u8>, CliError> {
    std::fs::read(path).map_err(|source| CliError::Io {
        path: path.to_owned(),
        source,
    })
}

fn write_output(out: Option<&Path>, content: &str) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, content).map_err(|source| CliError::Io {
            path: path.to_owned(),
            source,
        }),
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            lock.write_all(content.as_bytes())
                .and_then(|()| lock.flush())
                .map_err(|source| CliError::Io {
                    path: PathBuf::from("<stdout>"),
                    source,
                })
        }
    }
}

/// Survey documents are JSON objects; anything else is read as a grid.
fn load_input(path: &Path) -> Result<HybridInput, CliError> {
    let bytes = read_file(path)?;
    let looks_like_json = bytes
        .iter()
        .find(|b| !b.is_ascii_whitespace())
        .is_some_and(|b| *b == b'{');
    if looks_like_json {
        Ok(HybridInput::Survey(
            load_survey(&bytes).map_err(HybridError::from)?,
        ))
    } else {
        Ok(HybridInput::Matrix(
            load_crisp_matrix(&bytes).map_err(HybridError::from)?,
        ))
    }
}

fn parse_weights_file(path: &Path) -> Result<Vec<f64>, CliError> {
    let bytes = read_file(path)?;
    let text = String::from_utf8_lossy(&bytes);
    let mut weights = Vec::new();
    for token in text.split([',', '\n', '\r', '\t', ' ']) {
        let token = token.trim();
        if token.is_empty() {
            continue;
        }
        weights.push(token.parse::<f64>().map_err(|_| CliError::Weights {
            path: path.to_owned(),
            token: token.to_owned(),
        })?);
    }
    Ok(weights)
}

fn resolve_reference(input: &HybridInput, reference: &str) -> Result<Option<usize>, CliError> {
    if reference == "auto" {
        Ok(None)
    } else {
        Ok(Some(resolve_reference_id(input, reference)?))
    }
}

fn dematel_table(report: &HybridReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "dematel weighting ({} criteria)", report.input.criteria.len());
    let id_width = report
        .input
        .criteria
        .iter()
        .map(|c| c.id.len())
        .max()
        .unwrap_or(0)
        .max("criterion".len());
    let _ = writeln!(
        out,
        "{:<id_width$}  {:>10} {:>10} {:>10} {:>10} {:>10} {:>4}",
        "criterion", "r", "c", "r+c", "r-c", "weight", "rank"
    );
    let dematel = &report.dematel;
    for (i, criterion) in report.input.criteria.iter().enumerate() {
        let _ = writeln!(
            out,
            "{:<id_width$}  {:>10} {:>10} {:>10} {:>10} {:>10} {:>4}",
            criterion.id,
            fmt_sig(dematel.r[i]),
            fmt_sig(dematel.c[i]),
            fmt_sig(dematel.prominence[i]),
            fmt_sig(dematel.net_effect[i]),
            fmt_sig(dematel.weights[i]),
            dematel.rank[i],
        );
    }
    out
}

fn todim_table(
    doc: &CrispMatrixDocument,
    result: &dematel_todim::todim::TodimResult,
    theta: f64,
    reference: usize,
) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "todim ranking ({} alternatives, theta: {}, reference: {})",
        doc.ids().len(),
        fmt_sig(theta),
        doc.ids()[reference]
    );
    let id_width = doc
        .ids()
        .iter()
        .map(String::len)
        .max()
        .unwrap_or(0)
        .max("alternative".len());
    let _ = writeln!(
        out,
        "{:<id_width$}  {:>12} {:>10} {:>10} {:>12} {:>4}",
        "alternative", "dominance", "xi", "loss-share", "final-weight", "rank"
    );
    for (i, id) in doc.ids().iter().enumerate() {
        let _ = writeln!(
            out,
            "{:<id_width$}  {:>12} {:>10} {:>10} {:>12} {:>4}",
            id,
            fmt_sig(result.dominance_sums[i]),
            fmt_sig(result.xi[i]),
            fmt_sig(result.loss_share[i]),
            fmt_sig(result.final_weights[i]),
            result.rank[i],
        );
    }
    if result.degenerate {
        let _ = writeln!(out, "(all dominance sums equal; uniform degenerate ranking)");
    }
    out
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Defuzzify { survey, out } => {
            let bytes = read_file(&survey)?;
            let doc = load_survey(&bytes).map_err(HybridError::from)?;
            let matrix = dematel_todim::cfcs::defuzzify_surveys(doc.n(), doc.judgment_grid())
                .map_err(HybridError::from)?;
            let grid = CrispMatrixDocument::new(doc.criterion_ids(), matrix);
            write_output(out.as_deref(), &format_crisp_matrix(&grid))
        }
        Command::Dematel { input, out } => {
            let input = load_input(&input)?;
            let report = run_hybrid(&input, &HybridConfig::default())?;
            write_output(out.as_deref(), &dematel_table(&report))
        }
        Command::Todim {
            matrix,
            weights,
            theta,
            reference,
            normalize_columns,
        } => {
            let bytes = read_file(&matrix)?;
            let doc = load_crisp_matrix(&bytes).map_err(HybridError::from)?;
            let weight_values = if weights == "dematel" {
                dematel_todim::dematel::run_dematel(doc.matrix())
                    .map_err(HybridError::from)?
                    .weights
            } else {
                parse_weights_file(Path::new(&weights))?
            };
            let reference_index = if reference == "auto" {
                None
            } else {
                Some(
                    resolve_reference_id(&HybridInput::Matrix(doc.clone()), &reference)
                        .map_err(CliError::from)?,
                )
            };
            let todim_input = dematel_todim::todim::TodimInput::new(
                doc.matrix().entries().clone(),
                weight_values,
                theta,
                reference_index,
                normalize_columns,
            )
            .map_err(HybridError::from)?;
            let resolved_reference = todim_input.reference();
            let result =
                dematel_todim::todim::run_todim(&todim_input).map_err(HybridError::from)?;
            write_output(None, &todim_table(&doc, &result, theta, resolved_reference))
        }
        Command::Hybrid {
            input,
            theta,
            reference,
            normalize_columns,
            format,
            out,
        } => {
            let input = load_input(&input)?;
            let config = HybridConfig {
                theta,
                reference: resolve_reference(&input, &reference)?,
                normalize_columns,
            };
            let report = run_hybrid(&input, &config)?;
            let format = match format {
                OutputFormat::Table => ReportFormat::Table,
                OutputFormat::Machine => ReportFormat::Machine,
            };
            let mut buffer = Vec::new();
            emit_report(&report, format, &mut buffer)?;
            write_output(
                out.as_deref(),
                &String::from_utf8(buffer).expect("reports are UTF-8"),
            )
        }
        Command::VerifyPaper { theta } => {
            let report = verify_paper(theta)?;
            let mut buffer = Vec::new();
            emit_report(&report, ReportFormat::Table, &mut buffer)?;
            write_output(None, &String::from_utf8(buffer).expect("reports are UTF-8"))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(error) => {
            eprintln!("error: {error}");
            ExitCode::from(error.exit_code())
        }
    }
}
