//! JSON and CSV encodings.
//!
//! Counts that can outgrow 64 bits (factorials, N_m) are written as decimal
//! strings so JSON readers without big-number support keep them exact.

use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use motionless_core::combinatorics::ConvergenceRow;
use motionless_core::{
    Ensemble, ExperimentConfig, ExperimentResult, MemoryVariant, ObservationVector, PatternMemory,
    SetFamily,
};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Core(#[from] motionless_core::Error),
}

pub type Result<T> = std::result::Result<T, FormatError>;

/// Output encoding selected with `--format`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum OutputFormat {
    Csv,
    #[default]
    Json,
}

/// Formats `x` with `digits` significant digits in positional notation.
pub fn significant(x: f64, digits: usize) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let sci = format!("{:.*e}", digits.saturating_sub(1), x);
    let exp: i32 = sci
        .rsplit_once('e')
        .and_then(|(_, e)| e.parse().ok())
        .expect("scientific formatting carries an exponent");
    let rounded: f64 = sci.parse().expect("round-trips");
    let decimals = (digits as i32 - 1 - exp).max(0) as usize;
    format!("{rounded:.decimals$}")
}

/// Rounds `x` to `digits` significant digits.
pub fn round_significant(x: f64, digits: usize) -> f64 {
    significant(x, digits)
        .parse()
        .expect("formatted float parses")
}

pub fn write_json<T: Serialize>(out: &mut dyn Write, value: &T) -> Result<()> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    out.write_all(b"\n")?;
    Ok(())
}

fn csv_writer(out: &mut dyn Write) -> csv::Writer<&mut dyn Write> {
    csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out)
}

fn write_csv_rows<T: Serialize>(out: &mut dyn Write, rows: &[T]) -> Result<()> {
    let mut w = csv_writer(out);
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}

// ---------------------------------------------------------------- table

/// Significant digits of the share column.
pub const SHARE_DIGITS: usize = 12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceRowDoc {
    pub m: usize,
    pub factorial: String,
    pub n_fixed: String,
    pub share: f64,
    pub abs_error: f64,
    pub series_bound: f64,
}

impl From<&ConvergenceRow> for ConvergenceRowDoc {
    fn from(row: &ConvergenceRow) -> Self {
        Self {
            m: row.m,
            factorial: row.factorial.to_string(),
            n_fixed: row.n_fixed.to_string(),
            share: round_significant(row.share, SHARE_DIGITS),
            abs_error: row.abs_error,
            series_bound: row.series_bound,
        }
    }
}

#[derive(Serialize)]
struct ConvergenceCsvRow<'a> {
    m: usize,
    factorial: &'a str,
    n_fixed: &'a str,
    share: String,
    abs_error: String,
    series_bound: String,
}

pub fn write_table(
    out: &mut dyn Write,
    rows: &[ConvergenceRow],
    format: OutputFormat,
) -> Result<()> {
    let docs: Vec<ConvergenceRowDoc> = rows.iter().map(Into::into).collect();
    match format {
        OutputFormat::Json => write_json(out, &docs),
        OutputFormat::Csv => {
            let csv_rows: Vec<_> = rows
                .iter()
                .zip(&docs)
                .map(|(row, doc)| ConvergenceCsvRow {
                    m: doc.m,
                    factorial: &doc.factorial,
                    n_fixed: &doc.n_fixed,
                    share: significant(row.share, SHARE_DIGITS),
                    abs_error: format!("{:e}", row.abs_error),
                    series_bound: format!("{:e}", row.series_bound),
                })
                .collect();
            write_csv_rows(out, &csv_rows)
        }
    }
}

// --------------------------------------------------------------- ensemble

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MemberDoc {
    pub elements: Vec<String>,
    pub fixed: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnsembleDoc {
    pub base: Vec<String>,
    pub members: Vec<MemberDoc>,
    pub chi: usize,
}

impl From<&Ensemble<String>> for EnsembleDoc {
    fn from(e: &Ensemble<String>) -> Self {
        Self {
            base: e.base().elements().to_vec(),
            members: e
                .members()
                .iter()
                .map(|m| MemberDoc {
                    elements: m.elements().to_vec(),
                    fixed: m.fixed().to_vec(),
                })
                .collect(),
            chi: e.chi(),
        }
    }
}

fn join<T: ToString>(items: &[T]) -> String {
    items
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

#[derive(Serialize)]
struct MemberCsvRow {
    index: usize,
    elements: String,
    fixed: String,
    chi: usize,
}

pub fn write_ensemble(
    out: &mut dyn Write,
    e: &Ensemble<String>,
    format: OutputFormat,
) -> Result<()> {
    match format {
        OutputFormat::Json => write_json(out, &EnsembleDoc::from(e)),
        OutputFormat::Csv => {
            let rows: Vec<_> = e
                .members()
                .iter()
                .enumerate()
                .map(|(index, m)| MemberCsvRow {
                    index,
                    elements: join(m.elements()),
                    fixed: join(m.fixed()),
                    chi: e.chi(),
                })
                .collect();
            write_csv_rows(out, &rows)
        }
    }
}

// ------------------------------------------------------------------ union

/// Parses a JSON array of arrays of non-negative integers.
pub fn parse_set_family(json: &str) -> Result<SetFamily> {
    let sets: Vec<Vec<u64>> = serde_json::from_str(json)?;
    Ok(SetFamily::new(sets)?)
}

pub fn load_set_family(path: &Path) -> Result<SetFamily> {
    parse_set_family(&std::fs::read_to_string(path)?)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnionDoc {
    pub direct: u64,
    pub inclusion_exclusion: u64,
    pub recursive: u64,
    pub terms_evaluated: u64,
}

impl UnionDoc {
    pub fn agrees(&self) -> bool {
        self.direct == self.inclusion_exclusion && self.direct == self.recursive
    }
}

pub fn write_union(out: &mut dyn Write, doc: &UnionDoc, format: OutputFormat) -> Result<()> {
    match format {
        OutputFormat::Json => write_json(out, doc),
        OutputFormat::Csv => write_csv_rows(out, std::slice::from_ref(doc)),
    }
}

// ----------------------------------------------------------------- memory

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MemoryDoc {
    pub tolerance: f64,
    pub stored: Vec<Vec<f64>>,
}

impl From<&PatternMemory> for MemoryDoc {
    fn from(m: &PatternMemory) -> Self {
        Self {
            tolerance: m.tolerance(),
            stored: m.stored().iter().map(|v| v.components().to_vec()).collect(),
        }
    }
}

impl TryFrom<MemoryDoc> for PatternMemory {
    type Error = FormatError;

    fn try_from(doc: MemoryDoc) -> Result<Self> {
        let vectors = doc
            .stored
            .into_iter()
            .map(ObservationVector::new)
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(PatternMemory::new(doc.tolerance)?.store(vectors)?)
    }
}

pub fn memory_to_json(memory: &PatternMemory) -> Result<String> {
    Ok(serde_json::to_string(&MemoryDoc::from(memory))?)
}

pub fn memory_from_json(json: &str) -> Result<PatternMemory> {
    serde_json::from_str::<MemoryDoc>(json)?.try_into()
}

// ------------------------------------------------------------- experiment

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum VariantDoc {
    Full,
    FixedOnly,
    Reduced { k: usize },
}

impl From<MemoryVariant> for VariantDoc {
    fn from(v: MemoryVariant) -> Self {
        match v {
            MemoryVariant::Full => Self::Full,
            MemoryVariant::FixedOnly => Self::FixedOnly,
            MemoryVariant::Reduced(k) => Self::Reduced { k },
        }
    }
}

impl From<VariantDoc> for MemoryVariant {
    fn from(v: VariantDoc) -> Self {
        match v {
            VariantDoc::Full => Self::Full,
            VariantDoc::FixedOnly => Self::FixedOnly,
            VariantDoc::Reduced { k } => Self::Reduced(k),
        }
    }
}

/// `full`, `fixed_only` or `reduced:K`.
pub fn variant_label(v: MemoryVariant) -> String {
    match v {
        MemoryVariant::Full => "full".into(),
        MemoryVariant::FixedOnly => "fixed_only".into(),
        MemoryVariant::Reduced(k) => format!("reduced:{k}"),
    }
}

/// Accepts `full`, `fixed` / `fixed_only` / `fixed-only` and `reduced:K`.
pub fn parse_variant(s: &str) -> std::result::Result<MemoryVariant, String> {
    match s {
        "full" => Ok(MemoryVariant::Full),
        "fixed" | "fixed_only" | "fixed-only" => Ok(MemoryVariant::FixedOnly),
        _ => s
            .strip_prefix("reduced:")
            .and_then(|k| k.parse().ok())
            .map(MemoryVariant::Reduced)
            .ok_or_else(|| format!("unknown variant `{s}` (expected full, fixed or reduced:K)")),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConfigDoc {
    pub n: usize,
    pub trials: u64,
    pub noise_rate: f64,
    pub seed: u64,
    pub variant: VariantDoc,
}

impl From<&ExperimentConfig> for ConfigDoc {
    fn from(c: &ExperimentConfig) -> Self {
        Self {
            n: c.n,
            trials: c.trials,
            noise_rate: c.noise_rate,
            seed: c.seed,
            variant: c.variant.into(),
        }
    }
}

impl From<ConfigDoc> for ExperimentConfig {
    fn from(c: ConfigDoc) -> Self {
        Self {
            n: c.n,
            trials: c.trials,
            noise_rate: c.noise_rate,
            seed: c.seed,
            variant: c.variant.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentDoc {
    pub config: ConfigDoc,
    pub accuracy: f64,
    pub correct: u64,
    pub comparisons: u64,
}

impl From<&ExperimentResult> for ExperimentDoc {
    fn from(r: &ExperimentResult) -> Self {
        Self {
            config: (&r.config).into(),
            accuracy: r.accuracy,
            correct: r.correct,
            comparisons: r.comparisons,
        }
    }
}

#[derive(Serialize)]
struct ExperimentCsvRow {
    n: usize,
    trials: u64,
    noise_rate: f64,
    seed: u64,
    variant: String,
    accuracy: f64,
    correct: u64,
    comparisons: u64,
}

impl From<&ExperimentResult> for ExperimentCsvRow {
    fn from(r: &ExperimentResult) -> Self {
        Self {
            n: r.config.n,
            trials: r.config.trials,
            noise_rate: r.config.noise_rate,
            seed: r.config.seed,
            variant: variant_label(r.config.variant),
            accuracy: r.accuracy,
            correct: r.correct,
            comparisons: r.comparisons,
        }
    }
}

pub fn write_experiment(
    out: &mut dyn Write,
    r: &ExperimentResult,
    format: OutputFormat,
) -> Result<()> {
    match format {
        OutputFormat::Json => write_json(out, &ExperimentDoc::from(r)),
        OutputFormat::Csv => write_csv_rows(out, &[ExperimentCsvRow::from(r)]),
    }
}

#[derive(Serialize)]
struct SweepCsvRow {
    noise_rate: f64,
    accuracy: f64,
    comparisons: u64,
}

/// Sweep results: the full documents as JSON, or `noise_rate,accuracy,comparisons` rows.
pub fn write_sweep(
    out: &mut dyn Write,
    rows: &[ExperimentResult],
    format: OutputFormat,
) -> Result<()> {
    match format {
        OutputFormat::Json => {
            let docs: Vec<ExperimentDoc> = rows.iter().map(Into::into).collect();
            write_json(out, &docs)
        }
        OutputFormat::Csv => {
            let csv_rows: Vec<_> = rows
                .iter()
                .map(|r| SweepCsvRow {
                    noise_rate: r.config.noise_rate,
                    accuracy: r.accuracy,
                    comparisons: r.comparisons,
                })
                .collect();
            write_csv_rows(out, &csv_rows)
        }
    }
}
