use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::chords::ChordLabel;
use super::config::Config;
use crate::counterpoint::{CounterpointInterval, SequenceAnalysis, TheoremReport, TransitionAnalysis};
use crate::dual::DualSymmetry;
use crate::error::{Error, Result};
use crate::modulation::{CadenceLabel, CadentialSet, Degree, ModulationResult, SweepEntry, Tonality};
use crate::neo_riemannian::{GroupProperties, Triad};
use crate::pitch::{is_rigid, AffineMap, PcSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    #[default]
    Md,
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Json => "json",
            Format::Csv => "csv",
            Format::Md => "md",
        })
    }
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Format> {
        match s.trim().to_ascii_lowercase().as_str() {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "md" | "markdown" => Ok(Format::Md),
            _ => Err(Error::parse("format", s, "expected json, csv or md")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Metadata {
    pub fixture: Option<String>,
    pub config: Config,
    /// Free text, e.g. the word sung at a transition.
    pub annotations: Vec<String>,
}

/// One step of an analysed interval sequence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransitionRow {
    pub index: usize,
    pub from: CounterpointInterval,
    pub to: CounterpointInterval,
    pub symmetries: Vec<DualSymmetry>,
    pub cardinality: usize,
}

impl From<(usize, &TransitionAnalysis)> for TransitionRow {
    fn from((i, t): (usize, &TransitionAnalysis)) -> Self {
        TransitionRow {
            index: i + 1,
            from: t.from,
            to: t.to,
            symmetries: t.symmetries.clone(),
            cardinality: t.cardinality,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuccessorRow {
    pub from: CounterpointInterval,
    pub to: CounterpointInterval,
    pub symmetries: Vec<DualSymmetry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremRow {
    pub interval: CounterpointInterval,
    pub successors: usize,
    pub bound: usize,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModulationRow {
    pub source: String,
    pub target: String,
    pub modulator: AffineMap,
    pub cadence: CadenceLabel,
    pub cadence_degrees: Vec<Degree>,
    pub cadence_chords: Vec<String>,
    pub quantum: PcSet,
    pub intersection: PcSet,
    pub intersection_rigid: bool,
    pub pivots: Vec<Degree>,
    pub pivot_chords: Vec<String>,
    pub alternatives: Vec<PcSet>,
}

impl From<&ModulationResult> for ModulationRow {
    fn from(r: &ModulationResult) -> Self {
        ModulationRow {
            source: r.source.name().to_string(),
            target: r.target.name().to_string(),
            modulator: r.modulator,
            cadence: r.cadence.label,
            cadence_degrees: r.cadence.degrees.iter().copied().collect(),
            cadence_chords: r.cadence_names(),
            quantum: r.quantum,
            intersection: r.target_intersection(),
            intersection_rigid: is_rigid(r.target_intersection()),
            pivots: r.pivots.iter().copied().collect(),
            pivot_chords: r.pivot_names(),
            alternatives: r.alternatives.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CadenceRow {
    pub key: String,
    pub label: CadenceLabel,
    pub degrees: Vec<Degree>,
    pub chords: Vec<String>,
}

impl CadenceRow {
    pub fn new(tonality: &Tonality, set: &CadentialSet) -> CadenceRow {
        CadenceRow {
            key: tonality.name().to_string(),
            label: set.label,
            degrees: set.degrees.iter().copied().collect(),
            chords: set.chord_names(tonality),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepRow {
    pub modulator: AffineMap,
    pub cadence: CadenceLabel,
    pub result: Option<ModulationRow>,
}

impl From<&SweepEntry> for SweepRow {
    fn from(e: &SweepEntry) -> Self {
        SweepRow {
            modulator: e.modulator,
            cadence: e.cadence,
            result: e.result.as_ref().map(ModulationRow::from),
        }
    }
}

/// A triad, the transform word applied to it, and the image.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlrRow {
    pub input: Triad,
    pub word: String,
    pub output: Triad,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyRow {
    pub property: String,
    pub value: String,
    pub holds: bool,
}

impl VerifyRow {
    pub fn from_properties(p: &GroupProperties) -> Vec<VerifyRow> {
        let row = |property: &str, value: String, holds: bool| VerifyRow {
            property: property.to_string(),
            value,
            holds,
        };
        vec![
            row("ti_order", p.ti_order.to_string(), p.ti_order == 24),
            row("plr_order", p.plr_order.to_string(), p.plr_order == 24),
            row("dual_commute", p.dual_commute.to_string(), p.dual_commute),
            row("ti_simply_transitive", p.ti_simply_transitive.to_string(), p.ti_simply_transitive),
            row("plr_simply_transitive", p.plr_simply_transitive.to_string(), p.plr_simply_transitive),
            row("ti_dihedral", p.ti_dihedral.to_string(), p.ti_dihedral),
            row("plr_dihedral", p.plr_dihedral.to_string(), p.plr_dihedral),
            row("isomorphic", p.isomorphic.to_string(), p.isomorphic),
        ]
    }
}

/// Outcome of one embedded fixture.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixtureRow {
    pub fixture: String,
    pub kind: String,
    pub checks: usize,
    pub mismatches: usize,
    pub details: Vec<String>,
}

/// Report kind and its rows. Serialized as `"kind": ..., "rows": [...]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "rows", rename_all = "snake_case")]
pub enum Body {
    Counterpoint(Vec<TransitionRow>),
    Successors(Vec<SuccessorRow>),
    Theorem(Vec<TheoremRow>),
    Modulation(Vec<ModulationRow>),
    Cadences(Vec<CadenceRow>),
    Sweep(Vec<SweepRow>),
    Chords(Vec<ChordLabel>),
    Plr(Vec<PlrRow>),
    Verify(Vec<VerifyRow>),
    Fixtures(Vec<FixtureRow>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisReport {
    #[serde(flatten)]
    pub body: Body,
    pub metadata: Metadata,
}

impl AnalysisReport {
    pub fn new(body: Body, metadata: Metadata) -> AnalysisReport {
        AnalysisReport { body, metadata }
    }

    pub fn counterpoint(analysis: &SequenceAnalysis, metadata: Metadata) -> AnalysisReport {
        let rows = analysis.transitions.iter().enumerate().map(TransitionRow::from).collect();
        AnalysisReport::new(Body::Counterpoint(rows), metadata)
    }

    pub fn theorem(report: &TheoremReport, metadata: Metadata) -> AnalysisReport {
        let rows = report
            .counts
            .iter()
            .map(|(xi, n)| TheoremRow {
                interval: *xi,
                successors: *n,
                bound: report.bound,
                holds: *n >= report.bound,
            })
            .collect();
        AnalysisReport::new(Body::Theorem(rows), metadata)
    }

    pub fn kind(&self) -> &'static str {
        match self.body {
            Body::Counterpoint(_) => "counterpoint",
            Body::Successors(_) => "successors",
            Body::Theorem(_) => "theorem",
            Body::Modulation(_) => "modulation",
            Body::Cadences(_) => "cadences",
            Body::Sweep(_) => "sweep",
            Body::Chords(_) => "chords",
            Body::Plr(_) => "plr",
            Body::Verify(_) => "verify",
            Body::Fixtures(_) => "fixtures",
        }
    }

    pub fn row_count(&self) -> usize {
        match &self.body {
            Body::Counterpoint(r) => r.len(),
            Body::Successors(r) => r.len(),
            Body::Theorem(r) => r.len(),
            Body::Modulation(r) => r.len(),
            Body::Cadences(r) => r.len(),
            Body::Sweep(r) => r.len(),
            Body::Chords(r) => r.len(),
            Body::Plr(r) => r.len(),
            Body::Verify(r) => r.len(),
            Body::Fixtures(r) => r.len(),
        }
    }

    pub fn from_json(text: &str) -> Result<AnalysisReport> {
        serde_json::from_str(text).map_err(|e| Error::parse("report", text, e.to_string()))
    }
}

fn join<T: ToString>(items: &[T], sep: &str) -> String {
    items.iter().map(T::to_string).collect::<Vec<_>>().join(sep)
}

fn braced<T: ToString>(items: &[T]) -> String {
    format!("{{{}}}", join(items, ","))
}

fn arrow(source: &str, target: &str) -> String {
    format!("{source}→{target}")
}

struct Table {
    headers: Vec<&'static str>,
    rows: Vec<Vec<String>>,
}

/// CSV columns: plain values, lists joined with `;`.
fn csv_table(body: &Body) -> Table {
    let (headers, rows): (Vec<&str>, Vec<Vec<String>>) = match body {
        Body::Counterpoint(rows) => (
            vec!["index", "from", "to", "symmetries", "cardinality"],
            rows.iter()
                .map(|r| {
                    vec![
                        r.index.to_string(),
                        r.from.to_string(),
                        r.to.to_string(),
                        join(&r.symmetries, ";"),
                        r.cardinality.to_string(),
                    ]
                })
                .collect(),
        ),
        Body::Successors(rows) => (
            vec!["from", "to", "symmetries", "cardinality"],
            rows.iter()
                .map(|r| {
                    vec![
                        r.from.to_string(),
                        r.to.to_string(),
                        join(&r.symmetries, ";"),
                        r.symmetries.len().to_string(),
                    ]
                })
                .collect(),
        ),
        Body::Theorem(rows) => (
            vec!["interval", "successors", "bound", "holds"],
            rows.iter()
                .map(|r| {
                    vec![
                        r.interval.to_string(),
                        r.successors.to_string(),
                        r.bound.to_string(),
                        r.holds.to_string(),
                    ]
                })
                .collect(),
        ),
        Body::Modulation(rows) => (
            MODULATION_CSV.to_vec(),
            rows.iter().map(modulation_csv).collect(),
        ),
        Body::Cadences(rows) => (
            vec!["key", "label", "degrees", "chords"],
            rows.iter()
                .map(|r| {
                    vec![
                        r.key.clone(),
                        r.label.to_string(),
                        join(&r.degrees, ";"),
                        r.chords.join(";"),
                    ]
                })
                .collect(),
        ),
        Body::Sweep(rows) => {
            let mut headers = vec!["sweep_modulator", "sweep_cadence", "found"];
            headers.extend(MODULATION_CSV);
            let rows = rows
                .iter()
                .map(|r| {
                    let mut cells = vec![
                        r.modulator.to_string(),
                        r.cadence.to_string(),
                        r.result.is_some().to_string(),
                    ];
                    match &r.result {
                        Some(m) => cells.extend(modulation_csv(m)),
                        None => cells.extend(MODULATION_CSV.iter().map(|_| String::new())),
                    }
                    cells
                })
                .collect();
            (headers, rows)
        }
        Body::Chords(rows) => (
            vec!["pcs", "name", "quality", "degrees"],
            rows.iter()
                .map(|r| {
                    vec![
                        r.pcs.to_string(),
                        r.name.clone(),
                        r.quality_name().to_string(),
                        join(&r.degrees, ";"),
                    ]
                })
                .collect(),
        ),
        Body::Plr(rows) => (
            vec!["input", "word", "output"],
            rows.iter()
                .map(|r| vec![r.input.to_string(), r.word.clone(), r.output.to_string()])
                .collect(),
        ),
        Body::Verify(rows) => (
            vec!["property", "value", "holds"],
            rows.iter()
                .map(|r| vec![r.property.clone(), r.value.clone(), r.holds.to_string()])
                .collect(),
        ),
        Body::Fixtures(rows) => (
            vec!["fixture", "kind", "checks", "mismatches", "details"],
            rows.iter()
                .map(|r| {
                    vec![
                        r.fixture.clone(),
                        r.kind.clone(),
                        r.checks.to_string(),
                        r.mismatches.to_string(),
                        r.details.join(";"),
                    ]
                })
                .collect(),
        ),
    };
    Table { headers, rows }
}

const MODULATION_CSV: [&str; 12] = [
    "source",
    "target",
    "modulator",
    "cadence",
    "cadence_degrees",
    "cadence_chords",
    "quantum",
    "intersection",
    "intersection_rigid",
    "pivots",
    "pivot_chords",
    "alternatives",
];

fn modulation_csv(r: &ModulationRow) -> Vec<String> {
    vec![
        r.source.clone(),
        r.target.clone(),
        r.modulator.to_string(),
        r.cadence.to_string(),
        join(&r.cadence_degrees, ";"),
        r.cadence_chords.join(";"),
        r.quantum.to_string(),
        r.intersection.to_string(),
        r.intersection_rigid.to_string(),
        join(&r.pivots, ";"),
        r.pivot_chords.join(";"),
        r.alternatives.iter().map(|s| format!("{{{s}}}")).collect::<Vec<_>>().join(";"),
    ]
}

/// `IV_D`
fn subscripted(degrees: &[Degree], key: &str) -> Vec<String> {
    degrees.iter().map(|d| format!("{d}_{key}")).collect()
}

fn modulation_md(r: &ModulationRow) -> Vec<String> {
    vec![
        arrow(&r.source, &r.target),
        r.modulator.signed(),
        format!("{}={}", r.cadence, braced(&subscripted(&r.cadence_degrees, &r.target))),
        format!("{{{}}}", r.intersection),
        subscripted(&r.pivots, &r.target).join(", "),
    ]
}

/// Markdown tables follow the printed layouts.
fn md_table(body: &Body) -> Table {
    let (headers, rows): (Vec<&str>, Vec<Vec<String>>) = match body {
        Body::Counterpoint(rows) => {
            let mut g = 0;
            let rows = rows
                .iter()
                .map(|r| {
                    let named: Vec<String> = r
                        .symmetries
                        .iter()
                        .map(|s| {
                            g += 1;
                            format!("g{g}={}", s.pretty())
                        })
                        .collect();
                    vec![format!("{{{}}}", named.join(", ")), r.cardinality.to_string()]
                })
                .collect();
            (vec!["Set of symmetries", "Cardinality"], rows)
        }
        Body::Successors(rows) => (
            vec!["Successor", "Symmetries", "Cardinality"],
            rows.iter()
                .map(|r| {
                    let pretty: Vec<String> = r.symmetries.iter().map(|s| s.pretty()).collect();
                    vec![
                        r.to.point().pretty(),
                        format!("{{{}}}", pretty.join(", ")),
                        r.symmetries.len().to_string(),
                    ]
                })
                .collect(),
        ),
        Body::Theorem(rows) => (
            vec!["Interval", "Admitted successors", "Bound", "Holds"],
            rows.iter()
                .map(|r| {
                    vec![
                        r.interval.point().pretty(),
                        r.successors.to_string(),
                        r.bound.to_string(),
                        if r.holds { "yes" } else { "no" }.to_string(),
                    ]
                })
                .collect(),
        ),
        Body::Modulation(rows) => (
            vec!["Modulation", "m", "Cadence", "M∩T", "Pivots"],
            rows.iter().map(modulation_md).collect(),
        ),
        Body::Cadences(rows) => (
            vec!["Tonality", "Cadence", "Degrees", "Chords"],
            rows.iter()
                .map(|r| {
                    vec![
                        r.key.clone(),
                        r.label.to_string(),
                        braced(&r.degrees),
                        braced(&r.chords),
                    ]
                })
                .collect(),
        ),
        Body::Sweep(rows) => (
            vec!["m", "Cadence", "M", "M∩T", "Pivots"],
            rows.iter()
                .map(|r| match &r.result {
                    Some(m) => vec![
                        r.modulator.signed(),
                        r.cadence.to_string(),
                        format!("{{{}}}", m.quantum),
                        format!("{{{}}}", m.intersection),
                        subscripted(&m.pivots, &m.target).join(", "),
                    ],
                    None => vec![
                        r.modulator.signed(),
                        r.cadence.to_string(),
                        "none".into(),
                        String::new(),
                        String::new(),
                    ],
                })
                .collect(),
        ),
        Body::Chords(rows) => (
            vec!["Pitch classes", "Chord", "Degrees"],
            rows.iter()
                .map(|r| {
                    let chord = if r.is_known() {
                        format!("{} ({})", r.name, r.quality_name())
                    } else {
                        r.name.clone()
                    };
                    vec![format!("{{{}}}", r.pcs), chord, join(&r.degrees, ", ")]
                })
                .collect(),
        ),
        Body::Plr(rows) => (
            vec!["Triad", "Word", "Image"],
            rows.iter()
                .map(|r| vec![r.input.to_string(), r.word.clone(), r.output.to_string()])
                .collect(),
        ),
        Body::Verify(rows) => (
            vec!["Property", "Value", "Holds"],
            rows.iter()
                .map(|r| {
                    vec![
                        r.property.clone(),
                        r.value.clone(),
                        if r.holds { "yes" } else { "no" }.to_string(),
                    ]
                })
                .collect(),
        ),
        Body::Fixtures(rows) => (
            vec!["Fixture", "Kind", "Checks", "Mismatches"],
            rows.iter()
                .map(|r| {
                    vec![
                        r.fixture.clone(),
                        r.kind.clone(),
                        r.checks.to_string(),
                        r.mismatches.to_string(),
                    ]
                })
                .collect(),
        ),
    };
    Table { headers, rows }
}

fn md_cell(s: &str) -> String {
    s.replace('|', "\\|")
}

fn render_md(report: &AnalysisReport) -> String {
    let mut out = String::new();
    let title = match &report.metadata.fixture {
        Some(name) => format!("## {}: {}\n\n", report.kind(), name),
        None => format!("## {}\n\n", report.kind()),
    };
    out.push_str(&title);
    let table = md_table(&report.body);
    out.push_str(&format!("| {} |\n", table.headers.join(" | ")));
    out.push_str(&format!("|{}\n", "---|".repeat(table.headers.len())));
    for row in &table.rows {
        let cells: Vec<String> = row.iter().map(|c| md_cell(c)).collect();
        out.push_str(&format!("| {} |\n", cells.join(" | ")));
    }
    if let Body::Fixtures(rows) = &report.body {
        for r in rows.iter().filter(|r| !r.details.is_empty()) {
            out.push('\n');
            out.push_str(&format!("{}:\n", r.fixture));
            for d in &r.details {
                out.push_str(&format!("- {d}\n"));
            }
        }
    }
    if !report.metadata.annotations.is_empty() {
        out.push('\n');
        for a in &report.metadata.annotations {
            out.push_str(&format!("- {a}\n"));
        }
    }
    out.push_str(&format!(
        "\npolarity_variant: {}\n",
        report.metadata.config.polarity_variant
    ));
    out
}

fn render_csv(report: &AnalysisReport) -> Result<String> {
    let table = csv_table(&report.body);
    let mut writer = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    let csv_err = |e: csv::Error| Error::Other(format!("csv: {e}"));
    writer.write_record(&table.headers).map_err(csv_err)?;
    for row in &table.rows {
        writer.write_record(row).map_err(csv_err)?;
    }
    let bytes = writer
        .into_inner()
        .map_err(|e| Error::Other(format!("csv: {e}")))?;
    String::from_utf8(bytes).map_err(|e| Error::Other(e.to_string()))
}

/// Deterministic text for a report.
pub fn render_report(report: &AnalysisReport, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("reports serialize to JSON");
            s.push('\n');
            s
        }
        Format::Csv => render_csv(report).expect("in-memory CSV writing does not fail"),
        Format::Md => render_md(report),
    }
}
