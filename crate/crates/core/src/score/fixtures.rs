//! The embedded corpus: six interval sequences with their symmetry tables,
//! worked modulation quanta, one three-step modulation plan and two
//! major/minor cadence diagrams.

use std::collections::BTreeSet;

use super::config::Config;
use super::events::{parse_events, Events};
use super::report::{AnalysisReport, Body, FixtureRow, Metadata};
use crate::counterpoint::{CounterpointInterval, CounterpointWorld};
use crate::dual::DualSymmetry;
use crate::error::{Error, Result};
use crate::modulation::{
    confirm_minimal, modulation_quantum, transpose_modulation, CadenceLabel, Degree, ModulationResult, Tonality,
};
use crate::neo_riemannian::{cadence_transform, Triad};
use crate::pitch::{is_rigid, AffineMap, PcSet, PitchClass};

/// An interval sequence and the symmetry set expected at each transition.
#[derive(Debug, Clone, Copy)]
pub struct CounterpointFixture {
    pub name: &'static str,
    pub source: &'static str,
    pub expected: &'static str,
    /// `(transition, word)`, transitions numbered from 1.
    pub annotations: &'static [(usize, &'static str)],
}

pub const COUNTERPOINT_FIXTURES: [CounterpointFixture; 6] = [
    CounterpointFixture {
        name: "confitebor",
        source: include_str!("../../fixtures/confitebor.txt"),
        expected: include_str!("../../fixtures/confitebor.expected"),
        annotations: &[(4, "mirabilium")],
    },
    CounterpointFixture {
        name: "ma_tu",
        source: include_str!("../../fixtures/ma_tu.txt"),
        expected: include_str!("../../fixtures/ma_tu.expected"),
        annotations: &[(4, "pietà")],
    },
    CounterpointFixture {
        name: "io_mi_son_giovinetta",
        source: include_str!("../../fixtures/io_mi_son_giovinetta.txt"),
        expected: include_str!("../../fixtures/io_mi_son_giovinetta.expected"),
        annotations: &[(6, "fuggi")],
    },
    CounterpointFixture {
        name: "laudate_dominum",
        source: include_str!("../../fixtures/laudate_dominum.txt"),
        expected: include_str!("../../fixtures/laudate_dominum.expected"),
        annotations: &[],
    },
    CounterpointFixture {
        name: "gloria_8_6",
        source: include_str!("../../fixtures/gloria_8_6.txt"),
        expected: include_str!("../../fixtures/gloria_8_6.expected"),
        annotations: &[],
    },
    CounterpointFixture {
        name: "gloria_10_8",
        source: include_str!("../../fixtures/gloria_10_8.txt"),
        expected: include_str!("../../fixtures/gloria_10_8.expected"),
        annotations: &[],
    },
];

pub fn counterpoint_fixture(name: &str) -> Option<&'static CounterpointFixture> {
    COUNTERPOINT_FIXTURES.iter().find(|f| f.name == name)
}

impl CounterpointFixture {
    pub fn intervals(&self) -> Result<Vec<CounterpointInterval>> {
        match parse_events(self.source)? {
            Events::Intervals(list) => Ok(list),
            other => Err(Error::Other(format!(
                "fixture {} holds {} rather than intervals",
                self.name,
                other.format_name()
            ))),
        }
    }

    /// One row per transition; each row is the expected symmetry set.
    pub fn expected_rows(&self) -> Result<Vec<BTreeSet<DualSymmetry>>> {
        self.expected
            .lines()
            .filter(|l| !l.trim().is_empty())
            .map(|l| l.split(';').map(str::parse).collect())
            .collect()
    }

    pub fn annotation_lines(&self) -> Vec<String> {
        self.annotations
            .iter()
            .map(|(i, word)| format!("transition {i}: {word}"))
            .collect()
    }

    pub fn report(&self, config: &Config) -> Result<AnalysisReport> {
        let world = CounterpointWorld::standard(config.polarity_variant);
        let analysis = world.analyze_sequence(&self.intervals()?)?;
        Ok(AnalysisReport::counterpoint(
            &analysis,
            Metadata {
                fixture: Some(self.name.to_string()),
                config: *config,
                annotations: self.annotation_lines(),
            },
        ))
    }

    fn check(&self, config: &Config) -> FixtureRow {
        let mut row = FixtureRow {
            fixture: self.name.to_string(),
            kind: "counterpoint".into(),
            checks: 0,
            mismatches: 0,
            details: Vec::new(),
        };
        let outcome = self.expected_rows().and_then(|expected| {
            let world = CounterpointWorld::standard(config.polarity_variant);
            let analysis = world.analyze_sequence(&self.intervals()?)?;
            Ok((expected, analysis))
        });
        let (expected, analysis) = match outcome {
            Ok(pair) => pair,
            Err(e) => {
                row.checks = 1;
                row.mismatches = 1;
                row.details.push(e.to_string());
                return row;
            }
        };
        row.checks = expected.len().max(analysis.transitions.len());
        for i in 0..row.checks {
            let want = expected.get(i);
            let got = analysis.transitions.get(i);
            let got_set: Option<BTreeSet<DualSymmetry>> = got.map(|t| t.symmetries.iter().copied().collect());
            let matches = match (want, got, &got_set) {
                (Some(w), Some(t), Some(g)) => w == g && t.cardinality == w.len(),
                _ => false,
            };
            if !matches {
                row.mismatches += 1;
                row.details.push(format!(
                    "transition {}: expected {}, got {}",
                    i + 1,
                    want.map_or("nothing".into(), |w| show_set(w.iter())),
                    got_set.map_or("nothing".into(), |g| show_set(g.iter()))
                ));
            }
        }
        row
    }
}

fn show_set<'a>(items: impl Iterator<Item = &'a DualSymmetry>) -> String {
    let parts: Vec<String> = items.map(DualSymmetry::to_string).collect();
    format!("{{{}}}", parts.join(", "))
}

/// A modulation with the values printed for it.
#[derive(Debug, Clone, Copy)]
pub struct QuantumFixture {
    pub name: &'static str,
    pub source: u8,
    pub target: u8,
    pub modulator: &'static str,
    pub cadence: CadenceLabel,
    pub quantum: &'static [u8],
    pub intersection: &'static [u8],
    pub pivots: &'static [Degree],
    pub pivot_chords: &'static [&'static str],
    pub cadence_chords: &'static [&'static str],
}

pub const QUANTUM_FIXTURES: [QuantumFixture; 3] = [
    QuantumFixture {
        name: "quantum_c_d",
        source: 0,
        target: 2,
        modulator: "e6*11",
        cadence: CadenceLabel::K4,
        quantum: &[1, 2, 4, 5, 7, 9, 11],
        intersection: &[1, 2, 4, 7, 9, 11],
        pivots: &[Degree::II, Degree::IV, Degree::V, Degree::VII],
        pivot_chords: &["e", "G", "A", "c#°"],
        cadence_chords: &["G", "A"],
    },
    QuantumFixture {
        name: "quantum_c_g",
        source: 0,
        target: 7,
        modulator: "e11*11",
        cadence: CadenceLabel::K5,
        quantum: &[0, 2, 5, 6, 9, 11],
        intersection: &[0, 2, 6, 9, 11],
        pivots: &[Degree::III, Degree::V, Degree::VII],
        pivot_chords: &["b", "D", "f#°"],
        cadence_chords: &["f#°"],
    },
    QuantumFixture {
        name: "quantum_c_eb",
        source: 0,
        target: 3,
        modulator: "e7*11",
        cadence: CadenceLabel::K1,
        quantum: &[0, 2, 5, 7, 8, 9, 10, 11],
        intersection: &[0, 2, 5, 7, 8, 10],
        pivots: &[Degree::II, Degree::III, Degree::V, Degree::VII],
        pivot_chords: &["f", "g", "Bb", "d°"],
        cadence_chords: &["f", "Bb"],
    },
];

/// A worked quantum moved by `shift` semitones.
#[derive(Debug, Clone, Copy)]
pub struct TranspositionFixture {
    pub name: &'static str,
    pub base: &'static str,
    pub shift: u8,
    pub expected: QuantumFixture,
}

pub const TRANSPOSITION_FIXTURES: [TranspositionFixture; 2] = [
    TranspositionFixture {
        name: "transposed_d_a",
        base: "quantum_c_g",
        shift: 2,
        expected: QuantumFixture {
            name: "transposed_d_a",
            source: 2,
            target: 9,
            modulator: "e3*11",
            cadence: CadenceLabel::K5,
            quantum: &[1, 2, 4, 7, 8, 11],
            intersection: &[1, 2, 4, 8, 11],
            pivots: &[Degree::III, Degree::V, Degree::VII],
            pivot_chords: &["c#", "E", "g#°"],
            cadence_chords: &["g#°"],
        },
    },
    TranspositionFixture {
        name: "transposed_a_c",
        base: "quantum_c_eb",
        shift: 9,
        expected: QuantumFixture {
            name: "transposed_a_c",
            source: 9,
            target: 0,
            modulator: "e1*11",
            cadence: CadenceLabel::K1,
            quantum: &[2, 4, 5, 6, 7, 8, 9, 11],
            intersection: &[2, 4, 5, 7, 9, 11],
            pivots: &[Degree::II, Degree::III, Degree::V, Degree::VII],
            pivot_chords: &["d", "e", "G", "b°"],
            cadence_chords: &["d", "G"],
        },
    },
];

/// The three modulations of the aria: C→D with k4, D→A with k5, A→C with k1.
pub const PLAN_FIXTURE: [&str; 3] = ["quantum_c_d", "transposed_d_a", "transposed_a_c"];

/// A major key whose {IV, V} cadence is carried by R onto {II, III}.
#[derive(Debug, Clone, Copy)]
pub struct DiagramFixture {
    pub name: &'static str,
    pub tonic: u8,
    pub major_cadence: [&'static str; 2],
    pub minor_cadence: [&'static str; 2],
    pub relative: &'static str,
}

pub const DIAGRAM_FIXTURES: [DiagramFixture; 2] = [
    DiagramFixture {
        name: "ecco_pur",
        tonic: 10,
        major_cadence: ["Eb", "F"],
        minor_cadence: ["c", "d"],
        relative: "g",
    },
    DiagramFixture {
        name: "mira",
        tonic: 0,
        major_cadence: ["F", "G"],
        minor_cadence: ["d", "e"],
        relative: "a",
    },
];

struct Checker {
    row: FixtureRow,
}

impl Checker {
    fn new(name: &str, kind: &str) -> Checker {
        Checker {
            row: FixtureRow {
                fixture: name.to_string(),
                kind: kind.to_string(),
                checks: 0,
                mismatches: 0,
                details: Vec::new(),
            },
        }
    }

    fn eq<T: PartialEq + std::fmt::Debug>(&mut self, what: &str, got: T, want: T) {
        self.row.checks += 1;
        if got != want {
            self.row.mismatches += 1;
            self.row.details.push(format!("{what}: expected {want:?}, got {got:?}"));
        }
    }

    fn fail(mut self, e: Error) -> FixtureRow {
        self.row.checks += 1;
        self.row.mismatches += 1;
        self.row.details.push(e.to_string());
        self.row
    }
}

fn key(n: u8) -> Tonality {
    Tonality::major(PitchClass::new(n))
}

impl QuantumFixture {
    pub fn solve(&self) -> Result<ModulationResult> {
        let modulator: AffineMap = self.modulator.parse()?;
        modulation_quantum(&key(self.source), &key(self.target), modulator, self.cadence)
    }

    fn compare(&self, c: &mut Checker, r: &ModulationResult) {
        let names = |v: &[&str]| v.iter().map(|s| s.to_string()).collect::<Vec<_>>();
        c.eq("source", r.source.tonic, PitchClass::new(self.source));
        c.eq("target", r.target.tonic, PitchClass::new(self.target));
        c.eq("modulator", r.modulator.to_string(), self.modulator.to_string());
        c.eq("quantum", r.quantum, PcSet::from_values(self.quantum));
        c.eq("unique", r.is_unique(), true);
        c.eq("M∩T", r.target_intersection(), PcSet::from_values(self.intersection));
        c.eq("M∩T rigid", is_rigid(r.target_intersection()), true);
        c.eq("pivots", r.pivots.clone(), self.pivots.iter().copied().collect());
        c.eq("pivot chords", r.pivot_names(), names(self.pivot_chords));
        c.eq("cadence chords", r.cadence_names(), names(self.cadence_chords));
    }

    fn check(&self) -> FixtureRow {
        let mut c = Checker::new(self.name, "modulation");
        match self.solve() {
            Ok(r) => {
                self.compare(&mut c, &r);
                c.eq("minimal over 4096 subsets", confirm_minimal(&r), true);
                c.row
            }
            Err(e) => c.fail(e),
        }
    }
}

pub fn quantum_fixture(name: &str) -> Option<QuantumFixture> {
    QUANTUM_FIXTURES
        .iter()
        .chain(TRANSPOSITION_FIXTURES.iter().map(|t| &t.expected))
        .find(|f| f.name == name)
        .copied()
}

impl TranspositionFixture {
    fn check(&self) -> FixtureRow {
        let mut c = Checker::new(self.name, "modulation");
        let base = match quantum_fixture(self.base).map(|f| f.solve()) {
            Some(Ok(r)) => r,
            Some(Err(e)) => return c.fail(e),
            None => return c.fail(Error::Other(format!("unknown base fixture {}", self.base))),
        };
        let moved = transpose_modulation(&base, PitchClass::new(self.shift));
        self.expected.compare(&mut c, &moved);
        match self.expected.solve() {
            Ok(direct) => c.eq("transposed equals solved", moved, direct),
            Err(e) => return c.fail(e),
        }
        c.row
    }
}

fn check_plan() -> FixtureRow {
    let mut c = Checker::new("in_questo_lieto", "modulation");
    let mut previous_target: Option<PitchClass> = None;
    for name in PLAN_FIXTURE {
        let Some(step) = quantum_fixture(name) else {
            return c.fail(Error::Other(format!("unknown plan step {name}")));
        };
        let r = match step.solve() {
            Ok(r) => r,
            Err(e) => return c.fail(e),
        };
        if let Some(prev) = previous_target {
            c.eq(&format!("{name} starts where the last step ended"), r.source.tonic, prev);
        }
        previous_target = Some(r.target.tonic);
        step.compare(&mut c, &r);
        c.eq(
            &format!("{name} cadence among pivots"),
            r.cadence.degrees.is_subset(&r.pivots),
            true,
        );
    }
    c.eq("plan returns home", previous_target, Some(PitchClass::new(0)));
    c.row
}

impl DiagramFixture {
    fn check(&self) -> FixtureRow {
        let mut c = Checker::new(self.name, "plr");
        let parse = |names: [&str; 2]| -> Result<[Triad; 2]> { Ok([names[0].parse()?, names[1].parse()?]) };
        let (major, minor, relative) = match (parse(self.major_cadence), parse(self.minor_cadence), self.relative.parse::<Triad>()) {
            (Ok(a), Ok(b), Ok(r)) => (a, b, r),
            (Err(e), _, _) | (_, Err(e), _) | (_, _, Err(e)) => return c.fail(e),
        };
        let ct = cadence_transform(PitchClass::new(self.tonic));
        c.eq("T5(I), T7(I)", ct.major_cadence, major);
        c.eq("R(T5(I)), R(T7(I))", ct.minor_cadence, minor);
        c.eq("R(I)", ct.relative, relative);
        c.eq("diagram closes", ct.diagram_closes(), true);

        let tonality = key(self.tonic);
        let label_of = |pair: [Triad; 2]| {
            let degrees: BTreeSet<Degree> = pair
                .iter()
                .filter_map(|t| tonality.degree_of(t.pitch_set()))
                .collect();
            CadenceLabel::from_degrees(&degrees)
        };
        c.eq("major cadence label", label_of(ct.major_cadence), Some(CadenceLabel::K4));
        c.eq("minor cadence label", label_of(ct.minor_cadence), Some(CadenceLabel::K2));
        c.row
    }
}

/// Runs every embedded fixture and reports matches per fixture.
pub fn run_fixture_suite_with(config: &Config) -> AnalysisReport {
    let mut rows: Vec<FixtureRow> = COUNTERPOINT_FIXTURES.iter().map(|f| f.check(config)).collect();
    rows.extend(QUANTUM_FIXTURES.iter().map(QuantumFixture::check));
    rows.extend(TRANSPOSITION_FIXTURES.iter().map(TranspositionFixture::check));
    rows.push(check_plan());
    rows.extend(DIAGRAM_FIXTURES.iter().map(DiagramFixture::check));
    AnalysisReport::new(
        Body::Fixtures(rows),
        Metadata {
            fixture: None,
            config: *config,
            annotations: Vec::new(),
        },
    )
}

pub fn run_fixture_suite() -> AnalysisReport {
    run_fixture_suite_with(&Config::default())
}

/// Total mismatches in a fixture-suite report; zero for other kinds.
pub fn mismatch_count(report: &AnalysisReport) -> usize {
    match &report.body {
        Body::Fixtures(rows) => rows.iter().map(|r| r.mismatches).sum(),
        _ => 0,
    }
}
