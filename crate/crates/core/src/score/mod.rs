//! Input formats, chord labelling, the embedded fixture corpus and reports.

pub mod chords;
pub mod config;
pub mod events;
pub mod fixtures;
pub mod report;

pub use chords::{label_chord, ChordLabel, DegreeMatch};
pub use config::{Config, ENV_PREFIX};
pub use events::{extract_intervals, parse_events, render_events, ChordEvent, Events, Extraction, Onset, VoiceEvent};
pub use fixtures::{mismatch_count, run_fixture_suite, run_fixture_suite_with};
pub use report::{render_report, AnalysisReport, Body, Format, Metadata};
