use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use musym::counterpoint::{CounterpointInterval, CounterpointWorld, PolarityVariant};
use musym::modulation::{cadential_sets, find_modulators, modulation_quantum, sweep, CadenceLabel, Tonality};
use musym::neo_riemannian::{verify_group_properties, Triad, Word};
use musym::pitch::{parse_note_name, AffineMap, PcSet};
use musym::score::fixtures::{counterpoint_fixture, COUNTERPOINT_FIXTURES};
use musym::score::report::{CadenceRow, ModulationRow, PlrRow, SuccessorRow, SweepRow, VerifyRow};
use musym::score::{
    extract_intervals, label_chord, mismatch_count, parse_events, render_report, run_fixture_suite_with,
    AnalysisReport, Body, Config, Events, Format, Metadata,
};
use musym::Error;

const EXIT_MISMATCH: u8 = 1;
const EXIT_INPUT: u8 = 2;

/// Counterpoint symmetries, modulation quanta and PLR/TI transformations over Z/12Z.
#[derive(Debug, Parser)]
#[command(name = "musym", version)]
struct Cli {
    /// Output format: json, csv or md. Defaults to the config value.
    #[arg(long, global = true)]
    format: Option<Format>,

    /// key = value config file (polarity_variant, default_format).
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,

    /// Polarity variant for counterpoint: cantus_frame, global or localized.
    #[arg(long, global = true)]
    variant: Option<PolarityVariant>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Counterpoint symmetries.
    #[command(subcommand)]
    Cpt(Cpt),
    /// Modulation quanta.
    #[command(subcommand)]
    Mod(Mod),
    /// PLR and TI groups on the 24 triads.
    #[command(subcommand)]
    Nr(Nr),
    /// The embedded fixture corpus.
    #[command(subcommand)]
    Fixtures(Fixtures),
}

#[derive(Debug, Subcommand)]
enum Cpt {
    /// Symmetry sets for each transition of an interval or two-voice file.
    Analyze {
        #[arg(required_unless_present = "fixture", conflicts_with = "fixture")]
        file: Option<PathBuf>,
        /// Analyse an embedded sequence instead, e.g. confitebor.
        #[arg(long)]
        fixture: Option<String>,
    },
    /// Admissible successors of a consonant interval such as 0+e.3.
    Successors { interval: CounterpointInterval },
    /// Successor counts for all 72 consonances.
    Theorem,
}

#[derive(Debug, Args)]
struct KeyPair {
    #[arg(long, value_parser = parse_key)]
    from: Tonality,
    #[arg(long, value_parser = parse_key)]
    to: Tonality,
}

#[derive(Debug, Subcommand)]
enum Mod {
    /// Minimal quantum for a modulation and target cadence.
    Quantum {
        #[command(flatten)]
        keys: KeyPair,
        #[arg(long)]
        cadence: CadenceLabel,
        /// e.g. e6*11; all modulators are tried when omitted.
        #[arg(long)]
        modulator: Option<AffineMap>,
    },
    /// Cadential sets of a major key.
    Cadences {
        #[arg(long, value_parser = parse_key)]
        key: Tonality,
    },
    /// Every modulator against every cadence.
    Sweep {
        #[command(flatten)]
        keys: KeyPair,
    },
    /// Names a chord and lists the keys containing it.
    Label {
        /// Pitch classes such as 7,11,2.
        #[arg(long, required_unless_present = "file", conflicts_with = "file")]
        pcs: Option<PcSet>,
        /// A chord-stream file (onset,pcs[,label]).
        #[arg(long)]
        file: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
enum Nr {
    /// Applies a word such as R,T7 to a triad; letters act in reading order.
    Apply {
        #[arg(long)]
        word: Word,
        #[arg(long)]
        triad: Triad,
    },
    /// Orders, simple transitivity, commutation and dihedral structure.
    Verify,
}

#[derive(Debug, Subcommand)]
enum Fixtures {
    /// Runs every fixture; exit code 1 on any mismatch.
    Run,
}

fn parse_key(s: &str) -> Result<Tonality, Error> {
    parse_note_name(s).map(Tonality::major)
}

fn read(path: &Path) -> Result<String, Error> {
    std::fs::read_to_string(path).map_err(|e| Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

fn resolve_config(cli: &Cli) -> Result<Config, Error> {
    let mut config = match &cli.config {
        Some(path) => Config::load(path)?,
        None => Config::default(),
    };
    config.apply_env()?;
    if let Some(variant) = cli.variant {
        config.polarity_variant = variant;
    }
    if let Some(format) = cli.format {
        config.default_format = format;
    }
    Ok(config)
}

fn metadata(config: &Config, fixture: Option<String>, annotations: Vec<String>) -> Metadata {
    Metadata {
        fixture,
        config: *config,
        annotations,
    }
}

/// A report and whether it records a failed check.
struct Outcome {
    report: AnalysisReport,
    failed: bool,
}

impl From<AnalysisReport> for Outcome {
    fn from(report: AnalysisReport) -> Self {
        Outcome { report, failed: false }
    }
}

fn analyze(config: &Config, file: Option<&Path>, fixture: Option<&str>) -> Result<Outcome, Error> {
    if let Some(name) = fixture {
        let f = counterpoint_fixture(name).ok_or_else(|| {
            let names: Vec<&str> = COUNTERPOINT_FIXTURES.iter().map(|f| f.name).collect();
            Error::Other(format!("unknown fixture {name:?} (expected one of {})", names.join(", ")))
        })?;
        return f.report(config).map(Outcome::from);
    }
    let path = file.expect("clap requires a file or a fixture");
    let mut notes = Vec::new();
    let intervals = match parse_events(&read(path)?)? {
        Events::Intervals(list) => list,
        Events::Voices(events) => {
            let x = extract_intervals(&events)?;
            for w in &x.warnings {
                eprintln!("warning: {w}");
            }
            notes.extend(x.warnings);
            x.intervals
        }
        Events::Chords(_) => {
            return Err(Error::Other(
                "chord files carry no counterpoint; use `mod label --file`".into(),
            ))
        }
    };
    let world = CounterpointWorld::standard(config.polarity_variant);
    let analysis = world.analyze_sequence(&intervals)?;
    let name = path.file_name().map(|n| n.to_string_lossy().into_owned());
    Ok(AnalysisReport::counterpoint(&analysis, metadata(config, name, notes)).into())
}

fn successors(config: &Config, xi: CounterpointInterval) -> Result<Outcome, Error> {
    let world = CounterpointWorld::standard(config.polarity_variant);
    let rows = world
        .admissible_successors(xi)?
        .into_iter()
        .map(|eta| {
            world.transition_symmetries(xi, eta).map(|t| SuccessorRow {
                from: xi,
                to: eta,
                symmetries: t.symmetries,
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    let note = format!("{} admissible successors of {xi}", rows.len());
    Ok(AnalysisReport::new(Body::Successors(rows), metadata(config, None, vec![note])).into())
}

fn theorem(config: &Config) -> Outcome {
    let world = CounterpointWorld::standard(config.polarity_variant);
    let t = world.little_theorem_report();
    let note = format!("minimum {} against bound {}", t.minimum(), t.bound);
    Outcome {
        failed: !t.holds(),
        report: AnalysisReport::theorem(&t, metadata(config, None, vec![note])),
    }
}

fn quantum(
    config: &Config,
    keys: &KeyPair,
    cadence: CadenceLabel,
    modulator: Option<AffineMap>,
) -> Result<Outcome, Error> {
    let rows: Vec<ModulationRow> = match modulator {
        Some(m) => vec![ModulationRow::from(&modulation_quantum(&keys.from, &keys.to, m, cadence)?)],
        None => {
            let modulators = find_modulators(&keys.from, &keys.to);
            if modulators.is_empty() {
                return Err(Error::Other(format!(
                    "no affine map carries {} major onto {} major",
                    keys.from.name(),
                    keys.to.name()
                )));
            }
            let found: Vec<ModulationRow> = modulators
                .into_iter()
                .filter_map(|m| modulation_quantum(&keys.from, &keys.to, m, cadence).ok())
                .map(|r| ModulationRow::from(&r))
                .collect();
            if found.is_empty() {
                return Err(Error::QuantumNotFound {
                    modulator: "any modulator".into(),
                    cadence: cadence.to_string(),
                });
            }
            found
        }
    };
    let notes = rows
        .iter()
        .map(|r| format!("{}->{} {}: M = {{{}}}", r.source, r.target, r.modulator, r.quantum))
        .collect();
    Ok(AnalysisReport::new(Body::Modulation(rows), metadata(config, None, notes)).into())
}

fn label(config: &Config, pcs: Option<PcSet>, file: Option<&Path>) -> Result<Outcome, Error> {
    let sets = match (pcs, file) {
        (Some(set), _) => vec![set],
        (None, Some(path)) => match parse_events(&read(path)?)? {
            Events::Chords(events) => events.into_iter().map(|e| e.pcs).collect(),
            other => {
                return Err(Error::Other(format!(
                    "expected a chord file (onset,pcs[,label]), found {}",
                    other.format_name()
                )))
            }
        },
        (None, None) => unreachable!("clap requires --pcs or --file"),
    };
    let rows = sets.into_iter().map(label_chord).collect();
    Ok(AnalysisReport::new(Body::Chords(rows), metadata(config, None, Vec::new())).into())
}

fn run(cli: &Cli) -> Result<Outcome, Error> {
    let config = resolve_config(cli)?;
    match &cli.command {
        Command::Cpt(Cpt::Analyze { file, fixture }) => analyze(&config, file.as_deref(), fixture.as_deref()),
        Command::Cpt(Cpt::Successors { interval }) => successors(&config, *interval),
        Command::Cpt(Cpt::Theorem) => Ok(theorem(&config)),
        Command::Mod(Mod::Quantum {
            keys,
            cadence,
            modulator,
        }) => quantum(&config, keys, *cadence, *modulator),
        Command::Mod(Mod::Cadences { key }) => {
            let rows = cadential_sets(key).iter().map(|s| CadenceRow::new(key, s)).collect();
            Ok(AnalysisReport::new(Body::Cadences(rows), metadata(&config, None, Vec::new())).into())
        }
        Command::Mod(Mod::Sweep { keys }) => {
            let rows = sweep(&keys.from, &keys.to).iter().map(SweepRow::from).collect();
            Ok(AnalysisReport::new(Body::Sweep(rows), metadata(&config, None, Vec::new())).into())
        }
        Command::Mod(Mod::Label { pcs, file }) => label(&config, *pcs, file.as_deref()),
        Command::Nr(Nr::Apply { word, triad }) => {
            let row = PlrRow {
                input: *triad,
                word: word.to_string(),
                output: word.apply(*triad),
            };
            Ok(AnalysisReport::new(Body::Plr(vec![row]), metadata(&config, None, Vec::new())).into())
        }
        Command::Nr(Nr::Verify) => {
            let props = verify_group_properties();
            Ok(Outcome {
                failed: !props.all_hold(),
                report: AnalysisReport::new(
                    Body::Verify(VerifyRow::from_properties(&props)),
                    metadata(&config, None, Vec::new()),
                ),
            })
        }
        Command::Fixtures(Fixtures::Run) => {
            let report = run_fixture_suite_with(&config);
            Ok(Outcome {
                failed: mismatch_count(&report) > 0,
                report,
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = match resolve_config(&cli) {
        Ok(config) => config.default_format,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_INPUT);
        }
    };
    match run(&cli) {
        Ok(outcome) => {
            print!("{}", render_report(&outcome.report, format));
            if outcome.failed {
                ExitCode::from(EXIT_MISMATCH)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}
