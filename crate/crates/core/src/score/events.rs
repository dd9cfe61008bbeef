//! The three input formats.
//!
//! ```text
//! onset,lower,upper        onset,pcs,label        # headerless
//! 0,48,55                  0,7|11|2,G             0+e.7
//! 1/2,46,53                1,2|6|9                10+e.7
//! ```

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::counterpoint::CounterpointInterval;
use crate::error::{Error, Result};
use crate::pitch::{PcSet, PitchClass};

pub const VOICE_HEADER: &str = "onset,lower,upper";
pub const CHORD_HEADER: &str = "onset,pcs,label";
const CHORD_HEADER_SHORT: &str = "onset,pcs";

/// Exact onset in beats, kept reduced with a positive denominator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Onset {
    pub num: i64,
    pub den: i64,
}

impl Onset {
    pub fn new(num: i64, den: i64) -> Result<Onset> {
        if den == 0 {
            return Err(Error::Other("onset denominator is zero".into()));
        }
        let sign = if den < 0 { -1 } else { 1 };
        let g = gcd(num.unsigned_abs(), den.unsigned_abs()).max(1) as i64;
        Ok(Onset {
            num: sign * num / g,
            den: sign * den / g,
        })
    }

    pub fn integer(n: i64) -> Onset {
        Onset { num: n, den: 1 }
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl PartialOrd for Onset {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Onset {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.num as i128 * other.den as i128).cmp(&(other.num as i128 * self.den as i128))
    }
}

impl fmt::Display for Onset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl FromStr for Onset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Onset> {
        let err = || Error::parse("onset", s, "expected an integer or n/d");
        match s.trim().split_once('/') {
            Some((n, d)) => Onset::new(
                n.trim().parse().map_err(|_| err())?,
                d.trim().parse().map_err(|_| err())?,
            ),
            None => Ok(Onset::integer(s.trim().parse().map_err(|_| err())?)),
        }
    }
}

/// Two sounding pitches as MIDI-style semitone numbers (60 = middle C).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct VoiceEvent {
    pub onset: Onset,
    pub lower: u8,
    pub upper: u8,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ChordEvent {
    pub onset: Onset,
    pub pcs: PcSet,
    pub label: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "format", content = "events", rename_all = "snake_case")]
pub enum Events {
    Voices(Vec<VoiceEvent>),
    Chords(Vec<ChordEvent>),
    Intervals(Vec<CounterpointInterval>),
}

impl Events {
    pub fn len(&self) -> usize {
        match self {
            Events::Voices(v) => v.len(),
            Events::Chords(c) => c.len(),
            Events::Intervals(i) => i.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn format_name(&self) -> &'static str {
        match self {
            Events::Voices(_) => "voices",
            Events::Chords(_) => "chords",
            Events::Intervals(_) => "intervals",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Kind {
    Voices,
    Chords,
    Intervals,
}

impl Kind {
    fn name(self) -> &'static str {
        match self {
            Kind::Voices => "two-voice",
            Kind::Chords => "chord",
            Kind::Intervals => "interval",
        }
    }
}

fn header_kind(line: &str) -> Option<Kind> {
    let compact: String = line
        .chars()
        .filter(|c| !c.is_whitespace())
        .collect::<String>()
        .to_ascii_lowercase();
    match compact.as_str() {
        VOICE_HEADER => Some(Kind::Voices),
        CHORD_HEADER | CHORD_HEADER_SHORT => Some(Kind::Chords),
        _ => None,
    }
}

/// Best guess at which format a data line belongs to.
fn guess_kind(line: &str) -> Option<Kind> {
    if let Some(kind) = header_kind(line) {
        return Some(kind);
    }
    if line.contains('|') {
        return Some(Kind::Chords);
    }
    if line.split(',').all(|tok| tok.trim().parse::<CounterpointInterval>().is_ok()) {
        return Some(Kind::Intervals);
    }
    let fields: Vec<&str> = line.split(',').collect();
    if fields.len() == 3 && fields.iter().all(|f| f.trim().parse::<Onset>().is_ok()) {
        return Some(Kind::Voices);
    }
    None
}

/// Drops a `#` comment. A `#` only starts a comment at the beginning of a
/// line or after whitespace, so labels such as `F#` survive.
fn strip_comment(line: &str) -> &str {
    let mut prev = None;
    for (i, c) in line.char_indices() {
        if c == '#' && prev.is_none_or(char::is_whitespace) {
            return &line[..i];
        }
        prev = Some(c);
    }
    line
}

/// Character column (1-based) of byte offset `at` in `line`.
fn column(line: &str, at: usize) -> usize {
    line[..at].chars().count() + 1
}

/// Comma-separated fields with their byte offsets.
fn fields(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = 0;
    for part in line.split(',') {
        let lead = part.len() - part.trim_start().len();
        out.push((start + lead, part.trim()));
        start += part.len() + 1;
    }
    out
}

struct LineError {
    at: usize,
    message: String,
}

fn line_err(at: usize, message: impl Into<String>) -> LineError {
    LineError {
        at,
        message: message.into(),
    }
}

fn parse_pitch(at: usize, field: &str, what: &str) -> std::result::Result<u8, LineError> {
    let value: i64 = field
        .parse()
        .map_err(|_| line_err(at, format!("{what} pitch {field:?} is not an integer")))?;
    if !(0..=127).contains(&value) {
        return Err(line_err(at, format!("{what} pitch {value} is outside 0..=127")));
    }
    Ok(value as u8)
}

fn parse_voice(line: &str) -> std::result::Result<VoiceEvent, LineError> {
    let f = fields(line);
    if f.len() != 3 {
        return Err(line_err(0, format!("expected 3 fields (onset,lower,upper), found {}", f.len())));
    }
    let onset = f[0].1.parse().map_err(|e: Error| line_err(f[0].0, e.to_string()))?;
    Ok(VoiceEvent {
        onset,
        lower: parse_pitch(f[1].0, f[1].1, "lower")?,
        upper: parse_pitch(f[2].0, f[2].1, "upper")?,
    })
}

fn parse_chord(line: &str) -> std::result::Result<ChordEvent, LineError> {
    let f = fields(line);
    if !(2..=3).contains(&f.len()) {
        return Err(line_err(0, format!("expected 2 or 3 fields (onset,pcs[,label]), found {}", f.len())));
    }
    let onset = f[0].1.parse().map_err(|e: Error| line_err(f[0].0, e.to_string()))?;
    let mut pcs = PcSet::EMPTY;
    let mut offset = f[1].0;
    for part in f[1].1.split('|') {
        let lead = part.len() - part.trim_start().len();
        let value: PitchClass = part
            .trim()
            .parse()
            .map_err(|_| line_err(offset + lead, format!("{:?} is not a residue", part.trim())))?;
        pcs.insert(value);
        offset += part.len() + 1;
    }
    if pcs.is_empty() {
        return Err(line_err(f[1].0, "empty pitch-class set"));
    }
    let label = f.get(2).map(|(_, l)| l.to_string()).filter(|l| !l.is_empty());
    Ok(ChordEvent { onset, pcs, label })
}

fn parse_intervals(line: &str) -> std::result::Result<Vec<CounterpointInterval>, LineError> {
    fields(line)
        .into_iter()
        .map(|(at, tok)| tok.parse().map_err(|e: Error| line_err(at, e.to_string())))
        .collect()
}

/// Parses any of the three formats, chosen by the first non-comment line.
pub fn parse_events(text: &str) -> Result<Events> {
    let mut kind = None;
    let mut voices = Vec::new();
    let mut chords = Vec::new();
    let mut intervals = Vec::new();

    for (index, raw) in text.lines().enumerate() {
        let number = index + 1;
        let raw = raw.strip_suffix('\r').unwrap_or(raw);
        let raw = if index == 0 { raw.trim_start_matches('\u{feff}') } else { raw };
        let content = strip_comment(raw);
        if content.trim().is_empty() {
            continue;
        }
        let at_error = |e: LineError| Error::Input {
            line: number,
            column: column(content, e.at.min(content.len())),
            message: e.message,
        };

        let current = match kind {
            Some(k) => k,
            None => {
                let detected = header_kind(content);
                kind = Some(detected.unwrap_or(Kind::Intervals));
                if detected.is_some() {
                    continue;
                }
                Kind::Intervals
            }
        };

        if header_kind(content).is_some() {
            return Err(at_error(line_err(0, "mixed formats: unexpected header line")));
        }
        let outcome = match current {
            Kind::Voices => parse_voice(content).map(|event| {
                voices.push(event);
            }),
            Kind::Chords => parse_chord(content).map(|event| {
                chords.push(event);
            }),
            Kind::Intervals => parse_intervals(content).map(|mut list| {
                intervals.append(&mut list);
            }),
        };
        if let Err(e) = outcome {
            return Err(match guess_kind(content) {
                Some(other) if other != current => at_error(line_err(
                    0,
                    format!(
                        "mixed formats: {} line in a {} file",
                        other.name(),
                        current.name()
                    ),
                )),
                _ => at_error(e),
            });
        }
        let last_two = match current {
            Kind::Voices => voices.iter().rev().take(2).map(|v| v.onset).collect::<Vec<_>>(),
            Kind::Chords => chords.iter().rev().take(2).map(|c| c.onset).collect(),
            Kind::Intervals => Vec::new(),
        };
        if last_two.len() == 2 && last_two[0] < last_two[1] {
            return Err(at_error(line_err(0, "onsets must be non-decreasing")));
        }
    }

    Ok(match kind {
        Some(Kind::Voices) => Events::Voices(voices),
        Some(Kind::Chords) => Events::Chords(chords),
        Some(Kind::Intervals) | None => Events::Intervals(intervals),
    })
}

/// Writes events back in their own format, one per line.
pub fn render_events(events: &Events) -> String {
    let mut out = String::new();
    match events {
        Events::Voices(list) => {
            out.push_str(VOICE_HEADER);
            out.push('\n');
            for e in list {
                out.push_str(&format!("{},{},{}\n", e.onset, e.lower, e.upper));
            }
        }
        Events::Chords(list) => {
            out.push_str(CHORD_HEADER);
            out.push('\n');
            for e in list {
                let pcs: Vec<String> = e.pcs.values().iter().map(u8::to_string).collect();
                out.push_str(&format!(
                    "{},{},{}\n",
                    e.onset,
                    pcs.join("|"),
                    e.label.as_deref().unwrap_or("")
                ));
            }
        }
        Events::Intervals(list) => {
            for xi in list {
                out.push_str(&format!("{xi}\n"));
            }
        }
    }
    out
}

/// Intervals read from a two-voice file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Extraction {
    pub intervals: Vec<CounterpointInterval>,
    /// Positions in `intervals` that are dissonant.
    pub dissonant: Vec<usize>,
    pub warnings: Vec<String>,
}

/// `ξ = (lower mod 12) + ε.((upper − lower) mod 12)`, with consecutive
/// repeats collapsed.
pub fn extract_intervals(events: &[VoiceEvent]) -> Result<Extraction> {
    if events.is_empty() {
        return Err(Error::SequenceTooShort(0));
    }
    let mut out = Extraction {
        intervals: Vec::new(),
        dissonant: Vec::new(),
        warnings: Vec::new(),
    };
    for (i, e) in events.iter().enumerate() {
        if e.upper < e.lower {
            out.warnings.push(format!(
                "event {} at onset {}: upper {} is below lower {}; interval reduced mod 12",
                i + 1,
                e.onset,
                e.upper,
                e.lower
            ));
        }
        let xi = CounterpointInterval::new(
            PitchClass::from_int(e.lower as i64),
            PitchClass::from_int(e.upper as i64 - e.lower as i64),
        );
        if out.intervals.last() == Some(&xi) {
            continue;
        }
        if !xi.consonant {
            out.dissonant.push(out.intervals.len());
        }
        out.intervals.push(xi);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ci(x: u8, y: u8) -> CounterpointInterval {
        CounterpointInterval::new(x, y)
    }

    #[test]
    fn voice_line() {
        let events = parse_events("onset,lower,upper\n0,48,55\n").unwrap();
        assert_eq!(
            events,
            Events::Voices(vec![VoiceEvent {
                onset: Onset::integer(0),
                lower: 48,
                upper: 55
            }])
        );
    }

    #[test]
    fn chord_line() {
        let events = parse_events("onset,pcs,label # chords\n0,7|11|2,G\n").unwrap();
        assert_eq!(
            events,
            Events::Chords(vec![ChordEvent {
                onset: Onset::integer(0),
                pcs: PcSet::from_values(&[2, 7, 11]),
                label: Some("G".into())
            }])
        );
        let short = parse_events("onset,pcs\n0,0|4|7\n").unwrap();
        let sharp = parse_events("onset,pcs,label\n0,6|10|1,F#\n").unwrap();
        assert!(matches!(sharp, Events::Chords(ref c) if c[0].label.as_deref() == Some("F#")));
        assert!(matches!(short, Events::Chords(ref c) if c[0].label.is_none()));
    }

    #[test]
    fn interval_lines() {
        let events = parse_events("# Confitebor\r\n0+e.7\r\n10+ε.7, 10+e.4\r\n").unwrap();
        assert_eq!(events, Events::Intervals(vec![ci(0, 7), ci(10, 7), ci(10, 4)]));
    }

    #[test]
    fn errors_carry_line_and_column() {
        let err = parse_events("onset,lower,upper\n0,48,55\n1,48,x\n").unwrap_err();
        assert_eq!(
            err,
            Error::Input {
                line: 3,
                column: 6,
                message: "upper pitch \"x\" is not an integer".into()
            }
        );
        let err = parse_events("onset,lower,upper\n0,48,200\n").unwrap_err();
        assert!(matches!(err, Error::Input { line: 2, column: 6, .. }));
        let err = parse_events("onset,pcs\n0,1|q\n").unwrap_err();
        assert!(matches!(err, Error::Input { line: 2, column: 5, .. }));
        let err = parse_events("0+e.7\n0+e.x\n").unwrap_err();
        assert!(matches!(err, Error::Input { line: 2, column: 1, .. }));
    }

    #[test]
    fn mixed_formats_are_rejected() {
        let err = parse_events("0+e.7\n0,48,55\n").unwrap_err();
        assert!(err.to_string().contains("mixed formats"), "{err}");
        let err = parse_events("onset,lower,upper\n0,48,55\n0,7|11|2,G\n").unwrap_err();
        assert!(err.to_string().contains("mixed formats"), "{err}");
        let err = parse_events("onset,pcs\n0,0|4|7\n3+e.4\n").unwrap_err();
        assert!(err.to_string().contains("mixed formats"), "{err}");
        let err = parse_events("onset,pcs\n0,0|4|7\nonset,lower,upper\n").unwrap_err();
        assert!(err.to_string().contains("mixed formats"), "{err}");
    }

    #[test]
    fn onsets() {
        assert_eq!("6/4".parse::<Onset>().unwrap(), Onset::new(3, 2).unwrap());
        assert_eq!(Onset::new(3, -6).unwrap().to_string(), "-1/2");
        assert!("1/0".parse::<Onset>().is_err());
        let err = parse_events("onset,lower,upper\n1,48,55\n1/2,48,55\n").unwrap_err();
        assert!(err.to_string().contains("non-decreasing"));
    }

    #[test]
    fn extraction_examples() {
        let ev = |l, u| VoiceEvent {
            onset: Onset::integer(0),
            lower: l,
            upper: u,
        };
        let x = extract_intervals(&[ev(48, 55), ev(48, 55), ev(46, 53), ev(46, 48)]).unwrap();
        assert_eq!(x.intervals, vec![ci(0, 7), ci(10, 7), ci(10, 2)]);
        assert_eq!(x.dissonant, vec![2]);
        assert!(x.warnings.is_empty());

        let x = extract_intervals(&[ev(55, 48)]).unwrap();
        assert_eq!(x.intervals, vec![ci(7, 5)]);
        assert_eq!(x.warnings.len(), 1);
        assert!(extract_intervals(&[]).is_err());
    }

    #[test]
    fn render_round_trips() {
        for text in [
            "onset,lower,upper\n0,48,55\n1/2,46,53\n",
            "onset,pcs,label\n0,7|11|2,G\n3,0|1|2,\n",
            "0+e.7\n10+e.4\n",
        ] {
            let parsed = parse_events(text).unwrap();
            assert_eq!(parse_events(&render_events(&parsed)).unwrap(), parsed);
        }
    }
}
