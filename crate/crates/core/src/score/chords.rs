use std::fmt;

use serde::{Deserialize, Serialize};

use crate::modulation::{chord_symbol, recognize_triad, Degree, Tonality, TriadQuality};
use crate::pitch::{note_name, PcSet, PitchClass};

/// A major key and one of its degrees.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DegreeMatch {
    pub key: PitchClass,
    pub degree: Degree,
}

impl fmt::Display for DegreeMatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} of {}", self.degree, note_name(self.key))
    }
}

/// Result of [`label_chord`]. `name` is `"unknown"` when the set is not one
/// of the 36 major, minor or diminished triads.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChordLabel {
    pub pcs: PcSet,
    pub name: String,
    pub root: Option<PitchClass>,
    pub quality: Option<TriadQuality>,
    /// Every major key containing the chord as a degree triad, by key then degree.
    pub degrees: Vec<DegreeMatch>,
}

impl ChordLabel {
    pub fn is_known(&self) -> bool {
        self.root.is_some()
    }

    pub fn quality_name(&self) -> &'static str {
        match self.quality {
            Some(TriadQuality::Major) => "major",
            Some(TriadQuality::Minor) => "minor",
            Some(TriadQuality::Diminished) => "diminished",
            None => "unknown",
        }
    }
}

impl fmt::Display for ChordLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.is_known() {
            return f.write_str("unknown");
        }
        write!(f, "{} ({})", self.name, self.quality_name())?;
        if !self.degrees.is_empty() {
            let list: Vec<String> = self.degrees.iter().map(DegreeMatch::to_string).collect();
            write!(f, ": {}", list.join(", "))?;
        }
        Ok(())
    }
}

pub fn label_chord(pcs: PcSet) -> ChordLabel {
    let Some((root, quality)) = recognize_triad(pcs) else {
        return ChordLabel {
            pcs,
            name: "unknown".into(),
            root: None,
            quality: None,
            degrees: Vec::new(),
        };
    };
    let degrees = PitchClass::all()
        .flat_map(|key| {
            let tonality = Tonality::major(key);
            Degree::all()
                .filter(move |d| tonality.triad(*d) == pcs)
                .map(move |degree| DegreeMatch { key, degree })
        })
        .collect();
    ChordLabel {
        pcs,
        name: chord_symbol(root, quality),
        root: Some(root),
        quality: Some(quality),
        degrees,
    }
}
