//! Major tonalities as triad coverings and the quantum model of modulation.
//!
//! A modulation from tonality S to T is witnessed by an affine modulator `m`
//! with `m(S) = T` and a cadential set of T. Its quantum is the smallest
//! pitch-class set that is fixed by `m`, holds every note of the cadence and
//! meets T in a rigid set. Target degrees whose triads lie inside the quantum
//! are the pivots.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pitch::{is_rigid, note_name, AffineMap, PcSet, PitchClass};

/// Steps of the major scale above the tonic.
pub const MAJOR_STEPS: [u8; 7] = [0, 2, 4, 5, 7, 9, 11];

const ROMAN: [&str; 7] = ["I", "II", "III", "IV", "V", "VI", "VII"];

/// A scale degree, I through VII.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Degree(u8);

impl Degree {
    pub const I: Degree = Degree(0);
    pub const II: Degree = Degree(1);
    pub const III: Degree = Degree(2);
    pub const IV: Degree = Degree(3);
    pub const V: Degree = Degree(4);
    pub const VI: Degree = Degree(5);
    pub const VII: Degree = Degree(6);

    /// Zero-based index, so `I` is 0.
    pub fn new(index: u8) -> Option<Degree> {
        (index < 7).then_some(Degree(index))
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn all() -> impl Iterator<Item = Degree> {
        (0..7).map(Degree)
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(ROMAN[self.index()])
    }
}

impl FromStr for Degree {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let upper = s.trim().to_ascii_uppercase();
        ROMAN
            .iter()
            .position(|r| *r == upper)
            .map(|i| Degree(i as u8))
            .ok_or_else(|| Error::parse("degree", s, "expected a roman numeral I..VII"))
    }
}

pub fn format_degrees(degrees: &BTreeSet<Degree>) -> String {
    let parts: Vec<String> = degrees.iter().map(Degree::to_string).collect();
    format!("{{{}}}", parts.join(","))
}

/// Quality of a stacked-third triad.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TriadQuality {
    Major,
    Minor,
    Diminished,
}

/// Chord symbol in the usual lead-sheet casing: `G`, `e`, `c#°`.
pub fn chord_symbol(root: PitchClass, quality: TriadQuality) -> String {
    let name = note_name(root);
    match quality {
        TriadQuality::Major => name.to_string(),
        TriadQuality::Minor => name.to_lowercase(),
        TriadQuality::Diminished => format!("{}°", name.to_lowercase()),
    }
}

/// Recognizes `set` as a major, minor or diminished triad and returns its root.
pub fn recognize_triad(set: PcSet) -> Option<(PitchClass, TriadQuality)> {
    if set.len() != 3 {
        return None;
    }
    let shapes = [
        (TriadQuality::Major, [0u8, 4, 7]),
        (TriadQuality::Minor, [0, 3, 7]),
        (TriadQuality::Diminished, [0, 3, 6]),
    ];
    for root in set.iter() {
        for (quality, shape) in shapes {
            let candidate: PcSet = shape.iter().map(|&i| root + PitchClass::new(i)).collect();
            if candidate == set {
                return Some((root, quality));
            }
        }
    }
    None
}

/// A major key as the covering of its scale by seven degree triads.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Tonality {
    pub tonic: PitchClass,
    pub scale: PcSet,
    pub degrees: [PcSet; 7],
}

impl Tonality {
    pub fn major(tonic: PitchClass) -> Tonality {
        let notes: Vec<PitchClass> = MAJOR_STEPS.iter().map(|&s| tonic + PitchClass::new(s)).collect();
        let degrees = std::array::from_fn(|n| {
            [notes[n], notes[(n + 2) % 7], notes[(n + 4) % 7]]
                .into_iter()
                .collect()
        });
        Tonality {
            tonic,
            scale: notes.into_iter().collect(),
            degrees,
        }
    }

    /// The scale in degree order starting from the tonic.
    pub fn scale_notes(&self) -> [PitchClass; 7] {
        std::array::from_fn(|i| self.tonic + PitchClass::new(MAJOR_STEPS[i]))
    }

    pub fn triad(&self, degree: Degree) -> PcSet {
        self.degrees[degree.index()]
    }

    pub fn quality(&self, degree: Degree) -> TriadQuality {
        match degree.index() {
            0 | 3 | 4 => TriadQuality::Major,
            1 | 2 | 5 => TriadQuality::Minor,
            _ => TriadQuality::Diminished,
        }
    }

    /// Chord symbol of a degree, e.g. `f#` for III of D.
    pub fn chord_name(&self, degree: Degree) -> String {
        chord_symbol(self.scale_notes()[degree.index()], self.quality(degree))
    }

    pub fn name(&self) -> &'static str {
        note_name(self.tonic)
    }

    /// Degrees whose triads lie inside `set`.
    pub fn degrees_within(&self, set: PcSet) -> BTreeSet<Degree> {
        Degree::all().filter(|d| self.triad(*d).is_subset(set)).collect()
    }

    /// Degrees whose triad equals `triad`.
    pub fn degree_of(&self, triad: PcSet) -> Option<Degree> {
        Degree::all().find(|d| self.triad(*d) == triad)
    }

    pub fn contains_triad(&self, triad: PcSet) -> bool {
        self.degrees.contains(&triad)
    }

    pub fn transpose(&self, n: PitchClass) -> Tonality {
        Tonality::major(self.tonic + n)
    }
}

pub fn major_tonality(tonic: PitchClass) -> Tonality {
    Tonality::major(tonic)
}

pub fn degree_triad(tonality: &Tonality, degree: Degree) -> PcSet {
    tonality.triad(degree)
}

/// The five cadences of the major scale.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CadenceLabel {
    K1,
    K2,
    K3,
    K4,
    K5,
}

impl CadenceLabel {
    pub const ALL: [CadenceLabel; 5] = [
        CadenceLabel::K1,
        CadenceLabel::K2,
        CadenceLabel::K3,
        CadenceLabel::K4,
        CadenceLabel::K5,
    ];

    pub fn degrees(self) -> BTreeSet<Degree> {
        let ds: &[Degree] = match self {
            CadenceLabel::K1 => &[Degree::II, Degree::V],
            CadenceLabel::K2 => &[Degree::II, Degree::III],
            CadenceLabel::K3 => &[Degree::III, Degree::IV],
            CadenceLabel::K4 => &[Degree::IV, Degree::V],
            CadenceLabel::K5 => &[Degree::VII],
        };
        ds.iter().copied().collect()
    }

    pub fn from_degrees(degrees: &BTreeSet<Degree>) -> Option<CadenceLabel> {
        CadenceLabel::ALL.into_iter().find(|l| l.degrees() == *degrees)
    }
}

impl fmt::Display for CadenceLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let i = *self as u8 + 1;
        write!(f, "k{i}")
    }
}

impl FromStr for CadenceLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "k1" => Ok(CadenceLabel::K1),
            "k2" => Ok(CadenceLabel::K2),
            "k3" => Ok(CadenceLabel::K3),
            "k4" => Ok(CadenceLabel::K4),
            "k5" => Ok(CadenceLabel::K5),
            _ => Err(Error::parse("cadence", s, "expected k1..k5")),
        }
    }
}

/// A labelled cadential set of degrees.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CadentialSet {
    pub label: CadenceLabel,
    pub degrees: BTreeSet<Degree>,
}

impl CadentialSet {
    pub fn standard(label: CadenceLabel) -> CadentialSet {
        CadentialSet {
            label,
            degrees: label.degrees(),
        }
    }

    pub fn triads(&self, tonality: &Tonality) -> Vec<PcSet> {
        self.degrees.iter().map(|d| tonality.triad(*d)).collect()
    }

    pub fn notes(&self, tonality: &Tonality) -> PcSet {
        self.triads(tonality)
            .into_iter()
            .fold(PcSet::EMPTY, PcSet::union)
    }

    /// Chord symbols of the cadence triads in `tonality`, e.g. `{F,G}`.
    pub fn chord_names(&self, tonality: &Tonality) -> Vec<String> {
        self.degrees.iter().map(|d| tonality.chord_name(*d)).collect()
    }
}

/// Every inclusion-minimal set of degrees whose triads occur together in
/// exactly one of the twelve major tonalities, found by brute force.
pub fn minimal_identifying_sets(tonality: &Tonality) -> Vec<BTreeSet<Degree>> {
    let keys: Vec<Tonality> = PitchClass::all().map(Tonality::major).collect();
    let mut masks: Vec<u8> = (1u8..128).collect();
    masks.sort_by_key(|m| (m.count_ones(), *m));
    let mut found: Vec<u8> = Vec::new();
    for mask in masks {
        if found.iter().any(|f| f & mask == *f) {
            continue;
        }
        let triads: Vec<PcSet> = Degree::all()
            .filter(|d| mask & (1 << d.0) != 0)
            .map(|d| tonality.triad(d))
            .collect();
        let hosts = keys
            .iter()
            .filter(|k| triads.iter().all(|t| k.contains_triad(*t)))
            .count();
        if hosts == 1 {
            found.push(mask);
        }
    }
    found
        .into_iter()
        .map(|mask| Degree::all().filter(|d| mask & (1 << d.0) != 0).collect())
        .collect()
}

/// The cadential sets of a major tonality, ordered k1..k5.
pub fn cadential_sets(tonality: &Tonality) -> Vec<CadentialSet> {
    let mut out: Vec<CadentialSet> = minimal_identifying_sets(tonality)
        .into_iter()
        .filter_map(|degrees| {
            CadenceLabel::from_degrees(&degrees).map(|label| CadentialSet { label, degrees })
        })
        .collect();
    out.sort_by_key(|c| c.label);
    out
}

/// Every affine map carrying the source scale onto the target scale.
pub fn find_modulators(source: &Tonality, target: &Tonality) -> Vec<AffineMap> {
    AffineMap::all()
        .filter(|m| m.apply_set(source.scale) == target.scale)
        .collect()
}

/// The three quantum conditions.
pub fn satisfies_quantum(set: PcSet, modulator: AffineMap, cadence_notes: PcSet, target: &Tonality) -> bool {
    modulator.apply_set(set) == set
        && cadence_notes.is_subset(set)
        && is_rigid(set.intersection(target.scale))
}

/// Smallest superset of `set` closed under `m`.
pub fn orbit_closure(set: PcSet, m: AffineMap) -> PcSet {
    let mut closed = set;
    loop {
        let next = closed.union(m.apply_set(closed));
        if next == closed {
            return closed;
        }
        closed = next;
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModulationResult {
    pub source: Tonality,
    pub target: Tonality,
    pub modulator: AffineMap,
    pub cadence: CadentialSet,
    pub quantum: PcSet,
    /// Other quanta of the same (minimum) size, if the minimum is not unique.
    pub alternatives: Vec<PcSet>,
    /// Target degrees whose triads lie in the quantum.
    pub pivots: BTreeSet<Degree>,
    /// Source degrees whose triads lie in the quantum.
    pub source_cover: BTreeSet<Degree>,
}

impl ModulationResult {
    /// `M ∩ T`
    pub fn target_intersection(&self) -> PcSet {
        self.quantum.intersection(self.target.scale)
    }

    pub fn is_unique(&self) -> bool {
        self.alternatives.is_empty()
    }

    pub fn pivot_names(&self) -> Vec<String> {
        self.pivots.iter().map(|d| self.target.chord_name(*d)).collect()
    }

    pub fn cadence_names(&self) -> Vec<String> {
        self.cadence.chord_names(&self.target)
    }

    pub fn label(&self) -> String {
        format!("{}->{}", self.source.name(), self.target.name())
    }
}

/// Finds the minimal quantum for a given modulator and target cadence.
///
/// Candidates are supersets of the `m`-orbit of the cadence notes, visited
/// by cardinality and then lexicographically; every candidate of the
/// minimum size is kept.
pub fn modulation_quantum(
    source: &Tonality,
    target: &Tonality,
    modulator: AffineMap,
    cadence: CadenceLabel,
) -> Result<ModulationResult> {
    if modulator.apply_set(source.scale) != target.scale {
        return Err(Error::NotAModulator {
            modulator: modulator.to_string(),
            source_key: source.name().to_string(),
            target_key: target.name().to_string(),
        });
    }
    let cadence = CadentialSet::standard(cadence);
    let notes = cadence.notes(target);
    let seed = orbit_closure(notes, modulator);

    let mut candidates: Vec<PcSet> = PcSet::all_subsets().filter(|s| seed.is_subset(*s)).collect();
    candidates.sort_by_key(|s| (s.len(), s.values()));

    let mut minimal: Vec<PcSet> = Vec::new();
    for set in candidates {
        if let Some(first) = minimal.first() {
            if set.len() > first.len() {
                break;
            }
        }
        if satisfies_quantum(set, modulator, notes, target) {
            minimal.push(set);
        }
    }
    if minimal.is_empty() {
        return Err(Error::QuantumNotFound {
            modulator: modulator.to_string(),
            cadence: cadence.label.to_string(),
        });
    }
    let quantum = minimal.remove(0);
    Ok(ModulationResult {
        source: *source,
        target: *target,
        modulator,
        pivots: target.degrees_within(quantum),
        source_cover: source.degrees_within(quantum),
        cadence,
        quantum,
        alternatives: minimal,
    })
}

/// Independent check over all 4096 subsets: no proper subset of the quantum
/// satisfies the three conditions, and no set at all is smaller.
pub fn confirm_minimal(result: &ModulationResult) -> bool {
    let notes = result.cadence.notes(&result.target);
    let passing = |s: PcSet| satisfies_quantum(s, result.modulator, notes, &result.target);
    PcSet::all_subsets().all(|s| {
        let proper_subset = s.is_subset(result.quantum) && s != result.quantum;
        !(passing(s) && (proper_subset || s.len() < result.quantum.len()))
    }) && passing(result.quantum)
}

/// Moves a whole result up by `n` semitones. Degree labels are unchanged.
pub fn transpose_modulation(result: &ModulationResult, n: PitchClass) -> ModulationResult {
    let shift = AffineMap::translation(n);
    ModulationResult {
        source: result.source.transpose(n),
        target: result.target.transpose(n),
        modulator: result.modulator.conjugate_by(shift),
        cadence: result.cadence.clone(),
        quantum: result.quantum.transpose(n),
        alternatives: result.alternatives.iter().map(|s| s.transpose(n)).collect(),
        pivots: result.pivots.clone(),
        source_cover: result.source_cover.clone(),
    }
}

/// One modulator/cadence pair of a sweep.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepEntry {
    pub modulator: AffineMap,
    pub cadence: CadenceLabel,
    pub result: Option<ModulationResult>,
}

/// Tries every modulator against every cadence.
pub fn sweep(source: &Tonality, target: &Tonality) -> Vec<SweepEntry> {
    let mut out = Vec::new();
    for modulator in find_modulators(source, target) {
        for cadence in CadenceLabel::ALL {
            out.push(SweepEntry {
                modulator,
                cadence,
                result: modulation_quantum(source, target, modulator, cadence).ok(),
            });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn key(n: u8) -> Tonality {
        Tonality::major(PitchClass::new(n))
    }

    fn set(values: &[u8]) -> PcSet {
        PcSet::from_values(values)
    }

    fn map(t: u8, u: u8) -> AffineMap {
        AffineMap::new(t, u).unwrap()
    }

    fn degrees(ds: &[Degree]) -> BTreeSet<Degree> {
        ds.iter().copied().collect()
    }

    #[test]
    fn scales() {
        assert_eq!(key(0).scale, set(&[0, 2, 4, 5, 7, 9, 11]));
        assert_eq!(key(7).scale, set(&[7, 9, 11, 0, 2, 4, 6]));
        assert_eq!(key(3).scale, set(&[3, 5, 7, 8, 10, 0, 2]));
    }

    #[test]
    fn degree_triads() {
        assert_eq!(degree_triad(&key(2), Degree::II), set(&[4, 7, 11]));
        assert_eq!(degree_triad(&key(9), Degree::VII), set(&[8, 11, 2]));
        assert_eq!(degree_triad(&key(0), Degree::I), set(&[0, 4, 7]));
    }

    #[test]
    fn degrees_cover_the_scale() {
        for t in PitchClass::all() {
            let k = Tonality::major(t);
            let union = k.degrees.iter().fold(PcSet::EMPTY, |a, b| a.union(*b));
            assert_eq!(union, k.scale);
            for d in Degree::all() {
                assert_eq!(recognize_triad(k.triad(d)).map(|r| r.1), Some(k.quality(d)));
            }
        }
    }

    #[test]
    fn chord_names_of_d_and_a() {
        let names: Vec<String> = Degree::all().map(|d| key(2).chord_name(d)).collect();
        assert_eq!(names, ["D", "e", "f#", "G", "A", "b", "c#°"]);
        let names: Vec<String> = Degree::all().map(|d| key(9).chord_name(d)).collect();
        assert_eq!(names, ["A", "b", "c#", "D", "E", "f#", "g#°"]);
    }

    #[test]
    fn cadential_sets_of_c() {
        let sets = cadential_sets(&key(0));
        let labels: Vec<CadenceLabel> = sets.iter().map(|c| c.label).collect();
        assert_eq!(labels, CadenceLabel::ALL);
        assert_eq!(
            CadentialSet::standard(CadenceLabel::K4).triads(&key(0)),
            vec![set(&[5, 9, 0]), set(&[7, 11, 2])]
        );
        assert_eq!(CadentialSet::standard(CadenceLabel::K5).triads(&key(9)), vec![set(&[8, 11, 2])]);
    }

    #[test]
    fn brute_force_finds_exactly_five_cadences_for_every_key() {
        let expected: BTreeSet<BTreeSet<Degree>> = CadenceLabel::ALL.iter().map(|l| l.degrees()).collect();
        for t in PitchClass::all() {
            let found: BTreeSet<BTreeSet<Degree>> = minimal_identifying_sets(&Tonality::major(t)).into_iter().collect();
            assert_eq!(found, expected, "tonic {t}");
        }
    }

    #[test]
    fn modulator_examples() {
        assert!(find_modulators(&key(0), &key(2)).contains(&map(6, 11)));
        assert!(find_modulators(&key(0), &key(7)).contains(&map(11, 11)));
        assert!(find_modulators(&key(0), &key(3)).contains(&map(7, 11)));
    }

    #[test]
    fn c_to_d_quantum() {
        let r = modulation_quantum(&key(0), &key(2), map(6, 11), CadenceLabel::K4).unwrap();
        assert_eq!(r.quantum, set(&[1, 2, 4, 5, 7, 9, 11]));
        assert!(r.is_unique());
        assert_eq!(r.pivots, degrees(&[Degree::II, Degree::IV, Degree::V, Degree::VII]));
        assert_eq!(r.source_cover, degrees(&[Degree::II, Degree::III, Degree::V, Degree::VII]));
        assert_eq!(r.target_intersection(), set(&[1, 2, 4, 7, 9, 11]));
        assert!(confirm_minimal(&r));
    }

    #[test]
    fn c_to_g_quantum() {
        let r = modulation_quantum(&key(0), &key(7), map(11, 11), CadenceLabel::K5).unwrap();
        assert_eq!(r.quantum, set(&[0, 2, 5, 6, 9, 11]));
        assert!(r.is_unique());
        assert_eq!(r.pivots, degrees(&[Degree::III, Degree::V, Degree::VII]));
        assert_eq!(r.source_cover, degrees(&[Degree::II, Degree::IV, Degree::VII]));
        assert_eq!(r.target_intersection(), set(&[0, 2, 6, 9, 11]));
        assert!(confirm_minimal(&r));
    }

    #[test]
    fn c_to_e_flat_quantum() {
        let r = modulation_quantum(&key(0), &key(3), map(7, 11), CadenceLabel::K1).unwrap();
        assert_eq!(r.quantum, set(&[0, 2, 5, 7, 8, 9, 10, 11]));
        assert!(r.is_unique());
        assert_eq!(r.pivots, degrees(&[Degree::II, Degree::III, Degree::V, Degree::VII]));
        // IV of C = {5,9,0} also lies in M
        assert_eq!(r.source_cover, degrees(&[Degree::II, Degree::IV, Degree::V, Degree::VII]));
        assert_eq!(r.target_intersection(), set(&[0, 2, 5, 7, 8, 10]));
        assert!(confirm_minimal(&r));
    }

    #[test]
    fn wrong_modulator_is_rejected() {
        let err = modulation_quantum(&key(0), &key(2), map(0, 1), CadenceLabel::K4).unwrap_err();
        assert!(matches!(err, Error::NotAModulator { .. }));
    }

    #[test]
    fn transposition_examples() {
        let cg = modulation_quantum(&key(0), &key(7), map(11, 11), CadenceLabel::K5).unwrap();
        let da = transpose_modulation(&cg, PitchClass::new(2));
        assert_eq!(da.source.tonic, PitchClass::new(2));
        assert_eq!(da.target.tonic, PitchClass::new(9));
        assert_eq!(da.pivot_names(), ["c#", "E", "g#°"]);
        assert_eq!(da.cadence_names(), ["g#°"]);
        assert_eq!(da.modulator.apply_set(da.source.scale), da.target.scale);

        let ce = modulation_quantum(&key(0), &key(3), map(7, 11), CadenceLabel::K1).unwrap();
        let ac = transpose_modulation(&ce, PitchClass::new(9));
        assert_eq!(ac.source.tonic, PitchClass::new(9));
        assert_eq!(ac.target.tonic, PitchClass::new(0));
        assert_eq!(ac.cadence_names(), ["d", "G"]);

        assert_eq!(transpose_modulation(&cg, PitchClass::ZERO), cg);
    }

    #[test]
    fn transposing_commutes_with_solving() {
        let cases = [(2u8, 6u8, 11u8, CadenceLabel::K4), (7, 11, 11, CadenceLabel::K5), (3, 7, 11, CadenceLabel::K1)];
        for (tgt, t, u, cad) in cases {
            let r = modulation_quantum(&key(0), &key(tgt), map(t, u), cad).unwrap();
            for n in PitchClass::all() {
                let moved = transpose_modulation(&r, n);
                let solved = modulation_quantum(&moved.source, &moved.target, moved.modulator, cad).unwrap();
                assert_eq!(moved, solved);
            }
        }
    }

    #[test]
    fn pivots_are_exactly_the_contained_degrees() {
        let r = modulation_quantum(&key(0), &key(2), map(6, 11), CadenceLabel::K4).unwrap();
        for d in Degree::all() {
            assert_eq!(r.pivots.contains(&d), r.target.triad(d).is_subset(r.quantum));
        }
    }

    #[test]
    fn orbit_closure_is_invariant() {
        let m = map(6, 11);
        let closed = orbit_closure(set(&[7, 11, 2]), m);
        assert_eq!(m.apply_set(closed), closed);
        assert_eq!(orbit_closure(PcSet::EMPTY, m), PcSet::EMPTY);
    }

    #[test]
    fn sweep_covers_every_pair() {
        let entries = sweep(&key(0), &key(2));
        assert_eq!(entries.len(), 2 * 5);
        assert!(entries
            .iter()
            .any(|e| e.modulator == map(6, 11) && e.cadence == CadenceLabel::K4 && e.result.is_some()));
    }

    #[test]
    fn label_text_forms() {
        assert_eq!("k4".parse::<CadenceLabel>().unwrap(), CadenceLabel::K4);
        assert_eq!(CadenceLabel::K5.to_string(), "k5");
        assert_eq!("vii".parse::<Degree>().unwrap(), Degree::VII);
        assert!("VIII".parse::<Degree>().is_err());
        assert_eq!(format_degrees(&CadenceLabel::K1.degrees()), "{II,V}");
    }
}
