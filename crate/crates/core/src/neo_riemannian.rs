//! The 24 major and minor triads under the TI and PLR groups.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::modulation::{recognize_triad, Degree, Tonality, TriadQuality};
use crate::pitch::{note_name, parse_note_name, AffineMap, PcSet, PitchClass};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Major,
    Minor,
}

/// A consonant triad named by root and mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Triad {
    pub root: PitchClass,
    pub mode: Mode,
}

impl Triad {
    pub fn major(root: impl Into<PitchClass>) -> Triad {
        Triad {
            root: root.into(),
            mode: Mode::Major,
        }
    }

    pub fn minor(root: impl Into<PitchClass>) -> Triad {
        Triad {
            root: root.into(),
            mode: Mode::Minor,
        }
    }

    /// Majors 0..12 then minors 12..24.
    pub fn index(self) -> usize {
        let offset = match self.mode {
            Mode::Major => 0,
            Mode::Minor => 12,
        };
        offset + self.root.value() as usize
    }

    pub fn from_index(i: usize) -> Triad {
        if i < 12 {
            Triad::major(i as u8)
        } else {
            Triad::minor((i - 12) as u8)
        }
    }

    pub fn all() -> impl Iterator<Item = Triad> {
        (0..24).map(Triad::from_index)
    }

    pub fn pitch_set(self) -> PcSet {
        let third = match self.mode {
            Mode::Major => 4,
            Mode::Minor => 3,
        };
        [0u8, third, 7]
            .iter()
            .map(|&i| self.root + PitchClass::new(i))
            .collect()
    }

    pub fn from_pitch_set(set: PcSet) -> Option<Triad> {
        match recognize_triad(set)? {
            (root, TriadQuality::Major) => Some(Triad::major(root)),
            (root, TriadQuality::Minor) => Some(Triad::minor(root)),
            (_, TriadQuality::Diminished) => None,
        }
    }

    /// Degree triad of a major key as a PLR/TI triad. VII is diminished and
    /// has no image.
    pub fn from_degree(tonality: &Tonality, degree: Degree) -> Result<Triad> {
        Triad::from_pitch_set(tonality.triad(degree))
            .ok_or_else(|| Error::Diminished(tonality.chord_name(degree)))
    }
}

impl fmt::Display for Triad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = note_name(self.root);
        match self.mode {
            Mode::Major => f.write_str(name),
            Mode::Minor => f.write_str(&name.to_lowercase()),
        }
    }
}

impl FromStr for Triad {
    type Err = Error;

    /// `C`, `c`, `F#`, `bb` (case of the letter encodes the mode), or
    /// `deg:<roman>@<key>` for a degree of a major key, e.g. `deg:II@D`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if let Some(rest) = t.strip_prefix("deg:") {
            let (degree, key) = rest
                .split_once('@')
                .ok_or_else(|| Error::parse("triad", s, "expected deg:<roman>@<key>"))?;
            let degree: Degree = degree.parse()?;
            let key = Tonality::major(parse_note_name(key)?);
            return Triad::from_degree(&key, degree);
        }
        let first = t
            .chars()
            .next()
            .ok_or_else(|| Error::parse("triad", s, "empty"))?;
        let root = parse_note_name(t)?;
        Ok(if first.is_uppercase() {
            Triad::major(root)
        } else {
            Triad::minor(root)
        })
    }
}

/// One generator of either group, or an element of TI.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Transform {
    /// `x ↦ x + n`
    T(PitchClass),
    /// `x ↦ n − x`
    I(PitchClass),
    P,
    L,
    R,
}

impl Transform {
    pub fn apply(self, triad: Triad) -> Triad {
        match self {
            Transform::T(n) => ti_apply(AffineMap::translation(n), triad),
            Transform::I(n) => ti_apply(AffineMap::inversion(n), triad),
            Transform::P => plr_apply(Plr::P, triad),
            Transform::L => plr_apply(Plr::L, triad),
            Transform::R => plr_apply(Plr::R, triad),
        }
    }

    pub fn permutation(self) -> Permutation {
        Permutation(std::array::from_fn(|i| {
            self.apply(Triad::from_index(i)).index() as u8
        }))
    }
}

impl fmt::Display for Transform {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Transform::T(n) => write!(f, "T{n}"),
            Transform::I(n) => write!(f, "I{n}"),
            Transform::P => f.write_str("P"),
            Transform::L => f.write_str("L"),
            Transform::R => f.write_str("R"),
        }
    }
}

impl FromStr for Transform {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        match t {
            "P" | "p" => return Ok(Transform::P),
            "L" | "l" => return Ok(Transform::L),
            "R" | "r" => return Ok(Transform::R),
            _ => {}
        }
        let (head, n) = t.split_at(t.chars().next().map_or(0, char::len_utf8));
        let n: PitchClass = n
            .trim_start_matches('_')
            .parse()
            .map_err(|_| Error::parse("transform", s, "expected P, L, R, T<n> or I<n>"))?;
        match head {
            "T" | "t" => Ok(Transform::T(n)),
            "I" | "i" => Ok(Transform::I(n)),
            _ => Err(Error::parse("transform", s, "expected P, L, R, T<n> or I<n>")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Plr {
    P,
    L,
    R,
}

/// Pointwise action of a TI element, re-recognized as a triad.
pub fn ti_apply(op: AffineMap, triad: Triad) -> Triad {
    Triad::from_pitch_set(op.apply_set(triad.pitch_set()))
        .expect("affine images of consonant triads are consonant triads")
}

pub fn plr_apply(op: Plr, triad: Triad) -> Triad {
    let r = triad.root;
    match (op, triad.mode) {
        (Plr::P, Mode::Major) => Triad::minor(r),
        (Plr::P, Mode::Minor) => Triad::major(r),
        (Plr::L, Mode::Major) => Triad::minor(r + PitchClass::new(4)),
        (Plr::L, Mode::Minor) => Triad::major(r + PitchClass::new(8)),
        (Plr::R, Mode::Major) => Triad::minor(r + PitchClass::new(9)),
        (Plr::R, Mode::Minor) => Triad::major(r + PitchClass::new(3)),
    }
}

/// A sequence of transforms applied in reading order (first one acts first).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(pub Vec<Transform>);

impl Word {
    pub fn apply(&self, triad: Triad) -> Triad {
        self.0.iter().fold(triad, |t, op| op.apply(t))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(Transform::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

impl FromStr for Word {
    type Err = Error;

    /// Comma-separated transforms, e.g. `R,T7`.
    fn from_str(s: &str) -> Result<Self> {
        if s.trim().is_empty() {
            return Ok(Word::default());
        }
        s.split(',').map(str::parse).collect::<Result<Vec<_>>>().map(Word)
    }
}

pub fn word_apply(word: &Word, triad: Triad) -> Triad {
    word.apply(triad)
}

/// A permutation of the 24 triads, by index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(pub [u8; 24]);

impl Permutation {
    pub const IDENTITY: Permutation = Permutation([
        0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15, 16, 17, 18, 19, 20, 21, 22, 23,
    ]);

    /// `self ∘ other`
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation(std::array::from_fn(|i| self.0[other.0[i] as usize]))
    }

    pub fn inverse(&self) -> Permutation {
        let mut out = [0u8; 24];
        for (i, &j) in self.0.iter().enumerate() {
            out[j as usize] = i as u8;
        }
        Permutation(out)
    }

    pub fn apply(&self, triad: Triad) -> Triad {
        Triad::from_index(self.0[triad.index()] as usize)
    }

    pub fn order(&self) -> usize {
        let mut p = *self;
        let mut n = 1;
        while p != Permutation::IDENTITY {
            p = p.compose(self);
            n += 1;
        }
        n
    }
}

/// Closes a set of generators under composition.
pub fn generate_group(generators: &[Permutation]) -> Vec<Permutation> {
    let mut seen = std::collections::BTreeSet::new();
    seen.insert(Permutation::IDENTITY);
    let mut frontier = vec![Permutation::IDENTITY];
    while let Some(p) = frontier.pop() {
        for g in generators {
            let q = g.compose(&p);
            if seen.insert(q) {
                frontier.push(q);
            }
        }
    }
    seen.into_iter().collect()
}

pub fn ti_group() -> Vec<Permutation> {
    generate_group(&[
        Transform::T(PitchClass::new(1)).permutation(),
        Transform::I(PitchClass::ZERO).permutation(),
    ])
}

pub fn plr_group() -> Vec<Permutation> {
    generate_group(&[
        Transform::P.permutation(),
        Transform::L.permutation(),
        Transform::R.permutation(),
    ])
}

/// For every ordered pair of triads exactly one element maps the first to the second.
pub fn is_simply_transitive(group: &[Permutation]) -> bool {
    Triad::all().all(|a| {
        Triad::all().all(|b| group.iter().filter(|g| g.apply(a) == b).count() == 1)
    })
}

/// A rotation of order `n` and a reflection outside its cyclic subgroup that
/// inverts it, for a group of order `2n`.
pub fn dihedral_witness(group: &[Permutation]) -> Option<(Permutation, Permutation)> {
    if !group.len().is_multiple_of(2) {
        return None;
    }
    let n = group.len() / 2;
    let rotation = *group.iter().find(|g| g.order() == n)?;
    let mut cyclic = vec![Permutation::IDENTITY];
    for _ in 1..n {
        let next = rotation.compose(cyclic.last().expect("non-empty"));
        cyclic.push(next);
    }
    let inv = rotation.inverse();
    let reflection = *group.iter().find(|s| {
        s.order() == 2 && !cyclic.contains(s) && s.compose(&rotation).compose(s) == inv
    })?;
    Some((rotation, reflection))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupProperties {
    pub ti_order: usize,
    pub plr_order: usize,
    pub dual_commute: bool,
    pub ti_simply_transitive: bool,
    pub plr_simply_transitive: bool,
    pub ti_dihedral: bool,
    pub plr_dihedral: bool,
    pub isomorphic: bool,
}

impl GroupProperties {
    pub fn all_hold(&self) -> bool {
        self.ti_order == 24
            && self.plr_order == 24
            && self.dual_commute
            && self.ti_simply_transitive
            && self.plr_simply_transitive
            && self.isomorphic
    }
}

pub fn verify_group_properties() -> GroupProperties {
    let ti = ti_group();
    let plr = plr_group();
    let dual_commute = ti
        .iter()
        .all(|a| plr.iter().all(|b| a.compose(b) == b.compose(a)));
    let ti_dihedral = ti.len() == 24 && dihedral_witness(&ti).is_some();
    let plr_dihedral = plr.len() == 24 && dihedral_witness(&plr).is_some();
    GroupProperties {
        ti_order: ti.len(),
        plr_order: plr.len(),
        dual_commute,
        ti_simply_transitive: is_simply_transitive(&ti),
        plr_simply_transitive: is_simply_transitive(&plr),
        ti_dihedral,
        plr_dihedral,
        isomorphic: ti_dihedral && plr_dihedral,
    }
}

/// The major cadence {IV, V} of a key and its image {ii, iii} under R.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CadenceTransform {
    pub tonic: Triad,
    pub relative: Triad,
    /// `T5(I)`, `T7(I)`
    pub major_cadence: [Triad; 2],
    /// `R(T5(I))`, `R(T7(I))`
    pub minor_cadence: [Triad; 2],
}

impl CadenceTransform {
    /// Both squares `R∘T_n = T_n∘R` (n = 5, 7) close at the corners.
    pub fn diagram_closes(&self) -> bool {
        [5u8, 7].iter().enumerate().all(|(i, &n)| {
            let t = Transform::T(PitchClass::new(n));
            let down_then_across = t.apply(Transform::R.apply(self.tonic));
            let across_then_down = Transform::R.apply(t.apply(self.tonic));
            down_then_across == across_then_down
                && across_then_down == self.minor_cadence[i]
                && t.apply(self.relative) == self.minor_cadence[i]
        })
    }
}

pub fn cadence_transform(major_tonic: PitchClass) -> CadenceTransform {
    let tonic = Triad::major(major_tonic);
    let t5 = Transform::T(PitchClass::new(5)).apply(tonic);
    let t7 = Transform::T(PitchClass::new(7)).apply(tonic);
    CadenceTransform {
        tonic,
        relative: Transform::R.apply(tonic),
        major_cadence: [t5, t7],
        minor_cadence: [Transform::R.apply(t5), Transform::R.apply(t7)],
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tr(s: &str) -> Triad {
        s.parse().unwrap()
    }

    fn t(n: u8) -> Transform {
        Transform::T(PitchClass::new(n))
    }

    #[test]
    fn twenty_four_distinct_triads() {
        let sets: std::collections::BTreeSet<PcSet> = Triad::all().map(Triad::pitch_set).collect();
        assert_eq!(sets.len(), 24);
        for triad in Triad::all() {
            assert_eq!(Triad::from_pitch_set(triad.pitch_set()), Some(triad));
            assert_eq!(Triad::from_index(triad.index()), triad);
        }
    }

    #[test]
    fn ti_examples() {
        assert_eq!(t(7).apply(tr("C")), tr("G"));
        for triad in Triad::all() {
            assert_eq!(t(0).apply(triad), triad);
        }
        assert_eq!(Transform::I(PitchClass::ZERO).apply(tr("C")), tr("f"));
    }

    #[test]
    fn plr_examples() {
        assert_eq!(Transform::P.apply(tr("F")), tr("f"));
        assert_eq!(Transform::L.apply(tr("C")), tr("e"));
        assert_eq!(Transform::R.apply(tr("C")), tr("a"));
        assert_eq!(Transform::R.apply(tr("a")), tr("C"));
    }

    #[test]
    fn plr_preserve_two_common_tones() {
        for triad in Triad::all() {
            for op in [Transform::P, Transform::L, Transform::R] {
                let image = op.apply(triad);
                assert_ne!(image.mode, triad.mode);
                assert_eq!(image.pitch_set().intersection(triad.pitch_set()).len(), 2);
                assert_eq!(op.apply(image), triad);
            }
        }
    }

    #[test]
    fn word_examples() {
        let c = tr("C");
        assert_eq!("R,T7".parse::<Word>().unwrap().apply(c), tr("e"));
        assert_eq!("R,T5".parse::<Word>().unwrap().apply(c), tr("d"));
        assert_eq!("T7,R".parse::<Word>().unwrap().apply(c), tr("e"));
        for triad in Triad::all() {
            assert_eq!("P,P".parse::<Word>().unwrap().apply(triad), triad);
        }
    }

    #[test]
    fn words_act_in_reading_order() {
        // P then L: C → c → Ab; L then P: C → e → E
        assert_eq!("P,L".parse::<Word>().unwrap().apply(tr("C")), tr("Ab"));
        assert_eq!("L,P".parse::<Word>().unwrap().apply(tr("C")), tr("E"));
    }

    #[test]
    fn group_orders_by_closure() {
        assert_eq!(plr_group().len(), 24);
        assert_eq!(ti_group().len(), 24);
    }

    #[test]
    fn plr_commutes_with_transposition_and_inversion() {
        for n in PitchClass::all() {
            for op in [Transform::P, Transform::L, Transform::R] {
                for ti in [Transform::T(n), Transform::I(n)] {
                    assert_eq!(ti.permutation().compose(&op.permutation()), op.permutation().compose(&ti.permutation()));
                }
            }
        }
    }

    #[test]
    fn all_group_properties_hold() {
        let props = verify_group_properties();
        assert_eq!(props.ti_order, 24);
        assert_eq!(props.plr_order, 24);
        assert!(props.dual_commute);
        assert!(props.ti_simply_transitive);
        assert!(props.plr_simply_transitive);
        assert!(props.isomorphic);
        assert!(props.all_hold());
    }

    #[test]
    fn cyclic_group_is_not_dihedral() {
        let t1 = t(1).permutation();
        let cyclic = generate_group(&[t1]);
        assert_eq!(cyclic.len(), 12);
        assert!(dihedral_witness(&cyclic).is_none());
        assert!(!is_simply_transitive(&cyclic));
    }

    #[test]
    fn cadence_transform_examples() {
        let c = cadence_transform(PitchClass::new(0));
        assert_eq!(c.major_cadence, [tr("F"), tr("G")]);
        assert_eq!(c.minor_cadence, [tr("d"), tr("e")]);
        assert_eq!(c.relative, tr("a"));
        assert!(c.diagram_closes());

        let bb = cadence_transform(PitchClass::new(10));
        assert_eq!(bb.major_cadence, [tr("Eb"), tr("F")]);
        assert_eq!(bb.minor_cadence, [tr("c"), tr("d")]);
        assert_eq!(bb.relative, tr("g"));
        assert!(bb.diagram_closes());

        for n in PitchClass::all() {
            let ct = cadence_transform(n);
            let back = ct.minor_cadence.map(|x| Transform::R.apply(x));
            assert_eq!(back, ct.major_cadence);
        }
    }

    #[test]
    fn text_forms() {
        assert_eq!(tr("F#"), Triad::major(6));
        assert_eq!(tr("f#"), Triad::minor(6));
        assert_eq!(tr("bb"), Triad::minor(10));
        assert_eq!(tr("Bb").to_string(), "Bb");
        assert_eq!(tr("deg:II@D"), tr("e"));
        assert_eq!(tr("deg:IV@D"), tr("G"));
        assert!(matches!("deg:VII@A".parse::<Triad>(), Err(Error::Diminished(_))));
        assert_eq!("T7".parse::<Transform>().unwrap(), t(7));
        assert_eq!("I_3".parse::<Transform>().unwrap(), Transform::I(PitchClass::new(3)));
        assert!("Q".parse::<Transform>().is_err());
        assert_eq!("R,T7".parse::<Word>().unwrap().to_string(), "R,T7");
    }

    #[test]
    fn degree_bridge() {
        let c = Tonality::major(PitchClass::ZERO);
        assert_eq!(Triad::from_degree(&c, Degree::VI).unwrap(), tr("a"));
        assert!(Triad::from_degree(&c, Degree::VII).is_err());
    }
}
