//! Arithmetic in Z/12Z and its 48-element affine group.
//!
//! Pitch classes and intervals are residues mod 12. Sets of them are 12-bit
//! masks, so every symmetry question reduces to a scan of the 48 maps
//! `x ↦ u·x + t` with `u ∈ {1, 5, 7, 11}`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use crate::error::{Error, Result};

/// The units of Z/12Z. Each one is its own inverse.
pub const UNITS: [u8; 4] = [1, 5, 7, 11];

/// A residue class mod 12.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct PitchClass(u8);

impl PitchClass {
    pub const ZERO: PitchClass = PitchClass(0);

    pub const fn new(value: u8) -> Self {
        PitchClass(value % 12)
    }

    /// Reduces any integer, negative ones included.
    pub fn from_int(value: i64) -> Self {
        PitchClass(value.rem_euclid(12) as u8)
    }

    pub const fn value(self) -> u8 {
        self.0
    }

    pub fn is_unit(self) -> bool {
        UNITS.contains(&self.0)
    }

    /// All twelve residues in ascending order.
    pub fn all() -> impl Iterator<Item = PitchClass> {
        (0..12).map(PitchClass)
    }
}

impl From<u8> for PitchClass {
    fn from(value: u8) -> Self {
        PitchClass::new(value)
    }
}

impl Add for PitchClass {
    type Output = PitchClass;
    fn add(self, rhs: PitchClass) -> PitchClass {
        PitchClass((self.0 + rhs.0) % 12)
    }
}

impl Sub for PitchClass {
    type Output = PitchClass;
    fn sub(self, rhs: PitchClass) -> PitchClass {
        PitchClass((self.0 + 12 - rhs.0) % 12)
    }
}

impl Mul for PitchClass {
    type Output = PitchClass;
    fn mul(self, rhs: PitchClass) -> PitchClass {
        PitchClass((self.0 * rhs.0) % 12)
    }
}

impl Neg for PitchClass {
    type Output = PitchClass;
    fn neg(self) -> PitchClass {
        PitchClass((12 - self.0) % 12)
    }
}

impl fmt::Display for PitchClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl FromStr for PitchClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let v: i64 = s
            .trim()
            .parse()
            .map_err(|_| Error::parse("pitch class", s, "expected an integer"))?;
        Ok(PitchClass::from_int(v))
    }
}

/// Spelling used when printing pitch classes as note names.
pub const NOTE_NAMES: [&str; 12] = ["C", "C#", "D", "Eb", "E", "F", "F#", "G", "G#", "A", "Bb", "B"];

pub fn note_name(pc: PitchClass) -> &'static str {
    NOTE_NAMES[pc.value() as usize]
}

/// Parses a note name such as `C`, `F#`, `Bb`, `E♭` or `c♯` (case-insensitive).
pub fn parse_note_name(s: &str) -> Result<PitchClass> {
    let t = s.trim();
    let mut chars = t.chars();
    let letter = chars
        .next()
        .ok_or_else(|| Error::parse("note name", s, "empty"))?;
    let base: i64 = match letter.to_ascii_uppercase() {
        'C' => 0,
        'D' => 2,
        'E' => 4,
        'F' => 5,
        'G' => 7,
        'A' => 9,
        'B' => 11,
        _ => return Err(Error::parse("note name", s, "expected a letter A-G")),
    };
    let mut offset = 0i64;
    for c in chars {
        match c {
            '#' | '♯' => offset += 1,
            'b' | '♭' => offset -= 1,
            _ => return Err(Error::parse("note name", s, format!("unexpected {c:?}"))),
        }
    }
    Ok(PitchClass::from_int(base + offset))
}

/// A set of pitch classes, stored as a 12-bit mask (bit `i` = residue `i`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct PcSet(u16);

impl PcSet {
    pub const EMPTY: PcSet = PcSet(0);
    pub const FULL: PcSet = PcSet(0x0fff);

    pub const fn from_mask(mask: u16) -> Self {
        PcSet(mask & 0x0fff)
    }

    pub const fn mask(self) -> u16 {
        self.0
    }

    pub fn from_values(values: &[u8]) -> Self {
        values.iter().map(|&v| PitchClass::new(v)).collect()
    }

    pub fn singleton(pc: PitchClass) -> Self {
        PcSet(1 << pc.value())
    }

    pub fn contains(self, pc: PitchClass) -> bool {
        self.0 & (1 << pc.value()) != 0
    }

    pub fn insert(&mut self, pc: PitchClass) {
        self.0 |= 1 << pc.value();
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: PcSet) -> PcSet {
        PcSet(self.0 | other.0)
    }

    pub fn intersection(self, other: PcSet) -> PcSet {
        PcSet(self.0 & other.0)
    }

    pub fn difference(self, other: PcSet) -> PcSet {
        PcSet(self.0 & !other.0)
    }

    pub fn complement(self) -> PcSet {
        PcSet(!self.0 & 0x0fff)
    }

    pub fn is_subset(self, other: PcSet) -> bool {
        self.0 & !other.0 == 0
    }

    /// Every element shifted by `n`.
    pub fn transpose(self, n: PitchClass) -> PcSet {
        AffineMap::translation(n).apply_set(self)
    }

    /// Members in ascending order.
    pub fn iter(self) -> impl Iterator<Item = PitchClass> {
        (0..12u8)
            .filter(move |i| self.0 & (1 << i) != 0)
            .map(PitchClass)
    }

    pub fn values(self) -> Vec<u8> {
        self.iter().map(PitchClass::value).collect()
    }

    /// All 4096 subsets of Z/12Z, in mask order.
    pub fn all_subsets() -> impl Iterator<Item = PcSet> {
        (0u16..4096).map(PcSet)
    }
}

impl FromIterator<PitchClass> for PcSet {
    fn from_iter<I: IntoIterator<Item = PitchClass>>(iter: I) -> Self {
        let mut set = PcSet::EMPTY;
        for pc in iter {
            set.insert(pc);
        }
        set
    }
}

impl fmt::Display for PcSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for pc in self.iter() {
            if !first {
                f.write_str(",")?;
            }
            first = false;
            write!(f, "{pc}")?;
        }
        Ok(())
    }
}

impl FromStr for PcSet {
    type Err = Error;

    /// Comma-separated residues. Surrounding braces and `|` separators are
    /// tolerated; the empty string is the empty set.
    fn from_str(s: &str) -> Result<Self> {
        let body = s.trim().trim_start_matches('{').trim_end_matches('}').trim();
        if body.is_empty() {
            return Ok(PcSet::EMPTY);
        }
        body.split([',', '|'])
            .map(|tok| {
                let tok = tok.trim();
                let v: u8 = tok
                    .parse()
                    .map_err(|_| Error::parse("pitch-class set", s, format!("bad residue {tok:?}")))?;
                if v > 11 {
                    return Err(Error::parse("pitch-class set", s, format!("{v} is not in 0..=11")));
                }
                Ok(PitchClass(v))
            })
            .collect()
    }
}

/// The affine map `x ↦ scale·x + shift` on Z/12Z, written `e^shift·scale`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AffineMap {
    shift: PitchClass,
    scale: PitchClass,
}

impl AffineMap {
    pub const IDENTITY: AffineMap = AffineMap {
        shift: PitchClass(0),
        scale: PitchClass(1),
    };

    pub fn new(shift: impl Into<PitchClass>, scale: impl Into<PitchClass>) -> Result<Self> {
        let scale = scale.into();
        if !scale.is_unit() {
            return Err(Error::NotUnit(scale.value()));
        }
        Ok(AffineMap {
            shift: shift.into(),
            scale,
        })
    }

    pub fn translation(n: PitchClass) -> Self {
        AffineMap {
            shift: n,
            scale: PitchClass(1),
        }
    }

    /// `x ↦ n − x`
    pub fn inversion(n: PitchClass) -> Self {
        AffineMap {
            shift: n,
            scale: PitchClass(11),
        }
    }

    pub fn shift(self) -> PitchClass {
        self.shift
    }

    pub fn scale(self) -> PitchClass {
        self.scale
    }

    /// The whole group, ordered by shift then scale.
    pub fn all() -> impl Iterator<Item = AffineMap> {
        (0..12u8).flat_map(|t| {
            UNITS.iter().map(move |&u| AffineMap {
                shift: PitchClass(t),
                scale: PitchClass(u),
            })
        })
    }

    pub fn apply(self, x: PitchClass) -> PitchClass {
        self.scale * x + self.shift
    }

    pub fn apply_set(self, set: PcSet) -> PcSet {
        set.iter().map(|x| self.apply(x)).collect()
    }

    /// `self ∘ other`: `other` acts first.
    pub fn compose(self, other: AffineMap) -> AffineMap {
        AffineMap {
            shift: self.scale * other.shift + self.shift,
            scale: self.scale * other.scale,
        }
    }

    pub fn inverse(self) -> AffineMap {
        // units of Z/12Z square to 1
        AffineMap {
            shift: -(self.scale * self.shift),
            scale: self.scale,
        }
    }

    /// `by ∘ self ∘ by⁻¹`
    pub fn conjugate_by(self, by: AffineMap) -> AffineMap {
        by.compose(self).compose(by.inverse())
    }

    pub fn is_identity(self) -> bool {
        self == AffineMap::IDENTITY
    }

    /// Display form using the `-1` alias for scale 11, e.g. `e6*-1`.
    pub fn signed(self) -> String {
        if self.scale.value() == 11 {
            format!("e{}*-1", self.shift)
        } else {
            self.to_string()
        }
    }
}

impl Default for AffineMap {
    fn default() -> Self {
        AffineMap::IDENTITY
    }
}

impl fmt::Display for AffineMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}*{}", self.shift, self.scale)
    }
}

impl FromStr for AffineMap {
    type Err = Error;

    /// Accepts `e<t>*<u>` with `u` in {1,5,7,11} or `-1`, e.g. `e6*11`, `e6*-1`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let rest = t
            .strip_prefix('e')
            .ok_or_else(|| Error::parse("affine map", s, "expected leading 'e'"))?;
        let (shift, scale) = rest
            .split_once('*')
            .ok_or_else(|| Error::parse("affine map", s, "expected '*' between shift and scale"))?;
        let shift: i64 = shift
            .trim()
            .parse()
            .map_err(|_| Error::parse("affine map", s, "bad shift"))?;
        let scale: i64 = scale
            .trim()
            .parse()
            .map_err(|_| Error::parse("affine map", s, "bad scale"))?;
        AffineMap::new(PitchClass::from_int(shift), PitchClass::from_int(scale))
    }
}

/// Every affine map fixing `set` setwise. Always contains the identity.
pub fn stabilizer(set: PcSet) -> Vec<AffineMap> {
    AffineMap::all().filter(|m| m.apply_set(set) == set).collect()
}

/// A set is rigid when its only affine symmetry is the identity.
pub fn is_rigid(set: PcSet) -> bool {
    AffineMap::all()
        .filter(|m| !m.is_identity())
        .all(|m| m.apply_set(set) != set)
}

/// An ordered 6/6 partition of Z/12Z. Orientation matters: `(K/D)` and
/// `(D/K)` are different dichotomies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Dichotomy {
    half: PcSet,
}

impl Dichotomy {
    /// Consonances {0,3,4,7,8,9} over dissonances.
    pub const CONSONANCE: Dichotomy = Dichotomy {
        half: PcSet(0b0011_1001_1001),
    };

    pub fn new(half: PcSet) -> Result<Self> {
        if half.len() != 6 {
            return Err(Error::DichotomySize(half.len()));
        }
        Ok(Dichotomy { half })
    }

    pub fn half(self) -> PcSet {
        self.half
    }

    pub fn complement(self) -> PcSet {
        self.half.complement()
    }

    /// Image of the dichotomy under `m`, orientation preserved.
    pub fn map(self, m: AffineMap) -> Dichotomy {
        Dichotomy {
            half: m.apply_set(self.half),
        }
    }

    /// All maps carrying the half onto its complement.
    pub fn polarities(self) -> Vec<AffineMap> {
        let target = self.complement();
        AffineMap::all()
            .filter(|m| m.apply_set(self.half) == target)
            .collect()
    }

    pub fn is_strong(self) -> bool {
        self.polarities().len() == 1
    }
}

impl fmt::Display for Dichotomy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({{{}}}/{{{}}})", self.half, self.complement())
    }
}
