//! Dual numbers over Z/12Z and the affine symmetries of the dual plane.
//!
//! A dual number `x + ε.y` is a counterpoint interval: cantus pitch class `x`
//! and the interval `y` of the upper voice above it. The plane has 144 points,
//! so sets of intervals are kept as 144-bit masks.

use std::fmt;
use std::ops::{Add, Mul};
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::pitch::{PcSet, PitchClass, UNITS};

/// `base + ε.eps`, with `ε² = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct DualNumber {
    pub base: PitchClass,
    pub eps: PitchClass,
}

impl DualNumber {
    pub fn new(base: impl Into<PitchClass>, eps: impl Into<PitchClass>) -> Self {
        DualNumber {
            base: base.into(),
            eps: eps.into(),
        }
    }

    /// Position in the 144-point plane, cantus-major.
    pub fn index(self) -> usize {
        self.base.value() as usize * 12 + self.eps.value() as usize
    }

    pub fn from_index(index: usize) -> Self {
        debug_assert!(index < 144);
        DualNumber::new((index / 12) as u8, (index % 12) as u8)
    }

    /// All 144 points in index order.
    pub fn all() -> impl Iterator<Item = DualNumber> {
        (0..144).map(DualNumber::from_index)
    }

    pub fn is_unit(self) -> bool {
        self.base.is_unit()
    }

    /// Printed with a real epsilon, e.g. `0+ε.7`.
    pub fn pretty(self) -> String {
        format!("{}+ε.{}", self.base, self.eps)
    }
}

impl Add for DualNumber {
    type Output = DualNumber;
    fn add(self, rhs: DualNumber) -> DualNumber {
        DualNumber {
            base: self.base + rhs.base,
            eps: self.eps + rhs.eps,
        }
    }
}

impl Mul for DualNumber {
    type Output = DualNumber;
    fn mul(self, rhs: DualNumber) -> DualNumber {
        DualNumber {
            base: self.base * rhs.base,
            eps: self.base * rhs.eps + self.eps * rhs.base,
        }
    }
}

impl fmt::Display for DualNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}+e.{}", self.base, self.eps)
    }
}

impl FromStr for DualNumber {
    type Err = Error;

    /// `<x>+e.<y>`; `ε` is accepted for `e` and whitespace is ignored.
    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let compact = compact.replace('ε', "e");
        let (base, eps) = compact
            .split_once("+e.")
            .ok_or_else(|| Error::parse("dual number", s, "expected <x>+e.<y>"))?;
        let base: i64 = base
            .parse()
            .map_err(|_| Error::parse("dual number", s, "bad cantus part"))?;
        let eps: i64 = eps
            .parse()
            .map_err(|_| Error::parse("dual number", s, "bad interval part"))?;
        Ok(DualNumber::new(PitchClass::from_int(base), PitchClass::from_int(eps)))
    }
}

/// The affine map `ξ ↦ (u + ε.v)·ξ + (w + ε.t)` of the dual plane, so
/// `(x + ε.y) ↦ (u·x + w) + ε.(v·x + u·y + t)`.
///
/// `u` must be a unit of Z/12Z. The symmetries with no cantus translation
/// (`w = 0`) form the subgroup H, written `e^{ε.t}∘(u + ε.v)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DualSymmetry {
    cantus_shift: PitchClass,
    eps_shift: PitchClass,
    scale_u: PitchClass,
    scale_v: PitchClass,
}

impl DualSymmetry {
    pub const IDENTITY: DualSymmetry = DualSymmetry {
        cantus_shift: PitchClass::ZERO,
        eps_shift: PitchClass::ZERO,
        scale_u: PitchClass::new(1),
        scale_v: PitchClass::ZERO,
    };

    /// General form with a cantus translation `w`.
    pub fn new(
        cantus_shift: impl Into<PitchClass>,
        eps_shift: impl Into<PitchClass>,
        scale_u: impl Into<PitchClass>,
        scale_v: impl Into<PitchClass>,
    ) -> Result<Self> {
        let scale_u = scale_u.into();
        if !scale_u.is_unit() {
            return Err(Error::NotUnit(scale_u.value()));
        }
        Ok(DualSymmetry {
            cantus_shift: cantus_shift.into(),
            eps_shift: eps_shift.into(),
            scale_u,
            scale_v: scale_v.into(),
        })
    }

    /// `e^{ε.t}∘(u + ε.v)`, an element of H.
    pub fn in_h(
        eps_shift: impl Into<PitchClass>,
        scale_u: impl Into<PitchClass>,
        scale_v: impl Into<PitchClass>,
    ) -> Result<Self> {
        DualSymmetry::new(PitchClass::ZERO, eps_shift, scale_u, scale_v)
    }

    /// Pure cantus translation `x ↦ x + n`.
    pub fn cantus_translation(n: PitchClass) -> Self {
        DualSymmetry {
            cantus_shift: n,
            ..DualSymmetry::IDENTITY
        }
    }

    pub fn cantus_shift(self) -> PitchClass {
        self.cantus_shift
    }

    pub fn eps_shift(self) -> PitchClass {
        self.eps_shift
    }

    pub fn scale_u(self) -> PitchClass {
        self.scale_u
    }

    pub fn scale_v(self) -> PitchClass {
        self.scale_v
    }

    /// Multiplicative part `u + ε.v`.
    pub fn scale(self) -> DualNumber {
        DualNumber {
            base: self.scale_u,
            eps: self.scale_v,
        }
    }

    /// Additive part `w + ε.t`.
    pub fn translation(self) -> DualNumber {
        DualNumber {
            base: self.cantus_shift,
            eps: self.eps_shift,
        }
    }

    pub fn is_in_h(self) -> bool {
        self.cantus_shift == PitchClass::ZERO
    }

    pub fn apply(self, xi: DualNumber) -> DualNumber {
        let (u, v) = (self.scale_u, self.scale_v);
        DualNumber {
            base: u * xi.base + self.cantus_shift,
            eps: v * xi.base + u * xi.eps + self.eps_shift,
        }
    }

    /// `self ∘ other`: `other` acts first.
    pub fn compose(self, other: DualSymmetry) -> DualSymmetry {
        let (ua, va, wa, ta) = (self.scale_u, self.scale_v, self.cantus_shift, self.eps_shift);
        let (ub, vb, wb, tb) = (other.scale_u, other.scale_v, other.cantus_shift, other.eps_shift);
        DualSymmetry {
            cantus_shift: ua * wb + wa,
            eps_shift: va * wb + ua * tb + ta,
            scale_u: ua * ub,
            scale_v: va * ub + ua * vb,
        }
    }

    pub fn inverse(self) -> DualSymmetry {
        let (u, v, w, t) = (self.scale_u, self.scale_v, self.cantus_shift, self.eps_shift);
        DualSymmetry {
            cantus_shift: -(u * w),
            eps_shift: v * w - u * t,
            scale_u: u,
            scale_v: -v,
        }
    }

    /// `by ∘ self ∘ by⁻¹`
    pub fn conjugate_by(self, by: DualSymmetry) -> DualSymmetry {
        by.compose(self).compose(by.inverse())
    }

    pub fn image(self, set: &DualSet) -> DualSet {
        set.iter().map(|xi| self.apply(xi)).collect()
    }

    /// Exponential notation, e.g. `e^{ε.6}∘(7+ε.6)` or `e^{ε.0}∘7`.
    pub fn pretty(self) -> String {
        let shift = if self.is_in_h() {
            format!("ε.{}", self.eps_shift)
        } else {
            format!("{}+ε.{}", self.cantus_shift, self.eps_shift)
        };
        if self.scale_v == PitchClass::ZERO {
            format!("e^{{{shift}}}∘{}", self.scale_u)
        } else {
            format!("e^{{{shift}}}∘({}+ε.{})", self.scale_u, self.scale_v)
        }
    }
}

impl Default for DualSymmetry {
    fn default() -> Self {
        DualSymmetry::IDENTITY
    }
}

impl fmt::Display for DualSymmetry {
    /// `e[t]*(u+ve)` for elements of H, `e<w>[t]*(u+ve)` otherwise.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("e")?;
        if !self.is_in_h() {
            write!(f, "{}", self.cantus_shift)?;
        }
        write!(
            f,
            "[{}]*({}+{}e)",
            self.eps_shift, self.scale_u, self.scale_v
        )
    }
}

impl FromStr for DualSymmetry {
    type Err = Error;

    /// Accepts the canonical form plus the short `e[t]*u` when `v = 0`.
    fn from_str(s: &str) -> Result<Self> {
        let err = |reason: &str| Error::parse("dual symmetry", s, reason);
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let rest = compact.strip_prefix('e').ok_or_else(|| err("expected leading 'e'"))?;
        let open = rest.find('[').ok_or_else(|| err("expected '['"))?;
        let close = rest.find(']').ok_or_else(|| err("expected ']'"))?;
        if close < open {
            return Err(err("mismatched brackets"));
        }
        let w = if open == 0 {
            0
        } else {
            rest[..open].parse::<i64>().map_err(|_| err("bad cantus shift"))?
        };
        let t: i64 = rest[open + 1..close].parse().map_err(|_| err("bad shift"))?;
        let scale = rest[close + 1..]
            .strip_prefix('*')
            .ok_or_else(|| err("expected '*' after the shift"))?;
        let (u, v) = if let Some(inner) = scale.strip_prefix('(').and_then(|x| x.strip_suffix(')')) {
            let (u, v) = inner.split_once('+').ok_or_else(|| err("expected (u+ve)"))?;
            let v = v.strip_suffix('e').ok_or_else(|| err("expected trailing 'e' on v"))?;
            let u: i64 = u.parse().map_err(|_| err("bad u"))?;
            let v: i64 = v.parse().map_err(|_| err("bad v"))?;
            (u, v)
        } else {
            (scale.parse::<i64>().map_err(|_| err("bad u"))?, 0)
        };
        DualSymmetry::new(
            PitchClass::from_int(w),
            PitchClass::from_int(t),
            PitchClass::from_int(u),
            PitchClass::from_int(v),
        )
    }
}

/// The subgroup H: every `e^{ε.t}∘(u + ε.v)`, ordered by `(t, u, v)`.
pub fn enumerate_h() -> Vec<DualSymmetry> {
    let mut out = Vec::with_capacity(576);
    for t in 0..12u8 {
        for &u in &UNITS {
            for v in 0..12u8 {
                out.push(DualSymmetry {
                    cantus_shift: PitchClass::ZERO,
                    eps_shift: PitchClass::new(t),
                    scale_u: PitchClass::new(u),
                    scale_v: PitchClass::new(v),
                });
            }
        }
    }
    out
}

/// A subset of the 144-point dual plane.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct DualSet {
    bits: [u64; 3],
}

impl DualSet {
    pub const EMPTY: DualSet = DualSet { bits: [0; 3] };
    pub const FULL: DualSet = DualSet {
        bits: [u64::MAX, u64::MAX, (1u64 << 16) - 1],
    };

    /// `S[ε] = {x + ε.s : x ∈ Z/12Z, s ∈ S}`.
    pub fn lift(intervals: PcSet) -> Self {
        DualNumber::all()
            .filter(|xi| intervals.contains(xi.eps))
            .collect()
    }

    pub fn insert(&mut self, xi: DualNumber) {
        let i = xi.index();
        self.bits[i / 64] |= 1 << (i % 64);
    }

    pub fn contains(&self, xi: DualNumber) -> bool {
        let i = xi.index();
        self.bits[i / 64] & (1 << (i % 64)) != 0
    }

    pub fn len(&self) -> usize {
        self.bits.iter().map(|b| b.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.bits == [0; 3]
    }

    pub fn intersection(&self, other: &DualSet) -> DualSet {
        DualSet {
            bits: [
                self.bits[0] & other.bits[0],
                self.bits[1] & other.bits[1],
                self.bits[2] & other.bits[2],
            ],
        }
    }

    pub fn union(&self, other: &DualSet) -> DualSet {
        DualSet {
            bits: [
                self.bits[0] | other.bits[0],
                self.bits[1] | other.bits[1],
                self.bits[2] | other.bits[2],
            ],
        }
    }

    pub fn complement(&self) -> DualSet {
        DualSet {
            bits: [
                !self.bits[0] & DualSet::FULL.bits[0],
                !self.bits[1] & DualSet::FULL.bits[1],
                !self.bits[2] & DualSet::FULL.bits[2],
            ],
        }
    }

    pub fn is_subset(&self, other: &DualSet) -> bool {
        self.intersection(other) == *self
    }

    /// Members in index order (cantus, then interval).
    pub fn iter(&self) -> impl Iterator<Item = DualNumber> + '_ {
        (0..144usize)
            .filter(move |&i| self.bits[i / 64] & (1 << (i % 64)) != 0)
            .map(DualNumber::from_index)
    }

    /// Intervals sitting over the given cantus pitch class.
    pub fn fiber(&self, cantus: PitchClass) -> PcSet {
        PitchClass::all()
            .filter(|&y| self.contains(DualNumber { base: cantus, eps: y }))
            .collect()
    }

    pub fn translate_cantus(&self, n: PitchClass) -> DualSet {
        DualSymmetry::cantus_translation(n).image(self)
    }
}

impl FromIterator<DualNumber> for DualSet {
    fn from_iter<I: IntoIterator<Item = DualNumber>>(iter: I) -> Self {
        let mut set = DualSet::EMPTY;
        for xi in iter {
            set.insert(xi);
        }
        set
    }
}
