//! Algebraic music analysis over Z/12Z.
//!
//! - [`pitch`]: residues mod 12, the 48 affine maps, rigidity and dichotomies.
//! - [`dual`]: dual numbers `x + ε.y` and the affine symmetries of the dual plane.
//! - [`counterpoint`]: counterpoint symmetries, admissible successors and
//!   the successor-count sweep over all 72 consonances.
//! - [`modulation`]: major tonalities as triad coverings, cadential sets,
//!   modulators and minimal modulation quanta.
//! - [`neo_riemannian`]: the 24 triads under the TI and PLR groups.
//! - [`score`]: input formats, chord labelling, the embedded fixture corpus
//!   and report rendering.

pub mod counterpoint;
pub mod dual;
pub mod error;
pub mod modulation;
pub mod neo_riemannian;
pub mod pitch;
pub mod score;

pub use counterpoint::{CounterpointInterval, CounterpointWorld, PolarityVariant};
pub use dual::{DualNumber, DualSet, DualSymmetry};
pub use error::{Error, Result};
pub use pitch::{AffineMap, Dichotomy, PcSet, PitchClass};

/// Serialize a type through its `Display` form and deserialize through `FromStr`.
macro_rules! serde_as_string {
    ($($ty:ty),* $(,)?) => {$(
        impl serde::Serialize for $ty {
            fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
                serializer.collect_str(self)
            }
        }

        impl<'de> serde::Deserialize<'de> for $ty {
            fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
                let s = String::deserialize(deserializer)?;
                s.parse().map_err(serde::de::Error::custom)
            }
        }
    )*};
}

serde_as_string!(
    PitchClass,
    PcSet,
    AffineMap,
    DualNumber,
    DualSymmetry,
    CounterpointInterval,
    modulation::Degree,
    modulation::CadenceLabel,
    neo_riemannian::Triad,
    neo_riemannian::Transform,
);
