//! Counterpoint symmetries, admissible successors and the successor-count sweep.
//!
//! For a consonant interval ξ a counterpoint symmetry is an element `g` of H
//! such that
//!
//! 1. ξ lies in `g(D[ε])`;
//! 2. the (possibly localized) induced polarity carries `g(K[ε])` onto
//!    `g(D[ε])`, compared setwise over the whole plane;
//! 3. `|g(K[ε]) ∩ K[ε]|` is maximal among the symmetries passing 1 and 2.
//!
//! The consonances in `g(K[ε]) ∩ K[ε]` are the successors admitted by `g`.
//! H has 576 elements, so the search is a plain scan over precomputed images.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::dual::{enumerate_h, DualNumber, DualSet, DualSymmetry};
use crate::error::{Error, Result};
use crate::pitch::{Dichotomy, PitchClass};

/// Minimum successor count asserted for every consonance.
pub const LITTLE_THEOREM_BOUND: usize = 42;

/// How the induced polarity in condition 2 relates to the cantus of ξ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PolarityVariant {
    /// The induced polarity as is, at every cantus.
    Global,
    /// The induced polarity conjugated by the cantus translation of ξ
    /// (`e^{8x}∘π` for the standard polarity); the search still runs over H.
    Localized,
    /// ξ and its successors are translated so that ξ sits over cantus 0,
    /// the search runs there with the plain polarity, and symmetries are
    /// reported in that frame. This is the variant the published tables use.
    #[default]
    CantusFrame,
}

impl PolarityVariant {
    pub const ALL: [PolarityVariant; 3] = [
        PolarityVariant::Global,
        PolarityVariant::Localized,
        PolarityVariant::CantusFrame,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            PolarityVariant::Global => "global",
            PolarityVariant::Localized => "localized",
            PolarityVariant::CantusFrame => "cantus_frame",
        }
    }
}

impl fmt::Display for PolarityVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for PolarityVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().replace('-', "_").as_str() {
            "global" => Ok(PolarityVariant::Global),
            "localized" | "localised" | "local" => Ok(PolarityVariant::Localized),
            "cantus_frame" | "frame" => Ok(PolarityVariant::CantusFrame),
            _ => Err(Error::parse(
                "polarity variant",
                s,
                "expected global, localized or cantus_frame",
            )),
        }
    }
}

/// A two-voice interval `x + ε.y`. The `consonant` flag refers to the
/// standard consonances {0,3,4,7,8,9}.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CounterpointInterval {
    pub cantus: PitchClass,
    pub interval: PitchClass,
    pub consonant: bool,
}

impl CounterpointInterval {
    pub fn new(cantus: impl Into<PitchClass>, interval: impl Into<PitchClass>) -> Self {
        let interval = interval.into();
        CounterpointInterval {
            cantus: cantus.into(),
            interval,
            consonant: Dichotomy::CONSONANCE.half().contains(interval),
        }
    }

    pub fn point(self) -> DualNumber {
        DualNumber {
            base: self.cantus,
            eps: self.interval,
        }
    }
}

impl From<DualNumber> for CounterpointInterval {
    fn from(xi: DualNumber) -> Self {
        CounterpointInterval::new(xi.base, xi.eps)
    }
}

impl fmt::Display for CounterpointInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.point().fmt(f)
    }
}

impl FromStr for CounterpointInterval {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        s.parse::<DualNumber>().map(CounterpointInterval::from)
    }
}

/// The symmetries mediating one step of a two-voice progression.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransitionAnalysis {
    pub from: CounterpointInterval,
    pub to: CounterpointInterval,
    pub symmetries: Vec<DualSymmetry>,
    pub cardinality: usize,
}

/// Cardinality statistics over the transitions of a sequence.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Parsimony {
    pub min: usize,
    pub max: usize,
    pub mean: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SequenceAnalysis {
    pub transitions: Vec<TransitionAnalysis>,
    pub parsimony: Parsimony,
}

/// Successor counts for all 72 consonances.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremReport {
    pub variant: PolarityVariant,
    pub bound: usize,
    /// Ordered by cantus, then interval.
    pub counts: Vec<(CounterpointInterval, usize)>,
    pub below_bound: Vec<CounterpointInterval>,
}

impl TheoremReport {
    pub fn minimum(&self) -> usize {
        self.counts.iter().map(|(_, c)| *c).min().unwrap_or(0)
    }

    pub fn holds(&self) -> bool {
        self.below_bound.is_empty()
    }

    /// Counts for each consonant interval, indexed by cantus 0..12.
    pub fn by_interval(&self) -> BTreeMap<u8, [usize; 12]> {
        let mut out: BTreeMap<u8, [usize; 12]> = BTreeMap::new();
        for (xi, count) in &self.counts {
            out.entry(xi.interval.value()).or_insert([0; 12])[xi.cantus.value() as usize] = *count;
        }
        out
    }
}

#[derive(Debug, Clone)]
struct HImage {
    symmetry: DualSymmetry,
    consonant: DualSet,
    dissonant: DualSet,
    overlap: usize,
}

/// A dichotomy with its induced polarity, and the images of both halves of
/// the plane under every element of H.
#[derive(Debug, Clone)]
pub struct CounterpointWorld {
    dichotomy: Dichotomy,
    polarity: DualSymmetry,
    variant: PolarityVariant,
    consonances: DualSet,
    dissonances: DualSet,
    images: Vec<HImage>,
}

impl Default for CounterpointWorld {
    fn default() -> Self {
        CounterpointWorld::standard(PolarityVariant::default())
    }
}

impl CounterpointWorld {
    /// `e^{ε.2}∘5`, the lift of the consonance polarity `x ↦ 5x + 2`.
    pub fn standard_polarity() -> DualSymmetry {
        DualSymmetry::in_h(2, 5, 0).expect("5 is a unit")
    }

    pub fn standard(variant: PolarityVariant) -> Self {
        CounterpointWorld::new(Dichotomy::CONSONANCE, CounterpointWorld::standard_polarity(), variant)
            .expect("e^{ε.2}∘5 is a polarity of K[ε]/D[ε]")
    }

    /// Lifts the unique polarity of a strong dichotomy to the plane.
    pub fn for_dichotomy(dichotomy: Dichotomy, variant: PolarityVariant) -> Result<Self> {
        let polarities = dichotomy.polarities();
        let p = match polarities.as_slice() {
            [p] => *p,
            _ => return Err(Error::NoPolarity(dichotomy.to_string())),
        };
        let lifted = DualSymmetry::in_h(p.shift(), p.scale(), 0)?;
        CounterpointWorld::new(dichotomy, lifted, variant)
    }

    pub fn new(dichotomy: Dichotomy, polarity: DualSymmetry, variant: PolarityVariant) -> Result<Self> {
        let consonances = DualSet::lift(dichotomy.half());
        let dissonances = DualSet::lift(dichotomy.complement());
        if polarity.image(&consonances) != dissonances {
            return Err(Error::NotAPolarity {
                polarity: polarity.pretty(),
            });
        }
        let images = enumerate_h()
            .into_iter()
            .map(|g| {
                let consonant = g.image(&consonances);
                HImage {
                    symmetry: g,
                    overlap: consonant.intersection(&consonances).len(),
                    consonant,
                    dissonant: g.image(&dissonances),
                }
            })
            .collect();
        Ok(CounterpointWorld {
            dichotomy,
            polarity,
            variant,
            consonances,
            dissonances,
            images,
        })
    }

    pub fn dichotomy(&self) -> Dichotomy {
        self.dichotomy
    }

    pub fn polarity(&self) -> DualSymmetry {
        self.polarity
    }

    pub fn variant(&self) -> PolarityVariant {
        self.variant
    }

    pub fn consonances(&self) -> &DualSet {
        &self.consonances
    }

    pub fn dissonances(&self) -> &DualSet {
        &self.dissonances
    }

    pub fn is_consonant(&self, xi: CounterpointInterval) -> bool {
        self.consonances.contains(xi.point())
    }

    /// Map into the frame the search runs in: translation by `−x` under the
    /// cantus-frame variant, identity otherwise.
    pub fn frame(&self, xi: CounterpointInterval) -> DualSymmetry {
        match self.variant {
            PolarityVariant::CantusFrame => DualSymmetry::cantus_translation(-xi.cantus),
            _ => DualSymmetry::IDENTITY,
        }
    }

    /// The polarity condition 2 is checked against, inside the search frame.
    pub fn polarity_at(&self, xi: CounterpointInterval) -> DualSymmetry {
        match self.variant {
            PolarityVariant::Localized => self
                .polarity
                .conjugate_by(DualSymmetry::cantus_translation(xi.cantus)),
            _ => self.polarity,
        }
    }

    /// A symmetry found for ξ, as it acts on the untranslated plane.
    pub fn located(&self, xi: CounterpointInterval, g: DualSymmetry) -> DualSymmetry {
        let frame = self.frame(xi);
        frame.inverse().compose(g).compose(frame)
    }

    fn check_consonant(&self, xi: CounterpointInterval) -> Result<()> {
        if self.is_consonant(xi) {
            Ok(())
        } else {
            Err(Error::Dissonant(xi.to_string()))
        }
    }

    fn search(&self, xi: CounterpointInterval) -> Vec<&HImage> {
        let at = self.frame(xi).apply(xi.point());
        let polarity = self.polarity_at(xi);
        let survivors: Vec<&HImage> = self
            .images
            .iter()
            .filter(|img| img.dissonant.contains(at))
            .filter(|img| polarity.image(&img.consonant) == img.dissonant)
            .collect();
        let best = survivors.iter().map(|img| img.overlap).max().unwrap_or(0);
        survivors.into_iter().filter(|img| img.overlap == best).collect()
    }

    /// All counterpoint symmetries at ξ, in `(t, u, v)` order.
    pub fn counterpoint_symmetries(&self, xi: CounterpointInterval) -> Result<Vec<DualSymmetry>> {
        self.check_consonant(xi)?;
        Ok(self.search(xi).into_iter().map(|img| img.symmetry).collect())
    }

    /// Whether `g`, found at ξ, admits η as a successor.
    pub fn admits(&self, xi: CounterpointInterval, g: DualSymmetry, eta: CounterpointInterval) -> bool {
        let at = self.frame(xi).apply(eta.point());
        g.image(&self.consonances).contains(at) && self.consonances.contains(eta.point())
    }

    pub fn transition_symmetries(
        &self,
        from: CounterpointInterval,
        to: CounterpointInterval,
    ) -> Result<TransitionAnalysis> {
        self.check_consonant(from)?;
        self.check_consonant(to)?;
        let at = self.frame(from).apply(to.point());
        let symmetries: Vec<DualSymmetry> = self
            .search(from)
            .into_iter()
            .filter(|img| img.consonant.contains(at))
            .map(|img| img.symmetry)
            .collect();
        Ok(TransitionAnalysis {
            from,
            to,
            cardinality: symmetries.len(),
            symmetries,
        })
    }

    /// Union of `g(K[ε]) ∩ K[ε]` over the counterpoint symmetries at ξ,
    /// in plane coordinates.
    pub fn successor_set(&self, xi: CounterpointInterval) -> Result<DualSet> {
        self.check_consonant(xi)?;
        let back = self.frame(xi).inverse();
        let in_frame = self
            .search(xi)
            .into_iter()
            .fold(DualSet::EMPTY, |acc, img| {
                acc.union(&img.consonant.intersection(&self.consonances))
            });
        Ok(back.image(&in_frame))
    }

    pub fn admissible_successors(&self, xi: CounterpointInterval) -> Result<Vec<CounterpointInterval>> {
        Ok(self
            .successor_set(xi)?
            .iter()
            .map(CounterpointInterval::from)
            .collect())
    }

    pub fn analyze_sequence(&self, sequence: &[CounterpointInterval]) -> Result<SequenceAnalysis> {
        if sequence.len() < 2 {
            return Err(Error::SequenceTooShort(sequence.len()));
        }
        if let Some((index, xi)) = sequence.iter().enumerate().find(|(_, xi)| !self.is_consonant(**xi)) {
            return Err(Error::DissonantInSequence {
                index: index + 1,
                interval: xi.to_string(),
            });
        }
        let transitions = sequence
            .windows(2)
            .map(|pair| self.transition_symmetries(pair[0], pair[1]))
            .collect::<Result<Vec<_>>>()?;
        let cards: Vec<usize> = transitions.iter().map(|t| t.cardinality).collect();
        let parsimony = Parsimony {
            min: cards.iter().copied().min().unwrap_or(0),
            max: cards.iter().copied().max().unwrap_or(0),
            mean: cards.iter().sum::<usize>() as f64 / cards.len() as f64,
        };
        Ok(SequenceAnalysis {
            transitions,
            parsimony,
        })
    }

    /// Successor counts for every consonance, flagged against the bound of 42.
    pub fn little_theorem_report(&self) -> TheoremReport {
        let counts: Vec<(CounterpointInterval, usize)> = self
            .consonances
            .iter()
            .map(|xi| {
                let xi = CounterpointInterval::from(xi);
                let n = self.successor_set(xi).map(|s| s.len()).unwrap_or(0);
                (xi, n)
            })
            .collect();
        let below_bound = counts
            .iter()
            .filter(|(_, n)| *n < LITTLE_THEOREM_BOUND)
            .map(|(xi, _)| *xi)
            .collect();
        TheoremReport {
            variant: self.variant,
            bound: LITTLE_THEOREM_BOUND,
            counts,
            below_bound,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn ci(x: u8, y: u8) -> CounterpointInterval {
        CounterpointInterval::new(x, y)
    }

    fn h(t: u8, u: u8, v: u8) -> DualSymmetry {
        DualSymmetry::in_h(t, u, v).unwrap()
    }

    fn world() -> CounterpointWorld {
        CounterpointWorld::default()
    }

    /// Plain hash-set oracle for the three conditions, independent of the
    /// mask machinery and of the frame helpers on the world.
    fn oracle(xi: (u8, u8), variant: PolarityVariant) -> Vec<(u8, u8, u8)> {
        let k = [0u8, 3, 4, 7, 8, 9];
        let (x0, y0) = match variant {
            PolarityVariant::CantusFrame => (0, xi.1),
            _ => xi,
        };
        let shift = match variant {
            PolarityVariant::Localized => 8 * xi.0 as u32 % 12,
            _ => 0,
        };
        let act = |t: u8, u: u8, v: u8, (x, y): (u8, u8)| -> (u8, u8) {
            ((u as u32 * x as u32 % 12) as u8, ((v as u32 * x as u32 + u as u32 * y as u32 + t as u32) % 12) as u8)
        };
        let mut survivors = Vec::new();
        for t in 0..12 {
            for u in [1u8, 5, 7, 11] {
                for v in 0..12 {
                    let mut gk = HashSet::new();
                    let mut gd = HashSet::new();
                    for x in 0..12u8 {
                        for y in 0..12u8 {
                            let img = act(t, u, v, (x, y));
                            if k.contains(&y) {
                                gk.insert(img);
                            } else {
                                gd.insert(img);
                            }
                        }
                    }
                    if !gd.contains(&(x0, y0)) {
                        continue;
                    }
                    let pgk: HashSet<(u8, u8)> = gk
                        .iter()
                        .map(|&(a, b)| (((5 * a as u32 + shift) % 12) as u8, ((5 * b as u32 + 2) % 12) as u8))
                        .collect();
                    if pgk != gd {
                        continue;
                    }
                    let overlap = gk.iter().filter(|(_, b)| k.contains(b)).count();
                    survivors.push(((t, u, v), overlap));
                }
            }
        }
        let best = survivors.iter().map(|s| s.1).max().unwrap_or(0);
        survivors.into_iter().filter(|s| s.1 == best).map(|s| s.0).collect()
    }

    fn triples(gs: &[DualSymmetry]) -> Vec<(u8, u8, u8)> {
        gs.iter()
            .map(|g| (g.eps_shift().value(), g.scale_u().value(), g.scale_v().value()))
            .collect()
    }

    #[test]
    fn matches_hash_set_oracle_for_every_variant() {
        for variant in PolarityVariant::ALL {
            let w = CounterpointWorld::standard(variant);
            for xi in [(0, 0), (0, 3), (7, 4), (11, 8), (5, 9)] {
                let got = w.counterpoint_symmetries(ci(xi.0, xi.1)).unwrap();
                assert_eq!(triples(&got), oracle(xi, variant), "{variant} at {xi:?}");
            }
        }
    }

    #[test]
    fn unison_symmetries_are_frozen() {
        // frozen from the oracle above
        let got = world().counterpoint_symmetries(ci(0, 0)).unwrap();
        assert_eq!(
            got,
            vec![h(6, 1, 6), h(6, 7, 6), h(11, 11, 0), h(11, 11, 4), h(11, 11, 8)]
        );
    }

    #[test]
    fn symmetry_examples() {
        let w = world();
        assert!(w.counterpoint_symmetries(ci(5, 7)).unwrap().contains(&h(0, 7, 0)));
        assert!(w.counterpoint_symmetries(ci(0, 4)).unwrap().contains(&h(6, 7, 6)));
    }

    #[test]
    fn dissonant_intervals_are_rejected() {
        let w = world();
        assert!(matches!(w.counterpoint_symmetries(ci(0, 2)), Err(Error::Dissonant(_))));
        assert!(w.transition_symmetries(ci(0, 7), ci(0, 6)).is_err());
        assert!(w.admissible_successors(ci(3, 11)).is_err());
    }

    #[test]
    fn transition_examples() {
        let w = world();
        let t = w.transition_symmetries(ci(0, 7), ci(0, 4)).unwrap();
        assert_eq!(t.symmetries, vec![h(0, 7, 0)]);
        assert_eq!(t.cardinality, 1);

        let t = w.transition_symmetries(ci(2, 0), ci(2, 9)).unwrap();
        assert_eq!(t.symmetries, vec![h(6, 1, 6), h(6, 7, 6)]);

        let t = w.transition_symmetries(ci(11, 0), ci(9, 3)).unwrap();
        assert_eq!(t.cardinality, 5);
        let expected: HashSet<_> = [h(6, 1, 6), h(6, 7, 6), h(11, 11, 8), h(11, 11, 4), h(11, 11, 0)]
            .into_iter()
            .collect();
        assert_eq!(t.symmetries.into_iter().collect::<HashSet<_>>(), expected);
    }

    #[test]
    fn forbidden_transition_is_an_empty_set() {
        // (7,3) → (5,7) has no symmetry under the global variant
        let w = CounterpointWorld::standard(PolarityVariant::Global);
        let t = w.transition_symmetries(ci(7, 3), ci(5, 7)).unwrap();
        assert_eq!(t.cardinality, 0);
        assert!(t.symmetries.is_empty());
    }

    #[test]
    fn successor_examples() {
        let w = world();
        assert!(w.admissible_successors(ci(0, 7)).unwrap().contains(&ci(0, 4)));
        assert!(w.admissible_successors(ci(0, 0)).unwrap().len() >= LITTLE_THEOREM_BOUND);
    }

    #[test]
    fn successors_of_minor_third_are_frozen() {
        // computed by hand from the two symmetries e^{ε.8}∘(5+ε.4), e^{ε.8}∘(5+ε.8):
        // x·4 + 5y + 8 and x·8 + 5y + 8 over y ∈ K, intersected with K[ε]
        let w = world();
        let set = w.successor_set(ci(0, 3)).unwrap();
        let mut oracle = DualSet::EMPTY;
        for (v, x) in [4u8, 8].into_iter().flat_map(|v| (0..12u8).map(move |x| (v, x))) {
            for y in [0u8, 3, 4, 7, 8, 9] {
                let img = ((x as u32 * v as u32 + 5 * y as u32 + 8) % 12) as u8;
                if [0u8, 3, 4, 7, 8, 9].contains(&img) {
                    oracle.insert(DualNumber::new(5 * x % 12, img));
                }
            }
        }
        assert_eq!(set, oracle);
        assert_eq!(set.len(), 64);
    }

    #[test]
    fn analyze_sequence_reports_dissonant_index() {
        let w = world();
        let err = w.analyze_sequence(&[ci(0, 7), ci(0, 4), ci(0, 5)]).unwrap_err();
        assert_eq!(
            err,
            Error::DissonantInSequence {
                index: 3,
                interval: "0+e.5".into()
            }
        );
        assert_eq!(w.analyze_sequence(&[ci(0, 7)]).unwrap_err(), Error::SequenceTooShort(1));
    }

    #[test]
    fn single_pair_sequence_is_one_transition() {
        let w = world();
        let a = w.analyze_sequence(&[ci(4, 8), ci(4, 8)]).unwrap();
        assert_eq!(a.transitions.len(), 1);
        assert_eq!(a.transitions[0], w.transition_symmetries(ci(4, 8), ci(4, 8)).unwrap());
    }

    #[test]
    fn parsimony_summary() {
        let w = world();
        let seq = [ci(2, 0), ci(2, 9), ci(0, 0), ci(0, 9), ci(11, 0), ci(11, 8)];
        let a = w.analyze_sequence(&seq).unwrap();
        assert_eq!(a.parsimony.min, 2);
        assert_eq!(a.parsimony.max, 3);
        assert!((a.parsimony.mean - 11.0 / 5.0).abs() < 1e-12);
    }

    #[test]
    fn theorem_report_has_72_entries_above_bound() {
        let report = world().little_theorem_report();
        assert_eq!(report.counts.len(), 72);
        assert!(report.holds());
        assert_eq!(report.minimum(), 54);
    }

    #[test]
    fn counts_are_translation_invariant_in_the_global_world() {
        // global counts repeat with period 3 along the cantus
        let report = CounterpointWorld::standard(PolarityVariant::Global).little_theorem_report();
        for counts in report.by_interval().values() {
            for x in 0..12 {
                assert_eq!(counts[x], counts[(x + 3) % 12]);
            }
        }
        let frame = world().little_theorem_report();
        for counts in frame.by_interval().values() {
            assert!(counts.iter().all(|c| *c == counts[0]));
        }
    }

    #[test]
    fn located_symmetries_act_on_the_plane() {
        let w = world();
        let xi = ci(7, 4);
        let eta = ci(5, 7);
        for g in w.transition_symmetries(xi, eta).unwrap().symmetries {
            let g = w.located(xi, g);
            assert!(g.image(w.dissonances()).contains(xi.point()));
            assert!(g.image(w.consonances()).contains(eta.point()));
        }
    }

    #[test]
    fn polarity_must_exchange_halves() {
        let bad = DualSymmetry::in_h(0, 5, 0).unwrap();
        assert!(matches!(
            CounterpointWorld::new(Dichotomy::CONSONANCE, bad, PolarityVariant::Global),
            Err(Error::NotAPolarity { .. })
        ));
        let lifted = CounterpointWorld::for_dichotomy(Dichotomy::CONSONANCE, PolarityVariant::Global).unwrap();
        assert_eq!(lifted.polarity(), CounterpointWorld::standard_polarity());
    }

    #[test]
    fn variant_names_round_trip() {
        for v in PolarityVariant::ALL {
            assert_eq!(v.as_str().parse::<PolarityVariant>().unwrap(), v);
        }
        assert!("sideways".parse::<PolarityVariant>().is_err());
    }
}
