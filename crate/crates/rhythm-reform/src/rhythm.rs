//! Core state types: rhythms, gap vectors and their marked variants.
//!
//! A *rhythm* places `n` distinct onsets on a circle of `N` beats, listed in
//! cyclic order with a single winding: walking from each entry to the next
//! (and from the last back to the first) goes around the circle exactly
//! once.  Equivalently, the cyclic gaps between consecutive entries sum to
//! exactly `N`.
//!
//! Taking those gaps yields a [`DifferenceVector`]: `n` positive residues
//! summing to `N`.  Rhythms with the same gap vector differ only by
//! rotation, so a gap vector together with an anchor entry reconstructs the
//! rhythm ([`Rhythm::from_anchor`]).
//!
//! The *marked* variants attach a distinguished onset index (the marker),
//! which the step maps in [`crate::dynamics`] use as the position to rework
//! next.

use crate::error::{Error, Result};
use crate::modular::Modulus;

/// The pair `(N, n)`: a circle of `beats` positions carrying `onsets`
/// onsets, with `3 <= onsets <= beats`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct SpaceParams {
    beats: u32,
    onsets: u32,
}

impl SpaceParams {
    /// Validates `3 <= onsets <= beats`.
    pub fn new(beats: u32, onsets: u32) -> Result<Self> {
        if onsets < 3 || onsets > beats {
            return Err(Error::InvalidParams { beats, onsets });
        }
        Ok(Self { beats, onsets })
    }

    /// Number of beat positions on the circle (`N`).
    pub fn beats(self) -> u32 {
        self.beats
    }

    /// Number of onsets (`n`).
    pub fn onsets(self) -> u32 {
        self.onsets
    }

    /// Arithmetic modulo the beat count, for entries and gaps.
    pub fn beat_modulus(self) -> Modulus {
        Modulus::new_unchecked(self.beats)
    }

    /// Arithmetic modulo the onset count, for indices and markers.
    pub fn onset_modulus(self) -> Modulus {
        Modulus::new_unchecked(self.onsets)
    }
}

/// A tuple of distinct beats in single-winding cyclic order.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Rhythm {
    params: SpaceParams,
    entries: Vec<u32>,
}

impl Rhythm {
    /// Validates and builds a rhythm.
    ///
    /// The entries must lie in `0..beats`, be mutually distinct, and be
    /// listed in cyclic order: their consecutive cyclic gaps must sum to
    /// exactly `beats` (distinct out-of-order tuples produce a multiple).
    pub fn new(params: SpaceParams, entries: Vec<u32>) -> Result<Self> {
        let n = params.onsets() as usize;
        if entries.len() != n {
            return Err(Error::WrongLength {
                got: entries.len(),
                expected: n,
            });
        }
        for &e in &entries {
            if e >= params.beats() {
                return Err(Error::EntryOutOfRange {
                    entry: e,
                    beats: params.beats(),
                });
            }
        }
        let mut sorted = entries.clone();
        sorted.sort_unstable();
        for pair in sorted.windows(2) {
            if pair[0] == pair[1] {
                return Err(Error::DuplicateEntry(pair[0]));
            }
        }
        let m = params.beat_modulus();
        let sum: u64 = (0..n)
            .map(|i| u64::from(m.sub(entries[i], entries[(i + n - 1) % n])))
            .sum();
        if sum != u64::from(params.beats()) {
            return Err(Error::GapSumMismatch {
                sum,
                beats: params.beats(),
            });
        }
        Ok(Self { params, entries })
    }

    /// Internal constructor for entry tuples produced by operations that
    /// provably preserve validity.
    pub(crate) fn from_parts_unchecked(params: SpaceParams, entries: Vec<u32>) -> Self {
        debug_assert!(
            Self::new(params, entries.clone()).is_ok(),
            "constructed an invalid rhythm from {entries:?}"
        );
        Self { params, entries }
    }

    pub fn params(&self) -> SpaceParams {
        self.params
    }

    /// The beat positions in cyclic order.
    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    /// The vector of cyclic gaps: component `i` is the distance walked from
    /// entry `i-1` (cyclically) to entry `i`.
    pub fn difference(&self) -> DifferenceVector {
        let m = self.params.beat_modulus();
        let n = self.entries.len();
        let gaps = (0..n)
            .map(|i| m.sub(self.entries[i], self.entries[(i + n - 1) % n]))
            .collect();
        DifferenceVector {
            params: self.params,
            gaps,
        }
    }

    /// Rotates every entry one beat forward.  This is an automorphism of
    /// the whole system: it commutes with the step maps and preserves gaps.
    pub fn translate(&self) -> Self {
        let m = self.params.beat_modulus();
        let entries = self.entries.iter().map(|&e| m.add(e, 1)).collect();
        Self::from_parts_unchecked(self.params, entries)
    }

    /// Rebuilds the unique rhythm with first entry `anchor` and the given
    /// gap vector: entry `i` is `anchor` advanced by `gaps[1..=i]`.
    pub fn from_anchor(anchor: u32, gaps: &DifferenceVector) -> Result<Self> {
        let params = gaps.params();
        if anchor >= params.beats() {
            return Err(Error::EntryOutOfRange {
                entry: anchor,
                beats: params.beats(),
            });
        }
        let m = params.beat_modulus();
        let mut entries = Vec::with_capacity(params.onsets() as usize);
        entries.push(anchor);
        for &g in &gaps.gaps()[1..] {
            entries.push(m.add(*entries.last().unwrap(), g));
        }
        Self::new(params, entries)
    }
}

/// A rhythm together with a marked onset index.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MarkedRhythm {
    marker: u32,
    rhythm: Rhythm,
}

impl MarkedRhythm {
    /// Attaches a marker to a rhythm; the marker must be an onset index.
    pub fn new(marker: u32, rhythm: Rhythm) -> Result<Self> {
        if marker >= rhythm.params().onsets() {
            return Err(Error::MarkerOutOfRange {
                marker,
                onsets: rhythm.params().onsets(),
            });
        }
        Ok(Self { marker, rhythm })
    }

    pub fn params(&self) -> SpaceParams {
        self.rhythm.params()
    }

    pub fn marker(&self) -> u32 {
        self.marker
    }

    /// The underlying (unmarked) rhythm.
    pub fn rhythm(&self) -> &Rhythm {
        &self.rhythm
    }

    /// Discards the marker.
    pub fn into_rhythm(self) -> Rhythm {
        self.rhythm
    }

    /// The beat position at the marked onset.
    pub fn marked_entry(&self) -> u32 {
        self.rhythm.entries()[self.marker as usize]
    }

    /// The gap vector of the underlying rhythm, carrying the marker along.
    pub fn difference(&self) -> MarkedDifference {
        MarkedDifference {
            marker: self.marker,
            gaps: self.rhythm.difference(),
        }
    }

    /// Rotates the rhythm one beat forward, keeping the marker.
    pub fn translate(&self) -> Self {
        Self {
            marker: self.marker,
            rhythm: self.rhythm.translate(),
        }
    }
}

/// `n` positive residues summing to the beat count: the cyclic gaps of a
/// rhythm, with the rotation information forgotten.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct DifferenceVector {
    params: SpaceParams,
    gaps: Vec<u32>,
}

impl DifferenceVector {
    /// Validates and builds a gap vector: every component must lie in
    /// `1..beats` and the components must sum to exactly `beats`.
    pub fn new(params: SpaceParams, gaps: Vec<u32>) -> Result<Self> {
        let n = params.onsets() as usize;
        if gaps.len() != n {
            return Err(Error::WrongLength {
                got: gaps.len(),
                expected: n,
            });
        }
        for &g in &gaps {
            if g == 0 || g >= params.beats() {
                return Err(Error::GapOutOfRange {
                    gap: g,
                    beats: params.beats(),
                });
            }
        }
        let sum: u64 = gaps.iter().map(|&g| u64::from(g)).sum();
        if sum != u64::from(params.beats()) {
            return Err(Error::GapSumMismatch {
                sum,
                beats: params.beats(),
            });
        }
        Ok(Self { params, gaps })
    }

    pub(crate) fn from_parts_unchecked(params: SpaceParams, gaps: Vec<u32>) -> Self {
        debug_assert!(
            Self::new(params, gaps.clone()).is_ok(),
            "constructed an invalid gap vector from {gaps:?}"
        );
        Self { params, gaps }
    }

    pub fn params(&self) -> SpaceParams {
        self.params
    }

    pub fn gaps(&self) -> &[u32] {
        &self.gaps
    }

    /// Swaps the components at positions `k` and `k+1` (cyclically).
    pub fn transpose_adjacent(&self, k: u32) -> Self {
        let n = self.params.onsets();
        assert!(k < n, "index {k} out of range for {n} onsets");
        let next = self.params.onset_modulus().add(k, 1) as usize;
        let mut gaps = self.gaps.clone();
        gaps.swap(k as usize, next);
        Self {
            params: self.params,
            gaps,
        }
    }
}

/// A gap vector together with a marked position.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MarkedDifference {
    marker: u32,
    gaps: DifferenceVector,
}

impl MarkedDifference {
    /// Attaches a marker to a gap vector; the marker must be an index.
    pub fn new(marker: u32, gaps: DifferenceVector) -> Result<Self> {
        if marker >= gaps.params().onsets() {
            return Err(Error::MarkerOutOfRange {
                marker,
                onsets: gaps.params().onsets(),
            });
        }
        Ok(Self { marker, gaps })
    }

    pub fn params(&self) -> SpaceParams {
        self.gaps.params()
    }

    pub fn marker(&self) -> u32 {
        self.marker
    }

    /// The underlying (unmarked) gap vector.
    pub fn gaps(&self) -> &DifferenceVector {
        &self.gaps
    }

    /// The gap at the marked position.
    pub fn marked_gap(&self) -> u32 {
        self.gaps.gaps()[self.marker as usize]
    }
}


#[cfg(test)]
mod properties {
    use proptest::prelude::*;

    use super::*;
    use crate::testutil;

    proptest! {
        #[test]
        fn anchor_and_gaps_rebuild_the_rhythm(
            a in testutil::params_strategy(64).prop_flat_map(testutil::rhythm_strategy)
        ) {
            let rebuilt = Rhythm::from_anchor(a.entries()[0], &a.difference()).unwrap();
            prop_assert_eq!(rebuilt, a);
        }

        #[test]
        fn translation_preserves_gaps_and_has_order_beats(
            a in testutil::params_strategy(64).prop_flat_map(testutil::rhythm_strategy)
        ) {
            let once = a.translate();
            prop_assert_eq!(once.difference(), a.difference());
            let mut current = once;
            for _ in 1..a.params().beats() {
                current = current.translate();
            }
            prop_assert_eq!(current, a);
        }

        #[test]
        fn marking_commutes_with_taking_gaps(
            a in testutil::params_strategy(64).prop_flat_map(testutil::marked_rhythm_strategy)
        ) {
            let gaps = a.difference();
            prop_assert_eq!(gaps.marker(), a.marker());
            prop_assert_eq!(gaps.gaps(), &a.rhythm().difference());
        }
    }
}
