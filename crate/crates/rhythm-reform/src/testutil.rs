//! Proptest strategies shared by the unit tests.

use proptest::prelude::*;

use crate::rhythm::{DifferenceVector, MarkedDifference, MarkedRhythm, Rhythm, SpaceParams};

/// Space parameters with `3 <= n <= min(N, 12)` and `N` up to `max_beats`.
pub fn params_strategy(max_beats: u32) -> impl Strategy<Value = SpaceParams> {
    (3..=max_beats)
        .prop_flat_map(|beats| (Just(beats), 3..=beats.min(12)))
        .prop_map(|(beats, onsets)| SpaceParams::new(beats, onsets).unwrap())
}

/// A uniform-ish gap vector, built from sorted cut points on the circle.
pub fn difference_strategy(params: SpaceParams) -> impl Strategy<Value = DifferenceVector> {
    let beats = params.beats();
    let onsets = params.onsets();
    let cuts: Vec<u32> = (1..beats).collect();
    proptest::sample::subsequence(cuts, (onsets - 1) as usize).prop_map(move |cuts| {
        let mut gaps = Vec::with_capacity(onsets as usize);
        let mut prev = 0;
        for c in cuts {
            gaps.push(c - prev);
            prev = c;
        }
        gaps.push(beats - prev);
        // The first gap is the wrap-around one in the difference
        // convention; any rotation of a composition is a composition, so
        // this choice is immaterial.
        DifferenceVector::new(params, gaps).unwrap()
    })
}

/// A random rhythm: anchor plus gap vector.
pub fn rhythm_strategy(params: SpaceParams) -> impl Strategy<Value = Rhythm> {
    (difference_strategy(params), 0..params.beats())
        .prop_map(move |(d, anchor)| Rhythm::from_anchor(anchor, &d).unwrap())
}

/// A random marked rhythm.
pub fn marked_rhythm_strategy(params: SpaceParams) -> impl Strategy<Value = MarkedRhythm> {
    (rhythm_strategy(params), 0..params.onsets())
        .prop_map(|(r, k)| MarkedRhythm::new(k, r).unwrap())
}

/// A random marked gap vector.
pub fn marked_difference_strategy(params: SpaceParams) -> impl Strategy<Value = MarkedDifference> {
    (difference_strategy(params), 0..params.onsets())
        .prop_map(|(d, k)| MarkedDifference::new(k, d).unwrap())
}
