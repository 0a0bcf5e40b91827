//! The two step maps and orbit machinery.
//!
//! [`ref_step`] acts on marked rhythms: it replaces the marked entry by the
//! discrete average ([`rav`]) of its two neighbours and advances the marker
//! one onset.  [`def_step`] is the same move read on gap vectors: the two
//! gaps meeting at the marker are replaced by the floor and ceiling halves
//! of their sum.  Taking gaps intertwines the two
//! (`ref_step` then gaps == gaps then `def_step`), which is checked
//! exhaustively by the oracle.
//!
//! Both maps are bijections of finite sets, so every orbit is eventually
//! periodic.  [`orbit`] records states until the first repeat and reports
//! the exact transient length and period; [`smooth_rhythm`] iterates
//! `ref_step` until the width of the gaps drops to at most 1.

use std::collections::HashMap;
use std::hash::Hash;

use crate::enumerate;
use crate::error::{Error, Result};
use crate::measure::{self, MeasureValue};
use crate::modular::Modulus;
use crate::rhythm::{DifferenceVector, MarkedDifference, MarkedRhythm, Rhythm, SpaceParams};

/// Discrete average on the oriented circle: the midpoint of the forward
/// arc from `a` to `b`, rounded toward `a`.  `rav(a, a) == a`.
pub fn rav(m: Modulus, a: u32, b: u32) -> u32 {
    m.add(a, m.sub(b, a) / 2)
}

/// Reworks a triple of circle positions: the middle component is replaced
/// by the discrete average of the outer two.
pub fn ref3(m: Modulus, triple: (u32, u32, u32)) -> (u32, u32, u32) {
    let (a, _, c) = triple;
    (a, rav(m, a, c), c)
}

/// One reformation step: the marked entry moves to the discrete average of
/// its neighbours and the marker advances one onset.
pub fn ref_step(state: &MarkedRhythm) -> MarkedRhythm {
    let params = state.params();
    let beat = params.beat_modulus();
    let onset = params.onset_modulus();
    let k = state.marker();
    let entries = state.rhythm().entries();
    let prev = entries[onset.sub(k, 1) as usize];
    let next = entries[onset.add(k, 1) as usize];
    let mut reworked = entries.to_vec();
    reworked[k as usize] = rav(beat, prev, next);
    let rhythm = Rhythm::from_parts_unchecked(params, reworked);
    MarkedRhythm::new(onset.add(k, 1), rhythm).expect("advanced marker stays in range")
}

/// One deformation step: the gaps at the marker and its successor are
/// replaced by the floor and ceiling halves of their sum, and the marker
/// advances.
pub fn def_step(state: &MarkedDifference) -> MarkedDifference {
    let params = state.params();
    let onset = params.onset_modulus();
    let k = state.marker();
    let k1 = onset.add(k, 1);
    let mut gaps = state.gaps().gaps().to_vec();
    let sum = gaps[k as usize] + gaps[k1 as usize];
    // The remaining gaps are positive, so two adjacent gaps can never sum
    // to the full beat count; plain integer halving is exact here.
    assert!(sum < params.beats(), "adjacent gaps must sum below the beat count");
    gaps[k as usize] = sum / 2;
    gaps[k1 as usize] = sum - sum / 2;
    let gaps = DifferenceVector::from_parts_unchecked(params, gaps);
    MarkedDifference::new(k1, gaps).expect("advanced marker stays in range")
}

/// A state that can be advanced one step and measured.  Implemented by
/// [`MarkedRhythm`] (reformation) and [`MarkedDifference`] (deformation),
/// so orbit analysis is written once for both systems.
pub trait Dynamical: Clone + Eq + Hash {
    fn step(&self) -> Self;
    fn measure(&self) -> Result<MeasureValue>;
    fn params(&self) -> SpaceParams;
}

impl Dynamical for MarkedRhythm {
    fn step(&self) -> Self {
        ref_step(self)
    }

    fn measure(&self) -> Result<MeasureValue> {
        measure::mu_marked_rhythm(self)
    }

    fn params(&self) -> SpaceParams {
        MarkedRhythm::params(self)
    }
}

impl Dynamical for MarkedDifference {
    fn step(&self) -> Self {
        def_step(self)
    }

    fn measure(&self) -> Result<MeasureValue> {
        measure::mu_marked_difference(self)
    }

    fn params(&self) -> SpaceParams {
        MarkedDifference::params(self)
    }
}

/// Default orbit cap: the number of marked rhythms plus one.  No orbit in
/// either system can visit more distinct states, so hitting this cap means
/// the step map is broken.
pub fn default_cap(params: SpaceParams) -> Result<u64> {
    let size = enumerate::marked_rhythm_count(params)?.saturating_add(1);
    Ok(u64::try_from(size).unwrap_or(u64::MAX))
}

/// An orbit recorded up to and including the first repeated state.
#[derive(Clone, Debug)]
pub struct OrbitReport<S> {
    /// Visited states; the last one equals `states[transient_length]`.
    pub states: Vec<S>,
    /// Steps before the cycle is entered.
    pub transient_length: usize,
    /// Length of the cycle that the orbit falls into.
    pub period: usize,
    /// Measure of each recorded state; never decreasing.
    pub measure_trace: Vec<MeasureValue>,
    /// First recorded index whose underlying rhythm is smooth (rhythm
    /// orbits only).
    pub smooth_index: Option<usize>,
}

/// Iterates `start` until the first repeated state, recording every state
/// visited.  `cap` bounds the number of distinct states (default:
/// [`default_cap`]); exceeding it reports [`Error::CapExceeded`].
pub fn orbit<S: Dynamical>(start: &S, cap: u64) -> Result<OrbitReport<S>> {
    let mut seen: HashMap<S, usize> = HashMap::new();
    let mut states = vec![start.clone()];
    seen.insert(start.clone(), 0);
    let (transient_length, period) = loop {
        let next = states.last().unwrap().step();
        if let Some(&first) = seen.get(&next) {
            states.push(next);
            break (first, states.len() - 1 - first);
        }
        if states.len() as u64 >= cap {
            return Err(Error::CapExceeded { cap });
        }
        seen.insert(next.clone(), states.len());
        states.push(next);
    };
    let measure_trace = states
        .iter()
        .map(|s| s.measure())
        .collect::<Result<Vec<_>>>()?;
    debug_assert!(
        measure_trace.windows(2).all(|w| w[0] <= w[1]),
        "measure must not decrease along an orbit"
    );
    Ok(OrbitReport {
        states,
        transient_length,
        period,
        measure_trace,
        smooth_index: None,
    })
}

/// Orbit of a marked rhythm under [`ref_step`], with the first smooth
/// state located.
pub fn ref_orbit(start: &MarkedRhythm, cap: u64) -> Result<OrbitReport<MarkedRhythm>> {
    let mut report = orbit(start, cap)?;
    report.smooth_index = report
        .states
        .iter()
        .position(|s| measure::is_smooth(s.rhythm()));
    Ok(report)
}

/// Orbit of a marked gap vector under [`def_step`].
pub fn def_orbit(start: &MarkedDifference, cap: u64) -> Result<OrbitReport<MarkedDifference>> {
    orbit(start, cap)
}

/// Length of the cycle that the forward orbit of `start` falls into.  For
/// a periodic state this is its exact minimal period.
pub fn period_of<S: Dynamical>(start: &S) -> Result<u64> {
    let report = orbit(start, default_cap(start.params())?)?;
    Ok(report.period as u64)
}

/// Smooths a rhythm by iterating [`ref_step`] from marker 0: returns the
/// number of steps until the rhythm first becomes smooth, together with
/// that smooth rhythm.
pub fn smooth_rhythm(a: &Rhythm) -> Result<(u64, Rhythm)> {
    smooth_rhythm_from(0, a, default_cap(a.params())?)
}

/// As [`smooth_rhythm`], but starting from an arbitrary marker and with an
/// explicit step cap.
pub fn smooth_rhythm_from(marker: u32, a: &Rhythm, cap: u64) -> Result<(u64, Rhythm)> {
    let mut current = MarkedRhythm::new(marker, a.clone())?;
    let mut steps = 0u64;
    loop {
        if measure::is_smooth(current.rhythm()) {
            return Ok((steps, current.into_rhythm()));
        }
        if steps >= cap {
            return Err(Error::CapExceeded { cap });
        }
        current = ref_step(&current);
        steps += 1;
    }
}


#[cfg(test)]
mod properties {
    use proptest::prelude::*;

    use super::*;
    use crate::testutil;

    proptest! {
        #[test]
        fn gap_taking_intertwines_the_steps(
            a in testutil::params_strategy(64).prop_flat_map(testutil::marked_rhythm_strategy)
        ) {
            prop_assert_eq!(ref_step(&a).difference(), def_step(&a.difference()));
        }

        #[test]
        fn reformation_commutes_with_rotation(
            a in testutil::params_strategy(64).prop_flat_map(testutil::marked_rhythm_strategy)
        ) {
            prop_assert_eq!(ref_step(&a.translate()), ref_step(&a).translate());
        }

        #[test]
        fn measure_never_decreases_with_exact_equality_clause(
            d in testutil::params_strategy(64).prop_flat_map(testutil::marked_difference_strategy)
        ) {
            let before = measure::mu_marked_difference(&d).unwrap();
            let after = measure::mu_marked_difference(&def_step(&d)).unwrap();
            prop_assert!(after >= before);
            let k = d.marker() as usize;
            let gaps = d.gaps().gaps();
            let near = gaps[k].abs_diff(gaps[(k + 1) % gaps.len()]) <= 1;
            prop_assert_eq!(after == before, near);
        }

        #[test]
        fn measure_descends_through_gap_taking(
            a in testutil::params_strategy(64).prop_flat_map(testutil::marked_rhythm_strategy)
        ) {
            prop_assert_eq!(
                measure::mu_marked_rhythm(&a).unwrap(),
                measure::mu_marked_difference(&a.difference()).unwrap()
            );
        }

        #[test]
        fn step_images_re_validate(
            a in testutil::params_strategy(64).prop_flat_map(testutil::marked_rhythm_strategy)
        ) {
            let stepped = ref_step(&a);
            let entries = stepped.rhythm().entries().to_vec();
            let rebuilt =
                MarkedRhythm::new(stepped.marker(), Rhythm::new(stepped.params(), entries).unwrap())
                    .unwrap();
            prop_assert_eq!(rebuilt, stepped);
        }

        #[test]
        fn smoothing_terminates_on_a_smooth_rhythm(
            a in testutil::params_strategy(32).prop_flat_map(testutil::rhythm_strategy)
        ) {
            let (_, result) = smooth_rhythm(&a).unwrap();
            prop_assert!(measure::is_smooth(&result));
        }
    }
}
