//! Whole-space orbit analysis.
//!
//! [`SpaceAnalysis`] resolves the functional graph of a step map over an
//! entire (finite) state space in one linear pass: for every state it
//! records the exact transient length, the length of the cycle its orbit
//! falls into, its measure, and whether the measure stays constant along
//! its whole forward orbit.  This is the brute-force engine behind the
//! verification claims; it never consults the numerical criteria it is
//! used to check.

use std::collections::HashMap;

use crate::dynamics::Dynamical;
use crate::error::Result;
use crate::measure::MeasureValue;

/// Orbit structure of every state of a finite system.
pub struct SpaceAnalysis<S: Dynamical> {
    states: Vec<S>,
    index: HashMap<S, usize>,
    next: Vec<usize>,
    transient: Vec<u64>,
    period: Vec<u64>,
    mu: Vec<MeasureValue>,
    stable: Vec<bool>,
}

impl<S: Dynamical> SpaceAnalysis<S> {
    /// Analyzes the given states, which must be closed under the step map.
    pub fn new(states: Vec<S>) -> Result<Self> {
        let count = states.len();
        let mut index = HashMap::with_capacity(count);
        for (i, s) in states.iter().enumerate() {
            index.insert(s.clone(), i);
        }
        let mut next = Vec::with_capacity(count);
        for s in &states {
            let image = s.step();
            next.push(
                *index
                    .get(&image)
                    .expect("step image stays inside the enumerated space"),
            );
        }
        let mu = states
            .iter()
            .map(|s| s.measure())
            .collect::<Result<Vec<_>>>()?;

        let mut transient = vec![0u64; count];
        let mut period = vec![0u64; count];
        let mut stable = vec![false; count];
        // 0 = fresh, 1 = on the current path, 2 = resolved.
        let mut color = vec![0u8; count];
        let mut pos_in_path = vec![usize::MAX; count];

        for start in 0..count {
            if color[start] != 0 {
                continue;
            }
            let mut path = Vec::new();
            let mut cur = start;
            while color[cur] == 0 {
                color[cur] = 1;
                pos_in_path[cur] = path.len();
                path.push(cur);
                cur = next[cur];
            }
            // Either the walk closed a brand-new cycle within the current
            // path, or it ran into territory resolved earlier.
            let tail_end = if color[cur] == 1 {
                let pos = pos_in_path[cur];
                let cycle = &path[pos..];
                let len = cycle.len() as u64;
                let flat = cycle.iter().all(|&i| mu[i] == mu[cycle[0]]);
                for &i in cycle {
                    transient[i] = 0;
                    period[i] = len;
                    stable[i] = flat;
                    color[i] = 2;
                }
                pos
            } else {
                path.len()
            };
            // The rest of the path leads into resolved states: unwind it
            // back to front, each node hanging off its successor.
            for &i in path[..tail_end].iter().rev() {
                let j = next[i];
                transient[i] = transient[j] + 1;
                period[i] = period[j];
                stable[i] = stable[j] && mu[i] == mu[j];
                color[i] = 2;
            }
        }

        Ok(Self {
            states,
            index,
            next,
            transient,
            period,
            mu,
            stable,
        })
    }

    fn idx(&self, s: &S) -> usize {
        *self
            .index
            .get(s)
            .expect("state must belong to the analyzed space")
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    /// The states in their enumeration order.
    pub fn states(&self) -> &[S] {
        &self.states
    }

    /// The image of a state under one step.
    pub fn successor(&self, s: &S) -> &S {
        &self.states[self.next[self.idx(s)]]
    }

    /// Whether the state lies on its own orbit's cycle.
    pub fn is_periodic(&self, s: &S) -> bool {
        self.transient[self.idx(s)] == 0
    }

    /// Steps before the orbit of `s` enters its cycle.
    pub fn transient_length(&self, s: &S) -> u64 {
        self.transient[self.idx(s)]
    }

    /// Length of the cycle the orbit of `s` falls into.  For periodic
    /// states this is the exact minimal period.
    pub fn period(&self, s: &S) -> u64 {
        self.period[self.idx(s)]
    }

    pub fn measure_of(&self, s: &S) -> MeasureValue {
        self.mu[self.idx(s)]
    }

    /// Whether the measure is constant along the entire forward orbit.
    pub fn is_stable(&self, s: &S) -> bool {
        self.stable[self.idx(s)]
    }

    /// The periodic states, in enumeration order.
    pub fn periodic_states(&self) -> impl Iterator<Item = &S> {
        (0..self.len())
            .filter(|&i| self.transient[i] == 0)
            .map(|i| &self.states[i])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics;
    use crate::enumerate;
    use crate::rhythm::{DifferenceVector, MarkedDifference, SpaceParams};

    fn params(beats: u32, onsets: u32) -> SpaceParams {
        SpaceParams::new(beats, onsets).unwrap()
    }

    fn marked_gaps(beats: u32, marker: u32, gaps: Vec<u32>) -> MarkedDifference {
        let p = params(beats, gaps.len() as u32);
        MarkedDifference::new(marker, DifferenceVector::new(p, gaps).unwrap()).unwrap()
    }

    #[test]
    fn matches_per_state_orbits_on_a_small_space() {
        let p = params(8, 3);
        let analysis = SpaceAnalysis::new(enumerate::marked_differences(p).collect()).unwrap();
        assert_eq!(analysis.len(), 63);
        let cap = dynamics::default_cap(p).unwrap();
        for s in enumerate::marked_differences(p) {
            let report = dynamics::orbit(&s, cap).unwrap();
            assert_eq!(
                analysis.is_periodic(&s),
                report.transient_length == 0,
                "{s}"
            );
            assert_eq!(analysis.transient_length(&s), report.transient_length as u64, "{s}");
            assert_eq!(analysis.period(&s), report.period as u64, "{s}");
            let flat = report
                .measure_trace
                .iter()
                .all(|&v| v == report.measure_trace[0]);
            assert_eq!(analysis.is_stable(&s), flat, "{s}");
        }
    }

    #[test]
    fn knows_the_six_cycle() {
        let p = params(8, 3);
        let analysis = SpaceAnalysis::new(enumerate::marked_differences(p).collect()).unwrap();
        let d = marked_gaps(8, 0, vec![3, 3, 2]);
        assert!(analysis.is_periodic(&d));
        assert_eq!(analysis.period(&d), 6);
        assert!(analysis.is_stable(&d));
        assert_eq!(analysis.measure_of(&d).get(), 18);
        assert_eq!(analysis.successor(&d), &marked_gaps(8, 1, vec![3, 3, 2]));

        let d = marked_gaps(8, 0, vec![6, 1, 1]);
        assert!(!analysis.is_periodic(&d));
        assert!(!analysis.is_stable(&d));
        assert_eq!(analysis.period(&d), 6);
        assert_eq!(analysis.periodic_states().count(), 6);
    }
}
