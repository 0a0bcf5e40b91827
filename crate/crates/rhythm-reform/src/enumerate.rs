//! Exhaustive enumeration of the state spaces.
//!
//! Gap vectors for `(N, n)` are exactly the compositions of `N` into `n`
//! positive parts, of which there are `C(N-1, n-1)`; they are produced in
//! lexicographic order.  Rhythms are recovered as anchor x composition
//! pairs via [`Rhythm::from_anchor`], and the marked spaces add a marker
//! coordinate.  All counts use checked arithmetic so oversized requests
//! fail loudly instead of wrapping.

use crate::error::{Error, Result};
use crate::rhythm::{DifferenceVector, MarkedDifference, MarkedRhythm, Rhythm, SpaceParams};

/// Binomial coefficient `C(n, k)` with checked arithmetic.
pub fn binomial(n: u64, k: u64) -> Result<u128> {
    if k > n {
        return Ok(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // Multiply before dividing: the running product after step i is
        // the exact integer C(n-k+i+1, i+1).
        acc = acc
            .checked_mul(u128::from(n - k + i + 1))
            .ok_or(Error::Overflow("binomial coefficient"))?
            / u128::from(i + 1);
    }
    Ok(acc)
}

/// Number of gap vectors: `C(N-1, n-1)`.
pub fn composition_count(params: SpaceParams) -> Result<u128> {
    binomial(u64::from(params.beats()) - 1, u64::from(params.onsets()) - 1)
}

/// Number of rhythms: `N * C(N-1, n-1)`.
pub fn rhythm_count(params: SpaceParams) -> Result<u128> {
    composition_count(params)?
        .checked_mul(u128::from(params.beats()))
        .ok_or(Error::Overflow("rhythm count"))
}

/// Number of marked gap vectors: `n * C(N-1, n-1)`.
pub fn marked_difference_count(params: SpaceParams) -> Result<u128> {
    composition_count(params)?
        .checked_mul(u128::from(params.onsets()))
        .ok_or(Error::Overflow("marked gap vector count"))
}

/// Number of marked rhythms: `n * N * C(N-1, n-1)`.
pub fn marked_rhythm_count(params: SpaceParams) -> Result<u128> {
    rhythm_count(params)?
        .checked_mul(u128::from(params.onsets()))
        .ok_or(Error::Overflow("marked rhythm count"))
}

/// Fails with [`Error::BudgetExceeded`] when a space is larger than the
/// caller is willing to enumerate.
pub fn ensure_budget(size: u128, budget: u128) -> Result<()> {
    if size > budget {
        return Err(Error::BudgetExceeded { size, budget });
    }
    Ok(())
}

/// Lexicographic iterator over the gap vectors of a space.
pub struct Compositions {
    params: SpaceParams,
    current: Option<Vec<u32>>,
}

impl Compositions {
    fn new(params: SpaceParams) -> Self {
        let n = params.onsets() as usize;
        let mut first = vec![1u32; n];
        first[n - 1] = params.beats() - params.onsets() + 1;
        Self {
            params,
            current: Some(first),
        }
    }
}

/// Advances `parts` to its lexicographic successor among compositions with
/// the same sum and length; returns `false` from the largest one.
fn next_composition(parts: &mut [u32]) -> bool {
    let n = parts.len();
    // The last position holding more than 1: everything after it is flat,
    // so the smallest possible increase bumps the position before it.
    let Some(j) = (0..n).rev().find(|&i| parts[i] > 1) else {
        return false;
    };
    if j == 0 {
        return false;
    }
    let moved = parts[j];
    parts[j - 1] += 1;
    for p in parts.iter_mut().take(n - 1).skip(j) {
        *p = 1;
    }
    parts[n - 1] = moved - 1;
    true
}

impl Iterator for Compositions {
    type Item = DifferenceVector;

    fn next(&mut self) -> Option<Self::Item> {
        let current = self.current.as_mut()?;
        let item = DifferenceVector::new(self.params, current.clone())
            .expect("enumerated compositions are valid gap vectors");
        if !next_composition(current) {
            self.current = None;
        }
        Some(item)
    }
}

/// All gap vectors of the space, lexicographically.
pub fn compositions(params: SpaceParams) -> Compositions {
    Compositions::new(params)
}

/// All marked gap vectors: markers in order, compositions inside.
pub fn marked_differences(params: SpaceParams) -> impl Iterator<Item = MarkedDifference> {
    (0..params.onsets()).flat_map(move |k| {
        compositions(params)
            .map(move |d| MarkedDifference::new(k, d).expect("onset index is a valid marker"))
    })
}

/// All rhythms: anchors in order, compositions inside.
pub fn rhythms(params: SpaceParams) -> impl Iterator<Item = Rhythm> {
    (0..params.beats()).flat_map(move |anchor| {
        compositions(params).map(move |d| {
            Rhythm::from_anchor(anchor, &d).expect("anchor and gap vector determine a rhythm")
        })
    })
}

/// All marked rhythms: markers in order, rhythms inside.
pub fn marked_rhythms(params: SpaceParams) -> impl Iterator<Item = MarkedRhythm> {
    (0..params.onsets()).flat_map(move |k| {
        rhythms(params).map(move |r| MarkedRhythm::new(k, r).expect("onset index is a valid marker"))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn params(beats: u32, onsets: u32) -> SpaceParams {
        SpaceParams::new(beats, onsets).unwrap()
    }

    #[test]
    fn binomial_small_table() {
        assert_eq!(binomial(7, 2).unwrap(), 21);
        assert_eq!(binomial(11, 4).unwrap(), 330);
        assert_eq!(binomial(5, 0).unwrap(), 1);
        assert_eq!(binomial(5, 5).unwrap(), 1);
        assert_eq!(binomial(4, 6).unwrap(), 0);
        assert_eq!(binomial(52, 26).unwrap(), 495_918_532_948_104);
    }

    #[test]
    fn composition_listing_for_a_tiny_space() {
        let got: Vec<Vec<u32>> = compositions(params(4, 3))
            .map(|d| d.gaps().to_vec())
            .collect();
        assert_eq!(got, vec![vec![1, 1, 2], vec![1, 2, 1], vec![2, 1, 1]]);
    }

    #[test]
    fn compositions_are_lexicographic_and_complete() {
        let p = params(8, 3);
        let all: Vec<Vec<u32>> = compositions(p).map(|d| d.gaps().to_vec()).collect();
        assert_eq!(all.len() as u128, composition_count(p).unwrap());
        assert_eq!(all.len(), 21);
        for w in all.windows(2) {
            assert!(w[0] < w[1], "not strictly increasing: {w:?}");
        }
        let distinct: HashSet<_> = all.iter().cloned().collect();
        assert_eq!(distinct.len(), all.len());
    }

    #[test]
    fn the_tightest_space_has_a_single_flat_composition() {
        let p = params(5, 5);
        let all: Vec<_> = compositions(p).collect();
        assert_eq!(all.len(), 1);
        assert_eq!(all[0].gaps(), &[1, 1, 1, 1, 1]);
    }

    #[test]
    fn space_sizes_match_the_closed_forms() {
        let p = params(8, 3);
        assert_eq!(marked_difference_count(p).unwrap(), 63);
        assert_eq!(rhythm_count(p).unwrap(), 168);
        assert_eq!(marked_rhythm_count(p).unwrap(), 504);
        assert_eq!(marked_differences(p).count(), 63);
        assert_eq!(rhythms(p).count(), 168);
        assert_eq!(marked_rhythms(p).count(), 504);

        let p = params(12, 5);
        assert_eq!(marked_difference_count(p).unwrap(), 1650);
        assert_eq!(marked_differences(p).count(), 1650);
    }

    #[test]
    fn enumerated_rhythms_are_distinct_and_valid() {
        let p = params(8, 3);
        let all: Vec<Rhythm> = rhythms(p).collect();
        let distinct: HashSet<_> = all.iter().cloned().collect();
        assert_eq!(distinct.len(), all.len());
        for r in &all {
            // Round trip: anchor plus gaps reconstructs the same rhythm.
            let back = Rhythm::from_anchor(r.entries()[0], &r.difference()).unwrap();
            assert_eq!(&back, r);
        }
    }

    #[test]
    fn budget_guard() {
        assert!(ensure_budget(63, 2_000_000).is_ok());
        assert_eq!(
            ensure_budget(504, 100).unwrap_err(),
            Error::BudgetExceeded { size: 504, budget: 100 }
        );
    }
}
