//! The gap-product measure and the predicates built on it.
//!
//! The measure of a rhythm is the product of its cyclic gaps, an exact
//! positive integer.  Its significance is that one step of either map in
//! [`crate::dynamics`] never decreases it, and increases it strictly unless
//! the two gaps being reworked already differ by at most one — so it acts
//! as a progress witness for smoothing.  [`floor_ceil_product`] isolates
//! the elementary inequality behind that: splitting a sum into its floor
//! and ceiling halves maximizes the product.
//!
//! Products are computed with checked 128-bit arithmetic; exceeding that
//! range is reported as [`Error::MeasureOverflow`] rather than wrapped.

use std::collections::BTreeMap;
use std::fmt;

use crate::dynamics::{self, Dynamical};
use crate::error::{Error, Result};
use crate::rhythm::{DifferenceVector, MarkedDifference, MarkedRhythm, Rhythm};

/// An exact gap product.  Always at least 1 for valid states.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct MeasureValue(u128);

impl MeasureValue {
    pub fn get(self) -> u128 {
        self.0
    }
}

impl fmt::Display for MeasureValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

fn checked_product(factors: impl Iterator<Item = u32>) -> Result<MeasureValue> {
    let mut acc: u128 = 1;
    for f in factors {
        acc = acc
            .checked_mul(u128::from(f))
            .ok_or(Error::MeasureOverflow)?;
    }
    Ok(MeasureValue(acc))
}

/// Product of the cyclic gaps of a rhythm, computed directly on the
/// entries (not via [`Rhythm::difference`], so the two routes can be
/// checked against each other).
pub fn mu_rhythm(a: &Rhythm) -> Result<MeasureValue> {
    let m = a.params().beat_modulus();
    let e = a.entries();
    let n = e.len();
    checked_product((0..n).map(|i| m.sub(e[(i + 1) % n], e[i])))
}

/// Measure of a marked rhythm; the marker does not enter.
pub fn mu_marked_rhythm(a: &MarkedRhythm) -> Result<MeasureValue> {
    mu_rhythm(a.rhythm())
}

/// Product of the components of a gap vector.
pub fn mu_difference(d: &DifferenceVector) -> Result<MeasureValue> {
    checked_product(d.gaps().iter().copied())
}

/// Measure of a marked gap vector; the marker does not enter.
pub fn mu_marked_difference(d: &MarkedDifference) -> Result<MeasureValue> {
    mu_difference(d.gaps())
}

/// Spread of a gap vector: largest gap minus smallest gap.
pub fn width(d: &DifferenceVector) -> u32 {
    let gaps = d.gaps();
    let max = gaps.iter().max().expect("gap vectors are nonempty");
    let min = gaps.iter().min().expect("gap vectors are nonempty");
    max - min
}

/// Width of a marked gap vector.
pub fn marked_width(d: &MarkedDifference) -> u32 {
    width(d.gaps())
}

/// Width of a rhythm, i.e. of its gap vector.
pub fn rhythm_width(a: &Rhythm) -> u32 {
    width(&a.difference())
}

/// The multiset of gaps, as a value -> multiplicity map.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Content(BTreeMap<u32, u32>);

impl Content {
    pub fn multiplicity(&self, gap: u32) -> u32 {
        self.0.get(&gap).copied().unwrap_or(0)
    }

    /// Total number of gaps (counted with multiplicity).
    pub fn total(&self) -> u32 {
        self.0.values().sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.0.iter().map(|(&v, &m)| (v, m))
    }
}

impl fmt::Display for Content {
    /// Compact `gap:count` pairs in ascending gap order, e.g. `2:1,3:2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (v, m) in self.0.iter() {
            if !first {
                write!(f, ",")?;
            }
            write!(f, "{v}:{m}")?;
            first = false;
        }
        Ok(())
    }
}

/// Gap multiset of a gap vector.
pub fn content(d: &DifferenceVector) -> Content {
    let mut map = BTreeMap::new();
    for &g in d.gaps() {
        *map.entry(g).or_insert(0) += 1;
    }
    Content(map)
}

/// Gap multiset of a marked gap vector.
pub fn marked_content(d: &MarkedDifference) -> Content {
    content(d.gaps())
}

/// A rhythm is smooth when its gaps are as equal as integers allow: width
/// at most 1.
pub fn is_smooth(a: &Rhythm) -> bool {
    rhythm_width(a) <= 1
}

/// Whether the marked position carries a maximal gap.
pub fn is_max_marked(d: &MarkedDifference) -> bool {
    let max = *d.gaps().gaps().iter().max().expect("nonempty");
    d.marked_gap() == max
}

/// Numerical criterion for a marked gap vector to be periodic under the
/// deformation step: width at most 1 and the marker on a maximal gap.
pub fn is_quasi_smooth_marked(d: &MarkedDifference) -> bool {
    marked_width(d) <= 1 && is_max_marked(d)
}

/// The same criterion read through the gap image of a marked rhythm.
pub fn is_quasi_smooth_rhythm_marked(a: &MarkedRhythm) -> bool {
    is_quasi_smooth_marked(&a.difference())
}

/// Whether some choice of marker makes the rhythm quasi-smooth.
pub fn is_quasi_smooth_rhythm(a: &Rhythm) -> bool {
    let d = a.difference();
    (0..a.params().onsets()).any(|k| {
        let marked = MarkedDifference::new(k, d.clone()).expect("onset index is a valid marker");
        is_quasi_smooth_marked(&marked)
    })
}

/// Whether one step preserves the measure of this state.
pub fn is_mu_invariant<S: Dynamical>(x: &S) -> Result<bool> {
    Ok(x.step().measure()? == x.measure()?)
}

/// Whether the measure stays constant along the entire forward orbit
/// (checked through one full cycle, after which states repeat).
pub fn is_mu_stable<S: Dynamical>(x: &S) -> Result<bool> {
    let cap = dynamics::default_cap(x.params())?;
    let report = dynamics::orbit(x, cap)?;
    let first = report.measure_trace[0];
    Ok(report.measure_trace.iter().all(|&v| v == first))
}

/// Both sides of the balanced-split inequality
/// `a * b <= floor((a+b)/2) * ceil((a+b)/2)`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct FloorCeilProduct {
    /// `a * b`.
    pub plain: u128,
    /// `floor((a+b)/2) * ceil((a+b)/2)`.
    pub balanced: u128,
    /// Whether the two sides agree (exactly when `|a - b| <= 1`).
    pub equal: bool,
}

/// Evaluates both sides of the balanced-split inequality for positive
/// integers.
pub fn floor_ceil_product(a: u64, b: u64) -> FloorCeilProduct {
    assert!(a >= 1 && b >= 1, "factors must be positive");
    let sum = u128::from(a) + u128::from(b);
    let lo = sum / 2;
    let hi = sum - lo;
    let plain = u128::from(a) * u128::from(b);
    let balanced = lo * hi;
    FloorCeilProduct {
        plain,
        balanced,
        equal: plain == balanced,
    }
}
