//! The individual verification claims.
//!
//! Every claim sweeps an entire enumerated space (or an integer grid) and
//! collects counterexamples; a claim passes exactly when none are found.
//! Periodicity and stability always come from the brute-force
//! [`SpaceAnalysis`], never from the numerical criteria under test, so the
//! characterization claims compare two independent routes.

use crate::dynamics;
use crate::enumerate;
use crate::error::Result;
use crate::measure;
use crate::oracle::analysis::SpaceAnalysis;
use crate::oracle::Counterexample;
use crate::rhythm::{DifferenceVector, MarkedDifference, MarkedRhythm, Rhythm, SpaceParams};

/// Side of the integer grid on which the balanced-split inequality is
/// checked.
pub(crate) const LEMMA_GRID: u64 = 512;

/// Everything a claim may need, computed once per verification run.
pub(crate) struct Ctx {
    pub params: SpaceParams,
    pub marked_rhythms: Vec<MarkedRhythm>,
    pub marked_diffs: Vec<MarkedDifference>,
    pub rhythms: Vec<Rhythm>,
    pub ref_analysis: SpaceAnalysis<MarkedRhythm>,
    pub def_analysis: SpaceAnalysis<MarkedDifference>,
}

impl Ctx {
    pub(crate) fn build(params: SpaceParams) -> Result<Self> {
        let marked_rhythms: Vec<_> = enumerate::marked_rhythms(params).collect();
        let marked_diffs: Vec<_> = enumerate::marked_differences(params).collect();
        let rhythms: Vec<_> = enumerate::rhythms(params).collect();
        let ref_analysis = SpaceAnalysis::new(marked_rhythms.clone())?;
        let def_analysis = SpaceAnalysis::new(marked_diffs.clone())?;
        Ok(Self {
            params,
            marked_rhythms,
            marked_diffs,
            rhythms,
            ref_analysis,
            def_analysis,
        })
    }
}

/// Result of one claim sweep.
pub(crate) struct Check {
    pub states_checked: u64,
    pub counterexamples: Vec<Counterexample>,
}

fn cex(state: impl ToString, lhs: impl ToString, rhs: impl ToString) -> Counterexample {
    Counterexample {
        state: state.to_string(),
        lhs: lhs.to_string(),
        rhs: rhs.to_string(),
    }
}

/// Shared body of the commutation claim, parameterized over the
/// deformation step so the harness itself can be mutation-tested.
fn commutation_check(
    states: &[MarkedRhythm],
    def_step: impl Fn(&MarkedDifference) -> MarkedDifference,
) -> Vec<Counterexample> {
    let mut out = Vec::new();
    for a in states {
        let via_rhythm = dynamics::ref_step(a).difference();
        let via_gaps = def_step(&a.difference());
        if via_rhythm != via_gaps {
            out.push(cex(a, via_rhythm, via_gaps));
        }
    }
    out
}

/// Taking gaps intertwines the two step maps.
pub(crate) fn prop_1_1(ctx: &Ctx) -> Result<Check> {
    Ok(Check {
        states_checked: ctx.marked_rhythms.len() as u64,
        counterexamples: commutation_check(&ctx.marked_rhythms, dynamics::def_step),
    })
}

/// The reformation step commutes with rotating the whole rhythm.
pub(crate) fn eq_1_7(ctx: &Ctx) -> Result<Check> {
    let mut counterexamples = Vec::new();
    for a in &ctx.marked_rhythms {
        let lhs = dynamics::ref_step(&a.translate());
        let rhs = dynamics::ref_step(a).translate();
        if lhs != rhs {
            counterexamples.push(cex(a, lhs, rhs));
        }
    }
    Ok(Check {
        states_checked: ctx.marked_rhythms.len() as u64,
        counterexamples,
    })
}

/// The measure is blind to rotation.
pub(crate) fn prop_3_1(ctx: &Ctx) -> Result<Check> {
    let mut counterexamples = Vec::new();
    for a in &ctx.marked_rhythms {
        let lhs = measure::mu_marked_rhythm(&a.translate())?;
        let rhs = measure::mu_marked_rhythm(a)?;
        if lhs != rhs {
            counterexamples.push(cex(a, lhs, rhs));
        }
    }
    Ok(Check {
        states_checked: ctx.marked_rhythms.len() as u64,
        counterexamples,
    })
}

/// The measure of a marked rhythm equals the measure of its gap image
/// (two independently coded products).
pub(crate) fn eq_3_6(ctx: &Ctx) -> Result<Check> {
    let mut counterexamples = Vec::new();
    for a in &ctx.marked_rhythms {
        let lhs = measure::mu_marked_difference(&a.difference())?;
        let rhs = measure::mu_marked_rhythm(a)?;
        if lhs != rhs {
            counterexamples.push(cex(a, lhs, rhs));
        }
    }
    Ok(Check {
        states_checked: ctx.marked_rhythms.len() as u64,
        counterexamples,
    })
}

/// One step never decreases the measure, and preserves it exactly when
/// the two reworked gaps differ by at most one.
pub(crate) fn prop_3_3(ctx: &Ctx) -> Result<Check> {
    let mut counterexamples = Vec::new();
    for a in &ctx.marked_rhythms {
        let before = measure::mu_marked_rhythm(a)?;
        let after = measure::mu_marked_rhythm(&dynamics::ref_step(a))?;
        if after < before {
            counterexamples.push(cex(a, format!("mu(step)={after}"), format!("mu={before}")));
        }
    }
    for d in &ctx.marked_diffs {
        let before = measure::mu_marked_difference(d)?;
        let after = measure::mu_marked_difference(&dynamics::def_step(d))?;
        if after < before {
            counterexamples.push(cex(d, format!("mu(step)={after}"), format!("mu={before}")));
            continue;
        }
        let k = d.marker();
        let k1 = d.params().onset_modulus().add(k, 1);
        let gap = d.gaps().gaps()[k as usize];
        let gap1 = d.gaps().gaps()[k1 as usize];
        let near = gap.abs_diff(gap1) <= 1;
        if (after == before) != near {
            counterexamples.push(cex(
                d,
                format!("mu {before} -> {after}"),
                format!("|{gap} - {gap1}| <= 1 is {near}"),
            ));
        }
    }
    Ok(Check {
        states_checked: (ctx.marked_rhythms.len() + ctx.marked_diffs.len()) as u64,
        counterexamples,
    })
}

/// Balanced splits maximize products: `a*b <= floor((a+b)/2)*ceil((a+b)/2)`
/// on a full integer grid, with equality exactly at near-splits.
pub(crate) fn lemma_3_1(_ctx: &Ctx) -> Result<Check> {
    let mut counterexamples = Vec::new();
    for a in 1..=LEMMA_GRID {
        for b in 1..=LEMMA_GRID {
            let fc = measure::floor_ceil_product(a, b);
            if fc.plain > fc.balanced {
                counterexamples.push(cex(
                    format!("a={a} b={b}"),
                    fc.plain,
                    fc.balanced,
                ));
            } else if fc.equal != (a.abs_diff(b) <= 1) {
                counterexamples.push(cex(
                    format!("a={a} b={b}"),
                    format!("equal={}", fc.equal),
                    format!("|a-b|<=1 is {}", a.abs_diff(b) <= 1),
                ));
            }
        }
    }
    Ok(Check {
        states_checked: LEMMA_GRID * LEMMA_GRID,
        counterexamples,
    })
}

/// The measure is constant along every cycle.
pub(crate) fn prop_2_3(ctx: &Ctx) -> Result<Check> {
    let mut counterexamples = Vec::new();
    for a in &ctx.marked_rhythms {
        if ctx.ref_analysis.is_periodic(a) {
            let lhs = ctx.ref_analysis.measure_of(ctx.ref_analysis.successor(a));
            let rhs = ctx.ref_analysis.measure_of(a);
            if lhs != rhs {
                counterexamples.push(cex(a, lhs, rhs));
            }
        }
    }
    for d in &ctx.marked_diffs {
        if ctx.def_analysis.is_periodic(d) {
            let lhs = ctx.def_analysis.measure_of(ctx.def_analysis.successor(d));
            let rhs = ctx.def_analysis.measure_of(d);
            if lhs != rhs {
                counterexamples.push(cex(d, lhs, rhs));
            }
        }
    }
    Ok(Check {
        states_checked: (ctx.marked_rhythms.len() + ctx.marked_diffs.len()) as u64,
        counterexamples,
    })
}

/// Every periodic state is measure-stable.
pub(crate) fn cor_2_1(ctx: &Ctx) -> Result<Check> {
    let mut counterexamples = Vec::new();
    for a in &ctx.marked_rhythms {
        if ctx.ref_analysis.is_periodic(a) && !ctx.ref_analysis.is_stable(a) {
            counterexamples.push(cex(a, "periodic", "not stable"));
        }
    }
    for d in &ctx.marked_diffs {
        if ctx.def_analysis.is_periodic(d) && !ctx.def_analysis.is_stable(d) {
            counterexamples.push(cex(d, "periodic", "not stable"));
        }
    }
    Ok(Check {
        states_checked: (ctx.marked_rhythms.len() + ctx.marked_diffs.len()) as u64,
        counterexamples,
    })
}

/// A marked rhythm is periodic exactly when its gap image is.
pub(crate) fn prop_3_2(ctx: &Ctx) -> Result<Check> {
    let mut counterexamples = Vec::new();
    for a in &ctx.marked_rhythms {
        let lhs = ctx.ref_analysis.is_periodic(a);
        let rhs = ctx.def_analysis.is_periodic(&a.difference());
        if lhs != rhs {
            counterexamples.push(cex(a, format!("periodic={lhs}"), format!("gap image periodic={rhs}")));
        }
    }
    Ok(Check {
        states_checked: ctx.marked_rhythms.len() as u64,
        counterexamples,
    })
}

/// The cycle length reached by a marked rhythm divides the beat count
/// times the cycle length reached by its gap image.
pub(crate) fn prop_2_4(ctx: &Ctx) -> Result<Check> {
    let beats = u64::from(ctx.params.beats());
    let mut counterexamples = Vec::new();
    for a in &ctx.marked_rhythms {
        let up = ctx.ref_analysis.period(a);
        let down = ctx.def_analysis.period(&a.difference());
        if !(beats * down).is_multiple_of(up) {
            counterexamples.push(cex(
                a,
                format!("period={up}"),
                format!("N*gap period={}", beats * down),
            ));
        }
    }
    Ok(Check {
        states_checked: ctx.marked_rhythms.len() as u64,
        counterexamples,
    })
}

/// A measure-preserving step either leaves the gap vector unchanged (the
/// gap after the marker exceeds the marked gap by one) or applies the
/// adjacent swap (it equals the marked gap or falls short by one).
pub(crate) fn prop_4_1(ctx: &Ctx) -> Result<Check> {
    let mut counterexamples = Vec::new();
    for d in &ctx.marked_diffs {
        let before = measure::mu_marked_difference(d)?;
        let stepped = dynamics::def_step(d);
        if measure::mu_marked_difference(&stepped)? != before {
            continue;
        }
        let k = d.marker();
        let k1 = d.params().onset_modulus().add(k, 1);
        let gap = d.gaps().gaps()[k as usize];
        let gap1 = d.gaps().gaps()[k1 as usize];
        let expected_gaps = if gap1 == gap + 1 {
            d.gaps().clone()
        } else if gap1 == gap || gap1 + 1 == gap {
            d.gaps().transpose_adjacent(k)
        } else {
            counterexamples.push(cex(
                d,
                "measure preserved",
                format!("gaps {gap},{gap1} differ by more than 1"),
            ));
            continue;
        };
        let expected = MarkedDifference::new(k1, expected_gaps)
            .expect("advanced marker stays in range");
        if stepped != expected {
            counterexamples.push(cex(d, &stepped, expected));
        }
    }
    Ok(Check {
        states_checked: ctx.marked_diffs.len() as u64,
        counterexamples,
    })
}

/// The gap multiset never changes along the orbit of a stable state.
pub(crate) fn cor_4_1(ctx: &Ctx) -> Result<Check> {
    let mut counterexamples = Vec::new();
    for d in &ctx.marked_diffs {
        if !ctx.def_analysis.is_stable(d) {
            continue;
        }
        let reference = measure::marked_content(d);
        let steps = ctx.def_analysis.transient_length(d) + ctx.def_analysis.period(d);
        let mut current = d.clone();
        for _ in 0..steps {
            current = dynamics::def_step(&current);
            let seen = measure::marked_content(&current);
            if seen != reference {
                counterexamples.push(cex(d, &reference, seen));
                break;
            }
        }
    }
    Ok(Check {
        states_checked: ctx.marked_diffs.len() as u64,
        counterexamples,
    })
}

/// Stability forces width at most one.
pub(crate) fn prop_4_2(ctx: &Ctx) -> Result<Check> {
    let mut counterexamples = Vec::new();
    for d in &ctx.marked_diffs {
        if ctx.def_analysis.is_stable(d) && measure::marked_width(d) > 1 {
            counterexamples.push(cex(d, "stable", format!("width={}", measure::marked_width(d))));
        }
    }
    Ok(Check {
        states_checked: ctx.marked_diffs.len() as u64,
        counterexamples,
    })
}

/// Among width-1 (or flat) states: max-marked ones stay max-marked along
/// their whole orbit, and the rest are never periodic.
pub(crate) fn lemma_4_1(ctx: &Ctx) -> Result<Check> {
    let mut counterexamples = Vec::new();
    for d in &ctx.marked_diffs {
        if measure::marked_width(d) > 1 {
            continue;
        }
        if measure::is_max_marked(d) {
            let steps = ctx.def_analysis.transient_length(d) + ctx.def_analysis.period(d);
            let mut current = d.clone();
            for i in 0..steps {
                current = dynamics::def_step(&current);
                if !measure::is_max_marked(&current) {
                    counterexamples.push(cex(
                        d,
                        format!("iterate {} = {current}", i + 1),
                        "not max-marked",
                    ));
                    break;
                }
            }
        } else if ctx.def_analysis.is_periodic(d) {
            counterexamples.push(cex(d, "not max-marked", "periodic"));
        }
    }
    Ok(Check {
        states_checked: ctx.marked_diffs.len() as u64,
        counterexamples,
    })
}

/// The periodic marked gap vectors are exactly those of width at most one
/// with the marker on a maximal gap, and each returns to itself after
/// `n(n-1)` steps.
pub(crate) fn thm_4_1a(ctx: &Ctx) -> Result<Check> {
    let onsets = u64::from(ctx.params.onsets());
    let full_cycle = onsets * (onsets - 1);
    let mut counterexamples = Vec::new();
    for d in &ctx.marked_diffs {
        let brute = ctx.def_analysis.is_periodic(d);
        let criterion = measure::is_quasi_smooth_marked(d);
        if brute != criterion {
            counterexamples.push(cex(
                d,
                format!("periodic={brute}"),
                format!("width<=1 and max-marked is {criterion}"),
            ));
            continue;
        }
        if brute {
            let mut current = d.clone();
            for _ in 0..full_cycle {
                current = dynamics::def_step(&current);
            }
            if &current != d {
                counterexamples.push(cex(d, format!("after n(n-1)={full_cycle} steps: {current}"), d));
            }
        }
    }
    Ok(Check {
        states_checked: ctx.marked_diffs.len() as u64,
        counterexamples,
    })
}

/// A marked rhythm is periodic exactly when its gap image has width at
/// most one and is max-marked.
pub(crate) fn thm_4_1b(ctx: &Ctx) -> Result<Check> {
    let mut counterexamples = Vec::new();
    for a in &ctx.marked_rhythms {
        let brute = ctx.ref_analysis.is_periodic(a);
        let criterion = measure::is_quasi_smooth_rhythm_marked(a);
        if brute != criterion {
            counterexamples.push(cex(
                a,
                format!("periodic={brute}"),
                format!("criterion={criterion}"),
            ));
        }
    }
    Ok(Check {
        states_checked: ctx.marked_rhythms.len() as u64,
        counterexamples,
    })
}

/// A rhythm is smooth exactly when some marker makes it periodic, and the
/// smoothing routine reports the minimal number of steps.
pub(crate) fn thm_4_2(ctx: &Ctx) -> Result<Check> {
    let mut counterexamples = Vec::new();
    let cap = dynamics::default_cap(ctx.params)?;
    for a in &ctx.rhythms {
        let smooth = measure::is_smooth(a);
        let brute = (0..ctx.params.onsets()).any(|k| {
            let marked = MarkedRhythm::new(k, a.clone()).expect("onset index is a valid marker");
            ctx.ref_analysis.is_periodic(&marked)
        });
        if smooth != brute {
            counterexamples.push(cex(
                a,
                format!("smooth={smooth}"),
                format!("some marker periodic={brute}"),
            ));
            continue;
        }
        if measure::is_quasi_smooth_rhythm(a) != brute {
            counterexamples.push(cex(
                a,
                format!("criterion={}", measure::is_quasi_smooth_rhythm(a)),
                format!("some marker periodic={brute}"),
            ));
            continue;
        }
        // Minimality: locate the first smooth state on the recorded orbit
        // independently of the smoothing loop.
        let (steps, result) = dynamics::smooth_rhythm(a)?;
        let start = MarkedRhythm::new(0, a.clone()).expect("marker 0 is valid");
        let report = dynamics::ref_orbit(&start, cap)?;
        match report.smooth_index {
            None => counterexamples.push(cex(a, "orbit recorded", "no smooth state on it")),
            Some(idx) => {
                if steps != idx as u64 || report.states[idx].rhythm() != &result {
                    counterexamples.push(cex(
                        a,
                        format!("smoothing: {steps} steps to {result}"),
                        format!("orbit scan: {} steps to {}", idx, report.states[idx].rhythm()),
                    ));
                }
            }
        }
    }
    Ok(Check {
        states_checked: ctx.rhythms.len() as u64,
        counterexamples,
    })
}

/// Step outputs survive re-validation through the public constructors.
pub(crate) fn validity(ctx: &Ctx) -> Result<Check> {
    let mut counterexamples = Vec::new();
    for a in &ctx.marked_rhythms {
        let stepped = dynamics::ref_step(a);
        let rebuilt = Rhythm::new(stepped.params(), stepped.rhythm().entries().to_vec())
            .and_then(|r| MarkedRhythm::new(stepped.marker(), r));
        if let Err(e) = rebuilt {
            counterexamples.push(cex(a, &stepped, format!("rejected: {e}")));
        }
    }
    for d in &ctx.marked_diffs {
        let stepped = dynamics::def_step(d);
        let rebuilt = DifferenceVector::new(stepped.params(), stepped.gaps().gaps().to_vec())
            .and_then(|g| MarkedDifference::new(stepped.marker(), g));
        if let Err(e) = rebuilt {
            counterexamples.push(cex(d, &stepped, format!("rejected: {e}")));
        }
    }
    Ok(Check {
        states_checked: (ctx.marked_rhythms.len() + ctx.marked_diffs.len()) as u64,
        counterexamples,
    })
}
