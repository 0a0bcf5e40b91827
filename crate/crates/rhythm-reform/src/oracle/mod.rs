//! Brute-force verification of the system's structural claims.
//!
//! [`verify_all`] enumerates the full state spaces for one parameter pair,
//! resolves every orbit exactly ([`SpaceAnalysis`]), and then sweeps a fixed
//! registry of claims, each comparing two independently computed routes to
//! the same fact. A claim passes exactly when the sweep finds zero
//! counterexamples, so the report never asserts anything it did not check.
//!
//! Reports are deterministic: claims appear in registry order, periods are
//! sorted, timing never enters the serialized form. Running the same
//! parameters twice yields byte-identical output.

mod analysis;
mod claims;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use serde::Serialize;

use crate::dynamics;
use crate::enumerate;
use crate::error::{Error, Result};
use crate::rhythm::{MarkedDifference, MarkedRhythm, SpaceParams};

pub use analysis::SpaceAnalysis;

use claims::{Check, Ctx};

/// Largest marked-rhythm space (in states) verified without an explicit
/// override; keeps a full run interactive.
pub const DEFAULT_BUDGET: u128 = 2_000_000;

/// Counterexample lists are cut off here; the full count is still reported.
const MAX_COUNTEREXAMPLES: usize = 10;

/// One state that violated a claim, with both sides of the broken relation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    /// The offending state, in its text format.
    pub state: String,
    /// What the system actually produced.
    pub lhs: String,
    /// What the claim says it should relate to.
    pub rhs: String,
}

/// Outcome of sweeping a single claim over its whole space.
#[derive(Debug, Clone, Serialize)]
pub struct ClaimResult {
    /// Stable identifier, e.g. `"Prop1.1"`.
    pub id: String,
    /// Plain-language statement of the property that was checked.
    pub statement: String,
    /// Exactly how many states (or grid points) the sweep covered.
    pub states_checked: u64,
    /// True exactly when no counterexample was found.
    pub passed: bool,
    /// Total number of violations before truncation.
    pub counterexample_total: u64,
    /// At most [`MAX_COUNTEREXAMPLES`] concrete violations.
    pub counterexamples: Vec<Counterexample>,
    /// Wall-clock time of the sweep. Excluded from serialization so that
    /// reports stay byte-identical across runs.
    #[serde(skip)]
    pub elapsed: Duration,
}

/// Full verdict for one parameter pair.
#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    /// Number of beats on the clock (N).
    pub beats: u32,
    /// Number of onsets per rhythm (n).
    pub onsets: u32,
    /// Size of the marked-rhythm space.
    pub marked_rhythm_states: u64,
    /// Size of the marked-gap-vector space.
    pub marked_difference_states: u64,
    /// Number of distinct rhythms.
    pub rhythm_states: u64,
    /// One entry per claim, in registry order.
    pub claims: Vec<ClaimResult>,
    /// Sorted cycle lengths observed in the deformation system. The return
    /// exponent `n(n-1)` is only an upper bound, so the minimal periods are
    /// recorded rather than asserted.
    pub observed_def_periods: Vec<u64>,
    /// Largest number of smoothing steps over all rhythms; present only
    /// when the smoothing claim ran. No closed formula is asserted.
    pub max_smoothing_steps: Option<u64>,
    /// True exactly when every selected claim passed.
    pub all_passed: bool,
}

/// Knobs for [`verify_all`].
#[derive(Debug, Clone)]
pub struct VerifyOptions {
    /// Refuse spaces whose marked-rhythm count exceeds this.
    pub budget: u128,
    /// Run only the claim with this id, if set.
    pub claim: Option<String>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            budget: DEFAULT_BUDGET,
            claim: None,
        }
    }
}

struct ClaimEntry {
    id: &'static str,
    statement: &'static str,
    run: fn(&Ctx) -> Result<Check>,
}

/// The fixed claim registry; report order is exactly this order.
static CLAIMS: &[ClaimEntry] = &[
    ClaimEntry {
        id: "Prop1.1",
        statement: "taking gap vectors intertwines the reformation and deformation steps",
        run: claims::prop_1_1,
    },
    ClaimEntry {
        id: "Eq1.7",
        statement: "the reformation step commutes with rotating the underlying rhythm",
        run: claims::eq_1_7,
    },
    ClaimEntry {
        id: "Prop3.1",
        statement: "the gap-product measure is invariant under rotation",
        run: claims::prop_3_1,
    },
    ClaimEntry {
        id: "Eq3.6",
        statement: "the measure of a marked rhythm equals the measure of its gap vector",
        run: claims::eq_3_6,
    },
    ClaimEntry {
        id: "Prop3.3",
        statement: "one step never decreases the measure, with equality exactly when the two reworked gaps differ by at most 1",
        run: claims::prop_3_3,
    },
    ClaimEntry {
        id: "Lemma3.1",
        statement: "a*b <= floor((a+b)/2)*ceil((a+b)/2) on the full grid 1..=512, with equality exactly when |a-b| <= 1",
        run: claims::lemma_3_1,
    },
    ClaimEntry {
        id: "Prop2.3",
        statement: "the measure is constant along every cycle of both systems",
        run: claims::prop_2_3,
    },
    ClaimEntry {
        id: "Cor2.1",
        statement: "every periodic state is measure-stable",
        run: claims::cor_2_1,
    },
    ClaimEntry {
        id: "Prop3.2",
        statement: "a marked rhythm is periodic exactly when its gap vector is periodic",
        run: claims::prop_3_2,
    },
    ClaimEntry {
        id: "Prop2.4",
        statement: "the cycle length of a marked rhythm divides the beat count times the cycle length of its gap vector",
        run: claims::prop_2_4,
    },
    ClaimEntry {
        id: "Prop4.1",
        statement: "a measure-preserving step either fixes the gap vector or swaps the two gaps at the marker",
        run: claims::prop_4_1,
    },
    ClaimEntry {
        id: "Cor4.1",
        statement: "the gap multiset is constant along the orbit of every measure-stable state",
        run: claims::cor_4_1,
    },
    ClaimEntry {
        id: "Prop4.2",
        statement: "every measure-stable marked gap vector has width at most 1",
        run: claims::prop_4_2,
    },
    ClaimEntry {
        id: "Lemma4.1",
        statement: "among width-<=1 gap vectors, max-marked ones stay max-marked forever and the others are never periodic",
        run: claims::lemma_4_1,
    },
    ClaimEntry {
        id: "Thm4.1A",
        statement: "the periodic marked gap vectors are exactly the width-<=1 max-marked ones, and each returns to itself after n(n-1) steps",
        run: claims::thm_4_1a,
    },
    ClaimEntry {
        id: "Thm4.1B",
        statement: "a marked rhythm is periodic exactly when its gap vector has width at most 1 and is max-marked",
        run: claims::thm_4_1b,
    },
    ClaimEntry {
        id: "Thm4.2",
        statement: "a rhythm is smooth exactly when some marker makes it periodic, and smoothing reaches a smooth rhythm in the minimal number of steps",
        run: claims::thm_4_2,
    },
    ClaimEntry {
        id: "Validity",
        statement: "step outputs re-validate through the public constructors",
        run: claims::validity,
    },
];

/// All claim ids, in report order.
pub fn claim_ids() -> Vec<&'static str> {
    CLAIMS.iter().map(|c| c.id).collect()
}

/// The exact set of periodic states of the deformation system, found by
/// walking every orbit; never consults the width/max-marked criterion.
pub fn periodic_marked_differences(params: SpaceParams) -> Result<Vec<MarkedDifference>> {
    let analysis = SpaceAnalysis::new(enumerate::marked_differences(params).collect())?;
    Ok(analysis.periodic_states().cloned().collect())
}

/// The exact set of periodic states of the reformation system, by the same
/// brute-force route.
pub fn periodic_marked_rhythms(params: SpaceParams) -> Result<Vec<MarkedRhythm>> {
    let analysis = SpaceAnalysis::new(enumerate::marked_rhythms(params).collect())?;
    Ok(analysis.periodic_states().cloned().collect())
}

/// Run the selected claims (all of them by default) over the full state
/// spaces for `params` and assemble the verdict report.
///
/// # Errors
///
/// [`Error::BudgetExceeded`] when the marked-rhythm space is larger than
/// `options.budget`; [`Error::Parse`] for an unknown claim id; any error the
/// underlying sweeps raise (e.g. measure overflow).
pub fn verify_all(params: SpaceParams, options: &VerifyOptions) -> Result<VerificationReport> {
    let marked_rhythm_states = enumerate::marked_rhythm_count(params)?;
    enumerate::ensure_budget(marked_rhythm_states, options.budget)?;

    let selected: Vec<&ClaimEntry> = match &options.claim {
        None => CLAIMS.iter().collect(),
        Some(id) => {
            let entry = CLAIMS.iter().find(|c| c.id == id.as_str()).ok_or_else(|| {
                Error::Parse(format!(
                    "unknown claim id `{id}`; known ids: {}",
                    claim_ids().join(", ")
                ))
            })?;
            vec![entry]
        }
    };

    let ctx = Ctx::build(params)?;
    let mut results = Vec::with_capacity(selected.len());
    for entry in &selected {
        let start = Instant::now();
        let check = (entry.run)(&ctx)?;
        let elapsed = start.elapsed();
        let total = check.counterexamples.len() as u64;
        let mut counterexamples = check.counterexamples;
        counterexamples.truncate(MAX_COUNTEREXAMPLES);
        results.push(ClaimResult {
            id: entry.id.to_string(),
            statement: entry.statement.to_string(),
            states_checked: check.states_checked,
            passed: total == 0,
            counterexample_total: total,
            counterexamples,
            elapsed,
        });
    }

    let observed_def_periods: Vec<u64> = ctx
        .def_analysis
        .periodic_states()
        .map(|d| ctx.def_analysis.period(d))
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();

    let max_smoothing_steps = if selected.iter().any(|c| c.id == "Thm4.2") {
        let mut max = 0u64;
        for rhythm in &ctx.rhythms {
            let (steps, _) = dynamics::smooth_rhythm(rhythm)?;
            max = max.max(steps);
        }
        Some(max)
    } else {
        None
    };

    let all_passed = results.iter().all(|c| c.passed);
    Ok(VerificationReport {
        beats: params.beats(),
        onsets: params.onsets(),
        marked_rhythm_states: narrow(marked_rhythm_states),
        marked_difference_states: narrow(enumerate::marked_difference_count(params)?),
        rhythm_states: narrow(enumerate::rhythm_count(params)?),
        claims: results,
        observed_def_periods,
        max_smoothing_steps,
        all_passed,
    })
}

/// Space sizes passed the budget check, so they comfortably fit in `u64`.
fn narrow(count: u128) -> u64 {
    u64::try_from(count).expect("space size within budget fits in u64")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(beats: u32, onsets: u32) -> SpaceParams {
        SpaceParams::new(beats, onsets).unwrap()
    }

    #[test]
    fn full_report_for_the_running_example_space() {
        let report = verify_all(params(8, 3), &VerifyOptions::default()).unwrap();
        assert!(report.all_passed);
        assert_eq!(report.beats, 8);
        assert_eq!(report.onsets, 3);
        assert_eq!(report.marked_rhythm_states, 504);
        assert_eq!(report.marked_difference_states, 63);
        assert_eq!(report.rhythm_states, 168);
        assert_eq!(report.claims.len(), CLAIMS.len());
        let ids: Vec<_> = report.claims.iter().map(|c| c.id.as_str()).collect();
        assert_eq!(ids, claim_ids());
        for claim in &report.claims {
            assert!(claim.passed, "{}: {:?}", claim.id, claim.counterexamples.first());
            assert_eq!(claim.counterexample_total, 0);
            assert!(claim.counterexamples.is_empty());
        }
        // The six width-1 max-marked states form a single 6-cycle.
        assert_eq!(report.observed_def_periods, vec![6]);
        // The worked smoothing example needs two steps, so the maximum over
        // the whole space is at least that.
        assert!(report.max_smoothing_steps.unwrap() >= 2);
    }

    #[test]
    fn report_is_byte_stable_across_runs() {
        let a = verify_all(params(8, 3), &VerifyOptions::default()).unwrap();
        let b = verify_all(params(8, 3), &VerifyOptions::default()).unwrap();
        assert_eq!(
            serde_json::to_string(&a).unwrap(),
            serde_json::to_string(&b).unwrap()
        );
    }

    #[test]
    fn claim_filter_selects_a_single_entry() {
        let options = VerifyOptions {
            claim: Some("Thm4.1A".to_string()),
            ..VerifyOptions::default()
        };
        let report = verify_all(params(8, 3), &options).unwrap();
        assert_eq!(report.claims.len(), 1);
        assert_eq!(report.claims[0].id, "Thm4.1A");
        assert!(report.all_passed);
        // The smoothing sweep only runs when its claim is selected.
        assert!(report.max_smoothing_steps.is_none());
    }

    #[test]
    fn unknown_claim_id_is_rejected() {
        let options = VerifyOptions {
            claim: Some("Thm9.9".to_string()),
            ..VerifyOptions::default()
        };
        let err = verify_all(params(8, 3), &options).unwrap_err();
        assert!(matches!(err, Error::Parse(_)), "{err}");
    }

    #[test]
    fn budget_guard_refuses_oversized_spaces() {
        let options = VerifyOptions {
            budget: 100,
            ..VerifyOptions::default()
        };
        let err = verify_all(params(8, 3), &options).unwrap_err();
        assert!(
            matches!(err, Error::BudgetExceeded { size: 504, budget: 100 }),
            "{err}"
        );
    }

    #[test]
    fn periodic_sets_match_between_the_two_systems() {
        let p = params(8, 3);
        let diffs = periodic_marked_differences(p).unwrap();
        assert_eq!(diffs.len(), 6);
        // Lifting over all anchors multiplies the count by the beat number.
        let rhythms = periodic_marked_rhythms(p).unwrap();
        assert_eq!(rhythms.len(), 6 * 8);
        for marked in &rhythms {
            assert!(diffs.contains(&marked.difference()));
        }
    }

    #[test]
    fn verify_all_passes_on_a_mid_sized_space() {
        let report = verify_all(params(12, 5), &VerifyOptions::default()).unwrap();
        assert!(report.all_passed);
        assert_eq!(report.marked_difference_states, 1650);
    }
}
