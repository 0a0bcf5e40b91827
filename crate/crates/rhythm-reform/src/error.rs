//! Error type shared by the whole crate.
//!
//! Every fallible operation returns [`Result`]; arithmetic that could wrap
//! (measure products, state-space counts) is checked and reported as an
//! explicit error rather than being allowed to overflow silently.

/// Errors produced by constructors, parsers, dynamics and the verification
/// oracle.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// Residue arithmetic is only defined for moduli of at least 3 here.
    #[error("modulus must be at least 3, got {0}")]
    InvalidModulus(u32),

    /// Space parameters must satisfy `3 <= onsets <= beats`.
    #[error("space parameters must satisfy 3 <= onsets <= beats, got beats={beats} onsets={onsets}")]
    InvalidParams { beats: u32, onsets: u32 },

    /// A beat entry lies outside `0..beats`.
    #[error("entry {entry} is outside the beat range 0..{beats}")]
    EntryOutOfRange { entry: u32, beats: u32 },

    /// Rhythm entries must be mutually distinct.
    #[error("duplicate entry {0}")]
    DuplicateEntry(u32),

    /// A tuple with the wrong number of components.
    #[error("expected {expected} components, got {got}")]
    WrongLength { got: usize, expected: usize },

    /// Entries are distinct but wind around the circle more than once, so
    /// they are not in cyclic order.
    #[error("cyclic gaps sum to {sum}, expected {beats}: entries are not in single-winding cyclic order")]
    GapSumMismatch { sum: u64, beats: u32 },

    /// A gap must be a nonzero residue, i.e. lie in `1..beats`.
    #[error("gap {gap} is outside the valid range 1..{beats}")]
    GapOutOfRange { gap: u32, beats: u32 },

    /// A marker must select one of the onsets.
    #[error("marker {marker} is outside the onset range 0..{onsets}")]
    MarkerOutOfRange { marker: u32, onsets: u32 },

    /// Wrap-around intervals are only defined for distinct endpoints.
    #[error("interval endpoints must be distinct, got {0} twice")]
    IntervalEndpointsEqual(u32),

    /// A gap product no longer fits in 128 bits.  The measure has exact
    /// integer semantics, so this is reported instead of wrapping.
    #[error("measure product exceeds the 128-bit range")]
    MeasureOverflow,

    /// An orbit failed to close within the configured step cap.  With the
    /// default cap (state-space size plus one) this can only happen if the
    /// step map is broken, so it is reported loudly.
    #[error("orbit did not close within {cap} steps")]
    CapExceeded { cap: u64 },

    /// An enumeration or verification run would touch more states than the
    /// caller allowed.
    #[error("state space has {size} states, exceeding the budget of {budget}")]
    BudgetExceeded { size: u128, budget: u128 },

    /// Intermediate arithmetic (e.g. a binomial coefficient) overflowed.
    #[error("arithmetic overflow while computing {0}")]
    Overflow(&'static str),

    /// A state line did not match the expected text format.
    #[error("parse error: {0}")]
    Parse(String),

    /// A rendering style with non-positive or inconsistent dimensions.
    #[error("invalid style: {0}")]
    InvalidStyle(String),
}

/// Crate-wide result alias.
pub type Result<T, E = Error> = std::result::Result<T, E>;
