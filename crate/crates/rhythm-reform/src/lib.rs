//! Smoothing of cyclic rhythms by iterated local averaging.
//!
//! A rhythm is `n` distinct onsets on a circle of `N` beats, listed in
//! cyclic order.  Marking one onset and repeatedly replacing the marked
//! entry by the discrete average of its neighbours (then advancing the
//! marker) evens the rhythm out: after finitely many steps all cyclic gaps
//! differ by at most one, and from then on the shape only rotates.  This
//! crate implements that dynamical system, the quotient system on gap
//! vectors, the gap-product measure that certifies progress, exhaustive
//! verification of the system's structural laws at desk scale, and an SVG
//! circle-graph renderer.  The `rhythm-reform` binary exposes all of it on
//! the command line.
//!
//! # Quick start
//!
//! ```
//! use rhythm_reform::{Rhythm, SpaceParams, dynamics, measure};
//!
//! let params = SpaceParams::new(8, 3)?;
//! let clumped = Rhythm::new(params, vec![0, 1, 2])?;
//! assert!(!measure::is_smooth(&clumped));
//!
//! let (steps, smooth) = dynamics::smooth_rhythm(&clumped)?;
//! assert_eq!(steps, 2);
//! assert_eq!(smooth.entries(), &[5, 7, 2]);
//! assert!(measure::is_smooth(&smooth));
//! # Ok::<(), rhythm_reform::Error>(())
//! ```
//!
//! # Module map
//!
//! - [`modular`]: residue arithmetic on `Z_m`.
//! - [`rhythm`]: the four state types and their constructors.
//! - [`text`]: the single-line `key=value` state format.
//! - [`dynamics`]: the two step maps, orbits, smoothing.
//! - [`measure`]: gap products, width, content, smoothness predicates.
//! - [`enumerate`]: exhaustive state-space enumeration.
//! - [`oracle`]: brute-force verification of the system's laws.
//! - [`render`]: SVG circle graphs of marked rhythms.

#![forbid(unsafe_code)]

pub mod dynamics;
pub mod enumerate;
pub mod error;
pub mod measure;
pub mod modular;
pub mod oracle;
pub mod render;
pub mod rhythm;
pub mod text;

pub use error::{Error, Result};
pub use modular::Modulus;
pub use rhythm::{DifferenceVector, MarkedDifference, MarkedRhythm, Rhythm, SpaceParams};

#[cfg(test)]
pub(crate) mod testutil;
