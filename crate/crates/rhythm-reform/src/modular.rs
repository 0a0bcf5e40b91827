//! Residue arithmetic on `Z_m = {0, 1, ..., m-1}`.
//!
//! All cyclic structure in this crate (beat positions, onset indices,
//! markers) reduces to a handful of operations on `Z_m`, collected here on
//! the [`Modulus`] type.  Elements are plain `u32` values; the operations
//! assert that their operands are in range, since out-of-range residues can
//! only arise from a bug in the caller.

use crate::error::{Error, Result};

/// A modulus `m >= 3` together with arithmetic on `Z_m`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Modulus(u32);

impl Modulus {
    /// Creates a modulus; values below 3 are rejected.
    pub fn new(m: u32) -> Result<Self> {
        if m < 3 {
            return Err(Error::InvalidModulus(m));
        }
        Ok(Self(m))
    }

    /// Internal constructor for moduli that were validated elsewhere.
    pub(crate) fn new_unchecked(m: u32) -> Self {
        debug_assert!(m >= 3, "modulus {m} below 3");
        Self(m)
    }

    /// The raw modulus value.
    pub fn get(self) -> u32 {
        self.0
    }

    /// Least nonnegative remainder of an arbitrary integer.
    pub fn residue(self, x: i64) -> u32 {
        x.rem_euclid(i64::from(self.0)) as u32
    }

    fn check(self, v: u32) {
        assert!(v < self.0, "operand {v} out of range for Z_{}", self.0);
    }

    /// Residue addition; both operands must already lie in `Z_m`.
    pub fn add(self, a: u32, b: u32) -> u32 {
        self.check(a);
        self.check(b);
        ((u64::from(a) + u64::from(b)) % u64::from(self.0)) as u32
    }

    /// Residue subtraction; both operands must already lie in `Z_m`.
    pub fn sub(self, a: u32, b: u32) -> u32 {
        self.check(a);
        self.check(b);
        if a >= b {
            a - b
        } else {
            a + self.0 - b
        }
    }

    /// The wrap-around closed interval `[a, b]`: `a, a+1, ..., b` stepping
    /// by one modulo `m`.  The endpoints must differ.
    pub fn interval(self, a: u32, b: u32) -> Result<Vec<u32>> {
        self.check(a);
        self.check(b);
        if a == b {
            return Err(Error::IntervalEndpointsEqual(a));
        }
        let mut out = vec![a];
        let mut cur = a;
        while cur != b {
            cur = self.add(cur, 1);
            out.push(cur);
        }
        Ok(out)
    }
}
