//! The unsigned scalar type the digit machinery is generic over.
//!
//! Digits, carries, moduli and coalgebra states are all plain natural
//! numbers; nothing in the recurrences cares whether those naturals are
//! machine words or heap-allocated big integers. [`Nat`] captures the
//! arithmetic the library needs and the crate root pins down the two
//! instantiations that matter in practice:
//!
//! * [`BigUint`] — exact for every prime and every precision. This is the
//!   canonical scalar; use it unless profiling says otherwise.
//! * `u64` / `u128` — fast, but the caller owns the overflow analysis.
//!   Multiplication carries grow like `N * p^2` for `N` forced digits, so a
//!   `u64` scalar is comfortable for, say, `p <= 65537` and a few thousand
//!   digits, and wrong far beyond that. Overflow panics in debug builds
//!   rather than wrapping.

use std::fmt::{Debug, Display};

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{FromPrimitive, ToPrimitive, Unsigned};

/// Natural-number scalar: digit values, carries, and coalgebra states.
pub trait Nat:
    Integer + Unsigned + FromPrimitive + ToPrimitive + Clone + Debug + Display + Send + Sync + 'static
{
    /// Converts from an arbitrary-precision natural, if it fits.
    fn from_biguint(v: &BigUint) -> Option<Self>;

    /// Converts into an arbitrary-precision natural (always possible).
    fn to_biguint(&self) -> BigUint;
}

impl Nat for u64 {
    fn from_biguint(v: &BigUint) -> Option<Self> {
        ToPrimitive::to_u64(v)
    }

    fn to_biguint(&self) -> BigUint {
        BigUint::from(*self)
    }
}

impl Nat for u128 {
    fn from_biguint(v: &BigUint) -> Option<Self> {
        ToPrimitive::to_u128(v)
    }

    fn to_biguint(&self) -> BigUint {
        BigUint::from(*self)
    }
}

impl Nat for BigUint {
    fn from_biguint(v: &BigUint) -> Option<Self> {
        Some(v.clone())
    }

    fn to_biguint(&self) -> BigUint {
        self.clone()
    }
}
