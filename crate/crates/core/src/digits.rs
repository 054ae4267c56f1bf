//! Validated primes, single digits, and the quotient/remainder bookkeeping
//! that drives every carry in the crate.
//!
//! For a prime `p`, every natural `n` splits uniquely as
//! `n = carry_quot(n, p) * p + residue(n, p)` with the residue in
//! `{0, ..., p-1}`. [`residue`] is the digit that gets emitted,
//! [`carry_quot`] is the carry that flows into the next position.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::One;

use crate::error::Error;
use crate::num::Nat;

/// A validated prime modulus.
///
/// Construction checks primality (deterministic Miller–Rabin for moduli below
/// ~2^81, trial division beyond that), so holding a `Prime` is proof the
/// modulus is usable. Clones are cheap; the value is shared.
#[derive(Clone, PartialEq, Eq)]
pub struct Prime<N: Nat> {
    value: Arc<N>,
}

impl<N: Nat> Prime<N> {
    /// Validates `p` and wraps it. Fails with [`Error::NotPrime`] on
    /// composites, 0 and 1.
    pub fn new(p: N) -> Result<Self, Error> {
        if is_prime(&p.to_biguint()) {
            Ok(Prime { value: Arc::new(p) })
        } else {
            Err(Error::NotPrime(p.to_string()))
        }
    }

    pub fn value(&self) -> &N {
        &self.value
    }

    pub fn to_biguint(&self) -> BigUint {
        self.value.to_biguint()
    }

    /// Wraps `value` as a digit of this prime, checking `value < p`.
    pub fn digit(&self, value: N) -> Result<Digit<N>, Error> {
        if value < *self.value {
            Ok(Digit { value, prime: self.clone() })
        } else {
            Err(Error::DigitOutOfRange {
                value: value.to_string(),
                prime: self.value.to_string(),
            })
        }
    }

    pub(crate) fn digit_unchecked(&self, value: N) -> Digit<N> {
        debug_assert!(value < *self.value);
        Digit { value, prime: self.clone() }
    }
}

impl<N: Nat> fmt::Debug for Prime<N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Prime({})", self.value)
    }
}

impl<N: Nat> fmt::Display for Prime<N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.value, f)
    }
}

/// A single base-`p` digit: a natural in `{0, ..., p-1}` tagged with its
/// modulus.
#[derive(Clone, PartialEq, Eq)]
pub struct Digit<N: Nat> {
    value: N,
    prime: Prime<N>,
}

impl<N: Nat> Digit<N> {
    pub fn value(&self) -> &N {
        &self.value
    }

    pub fn prime(&self) -> &Prime<N> {
        &self.prime
    }

    pub fn into_value(self) -> N {
        self.value
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }
}

impl<N: Nat> fmt::Debug for Digit<N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Digit({} mod {})", self.value, self.prime)
    }
}

impl<N: Nat> fmt::Display for Digit<N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.value, f)
    }
}

/// The digit of `n`: the element of `{0, ..., p-1}` congruent to `n` mod `p`.
pub fn residue<N: Nat>(n: &N, p: &Prime<N>) -> Digit<N> {
    p.digit_unchecked(n.mod_floor(p.value()))
}

/// The carry of `n`: the unique natural with `n = carry_quot(n, p) * p + residue(n, p)`.
pub fn carry_quot<N: Nat>(n: &N, p: &Prime<N>) -> N {
    n.div_floor(p.value())
}

/// Checks the carry shift identity `carry_quot(m*p + n) = m + carry_quot(n)`.
///
/// This is a theorem, so the function always returns true; it exists so tests
/// can exercise the identity on sampled inputs.
pub fn lemma_tech_check<N: Nat>(m: &N, n: &N, p: &Prime<N>) -> bool {
    let shifted = m.clone() * p.value().clone() + n.clone();
    carry_quot(&shifted, p) == m.clone() + carry_quot(n, p)
}

/// Deterministic primality test on arbitrary-precision naturals.
///
/// Small candidates fall to trial division; candidates below the proven
/// Miller–Rabin bound 3,317,044,064,679,887,385,961,981 use the standard
/// twelve-witness set; anything larger falls back to (correct, slow) trial
/// division.
pub(crate) fn is_prime(n: &BigUint) -> bool {
    let two = BigUint::from(2u32);
    if *n < two {
        return false;
    }
    const SMALL_PRIMES: [u32; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for sp in SMALL_PRIMES {
        let sp = BigUint::from(sp);
        if *n == sp {
            return true;
        }
        if n.is_multiple_of(&sp) {
            return false;
        }
    }

    // 12-witness deterministic bound.
    let mr_bound: BigUint = "3317044064679887385961981".parse().unwrap();
    if *n < mr_bound {
        return miller_rabin(n, &SMALL_PRIMES);
    }
    trial_division(n)
}

fn miller_rabin(n: &BigUint, witnesses: &[u32]) -> bool {
    let one = BigUint::one();
    let two = BigUint::from(2u32);
    let n_minus_1 = n - &one;

    let mut d = n_minus_1.clone();
    let mut s = 0u32;
    while d.is_even() {
        d >>= 1;
        s += 1;
    }

    'witness: for &a in witnesses {
        let a = BigUint::from(a);
        if a >= *n {
            continue;
        }
        let mut x = a.modpow(&d, n);
        if x == one || x == n_minus_1 {
            continue;
        }
        for _ in 0..s.saturating_sub(1) {
            x = x.modpow(&two, n);
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn trial_division(n: &BigUint) -> bool {
    let limit = n.sqrt();
    let mut d = BigUint::from(41u32);
    let two = BigUint::from(2u32);
    while d <= limit {
        if n.is_multiple_of(&d) {
            return false;
        }
        d += &two;
    }
    true
}
