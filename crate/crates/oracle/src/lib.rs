//! Ground-truth modular arithmetic for checking stream-based p-adic code.
//!
//! Everything here works directly in `Z/p^N` with [`num_bigint`] integers and
//! shares no code with any digit-stream implementation. That separation is the
//! point: when a lazy carry automaton and this crate agree on
//! `(lhs op rhs) mod p^N`, the agreement is evidence, not circularity.
//!
//! Speed is a non-goal.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// The binary operation a query asks about.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleOp {
    Add,
    Mul,
}

/// A single ground-truth question: `(lhs op rhs) mod p^n`.
///
/// `n` is expected to be at least 1; `p` is expected to be prime, but nothing
/// here depends on primality.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleQuery {
    pub lhs: BigInt,
    pub rhs: BigInt,
    pub op: OracleOp,
    pub p: BigUint,
    pub n: usize,
}

impl OracleQuery {
    pub fn new(lhs: BigInt, rhs: BigInt, op: OracleOp, p: BigUint, n: usize) -> Self {
        assert!(n >= 1, "oracle precision must be at least 1 digit");
        OracleQuery { lhs, rhs, op, p, n }
    }
}

/// `p^n`, the modulus a query reduces by.
pub fn power_modulus(p: &BigUint, n: usize) -> BigUint {
    p.pow(u32::try_from(n).expect("precision exceeds u32"))
}

/// Least nonnegative residue of `z` modulo `modulus`.
pub fn reduce(z: &BigInt, modulus: &BigUint) -> BigUint {
    let m = BigInt::from(modulus.clone());
    let r = z.mod_floor(&m);
    debug_assert!(!r.is_negative());
    r.to_biguint().expect("mod_floor of a positive modulus is nonnegative")
}

/// Least nonnegative residue of `z` modulo `p^n`.
pub fn reduce_mod_power(z: &BigInt, p: &BigUint, n: usize) -> BigUint {
    reduce(z, &power_modulus(p, n))
}

/// Answers a query exactly: `((lhs op rhs) mod p^n)` as the least nonnegative
/// residue.
pub fn oracle_mod(q: &OracleQuery) -> BigUint {
    let raw = match q.op {
        OracleOp::Add => &q.lhs + &q.rhs,
        OracleOp::Mul => &q.lhs * &q.rhs,
    };
    reduce_mod_power(&raw, &q.p, q.n)
}

/// p-adic valuation of `z`: the largest `i` with `p^i | z`, or `None` for
/// `z = 0` (where every power divides).
pub fn valuation(z: &BigInt, p: &BigUint) -> Option<usize> {
    if z.is_zero() {
        return None;
    }
    let p = BigInt::from(p.clone());
    let mut rest = z.abs();
    let mut v = 0usize;
    loop {
        let (quot, rem) = rest.div_rem(&p);
        if !rem.is_zero() {
            return Some(v);
        }
        v += 1;
        rest = quot;
    }
}
