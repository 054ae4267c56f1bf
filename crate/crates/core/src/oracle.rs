//! Bridge to the independent ground-truth crate.
//!
//! The arithmetic in [`padic_oracle`] is plain big-integer work in `Z/p^N`
//! and never touches the digit streams; only the comparison below sees both
//! sides. Tests lean on this to certify the stream paths without circularity.

pub use padic_oracle::{
    oracle_mod, power_modulus, reduce, reduce_mod_power, valuation as int_valuation, OracleOp,
    OracleQuery,
};

use crate::num::Nat;
use crate::stream::PadicInt;

/// Does `truncate(a, digits)` equal the oracle's answer to `q` at that same
/// precision? (`q.n` is ignored in favor of `digits`.)
///
/// Panics if the stream's modulus differs from the query's; comparing digits
/// across different primes is meaningless.
pub fn compare_stream_to_oracle<N: Nat>(
    a: &PadicInt<N>,
    q: &OracleQuery,
    digits: usize,
) -> bool {
    assert_eq!(
        a.prime().to_biguint(),
        q.p,
        "oracle query modulus differs from the stream modulus"
    );
    let q = OracleQuery { n: digits.max(1), ..q.clone() };
    a.truncate(digits) == oracle_mod(&q) % power_modulus(&q.p, digits)
}
