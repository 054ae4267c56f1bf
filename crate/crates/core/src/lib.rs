//! p-adic integers as lazy digit streams.
//!
//! A p-adic integer is an infinite little-endian stream of digits in
//! `{0, ..., p-1}`. This crate represents them exactly that way —
//! [`PadicInt`] is a memoized, productive digit stream — and builds the rest
//! of the toolkit on top:
//!
//! * embeddings of naturals and signed integers, truncation into `Z/p^N`,
//!   and the tail operator;
//! * addition and multiplication as carry-propagating digit recurrences
//!   ([`add`], [`mul`]), with the raw recurrence values exposed for tests
//!   ([`alpha_raw`], [`mu_raw`]);
//! * a generic [`unfold`] that turns any one-digit state machine
//!   ([`CoalgebraStep`]) into a stream, together with the concrete machines
//!   on pairs of naturals ([`a_step`], [`m_step`]) whose unfolds are exactly
//!   addition and multiplication, and a checker for the defining
//!   homomorphism squares;
//! * precision-bounded ultrametric queries ([`valuation_bound`],
//!   [`distance`]) that answer with exact exponents or certified bounds,
//!   never floats;
//! * an independent big-integer oracle (the `padic-oracle` crate, bridged in
//!   [`oracle`]) used as ground truth throughout the test suites.
//!
//! The digit machinery is generic over the scalar carrying digits and
//! carries (see [`Nat`]). Two aliases cover practical use: [`Zp`] computes
//! with arbitrary-precision naturals and is always exact; [`Zp64`] computes
//! with `u64` and is much faster, provided digits and carries stay inside a
//! machine word (fine for small primes at desk-scale precision).
//!
//! ```
//! use padic::{add, mul, BigUint, PadicInt, Prime, Zp};
//!
//! let p = Prime::new(BigUint::from(5u32)).unwrap();
//! let a = Zp::embed_i64(&p, 3);
//! let b = Zp::embed_i64(&p, 4);
//!
//! // 3 + 4 = 12_5: digits are produced lazily and cached
//! let sum = add(&a, &b);
//! assert_eq!(sum.format_truncated(4), "…0012 (base 5)");
//! assert_eq!(sum.truncate(4), BigUint::from(7u32));
//!
//! // (-1) * (-1) = 1, computed digit by digit on infinite streams
//! let minus_one = Zp::embed_i64(&p, -1);
//! assert!(mul(&minus_one, &minus_one).agrees_with(&PadicInt::one(&p), 64));
//! ```

mod arithmetic;
mod coalgebra;
mod digits;
mod error;
mod metric;
mod num;
pub mod oracle;
mod report;
mod stream;

pub use arithmetic::{
    add, alpha_raw, alpha_states, mu_raw, mu_states, mul, negate, tilde_a_coalgebra,
    tilde_a_step, tilde_m_coalgebra, tilde_m_step, AlphaState, MuState,
};
pub use coalgebra::{
    a_coalgebra, a_step, check_homomorphism_square, m_coalgebra, m_step, phi, phi_coalgebra,
    unfold, CoalgebraStep, NatPairState,
};
pub use digits::{carry_quot, lemma_tech_check, residue, Digit, Prime};
pub use error::Error;
pub use metric::{
    check_nonexpanding_step, check_ultrametric, distance, nat_distance, nat_pair_distance,
    valuation_bound, DistanceBound,
};
pub use num::Nat;
pub use oracle::compare_stream_to_oracle;
pub use report::{CheckReport, Violation};
pub use stream::{DigitCounter, PadicInt, StreamJson};

pub use num_bigint::{BigInt, BigUint};

/// Streams over arbitrary-precision naturals: exact for every prime and
/// precision. The safe default.
pub type Zp = PadicInt<BigUint>;

/// Streams over `u64` scalars: fast, but the caller owns the overflow
/// analysis (multiplication carries grow like `digits * p^2`).
pub type Zp64 = PadicInt<u64>;
