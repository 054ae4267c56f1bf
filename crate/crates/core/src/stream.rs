//! Lazy, memoized, infinite little-endian digit streams.
//!
//! A [`PadicInt`] owns a digit source — any stateful producer that yields the
//! next digit on demand — plus a cache of everything produced so far. Digits
//! are published in order and never change: querying index `i` forces digits
//! `0..=i` exactly once, and every later query is a cache hit. Corecursive
//! definitions built from these streams therefore run in linear time per
//! digit instead of recomputing their history.
//!
//! Streams are value-like: clones share the same cache, and a digit once
//! observed is immutable. The cache serializes concurrent access internally,
//! so sharing a stream across threads is safe, if rarely useful.

use std::fmt;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{Arc, Mutex};

use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::digits::{Digit, Prime};
use crate::error::Error;
use crate::num::Nat;

/// Stateful digit producer. Called with the index it must produce, in strictly
/// increasing order starting from 0.
type Source<N> = Box<dyn FnMut(usize) -> N + Send>;

struct MemoInner<N> {
    cache: Vec<N>,
    source: Source<N>,
}

/// A p-adic integer: an infinite stream of base-`p` digits, index 0 first.
///
/// Display order follows the usual big-endian convention with a leading
/// ellipsis (see [`PadicInt::format_truncated`]); storage and indexing are
/// little-endian because every digit recurrence consumes low digits first.
pub struct PadicInt<N: Nat> {
    prime: Prime<N>,
    memo: Arc<Mutex<MemoInner<N>>>,
}

impl<N: Nat> Clone for PadicInt<N> {
    fn clone(&self) -> Self {
        PadicInt { prime: self.prime.clone(), memo: Arc::clone(&self.memo) }
    }
}

impl<N: Nat> PadicInt<N> {
    /// Builds a stream from an arbitrary digit producer.
    ///
    /// `f` is called once per index, in increasing order, and must return a
    /// value in `{0, ..., p-1}`; an out-of-range digit panics at the moment
    /// it is forced.
    pub fn from_digit_fn<F>(prime: Prime<N>, f: F) -> Self
    where
        F: FnMut(usize) -> N + Send + 'static,
    {
        PadicInt {
            prime,
            memo: Arc::new(Mutex::new(MemoInner { cache: Vec::new(), source: Box::new(f) })),
        }
    }

    /// The stream of all zeros.
    pub fn zero(prime: &Prime<N>) -> Self {
        Self::from_digit_fn(prime.clone(), |_| N::zero())
    }

    /// The multiplicative unit: digit 1 followed by zeros.
    pub fn one(prime: &Prime<N>) -> Self {
        Self::embed_nat(prime, N::one())
    }

    /// Embeds a natural number as its base-`p` expansion followed by zeros.
    pub fn embed_nat(prime: &Prime<N>, n: N) -> Self {
        let p = prime.value().clone();
        let mut rest = n;
        Self::from_digit_fn(prime.clone(), move |_| {
            let (quot, rem) = rest.div_rem(&p);
            rest = quot;
            rem
        })
    }

    /// Embeds a signed integer. Negative values become the stream whose every
    /// truncation is the least nonnegative residue of `z` mod `p^N`.
    ///
    /// Fails with [`Error::ScalarOverflow`] if `|z|` does not fit the scalar.
    pub fn embed_int(prime: &Prime<N>, z: &BigInt) -> Result<Self, Error> {
        let magnitude = N::from_biguint(z.magnitude())
            .ok_or_else(|| Error::ScalarOverflow(z.to_string()))?;
        let nat = Self::embed_nat(prime, magnitude);
        Ok(if z.is_negative() { nat.complement() } else { nat })
    }

    /// [`PadicInt::embed_int`] for machine integers.
    ///
    /// Panics if `|z|` does not fit the scalar, which cannot happen for the
    /// scalars this crate ships.
    pub fn embed_i64(prime: &Prime<N>, z: i64) -> Self {
        let magnitude = N::from_biguint(&BigUint::from(z.unsigned_abs()))
            .expect("i64 magnitude must fit the scalar");
        let nat = Self::embed_nat(prime, magnitude);
        if z < 0 {
            nat.complement()
        } else {
            nat
        }
    }

    /// Digit stream of the additive inverse: zeros up to the first nonzero
    /// digit `d` at index `v`, then `p - d`, then `p - 1 - a_i` forever.
    pub(crate) fn complement(&self) -> Self {
        let src = self.clone();
        let p = self.prime.value().clone();
        let mut seen_nonzero = false;
        Self::from_digit_fn(self.prime.clone(), move |i| {
            let d = src.digit_value(i);
            if seen_nonzero {
                p.clone() - N::one() - d
            } else if d.is_zero() {
                d
            } else {
                seen_nonzero = true;
                p.clone() - d
            }
        })
    }

    pub fn prime(&self) -> &Prime<N> {
        &self.prime
    }

    /// The digit at index `i`, forcing digits `0..=i` on first access.
    pub fn digit_at(&self, i: usize) -> Digit<N> {
        self.prime.digit_unchecked(self.digit_value(i))
    }

    /// First `n` digit values, lowest index first.
    pub fn digit_values(&self, n: usize) -> Vec<N> {
        (0..n).map(|i| self.digit_value(i)).collect()
    }

    pub(crate) fn digit_value(&self, i: usize) -> N {
        let mut inner = self.memo.lock().expect("digit cache poisoned");
        while inner.cache.len() <= i {
            let index = inner.cache.len();
            let digit = (inner.source)(index);
            assert!(
                digit < *self.prime.value(),
                "digit source produced {digit} at index {index}, out of range for prime {}",
                self.prime
            );
            inner.cache.push(digit);
        }
        inner.cache[i].clone()
    }

    /// `sum of a_i * p^i for i < n`: the image of the stream in `Z/p^n`,
    /// always in `[0, p^n)`. `truncate(a, 0)` is 0.
    pub fn truncate(&self, n: usize) -> BigUint {
        let p = self.prime.to_biguint();
        let mut acc = BigUint::zero();
        for i in (0..n).rev() {
            acc = acc * &p + self.digit_value(i).to_biguint();
        }
        acc
    }

    /// Drops digit 0: the stream `b` with `b_i = a_{i+1}`. Lazy; forces
    /// nothing until queried.
    pub fn tail(&self) -> Self {
        let src = self.clone();
        Self::from_digit_fn(self.prime.clone(), move |i| src.digit_value(i + 1))
    }

    /// Do the first `n` digits of both streams agree? (Full stream equality
    /// is undecidable, so this is the only equality the type offers.)
    pub fn agrees_with(&self, other: &Self, n: usize) -> bool {
        self.prime == other.prime && self.first_difference(other, n).is_none()
    }

    /// Index of the first digit where the streams differ, if it occurs below
    /// `limit`.
    pub(crate) fn first_difference(&self, other: &Self, limit: usize) -> Option<usize> {
        (0..limit).find(|&i| self.digit_value(i) != other.digit_value(i))
    }

    /// Wraps the stream so that every digit forced from it is counted.
    ///
    /// The wrapper is digit-for-digit identical to `self`; the returned
    /// [`DigitCounter`] reports how deep consumers actually reached, which is
    /// how the productivity guarantees are tested.
    pub fn instrumented(&self) -> (Self, DigitCounter) {
        let src = self.clone();
        let counter = DigitCounter { forced: Arc::new(AtomicUsize::new(0)) };
        let forced = Arc::clone(&counter.forced);
        let stream = Self::from_digit_fn(self.prime.clone(), move |i| {
            forced.store(i + 1, Ordering::Relaxed);
            src.digit_value(i)
        });
        (stream, counter)
    }

    /// Canonical text form of the first `n` digits: big-endian, `…` prefix,
    /// digits concatenated for `p <= 10` and space-separated for larger
    /// primes whose digits need several characters.
    pub fn format_truncated(&self, n: usize) -> String {
        let spaced = self.prime.to_biguint() > BigUint::from(10u32);
        let mut out = String::from("…");
        for i in (0..n).rev() {
            out.push_str(&self.digit_value(i).to_string());
            if spaced && i > 0 {
                out.push(' ');
            }
        }
        out.push_str(&format!(" (base {})", self.prime));
        out
    }

    /// Serializes the first `n` digits into the interchange form. Fails if
    /// the prime or a digit exceeds `u64`, which only arbitrary-precision
    /// scalars with enormous moduli can trigger.
    pub fn to_serialized(&self, n: usize) -> Result<StreamJson, Error> {
        let p = self
            .prime
            .value()
            .to_u64()
            .ok_or_else(|| Error::ScalarOverflow(self.prime.to_string()))?;
        let digits_le = (0..n)
            .map(|i| {
                let d = self.digit_value(i);
                d.to_u64().ok_or_else(|| Error::ScalarOverflow(d.to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(StreamJson { p, digits_le, truncated_at: n })
    }

    /// Rebuilds a stream from its serialized truncation; digits beyond
    /// `truncated_at` read as zero.
    pub fn from_serialized(form: &StreamJson) -> Result<Self, Error> {
        if form.digits_le.len() != form.truncated_at {
            return Err(Error::InvalidSerialized(format!(
                "{} digits but truncated_at = {}",
                form.digits_le.len(),
                form.truncated_at
            )));
        }
        let p = N::from_u64(form.p)
            .ok_or_else(|| Error::ScalarOverflow(form.p.to_string()))?;
        let prime = Prime::new(p)?;
        let digits = form
            .digits_le
            .iter()
            .map(|&d| {
                let d = N::from_u64(d).ok_or_else(|| Error::ScalarOverflow(d.to_string()))?;
                if d < *prime.value() {
                    Ok(d)
                } else {
                    Err(Error::InvalidSerialized(format!(
                        "digit {d} out of range for prime {}",
                        prime
                    )))
                }
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self::from_digit_fn(prime, move |i| {
            digits.get(i).cloned().unwrap_or_else(N::zero)
        }))
    }
}

impl<N: Nat> fmt::Debug for PadicInt<N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cached = self.memo.lock().map(|m| m.cache.len()).unwrap_or(0);
        write!(f, "PadicInt(base {}, {} digits forced)", self.prime, cached)
    }
}

/// Counts how many digits have been forced out of an instrumented stream.
#[derive(Debug, Clone)]
pub struct DigitCounter {
    forced: Arc<AtomicUsize>,
}

impl DigitCounter {
    /// Number of digits pulled so far; equals one past the highest index
    /// forced, since production is strictly sequential.
    pub fn forced(&self) -> usize {
        self.forced.load(Ordering::Relaxed)
    }

    /// Highest digit index pulled from the underlying stream, if any.
    pub fn max_index(&self) -> Option<usize> {
        self.forced().checked_sub(1)
    }
}

/// Round-trippable serialized form of a truncated stream:
/// `{"p": …, "digits_le": [d0, d1, …], "truncated_at": N}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StreamJson {
    pub p: u64,
    pub digits_le: Vec<u64>,
    pub truncated_at: usize,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Zp;
    use num_bigint::BigInt;
    use padic_oracle::reduce_mod_power;
    use proptest::prelude::*;

    fn p(v: u64) -> Prime<u64> {
        Prime::new(v).unwrap()
    }

    fn pb(v: u64) -> Prime<BigUint> {
        Prime::new(BigUint::from(v)).unwrap()
    }

    #[test]
    fn embed_nat_examples() {
        assert_eq!(PadicInt::embed_nat(&p(5), 0u64).digit_values(4), vec![0, 0, 0, 0]);
        assert_eq!(PadicInt::embed_nat(&p(2), 7u64).digit_values(5), vec![1, 1, 1, 0, 0]);
        assert_eq!(PadicInt::embed_nat(&p(5), 26u64).digit_values(4), vec![1, 0, 1, 0]);
    }

    #[test]
    fn embed_int_examples() {
        let minus_one_2 = PadicInt::<u64>::embed_int(&p(2), &BigInt::from(-1)).unwrap();
        assert_eq!(minus_one_2.digit_values(6), vec![1; 6]);

        let minus_one_5 = PadicInt::<u64>::embed_int(&p(5), &BigInt::from(-1)).unwrap();
        assert_eq!(minus_one_5.digit_values(4), vec![4; 4]);

        // truncations of an embedded negative match the big-integer residue
        let minus_three = Zp::embed_int(&pb(5), &BigInt::from(-3)).unwrap();
        for n in 1..12 {
            assert_eq!(
                minus_three.truncate(n),
                reduce_mod_power(&BigInt::from(-3), &BigUint::from(5u32), n)
            );
        }
        assert_eq!(minus_three.digit_values(4), vec![2u64, 4, 4, 4].into_iter().map(BigUint::from).collect::<Vec<_>>());
    }

    #[test]
    fn digit_at_examples() {
        assert_eq!(*PadicInt::embed_nat(&p(2), 7u64).digit_at(0).value(), 1);
        assert_eq!(*PadicInt::embed_nat(&p(2), 7u64).digit_at(3).value(), 0);
        let minus_one = PadicInt::<u64>::embed_int(&p(5), &BigInt::from(-1)).unwrap();
        assert_eq!(*minus_one.digit_at(100).value(), 4);
    }

    #[test]
    fn truncate_examples() {
        assert_eq!(PadicInt::embed_nat(&p(5), 26u64).truncate(3), BigUint::from(26u32));
        assert_eq!(PadicInt::embed_nat(&p(5), 26u64).truncate(0), BigUint::zero());
        let minus_one = PadicInt::<u64>::embed_int(&p(2), &BigInt::from(-1)).unwrap();
        assert_eq!(minus_one.truncate(4), BigUint::from(15u32));
    }

    #[test]
    fn tail_examples() {
        let a = PadicInt::embed_nat(&p(5), 26u64);
        let t = a.tail();
        assert!(t.agrees_with(&PadicInt::embed_nat(&p(5), 5u64), 16));

        let z = PadicInt::zero(&p(5));
        assert!(z.tail().agrees_with(&z, 16));

        let minus_one = PadicInt::<u64>::embed_int(&p(5), &BigInt::from(-1)).unwrap();
        assert!(minus_one.tail().agrees_with(&minus_one, 16));
    }

    #[test]
    fn tail_is_lazy_and_digits_shift() {
        let a = PadicInt::embed_nat(&p(7), 123456u64);
        let (watched, counter) = a.instrumented();
        let t = watched.tail();
        assert_eq!(counter.forced(), 0, "tail construction must force nothing");
        assert_eq!(t.digit_value(2), a.digit_value(3));
        assert_eq!(counter.forced(), 4);
    }

    #[test]
    fn digits_are_memoized_and_deterministic() {
        let calls = Arc::new(AtomicUsize::new(0));
        let seen = Arc::clone(&calls);
        let a = PadicInt::from_digit_fn(p(5), move |i| {
            seen.fetch_add(1, Ordering::Relaxed);
            (i as u64) % 5
        });
        assert_eq!(a.digit_value(9), 4);
        assert_eq!(calls.load(Ordering::Relaxed), 10);
        assert_eq!(a.digit_value(9), 4);
        assert_eq!(a.digit_value(3), 3);
        assert_eq!(calls.load(Ordering::Relaxed), 10, "repeat queries must hit the cache");
    }

    #[test]
    fn concurrent_queries_agree_and_compute_once() {
        let calls = Arc::new(AtomicUsize::new(0));
        let seen = Arc::clone(&calls);
        let a = PadicInt::from_digit_fn(p(7), move |i| {
            seen.fetch_add(1, Ordering::Relaxed);
            (i as u64 * 3 + 1) % 7
        });
        let answers: Vec<u64> = std::thread::scope(|s| {
            (0..4)
                .map(|_| {
                    let a = a.clone();
                    s.spawn(move || a.digit_value(500))
                })
                .collect::<Vec<_>>()
                .into_iter()
                .map(|h| h.join().unwrap())
                .collect()
        });
        assert!(answers.iter().all(|&d| d == answers[0]));
        assert_eq!(calls.load(Ordering::Relaxed), 501, "each digit produced exactly once");
    }

    #[test]
    fn clones_share_the_cache() {
        let a = PadicInt::embed_nat(&p(5), 999u64);
        let b = a.clone();
        a.digit_value(5);
        let cached = b.memo.lock().unwrap().cache.len();
        assert_eq!(cached, 6);
    }

    #[test]
    #[should_panic(expected = "out of range")]
    fn out_of_range_digit_panics_when_forced() {
        let a = PadicInt::from_digit_fn(p(5), |_| 5u64);
        a.digit_value(0);
    }

    #[test]
    fn format_concatenates_small_bases_and_spaces_large_ones() {
        let a = PadicInt::embed_nat(&p(5), 7u64);
        assert_eq!(a.format_truncated(4), "…0012 (base 5)");
        let b = PadicInt::embed_nat(&p(13), 140u64);
        // 140 = 10*13 + 10
        assert_eq!(b.format_truncated(3), "…0 10 10 (base 13)");
    }

    #[test]
    fn serialized_form_round_trips() {
        let a = PadicInt::embed_nat(&p(13), 140u64);
        let form = a.to_serialized(5).unwrap();
        assert_eq!(form, StreamJson { p: 13, digits_le: vec![10, 10, 0, 0, 0], truncated_at: 5 });
        let back = PadicInt::<u64>::from_serialized(&form).unwrap();
        assert!(back.agrees_with(&a, 5));
        assert_eq!(back.to_serialized(5).unwrap(), form);
    }

    #[test]
    fn serialized_form_rejects_bad_input() {
        let bad_len = StreamJson { p: 5, digits_le: vec![1, 2], truncated_at: 3 };
        assert!(matches!(
            PadicInt::<u64>::from_serialized(&bad_len),
            Err(Error::InvalidSerialized(_))
        ));
        let bad_digit = StreamJson { p: 5, digits_le: vec![5], truncated_at: 1 };
        assert!(matches!(
            PadicInt::<u64>::from_serialized(&bad_digit),
            Err(Error::InvalidSerialized(_))
        ));
        let composite = StreamJson { p: 6, digits_le: vec![1], truncated_at: 1 };
        assert!(matches!(PadicInt::<u64>::from_serialized(&composite), Err(Error::NotPrime(_))));
    }

    proptest! {
        /// truncate(embed_nat(n), N) = n mod p^N, against the big-integer oracle.
        #[test]
        fn embed_truncate_matches_oracle(n in any::<u64>(),
                                         p_val in prop::sample::select(vec![2u64, 3, 5, 7, 13, 65537]),
                                         digits in 0usize..40) {
            let a = PadicInt::embed_nat(&p(p_val), n);
            let expected = reduce_mod_power(&BigInt::from(n), &BigUint::from(p_val), digits);
            prop_assert_eq!(a.truncate(digits), expected);
        }

        /// truncate(a, N) = a_0 + p * truncate(tail(a), N-1) for arbitrary digit streams.
        #[test]
        fn truncation_peels_one_digit(seed in any::<u64>(),
                                      p_val in prop::sample::select(vec![2u64, 3, 5, 7, 13]),
                                      digits in 1usize..24) {
            let a = PadicInt::from_digit_fn(p(p_val), move |i| {
                // cheap deterministic pseudo-random digits
                (seed.wrapping_mul(6364136223846793005).wrapping_add(i as u64)
                    .rotate_left((i % 63) as u32)) % p_val
            });
            let lhs = a.truncate(digits);
            let rhs = a.digit_value(0).to_biguint()
                + BigUint::from(p_val) * a.tail().truncate(digits - 1);
            prop_assert_eq!(lhs, rhs);
        }

        /// Negative embeddings agree with least nonnegative residues at every
        /// truncation.
        #[test]
        fn embed_int_matches_oracle(z in any::<i64>(),
                                    p_val in prop::sample::select(vec![2u64, 3, 5, 7, 13, 65537]),
                                    digits in 1usize..24) {
            let a = PadicInt::<u64>::embed_int(&p(p_val), &BigInt::from(z)).unwrap();
            let expected = reduce_mod_power(&BigInt::from(z), &BigUint::from(p_val), digits);
            prop_assert_eq!(a.truncate(digits), expected);
        }
    }
}
