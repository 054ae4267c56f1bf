//! Stream addition and multiplication by carry-propagating digit recurrences,
//! plus the stream-level step functions whose unfolds reproduce them.
//!
//! Addition runs as a carry automaton: digit `i` of `a + b` is
//! `[a_i + b_i + carry]_p` with the quotient feeding the next position.
//! Multiplication computes, per output digit `n`, the convolution
//! `sum of a_i * b_(n-i) for i <= n` plus the previous carry, emitting the
//! residue and carrying the quotient. [`alpha_raw`] and [`mu_raw`] expose the
//! raw (unreduced) recurrence values so tests can check the closed forms
//! verbatim; `add` and `mul` are the production paths.
//!
//! Both operations panic when the operands' moduli differ; there is no
//! meaningful answer across distinct primes.

use crate::coalgebra::CoalgebraStep;
use crate::digits::{carry_quot, residue, Digit, Prime};
use crate::num::Nat;
use crate::stream::PadicInt;

fn same_prime<'a, N: Nat>(a: &'a PadicInt<N>, b: &PadicInt<N>) -> &'a Prime<N> {
    assert!(
        a.prime() == b.prime(),
        "mixed moduli: {} vs {}",
        a.prime(),
        b.prime()
    );
    a.prime()
}

/// Addition recurrence state at one index: the raw value before reduction.
///
/// `residue(pending)` is the digit emitted at `index`; `carry_quot(pending)`
/// is the carry feeding `index + 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlphaState<N: Nat> {
    pub index: usize,
    pub pending: N,
}

/// Multiplication recurrence state at one index; same reading as
/// [`AlphaState`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MuState<N: Nat> {
    pub index: usize,
    pub pending: N,
}

/// The carry automaton behind [`add`]: yields
/// `alpha_0 = a_0 + b_0`, `alpha_n = a_n + b_n + carry_quot(alpha_(n-1))`
/// one index at a time, in O(1) state.
pub fn alpha_states<N: Nat>(
    a: &PadicInt<N>,
    b: &PadicInt<N>,
) -> impl Iterator<Item = AlphaState<N>> {
    let p = same_prime(a, b).clone();
    let (a, b) = (a.clone(), b.clone());
    let mut carry = N::zero();
    (0..).map(move |index| {
        let pending = a.digit_value(index) + b.digit_value(index) + carry.clone();
        carry = carry_quot(&pending, &p);
        AlphaState { index, pending }
    })
}

/// The convolution automaton behind [`mul`]: yields
/// `mu_n = sum of a_i * b_(n-i) for i <= n, plus carry_quot(mu_(n-1))`
/// (with `mu_(-1) = 0`), holding the already-seen digit prefixes.
pub fn mu_states<N: Nat>(
    a: &PadicInt<N>,
    b: &PadicInt<N>,
) -> impl Iterator<Item = MuState<N>> {
    let p = same_prime(a, b).clone();
    let (a, b) = (a.clone(), b.clone());
    // local prefix copies keep the O(n) convolution off the memo locks
    let mut a_digits: Vec<N> = Vec::new();
    let mut b_digits: Vec<N> = Vec::new();
    let mut carry = N::zero();
    (0..).map(move |index| {
        a_digits.push(a.digit_value(index));
        b_digits.push(b.digit_value(index));
        let mut pending = carry.clone();
        for i in 0..=index {
            pending = pending + a_digits[i].clone() * b_digits[index - i].clone();
        }
        carry = carry_quot(&pending, &p);
        MuState { index, pending }
    })
}

/// The raw addition recurrence value at index `n`, recomputed from index 0.
/// Test surface; use [`add`] for real work.
pub fn alpha_raw<N: Nat>(a: &PadicInt<N>, b: &PadicInt<N>, n: usize) -> N {
    alpha_states(a, b).nth(n).expect("automaton is infinite").pending
}

/// The raw multiplication recurrence value at index `n`, recomputed from
/// index 0. Test surface; use [`mul`].
pub fn mu_raw<N: Nat>(a: &PadicInt<N>, b: &PadicInt<N>, n: usize) -> N {
    mu_states(a, b).nth(n).expect("automaton is infinite").pending
}

/// Lazy digit stream of `a + b`; digit `i` is `[alpha_i]_p`.
pub fn add<N: Nat>(a: &PadicInt<N>, b: &PadicInt<N>) -> PadicInt<N> {
    let prime = same_prime(a, b).clone();
    let p = prime.value().clone();
    let mut states = alpha_states(a, b);
    PadicInt::from_digit_fn(prime, move |_| {
        let state = states.next().expect("automaton is infinite");
        state.pending.mod_floor(&p)
    })
}

/// Lazy digit stream of `a * b`; digit `n` is `[mu_n]_p`.
///
/// Forcing `N` digits costs `O(N^2)` digit multiplications — the convolution
/// is computed exactly as written, with the carries kept as exact naturals
/// (they grow roughly like `N * p^2`, which is why the scalar matters).
pub fn mul<N: Nat>(a: &PadicInt<N>, b: &PadicInt<N>) -> PadicInt<N> {
    let prime = same_prime(a, b).clone();
    let p = prime.value().clone();
    let mut states = mu_states(a, b);
    PadicInt::from_digit_fn(prime, move |_| {
        let state = states.next().expect("automaton is infinite");
        state.pending.mod_floor(&p)
    })
}

/// Additive inverse: the stream with `add(a, negate(a))` zero at every
/// truncation.
pub fn negate<N: Nat>(a: &PadicInt<N>) -> PadicInt<N> {
    a.complement()
}

/// Stream-level addition step: emits `[a_0 + b_0]_p` and pushes the carry
/// into the first component of the next state,
/// `(add(tail(a), embed(carry)), tail(b))`.
///
/// Unfolding this step from `(a, b)` agrees with [`add`] digit for digit; it
/// exists as a verification surface for that agreement, not as a second
/// production path.
pub fn tilde_a_step<N: Nat>(
    a: &PadicInt<N>,
    b: &PadicInt<N>,
) -> ((PadicInt<N>, PadicInt<N>), Digit<N>) {
    let p = same_prime(a, b);
    let head = a.digit_value(0) + b.digit_value(0);
    let emitted = residue(&head, p);
    let carry = PadicInt::embed_nat(p, carry_quot(&head, p));
    ((add(&a.tail(), &carry), b.tail()), emitted)
}

/// Stream-level multiplication step: emits `[a_0 b_0]_p`; when `b_0 = 0` the
/// next state is `(a, tail(b))`, otherwise `(tail(mul(a, b)), 1)`.
///
/// The nonzero branch calls [`mul`] internally, so this step is a
/// verification surface for `mul`, not a way to define it.
pub fn tilde_m_step<N: Nat>(
    a: &PadicInt<N>,
    b: &PadicInt<N>,
) -> ((PadicInt<N>, PadicInt<N>), Digit<N>) {
    let p = same_prime(a, b);
    let b0 = b.digit_value(0);
    let emitted = residue(&(a.digit_value(0) * b0.clone()), p);
    let next = if b0.is_zero() {
        (a.clone(), b.tail())
    } else {
        (mul(a, b).tail(), PadicInt::one(p))
    };
    (next, emitted)
}

/// [`tilde_a_step`] packaged for [`crate::unfold`].
pub fn tilde_a_coalgebra<N: Nat>(
    prime: &Prime<N>,
) -> CoalgebraStep<(PadicInt<N>, PadicInt<N>), N> {
    CoalgebraStep::new(prime.clone(), |state: &(PadicInt<N>, PadicInt<N>)| {
        tilde_a_step(&state.0, &state.1)
    })
}

/// [`tilde_m_step`] packaged for [`crate::unfold`].
pub fn tilde_m_coalgebra<N: Nat>(
    prime: &Prime<N>,
) -> CoalgebraStep<(PadicInt<N>, PadicInt<N>), N> {
    CoalgebraStep::new(prime.clone(), |state: &(PadicInt<N>, PadicInt<N>)| {
        tilde_m_step(&state.0, &state.1)
    })
}

impl<N: Nat> std::ops::Add for &PadicInt<N> {
    type Output = PadicInt<N>;

    fn add(self, rhs: Self) -> PadicInt<N> {
        add(self, rhs)
    }
}

impl<N: Nat> std::ops::Mul for &PadicInt<N> {
    type Output = PadicInt<N>;

    fn mul(self, rhs: Self) -> PadicInt<N> {
        mul(self, rhs)
    }
}

impl<N: Nat> std::ops::Neg for &PadicInt<N> {
    type Output = PadicInt<N>;

    fn neg(self) -> PadicInt<N> {
        negate(self)
    }
}
