//! Coalgebraic machinery: step functions that peel one digit off a state,
//! and the unfold that turns any such step into a digit stream.
//!
//! A [`CoalgebraStep`] sends a state to a successor state plus one emitted
//! digit. [`unfold`] iterates a step from a start state and presents the
//! emitted digits as a [`PadicInt`]; the structure map [`phi`] exhibits the
//! streams themselves as such a system, with `unfold(phi, a)` reproducing `a`
//! digit for digit. [`a_step`] and [`m_step`] are the concrete systems on
//! pairs of naturals whose unfolds compute sums and products, one carry at a
//! time. [`check_homomorphism_square`] certifies, state by state, that a
//! candidate map into streams actually intertwines a step with `phi`.

use std::fmt;
use std::sync::Arc;

use crate::digits::{carry_quot, residue, Digit, Prime};
use crate::num::Nat;
use crate::report::{CheckReport, Violation};
use crate::stream::PadicInt;

type StepFn<S, N> = Arc<dyn Fn(&S) -> (S, Digit<N>) + Send + Sync>;

/// One-digit state transition: a total, deterministic map
/// `S -> (S, digit)` over a fixed prime.
pub struct CoalgebraStep<S, N: Nat> {
    prime: Prime<N>,
    step: StepFn<S, N>,
}

impl<S, N: Nat> Clone for CoalgebraStep<S, N> {
    fn clone(&self) -> Self {
        CoalgebraStep { prime: self.prime.clone(), step: Arc::clone(&self.step) }
    }
}

impl<S, N: Nat> CoalgebraStep<S, N> {
    pub fn new<F>(prime: Prime<N>, step: F) -> Self
    where
        F: Fn(&S) -> (S, Digit<N>) + Send + Sync + 'static,
    {
        CoalgebraStep { prime, step: Arc::new(step) }
    }

    pub fn prime(&self) -> &Prime<N> {
        &self.prime
    }

    /// Applies the step to one state.
    pub fn apply(&self, state: &S) -> (S, Digit<N>) {
        let (next, digit) = (self.step)(state);
        debug_assert!(digit.prime() == &self.prime, "step emitted a digit of a foreign prime");
        (next, digit)
    }
}

impl<S, N: Nat> fmt::Debug for CoalgebraStep<S, N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CoalgebraStep(base {})", self.prime)
    }
}

/// The structure map on streams: split into tail and head digit.
pub fn phi<N: Nat>(a: &PadicInt<N>) -> (PadicInt<N>, Digit<N>) {
    (a.tail(), a.digit_at(0))
}

/// [`phi`] packaged as a step whose states are streams themselves.
pub fn phi_coalgebra<N: Nat>(prime: &Prime<N>) -> CoalgebraStep<PadicInt<N>, N> {
    CoalgebraStep::new(prime.clone(), |a: &PadicInt<N>| phi(a))
}

/// Runs a step from `start` and collects the emitted digits into a lazy
/// stream: digit `i` is what the `i`-th application of the step emits.
///
/// The result is memoized, so the step function runs at most once per index,
/// and it satisfies `phi(unfold(c, s)) = (unfold(c, s'), d)` whenever
/// `c(s) = (s', d)`.
pub fn unfold<S, N>(step: &CoalgebraStep<S, N>, start: S) -> PadicInt<N>
where
    S: Send + 'static,
    N: Nat,
{
    let step = step.clone();
    let mut state = start;
    PadicInt::from_digit_fn(step.prime().clone(), move |_| {
        let (next, digit) = step.apply(&state);
        state = next;
        digit.into_value()
    })
}

/// A pair of naturals; the state space of the addition and multiplication
/// systems.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NatPairState<N: Nat> {
    pub m: N,
    pub n: N,
}

impl<N: Nat> NatPairState<N> {
    pub fn new(m: N, n: N) -> Self {
        NatPairState { m, n }
    }
}

impl<N: Nat> fmt::Display for NatPairState<N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.m, self.n)
    }
}

/// Addition step on `(m, n)`: emits the units digit of `m + n` and leaves the
/// two carries split across the next state.
///
/// Emits `[m+n]_p`; the successor is
/// `(k_p(m) + k_p([m]_p + [n]_p), k_p(n))`, so the invariant
/// `m + n = (m' + n') * p + digit` holds at every step.
pub fn a_step<N: Nat>(state: &NatPairState<N>, p: &Prime<N>) -> (NatPairState<N>, Digit<N>) {
    let digit_sum = residue(&state.m, p).into_value() + residue(&state.n, p).into_value();
    let emitted = residue(&(state.m.clone() + state.n.clone()), p);
    let next_m = carry_quot(&state.m, p) + carry_quot(&digit_sum, p);
    let next_n = carry_quot(&state.n, p);
    (NatPairState::new(next_m, next_n), emitted)
}

/// Multiplication step on `(m, n)`: emits the units digit of `m * n`.
///
/// When `p | n` the factor `n` just sheds a power of `p`; otherwise the whole
/// remaining product collapses into the first component. Either way
/// `m * n = (m' * n') * p + digit`.
pub fn m_step<N: Nat>(state: &NatPairState<N>, p: &Prime<N>) -> (NatPairState<N>, Digit<N>) {
    let product = state.m.clone() * state.n.clone();
    let emitted = residue(&product, p);
    let next = if residue(&state.n, p).is_zero() {
        NatPairState::new(state.m.clone(), carry_quot(&state.n, p))
    } else {
        NatPairState::new(carry_quot(&product, p), N::one())
    };
    (next, emitted)
}

pub fn a_coalgebra<N: Nat>(prime: &Prime<N>) -> CoalgebraStep<NatPairState<N>, N> {
    let p = prime.clone();
    CoalgebraStep::new(prime.clone(), move |s: &NatPairState<N>| a_step(s, &p))
}

pub fn m_coalgebra<N: Nat>(prime: &Prime<N>) -> CoalgebraStep<NatPairState<N>, N> {
    let p = prime.clone();
    CoalgebraStep::new(prime.clone(), move |s: &NatPairState<N>| m_step(s, &p))
}

/// Certifies that `to_stream` is a homomorphism from `step` into the stream
/// system, on the given sample of states and to `digits` digits of depth.
///
/// For each state `s` with `step(s) = (s', d)` it checks that
/// `to_stream(s)` starts with `d` and that its tail agrees with
/// `to_stream(s')` for `digits - 1` further digits. Violations are collected,
/// not panicked on, with the offending state and digit index.
pub fn check_homomorphism_square<S, N, G>(
    step: &CoalgebraStep<S, N>,
    to_stream: G,
    states: &[S],
    digits: usize,
) -> CheckReport
where
    S: fmt::Debug,
    N: Nat,
    G: Fn(&S) -> PadicInt<N>,
{
    assert!(digits >= 1, "the square needs at least one digit to check");
    let mut violations = Vec::new();
    for state in states {
        let (next, emitted) = step.apply(state);
        let image = to_stream(state);
        if image.digit_value(0) != *emitted.value() {
            violations.push(Violation { inputs: format!("{state:?}"), index: 0 });
            continue;
        }
        let image_tail = image.tail();
        let next_image = to_stream(&next);
        if let Some(i) = image_tail.first_difference(&next_image, digits - 1) {
            violations.push(Violation { inputs: format!("{state:?}"), index: i + 1 });
        }
    }
    CheckReport::new("homomorphism_square", step.prime(), states.len(), violations)
}
