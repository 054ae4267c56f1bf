//! Precision-bounded valuation and distance queries under the p-adic
//! ultrametric, and samplers for the nonexpansion properties of step
//! functions.
//!
//! Equality of infinite streams is undecidable, so no metric query here
//! pretends to answer it. Every answer is either `Exact(i)` — the first
//! disagreement provably sits at index `i`, so the distance is exactly
//! `p^-i` — or `AtMost(N)` — the streams agree on all digits below the probe
//! depth `N`, certifying the distance is at most `p^-N` (possibly zero).
//! Distances are carried as exponents throughout; no floating point, no
//! rounding.

use std::cmp::Ordering as CmpOrdering;
use std::fmt;

use crate::coalgebra::{CoalgebraStep, NatPairState};
use crate::digits::Prime;
use crate::num::Nat;
use crate::report::{CheckReport, Violation};
use crate::stream::PadicInt;

/// Result of a precision-limited metric query; the payload is the exponent
/// `i` of `p^-i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DistanceBound {
    /// The first disagreement is exactly at this index: distance `p^-i`.
    Exact(usize),
    /// All digits agree below the probe depth: distance at most `p^-N`.
    AtMost(usize),
}

impl DistanceBound {
    /// The first-disagreement index this bound certifies. An `AtMost(N)`
    /// acts as index `N`: the true index is at least that.
    pub fn index(&self) -> usize {
        match self {
            DistanceBound::Exact(i) | DistanceBound::AtMost(i) => *i,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, DistanceBound::Exact(_))
    }
}

impl fmt::Display for DistanceBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DistanceBound::Exact(i) => write!(f, "p^-{i}"),
            DistanceBound::AtMost(n) => write!(f, "<= p^-{n}"),
        }
    }
}

/// Index of the first nonzero digit, probed to depth `probe`.
///
/// `Exact(i)` means `p^i` exactly divides the stream; `AtMost(probe)` means
/// the stream is divisible by `p^probe` (and might be zero).
pub fn valuation_bound<N: Nat>(a: &PadicInt<N>, probe: usize) -> DistanceBound {
    assert!(probe >= 1, "valuation probe needs at least one digit");
    match (0..probe).find(|&i| !a.digit_value(i).is_zero()) {
        Some(i) => DistanceBound::Exact(i),
        None => DistanceBound::AtMost(probe),
    }
}

/// p-adic distance between streams, probed to depth `probe`: `Exact(i)` at
/// the first differing digit, else `AtMost(probe)`.
pub fn distance<N: Nat>(a: &PadicInt<N>, b: &PadicInt<N>, probe: usize) -> DistanceBound {
    assert!(a.prime() == b.prime(), "mixed moduli: {} vs {}", a.prime(), b.prime());
    assert!(probe >= 1, "distance probe needs at least one digit");
    match a.first_difference(b, probe) {
        Some(i) => DistanceBound::Exact(i),
        None => DistanceBound::AtMost(probe),
    }
}

/// Checks the strong triangle inequality
/// `d(a, c) <= max(d(a, b), d(b, c))` at the given probe depth — in
/// first-difference indices, `index(a, c) >= min(index(a, b), index(b, c))`.
///
/// This is a theorem about the digit metric; a `false` from here is a bug in
/// the library, not a property of the inputs.
pub fn check_ultrametric<N: Nat>(
    a: &PadicInt<N>,
    b: &PadicInt<N>,
    c: &PadicInt<N>,
    probe: usize,
) -> bool {
    let ac = distance(a, c, probe).index();
    let ab = distance(a, b, probe).index();
    let bc = distance(b, c, probe).index();
    ac >= ab.min(bc)
}

/// p-adic distance between two naturals, as a first-difference bound capped
/// at `probe`: the valuation of their difference.
pub fn nat_distance<N: Nat>(x: &N, y: &N, p: &Prime<N>, probe: usize) -> DistanceBound {
    let mut rest = match x.cmp(y) {
        CmpOrdering::Equal => return DistanceBound::AtMost(probe),
        CmpOrdering::Greater => x.clone() - y.clone(),
        CmpOrdering::Less => y.clone() - x.clone(),
    };
    for i in 0..probe {
        let (quot, rem) = rest.div_rem(p.value());
        if !rem.is_zero() {
            return DistanceBound::Exact(i);
        }
        rest = quot;
    }
    DistanceBound::AtMost(probe)
}

/// Product-space distance on pairs of naturals: the max of the coordinate
/// distances, i.e. the min of the coordinate indices.
pub fn nat_pair_distance<N: Nat>(
    a: &NatPairState<N>,
    b: &NatPairState<N>,
    p: &Prime<N>,
    probe: usize,
) -> DistanceBound {
    let dm = nat_distance(&a.m, &b.m, p, probe);
    let dn = nat_distance(&a.n, &b.n, p, probe);
    match (dm, dn) {
        (DistanceBound::AtMost(_), DistanceBound::AtMost(_)) => DistanceBound::AtMost(probe),
        _ => DistanceBound::Exact(dm.index().min(dn.index())),
    }
}

/// Verifies nonexpansion of a step function on sampled state pairs.
///
/// For each pair at distance `p^-i` with `i >= 1`, the emitted digits must be
/// equal and the successor states may be at most one factor of `p` further
/// apart: successor index at least `i - 1`. (The digit components sit in a
/// discrete space and the successor space is contracted by `1/p`, which is
/// where the allowance comes from.) Pairs at distance 1 have nothing to
/// check — the spaces are 1-bounded — and pass vacuously.
pub fn check_nonexpanding_step<S, N, D>(
    step: &CoalgebraStep<S, N>,
    dist: D,
    pairs: &[(S, S)],
    probe: usize,
) -> CheckReport
where
    S: fmt::Debug,
    N: Nat,
    D: Fn(&S, &S, usize) -> DistanceBound,
{
    let mut violations = Vec::new();
    for (left, right) in pairs {
        let before = dist(left, right, probe).index();
        if before == 0 {
            continue;
        }
        let (next_left, digit_left) = step.apply(left);
        let (next_right, digit_right) = step.apply(right);
        if digit_left != digit_right {
            violations.push(Violation {
                inputs: format!("{left:?} vs {right:?}"),
                index: before,
            });
            continue;
        }
        let after = dist(&next_left, &next_right, probe).index();
        if after + 1 < before {
            violations.push(Violation {
                inputs: format!("{left:?} vs {right:?}"),
                index: before,
            });
        }
    }
    CheckReport::new("nonexpanding_step", step.prime(), pairs.len(), violations)
}
