//! The delta-occasion of the standardized merge and the bounds on `l_1`
//! that follow from it.
//!
//! For `p_1 < 1/2`, delta is the first merge count `m` at which the two smallest
//! entries of `P^(m)` sum to at least `p_1`. Before that moment every merged
//! node is lighter than `p_1`, so symbol 1 is still an untouched leaf, and the
//! state at the delta-occasion codes into a perfect tree around `p_1`. This
//! pins `l_1 = floor(log2(n - delta))`.

use serde::Serialize;
use thiserror::Error;

use crate::dist::FiniteDistribution;
use crate::huffman::{merge_trace, MergeState, MergeTrace};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DeltaError {
    #[error("p_1 = {0} >= 1/2: l_1 is necessarily 1 and no delta-occasion exists")]
    TrivialCase(Rational),
    #[error("{0} is outside (0, 1)")]
    OutOfRange(Rational),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DeltaResult {
    /// `p_1 >= 1/2`.
    Trivial,
    /// `p_{n-1} + p_n >= p_1` already holds for the input (delta = 0).
    Zero { state: MergeState },
    /// delta >= 1 merges were needed.
    Found { delta: usize, state: MergeState },
}

impl DeltaResult {
    /// The delta value, `None` for the trivial case.
    pub fn delta(&self) -> Option<usize> {
        match self {
            DeltaResult::Trivial => None,
            DeltaResult::Zero { .. } => Some(0),
            DeltaResult::Found { delta, .. } => Some(*delta),
        }
    }

    pub fn state(&self) -> Option<&MergeState> {
        match self {
            DeltaResult::Trivial => None,
            DeltaResult::Zero { state } | DeltaResult::Found { state, .. } => Some(state),
        }
    }
}

pub fn delta_occasion(dist: &FiniteDistribution) -> DeltaResult {
    delta_from_trace(dist, &merge_trace(dist))
}

/// Locates the delta-occasion on an existing trace of `dist`.
pub fn delta_from_trace(dist: &FiniteDistribution, trace: &MergeTrace) -> DeltaResult {
    let p1_weight = &dist.weights()[0];
    if p1_weight * 2u32 >= *dist.total() {
        return DeltaResult::Trivial;
    }
    let n = dist.len();
    let mut weights = dist.weights().to_vec();
    for m in 0..n - 1 {
        let len = weights.len();
        if &weights[len - 2] + &weights[len - 1] >= *p1_weight {
            let state = trace.to_state(m, &weights);
            return if m == 0 {
                DeltaResult::Zero { state }
            } else {
                DeltaResult::Found { delta: m, state }
            };
        }
        trace.apply_step(&mut weights, m);
    }
    // P^(n-2) has two entries summing to 1 > p_1, so the loop always returns.
    unreachable!("delta-occasion must exist when p_1 < 1/2")
}

/// `l_1 = floor(log2(n - delta))`, valid whenever `p_1 < 1/2`.
pub fn l1_via_delta(dist: &FiniteDistribution) -> Result<u32, DeltaError> {
    match delta_occasion(dist).delta() {
        Some(delta) => Ok(floor_log2_usize(dist.len() - delta)),
        None => Err(DeltaError::TrivialCase(dist.p1())),
    }
}

pub(crate) fn floor_log2_usize(x: usize) -> u32 {
    assert!(x > 0);
    usize::BITS - 1 - x.leading_zeros()
}

/// `floor(-log2 p)`, a lower bound on `l_1` for any source with `p_1 < p`.
pub fn l1_lower_bound(p: &Rational) -> Result<u32, DeltaError> {
    if !p.is_positive() || *p >= Rational::one() {
        return Err(DeltaError::OutOfRange(p.clone()));
    }
    Ok(p.recip().floor_log2() as u32)
}

/// Exclusive bounds on delta.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Lemma1Bounds {
    /// `delta < n - 1/b`, present when `p_1 < b`.
    pub upper: Option<Rational>,
    /// `delta > n - 2/a + 1`, present when `p_1 > a`.
    pub lower: Option<Rational>,
}

impl Lemma1Bounds {
    /// Whether `delta` lies strictly inside every available bound.
    pub fn admits(&self, delta: usize) -> bool {
        let d = Rational::integer(delta as i64);
        self.upper.as_ref().is_none_or(|u| d < *u) && self.lower.as_ref().is_none_or(|l| d > *l)
    }
}

/// Bounds on delta from a known bracket `a < p_1 < b`.
///
/// `a` and `b` are optional; a bound is produced only when the corresponding
/// strict inequality with `p_1` holds and the bracket value is positive.
pub fn lemma1_bounds(
    p1: &Rational,
    n: usize,
    a: Option<&Rational>,
    b: Option<&Rational>,
) -> Lemma1Bounds {
    let n = Rational::integer(n as i64);
    let upper = b
        .filter(|b| b.is_positive() && p1 < *b)
        .map(|b| &n - b.recip());
    let lower = a
        .filter(|a| a.is_positive() && p1 > *a)
        .map(|a| &n - Rational::integer(2) / a + Rational::one());
    Lemma1Bounds { upper, lower }
}
