//! Classification of `l_1` from the largest probability alone.
//!
//! For every `k >= 1` the open interval `(2/(2^(k+1)+1), 1/(2^k-1))` forces
//! `l_1 = k`. Consecutive intervals are separated by closed gaps
//! `[1/(2^(k+1)-1), 2/(2^(k+1)+1)]` in which `l_1` is not determined by `p_1`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;
use thiserror::Error;

use crate::rational::{Rational, Rounding};
use crate::source::SourceSpec;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IntervalError {
    #[error("p_1 = {0} is outside (0, 1)")]
    OutOfRange(Rational),
    #[error("interval index must be at least 1")]
    ZeroIndex,
}

/// The `k`-th open interval.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct L1Interval {
    pub k: u32,
    pub lower: Rational,
    pub upper: Rational,
}

fn pow2(k: u32) -> BigInt {
    BigInt::one() << k as usize
}

impl L1Interval {
    pub fn new(k: u32) -> Result<Self, IntervalError> {
        if k == 0 {
            return Err(IntervalError::ZeroIndex);
        }
        let lower = Rational::from_big(BigInt::from(2), pow2(k + 1) + 1);
        let upper = Rational::from_big(BigInt::one(), pow2(k) - 1);
        Ok(L1Interval { k, lower, upper })
    }

    pub fn contains(&self, p: &Rational) -> bool {
        p.strictly_between(&self.lower, &self.upper)
    }

    pub fn width(&self) -> Rational {
        &self.upper - &self.lower
    }
}

/// Why a determined `l_1` is determined.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Basis {
    /// `p_1` lies strictly inside the `k`-th interval.
    OpenInterval,
    /// `p_1 >= 1/2`, where `l_1 = 1` always.
    HalfOrMore,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum L1Class {
    Determined {
        k: u32,
        basis: Basis,
    },
    /// `p_1` lies in the closed gap between intervals `below` and `below + 1`.
    Undetermined {
        below: u32,
        above: u32,
    },
}

impl L1Class {
    pub fn k(&self) -> Option<u32> {
        match self {
            L1Class::Determined { k, .. } => Some(*k),
            L1Class::Undetermined { .. } => None,
        }
    }
}

impl fmt::Display for L1Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            L1Class::Determined { k, .. } => write!(f, "{k}"),
            L1Class::Undetermined { below, above } => {
                write!(f, "UNDETERMINED(gap between k={below} and k={above})")
            }
        }
    }
}

pub fn classify_l1(p1: &Rational) -> Result<L1Class, IntervalError> {
    if !p1.is_positive() || *p1 >= Rational::one() {
        return Err(IntervalError::OutOfRange(p1.clone()));
    }
    if *p1 >= Rational::new(1, 2) {
        return Ok(L1Class::Determined {
            k: 1,
            basis: Basis::HalfOrMore,
        });
    }
    let mut k = 1;
    loop {
        let iv = L1Interval::new(k).expect("k >= 1");
        if *p1 > iv.lower {
            // p1 did not exceed lower(k-1), and lower(k-1) sits below upper(k-1)
            return Ok(if *p1 < iv.upper {
                L1Class::Determined {
                    k,
                    basis: Basis::OpenInterval,
                }
            } else {
                L1Class::Undetermined {
                    below: k - 1,
                    above: k,
                }
            });
        }
        k += 1;
    }
}

/// Same classification for an infinite source, read off its exact `p_1`.
/// The conclusion transfers to the optimal code of the infinite source.
pub fn classify_l1_infinite(spec: &SourceSpec) -> Result<L1Class, IntervalError> {
    classify_l1(&spec.p1())
}

/// Exact partial sum of interval widths together with certified bounds on
/// the full infinite sum.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoverageSum {
    pub terms: u32,
    pub partial: Rational,
    pub lower_bound: Rational,
    pub upper_bound: Rational,
}

impl CoverageSum {
    /// `(lower rounded down, upper rounded up)` at `places` decimals.
    pub fn decimal_bounds(&self, places: usize) -> (String, String) {
        (
            self.lower_bound.to_decimal(places, Rounding::Down),
            self.upper_bound.to_decimal(places, Rounding::Up),
        )
    }
}

/// Sum of the widths of the first `terms` intervals, plus bounds on the total.
///
/// With `K = terms`, the tails satisfy
/// `sum_{k>K} 1/(2^k-1) < sum_{k>K} 2^-(k-1) = 2^-(K-1)` and
/// `sum_{k>K} 2/(2^(k+1)+1) < sum_{k>K} 2^-k = 2^-K`, so the total lies in
/// `(partial - 2^-K, partial + 2^-(K-1))`.
pub fn coverage_sum(terms: u32) -> Result<CoverageSum, IntervalError> {
    if terms == 0 {
        return Err(IntervalError::ZeroIndex);
    }
    let partial: Rational = (1..=terms)
        .map(|k| L1Interval::new(k).expect("k >= 1").width())
        .sum();
    let lower_bound = &partial - Rational::pow2_neg(terms);
    let upper_bound = &partial + Rational::pow2_neg(terms - 1);
    Ok(CoverageSum {
        terms,
        partial,
        lower_bound,
        upper_bound,
    })
}
