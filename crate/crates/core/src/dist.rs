//! Finite source distributions and the named counterexample families.
//!
//! A [`FiniteDistribution`] is stored as positive integer weights over their
//! own sum, so normalization is exact by construction and every Huffman merge
//! compares plain integers. The weights are kept reduced (their gcd is 1),
//! which makes structural equality coincide with equality of the probability
//! vectors.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::rational::{common_denominator, scale_to_integers, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DistError {
    #[error("a distribution needs at least 2 symbols, got {0}")]
    TooFewSymbols(usize),
    #[error("entry {index} is {value}, expected a strictly positive probability")]
    NonPositiveEntry { index: usize, value: Rational },
    #[error("entries {index} and {} are out of order ({before} < {after})", index + 1)]
    NotSorted {
        index: usize,
        before: Rational,
        after: Rational,
    },
    #[error("probabilities sum to {sum}, deficit {deficit}")]
    NotNormalized { sum: Rational, deficit: Rational },
    #[error("epsilon {epsilon} outside the admissible range of counterexample {id}: {range}")]
    EpsilonOutOfRange {
        id: u8,
        epsilon: Rational,
        range: &'static str,
    },
    #[error("unknown counterexample id {0} (expected 1, 2 or 3)")]
    UnknownCounterexample(u8),
}

/// Sorted, strictly positive, exactly normalized probability vector over `{1..n}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FiniteDistribution {
    weights: Vec<BigUint>,
    total: BigUint,
}

impl FiniteDistribution {
    /// Checks that `probs` is a valid distribution and returns it.
    ///
    /// Checks run in order: length, positivity, ordering, normalization. The
    /// normalization error reports the exact deficit `1 - sum`.
    pub fn new(probs: &[Rational]) -> Result<Self, DistError> {
        if probs.len() < 2 {
            return Err(DistError::TooFewSymbols(probs.len()));
        }
        if let Some((index, value)) = probs.iter().enumerate().find(|(_, p)| !p.is_positive()) {
            return Err(DistError::NonPositiveEntry {
                index: index + 1,
                value: value.clone(),
            });
        }
        check_sorted(probs)?;
        let sum: Rational = probs.iter().sum();
        if sum != Rational::one() {
            let deficit = Rational::one() - &sum;
            return Err(DistError::NotNormalized { sum, deficit });
        }
        let denom = common_denominator(probs);
        Ok(Self::from_sorted_weights(scale_to_integers(probs, &denom)))
    }

    /// Builds the distribution `w_i / sum(w)` from positive integer weights.
    ///
    /// The weights must be non-increasing; normalization is implicit.
    pub fn from_weights(weights: Vec<BigUint>) -> Result<Self, DistError> {
        if weights.len() < 2 {
            return Err(DistError::TooFewSymbols(weights.len()));
        }
        if let Some(index) = weights.iter().position(Zero::is_zero) {
            return Err(DistError::NonPositiveEntry {
                index: index + 1,
                value: Rational::zero(),
            });
        }
        if let Some(index) = weights.windows(2).position(|w| w[0] < w[1]) {
            let total: BigUint = weights.iter().sum();
            return Err(DistError::NotSorted {
                index: index + 1,
                before: Rational::from_biguints(&weights[index], &total),
                after: Rational::from_biguints(&weights[index + 1], &total),
            });
        }
        Ok(Self::from_sorted_weights(weights))
    }

    pub(crate) fn from_sorted_weights(mut weights: Vec<BigUint>) -> Self {
        let g = weights.iter().fold(BigUint::zero(), |g, w| g.gcd(w));
        if !g.is_one() {
            for w in &mut weights {
                *w /= &g;
            }
        }
        let total = weights.iter().sum();
        let dist = FiniteDistribution { weights, total };
        debug_assert!(dist.weights.windows(2).all(|w| w[0] >= w[1]));
        dist
    }

    /// The uniform distribution on `n` symbols.
    pub fn uniform(n: usize) -> Result<Self, DistError> {
        Self::from_weights(vec![BigUint::one(); n])
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// Reduced integer weights; probability `i` is `weights()[i] / total()`.
    pub fn weights(&self) -> &[BigUint] {
        &self.weights
    }

    pub fn total(&self) -> &BigUint {
        &self.total
    }

    /// Probability of symbol `symbol` (1-based).
    pub fn prob(&self, symbol: usize) -> Rational {
        Rational::from_biguints(&self.weights[symbol - 1], &self.total)
    }

    pub fn p1(&self) -> Rational {
        self.prob(1)
    }

    pub fn probs(&self) -> Vec<Rational> {
        self.weights
            .iter()
            .map(|w| Rational::from_biguints(w, &self.total))
            .collect()
    }
}

fn check_sorted(probs: &[Rational]) -> Result<(), DistError> {
    match probs.windows(2).position(|w| w[0] < w[1]) {
        Some(index) => Err(DistError::NotSorted {
            index: index + 1,
            before: probs[index].clone(),
            after: probs[index + 1].clone(),
        }),
        None => Ok(()),
    }
}

/// Alias following the operation name used throughout the crate.
pub fn validate(probs: &[Rational]) -> Result<FiniteDistribution, DistError> {
    FiniteDistribution::new(probs)
}

impl std::fmt::Debug for FiniteDistribution {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_list().entries(self.probs()).finish()
    }
}

impl Serialize for FiniteDistribution {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.probs().serialize(serializer)
    }
}

/// The three parametrized counterexample families showing that `l_1` is not
/// determined by `p_1` inside the gaps between the classification intervals.
///
/// * `1`: `(1/3+e, 1/3, 1/3-e)`, `0 <= e < 1/6`; `l_1 = 1`.
/// * `2`: `(2/9-e, 1/9+e, 1/9 x 6)`, `0 <= e < 1/18`; `l_1 = 3`.
/// * `3`: `(1/6-e, 1/12+e, 1/12 x 9)`, `0 <= e <= 1/24`; `l_1 = 3`.
pub fn counterexample(id: u8, epsilon: &Rational) -> Result<FiniteDistribution, DistError> {
    let r = Rational::new;
    let out_of_range = |range| DistError::EpsilonOutOfRange {
        id,
        epsilon: epsilon.clone(),
        range,
    };
    let e = epsilon.clone();
    let probs = match id {
        1 => {
            if e.is_negative() || e >= r(1, 6) {
                return Err(out_of_range("0 <= epsilon < 1/6"));
            }
            vec![r(1, 3) + &e, r(1, 3), r(1, 3) - &e]
        }
        2 => {
            if e.is_negative() || e >= r(1, 18) {
                return Err(out_of_range("0 <= epsilon < 1/18"));
            }
            let mut v = vec![r(2, 9) - &e, r(1, 9) + &e];
            v.extend(std::iter::repeat_n(r(1, 9), 6));
            v
        }
        3 => {
            if e.is_negative() || e > r(1, 24) {
                return Err(out_of_range("0 <= epsilon <= 1/24"));
            }
            let mut v = vec![r(1, 6) - &e, r(1, 12) + &e];
            v.extend(std::iter::repeat_n(r(1, 12), 9));
            v
        }
        other => return Err(DistError::UnknownCounterexample(other)),
    };
    FiniteDistribution::new(&probs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(v: &[(i64, i64)]) -> Vec<Rational> {
        v.iter().map(|&(n, d)| Rational::new(n, d)).collect()
    }

    #[test]
    fn accepts_dyadic() {
        let d = validate(&rs(&[(1, 2), (1, 4), (1, 4)])).unwrap();
        assert_eq!(d.probs(), rs(&[(1, 2), (1, 4), (1, 4)]));
        assert_eq!(d.weights(), &[2u32.into(), 1u32.into(), 1u32.into()]);
    }

    #[test]
    fn rejects_unsorted() {
        let err = validate(&rs(&[(1, 4), (1, 2), (1, 4)])).unwrap_err();
        assert!(matches!(err, DistError::NotSorted { index: 1, .. }));
    }

    #[test]
    fn reports_exact_deficit() {
        match validate(&rs(&[(1, 2), (1, 4), (1, 8)])).unwrap_err() {
            DistError::NotNormalized { sum, deficit } => {
                assert_eq!(sum, Rational::new(7, 8));
                assert_eq!(deficit, Rational::new(1, 8));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn rejects_zero_and_short_inputs() {
        assert!(matches!(
            validate(&rs(&[(1, 1), (0, 1)])),
            Err(DistError::NonPositiveEntry { index: 2, .. })
        ));
        assert!(matches!(
            validate(&rs(&[(1, 1)])),
            Err(DistError::TooFewSymbols(1))
        ));
    }

    #[test]
    fn weights_are_reduced() {
        let a =
            FiniteDistribution::from_weights(vec![6u32.into(), 4u32.into(), 2u32.into()]).unwrap();
        let b = validate(&rs(&[(1, 2), (1, 3), (1, 6)])).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.total(), &BigUint::from(6u32));
    }

    #[test]
    fn counterexample_one_at_zero() {
        let d = counterexample(1, &Rational::zero()).unwrap();
        assert_eq!(d.probs(), rs(&[(1, 3), (1, 3), (1, 3)]));
    }

    #[test]
    fn counterexample_two_at_one_thirty_sixth() {
        let d = counterexample(2, &Rational::new(1, 36)).unwrap();
        let mut expected = rs(&[(7, 36), (5, 36)]);
        expected.extend(std::iter::repeat_n(Rational::new(1, 9), 6));
        assert_eq!(d.probs(), expected);
    }

    #[test]
    fn counterexample_three_at_zero() {
        let d = counterexample(3, &Rational::zero()).unwrap();
        assert_eq!(d.len(), 11);
        assert_eq!(d.p1(), Rational::new(1, 6));
        assert!(d.probs()[1..].iter().all(|p| *p == Rational::new(1, 12)));
    }

    #[test]
    fn counterexample_ranges() {
        assert!(counterexample(1, &Rational::new(1, 6)).is_err());
        assert!(counterexample(2, &Rational::new(1, 18)).is_err());
        assert!(counterexample(3, &Rational::new(1, 24)).is_ok());
        assert!(counterexample(3, &Rational::new(1, 23)).is_err());
        assert!(counterexample(1, &Rational::new(-1, 100)).is_err());
        assert!(matches!(
            counterexample(4, &Rational::zero()),
            Err(DistError::UnknownCounterexample(4))
        ));
    }
}
