//! Anti-uniform sources: codes with lengths `1, 2, ..., n-1, n-1`
//! (finite) or `l_i = i` (infinite).
//!
//! Three tests live here:
//!
//! * the finite suffix condition `p_{i+2} + ... + p_n <= p_i` for
//!   `1 <= i <= n-3`, which is necessary and sufficient for a finite source to
//!   admit an anti-uniform Huffman code;
//! * its infinite analogue `sum_{k>=i+2} p_k <= p_i`, evaluated with the
//!   closed-form tails of a [`SourceSpec`];
//! * the alpha criterion: if every conditional ratio satisfies
//!   `(1 - alpha_i)(1 - alpha_{i+1}) <= alpha_i`, the source is anti-uniform.
//!   A constant threshold that implies it is `alpha >= (3 - sqrt 5)/2`, which
//!   is tested without irrationals through the sign of `alpha^2 - 3 alpha + 1`.

use num_bigint::BigUint;
use serde::Serialize;

use crate::dist::FiniteDistribution;
use crate::huffman::{huffman_lengths, LengthVector};
use crate::rational::Rational;
use crate::source::{truncate, AlphaSequence, AlphaVector, SourceError, SourceSpec};

/// 1-based index `i` at which the suffix condition fails.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub index: usize,
    /// `sum_{k >= i+2} p_k`.
    pub tail: Rational,
    pub p_i: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AntiUniformVerdict {
    pub holds: bool,
    pub first_violation: Option<Violation>,
    /// Number of indices checked.
    pub checked: usize,
}

impl AntiUniformVerdict {
    fn from_violation(first_violation: Option<Violation>, checked: usize) -> Self {
        AntiUniformVerdict {
            holds: first_violation.is_none(),
            first_violation,
            checked,
        }
    }
}

pub fn check_finite(dist: &FiniteDistribution) -> AntiUniformVerdict {
    let w = dist.weights();
    let n = w.len();
    if n <= 3 {
        return AntiUniformVerdict::from_violation(None, 0);
    }
    // suffix[j] = w_j + ... + w_{n-1} (0-based)
    let mut suffix = vec![BigUint::default(); n + 1];
    for j in (0..n).rev() {
        suffix[j] = &suffix[j + 1] + &w[j];
    }
    let checked = n - 3;
    let violation = (0..checked)
        .find(|&i| suffix[i + 2] > w[i])
        .map(|i| Violation {
            index: i + 1,
            tail: Rational::from_biguints(&suffix[i + 2], dist.total()),
            p_i: Rational::from_biguints(&w[i], dist.total()),
        });
    AntiUniformVerdict::from_violation(violation, checked)
}

/// Infinite suffix condition for `1 <= i <= depth`, with the exact tail
/// `1 - S_{i+1}`.
pub fn check_infinite_tail(spec: &SourceSpec, depth: usize) -> AntiUniformVerdict {
    let probs = spec.prob_prefix(depth + 1);
    let mut tail = spec.tail_after(depth + 1);
    let mut tails = vec![Rational::zero(); depth + 2];
    // tails[i] = 1 - S_i for i in 1..=depth+1
    tails[depth + 1] = tail.clone();
    for i in (1..=depth).rev() {
        tail = tail + &probs[i];
        tails[i] = tail.clone();
    }
    let violation = (1..=depth)
        .find(|&i| tails[i + 1] > probs[i - 1])
        .map(|i| Violation {
            index: i,
            tail: tails[i + 1].clone(),
            p_i: probs[i - 1].clone(),
        });
    AntiUniformVerdict::from_violation(violation, depth)
}

/// `alpha^2 - 3 alpha + 1 <= 0`, i.e. `alpha >= (3 - sqrt 5)/2` for `alpha < 1`.
pub fn meets_threshold(alpha: &Rational) -> bool {
    let poly = alpha * alpha - Rational::integer(3) * alpha + Rational::one();
    !poly.is_positive()
}

/// `(1 - a)(1 - b) <= a`.
pub fn pair_condition(a: &Rational, b: &Rational) -> bool {
    (Rational::one() - a) * (Rational::one() - b) <= *a
}

fn range_check(alphas: &[Rational]) -> Result<(), SourceError> {
    AlphaVector::new(alphas.to_vec()).map(|_| ())
}

/// Constant-threshold form: every `alpha_i >= (3 - sqrt 5)/2`.
pub fn theorem6_criterion(alphas: &AlphaVector) -> bool {
    alphas.as_slice().iter().all(meets_threshold)
}

/// Like [`theorem6_criterion`] for raw values, rejecting entries outside `(0, 1)`.
pub fn theorem6_criterion_checked(alphas: &[Rational]) -> Result<bool, SourceError> {
    range_check(alphas)?;
    Ok(alphas.iter().all(meets_threshold))
}

/// Pairwise form over consecutive entries of a finite list whose last
/// entry repeats forever (so the last pair is `(alpha_last, alpha_last)`).
pub fn pairwise_criterion(alphas: &AlphaVector) -> bool {
    let v = alphas.as_slice();
    let Some(last) = v.last() else {
        return true;
    };
    v.windows(2).all(|w| pair_condition(&w[0], &w[1])) && pair_condition(last, last)
}

/// Pairwise form over an eventually periodic rule; checking one full
/// period past the prefix covers every distinct consecutive pair.
pub fn sequence_pairwise_criterion(seq: &AlphaSequence) -> bool {
    (1..=seq.distinct_pairs()).all(|i| pair_condition(&seq.alpha(i), &seq.alpha(i + 1)))
}

/// Whether the alpha criterion certifies `l_i = i` for every symbol of `spec`.
pub fn theorem6_applies(spec: &SourceSpec) -> bool {
    sequence_pairwise_criterion(&spec.alpha_sequence())
}

/// `(1, 2, ..., n-1, n-1)`.
pub fn anti_uniform_lengths(n: usize) -> LengthVector {
    assert!(n >= 2, "anti-uniform lengths need n >= 2");
    let mut v: Vec<u32> = (1..n as u32).collect();
    v.push(n as u32 - 1);
    LengthVector::new(v)
}

/// Re-executes the anti-uniformity argument on the size-`n` truncation of the
/// source generated by `alphas` (last entry repeating): the truncation must
/// pass the finite suffix test and code to exactly `(1, 2, ..., n-1, n-1)`.
pub fn verify_theorem6_at_truncation(alphas: &AlphaVector, n: usize) -> Result<bool, SourceError> {
    let seq = AlphaSequence::repeat_last(alphas.as_slice().to_vec())?;
    let dist = truncate(&SourceSpec::alpha(seq), n)?;
    Ok(check_finite(&dist).holds && huffman_lengths(&dist) == anti_uniform_lengths(n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dist::validate;
    use crate::huffman::kraft_sum;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn rs(v: &[(i64, i64)]) -> Vec<Rational> {
        v.iter().map(|&(n, d)| r(n, d)).collect()
    }

    #[test]
    fn finite_examples() {
        let dyadic = validate(&rs(&[(1, 2), (1, 4), (1, 8), (1, 16), (1, 16)])).unwrap();
        assert!(check_finite(&dyadic).holds);

        let u5 = FiniteDistribution::uniform(5).unwrap();
        let v = check_finite(&u5);
        assert!(!v.holds);
        assert_eq!(
            v.first_violation,
            Some(Violation {
                index: 1,
                tail: r(3, 5),
                p_i: r(1, 5)
            })
        );

        let d = validate(&rs(&[(2, 5), (3, 10), (3, 20), (1, 10), (1, 20)])).unwrap();
        assert!(check_finite(&d).holds);
        assert_eq!(huffman_lengths(&d).as_slice(), &[1, 2, 3, 4, 4]);
    }

    #[test]
    fn small_alphabets_hold_vacuously() {
        let d = FiniteDistribution::uniform(3).unwrap();
        assert_eq!(check_finite(&d).checked, 0);
        assert!(check_finite(&d).holds);
    }

    #[test]
    fn infinite_examples() {
        let g = |q| SourceSpec::geometric(q).unwrap();
        assert!(check_infinite_tail(&g(r(1, 2)), 50).holds);
        let v = check_infinite_tail(&g(r(1, 5)), 10);
        assert_eq!(
            v.first_violation,
            Some(Violation {
                index: 1,
                tail: r(16, 25),
                p_i: r(1, 5)
            })
        );
        let a = SourceSpec::alpha(AlphaSequence::constant(r(2, 5)).unwrap());
        assert!(check_infinite_tail(&a, 50).holds);
    }

    #[test]
    fn criterion_examples() {
        let c = |a, len| theorem6_criterion(&AlphaVector::constant(a, len).unwrap());
        assert!(c(r(1, 2), 5));
        assert!(c(r(2, 5), 5));
        assert!(!c(r(1, 3), 5));
        assert!(pairwise_criterion(
            &AlphaVector::constant(r(2, 5), 3).unwrap()
        ));
        assert!(!pairwise_criterion(
            &AlphaVector::constant(r(1, 3), 3).unwrap()
        ));
        assert!(theorem6_criterion_checked(&rs(&[(1, 2), (3, 2)])).is_err());
    }

    #[test]
    fn threshold_brackets_golden_value() {
        // (3 - sqrt 5)/2 = 0.3819660...
        assert!(meets_threshold(&r(382, 1000)));
        assert!(!meets_threshold(&r(381, 1000)));
        assert!(meets_threshold(&r(3819661, 10_000_000)));
        assert!(!meets_threshold(&r(3819660, 10_000_000)));
    }

    #[test]
    fn anti_uniform_length_shapes() {
        assert_eq!(anti_uniform_lengths(2).as_slice(), &[1, 1]);
        assert_eq!(anti_uniform_lengths(5).as_slice(), &[1, 2, 3, 4, 4]);
        for n in 2..40 {
            assert_eq!(kraft_sum(&anti_uniform_lengths(n)), Rational::one());
        }
    }

    #[test]
    fn truncation_checks() {
        let v = |a: Vec<Rational>, n| {
            verify_theorem6_at_truncation(&AlphaVector::new(a).unwrap(), n).unwrap()
        };
        assert!(v(vec![r(2, 5)], 10));
        assert!(v(vec![r(1, 2)], 20));
        let alternating: Vec<Rational> = (0..12)
            .map(|i| if i % 2 == 0 { r(2, 5) } else { r(3, 5) })
            .collect();
        assert!(v(alternating, 12));
        // below the threshold the truncation is no longer anti-uniform
        assert!(!v(vec![r(1, 5)], 10));
    }

    #[test]
    fn geometric_applies() {
        assert!(theorem6_applies(&SourceSpec::geometric(r(1, 2)).unwrap()));
        assert!(!theorem6_applies(&SourceSpec::geometric(r(3, 10)).unwrap()));
    }
}
