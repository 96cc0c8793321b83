//! Infinite sources with exact closed-form partial sums, the conditional
//! tail-ratio (alpha) parameterization, and exact truncation to finite
//! distributions.

use num_bigint::BigUint;
use serde::Serialize;
use thiserror::Error;

use crate::dist::{DistError, FiniteDistribution};
use crate::rational::{common_denominator, scale_to_integers, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SourceError {
    #[error("alpha_{index} = {value} is outside the open interval (0, 1)")]
    AlphaOutOfRange { index: usize, value: Rational },
    #[error("need {needed} alphas, only {available} supplied")]
    NotEnoughAlphas { needed: usize, available: usize },
    #[error("prefix mass reaches 1 at symbol {index}; alpha would be {alpha}")]
    PrefixMassReachesOne { index: usize, alpha: Rational },
    #[error("geometric parameter {0} is outside (0, 1)")]
    ParameterOutOfRange(Rational),
    #[error("induced probabilities increase at symbol {index}")]
    NotMonotone { index: usize },
    #[error("explicit head is invalid: {0}")]
    InvalidHead(String),
    #[error("alpha sequence has an empty period")]
    EmptyPeriod,
    #[error("truncation size must be at least 2, got {0}")]
    TruncationTooSmall(usize),
    #[error("no exact tail available: {0}")]
    TailNotComputable(String),
    #[error(transparent)]
    Dist(#[from] DistError),
}

/// A finite list of conditional tail ratios `alpha_m = p_m / (1 - S_{m-1})`,
/// each in the open interval `(0, 1)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct AlphaVector(Vec<Rational>);

impl AlphaVector {
    pub fn new(alphas: Vec<Rational>) -> Result<Self, SourceError> {
        check_alphas(&alphas)?;
        Ok(AlphaVector(alphas))
    }

    pub fn constant(alpha: Rational, len: usize) -> Result<Self, SourceError> {
        Self::new(vec![alpha; len])
    }

    pub fn as_slice(&self) -> &[Rational] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn into_inner(self) -> Vec<Rational> {
        self.0
    }
}

fn check_alphas(alphas: &[Rational]) -> Result<(), SourceError> {
    let one = Rational::one();
    match alphas
        .iter()
        .enumerate()
        .find(|(_, a)| !a.is_positive() || **a >= one)
    {
        Some((i, a)) => Err(SourceError::AlphaOutOfRange {
            index: i + 1,
            value: a.clone(),
        }),
        None => Ok(()),
    }
}

/// First `n` probabilities `p_1 = alpha_1`, `p_m = alpha_m * prod_{j<m}(1 - alpha_j)`.
///
/// The result is an unnormalized prefix; the residual mass is
/// `prod_{j<=n}(1 - alpha_j)`.
pub fn from_alphas(alphas: &AlphaVector, n: usize) -> Result<Vec<Rational>, SourceError> {
    if alphas.len() < n {
        return Err(SourceError::NotEnoughAlphas {
            needed: n,
            available: alphas.len(),
        });
    }
    let mut survival = Rational::one();
    let mut out = Vec::with_capacity(n);
    for a in &alphas.as_slice()[..n] {
        out.push(a * &survival);
        survival = survival * (Rational::one() - a);
    }
    Ok(out)
}

/// Inverse of [`from_alphas`]: `alpha_m = p_m / (1 - sum_{j<m} p_j)`.
pub fn to_alphas(probs: &[Rational]) -> Result<AlphaVector, SourceError> {
    let mut remaining = Rational::one();
    let mut alphas = Vec::with_capacity(probs.len());
    for (i, p) in probs.iter().enumerate() {
        if !p.is_positive() {
            return Err(SourceError::AlphaOutOfRange {
                index: i + 1,
                value: p.clone(),
            });
        }
        if !remaining.is_positive() {
            return Err(SourceError::PrefixMassReachesOne {
                index: i + 1,
                alpha: Rational::zero(),
            });
        }
        let alpha = p / &remaining;
        if alpha >= Rational::one() {
            return Err(SourceError::PrefixMassReachesOne {
                index: i + 1,
                alpha,
            });
        }
        remaining = remaining - p;
        alphas.push(alpha);
    }
    Ok(AlphaVector(alphas))
}

/// Eventually periodic alpha rule: `prefix` first, then `period` repeated forever.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct AlphaSequence {
    pub prefix: Vec<Rational>,
    pub period: Vec<Rational>,
}

impl AlphaSequence {
    pub fn new(prefix: Vec<Rational>, period: Vec<Rational>) -> Result<Self, SourceError> {
        if period.is_empty() {
            return Err(SourceError::EmptyPeriod);
        }
        check_alphas(&prefix)?;
        check_alphas(&period).map_err(|e| match e {
            SourceError::AlphaOutOfRange { index, value } => SourceError::AlphaOutOfRange {
                index: index + prefix.len(),
                value,
            },
            other => other,
        })?;
        let seq = AlphaSequence { prefix, period };
        // p_{m+1} <= p_m  <=>  alpha_{m+1} (1 - alpha_m) <= alpha_m
        for m in 1..=seq.distinct_pairs() {
            let (a, b) = (seq.alpha(m), seq.alpha(m + 1));
            if b * (Rational::one() - &a) > a {
                return Err(SourceError::NotMonotone { index: m + 1 });
            }
        }
        Ok(seq)
    }

    pub fn constant(alpha: Rational) -> Result<Self, SourceError> {
        Self::new(Vec::new(), vec![alpha])
    }

    /// A finite list whose last entry repeats.
    pub fn repeat_last(alphas: Vec<Rational>) -> Result<Self, SourceError> {
        let mut prefix = alphas;
        let last = prefix.pop().ok_or(SourceError::EmptyPeriod)?;
        Self::new(prefix, vec![last])
    }

    pub fn cyclic(period: Vec<Rational>) -> Result<Self, SourceError> {
        Self::new(Vec::new(), period)
    }

    /// `alpha_i`, 1-based.
    pub fn alpha(&self, i: usize) -> Rational {
        assert!(i >= 1);
        let idx = i - 1;
        if idx < self.prefix.len() {
            self.prefix[idx].clone()
        } else {
            self.period[(idx - self.prefix.len()) % self.period.len()].clone()
        }
    }

    /// Number of consecutive pairs `(alpha_i, alpha_{i+1})` after which the
    /// pattern of pairs repeats.
    pub fn distinct_pairs(&self) -> usize {
        self.prefix.len() + self.period.len()
    }

    pub fn take(&self, n: usize) -> AlphaVector {
        AlphaVector((1..=n).map(|i| self.alpha(i)).collect())
    }
}

/// Generator of an infinite, non-increasing distribution with exact tails.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SourceSpec {
    /// `p_i = q (1 - q)^(i-1)` for a parameter `q` in `(0, 1)`.
    Geometric { q: Rational },
    /// `p_m = alpha_m prod_{j<m}(1 - alpha_j)`.
    Alpha { alphas: AlphaSequence },
    /// Explicit leading probabilities; the remaining mass `R` continues
    /// geometrically as `R q (1 - q)^(j-1)`.
    ExplicitHead { head: Vec<Rational>, q: Rational },
}

impl SourceSpec {
    pub fn geometric(q: Rational) -> Result<Self, SourceError> {
        if !q.is_positive() || q >= Rational::one() {
            return Err(SourceError::ParameterOutOfRange(q));
        }
        Ok(SourceSpec::Geometric { q })
    }

    pub fn alpha(alphas: AlphaSequence) -> Self {
        SourceSpec::Alpha { alphas }
    }

    pub fn explicit_head(head: Vec<Rational>, q: Rational) -> Result<Self, SourceError> {
        if !q.is_positive() || q >= Rational::one() {
            return Err(SourceError::ParameterOutOfRange(q));
        }
        if head.is_empty() {
            return Err(SourceError::InvalidHead("empty head".into()));
        }
        if head.iter().any(|p| !p.is_positive()) {
            return Err(SourceError::InvalidHead("non-positive entry".into()));
        }
        if let Some(i) = head.windows(2).position(|w| w[0] < w[1]) {
            return Err(SourceError::NotMonotone { index: i + 2 });
        }
        let mass: Rational = head.iter().sum();
        if mass >= Rational::one() {
            return Err(SourceError::InvalidHead(format!(
                "head mass {mass} leaves no tail"
            )));
        }
        let first_tail = (Rational::one() - mass) * &q;
        if &first_tail > head.last().unwrap() {
            return Err(SourceError::NotMonotone {
                index: head.len() + 1,
            });
        }
        Ok(SourceSpec::ExplicitHead { head, q })
    }

    /// The alpha rule equivalent to this source (geometric tails have constant alpha).
    pub fn alpha_sequence(&self) -> AlphaSequence {
        match self {
            SourceSpec::Geometric { q } => AlphaSequence {
                prefix: Vec::new(),
                period: vec![q.clone()],
            },
            SourceSpec::Alpha { alphas } => alphas.clone(),
            SourceSpec::ExplicitHead { head, q } => AlphaSequence {
                prefix: to_alphas(head)
                    .expect("validated head has alphas in (0,1)")
                    .into_inner(),
                period: vec![q.clone()],
            },
        }
    }

    /// Probability of symbol `i` (1-based).
    pub fn prob(&self, i: usize) -> Rational {
        self.prob_prefix(i).pop().expect("i >= 1")
    }

    pub fn p1(&self) -> Rational {
        self.prob(1)
    }

    /// `(p_1, ..., p_n)`.
    pub fn prob_prefix(&self, n: usize) -> Vec<Rational> {
        match self {
            SourceSpec::Geometric { q } => {
                let keep = Rational::one() - q;
                let mut out = Vec::with_capacity(n);
                let mut p = q.clone();
                for _ in 0..n {
                    out.push(p.clone());
                    p = p * &keep;
                }
                out
            }
            SourceSpec::Alpha { alphas } => {
                from_alphas(&alphas.take(n), n).expect("alpha rule is total")
            }
            SourceSpec::ExplicitHead { head, q } => {
                let mut out: Vec<Rational> = head.iter().take(n).cloned().collect();
                let tail_mass = Rational::one() - head.iter().sum::<Rational>();
                let keep = Rational::one() - q;
                let mut p = tail_mass * q;
                while out.len() < n {
                    out.push(p.clone());
                    p = p * &keep;
                }
                out
            }
        }
    }

    /// Residual mass `1 - S_n = sum_{k>n} p_k`, in closed form.
    pub fn tail_after(&self, n: usize) -> Rational {
        match self {
            SourceSpec::Geometric { q } => (Rational::one() - q).pow(n as u32),
            SourceSpec::Alpha { alphas } => (1..=n)
                .map(|j| Rational::one() - alphas.alpha(j))
                .fold(Rational::one(), |acc, x| acc * x),
            SourceSpec::ExplicitHead { head, q } => {
                if n <= head.len() {
                    Rational::one() - head[..n].iter().sum::<Rational>()
                } else {
                    let tail_mass = Rational::one() - head.iter().sum::<Rational>();
                    tail_mass * (Rational::one() - q).pow((n - head.len()) as u32)
                }
            }
        }
    }

    /// `S_n = sum_{j<=n} p_j`, in closed form.
    pub fn partial_sum(&self, n: usize) -> Rational {
        Rational::one() - self.tail_after(n)
    }
}

/// The truncated source of size `n`: `q_i = p_i / S_n`.
pub fn truncate(spec: &SourceSpec, n: usize) -> Result<FiniteDistribution, SourceError> {
    if n < 2 {
        return Err(SourceError::TruncationTooSmall(n));
    }
    Ok(truncate_prefix(&spec.prob_prefix(n)))
}

/// Truncation of an already materialized prefix `p_1..p_n`.
///
/// Scaling all of `p_1..p_n` to a common denominator gives integer weights
/// whose own sum is `S_n` times that denominator, so the renormalization by
/// `S_n` is exact without any division.
pub(crate) fn truncate_prefix(prefix: &[Rational]) -> FiniteDistribution {
    let denom: BigUint = common_denominator(prefix);
    FiniteDistribution::from_sorted_weights(scale_to_integers(prefix, &denom))
}
