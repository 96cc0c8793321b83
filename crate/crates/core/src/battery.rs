//! Seeded random instance generators and the property battery run by the
//! `battery` subcommand.

use num_bigint::{BigInt, BigUint};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::anti_uniform::{anti_uniform_lengths, check_finite};
use crate::delta::{delta_occasion, l1_lower_bound, l1_via_delta, lemma1_bounds};
use crate::dist::FiniteDistribution;
use crate::huffman::{expected_length, huffman, kraft_sum};
use crate::interval::L1Interval;
use crate::oracle::optimal_lengths;
use crate::rational::Rational;
use crate::source::AlphaVector;

pub const SEED_ENV: &str = "PREFIXCODE_SEED";
pub const DEFAULT_SEED: u64 = 0x5eed_c0de;

pub type BatteryRng = ChaCha8Rng;

/// Seed from `PREFIXCODE_SEED` (decimal), falling back to [`DEFAULT_SEED`].
pub fn seed_from_env() -> u64 {
    std::env::var(SEED_ENV)
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_SEED)
}

pub fn rng(seed: u64) -> BatteryRng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn from_u64_weights(mut w: Vec<u64>) -> FiniteDistribution {
    w.sort_unstable_by(|a, b| b.cmp(a));
    FiniteDistribution::from_weights(w.into_iter().map(BigUint::from).collect())
        .expect("positive sorted weights")
}

/// A random sorted distribution on `n >= 2` symbols drawn from a mix of
/// shapes: flat integer weights, wide-range weights, geometric-like decay,
/// a heavy head, and near-uniform weights with many ties.
pub fn random_distribution<R: Rng>(rng: &mut R, n: usize) -> FiniteDistribution {
    assert!(n >= 2);
    let w: Vec<u64> = match rng.gen_range(0..5) {
        0 => (0..n).map(|_| rng.gen_range(1..=100)).collect(),
        1 => (0..n).map(|_| rng.gen_range(1..=1_000_000)).collect(),
        2 => {
            let ratio: f64 = rng.gen_range(0.25..0.95);
            let mut x = 1e12_f64;
            (0..n)
                .map(|_| {
                    let jitter: f64 = rng.gen_range(0.9..1.1);
                    x *= ratio;
                    (x * jitter) as u64 + 1
                })
                .collect()
        }
        3 => {
            let mut v: Vec<u64> = (0..n - 1).map(|_| rng.gen_range(1..=50)).collect();
            v.push(rng.gen_range(50..=5000));
            v
        }
        _ => (0..n).map(|_| rng.gen_range(5..=7)).collect(),
    };
    from_u64_weights(w)
}

/// Uniform random rational strictly inside `(lo, hi)`.
pub fn rational_strictly_between<R: Rng>(rng: &mut R, lo: &Rational, hi: &Rational) -> Rational {
    assert!(lo < hi);
    const GRID: u64 = 1 << 20;
    let u = rng.gen_range(1..GRID);
    lo + (hi - lo) * Rational::new(u as i64, GRID as i64)
}

/// A random distribution on `n` symbols whose largest probability is exactly `p1`.
///
/// Requires `n * p1 >= 1` and `p1 < 1`. The other entries are random weights
/// blended toward uniform just enough to stay at or below `p1`.
pub fn distribution_with_p1<R: Rng>(rng: &mut R, p1: &Rational, n: usize) -> FiniteDistribution {
    assert!(n >= 2);
    let rest = Rational::one() - p1;
    let count = Rational::integer(n as i64 - 1);
    assert!(rest <= p1 * &count, "n * p1 must be at least 1");
    let raw: Vec<Rational> = (0..n - 1)
        .map(|_| Rational::integer(rng.gen_range(1..=1000)))
        .collect();
    let raw_total: Rational = raw.iter().sum();
    let flat = &rest / &count;
    let shares: Vec<Rational> = raw.iter().map(|w| &rest * w / &raw_total).collect();
    let max_share = shares.iter().max().unwrap().clone();
    let mix = if max_share <= *p1 {
        Rational::one()
    } else {
        (p1 - &flat) / (&max_share - &flat)
    };
    let mut probs = vec![p1.clone()];
    probs.extend(
        shares
            .into_iter()
            .map(|s| &mix * s + (Rational::one() - &mix) * &flat),
    );
    probs[1..].sort_by(|a, b| b.cmp(a));
    FiniteDistribution::new(&probs).expect("constructed distribution is valid")
}

/// Random alpha list of length `len` on the grid `k/1000`, `k` in
/// `lo_milli..=hi_milli`, constrained so the induced probabilities are
/// non-increasing (`alpha_{i+1} <= alpha_i / (1 - alpha_i)`).
pub fn random_alpha_vector<R: Rng>(
    rng: &mut R,
    len: usize,
    lo_milli: u32,
    hi_milli: u32,
) -> AlphaVector {
    assert!(0 < lo_milli && lo_milli <= hi_milli && hi_milli < 1000);
    let mut out: Vec<Rational> = Vec::with_capacity(len);
    for _ in 0..len {
        let cap = match out.last() {
            Some(prev) => {
                let bound = prev / (Rational::one() - prev) * Rational::integer(1000);
                bound
                    .floor()
                    .min(BigInt::from(hi_milli))
                    .try_into()
                    .unwrap_or(hi_milli)
            }
            None => hi_milli,
        };
        let k = rng.gen_range(lo_milli..=cap.max(lo_milli));
        out.push(Rational::new(k as i64, 1000));
    }
    AlphaVector::new(out).expect("grid values lie in (0, 1)")
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct PropertyTally {
    pub name: &'static str,
    pub instances: usize,
    pub failures: usize,
    pub first_failure: Option<String>,
}

impl PropertyTally {
    fn new(name: &'static str) -> Self {
        PropertyTally {
            name,
            ..Default::default()
        }
    }

    fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.instances += 1;
        if !ok {
            self.failures += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(describe());
            }
        }
    }
}

/// Runs the core finite-source properties on `instances` random
/// distributions with `n` in `2..=max_n` (capped at the oracle limit).
pub fn run_battery(seed: u64, instances: usize, max_n: usize) -> Vec<PropertyTally> {
    let max_n = max_n.clamp(2, crate::oracle::MAX_ORACLE_SYMBOLS);
    let mut rng = rng(seed);
    let mut oracle = PropertyTally::new("huffman_matches_oracle");
    let mut kraft = PropertyTally::new("kraft_equality");
    let mut via_delta = PropertyTally::new("l1_equals_floor_log2_n_minus_delta");
    let mut bracket = PropertyTally::new("delta_within_bracket_bounds");
    let mut lower_bound = PropertyTally::new("l1_at_least_floor_neg_log2_p");
    let mut anti = PropertyTally::new("suffix_condition_iff_anti_uniform_optimal");
    let mut interval = PropertyTally::new("interval_classification_sound");
    let tiny = Rational::new(1, 1_000_000);
    for _ in 0..instances {
        let n = rng.gen_range(2..=max_n);
        let d = random_distribution(&mut rng, n);
        let (lengths, _) = huffman(&d);
        let describe = || format!("{d:?}");
        let set = optimal_lengths(&d).expect("n within oracle limit");
        let e = expected_length(&d, &lengths).unwrap();
        oracle.record(e == set.optimum, describe);
        kraft.record(kraft_sum(&lengths) == Rational::one(), describe);
        anti.record(
            check_finite(&d).holds == set.contains(&anti_uniform_lengths(n)),
            describe,
        );
        let p1 = d.p1();
        let l1 = lengths.get(1);
        if let Some(k) = (1..=8).find(|&k| L1Interval::new(k).unwrap().contains(&p1)) {
            interval.record(l1 == k, describe);
        }
        if p1 < Rational::new(1, 2) {
            via_delta.record(l1_via_delta(&d).ok() == Some(l1), describe);
            let delta = delta_occasion(&d).delta().expect("p1 < 1/2");
            let a = &p1 - &tiny;
            let b = &p1 + &tiny;
            if a.is_positive() && b < Rational::new(1, 2) {
                let bounds = lemma1_bounds(&p1, n, Some(&a), Some(&b));
                bracket.record(bounds.admits(delta), describe);
            }
            let above = rational_strictly_between(&mut rng, &p1, &Rational::one());
            lower_bound.record(l1 >= l1_lower_bound(&above).unwrap(), describe);
        }
    }
    vec![oracle, kraft, via_delta, bracket, lower_bound, anti, interval]
}
