//! Brute-force optimality oracle for small alphabets.
//!
//! The universe is every full binary tree leaf-depth profile with `n`
//! leaves, written as a non-decreasing length vector. Profiles are grown
//! level by level: at depth `d` with `a` open nodes, choose how many become
//! leaves and split the rest into `2 * (a - leaves)` nodes at depth `d + 1`.
//! Each profile is produced exactly once and every one is Kraft-tight.
//! Shorter lengths always go to larger probabilities, so minimizing
//! `sum p_i l_i` over this universe gives the exact optimum.

use num_bigint::BigUint;
use serde::Serialize;
use thiserror::Error;

use crate::dist::FiniteDistribution;
use crate::huffman::{weighted_length, LengthVector};
use crate::rational::Rational;

/// Largest alphabet the oracle accepts.
pub const MAX_ORACLE_SYMBOLS: usize = 14;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("oracle universe too large for n = {0} (limit {MAX_ORACLE_SYMBOLS})")]
    UniverseTooLarge(usize),
    #[error("oracle needs n >= 2, got {0}")]
    TooFewSymbols(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OptimalSet {
    pub optimum: Rational,
    pub vectors: Vec<LengthVector>,
}

impl OptimalSet {
    pub fn contains(&self, lengths: &LengthVector) -> bool {
        self.vectors.contains(lengths)
    }
}

fn check_size(n: usize) -> Result<(), OracleError> {
    if n < 2 {
        return Err(OracleError::TooFewSymbols(n));
    }
    if n > MAX_ORACLE_SYMBOLS {
        return Err(OracleError::UniverseTooLarge(n));
    }
    Ok(())
}

/// All non-decreasing Kraft-tight length vectors with entries in `1..=max_len`.
pub fn enumerate_kraft_tight(n: usize, max_len: u32) -> Result<Vec<LengthVector>, OracleError> {
    check_size(n)?;
    let mut out = Vec::new();
    let mut prefix = Vec::with_capacity(n);
    // the root is internal because n >= 2
    expand(n, max_len, 1, 2, &mut prefix, &mut out);
    Ok(out)
}

/// Default universe: depth never exceeds `n - 1`.
pub fn enumerate_default(n: usize) -> Result<Vec<LengthVector>, OracleError> {
    enumerate_kraft_tight(n, n.saturating_sub(1) as u32)
}

fn expand(
    n: usize,
    max_len: u32,
    depth: u32,
    open: usize,
    prefix: &mut Vec<u32>,
    out: &mut Vec<LengthVector>,
) {
    if depth > max_len {
        return;
    }
    let placed = prefix.len();
    for leaves in 0..=open {
        let internal = open - leaves;
        let total = placed + leaves;
        if internal == 0 {
            if total == n {
                let mut v = prefix.clone();
                v.extend(std::iter::repeat_n(depth, leaves));
                out.push(LengthVector::new(v));
            }
            continue;
        }
        // every internal node contributes at least two more leaves
        if total + 2 * internal > n {
            continue;
        }
        prefix.extend(std::iter::repeat_n(depth, leaves));
        expand(n, max_len, depth + 1, 2 * internal, prefix, out);
        prefix.truncate(placed);
    }
}

/// Exact minimum of `sum p_i l_i` and every minimizing vector.
pub fn optimal_lengths(dist: &FiniteDistribution) -> Result<OptimalSet, OracleError> {
    let universe = enumerate_default(dist.len())?;
    let mut best: Option<BigUint> = None;
    let mut vectors = Vec::new();
    for v in universe {
        let cost = weighted_length(dist.weights(), v.as_slice());
        match &best {
            Some(b) if cost > *b => {}
            Some(b) if cost == *b => vectors.push(v),
            _ => {
                best = Some(cost);
                vectors.clear();
                vectors.push(v);
            }
        }
    }
    let best = best.expect("universe is non-empty for n >= 2");
    Ok(OptimalSet {
        optimum: Rational::from_biguints(&best, dist.total()),
        vectors,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dist::{counterexample, validate};
    use crate::huffman::kraft_sum;

    fn lv(v: &[u32]) -> LengthVector {
        LengthVector::new(v.to_vec())
    }

    #[test]
    fn small_universes() {
        assert_eq!(enumerate_default(2).unwrap(), vec![lv(&[1, 1])]);
        assert_eq!(enumerate_default(3).unwrap(), vec![lv(&[1, 2, 2])]);
        let mut four = enumerate_default(4).unwrap();
        four.sort();
        assert_eq!(four, vec![lv(&[1, 2, 3, 3]), lv(&[2, 2, 2, 2])]);
    }

    #[test]
    fn every_profile_is_tight_and_monotone() {
        for n in 2..=10 {
            for v in enumerate_default(n).unwrap() {
                assert!(v.is_non_decreasing());
                assert_eq!(kraft_sum(&v), Rational::one(), "{v:?}");
                assert_eq!(v.len(), n);
            }
        }
    }

    #[test]
    fn max_len_caps_depth() {
        // depth <= 2 leaves only the balanced profile for n = 4
        assert_eq!(
            enumerate_kraft_tight(4, 2).unwrap(),
            vec![lv(&[2, 2, 2, 2])]
        );
        assert!(enumerate_kraft_tight(5, 2).unwrap().is_empty());
    }

    #[test]
    fn size_limits() {
        assert_eq!(
            enumerate_default(15),
            Err(OracleError::UniverseTooLarge(15))
        );
        assert_eq!(enumerate_default(1), Err(OracleError::TooFewSymbols(1)));
        assert!(enumerate_default(14).is_ok());
    }

    #[test]
    fn optimal_examples() {
        let u4 = FiniteDistribution::uniform(4).unwrap();
        let set = optimal_lengths(&u4).unwrap();
        assert_eq!(set.optimum, Rational::integer(2));
        assert_eq!(set.vectors, vec![lv(&[2, 2, 2, 2])]);

        let c2 = counterexample(2, &Rational::zero()).unwrap();
        let set = optimal_lengths(&c2).unwrap();
        assert_eq!(set.optimum, Rational::integer(3));
        assert!(set.contains(&lv(&[3; 8])));
        assert!(set.contains(&lv(&[2, 3, 3, 3, 3, 3, 4, 4])));

        let dy = validate(&[
            Rational::new(1, 2),
            Rational::new(1, 4),
            Rational::new(1, 8),
            Rational::new(1, 8),
        ])
        .unwrap();
        let set = optimal_lengths(&dy).unwrap();
        assert_eq!(set.optimum, Rational::new(7, 4));
        assert_eq!(set.vectors, vec![lv(&[1, 2, 3, 3])]);
    }
}
