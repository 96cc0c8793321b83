//! Standardized Huffman coding with a complete merge trace.
//!
//! Each step removes the last two entries of the non-increasing state and
//! inserts their sum at the unique 1-based index `k` such that every entry
//! before `k` is strictly greater than the sum and every entry from `k` on is
//! at most the sum. A merged node therefore lands *before* all existing
//! entries of equal probability, and ties among original symbols resolve by
//! index because the merge candidates are always the last two positions.

use std::fmt::Write as _;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dist::FiniteDistribution;
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HuffmanError {
    #[error("a merge needs at least 2 entries, state has {0}")]
    TooFewEntries(usize),
    #[error("state is not sorted non-increasing at index {0}")]
    UnsortedState(usize),
    #[error("length vector has {lengths} entries, distribution has {symbols}")]
    SizeMismatch { symbols: usize, lengths: usize },
    #[error("Kraft sum {0} exceeds 1")]
    KraftViolation(Rational),
    #[error("codeword lengths must be positive")]
    ZeroLength,
}

/// `P^(m)`: the sorted probability list after `m` merges.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MergeState {
    pub m: usize,
    pub probs: Vec<Rational>,
}

impl MergeState {
    pub fn initial(dist: &FiniteDistribution) -> Self {
        MergeState {
            m: 0,
            probs: dist.probs(),
        }
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    /// Sum of the last two entries, the next merge candidate.
    pub fn smallest_pair_sum(&self) -> Option<Rational> {
        let n = self.probs.len();
        (n >= 2).then(|| &self.probs[n - 2] + &self.probs[n - 1])
    }
}

/// 0-based position at which `value` enters a non-increasing list.
fn insertion_point<W: Ord>(sorted_desc: &[W], value: &W) -> usize {
    sorted_desc.partition_point(|x| x > value)
}

/// One standardized merge. Returns the next state and the 1-based insertion index.
pub fn merge_step(state: &MergeState) -> Result<(MergeState, usize), HuffmanError> {
    if state.probs.len() < 2 {
        return Err(HuffmanError::TooFewEntries(state.probs.len()));
    }
    if let Some(i) = state.probs.windows(2).position(|w| w[0] < w[1]) {
        return Err(HuffmanError::UnsortedState(i + 1));
    }
    let mut probs = state.probs.clone();
    let last = probs.pop().unwrap();
    let second = probs.pop().unwrap();
    let merged = second + last;
    let pos = insertion_point(&probs, &merged);
    probs.insert(pos, merged);
    Ok((
        MergeState {
            m: state.m + 1,
            probs,
        },
        pos + 1,
    ))
}

/// One recorded merge: step `m` (merges already done), 1-based insertion
/// index `k` into `P^(m+1)`, and the merged node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MergeStep {
    pub m: usize,
    pub k: usize,
    merged: BigUint,
    /// Node ids of the merged pair: `(second to last, last)`. Leaves are
    /// `0..n` (symbol `i` is node `i - 1`); merge `m` creates node `n + m`.
    pub children: (usize, usize),
}

/// Public view of an insertion record.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Insertion {
    pub m: usize,
    pub k: usize,
    pub merged: Rational,
}

/// Full record of a standardized Huffman run.
///
/// Only the initial weights and the per-step insertions are stored; every
/// intermediate `P^(m)` is reproduced on demand by replaying the steps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MergeTrace {
    total: BigUint,
    initial: Vec<BigUint>,
    steps: Vec<MergeStep>,
}

/// One line of the JSON-lines trace export.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceRecord {
    pub m: usize,
    pub k: usize,
    pub merged: Rational,
    /// `P^(m+1)`, the state produced by this merge.
    pub state: Vec<Rational>,
}

impl MergeTrace {
    /// Alphabet size.
    pub fn n(&self) -> usize {
        self.initial.len()
    }

    pub fn steps(&self) -> &[MergeStep] {
        &self.steps
    }

    pub fn merged_value(&self, step: &MergeStep) -> Rational {
        Rational::from_biguints(&step.merged, &self.total)
    }

    pub fn insertions(&self) -> Vec<Insertion> {
        self.steps
            .iter()
            .map(|s| Insertion {
                m: s.m,
                k: s.k,
                merged: self.merged_value(s),
            })
            .collect()
    }

    pub(crate) fn to_state(&self, m: usize, weights: &[BigUint]) -> MergeState {
        MergeState {
            m,
            probs: weights
                .iter()
                .map(|w| Rational::from_biguints(w, &self.total))
                .collect(),
        }
    }

    /// `P^(m)` for `0 <= m <= n - 1`.
    pub fn state(&self, m: usize) -> MergeState {
        assert!(m < self.n(), "state index {m} out of range");
        let weights = self.weights_at(m);
        self.to_state(m, &weights)
    }

    fn weights_at(&self, m: usize) -> Vec<BigUint> {
        let mut w = self.initial.clone();
        for step in 0..m {
            self.apply_step(&mut w, step);
        }
        w
    }

    /// Turns the weights of `P^(m)` into those of `P^(m+1)`.
    pub(crate) fn apply_step(&self, weights: &mut Vec<BigUint>, m: usize) {
        let step = &self.steps[m];
        weights.truncate(weights.len() - 2);
        weights.insert(step.k - 1, step.merged.clone());
    }

    /// Every state `P^(0), ..., P^(n-1)` in order.
    pub fn states(&self) -> Vec<MergeState> {
        let mut out = Vec::with_capacity(self.n());
        let mut w = self.initial.clone();
        out.push(self.to_state(0, &w));
        for step in &self.steps {
            w.truncate(w.len() - 2);
            w.insert(step.k - 1, step.merged.clone());
            out.push(self.to_state(step.m + 1, &w));
        }
        out
    }

    /// Step at which leaf `symbol` (1-based) is first merged.
    pub fn first_merge_of(&self, symbol: usize) -> usize {
        let leaf = symbol - 1;
        self.steps
            .iter()
            .position(|s| s.children.0 == leaf || s.children.1 == leaf)
            .expect("every leaf is merged exactly once")
    }

    /// Codeword lengths from a top-down replay: each merged node's children
    /// sit one level below it.
    pub fn lengths(&self) -> LengthVector {
        let n = self.n();
        let mut depth = vec![0u32; n + self.steps.len()];
        for (m, step) in self.steps.iter().enumerate().rev() {
            let d = depth[n + m] + 1;
            depth[step.children.0] = d;
            depth[step.children.1] = d;
        }
        depth.truncate(n);
        LengthVector(depth)
    }

    pub fn records(&self) -> Vec<TraceRecord> {
        let states = self.states();
        self.steps
            .iter()
            .map(|s| TraceRecord {
                m: s.m,
                k: s.k,
                merged: self.merged_value(s),
                state: states[s.m + 1].probs.clone(),
            })
            .collect()
    }

    /// JSON lines, one record per merge step.
    pub fn to_json_lines(&self) -> String {
        let mut out = String::new();
        for rec in self.records() {
            let line = serde_json::to_string(&rec).expect("trace records serialize");
            writeln!(out, "{line}").unwrap();
        }
        out
    }
}

/// Runs the standardized merge to exhaustion.
pub fn huffman(dist: &FiniteDistribution) -> (LengthVector, MergeTrace) {
    let trace = merge_trace(dist);
    (trace.lengths(), trace)
}

pub fn huffman_lengths(dist: &FiniteDistribution) -> LengthVector {
    merge_trace(dist).lengths()
}

pub fn merge_trace(dist: &FiniteDistribution) -> MergeTrace {
    let n = dist.len();
    let mut work: Vec<(BigUint, usize)> = dist.weights().iter().cloned().zip(0..n).collect();
    let mut steps = Vec::with_capacity(n.saturating_sub(1));
    for m in 0..n - 1 {
        let (w_last, id_last) = work.pop().unwrap();
        let (w_second, id_second) = work.pop().unwrap();
        let merged = w_second + w_last;
        let pos = work.partition_point(|(w, _)| *w > merged);
        work.insert(pos, (merged.clone(), n + m));
        steps.push(MergeStep {
            m,
            k: pos + 1,
            merged,
            children: (id_second, id_last),
        });
    }
    debug_assert_eq!(work.len(), 1);
    debug_assert_eq!(&work[0].0, dist.total());
    MergeTrace {
        total: dist.total().clone(),
        initial: dist.weights().to_vec(),
        steps,
    }
}

/// Codeword lengths aligned with symbol indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LengthVector(pub Vec<u32>);

impl LengthVector {
    pub fn new(lengths: Vec<u32>) -> Self {
        LengthVector(lengths)
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Length of symbol `i` (1-based).
    pub fn get(&self, symbol: usize) -> u32 {
        self.0[symbol - 1]
    }

    pub fn is_non_decreasing(&self) -> bool {
        self.0.windows(2).all(|w| w[0] <= w[1])
    }

    pub fn kraft_sum(&self) -> Rational {
        kraft_sum(self)
    }

    pub fn sorted(&self) -> LengthVector {
        let mut v = self.0.clone();
        v.sort_unstable();
        LengthVector(v)
    }
}

impl From<Vec<u32>> for LengthVector {
    fn from(v: Vec<u32>) -> Self {
        LengthVector(v)
    }
}

/// Exact `sum 2^(-l_i)`.
pub fn kraft_sum(lengths: &LengthVector) -> Rational {
    let Some(&max) = lengths.0.iter().max() else {
        return Rational::zero();
    };
    let numer: BigUint = lengths
        .0
        .iter()
        .map(|&l| BigUint::one() << (max - l) as usize)
        .sum();
    Rational::from_biguints(&numer, &(BigUint::one() << max as usize))
}

/// Exact `sum p_i l_i`.
pub fn expected_length(
    dist: &FiniteDistribution,
    lengths: &LengthVector,
) -> Result<Rational, HuffmanError> {
    if dist.len() != lengths.len() {
        return Err(HuffmanError::SizeMismatch {
            symbols: dist.len(),
            lengths: lengths.len(),
        });
    }
    let numer = weighted_length(dist.weights(), lengths.as_slice());
    Ok(Rational::from_biguints(&numer, dist.total()))
}

/// `sum w_i l_i` over integer weights.
pub(crate) fn weighted_length(weights: &[BigUint], lengths: &[u32]) -> BigUint {
    weights
        .iter()
        .zip(lengths)
        .map(|(w, &l)| w * BigUint::from(l))
        .sum()
}

/// Binary codewords aligned with symbol indices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CodeBook(pub Vec<String>);

impl CodeBook {
    pub fn codewords(&self) -> &[String] {
        &self.0
    }

    pub fn is_prefix_free(&self) -> bool {
        let mut words: Vec<&String> = self.0.iter().collect();
        words.sort();
        words.windows(2).all(|w| !w[1].starts_with(w[0].as_str()))
    }
}

/// Canonical code: symbols ordered by `(length, index)` receive
/// lexicographically increasing codewords of their lengths.
pub fn canonical_codebook(lengths: &LengthVector) -> Result<CodeBook, HuffmanError> {
    if lengths.0.contains(&0) {
        return Err(HuffmanError::ZeroLength);
    }
    let kraft = kraft_sum(lengths);
    if kraft > Rational::one() {
        return Err(HuffmanError::KraftViolation(kraft));
    }
    let mut order: Vec<usize> = (0..lengths.len()).collect();
    order.sort_by_key(|&i| (lengths.0[i], i));
    let mut words = vec![String::new(); lengths.len()];
    let mut code = BigUint::zero();
    let mut prev_len = 0u32;
    for (rank, &i) in order.iter().enumerate() {
        let len = lengths.0[i];
        if rank > 0 {
            code += 1u32;
        }
        code <<= (len - prev_len) as usize;
        prev_len = len;
        let bits = code.to_str_radix(2);
        let bits = if code.is_zero() { String::new() } else { bits };
        words[i] = format!("{}{}", "0".repeat(len as usize - bits.len()), bits);
    }
    Ok(CodeBook(words))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dist::{counterexample, validate};

    fn rs(v: &[(i64, i64)]) -> Vec<Rational> {
        v.iter().map(|&(n, d)| Rational::new(n, d)).collect()
    }

    fn state(v: &[(i64, i64)]) -> MergeState {
        MergeState { m: 0, probs: rs(v) }
    }

    #[test]
    fn merge_inserts_before_equal_entries() {
        let (next, k) = merge_step(&state(&[(2, 5), (3, 10), (1, 5), (1, 10)])).unwrap();
        assert_eq!(k, 2);
        assert_eq!(next.probs, rs(&[(2, 5), (3, 10), (3, 10)]));
        assert_eq!(next.m, 1);

        let (next, k) = merge_step(&state(&[(1, 2), (1, 4), (1, 4)])).unwrap();
        assert_eq!((k, next.probs), (1, rs(&[(1, 2), (1, 2)])));

        let (next, k) = merge_step(&state(&[(1, 3), (1, 3), (1, 3)])).unwrap();
        assert_eq!((k, next.probs), (1, rs(&[(2, 3), (1, 3)])));
    }

    #[test]
    fn merge_step_errors() {
        assert_eq!(
            merge_step(&state(&[(1, 1)])),
            Err(HuffmanError::TooFewEntries(1))
        );
        assert_eq!(
            merge_step(&state(&[(1, 4), (3, 4)])),
            Err(HuffmanError::UnsortedState(1))
        );
    }

    #[test]
    fn dyadic_lengths() {
        let d = validate(&rs(&[(1, 2), (1, 4), (1, 8), (1, 8)])).unwrap();
        let (lengths, trace) = huffman(&d);
        assert_eq!(lengths.as_slice(), &[1, 2, 3, 3]);
        assert_eq!(trace.steps().len(), 3);
        assert_eq!(expected_length(&d, &lengths).unwrap(), Rational::new(7, 4));
    }

    #[test]
    fn counterexample_lengths() {
        let l1 = |id, e: Rational| huffman_lengths(&counterexample(id, &e).unwrap()).get(1);
        assert_eq!(l1(2, Rational::new(1, 36)), 3);
        assert_eq!(l1(3, Rational::zero()), 3);
        assert_eq!(l1(1, Rational::new(1, 12)), 1);
    }

    #[test]
    fn trace_states_match_merge_step() {
        let d = validate(&rs(&[(2, 5), (3, 10), (1, 5), (1, 10)])).unwrap();
        let trace = merge_trace(&d);
        let mut s = MergeState::initial(&d);
        for (m, st) in trace.states().iter().enumerate() {
            assert_eq!(st, &s);
            assert_eq!(trace.state(m), s);
            if m + 1 < d.len() {
                let (next, k) = merge_step(&s).unwrap();
                assert_eq!(trace.steps()[m].k, k);
                s = next;
            }
        }
        let ins = trace.insertions();
        assert_eq!(
            ins[0],
            Insertion {
                m: 0,
                k: 2,
                merged: Rational::new(3, 10)
            }
        );
    }

    #[test]
    fn json_lines_parse_back() {
        let d = validate(&rs(&[(1, 3), (1, 3), (1, 3)])).unwrap();
        let text = merge_trace(&d).to_json_lines();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 2);
        assert_eq!(
            lines[0],
            r#"{"m":0,"k":1,"merged":"2/3","state":["2/3","1/3"]}"#
        );
        let rec: TraceRecord = serde_json::from_str(lines[1]).unwrap();
        assert_eq!(rec.state, vec![Rational::one()]);
    }

    #[test]
    fn canonical_examples() {
        let cb = |v: Vec<u32>| canonical_codebook(&LengthVector(v)).unwrap().0;
        assert_eq!(cb(vec![1, 2, 2]), ["0", "10", "11"]);
        assert_eq!(cb(vec![2, 2, 2, 2]), ["00", "01", "10", "11"]);
        assert_eq!(cb(vec![1, 2, 3, 3]), ["0", "10", "110", "111"]);
        assert_eq!(cb(vec![3, 1, 3, 2]), ["110", "0", "111", "10"]);
        // incomplete codes are fine
        assert_eq!(cb(vec![2, 2]), ["00", "01"]);
        assert!(matches!(
            canonical_codebook(&LengthVector(vec![1, 1, 1])),
            Err(HuffmanError::KraftViolation(_))
        ));
    }

    #[test]
    fn kraft_examples() {
        let k = |v: Vec<u32>| kraft_sum(&LengthVector(v));
        assert_eq!(k(vec![1, 2, 2]), Rational::one());
        assert_eq!(k(vec![1, 1, 1]), Rational::new(3, 2));
        assert_eq!(k(vec![1, 2, 3, 4, 4]), Rational::one());
    }

    #[test]
    fn expected_length_examples() {
        let u3 = FiniteDistribution::uniform(3).unwrap();
        assert_eq!(
            expected_length(&u3, &LengthVector(vec![1, 2, 2])).unwrap(),
            Rational::new(5, 3)
        );
        let c2 = counterexample(2, &Rational::zero()).unwrap();
        let flat = LengthVector(vec![3; 8]);
        let skew = LengthVector(vec![2, 3, 3, 3, 3, 3, 4, 4]);
        assert_eq!(expected_length(&c2, &flat).unwrap(), Rational::integer(3));
        assert_eq!(expected_length(&c2, &skew).unwrap(), Rational::integer(3));
        assert!(matches!(
            expected_length(&u3, &flat),
            Err(HuffmanError::SizeMismatch {
                symbols: 3,
                lengths: 8
            })
        ));
    }

    #[test]
    fn p1_is_merged_last_in_dyadic_chain() {
        let d = validate(&rs(&[(1, 2), (1, 4), (1, 8), (1, 8)])).unwrap();
        let trace = merge_trace(&d);
        assert_eq!(trace.first_merge_of(1), 2);
        assert_eq!(trace.first_merge_of(4), 0);
    }
}
