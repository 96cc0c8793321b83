//! Exact analysis of binary Huffman codes.
//!
//! Probabilities are exact rationals throughout. The crate covers the
//! standardized Huffman merge with a replayable trace, the merge occasion
//! `delta` of the most likely symbol, the interval classification of its
//! codeword length, anti-uniform source tests, a brute-force optimality
//! oracle for small alphabets, and truncation-based length estimates for
//! infinite sources.

#![allow(clippy::result_large_err)]

pub mod anti_uniform;
pub mod battery;
pub mod cli;
pub mod convergence;
pub mod delta;
pub mod dist;
pub mod huffman;
pub mod input;
pub mod interval;
pub mod oracle;
pub mod rational;
pub mod report;
pub mod source;

pub use dist::{counterexample, validate, DistError, FiniteDistribution};
pub use huffman::{huffman, huffman_lengths, merge_trace, LengthVector, MergeTrace};
pub use rational::Rational;
pub use source::{truncate, AlphaSequence, AlphaVector, SourceSpec};
