//! Standardized Huffman on a small source: lengths, expected length, the
//! full merge trace as JSON lines, and a canonical codebook.

use prefixcode::huffman::{canonical_codebook, expected_length};
use prefixcode::{huffman, validate, Rational};

fn main() {
    let probs: Vec<Rational> = ["2/5", "3/10", "3/20", "1/10", "1/20"]
        .iter()
        .map(|s| s.parse().unwrap())
        .collect();
    let d = validate(&probs).unwrap();
    let (lengths, trace) = huffman(&d);

    println!("lengths  {:?}", lengths.as_slice());
    println!("E[L]     {}", expected_length(&d, &lengths).unwrap());
    println!("kraft    {}", lengths.kraft_sum());
    print!("{}", trace.to_json_lines());
    for (p, w) in probs
        .iter()
        .zip(canonical_codebook(&lengths).unwrap().codewords())
    {
        println!("{p:>5} -> {w}");
    }
}
