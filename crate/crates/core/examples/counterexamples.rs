//! The three parametrized distributions where p_1 alone does not pin l_1,
//! checked against the exhaustive oracle.

use prefixcode::oracle::optimal_lengths;
use prefixcode::{counterexample, huffman_lengths, Rational};

fn main() {
    let cases = [
        (1, Rational::zero()),
        (1, Rational::new(1, 10)),
        (2, Rational::zero()),
        (2, Rational::new(1, 36)),
        (3, Rational::zero()),
        (3, Rational::new(1, 24)),
    ];
    for (id, eps) in cases {
        let d = counterexample(id, &eps).unwrap();
        let lengths = huffman_lengths(&d);
        let set = optimal_lengths(&d).unwrap();
        let mut l1s: Vec<u32> = set.vectors.iter().map(|v| v.get(1)).collect();
        l1s.dedup();
        println!(
            "#{id} eps = {eps:<5} p_1 = {:<5} huffman l_1 = {}  optimal l_1 values {l1s:?} ({} optimizers)",
            d.p1().to_string(),
            lengths.get(1),
            set.vectors.len()
        );
    }
}
