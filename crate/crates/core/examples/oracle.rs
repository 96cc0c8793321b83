//! Exhaustive search over full binary tree profiles.

use prefixcode::oracle::{enumerate_default, optimal_lengths};
use prefixcode::{huffman_lengths, FiniteDistribution};

fn main() {
    for n in 2..=14 {
        println!(
            "n = {n:>2}: {} profiles",
            enumerate_default(n).unwrap().len()
        );
    }
    let d = FiniteDistribution::uniform(6).unwrap();
    let set = optimal_lengths(&d).unwrap();
    println!("uniform(6): optimum {}", set.optimum);
    for v in &set.vectors {
        println!("  {:?}", v.as_slice());
    }
    println!("huffman picks {:?}", huffman_lengths(&d).as_slice());
}
