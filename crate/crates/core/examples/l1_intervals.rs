//! Classify l_1 from p_1 alone, and bound how much of (0, 1/2) the
//! classification intervals cover.

use prefixcode::interval::{classify_l1, coverage_sum, L1Interval};
use prefixcode::Rational;

fn main() {
    for k in 1..=6 {
        let iv = L1Interval::new(k).unwrap();
        println!("k = {k}: ({}, {})", iv.lower, iv.upper);
    }
    for p in ["0.6", "2/5", "0.3", "1/3", "0.16", "1/100"] {
        let p1: Rational = p.parse().unwrap();
        println!("p_1 = {p:>5}: {}", classify_l1(&p1).unwrap());
    }
    for terms in [5, 10, 20] {
        let c = coverage_sum(terms).unwrap();
        let (lo, hi) = c.decimal_bounds(6);
        println!(
            "K = {terms:>2}: partial {} in ({lo}, {hi})",
            c.partial.to_f64()
        );
    }
}
