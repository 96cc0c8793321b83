use prefixcode::huffman::kraft_sum;
use prefixcode::oracle::enumerate_default;
use prefixcode::{LengthVector, Rational};

/// Every non-decreasing vector with entries in `1..=n-1` whose Kraft sum is
/// exactly one, found by plain exhaustive search.
fn brute_force(n: usize) -> Vec<LengthVector> {
    fn go(n: usize, max: u32, cur: &mut Vec<u32>, out: &mut Vec<LengthVector>) {
        if cur.len() == n {
            let v = LengthVector::new(cur.clone());
            if kraft_sum(&v) == Rational::one() {
                out.push(v);
            }
            return;
        }
        let lo = cur.last().copied().unwrap_or(1);
        for l in lo..=max {
            cur.push(l);
            go(n, max, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n as u32 - 1, &mut Vec::new(), &mut out);
    out
}

#[test]
fn matches_brute_force_up_to_nine() {
    for n in 2..=9 {
        let mut fast = enumerate_default(n).unwrap();
        fast.sort();
        let slow = brute_force(n);
        assert_eq!(fast, slow, "n = {n}");
    }
}

#[test]
fn profile_counts() {
    // number of full binary tree leaf-depth profiles with n leaves
    let expected = [1, 1, 2, 3, 5, 9, 16, 28, 50, 89, 159, 285, 510];
    for (i, &count) in expected.iter().enumerate() {
        let n = i + 2;
        assert_eq!(enumerate_default(n).unwrap().len(), count, "n = {n}");
    }
}
