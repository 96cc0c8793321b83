//! Anti-uniform sources: the finite suffix test, the infinite tail test,
//! and the alpha criterion.

use prefixcode::anti_uniform::{
    check_finite, check_infinite_tail, theorem6_applies, verify_theorem6_at_truncation,
};
use prefixcode::{truncate, AlphaSequence, AlphaVector, FiniteDistribution, Rational, SourceSpec};

fn main() {
    let r = Rational::new;
    let u5 = FiniteDistribution::uniform(5).unwrap();
    println!("uniform(5): {:?}", check_finite(&u5).first_violation);

    let specs = [
        ("geom:1/2", SourceSpec::geometric(r(1, 2)).unwrap()),
        ("geom:1/3", SourceSpec::geometric(r(1, 3)).unwrap()),
        ("geom:1/5", SourceSpec::geometric(r(1, 5)).unwrap()),
        (
            "alpha 2/5,3/5 cyclic",
            SourceSpec::alpha(AlphaSequence::cyclic(vec![r(2, 5), r(3, 5)]).unwrap()),
        ),
    ];
    for (name, spec) in &specs {
        let tail = check_infinite_tail(spec, 40);
        let t12 = check_finite(&truncate(spec, 12).unwrap()).holds;
        println!(
            "{name:<22} tail test {:<5} criterion {:<5} truncation(12) {t12}",
            tail.holds,
            theorem6_applies(spec)
        );
    }
    let v = AlphaVector::new(vec![r(1, 2), r(2, 5), r(3, 5), r(2, 5)]).unwrap();
    let ok = (4..=20).all(|n| verify_theorem6_at_truncation(&v, n).unwrap());
    println!("alpha [1/2, 2/5, 3/5, 2/5...] truncations 4..=20 anti-uniform: {ok}");
}
