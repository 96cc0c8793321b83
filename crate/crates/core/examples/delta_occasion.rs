//! Where the most likely symbol first gets merged, and the codeword length
//! it implies.

use prefixcode::delta::{delta_occasion, l1_via_delta, lemma1_bounds, DeltaResult};
use prefixcode::{huffman_lengths, validate, FiniteDistribution, Rational};

fn show(label: &str, d: &FiniteDistribution) {
    let occ = delta_occasion(d);
    let l1 = huffman_lengths(d).get(1);
    match &occ {
        DeltaResult::Trivial => println!("{label}: p_1 >= 1/2, l_1 = {l1}"),
        _ => {
            let delta = occ.delta().unwrap();
            let state = occ.state().unwrap();
            let p1 = d.p1();
            let margin = Rational::new(1, 1000);
            let b = lemma1_bounds(&p1, d.len(), Some(&(&p1 - &margin)), Some(&(&p1 + &margin)));
            println!(
                "{label}: delta = {delta}, state {:?}, l_1 = {} (huffman {l1}), bracket ({:?}, {:?})",
                state.probs.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
                l1_via_delta(d).unwrap(),
                b.lower.map(|x| x.to_string()),
                b.upper.map(|x| x.to_string()),
            );
        }
    }
}

fn main() {
    let r = Rational::new;
    show("uniform(4)", &FiniteDistribution::uniform(4).unwrap());
    show("uniform(6)", &FiniteDistribution::uniform(6).unwrap());
    show(
        "dyadic",
        &validate(&[r(1, 2), r(1, 4), r(1, 8), r(1, 8)]).unwrap(),
    );
    let mut skewed = vec![r(1, 4)];
    skewed.extend(std::iter::repeat_n(r(3, 40), 10));
    show("1/4 + ten of 3/40", &validate(&skewed).unwrap());
}
