//! Seeded randomized checks of the finite-source properties. Set
//! PREFIXCODE_SEED to reproduce a run.

use prefixcode::battery::{run_battery, seed_from_env};

fn main() {
    let seed = seed_from_env();
    println!("seed {seed}");
    for t in run_battery(seed, 500, 12) {
        println!(
            "{:<45} {:>4} instances {:>2} failures",
            t.name, t.instances, t.failures
        );
    }
}
