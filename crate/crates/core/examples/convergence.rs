//! Length estimates for infinite sources from growing truncations.
//! Pass a source literal to try another source, e.g. `geom:1/3`.

use prefixcode::convergence::estimate_optimal_lengths;
use prefixcode::input::parse_source;

fn main() {
    let literal = std::env::args().nth(1).unwrap_or_else(|| "geom:1/4".into());
    let src = parse_source(&literal).unwrap();
    let spec = src.as_spec().unwrap();
    let report = estimate_optimal_lengths(spec, 8, 256, 32).unwrap();
    println!("{literal}");
    for s in &report.per_symbol {
        println!(
            "  l_{} = {:?} since n = {:?}  {:?} {:?}",
            s.symbol, s.estimate, s.stable_since, s.status, s.certificate
        );
    }
    let csv = report.sequence.to_csv(4);
    println!("{}", csv.lines().take(6).collect::<Vec<_>>().join("\n"));
}
