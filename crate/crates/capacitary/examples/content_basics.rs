//! Cover contents on a dyadic window: price a set by the cheapest antichain
//! of dyadic cubes covering it, under a few different cube gauges.
//!
//! Run with: cargo run --example content_basics

use capacitary::{check_monotone, ContentHandle, GridSet, LatticeConfig};

fn main() {
    // the unit interval split into quarters
    let config = LatticeConfig::new(1, -2).unwrap();

    // E = [0, 1/4) ∪ [3/4, 1): the two outer cells
    let e = GridSet::from_cells(config, &[0, 3]).unwrap();

    // side-length gauge λ(Q) = side(Q): covering by the two cells is cheapest
    let linear = ContentHandle::power(config, 1.0).unwrap();
    let (value, cover) = linear.optimal_cover(&e);
    println!("content under side^1   = {value}");
    println!("  optimal cover: {cover:?}");

    // a very flat gauge λ(Q) = side(Q)^(1/4): one big cube is cheaper than
    // two small ones, so the whole window is the best cover
    let flat = ContentHandle::power(config, 0.25).unwrap();
    let (value, cover) = flat.optimal_cover(&e);
    println!("content under side^1/4 = {value}");
    println!("  optimal cover: {cover:?}");

    // logarithmic gauge (side ↦ (log(1/side)+log 2)^(-1)), the borderline
    // shape for capacity-style estimates
    let log = ContentHandle::log(config, 1.0).unwrap();
    println!("content under log^-1   = {}", log.content(&e));

    // contents are monotone: spot-check on random nested pairs
    let mut rng = capacitary::sampling::rng_for(1);
    let report = check_monotone(&linear, 200, &mut rng);
    println!(
        "monotonicity check: {} trials, violations: {}",
        report.trials,
        report.violations.len()
    );
    assert!(report.pass());
}
