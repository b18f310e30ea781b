//! Maximal-operator inequality experiments: the distribution bound
//! t·H({Mf > t}) ≤ 2·∫|f| dH for the dyadic operator, the L^p bound against
//! the generous interpolation cap, and the measured comparison between the
//! ball and dyadic operators.
//!
//! Run with: cargo run --example weak_strong_type

use capacitary::{
    maximal_comparison_experiment, standard_battery, strong_type_experiment,
    weak_type_experiment, ContentHandle, LatticeConfig,
};

fn main() {
    let config = LatticeConfig::new(1, -6).unwrap();
    let h = ContentHandle::power(config, 1.0).unwrap();
    let battery = standard_battery(config, 40, 0);

    let weak = weak_type_experiment(&battery, &h);
    println!("weak-type: {}", weak.verdict);
    let max = weak
        .measurements
        .iter()
        .find(|m| m.label == "max dyadic ratio")
        .unwrap();
    println!(
        "  max t·H({{M>t}})/∫|f| = {} (bound {})",
        max.value,
        max.bound.unwrap()
    );

    let strong = strong_type_experiment(&battery, &h, 2.0).unwrap();
    println!("strong-type p=2: {}", strong.verdict);
    println!(
        "  max ∫(Mf)²/∫f² = {} (cap {})",
        strong
            .measurements
            .iter()
            .find(|m| m.label == "max ratio")
            .unwrap()
            .value,
        strong.constants["strong_type_cap"]
    );

    // ball vs dyadic: measured shrink factor c and comparison constant C
    let small = LatticeConfig::new(1, -4).unwrap();
    let h_small = ContentHandle::power(small, 1.0).unwrap();
    let comparison = maximal_comparison_experiment(
        &standard_battery(small, 4, 0),
        &h_small,
        &[1.0, 0.5, 0.25, 0.125],
    );
    println!("comparison: {}", comparison.verdict);
    println!(
        "  H({{M̃>t}}) ≤ C·H({{M^d>ct}}) with c = {}, C = {}",
        comparison.constants["comparison_shrink"], comparison.constants["comparison_factor"]
    );
}
