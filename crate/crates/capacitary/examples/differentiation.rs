//! Averages along the dyadic tower converge to the function value: for a
//! Lipschitz function, the average of |f − f(x)| over the parent of x's cell
//! halves with every extra level of resolution.
//!
//! Run with: cargo run --example differentiation

use capacitary::{differentiation_experiment, CapacitySpec};

fn main() {
    let spec = CapacitySpec::Power { beta: 1.0 };
    let levels = [-3, -4, -5, -6, -7, -8];
    // f(x) = x on [0,1), Lipschitz constant 1
    let report = differentiation_experiment(&spec, 1, &levels, &|x| x[0], 1.0).unwrap();

    println!("experiment: {} → {}", report.experiment, report.verdict);
    println!("tower profile (rows: window level, columns: ancestor depth):");
    for &level in &levels {
        let row: Vec<String> = report
            .measurements
            .iter()
            .filter(|m| m.label.starts_with(&format!("L={level} depth=")))
            .map(|m| format!("{:.5}", m.value))
            .collect();
        println!("  L={level:>3}: {}", row.join("  "));
    }
    for m in report.measurements.iter().filter(|m| m.bound.is_some()) {
        println!("{}: {} ≤ {}", m.label, m.value, m.bound.unwrap());
    }
    assert!(report.pass());
}
