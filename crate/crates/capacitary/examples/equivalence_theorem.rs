//! Two-sided comparison between a monotone set function and the content it
//! induces on the lattice. Contents reproduce themselves exactly (every
//! ratio is 1). A non-subadditive capacity — Lebesgue measure to the power
//! 1/2 — escapes the comparison: evenly spaced cells are cheap for the
//! capacity but expensive for every dyadic cover, and the same family
//! violates the budgeted integral inequality.
//!
//! Run with: cargo run --example equivalence_theorem

use capacitary::{
    doubling_constants, equivalence_check, packing_condition_test, ContentHandle, Density,
    LatticeConfig, MeasurePowerCapacity, TheoremConstants, PACKING_BUDGET,
};

fn main() {
    // a genuine content: every ratio is exactly 1 and the budget test passes
    let config = LatticeConfig::new(1, -8).unwrap();
    let content = ContentHandle::power(config, 0.5).unwrap();
    let report = equivalence_check(&content, 50, 11).unwrap();
    println!(
        "content side^1/2: pass={} ratios in [{:?}, {:?}]",
        report.pass, report.min_ratio, report.max_ratio
    );
    let packing = packing_condition_test(&content, 50, 11, PACKING_BUDGET).unwrap();
    println!(
        "content budget test: pass={} over {} families (max ratio {:.3})",
        packing.pass, packing.families_tested, packing.max_ratio
    );

    // the square-root measure capacity: fine windows expose the failure
    let fine = LatticeConfig::new(1, -12).unwrap();
    let capacity = MeasurePowerCapacity::new(fine, 0.5, Density::Uniform).unwrap();
    let report = equivalence_check(&capacity, 20, 11).unwrap();
    println!(
        "measure^1/2: pass={} min ratio {:?}",
        report.pass, report.min_ratio
    );
    let witness = report
        .samples
        .iter()
        .find(|s| !s.pass)
        .expect("equivalence fails");
    println!(
        "  first failing sample: {} (capacity {}, induced {})",
        witness.label, witness.capacity, witness.induced
    );

    let packing = packing_condition_test(&capacity, 5, 11, PACKING_BUDGET).unwrap();
    let violation = packing.violations.first().expect("budget test fails");
    println!(
        "  packing violation: {} cubes, lhs {} > {PACKING_BUDGET}·rhs = {}",
        violation.family.len(),
        violation.lhs,
        PACKING_BUDGET * violation.rhs
    );

    // the constants every quantitative bound is assembled from
    let doubling = doubling_constants(&content, false);
    let constants = TheoremConstants::from_doubling(doubling.cube_factor, None);
    println!("constants: {}", serde_json::to_string_pretty(&constants).unwrap());
}
