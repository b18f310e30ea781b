//! Greedy budget-respecting selection: scan a non-overlapping cube family
//! coarse-to-fine and keep a cube only if every ancestor's accumulated gauge
//! weight stays within twice the ancestor's own weight. Dropped cubes record
//! the ancestor that absorbed them.
//!
//! Run with: cargo run --example packing_selection

use capacitary::{packing_select, CapacitySpec, CubeId, LatticeConfig, PACKING_BUDGET};

fn main() {
    // 2D window, flat gauge side^(1/2): all four children of the root
    // together weigh 4·(1/2)^(1/2) ≈ 2.83, more than twice the root's 1.0
    let config = LatticeConfig::new(2, -2).unwrap();
    let gauge = CapacitySpec::Power { beta: 0.5 }
        .build_cube_gauge(config)
        .unwrap();
    let family: Vec<CubeId> = [(0u32, 0u32), (1, 0), (0, 1), (1, 1)]
        .iter()
        .map(|&(x, y)| CubeId::new(-1, vec![x, y]))
        .collect();

    let selection = packing_select(config, &family, &gauge).unwrap();
    println!("budget A₀ = {PACKING_BUDGET}");
    println!("selected (in scan order):");
    for cube in &selection.selected {
        println!("  {cube}");
    }
    println!("dropped:");
    for drop in &selection.dropped {
        println!("  {} absorbed by {}", drop.cube, drop.absorbed_by);
    }
    println!("witness ancestors: {:?}", selection.ancestors);

    // the certificate re-checks the budget and the ancestor properties
    let certificate = selection.certify(config, &gauge);
    println!("certificate: {certificate:?}");
    assert!(certificate.pass());
}
