//! Stopping-time decomposition: descend the dyadic tree and emit the first
//! cubes whose average of |f| exceeds the height Λ. Parents of emitted cubes
//! stay at or below Λ, emitted averages stay within the doubling factor M₀
//! of Λ, and outside the emitted cubes |f| > Λ only on a content-null set.
//!
//! Run with: cargo run --example cz_decomposition

use capacitary::{
    cz_decompose, maximal_dyadic_partition, ContentHandle, GridFunction, GridSet, LatticeConfig,
};

fn main() {
    let config = LatticeConfig::new(1, -2).unwrap();
    let h = ContentHandle::power(config, 1.0).unwrap();

    // spike with root average exactly 1: stopping at Λ = 1 emits [0, 1/2)
    let spike = GridFunction::from_values(config, vec![4.0, 0.0, 0.0, 0.0]).unwrap();
    let dec = cz_decompose(&spike, &h, &config.root(), 1.0).unwrap();
    println!("stopping cubes at Λ=1:");
    for (i, cube) in dec.cubes.iter().enumerate() {
        println!(
            "  {cube}: avg {} (parent avg {})",
            dec.cube_averages[i], dec.parent_averages[i]
        );
    }
    println!("overshoot factor M₀ = {}", dec.upper_factor);
    println!(
        "residual violations: {:?} (content {})",
        dec.residual_violations, dec.residual_content
    );
    assert_eq!(dec.residual_content, 0.0);

    // a height below the root average is rejected up front
    let err = cz_decompose(&spike, &h, &config.root(), 0.5).unwrap_err();
    println!("Λ=0.5 → {err}");

    // companion tool: cover a region by maximal dyadic cubes
    let region = GridSet::from_cells(config, &[0, 1, 2]).unwrap();
    let cover = maximal_dyadic_partition(&region);
    println!("maximal dyadic partition of [0,¾): {cover:?}");
}
