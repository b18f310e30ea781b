//! Layer-cake integration against a content: slice the function at its
//! distinct values and weight each slab by the content of its super-level
//! set. Contents are not additive, so this is genuinely different from a
//! weighted cell sum.
//!
//! Run with: cargo run --example choquet_integral

use capacitary::{
    average, choquet_integral, lp_norm, ContentHandle, GridFunction, GridSet, LatticeConfig,
};

fn main() {
    let config = LatticeConfig::new(1, -2).unwrap();
    let h = ContentHandle::power(config, 1.0).unwrap();
    let full = GridSet::full(config);

    // spike: 4 on [0, 1/4), zero elsewhere
    let spike = GridFunction::from_values(config, vec![4.0, 0.0, 0.0, 0.0]).unwrap();
    println!("∫ spike dH      = {}", choquet_integral(&spike, &h, &full));
    println!("avg over window = {}", average(&spike, &h, &config.root()));
    println!(
        "avg over [0,½)  = {}",
        average(&spike, &h, &capacitary::CubeId::new(-1, vec![0]))
    );
    println!("‖spike‖₂        = {}", lp_norm(&spike, &h, 2.0).unwrap());

    // a staircase: the integral is Σ (t_k − t_(k-1)) · H({f ≥ t_k})
    let stair = GridFunction::from_values(config, vec![1.0, 2.0, 1.0, 0.5]).unwrap();
    let total = choquet_integral(&stair, &h, &full);
    println!("∫ staircase dH  = {total}");
    // slabs: 0.5·H({≥0.5}=1) + 0.5·H({≥1}=3/4) + 1·H({≥2}=1/4)
    assert_eq!(total, 0.5 + 0.5 * 0.75 + 0.25);

    // restricting the region drops the outside cells entirely
    let right = GridSet::from_cells(config, &[2, 3]).unwrap();
    println!(
        "∫ staircase dH over [½,1) = {}",
        choquet_integral(&stair, &h, &right)
    );

    // +∞ values are harmless exactly on H-null sets; here nothing is null,
    // so an infinite value makes the integral infinite
    let blowup = GridFunction::from_values(config, vec![f64::INFINITY, 1.0, 1.0, 1.0]).unwrap();
    println!(
        "∫ blow-up dH    = {}",
        choquet_integral(&blowup, &h, &full)
    );
}
