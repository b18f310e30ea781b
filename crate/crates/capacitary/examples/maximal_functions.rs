//! Capacitary maximal operators: dyadic (averages over ancestor cubes),
//! ball (centered and uncentered), and the sharp operator measuring local
//! oscillation, plus the bounded-mean-oscillation norm built on it.
//!
//! Run with: cargo run --example maximal_functions

use capacitary::{
    ball_maximal, bmo_norm, dyadic_maximal, sharp_maximal, ContentHandle, GridFunction,
    LatticeConfig,
};

fn main() {
    let config = LatticeConfig::new(1, -2).unwrap();
    let h = ContentHandle::power(config, 1.0).unwrap();
    let spike = GridFunction::from_values(config, vec![4.0, 0.0, 0.0, 0.0]).unwrap();

    let dyadic = dyadic_maximal(&spike, &h);
    println!("M^d spike = {:?}", dyadic.values.values());
    for (cell, witness) in dyadic.witnesses.iter().enumerate() {
        println!("  cell {cell}: attained on {witness:?}");
    }

    let centered = ball_maximal(&spike, &h, true);
    let uncentered = ball_maximal(&spike, &h, false);
    println!("M ball (centered)   = {:?}", centered.values.values());
    println!("M ball (uncentered) = {:?}", uncentered.values.values());
    for cell in 0..config.cell_count() {
        assert!(centered.values.value(cell) <= uncentered.values.value(cell));
    }

    // sharp operator: best-constant oscillation over ancestor cubes
    let indicator = GridFunction::from_values(config, vec![1.0, 0.0, 0.0, 0.0]).unwrap();
    let sharp = sharp_maximal(&indicator, &h, &config.root());
    println!("M# indicator = {:?}", sharp.values.values());
    println!(
        "bmo norm     = {}",
        bmo_norm(&indicator, &h, &config.root())
    );
}
