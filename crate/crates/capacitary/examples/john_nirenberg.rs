//! Exponential decay of oscillation tails. The leading-zero-bits function
//! f(cell i) = (bits of the window) − bitlength(i) is the discrete analogue
//! of log(1/x): unbounded, but with bounded mean oscillation. On every
//! subcube the content of {|f − c| > t} decays like exp(−c·t/‖f‖) with
//! constants assembled from the measured doubling factor.
//!
//! Run with: cargo run --release --example john_nirenberg

use capacitary::sampling::leading_zeros_function;
use capacitary::{bmo_norm, jn_experiment, ContentHandle, LatticeConfig};

fn main() {
    let config = LatticeConfig::new(1, -10).unwrap();
    let h = ContentHandle::power(config, 1.0).unwrap();
    let f = leading_zeros_function(config);

    let bmo = bmo_norm(&f, &h, &config.root());
    println!("f ranges over 0..=10, ‖f‖_bmo = {bmo}");

    let report = jn_experiment(&f, &h, &config.root(), 4, 100, 7).unwrap();
    println!("experiment: {} → {}", report.experiment, report.verdict);
    println!("constants:");
    for (name, value) in &report.constants {
        println!("  {name} = {value}");
    }

    // tightest tail: smallest bound/tail gap over all sampled (Q', t)
    let tightest = report
        .measurements
        .iter()
        .filter(|m| m.value > 0.0 && m.bound.is_some())
        .min_by(|a, b| {
            let ga = a.bound.unwrap() / a.value;
            let gb = b.bound.unwrap() / b.value;
            ga.total_cmp(&gb)
        });
    if let Some(m) = tightest {
        println!(
            "tightest sample: {} tail {} vs bound {}",
            m.label,
            m.value,
            m.bound.unwrap()
        );
    }
    assert!(report.pass());
}
