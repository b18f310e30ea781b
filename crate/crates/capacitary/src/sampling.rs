//! Seeded generators for test batteries: random cell sets, non-overlapping
//! cube families, step functions, and the deterministic BMO-type function
//! used by the oscillation-decay battery. Everything is driven by ChaCha8
//! with explicit seeds so reports are reproducible bit for bit.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::grid::{GridFunction, GridSet};
use crate::lattice::{CubeId, LatticeConfig};

pub fn rng_for(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Independent cell membership with probability `density`.
pub fn random_set(config: LatticeConfig, rng: &mut impl Rng, density: f64) -> GridSet {
    let mut set = GridSet::empty(config);
    for cell in 0..config.cell_count() {
        if rng.random_bool(density.clamp(0.0, 1.0)) {
            set.insert(cell);
        }
    }
    set
}

/// Step function with values on a quarter-integer palette `{0, 1/4, …, max}`.
pub fn random_step_function(
    config: LatticeConfig,
    rng: &mut impl Rng,
    max_quarters: u32,
) -> GridFunction {
    let values = (0..config.cell_count())
        .map(|_| rng.random_range(0..=max_quarters) as f64 * 0.25)
        .collect();
    GridFunction::from_values(config, values).expect("palette values are finite")
}

/// Step function supported on `support`, zero elsewhere.
pub fn random_step_on(
    support: &GridSet,
    rng: &mut impl Rng,
    max_quarters: u32,
) -> GridFunction {
    let config = support.config();
    let values = (0..config.cell_count())
        .map(|cell| {
            if support.contains(cell) {
                rng.random_range(1..=max_quarters) as f64 * 0.25
            } else {
                0.0
            }
        })
        .collect();
    GridFunction::from_values(config, values).expect("palette values are finite")
}

/// Non-overlapping cube family sampled by a random descent: each visited cube
/// is either taken, dropped, or split. `split_prob` tunes the granularity.
pub fn random_antichain(
    config: LatticeConfig,
    rng: &mut impl Rng,
    split_prob: f64,
) -> Vec<CubeId> {
    let mut out = Vec::new();
    let mut stack = vec![config.root()];
    while let Some(cube) = stack.pop() {
        let can_split = cube.level > config.finest_level;
        if can_split && rng.random_bool(split_prob) {
            for child in config.children(&cube).expect("not finest") {
                stack.push(child);
            }
        } else if rng.random_bool(0.5) {
            out.push(cube);
        }
    }
    // stack order is arbitrary; normalize for deterministic downstream scans
    out.sort_by(|a, b| b.level.cmp(&a.level).then_with(|| a.index.cmp(&b.index)));
    out
}

/// Indicator of a union of random cubes, together with the cubes.
pub fn random_cube_union(
    config: LatticeConfig,
    rng: &mut impl Rng,
    split_prob: f64,
) -> (GridFunction, Vec<CubeId>) {
    let cubes = random_antichain(config, rng, split_prob);
    let mut union = GridSet::empty(config);
    for cube in &cubes {
        union = union.union(&GridSet::cube(config, cube).expect("cube in window"));
    }
    (GridFunction::indicator(&union), cubes)
}

/// `f(cell) = (index bits) − bit_length(linear index)`: the number of leading
/// zero bits of the cell address. A discrete `log(1/x)`-type function with
/// unbounded-looking oscillation, the standard positive example of bounded
/// mean oscillation.
pub fn leading_zeros_function(config: LatticeConfig) -> GridFunction {
    let bits = (64 - (config.cell_count() - 1).leading_zeros().min(63)) as f64;
    let values = (0..config.cell_count())
        .map(|cell| {
            let bitlen = 64 - cell.leading_zeros();
            (bits - bitlen as f64).max(0.0)
        })
        .collect();
    GridFunction::from_values(config, values).expect("finite by construction")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators_are_seed_deterministic() {
        let c = LatticeConfig::new(1, -5).unwrap();
        let a = random_set(c, &mut rng_for(7), 0.3);
        let b = random_set(c, &mut rng_for(7), 0.3);
        assert_eq!(a.cells(), b.cells());
        let fa = random_step_function(c, &mut rng_for(9), 8);
        let fb = random_step_function(c, &mut rng_for(9), 8);
        assert_eq!(fa.values(), fb.values());
        let fam_a = random_antichain(c, &mut rng_for(11), 0.6);
        let fam_b = random_antichain(c, &mut rng_for(11), 0.6);
        assert_eq!(fam_a, fam_b);
    }

    #[test]
    fn antichains_do_not_overlap() {
        let c = LatticeConfig::new(2, -3).unwrap();
        let mut rng = rng_for(3);
        for _ in 0..50 {
            let fam = random_antichain(c, &mut rng, 0.7);
            for (i, a) in fam.iter().enumerate() {
                for b in fam.iter().skip(i + 1) {
                    assert!(!a.overlaps(b), "{a} overlaps {b}");
                }
            }
        }
    }

    #[test]
    fn step_on_support_vanishes_outside() {
        let c = LatticeConfig::new(1, -4).unwrap();
        let support = GridSet::from_cells(c, &[1, 5, 9]).unwrap();
        let f = random_step_on(&support, &mut rng_for(2), 6);
        for cell in 0..c.cell_count() {
            if support.contains(cell) {
                assert!(f.value(cell) > 0.0);
            } else {
                assert_eq!(f.value(cell), 0.0);
            }
        }
    }

    #[test]
    fn leading_zeros_values() {
        let c = LatticeConfig::new(1, -10).unwrap();
        let f = leading_zeros_function(c);
        assert_eq!(f.value(0), 10.0);
        assert_eq!(f.value(1), 9.0);
        assert_eq!(f.value(2), 8.0);
        assert_eq!(f.value(3), 8.0);
        assert_eq!(f.value(512), 0.0);
        assert_eq!(f.value(1023), 0.0);
    }
}
