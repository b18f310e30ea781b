//! Shared helpers for the integration suites: an exhaustive reference
//! implementation of the cover content (explicit enumeration of every
//! antichain cover) and deterministic family generators.

use capacitary::{sampling, CubeGauge, CubeId, GridSet, LatticeConfig};

/// Cost of every antichain cover of `set ∩ subtree(cube)`, one entry per
/// cover: either the cube itself, or any combination of covers of its
/// children. Subtrees missing the set contribute a single zero-cost option.
fn cover_costs(
    config: LatticeConfig,
    cube: &CubeId,
    set: &GridSet,
    gauge: &CubeGauge,
) -> Vec<f64> {
    if config
        .cube_cells(cube)
        .iter()
        .all(|cell| !set.contains(*cell))
    {
        return vec![0.0];
    }
    let own = gauge.eval(cube);
    if cube.level == config.finest_level {
        return vec![own];
    }
    let mut combos = vec![0.0f64];
    for child in config.children(cube).expect("not the finest level") {
        let child_costs = cover_costs(config, &child, set, gauge);
        let mut next = Vec::with_capacity(combos.len() * child_costs.len());
        for base in &combos {
            for cost in &child_costs {
                next.push(base + cost);
            }
        }
        combos = next;
    }
    combos.push(own);
    combos
}

/// Exhaustive minimum over all antichain dyadic covers of `set`.
pub fn exhaustive_content(set: &GridSet, gauge: &CubeGauge) -> f64 {
    let config = set.config();
    cover_costs(config, &config.root(), set, gauge)
        .into_iter()
        .fold(f64::INFINITY, f64::min)
}

/// Deterministic batch of random non-overlapping cube families.
pub fn random_families(config: LatticeConfig, count: u64, seed: u64) -> Vec<Vec<CubeId>> {
    let mut rng = sampling::rng_for(seed);
    let mut out = Vec::new();
    while (out.len() as u64) < count {
        let family = sampling::random_antichain(config, &mut rng, 0.6);
        if !family.is_empty() {
            out.push(family);
        }
    }
    out
}
