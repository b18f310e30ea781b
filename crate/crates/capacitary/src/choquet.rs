//! Dyadic contents and Choquet integration. A content prices a set as the
//! cheapest antichain of lattice cubes covering it; the Choquet integral of a
//! step function is the exact layer-cake sum over its distinct positive
//! values. Conventions: `0·∞ = 0`, and an average over a null cube is 0
//! regardless of the numerator.

use crate::error::{Error, Result};
use crate::gauge::{CapacitySpec, CubeGauge, Gauge, MeasurePowerCapacity, SetFunction};
use crate::grid::{GridFunction, GridSet};
use crate::lattice::{CubeId, CubeIndexer, LatticeConfig};

/// A dyadic content `H^λ`: the outer cover infimum induced by a monotone cube
/// gauge, restricted to covers inside the window. Restriction is lossless
/// because any cover cube meeting the window root can be replaced by the root
/// at no extra cost (gauges are monotone under inclusion).
#[derive(Debug, Clone)]
pub struct ContentHandle {
    config: LatticeConfig,
    gauge: CubeGauge,
    /// For side gauges: λ per depth (`depth = -level`), so the hot DP path is
    /// allocation-free.
    level_values: Option<Vec<f64>>,
}

impl ContentHandle {
    pub fn new(config: LatticeConfig, gauge: CubeGauge) -> Result<Self> {
        config.validate()?;
        if let CubeGauge::MeasurePower(mp) = &gauge {
            if mp.config() != config {
                return Err(Error::ConfigMismatch);
            }
        }
        let level_values = match &gauge {
            CubeGauge::Shape(g) => Some(
                (0..=(-config.finest_level))
                    .map(|depth| g.eval(-depth))
                    .collect(),
            ),
            _ => None,
        };
        Ok(ContentHandle {
            config,
            gauge,
            level_values,
        })
    }

    /// Content with gauge `λ(Q) = side(Q)^β`.
    pub fn power(config: LatticeConfig, beta: f64) -> Result<Self> {
        Self::new(config, CubeGauge::shape(config, Gauge::power(beta)?)?)
    }

    /// Content with the logarithmic gauge.
    pub fn log(config: LatticeConfig, beta: f64) -> Result<Self> {
        Self::new(config, CubeGauge::shape(config, Gauge::log(beta)?)?)
    }

    pub fn gauge(&self) -> &CubeGauge {
        &self.gauge
    }

    /// Gauge value of a cube.
    pub fn lambda(&self, cube: &CubeId) -> f64 {
        self.gauge.eval(cube)
    }

    fn lambda_at(&self, level: i32, coords: &[u32]) -> f64 {
        match &self.level_values {
            Some(table) => table[(-level) as usize],
            None => self.gauge.eval(&CubeId::new(level, coords.to_vec())),
        }
    }

    fn cell_of_coords(&self, coords: &[u32]) -> u64 {
        let w = self.config.width();
        let mut lin = 0u64;
        for d in (0..self.config.dimension).rev() {
            lin = lin * w + coords[d] as u64;
        }
        lin
    }

    /// Cover DP. Returns `(cost, occupied)`; an empty subtree costs 0, a leaf
    /// costs its gauge value, and an inner cube takes the cheaper of its own
    /// gauge value and the left-fold of its children (ties prefer the coarse
    /// cover, which only affects witnesses).
    fn cost_rec(&self, level: i32, coords: &mut [u32], set: &GridSet) -> (f64, bool) {
        if level <= self.config.finest_level {
            let cell = self.cell_of_coords(coords);
            return if set.contains(cell) {
                (self.lambda_at(level, coords), true)
            } else {
                (0.0, false)
            };
        }
        let n = self.config.dimension;
        let mut sum = 0.0;
        let mut occupied = false;
        for offset in 0u32..(1 << n) {
            for (d, c) in coords.iter_mut().enumerate() {
                *c = (*c << 1) | ((offset >> d) & 1);
            }
            let (cost, occ) = self.cost_rec(level - 1, coords, set);
            for c in coords.iter_mut() {
                *c >>= 1;
            }
            sum += cost;
            occupied |= occ;
        }
        if !occupied {
            return (0.0, false);
        }
        let own = self.lambda_at(level, coords);
        if own <= sum {
            (own, true)
        } else {
            (sum, true)
        }
    }

    /// `H^λ(set)` over the whole window.
    pub fn content(&self, set: &GridSet) -> f64 {
        self.content_within(&self.config.root(), set)
    }

    /// `H^λ(set)` for a set inside `cube`; equal to `content(set)` in that
    /// case, computed on the subtree only.
    pub fn content_within(&self, cube: &CubeId, set: &GridSet) -> f64 {
        assert_eq!(self.config, set.config(), "content operand config mismatch");
        let mut coords: Vec<u32> = cube.index.clone();
        self.cost_rec(cube.level, &mut coords, set).0
    }

    fn cover_rec(&self, cube: &CubeId, set: &GridSet, out: &mut Vec<CubeId>) -> f64 {
        let mut coords = cube.index.clone();
        let (cost, occupied) = self.cost_rec(cube.level, &mut coords, set);
        if !occupied {
            return 0.0;
        }
        if cube.level <= self.config.finest_level {
            out.push(cube.clone());
            return cost;
        }
        let own = self.lambda(cube);
        let mut child_sum = 0.0;
        for ch in self.config.children(cube).expect("not finest") {
            let mut cc = ch.index.clone();
            child_sum += self.cost_rec(ch.level, &mut cc, set).0;
        }
        if own <= child_sum {
            out.push(cube.clone());
            own
        } else {
            for ch in self.config.children(cube).expect("not finest") {
                self.cover_rec(&ch, set, out);
            }
            cost
        }
    }

    /// Content together with an optimal antichain cover (coarse-preferring on
    /// ties). The recorded cover attains the reported value exactly.
    pub fn optimal_cover(&self, set: &GridSet) -> (f64, Vec<CubeId>) {
        assert_eq!(self.config, set.config(), "content operand config mismatch");
        let mut out = Vec::new();
        let cost = self.cover_rec(&self.config.root(), set, &mut out);
        (cost, out)
    }

    /// Content of every cube's cell set in one bottom-up pass, slot-indexed
    /// by `CubeIndexer`. Each value is bitwise equal to
    /// `content(cells(cube))`.
    pub fn cube_contents(&self) -> (CubeIndexer, Vec<f64>) {
        let indexer = CubeIndexer::new(self.config);
        let mut values = vec![0.0f64; indexer.len()];
        for level in self.config.finest_level..=0 {
            let per_level = self.config.cubes_at_level(level);
            for lin in 0..per_level {
                let cube = cube_from_level_linear(self.config, level, lin);
                let slot = indexer.slot(&cube);
                if level == self.config.finest_level {
                    values[slot] = self.lambda(&cube);
                } else {
                    let mut sum = 0.0;
                    for ch in self.config.children(&cube).expect("not finest") {
                        sum += values[indexer.slot(&ch)];
                    }
                    let own = self.lambda(&cube);
                    values[slot] = if own <= sum { own } else { sum };
                }
            }
        }
        (indexer, values)
    }
}

fn cube_from_level_linear(config: LatticeConfig, level: i32, lin: u64) -> CubeId {
    let per_dim = 1u64 << (-level) as u32;
    let mut rest = lin;
    let index = (0..config.dimension)
        .map(|_| {
            let v = (rest % per_dim) as u32;
            rest /= per_dim;
            v
        })
        .collect();
    CubeId::new(level, index)
}

impl SetFunction for ContentHandle {
    fn config(&self) -> LatticeConfig {
        self.config
    }

    fn eval(&self, set: &GridSet) -> f64 {
        self.content(set)
    }

    fn eval_within(&self, cube: &CubeId, set: &GridSet) -> f64 {
        self.content_within(cube, set)
    }

    fn label(&self) -> String {
        format!("content[{}]", self.gauge.label())
    }
}

/// Builds the evaluable handle a `CapacitySpec` denotes: gauge kinds become
/// contents; `measure_power` stays the raw capacity (which is not a content).
pub fn handle_from_spec(
    spec: &CapacitySpec,
    config: LatticeConfig,
) -> Result<Box<dyn SetFunction>> {
    match spec {
        CapacitySpec::MeasurePower { alpha, density } => Ok(Box::new(MeasurePowerCapacity::new(
            config,
            *alpha,
            density.build()?,
        )?)),
        other => Ok(Box::new(ContentHandle::new(
            config,
            other.build_cube_gauge(config)?,
        )?)),
    }
}

/// Layer-cake Choquet integral of `f` over `region`:
/// `Σ_k (t_k - t_(k-1)) · H({f ≥ t_k} ∩ region)` over the distinct positive
/// values of `f`. Negative values contribute nothing; `+∞` values are legal
/// only on `H`-null sets, otherwise the integral is `+∞`.
pub fn choquet_integral(f: &GridFunction, h: &dyn SetFunction, region: &GridSet) -> f64 {
    integral_impl(f, h, region, None)
}

/// Same integral for a region known to sit inside `cube`; lets the handle
/// restrict evaluation to the subtree.
pub fn choquet_integral_within(
    f: &GridFunction,
    h: &dyn SetFunction,
    region: &GridSet,
    cube: &CubeId,
) -> f64 {
    integral_impl(f, h, region, Some(cube))
}

fn integral_impl(
    f: &GridFunction,
    h: &dyn SetFunction,
    region: &GridSet,
    within: Option<&CubeId>,
) -> f64 {
    assert_eq!(f.config(), region.config(), "integral operand mismatch");
    assert_eq!(f.config(), h.config(), "integral handle mismatch");
    let eval = |set: &GridSet| match within {
        Some(cube) => h.eval_within(cube, set),
        None => h.eval(set),
    };
    // infinite part first: it either vanishes or dominates
    let mut infinite = GridSet::empty(f.config());
    for cell in region.iter() {
        if f.value(cell) == f64::INFINITY {
            infinite.insert(cell);
        }
    }
    if !infinite.is_empty() && eval(&infinite) > 0.0 {
        return f64::INFINITY;
    }
    let values = f.distinct_positive_values(region);
    let mut total = 0.0;
    let mut prev = 0.0;
    for t in values {
        let weight = t - prev;
        prev = t;
        if weight == 0.0 {
            continue;
        }
        let level_set = f.super_level_set(t, region);
        let mass = eval(&level_set);
        if mass == f64::INFINITY {
            return f64::INFINITY;
        }
        total += weight * mass;
    }
    total
}

/// `(1/H(Q')) ∫_{Q'} f dH`, with value 0 whenever `H(Q') = 0` (regardless of
/// the numerator) and 0 when `H(Q') = +∞`.
pub fn average(f: &GridFunction, h: &dyn SetFunction, cube: &CubeId) -> f64 {
    let region = GridSet::cube(f.config(), cube).expect("cube in window");
    let denom = h.eval_within(cube, &region);
    if denom == 0.0 || denom == f64::INFINITY {
        return 0.0;
    }
    choquet_integral_within(f, h, &region, cube) / denom
}

/// Average of `f` over an arbitrary region, with the same 0-on-null (and
/// 0-on-infinite-denominator) convention as `average`.
pub fn average_over_set(f: &GridFunction, h: &dyn SetFunction, region: &GridSet) -> f64 {
    let denom = h.eval(region);
    if denom == 0.0 || denom == f64::INFINITY {
        return 0.0;
    }
    choquet_integral(f, h, region) / denom
}

/// `(∫ |f|^p dH)^(1/p)` over the whole window; requires finite `p ≥ 1`.
pub fn lp_norm(f: &GridFunction, h: &dyn SetFunction, p: f64) -> Result<f64> {
    if !p.is_finite() || p < 1.0 {
        return Err(Error::InvalidExponent(format!(
            "lp_norm needs finite p ≥ 1, got {p}"
        )));
    }
    let powered = f.map(|v| v.abs().powf(p)).expect("|f|^p has no NaN");
    let region = GridSet::full(f.config());
    let total = choquet_integral(&powered, h, &region);
    Ok(total.powf(1.0 / p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gauge::Density;

    fn cfg(n: usize, l: i32) -> LatticeConfig {
        LatticeConfig::new(n, l).unwrap()
    }

    /// f = 4·1_[0,1/4) on the 4-cell window.
    fn spike() -> (LatticeConfig, GridFunction, ContentHandle) {
        let c = cfg(1, -2);
        let f = GridFunction::from_values(c, vec![4.0, 0.0, 0.0, 0.0]).unwrap();
        let h = ContentHandle::power(c, 1.0).unwrap();
        (c, f, h)
    }

    #[test]
    fn content_of_two_corner_cells_linear_gauge() {
        let c = cfg(1, -2);
        let e = GridSet::from_cells(c, &[0, 3]).unwrap();
        let h = ContentHandle::power(c, 1.0).unwrap();
        assert_eq!(h.content(&e), 0.5);
        let (cost, cover) = h.optimal_cover(&e);
        assert_eq!(cost, 0.5);
        assert_eq!(
            cover,
            vec![CubeId::new(-2, vec![0]), CubeId::new(-2, vec![3])]
        );
    }

    #[test]
    fn content_of_two_corner_cells_quarter_power() {
        let c = cfg(1, -2);
        let e = GridSet::from_cells(c, &[0, 3]).unwrap();
        let h = ContentHandle::power(c, 0.25).unwrap();
        assert_eq!(h.content(&e), 1.0);
        let (cost, cover) = h.optimal_cover(&e);
        assert_eq!(cost, 1.0);
        assert_eq!(cover, vec![c.root()]);
    }

    #[test]
    fn content_of_empty_set() {
        let c = cfg(1, -2);
        let h = ContentHandle::power(c, 0.5).unwrap();
        assert_eq!(h.content(&GridSet::empty(c)), 0.0);
        let (cost, cover) = h.optimal_cover(&GridSet::empty(c));
        assert_eq!(cost, 0.0);
        assert!(cover.is_empty());
    }

    #[test]
    fn cover_attains_content() {
        let c = cfg(2, -3);
        let h = ContentHandle::power(c, 1.3).unwrap();
        let e = GridSet::from_cells(c, &[0, 1, 8, 9, 37, 52, 63]).unwrap();
        let (cost, cover) = h.optimal_cover(&e);
        assert_eq!(cost, h.content(&e));
        // cover is an antichain whose gauge values sum to the cost
        let sum: f64 = cover.iter().map(|q| h.lambda(q)).sum();
        assert!((sum - cost).abs() <= 1e-12 * cost.max(1.0));
        for (i, a) in cover.iter().enumerate() {
            for b in cover.iter().skip(i + 1) {
                assert!(!a.overlaps(b));
            }
        }
        // cover captures the set
        for cell in e.iter() {
            assert!(cover
                .iter()
                .any(|q| q.contains(&c.cell_ancestor(cell, c.finest_level))));
        }
    }

    #[test]
    fn cube_cells_content_equals_gauge_for_small_power() {
        for beta in [0.25, 0.5, 1.0] {
            let c = cfg(1, -4);
            let h = ContentHandle::power(c, beta).unwrap();
            let (indexer, values) = h.cube_contents();
            for cube in c.cubes() {
                let direct = h.content(&GridSet::cube(c, &cube).unwrap());
                assert_eq!(direct, h.lambda(&cube), "β={beta} cube {cube}");
                assert_eq!(values[indexer.slot(&cube)], direct);
            }
        }
    }

    #[test]
    fn content_within_matches_global() {
        let c = cfg(1, -5);
        let h = ContentHandle::power(c, 0.5).unwrap();
        let cube = CubeId::new(-2, vec![2]);
        let e = GridSet::from_cells(c, &[16, 18, 19]).unwrap(); // inside [1/2, 3/4)
        assert_eq!(h.content_within(&cube, &e), h.content(&e));
    }

    #[test]
    fn spike_integral_and_average() {
        let (c, f, h) = spike();
        let full = GridSet::full(c);
        assert_eq!(choquet_integral(&f, &h, &full), 1.0);
        assert_eq!(average(&f, &h, &CubeId::new(-1, vec![0])), 2.0);
        assert_eq!(average(&f, &h, &c.root()), 1.0);
        assert_eq!(average(&f, &h, &CubeId::new(-1, vec![1])), 0.0);
        assert_eq!(lp_norm(&f, &h, 2.0).unwrap(), 2.0);
    }

    #[test]
    fn integral_of_step_function_layer_cake() {
        let c = cfg(1, -2);
        let h = ContentHandle::power(c, 1.0).unwrap();
        let f = GridFunction::from_values(c, vec![1.0, 3.0, 0.0, 1.0]).unwrap();
        let full = GridSet::full(c);
        // 1·H({f≥1}) + 2·H({f≥3}) = 1·(3/4) + 2·(1/4)
        assert_eq!(choquet_integral(&f, &h, &full), 1.25);
    }

    #[test]
    fn integral_restricted_to_region() {
        let (c, f, h) = spike();
        let region = GridSet::from_cells(c, &[1, 2, 3]).unwrap();
        assert_eq!(choquet_integral(&f, &h, &region), 0.0);
    }

    #[test]
    fn infinite_values_only_on_null_sets() {
        let c = cfg(1, -2);
        // zero gauge below the root on the left half: cells 0,1 are null
        let root = c.root();
        let entries: Vec<(CubeId, f64)> = c
            .cubes()
            .map(|q| {
                let v = if q == root {
                    1.0
                } else if q.index[0] < (1u32 << (-q.level - 1) as u32) {
                    0.0
                } else {
                    q.side()
                };
                (q, v)
            })
            .collect();
        let gauge = CubeGauge::table(c, &entries).unwrap();
        let h = ContentHandle::new(c, gauge).unwrap();
        let f = GridFunction::from_values(c, vec![f64::INFINITY, 1.0, 1.0, 1.0]).unwrap();
        let full = GridSet::full(c);
        // ∞ sits on a null cell: integral stays finite
        let v = choquet_integral(&f, &h, &full);
        assert!(v.is_finite());
        // move ∞ onto a cell of positive content → integral is +∞
        let g = GridFunction::from_values(c, vec![1.0, 1.0, f64::INFINITY, 1.0]).unwrap();
        assert_eq!(choquet_integral(&g, &h, &full), f64::INFINITY);
        // average over the null half is 0 by convention
        assert_eq!(average(&f, &h, &CubeId::new(-1, vec![0])), 0.0);
    }

    #[test]
    fn scaling_by_powers_of_two_is_exact() {
        let c = cfg(1, -3);
        let h = ContentHandle::power(c, 0.5).unwrap();
        let f =
            GridFunction::from_values(c, vec![0.3, 1.7, 0.0, 2.2, 0.3, 0.9, 5.0, 0.1]).unwrap();
        let full = GridSet::full(c);
        let base = choquet_integral(&f, &h, &full);
        let doubled = choquet_integral(&f.map(|v| 2.0 * v).unwrap(), &h, &full);
        assert_eq!(doubled, 2.0 * base);
    }

    #[test]
    fn lp_norm_rejects_bad_exponent() {
        let (_, f, h) = spike();
        assert!(lp_norm(&f, &h, 0.5).is_err());
        assert!(lp_norm(&f, &h, f64::INFINITY).is_err());
    }

    #[test]
    fn measure_power_content_idempotent_on_cubes() {
        // induced cube gauge from a measure: DP must return the cube value
        // exactly (hierarchical mass folds make the tie exact for α = n)
        let c = cfg(2, -3);
        let mp = MeasurePowerCapacity::new(c, 2.0, Density::Uniform).unwrap();
        let h = ContentHandle::new(c, CubeGauge::measure_power(mp.clone())).unwrap();
        for cube in c.cubes() {
            let set = GridSet::cube(c, &cube).unwrap();
            assert_eq!(h.content(&set), mp.cube_value(&cube), "cube {cube}");
        }
    }

    #[test]
    fn handle_from_spec_builds_right_kinds() {
        let c = cfg(1, -2);
        let content = handle_from_spec(
            &serde_json::from_str(r#"{"kind":"power","beta":1.0}"#).unwrap(),
            c,
        )
        .unwrap();
        assert!(content.label().starts_with("content["));
        let raw = handle_from_spec(
            &serde_json::from_str(r#"{"kind":"measure_power","alpha":0.5,"density":"uniform"}"#)
                .unwrap(),
            c,
        )
        .unwrap();
        assert!(raw.label().starts_with("measure-power"));
    }
}
