//! Gauges and monotone set functions. A `Gauge` prices a cube by its side
//! length, a `CubeGauge` prices arbitrary lattice cubes, and `SetFunction` is
//! the common interface for evaluable monotone set functions (contents,
//! measure-power capacities, user tables) with extended-real values.

use std::collections::BTreeMap;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::GridSet;
use crate::lattice::{CubeId, CubeIndexer, LatticeConfig};

/// Natural-log convention for the logarithmic gauge.
const LN_2: f64 = std::f64::consts::LN_2;

/// A side-length gauge `φ(t)` evaluated at dyadic sides `t = 2^level`.
#[derive(Debug, Clone, PartialEq)]
pub enum Gauge {
    /// `φ(t) = t^β`, `β > 0`.
    Power { beta: f64 },
    /// `φ(t) = [ln(2/t)]^(-β)` for `t < 2`, `+∞` otherwise; `β > 0`.
    Log { beta: f64 },
    /// Explicit per-level values; must cover every level it is used at.
    Table { values: BTreeMap<i32, f64> },
}

impl Gauge {
    pub fn power(beta: f64) -> Result<Self> {
        if !beta.is_finite() || beta <= 0.0 {
            return Err(Error::InvalidExponent(format!(
                "power gauge needs finite β > 0, got {beta}"
            )));
        }
        Ok(Gauge::Power { beta })
    }

    pub fn log(beta: f64) -> Result<Self> {
        if !beta.is_finite() || beta <= 0.0 {
            return Err(Error::InvalidExponent(format!(
                "log gauge needs finite β > 0, got {beta}"
            )));
        }
        Ok(Gauge::Log { beta })
    }

    pub fn table(values: BTreeMap<i32, f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidTable("side table is empty".into()));
        }
        for (&level, &v) in &values {
            if v.is_nan() || v < 0.0 {
                return Err(Error::InvalidTable(format!(
                    "side table value at level {level} must be ≥ 0, got {v}"
                )));
            }
        }
        let mut prev: Option<(i32, f64)> = None;
        for (&level, &v) in &values {
            if let Some((pl, pv)) = prev {
                if pv > v {
                    return Err(Error::InvalidTable(format!(
                        "side table not monotone: level {pl} ↦ {pv} > level {level} ↦ {v}"
                    )));
                }
            }
            prev = Some((level, v));
        }
        Ok(Gauge::Table { values })
    }

    /// Value at side `2^level`. Panics on a table miss — `CubeGauge`
    /// construction guarantees coverage of the window's levels.
    pub fn eval(&self, level: i32) -> f64 {
        match self {
            Gauge::Power { beta } => (level as f64 * beta).exp2(),
            Gauge::Log { beta } => {
                if level >= 1 {
                    f64::INFINITY
                } else {
                    (LN_2 * (1.0 - level as f64)).powf(-beta)
                }
            }
            Gauge::Table { values } => *values
                .get(&level)
                .unwrap_or_else(|| panic!("side table has no entry for level {level}")),
        }
    }

    /// Convenience wrapper taking an exact dyadic side length.
    pub fn eval_side(&self, side: f64) -> Result<f64> {
        if !(side > 0.0) || !side.is_finite() {
            return Err(Error::NonFinite(format!("side must be positive, got {side}")));
        }
        let level = side.log2();
        if level.fract() != 0.0 {
            return Err(Error::InvalidTable(format!(
                "side {side} is not a dyadic power"
            )));
        }
        Ok(self.eval(level as i32))
    }

    pub fn label(&self) -> String {
        match self {
            Gauge::Power { beta } => format!("power(beta={beta})"),
            Gauge::Log { beta } => format!("log(beta={beta})"),
            Gauge::Table { .. } => "side-table".into(),
        }
    }
}

/// Uniform or explicit per-cell masses for measure-power capacities.
#[derive(Debug, Clone, PartialEq)]
pub enum Density {
    /// Lebesgue: every finest cell carries mass `2^(n·L)`.
    Uniform,
    /// Explicit nonnegative finite mass per finest cell, row-major.
    Cells(Vec<f64>),
}

/// The capacity `C(E) = μ(E)^(α/n)` with `0 < α ≤ n`. Subadditive and
/// monotone, but not a content: it prices a set directly through its measure,
/// not through covers.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasurePowerCapacity {
    config: LatticeConfig,
    alpha: f64,
    theta: f64,
    cell_mass: Vec<f64>,
}

impl MeasurePowerCapacity {
    pub fn new(config: LatticeConfig, alpha: f64, density: Density) -> Result<Self> {
        config.validate()?;
        let n = config.dimension as f64;
        if !alpha.is_finite() || alpha <= 0.0 || alpha > n {
            return Err(Error::InvalidExponent(format!(
                "measure-power needs 0 < α ≤ n = {n}, got {alpha}"
            )));
        }
        let cell_mass = match density {
            Density::Uniform => {
                let m = (config.dimension as f64 * config.finest_level as f64).exp2();
                vec![m; config.cell_count() as usize]
            }
            Density::Cells(v) => {
                if v.len() as u64 != config.cell_count() {
                    return Err(Error::InvalidDensity(format!(
                        "expected {} masses, got {}",
                        config.cell_count(),
                        v.len()
                    )));
                }
                if v.iter().any(|m| !m.is_finite() || *m < 0.0) {
                    return Err(Error::InvalidDensity(
                        "cell masses must be finite and ≥ 0".into(),
                    ));
                }
                v
            }
        };
        Ok(MeasurePowerCapacity {
            config,
            alpha,
            theta: alpha / n,
            cell_mass,
        })
    }

    pub fn uniform(config: LatticeConfig, alpha: f64) -> Result<Self> {
        Self::new(config, alpha, Density::Uniform)
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// Mass of `set ∩ cube`, accumulated hierarchically (left fold in child
    /// order at every node) so that a parent's mass is float-identical to the
    /// fold of its children's masses.
    fn mass_within(&self, cube: &CubeId, set: Option<&GridSet>) -> f64 {
        if cube.level <= self.config.finest_level {
            let cell = self.config.cell_linear(
                &cube
                    .index
                    .iter()
                    .map(|&v| v as u64)
                    .collect::<Vec<_>>(),
            );
            return match set {
                Some(s) if !s.contains(cell) => 0.0,
                _ => self.cell_mass[cell as usize],
            };
        }
        let mut acc = 0.0;
        for child in self.config.children(cube).expect("not finest") {
            acc += self.mass_within(&child, set);
        }
        acc
    }

    /// Total mass of a cube.
    pub fn cube_mass(&self, cube: &CubeId) -> f64 {
        self.mass_within(cube, None)
    }

    /// Capacity of the cells of a cube.
    pub fn cube_value(&self, cube: &CubeId) -> f64 {
        power_theta(self.cube_mass(cube), self.theta)
    }
}

/// `m^θ` with the convention `0^θ = 0`.
fn power_theta(mass: f64, theta: f64) -> f64 {
    if mass == 0.0 {
        0.0
    } else {
        mass.powf(theta)
    }
}

impl SetFunction for MeasurePowerCapacity {
    fn config(&self) -> LatticeConfig {
        self.config
    }

    fn eval(&self, set: &GridSet) -> f64 {
        self.eval_within(&self.config.root(), set)
    }

    fn eval_within(&self, cube: &CubeId, set: &GridSet) -> f64 {
        power_theta(self.mass_within(cube, Some(set)), self.theta)
    }

    fn label(&self) -> String {
        format!("measure-power(alpha={})", self.alpha)
    }
}

/// Prices every lattice cube; must be monotone under inclusion.
#[derive(Debug, Clone)]
pub enum CubeGauge {
    /// `λ(Q) = φ(side(Q))` for a side gauge `φ`.
    Shape(Gauge),
    /// `λ(Q) = μ(Q)^(α/n)`.
    MeasurePower(MeasurePowerCapacity),
    /// Explicit per-cube values (dense, validated monotone).
    Table { indexer: CubeIndexer, values: Vec<f64> },
}

impl CubeGauge {
    /// Wraps a side gauge, checking it covers the window's levels and is
    /// monotone across them.
    pub fn shape(config: LatticeConfig, gauge: Gauge) -> Result<Self> {
        config.validate()?;
        let mut prev: Option<f64> = None;
        for level in config.finest_level..=0 {
            if let Gauge::Table { values } = &gauge {
                if !values.contains_key(&level) {
                    return Err(Error::InvalidTable(format!(
                        "side table misses window level {level}"
                    )));
                }
            }
            let v = gauge.eval(level);
            if v.is_nan() || v < 0.0 {
                return Err(Error::InvalidTable(format!(
                    "gauge value at level {level} must be ≥ 0, got {v}"
                )));
            }
            if let Some(p) = prev {
                if p > v {
                    return Err(Error::InvalidTable(format!(
                        "gauge decreases from level {} to {level}",
                        level - 1
                    )));
                }
            }
            prev = Some(v);
        }
        Ok(CubeGauge::Shape(gauge))
    }

    pub fn measure_power(capacity: MeasurePowerCapacity) -> Self {
        CubeGauge::MeasurePower(capacity)
    }

    /// Builds a dense per-cube table. Every lattice cube must appear exactly
    /// once and the table must be monotone across parent/child pairs.
    pub fn table(config: LatticeConfig, entries: &[(CubeId, f64)]) -> Result<Self> {
        config.validate()?;
        let indexer = CubeIndexer::new(config);
        let mut values = vec![f64::NAN; indexer.len()];
        for (cube, v) in entries {
            config.validate_cube(cube)?;
            if v.is_nan() || *v < 0.0 {
                return Err(Error::InvalidTable(format!(
                    "table value for {cube} must be ≥ 0, got {v}"
                )));
            }
            let slot = indexer.slot(cube);
            if !values[slot].is_nan() {
                return Err(Error::InvalidTable(format!("duplicate entry for {cube}")));
            }
            values[slot] = *v;
        }
        if let Some(slot) = values.iter().position(|v| v.is_nan()) {
            return Err(Error::InvalidTable(format!(
                "table misses cube {}",
                indexer.cube(slot)
            )));
        }
        // parent/child monotonicity implies monotonicity under inclusion
        for cube in config.cubes() {
            if cube.level <= config.finest_level {
                continue;
            }
            let pv = values[indexer.slot(&cube)];
            for child in config.children(&cube)? {
                let cv = values[indexer.slot(&child)];
                if cv > pv {
                    return Err(Error::InvalidTable(format!(
                        "table not monotone: {child} ↦ {cv} exceeds {cube} ↦ {pv}"
                    )));
                }
            }
        }
        Ok(CubeGauge::Table { indexer, values })
    }

    pub fn eval(&self, cube: &CubeId) -> f64 {
        match self {
            CubeGauge::Shape(g) => g.eval(cube.level),
            CubeGauge::MeasurePower(mp) => mp.cube_value(cube),
            CubeGauge::Table { indexer, values } => values[indexer.slot(cube)],
        }
    }

    pub fn label(&self) -> String {
        match self {
            CubeGauge::Shape(g) => g.label(),
            CubeGauge::MeasurePower(mp) => mp.label(),
            CubeGauge::Table { .. } => "cube-table".into(),
        }
    }
}

/// An evaluable monotone set function on window subsets, valued in
/// `[0, +∞]` with `eval(∅) = 0`.
pub trait SetFunction {
    fn config(&self) -> LatticeConfig;

    fn eval(&self, set: &GridSet) -> f64;

    /// Must agree with `eval(set)` whenever `set ⊆ cube`; implementations may
    /// exploit the locality for speed. Contents satisfy this because a cover
    /// cube meeting the subtree is either inside it or replaceable by the
    /// subtree root at no extra cost.
    fn eval_within(&self, _cube: &CubeId, set: &GridSet) -> f64 {
        self.eval(set)
    }

    fn label(&self) -> String;

    /// Metadata only: whether the handle claims finite subadditivity.
    fn subadditive_claimed(&self) -> bool {
        true
    }

    /// Metadata only: whether the handle claims a doubling bound on cubes.
    fn doubling_claimed(&self) -> bool {
        true
    }
}

/// One detected monotonicity violation: a nested pair evaluated out of order.
#[derive(Debug, Clone, Serialize)]
pub struct MonotoneViolation {
    pub smaller: Vec<u64>,
    pub larger: Vec<u64>,
    pub smaller_value: f64,
    pub larger_value: f64,
}

/// Result of randomized monotonicity checking.
#[derive(Debug, Clone, Serialize)]
pub struct MonotoneReport {
    pub trials: u64,
    pub empty_value: f64,
    pub violations: Vec<MonotoneViolation>,
}

impl MonotoneReport {
    pub fn pass(&self) -> bool {
        self.violations.is_empty() && self.empty_value == 0.0
    }
}

/// Randomized sanity check: `eval(∅) = 0` and `eval(A) ≤ eval(B)` on seeded
/// nested pairs `A ⊆ B`. At most 8 violations are retained as witnesses.
pub fn check_monotone(handle: &dyn SetFunction, trials: u64, rng: &mut impl Rng) -> MonotoneReport {
    let config = handle.config();
    let empty_value = handle.eval(&GridSet::empty(config));
    let mut violations = Vec::new();
    for _ in 0..trials {
        let density_b: f64 = rng.random_range(0.1..1.0);
        let keep: f64 = rng.random_range(0.2..1.0);
        let mut b = GridSet::empty(config);
        let mut a = GridSet::empty(config);
        for cell in 0..config.cell_count() {
            if rng.random_bool(density_b) {
                b.insert(cell);
                if rng.random_bool(keep) {
                    a.insert(cell);
                }
            }
        }
        let va = handle.eval(&a);
        let vb = handle.eval(&b);
        if va > vb + 1e-12 * vb.abs().max(1.0) && violations.len() < 8 {
            violations.push(MonotoneViolation {
                smaller: a.cells(),
                larger: b.cells(),
                smaller_value: va,
                larger_value: vb,
            });
        }
    }
    MonotoneReport {
        trials,
        empty_value,
        violations,
    }
}

/// JSON description of a gauge or capacity, shared by the CLI and file
/// formats.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CapacitySpec {
    Power { beta: f64 },
    Log { beta: f64 },
    MeasurePower { alpha: f64, density: DensitySpec },
    Table { entries: Vec<TableEntry> },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum DensitySpec {
    Named(String),
    Cells(Vec<f64>),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TableEntry {
    pub level: i32,
    pub index: Vec<u32>,
    pub value: f64,
}

impl DensitySpec {
    pub fn build(&self) -> Result<Density> {
        match self {
            DensitySpec::Named(s) if s == "uniform" => Ok(Density::Uniform),
            DensitySpec::Named(s) => Err(Error::InvalidDensity(format!(
                "unknown density '{s}', expected \"uniform\" or an array of cell masses"
            ))),
            DensitySpec::Cells(v) => Ok(Density::Cells(v.clone())),
        }
    }
}

impl CapacitySpec {
    /// Builds the cube gauge this spec denotes (the pricing side of a
    /// content).
    pub fn build_cube_gauge(&self, config: LatticeConfig) -> Result<CubeGauge> {
        match self {
            CapacitySpec::Power { beta } => CubeGauge::shape(config, Gauge::power(*beta)?),
            CapacitySpec::Log { beta } => CubeGauge::shape(config, Gauge::log(*beta)?),
            CapacitySpec::MeasurePower { alpha, density } => Ok(CubeGauge::measure_power(
                MeasurePowerCapacity::new(config, *alpha, density.build()?)?,
            )),
            CapacitySpec::Table { entries } => {
                let entries: Vec<(CubeId, f64)> = entries
                    .iter()
                    .map(|e| (CubeId::new(e.level, e.index.clone()), e.value))
                    .collect();
                CubeGauge::table(config, &entries)
            }
        }
    }
}
