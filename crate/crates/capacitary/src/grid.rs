//! Finite-resolution sets and step functions on the window: a `GridSet` is a
//! bitset over finest cells, a `GridFunction` assigns one extended-real value
//! per finest cell. Cell order is row-major over index vectors with dimension
//! 0 varying fastest.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::lattice::{Ball, CubeId, LatticeConfig};

/// A set of finest cells, backed by a fixed-width bitset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridSet {
    config: LatticeConfig,
    blocks: Vec<u64>,
}

impl GridSet {
    pub fn empty(config: LatticeConfig) -> Self {
        let words = (config.cell_count() as usize).div_ceil(64);
        GridSet {
            config,
            blocks: vec![0; words],
        }
    }

    pub fn full(config: LatticeConfig) -> Self {
        let mut s = Self::empty(config);
        for cell in 0..config.cell_count() {
            s.insert(cell);
        }
        s
    }

    pub fn from_cells(config: LatticeConfig, cells: &[u64]) -> Result<Self> {
        config.validate()?;
        let mut s = Self::empty(config);
        for &cell in cells {
            if cell >= config.cell_count() {
                return Err(Error::InvalidGrid(format!(
                    "cell index {cell} out of range (window has {} cells)",
                    config.cell_count()
                )));
            }
            s.insert(cell);
        }
        Ok(s)
    }

    /// The finest cells of a cube, as a set.
    pub fn cube(config: LatticeConfig, cube: &CubeId) -> Result<Self> {
        config.validate_cube(cube)?;
        Ok(Self::from_cells(config, &config.cube_cells(cube)).expect("cube cells in range"))
    }

    /// The window intersection of the concentric triple `3Q`, as a set.
    pub fn triple(config: LatticeConfig, cube: &CubeId) -> Result<Self> {
        config.validate_cube(cube)?;
        Ok(Self::from_cells(config, &config.triple_cells(cube)).expect("triple cells in range"))
    }

    /// Cells whose center lies strictly inside the ball, as a set.
    pub fn ball(config: LatticeConfig, ball: &Ball) -> Result<Self> {
        let cells = config.ball_cells(ball)?;
        Ok(Self::from_cells(config, &cells).expect("ball cells in range"))
    }

    pub fn config(&self) -> LatticeConfig {
        self.config
    }

    pub fn insert(&mut self, cell: u64) {
        debug_assert!(cell < self.config.cell_count());
        self.blocks[(cell / 64) as usize] |= 1u64 << (cell % 64);
    }

    pub fn remove(&mut self, cell: u64) {
        debug_assert!(cell < self.config.cell_count());
        self.blocks[(cell / 64) as usize] &= !(1u64 << (cell % 64));
    }

    pub fn contains(&self, cell: u64) -> bool {
        self.blocks[(cell / 64) as usize] >> (cell % 64) & 1 == 1
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.iter().all(|b| *b == 0)
    }

    pub fn count(&self) -> u64 {
        self.blocks.iter().map(|b| b.count_ones() as u64).sum()
    }

    fn zip_check(&self, other: &GridSet) {
        assert_eq!(
            self.config, other.config,
            "set operands live on different windows"
        );
    }

    pub fn union(&self, other: &GridSet) -> GridSet {
        self.zip_check(other);
        GridSet {
            config: self.config,
            blocks: self
                .blocks
                .iter()
                .zip(&other.blocks)
                .map(|(a, b)| a | b)
                .collect(),
        }
    }

    pub fn intersection(&self, other: &GridSet) -> GridSet {
        self.zip_check(other);
        GridSet {
            config: self.config,
            blocks: self
                .blocks
                .iter()
                .zip(&other.blocks)
                .map(|(a, b)| a & b)
                .collect(),
        }
    }

    pub fn difference(&self, other: &GridSet) -> GridSet {
        self.zip_check(other);
        GridSet {
            config: self.config,
            blocks: self
                .blocks
                .iter()
                .zip(&other.blocks)
                .map(|(a, b)| a & !b)
                .collect(),
        }
    }

    pub fn is_subset(&self, other: &GridSet) -> bool {
        self.zip_check(other);
        self.blocks
            .iter()
            .zip(&other.blocks)
            .all(|(a, b)| a & !b == 0)
    }

    /// Sorted cell indices.
    pub fn cells(&self) -> Vec<u64> {
        self.iter().collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        self.blocks.iter().enumerate().flat_map(|(w, &block)| {
            let mut bits = block;
            std::iter::from_fn(move || {
                if bits == 0 {
                    None
                } else {
                    let tz = bits.trailing_zeros();
                    bits &= bits - 1;
                    Some(w as u64 * 64 + tz as u64)
                }
            })
        })
    }
}

#[derive(Serialize, Deserialize)]
struct GridSetRepr {
    config: LatticeConfig,
    cells: Vec<u64>,
}

impl Serialize for GridSet {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        GridSetRepr {
            config: self.config,
            cells: self.cells(),
        }
        .serialize(ser)
    }
}

impl<'de> Deserialize<'de> for GridSet {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let repr = GridSetRepr::deserialize(de)?;
        GridSet::from_cells(repr.config, &repr.cells).map_err(D::Error::custom)
    }
}

/// A step function on the window: one value per finest cell. Values may be
/// negative or `+∞`; `NaN` is rejected at every construction site.
#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction {
    config: LatticeConfig,
    values: Vec<f64>,
}

impl GridFunction {
    pub fn from_values(config: LatticeConfig, values: Vec<f64>) -> Result<Self> {
        config.validate()?;
        if values.len() as u64 != config.cell_count() {
            return Err(Error::InvalidGrid(format!(
                "expected {} values, got {}",
                config.cell_count(),
                values.len()
            )));
        }
        if values.iter().any(|v| v.is_nan()) {
            return Err(Error::NonFinite("grid function contains NaN".into()));
        }
        Ok(GridFunction { config, values })
    }

    pub fn constant(config: LatticeConfig, value: f64) -> Result<Self> {
        Self::from_values(config, vec![value; config.cell_count() as usize])
    }

    /// Indicator of a set.
    pub fn indicator(set: &GridSet) -> Self {
        let mut values = vec![0.0; set.config().cell_count() as usize];
        for cell in set.iter() {
            values[cell as usize] = 1.0;
        }
        GridFunction {
            config: set.config(),
            values,
        }
    }

    /// Samples a pointwise function at every cell center.
    pub fn sample(config: LatticeConfig, f: impl Fn(&[f64]) -> f64) -> Result<Self> {
        config.validate()?;
        let values = (0..config.cell_count())
            .map(|cell| f(&config.cell_center(cell)))
            .collect();
        Self::from_values(config, values)
    }

    pub fn config(&self) -> LatticeConfig {
        self.config
    }

    pub fn value(&self, cell: u64) -> f64 {
        self.values[cell as usize]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn map(&self, f: impl Fn(f64) -> f64) -> Result<GridFunction> {
        Self::from_values(self.config, self.values.iter().map(|&v| f(v)).collect())
    }

    pub fn abs(&self) -> GridFunction {
        self.map(f64::abs).expect("abs preserves non-NaN")
    }

    /// Cells of `region` where the value is ≥ `t`.
    pub fn super_level_set(&self, t: f64, region: &GridSet) -> GridSet {
        assert_eq!(self.config, region.config(), "function/region mismatch");
        let mut out = GridSet::empty(self.config);
        for cell in region.iter() {
            if self.values[cell as usize] >= t {
                out.insert(cell);
            }
        }
        out
    }

    /// Cells of `region` where the value is > `t`.
    pub fn strict_super_level_set(&self, t: f64, region: &GridSet) -> GridSet {
        assert_eq!(self.config, region.config(), "function/region mismatch");
        let mut out = GridSet::empty(self.config);
        for cell in region.iter() {
            if self.values[cell as usize] > t {
                out.insert(cell);
            }
        }
        out
    }

    /// Distinct finite values strictly above zero on `region`, ascending.
    pub fn distinct_positive_values(&self, region: &GridSet) -> Vec<f64> {
        let mut vals: Vec<f64> = region
            .iter()
            .map(|cell| self.values[cell as usize])
            .filter(|v| *v > 0.0 && v.is_finite())
            .collect();
        vals.sort_by(|a, b| a.partial_cmp(b).expect("no NaN"));
        vals.dedup();
        vals
    }

    /// Distinct values on `region`, ascending (finite ones only).
    pub fn distinct_values(&self, region: &GridSet) -> Vec<f64> {
        let mut vals: Vec<f64> = region
            .iter()
            .map(|cell| self.values[cell as usize])
            .filter(|v| v.is_finite())
            .collect();
        vals.sort_by(|a, b| a.partial_cmp(b).expect("no NaN"));
        vals.dedup();
        vals
    }
}

#[derive(Serialize, Deserialize)]
struct GridFunctionRepr {
    config: LatticeConfig,
    values: Vec<f64>,
}

impl Serialize for GridFunction {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        GridFunctionRepr {
            config: self.config,
            values: self.values.clone(),
        }
        .serialize(ser)
    }
}

impl<'de> Deserialize<'de> for GridFunction {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let repr = GridFunctionRepr::deserialize(de)?;
        GridFunction::from_values(repr.config, repr.values).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(n: usize, l: i32) -> LatticeConfig {
        LatticeConfig::new(n, l).unwrap()
    }

    #[test]
    fn set_algebra_round_trip() {
        let c = cfg(1, -3);
        let a = GridSet::from_cells(c, &[0, 1, 4]).unwrap();
        let b = GridSet::from_cells(c, &[1, 2]).unwrap();
        assert_eq!(a.union(&b).cells(), vec![0, 1, 2, 4]);
        assert_eq!(a.intersection(&b).cells(), vec![1]);
        assert_eq!(a.difference(&b).cells(), vec![0, 4]);
        assert!(GridSet::from_cells(c, &[1]).unwrap().is_subset(&b));
        assert!(!a.is_subset(&b));
        assert_eq!(a.count(), 3);
        assert!(!a.is_empty());
        assert!(GridSet::empty(c).is_empty());
    }

    #[test]
    fn set_rejects_out_of_range_cells() {
        let c = cfg(1, -2);
        assert!(GridSet::from_cells(c, &[4]).is_err());
    }

    #[test]
    fn set_json_round_trip() {
        let c = cfg(2, -2);
        let s = GridSet::from_cells(c, &[3, 0, 9]).unwrap();
        let json = serde_json::to_string(&s).unwrap();
        assert_eq!(
            json,
            r#"{"config":{"dimension":2,"finest_level":-2},"cells":[0,3,9]}"#
        );
        let back: GridSet = serde_json::from_str(&json).unwrap();
        assert_eq!(back, s);
    }

    #[test]
    fn function_rejects_nan_and_bad_arity() {
        let c = cfg(1, -1);
        assert!(GridFunction::from_values(c, vec![0.0, f64::NAN]).is_err());
        assert!(GridFunction::from_values(c, vec![0.0]).is_err());
        assert!(GridFunction::from_values(c, vec![1.0, f64::INFINITY]).is_ok());
    }

    #[test]
    fn level_sets_and_values() {
        let c = cfg(1, -2);
        let f = GridFunction::from_values(c, vec![4.0, 0.0, 2.0, 2.0]).unwrap();
        let all = GridSet::full(c);
        assert_eq!(f.super_level_set(2.0, &all).cells(), vec![0, 2, 3]);
        assert_eq!(f.strict_super_level_set(2.0, &all).cells(), vec![0]);
        assert_eq!(f.distinct_positive_values(&all), vec![2.0, 4.0]);
        let half = GridSet::from_cells(c, &[0, 1]).unwrap();
        assert_eq!(f.distinct_positive_values(&half), vec![4.0]);
    }

    #[test]
    fn indicator_and_sample() {
        let c = cfg(1, -2);
        let s = GridSet::from_cells(c, &[1, 3]).unwrap();
        let f = GridFunction::indicator(&s);
        assert_eq!(f.values(), &[0.0, 1.0, 0.0, 1.0]);
        let id = GridFunction::sample(c, |x| x[0]).unwrap();
        assert_eq!(id.values(), &[0.125, 0.375, 0.625, 0.875]);
    }

    #[test]
    fn cube_and_triple_sets() {
        let c = cfg(1, -2);
        let half = GridSet::cube(c, &CubeId::new(-1, vec![0])).unwrap();
        assert_eq!(half.cells(), vec![0, 1]);
        let t = GridSet::triple(c, &CubeId::new(-2, vec![1])).unwrap();
        assert_eq!(t.cells(), vec![0, 1, 2]);
    }
}
