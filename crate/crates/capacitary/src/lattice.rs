//! Finite dyadic lattice: a window of half-open dyadic cubes inside the unit
//! cube `[0,1)^n`, truncated at a finest level `L ≤ 0`. The root is the unit
//! cube at level 0; a cube at level `k` has side `2^k` and splits into `2^n`
//! children. Any two lattice cubes are nested or disjoint.

use serde::{Deserialize, Serialize};
use std::fmt;

use crate::error::{Error, Result};

/// Maximum number of finest cells a window may hold (`2^24`).
pub const MAX_CELLS_LOG2: u32 = 24;

/// Immutable description of the dyadic window: dimension `n ≥ 1` and finest
/// level `L ≤ 0`. The root is always the unit cube `[0,1)^n` at level 0 with
/// its corner at the origin.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LatticeConfig {
    pub dimension: usize,
    pub finest_level: i32,
}

/// A dyadic cube: level `k ∈ [L, 0]` and per-dimension index
/// `index[d] ∈ [0, 2^-k)`, denoting `∏_d [index[d]·2^k, (index[d]+1)·2^k)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CubeId {
    pub level: i32,
    pub index: Vec<u32>,
}

/// A Euclidean ball with center inside the window and positive finite radius.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Ball {
    pub center: Vec<f64>,
    pub radius: f64,
}

/// Canonical cover of a ball by equally sized disjoint dyadic cubes.
#[derive(Debug, Clone, PartialEq)]
pub struct BallCover {
    /// Common level of the covering cubes.
    pub level: i32,
    /// Disjoint cubes at `level`, each intersecting the ball.
    pub cubes: Vec<CubeId>,
    /// True when the natural level fell outside `[finest_level, 0]` above the
    /// root and the cover was clamped to the root.
    pub clamped: bool,
}

impl fmt::Display for CubeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},[", self.level)?;
        for (i, v) in self.index.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "])")
    }
}

impl CubeId {
    pub fn new(level: i32, index: Vec<u32>) -> Self {
        CubeId { level, index }
    }

    /// Side length `2^level`.
    pub fn side(&self) -> f64 {
        (self.level as f64).exp2()
    }

    /// Inclusion test by index arithmetic: `other ⊆ self` iff `other` is at
    /// the same or finer level and coarsening its index reproduces `self`.
    pub fn contains(&self, other: &CubeId) -> bool {
        if other.level > self.level || self.index.len() != other.index.len() {
            return false;
        }
        let shift = (self.level - other.level) as u32;
        self.index
            .iter()
            .zip(other.index.iter())
            .all(|(a, b)| (b >> shift) == *a)
    }

    /// Nested-or-disjoint trichotomy for dyadic cubes.
    pub fn overlaps(&self, other: &CubeId) -> bool {
        self.contains(other) || other.contains(self)
    }

    /// Corner coordinate of the cube in dimension `d`.
    pub fn corner(&self, d: usize) -> f64 {
        self.index[d] as f64 * self.side()
    }
}

impl LatticeConfig {
    pub fn new(dimension: usize, finest_level: i32) -> Result<Self> {
        let cfg = LatticeConfig {
            dimension,
            finest_level,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.dimension == 0 {
            return Err(Error::InvalidConfig("dimension must be ≥ 1".into()));
        }
        if self.finest_level > 0 {
            return Err(Error::InvalidConfig(format!(
                "finest_level must be ≤ 0, got {}",
                self.finest_level
            )));
        }
        let bits = self.dimension as i64 * (-self.finest_level) as i64;
        if bits > MAX_CELLS_LOG2 as i64 {
            return Err(Error::InvalidConfig(format!(
                "window holds 2^{bits} cells, above the 2^{MAX_CELLS_LOG2} cap"
            )));
        }
        Ok(())
    }

    /// Cells per dimension: `2^-L`.
    pub fn width(&self) -> u64 {
        1u64 << (-self.finest_level) as u32
    }

    /// Total number of finest cells: `width^n`.
    pub fn cell_count(&self) -> u64 {
        self.width().pow(self.dimension as u32)
    }

    /// Side length of a finest cell.
    pub fn cell_side(&self) -> f64 {
        (self.finest_level as f64).exp2()
    }

    pub fn root(&self) -> CubeId {
        CubeId::new(0, vec![0; self.dimension])
    }

    /// Number of cubes at a given level: `(2^-k)^n`.
    pub fn cubes_at_level(&self, level: i32) -> u64 {
        (1u64 << (-level) as u32).pow(self.dimension as u32)
    }

    /// Verifies level range and per-dimension index bounds.
    pub fn validate_cube(&self, cube: &CubeId) -> Result<()> {
        let bad = |reason: String| Error::InvalidCube {
            cube: cube.clone(),
            reason,
        };
        if cube.index.len() != self.dimension {
            return Err(bad(format!("index arity {} ≠ dimension {}", cube.index.len(), self.dimension)));
        }
        if cube.level > 0 || cube.level < self.finest_level {
            return Err(bad(format!(
                "level {} outside [{}, 0]",
                cube.level, self.finest_level
            )));
        }
        let per_dim = 1u64 << (-cube.level) as u32;
        for &v in &cube.index {
            if (v as u64) >= per_dim {
                return Err(bad(format!("index component {v} ≥ {per_dim}")));
            }
        }
        Ok(())
    }

    /// Parent cube (one level coarser). The root has none.
    pub fn parent(&self, cube: &CubeId) -> Result<CubeId> {
        self.validate_cube(cube)?;
        if cube.level >= 0 {
            return Err(Error::NoParent(cube.clone()));
        }
        Ok(CubeId::new(
            cube.level + 1,
            cube.index.iter().map(|v| v >> 1).collect(),
        ))
    }

    /// The `2^n` children, enumerated with dimension 0 varying fastest.
    /// Cubes at the finest level have none.
    pub fn children(&self, cube: &CubeId) -> Result<Vec<CubeId>> {
        self.validate_cube(cube)?;
        if cube.level <= self.finest_level {
            return Err(Error::NoChildren(cube.clone()));
        }
        let n = self.dimension;
        let mut out = Vec::with_capacity(1 << n);
        for offset in 0u32..(1 << n) {
            let index = (0..n)
                .map(|d| (cube.index[d] << 1) | ((offset >> d) & 1))
                .collect();
            out.push(CubeId::new(cube.level - 1, index));
        }
        Ok(out)
    }

    /// Chain of lattice cubes containing the given cube, from the cube itself
    /// up to the root.
    pub fn ancestors_inclusive(&self, cube: &CubeId) -> Vec<CubeId> {
        let mut out = Vec::with_capacity((1 - cube.level) as usize);
        let mut cur = cube.clone();
        loop {
            out.push(cur.clone());
            if cur.level >= 0 {
                break;
            }
            cur = CubeId::new(cur.level + 1, cur.index.iter().map(|v| v >> 1).collect());
        }
        out
    }

    /// The ancestor of a finest cell at the requested level.
    pub fn cell_ancestor(&self, cell: u64, level: i32) -> CubeId {
        let vec = self.cell_vec(cell);
        let shift = (level - self.finest_level) as u32;
        CubeId::new(level, vec.iter().map(|&v| (v >> shift) as u32).collect())
    }

    /// Row-major linear index of a per-dimension cell vector (dimension 0
    /// varies fastest).
    pub fn cell_linear(&self, vec: &[u64]) -> u64 {
        let w = self.width();
        let mut lin = 0u64;
        for d in (0..self.dimension).rev() {
            lin = lin * w + vec[d];
        }
        lin
    }

    /// Inverse of `cell_linear`.
    pub fn cell_vec(&self, linear: u64) -> Vec<u64> {
        let w = self.width();
        let mut rest = linear;
        (0..self.dimension)
            .map(|_| {
                let v = rest % w;
                rest /= w;
                v
            })
            .collect()
    }

    /// Center point of a finest cell.
    pub fn cell_center(&self, linear: u64) -> Vec<f64> {
        let side = self.cell_side();
        self.cell_vec(linear)
            .iter()
            .map(|&v| (v as f64 + 0.5) * side)
            .collect()
    }

    /// Linear indices of the finest cells inside a cube, in row-major order.
    pub fn cube_cells(&self, cube: &CubeId) -> Vec<u64> {
        let shift = (cube.level - self.finest_level) as u32;
        let extent = 1u64 << shift;
        let start: Vec<u64> = cube.index.iter().map(|&v| (v as u64) << shift).collect();
        let mut out = Vec::with_capacity((extent as usize).pow(self.dimension as u32));
        let mut off = vec![0u64; self.dimension];
        loop {
            let vec: Vec<u64> = start.iter().zip(&off).map(|(s, o)| s + o).collect();
            out.push(self.cell_linear(&vec));
            // odometer increment over the per-dimension offsets
            let mut d = 0;
            loop {
                if d == self.dimension {
                    return out;
                }
                off[d] += 1;
                if off[d] < extent {
                    break;
                }
                off[d] = 0;
                d += 1;
            }
        }
    }

    /// All lattice cubes, coarse to fine, row-major within each level.
    pub fn cubes(&self) -> impl Iterator<Item = CubeId> + '_ {
        (self.finest_level..=0).rev().flat_map(move |level| {
            let per_dim = 1u64 << (-level) as u32;
            let count = per_dim.pow(self.dimension as u32);
            (0..count).map(move |lin| {
                let mut rest = lin;
                let index = (0..self.dimension)
                    .map(|_| {
                        let v = (rest % per_dim) as u32;
                        rest /= per_dim;
                        v
                    })
                    .collect();
                CubeId::new(level, index)
            })
        })
    }

    /// Total number of lattice cubes across all levels.
    pub fn cube_count(&self) -> u64 {
        (self.finest_level..=0)
            .map(|level| self.cubes_at_level(level))
            .sum()
    }

    pub fn validate_ball(&self, ball: &Ball) -> Result<()> {
        if ball.center.len() != self.dimension {
            return Err(Error::InvalidBall(format!(
                "center arity {} ≠ dimension {}",
                ball.center.len(),
                self.dimension
            )));
        }
        if !ball.radius.is_finite() || ball.radius <= 0.0 {
            return Err(Error::InvalidBall(format!(
                "radius must be positive and finite, got {}",
                ball.radius
            )));
        }
        if ball.center.iter().any(|c| !c.is_finite() || *c < 0.0 || *c >= 1.0) {
            return Err(Error::InvalidBall(
                "center must lie inside the window [0,1)^n".into(),
            ));
        }
        Ok(())
    }

    /// Finest cells whose center lies strictly inside the ball.
    pub fn ball_cells(&self, ball: &Ball) -> Result<Vec<u64>> {
        self.validate_ball(ball)?;
        let side = self.cell_side();
        let w = self.width() as i64;
        // Per-dimension candidate range of cell coordinates.
        let ranges: Vec<(u64, u64)> = ball
            .center
            .iter()
            .map(|&c| {
                let lo = (((c - ball.radius) / side).floor() as i64).clamp(0, w - 1) as u64;
                let hi = (((c + ball.radius) / side).floor() as i64).clamp(0, w - 1) as u64;
                (lo, hi)
            })
            .collect();
        let mut out = Vec::new();
        let mut vec: Vec<u64> = ranges.iter().map(|r| r.0).collect();
        'scan: loop {
            let dist2: f64 = vec
                .iter()
                .zip(&ball.center)
                .map(|(&v, &c)| {
                    let d = (v as f64 + 0.5) * side - c;
                    d * d
                })
                .sum();
            if dist2 < ball.radius * ball.radius {
                out.push(self.cell_linear(&vec));
            }
            let mut d = 0;
            loop {
                if d == self.dimension {
                    break 'scan;
                }
                vec[d] += 1;
                if vec[d] <= ranges[d].1 {
                    break;
                }
                vec[d] = ranges[d].0;
                d += 1;
            }
        }
        out.sort_unstable();
        Ok(out)
    }

    /// Linear indices of the finest cells in the concentric triple `3Q`,
    /// intersected with the window. The triple's corners are aligned to the
    /// cube's own level, so the cell set is exact.
    pub fn triple_cells(&self, cube: &CubeId) -> Vec<u64> {
        let shift = (cube.level - self.finest_level) as u32;
        let extent = 1i64 << shift;
        let w = self.width() as i64;
        let ranges: Vec<(u64, u64)> = cube
            .index
            .iter()
            .map(|&v| {
                let lo = ((v as i64 - 1) * extent).max(0) as u64;
                let hi = (((v as i64 + 2) * extent).min(w) - 1) as u64;
                (lo, hi)
            })
            .collect();
        let mut out = Vec::new();
        let mut vec: Vec<u64> = ranges.iter().map(|r| r.0).collect();
        'scan: loop {
            out.push(self.cell_linear(&vec));
            let mut d = 0;
            loop {
                if d == self.dimension {
                    break 'scan;
                }
                vec[d] += 1;
                if vec[d] <= ranges[d].1 {
                    break;
                }
                vec[d] = ranges[d].0;
                d += 1;
            }
        }
        out.sort_unstable();
        out
    }

    /// Canonical small cover of a ball: disjoint cubes at the unique level
    /// with `2^(k-1) ≤ 2r < 2^k` (clamped into `[finest_level, 0]`), keeping
    /// the cubes that meet the ball. At most `2^n` cubes when unclamped.
    pub fn covering_cubes_for_ball(&self, ball: &Ball) -> Result<BallCover> {
        self.validate_ball(ball)?;
        let natural = ((2.0 * ball.radius).log2().floor() as i32) + 1;
        let clamped = natural > 0;
        let level = natural.clamp(self.finest_level, 0);
        let side = (level as f64).exp2();
        let per_dim = 1u64 << (-level) as u32;
        let ranges: Vec<(u64, u64)> = ball
            .center
            .iter()
            .map(|&c| {
                let lo = (((c - ball.radius) / side).floor() as i64).clamp(0, per_dim as i64 - 1) as u64;
                let hi = (((c + ball.radius) / side).floor() as i64).clamp(0, per_dim as i64 - 1) as u64;
                (lo, hi)
            })
            .collect();
        let mut cubes = Vec::new();
        let mut vec: Vec<u64> = ranges.iter().map(|r| r.0).collect();
        'scan: loop {
            // squared distance from the ball center to the closed cube
            let dist2: f64 = vec
                .iter()
                .zip(&ball.center)
                .map(|(&v, &c)| {
                    let lo = v as f64 * side;
                    let hi = (v + 1) as f64 * side;
                    let d = if c < lo {
                        lo - c
                    } else if c > hi {
                        c - hi
                    } else {
                        0.0
                    };
                    d * d
                })
                .sum();
            if dist2 < ball.radius * ball.radius {
                cubes.push(CubeId::new(level, vec.iter().map(|&v| v as u32).collect()));
            }
            let mut d = 0;
            loop {
                if d == self.dimension {
                    break 'scan;
                }
                vec[d] += 1;
                if vec[d] <= ranges[d].1 {
                    break;
                }
                vec[d] = ranges[d].0;
                d += 1;
            }
        }
        Ok(BallCover {
            level,
            cubes,
            clamped,
        })
    }
}

/// Dense enumeration of all lattice cubes (coarse → fine, row-major within a
/// level) with O(1) cube ↔ slot translation. Backs table gauges and per-cube
/// caches.
#[derive(Debug, Clone)]
pub struct CubeIndexer {
    config: LatticeConfig,
    /// Slot offset of each level; entry `d` corresponds to level `-d`.
    offsets: Vec<u64>,
    total: u64,
}

impl CubeIndexer {
    pub fn new(config: LatticeConfig) -> Self {
        let mut offsets = Vec::new();
        let mut total = 0u64;
        for depth in 0..=(-config.finest_level) {
            offsets.push(total);
            total += config.cubes_at_level(-depth);
        }
        CubeIndexer {
            config,
            offsets,
            total,
        }
    }

    pub fn len(&self) -> usize {
        self.total as usize
    }

    pub fn is_empty(&self) -> bool {
        self.total == 0
    }

    pub fn config(&self) -> LatticeConfig {
        self.config
    }

    pub fn slot(&self, cube: &CubeId) -> usize {
        let depth = (-cube.level) as usize;
        let per_dim = 1u64 << depth;
        let mut lin = 0u64;
        for d in (0..self.config.dimension).rev() {
            lin = lin * per_dim + cube.index[d] as u64;
        }
        (self.offsets[depth] + lin) as usize
    }

    pub fn cube(&self, slot: usize) -> CubeId {
        let slot = slot as u64;
        let depth = match self.offsets.binary_search(&slot) {
            Ok(d) => d,
            Err(d) => d - 1,
        };
        let per_dim = 1u64 << depth;
        let mut rest = slot - self.offsets[depth];
        let index = (0..self.config.dimension)
            .map(|_| {
                let v = (rest % per_dim) as u32;
                rest /= per_dim;
                v
            })
            .collect();
        CubeId::new(-(depth as i32), index)
    }
}
