//! Stopping-time machinery: greedy packing selection with per-ancestor
//! budgets, the Calderón–Zygmund decomposition at a height above the root
//! average, and maximal dyadic partitions of grid-open sets.

use serde::{Deserialize, Serialize};

use crate::choquet::{average, choquet_integral_within};
use crate::error::{Error, Result};
use crate::gauge::{CubeGauge, SetFunction};
use crate::grid::{GridFunction, GridSet};
use crate::lattice::{CubeId, CubeIndexer, LatticeConfig};

/// Budget multiplier for the packing selection: the sum of selected gauge
/// values inside any cube may not exceed `PACKING_BUDGET` times that cube's
/// gauge value.
pub const PACKING_BUDGET: f64 = 2.0;

/// A cube dropped by the packing scan together with the ancestor whose budget
/// it would have overflowed.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DroppedCube {
    pub cube: CubeId,
    pub absorbed_by: CubeId,
}

/// Result of the greedy packing scan.
///
/// `selected` is kept in admission order; re-summing it in that order
/// reproduces the scan's budget accumulators bitwise, so the budget invariant
/// can be re-checked with no tolerance. `ancestors` is the inclusion-maximal
/// (hence pairwise disjoint) family of budget witnesses; together with
/// `selected` it covers the input family.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PackingSelection {
    pub selected: Vec<CubeId>,
    pub ancestors: Vec<CubeId>,
    pub dropped: Vec<DroppedCube>,
}

/// Greedy packing selection: scan the family coarsest-first (level
/// descending, then index lexicographic), admitting a cube only if every
/// ancestor's budget `Σ selected inside ≤ 2·gauge(ancestor)` survives the
/// addition. A rejected cube records the smallest ancestor whose budget it
/// breaks.
pub fn packing_select(
    config: LatticeConfig,
    family: &[CubeId],
    gauge: &CubeGauge,
) -> Result<PackingSelection> {
    for cube in family {
        config.validate_cube(cube)?;
    }
    for (i, a) in family.iter().enumerate() {
        for b in family.iter().skip(i + 1) {
            if a.overlaps(b) {
                return Err(Error::OverlappingFamily(a.clone(), b.clone()));
            }
        }
    }
    let mut order: Vec<&CubeId> = family.iter().collect();
    order.sort_by(|a, b| b.level.cmp(&a.level).then_with(|| a.index.cmp(&b.index)));
    let indexer = CubeIndexer::new(config);
    let mut acc = vec![0.0f64; indexer.len()];
    let mut selected = Vec::new();
    let mut dropped = Vec::new();
    let mut witnesses: Vec<CubeId> = Vec::new();
    for cand in order {
        let weight = gauge.eval(cand);
        let chain = config.ancestors_inclusive(cand);
        let violation = chain
            .iter()
            .find(|anc| acc[indexer.slot(anc)] + weight > PACKING_BUDGET * gauge.eval(anc));
        match violation {
            None => {
                for anc in &chain {
                    acc[indexer.slot(anc)] += weight;
                }
                selected.push(cand.clone());
            }
            Some(witness) => {
                if !witnesses.contains(witness) {
                    witnesses.push(witness.clone());
                }
                dropped.push(DroppedCube {
                    cube: cand.clone(),
                    absorbed_by: witness.clone(),
                });
            }
        }
    }
    let mut ancestors: Vec<CubeId> = witnesses
        .iter()
        .filter(|w| !witnesses.iter().any(|o| o != *w && o.contains(w)))
        .cloned()
        .collect();
    ancestors.sort_by(|a, b| b.level.cmp(&a.level).then_with(|| a.index.cmp(&b.index)));
    Ok(PackingSelection {
        selected,
        ancestors,
        dropped,
    })
}

/// Certificate block for a packing selection, recomputed from scratch.
#[derive(Debug, Clone, Serialize)]
pub struct PackingCertificate {
    /// every input cube sits inside a selected cube or a witness ancestor
    pub covers_input: bool,
    /// first lattice cube whose budget `Σ selected inside ≤ 2·gauge` fails
    pub budget_violation: Option<CubeId>,
    /// witness ancestors whose own gauge exceeds their selected mass
    pub undercharged_ancestors: Vec<CubeId>,
    pub ancestors_disjoint: bool,
}

impl PackingCertificate {
    pub fn pass(&self) -> bool {
        self.covers_input
            && self.budget_violation.is_none()
            && self.undercharged_ancestors.is_empty()
            && self.ancestors_disjoint
    }
}

impl PackingSelection {
    /// Re-checks the three structural invariants against a gauge. The budget
    /// re-summation walks `selected` in stored order, reproducing the scan's
    /// accumulators exactly, so the budget check needs no tolerance; the
    /// ancestor lower bound gets a relative 1e-12 slack (its two sides are
    /// computed by different foldings).
    pub fn certify(&self, config: LatticeConfig, gauge: &CubeGauge) -> PackingCertificate {
        let covers_input = self.dropped.iter().all(|d| {
            self.ancestors.iter().any(|a| a.contains(&d.cube))
                || self.selected.iter().any(|s| s.contains(&d.cube))
        });
        let mut budget_violation = None;
        'outer: for cube in config.cubes() {
            let mut sum = 0.0;
            for s in &self.selected {
                if cube.contains(s) {
                    sum += gauge.eval(s);
                }
            }
            if sum > PACKING_BUDGET * gauge.eval(&cube) {
                budget_violation = Some(cube);
                break 'outer;
            }
        }
        let mut undercharged = Vec::new();
        for anc in &self.ancestors {
            let mut sum = 0.0;
            for s in &self.selected {
                if anc.contains(s) {
                    sum += gauge.eval(s);
                }
            }
            let own = gauge.eval(anc);
            if own > sum * (1.0 + 1e-12) + 1e-300 {
                undercharged.push(anc.clone());
            }
        }
        let mut disjoint = true;
        for (i, a) in self.ancestors.iter().enumerate() {
            for b in self.ancestors.iter().skip(i + 1) {
                if a.overlaps(b) {
                    disjoint = false;
                }
            }
        }
        PackingCertificate {
            covers_input,
            budget_violation,
            undercharged_ancestors: undercharged,
            ancestors_disjoint: disjoint,
        }
    }
}

/// Both sides of the packing-integral inequality
/// `Σ_j ∫_(Q_j) f dH ≤ 2 ∫_(∪_j Q_j) f dH` for a non-overlapping cube family.
#[derive(Debug, Clone, Serialize)]
pub struct PackingIntegralReport {
    pub lhs: f64,
    pub rhs: f64,
    pub budget: f64,
    pub pass: bool,
}

pub fn packing_integral_check(
    cubes: &[CubeId],
    f: &GridFunction,
    h: &dyn SetFunction,
) -> PackingIntegralReport {
    let config = f.config();
    let mut lhs = 0.0;
    let mut union = GridSet::empty(config);
    for cube in cubes {
        let region = GridSet::cube(config, cube).expect("cube in window");
        lhs += choquet_integral_within(f, h, &region, cube);
        union = union.union(&region);
    }
    let rhs = crate::choquet::choquet_integral(f, h, &union);
    let pass = lhs <= PACKING_BUDGET * rhs + 1e-9;
    PackingIntegralReport {
        lhs,
        rhs,
        budget: PACKING_BUDGET,
        pass,
    }
}

/// Largest parent/child value ratio over the lattice (children with value 0
/// are skipped), with an attaining pair. This is the dyadic doubling factor;
/// it also bounds how far a stopping cube's average can overshoot its height.
pub fn dyadic_doubling(h: &dyn SetFunction) -> (f64, Option<(CubeId, CubeId)>) {
    let config = h.config();
    let mut best = 1.0f64;
    let mut witness = None;
    for cube in config.cubes() {
        if cube.level == config.finest_level {
            continue;
        }
        let parent_region = GridSet::cube(config, &cube).expect("cube in window");
        let parent_value = h.eval_within(&cube, &parent_region);
        for child in config.children(&cube).expect("not finest") {
            let child_region = GridSet::cube(config, &child).expect("cube in window");
            let child_value = h.eval_within(&child, &child_region);
            if child_value == 0.0 {
                continue;
            }
            let ratio = parent_value / child_value;
            if ratio > best {
                best = ratio;
                witness = Some((cube.clone(), child.clone()));
            }
        }
    }
    (best, witness)
}

/// Stopping-cube decomposition of `|f|` at height `Λ`.
#[derive(Debug, Clone, Serialize)]
pub struct CZDecomposition {
    pub cubes: Vec<CubeId>,
    pub height: f64,
    /// dyadic doubling factor of the set function; cube averages stay within
    /// `upper_factor · height`
    pub upper_factor: f64,
    /// average of |f| on each emitted cube (parallel to `cubes`)
    pub cube_averages: Vec<f64>,
    /// average of |f| on each emitted cube's parent (parallel to `cubes`)
    pub parent_averages: Vec<f64>,
    /// cells outside the emitted cubes where |f| still exceeds the height
    pub residual_violations: Vec<u64>,
    /// set-function value of the violation set; 0 means the overshoot lives
    /// on a null set
    pub residual_content: f64,
}

/// Top-down stopping time from `q0`: descend while the average of `|f|` stays
/// at or below `height`, emit the first cube whose average exceeds it.
/// Requires `height ≥ avg(|f|, q0)`, so `q0` itself is never emitted.
pub fn cz_decompose(
    f: &GridFunction,
    h: &dyn SetFunction,
    q0: &CubeId,
    height: f64,
) -> Result<CZDecomposition> {
    assert_eq!(f.config(), h.config(), "operand config mismatch");
    let config = f.config();
    config.validate_cube(q0)?;
    if !height.is_finite() || height <= 0.0 {
        return Err(Error::InvalidConfig(format!(
            "decomposition height must be positive and finite, got {height}"
        )));
    }
    let f_abs = f.abs();
    let root_avg = average(&f_abs, h, q0);
    if height < root_avg {
        return Err(Error::HeightBelowRootAverage {
            height,
            average: root_avg,
        });
    }
    let mut cubes = Vec::new();
    let mut cube_avgs = Vec::new();
    let mut parent_avgs = Vec::new();
    // DFS in child order keeps the output deterministic and coarse-first
    let mut stack = vec![(q0.clone(), root_avg)];
    while let Some((cube, avg)) = stack.pop() {
        if avg > height {
            let parent = config.parent(&cube).expect("root average is below height");
            cubes.push(cube.clone());
            cube_avgs.push(avg);
            parent_avgs.push(average(&f_abs, h, &parent));
            continue;
        }
        if cube.level > config.finest_level {
            let children = config.children(&cube).expect("not finest");
            for child in children.into_iter().rev() {
                let child_avg = average(&f_abs, h, &child);
                stack.push((child, child_avg));
            }
        }
    }
    let mut covered = GridSet::empty(config);
    for cube in &cubes {
        covered = covered.union(&GridSet::cube(config, cube).expect("cube in window"));
    }
    let mut violations = Vec::new();
    let mut violation_set = GridSet::empty(config);
    for cell in config.cube_cells(q0) {
        if !covered.contains(cell) && f_abs.value(cell) > height {
            violations.push(cell);
            violation_set.insert(cell);
        }
    }
    let residual_content = if violations.is_empty() {
        0.0
    } else {
        h.eval_within(q0, &violation_set)
    };
    let (upper_factor, _) = dyadic_doubling(h);
    Ok(CZDecomposition {
        cubes,
        height,
        upper_factor,
        cube_averages: cube_avgs,
        parent_averages: parent_avgs,
        residual_violations: violations,
        residual_content,
    })
}

/// The maximal dyadic cubes wholly inside `u`: non-overlapping, union exactly
/// `u`, each cube's parent not inside `u`. Depth-first, coarse-first order.
pub fn maximal_dyadic_partition(u: &GridSet) -> Vec<CubeId> {
    let config = u.config();
    let mut out = Vec::new();
    let mut stack = vec![config.root()];
    while let Some(cube) = stack.pop() {
        let region = GridSet::cube(config, &cube).expect("cube in window");
        if region.is_subset(u) {
            out.push(cube);
            continue;
        }
        if cube.level > config.finest_level && !region.intersection(u).is_empty() {
            let children = config.children(&cube).expect("not finest");
            for child in children.into_iter().rev() {
                stack.push(child);
            }
        }
    }
    out
}
