//! Maximal operators against a monotone set function: the dyadic operator
//! (sup of averages over the ancestor chain), centered and uncentered ball
//! operators over a discretized ball family, the sharp operator built from
//! best-constant deviations, and the induced BMO norm.

use serde::{Deserialize, Serialize};

use crate::choquet::{average, average_over_set, choquet_integral_within};
use crate::gauge::SetFunction;
use crate::grid::{GridFunction, GridSet};
use crate::lattice::{Ball, CubeId, CubeIndexer, LatticeConfig};

/// Output of a maximal operator: one value per finest cell plus, per cell, a
/// witness (cube or ball) whose average attains the value exactly. Ties go to
/// the first witness in scan order (finest cube / smallest ball).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MaximalResult {
    pub values: GridFunction,
    pub witnesses: Vec<MaximalWitness>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MaximalWitness {
    Cube(CubeId),
    Ball(Ball),
}

/// Average of `|f|` over every lattice cube, slot-indexed.
pub fn cube_averages(f: &GridFunction, h: &dyn SetFunction) -> (CubeIndexer, Vec<f64>) {
    assert_eq!(f.config(), h.config(), "operand config mismatch");
    let config = f.config();
    let f_abs = f.abs();
    let indexer = CubeIndexer::new(config);
    let mut avgs = vec![0.0f64; indexer.len()];
    for cube in config.cubes() {
        avgs[indexer.slot(&cube)] = average(&f_abs, h, &cube);
    }
    (indexer, avgs)
}

/// Dyadic maximal function: per cell, the max of `avg(|f|, Q')` over the
/// ancestor chain of the cell.
pub fn dyadic_maximal(f: &GridFunction, h: &dyn SetFunction) -> MaximalResult {
    let config = f.config();
    let (indexer, avgs) = cube_averages(f, h);
    max_over_ancestors(config, &indexer, &avgs, &config.root())
}

fn max_over_ancestors(
    config: LatticeConfig,
    indexer: &CubeIndexer,
    per_cube: &[f64],
    q0: &CubeId,
) -> MaximalResult {
    let mut values = vec![0.0f64; config.cell_count() as usize];
    let mut witnesses = Vec::with_capacity(values.len());
    for cell in 0..config.cell_count() {
        let leaf = config.cell_ancestor(cell, config.finest_level);
        if !q0.contains(&leaf) {
            witnesses.push(MaximalWitness::Cube(leaf));
            continue;
        }
        let mut best = f64::NEG_INFINITY;
        let mut witness = leaf.clone();
        for anc in config.ancestors_inclusive(&leaf) {
            if !q0.contains(&anc) {
                break;
            }
            let v = per_cube[indexer.slot(&anc)];
            if v > best {
                best = v;
                witness = anc;
            }
        }
        values[cell as usize] = best;
        witnesses.push(MaximalWitness::Cube(witness));
    }
    MaximalResult {
        values: GridFunction::from_values(config, values).expect("finite maxima"),
        witnesses,
    }
}

/// The discretized ball family: centers at every cell center, radii
/// `j · 2^finest_level` for `j = 1 .. ceil(√n · 2^(-finest_level))`. A lower
/// approximation of the continuum family of all balls.
pub fn ball_family(config: LatticeConfig) -> Vec<Ball> {
    let side = config.cell_side();
    let diameter = (config.dimension as f64).sqrt();
    let j_max = (diameter / side).ceil() as u64;
    let mut out = Vec::new();
    for cell in 0..config.cell_count() {
        let center = config.cell_center(cell);
        for j in 1..=j_max {
            out.push(Ball {
                center: center.clone(),
                radius: j as f64 * side,
            });
        }
    }
    out
}

/// Ball maximal function over the discretized family. `centered` restricts to
/// balls centered at the cell's own center; otherwise any family ball whose
/// discretization contains the cell competes.
pub fn ball_maximal(f: &GridFunction, h: &dyn SetFunction, centered: bool) -> MaximalResult {
    assert_eq!(f.config(), h.config(), "operand config mismatch");
    let config = f.config();
    let f_abs = f.abs();
    let side = config.cell_side();
    let cell_count = config.cell_count() as usize;
    let mut values = vec![0.0f64; cell_count];
    let mut witnesses: Vec<MaximalWitness> = (0..config.cell_count())
        .map(|cell| {
            MaximalWitness::Ball(Ball {
                center: config.cell_center(cell),
                radius: side,
            })
        })
        .collect();
    let diameter = (config.dimension as f64).sqrt();
    let j_max = (diameter / side).ceil() as u64;
    for home in 0..config.cell_count() {
        let center = config.cell_center(home);
        for j in 1..=j_max {
            let ball = Ball {
                center: center.clone(),
                radius: j as f64 * side,
            };
            let members = config.ball_cells(&ball).expect("family ball is valid");
            let region = GridSet::from_cells(config, &members).expect("cells in window");
            let avg = average_over_set(&f_abs, h, &region);
            if centered {
                if avg > values[home as usize] {
                    values[home as usize] = avg;
                    witnesses[home as usize] = MaximalWitness::Ball(ball);
                }
            } else {
                for &cell in &members {
                    if avg > values[cell as usize] {
                        values[cell as usize] = avg;
                        witnesses[cell as usize] = MaximalWitness::Ball(ball.clone());
                    }
                }
            }
        }
    }
    MaximalResult {
        values: GridFunction::from_values(config, values).expect("finite averages"),
        witnesses,
    }
}

/// Best constant for the Choquet mean deviation on a cube: the smallest `c`
/// minimizing `avg(|f - c|, Q', H)`, together with the minimum. Null cubes
/// return `(0, 0)` by the averaging convention.
///
/// The objective is convex piecewise-linear in `c`; its kinks sit at the
/// distinct values of `f` on the cube and at pairwise midpoints (a midpoint
/// kink appears when the upward and downward level sets swap roles), so the
/// candidate scan is exact. Large candidate sets use a convexity-guided
/// binary search instead of a full sweep.
pub fn best_constant(f: &GridFunction, h: &dyn SetFunction, cube: &CubeId) -> (f64, f64) {
    assert_eq!(f.config(), h.config(), "operand config mismatch");
    let config = f.config();
    let region = GridSet::cube(config, cube).expect("cube in window");
    let denom = h.eval_within(cube, &region);
    if denom == 0.0 || denom == f64::INFINITY {
        return (0.0, 0.0);
    }
    let vals = f.distinct_values(&region);
    if vals.is_empty() {
        // only +∞ values on a non-null cube: every constant fails equally
        return (0.0, f64::INFINITY);
    }
    let mut candidates = Vec::with_capacity(vals.len() * (vals.len() + 1) / 2);
    candidates.extend_from_slice(&vals);
    for i in 0..vals.len() {
        for j in (i + 1)..vals.len() {
            candidates.push(0.5 * (vals[i] + vals[j]));
        }
    }
    candidates.sort_by(f64::total_cmp);
    candidates.dedup();
    let objective = |c: f64| -> f64 {
        let dev = f.map(|v| (v - c).abs()).expect("|f-c| has no NaN");
        choquet_integral_within(&dev, h, &region, cube) / denom
    };
    if candidates.len() <= 32 {
        let mut best_c = candidates[0];
        let mut best_g = objective(best_c);
        for &c in &candidates[1..] {
            let g = objective(c);
            if g < best_g {
                best_g = g;
                best_c = c;
            }
        }
        return (best_c, best_g);
    }
    // convexity: forward differences change sign at most once; find the first
    // non-negative one, i.e. the smallest minimizer
    let mut memo: Vec<Option<f64>> = vec![None; candidates.len()];
    let eval = |i: usize, memo: &mut Vec<Option<f64>>| -> f64 {
        if let Some(v) = memo[i] {
            return v;
        }
        let v = objective(candidates[i]);
        memo[i] = Some(v);
        v
    };
    let mut lo = 0usize;
    let mut hi = candidates.len() - 1; // search smallest i with g(i+1) ≥ g(i)
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if eval(mid + 1, &mut memo) >= eval(mid, &mut memo) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    (candidates[lo], eval(lo, &mut memo))
}

/// Minimum Choquet mean deviation per cube, slot-indexed.
pub fn cube_deviations(f: &GridFunction, h: &dyn SetFunction) -> (CubeIndexer, Vec<f64>) {
    let config = f.config();
    let indexer = CubeIndexer::new(config);
    let mut devs = vec![0.0f64; indexer.len()];
    for cube in config.cubes() {
        devs[indexer.slot(&cube)] = best_constant(f, h, &cube).1;
    }
    (indexer, devs)
}

/// Sharp maximal function on the subtree of `q0`: per cell, the max of
/// best-constant deviations over containing cubes inside `q0`. Cells outside
/// `q0` report 0.
pub fn sharp_maximal(f: &GridFunction, h: &dyn SetFunction, q0: &CubeId) -> MaximalResult {
    let (indexer, devs) = cube_deviations(f, h);
    max_over_ancestors(f.config(), &indexer, &devs, q0)
}

/// BMO norm: the sup over cubes inside `q0` of the best-constant deviation
/// (equivalently the sup of the sharp maximal function over `q0`).
pub fn bmo_norm(f: &GridFunction, h: &dyn SetFunction, q0: &CubeId) -> f64 {
    let config = f.config();
    let mut best = 0.0f64;
    for cube in config.cubes() {
        if !q0.contains(&cube) {
            continue;
        }
        let dev = best_constant(f, h, &cube).1;
        if dev > best {
            best = dev;
        }
    }
    best
}
