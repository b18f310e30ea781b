//! Dyadic Hausdorff contents, Choquet integrals, capacitary maximal
//! operators, and stopping-time decompositions on finite dyadic grids.
//!
//! Everything lives on a finite window: the unit cube `[0,1)^n` subdivided
//! down to a finest dyadic level. Set functions (contents and capacities)
//! price subsets of the finest cells; the Choquet integral, maximal
//! operators, packing selections, and Calderón–Zygmund stopping times are
//! built on top of them. An experiment layer re-derives the expected
//! inequality constants (weak and strong maximal bounds, packing budgets,
//! content–capacity comparisons, exponential oscillation decay) from runs on
//! sampled data and reports pass/fail verdicts with machine-readable
//! witnesses.

pub mod choquet;
pub mod cli;
pub mod decomp;
pub mod equivalence;
pub mod error;
pub mod experiments;
pub mod gauge;
pub mod grid;
pub mod lattice;
pub mod maximal;
pub mod sampling;

pub use choquet::{
    average, average_over_set, choquet_integral, choquet_integral_within, handle_from_spec,
    lp_norm, ContentHandle,
};
pub use decomp::{
    cz_decompose, dyadic_doubling, maximal_dyadic_partition, packing_integral_check,
    packing_select, CZDecomposition, DroppedCube, PackingCertificate, PackingIntegralReport,
    PackingSelection, PACKING_BUDGET,
};
pub use equivalence::{
    doubling_constants, equivalence_check, induced_content, induced_cube_gauge,
    packing_condition_test, DoublingReport, EquivalenceReport, EquivalenceSample,
    PackingConditionReport, PackingViolation, TheoremConstants, EQUIVALENCE_LOWER,
    PACKING_INTEGRAL_FACTOR, WEAK_TYPE_BOUND,
};
pub use error::{Error, Result};
pub use experiments::{
    differentiation_experiment, jn_experiment, maximal_comparison_experiment, standard_battery,
    strong_type_experiment, weak_type_experiment, ExperimentReport, Measurement,
};
pub use gauge::{
    check_monotone, CapacitySpec, CubeGauge, Density, Gauge, MeasurePowerCapacity, MonotoneReport,
    SetFunction,
};
pub use grid::{GridFunction, GridSet};
pub use lattice::{Ball, BallCover, CubeId, CubeIndexer, LatticeConfig};
pub use maximal::{
    ball_family, ball_maximal, best_constant, bmo_norm, cube_averages, cube_deviations,
    dyadic_maximal, sharp_maximal, MaximalResult, MaximalWitness,
};
