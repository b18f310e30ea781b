//! Randomized invariants over small windows: submodularity and monotonicity
//! of contents, Choquet functional laws, maximal-operator bounds, selection
//! and decomposition certificates, and serde round trips.

use capacitary::{
    average, best_constant, choquet_integral, choquet_integral_within, cz_decompose,
    dyadic_maximal, induced_content, packing_select, sampling, CapacitySpec, ContentHandle,
    GridFunction, GridSet, LatticeConfig, SetFunction,
};
use proptest::prelude::*;
use std::collections::BTreeSet;

const INEQ_TOL: f64 = 1e-9;

fn config_strategy() -> impl Strategy<Value = LatticeConfig> {
    prop_oneof![
        (-5..=-1i32).prop_map(|l| LatticeConfig::new(1, l).unwrap()),
        (-2..=-1i32).prop_map(|l| LatticeConfig::new(2, l).unwrap()),
    ]
}

fn spec_strategy() -> impl Strategy<Value = CapacitySpec> {
    prop_oneof![
        (0.25f64..=2.0).prop_map(|beta| CapacitySpec::Power { beta }),
        (0.25f64..=2.0).prop_map(|beta| CapacitySpec::Log { beta }),
    ]
}

fn set_for(config: LatticeConfig) -> impl Strategy<Value = GridSet> {
    prop::collection::vec(any::<bool>(), config.cell_count() as usize).prop_map(move |bits| {
        let cells: Vec<u64> = bits
            .iter()
            .enumerate()
            .filter(|(_, b)| **b)
            .map(|(i, _)| i as u64)
            .collect();
        GridSet::from_cells(config, &cells).unwrap()
    })
}

fn function_for(config: LatticeConfig) -> impl Strategy<Value = GridFunction> {
    prop::collection::vec(0u8..=8, config.cell_count() as usize).prop_map(move |quarters| {
        GridFunction::from_values(config, quarters.iter().map(|q| *q as f64 * 0.25).collect())
            .unwrap()
    })
}

fn handle_for(config: LatticeConfig, spec: &CapacitySpec) -> ContentHandle {
    ContentHandle::new(config, spec.build_cube_gauge(config).unwrap()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn content_monotone_and_strongly_subadditive(
        (config, a, b) in config_strategy()
            .prop_flat_map(|c| (Just(c), set_for(c), set_for(c))),
        spec in spec_strategy(),
    ) {
        let h = handle_for(config, &spec);
        let union = a.union(&b);
        let meet = a.intersection(&b);
        prop_assert!(h.content(&a) <= h.content(&union) + 1e-12);
        prop_assert!(
            h.content(&union) + h.content(&meet) <= h.content(&a) + h.content(&b) + INEQ_TOL
        );
        prop_assert_eq!(h.content(&GridSet::empty(config)), 0.0);
        // whole-window relativization changes nothing
        prop_assert_eq!(h.content_within(&config.root(), &a), h.content(&a));
    }

    #[test]
    fn choquet_functional_laws(
        (config, f, g) in config_strategy()
            .prop_flat_map(|c| (Just(c), function_for(c), function_for(c))),
        spec in spec_strategy(),
        scale in 0.0f64..4.0,
    ) {
        let h = handle_for(config, &spec);
        let full = GridSet::full(config);
        let int_f = choquet_integral(&f, &h, &full);
        let int_g = choquet_integral(&g, &h, &full);
        let fg = GridFunction::from_values(
            config,
            (0..config.cell_count()).map(|c| f.value(c) + g.value(c)).collect(),
        ).unwrap();
        let int_fg = choquet_integral(&fg, &h, &full);
        // sublinearity holds because the content is submodular
        prop_assert!(int_fg <= int_f + int_g + INEQ_TOL);
        // monotone in the integrand: f ≤ f + g pointwise
        prop_assert!(int_f <= int_fg + 1e-12);
        // positive homogeneity, relative tolerance
        let scaled = f.map(|v| v * scale).unwrap();
        let int_scaled = choquet_integral(&scaled, &h, &full);
        let expect = scale * int_f;
        prop_assert!((int_scaled - expect).abs() <= 1e-12 * expect.abs().max(1.0));
    }

    #[test]
    fn dyadic_maximal_dominates_contracts_and_is_quasi_sublinear(
        (config, f, g) in config_strategy()
            .prop_flat_map(|c| (Just(c), function_for(c), function_for(c))),
        beta in 0.25f64..=1.5,
    ) {
        let h = ContentHandle::power(config, beta).unwrap();
        let mf = dyadic_maximal(&f, &h);
        let mg = dyadic_maximal(&g, &h);
        let fg = GridFunction::from_values(
            config,
            (0..config.cell_count()).map(|c| f.value(c) + g.value(c)).collect(),
        ).unwrap();
        let mfg = dyadic_maximal(&fg, &h);
        let sup_f = f.values().iter().fold(0.0f64, |a, v| a.max(v.abs()));
        for cell in 0..config.cell_count() {
            // the cell itself is among the probed cubes, so M f ≥ |f|
            prop_assert!(mf.values.value(cell) >= f.value(cell).abs() - 1e-12);
            prop_assert!(mf.values.value(cell) <= sup_f + 1e-12);
            prop_assert!(
                mfg.values.value(cell)
                    <= 2.0 * (mf.values.value(cell) + mg.values.value(cell)) + INEQ_TOL
            );
        }
    }

    #[test]
    fn best_constant_beats_every_probe(
        (config, f) in config_strategy()
            .prop_flat_map(|c| (Just(c), function_for(c))),
        spec in spec_strategy(),
    ) {
        let h = handle_for(config, &spec);
        let root = config.root();
        let region = GridSet::full(config);
        let denom = h.eval_within(&root, &region);
        prop_assume!(denom > 0.0 && denom.is_finite());
        let (minimizer, minimum) = best_constant(&f, &h, &root);
        let objective = |c: f64| {
            let dev = f.map(|v| (v - c).abs()).unwrap();
            choquet_integral_within(&dev, &h, &region, &root) / denom
        };
        prop_assert_eq!(objective(minimizer), minimum);
        let mut probes = f.distinct_values(&region);
        probes.push(average(&f, &h, &root));
        for c in probes {
            prop_assert!(minimum <= objective(c) + 1e-12);
        }
    }

    #[test]
    fn packing_selection_certifies_and_is_idempotent(
        config in config_strategy(),
        spec in spec_strategy(),
        seed in any::<u64>(),
    ) {
        let gauge = spec.build_cube_gauge(config).unwrap();
        let mut rng = sampling::rng_for(seed);
        let family = sampling::random_antichain(config, &mut rng, 0.6);
        let selection = packing_select(config, &family, &gauge).unwrap();
        prop_assert!(selection.certify(config, &gauge).pass());
        let again = packing_select(config, &selection.selected, &gauge).unwrap();
        let a: BTreeSet<String> = selection.selected.iter().map(|q| q.to_string()).collect();
        let b: BTreeSet<String> = again.selected.iter().map(|q| q.to_string()).collect();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn cz_decomposition_invariants(
        (config, f) in config_strategy()
            .prop_flat_map(|c| (Just(c), function_for(c))),
        spec in spec_strategy(),
        bump in 0.0f64..3.0,
    ) {
        let h = handle_for(config, &spec);
        let root = config.root();
        let root_avg = average(&f.abs(), &h, &root);
        prop_assume!(root_avg > 0.0);
        let height = root_avg * (1.0 + bump);
        let dec = cz_decompose(&f, &h, &root, height).unwrap();
        for i in 0..dec.cubes.len() {
            prop_assert!(dec.cube_averages[i] > height);
            prop_assert!(dec.cube_averages[i] <= dec.upper_factor * height + INEQ_TOL);
            prop_assert!(dec.parent_averages[i] <= height);
        }
        for (i, a) in dec.cubes.iter().enumerate() {
            for b in dec.cubes.iter().skip(i + 1) {
                prop_assert!(!a.overlaps(b));
            }
        }
        prop_assert_eq!(dec.residual_content, 0.0);
        prop_assert!(dec.residual_violations.is_empty());
    }

    #[test]
    fn induced_content_is_exact_on_cubes(
        config in config_strategy(),
        spec in spec_strategy(),
    ) {
        let h = handle_for(config, &spec);
        let induced = induced_content(&h).unwrap();
        for cube in config.cubes() {
            let region = GridSet::cube(config, &cube).unwrap();
            prop_assert_eq!(induced.content(&region), h.eval_within(&cube, &region));
        }
    }

    #[test]
    fn set_algebra_counts_and_serde_round_trips(
        (config, a, b) in config_strategy()
            .prop_flat_map(|c| (Just(c), set_for(c), set_for(c))),
    ) {
        let union = a.union(&b);
        let meet = a.intersection(&b);
        prop_assert_eq!(union.config(), config);
        prop_assert_eq!(a.count() + b.count(), union.count() + meet.count());
        prop_assert!(a.difference(&b).is_subset(&a));
        prop_assert!(meet.is_subset(&union));

        let json = serde_json::to_string(&a).unwrap();
        let back: GridSet = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(&back, &a);
    }

    #[test]
    fn function_and_spec_serde_round_trips(
        (config, f) in config_strategy()
            .prop_flat_map(|c| (Just(c), function_for(c))),
        spec in spec_strategy(),
        t in 0.0f64..2.5,
    ) {
        let json = serde_json::to_string(&f).unwrap();
        let back: GridFunction = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(&back, &f);

        let spec_json = serde_json::to_string(&spec).unwrap();
        let spec_back: CapacitySpec = serde_json::from_str(&spec_json).unwrap();
        prop_assert_eq!(
            serde_json::to_value(&spec_back).unwrap(),
            serde_json::to_value(&spec).unwrap()
        );

        // level sets agree with the pointwise definition
        let full = GridSet::full(config);
        let level = f.strict_super_level_set(t, &full);
        for cell in 0..config.cell_count() {
            prop_assert_eq!(level.contains(cell), f.value(cell) > t);
        }
    }
}
