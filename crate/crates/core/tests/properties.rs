mod common;

macro_rules! property {
    ($($name:ident),* $(,)?) => {$(
        #[test]
        fn $name() {
            common::$name(common::CASES).unwrap();
        }
    )*};
}

property!(
    task_csv_round_trip,
    validate_is_total,
    metric_ranges,
    roi_bie_identity,
    tdi_normalization_is_monotone,
    permutation_invariance,
    uniform_weights_give_plain_mean,
    ces_monotonicity,
    mtr_counts_resilient_records,
    simulator_determinism_and_independence,
    anova_matches_brute_force,
    f_equals_t_squared,
    test_statistics_are_probabilities,
    pearson_symmetry_and_affine_invariance,
    cohens_d_scale_invariance,
    wilson_width_shrinks,
    overall_within_domain_bounds,
    aggregate_csv_round_trip,
    radar_preserves_ranking,
);
