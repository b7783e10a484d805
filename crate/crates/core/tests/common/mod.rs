//! Strategies, independent oracles and the invariant suite shared by the
//! property tests and the acceptance runner.

#![allow(dead_code)]

use agent_eval::metrics::{self, Usd};
use agent_eval::model::{
    self, canonical_tool_events, task_csv, AgentId, ChainOutcome, CollabScores, ComplexityLevel,
    ComplexityWeights, CostModel, DomainId, ErrorType, Interventions, MetricCell, RaterPanel, RaterScores,
    TaskRecord, ToolEvent, ToolOutcome,
};
use agent_eval::report::{self, datasets, ChartInputs, ChartKind};
use agent_eval::simulator::{self, Mode, SimConfig};
use agent_eval::stats::{self, Sample};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestRng, TestRunner};

pub const CASES: u32 = 1000;

fn runner(cases: u32) -> TestRunner {
    let config = Config { cases, failure_persistence: None, ..Config::default() };
    TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha))
}

fn check<S: Strategy>(cases: u32, s: S, f: impl Fn(S::Value) -> Result<(), TestCaseError>) -> Result<(), String> {
    runner(cases).run(&s, f).map_err(|e| e.to_string())
}

// ---------------------------------------------------------------- strategies

const OUTCOMES: [ToolOutcome; 4] =
    [ToolOutcome::OptimalUse, ToolOutcome::Misuse, ToolOutcome::IgnoredBetterTool, ToolOutcome::NoToolNeeded];
const ERRORS: [ErrorType; 4] =
    [ErrorType::AmbiguousInput, ErrorType::IntermediateStepFailure, ErrorType::ToolApiError, ErrorType::ContextLoss];

fn agent(i: usize) -> AgentId {
    match i {
        0..=3 => AgentId::BUILTIN[i].clone(),
        _ => AgentId::Other("Planner".into()),
    }
}

fn domain(i: usize) -> DomainId {
    match i {
        0..=4 => DomainId::BUILTIN[i].clone(),
        _ => DomainId::Other("Logistics".into()),
    }
}

/// Any record satisfying every record invariant.
pub fn valid_record() -> impl Strategy<Value = TaskRecord> {
    (
        (any::<bool>(), 1u32..=30, (0u32..=30, 0u32..=30, 0u32..=30)),
        (0.0f64..1e6, 0.0f64..1e4, 0.0f64..=1.0),
        (0u64..50_000, 0u64..40),
        prop::collection::vec(0usize..4, 0..12),
        prop::option::of(prop::array::uniform3(prop::array::uniform4(1u8..=10))),
        prop::option::of(prop::array::uniform5(1u8..=5)),
        (any::<bool>(), any::<bool>(), 0usize..4, any::<bool>()),
        0.0f64..1000.0,
        (0usize..5, 0usize..6, 0u32..10_000),
    )
        .prop_map(|(core, timing, res, tools, raters, collab, chain, kpi, ids)| {
            let (success, steps, (a, b, c)) = core;
            let clar = a % (steps + 1);
            let corr = b % (steps - clar + 1);
            let appr = c % (steps - clar - corr + 1);
            let (start, active, wait_share) = timing;
            let (had_error, recovered, et, chain_ok) = chain;
            let events: Vec<ToolEvent> = tools.iter().map(|&i| ToolEvent::new(OUTCOMES[i])).collect();
            let mut r = TaskRecord::new(format!("task-{}", ids.2), agent(ids.0), domain(ids.1));
            r.success = success;
            r.total_steps = steps;
            r.interventions = Interventions::new(clar, corr, appr);
            r.t_start = start;
            r.t_end = start + active;
            r.human_wait = (r.t_end - r.t_start) * wait_share;
            r.tokens = res.0;
            r.api_calls = res.1;
            r.tool_events = canonical_tool_events(events.len(), model::tool_score_sum(&events)).unwrap();
            r.rater_scores = raters.map(|p| RaterPanel::new(p.map(|d| RaterScores::new(d[0], d[1], d[2], d[3]))));
            r.collab_scores = collab.map(|d| CollabScores::new(d[0], d[1], d[2], d[3], d[4]));
            r.chain = ChainOutcome {
                is_multistep: steps >= 2,
                had_initial_error: had_error,
                error_type: had_error.then_some(ERRORS[et]),
                self_recovered: had_error && recovered,
                chain_len: steps,
                complexity_level: ComplexityLevel::for_chain_len(steps),
                chain_success: chain_ok,
            };
            r.kpi_contribution = kpi;
            r
        })
}

pub fn valid_records(max: usize) -> impl Strategy<Value = Vec<TaskRecord>> {
    prop::collection::vec(valid_record(), 1..max)
}

/// Field values anywhere in their declared types, consistent or not.
pub fn arbitrary_record() -> impl Strategy<Value = TaskRecord> {
    (
        (any::<bool>(), any::<u32>(), any::<u32>(), any::<u32>(), any::<u32>()),
        (any::<f64>(), any::<f64>(), any::<f64>(), any::<f64>()),
        prop::option::of(prop::array::uniform3(prop::array::uniform4(any::<u8>()))),
        prop::option::of(prop::array::uniform5(any::<u8>())),
        (any::<bool>(), any::<bool>(), prop::option::of(0usize..4), any::<bool>(), any::<u32>(), 0usize..3, any::<bool>()),
    )
        .prop_map(|(core, floats, raters, collab, chain)| {
            let mut r = TaskRecord::new("x", AgentId::ReAct, DomainId::Legal);
            r.success = core.0;
            r.total_steps = core.1;
            r.interventions = Interventions::new(core.2, core.3, core.4);
            r.t_start = floats.0;
            r.t_end = floats.1;
            r.human_wait = floats.2;
            r.kpi_contribution = floats.3;
            r.rater_scores = raters.map(|p| RaterPanel::new(p.map(|d| RaterScores::new(d[0], d[1], d[2], d[3]))));
            r.collab_scores = collab.map(|d| CollabScores::new(d[0], d[1], d[2], d[3], d[4]));
            r.chain = ChainOutcome {
                is_multistep: chain.0,
                had_initial_error: chain.1,
                error_type: chain.2.map(|i| ERRORS[i]),
                self_recovered: chain.3,
                chain_len: chain.4,
                complexity_level: [ComplexityLevel::L1, ComplexityLevel::L2, ComplexityLevel::L3][chain.5],
                chain_success: chain.6,
            };
            r
        })
}

fn opt_value(lo: f64, hi: f64) -> impl Strategy<Value = Option<f64>> {
    prop_oneof![4 => (lo..=hi).prop_map(Some), 1 => Just(None)]
}

/// A metric cell with every value in its legal range.
pub fn metric_cell(agent: AgentId, domain: DomainId) -> impl Strategy<Value = MetricCell> {
    (
        (1u32..500, 0.0f64..=1.0, 0.0f64..=1.0, 0.0f64..=1.0),
        (0.0f64..1e4, 0.0f64..1e4, 0.0f64..1e4, opt_value(0.01, 10.0)),
        (opt_value(0.0, 1e5), opt_value(0.01, 10.0), opt_value(0.0, 100.0), opt_value(-1.0, 1.0)),
        (opt_value(1.0, 10.0), opt_value(1.0, 10.0), opt_value(0.0, 100.0), opt_value(1.0, 5.0)),
        (0.0f64..1e5, 0.0f64..1e6, 0.0f64..1e5, opt_value(0.0, 500.0)),
    )
        .prop_map(move |(a, b, c, d, e)| {
            let (n, share, aix, aixw) = a;
            let succ = (f64::from(n) * share).round() as u32;
            MetricCell {
                agent: agent.clone(),
                domain: domain.clone(),
                n_tasks: n,
                n_successes: succ,
                gcr: 100.0 * f64::from(succ) / f64::from(n),
                aix,
                aix_weighted: aixw,
                dtt_mean: b.0,
                dtt_median: b.1,
                dtt_p95: b.2,
                dtt_efficiency: b.3,
                ces: c.0,
                ces_efficiency: c.1,
                mtr: c.2,
                tdi_raw: c.3,
                tdi_norm: c.3.map(|t| (t + 1.0) / 2.0),
                oas: d.0,
                oas_weighted: d.1,
                crs: d.2,
                cqi: d.3,
                kpi_value: e.0,
                kpi_monetary: e.1,
                op_cost: e.2,
                bie: e.3,
                roi: e.3.map(|b| 100.0 * (b - 1.0)),
            }
        })
}

fn finite_samples(groups: std::ops::RangeInclusive<usize>, points: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = Vec<Vec<f64>>> {
    prop::collection::vec(prop::collection::vec(-100.0f64..100.0, points), groups)
}

// ------------------------------------------------------------------ oracles

/// Sums of squares by direct double loops.
pub fn anova_oracle(groups: &[Vec<f64>]) -> (f64, f64, f64) {
    let n: usize = groups.iter().map(Vec::len).sum();
    let mut grand = 0.0;
    for g in groups {
        for x in g {
            grand += x;
        }
    }
    grand /= n as f64;
    let (mut ssb, mut ssw) = (0.0, 0.0);
    for g in groups {
        let mut m = 0.0;
        for x in g {
            m += x;
        }
        m /= g.len() as f64;
        ssb += g.len() as f64 * (m - grand).powi(2);
        for x in g {
            ssw += (x - m).powi(2);
        }
    }
    let k = groups.len();
    let f = (ssb / (k - 1) as f64) / (ssw / (n - k) as f64);
    (ssb, ssw, f)
}

/// Pooled two-sample t statistic.
pub fn pooled_t(a: &[f64], b: &[f64]) -> f64 {
    let mean = |v: &[f64]| v.iter().sum::<f64>() / v.len() as f64;
    let (ma, mb) = (mean(a), mean(b));
    let ss = a.iter().map(|x| (x - ma).powi(2)).sum::<f64>() + b.iter().map(|x| (x - mb).powi(2)).sum::<f64>();
    let sp2 = ss / (a.len() + b.len() - 2) as f64;
    (ma - mb) / (sp2 * (1.0 / a.len() as f64 + 1.0 / b.len() as f64)).sqrt()
}

/// Wilson bounds straight from the score-interval formula.
pub fn wilson_closed_form(s: u64, n: u64, z: f64) -> (f64, f64) {
    let (s, n) = (s as f64, n as f64);
    let p = s / n;
    let z2 = z * z;
    let centre = (p + z2 / (2.0 * n)) / (1.0 + z2 / n);
    let half = z / (1.0 + z2 / n) * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt();
    (centre - half, centre + half)
}

fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1.0)
}

// -------------------------------------------------------------- invariants

pub fn task_csv_round_trip(cases: u32) -> Result<(), String> {
    check(cases, valid_records(12), |records| {
        let mut buf = Vec::new();
        task_csv::write_tasks(&mut buf, &records).unwrap();
        let back = task_csv::read_tasks(buf.as_slice()).map_err(|e| TestCaseError::fail(e.to_string()))?;
        prop_assert_eq!(back, records);
        Ok(())
    })
}

pub fn validate_is_total(cases: u32) -> Result<(), String> {
    check(cases, (arbitrary_record(), valid_record()), |(any, good)| {
        let v = model::validate(&any);
        // at most one entry per rule
        let mut rules: Vec<_> = v.iter().map(|x| x.rule).collect();
        rules.sort_by_key(|r| r.as_str());
        rules.dedup();
        prop_assert_eq!(rules.len(), v.len());
        prop_assert!(model::validate(&good).is_empty());
        Ok(())
    })
}

pub fn metric_ranges(cases: u32) -> Result<(), String> {
    check(cases, valid_records(40), |records| {
        let in_range = |v: metrics::Result<f64>, lo: f64, hi: f64| v.map_or(true, |x| (lo..=hi).contains(&x));
        prop_assert!(in_range(metrics::gcr(&records), 0.0, 100.0));
        prop_assert!(in_range(metrics::mtr(&records), 0.0, 100.0));
        prop_assert!(in_range(metrics::crs(&records, 3), 0.0, 100.0));
        prop_assert!(in_range(metrics::aix_mean(&records), 0.0, 1.0));
        prop_assert!(in_range(metrics::aix_weighted(&records, &ComplexityWeights::default()), 0.0, 1.0));
        prop_assert!(in_range(metrics::tdi_records(&records), -1.0, 1.0));
        if let Ok(t) = metrics::tdi_records(&records) {
            prop_assert!(in_range(metrics::tdi_normalize(t), 0.0, 1.0));
        }
        prop_assert!(in_range(metrics::oas_records(&records), 1.0, 10.0));
        prop_assert!(in_range(metrics::oas_weighted_records(&records), 1.0, 10.0));
        prop_assert!(in_range(metrics::cqi_records(&records), 1.0, 5.0));
        Ok(())
    })
}

pub fn roi_bie_identity(cases: u32) -> Result<(), String> {
    check(cases, (0i128..1_000_000_000_000_000, 1i128..1_000_000_000_000_000), |(v, c)| {
        let (v, c) = (Usd::from_nanos(v), Usd::from_nanos(c));
        let bie = metrics::bie(v, c).unwrap();
        prop_assert_eq!(metrics::roi(v, c).unwrap(), 100.0 * (bie - 1.0));
        prop_assert!(rel_close(bie, v.nanos() as f64 / c.nanos() as f64, 1e-15));
        Ok(())
    })
}

pub fn tdi_normalization_is_monotone(cases: u32) -> Result<(), String> {
    check(cases, prop::collection::vec(-1.0f64..=1.0, 2..8), |raw| {
        let norm: Vec<f64> = raw.iter().map(|&t| metrics::tdi_normalize(t).unwrap()).collect();
        for i in 0..raw.len() {
            prop_assert!((0.0..=1.0).contains(&norm[i]));
            prop_assert!((2.0 * norm[i] - 1.0 - raw[i]).abs() < 1e-15);
            for j in 0..raw.len() {
                if raw[i] < raw[j] {
                    prop_assert!(norm[i] < norm[j]);
                }
            }
        }
        let argmax = |v: &[f64]| v.iter().enumerate().fold(0, |b, (i, x)| if *x > v[b] { i } else { b });
        prop_assert_eq!(argmax(&raw), argmax(&norm));
        Ok(())
    })
}

pub fn permutation_invariance(cases: u32) -> Result<(), String> {
    let s = valid_records(30).prop_flat_map(|v| (Just(v.clone()), Just(v).prop_shuffle()));
    check(cases, s, |(records, shuffled)| {
        // one-pass fold oracles
        let (ok, n) = records.iter().fold((0u32, 0u32), |(ok, n), r| (ok + u32::from(r.success), n + 1));
        let gcr = 100.0 * f64::from(ok) / f64::from(n);
        prop_assert_eq!(metrics::gcr(&records).unwrap(), gcr);
        prop_assert_eq!(metrics::gcr(&shuffled).unwrap(), gcr);

        let (qsum, qn) = records.iter().filter_map(|r| r.rater_scores).fold((0u32, 0u32), |(s, n), p| {
            (s + p.raters.iter().flat_map(|r| r.dimensions()).map(u32::from).sum::<u32>(), n + 3)
        });
        if qn > 0 {
            let oas = f64::from(qsum) / 4.0 / f64::from(qn);
            prop_assert!((metrics::oas_records(&records).unwrap() - oas).abs() < 1e-12);
            prop_assert_eq!(metrics::oas_records(&records).unwrap(), metrics::oas_records(&shuffled).unwrap());
        }
        let (csum, cn) = records
            .iter()
            .filter_map(|r| r.collab_scores)
            .fold((0u32, 0u32), |(s, n), c| (s + c.dimensions().iter().map(|&d| u32::from(d)).sum::<u32>(), n + 5));
        if cn > 0 {
            let cqi = f64::from(csum) / f64::from(cn);
            prop_assert_eq!(metrics::cqi_records(&records).unwrap(), cqi);
            prop_assert_eq!(metrics::cqi_records(&shuffled).unwrap(), cqi);
        }
        Ok(())
    })
}

pub fn uniform_weights_give_plain_mean(cases: u32) -> Result<(), String> {
    check(cases, (valid_records(30), 0.01f64..100.0), |(records, c)| {
        let per_task: Vec<f64> = records.iter().map(|r| metrics::task_aix(r).unwrap()).collect();
        let mean = per_task.iter().sum::<f64>() / per_task.len() as f64;
        prop_assert_eq!(metrics::aix_weighted(&records, &ComplexityWeights::UNIFORM).unwrap(), mean);
        let w = ComplexityWeights { simple: c, medium: c, complex: c };
        prop_assert!((metrics::aix_weighted(&records, &w).unwrap() - mean).abs() < 1e-12);
        Ok(())
    })
}

pub fn ces_monotonicity(cases: u32) -> Result<(), String> {
    let s = (valid_records(20), any::<prop::sample::Index>(), 1u64..10_000, 0u64..20, 1.0f64..2000.0);
    check(cases, s, |(mut records, idx, extra_tokens, extra_calls, te)| {
        records[0].success = true;
        let cm = CostModel { token_equivalent: te, ..CostModel::default() };
        let before = metrics::ces(&records, &cm).unwrap();

        let successes: Vec<usize> = (0..records.len()).filter(|&i| records[i].success).collect();
        let mut more = records.clone();
        let i = successes[idx.index(successes.len())];
        more[i].tokens += extra_tokens;
        more[i].api_calls += extra_calls;
        prop_assert!(metrics::ces(&more, &cm).unwrap() >= before);

        let mut free = records[0].clone();
        free.tokens = 0;
        free.api_calls = 0;
        let mut with_free = records.clone();
        with_free.push(free);
        prop_assert!(metrics::ces(&with_free, &cm).unwrap() <= before);

        // failed tasks never contribute
        let mut failed = records[0].clone();
        failed.success = false;
        failed.tokens += 1_000_000;
        let mut with_failed = records.clone();
        with_failed.push(failed);
        prop_assert_eq!(metrics::ces(&with_failed, &cm).unwrap(), before);
        Ok(())
    })
}

pub fn mtr_counts_resilient_records(cases: u32) -> Result<(), String> {
    check(cases, valid_records(40), |records| {
        let multi: Vec<&TaskRecord> = records.iter().filter(|r| r.chain.is_multistep).collect();
        match metrics::mtr(&records) {
            Err(_) => prop_assert!(multi.is_empty()),
            Ok(m) => {
                let counted: Vec<&&TaskRecord> = multi.iter().filter(|r| metrics::is_resilient(r)).collect();
                for r in &counted {
                    prop_assert!(r.chain.had_initial_error && r.chain.self_recovered && r.success);
                }
                let oracle = multi
                    .iter()
                    .filter(|r| r.chain.had_initial_error && r.chain.self_recovered && r.success)
                    .count();
                prop_assert_eq!(counted.len(), oracle);
                prop_assert_eq!(m, 100.0 * oracle as f64 / multi.len() as f64);
            }
        }
        Ok(())
    })
}

fn small_config(seed: u64, counts: &[u32], table_mode: bool) -> SimConfig {
    let mode = if table_mode { Mode::TableCalibrated } else { Mode::AppendixD };
    let mut c = SimConfig { seed, mode, ..SimConfig::default() };
    for (d, n) in c.domains.iter_mut().zip(counts) {
        d.config.task_count = *n;
    }
    c
}

pub fn simulator_determinism_and_independence(cases: u32) -> Result<(), String> {
    let s = (any::<u64>(), prop::collection::vec(1u32..6, 5), any::<bool>(), 0usize..5);
    check(cases, s, |(seed, counts, table_mode, keep)| {
        let config = small_config(seed, &counts, table_mode);
        let a = simulator::generate(&config).unwrap();
        prop_assert_eq!(a.len(), config.total_tasks());
        prop_assert_eq!(&a, &simulator::generate(&config).unwrap());
        for r in &a {
            prop_assert!(model::validate(r).is_empty(), "{:?}", model::validate(r));
            prop_assert!(!r.chain.self_recovered || r.chain.had_initial_error);
        }
        let d = DomainId::BUILTIN[keep].clone();
        let mut alone = config.clone();
        alone.restrict_domains(std::slice::from_ref(&d));
        let slice: Vec<TaskRecord> = a.iter().filter(|r| r.domain == d).cloned().collect();
        prop_assert_eq!(simulator::generate(&alone).unwrap(), slice);
        Ok(())
    })
}

pub fn anova_matches_brute_force(cases: u32) -> Result<(), String> {
    check(cases, finite_samples(2..=5, 2..=10), |groups| {
        let samples: Vec<Sample> = groups.iter().enumerate().map(|(i, g)| Sample::new(format!("g{i}"), g.clone())).collect();
        let t = stats::one_way_anova(&samples).unwrap();
        let (ssb, ssw, f) = anova_oracle(&groups);
        prop_assert!(rel_close(t.ss_between, ssb, 1e-9), "{} vs {}", t.ss_between, ssb);
        prop_assert!(rel_close(t.ss_within, ssw, 1e-9));
        prop_assert!(rel_close(t.ss_total, ssb + ssw, 1e-9));
        prop_assert!(rel_close(t.f_stat, f, 1e-9));
        Ok(())
    })
}

pub fn f_equals_t_squared(cases: u32) -> Result<(), String> {
    check(cases, finite_samples(2..=2, 2..=10), |groups| {
        let samples = [Sample::new("a", groups[0].clone()), Sample::new("b", groups[1].clone())];
        let f = stats::one_way_anova(&samples).unwrap().f_stat;
        let t = pooled_t(&groups[0], &groups[1]);
        prop_assert!(rel_close(f, t * t, 1e-9), "{} vs {}", f, t * t);
        Ok(())
    })
}

pub fn test_statistics_are_probabilities(cases: u32) -> Result<(), String> {
    let table = (2usize..5, 2usize..5).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(1u64..60, c), r));
    check(cases, (finite_samples(2..=4, 2..=8), table), |(groups, table)| {
        let samples: Vec<Sample> = groups.iter().enumerate().map(|(i, g)| Sample::new(format!("g{i}"), g.clone())).collect();
        let a = stats::one_way_anova(&samples).unwrap();
        prop_assert!(a.f_stat >= 0.0 && (0.0..=1.0).contains(&a.p_value));
        for p in stats::tukey_hsd(&samples, stats::DEFAULT_ALPHA).unwrap() {
            prop_assert!(p.q_stat >= 0.0 && (0.0..=1.0).contains(&p.p_value));
        }
        let c = stats::chi_square_independence(&table).unwrap();
        prop_assert!(c.chi2 >= 0.0 && (0.0..=1.0).contains(&c.p_value));
        prop_assert_eq!(c.df, (table.len() - 1) * (table[0].len() - 1));
        Ok(())
    })
}

pub fn pearson_symmetry_and_affine_invariance(cases: u32) -> Result<(), String> {
    let s = (3usize..5, 4usize..20).prop_flat_map(|(k, n)| {
        (
            prop::collection::vec(prop::collection::vec(-10.0f64..10.0, n), k),
            0usize..k,
            0.1f64..10.0,
            -100.0f64..100.0,
        )
    });
    check(cases, s, |(cols, j, scale, shift)| {
        let spread = |v: &[f64]| {
            let m = v.iter().sum::<f64>() / v.len() as f64;
            v.iter().map(|x| (x - m).powi(2)).sum::<f64>()
        };
        prop_assume!(cols.iter().all(|c| spread(c) > 1e-3));
        let samples: Vec<Sample> = cols.iter().enumerate().map(|(i, c)| Sample::new(format!("c{i}"), c.clone())).collect();
        let m = stats::pearson_matrix(&samples).unwrap();
        for a in 0..cols.len() {
            prop_assert_eq!(m.get(a, a), 1.0);
            for b in 0..cols.len() {
                prop_assert_eq!(m.get(a, b), m.get(b, a));
                prop_assert!((-1.0..=1.0).contains(&m.get(a, b)));
            }
        }
        let mut moved = samples.clone();
        moved[j].values = cols[j].iter().map(|x| scale * x + shift).collect();
        let m2 = stats::pearson_matrix(&moved).unwrap();
        for a in 0..cols.len() {
            for b in 0..cols.len() {
                prop_assert!((m.get(a, b) - m2.get(a, b)).abs() <= 1e-12, "{} vs {}", m.get(a, b), m2.get(a, b));
            }
        }
        Ok(())
    })
}

pub fn cohens_d_scale_invariance(cases: u32) -> Result<(), String> {
    check(cases, (finite_samples(2..=2, 2..=12), 0.01f64..100.0), |(g, c)| {
        let d = match stats::cohens_d(&g[0], &g[1]) {
            Ok(e) => e.d,
            Err(_) => return Ok(()),
        };
        let a: Vec<f64> = g[0].iter().map(|x| c * x).collect();
        let b: Vec<f64> = g[1].iter().map(|x| c * x).collect();
        let d2 = stats::cohens_d(&a, &b).unwrap().d;
        prop_assert!(rel_close(d, d2, 1e-10), "{} vs {}", d, d2);
        Ok(())
    })
}

pub fn wilson_width_shrinks(cases: u32) -> Result<(), String> {
    let s = (1u64..500).prop_flat_map(|n| (0..=n, Just(n)));
    check(cases, s, |(k, n)| {
        let w1 = stats::wilson_interval(k, n, stats::DEFAULT_Z).unwrap();
        let w4 = stats::wilson_interval(4 * k, 4 * n, stats::DEFAULT_Z).unwrap();
        prop_assert!(w4.hi - w4.lo < w1.hi - w1.lo);
        prop_assert!(0.0 <= w1.lo && w1.lo <= w1.hi && w1.hi <= 1.0);
        let p = k as f64 / n as f64;
        prop_assert!(w1.lo <= p && p <= w1.hi);
        let (lo, hi) = wilson_closed_form(k, n, stats::DEFAULT_Z);
        prop_assert!((w1.lo - lo.max(0.0)).abs() < 1e-12 && (w1.hi - hi.min(1.0)).abs() < 1e-12);
        Ok(())
    })
}

type Pick = fn(&MetricCell) -> Option<f64>;

pub fn overall_within_domain_bounds(cases: u32) -> Result<(), String> {
    let cells = (
        metric_cell(AgentId::Hybrid, DomainId::Healthcare),
        metric_cell(AgentId::Hybrid, DomainId::Finance),
        metric_cell(AgentId::Hybrid, DomainId::Marketing),
        metric_cell(AgentId::Hybrid, DomainId::Legal),
        metric_cell(AgentId::Hybrid, DomainId::CustomerService),
    );
    check(cases, (cells, prop::collection::vec(1u32..300, 5)), |(cells, counts)| {
        let cells = vec![cells.0, cells.1, cells.2, cells.3, cells.4];
        let counts: Vec<(DomainId, u32)> = DomainId::BUILTIN.iter().cloned().zip(counts).collect();
        let o = report::aggregate_overall(&cells, &counts).unwrap();
        let pairs: [(Pick, Option<f64>); 18] = [
            (|c| Some(c.gcr), Some(o.gcr)),
            (|c| Some(c.aix), Some(o.aix)),
            (|c| Some(c.aix_weighted), Some(o.aix_weighted)),
            (|c| Some(c.dtt_mean), Some(o.dtt_mean)),
            (|c| Some(c.dtt_median), Some(o.dtt_median)),
            (|c| Some(c.dtt_p95), Some(o.dtt_p95)),
            (|c| c.dtt_efficiency, o.dtt_efficiency),
            (|c| c.ces, o.ces),
            (|c| c.ces_efficiency, o.ces_efficiency),
            (|c| c.mtr, o.mtr),
            (|c| c.tdi_raw, o.tdi_raw),
            (|c| c.tdi_norm, o.tdi_norm),
            (|c| c.oas, o.oas),
            (|c| c.oas_weighted, o.oas_weighted),
            (|c| c.crs, o.crs),
            (|c| c.cqi, o.cqi),
            (|c| c.bie, o.bie),
            (|c| c.roi, o.roi),
        ];
        for (i, (pick, got)) in pairs.iter().enumerate() {
            let present: Vec<f64> = cells.iter().filter_map(pick).collect();
            match got {
                None => prop_assert!(present.is_empty() || i == 7, "metric {} absent", i),
                Some(v) => {
                    let lo = present.iter().copied().fold(f64::INFINITY, f64::min);
                    let hi = present.iter().copied().fold(f64::NEG_INFINITY, f64::max);
                    let eps = 1e-9 * hi.abs().max(lo.abs()).max(1.0);
                    prop_assert!(lo - eps <= *v && *v <= hi + eps, "metric {}: {} not in [{}, {}]", i, v, lo, hi);
                }
            }
        }
        Ok(())
    })
}

fn cell_fields(c: &MetricCell) -> [(Option<f64>, u32); 21] {
    [
        (Some(c.gcr), 2), (Some(c.aix), 4), (Some(c.aix_weighted), 4), (Some(c.dtt_mean), 2),
        (Some(c.dtt_median), 2), (Some(c.dtt_p95), 2), (c.dtt_efficiency, 4), (c.ces, 2),
        (c.ces_efficiency, 4), (c.mtr, 2), (c.tdi_raw, 4), (c.tdi_norm, 4), (c.oas, 4),
        (c.oas_weighted, 4), (c.crs, 2), (c.cqi, 4), (Some(c.kpi_value), 4), (Some(c.kpi_monetary), 2),
        (Some(c.op_cost), 2), (c.bie, 4), (c.roi, 2),
    ]
}

pub fn aggregate_csv_round_trip(cases: u32) -> Result<(), String> {
    check(cases, prop::collection::vec(metric_cell(AgentId::CoT, DomainId::Legal), 1..5), |cells| {
        let mut buf = Vec::new();
        datasets::write_cells(&mut buf, &cells).unwrap();
        let back = datasets::read_cells(buf.as_slice(), "mem").map_err(|e| TestCaseError::fail(e.to_string()))?;
        prop_assert_eq!(back.len(), cells.len());
        for (a, b) in cells.iter().zip(&back) {
            prop_assert_eq!((&a.agent, &a.domain, a.n_tasks, a.n_successes), (&b.agent, &b.domain, b.n_tasks, b.n_successes));
            for ((x, dec), (y, _)) in cell_fields(a).into_iter().zip(cell_fields(b)) {
                match (x, y) {
                    (None, None) => {}
                    (Some(x), Some(y)) => {
                        let half_unit = 0.5 * 10f64.powi(-(dec as i32));
                        prop_assert!((x - y).abs() <= half_unit * (1.0 + 1e-9) + 1e-12 * x.abs(), "{} -> {}", x, y);
                    }
                    _ => prop_assert!(false, "presence changed"),
                }
            }
        }
        // writing what was read reproduces the same bytes
        let mut again = Vec::new();
        datasets::write_cells(&mut again, &back).unwrap();
        prop_assert_eq!(again, buf);
        Ok(())
    })
}

type RadarCheck = (&'static str, fn(&report::OverallRow) -> f64, bool);
type Property = (&'static str, fn(u32) -> Result<(), String>);

pub fn radar_preserves_ranking(cases: u32) -> Result<(), String> {
    let agents: Vec<AgentId> = (0..5).map(|i| if i < 4 { AgentId::BUILTIN[i].clone() } else { AgentId::Other("X".into()) }).collect();
    let s = prop::collection::vec(
        (0.0f64..=100.0, 0.0f64..=1.0, 1.0f64..500.0, 100.0f64..5000.0, 1.0f64..=10.0, 0.0f64..=100.0),
        2..6,
    );
    check(cases, s, |rows| {
        let cells: Vec<MetricCell> = rows
            .iter()
            .enumerate()
            .map(|(i, r)| MetricCell {
                agent: agents[i].clone(),
                domain: DomainId::Finance,
                n_tasks: 10,
                n_successes: 5,
                gcr: r.0,
                aix: r.1,
                aix_weighted: r.1,
                dtt_mean: r.2,
                dtt_median: r.2,
                dtt_p95: r.2,
                dtt_efficiency: None,
                ces: Some(r.3),
                ces_efficiency: None,
                mtr: Some(r.5),
                tdi_raw: Some(0.0),
                tdi_norm: Some(0.5),
                oas: Some(r.4),
                oas_weighted: None,
                crs: Some(r.5),
                cqi: Some(3.0),
                kpi_value: 0.0,
                kpi_monetary: 0.0,
                op_cost: 0.0,
                bie: None,
                roi: None,
            })
            .collect();
        let overall = report::aggregate_all(&cells, &report::observed_counts(&cells)).unwrap();
        let inputs = ChartInputs { cells: &cells, overall: &overall, adaptability: &[] };
        let radar = report::chart_data(&inputs, ChartKind::Radar).unwrap();
        let col = |name: &str| radar.columns.iter().position(|c| c == name).unwrap();
        let checks: [RadarCheck; 5] = [
            ("GCR", |o| o.gcr, false),
            ("AIx", |o| o.aix, false),
            ("DTT", |o| o.dtt_mean, true),
            ("CES", |o| o.ces.unwrap(), true),
            ("OAS", |o| o.oas.unwrap(), false),
        ];
        for (name, raw, inverted) in checks {
            let j = col(name);
            let vals: Vec<f64> = overall.iter().map(raw).collect();
            let norm: Vec<f64> = radar.rows.iter().map(|r| r.values[j]).collect();
            prop_assert!(norm.contains(&1.0));
            for a in 0..vals.len() {
                prop_assert!((0.0..=1.0).contains(&norm[a]));
                for b in 0..vals.len() {
                    if vals[a] < vals[b] {
                        if inverted {
                            prop_assert!(norm[a] > norm[b], "{} inverted", name);
                        } else {
                            prop_assert!(norm[a] < norm[b], "{}", name);
                        }
                    } else if vals[a] == vals[b] {
                        prop_assert_eq!(norm[a], norm[b]);
                    }
                }
            }
        }
        // the constant columns tie at 1.0
        prop_assert!(radar.rows.iter().all(|r| r.values[col("CQI")] == 1.0));
        Ok(())
    })
}

/// Every invariant, by name.
pub fn all() -> Vec<Property> {
    vec![
        ("task CSV round-trip", task_csv_round_trip),
        ("validate is total", validate_is_total),
        ("metric ranges", metric_ranges),
        ("ROI = 100 (BIE - 1)", roi_bie_identity),
        ("TDI normalization monotone", tdi_normalization_is_monotone),
        ("GCR/OAS/CQI permutation invariance", permutation_invariance),
        ("uniform-weight AIx", uniform_weights_give_plain_mean),
        ("CES monotonicity", ces_monotonicity),
        ("MTR counts resilient records", mtr_counts_resilient_records),
        ("simulator determinism and cell independence", simulator_determinism_and_independence),
        ("ANOVA vs brute force", anova_matches_brute_force),
        ("F = t^2 for two groups", f_equals_t_squared),
        ("statistics and p-values in range", test_statistics_are_probabilities),
        ("Pearson symmetry and affine invariance", pearson_symmetry_and_affine_invariance),
        ("Cohen's d scale invariance", cohens_d_scale_invariance),
        ("Wilson width shrinks with n", wilson_width_shrinks),
        ("overall within domain bounds", overall_within_domain_bounds),
        ("aggregate CSV round-trip", aggregate_csv_round_trip),
        ("radar preserves ranking", radar_preserves_ranking),
    ]
}
