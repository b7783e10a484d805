//! ANOVA, Tukey HSD, effect sizes, correlations, Wilson intervals,
//! chi-square and rater agreement.
//!
//! cargo run --example statistics_suite

use agent_eval::benchmark;
use agent_eval::model::{AgentId, DomainId};
use agent_eval::report::{self, EvalSettings};
use agent_eval::simulator::{self, SimConfig};
use agent_eval::stats::{self, Sample};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // Per-domain GCR of each agent from the published grid
    let groups: Vec<Sample> = AgentId::BUILTIN
        .iter()
        .map(|a| {
            let v = DomainId::BUILTIN.iter().map(|d| benchmark::cell(a, d).unwrap().gcr).collect();
            Sample::new(a.to_string(), v)
        })
        .collect();
    let anova = stats::one_way_anova(&groups)?;
    println!(
        "published grid: F({}, {}) = {:.4}, p = {:.4}",
        anova.df_between, anova.df_within, anova.f_stat, anova.p_value
    );
    for t in stats::tukey_hsd(&groups, stats::DEFAULT_ALPHA)? {
        println!("  {:<15} vs {:<15} q = {:.3}  p = {:.4}", t.group_a, t.group_b, t.q_stat, t.p_value);
    }
    let d = stats::cohens_d(&groups[3].values, &groups[0].values)?;
    println!("  Hybrid vs ReAct: d = {:.3} ({})", d.d, d.magnitude);

    let w = stats::wilson_interval(84, 100, stats::DEFAULT_Z)?;
    println!("84/100 succeeded: 95% interval [{:.4}, {:.4}]", w.lo, w.hi);

    let chi = stats::chi_square_independence(&[vec![10, 20], vec![20, 10]])?;
    println!("2x2 table: chi2 = {:.3}, df {}, p = {:.4}", chi.chi2, chi.df, chi.p_value);

    // Full report over simulated task-level data
    let config = SimConfig::default();
    let records = simulator::generate(&config)?;
    let cells = report::aggregate_grid(&records, &EvalSettings::default(), |d| config.domain_config_or_neutral(d))?;
    let report = report::analyze_tasks(&records, &cells)?;
    println!();
    print!("{}", report.to_text());
    Ok(())
}
