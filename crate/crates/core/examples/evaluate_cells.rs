//! Aggregate simulated records into per-cell and overall metrics and
//! print them as aligned tables.
//!
//! cargo run --example evaluate_cells

use agent_eval::report::{self, EvalSettings};
use agent_eval::simulator::{self, SimConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let config = SimConfig::default();
    let records = simulator::generate(&config)?;

    let settings = EvalSettings {
        cost_model: config.cost_model,
        weights: config.complexity_weights,
        // optional human baselines turn on the efficiency ratios
        baseline_dtt: Some(600.0),
        baseline_ces: Some(4000.0),
    };
    let cells = report::aggregate_grid(&records, &settings, |d| config.domain_config_or_neutral(d))?;
    let counts: Vec<_> = config.domains.iter().map(|d| (d.id.clone(), d.config.task_count)).collect();
    let overall = report::aggregate_all(&cells, &counts)?;

    print!("{}", report::overall_table(&overall).render());
    println!();
    print!("{}", report::domain_table(&cells).render());
    println!();
    for o in &overall {
        println!(
            "{:<15} p95 DTT {:>7.1} s   DTT efficiency {:>5.2}x   CES efficiency {:>5.2}x",
            o.agent.to_string(),
            o.dtt_p95,
            o.dtt_efficiency.unwrap_or(f64::NAN),
            o.ces_efficiency.unwrap_or(f64::NAN),
        );
    }
    Ok(())
}
