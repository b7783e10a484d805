//! Operational cost, KPI conversion, business impact efficiency and ROI.
//!
//! cargo run --example business_impact

use agent_eval::benchmark;
use agent_eval::metrics::{self, Usd};
use agent_eval::model::{AgentId, CostModel, DomainId, TaskRecord};
use agent_eval::report::{self, EvalSettings};
use agent_eval::simulator::{self, SimConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // Cost of a single task: tokens, API calls and human interventions
    let cm = CostModel::default();
    let mut r = TaskRecord::new("demo", AgentId::Hybrid, DomainId::Legal);
    r.tokens = 100_000;
    r.api_calls = 500;
    r.interventions.approval_gate = 10;
    println!("operational cost of the demo task: {}", metrics::operational_cost(&[r], &cm));

    // Converting native KPI units to dollars
    let config = SimConfig::default();
    for d in &config.domains {
        let one = metrics::kpi_to_monetary(&d.config, 1.0)?;
        println!("  1 {:<18} in {:<16} = {}", d.config.kpi_unit.as_str(), d.id.to_string(), one);
    }

    // Published business-impact rows are internally consistent
    println!("\npublished rows, BIE recomputed from monetary value / cost:");
    for a in AgentId::BUILTIN {
        let row = benchmark::business(&a, &DomainId::Healthcare).unwrap();
        let bie = metrics::bie(Usd::from_dollars(row.monetary), Usd::from_dollars(row.op_cost))?;
        println!("  {:<15} Healthcare  published {:>6.2}  recomputed {:>6.2}", a.to_string(), row.bie, bie);
    }

    // Simulated cells
    let records = simulator::generate(&config)?;
    let settings = EvalSettings { cost_model: cm, weights: config.complexity_weights, ..Default::default() };
    let cells = report::aggregate_grid(&records, &settings, |d| config.domain_config_or_neutral(d))?;
    let rows = report::business_rows(&cells, |d| config.domain_config_or_neutral(d));
    println!();
    print!("{}", report::business_table(&rows).render());
    Ok(())
}
