//! Load the shipped TOML configuration, switch to profile-driven
//! generation and add a sixth agent.
//!
//! cargo run --example custom_config

use agent_eval::model::AgentId;
use agent_eval::report::{self, EvalSettings};
use agent_eval::simulator::{self, AgentEntry, Mode, SimConfig};

const SHIPPED: &str = include_str!("../config/default.toml");

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut config = SimConfig::from_toml_str(SHIPPED)?;
    config.mode = Mode::AppendixD;
    config.seed = 7;

    // A new agent: ReAct's profile with better completion and autonomy
    let mut profile = config.agent(&AgentId::ReAct).unwrap().profile.clone();
    profile.gcr.mean = 0.93;
    profile.aix.mean = 0.95;
    config.agents.push(AgentEntry { id: "Planner".parse()?, profile });
    config.validate()?;

    let records = simulator::generate(&config)?;
    let cells = report::aggregate_grid(&records, &EvalSettings::default(), |d| config.domain_config_or_neutral(d))?;
    let counts: Vec<_> = config.domains.iter().map(|d| (d.id.clone(), d.config.task_count)).collect();
    let overall = report::aggregate_all(&cells, &counts)?;
    print!("{}", report::overall_table(&overall).render());

    // Invalid settings are reported all at once
    let mut broken = config.clone();
    broken.agents[0].profile.gcr.mean = 1.4;
    broken.cost_model.token_price = -1.0;
    if let Err(e) = broken.validate() {
        println!("\nrejected: {e}");
    }
    Ok(())
}
