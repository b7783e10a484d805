//! Each metric evaluated on the small illustrative cases used to define it.
//!
//! cargo run --example worked_examples

use agent_eval::metrics::{self, Usd};
use agent_eval::model::{
    AgentId, ChainOutcome, CollabScores, CostModel, DomainId, ErrorType, TaskRecord, ToolEvent, ToolOutcome,
};

fn task(i: usize) -> TaskRecord {
    TaskRecord::new(format!("t{i:03}"), AgentId::ReAct, DomainId::Healthcare)
}

fn main() {
    // 84 of 100 tasks reach their goal
    let gcr_tasks: Vec<TaskRecord> = (0..100)
        .map(|i| {
            let mut r = task(i);
            r.success = i < 84;
            r
        })
        .collect();
    println!("GCR  {:>8} %", metrics::gcr(&gcr_tasks).unwrap());

    // 5 interventions over 50 steps
    println!("AIx  {:>8}", metrics::aix(50, 5).unwrap());

    // brief-to-plan in 45 minutes, no waiting on humans
    let mut plan = task(0);
    plan.t_end = 45.0 * 60.0;
    println!("DTT  {:>8} min", metrics::dtt(&plan).unwrap() / 60.0);

    // 2000 tokens and 20 calls across 10 successful tasks, 100 tokens per call
    let cm = CostModel { token_equivalent: 100.0, ..CostModel::default() };
    let ces_tasks: Vec<TaskRecord> = (0..10)
        .map(|i| {
            let mut r = task(i);
            r.tokens = 200;
            r.api_calls = 2;
            r
        })
        .collect();
    println!("CES  {:>8} units per success", metrics::ces(&ces_tasks, &cm).unwrap());

    // score sum 6 over 10 tool opportunities
    let mut events = vec![ToolEvent::new(ToolOutcome::OptimalUse); 6];
    events.extend([ToolEvent::new(ToolOutcome::NoToolNeeded); 4]);
    let raw = metrics::tdi(&events).unwrap();
    println!("TDI  {:>8} (normalized {})", raw, metrics::tdi_normalize(raw).unwrap());

    println!("OAS  {:>8}", metrics::oas(&[9.0, 8.0, 9.0, 7.0, 8.0]).unwrap());

    let sessions = [CollabScores::uniform(4), CollabScores::uniform(5), CollabScores::uniform(3)];
    println!("CQI  {:>8}", metrics::cqi(&sessions).unwrap());

    // 40 multi-step tasks, 30 of which hit an error and corrected it themselves
    let multi: Vec<TaskRecord> = (0..40)
        .map(|i| {
            let mut r = task(i);
            r.total_steps = 6;
            r.chain = ChainOutcome::clean(6, true);
            if i < 30 {
                r.chain.had_initial_error = true;
                r.chain.error_type = Some(ErrorType::ToolApiError);
                r.chain.self_recovered = true;
            }
            r
        })
        .collect();
    println!("MTR  {:>8} %", metrics::mtr(&multi).unwrap());

    // 42 of 50 multi-hop chains end correctly
    let chains: Vec<TaskRecord> = (0..50)
        .map(|i| {
            let mut r = task(i);
            r.chain = ChainOutcome::clean(4, i < 42);
            r
        })
        .collect();
    println!("CRS  {:>8} %", metrics::crs(&chains, metrics::DEFAULT_MIN_CHAIN).unwrap());

    let ad = metrics::adaptability(0.60, 0.85).unwrap();
    println!("AD   {:>8} points (AR {:.2} %)", (ad.ad * 100.0).round(), ad.ar);

    let value = Usd::from_cents(1_500_000);
    let cost = Usd::from_cents(30_000);
    println!("BIE  {:>8} value units per dollar", metrics::bie(value, cost).unwrap());
    println!("ROI  {:>8} %", metrics::roi(value, cost).unwrap());
}
