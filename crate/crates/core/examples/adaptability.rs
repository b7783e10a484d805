//! Zero-shot vs few-shot completion and the derived adaptation measures.
//!
//! cargo run --example adaptability -- [N_TEST]

use agent_eval::metrics;
use agent_eval::report;
use agent_eval::simulator::{self, SimConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let n_test: usize = match std::env::args().nth(1) {
        Some(s) => s.parse()?,
        None => simulator::DEFAULT_N_TEST,
    };

    let a = metrics::adaptability(0.62, 0.84)?;
    println!("0.62 -> 0.84: AD {:.2}, AR {:.2} %", a.ad, a.ar);

    let cells = simulator::generate_adaptability(&SimConfig::default(), n_test)?;
    println!("\n{n_test} test tasks per setting");
    print!("{}", report::adaptability_table(&cells).render());
    Ok(())
}
