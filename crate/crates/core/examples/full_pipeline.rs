//! simulate -> evaluate -> analyze -> report, driven through the same entry
//! point as the `agent-eval` binary.
//!
//! cargo run --example full_pipeline -- [OUT_DIR]

use agent_eval::cli;

fn main() {
    let out = std::env::args()
        .nth(1)
        .unwrap_or_else(|| std::env::temp_dir().join("agent-eval-pipeline").display().to_string());
    for step in [
        vec!["simulate", "--seed", "42", "--out", &out],
        vec!["evaluate", "--out", &out],
        vec!["analyze", "--out", &out],
        vec!["report", "--out", &out, "--format", "csv,txt,svg"],
    ] {
        println!("$ agent-eval {}", step.join(" "));
        let code = cli::main_with_args(std::iter::once("agent-eval").chain(step.iter().copied()));
        if code != 0 {
            std::process::exit(code);
        }
    }
    println!("\nsee {out}/report.txt");
}
