//! The eight chart datasets, written as CSV and static SVG.
//!
//! cargo run --example charts -- [OUT_DIR]

use std::path::PathBuf;

use agent_eval::report::{self, ChartInputs, ChartKind, EvalSettings};
use agent_eval::simulator::{self, SimConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let out = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| std::env::temp_dir().join("agent-eval-charts"));
    std::fs::create_dir_all(&out)?;

    let config = SimConfig::default();
    let records = simulator::generate(&config)?;
    let cells = report::aggregate_grid(&records, &EvalSettings::default(), |d| config.domain_config_or_neutral(d))?;
    let overall = report::aggregate_all(&cells, &report::observed_counts(&cells))?;
    let adaptability = simulator::generate_adaptability(&config, simulator::DEFAULT_N_TEST)?;
    let inputs = ChartInputs { cells: &cells, overall: &overall, adaptability: &adaptability };

    for kind in ChartKind::ALL {
        let data = report::chart_data(&inputs, kind)?;
        std::fs::write(out.join(format!("{}.csv", kind.file_stem())), data.to_csv())?;
        std::fs::write(out.join(format!("{}.svg", kind.file_stem())), report::render_svg(&data))?;
        println!("{:<26} {} series x {} columns", kind.file_stem(), data.rows.len(), data.columns.len());
    }

    let radar = report::chart_data(&inputs, ChartKind::Radar)?;
    println!("\nradar (1 = best agent on that metric):");
    print!("{}", radar.to_csv());
    println!("\nwritten to {}", out.display());
    Ok(())
}
