//! Build a scenario in code, sweep one parameter and emit JSON.
//!
//! Run with `cargo run --example sweep_report`.

use entropy_bound::scenario::{
    emit, exit_code, run_scenario, OutputFormat, ScenarioConfig, ScenarioKind, SweepScale,
    SweepSpec,
};

fn main() -> Result<(), entropy_bound::scenario::ScenarioError> {
    let mut config = ScenarioConfig::new(ScenarioKind::TwoLevel)
        .with("g", 3)
        .with("rho0", 2.0)
        .with("rho_gap", 0.1);
    config.sweep = Some(SweepSpec {
        parameter: "y".into(),
        start: 1e-2,
        stop: 1e2,
        count: 5,
        scale: SweepScale::Log,
    });
    let rows = run_scenario(&config)?;
    emit(&rows, OutputFormat::Json, None)?;
    eprintln!("exit code would be {}", exit_code(&rows));
    Ok(())
}
