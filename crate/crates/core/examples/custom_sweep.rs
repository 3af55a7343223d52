//! A sweep built in code: trilinear engine with a coherent pump over a small
//! (tau, k/k0) grid, printed as CSV with the sidecar metadata.

use pbgsim::fock::{EngineConfig, PumpKind};
use pbgsim::harness::{run_sweep, sidecar_toml, write_csv, Engine, Quantity, SweepSpec};

fn main() -> pbgsim::Result<()> {
    let spec = SweepSpec {
        tau_grid: vec![0.0, 0.25, 0.5],
        k_ratio_grid: vec![0.9, 1.0, 1.1],
        engine: Engine::Trilinear,
        pump: PumpKind::Coherent { gamma: 5.0 },
        engine_config: EngineConfig {
            tolerance: 1e-9,
            ..EngineConfig::default()
        },
        outputs: vec![Quantity::NR, Quantity::Duan, Quantity::Ec],
    };
    let record = run_sweep(&spec)?;
    write_csv(&record, std::io::stdout().lock())?;
    println!();
    print!("{}", sidecar_toml(&record)?);
    Ok(())
}
