//! The trilinear model in its conserved sectors: a number-state pump feeding
//! correlated photon and lower-level excitations.

use pbgsim::fock::{conserved_charges, pump_occupation, run_trilinear, EngineConfig, PumpKind};

fn main() -> pbgsim::Result<()> {
    let n = 20;
    let g = 1.0 / (n as f64).sqrt();
    let times: Vec<f64> = (1..=8).map(|i| 0.5 * i as f64).collect();
    let run = run_trilinear(PumpKind::Fock { n }, g, &times, &EngineConfig::default())?;
    println!(
        "{:>5} {:>10} {:>10} {:>12}",
        "t", "<n_r>", "<n_a>", "norm drift"
    );
    for p in &run.points {
        println!(
            "{:>5.1} {:>10.5} {:>10.5} {:>12.1e}",
            p.time, p.moments.n_r, p.moments.n_a, p.report.max_norm_drift
        );
    }
    let (imbalance, total) = conserved_charges(&run.final_state);
    println!(
        "final: <n_r - n_b> = {imbalance:.1e}, <n_r + n_c> = {total:.12}, pump left {:.5}",
        pump_occupation(&run.final_state)
    );
    Ok(())
}
