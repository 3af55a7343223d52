//! Exact evolution of the parametric chain |m, m> and its photon-number
//! distribution, checked against the thermal marginal.

use pbgsim::analytic::thermal_marginal;
use pbgsim::fock::{run_bilinear, EngineConfig};

fn main() -> pbgsim::Result<()> {
    let cfg = EngineConfig {
        tolerance: 1e-10,
        ..EngineConfig::default()
    };
    for tau in [0.5, 1.0, 1.5] {
        let run = run_bilinear(tau, &cfg)?;
        let worst = run
            .state
            .populations()
            .iter()
            .enumerate()
            .map(|(m, p)| (p - thermal_marginal(tau, m)).abs())
            .fold(0.0, f64::max);
        println!(
            "tau {tau}: cutoff {}, <n_r> = {:.10} (sinh^2 {:.10}), max |P(m) - thermal| = {worst:.1e}, tail {:.1e}",
            run.cutoff,
            run.moments.n_r,
            tau.sinh().powi(2),
            run.moments.leakage
        );
    }
    Ok(())
}
