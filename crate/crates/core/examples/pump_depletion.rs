//! How well a coherent pump behaves as a c-number: trilinear <n_r> against
//! sinh^2 for growing pump amplitude at fixed g * gamma = 1.

use pbgsim::fock::{parametric_validity_scan, EngineConfig};

fn main() -> pbgsim::Result<()> {
    let taus = [0.25, 0.5, 1.0, 1.5];
    let cfg = EngineConfig::default();
    for gamma in [1.0, 3.0, 5.0, 10.0] {
        println!("gamma = {gamma}");
        for row in parametric_validity_scan(gamma, 1.0 / gamma, &taus, &cfg)? {
            println!(
                "  tau {:<4} trilinear {:>9.5} parametric {:>9.5} rel. dev {:>9.3e} depletion {:>7.4}",
                row.tau, row.n_r_trilinear, row.n_r_parametric, row.relative_deviation, row.depletion_fraction
            );
        }
    }
    Ok(())
}
