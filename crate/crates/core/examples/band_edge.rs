//! Dispersion near the band edge and the resulting pump strength, both in
//! natural units and with explicit physical constants.

use pbgsim::band::{
    band_frequency, normalized_pump_ratio, CouplingParams, DispersionParams, ModelParams,
};

fn main() -> pbgsim::Result<()> {
    println!("{:>6} {:>10} {:>10}", "k/k0", "omega_k", "G/G_edge");
    for i in 0..=10 {
        let k = 0.75 + 0.05 * i as f64;
        let omega = band_frequency(&DispersionParams::dimensionless(k)?)?;
        println!("{k:>6.2} {omega:>10.6} {:>10.6}", normalized_pump_ratio(k)?);
    }

    let model = ModelParams {
        dispersion: DispersionParams::new(2.0, 1.12)?,
        coupling: CouplingParams {
            omega_a: 2.0,
            mu_ab: 0.3,
            epsilon_0: 1.0,
            volume: 50.0,
            gamma: 10.0,
        },
        dimensionless: false,
    };
    model.validate()?;
    let (g, g_edge) = (model.effective_pump()?, model.edge_pump()?);
    println!();
    println!("omega_k = {:.6}", model.omega_k()?);
    println!(
        "g(omega_k) = {:.6}, G = {g:.6}, G at the edge = {g_edge:.6}",
        model.coupling()?
    );
    println!(
        "G / G_edge = {:.6} (natural-unit ratio {:.6})",
        g / g_edge,
        normalized_pump_ratio(1.12)?
    );
    Ok(())
}
