//! Closed-form photon statistics and entanglement witnesses against time.

use pbgsim::analytic::analytic_moments;
use pbgsim::witness_report;

fn main() -> pbgsim::Result<()> {
    println!(
        "{:>5} {:>10} {:>10} {:>10} {:>8} {:>9}",
        "tau", "<n_r>", "Mandel Q", "dV^2", "E_c", "entangled"
    );
    for i in 0..=12 {
        let tau = 0.25 * i as f64;
        let r = witness_report(&analytic_moments(tau)?);
        let fmt = |v: Result<f64, _>| v.map_or("NA".to_string(), |x| format!("{x:.6}"));
        println!(
            "{tau:>5.2} {:>10.5} {:>10} {:>10.6} {:>8} {:>9}",
            r.moments.n_r,
            fmt(r.mandel_q),
            r.duan_variance,
            fmt(r.ec_ratio),
            r.entangled_by_duan && r.entangled_by_ec
        );
    }
    Ok(())
}
