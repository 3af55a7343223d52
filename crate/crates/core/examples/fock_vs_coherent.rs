//! Number-state and coherent pumps with the same mean occupation: only the
//! coherent pump builds up the pair correlation <ab>.

use pbgsim::fock::{run_trilinear, EngineConfig, PumpKind};
use pbgsim::witnesses::{duan_variance, ec_ratio};

fn main() -> pbgsim::Result<()> {
    let g = 0.1;
    let times = [1.0, 2.5, 5.0];
    let cfg = EngineConfig::default();
    for pump in [
        PumpKind::Fock { n: 100 },
        PumpKind::Coherent { gamma: 10.0 },
    ] {
        println!("{pump:?}");
        for p in run_trilinear(pump, g, &times, &cfg)?.points {
            let ec = match ec_ratio(&p.moments) {
                Ok(v) => format!("{v:.5}"),
                Err(why) => why.to_string(),
            };
            println!(
                "  g gamma t = {:<4} |<ab>| = {:.5}  dV^2 = {:.5}  E_c: {ec}",
                p.tau,
                p.moments.ab.norm(),
                duan_variance(&p.moments)
            );
        }
    }
    Ok(())
}
