//! Four-dimensional quadrature of the two-mode Q-function, compared with its
//! normalization and antinormally ordered moments.

use pbgsim::qfunction::{integrate, QuadratureGrid};

fn main() -> pbgsim::Result<()> {
    let grid = QuadratureGrid::default();
    println!(
        "{} sigma, {} points per axis, truncation estimate {:.1e}",
        grid.n_sigma,
        grid.points_per_axis,
        grid.estimated_truncation()
    );
    for tau in [0.25, 0.5, 1.0, 1.5] {
        let q = integrate(tau, &grid)?;
        let c2 = tau.cosh().powi(2);
        println!(
            "tau {tau:<4}: int Q = {:.9}, <a a+> = {:.9} (cosh^2 {c2:.9}), <ab> = {:.9} (sinh cosh {:.9})",
            q.normalization,
            q.antinormal_aa_dag,
            q.alpha_beta.re,
            tau.sinh() * tau.cosh()
        );
    }
    Ok(())
}
