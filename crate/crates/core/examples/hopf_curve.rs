//! Trace the curve separating soft and hard loss of stability.

use watt_hopf::hopf;

fn main() -> watt_hopf::Result<()> {
    let b0 = hopf::boundary_beta_min();
    println!("the curve exists for beta > {b0:.6}");
    for k in 1..=8 {
        let beta = b0 + (0.999 - b0) * k as f64 / 8.0;
        let alpha = hopf::hopf_boundary(beta)?;
        println!("  beta {beta:.4}  alpha* {alpha:.6}  g {:+.1e}", hopf::g_discriminant(beta, alpha));
    }
    // below the curve the cycle is born unstable
    let (beta, alpha) = (0.9, 0.5);
    println!("g({beta}, {alpha}) = {:+.6}, l1 = {:+.6e}", hopf::g_discriminant(beta, alpha), hopf::lyapunov_closed_pontryagin(beta, alpha)?);
    Ok(())
}
