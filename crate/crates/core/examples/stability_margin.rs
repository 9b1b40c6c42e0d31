//! Sweep the damping through its critical value and print the linear verdict.
//!
//! cargo run --example stability_margin -- 0.5 1.0

use watt_hopf::{classify_dimensionless, epsilon_critical, stability::DEFAULT_TOL, Model};

fn main() -> watt_hopf::Result<()> {
    let mut args = std::env::args().skip(1).map(|a| a.parse::<f64>().expect("numeric argument"));
    let beta = args.next().unwrap_or(0.5);
    let alpha = args.next().unwrap_or(1.0);

    let model = Model::pontryagin(beta, alpha)?;
    let ec = epsilon_critical(&model)?;
    println!("beta = {beta}, alpha = {alpha}: omega0 = {:.6}, eps_c = {ec:.9}", model.omega0());

    for rel in [0.5, 0.9, 0.99, 1.0, 1.01, 1.1, 2.0] {
        let v = classify_dimensionless(&model, rel * ec, DEFAULT_TOL)?;
        println!("  eps = {:>8.5} ({rel:>4} eps_c)  {:<8} margin {:+.3e}", rel * ec, v.stability.label(), v.margin);
    }
    Ok(())
}
