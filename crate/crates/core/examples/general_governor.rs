//! Stability of a governor with general engine and load characteristics.

use watt_hopf::cli::general_report;
use watt_hopf::stability::{GeneralJet, DEFAULT_TOL};

fn main() -> watt_hopf::Result<()> {
    let base = GeneralJet {
        hprime0: 2.0,
        m: 1.0,
        inertia: 1.0,
        s0: 1.0,
        sprime0: 1.0,
        mprime0: -1.0,
        phi0: std::f64::consts::FRAC_PI_4,
    };
    println!("friction threshold {:.6}", base.friction_threshold());
    for h in [0.5, 1.0, 2.0, 3.0, 6.0] {
        let r = general_report(&GeneralJet { hprime0: h, ..base }, DEFAULT_TOL)?;
        println!("  H'(0) = {h:<4}  {:<8}  product {:.4}  eta {:.4}", r.verdict.stability.label(), r.product, r.eta);
    }
    Ok(())
}
