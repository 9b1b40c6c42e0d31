//! First Lyapunov coefficient by closed form and by projection onto the
//! critical eigenspace, side by side.

use watt_hopf::hopf::{self, HopfPoint};
use watt_hopf::{Model, TorqueJet};

fn main() -> watt_hopf::Result<()> {
    for (beta, alpha) in [(0.5, 1.0), (0.9, 0.5), (0.9, 2.0), (0.2, 0.25)] {
        let r = hopf::analyze(&Model::pontryagin(beta, alpha)?)?;
        println!(
            "beta {beta:.2} alpha {alpha:.2}  l1 closed {:+.12e}  numeric {:+.12e}  |diff| {:.1e}  region {}",
            r.l1_closed,
            r.l1_numeric,
            (r.l1_closed - r.l1_numeric).abs(),
            r.region.code()
        );
    }

    // an arbitrary torque jet goes through the same machinery
    let jet = TorqueJet::new(-0.8, 1.5, -2.0);
    let model = Model::from_jet(0.6, jet)?;
    let point = HopfPoint::new(&model)?;
    let eigen = hopf::eigenvectors_at(&point);
    let n = hopf::lyapunov_numeric(&point, &eigen)?;
    let closed = hopf::lyapunov_closed_general(0.6, jet.a1, jet.a2, jet.a3)?;
    println!("\njet {:?} at beta 0.6", jet.as_array());
    println!("  G21 = {:.9}", n.g21);
    println!("  l1 = {:+.12e} (closed {:+.12e}), h21 residual {:.1e}", n.l1, closed, n.h21_residual);
    println!("  gamma' = {:.9}", hopf::transversality(&model)?);
    Ok(())
}
