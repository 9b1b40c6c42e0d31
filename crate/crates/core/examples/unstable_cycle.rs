//! Locate the repelling cycle past a subcritical point by bisecting on the
//! initial offset, then watch how slowly nearby orbits leave it.

use watt_hopf::sim::{self, CycleSettings, TimeDirection};
use watt_hopf::{epsilon_critical, Model};

fn main() -> watt_hopf::Result<()> {
    let model = Model::pontryagin(0.9, 0.5)?;
    let eps = 1.01 * epsilon_critical(&model)?;
    let pred = sim::predicted_amplitude(&model, eps)?;

    let cycle = sim::bisect_unstable_cycle(&model, eps, 0.5 * pred, 1.5 * pred, sim::DEFAULT_DT, 1e-12)?;
    println!("predicted {pred:.5}, located {:.5}, period {:.4}", cycle.amplitude_x, cycle.period);
    println!("return multiplier {:.5}", cycle.return_map_contraction);

    let d = sim::departure_from_cycle(&model, eps, &cycle, 1e-6, 5.0, sim::DEFAULT_DT)?;
    println!("offset 1e-6 grows {:.3}x over 5 periods", d.ratio);

    // integrating backwards does not capture it: the cycle is a saddle there
    let seed = sim::cycle_seed(&model, eps)?;
    match sim::detect_cycle(&model, eps, &seed, TimeDirection::Reversed, sim::DEFAULT_DT, &CycleSettings::default()) {
        Ok(c) => println!("reversed search converged: {:.5}", c.amplitude_x),
        Err(e) => println!("reversed search: {e}"),
    }
    Ok(())
}
