//! Integrate just below critical damping and compare the settled cycle with the
//! normal-form estimate.

use watt_hopf::sim::{self, CycleSettings, TimeDirection};
use watt_hopf::{epsilon_critical, Model};

fn main() -> watt_hopf::Result<()> {
    let model = Model::pontryagin(0.5, 1.0)?;
    let ec = epsilon_critical(&model)?;
    let settings = CycleSettings { max_returns: 2000, ..CycleSettings::default() };

    for delta in [0.02, 0.01, 0.005] {
        let eps = ec * (1.0 - delta);
        let predicted = sim::predicted_amplitude(&model, eps)?;
        let seed = sim::cycle_seed(&model, eps)?;
        let c = sim::detect_cycle(&model, eps, &seed, TimeDirection::Forward, sim::DEFAULT_DT, &settings)?;
        println!(
            "delta {delta:<6} amplitude {:.6} predicted {predicted:.6} ratio {:.4}  period {:.4}  multiplier {:.5} ({} returns)",
            c.amplitude_x,
            c.amplitude_x / predicted,
            c.period,
            c.return_map_contraction,
            c.returns
        );
    }
    println!("linear period 2pi/omega0 = {:.4}", std::f64::consts::TAU / model.omega0());
    Ok(())
}
