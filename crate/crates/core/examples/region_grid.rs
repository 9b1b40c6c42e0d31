//! Scan (beta, alpha) and write the Lyapunov sign map to CSV.
//!
//! cargo run --release --example region_grid -- out.csv

use std::path::PathBuf;

use watt_hopf::cli::{self, GridSpec};

fn main() {
    let path = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "grid.csv".into()));
    let spec = GridSpec { beta_steps: 99, alpha_steps: 41, ..GridSpec::default() };
    let rows = cli::grid_rows(&spec).expect("grid inside the valid domain");

    let unstable = rows.iter().filter(|r| r.region == "U").count();
    println!("{} points, {unstable} subcritical", rows.len());
    for r in rows.iter().filter(|r| r.region == "U").take(5) {
        println!("  beta {:.4} alpha {:.4}  l1 {:+.4e}", r.beta, r.alpha, r.l1);
    }

    if let Err(e) = cli::write_csv(&path, &rows) {
        eprintln!("{e}");
        std::process::exit(e.exit_code());
    }
    println!("wrote {}", path.display());
}
