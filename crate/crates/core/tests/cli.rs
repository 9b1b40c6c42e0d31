use std::path::Path;
use std::process::Command;

use watt_hopf::cli::{self, CurvePoint, GridRow, GridSpec, TrajectoryRow};
use watt_hopf::hopf;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_watt-hopf"))
}

fn code(args: &[&str]) -> i32 {
    bin().args(args).output().unwrap().status.code().unwrap()
}

fn first_line(path: &Path) -> String {
    std::fs::read_to_string(path).unwrap().lines().next().unwrap().to_string()
}

#[test]
fn exit_codes_follow_verdicts() {
    assert_eq!(code(&["stability", "--beta", "0.5", "--alpha", "1", "--eps", "1"]), 0);
    assert_eq!(code(&["stability", "--beta", "0.5", "--alpha", "1", "--eps", "0.5"]), 1);
    assert_eq!(code(&["stability", "--beta", "0.5", "--alpha", "1", "--eps", "0.70710678"]), 2);
    assert_eq!(code(&["stability", "--beta", "0.5", "--alpha", "1", "--eps-rel", "1"]), 2);
    assert_eq!(code(&["stability", "--beta", "1.5", "--alpha", "1", "--eps", "1"]), 64);
    assert_eq!(code(&["l1", "--beta", "0.5"]), 64);
    assert_eq!(code(&["simulate", "--beta", "0.5", "--jet", "-1,0,0", "--eps", "1", "--tmax", "1"]), 64);
    let general = |h: &str| {
        code(&["general", "--hprime0", h, "--m", "1", "--I", "1", "--s0", "1", "--sprime0", "1", "--mprime0", "-1", "--phi0", "0.7853981634"])
    };
    assert_eq!(general("2"), 2);
    assert_eq!(general("4"), 0);
    assert_eq!(general("1"), 1);
}

#[test]
fn io_failures_exit_74() {
    assert_eq!(code(&["grid", "--out", "/nonexistent/dir/grid.csv"]), 74);
    assert_eq!(code(&["hopf-curve", "--out", "/nonexistent/dir/c.csv"]), 74);
    assert_eq!(code(&["simulate", "--beta", "0.5", "--alpha", "1", "--eps", "1", "--tmax", "1", "--out", "/nonexistent/t.csv"]), 74);
}

#[test]
fn json_summary_from_process() {
    let out = bin().args(["l1", "--beta", "0.5", "--alpha", "1", "--method", "both", "--json"]).output().unwrap();
    assert!(out.status.success());
    let s: cli::Summary = serde_json::from_slice(&out.stdout).unwrap();
    let (c, n) = (s.l1_closed.unwrap(), s.l1_numeric.unwrap());
    assert!((c + 0.268_551_146_846_616_7).abs() < 1e-12 && (c - n).abs() <= 1e-8);
    assert_eq!(s.region.as_deref(), Some("S"));
    assert!((s.eps_c.unwrap() - 0.707_106_781_186_547_6).abs() < 1e-15);

    let out = bin().args(["stability", "--beta", "0.5", "--alpha", "1", "--eps", "1", "--json"]).output().unwrap();
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["verdict"], "Stable");
    assert!(v["l1_closed"].is_null());
}

#[test]
fn grid_files() {
    let dir = tempfile::tempdir().unwrap();
    let grid = dir.path().join("grid.csv");
    let out = bin().arg("grid").arg("--out").arg(&grid).output().unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));

    assert_eq!(first_line(&grid), "beta,alpha,eps_c,g,l1,region");
    let rows: Vec<GridRow> = cli::read_csv(&grid).unwrap();
    assert_eq!(rows.len(), 45);
    for w in rows.windows(2) {
        assert!(w[0].beta < w[1].beta || (w[0].beta == w[1].beta && w[0].alpha < w[1].alpha));
    }
    for r in &rows {
        if r.g.abs() > 1e-9 {
            assert_eq!(r.l1.signum(), -r.g.signum(), "{r:?}");
        }
        if r.alpha > 1.0 {
            assert_eq!(r.region, "S", "{r:?}");
        }
    }

    let curve_path = dir.path().join("hopf_curve.csv");
    assert_eq!(first_line(&curve_path), "beta,alpha");
    let curve: Vec<CurvePoint> = cli::read_csv(&curve_path).unwrap();
    assert!(curve.len() >= 2);
    for p in &curve {
        assert!(hopf::g_discriminant(p.beta, p.alpha).abs() <= 1e-9);
        assert!(p.beta > hopf::boundary_beta_min() && p.beta <= 0.999);
    }

    let text = std::fs::read(&grid).unwrap();
    assert!(!text.contains(&b'\r'));
}

#[test]
fn grid_output_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let spec = GridSpec { beta_steps: 37, alpha_steps: 23, ..GridSpec::default() };
    let render = |threads: usize, name: &str| {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        let rows = pool.install(|| cli::grid_rows(&spec)).unwrap();
        let path = dir.path().join(name);
        cli::write_csv(&path, &rows).unwrap();
        std::fs::read(path).unwrap()
    };
    let one = render(1, "a.csv");
    assert_eq!(one, render(4, "b.csv"));
    assert_eq!(one, render(4, "c.csv"));
    assert_eq!(one, render(7, "d.csv"));
}

#[test]
fn csv_floats_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let rows = cli::grid_rows(&GridSpec::default()).unwrap();
    let path = dir.path().join("g.csv");
    cli::write_csv(&path, &rows).unwrap();
    let back: Vec<GridRow> = cli::read_csv(&path).unwrap();
    assert_eq!(rows, back);
}

#[test]
fn simulate_writes_trajectory() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("traj.csv");
    let out = bin()
        .args(["simulate", "--beta", "0.5", "--alpha", "1", "--eps-rel", "0.99", "--tmax", "2000", "--out"])
        .arg(&path)
        .output()
        .unwrap();
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("ConvergedToCycle"), "{stdout}");
    assert!(stdout.contains("predicted"), "{stdout}");
    assert_eq!(first_line(&path), "t,x,y,z");
    let rows: Vec<TrajectoryRow> = cli::read_csv(&path).unwrap();
    assert_eq!(rows.len(), 20_001);
    assert!(rows.windows(2).all(|w| w[1].t > w[0].t));

    let (_, report) = cli::simulate(
        &watt_hopf::Model::pontryagin(0.5, 1.0).unwrap(),
        0.99 * 0.707_106_781_186_547_6,
        &watt_hopf::Model::pontryagin(0.5, 1.0).unwrap().equilibrium().state(),
        1e-3,
        1.0,
        1,
    )
    .unwrap();
    assert!(report.period.is_none());

    let out = bin()
        .args(["simulate", "--beta", "0.5", "--alpha", "1", "--eps-rel", "1.2", "--tmax", "300", "--out"])
        .arg(&path)
        .output()
        .unwrap();
    assert!(String::from_utf8(out.stdout).unwrap().contains("ConvergedToPoint"));
}

#[test]
fn simulate_summary_amplitude() {
    let m = watt_hopf::Model::pontryagin(0.5, 1.0).unwrap();
    let p0 = m.equilibrium().state();
    let eps = 0.99 * watt_hopf::epsilon_critical(&m).unwrap();
    let start = watt_hopf::State { x: p0.x + 0.05, ..p0 };
    let (_, r) = cli::simulate(&m, eps, &start, 1e-3, 2000.0, 1000).unwrap();
    let (a, p) = (r.amplitude_x.unwrap(), r.predicted_amplitude.unwrap());
    assert!((a / p - 1.0).abs() < 0.15, "{a} vs {p}");
}
