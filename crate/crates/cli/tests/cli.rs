//! End-to-end checks of the `icic` binary: exit codes, CSV shape,
//! determinism, and the qualitative sweep properties.

use std::path::PathBuf;
use std::process::Command;

fn icic() -> Command {
    Command::new(env!("CARGO_BIN_EXE_icic"))
}

fn tmp(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("icic-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn read_rows(path: &PathBuf) -> (Vec<String>, Vec<Vec<String>>) {
    let text = std::fs::read_to_string(path).unwrap();
    let mut lines = text.lines().filter(|l| !l.starts_with('#'));
    let header: Vec<String> = lines.next().unwrap().split(',').map(str::to_string).collect();
    let rows = lines.map(|l| l.split(',').map(str::to_string).collect()).collect();
    (header, rows)
}

#[test]
fn validate_quick_exits_zero() {
    let status = icic().args(["validate", "--quick"]).status().unwrap();
    assert!(status.success());
}

#[test]
fn simvcalc_sweep_properties_and_determinism() {
    let out = tmp("simvcalc.csv");
    let run = |path: &PathBuf| {
        let status = icic()
            .args(["simvcalc", "--p0-db", "10", "--trials", "4000", "--step", "0.2"])
            .arg("--out")
            .arg(path)
            .status()
            .unwrap();
        assert!(status.success());
    };
    run(&out);
    let (header, rows) = read_rows(&out);
    assert_eq!(header[0], "p0_db");
    assert!(header.contains(&"analytic_ic_ic".to_string()));
    assert_eq!(rows.len(), 4); // steps 0.2, 0.4, 0.6, 0.8
    let col = |name: &str| header.iter().position(|h| h == name).unwrap();
    for row in &rows {
        let get = |name: &str| row[col(name)].parse::<f64>().unwrap();
        // At P0 = 10 dB the (IC,IC) pair dominates every other pair.
        let icic_rate = get("analytic_ic_ic");
        for other in ["analytic_bf_bf", "analytic_bf_ic", "analytic_ic_bf"] {
            assert!(icic_rate > get(other), "IC,IC not uppermost at row {row:?}");
        }
        // Monte Carlo column agrees with the analytic one (5 sigma slack).
        for label in ["bf_bf", "bf_ic", "ic_bf", "ic_ic"] {
            let diff = (get(&format!("analytic_{label}")) - get(&format!("mc_{label}"))).abs();
            let band = get(&format!("ci95_{label}")) * (5.0 / 1.96);
            assert!(diff <= band, "MC disagrees beyond 5 sigma at {label}: {row:?}");
        }
    }
    // Byte-identical on rerun with the same config.
    let again = tmp("simvcalc2.csv");
    run(&again);
    assert_eq!(std::fs::read(&out).unwrap(), std::fs::read(&again).unwrap());
}

#[test]
fn regions_majorities_and_swap_symmetry() {
    let out = tmp("regions.csv");
    let status = icic()
        .args(["regions", "--p0-db", "-5,5,10", "--step", "0.1"])
        .arg("--out")
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());
    let (header, rows) = read_rows(&out);
    let col = |name: &str| header.iter().position(|h| h == name).unwrap();
    let share = |p0: &str, label: &str| {
        let total = rows.iter().filter(|r| r[col("p0_db")].starts_with(p0)).count();
        let hits = rows
            .iter()
            .filter(|r| r[col("p0_db")].starts_with(p0) && r[col("profile")] == label)
            .count();
        hits as f64 / total as f64
    };
    assert!(share("-5", "BF-BF") > 0.5);
    assert!(share("10", "IC1-IC0") > 0.5);

    // Mirroring both users swaps the selected strategies (checked at 5 dB
    // where the map is genuinely mixed).
    let mut map = std::collections::HashMap::new();
    for r in rows.iter().filter(|r| r[col("p0_db")].starts_with("5.")) {
        map.insert((r[col("x1")].clone(), r[col("x2")].clone()), r[col("profile")].clone());
    }
    let swap_label = |label: &str| -> String {
        let parts: Vec<&str> = label.split('-').collect();
        let flip = |s: &str| match s {
            "BF" => "BF".to_string(),
            "IC1" => "IC0".to_string(),
            "IC0" => "IC1".to_string(),
            other => other.to_string(),
        };
        format!("{}-{}", flip(parts[1]), flip(parts[0]))
    };
    for ((x1, x2), label) in &map {
        let mx1 = format!("-{x2}");
        let mx2 = x1.trim_start_matches('-').to_string();
        let mirrored = map.get(&(mx1, mx2)).expect("mirrored grid point exists");
        assert_eq!(*mirrored, swap_label(label), "asymmetry at ({x1}, {x2})");
    }
}

#[test]
fn simvcalc_single_point_sweep() {
    let out = tmp("simvcalc_single.csv");
    let status = icic()
        .args(["simvcalc", "--p0-db", "10", "--trials", "1000", "--step", "0.5"])
        .arg("--out")
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());
    let (_, rows) = read_rows(&out);
    assert_eq!(rows.len(), 1, "step 0.5 leaves exactly one sweep point");
}

#[test]
fn compare3_adaptive_dominates() {
    let out = tmp("compare3.csv");
    let status = icic()
        .args(["compare3", "--p0-db", "0,15", "--placements", "150"])
        .arg("--out")
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());
    let (header, rows) = read_rows(&out);
    let col = |name: &str| header.iter().position(|h| h == name).unwrap();
    for row in &rows {
        let get = |name: &str| row[col(name)].parse::<f64>().unwrap();
        assert!(get("adaptive_avg") >= get("no_avg") - 1e-9);
        assert!(get("adaptive_avg") >= get("static_avg") - 1e-9);
    }
}

#[test]
fn csicost_bounds() {
    let out = tmp("csicost.csv");
    let status = icic()
        .args(["csicost", "--p0-db", "-5,15", "--placements", "100"])
        .arg("--out")
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());
    let (header, rows) = read_rows(&out);
    let col = |name: &str| header.iter().position(|h| h == name).unwrap();
    let mut prev = 0.0;
    for row in &rows {
        let get = |name: &str| row[col(name)].parse::<f64>().unwrap();
        assert_eq!(get("no_icic"), 3.0);
        assert_eq!(get("static_icic"), 9.0);
        let ad = get("adaptive_mean");
        assert!((3.0..=9.0).contains(&ad));
        assert!(ad >= prev, "adaptive CSI cost should grow with P0");
        prev = ad;
    }
}

#[test]
fn config_file_merges_and_flags_override() {
    let cfg_path = tmp("exp.cfg");
    std::fs::write(&cfg_path, "p0_db = 10\ntrials = 2000\nstep = 0.25\nseed = 9\n").unwrap();
    let out = tmp("fromcfg.csv");
    let status = icic()
        .arg("simvcalc")
        .arg("--config")
        .arg(&cfg_path)
        .args(["--trials", "1000"]) // flag overrides the file
        .arg("--out")
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(text.contains("trials=1000"), "flag should override config file");
    assert!(text.contains("step=0.25"), "file value should survive");
    assert!(text.contains("seed=9"));
}

#[test]
fn invalid_inputs_exit_nonzero() {
    // empty p0 list
    let status = icic().args(["compare3", "--p0-db", ""]).status().unwrap();
    assert!(!status.success());
    // bad step
    let status = icic().args(["regions", "--step", "0"]).status().unwrap();
    assert!(!status.success());
    // unknown config key
    let cfg_path = tmp("bad.cfg");
    std::fs::write(&cfg_path, "nonsense = 1\n").unwrap();
    let status = icic().arg("simvcalc").arg("--config").arg(&cfg_path).status().unwrap();
    assert!(!status.success());
}
