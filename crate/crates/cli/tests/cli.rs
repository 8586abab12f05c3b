use std::path::Path;
use std::process::{Command, Output};

use fracspec::{run, Config, RunOptions};

fn fracspec(args: &[&str], cwd: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fracspec"))
        .args(args)
        .current_dir(cwd)
        .output()
        .expect("binary runs")
}

fn read(dir: &Path, rel: &str) -> String {
    std::fs::read_to_string(dir.join(rel)).unwrap_or_else(|e| panic!("{rel}: {e}"))
}

fn report(dir: &Path, id: &str) -> serde_json::Value {
    serde_json::from_str(&read(dir, &format!("out/{id}/report.json"))).unwrap()
}

#[test]
fn dim_reports_middle_thirds_slope() {
    let tmp = tempfile::tempdir().unwrap();
    let out = fracspec(&["dim", "--out", "out"], tmp.path());
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let slope = report(tmp.path(), "dim")["metrics"]["slope"]["value"].as_f64().unwrap();
    assert!((slope - 2f64.ln() / 3f64.ln()).abs() < 1e-3, "slope {slope}");
    assert!(read(tmp.path(), "out/dim/counts.csv").starts_with("eps,count\n"));
}

#[test]
fn identical_inputs_give_identical_artifacts() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    for dir in [&a, &b] {
        std::fs::write(dir.path().join("run.cfg"), "[tauberian]\nm = 16\ntrials = 20\nradial_m = 64\n").unwrap();
        let out = fracspec(&["tauberian", "--config", "run.cfg", "--seed", "11", "--out", "out"], dir.path());
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    }
    for f in ["report.json", "span.csv", "radii.csv", "verdict.json"] {
        let rel = format!("out/tauberian/{f}");
        assert_eq!(read(a.path(), &rel), read(b.path(), &rel), "{f} differs");
    }
}

#[test]
fn digest_depends_on_seed_and_config() {
    let tmp = tempfile::tempdir().unwrap();
    let mut config = Config::parse("construct.level = 2\n").unwrap();
    let opts = |seed| RunOptions {
        seed,
        out: tmp.path().to_path_buf(),
        jobs: 1,
    };
    let first = run("construct", &config, &opts(Some(1))).unwrap();
    let again = run("construct", &config, &opts(Some(1))).unwrap();
    let reseeded = run("construct", &config, &opts(Some(2))).unwrap();
    config.set("construct.level", "3");
    let changed = run("construct", &config, &opts(Some(1))).unwrap();
    assert_eq!(first.inputs_digest, again.inputs_digest);
    assert_ne!(first.inputs_digest, reseeded.inputs_digest);
    assert_ne!(first.inputs_digest, changed.inputs_digest);
    assert_eq!(changed.metrics["member_count"].value, 8);
}

#[test]
fn thread_count_does_not_change_results() {
    let tmp = tempfile::tempdir().unwrap();
    std::fs::write(
        tmp.path().join("f.cfg"),
        "fourier.samples = 201\nfourier.j1 = 8\nfourier.product_samples = 9\ntauberian.trials = 30\n",
    )
    .unwrap();
    for (jobs, out) in [("1", "serial"), ("4", "parallel")] {
        for id in ["fourier", "tauberian"] {
            let o = fracspec(&[id, "--config", "f.cfg", "--seed", "5", "--jobs", jobs, "--out", out], tmp.path());
            assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
        }
    }
    for rel in [
        "fourier/spectral.csv",
        "fourier/product_spectral.csv",
        "fourier/annulus.csv",
        "fourier/report.json",
        "tauberian/span.csv",
        "tauberian/report.json",
    ] {
        assert_eq!(read(tmp.path(), &format!("serial/{rel}")), read(tmp.path(), &format!("parallel/{rel}")), "{rel}");
    }
}

#[test]
fn unknown_experiment_exits_with_two() {
    let tmp = tempfile::tempdir().unwrap();
    let out = fracspec(&["sparkle"], tmp.path());
    assert_eq!(out.status.code(), Some(2));
    let err: serde_json::Value = serde_json::from_slice(&out.stderr).unwrap();
    assert!(err["error"].as_str().unwrap().contains("sparkle"));
}

#[test]
fn bad_parameters_exit_with_two() {
    let tmp = tempfile::tempdir().unwrap();
    std::fs::write(tmp.path().join("bad.cfg"), "[cantor]\nN = 2\neta = 1/2\npoints = 0, 1/2\nrule = constant\n").unwrap();
    let out = fracspec(&["construct", "--config", "bad.cfg"], tmp.path());
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("N*eta < 1"));

    std::fs::write(tmp.path().join("dup.cfg"), "a = 1\na = 2\n").unwrap();
    assert_eq!(fracspec(&["dim", "--config", "dup.cfg"], tmp.path()).status.code(), Some(2));
}

#[test]
fn randomness_requires_a_seed() {
    let tmp = tempfile::tempdir().unwrap();
    std::fs::write(tmp.path().join("r.cfg"), "[cantor]\nrandom = true\nN = 4\neta = 1/16\n").unwrap();
    let out = fracspec(&["construct", "--config", "r.cfg"], tmp.path());
    assert_eq!(out.status.code(), Some(2));
    let ok = fracspec(&["construct", "--config", "r.cfg", "--seed", "3", "--out", "out"], tmp.path());
    assert!(ok.status.success(), "{}", String::from_utf8_lossy(&ok.stderr));
    assert!(read(tmp.path(), "out/construct/params.txt").contains("N = 4"));
}

#[test]
fn verify_runs_named_suites() {
    let tmp = tempfile::tempdir().unwrap();
    let out = fracspec(&["verify", "--suite", "verdict"], tmp.path());
    assert_eq!(out.status.code(), Some(0));
    let summary: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(summary["passed"], 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("criterion 10"));

    let out = fracspec(&["verify", "--suite", "lemma-1.1"], tmp.path());
    let summary: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(summary["results"].as_array().unwrap().len(), 1);
    assert_eq!(summary["results"][0]["id"], 1);

    let out = fracspec(&["verify", "--suite", "minkowski", "--inject-beta", "0.9"], tmp.path());
    assert_eq!(out.status.code(), Some(1));
    let summary: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(summary["results"][0]["passed"], false);

    assert_eq!(fracspec(&["verify", "--suite", "nope"], tmp.path()).status.code(), Some(2));
}

#[test]
fn minkowski_product_ratios_stay_in_range() {
    let tmp = tempfile::tempdir().unwrap();
    std::fs::write(tmp.path().join("m.cfg"), "minkowski.product = 2\nminkowski.m_max = 6\n").unwrap();
    let out = fracspec(&["minkowski", "--config", "m.cfg", "--out", "out"], tmp.path());
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let csv = read(tmp.path(), "out/minkowski/ratios.csv");
    assert_eq!(csv.lines().count(), 6);
}
