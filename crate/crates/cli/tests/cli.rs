use std::fs;
use std::path::Path;
use std::process::{Command, Output};
use std::time::{Duration, Instant};

fn rotosc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rotosc"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

/// Column `col` of a CSV file as numbers.
fn column(path: &Path, col: usize) -> Vec<f64> {
    fs::read_to_string(path)
        .unwrap()
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(col).unwrap().parse().unwrap())
        .collect()
}

#[test]
fn spectrum_lists_the_closed_form_levels() {
    let dir = tempfile::tempdir().unwrap();
    let out = rotosc(&[
        "spectrum",
        "--mass",
        "1",
        "--n-max",
        "3",
        "--basis-size",
        "32",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "{out:?}");
    let values = column(&dir.path().join("spectrum.csv"), 1);
    let expected: Vec<f64> = [-7.0f64, -5.0, -3.0, -1.0, 1.0, 3.0, 5.0, 7.0]
        .iter()
        .map(|&v| v.signum() * v.abs().sqrt())
        .collect();
    assert_eq!(values.len(), 8);
    for (a, b) in values.iter().zip(&expected) {
        assert!((a - b).abs() < 1e-15, "{a} vs {b}");
    }
}

#[test]
fn instability_profiles() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    assert_eq!(
        code(&rotosc(&[
            "spectrum",
            "--theta",
            "0",
            "--basis-size",
            "64",
            "--out",
            d
        ])),
        0
    );
    assert!(column(&dir.path().join("instability.csv"), 1)
        .iter()
        .all(|&e| e < 1e-8));
    assert_eq!(
        code(&rotosc(&["spectrum", "--basis-size", "128", "--out", d])),
        0
    );
    let errors = column(&dir.path().join("instability.csv"), 1);
    let worst = errors[32..=64].iter().cloned().fold(0.0, f64::max);
    assert!(worst >= 1e4 * errors[2], "{worst} against {}", errors[2]);
}

#[test]
fn projector_norm_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let out = rotosc(&["projnorms", "--out", d]);
    assert_eq!(code(&out), 0);
    let summary = fs::read_to_string(dir.path().join("projnorms_summary.csv")).unwrap();
    let row: Vec<f64> = summary
        .lines()
        .nth(1)
        .unwrap()
        .split(',')
        .map(|v| v.parse().unwrap())
        .collect();
    assert!((row[3] - 0.881374).abs() < 2e-2);
    assert!(row[5] < 2e-2);

    assert_eq!(
        code(&rotosc(&[
            "projnorms",
            "--theta",
            "0",
            "--n-max",
            "40",
            "--out",
            d
        ])),
        0
    );
    assert!(column(&dir.path().join("projnorms.csv"), 1)
        .iter()
        .all(|&v| v.abs() < 1e-14));

    assert_eq!(
        code(&rotosc(&[
            "projnorms",
            "--theta",
            "1.0471975511965976",
            "--n-max",
            "20",
            "--out",
            d
        ])),
        0
    );
    let first = column(&dir.path().join("projnorms.csv"), 1)[0];
    assert!((first - 0.346574).abs() < 1e-6);
}

#[test]
fn pseudo_writes_field_report_and_svg() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let out = rotosc(&[
        "pseudo",
        "--basis-size",
        "48",
        "--grid",
        "-3:3:-3:3:13:13",
        "--svg",
        "--out",
        d,
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let field = fs::read_to_string(dir.path().join("pseudo.csv")).unwrap();
    assert!(field.starts_with("re,im,log10_resnorm,reliable\n"));
    assert_eq!(field.lines().count(), 1 + 13 * 13);
    // antipodal symmetry read back from the file
    let values = column(&dir.path().join("pseudo.csv"), 2);
    let worst = (0..values.len())
        .map(|k| (values[k] - values[values.len() - 1 - k]).abs())
        .fold(0.0, f64::max);
    assert!(worst < 1e-8);
    assert!(stdout(&out).contains("antipodal symmetry deviation"));
    let report = fs::read_to_string(dir.path().join("pseudo_report.csv")).unwrap();
    assert_eq!(report.lines().count(), 4);
    assert!(fs::read_to_string(dir.path().join("pseudo.svg"))
        .unwrap()
        .contains("<path"));
}

#[test]
fn json_carries_meta_and_data() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let out = rotosc(&[
        "nrlimit",
        "--basis-size",
        "64",
        "--c",
        "1,2",
        "--format",
        "json",
        "--out",
        d,
    ]);
    assert_eq!(code(&out), 0);
    let text = fs::read_to_string(dir.path().join("nrlimit.json")).unwrap();
    assert!(text.find("\"meta\"").unwrap() < text.find("\"data\"").unwrap());
    assert!(text.contains("\"basis-size\": \"64\""));
    assert!(text.contains("\"diff_norm\""));
    assert_eq!(text.matches("\"c\":").count(), 3);
}

#[test]
fn rays_and_limit_report_their_checks() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let out = rotosc(&[
        "rays",
        "--mass",
        "0",
        "--basis-size",
        "128",
        "--ray-offsets",
        "2,4,6",
        "--out",
        d,
    ]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("rays: interior ray, strictly increasing: yes"));
    let norms = column(&dir.path().join("rays.csv"), 3);
    assert!(norms.windows(2).all(|w| w[1] > w[0]));

    let out = rotosc(&["nrlimit", "--basis-size", "64", "--out", d]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("strictly decreasing: yes"));
    let diffs = column(&dir.path().join("nrlimit.csv"), 1);
    assert!(diffs.windows(2).all(|w| w[1] < w[0]));
}

#[test]
fn verify_untilted_passes_quickly() {
    let start = Instant::now();
    let out = rotosc(&[
        "verify",
        "--theta",
        "0",
        "--basis-size",
        "64",
        "--seed-check",
    ]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    assert!(start.elapsed() < Duration::from_secs(60));
    let text = stdout(&out);
    assert!(!text.contains("FAIL"));
    assert!(text.lines().filter(|l| l.starts_with("PASS")).count() >= 10);
}

#[test]
fn verify_reports_failures_with_code_4() {
    let out = rotosc(&["verify", "--theta", "1.5", "--basis-size", "32"]);
    assert_eq!(code(&out), 4);
    assert!(stdout(&out).contains("FAIL spectrum"));
}

#[test]
fn exit_codes_for_bad_input() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        &["pseudo", "--basis-size", "16"][..],
        &["pseudo", "--eps", "0.01,0.1"],
        &["spectrum", "--theta", "2"],
        &["nrlimit", "--mass", "0"],
        &["nrlimit", "--z", "1"],
        &["rays", "--ray-offsets", "3,2"],
        &["bogus"],
        &["spectrum", "--no-such-flag"],
        &[],
    ] {
        assert_eq!(code(&rotosc(args)), 2, "{args:?}");
    }
    let file = dir.path().join("occupied");
    fs::write(&file, "x").unwrap();
    let out = rotosc(&[
        "spectrum",
        "--basis-size",
        "32",
        "--out",
        file.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 3);
}

#[test]
fn config_file_with_overrides() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    let out_dir = dir.path().join("res");
    fs::write(
        &cfg,
        format!(
            "# limit run\ncommand = nrlimit\nbasis-size = 64\nc = 1,2,4\nout = {}\n",
            out_dir.display()
        ),
    )
    .unwrap();
    let out = rotosc(&["--config", cfg.to_str().unwrap(), "--theta", "0.3"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(column(&out_dir.join("nrlimit.csv"), 0), vec![1.0, 2.0, 4.0]);
    fs::write(&cfg, "command = nrlimit\nspeed = 3\n").unwrap();
    assert_eq!(code(&rotosc(&["--config", cfg.to_str().unwrap()])), 2);
}

#[test]
fn outputs_do_not_depend_on_thread_count() {
    let dir = tempfile::tempdir().unwrap();
    let mut files = Vec::new();
    for t in ["1", "3"] {
        let d = dir.path().join(t);
        let out = rotosc(&[
            "pseudo",
            "--basis-size",
            "40",
            "--grid",
            "-2:2:-2:2:9:9",
            "--threads",
            t,
            "--out",
            d.to_str().unwrap(),
        ]);
        assert_eq!(code(&out), 0);
        files.push(fs::read(d.join("pseudo.csv")).unwrap());
    }
    assert_eq!(files[0], files[1]);
    let out = rotosc(&[
        "pseudo",
        "--basis-size",
        "40",
        "--grid",
        "-2:2:-2:2:9:9",
        "--seed-check",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert!(stdout(&out).contains("seed-check pseudo: identical output"));
}
