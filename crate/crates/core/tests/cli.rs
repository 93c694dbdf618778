use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::Value;
use statemetric::cli::run;
use statemetric::manifest::Manifest;
use tempfile::TempDir;

struct Output {
    code: i32,
    stdout: String,
    stderr: String,
}

fn sm(args: &[&str]) -> Output {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("statemetric").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    Output {
        code,
        stdout: String::from_utf8(out).unwrap(),
        stderr: String::from_utf8(err).unwrap(),
    }
}

fn emit(dir: &TempDir, file: &str, args: &[&str]) -> PathBuf {
    let path = dir.path().join(file);
    let mut full = vec!["models", "emit"];
    full.extend_from_slice(args);
    full.extend_from_slice(&["--out", path.to_str().unwrap()]);
    let o = sm(&full);
    assert_eq!(o.code, 0, "{}", o.stderr);
    path
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

fn metric_of(v: &Value) -> Vec<Vec<f64>> {
    v["metric"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| {
            r.as_array()
                .unwrap()
                .iter()
                .map(|x| x.as_f64().unwrap())
                .collect()
        })
        .collect()
}

#[test]
fn models_list() {
    let o = sm(&["models", "list"]);
    assert_eq!(o.code, 0);
    assert_eq!(
        o.stdout.lines().collect::<Vec<_>>(),
        [
            "spin",
            "oscillator",
            "two_spin_dm_xx",
            "two_spin_sum",
            "two_spin_directional"
        ]
    );
    assert_eq!(sm(&["models", "emit", "rotor"]).code, 2);
}

#[test]
fn emitted_spin_validates_as_so3() {
    let dir = TempDir::new().unwrap();
    let path = emit(&dir, "spin1.json", &["spin", "--s", "1", "--m", "0"]);
    let o = sm(&["validate", p(&path)]);
    assert_eq!(o.code, 0, "{}", o.stdout);
    assert!(o.stdout.contains("algebra: so3"));
}

#[test]
fn validate_failures() {
    let dir = TempDir::new().unwrap();
    let path = emit(&dir, "spin.json", &["spin"]);
    let text = std::fs::read_to_string(&path).unwrap();

    let mut man = Manifest::from_json(&text).unwrap();
    man.generators[1].matrix[0][1] = [0.5, 0.25];
    let bad = dir.path().join("nonhermitian.json");
    std::fs::write(&bad, man.to_json()).unwrap();
    let o = sm(&["validate", p(&bad)]);
    assert_eq!(o.code, 1);
    assert!(o.stderr.contains("`Sx`"), "{}", o.stderr);

    let missing = dir.path().join("missing.json");
    std::fs::write(&missing, text.replace(", \"parameter\": \"theta3\"", "")).unwrap();
    let o = sm(&["validate", p(&missing)]);
    assert_eq!(o.code, 2);
    assert!(o.stderr.contains("parameter"), "{}", o.stderr);

    assert_eq!(sm(&["validate", "/nonexistent/manifest.json"]).code, 1);
}

#[test]
fn spin_half_metric_on_equator() {
    let dir = TempDir::new().unwrap();
    let path = emit(&dir, "spin.json", &["spin", "--s", "0.5"]);
    let args = [
        "metric",
        p(&path),
        "--at",
        "theta2=1.5707963267948966",
        "--defaults-zero",
    ];
    let o = sm(&args);
    assert_eq!(o.code, 0, "{}", o.stderr);
    let v: Value = serde_json::from_str(&o.stdout).unwrap();
    let g = metric_of(&v);
    let want = [[0.25, 0.0, 0.0], [0.0, 0.25, 0.0], [0.0, 0.0, 0.0]];
    for i in 0..3 {
        for j in 0..3 {
            assert!((g[i][j] - want[i][j]).abs() < 1e-10);
        }
    }
    assert_eq!(v["rank"], 2);
    assert_eq!(v["flat"], false);
    assert!(v["oracle_max_diff"].as_f64().unwrap() < 1e-6);
    assert_eq!(sm(&args).stdout, o.stdout);

    let o = sm(&["metric", p(&path), "--at", "theta2=1.0"]);
    assert_eq!(o.code, 2);
    assert!(o.stderr.contains("theta1"));
    assert_eq!(
        sm(&["metric", p(&path), "--at", "theta9=1", "--defaults-zero"]).code,
        2
    );
    assert_eq!(
        sm(&["metric", p(&path), "--defaults-zero", "--step", "0.5"]).code,
        2
    );
}

#[test]
fn oscillator_metric_is_flat() {
    let dir = TempDir::new().unwrap();
    let path = emit(
        &dir,
        "osc.json",
        &["oscillator", "--n", "1", "--trunc", "64"],
    );
    let o = sm(&["metric", p(&path), "--at", "theta=0.4", "--at", "phi=-0.7"]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    let v: Value = serde_json::from_str(&o.stdout).unwrap();
    let g = metric_of(&v);
    assert!((g[0][0] - 1.5).abs() < 1e-6 && (g[1][1] - 1.5).abs() < 1e-6);
    assert!(g[0][1].abs() < 1e-8);
    assert_eq!(v["flat"], true);
}

#[test]
fn emitted_oscillator_dimension() {
    let o = sm(&["models", "emit", "oscillator", "--n", "0", "--trunc", "64"]);
    assert_eq!(o.code, 0);
    let man = Manifest::from_json(&o.stdout).unwrap();
    assert_eq!(man.dimension, 64);
    assert!(man
        .generators
        .iter()
        .all(|g| g.matrix.len() == 64 && g.matrix[0].len() == 64));
}

fn kron(a: &[[f64; 2]; 2], b: &[[f64; 2]; 2]) -> [[f64; 4]; 4] {
    let mut out = [[0.0; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            out[i][j] = a[i / 2][j / 2] * b[i % 2][j % 2];
        }
    }
    out
}

#[test]
fn emitted_two_spin_generators() {
    let o = sm(&[
        "models",
        "emit",
        "two_spin_dm_xx",
        "--J1",
        "1",
        "--J2",
        "0.5",
        "--hz",
        "2",
    ]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    let man = Manifest::from_json(&o.stdout).unwrap();
    // S_y = i * sy_im
    let sx = [[0.0, 0.5], [0.5, 0.0]];
    let sy_im = [[0.0, -0.5], [0.5, 0.0]];
    let sz = [[0.5, 0.0], [0.0, -0.5]];
    let id = [[1.0, 0.0], [0.0, 1.0]];
    let z1 = kron(&sz, &id);
    let z2 = kron(&id, &sz);
    let xy = kron(&sx, &sy_im);
    let yx = kron(&sy_im, &sx);
    let xx = kron(&sx, &sx);
    let yy_re = kron(&sy_im, &sy_im);
    for i in 0..4 {
        for j in 0..4 {
            let a1 = man.generators[0].matrix[i][j];
            assert!((a1[0] - 0.5 * (z1[i][j] - z2[i][j])).abs() < 1e-15 && a1[1] == 0.0);
            let a2 = man.generators[1].matrix[i][j];
            assert!(a2[0].abs() < 1e-15 && (a2[1] - (xy[i][j] - yx[i][j])).abs() < 1e-15);
            let a3 = man.generators[2].matrix[i][j];
            assert!((a3[0] - (xx[i][j] - yy_re[i][j])).abs() < 1e-15 && a3[1].abs() < 1e-15);
        }
    }
    assert!(man.name.contains("J2=0.5"));
}

#[test]
fn manifests_round_trip_byte_identical() {
    let dir = TempDir::new().unwrap();
    for (i, args) in [
        vec!["spin", "--s", "1.5", "--m", "-0.5", "--gamma", "1.3"],
        vec![
            "oscillator",
            "--n",
            "2",
            "--trunc",
            "40",
            "--mass",
            "2",
            "--omega",
            "0.5",
        ],
        vec!["two_spin_dm_xx", "--initial", "down-up"],
        vec!["two_spin_sum"],
        vec!["two_spin_directional", "--eta", "0.7", "--chi", "-0.3"],
    ]
    .into_iter()
    .enumerate()
    {
        let path = emit(&dir, &format!("m{i}.json"), &args);
        let text = std::fs::read_to_string(&path).unwrap();
        let again = Manifest::from_json(&text).unwrap().to_json();
        assert_eq!(again, text, "{args:?}");
        let rebuilt =
            Manifest::from_manifold(&Manifest::from_json(&text).unwrap().build().unwrap(), None);
        let mut expected = Manifest::from_json(&text).unwrap();
        expected.algebra = None;
        assert_eq!(rebuilt.to_json(), expected.to_json());
        let o = sm(&["validate", p(&path)]);
        assert_eq!(o.code, 0, "{args:?}\n{}", o.stdout);
    }
}

fn csv_rows(text: &str) -> (Vec<String>, Vec<Vec<f64>>) {
    let mut lines = text.lines();
    let header = lines
        .next()
        .unwrap()
        .split(',')
        .map(str::to_string)
        .collect();
    let rows = lines
        .map(|l| l.split(',').map(|c| c.parse().unwrap()).collect())
        .collect();
    (header, rows)
}

#[test]
fn sphere_grid_csv() {
    let dir = TempDir::new().unwrap();
    let path = emit(&dir, "spin.json", &["spin"]);
    let out = dir.path().join("grid.csv");
    let o = sm(&[
        "grid",
        p(&path),
        "--sweep",
        "theta2=0.1:3.0:30",
        "--defaults-zero",
        "--format",
        "csv",
        "--out",
        p(&out),
    ]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    let (header, rows) = csv_rows(&std::fs::read_to_string(&out).unwrap());
    assert_eq!(
        header,
        ["theta2", "g_11", "g_12", "g_13", "g_22", "g_23", "g_33"]
    );
    assert_eq!(rows.len(), 30);
    for r in &rows {
        assert!((r[1] / r[0].sin().powi(2) - 0.25).abs() < 1e-12);
    }
}

#[test]
fn single_node_grid_matches_metric() {
    let dir = TempDir::new().unwrap();
    let path = emit(&dir, "spin.json", &["spin", "--s", "1", "--m", "1"]);
    let o = sm(&[
        "grid",
        p(&path),
        "--sweep",
        "theta2=0.8:0.8:1",
        "--at",
        "theta1=0.2",
        "--at",
        "theta3=-0.4",
        "--format",
        "csv",
    ]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    let (_, rows) = csv_rows(&o.stdout);
    assert_eq!(rows.len(), 1);
    let m = sm(&[
        "metric",
        p(&path),
        "--at",
        "theta1=0.2",
        "--at",
        "theta2=0.8",
        "--at",
        "theta3=-0.4",
    ]);
    let g = metric_of(&serde_json::from_str(&m.stdout).unwrap());
    let upper: Vec<f64> = (0..3)
        .flat_map(|i| (i..3).map(move |j| (i, j)))
        .map(|(i, j)| g[i][j])
        .collect();
    assert_eq!(&rows[0][1..], &upper[..]);
}

#[test]
fn heisenberg_grid_is_constant() {
    let dir = TempDir::new().unwrap();
    let path = emit(&dir, "osc.json", &["oscillator"]);
    let o = sm(&[
        "grid",
        p(&path),
        "--sweep",
        "theta=-1:1:5",
        "--sweep",
        "phi=-1:1:5",
        "--format",
        "csv",
    ]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    let (header, rows) = csv_rows(&o.stdout);
    assert_eq!(header, ["theta", "phi", "g_11", "g_12", "g_22"]);
    assert_eq!(rows.len(), 25);
    for r in &rows {
        for k in 2..5 {
            assert!((r[k] - rows[0][k]).abs() < 1e-9);
        }
    }

    let json = sm(&[
        "grid",
        p(&path),
        "--sweep",
        "theta=-1:1:3",
        "--sweep",
        "phi=0:0:1",
    ]);
    let v: Value = serde_json::from_str(&json.stdout).unwrap();
    assert_eq!(v["nodes"].as_array().unwrap().len(), 3);
    assert_eq!(
        sm(&[
            "grid",
            p(&path),
            "--sweep",
            "theta=-1:1:0",
            "--defaults-zero"
        ])
        .code,
        2
    );
    assert_eq!(sm(&["grid", p(&path), "--sweep", "theta=-1:1:3"]).code, 2);
}

#[test]
fn curvature_command() {
    let dir = TempDir::new().unwrap();
    let spin = emit(&dir, "spin.json", &["spin"]);
    let o = sm(&[
        "curvature",
        p(&spin),
        "--at",
        "theta2=1.2",
        "--defaults-zero",
        "--section",
        "theta1,theta2",
    ]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    let v: Value = serde_json::from_str(&o.stdout).unwrap();
    assert!((v["gaussian_curvature"].as_f64().unwrap() - 4.0).abs() < 1e-4);
    assert!((v["radius"].as_f64().unwrap() - 0.5).abs() < 1e-6);
    assert_eq!(v["classification"]["kind"], "sphere");

    let o = sm(&[
        "curvature",
        p(&spin),
        "--at",
        "theta2=1.2",
        "--defaults-zero",
        "--section",
        "theta1,theta3",
    ]);
    assert_eq!(o.code, 1);
    assert!(o.stderr.contains("degenerate"));
    assert_eq!(
        sm(&[
            "curvature",
            p(&spin),
            "--defaults-zero",
            "--section",
            "theta1"
        ])
        .code,
        2
    );

    let osc = emit(&dir, "osc.json", &["oscillator", "--n", "2"]);
    let o = sm(&[
        "curvature",
        p(&osc),
        "--at",
        "theta=0.5",
        "--at",
        "phi=0.1",
        "--section",
        "theta,phi",
    ]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    let v: Value = serde_json::from_str(&o.stdout).unwrap();
    assert!(v["gaussian_curvature"].as_f64().unwrap().abs() < 1e-5);
    assert_eq!(v["classification"]["kind"], "flat");
    assert!(v["radius"].is_null());
}

#[test]
fn verify_groups_and_fault() {
    let o = sm(&["verify", "--only", "sphere"]);
    assert_eq!(o.code, 0, "{}", o.stdout);
    let ids: Vec<&str> = o.stdout.lines().filter(|l| l.starts_with("PASS")).collect();
    assert_eq!(ids.len(), 3);

    let o = sm(&["verify", "--only", "algebra", "--inject-fault", "flip-sy"]);
    assert_eq!(o.code, 1);
    assert!(
        o.stdout.contains("failed: [6] algebra validation"),
        "{}",
        o.stdout
    );

    assert_eq!(sm(&["verify", "--only", "nothing"]).code, 2);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(sm(&[]).code, 2);
    assert_eq!(sm(&["frobnicate"]).code, 2);
    assert_eq!(sm(&["metric"]).code, 2);
    let help = sm(&["--help"]);
    assert_eq!(help.code, 0);
    assert!(help.stdout.contains("curvature"));
}

#[test]
fn binary_honours_thread_count() {
    let dir = TempDir::new().unwrap();
    let path = emit(&dir, "spin.json", &["spin", "--s", "1.5", "--m", "0.5"]);
    let bin = env!("CARGO_BIN_EXE_statemetric");
    let grid = |threads: Option<&str>| {
        let mut cmd = Command::new(bin);
        cmd.args([
            "grid",
            p(&path),
            "--sweep",
            "theta1=-3:3:7",
            "--sweep",
            "theta2=0.1:3:9",
            "--defaults-zero",
        ]);
        if let Some(t) = threads {
            cmd.env("STATEMETRIC_THREADS", t);
        }
        cmd.output().unwrap()
    };
    let one = grid(Some("1"));
    let many = grid(Some("4"));
    let default = grid(None);
    assert!(one.status.success());
    assert_eq!(one.stdout, many.stdout);
    assert_eq!(one.stdout, default.stdout);
    let bad = grid(Some("lots"));
    assert_eq!(bad.status.code(), Some(2));

    let fault = Command::new(bin)
        .args(["verify", "--only", "algebra", "--inject-fault", "flip-sy"])
        .output()
        .unwrap();
    assert_eq!(fault.status.code(), Some(1));
}
