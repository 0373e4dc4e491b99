use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use spectral_kcluster::{dense_spectrum_oracle, Graph};
use spectral_kcluster_cli::{manifest_path, render_spectrum_svg};

const BIN: &str = env!("CARGO_BIN_EXE_spectral-kcluster");

fn cli(dir: &Path, args: &[&str]) -> Output {
    Command::new(BIN)
        .args(args)
        .current_dir(dir)
        .env_remove("SPECTRAL_SEED")
        .output()
        .unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn write_graph(dir: &Path, name: &str, g: &Graph) -> PathBuf {
    let path = dir.join(name);
    let mut buf = Vec::new();
    g.write_edge_list(&mut buf).unwrap();
    std::fs::write(&path, buf).unwrap();
    path
}

fn read_json(path: &Path) -> Value {
    serde_json::from_slice(&std::fs::read(path).unwrap()).unwrap()
}

fn validate_report(report: &Value) {
    let schema_path = Path::new(env!("CARGO_MANIFEST_DIR")).join("schemas/report.schema.json");
    let validator = jsonschema::validator_for(&read_json(&schema_path)).unwrap();
    let errors: Vec<String> = validator
        .iter_errors(report)
        .map(|e| e.to_string())
        .collect();
    assert!(errors.is_empty(), "schema violations: {errors:?}");
}

#[test]
fn version_lists_formats() {
    let dir = tempfile::tempdir().unwrap();
    let out = cli(dir.path(), &["--version"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(
        text.contains("manifest v1") && text.contains("report v1"),
        "{text}"
    );
}

#[test]
fn usage_errors_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    write_graph(d, "g.txt", &Graph::cycle(8));
    for args in [
        vec!["cluster", "--graph", "g.txt", "--k", "1", "--out", "p.csv"],
        vec![
            "cluster",
            "--graph",
            "g.txt",
            "--k",
            "2",
            "--radius",
            "1",
            "--radius-scale",
            "2",
            "--out",
            "p.csv",
        ],
        vec![
            "cluster",
            "--graph",
            "g.txt",
            "--k",
            "2",
            "--method",
            "fast",
            "--epsilon",
            "0",
            "--out",
            "p.csv",
        ],
        vec![
            "spectrum", "--graph", "g.txt", "--k", "51", "--out", "s.csv",
        ],
        vec!["frobnicate"],
        vec![],
    ] {
        let out = cli(d, &args);
        assert_eq!(code(&out), 1, "{args:?}: {}", stderr(&out));
        assert!(
            stderr(&out).starts_with("error[usage]: "),
            "{}",
            stderr(&out)
        );
    }
}

#[test]
fn data_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    write_graph(d, "g.txt", &Graph::cycle(8));
    std::fs::write(d.join("bad.txt"), "0 1\n1 1\n").unwrap();
    std::fs::write(d.join("short.csv"), "vertex,cluster\n0,0\n1,1\n").unwrap();
    for args in [
        vec![
            "evaluate",
            "--graph",
            "g.txt",
            "--partition",
            "missing.csv",
            "--out",
            "r.json",
        ],
        vec![
            "evaluate",
            "--graph",
            "g.txt",
            "--partition",
            "short.csv",
            "--out",
            "r.json",
        ],
        vec![
            "spectrum", "--graph", "bad.txt", "--k", "2", "--out", "s.csv",
        ],
        vec![
            "spectrum",
            "--graph",
            "g.txt",
            "--k",
            "2",
            "--out",
            "no/such/dir/s.csv",
        ],
    ] {
        let out = cli(d, &args);
        assert_eq!(code(&out), 2, "{args:?}: {}", stderr(&out));
        let err = stderr(&out);
        assert!(
            err.starts_with("error[data]: ") && err.lines().count() == 1,
            "{err}"
        );
    }
    assert!(stderr(&cli(
        d,
        &["spectrum", "--graph", "bad.txt", "--k", "2", "--out", "s.csv"]
    ))
    .contains("line 2"));
}

#[test]
fn solver_failure_exits_three() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    write_graph(d, "g.txt", &Graph::cycle(60));
    let out = cli(
        d,
        &[
            "spectrum",
            "--graph",
            "g.txt",
            "--k",
            "4",
            "--dense-cutoff",
            "0",
            "--max-iter",
            "6",
            "--out",
            "s.csv",
        ],
    );
    assert_eq!(code(&out), 3, "{}", stderr(&out));
    assert!(stderr(&out).starts_with("error[numerical]: "));
    assert!(!d.join("s.csv").exists());
}

#[test]
fn force_lifts_the_k_guard() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    write_graph(d, "g.txt", &Graph::cycle(60));
    let out = cli(
        d,
        &[
            "spectrum", "--graph", "g.txt", "--k", "51", "--force", "--out", "s.csv",
        ],
    );
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let text = std::fs::read_to_string(d.join("s.csv")).unwrap();
    assert_eq!(text.lines().count(), 53);
}

#[test]
fn pipeline_report_matches_schema() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let steps: [&[&str]; 4] = [
        &[
            "generate",
            "--seed",
            "7",
            "--out",
            "g.txt",
            "--blocks-out",
            "blocks.csv",
        ],
        &["embed", "--graph", "g.txt", "--k", "5", "--out", "emb.csv"],
        &[
            "cluster",
            "--graph",
            "g.txt",
            "--k",
            "5",
            "--radius-scale",
            "200",
            "--out",
            "p.csv",
            "--trace",
            "t.json",
        ],
        &[
            "evaluate",
            "--graph",
            "g.txt",
            "--partition",
            "p.csv",
            "--reference",
            "blocks.csv",
            "--out",
            "report.json",
        ],
    ];
    for args in steps {
        let out = cli(d, args);
        assert_eq!(code(&out), 0, "{args:?}: {}", stderr(&out));
    }
    let report = read_json(&d.join("report.json"));
    validate_report(&report);
    assert_eq!(report["distance_to_reference"], 0);
    assert_eq!(report["gap"]["cheeger_bound_ok"], true);
    assert_eq!(report["concentration"].as_array().unwrap().len(), 5);

    let emb = std::fs::read_to_string(d.join("emb.csv")).unwrap();
    assert!(emb.starts_with("vertex,x1,x2,x3,x4,x5\n"));
    assert_eq!(emb.lines().count(), 201);
    let trace = read_json(&d.join("t.json"));
    assert_eq!(trace.as_array().unwrap().len(), 4);
    assert_eq!(trace[0]["ball_size"], 40);

    let manifest = read_json(&manifest_path(&d.join("p.csv")));
    let r = manifest["resolved"]["radius"].as_f64().unwrap();
    assert!(r > 0.0);
    assert_eq!(manifest["outputs"].as_object().unwrap().len(), 2);
}

#[test]
fn infinite_gap_and_singletons_match_schema() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    write_graph(
        d,
        "two.txt",
        &Graph::complete(3).disjoint_union(&Graph::complete(3)),
    );
    std::fs::write(
        d.join("p.csv"),
        "vertex,cluster\n0,0\n1,0\n2,0\n3,1\n4,1\n5,1\n",
    )
    .unwrap();
    let out = cli(
        d,
        &[
            "evaluate",
            "--graph",
            "two.txt",
            "--partition",
            "p.csv",
            "--out",
            "r.json",
        ],
    );
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let report = read_json(&d.join("r.json"));
    validate_report(&report);
    assert_eq!(report["gap"]["ratio"], "inf");
    assert_eq!(report["per_cluster"][0]["phi_in"]["exact"], 1.0);

    write_graph(d, "k4.txt", &Graph::complete(4));
    std::fs::write(d.join("q.csv"), "vertex,cluster\n0,0\n1,1\n2,1\n3,1\n").unwrap();
    let out = cli(
        d,
        &[
            "evaluate",
            "--graph",
            "k4.txt",
            "--partition",
            "q.csv",
            "--out",
            "r2.json",
        ],
    );
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let report = read_json(&d.join("r2.json"));
    validate_report(&report);
    assert!(report["per_cluster"][0]["phi_in"].is_null());
    assert!(report["per_cluster"][0]["diagnostic"].is_string());
}

#[test]
fn empty_cluster_is_flagged_in_trace() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    write_graph(
        d,
        "two.txt",
        &Graph::complete(3).disjoint_union(&Graph::complete(3)),
    );
    let out = cli(
        d,
        &[
            "cluster", "--graph", "two.txt", "--k", "3", "--radius", "10", "--out", "p.csv",
            "--trace", "t.json",
        ],
    );
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert!(stderr(&out).contains("empty clusters"));
    let trace = read_json(&d.join("t.json"));
    assert!(trace[1]["center"].is_null());
    // Trailing empty clusters do not survive the CSV: labels 1 and 2 are unused.
    let out = cli(
        d,
        &[
            "evaluate",
            "--graph",
            "two.txt",
            "--partition",
            "p.csv",
            "--out",
            "r.json",
        ],
    );
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert_eq!(read_json(&d.join("r.json"))["clusters"], 1);

    // An unused label below the maximum is an empty cluster.
    std::fs::write(
        d.join("gap.csv"),
        "vertex,cluster\n0,0\n1,0\n2,0\n3,2\n4,2\n5,2\n",
    )
    .unwrap();
    let out = cli(
        d,
        &[
            "evaluate",
            "--graph",
            "two.txt",
            "--partition",
            "gap.csv",
            "--out",
            "r.json",
        ],
    );
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("empty"), "{}", stderr(&out));
}

#[test]
fn seed_falls_back_to_environment() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    write_graph(d, "g.txt", &Graph::cycle(12));
    let status = Command::new(BIN)
        .args([
            "cluster", "--graph", "g.txt", "--k", "2", "--method", "kmeans", "--out", "p.csv",
        ])
        .current_dir(d)
        .env("SPECTRAL_SEED", "41")
        .status()
        .unwrap();
    assert!(status.success());
    let manifest = read_json(&manifest_path(&d.join("p.csv")));
    assert_eq!(manifest["seed"], 41);
    assert_eq!(manifest["params"]["cluster"]["seed"], 41);
}

#[test]
fn replay_detects_changed_inputs() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    write_graph(d, "g.txt", &Graph::cycle(10));
    assert_eq!(
        code(&cli(
            d,
            &["spectrum", "--graph", "g.txt", "--k", "3", "--out", "s.csv"]
        )),
        0
    );
    let m = manifest_path(Path::new("s.csv"));
    let m = m.to_str().unwrap();
    assert_eq!(code(&cli(d, &["replay", "--manifest", m])), 0);
    write_graph(d, "g.txt", &Graph::cycle(11));
    let out = cli(d, &["replay", "--manifest", m]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("changed"));
}

fn circles(svg: &str) -> Vec<(usize, f64)> {
    svg.lines()
        .filter(|l| l.starts_with("<circle"))
        .map(|l| {
            let attr = |name: &str| {
                let start = l.find(&format!("{name}=\"")).unwrap() + name.len() + 2;
                let end = start + l[start..].find('"').unwrap();
                l[start..end].to_string()
            };
            (
                attr("data-index").parse().unwrap(),
                attr("data-value").parse().unwrap(),
            )
        })
        .collect()
}

#[test]
fn cycle_four_plot() {
    let spec = dense_spectrum_oracle(&Graph::cycle(4)).unwrap();
    let svg = render_spectrum_svg(spec.values(), 2).unwrap();
    let points = circles(&svg);
    let expected = [0.0, 1.0, 1.0, 2.0];
    assert_eq!(points.len(), 4);
    for ((i, v), (j, want)) in points.iter().zip(expected.iter().enumerate()) {
        assert_eq!(*i, j + 1);
        assert!((v - want).abs() < 1e-12);
    }
    assert!(svg.contains(r#"class="gap" data-from="2" data-to="3""#));
    assert!(render_spectrum_svg(&[], 2).is_err());
}

#[test]
fn planted_plot_shows_gap_after_five() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert_eq!(
        code(&cli(d, &["generate", "--seed", "7", "--out", "g.txt"])),
        0
    );
    let out = cli(
        d,
        &[
            "spectrum", "--graph", "g.txt", "--k", "5", "--out", "s.csv", "--plot", "s.svg",
        ],
    );
    assert_eq!(code(&out), 0);
    let svg = std::fs::read_to_string(d.join("s.svg")).unwrap();
    let v: Vec<f64> = circles(&svg).into_iter().map(|(_, v)| v).collect();
    assert_eq!(v.len(), 6);
    assert!(v[5] - v[4] > v[4] - v[3]);
}
