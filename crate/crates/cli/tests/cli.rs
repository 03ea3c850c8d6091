use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_alphacent"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn ok(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    stdout(&out)
}

fn csv_rows(text: &str) -> Vec<Vec<String>> {
    csv::Reader::from_reader(text.as_bytes())
        .records()
        .map(|r| r.unwrap().iter().map(str::to_string).collect())
        .collect()
}

fn write_temp(dir: &tempfile::TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

#[test]
fn spectrum_reports_karate_radius() {
    let text = ok(&["spectrum", "--dataset", "karate"]);
    let rows = csv_rows(&text);
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0][0], "34");
    assert_eq!(rows[0][1], "78");
    assert_eq!(rows[0][3], "0.148683");
    assert_eq!(rows[0][4], "17");
}

#[test]
fn identical_invocations_are_byte_identical() {
    for args in [
        &["rank", "--dataset", "karate"][..],
        &[
            "sweep",
            "--dataset",
            "karate",
            "--alphas",
            "0,0.05,0.1,0.14",
            "--format",
            "json",
        ][..],
        &["communities", "--dataset", "football", "--alpha", "0.05"][..],
    ] {
        let a = run(args);
        let b = run(args);
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn converged_rank_sits_on_the_plateau() {
    let parse = |text: String| -> Vec<(String, f64)> {
        csv_rows(&text)
            .into_iter()
            .map(|r| (r[0].clone(), r[1].parse().unwrap()))
            .collect()
    };
    let conv = parse(ok(&["rank", "--dataset", "karate", "--alpha", "converged"]));
    for alpha in ["0.3", "0.9"] {
        let fixed = parse(ok(&["rank", "--dataset", "karate", "--alpha", alpha]));
        assert_eq!(conv.len(), fixed.len());
        for ((n1, s1), (n2, s2)) in conv.iter().zip(&fixed) {
            assert!(
                (s1 - s2).abs() <= 1e-6,
                "alpha {alpha}: {n1}={s1} vs {n2}={s2}"
            );
        }
    }
    assert_eq!(conv[0].0, "34");
    assert_eq!(conv[1].0, "1");
}

#[test]
fn rank_json_carries_metadata() {
    let text = ok(&[
        "rank",
        "--dataset",
        "karate",
        "--alpha",
        "0.1",
        "--format",
        "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["scheme"], "alpha");
    assert_eq!(v["alpha"], 0.1);
    assert_eq!(v["converged"], true);
    let nodes = v["nodes"].as_array().unwrap();
    assert_eq!(nodes.len(), 34);
    let total: f64 = nodes.iter().map(|n| n["score"].as_f64().unwrap()).sum();
    assert!((total - 1.0).abs() < 1e-12);
}

#[test]
fn degree_ranking_orders_by_degree() {
    let rows = csv_rows(&ok(&["rank", "--dataset", "karate", "--scheme", "degree"]));
    let top: Vec<&str> = rows.iter().take(3).map(|r| r[0].as_str()).collect();
    assert_eq!(top, ["34", "1", "33"]);
    assert_eq!(rows[0][1], "17");
}

#[test]
fn karate_splits_into_the_two_factions() {
    let text = ok(&[
        "communities",
        "--dataset",
        "karate",
        "--alpha",
        "0.14",
        "--format",
        "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["community_count"], 2);
    assert_eq!(v["purity"], 1.0);
    let rows = csv_rows(&ok(&[
        "communities",
        "--dataset",
        "karate",
        "--alpha",
        "0.14",
    ]));
    let of = |node: &str| rows.iter().find(|r| r[0] == node).unwrap()[1].clone();
    assert_ne!(of("1"), of("34"));
}

#[test]
fn sweep_range_uses_gershgorin_step() {
    let rows = csv_rows(&ok(&["sweep", "--dataset", "karate", "--range", "0:0.2"]));
    let alphas: Vec<&str> = rows.iter().map(|r| r[0].as_str()).collect();
    // karate: min(d_out_max, d_in_max) = 17
    assert_eq!(alphas, ["0", "0.0588235", "0.117647", "0.176471"]);
    assert_eq!(rows[0][1], "4");
}

#[test]
fn sweep_writes_score_files() {
    let dir = tempfile::tempdir().unwrap();
    let scores = dir.path().join("scores");
    ok(&[
        "sweep",
        "--dataset",
        "karate",
        "--alphas",
        "0,0.1",
        "--scores-dir",
        scores.to_str().unwrap(),
    ]);
    let at0 = std::fs::read_to_string(scores.join("scores_alpha_0.csv")).unwrap();
    let rows = csv_rows(&at0);
    assert_eq!(rows.len(), 34);
    // at alpha = 0 the score is the degree share: 17/156
    let s34: f64 = rows.iter().find(|r| r[0] == "34").unwrap()[1]
        .parse()
        .unwrap();
    assert!((s34 - 17.0 / 156.0).abs() < 1e-6);
    assert!(scores.join("scores_alpha_0.1.csv").is_file());
}

#[test]
fn edge_list_input_with_labels() {
    let dir = tempfile::tempdir().unwrap();
    let g = write_temp(
        &dir,
        "two.txt",
        "# two triangles joined by one edge\na b\nb c\na c\nc d\nd e\ne f\nd f\n",
    );
    let l = write_temp(&dir, "two.labels", "a\tx\nb\tx\nc\tx\nd\ty\ne\ty\nf\ty\n");
    let text = ok(&[
        "communities",
        "--input",
        g.to_str().unwrap(),
        "--labels",
        l.to_str().unwrap(),
        "--alpha",
        "0",
        "--format",
        "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["community_count"], 2);
    assert_eq!(v["purity"], 1.0);
    assert_eq!(v["communities"][0], serde_json::json!(["a", "b", "c"]));
}

#[test]
fn convert_round_trips_through_gml() {
    let dir = tempfile::tempdir().unwrap();
    let gml = dir.path().join("karate.gml");
    ok(&[
        "convert",
        "--dataset",
        "karate",
        "--to",
        "gml",
        "--output",
        gml.to_str().unwrap(),
    ]);
    let a = ok(&["spectrum", "--dataset", "karate"]);
    let b = ok(&["spectrum", "--input", gml.to_str().unwrap()]);
    assert_eq!(a, b);
    let edges = ok(&["convert", "--input", gml.to_str().unwrap(), "--to", "edges"]);
    let e = write_temp(&dir, "karate.edges", &edges);
    assert_eq!(ok(&["spectrum", "--input", e.to_str().unwrap()]), a);
}

#[test]
fn roles_from_ground_truth() {
    let rows = csv_rows(&ok(&[
        "roles",
        "--dataset",
        "karate",
        "--partition",
        "truth",
    ]));
    assert_eq!(rows.len(), 34);
    let hubs: Vec<&str> = rows
        .iter()
        .filter(|r| r[4].as_str() >= "R5")
        .map(|r| r[0].as_str())
        .collect();
    assert_eq!(hubs, ["1", "34"]);
}

#[test]
fn datasets_lists_every_registered_name() {
    let rows = csv_rows(&ok(&["datasets"]));
    let names: Vec<&str> = rows.iter().map(|r| r[0].as_str()).collect();
    assert_eq!(names, ["karate", "florentine", "football", "polbooks"]);
    let karate = &rows[0];
    assert_eq!(
        (karate[1].as_str(), karate[2].as_str(), karate[3].as_str()),
        ("true", "34", "78")
    );
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| run(args).status.code().unwrap();
    assert_eq!(code(&["--help"]), 0);
    assert_eq!(code(&["--version"]), 0);
    assert_eq!(code(&["no-such-command"]), 1);
    assert_eq!(code(&["rank", "--dataset", "karate", "--alpha", "2"]), 1);
    assert_eq!(
        code(&[
            "communities",
            "--dataset",
            "karate",
            "--alpha",
            "0.1",
            "--rounding"
        ]),
        1
    );
    assert_eq!(
        code(&["sweep", "--dataset", "karate", "--range", "0:1:0"]),
        1
    );
    assert_eq!(code(&["rank", "--dataset", "nope"]), 2);
    assert_eq!(code(&["rank", "--input", "/nonexistent/graph.txt"]), 2);
    assert_eq!(
        code(&[
            "communities",
            "--dataset",
            "karate",
            "--alpha",
            "0.5",
            "--scaling",
            "unnormalized"
        ]),
        3
    );
}

#[test]
fn unknown_dataset_names_the_dataset() {
    let out = run(&["spectrum", "--dataset", "flickr"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("flickr"));
}

#[test]
fn malformed_edge_list_is_a_data_error() {
    let dir = tempfile::tempdir().unwrap();
    let g = write_temp(&dir, "bad.txt", "a b\nb c 1 extra\n");
    let out = run(&["spectrum", "--input", g.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
}

#[test]
fn data_dir_override() {
    let dir = tempfile::tempdir().unwrap();
    let out = bin()
        .env("ALPHACENT_DATA", dir.path())
        .args(["spectrum", "--dataset", "karate"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not installed"));
}
