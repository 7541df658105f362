use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use gtsp_core::fixtures::THEOREM_ONE_GTSP;
use gtsp_core::{parse_instance, Tour};

fn gtsp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gtsp"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn fixture_file(dir: &Path) -> String {
    let path = dir.join("g5.gtsp");
    fs::write(&path, THEOREM_ONE_GTSP).unwrap();
    path.to_str().unwrap().to_string()
}

fn weight_line(out: &str) -> &str {
    out.lines().find(|l| l.starts_with("weight:")).unwrap()
}

#[test]
fn exact_lk_on_the_fixture() {
    let dir = tempfile::tempdir().unwrap();
    let g5 = fixture_file(dir.path());
    let o = gtsp(&[
        "solve",
        "--instance",
        &g5,
        "--heuristic",
        "lk",
        "--variation",
        "exact",
        "--gain",
        "4",
        "--alpha",
        "2",
        "--start",
        "1",
    ]);
    assert!(o.status.success());
    assert_eq!(weight_line(&stdout(&o)), "weight: 1");
}

#[test]
fn nearest_neighbour_on_the_fixture() {
    let dir = tempfile::tempdir().unwrap();
    let g5 = fixture_file(dir.path());
    let o = gtsp(&["solve", "--instance", &g5, "--heuristic", "nn", "--start", "1"]);
    assert!(o.status.success());
    assert_eq!(weight_line(&stdout(&o)), "weight: 2");
}

#[test]
fn flag_errors_exit_with_two() {
    let o = gtsp(&["solve", "--heuristic", "nn"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("Usage"));
    let dir = tempfile::tempdir().unwrap();
    let g5 = fixture_file(dir.path());
    for bad in [
        vec!["solve", "--instance", &g5, "--gain", "6"],
        vec!["solve", "--instance", &g5, "--heuristic", "nn", "--alpha", "3"],
        vec!["solve", "--instance", &g5, "--heuristic", "lk", "--option", "2"],
        vec!["solve", "--instance", &g5, "--start", "0"],
        vec!["solve", "--instance", &g5, "--seed-list", "3..1"],
    ] {
        assert_eq!(gtsp(&bad).status.code(), Some(2), "{bad:?}");
    }
}

#[test]
fn unreadable_instance_exits_with_three() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("broken.gtsp");
    fs::write(&path, "NAME: x\nTYPE: GTSP\nDIMENSION: two\n").unwrap();
    let o = gtsp(&["solve", "--instance", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn json_output_round_trips_through_the_tour_text() {
    let dir = tempfile::tempdir().unwrap();
    let g5 = fixture_file(dir.path());
    let o = gtsp(&[
        "solve",
        "--instance",
        &g5,
        "--seed-list",
        "1..10",
        "--format",
        "json",
        "--co",
    ]);
    assert!(o.status.success());
    let g = parse_instance(THEOREM_ONE_GTSP).unwrap();
    let lines: Vec<String> = stdout(&o).lines().map(String::from).collect();
    assert_eq!(lines.len(), 10);
    for line in lines {
        let v: serde_json::Value = serde_json::from_str(&line).unwrap();
        let ids: Vec<String> = v["tour"].as_array().unwrap().iter().map(|x| x.to_string()).collect();
        let text = format!("{}\nweight: {}\n", ids.join(" "), v["weight"]);
        let tour = Tour::parse_text(&g, &text).unwrap();
        assert_eq!(tour.weight(), v["weight"].as_i64().unwrap());
    }
}

#[test]
fn solve_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let g5 = fixture_file(dir.path());
    let args = [
        "solve",
        "--instance",
        &g5,
        "--heuristic",
        "3opt",
        "--option",
        "4",
        "--seed-list",
        "1..5",
    ];
    let strip = |o: Output| {
        stdout(&o)
            .lines()
            .filter(|l| !l.starts_with("elapsed_ms"))
            .collect::<Vec<_>>()
            .join("\n")
    };
    assert_eq!(strip(gtsp(&args)), strip(gtsp(&args)));
}

#[test]
fn convert_names_the_file_after_the_cluster_count() {
    let dir = tempfile::tempdir().unwrap();
    let tsp = dir.path().join("pts.tsp");
    let coords: String = (0..12)
        .map(|i| format!("{} {} {}\n", i + 1, (i * 37) % 50, (i * 11) % 23))
        .collect();
    fs::write(
        &tsp,
        format!("NAME: pts\nTYPE: TSP\nDIMENSION: 12\nEDGE_WEIGHT_TYPE: EUC_2D\nNODE_COORD_SECTION\n{coords}EOF\n"),
    )
    .unwrap();
    let tsp = tsp.to_str().unwrap();
    let out = dir.path().to_str().unwrap();
    let o = gtsp(&["convert", "--tsp", tsp, "--out", out]);
    assert!(o.status.success());
    let written = dir.path().join("3pts.gtsp");
    let g = parse_instance(&fs::read_to_string(&written).unwrap()).unwrap();
    assert_eq!((g.n(), g.m(), g.name()), (12, 3, "3pts"));

    let o = gtsp(&["convert", "--tsp", tsp, "--sets", "12", "--out", out]);
    assert!(o.status.success());
    let g = parse_instance(&fs::read_to_string(dir.path().join("12pts.gtsp")).unwrap()).unwrap();
    assert!(g.clusters().iter().all(|c| c.len() == 1));

    let o = gtsp(&["convert", "--tsp", tsp, "--sets", "1", "--out", out]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("need >= 2 clusters"));
}

fn write_manifest(dir: &Path, best_known: &str) -> String {
    fs::write(dir.join("g5.gtsp"), THEOREM_ONE_GTSP).unwrap();
    fs::write(dir.join("best.txt"), best_known).unwrap();
    fs::write(dir.join("groups.txt"), "Only: g5\n").unwrap();
    let manifest = dir.join("bench.toml");
    fs::write(
        &manifest,
        "runs = 10\ninstances = [\"g5.gtsp\"]\nheuristics = [\"NN\", \"LK-E-4-2\"]\nbest_known = \"best.txt\"\ngroups = \"groups.txt\"\nbaseline = \"LK-E-4-2\"\n",
    )
    .unwrap();
    manifest.to_str().unwrap().to_string()
}

fn masked_records(dir: &Path) -> String {
    fs::read_to_string(dir.join("records.csv"))
        .unwrap()
        .lines()
        .map(|l| {
            let mut f: Vec<&str> = l.split(',').collect();
            f[3] = "-";
            f.join(",")
        })
        .collect::<Vec<_>>()
        .join("\n")
}

#[test]
fn bench_writes_twenty_records_and_reports() {
    let dir = tempfile::tempdir().unwrap();
    let manifest = write_manifest(dir.path(), "g5 1\n");
    let out1 = dir.path().join("out1");
    let out2 = dir.path().join("out2");
    for out in [&out1, &out2] {
        let o = gtsp(&["bench", "--manifest", &manifest, "--out", out.to_str().unwrap()]);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    }
    let records = fs::read_to_string(out1.join("records.csv")).unwrap();
    assert_eq!(records.lines().count(), 21);
    for name in ["errors", "times", "competition", "summary"] {
        assert!(out1.join(format!("{name}.md")).exists());
        assert!(out1.join(format!("{name}.csv")).exists());
    }
    assert_eq!(masked_records(&out1), masked_records(&out2));
    assert_eq!(
        fs::read_to_string(out1.join("errors.csv")).unwrap(),
        fs::read_to_string(out2.join("errors.csv")).unwrap()
    );
}

#[test]
fn bench_names_the_instance_without_a_best_known_weight() {
    let dir = tempfile::tempdir().unwrap();
    let manifest = write_manifest(dir.path(), "other 5\n");
    let o = gtsp(&[
        "bench",
        "--manifest",
        &manifest,
        "--out",
        dir.path().join("out").to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("no best-known weight for instance g5"));
}

#[test]
fn oracle_check_passes_and_detects_an_injected_fault() {
    let dir = tempfile::tempdir().unwrap();
    let o = gtsp(&["oracle-check", "--suite", "co", "--trials", "200", "--seed", "3"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "co: 200/200 equal");
    let o = gtsp(&["oracle-check", "--suite", "2opt", "--trials", "0"]);
    assert!(o.status.success());
    let dump = dir.path().to_str().unwrap();
    let o = gtsp(&[
        "oracle-check",
        "--suite",
        "co",
        "--trials",
        "10",
        "--inject-fault",
        "--dump-dir",
        dump,
    ]);
    assert_eq!(o.status.code(), Some(1));
    let dumped = fs::read_to_string(dir.path().join("oracle-co-0.gtsp")).unwrap();
    let g = parse_instance(&dumped).unwrap();
    assert_eq!(g.m(), 3);
    assert!(g.clusters().iter().all(|c| c.len() == 1));
}
