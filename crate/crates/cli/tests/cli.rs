use std::process::{Command, Output};

const EX1: &str = "(0,0);(2,0);(0,3);(1,1)";

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sumset-lab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn documented_examples() {
    let o = run(&["sumset", "--set", "0,3,5", "--n", "2"]);
    assert_eq!(stdout(&o).trim(), "0,3,5,6,8,10");
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&run(&["exceptional", "--set", "0,3,5"])).trim(),
        "{1,2,4,7} frobenius=7"
    );
    assert_eq!(stdout(&run(&["threshold", "--set", "0,1,5,6"])).trim(), "4");
}

#[test]
fn raw_sets_map_back() {
    // {2,8,12} = 2 + 2 {0,3,5}
    let o = run(&["sumset", "--set", "2,8,12", "--n", "2"]);
    assert_eq!(stdout(&o).trim(), "4,10,14,16,20,24");
}

#[test]
fn exit_statuses() {
    assert_eq!(run(&["sumset", "--set", "0,3,5"]).status.code(), Some(2));
    assert_eq!(
        run(&["sumset", "--set", "0,a", "--n", "1"]).status.code(),
        Some(2)
    );
    assert_eq!(run(&["bogus"]).status.code(), Some(2));
    assert_eq!(
        run(&["sumset", "--set", "0,1", "--n", "100000000"])
            .status
            .code(),
        Some(3)
    );
    assert_eq!(
        run(&[
            "sumset",
            "--set",
            EX1,
            "--n",
            "30",
            "--budget-points",
            "100"
        ])
        .status
        .code(),
        Some(3)
    );
    assert_eq!(run(&["profile", "--set", EX1]).status.code(), Some(2));
    assert_eq!(
        run(&["verify", "thm1", "--set", "0,1,5,6"]).status.code(),
        Some(0)
    );
}

#[test]
fn json_round_trips() {
    for args in [
        vec!["decompose", "--set", EX1],
        vec!["khovanskii", "--set", EX1, "--n-max", "12"],
        vec!["profile", "--set", "0,3,5"],
        vec!["verify", "growth", "--set", EX1, "--n-max", "8"],
        vec!["verify", "savchev-chen", "--set", "0,3,5"],
    ] {
        let mut args = args.clone();
        args.extend(["--format", "json"]);
        let out = stdout(&run(&args));
        let line = out.trim_end();
        let value: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!(serde_json::to_string(&value).unwrap(), line, "{args:?}");
    }
}

#[test]
fn decomposition_json_shape() {
    let out = stdout(&run(&["decompose", "--set", EX1, "--format", "json"]));
    let value: serde_json::Value = serde_json::from_str(&out).unwrap();
    let pieces = value["result"]["pieces"].as_array().unwrap();
    assert_eq!(pieces.len(), 9);
    assert!(pieces
        .iter()
        .all(|p| p["v"].is_array() && p["B"].as_array().unwrap().len() == 1));
    let fit = stdout(&run(&["khovanskii", "--set", EX1, "--format", "json"]));
    let fit: serde_json::Value = serde_json::from_str(&fit).unwrap();
    assert_eq!(fit["result"]["leading"], "3/1");
}

#[test]
fn corpus_keeps_order_and_count() {
    let dir = std::env::temp_dir().join(format!("sumset-lab-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let corpus = dir.join("corpus.txt");
    std::fs::write(
        &corpus,
        "# sets\n0,3,5\n\n0,1,5,6  # sharp\n0,4,7\n0,1,9,10\n0,2\n",
    )
    .unwrap();
    let path = corpus.to_str().unwrap();
    let out_file = dir.join("out.jsonl");
    let o = run(&[
        "threshold",
        "--corpus",
        path,
        "--format",
        "json",
        "--out",
        out_file.to_str().unwrap(),
    ]);
    let text = std::fs::read_to_string(&out_file).unwrap();
    let records: Vec<serde_json::Value> = text
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(records.len(), 5);
    let lines: Vec<u64> = records
        .iter()
        .map(|r| r["line"].as_u64().unwrap())
        .collect();
    assert_eq!(lines, vec![2, 4, 5, 6, 7]);
    assert_eq!(records[1]["result"], 4);
    assert_eq!(records[3]["result"], 8);
    // {0,2} normalizes to {0,1}
    assert_eq!(records[4]["result"], 1);
    assert_eq!(o.status.code(), Some(0));

    let single = Command::new(env!("CARGO_BIN_EXE_sumset-lab"))
        .args(["threshold", "--corpus", path, "--format", "json"])
        .env("SUMSET_LAB_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(stdout(&single), text);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn verification_sweeps() {
    let o = run(&["verify", "sylvester", "--b-max", "12", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().count() > 30);
    let o = run(&["verify", "thm0", "--b-max", "8", "--n-max", "10"]);
    assert_eq!(o.status.code(), Some(0));
    let o = run(&["verify", "thm2", "--set", "0,1,5,6", "--n-max", "12"]);
    assert!(stdout(&o).trim_end().ends_with("onset=4"));
}
