//! End-to-end tests driving the compiled binary: exit codes, output
//! formats, and agreement between the human and JSON renderings.

use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_pwlchaos"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn exit_code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

#[test]
fn compare_prints_the_order() {
    let out = run(&["compare", "3", "5"]);
    assert_eq!(exit_code(&out), 0);
    assert!(stdout(&out).contains("3 ◁ 5"));

    let out = run(&["compare", "7", "7"]);
    assert_eq!(exit_code(&out), 0);
    assert!(stdout(&out).contains("7 = 7"));

    let out = run(&["compare", "4", "6"]);
    assert_eq!(exit_code(&out), 0);
    assert!(stdout(&out).contains("4 ⊳ 6"));
}

#[test]
fn eval_is_exact() {
    let out = run(&["eval", "--builtin", "tent", "1/3"]);
    assert_eq!(exit_code(&out), 0);
    assert!(stdout(&out).contains("f(1/3) = 2/3"));

    let out = run(&["eval", "--builtin", "sqrt_tent", "7/8"]);
    assert!(stdout(&out).contains("f(7/8) = 1/4"));

    // out of domain is an input error
    let out = run(&["eval", "--builtin", "tent", "3/2"]);
    assert_eq!(exit_code(&out), 2);
    assert!(stderr(&out).contains("outside the domain"));
}

#[test]
fn horseshoe_exit_codes_distinguish_absence() {
    let out = run(&["horseshoe", "--builtin", "sqrt_tent", "--iterate", "1"]);
    assert_eq!(exit_code(&out), 1);
    assert!(stdout(&out).contains("not found"));

    let out = run(&["horseshoe", "--builtin", "sqrt_tent", "--iterate", "2"]);
    assert_eq!(exit_code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("J = [0, 1/4]"));
    assert!(text.contains("K = [1/4, 1/2]"));

    let out = run(&["horseshoe", "--builtin", "tent", "--iterate", "0"]);
    assert_eq!(exit_code(&out), 2);
}

#[test]
fn map_files_parse_and_errors_name_lines() {
    let dir = std::env::temp_dir();
    let good = dir.join("pwlchaos_test_tent.map");
    std::fs::write(&good, "# tent\n0 0\n1/2 1\n1 0\n").unwrap();
    let out = run(&["entropy", "--map", good.to_str().unwrap()]);
    assert_eq!(exit_code(&out), 0);
    assert!(stdout(&out).contains("0.693147180560"));

    let bad = dir.join("pwlchaos_test_unsorted.map");
    std::fs::write(&bad, "1 0\n0 1\n").unwrap();
    let out = run(&["entropy", "--map", bad.to_str().unwrap()]);
    assert_eq!(exit_code(&out), 2);
    assert!(stderr(&out).contains("line 2"));

    let escape = dir.join("pwlchaos_test_escape.map");
    std::fs::write(&escape, "0 0\n1/2 2\n1 0\n").unwrap();
    let out = run(&["entropy", "--map", escape.to_str().unwrap()]);
    assert_eq!(exit_code(&out), 2);
    assert!(stderr(&out).contains("line 2"));
}

#[test]
fn catalog_lists_the_builtins() {
    let out = run(&["catalog"]);
    assert_eq!(exit_code(&out), 0);
    let text = stdout(&out);
    for name in ["identity", "tent", "sqrt_tent", "half", "flip"] {
        assert!(text.contains(name), "catalog is missing {name}");
    }
}

#[test]
fn unknown_builtin_is_an_input_error() {
    let out = run(&["entropy", "--builtin", "no_such_map"]);
    assert_eq!(exit_code(&out), 2);
    assert!(stderr(&out).contains("no built-in map"));

    let out = run(&["entropy"]);
    assert_eq!(exit_code(&out), 2);
    assert!(stderr(&out).contains("--map"));
}

#[test]
fn ly_sample_is_deterministic_and_writes_csv() {
    let csv = std::env::temp_dir().join("pwlchaos_test_ly.csv");
    let args = [
        "ly-sample",
        "--builtin",
        "identity",
        "--pairs",
        "100",
        "--horizon",
        "300",
        "--csv",
        csv.to_str().unwrap(),
        "--seed",
        "42",
    ];
    let first = run(&args);
    assert_eq!(exit_code(&first), 1, "no evidence on the identity");
    assert!(stdout(&first).contains("fraction 0.0000"));
    let csv_first = std::fs::read_to_string(&csv).unwrap();

    let second = run(&args);
    assert_eq!(stdout(&first), stdout(&second), "same seed, same output");
    let csv_second = std::fs::read_to_string(&csv).unwrap();
    assert_eq!(csv_first, csv_second, "same seed, same csv");
    assert!(csv_first.starts_with("x,y,max_sep,min_sep,is_ly\n"));
    assert_eq!(csv_first.lines().count(), 101);

    let out = run(&[
        "ly-sample",
        "--builtin",
        "tent",
        "--pairs",
        "100",
        "--horizon",
        "300",
    ]);
    assert_eq!(exit_code(&out), 0, "evidence on the tent map");
}

#[test]
fn snoha_grid_exit_codes() {
    let out = run(&[
        "snoha-grid",
        "--builtin",
        "tent",
        "--delta",
        "1/2",
        "--horizon",
        "10",
    ]);
    assert_eq!(exit_code(&out), 0);

    let out = run(&["snoha-grid", "--builtin", "identity"]);
    assert_eq!(exit_code(&out), 1);

    let out = run(&["snoha-grid", "--builtin", "tent", "--delta", "0"]);
    assert_eq!(exit_code(&out), 2);
}

#[test]
fn invariant_intervals_accept_extras() {
    let out = run(&[
        "invariant-intervals",
        "--builtin",
        "half",
        "--extra",
        "1/2,1/4",
    ]);
    assert_eq!(exit_code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("[0, 1/4]"));
    assert!(text.contains("[0, 1/2]"));
    assert!(text.contains("[0, 1]"));
}

#[test]
fn periods_and_type_output() {
    let out = run(&["periods", "--builtin", "sqrt_tent", "--max", "6"]);
    assert_eq!(exit_code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("{1, 2, 4, 6}"));
    assert!(text.contains("1/6 -> 5/6"));

    let out = run(&["type", "--builtin", "sqrt_tent", "--max", "7"]);
    assert!(stdout(&out).contains("finite type 6"));

    let out = run(&["type", "--builtin", "identity", "--max", "4"]);
    assert!(stdout(&out).contains("powers of two"));
}

#[test]
fn report_runs_green_on_the_catalog_examples() {
    let out = run(&["report", "--builtin", "sqrt_tent", "--pairs", "300"]);
    assert_eq!(exit_code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("all green: true"));
    assert!(text.contains("attains the lower bound"));

    let out = run(&["report", "--builtin", "identity", "--pairs", "200"]);
    assert_eq!(exit_code(&out), 0, "vacuous report still succeeds");
    assert!(stdout(&out).contains("skipped (vacuous"));
}

#[test]
fn report_json_and_human_agree() {
    let json_out = run(&["report", "--builtin", "tent", "--pairs", "300", "--json"]);
    assert_eq!(exit_code(&json_out), 0);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&json_out)).unwrap();

    let human_out = run(&["report", "--builtin", "tent", "--pairs", "300"]);
    let human = stdout(&human_out);

    // entropy: the human rendering prints the same f64 with 12 digits
    let markov = doc["entropy"]["markov"]["value"].as_f64().unwrap();
    assert!(human.contains(&format!("{markov:.12}")));
    let bound = doc["entropy"]["horseshoe_bound"]["value"].as_f64().unwrap();
    assert!(human.contains(&format!("{bound:.12}")));

    // booleans and sets agree
    assert_eq!(doc["consistency"]["checks"]["all_green"], true);
    assert!(human.contains("all green: true"));
    assert_eq!(doc["markov"]["irreducible"], true);
    assert!(human.contains("irreducible: true"));
    let fraction = doc["chaos"]["ly_sampling"]["ly_fraction"].as_f64().unwrap();
    assert!(human.contains(&format!("fraction {fraction:.4}")));

    // exact values survive as strings
    assert_eq!(doc["horseshoes"][0]["j"]["lo"], "0");
    assert_eq!(doc["horseshoes"][0]["j"]["hi"], "1/2");
}

#[test]
fn config_file_supplies_defaults_and_flags_win() {
    let dir = std::env::temp_dir();
    let config = dir.join("pwlchaos_test_config.json");
    std::fs::write(&config, r#"{ "pairs": 64, "horizon": 300, "seed": 7 }"#).unwrap();
    let out = run(&[
        "ly-sample",
        "--builtin",
        "tent",
        "--config",
        config.to_str().unwrap(),
        "--json",
    ]);
    assert_eq!(exit_code(&out), 0);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["pairs_tested"], 64);
    assert_eq!(doc["params"]["seed"], 7);
    assert_eq!(doc["params"]["horizon"], 300);

    // the flag beats the config
    let out = run(&[
        "ly-sample",
        "--builtin",
        "tent",
        "--config",
        config.to_str().unwrap(),
        "--pairs",
        "32",
        "--seed",
        "9",
        "--json",
    ]);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["pairs_tested"], 32);
    assert_eq!(doc["params"]["seed"], 9);

    let bad = dir.join("pwlchaos_test_config_bad.json");
    std::fs::write(&bad, r#"{ "no_such_key": 1 }"#).unwrap();
    let out = run(&[
        "ly-sample",
        "--builtin",
        "tent",
        "--config",
        bad.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&out), 2);
}

#[test]
fn round_trip_through_serialize_and_parse() {
    // serialize a builtin via catalog --json, re-feed it as a map file
    let out = run(&["catalog", "--json"]);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let tent_nodes = doc
        .as_array()
        .unwrap()
        .iter()
        .find(|e| e["name"] == "tent")
        .unwrap()["nodes"]
        .as_str()
        .unwrap()
        .replace("; ", "\n");
    let path = std::env::temp_dir().join("pwlchaos_test_roundtrip.map");
    std::fs::write(&path, tent_nodes).unwrap();
    let out = run(&["eval", "--map", path.to_str().unwrap(), "2/3"]);
    assert!(stdout(&out).contains("f(2/3) = 2/3"));
}

#[test]
fn json_flag_emits_valid_documents_everywhere() {
    let commands: Vec<Vec<&str>> = vec![
        vec!["catalog", "--json"],
        vec!["compare", "6", "4", "--json"],
        vec!["eval", "--builtin", "tent", "1/7", "--json"],
        vec!["entropy", "--builtin", "flip", "--json"],
        vec!["horseshoe", "--builtin", "tent", "--iterate", "1", "--json"],
        vec!["periods", "--builtin", "tent", "--max", "3", "--json"],
        vec!["type", "--builtin", "tent", "--max", "3", "--json"],
        vec![
            "ly-sample",
            "--builtin",
            "flip",
            "--pairs",
            "50",
            "--horizon",
            "200",
            "--json",
        ],
        vec!["snoha-grid", "--builtin", "identity", "--json"],
        vec!["invariant-intervals", "--builtin", "tent", "--json"],
    ];
    for args in commands {
        let out = bin().args(&args).output().unwrap();
        let text = stdout(&out);
        assert!(
            serde_json::from_str::<serde_json::Value>(&text).is_ok(),
            "command {args:?} did not emit valid JSON: {text}"
        );
    }
}

#[test]
fn help_names_every_subcommand() {
    let out = run(&["--help"]);
    let text = stdout(&out);
    for cmd in [
        "catalog",
        "eval",
        "entropy",
        "horseshoe",
        "periods",
        "type",
        "compare",
        "ly-sample",
        "snoha-grid",
        "invariant-intervals",
        "report",
    ] {
        assert!(text.contains(cmd), "help is missing {cmd}");
    }
    assert!(Path::new(env!("CARGO_BIN_EXE_pwlchaos")).exists());
}
