//! End-to-end tests of the command-line interface: output schemas, exit
//! codes, environment and config precedence, and cross-process reproduction
//! of in-process runs.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use wmaxsat::bgls::{run_bgls, BglsParams};
use wmaxsat::formula::{serialize_wcnf, Assignment, Literal, WeightedClause, WeightedInstance};
use wmaxsat::gen::{random_instance, InstanceShape};
use wmaxsat::rng::{derive_seed, try_rng};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_wmaxsat"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf-8 stdout")
}

fn stderr(output: &Output) -> String {
    String::from_utf8(output.stderr.clone()).expect("utf-8 stderr")
}

fn clause(literals: &[i64], weight: u64) -> WeightedClause {
    let literals = literals
        .iter()
        .map(|&l| Literal::from_dimacs(l).expect("nonzero literal"))
        .collect();
    WeightedClause::new(literals, weight).expect("valid clause")
}

/// Optimum 10 of 15 (the unit clauses on x1 conflict, as does the x2 pair
/// under x1): x1=false, x3=true, x2 free.
fn conflicted_instance() -> WeightedInstance {
    WeightedInstance::new(
        3,
        vec![
            clause(&[1], 5),
            clause(&[-1], 4),
            clause(&[2, -1], 3),
            clause(&[-2, -1], 2),
            clause(&[3], 1),
        ],
    )
    .unwrap()
}

fn write_instance(dir: &Path, name: &str, instance: &WeightedInstance) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, serialize_wcnf(instance)).unwrap();
    path
}

fn medium_instance(seed: u64) -> WeightedInstance {
    random_instance(
        &InstanceShape {
            num_variables: 30,
            num_clauses: 150,
            clause_len: 2..=3,
            weight: 1..=50,
        },
        &mut try_rng(seed, 0),
    )
}

#[test]
fn solve_json_report_has_the_documented_schema_and_is_sound() {
    let dir = tempfile::tempdir().unwrap();
    let instance = conflicted_instance();
    let path = write_instance(dir.path(), "conflicted.wcnf", &instance);

    let output = run(&[
        "solve",
        path.to_str().unwrap(),
        "--n1",
        "6",
        "--n2",
        "4",
        "--num",
        "80",
        "--seed",
        "11",
        "--format",
        "json",
    ]);
    assert!(output.status.success(), "{}", stderr(&output));
    let report: serde_json::Value = serde_json::from_str(&stdout(&output)).unwrap();

    let object = report.as_object().unwrap();
    for key in [
        "instance",
        "optimum",
        "gap_percent",
        "params",
        "best_weight",
        "best_assignment",
        "tries",
        "frequencies",
        "timing",
    ] {
        assert!(object.contains_key(key), "missing key {key}");
    }
    assert_eq!(report["instance"]["name"], "conflicted");
    assert_eq!(report["instance"]["num_variables"], 3);
    assert_eq!(report["instance"]["num_clauses"], 5);
    assert_eq!(report["instance"]["total_weight"], 15);
    assert_eq!(report["optimum"], serde_json::Value::Null);
    assert_eq!(report["tries"].as_array().unwrap().len(), 10);
    assert_eq!(report["frequencies"]["samples"], 6);
    assert_eq!(report["best_weight"], 10);

    // The reported assignment must actually evaluate to the reported weight.
    let assignment =
        Assignment::from_bitstring(report["best_assignment"].as_str().unwrap()).unwrap();
    assert_eq!(instance.evaluate(&assignment), 10);
}

#[test]
fn solve_reproduces_an_in_process_run_exactly() {
    let dir = tempfile::tempdir().unwrap();
    let instance = medium_instance(21);
    let path = write_instance(dir.path(), "medium.wcnf", &instance);
    let params = BglsParams {
        sampling_tries: 12,
        guided_tries: 12,
        max_flips: 120,
        master_seed: 99,
        ..BglsParams::default()
    };
    let expected = run_bgls(&instance, &params);

    let output = run(&[
        "solve",
        path.to_str().unwrap(),
        "--n1",
        "12",
        "--n2",
        "12",
        "--num",
        "120",
        "--seed",
        "99",
        "--format",
        "json",
    ]);
    assert!(output.status.success(), "{}", stderr(&output));
    let report: serde_json::Value = serde_json::from_str(&stdout(&output)).unwrap();
    assert_eq!(report["best_weight"], expected.best_weight);
    assert_eq!(
        report["best_assignment"].as_str().unwrap(),
        expected.best_assignment.to_bitstring()
    );
    let weights: Vec<u64> = report["tries"]
        .as_array()
        .unwrap()
        .iter()
        .map(|t| t["weight"].as_u64().unwrap())
        .collect();
    let expected_weights: Vec<u64> = expected.tries.iter().map(|t| t.weight).collect();
    assert_eq!(weights, expected_weights);
}

#[test]
fn optima_table_fills_in_optimum_and_gap() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_instance(dir.path(), "conflicted.wcnf", &conflicted_instance());
    let table = dir.path().join("optima.csv");
    std::fs::write(&table, "instance,optimum,baseline\nconflicted,10,9\n").unwrap();

    let output = run(&[
        "solve",
        path.to_str().unwrap(),
        "--n1",
        "8",
        "--n2",
        "8",
        "--num",
        "100",
        "--optima-table",
        table.to_str().unwrap(),
        "--format",
        "json",
    ]);
    assert!(output.status.success(), "{}", stderr(&output));
    let report: serde_json::Value = serde_json::from_str(&stdout(&output)).unwrap();
    assert_eq!(report["optimum"], 10);
    assert_eq!(report["gap_percent"], 0.0);
}

#[test]
fn exit_codes_match_the_documented_mapping() {
    let dir = tempfile::tempdir().unwrap();

    // 2: unreadable input.
    let output = run(&["solve", dir.path().join("absent.wcnf").to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(2));

    // 2: parse error, with the offending line in the message.
    let bad = dir.path().join("bad.wcnf");
    std::fs::write(&bad, "p wcnf 2 1\n0 1 0\n").unwrap();
    let output = run(&["solve", bad.to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(2));
    assert!(stderr(&output).contains("line 2"), "{}", stderr(&output));

    // 3: contract violations (bad parameter, oversized cap, zero reps).
    let good = write_instance(dir.path(), "ok.wcnf", &conflicted_instance());
    let output = run(&["solve", good.to_str().unwrap(), "--phi", "1.5"]);
    assert_eq!(output.status.code(), Some(3));
    assert!(stderr(&output).contains("phi"));
    let output = run(&["verify", "--random", "2", "--cap", "31"]);
    assert_eq!(output.status.code(), Some(3));
    let output = run(&["bench", good.to_str().unwrap(), "--reps", "0"]);
    assert_eq!(output.status.code(), Some(3));

    // 4: analyze with neither an in-cap instance nor a reference.
    let wide = dir.path().join("wide.wcnf");
    std::fs::write(&wide, "p wcnf 40 1\n1 1 0\n").unwrap();
    let output = run(&["analyze", wide.to_str().unwrap(), "--tries", "2"]);
    assert_eq!(output.status.code(), Some(4));
    assert!(stderr(&output).contains("--reference"), "{}", stderr(&output));

    // 0: the same instance analyzed against a supplied reference.
    let reference = dir.path().join("ref.txt");
    std::fs::write(&reference, format!("{}\n", "1".repeat(40))).unwrap();
    let output = run(&[
        "analyze",
        wide.to_str().unwrap(),
        "--tries",
        "2",
        "--num",
        "30",
        "--reference",
        reference.to_str().unwrap(),
    ]);
    assert_eq!(output.status.code(), Some(0), "{}", stderr(&output));
}

#[test]
fn seed_comes_from_the_environment_when_the_flag_is_absent() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_instance(dir.path(), "medium.wcnf", &medium_instance(5));
    let args = [
        "solve",
        path.to_str().unwrap(),
        "--n1",
        "6",
        "--n2",
        "6",
        "--num",
        "60",
        "--format",
        "json",
    ];

    let flagged = bin()
        .args(args)
        .args(["--seed", "424242"])
        .output()
        .unwrap();
    let from_env = bin()
        .args(args)
        .env("WMAXSAT_SEED", "424242")
        .output()
        .unwrap();
    assert!(flagged.status.success() && from_env.status.success());

    let strip = |o: &Output| {
        let mut v: serde_json::Value = serde_json::from_str(&stdout(o)).unwrap();
        v.as_object_mut().unwrap().remove("timing");
        v
    };
    assert_eq!(strip(&flagged), strip(&from_env));
    assert_eq!(strip(&flagged)["params"]["master_seed"], 424242);
}

#[test]
fn config_file_fills_gaps_and_flags_override_it() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_instance(dir.path(), "conflicted.wcnf", &conflicted_instance());
    let config = dir.path().join("run.toml");
    std::fs::write(&config, "n1 = 3\nn2 = 5\nnum = 50\nseed = 7\n").unwrap();

    let output = run(&[
        "solve",
        path.to_str().unwrap(),
        "--config",
        config.to_str().unwrap(),
        "--n1",
        "2",
        "--format",
        "json",
    ]);
    assert!(output.status.success(), "{}", stderr(&output));
    let report: serde_json::Value = serde_json::from_str(&stdout(&output)).unwrap();
    assert_eq!(report["params"]["sampling_tries"], 2); // flag wins
    assert_eq!(report["params"]["guided_tries"], 5); // config wins
    assert_eq!(report["params"]["max_flips"], 50);
    assert_eq!(report["params"]["master_seed"], 7);

    // Unknown keys are contract errors, not silent typos.
    std::fs::write(&config, "n1 = 3\nn0 = 9\n").unwrap();
    let output = run(&[
        "solve",
        path.to_str().unwrap(),
        "--config",
        config.to_str().unwrap(),
    ]);
    assert_eq!(output.status.code(), Some(3));
}

#[test]
fn out_flag_writes_the_same_json_as_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_instance(dir.path(), "conflicted.wcnf", &conflicted_instance());
    let out = dir.path().join("report.json");
    let output = run(&[
        "solve",
        path.to_str().unwrap(),
        "--n1",
        "4",
        "--n2",
        "0",
        "--num",
        "40",
        "--format",
        "json",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(output.status.success());
    assert_eq!(stdout(&output), std::fs::read_to_string(&out).unwrap());
}

#[test]
fn frequency_files_resume_the_guided_phase_exactly() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_instance(dir.path(), "medium.wcnf", &medium_instance(8));
    let freqs = dir.path().join("freqs.json");

    // Fresh two-phase run, saving the phase-1 frequencies.
    let fresh = run(&[
        "solve",
        path.to_str().unwrap(),
        "--n1",
        "10",
        "--n2",
        "6",
        "--num",
        "80",
        "--seed",
        "17",
        "--format",
        "json",
        "--freqs-out",
        freqs.to_str().unwrap(),
    ]);
    assert!(fresh.status.success(), "{}", stderr(&fresh));

    // Resumed run: same parameters, frequencies from the file.
    let resumed = run(&[
        "solve",
        path.to_str().unwrap(),
        "--n1",
        "10",
        "--n2",
        "6",
        "--num",
        "80",
        "--seed",
        "17",
        "--format",
        "json",
        "--freqs-in",
        freqs.to_str().unwrap(),
    ]);
    assert!(resumed.status.success(), "{}", stderr(&resumed));

    let fresh_report: serde_json::Value = serde_json::from_str(&stdout(&fresh)).unwrap();
    let resumed_report: serde_json::Value = serde_json::from_str(&stdout(&resumed)).unwrap();
    let guided: Vec<&serde_json::Value> = fresh_report["tries"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|t| t["phase"] == "guided")
        .collect();
    let resumed_tries: Vec<&serde_json::Value> =
        resumed_report["tries"].as_array().unwrap().iter().collect();
    assert_eq!(guided, resumed_tries);
    assert_eq!(fresh_report["frequencies"], resumed_report["frequencies"]);

    // A resumed run with no guided tries is a contract violation.
    let output = run(&[
        "solve",
        path.to_str().unwrap(),
        "--n1",
        "4",
        "--n2",
        "0",
        "--freqs-in",
        freqs.to_str().unwrap(),
    ]);
    assert_eq!(output.status.code(), Some(3));

    // As is a frequency file whose shape does not match the instance.
    let other = write_instance(dir.path(), "other.wcnf", &conflicted_instance());
    let output = run(&[
        "solve",
        other.to_str().unwrap(),
        "--freqs-in",
        freqs.to_str().unwrap(),
    ]);
    assert_eq!(output.status.code(), Some(3));
}

#[test]
fn bench_csv_matches_in_process_runs_and_summarizes_by_instance() {
    let dir = tempfile::tempdir().unwrap();
    let a = conflicted_instance();
    let b = medium_instance(33);
    let path_a = write_instance(dir.path(), "alpha.wcnf", &a);
    let path_b = write_instance(dir.path(), "beta.wcnf", &b);
    let table = dir.path().join("optima.csv");
    // alpha's true optimum is 10 with a baseline of 9; beta gets a loose
    // placeholder optimum so its rows carry a gap but no improvement.
    std::fs::write(&table, "alpha,10,9\nbeta,10000\n").unwrap();

    let output = run(&[
        "bench",
        path_a.to_str().unwrap(),
        path_b.to_str().unwrap(),
        "--reps",
        "2",
        "--n1",
        "5",
        "--n2",
        "5",
        "--num",
        "60",
        "--seed",
        "3",
        "--optima-table",
        table.to_str().unwrap(),
    ]);
    assert!(output.status.success(), "{}", stderr(&output));
    let text = stdout(&output);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(
        lines[0],
        "instance,rep,seed,best_weight,optimum,gap_pct,improvement_pct,millis"
    );
    assert_eq!(lines.len(), 6, "header + 4 rows + summary:\n{text}");

    // Recompute the four runs in-process; rows must agree field for field.
    let params = BglsParams {
        sampling_tries: 5,
        guided_tries: 5,
        max_flips: 60,
        ..BglsParams::default()
    };
    for (row, (index, instance, rep)) in
        lines[1..5].iter().zip([(0, &a, 0), (0, &a, 1), (1, &b, 0), (1, &b, 1)])
    {
        let seed = derive_seed(3, index, rep);
        let best = run_bgls(
            instance,
            &BglsParams {
                master_seed: seed,
                ..params
            },
        )
        .best_weight;
        let fields: Vec<&str> = row.split(',').collect();
        assert_eq!(fields[1], rep.to_string());
        assert_eq!(fields[2], seed.to_string());
        assert_eq!(fields[3], best.to_string(), "row {row}");
    }

    let summary = lines[5];
    assert!(summary.starts_with("# instances=2 reps=2 rows=4 optima_known=2"), "{summary}");
    assert!(summary.contains("mean_gap_pct="), "{summary}");
    assert!(summary.contains("mean_improvement_pct="), "{summary}");

    // alpha reaches its optimum 10 every time, so improvement over the
    // baseline 9 is (10−9)/10 = 10%, rendered with four decimals.
    assert!(lines[1].contains(",10,10,0.0000,10.0000,"), "{}", lines[1]);
}

#[test]
fn bench_expands_wildcards_and_reads_campaigns_from_config() {
    let dir = tempfile::tempdir().unwrap();
    write_instance(dir.path(), "a1.wcnf", &conflicted_instance());
    write_instance(dir.path(), "a2.wcnf", &conflicted_instance());
    write_instance(dir.path(), "b.wcnf", &conflicted_instance());
    let pattern = dir.path().join("a*.wcnf");
    let config = dir.path().join("campaign.toml");
    std::fs::write(
        &config,
        format!(
            "instances = [{:?}]\nrepetitions = 1\nn1 = 3\nn2 = 0\nnum = 30\n",
            pattern.to_str().unwrap()
        ),
    )
    .unwrap();

    let output = run(&["bench", "--config", config.to_str().unwrap()]);
    assert!(output.status.success(), "{}", stderr(&output));
    let text = stdout(&output);
    let rows: Vec<&str> = text.lines().filter(|l| l.starts_with("a")).collect();
    assert_eq!(rows.len(), 2, "{text}");
    assert!(rows[0].starts_with("a1,0,"));
    assert!(rows[1].starts_with("a2,0,"));
    assert!(!text.contains("\nb,"), "wildcard must not match b.wcnf");

    // An empty campaign is not an error: header plus summary, exit 0.
    std::fs::write(&config, "repetitions = 1\n").unwrap();
    let output = run(&["bench", "--config", config.to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(0));
    assert!(stdout(&output).contains("# instances=0"));
}

#[test]
fn analyze_reports_distances_against_the_exact_optimum() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_instance(dir.path(), "conflicted.wcnf", &conflicted_instance());
    let output = run(&[
        "analyze",
        path.to_str().unwrap(),
        "--tries",
        "8",
        "--num",
        "60",
        "--seed",
        "2",
    ]);
    assert!(output.status.success(), "{}", stderr(&output));
    let text = stdout(&output);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "try,weight,distance");
    assert_eq!(lines.len(), 10, "header + 8 rows + summary:\n{text}");
    for row in &lines[1..9] {
        let fields: Vec<&str> = row.split(',').collect();
        let weight: u64 = fields[1].parse().unwrap();
        let distance: f64 = fields[2].parse().unwrap();
        assert!(weight <= 10, "weights are bounded by the optimum");
        assert!((0.0..=1.0).contains(&distance));
    }
    assert!(lines[9].starts_with("# instance=conflicted mode=exact optimum=10 tries=8"), "{}", lines[9]);

    // JSON carries the same information in structured form.
    let output = run(&[
        "analyze",
        path.to_str().unwrap(),
        "--tries",
        "8",
        "--num",
        "60",
        "--seed",
        "2",
        "--format",
        "json",
    ]);
    let report: serde_json::Value = serde_json::from_str(&stdout(&output)).unwrap();
    assert_eq!(report["mode"], "exact");
    assert_eq!(report["optimum_weight"], 10);
    assert_eq!(report["rows"].as_array().unwrap().len(), 8);
}

#[test]
fn verify_emits_a_json_report_and_succeeds_on_random_instances() {
    let output = run(&["verify", "--random", "5", "--seed", "3"]);
    assert!(output.status.success(), "{}", stderr(&output));
    let report: serde_json::Value = serde_json::from_str(&stdout(&output)).unwrap();
    assert_eq!(report["passed"], true);
    assert_eq!(report["checked"], 5);
    assert_eq!(report["skipped"], 0);
    assert_eq!(report["failed"], 0);
    let instances = report["instances"].as_array().unwrap();
    assert_eq!(instances.len(), 5);
    for record in instances {
        assert_eq!(record["passed"], true);
        let checks = record["checks"].as_object().unwrap();
        for (name, value) in checks {
            assert_eq!(value, &serde_json::Value::Bool(true), "check {name}");
        }
    }
    assert!(stderr(&output).contains("verify: 5 checked, 0 skipped, 0 failed"));

    // Beyond-capacity instances are skipped with a warning, not failed.
    let dir = tempfile::tempdir().unwrap();
    let wide = dir.path().join("wide.wcnf");
    std::fs::write(&wide, "p wcnf 40 1\n1 1 0\n").unwrap();
    let output = run(&["verify", wide.to_str().unwrap(), "--random", "2"]);
    assert_eq!(output.status.code(), Some(0), "{}", stderr(&output));
    let report: serde_json::Value = serde_json::from_str(&stdout(&output)).unwrap();
    assert_eq!(report["skipped"], 1);
    assert_eq!(report["checked"], 2);
    assert!(stderr(&output).contains("exceed the exact cap"));
}

#[test]
fn parse_warnings_go_to_stderr_without_failing_the_run() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("tautology.wcnf");
    std::fs::write(&path, "p wcnf 2 2\n3 1 -1 0\n2 2 0\n").unwrap();
    let output = run(&["solve", path.to_str().unwrap(), "--n1", "2", "--n2", "0", "--num", "20"]);
    assert_eq!(output.status.code(), Some(0));
    assert!(stderr(&output).contains("tautology"), "{}", stderr(&output));
}
