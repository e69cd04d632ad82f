mod common;

use std::path::Path;
use std::process::{Command, Output};

use aidcheck::analytic::{Breakeven, PolicyComparison};
use aidcheck::cli::{OutputEnvelope, SweepSummary};
use aidcheck::{estimate_accuracy, evaluate, validate_scenario, EvalResult, Scenario, SimEstimate};
use common::scenario_path;

fn aidcheck(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_aidcheck"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn path(name: &str) -> String {
    scenario_path(name).display().to_string()
}

fn stdout(o: &Output) -> &str {
    std::str::from_utf8(&o.stdout).unwrap()
}

fn stderr(o: &Output) -> &str {
    std::str::from_utf8(&o.stderr).unwrap()
}

fn parse<T: serde::de::DeserializeOwned>(o: &Output) -> OutputEnvelope<T> {
    assert_eq!(o.status.code(), Some(0), "stderr: {}", stderr(o));
    serde_json::from_str(stdout(o)).unwrap_or_else(|e| panic!("{e}\n{}", stdout(o)))
}

fn write_scenario(dir: &Path, name: &str, json: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, json).unwrap();
    p.display().to_string()
}

#[test]
fn eval_golden_values() {
    for (file, expected) in [
        ("eq1_base.json", 0.55),
        ("eq2_moderate.json", 0.658),
        ("eq2_high_discrimination.json", 0.679),
        ("eq2_dominant.json", 0.67),
        ("eq3_self_gated.json", 0.742),
    ] {
        let env: OutputEnvelope<EvalResult> = parse(&aidcheck(&["eval", &path(file)]));
        assert!(
            (env.result.p_correct_aided.value() - expected).abs() < 1e-12,
            "{file}"
        );
        // echo validates back to the same scenario
        let echoed = validate_scenario(&env.scenario).unwrap();
        let original =
            Scenario::from_json(&std::fs::read_to_string(scenario_path(file)).unwrap()).unwrap();
        assert_eq!(echoed, original);
    }
}

#[test]
fn eval_csv_format() {
    let o = aidcheck(&["eval", &path("eq1_base.json"), "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("metric,value\np_correct_aided,0.55\n"));
    assert_eq!(text.lines().count(), 11);
}

#[test]
fn eval_invalid_probability_exits_2() {
    let o = aidcheck(&["eval", &path("invalid_probability.json")]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("aid.p_advice_correct"));
    assert!(stderr(&o).contains("1.3"));
    assert!(o.stdout.is_empty());
}

#[test]
fn eval_io_and_parse_failures_exit_1() {
    let o = aidcheck(&["eval", "/nonexistent/scenario.json"]);
    assert_eq!(o.status.code(), Some(1));

    let dir = tempfile::tempdir().unwrap();
    let bad = write_scenario(dir.path(), "bad.json", "{not json");
    assert_eq!(aidcheck(&["eval", &bad]).status.code(), Some(1));

    let typo = write_scenario(
        dir.path(),
        "typo.json",
        r#"{"aid":{"p_advice_correct":0.7},
            "user":{"p_unaided_correct":0.6,"p_post_reject_correct":0.4},
            "policy":{"type":"indiscriminate","p_acept":0.5},
            "dependency":{"type":"independent"}}"#,
    );
    assert_eq!(aidcheck(&["eval", &typo]).status.code(), Some(1));
}

#[test]
fn eval_self_gated_dependent_has_no_closed_form() {
    let dir = tempfile::tempdir().unwrap();
    let p = write_scenario(
        dir.path(),
        "sg.json",
        r#"{"aid":{"p_advice_correct":0.7},
            "user":{"p_unaided_correct":0.6,"p_post_reject_correct":0.4},
            "policy":{"type":"self_gated","p_ignore_given_user_correct":0.7,"p_use_given_user_wrong":0.7},
            "dependency":{"type":"dominant"}}"#,
    );
    let o = aidcheck(&["eval", &p]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("simulat"));

    let sim: OutputEnvelope<SimEstimate> = parse(&aidcheck(&[
        "simulate", &p, "--trials", "1000", "--seed", "3",
    ]));
    assert!(sim.notes.iter().any(|n| n.contains("closed form")));
}

#[test]
fn compare_outputs() {
    let env: OutputEnvelope<PolicyComparison> =
        parse(&aidcheck(&["compare", &path("eq1_base.json")]));
    assert_eq!(env.result.best_policy, "routine_accept");

    let env: OutputEnvelope<PolicyComparison> = parse(&aidcheck(&[
        "compare",
        &path("eq2_high_discrimination.json"),
    ]));
    assert_eq!(env.result.best_policy, "discriminating");

    let env: OutputEnvelope<PolicyComparison> = parse(&aidcheck(&["compare", &path("tie.json")]));
    assert_eq!(env.result.best_policy, "routine_ignore");
    assert_eq!(env.result.tied.len(), 3);
    assert!(env.result.notes.iter().any(|n| n.contains("precedence")));
}

#[test]
fn simulate_is_byte_identical_for_fixed_inputs() {
    let args = [
        "simulate",
        &path("eq1_base.json"),
        "--trials",
        "1000000",
        "--seed",
        "42",
        "--shards",
        "1",
    ];
    let a = aidcheck(&args);
    let b = aidcheck(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let env: OutputEnvelope<SimEstimate> = parse(&a);
    assert_eq!(env.result.seed, 42);
    assert_eq!(env.result.shards, 1);
    assert_eq!(env.result.n_trials, 1_000_000);
}

#[test]
fn simulate_dependent_case_brackets_golden_value() {
    let env: OutputEnvelope<SimEstimate> = parse(&aidcheck(&[
        "simulate",
        &path("eq2_dominant.json"),
        "--trials",
        "1000000",
        "--seed",
        "7",
        "--shards",
        "4",
    ]));
    let e = env.result;
    assert!((e.p_hat.value() - 0.67).abs() < 4.0 * e.std_err);
}

#[test]
fn simulate_flag_misuse_exits_3() {
    let p = path("eq1_base.json");
    assert_eq!(
        aidcheck(&["simulate", &p, "--trials", "0"]).status.code(),
        Some(3)
    );
    assert_eq!(
        aidcheck(&["simulate", &p, "--trials", "-5"]).status.code(),
        Some(3)
    );
    assert_eq!(
        aidcheck(&["simulate", &p, "--shards", "0"]).status.code(),
        Some(3)
    );
    assert_eq!(
        aidcheck(&["simulate", &p, "--seed", "x"]).status.code(),
        Some(3)
    );
}

#[test]
fn simulate_invalid_scenario_exits_2() {
    let o = aidcheck(&[
        "simulate",
        &path("invalid_probability.json"),
        "--trials",
        "10",
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn sweep_writes_csv() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("fig.csv");
    let o = aidcheck(&[
        "sweep",
        &path("eq1_base.json"),
        "--param",
        "policy.p_accept",
        "--from",
        "0",
        "--to",
        "1",
        "--steps",
        "11",
        "--out",
        out.to_str().unwrap(),
    ]);
    let env: OutputEnvelope<SweepSummary> = parse(&o);
    assert_eq!(env.result.steps, 11);
    assert!(env.result.max_chord_deviation < 1e-12);

    let csv = std::fs::read_to_string(&out).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines.len(), 12);
    assert_eq!(
        lines[0],
        "param_value,aided_accuracy,unaided_reference,routine_accept_reference"
    );
    assert_eq!(lines[1], "0.0,0.4,0.6,0.7");
    assert_eq!(lines[11], "1.0,0.7,0.6,0.7");
    for line in &lines {
        assert_eq!(line.trim_end(), *line);
    }
    // every row is eq1 at its grid point
    for (i, line) in lines[1..].iter().enumerate() {
        let cols: Vec<f64> = line.split(',').map(|c| c.parse().unwrap()).collect();
        let p = i as f64 / 10.0;
        assert!((cols[0] - p).abs() < 1e-12);
        assert!((cols[1] - (0.7 * p + 0.4 * (1.0 - p))).abs() < 1e-11);
    }
}

#[test]
fn sweep_errors() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("x.csv");
    let out = out.to_str().unwrap();
    let base = path("eq1_base.json");

    let steps1 = aidcheck(&[
        "sweep",
        &base,
        "--param",
        "policy.p_accept",
        "--from",
        "0",
        "--to",
        "1",
        "--steps",
        "1",
        "--out",
        out,
    ]);
    assert_eq!(steps1.status.code(), Some(3));

    let wrong_variant = aidcheck(&[
        "sweep",
        &base,
        "--param",
        "policy.p_accept_given_correct",
        "--from",
        "0",
        "--to",
        "1",
        "--steps",
        "3",
        "--out",
        out,
    ]);
    assert_eq!(wrong_variant.status.code(), Some(3));
    assert!(stderr(&wrong_variant).contains("not applicable"));

    let frechet = aidcheck(&[
        "sweep",
        &path("eq2_joint.json"),
        "--param",
        "dependency.p_both_correct",
        "--from",
        "0.4",
        "--to",
        "0.8",
        "--steps",
        "5",
        "--out",
        out,
    ]);
    assert_eq!(frechet.status.code(), Some(2));
    // grid 0.4, 0.5, 0.6, 0.7, 0.8: first value above min(pA, pU) = 0.6 is 0.7
    assert!(
        stderr(&frechet).contains("swept value 0.7"),
        "{}",
        stderr(&frechet)
    );
    assert!(!Path::new(out).exists());

    let unwritable = aidcheck(&[
        "sweep",
        &base,
        "--param",
        "policy.p_accept",
        "--from",
        "0",
        "--to",
        "1",
        "--steps",
        "3",
        "--out",
        "/nonexistent/dir/x.csv",
    ]);
    assert_eq!(unwritable.status.code(), Some(1));
}

#[test]
fn breakeven_outputs() {
    let env: OutputEnvelope<Breakeven> = parse(&aidcheck(&["breakeven", &path("eq1_base.json")]));
    let d = env.result.d_star.unwrap();
    assert!((d - 7.0 / 9.0).abs() < 1e-9);
    assert!((env.result.eq2_at_d_star.unwrap() - 0.7).abs() < 1e-9);

    let o = aidcheck(&["breakeven", &path("breakeven_unattainable.json")]);
    assert!(stdout(&o).contains("\"unattainable\""));
    let env: OutputEnvelope<Breakeven> = parse(&o);
    assert_eq!(env.result.d_star, None);

    let env: OutputEnvelope<Breakeven> = parse(&aidcheck(&[
        "breakeven",
        &path("breakeven_free_rejection.json"),
    ]));
    assert_eq!(env.result.d_star, Some(0.5));
}

#[test]
fn eval_and_simulate_agree_on_golden_suite() {
    for (i, file) in [
        "eq1_base.json",
        "eq2_moderate.json",
        "eq2_high_discrimination.json",
        "eq2_dominant.json",
        "eq2_joint.json",
        "eq3_self_gated.json",
        "tie.json",
    ]
    .into_iter()
    .enumerate()
    {
        let eval: OutputEnvelope<EvalResult> = parse(&aidcheck(&["eval", &path(file)]));
        let seed = (100 + i).to_string();
        let sim: OutputEnvelope<SimEstimate> = parse(&aidcheck(&[
            "simulate",
            &path(file),
            "--trials",
            "1000000",
            "--seed",
            &seed,
        ]));
        let gap = (eval.result.p_correct_aided.value() - sim.result.p_hat.value()).abs();
        assert!(gap < 4.0 * sim.result.std_err, "{file}: gap {gap}");
    }
}

#[test]
fn library_and_binary_agree() {
    let s = common::load("eq2_moderate.json");
    let env: OutputEnvelope<EvalResult> = parse(&aidcheck(&["eval", &path("eq2_moderate.json")]));
    let lib = evaluate(&s).unwrap();
    assert!((env.result.p_correct_aided.value() - lib.p_correct_aided.value()).abs() < 1e-11);

    let env: OutputEnvelope<SimEstimate> = parse(&aidcheck(&[
        "simulate",
        &path("eq2_moderate.json"),
        "--trials",
        "5000",
        "--seed",
        "9",
        "--shards",
        "2",
    ]));
    let lib = estimate_accuracy(&s, 5000, 9, 2).unwrap();
    assert_eq!(env.result.outcome_counts, lib.outcome_counts);
}
