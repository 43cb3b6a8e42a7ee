use std::process::{Command, Output};

fn tyconlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tyconlab"))
        .args(args)
        .env_remove("TYCONLAB_DEPTH")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn check_list_functor_and_monad_passes() {
    let o = tyconlab(&[
        "check",
        "--instance",
        "list",
        "--laws",
        "functor,monad",
        "--depth",
        "3",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.lines().count() > 10);
    assert!(out.lines().all(|l| l.starts_with("pass ")), "{out}");
}

#[test]
fn counterexample_reports_lazy_return_witness() {
    let args = [
        "counterexample",
        "errort-right-unit",
        "--inner",
        "list",
        "--depth",
        "3",
    ];
    let o = tyconlab(&[&args[..], &["--expect-paper"]].concat());
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("m = InR((Lift(_|_), Lift(InL(()))))"));

    // without the flag the failure is an unexpected verdict
    assert_eq!(tyconlab(&args).status.code(), Some(1));
}

#[test]
fn strict_inner_has_no_counterexample() {
    let o = tyconlab(&["counterexample", "writert-left-unit", "--inner", "identity"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("pass "));
}

#[test]
fn unknown_names_are_usage_errors() {
    assert_eq!(
        tyconlab(&["check", "--instance", "nosuch"]).status.code(),
        Some(2)
    );
    assert_eq!(
        tyconlab(&["check", "--laws", "nosuch"]).status.code(),
        Some(2)
    );
    assert_eq!(
        tyconlab(&["counterexample", "nosuch"]).status.code(),
        Some(2)
    );
    assert_eq!(
        tyconlab(&["invariant", "--instance", "list"]).status.code(),
        Some(2)
    );
    assert_eq!(tyconlab(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn json_report_is_written_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let o = tyconlab(&[
        "invariant",
        "--instance",
        "errort:unit:list",
        "--format",
        "json",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let arr = v.as_array().unwrap();
    assert!(!arr.is_empty());
    for r in arr {
        assert_eq!(r["status"], "pass");
        assert_eq!(r["case_key"]["instance"], "errort:unit:list");
        assert!(r["cases_checked"].is_u64());
    }
}

#[test]
fn depth_defaults_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_tyconlab"))
        .args(["check", "--instance", "identity", "--laws", "functor"])
        .env("TYCONLAB_DEPTH", "2")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().all(|l| l.contains("depth 2")));
}

#[test]
fn registry_lists_instances() {
    let o = tyconlab(&["registry", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v["instances"]
        .as_array()
        .unwrap()
        .iter()
        .any(|i| i == "writert:m3:list"));
    assert_eq!(v["types"][1], "vert = lift(unit)");
}

#[test]
fn repeated_runs_are_byte_identical() {
    let args = [
        "check",
        "--instance",
        "rest:list",
        "--laws",
        "interleave,monad",
        "--format",
        "json",
    ];
    let (a, b) = (tyconlab(&args), tyconlab(&args));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}
