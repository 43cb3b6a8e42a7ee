//! Acceptance matrix. Runs every criterion, prints one line each and exits
//! non-zero if any criterion fails or takes longer than a minute.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use tyconlab::checker::{
    check_strict_return, find_counterexample, run_suite, CheckConfig, LawGroup,
};
use tyconlab::law::{LawReport, Status};
use tyconlab::registry;
use tyconlab::udom::UValue;

const TIME_LIMIT: Duration = Duration::from_secs(60);

type Outcome = Result<String, String>;

fn suite(instances: &[&str], laws: &[LawGroup]) -> Result<Vec<LawReport>, String> {
    let cfg = CheckConfig {
        instances: instances.iter().map(|s| s.to_string()).collect(),
        laws: laws.to_vec(),
        ..CheckConfig::default()
    };
    run_suite(&cfg).map_err(|e| e.to_string())
}

fn all_pass(reports: &[LawReport]) -> Outcome {
    if reports.is_empty() {
        return Err("no cases ran".into());
    }
    match reports.iter().find(|r| r.status != Status::Pass) {
        Some(r) => Err(r.to_string()),
        None => {
            let cases: usize = reports.iter().map(|r| r.cases_checked).sum();
            Ok(format!("{} reports, {cases} cases", reports.len()))
        }
    }
}

fn require_laws(reports: &[LawReport], instance: &str, laws: &[&str]) -> Result<(), String> {
    let have: BTreeSet<&str> = reports
        .iter()
        .filter(|r| r.case_key.instance == instance)
        .map(|r| r.case_key.law.as_str())
        .collect();
    match laws.iter().find(|l| !have.contains(**l)) {
        Some(l) => Err(format!("{instance}: law {l} was not checked")),
        None => Ok(()),
    }
}

fn max_depth(reports: &[LawReport]) -> usize {
    reports.iter().map(|r| r.case_key.depth).max().unwrap_or(0)
}

fn find<'a>(reports: &'a [LawReport], instance: &str, law: &str) -> Result<&'a LawReport, String> {
    reports
        .iter()
        .find(|r| r.case_key.instance == instance && r.case_key.law == law)
        .ok_or_else(|| format!("missing report {instance} {law}"))
}

/// `Cons ⊥ Nil` built directly from the list encoding.
fn lazy_list_return() -> String {
    let nil = UValue::mk_inl(UValue::Unit);
    UValue::mk_inr(UValue::mk_pair(
        UValue::mk_lift(UValue::Bot),
        UValue::mk_lift(nil),
    ))
    .to_string()
}

fn coercion() -> Outcome {
    let reports = suite(&[], &[LawGroup::Coercion])?;
    for t in registry::BASE_TYPES {
        for law in ["coerce-self", "to-univ", "from-univ"] {
            let r = reports
                .iter()
                .find(|r| r.case_key.law == law && r.case_key.types == [t])
                .ok_or_else(|| format!("{law} missing for {t}"))?;
            if r.case_key.depth < 4 {
                return Err(format!("{law} for {t} ran at depth {}", r.case_key.depth));
            }
        }
    }
    require_laws(
        &reports,
        "coercion",
        &[
            "coerce-twice",
            "coerce-lift",
            "coerce-sum",
            "coerce-prod",
            "coerce-fn",
            "coerce-id-univ",
        ],
    )?;
    all_pass(&reports)
}

fn deflation() -> Outcome {
    let reports = suite(
        registry::DEFAULT_INSTANCES.as_slice(),
        &[LawGroup::Deflation],
    )?;
    if reports.iter().any(|r| r.case_key.depth < 5) {
        return Err("a deflation was checked below depth 5".into());
    }
    let unfolded = reports
        .iter()
        .filter(|r| r.case_key.law == "unfold")
        .count();
    if unfolded == 0 {
        return Err("no recursive deflation was unfolded".into());
    }
    all_pass(&reports)
}

fn functor() -> Outcome {
    let instances = [
        "list",
        "error:unit",
        "writer:m3",
        "identity",
        "rest:identity",
        "rest:list",
    ];
    let reports = suite(&instances, &[LawGroup::Functor])?;
    for i in instances {
        require_laws(
            &reports,
            i,
            &[
                "agreement",
                "univ-composition",
                "identity",
                "composition",
                "fmap-strict",
                "coerce-round-trip",
            ],
        )?;
    }
    if max_depth(&reports) < 3 {
        return Err("functor suites ran below depth 3".into());
    }
    all_pass(&reports)
}

fn monad() -> Outcome {
    let instances = [
        "list",
        "identity",
        "error:unit",
        "rest:identity",
        "rest:list",
    ];
    let reports = suite(&instances, &[LawGroup::Monad])?;
    for i in instances {
        require_laws(
            &reports,
            i,
            &[
                "left-unit",
                "right-unit",
                "bind-assoc",
                "fmap-via-bind",
                "fmap-return",
                "bind-fmap",
                "fmap-bind",
                "bind-strict",
            ],
        )?;
    }
    all_pass(&reports)
}

fn fplus() -> Outcome {
    let reports = suite(&["list"], &[LawGroup::Fplus])?;
    require_laws(&reports, "list", &["append-assoc", "append-natural"])?;
    all_pass(&reports)
}

fn interleave() -> Outcome {
    let reports = suite(&["rest:list"], &[LawGroup::Interleave])?;
    require_laws(
        &reports,
        "rest:list",
        &[
            "ap-identity",
            "ap-homomorphism",
            "ap-interchange",
            "ap-composition",
        ],
    )?;
    all_pass(&reports)
}

/// The iff between a unit law holding and `return` being strict, over
/// several inner monads.
fn iff_matrix(law: &str) -> Result<(), String> {
    for inner in ["identity", "list", "error:unit", "rest:identity"] {
        let m = registry::instance(inner)
            .map_err(|e| e.to_string())?
            .monad
            .unwrap();
        let cx = find_counterexample(law, inner, 3).map_err(|e| e.to_string())?;
        if cx.is_none() != check_strict_return(&*m) {
            return Err(format!(
                "{law} over {inner}: counterexample {cx:?} but strict return is {}",
                check_strict_return(&*m)
            ));
        }
    }
    Ok(())
}

fn errort() -> Outcome {
    let (id, list) = ("errort:unit:identity", "errort:unit:list");
    let reports = suite(&[id, list], &[LawGroup::Errort])?;
    let equations = [
        "unit-bind",
        "catch-throw",
        "bind-throw",
        "catch-unit",
        "lift-return",
        "lift-bind",
        "bind-assoc",
    ];
    for i in [id, list] {
        require_laws(&reports, i, &equations)?;
    }
    let rest: Vec<LawReport> = reports
        .iter()
        .filter(|r| r.case_key.law != "right-unit")
        .cloned()
        .collect();
    let summary = all_pass(&rest)?;
    let strict = find(&reports, id, "right-unit")?;
    if strict.status != Status::Pass {
        return Err(strict.to_string());
    }
    let lazy = find(&reports, list, "right-unit")?;
    let witness = lazy
        .counterexample
        .as_ref()
        .ok_or_else(|| lazy.to_string())?;
    if lazy.status != Status::Fail || witness.len() != 1 || witness[0].value != lazy_list_return() {
        return Err(format!("expected m = {}, got {lazy}", lazy_list_return()));
    }
    iff_matrix("errort-right-unit")?;
    Ok(format!("{summary}; list witness m = {}", witness[0].value))
}

fn writert() -> Outcome {
    let (id, list) = ("writert:m3:identity", "writert:m3:list");
    let reports = suite(&[id, list], &[LawGroup::Writert])?;
    for law in ["right-unit", "left-unit"] {
        let strict = find(&reports, id, law)?;
        if strict.status != Status::Pass {
            return Err(strict.to_string());
        }
    }
    let right = find(&reports, list, "right-unit")?;
    let expected_m = lazy_list_return();
    match &right.counterexample {
        Some(w)
            if right.status == Status::Fail
                && w.iter().any(|a| a.var == "m" && a.value == expected_m) => {}
        _ => return Err(format!("expected m = {expected_m}, got {right}")),
    }
    let left = find(&reports, list, "left-unit")?;
    let expected_k = format!("const {expected_m}");
    match &left.counterexample {
        Some(w)
            if left.status == Status::Fail
                && w.iter().any(|a| a.var == "k" && a.value == expected_k) => {}
        _ => return Err(format!("expected k = {expected_k}, got {left}")),
    }
    iff_matrix("writert-right-unit")?;
    iff_matrix("writert-left-unit")?;
    Ok(format!("witnesses m = {expected_m}, k = {expected_k}"))
}

fn invariant() -> Outcome {
    let (et, wt) = ("errort:unit:list", "writert:m3:list");
    let reports = suite(&[et, wt], &[LawGroup::Invariant])?;
    require_laws(
        &reports,
        et,
        &[
            "inv-bot",
            "inv-unit",
            "inv-bind",
            "inv-throw",
            "inv-catch",
            "inv-lift",
            "inv-lub",
            "restricted-right-unit",
            "invariant-deflation",
        ],
    )?;
    require_laws(
        &reports,
        wt,
        &[
            "inv-bot",
            "inv-unit",
            "inv-bind",
            "inv-tell",
            "inv-listen",
            "inv-lub",
            "restricted-left-unit",
            "invariant-deflation",
        ],
    )?;
    all_pass(&reports)
}

fn approx() -> Outcome {
    let reports = suite(&[], &[LawGroup::Approx])?;
    require_laws(&reports, "list-take", &["take-chain", "take-exact"])?;
    if reports.iter().any(|r| r.case_key.depth < 4) {
        return Err("approximation checked below depth 4".into());
    }
    all_pass(&reports)
}

fn determinism() -> Outcome {
    let run = || -> Result<String, String> {
        let reports = run_suite(&CheckConfig::default()).map_err(|e| e.to_string())?;
        serde_json::to_string_pretty(&reports).map_err(|e| e.to_string())
    };
    let (first, second) = (run()?, run()?);
    if first != second {
        return Err("two runs produced different JSON".into());
    }
    Ok(format!("{} bytes identical", first.len()))
}

fn main() -> ExitCode {
    type Criterion = (&'static str, fn() -> Outcome);
    let criteria: [Criterion; 11] = [
        ("coercion algebra", coercion),
        ("deflation axioms", deflation),
        ("functor suites", functor),
        ("monad suites", monad),
        ("functor-plus suite", fplus),
        ("interleave laws", interleave),
        ("error transformer", errort),
        ("writer transformer", writert),
        ("invariants", invariant),
        ("approximation", approx),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let mut outcome = run();
        let elapsed = start.elapsed();
        if outcome.is_ok() && elapsed > TIME_LIMIT {
            outcome = Err(format!("took {elapsed:.1?}"));
        }
        match outcome {
            Ok(detail) => println!(
                "criterion {:>2} PASS {name} [{elapsed:.1?}] {detail}",
                i + 1
            ),
            Err(detail) => {
                failed += 1;
                println!(
                    "criterion {:>2} FAIL {name} [{elapsed:.1?}] {detail}",
                    i + 1
                );
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
