//! Bounded-exhaustive law checking and law reports.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::rep::FnVal;
use crate::udom::UValue;

/// Identifies one checked case: a law of an instance at a type tuple and
/// depth bound. Reports are ordered by this key.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct CaseKey {
    pub instance: String,
    pub law: String,
    pub types: Vec<String>,
    pub depth: usize,
}

impl CaseKey {
    pub fn new(instance: &str, law: &str, types: &[&str], depth: usize) -> Self {
        CaseKey {
            instance: instance.to_string(),
            law: law.to_string(),
            types: types.iter().map(|t| t.to_string()).collect(),
            depth,
        }
    }
}

impl fmt::Display for CaseKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} [{}] depth {}",
            self.instance,
            self.law,
            self.types.join(", "),
            self.depth
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Refused,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Refused => "refused",
        })
    }
}

/// A quantified variable's value in a counterexample, rendered.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Assignment {
    pub var: String,
    pub value: String,
}

/// The verdict a case is predicted to have.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Expectation {
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<Assignment>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct LawReport {
    pub case_key: CaseKey,
    pub status: Status,
    pub cases_checked: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Vec<Assignment>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expect: Option<Expectation>,
    #[serde(skip)]
    pub witness: Option<Vec<Arg>>,
}

impl LawReport {
    pub fn passed(case_key: CaseKey, cases_checked: usize) -> Self {
        LawReport {
            case_key,
            status: Status::Pass,
            cases_checked,
            counterexample: None,
            note: None,
            expect: None,
            witness: None,
        }
    }

    pub fn failed(case_key: CaseKey, cases_checked: usize, binding: Vec<Quantifier>) -> Self {
        let args: Vec<Arg> = binding.iter().map(|q| q.domain[0].clone()).collect();
        let names: Vec<&str> = binding.iter().map(|q| q.name.as_str()).collect();
        LawReport {
            case_key,
            status: Status::Fail,
            cases_checked,
            counterexample: Some(render_binding(&names, &args)),
            note: None,
            expect: None,
            witness: Some(args),
        }
    }

    pub fn refused(case_key: CaseKey, reason: impl Into<String>) -> Self {
        LawReport {
            case_key,
            status: Status::Refused,
            cases_checked: 0,
            counterexample: None,
            note: Some(reason.into()),
            expect: None,
            witness: None,
        }
    }

    pub fn with_expect(mut self, expect: Expectation) -> Self {
        self.expect = Some(expect);
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    /// Whether the verdict is the predicted one (a pass when nothing is
    /// predicted). A predicted witness must appear in the counterexample.
    pub fn meets_expectation(&self) -> bool {
        match &self.expect {
            None => self.status == Status::Pass,
            Some(e) => {
                e.status == self.status
                    && match (&e.witness, &self.counterexample) {
                        (None, _) => true,
                        (Some(w), Some(found)) => w.iter().all(|a| found.contains(a)),
                        (Some(_), None) => false,
                    }
            }
        }
    }
}

impl fmt::Display for LawReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:<7} {} ({} cases)",
            self.status, self.case_key, self.cases_checked
        )?;
        if let Some(cx) = &self.counterexample {
            let parts: Vec<String> = cx
                .iter()
                .map(|a| format!("{} = {}", a.var, a.value))
                .collect();
            write!(f, " counterexample: {}", parts.join("; "))?;
        }
        if let Some(note) = &self.note {
            write!(f, " ({note})")?;
        }
        Ok(())
    }
}

/// A value bound by a quantifier.
#[derive(Clone, Debug)]
pub enum Arg {
    Val(UValue),
    Fn(FnVal),
    Nat(usize),
}

impl Arg {
    pub fn val(&self) -> &UValue {
        match self {
            Arg::Val(u) => u,
            other => panic!("expected a value, found {other}"),
        }
    }

    pub fn fun(&self) -> &FnVal {
        match self {
            Arg::Fn(f) => f,
            other => panic!("expected a function, found {other}"),
        }
    }

    pub fn nat(&self) -> usize {
        match self {
            Arg::Nat(n) => *n,
            other => panic!("expected a number, found {other}"),
        }
    }

    /// (inner `_|_` count, size); smaller is simpler.
    pub fn measure(&self) -> (usize, usize) {
        match self {
            Arg::Val(u) => (u.inner_bots(), u.size()),
            Arg::Fn(f) => f.measure(),
            Arg::Nat(n) => (0, *n),
        }
    }
}

impl fmt::Display for Arg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Arg::Val(u) => u.fmt(f),
            Arg::Fn(g) => g.fmt(f),
            Arg::Nat(n) => n.fmt(f),
        }
    }
}

/// A named variable ranging over a finite domain.
#[derive(Clone, Debug)]
pub struct Quantifier {
    pub name: String,
    pub domain: Arc<Vec<Arg>>,
}

impl Quantifier {
    pub fn vals(name: &str, vals: impl IntoIterator<Item = UValue>) -> Self {
        Quantifier {
            name: name.to_string(),
            domain: Arc::new(vals.into_iter().map(Arg::Val).collect()),
        }
    }

    pub fn fns(name: &str, fns: impl IntoIterator<Item = FnVal>) -> Self {
        Quantifier {
            name: name.to_string(),
            domain: Arc::new(fns.into_iter().map(Arg::Fn).collect()),
        }
    }

    pub fn nats(name: &str, range: impl IntoIterator<Item = usize>) -> Self {
        Quantifier {
            name: name.to_string(),
            domain: Arc::new(range.into_iter().map(Arg::Nat).collect()),
        }
    }

    pub fn single(name: &str, arg: Arg) -> Self {
        Quantifier {
            name: name.to_string(),
            domain: Arc::new(vec![arg]),
        }
    }

    pub fn len(&self) -> usize {
        self.domain.len()
    }

    pub fn is_empty(&self) -> bool {
        self.domain.is_empty()
    }
}

fn render_binding(names: &[&str], args: &[Arg]) -> Vec<Assignment> {
    names
        .iter()
        .zip(args)
        .map(|(n, a)| Assignment {
            var: n.to_string(),
            value: a.to_string(),
        })
        .collect()
}

/// Outcome of a law at one binding.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Fails,
    /// A precondition is not met; the binding is not counted.
    Skip,
}

impl From<bool> for Verdict {
    fn from(b: bool) -> Self {
        if b {
            Verdict::Holds
        } else {
            Verdict::Fails
        }
    }
}

/// Evaluates `law` on every binding of `quants`.
///
/// On failure the reported binding is the minimal failing one: fewest inner
/// `_|_` over all bound values, then smallest total size, then first in
/// enumeration order. Refuses when the number of bindings exceeds `limit`.
pub fn check_law(
    key: CaseKey,
    quants: &[Quantifier],
    limit: usize,
    law: impl Fn(&[&Arg]) -> Verdict,
) -> LawReport {
    let total = quants
        .iter()
        .try_fold(1usize, |acc, q| acc.checked_mul(q.len()));
    match total {
        Some(t) if t <= limit => {}
        _ => {
            let sizes: Vec<String> = quants
                .iter()
                .map(|q| format!("{}:{}", q.name, q.len()))
                .collect();
            return LawReport::refused(
                key,
                format!("{} bindings exceed the limit of {limit}", sizes.join(" x ")),
            );
        }
    }
    if total == Some(0) {
        return LawReport::passed(key, 0);
    }
    let n = quants.len();
    let mut idx = vec![0usize; n];
    let mut checked = 0usize;
    let mut best: Option<((usize, usize), Vec<usize>)> = None;
    loop {
        let args: Vec<&Arg> = quants
            .iter()
            .zip(&idx)
            .map(|(q, &i)| &q.domain[i])
            .collect();
        match law(&args) {
            Verdict::Skip => {}
            Verdict::Holds => checked += 1,
            Verdict::Fails => {
                checked += 1;
                let m = args.iter().fold((0, 0), |(b, s), a| {
                    let (b2, s2) = a.measure();
                    (b + b2, s + s2)
                });
                if best.as_ref().is_none_or(|(bm, _)| m < *bm) {
                    best = Some((m, idx.clone()));
                    if m == (0, 0) {
                        break;
                    }
                }
            }
        }
        // odometer, last variable fastest
        let mut done = true;
        for pos in (0..n).rev() {
            idx[pos] += 1;
            if idx[pos] < quants[pos].len() {
                done = false;
                break;
            }
            idx[pos] = 0;
        }
        if done {
            break;
        }
    }
    match best {
        None => LawReport::passed(key, checked),
        Some((_, idx)) => {
            let args: Vec<Arg> = quants
                .iter()
                .zip(&idx)
                .map(|(q, &i)| q.domain[i].clone())
                .collect();
            let refs: Vec<&Arg> = args.iter().collect();
            debug_assert_eq!(law(&refs), Verdict::Fails);
            let names: Vec<&str> = quants.iter().map(|q| q.name.as_str()).collect();
            LawReport {
                case_key: key,
                status: Status::Fail,
                cases_checked: checked,
                counterexample: Some(render_binding(&names, &args)),
                note: None,
                expect: None,
                witness: Some(args),
            }
        }
    }
}
