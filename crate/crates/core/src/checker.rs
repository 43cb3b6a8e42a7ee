//! Suite runner: resolves instances, runs the selected law groups at their
//! default depths and returns reports sorted by case key.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::classes::{
    applied, check_fplus_laws, check_functor_laws, check_monad_laws, Monad, SuiteConfig,
};
use crate::deflation::{
    apply, axiom_carrier, check_deflation_axioms, defl_leq, enumerate_image, Bound, DeflExpr,
};
use crate::error::{Error, Result};
use crate::instances::invariant::{inv_closure_check, Transformer};
use crate::instances::list::{self, list_take, ListView};
use crate::instances::monoid::m3_index;
use crate::instances::rest::{code_apply, done, interleave, rest_fmap, Code};
use crate::instances::{ErrorT, ResT, WriterT};
use crate::law::{
    check_law, Assignment, CaseKey, Expectation, LawReport, Quantifier, Status, Verdict,
};
use crate::registry::{self, base_types, rep_type, Instance, DEFAULT_INSTANCES};
use crate::rep::{coerce_fn, coerce_val, gen_monotone_fns, FnVal, RepType};
use crate::udom::{enumerate_terms, UValue};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LawGroup {
    Functor,
    Fplus,
    Monad,
    Interleave,
    Errort,
    Writert,
    Invariant,
    Coercion,
    Deflation,
    Approx,
}

impl LawGroup {
    pub const ALL: [LawGroup; 10] = [
        LawGroup::Functor,
        LawGroup::Fplus,
        LawGroup::Monad,
        LawGroup::Interleave,
        LawGroup::Errort,
        LawGroup::Writert,
        LawGroup::Invariant,
        LawGroup::Coercion,
        LawGroup::Deflation,
        LawGroup::Approx,
    ];

    pub fn name(self) -> &'static str {
        match self {
            LawGroup::Functor => "functor",
            LawGroup::Fplus => "fplus",
            LawGroup::Monad => "monad",
            LawGroup::Interleave => "interleave",
            LawGroup::Errort => "errort",
            LawGroup::Writert => "writert",
            LawGroup::Invariant => "invariant",
            LawGroup::Coercion => "coercion",
            LawGroup::Deflation => "deflation",
            LawGroup::Approx => "approx",
        }
    }

    /// Depth used when the configuration does not fix one. Resumption
    /// suites use rank 3, the least rank containing `More` over `Done`.
    pub fn default_depth(self) -> usize {
        match self {
            LawGroup::Coercion | LawGroup::Approx => 4,
            LawGroup::Deflation => 5,
            _ => 3,
        }
    }

    /// Groups that do not range over instances.
    pub fn is_global(self) -> bool {
        matches!(
            self,
            LawGroup::Coercion | LawGroup::Deflation | LawGroup::Approx
        )
    }
}

impl fmt::Display for LawGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for LawGroup {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        LawGroup::ALL
            .into_iter()
            .find(|g| g.name() == s)
            .ok_or_else(|| Error::UnknownName(s.to_string()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckConfig {
    pub instances: Vec<String>,
    pub laws: Vec<LawGroup>,
    /// Overrides every group's default depth.
    pub depth: Option<usize>,
    pub guard: usize,
    pub case_limit: usize,
    pub univ_depth: usize,
}

impl Default for CheckConfig {
    fn default() -> Self {
        let base = SuiteConfig::at_depth(0);
        CheckConfig {
            instances: DEFAULT_INSTANCES.iter().map(|s| s.to_string()).collect(),
            laws: LawGroup::ALL.to_vec(),
            depth: None,
            guard: base.guard,
            case_limit: base.case_limit,
            univ_depth: base.univ_depth,
        }
    }
}

impl CheckConfig {
    pub fn suite(&self, group: LawGroup) -> SuiteConfig {
        SuiteConfig {
            guard: self.guard,
            case_limit: self.case_limit,
            univ_depth: self.univ_depth,
            ..SuiteConfig::at_depth(self.depth.unwrap_or_else(|| group.default_depth()))
        }
    }
}

/// Runs every selected group on every selected instance it applies to.
pub fn run_suite(config: &CheckConfig) -> Result<Vec<LawReport>> {
    let instances = config
        .instances
        .iter()
        .map(|n| registry::instance(n))
        .collect::<Result<Vec<_>>>()?;
    let groups: BTreeSet<LawGroup> = config.laws.iter().copied().collect();
    let mut out = Vec::new();
    for &g in &groups {
        let cfg = config.suite(g);
        if g.is_global() {
            out.extend(match g {
                LawGroup::Coercion => coercion_laws(&cfg),
                LawGroup::Deflation => deflation_laws(&instances, cfg.depth),
                _ => approx_laws(&cfg),
            });
            continue;
        }
        for inst in &instances {
            out.extend(run_group(g, inst, &cfg));
        }
    }
    out.sort_by(|a, b| a.case_key.cmp(&b.case_key));
    Ok(out)
}

fn run_group(g: LawGroup, inst: &Instance, cfg: &SuiteConfig) -> Vec<LawReport> {
    let t = |n: &str| rep_type(n).unwrap();
    match g {
        LawGroup::Functor => {
            check_functor_laws(&*inst.functor, &t("bool"), &t("vert"), &t("unit"), cfg)
        }
        LawGroup::Fplus => match &inst.plus {
            Some(p) => check_fplus_laws(&**p, &t("bool"), &t("vert"), cfg),
            None => Vec::new(),
        },
        LawGroup::Monad => match (&inst.monad, &inst.transformer) {
            (Some(m), None) => check_monad_laws(m, &t("unit"), &t("bool"), &t("unit"), cfg),
            _ => Vec::new(),
        },
        LawGroup::Interleave => match &inst.rest {
            Some(r) if r.plus().is_some() => interleave_laws(r, cfg),
            _ => Vec::new(),
        },
        LawGroup::Errort => match &inst.transformer {
            Some(Transformer::ErrorT(et)) => {
                errort_laws(et, &t("unit"), &t("bool"), &t("unit"), cfg)
            }
            _ => Vec::new(),
        },
        LawGroup::Writert => match &inst.transformer {
            Some(Transformer::WriterT(wt)) => {
                writert_laws(wt, &t("unit"), &t("bool"), &t("unit"), cfg)
            }
            _ => Vec::new(),
        },
        LawGroup::Invariant => match &inst.transformer {
            Some(tr) => inv_closure_check(tr, &t("unit"), cfg),
            None => Vec::new(),
        },
        LawGroup::Coercion | LawGroup::Deflation | LawGroup::Approx => Vec::new(),
    }
}

fn or_refuse(key: CaseKey, r: Result<LawReport>) -> LawReport {
    r.unwrap_or_else(|e| LawReport::refused(key, e.to_string()))
}

fn key(inst: &str, law: &str, tys: &[&RepType], depth: usize) -> CaseKey {
    let names: Vec<&str> = tys.iter().map(|t| &*t.name).collect();
    CaseKey::new(inst, law, &names, depth)
}

fn vals(name: &str, c: &[UValue]) -> Quantifier {
    Quantifier::vals(name, c.iter().cloned())
}

/// `univ_return ⊥ = ⊥`.
pub fn check_strict_return(inner: &dyn Monad) -> bool {
    inner.univ_return(&UValue::Bot).is_bot()
}

/// The predicted verdict of a unit law over `inner`: a failure whose
/// witness binds `var` to `rendered` when `return` is lazy.
fn unit_law_expectation(
    inner: &dyn Monad,
    var: &str,
    rendered: impl FnOnce(&UValue) -> String,
) -> Expectation {
    if check_strict_return(inner) {
        Expectation {
            status: Status::Pass,
            witness: None,
        }
    } else {
        let lazy = inner.univ_return(&UValue::Bot);
        Expectation {
            status: Status::Fail,
            witness: Some(vec![Assignment {
                var: var.to_string(),
                value: rendered(&lazy),
            }]),
        }
    }
}

fn errort_right_unit(et: &Arc<ErrorT>, name: &str, a: &RepType, cfg: &SuiteConfig) -> LawReport {
    let tc_a = applied(&**et, a);
    let k = key(name, "right-unit", &[a], cfg.depth);
    let unit = {
        let et = et.clone();
        FnVal::builtin("unit", move |x| et.unit(x))
    };
    or_refuse(
        k.clone(),
        (|| {
            let q = [vals("m", &tc_a.carrier(cfg.bound())?)];
            Ok(check_law(k, &q, cfg.case_limit, |v| {
                let m = v[0].val();
                (&et.bind(m, &unit) == m).into()
            }))
        })(),
    )
    .with_expect(unit_law_expectation(&**et.inner(), "m", |u| u.to_string()))
}

/// Unit, throw, catch and lift laws of the error transformer, associativity
/// of its bind, and the right unit law, which is predicted to fail exactly
/// when the inner `return` is lazy.
pub fn errort_laws(
    et: &Arc<ErrorT>,
    a: &RepType,
    b: &RepType,
    c: &RepType,
    cfg: &SuiteConfig,
) -> Vec<LawReport> {
    let name = crate::classes::Functor::name(&**et);
    let inner = et.inner().clone();
    let eps = et.eps().clone();
    let d = cfg.depth;
    let bound = cfg.bound();
    let kb = cfg.cont_bound();
    let (tc_a, tc_b, tc_c) = (applied(&**et, a), applied(&**et, b), applied(&**et, c));
    let (in_a, in_b) = (applied(&*inner, a), applied(&*inner, b));
    let mut out = Vec::new();

    let k = key(&name, "unit-bind", &[a, b], d);
    out.push(or_refuse(
        k.clone(),
        (|| {
            let q = [
                vals("a", &a.carrier(bound)?),
                Quantifier::fns("k", gen_monotone_fns(a, &tc_b, kb, cfg.guard)?),
            ];
            Ok(check_law(k, &q, cfg.case_limit, |v| {
                let (x, f) = (v[0].val(), v[1].fun());
                (et.bind(&et.unit(x), f) == f.call(x)).into()
            }))
        })(),
    ));

    let k = key(&name, "catch-throw", &[a], d);
    out.push(or_refuse(
        k.clone(),
        (|| {
            let q = [
                vals("e", &eps.carrier(bound)?),
                Quantifier::fns("h", gen_monotone_fns(&eps, &tc_a, kb, cfg.guard)?),
            ];
            Ok(check_law(k, &q, cfg.case_limit, |v| {
                let (e, h) = (v[0].val(), v[1].fun());
                (et.catch(&et.throw(e), h) == h.call(e)).into()
            }))
        })(),
    ));

    let k = key(&name, "bind-throw", &[a, b], d);
    out.push(or_refuse(
        k.clone(),
        (|| {
            let q = [
                vals("e", &eps.carrier(bound)?),
                Quantifier::fns("k", gen_monotone_fns(a, &tc_b, kb, cfg.guard)?),
            ];
            Ok(check_law(k, &q, cfg.case_limit, |v| {
                let (e, f) = (v[0].val(), v[1].fun());
                (et.bind(&et.throw(e), f) == et.throw(e)).into()
            }))
        })(),
    ));

    let k = key(&name, "catch-unit", &[a], d);
    out.push(or_refuse(
        k.clone(),
        (|| {
            let q = [
                vals("a", &a.carrier(bound)?),
                Quantifier::fns("h", gen_monotone_fns(&eps, &tc_a, kb, cfg.guard)?),
            ];
            Ok(check_law(k, &q, cfg.case_limit, |v| {
                let (x, h) = (v[0].val(), v[1].fun());
                (et.catch(&et.unit(x), h) == et.unit(x)).into()
            }))
        })(),
    ));

    let k = key(&name, "lift-return", &[a], d);
    out.push(or_refuse(
        k.clone(),
        (|| {
            let q = [vals("a", &a.carrier(bound)?)];
            Ok(check_law(k, &q, cfg.case_limit, |v| {
                let x = v[0].val();
                (et.lift(&inner.univ_return(x)) == et.unit(x)).into()
            }))
        })(),
    ));

    let k = key(&name, "lift-bind", &[a, b], d);
    out.push(or_refuse(
        k.clone(),
        (|| {
            let q = [
                vals("t", &in_a.carrier(bound)?),
                Quantifier::fns("k", gen_monotone_fns(a, &in_b, kb, cfg.guard)?),
            ];
            Ok(check_law(k, &q, cfg.case_limit, |v| {
                let (t, f) = (v[0].val(), v[1].fun());
                let lifted = {
                    let (et, f) = (et.clone(), f.clone());
                    FnVal::builtin("lift . k", move |x| et.lift(&f.call(x)))
                };
                (et.lift(&inner.univ_bind(t, f)) == et.bind(&et.lift(t), &lifted)).into()
            }))
        })(),
    ));

    let k = key(&name, "bind-assoc", &[a, b, c], d);
    out.push(or_refuse(
        k.clone(),
        (|| {
            let q = [
                vals("m", &tc_a.carrier(bound)?),
                Quantifier::fns("h", gen_monotone_fns(a, &tc_b, kb, cfg.guard)?),
                Quantifier::fns("k", gen_monotone_fns(b, &tc_c, kb, cfg.guard)?),
            ];
            Ok(check_law(k, &q, cfg.case_limit, |v| {
                let (m, h, g) = (v[0].val(), v[1].fun(), v[2].fun());
                let composed = {
                    let (et, h, g) = (et.clone(), h.clone(), g.clone());
                    FnVal::builtin("h >=> k", move |x| et.bind(&h.call(x), &g))
                };
                (et.bind(&et.bind(m, h), g) == et.bind(m, &composed)).into()
            }))
        })(),
    ));

    out.push(errort_right_unit(et, &name, a, cfg));
    out
}

fn writert_left_unit(
    wt: &Arc<WriterT>,
    name: &str,
    a: &RepType,
    b: &RepType,
    cfg: &SuiteConfig,
) -> LawReport {
    let tc_b = applied(&**wt, b);
    let k = key(name, "left-unit", &[a, b], cfg.depth);
    or_refuse(
        k.clone(),
        (|| {
            let q = [
                vals("a", &a.carrier(cfg.bound())?),
                Quantifier::fns(
                    "k",
                    gen_monotone_fns(a, &tc_b, cfg.cont_bound(), cfg.guard)?,
                ),
            ];
            Ok(check_law(k, &q, cfg.case_limit, |v| {
                let (x, f) = (v[0].val(), v[1].fun());
                (wt.bind(&wt.unit(x), f) == f.call(x)).into()
            }))
        })(),
    )
    .with_expect(unit_law_expectation(&**wt.inner(), "k", |u| {
        format!("const {u}")
    }))
}

fn writert_right_unit(wt: &Arc<WriterT>, name: &str, a: &RepType, cfg: &SuiteConfig) -> LawReport {
    let tc_a = applied(&**wt, a);
    let k = key(name, "right-unit", &[a], cfg.depth);
    let unit = {
        let wt = wt.clone();
        FnVal::builtin("unit", move |x| wt.unit(x))
    };
    or_refuse(
        k.clone(),
        (|| {
            let q = [vals("m", &tc_a.carrier(cfg.bound())?)];
            Ok(check_law(k, &q, cfg.case_limit, |v| {
                let m = v[0].val();
                (&wt.bind(m, &unit) == m).into()
            }))
        })(),
    )
    .with_expect(unit_law_expectation(&**wt.inner(), "m", |u| u.to_string()))
}

/// Both unit laws of the writer transformer (each predicted to fail exactly
/// when the inner `return` is lazy), associativity, and accumulation by
/// `tell`.
pub fn writert_laws(
    wt: &Arc<WriterT>,
    a: &RepType,
    b: &RepType,
    c: &RepType,
    cfg: &SuiteConfig,
) -> Vec<LawReport> {
    let name = crate::classes::Functor::name(&**wt);
    let d = cfg.depth;
    let bound = cfg.bound();
    let kb = cfg.cont_bound();
    let (tc_a, tc_b, tc_c) = (applied(&**wt, a), applied(&**wt, b), applied(&**wt, c));
    let mut out = vec![
        writert_left_unit(wt, &name, a, b, cfg),
        writert_right_unit(wt, &name, a, cfg),
    ];

    let k = key(&name, "bind-assoc", &[a, b, c], d);
    out.push(or_refuse(
        k.clone(),
        (|| {
            let q = [
                vals("m", &tc_a.carrier(bound)?),
                Quantifier::fns("h", gen_monotone_fns(a, &tc_b, kb, cfg.guard)?),
                Quantifier::fns("k", gen_monotone_fns(b, &tc_c, kb, cfg.guard)?),
            ];
            Ok(check_law(k, &q, cfg.case_limit, |v| {
                let (m, h, g) = (v[0].val(), v[1].fun(), v[2].fun());
                let composed = {
                    let (wt, h, g) = (wt.clone(), h.clone(), g.clone());
                    FnVal::builtin("h >=> k", move |x| wt.bind(&h.call(x), &g))
                };
                (wt.bind(&wt.bind(m, h), g) == wt.bind(m, &composed)).into()
            }))
        })(),
    ));

    let k = CaseKey::new(&name, "tell-tell", &[wt.monoid().name()], d);
    out.push(or_refuse(
        k.clone(),
        (|| {
            let ws = wt.monoid().carrier.carrier(bound)?;
            let q = [vals("w", &ws), vals("w'", &ws)];
            Ok(check_law(k, &q, cfg.case_limit, |v| {
                let (w1, w2) = (v[0].val(), v[1].val());
                let second = {
                    let (wt, w2) = (wt.clone(), w2.clone());
                    FnVal::builtin("tell w'", move |_| wt.tell(&w2))
                };
                (wt.bind(&wt.tell(w1), &second) == wt.tell(&wt.monoid().mappend(w1, w2))).into()
            }))
        })(),
    ));
    out
}

/// Applicative laws of the interleaving operator on resumptions: identity,
/// homomorphism, interchange and composition.
///
/// Functions inside `Done` leaves are codes (see [`Code`]); resumptions
/// carrying functions are the `m3` resumptions with the i-th element of
/// `m3` read as the i-th monotone function `unit -> unit`.
pub fn interleave_laws(r: &Arc<ResT>, cfg: &SuiteConfig) -> Vec<LawReport> {
    let name = crate::classes::Functor::name(&**r);
    let d = cfg.depth;
    let bound = cfg.bound();
    let plus = r
        .plus()
        .expect("interleave needs an inner functor with append")
        .clone();
    let unit = rep_type("unit").unwrap();
    let m3 = rep_type("m3").unwrap();
    let mut out = Vec::new();

    let prepared = (|| -> Result<_> {
        let table = gen_monotone_fns(&unit, &unit, bound, cfg.guard)?;
        let data = applied(&**r, &unit).carrier(bound)?;
        let relabel = FnVal::builtin("code", |x| match m3_index(x) {
            Some(i) => Code::Fn(i).encode(),
            None => UValue::Bot,
        });
        let codes: Vec<UValue> = applied(&**r, &m3)
            .carrier(bound)?
            .iter()
            .map(|u| rest_fmap(r.inner(), &relabel, u))
            .collect();
        Ok((table, data, codes))
    })();
    let (table, data, codes) = match prepared {
        Ok(p) => p,
        Err(e) => {
            for law in [
                "ap-identity",
                "ap-homomorphism",
                "ap-interchange",
                "ap-composition",
            ] {
                out.push(LawReport::refused(
                    key(&name, law, &[&unit], d),
                    e.to_string(),
                ));
            }
            return out;
        }
    };
    let app = code_apply(&table);
    let ap = |u: &UValue, v: &UValue| interleave(&plus, &app, u, v);
    let pure_id = done(Code::Id.encode());

    let k = key(&name, "ap-identity", &[&unit], d);
    out.push(check_law(k, &[vals("v", &data)], cfg.case_limit, |v| {
        let x = v[0].val();
        (&ap(&pure_id, x) == x).into()
    }));

    let k = key(&name, "ap-homomorphism", &[&unit], d);
    let fcodes: Vec<UValue> = (0..table.len()).map(|i| Code::Fn(i).encode()).collect();
    let xs = unit.carrier(bound).unwrap_or_default();
    out.push(check_law(
        k,
        &[vals("f", &fcodes), vals("x", &xs)],
        cfg.case_limit,
        |v| {
            let (f, x) = (v[0].val(), v[1].val());
            (ap(&done(f.clone()), &done(x.clone())) == done(app(f, x))).into()
        },
    ));

    let k = key(&name, "ap-interchange", &[&unit], d);
    out.push(check_law(
        k,
        &[vals("u", &codes), vals("y", &xs)],
        cfg.case_limit,
        |v| {
            let (u, y) = (v[0].val(), v[1].val());
            let lhs = ap(u, &done(y.clone()));
            let rhs = ap(&done(Code::ApplyTo(y.clone()).encode()), u);
            (lhs == rhs).into()
        },
    ));

    let k = key(&name, "ap-composition", &[&unit], d);
    let pure_compose = done(Code::Compose.encode());
    out.push(check_law(
        k,
        &[vals("u", &codes), vals("v", &codes), vals("w", &data)],
        cfg.case_limit,
        |v| {
            let (u, vv, w) = (v[0].val(), v[1].val(), v[2].val());
            let lhs = ap(&ap(&ap(&pure_compose, u), vv), w);
            let rhs = ap(u, &ap(vv, w));
            (lhs == rhs).into()
        },
    ));
    out
}

/// Structural map of a lift, sum or product deflation over component maps.
fn map_composite(shape: &DeflExpr, f: &FnVal, g: &FnVal, u: &UValue) -> UValue {
    match (shape, u) {
        (_, UValue::Bot) => UValue::Bot,
        (DeflExpr::Lift(_), UValue::Lift(x)) => UValue::mk_lift(f.call(x)),
        (DeflExpr::Sum(..), UValue::InL(x)) => UValue::mk_inl(f.call(x)),
        (DeflExpr::Sum(..), UValue::InR(y)) => UValue::mk_inr(g.call(y)),
        (DeflExpr::Prod(..), UValue::Pair(x, y)) => UValue::mk_pair(f.call(x), g.call(y)),
        _ => UValue::Bot,
    }
}

fn coercion_to(t: &RepType) -> FnVal {
    let t2 = t.clone();
    FnVal::builtin(&format!("to {}", t.name), move |u| coerce_val(&t2, u))
}

fn coercion_target(f: &FnVal, types: &[RepType]) -> RepType {
    let FnVal::Builtin { desc, .. } = f else {
        unreachable!("coercions are builtins")
    };
    let name = desc.strip_prefix("to ").unwrap_or(desc);
    types.iter().find(|t| &*t.name == name).cloned().unwrap()
}

/// Identity, embedding and projection coercions, coercing twice through a
/// larger type, componentwise coercion of composite types, and coercion of
/// functions by pre- and post-composition.
pub fn coercion_laws(cfg: &SuiteConfig) -> Vec<LawReport> {
    let inst = "coercion";
    let d = cfg.depth;
    let bound = Bound::rank(d);
    let univ_points = enumerate_terms(d);
    let tys = base_types();
    let univ = RepType::univ();
    let carrier = |t: &RepType| -> Vec<UValue> {
        if *t.expr() == DeflExpr::Id {
            univ_points.clone()
        } else {
            t.carrier(bound).map(|c| c.to_vec()).unwrap_or_default()
        }
    };
    let mut out = Vec::new();

    for t in &tys {
        let k = key(inst, "coerce-self", &[t], d);
        out.push(check_law(
            k,
            &[vals("x", &carrier(t))],
            cfg.case_limit,
            |v| {
                let x = v[0].val();
                (&coerce_val(t, x) == x).into()
            },
        ));
        let k = key(inst, "to-univ", &[t], d);
        out.push(check_law(
            k,
            &[vals("x", &carrier(t))],
            cfg.case_limit,
            |v| {
                let x = v[0].val();
                let up = coerce_val(&univ, x);
                (&up == x && &coerce_val(t, &up) == x).into()
            },
        ));
        let k = key(inst, "from-univ", &[t], d);
        out.push(check_law(
            k,
            &[vals("u", &univ_points)],
            cfg.case_limit,
            |v| {
                let u = v[0].val();
                let down = coerce_val(t, u);
                (down.leq(u) && t.contains(&down) && coerce_val(&univ, &down) == down).into()
            },
        ));
    }

    let mut with_univ = tys.clone();
    with_univ.push(univ.clone());
    let leq: Vec<Vec<bool>> = with_univ
        .iter()
        .map(|x| {
            with_univ
                .iter()
                .map(|y| defl_leq(x.expr(), y.expr(), d).unwrap_or(false))
                .collect()
        })
        .collect();
    for (i, a) in with_univ.iter().enumerate() {
        for (j, b) in with_univ.iter().enumerate() {
            for (l, c) in with_univ.iter().enumerate() {
                if !(leq[i][j] || leq[l][j]) {
                    continue;
                }
                let k = key(inst, "coerce-twice", &[a, b, c], d);
                out.push(check_law(
                    k,
                    &[vals("x", &carrier(a))],
                    cfg.case_limit,
                    |v| {
                        let x = v[0].val();
                        (coerce_val(c, &coerce_val(b, x)) == coerce_val(c, x)).into()
                    },
                ));
            }
        }
    }

    let cd = d.saturating_sub(1);
    type Shape = fn(DeflExpr, DeflExpr) -> DeflExpr;
    let shapes: [(&str, Shape); 3] = [
        ("coerce-lift", |x, _| DeflExpr::lift(x)),
        ("coerce-sum", DeflExpr::sum),
        ("coerce-prod", DeflExpr::prod),
    ];
    let coercions: Vec<FnVal> = tys.iter().map(coercion_to).collect();
    for (law, build) in shapes {
        let mut sources = BTreeSet::new();
        for a in &tys {
            for b in &tys {
                let e = build(a.expr().clone(), b.expr().clone());
                sources.extend(enumerate_image(&e, cd).unwrap_or_default());
            }
        }
        let sources: Vec<UValue> = sources.into_iter().collect();
        let k = CaseKey::new(inst, law, &[], cd);
        let q = [
            vals("x", &sources),
            Quantifier::fns("f", coercions.clone()),
            Quantifier::fns("g", coercions.clone()),
        ];
        out.push(check_law(k, &q, cfg.case_limit, |v| {
            let (x, f, g) = (v[0].val(), v[1].fun(), v[2].fun());
            let (gt, dt) = (coercion_target(f, &tys), coercion_target(g, &tys));
            let shape = build(gt.expr().clone(), dt.expr().clone());
            let target = apply(&shape, x).expect("closed shape");
            (target == map_composite(&shape, f, g, x)).into()
        }));
    }

    let k = CaseKey::new(inst, "coerce-fn", &[], cd);
    out.push(or_refuse(
        k.clone(),
        (|| {
            let mut fns = Vec::new();
            for a in &tys {
                for b in &tys {
                    fns.extend(gen_monotone_fns(a, b, Bound::rank(cd), cfg.guard)?);
                }
            }
            let points: BTreeSet<UValue> = tys.iter().flat_map(&carrier).collect();
            let points: Vec<UValue> = points.into_iter().collect();
            let q = [
                Quantifier::fns("f", fns),
                vals("x", &points),
                Quantifier::fns("out", coercions.clone()),
            ];
            Ok(check_law(k, &q, cfg.case_limit, |v| {
                let (f, x, post) = (v[0].fun(), v[1].val(), v[2].fun());
                let FnVal::Table(t) = f else { unreachable!() };
                let delta = coercion_target(post, &tys);
                let composed = post.after(f).after(&coercion_to(&t.src));
                (coerce_fn(f, &t.src, &delta).call(x) == composed.call(x)).into()
            }))
        })(),
    ));

    for t in &tys {
        let k = key(inst, "coerce-id-univ", &[t], cd);
        out.push(check_law(
            k,
            &[vals("u", &enumerate_terms(cd))],
            cfg.case_limit,
            |v| {
                let u = v[0].val();
                (coerce_fn(&FnVal::identity(), t, &univ).call(u) == t.proj(u)).into()
            },
        ));
    }
    out
}

/// Deflation axioms for every registered type and for every selected
/// instance applied to each registered type, plus agreement of each
/// recursive deflation with its one-step unfolding.
pub fn deflation_laws(instances: &[Instance], depth: usize) -> Vec<LawReport> {
    let mut targets: Vec<(String, DeflExpr)> = Vec::new();
    for t in base_types() {
        targets.push((t.name.to_string(), t.expr().clone()));
    }
    targets.push(("univ".into(), DeflExpr::Id));
    for inst in instances {
        for t in base_types() {
            let ty = applied(&*inst.functor, &t);
            targets.push((ty.name.to_string(), ty.expr().clone()));
        }
    }
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for (name, e) in targets {
        if !seen.insert(name.clone()) {
            continue;
        }
        let k = CaseKey::new("deflation", "axioms", &[&name], depth);
        out.push(or_refuse(k, check_deflation_axioms(&e, &name, depth)));
        if let DeflExpr::Mu(..) = e {
            let unfolded = e.unfold();
            let k = CaseKey::new("deflation", "unfold", &[&name], depth);
            let points = axiom_carrier(&e, depth);
            out.push(check_law(k, &[vals("u", &points)], usize::MAX, |v| {
                let u = v[0].val();
                (apply(&e, u).ok() == apply(&unfolded, u).ok()).into()
            }));
        }
    }
    out
}

/// Number of spine cells of a list plus one for its end (`Nil` or `⊥`).
fn spine_length(u: &UValue) -> usize {
    match list::view(u) {
        ListView::Cons(_, tail) => 1 + spine_length(tail),
        _ => 1,
    }
}

/// The approximation chain `take 0 ⊑ take 1 ⊑ ...` on lists: each step is
/// below the next and below the identity, and `take n` is the identity on
/// lists no deeper than `n`.
pub fn approx_laws(cfg: &SuiteConfig) -> Vec<LawReport> {
    let inst = "list-take";
    let d = cfg.depth;
    let mut out = Vec::new();
    for elem in ["unit", "bool"] {
        let t = rep_type(elem).unwrap();
        let ty = applied(&crate::instances::List::new(), &t);
        let mut xs: BTreeSet<UValue> = enumerate_image(ty.expr(), d)
            .unwrap_or_default()
            .into_iter()
            .collect();
        xs.extend(
            ty.carrier(Bound::rank(d))
                .map(|c| c.to_vec())
                .unwrap_or_default(),
        );
        let xs: Vec<UValue> = xs.into_iter().collect();
        let ns = || Quantifier::nats("n", 0..=d);

        let k = key(inst, "take-chain", &[&t], d);
        out.push(check_law(
            k,
            &[ns(), vals("xs", &xs)],
            cfg.case_limit,
            |v| {
                let (n, x) = (v[0].nat(), v[1].val());
                list_take(n, x).leq(&list_take(n + 1, x)).into()
            },
        ));

        let k = key(inst, "take-below-id", &[&t], d);
        out.push(check_law(
            k,
            &[ns(), vals("xs", &xs)],
            cfg.case_limit,
            |v| {
                let (n, x) = (v[0].nat(), v[1].val());
                let y = list_take(n, x);
                (y.leq(x) && list_take(n, &y) == y).into()
            },
        ));

        let k = key(inst, "take-exact", &[&t], d);
        out.push(check_law(
            k,
            &[ns(), vals("xs", &xs)],
            cfg.case_limit,
            |v| {
                let (n, x) = (v[0].nat(), v[1].val());
                if x.depth() > n {
                    return Verdict::Skip;
                }
                (&list_take(n, x) == x).into()
            },
        ));

        let k = key(inst, "take-exact-spine", &[&t], d);
        out.push(check_law(
            k,
            &[ns(), vals("xs", &xs)],
            cfg.case_limit,
            |v| {
                let (n, x) = (v[0].nat(), v[1].val());
                if x.is_bot() || spine_length(x) > n {
                    return Verdict::Skip;
                }
                (&list_take(n, x) == x).into()
            },
        ));
    }
    out
}

/// Laws accepted by [`find_counterexample`].
pub const THEOREM_LAWS: [&str; 3] = [
    "errort-right-unit",
    "writert-right-unit",
    "writert-left-unit",
];

/// Runs one of the transformer unit laws over `inner` at `depth` with
/// element type `unit` and returns its report.
pub fn theorem_report(law: &str, inner: &str, depth: usize) -> Result<LawReport> {
    let inner_inst = registry::instance(inner)?;
    let inner_monad = inner_inst
        .monad
        .ok_or_else(|| Error::UnknownName(format!("{inner} is not a monad")))?;
    let cfg = SuiteConfig::at_depth(depth);
    let unit = rep_type("unit")?;
    Ok(match law {
        "errort-right-unit" => {
            let et = Arc::new(ErrorT::new(unit.clone(), inner_monad));
            let name = crate::classes::Functor::name(&*et);
            errort_right_unit(&et, &name, &unit, &cfg)
        }
        "writert-right-unit" | "writert-left-unit" => {
            let wt = Arc::new(WriterT::new(registry::monoid("m3")?, inner_monad));
            let name = crate::classes::Functor::name(&*wt);
            if law == "writert-right-unit" {
                writert_right_unit(&wt, &name, &unit, &cfg)
            } else {
                writert_left_unit(&wt, &name, &unit, &unit, &cfg)
            }
        }
        _ => return Err(Error::UnknownName(law.to_string())),
    })
}

/// The minimal violating binding of a transformer unit law, or `None` when
/// the bounded search finds none.
pub fn find_counterexample(
    law: &str,
    inner: &str,
    depth: usize,
) -> Result<Option<Vec<Assignment>>> {
    let report = theorem_report(law, inner, depth)?;
    match report.status {
        Status::Refused => Err(Error::GuardExceeded {
            what: report.case_key.to_string(),
            size: 0,
            limit: 0,
        }),
        _ => Ok(report.counterexample),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn law_group_names_round_trip() {
        for g in LawGroup::ALL {
            assert_eq!(g.name().parse::<LawGroup>().unwrap(), g);
        }
        assert!("nosuch".parse::<LawGroup>().is_err());
    }

    #[test]
    fn empty_selection_gives_empty_report() {
        let cfg = CheckConfig {
            laws: vec![],
            ..CheckConfig::default()
        };
        assert!(run_suite(&cfg).unwrap().is_empty());
    }

    #[test]
    fn unknown_instance_is_an_error() {
        let cfg = CheckConfig {
            instances: vec!["nosuch".into()],
            ..CheckConfig::default()
        };
        assert!(matches!(run_suite(&cfg), Err(Error::UnknownName(_))));
    }

    #[test]
    fn tiny_guard_refuses_instead_of_passing() {
        let cfg = CheckConfig {
            instances: vec!["list".into()],
            laws: vec![LawGroup::Functor],
            guard: 2,
            ..CheckConfig::default()
        };
        let reports = run_suite(&cfg).unwrap();
        assert!(reports.iter().any(|r| r.status == Status::Refused));
        assert!(reports.iter().all(|r| r.status != Status::Fail));
    }

    #[test]
    fn strict_return_examples() {
        let m = |n: &str| registry::instance(n).unwrap().monad.unwrap();
        assert!(check_strict_return(&*m("identity")));
        assert!(!check_strict_return(&*m("list")));
        assert!(!check_strict_return(&*m("error:unit")));
    }

    #[test]
    fn spine_length_counts_cells() {
        let tt = UValue::mk_inl(UValue::Unit);
        assert_eq!(spine_length(&list::nil()), 1);
        assert_eq!(spine_length(&list::from_vec(vec![tt.clone(), tt])), 3);
        assert_eq!(spine_length(&list::cons(UValue::Bot, UValue::Bot)), 2);
    }
}
