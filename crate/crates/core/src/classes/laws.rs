//! Law suites for functors, functor-plus instances and monads.
//!
//! Values range over typed carriers bounded by rank; functions range over
//! every monotone function between carriers. Typed operations are the
//! coercion-derived ones from the parent module.

use std::sync::Arc;

use crate::deflation::Bound;
use crate::error::Result;
use crate::law::{check_law, Arg, CaseKey, LawReport, Quantifier, Verdict};
use crate::rep::{gen_monotone_fns, to_univ, FnVal, RepType};
use crate::udom::{enumerate_terms, UValue};

use super::{applied, fmap_raw, fplus_raw, mbind_raw, mjoin_raw, mreturn_raw};
use super::{Functor, FunctorPlus, Monad};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SuiteConfig {
    /// Rank bound for values.
    pub depth: usize,
    /// Depth bound for universal values inside `τ·U` and for agreement.
    pub univ_depth: usize,
    /// Bound on `|A|·|B|` and on the number of generated functions.
    pub guard: usize,
    /// Bound on the bindings of a single law.
    pub case_limit: usize,
    /// How continuations `α -> τ·β` are bounded.
    pub fn_budget: FnBudget,
}

/// Rank of the codomain carrier of generated continuations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FnBudget {
    /// Same rank as the values.
    Full,
    /// One rank below the values.
    Reduced,
}

impl SuiteConfig {
    pub fn at_depth(depth: usize) -> Self {
        SuiteConfig {
            depth,
            univ_depth: 2,
            guard: 10_000,
            case_limit: 5_000_000,
            fn_budget: FnBudget::Reduced,
        }
    }

    pub fn bound(&self) -> Bound {
        Bound {
            rank: self.depth,
            univ_depth: self.univ_depth,
        }
    }

    pub fn cont_bound(&self) -> Bound {
        match self.fn_budget {
            FnBudget::Full => self.bound(),
            FnBudget::Reduced => self.bound().lower(),
        }
    }
}

fn names(tys: &[&RepType]) -> Vec<String> {
    tys.iter().map(|t| t.name.to_string()).collect()
}

fn key(inst: &str, law: &str, tys: &[String], depth: usize) -> CaseKey {
    CaseKey {
        instance: inst.to_string(),
        law: law.to_string(),
        types: tys.to_vec(),
        depth,
    }
}

fn or_refuse(key: CaseKey, r: Result<LawReport>) -> LawReport {
    r.unwrap_or_else(|e| LawReport::refused(key, e.to_string()))
}

fn vals(name: &str, c: &Arc<Vec<UValue>>) -> Quantifier {
    Quantifier::vals(name, c.iter().cloned())
}

/// Functor laws at `τ·α`, `τ·β`, `τ·γ`: agreement of `univ_fmap` with the
/// type constructor, composition at the universal type, identity and
/// composition at the given types, strictness of `fmap f` for strict `f`,
/// and the round trip `τ·U -> τ·β -> τ·U`.
pub fn check_functor_laws(
    inst: &dyn Functor,
    a: &RepType,
    b: &RepType,
    c: &RepType,
    cfg: &SuiteConfig,
) -> Vec<LawReport> {
    let name = inst.name();
    let tys = names(&[a, b, c]);
    let d = cfg.depth;
    let bound = cfg.bound();
    let univ = RepType::univ();
    let mut out = Vec::new();

    let tc_u = applied(inst, &univ);
    let univ_points = |tc_u: &RepType| -> Result<Vec<UValue>> {
        let mut pts = enumerate_terms(cfg.univ_depth.clamp(3, 4));
        pts.extend(tc_u.carrier(bound)?.iter().cloned());
        pts.sort();
        pts.dedup();
        Ok(pts)
    };

    let mut seen: Vec<&RepType> = Vec::new();
    for t in [a, b, c, &univ] {
        if seen.iter().any(|s| s.name == t.name) {
            continue;
        }
        seen.push(t);
        let k = key(&name, "agreement", &[t.name.to_string()], d);
        out.push(or_refuse(
            k.clone(),
            (|| {
                let tc_t = applied(inst, t);
                let f = {
                    let t = t.clone();
                    FnVal::builtin(&t.name.clone(), move |u| t.proj(u))
                };
                let q = [Quantifier::vals("u", univ_points(&tc_u)?)];
                Ok(check_law(k, &q, cfg.case_limit, |x| {
                    let u = x[0].val();
                    (inst.univ_fmap(&f, &tc_u.proj(u)) == tc_t.proj(u)).into()
                }))
            })(),
        ));
    }

    let fs_ab = gen_monotone_fns(a, b, bound, cfg.guard);
    let fs_bc = gen_monotone_fns(b, c, bound, cfg.guard);

    let k = key(&name, "univ-composition", &tys, d);
    out.push(or_refuse(
        k.clone(),
        (|| {
            let q = [
                Quantifier::fns("f", fs_bc.clone()?),
                Quantifier::fns("g", fs_ab.clone()?),
                vals("u", &tc_u.carrier(bound)?),
            ];
            Ok(check_law(k, &q, cfg.case_limit, |x| {
                let f = to_univ(x[0].fun(), b);
                let g = to_univ(x[1].fun(), a);
                let u = x[2].val();
                (inst.univ_fmap(&f.after(&g), u) == inst.univ_fmap(&f, &inst.univ_fmap(&g, u)))
                    .into()
            }))
        })(),
    ));

    let (tc_a, tc_b, tc_c) = (applied(inst, a), applied(inst, b), applied(inst, c));

    let k = key(&name, "identity", &tys, d);
    out.push(or_refuse(
        k.clone(),
        (|| {
            let id = FnVal::identity();
            let q = [vals("x", &tc_a.carrier(bound)?)];
            Ok(check_law(k, &q, cfg.case_limit, |x| {
                let m = x[0].val();
                (&fmap_raw(inst, &id, a, &tc_a, m) == m).into()
            }))
        })(),
    ));

    let k = key(&name, "composition", &tys, d);
    out.push(or_refuse(
        k.clone(),
        (|| {
            let q = [
                Quantifier::fns("f", fs_bc.clone()?),
                Quantifier::fns("g", fs_ab.clone()?),
                vals("x", &tc_a.carrier(bound)?),
            ];
            Ok(check_law(k, &q, cfg.case_limit, |x| {
                let (f, g, m) = (x[0].fun(), x[1].fun(), x[2].val());
                let lhs = fmap_raw(inst, &f.after(g), a, &tc_c, m);
                let rhs = fmap_raw(inst, f, b, &tc_c, &fmap_raw(inst, g, a, &tc_b, m));
                (lhs == rhs).into()
            }))
        })(),
    ));

    let k = key(&name, "fmap-strict", &tys, d);
    out.push(or_refuse(
        k.clone(),
        (|| {
            let q = [Quantifier::fns("f", fs_ab.clone()?)];
            Ok(check_law(k, &q, cfg.case_limit, |x| {
                let f = x[0].fun();
                if !f.is_strict() {
                    return Verdict::Skip;
                }
                fmap_raw(inst, f, a, &tc_b, &UValue::Bot).is_bot().into()
            }))
        })(),
    ));

    for t in seen.iter().filter(|t| t.name != univ.name) {
        let k = key(&name, "coerce-round-trip", &[t.name.to_string()], d);
        out.push(or_refuse(
            k.clone(),
            (|| {
                let tc_t = applied(inst, t);
                let rep = {
                    let t = (*t).clone();
                    FnVal::builtin(&t.name.clone(), move |u| t.proj(u))
                };
                let q = [vals("u", &tc_u.carrier(bound)?)];
                Ok(check_law(k, &q, cfg.case_limit, |x| {
                    let u = x[0].val();
                    (tc_u.proj(&tc_t.proj(u)) == inst.univ_fmap(&rep, u)).into()
                }))
            })(),
        ));
    }
    out
}

/// Associativity of append and its naturality with respect to `fmap`.
pub fn check_fplus_laws(
    inst: &dyn FunctorPlus,
    a: &RepType,
    b: &RepType,
    cfg: &SuiteConfig,
) -> Vec<LawReport> {
    let name = inst.name();
    let tys = names(&[a, b]);
    let d = cfg.depth;
    let bound = cfg.bound();
    let (tc_a, tc_b) = (applied(inst, a), applied(inst, b));
    let mut out = Vec::new();

    let k = key(&name, "append-assoc", &tys[..1], d);
    out.push(or_refuse(
        k.clone(),
        (|| {
            let xs = tc_a.carrier(bound)?;
            let q = [vals("x", &xs), vals("y", &xs), vals("z", &xs)];
            Ok(check_law(k, &q, cfg.case_limit, |v| {
                let (x, y, z) = (v[0].val(), v[1].val(), v[2].val());
                let lhs = fplus_raw(inst, &tc_a, &fplus_raw(inst, &tc_a, x, y), z);
                let rhs = fplus_raw(inst, &tc_a, x, &fplus_raw(inst, &tc_a, y, z));
                (lhs == rhs).into()
            }))
        })(),
    ));

    let k = key(&name, "append-natural", &tys, d);
    out.push(or_refuse(
        k.clone(),
        (|| {
            let xs = tc_a.carrier(bound)?;
            let q = [
                Quantifier::fns("f", gen_monotone_fns(a, b, bound, cfg.guard)?),
                vals("x", &xs),
                vals("y", &xs),
            ];
            Ok(check_law(k, &q, cfg.case_limit, |v| {
                let (f, x, y) = (v[0].fun(), v[1].val(), v[2].val());
                let lhs = fmap_raw(inst, f, a, &tc_b, &fplus_raw(inst, &tc_a, x, y));
                let rhs = fplus_raw(
                    inst,
                    &tc_b,
                    &fmap_raw(inst, f, a, &tc_b, x),
                    &fmap_raw(inst, f, a, &tc_b, y),
                );
                (lhs == rhs).into()
            }))
        })(),
    ));
    out
}

/// `return` at `α` as a function into `τ·α`.
fn return_fn(inst: &Arc<dyn Monad>, tc_a: &RepType) -> FnVal {
    let (m, t) = (inst.clone(), tc_a.clone());
    FnVal::builtin("return", move |u| mreturn_raw(&*m, &t, u))
}

/// The three monad laws, the naturality of `return` and `>>=`, `fmap` via
/// `>>=`, strictness of `>>=`, and the `join` laws.
pub fn check_monad_laws(
    inst: &Arc<dyn Monad>,
    a: &RepType,
    b: &RepType,
    c: &RepType,
    cfg: &SuiteConfig,
) -> Vec<LawReport> {
    let m: &dyn Monad = &**inst;
    let name = m.name();
    let tys = names(&[a, b, c]);
    let d = cfg.depth;
    let bound = cfg.bound();
    let kb = cfg.cont_bound();
    let (tc_a, tc_b, tc_c) = (applied(m, a), applied(m, b), applied(m, c));
    let mut out = Vec::new();

    let conts_ab = gen_monotone_fns(a, &tc_b, kb, cfg.guard);
    let conts_bc = gen_monotone_fns(b, &tc_c, kb, cfg.guard);
    let fs_ab = gen_monotone_fns(a, b, bound, cfg.guard);
    let fs_bc = gen_monotone_fns(b, c, bound, cfg.guard);

    let k = key(&name, "left-unit", &tys, d);
    out.push(or_refuse(
        k.clone(),
        (|| {
            let q = [
                vals("a", &a.carrier(bound)?),
                Quantifier::fns("k", conts_ab.clone()?),
            ];
            Ok(check_law(k, &q, cfg.case_limit, |v| {
                let (x, f) = (v[0].val(), v[1].fun());
                let lhs = mbind_raw(m, a, &tc_b, &mreturn_raw(m, &tc_a, x), f);
                (lhs == f.call(x)).into()
            }))
        })(),
    ));

    let k = key(&name, "right-unit", &tys[..1], d);
    out.push(or_refuse(
        k.clone(),
        (|| {
            let ret = return_fn(inst, &tc_a);
            let q = [vals("m", &tc_a.carrier(bound)?)];
            Ok(check_law(k, &q, cfg.case_limit, |v| {
                let x = v[0].val();
                (&mbind_raw(m, a, &tc_a, x, &ret) == x).into()
            }))
        })(),
    ));

    let k = key(&name, "bind-assoc", &tys, d);
    out.push(or_refuse(
        k.clone(),
        (|| {
            let q = [
                vals("m", &tc_a.carrier(bound)?),
                Quantifier::fns("h", conts_ab.clone()?),
                Quantifier::fns("k", conts_bc.clone()?),
            ];
            Ok(check_law(k, &q, cfg.case_limit, |v| {
                let (x, h, f) = (v[0].val(), v[1].fun(), v[2].fun());
                let lhs = mbind_raw(m, b, &tc_c, &mbind_raw(m, a, &tc_b, x, h), f);
                let inner = {
                    let (i, h, f, b, tc_c) =
                        (inst.clone(), h.clone(), f.clone(), b.clone(), tc_c.clone());
                    FnVal::builtin("h >=> k", move |y| {
                        mbind_raw(&*i, &b, &tc_c, &h.call(y), &f)
                    })
                };
                (lhs == mbind_raw(m, a, &tc_c, x, &inner)).into()
            }))
        })(),
    ));

    let k = key(&name, "fmap-return", &tys, d);
    out.push(or_refuse(
        k.clone(),
        (|| {
            let q = [
                Quantifier::fns("f", fs_ab.clone()?),
                vals("a", &a.carrier(bound)?),
            ];
            Ok(check_law(k, &q, cfg.case_limit, |v| {
                let (f, x) = (v[0].fun(), v[1].val());
                let lhs = fmap_raw(m, f, a, &tc_b, &mreturn_raw(m, &tc_a, x));
                (lhs == mreturn_raw(m, &tc_b, &f.call(x))).into()
            }))
        })(),
    ));

    let k = key(&name, "bind-fmap", &tys, d);
    out.push(or_refuse(
        k.clone(),
        (|| {
            let q = [
                Quantifier::fns("f", fs_ab.clone()?),
                vals("m", &tc_a.carrier(bound)?),
                Quantifier::fns("k", conts_bc.clone()?),
            ];
            Ok(check_law(k, &q, cfg.case_limit, |v| {
                let (f, x, g) = (v[0].fun(), v[1].val(), v[2].fun());
                let lhs = mbind_raw(m, b, &tc_c, &fmap_raw(m, f, a, &tc_b, x), g);
                (lhs == mbind_raw(m, a, &tc_c, x, &g.after(f))).into()
            }))
        })(),
    ));

    let k = key(&name, "fmap-bind", &tys, d);
    out.push(or_refuse(
        k.clone(),
        (|| {
            let q = [
                Quantifier::fns("f", fs_bc.clone()?),
                vals("m", &tc_a.carrier(bound)?),
                Quantifier::fns("k", conts_ab.clone()?),
            ];
            Ok(check_law(k, &q, cfg.case_limit, |v| {
                let (f, x, g) = (v[0].fun(), v[1].val(), v[2].fun());
                let lhs = fmap_raw(m, f, b, &tc_c, &mbind_raw(m, a, &tc_b, x, g));
                let fk = {
                    let (i, f, g, b, tc_c) =
                        (inst.clone(), f.clone(), g.clone(), b.clone(), tc_c.clone());
                    FnVal::builtin("fmap f . k", move |y| {
                        fmap_raw(&*i, &f, &b, &tc_c, &g.call(y))
                    })
                };
                (lhs == mbind_raw(m, a, &tc_c, x, &fk)).into()
            }))
        })(),
    ));

    let k = key(&name, "fmap-via-bind", &tys, d);
    out.push(or_refuse(
        k.clone(),
        (|| {
            let q = [
                Quantifier::fns("f", fs_ab.clone()?),
                vals("m", &tc_a.carrier(bound)?),
            ];
            let ret_b = return_fn(inst, &tc_b);
            Ok(check_law(k, &q, cfg.case_limit, |v| {
                let (f, x) = (v[0].fun(), v[1].val());
                let lhs = fmap_raw(m, f, a, &tc_b, x);
                (lhs == mbind_raw(m, a, &tc_b, x, &ret_b.after(f))).into()
            }))
        })(),
    ));

    let k = key(&name, "bind-strict", &tys, d);
    out.push(or_refuse(
        k.clone(),
        (|| {
            let q = [Quantifier::fns("k", conts_ab.clone()?)];
            Ok(check_law(k, &q, cfg.case_limit, |v| {
                let f = v[0].fun();
                if !f.is_strict() {
                    return Verdict::Skip;
                }
                mbind_raw(m, a, &tc_b, &UValue::Bot, f).is_bot().into()
            }))
        })(),
    ));

    let tc_tc_a = applied(m, &tc_a);

    let k = key(&name, "join-return", &tys[..1], d);
    out.push(or_refuse(
        k.clone(),
        (|| {
            let q = [vals("m", &tc_a.carrier(bound)?)];
            Ok(check_law(k, &q, cfg.case_limit, |v| {
                let x = v[0].val();
                (&mjoin_raw(m, &tc_a, &mreturn_raw(m, &tc_tc_a, x)) == x).into()
            }))
        })(),
    ));

    let k = key(&name, "join-fmap-return", &tys[..1], d);
    out.push(or_refuse(
        k.clone(),
        (|| {
            let ret = return_fn(inst, &tc_a);
            let q = [vals("m", &tc_a.carrier(bound)?)];
            Ok(check_law(k, &q, cfg.case_limit, |v| {
                let x = v[0].val();
                (&mjoin_raw(m, &tc_a, &fmap_raw(m, &ret, a, &tc_tc_a, x)) == x).into()
            }))
        })(),
    ));

    let k = key(&name, "join-assoc", &tys[..1], d);
    out.push(or_refuse(
        k.clone(),
        (|| {
            let tc3 = applied(m, &tc_tc_a);
            let join = {
                let (i, t) = (inst.clone(), tc_a.clone());
                FnVal::builtin("join", move |u| mjoin_raw(&*i, &t, u))
            };
            let q = [vals("m", &tc3.carrier(bound)?)];
            Ok(check_law(k, &q, cfg.case_limit, |v| {
                let x = v[0].val();
                let lhs = mjoin_raw(m, &tc_a, &mjoin_raw(m, &tc_tc_a, x));
                let rhs = mjoin_raw(m, &tc_a, &fmap_raw(m, &join, &tc_tc_a, &tc_tc_a, x));
                (lhs == rhs).into()
            }))
        })(),
    ));

    let k = key(&name, "join-strict", &tys[..1], d);
    out.push(check_law(
        k,
        &[Quantifier::single("m", Arg::Val(UValue::Bot))],
        1,
        |_| mjoin_raw(m, &tc_a, &UValue::Bot).is_bot().into(),
    ));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::deflation::DeflExpr;
    use crate::deflation::Tycon;
    use crate::instances::list::{self, List};
    use crate::law::Status;

    fn ty(name: &str) -> RepType {
        let e = match name {
            "unit" => DeflExpr::Unit,
            "vert" => DeflExpr::lift(DeflExpr::Unit),
            "bool" => DeflExpr::sum(DeflExpr::Unit, DeflExpr::Unit),
            _ => unreachable!(),
        };
        RepType::new(name, e).unwrap()
    }

    fn all_pass(reports: &[LawReport]) {
        for r in reports {
            assert_eq!(r.status, Status::Pass, "{r}");
        }
    }

    #[test]
    fn list_functor_laws_pass() {
        let cfg = SuiteConfig::at_depth(2);
        all_pass(&check_functor_laws(
            &List::new(),
            &ty("bool"),
            &ty("vert"),
            &ty("unit"),
            &cfg,
        ));
    }

    #[test]
    fn list_fplus_laws_pass() {
        let cfg = SuiteConfig::at_depth(2);
        all_pass(&check_fplus_laws(
            &List::new(),
            &ty("bool"),
            &ty("vert"),
            &cfg,
        ));
    }

    #[test]
    fn list_monad_laws_pass() {
        let cfg = SuiteConfig::at_depth(2);
        let m: Arc<dyn Monad> = Arc::new(List::new());
        all_pass(&check_monad_laws(
            &m,
            &ty("unit"),
            &ty("bool"),
            &ty("unit"),
            &cfg,
        ));
    }

    // fmap that forgets everything after the first cell
    struct Truncating(Tycon);

    impl Functor for Truncating {
        fn name(&self) -> String {
            "truncating".into()
        }
        fn tycon(&self) -> &Tycon {
            &self.0
        }
        fn univ_fmap(&self, f: &FnVal, x: &UValue) -> UValue {
            match list::view(x) {
                list::ListView::Nil => list::nil(),
                list::ListView::Cons(y, _) => list::cons(f.call(y), list::nil()),
                list::ListView::Undefined => UValue::Bot,
            }
        }
    }

    #[test]
    fn broken_fmap_is_caught_with_small_witness() {
        let cfg = SuiteConfig::at_depth(2);
        let reports = check_functor_laws(
            &Truncating(list::list_tycon()),
            &ty("bool"),
            &ty("vert"),
            &ty("unit"),
            &cfg,
        );
        let id = reports
            .iter()
            .find(|r| r.case_key.law == "identity")
            .unwrap();
        assert_eq!(id.status, Status::Fail);
        // Cons TT _|_ has the fewest inner bottoms among lists whose tail changes
        let cx = id.counterexample.as_ref().unwrap();
        assert_eq!(cx[0].value, "InR((Lift(InL(())), Lift(_|_)))");
    }

    // fmap that applies the function twice to every element
    struct Twice(Tycon);

    impl Functor for Twice {
        fn name(&self) -> String {
            "twice".into()
        }
        fn tycon(&self) -> &Tycon {
            &self.0
        }
        fn univ_fmap(&self, f: &FnVal, x: &UValue) -> UValue {
            list::map(&f.after(f), x)
        }
    }

    #[test]
    fn doubled_fmap_keeps_identity_but_breaks_composition() {
        let cfg = SuiteConfig::at_depth(2);
        let reports = check_functor_laws(
            &Twice(list::list_tycon()),
            &ty("bool"),
            &ty("vert"),
            &ty("unit"),
            &cfg,
        );
        let law = |name: &str| reports.iter().find(|r| r.case_key.law == name).unwrap();
        assert_eq!(law("identity").status, Status::Pass);
        assert_eq!(law("composition").status, Status::Fail);
        assert_eq!(law("univ-composition").status, Status::Fail);
    }

    // append that shuffles the second list into the tail of the first
    struct Shuffle(Tycon);

    impl Functor for Shuffle {
        fn name(&self) -> String {
            "shuffle".into()
        }
        fn tycon(&self) -> &Tycon {
            &self.0
        }
        fn univ_fmap(&self, f: &FnVal, x: &UValue) -> UValue {
            list::map(f, x)
        }
    }

    impl FunctorPlus for Shuffle {
        fn univ_append(&self, x: &UValue, y: &UValue) -> UValue {
            match list::view(x) {
                list::ListView::Nil => y.clone(),
                list::ListView::Cons(a, rest) => list::cons(a.clone(), self.univ_append(y, rest)),
                list::ListView::Undefined => UValue::Bot,
            }
        }
    }

    #[test]
    fn shuffling_append_breaks_associativity() {
        let cfg = SuiteConfig::at_depth(3);
        let reports =
            check_fplus_laws(&Shuffle(list::list_tycon()), &ty("bool"), &ty("vert"), &cfg);
        let law = |name: &str| reports.iter().find(|r| r.case_key.law == name).unwrap();
        assert_eq!(law("append-assoc").status, Status::Fail);
        assert_eq!(law("append-natural").status, Status::Pass);
    }
}
