//! The invariant of values satisfying the right unit law for the error and
//! writer transformers, its closure under the abstract interface, and the
//! deflation `m ↦ m >>= unit` whose image it is.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::classes::{applied, Functor, SuiteConfig};
use crate::law::{check_law, Arg, CaseKey, LawReport, Quantifier, Verdict};
use crate::rep::{gen_monotone_fns, FnVal, RepType};
use crate::udom::UValue;

use super::{ErrorT, WriterT};

#[derive(Clone)]
pub enum Transformer {
    ErrorT(Arc<ErrorT>),
    WriterT(Arc<WriterT>),
}

impl Transformer {
    pub fn functor(&self) -> &dyn Functor {
        match self {
            Transformer::ErrorT(t) => &**t,
            Transformer::WriterT(t) => &**t,
        }
    }

    pub fn name(&self) -> String {
        self.functor().name()
    }

    pub fn unit(&self, a: &UValue) -> UValue {
        match self {
            Transformer::ErrorT(t) => t.unit(a),
            Transformer::WriterT(t) => t.unit(a),
        }
    }

    pub fn bind(&self, m: &UValue, k: &FnVal) -> UValue {
        match self {
            Transformer::ErrorT(t) => t.bind(m, k),
            Transformer::WriterT(t) => t.bind(m, k),
        }
    }

    /// `m >>= unit`.
    pub fn rebind(&self, m: &UValue) -> UValue {
        match self {
            Transformer::ErrorT(t) => t.unit_rebind(m),
            Transformer::WriterT(t) => t.unit_rebind(m),
        }
    }

    /// The value `return ⊥` of the inner monad, viewed as a transformer value.
    pub fn lazy_unit_value(&self) -> UValue {
        match self {
            Transformer::ErrorT(t) => t.inner().univ_return(&UValue::Bot),
            Transformer::WriterT(t) => t.inner().univ_return(&UValue::Bot),
        }
    }
}

/// Membership in the invariant: `m >>= unit = m`.
pub fn inv_member(t: &Transformer, m: &UValue) -> bool {
    &t.rebind(m) == m
}

/// `m ↦ m >>= unit` as a function.
pub fn invariant_deflation(t: &Transformer) -> FnVal {
    let t = t.clone();
    FnVal::builtin("rebind", move |m| t.rebind(m))
}

fn key(t: &Transformer, law: &str, a: &RepType, depth: usize) -> CaseKey {
    CaseKey::new(&t.name(), law, &[&a.name], depth)
}

/// Closure of the generators (`⊥`, `unit`, `throw`, `lift`, `bind`, `catch`
/// for the error transformer; `⊥`, `unit`, `tell`, `bind` for the writer
/// transformer) together with least upper bounds of compatible pairs,
/// restricted to the carrier of `τ·α` at the configured bound.
pub fn generated_closure(
    t: &Transformer,
    a: &RepType,
    cfg: &SuiteConfig,
) -> crate::Result<Vec<UValue>> {
    let bound = cfg.bound();
    let ty = applied(t.functor(), a);
    let carrier: BTreeSet<UValue> = ty.carrier(bound)?.iter().cloned().collect();
    let conts = gen_monotone_fns(a, &ty, bound, cfg.guard)?;
    let mut set: BTreeSet<UValue> = BTreeSet::new();
    set.insert(UValue::Bot);
    for x in a.carrier(bound)?.iter() {
        set.insert(t.unit(x));
    }
    let mut handlers = Vec::new();
    match t {
        Transformer::ErrorT(et) => {
            for e in et.eps().carrier(bound)?.iter() {
                set.insert(et.throw(e));
            }
            let inner_ty = applied(&**et.inner(), a);
            for m in inner_ty.carrier(bound)?.iter() {
                set.insert(et.lift(m));
            }
            handlers = gen_monotone_fns(et.eps(), &ty, bound, cfg.guard)?;
        }
        Transformer::WriterT(wt) => {
            if a.contains(&UValue::Unit) {
                for w in wt.monoid().carrier.carrier(bound)?.iter() {
                    set.insert(wt.tell(w));
                }
            }
        }
    }
    set.retain(|m| carrier.contains(m));
    let into = |fs: &[FnVal], set: &BTreeSet<UValue>| -> Vec<FnVal> {
        fs.iter()
            .filter(|f| match f {
                FnVal::Table(tb) => tb.graph.iter().all(|(_, y)| set.contains(y)),
                FnVal::Builtin { .. } => false,
            })
            .cloned()
            .collect()
    };
    loop {
        let mut fresh = BTreeSet::new();
        let ks = into(&conts, &set);
        let hs = into(&handlers, &set);
        for m in &set {
            for k in &ks {
                fresh.insert(t.bind(m, k));
            }
            if let Transformer::ErrorT(et) = t {
                for h in &hs {
                    fresh.insert(et.catch(m, h));
                }
            }
            for n in &set {
                if let Some(l) = m.lub2(n) {
                    fresh.insert(l);
                }
            }
        }
        fresh.retain(|m| carrier.contains(m) && !set.contains(m));
        if fresh.is_empty() {
            break;
        }
        set.extend(fresh);
    }
    Ok(set.into_iter().collect())
}

/// Closure of the invariant under each generator, the restricted unit laws
/// on generated values, absence of `return ⊥` from the generated values,
/// and the deflation properties of `m ↦ m >>= unit`.
pub fn inv_closure_check(t: &Transformer, a: &RepType, cfg: &SuiteConfig) -> Vec<LawReport> {
    let d = cfg.depth;
    let mut out = Vec::new();
    let prepared = (|| -> crate::Result<_> {
        let bound = cfg.bound();
        let ty = applied(t.functor(), a);
        let carrier = ty.carrier(bound)?;
        let members: Vec<UValue> = carrier
            .iter()
            .filter(|m| inv_member(t, m))
            .cloned()
            .collect();
        let member_set: BTreeSet<UValue> = members.iter().cloned().collect();
        let into_inv: Vec<FnVal> = gen_monotone_fns(a, &ty, bound, cfg.guard)?
            .into_iter()
            .filter(|f| match f {
                FnVal::Table(tb) => tb.graph.iter().all(|(_, y)| member_set.contains(y)),
                FnVal::Builtin { .. } => true,
            })
            .collect();
        let closure = generated_closure(t, a, cfg)?;
        Ok((ty, carrier, members, into_inv, closure))
    })();
    let (ty, carrier, members, into_inv, closure) = match prepared {
        Ok(p) => p,
        Err(e) => {
            return vec![LawReport::refused(
                key(t, "inv-closure", a, d),
                e.to_string(),
            )]
        }
    };
    let bound = cfg.bound();
    let lim = cfg.case_limit;
    let member = |u: &UValue| Verdict::from(inv_member(t, u));

    let rule = |law: &str, quants: Vec<Quantifier>, f: &dyn Fn(&[&Arg]) -> Verdict| {
        check_law(key(t, law, a, d), &quants, lim, f)
    };
    let vals = |name: &str, xs: &[UValue]| Quantifier::vals(name, xs.iter().cloned());

    out.push(rule("inv-bot", vec![vals("m", &[UValue::Bot])], &|v| {
        member(v[0].val())
    }));
    match a.carrier(bound) {
        Ok(xs) => out.push(rule("inv-unit", vec![vals("a", &xs)], &|v| {
            member(&t.unit(v[0].val()))
        })),
        Err(e) => out.push(LawReport::refused(key(t, "inv-unit", a, d), e.to_string())),
    }
    out.push(rule(
        "inv-bind",
        vec![vals("m", &members), Quantifier::fns("k", into_inv.clone())],
        &|v| member(&t.bind(v[0].val(), v[1].fun())),
    ));
    out.push(rule(
        "inv-lub",
        vec![vals("m1", &members), vals("m2", &members)],
        &|v| match v[0].val().lub2(v[1].val()) {
            Some(l) => member(&l),
            None => Verdict::Skip,
        },
    ));
    match t {
        Transformer::ErrorT(et) => {
            let prepared = (|| -> crate::Result<_> {
                let es = et.eps().carrier(bound)?;
                let inner_ty = applied(&**et.inner(), a);
                let ts = inner_ty.carrier(bound)?;
                let member_set: BTreeSet<&UValue> = members.iter().collect();
                let hs: Vec<FnVal> = gen_monotone_fns(et.eps(), &ty, bound, cfg.guard)?
                    .into_iter()
                    .filter(|f| match f {
                        FnVal::Table(tb) => tb.graph.iter().all(|(_, y)| member_set.contains(y)),
                        FnVal::Builtin { .. } => true,
                    })
                    .collect();
                Ok((es, ts, hs))
            })();
            match prepared {
                Ok((es, ts, hs)) => {
                    out.push(rule("inv-throw", vec![vals("e", &es)], &|v| {
                        member(&et.throw(v[0].val()))
                    }));
                    out.push(rule("inv-lift", vec![vals("t", &ts)], &|v| {
                        member(&et.lift(v[0].val()))
                    }));
                    out.push(rule(
                        "inv-catch",
                        vec![vals("m", &members), Quantifier::fns("h", hs)],
                        &|v| member(&et.catch(v[0].val(), v[1].fun())),
                    ));
                }
                Err(e) => out.push(LawReport::refused(key(t, "inv-throw", a, d), e.to_string())),
            }
        }
        Transformer::WriterT(wt) => {
            match wt.monoid().carrier.carrier(bound) {
                Ok(ws) => out.push(rule("inv-tell", vec![vals("w", &ws)], &|v| {
                    member(&wt.tell(v[0].val()))
                })),
                Err(e) => out.push(LawReport::refused(key(t, "inv-tell", a, d), e.to_string())),
            }
            out.push(rule("inv-listen", vec![vals("m", &members)], &|v| {
                member(&wt.listen(v[0].val()))
            }));
            match a.carrier(bound) {
                Ok(xs) => out.push(rule(
                    "restricted-left-unit",
                    vec![vals("a", &xs), Quantifier::fns("k", into_inv.clone())],
                    &|v| {
                        let (x, k) = (v[0].val(), v[1].fun());
                        (wt.bind(&wt.unit(x), k) == k.call(x)).into()
                    },
                )),
                Err(e) => out.push(LawReport::refused(
                    key(t, "restricted-left-unit", a, d),
                    e.to_string(),
                )),
            }
        }
    }

    out.push(rule(
        "restricted-right-unit",
        vec![vals("m", &closure)],
        &|v| {
            let m = v[0].val();
            (&t.rebind(m) == m).into()
        },
    ));
    let offender = t.lazy_unit_value();
    out.push(rule(
        "closure-omits-lazy-unit",
        vec![Quantifier::single("m", Arg::Val(offender.clone()))],
        &|v| {
            if inv_member(t, v[0].val()) {
                return Verdict::Skip;
            }
            (!closure.contains(v[0].val())).into()
        },
    ));

    let rb = invariant_deflation(t);
    out.push(rule(
        "invariant-deflation",
        vec![vals("x", &carrier), vals("y", &carrier)],
        &|v| {
            let (x, y) = (v[0].val(), v[1].val());
            let rx = rb.call(x);
            let ok = rb.call(&rx) == rx
                && rx.leq(x)
                && ty.contains(&rx)
                && (!x.leq(y) || rx.leq(&rb.call(y)));
            ok.into()
        },
    ));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::deflation::DeflExpr;
    use crate::instances::list::{self, List};
    use crate::instances::simple::ok;
    use crate::instances::{Identity, Monoid};
    use crate::law::Status;

    fn unit_ty() -> RepType {
        RepType::new("unit", DeflExpr::Unit).unwrap()
    }

    fn errort_list() -> Transformer {
        Transformer::ErrorT(Arc::new(ErrorT::new(unit_ty(), Arc::new(List::new()))))
    }

    #[test]
    fn membership_examples() {
        let t = errort_list();
        assert!(inv_member(&t, &t.unit(&UValue::Unit)));
        assert!(inv_member(&t, &UValue::Bot));
        assert!(!inv_member(&t, &list::list_return(&UValue::Bot)));
        assert_eq!(
            invariant_deflation(&t).call(&list::list_return(&UValue::Bot)),
            UValue::Bot
        );
        let id = Transformer::ErrorT(Arc::new(ErrorT::new(unit_ty(), Arc::new(Identity::new()))));
        assert!(inv_member(&id, &ok(UValue::Bot)));
    }

    #[test]
    fn closure_over_list_holds() {
        let cfg = SuiteConfig::at_depth(2);
        for r in inv_closure_check(&errort_list(), &unit_ty(), &cfg) {
            assert_eq!(r.status, Status::Pass, "{r}");
        }
        let wt = Transformer::WriterT(Arc::new(WriterT::new(Monoid::m3(), Arc::new(List::new()))));
        for r in inv_closure_check(&wt, &unit_ty(), &cfg) {
            assert_eq!(r.status, Status::Pass, "{r}");
        }
    }
}
