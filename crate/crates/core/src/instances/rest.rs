//! The resumption transformer `ResT τ a = Done a | More (τ (ResT τ a))`
//! and its interleaving operator.

use std::sync::Arc;

use crate::classes::{Functor, FunctorPlus, Monad};
use crate::deflation::{DeflExpr, Tycon};
use crate::rep::FnVal;
use crate::udom::UValue;

use super::{either, left, right, Either};

pub fn done(x: UValue) -> UValue {
    left(x)
}

pub fn more(m: UValue) -> UValue {
    right(m)
}

/// `mu r. sum(lift(a), lift(τ r))`.
pub fn rest_tycon(inner: &Tycon) -> Tycon {
    let inner_r = inner.apply(&DeflExpr::var("r"));
    Tycon::new(
        "a",
        DeflExpr::mu(
            "r",
            DeflExpr::sum(DeflExpr::lift(DeflExpr::var("a")), DeflExpr::lift(inner_r)),
        ),
    )
}

pub fn rest_fmap(inner: &Arc<dyn Functor>, f: &FnVal, r: &UValue) -> UValue {
    match either(r) {
        Either::Left(x) => done(f.call(x)),
        Either::Right(m) => {
            let (i2, f2) = (inner.clone(), f.clone());
            let g = FnVal::builtin("fmap", move |r| rest_fmap(&i2, &f2, r));
            more(inner.univ_fmap(&g, m))
        }
        Either::Neither => UValue::Bot,
    }
}

pub fn rest_bind(inner: &Arc<dyn Functor>, r: &UValue, k: &FnVal) -> UValue {
    match either(r) {
        Either::Left(x) => k.call(x),
        Either::Right(m) => {
            let (i2, k2) = (inner.clone(), k.clone());
            let g = FnVal::builtin("bind", move |r| rest_bind(&i2, r, &k2));
            more(inner.univ_fmap(&g, m))
        }
        Either::Neither => UValue::Bot,
    }
}

/// Applies the value in a `Done` leaf of the left operand to that of the
/// right operand.
pub type Apply = Arc<dyn Fn(&UValue, &UValue) -> UValue + Send + Sync>;

/// `u ⊛ v`: runs whichever side is suspended one step, both
/// nondeterministically when both are, and applies when both are done.
pub fn interleave(plus: &Arc<dyn FunctorPlus>, app: &Apply, u: &UValue, v: &UValue) -> UValue {
    let step = |f: Box<dyn Fn(&UValue) -> UValue + Send + Sync>, m: &UValue| {
        plus.univ_fmap(&FnVal::builtin("step", f), m)
    };
    match either(u) {
        Either::Neither => UValue::Bot,
        Either::Left(f) => match either(v) {
            Either::Neither => UValue::Bot,
            Either::Left(x) => done(app(f, x)),
            Either::Right(vm) => {
                let (p, a, uu) = (plus.clone(), app.clone(), u.clone());
                more(step(Box::new(move |r| interleave(&p, &a, &uu, r)), vm))
            }
        },
        Either::Right(um) => match either(v) {
            Either::Neither => UValue::Bot,
            Either::Left(_) => {
                let (p, a, vv) = (plus.clone(), app.clone(), v.clone());
                more(step(Box::new(move |r| interleave(&p, &a, r, &vv)), um))
            }
            Either::Right(vm) => {
                let (p, a, uu) = (plus.clone(), app.clone(), u.clone());
                let run_v = step(Box::new(move |r| interleave(&p, &a, &uu, r)), vm);
                let (p, a, vv) = (plus.clone(), app.clone(), v.clone());
                let run_u = step(Box::new(move |r| interleave(&p, &a, r, &vv)), um);
                more(plus.univ_append(&run_v, &run_u))
            }
        },
    }
}

pub struct ResT {
    inner: Arc<dyn Functor>,
    plus: Option<Arc<dyn FunctorPlus>>,
    tycon: Tycon,
}

impl ResT {
    pub fn new(inner: Arc<dyn Functor>) -> Self {
        let tycon = rest_tycon(inner.tycon());
        ResT {
            inner,
            plus: None,
            tycon,
        }
    }

    /// Over an inner functor with an append, which enables [`interleave`].
    pub fn with_plus(inner: Arc<dyn FunctorPlus>) -> Self {
        let base: Arc<dyn Functor> = inner.clone();
        ResT {
            plus: Some(inner),
            ..ResT::new(base)
        }
    }

    pub fn inner(&self) -> &Arc<dyn Functor> {
        &self.inner
    }

    pub fn plus(&self) -> Option<&Arc<dyn FunctorPlus>> {
        self.plus.as_ref()
    }
}

impl Functor for ResT {
    fn name(&self) -> String {
        format!("rest:{}", self.inner.name())
    }

    fn tycon(&self) -> &Tycon {
        &self.tycon
    }

    fn univ_fmap(&self, f: &FnVal, x: &UValue) -> UValue {
        rest_fmap(&self.inner, f, x)
    }
}

impl Monad for ResT {
    fn univ_return(&self, u: &UValue) -> UValue {
        done(u.clone())
    }

    fn univ_bind(&self, m: &UValue, k: &FnVal) -> UValue {
        rest_bind(&self.inner, m, k)
    }
}

/// Function codes stored in `Done` leaves for the applicative laws.
///
/// A code is `Pair(n, Lift(payload))` where the tag `n` is a numeral
/// (`()`, `Lift(())`, ...).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Code {
    /// The i-th function of a fixed table.
    Fn(usize),
    Id,
    /// Curried composition `(.)`.
    Compose,
    Compose1(UValue),
    /// `f . g`.
    Compose2(UValue, UValue),
    /// `($ y)`.
    ApplyTo(UValue),
}

fn numeral(n: usize) -> UValue {
    (0..n).fold(UValue::Unit, |acc, _| UValue::mk_lift(acc))
}

fn numeral_value(u: &UValue) -> Option<usize> {
    match u {
        UValue::Unit => Some(0),
        UValue::Lift(x) => numeral_value(x).map(|n| n + 1),
        _ => None,
    }
}

impl Code {
    pub fn encode(&self) -> UValue {
        let (tag, payload) = match self {
            Code::Fn(i) => (0, numeral(*i)),
            Code::Id => (1, UValue::Unit),
            Code::Compose => (2, UValue::Unit),
            Code::Compose1(f) => (3, f.clone()),
            Code::Compose2(f, g) => (4, super::lazy_pair(f.clone(), g.clone())),
            Code::ApplyTo(y) => (5, y.clone()),
        };
        UValue::mk_pair(numeral(tag), UValue::mk_lift(payload))
    }

    pub fn decode(u: &UValue) -> Option<Code> {
        let UValue::Pair(tag, payload) = u else {
            return None;
        };
        let UValue::Lift(p) = &**payload else {
            return None;
        };
        let p = (**p).clone();
        Some(match numeral_value(tag)? {
            0 => Code::Fn(numeral_value(&p)?),
            1 => Code::Id,
            2 => Code::Compose,
            3 => Code::Compose1(p),
            4 => {
                let (f, g) = super::unpair(&p)?;
                Code::Compose2(f.clone(), g.clone())
            }
            5 => Code::ApplyTo(p),
            _ => return None,
        })
    }
}

/// Interpretation of codes, with `Fn(i)` read from `table`. Applying `_|_`
/// (or a non-code) gives `_|_`.
pub fn code_apply(table: &[FnVal]) -> Apply {
    let table: Arc<Vec<FnVal>> = Arc::new(table.to_vec());
    fn go(table: &[FnVal], f: &UValue, x: &UValue) -> UValue {
        match Code::decode(f) {
            None => UValue::Bot,
            Some(Code::Fn(i)) => table.get(i).map_or(UValue::Bot, |g| g.call(x)),
            Some(Code::Id) => x.clone(),
            Some(Code::Compose) => Code::Compose1(x.clone()).encode(),
            Some(Code::Compose1(g)) => Code::Compose2(g, x.clone()).encode(),
            Some(Code::Compose2(g, h)) => go(table, &g, &go(table, &h, x)),
            Some(Code::ApplyTo(y)) => go(table, x, &y),
        }
    }
    Arc::new(move |f, x| go(&table, f, x))
}
