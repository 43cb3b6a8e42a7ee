//! The error transformer `ErrorT ε τ a = ErrorT (τ (Error ε a))`.
//!
//! The newtype wrapper is the identity on terms, so values are stored as
//! inner-monad values and `runET` is the identity.

use std::sync::Arc;

use crate::classes::{Functor, Monad};
use crate::deflation::Tycon;
use crate::rep::{FnVal, RepType};
use crate::udom::UValue;

use super::simple::{err, error_tycon, ok};
use super::{either, Either};

pub struct ErrorT {
    eps: RepType,
    inner: Arc<dyn Monad>,
    tycon: Tycon,
}

impl ErrorT {
    pub fn new(eps: RepType, inner: Arc<dyn Monad>) -> Self {
        let tycon = inner.tycon().compose(&error_tycon(&eps));
        ErrorT { eps, inner, tycon }
    }

    pub fn eps(&self) -> &RepType {
        &self.eps
    }

    pub fn inner(&self) -> &Arc<dyn Monad> {
        &self.inner
    }

    /// `unitET a = ErrorT (return (Ok a))`.
    pub fn unit(&self, a: &UValue) -> UValue {
        self.inner.univ_return(&ok(a.clone()))
    }

    /// `bindET m k = ErrorT (runET m >>= R(k))` where `R(k)` passes errors
    /// through and runs `k` on results. `R(k)` is strict.
    pub fn bind(&self, m: &UValue, k: &FnVal) -> UValue {
        let (inner, k) = (self.inner.clone(), k.clone());
        let r = FnVal::builtin("R(k)", move |x| match either(x) {
            Either::Left(e) => inner.univ_return(&err(e.clone())),
            Either::Right(a) => k.call(a),
            Either::Neither => UValue::Bot,
        });
        self.inner.univ_bind(m, &r)
    }

    /// `liftET t = ErrorT (fmap Ok t)`.
    pub fn lift(&self, t: &UValue) -> UValue {
        self.inner
            .univ_fmap(&FnVal::builtin("Ok", |a| ok(a.clone())), t)
    }

    /// `throwET e = ErrorT (return (Err e))`.
    pub fn throw(&self, e: &UValue) -> UValue {
        self.inner.univ_return(&err(e.clone()))
    }

    /// `catchET m h` runs the handler on errors and re-returns results.
    pub fn catch(&self, m: &UValue, h: &FnVal) -> UValue {
        let (inner, h) = (self.inner.clone(), h.clone());
        let r = FnVal::builtin("catch", move |x| match either(x) {
            Either::Left(e) => h.call(e),
            Either::Right(a) => inner.univ_return(&ok(a.clone())),
            Either::Neither => UValue::Bot,
        });
        self.inner.univ_bind(m, &r)
    }

    /// `bindET m unitET`: the candidate invariant deflation.
    pub fn unit_rebind(&self, m: &UValue) -> UValue {
        let inner = self.inner.clone();
        let unit = FnVal::builtin("unitET", move |a| inner.univ_return(&ok(a.clone())));
        self.bind(m, &unit)
    }
}

impl Functor for ErrorT {
    fn name(&self) -> String {
        format!("errort:{}:{}", self.eps.name, self.inner.name())
    }

    fn tycon(&self) -> &Tycon {
        &self.tycon
    }

    fn univ_fmap(&self, f: &FnVal, x: &UValue) -> UValue {
        let f = f.clone();
        let g = FnVal::builtin("fmap", move |e| match either(e) {
            Either::Left(e) => err(e.clone()),
            Either::Right(a) => ok(f.call(a)),
            Either::Neither => UValue::Bot,
        });
        self.inner.univ_fmap(&g, x)
    }
}

impl Monad for ErrorT {
    fn univ_return(&self, u: &UValue) -> UValue {
        self.unit(u)
    }

    fn univ_bind(&self, m: &UValue, k: &FnVal) -> UValue {
        self.bind(m, k)
    }
}
