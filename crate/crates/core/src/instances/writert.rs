//! The writer transformer `WriterT ω τ a = WriterT (τ (Writer ω a))`,
//! stored unwrapped like [`ErrorT`](super::ErrorT).

use std::sync::Arc;

use crate::classes::{Functor, Monad};
use crate::deflation::Tycon;
use crate::rep::FnVal;
use crate::udom::UValue;

use super::simple::{result, writer_tycon};
use super::{unpair, Monoid};

pub struct WriterT {
    monoid: Monoid,
    inner: Arc<dyn Monad>,
    tycon: Tycon,
}

impl WriterT {
    pub fn new(monoid: Monoid, inner: Arc<dyn Monad>) -> Self {
        let tycon = inner.tycon().compose(&writer_tycon(&monoid.carrier));
        WriterT {
            monoid,
            inner,
            tycon,
        }
    }

    pub fn monoid(&self) -> &Monoid {
        &self.monoid
    }

    pub fn inner(&self) -> &Arc<dyn Monad> {
        &self.inner
    }

    /// `unitWT a = WriterT (return (Result ∅ a))`.
    pub fn unit(&self, a: &UValue) -> UValue {
        self.inner
            .univ_return(&result(self.monoid.mempty.clone(), a.clone()))
    }

    /// Runs `m`, then `k` on its result, returning the combined output
    /// `w1 • w2`. Both matches on `Result` are strict.
    pub fn bind(&self, m: &UValue, k: &FnVal) -> UValue {
        let (inner, monoid, k) = (self.inner.clone(), self.monoid.clone(), k.clone());
        let outer = FnVal::builtin("bindWT", move |r1| {
            let Some((w1, a)) = unpair(r1) else {
                return UValue::Bot;
            };
            let (inner2, monoid2, w1) = (inner.clone(), monoid.clone(), w1.clone());
            let second = FnVal::builtin("bindWT'", move |r2| match unpair(r2) {
                Some((w2, b)) => inner2.univ_return(&result(monoid2.mappend(&w1, w2), b.clone())),
                None => UValue::Bot,
            });
            inner.univ_bind(&k.call(a), &second)
        });
        self.inner.univ_bind(m, &outer)
    }

    /// `tell w = WriterT (return (Result w ()))`.
    pub fn tell(&self, w: &UValue) -> UValue {
        self.inner.univ_return(&result(w.clone(), UValue::Unit))
    }

    /// `listen m = WriterT (runWT m >>= \(Result w a) -> return (Result w
    /// (Result w a)))`.
    pub fn listen(&self, m: &UValue) -> UValue {
        let inner = self.inner.clone();
        let k = FnVal::builtin("listen", move |r| match unpair(r) {
            Some((w, a)) => inner.univ_return(&result(w.clone(), result(w.clone(), a.clone()))),
            None => UValue::Bot,
        });
        self.inner.univ_bind(m, &k)
    }

    /// `bindWT m unitWT`.
    pub fn unit_rebind(&self, m: &UValue) -> UValue {
        let (inner, e) = (self.inner.clone(), self.monoid.mempty.clone());
        let unit = FnVal::builtin("unitWT", move |a| {
            inner.univ_return(&result(e.clone(), a.clone()))
        });
        self.bind(m, &unit)
    }
}

impl Functor for WriterT {
    fn name(&self) -> String {
        format!("writert:{}:{}", self.monoid.name(), self.inner.name())
    }

    fn tycon(&self) -> &Tycon {
        &self.tycon
    }

    fn univ_fmap(&self, f: &FnVal, x: &UValue) -> UValue {
        let f = f.clone();
        let g = FnVal::builtin("fmap", move |r| match unpair(r) {
            Some((w, a)) => result(w.clone(), f.call(a)),
            None => UValue::Bot,
        });
        self.inner.univ_fmap(&g, x)
    }
}

impl Monad for WriterT {
    fn univ_return(&self, u: &UValue) -> UValue {
        self.unit(u)
    }

    fn univ_bind(&self, m: &UValue, k: &FnVal) -> UValue {
        self.bind(m, k)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::list::{self, List};
    use crate::instances::monoid::m3_elem;
    use crate::instances::Identity;

    #[test]
    fn tell_accumulates_over_identity() {
        let wt = WriterT::new(Monoid::m3(), Arc::new(Identity::new()));
        let w2 = m3_elem(2);
        let then_tell = {
            let wt2 = WriterT::new(Monoid::m3(), Arc::new(Identity::new()));
            let w2 = w2.clone();
            FnVal::builtin("tell", move |_| wt2.tell(&w2))
        };
        let out = wt.bind(&wt.tell(&m3_elem(1)), &then_tell);
        assert_eq!(out, result(m3_elem(0), UValue::Unit));
        let out = wt.bind(&wt.tell(&m3_elem(2)), &then_tell);
        assert_eq!(out, result(m3_elem(1), UValue::Unit));
    }

    #[test]
    fn listen_exposes_output() {
        let wt = WriterT::new(Monoid::m3(), Arc::new(Identity::new()));
        let out = wt.listen(&wt.tell(&m3_elem(1)));
        assert_eq!(out, result(m3_elem(1), result(m3_elem(1), UValue::Unit)));
    }

    #[test]
    fn right_unit_fails_for_lazy_return() {
        let wt = WriterT::new(Monoid::m3(), Arc::new(List::new()));
        let m = list::list_return(&UValue::Bot);
        assert_ne!(wt.unit_rebind(&m), m);
    }
}
