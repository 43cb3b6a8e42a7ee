//! Identity, error and writer monads.

use crate::classes::{Functor, Monad};
use crate::deflation::{DeflExpr, Tycon};
use crate::rep::{FnVal, RepType};
use crate::udom::UValue;

use super::{either, lazy_pair, left, right, unpair, Either, Monoid};

pub struct Identity {
    tycon: Tycon,
}

impl Identity {
    pub fn new() -> Self {
        Identity {
            tycon: Tycon::identity(),
        }
    }
}

impl Default for Identity {
    fn default() -> Self {
        Self::new()
    }
}

impl Functor for Identity {
    fn name(&self) -> String {
        "identity".into()
    }

    fn tycon(&self) -> &Tycon {
        &self.tycon
    }

    fn univ_fmap(&self, f: &FnVal, x: &UValue) -> UValue {
        f.call(x)
    }
}

impl Monad for Identity {
    fn univ_return(&self, u: &UValue) -> UValue {
        u.clone()
    }

    fn univ_bind(&self, m: &UValue, k: &FnVal) -> UValue {
        k.call(m)
    }
}

/// `Err e = InL(Lift e)`, `Ok a = InR(Lift a)`.
pub fn err(e: UValue) -> UValue {
    left(e)
}

pub fn ok(a: UValue) -> UValue {
    right(a)
}

/// `sum(lift(ε), lift(a))`.
pub fn error_tycon(eps: &RepType) -> Tycon {
    Tycon::new(
        "a",
        DeflExpr::sum(
            DeflExpr::lift(eps.expr().clone()),
            DeflExpr::lift(DeflExpr::var("a")),
        ),
    )
}

pub struct Error {
    eps: RepType,
    tycon: Tycon,
}

impl Error {
    pub fn new(eps: RepType) -> Self {
        let tycon = error_tycon(&eps);
        Error { eps, tycon }
    }
}

impl Functor for Error {
    fn name(&self) -> String {
        format!("error:{}", self.eps.name)
    }

    fn tycon(&self) -> &Tycon {
        &self.tycon
    }

    fn univ_fmap(&self, f: &FnVal, x: &UValue) -> UValue {
        match either(x) {
            Either::Left(e) => err(e.clone()),
            Either::Right(a) => ok(f.call(a)),
            Either::Neither => UValue::Bot,
        }
    }
}

impl Monad for Error {
    fn univ_return(&self, u: &UValue) -> UValue {
        ok(u.clone())
    }

    fn univ_bind(&self, m: &UValue, k: &FnVal) -> UValue {
        match either(m) {
            Either::Left(e) => err(e.clone()),
            Either::Right(a) => k.call(a),
            Either::Neither => UValue::Bot,
        }
    }
}

/// `Result w a = Pair(Lift w, Lift a)`.
pub fn result(w: UValue, a: UValue) -> UValue {
    lazy_pair(w, a)
}

/// `prod(lift(ω), lift(a))`.
pub fn writer_tycon(omega: &RepType) -> Tycon {
    Tycon::new(
        "a",
        DeflExpr::prod(
            DeflExpr::lift(omega.expr().clone()),
            DeflExpr::lift(DeflExpr::var("a")),
        ),
    )
}

/// The plain writer monad over a monoid.
pub struct Writer {
    monoid: Monoid,
    tycon: Tycon,
}

impl Writer {
    pub fn new(monoid: Monoid) -> Self {
        let tycon = writer_tycon(&monoid.carrier);
        Writer { monoid, tycon }
    }
}

impl Functor for Writer {
    fn name(&self) -> String {
        format!("writer:{}", self.monoid.name())
    }

    fn tycon(&self) -> &Tycon {
        &self.tycon
    }

    fn univ_fmap(&self, f: &FnVal, x: &UValue) -> UValue {
        match unpair(x) {
            Some((w, a)) => result(w.clone(), f.call(a)),
            None => UValue::Bot,
        }
    }
}

impl Monad for Writer {
    fn univ_return(&self, u: &UValue) -> UValue {
        result(self.monoid.mempty.clone(), u.clone())
    }

    fn univ_bind(&self, m: &UValue, k: &FnVal) -> UValue {
        let Some((w1, a)) = unpair(m) else {
            return UValue::Bot;
        };
        match unpair(&k.call(a)) {
            Some((w2, b)) => result(self.monoid.mappend(w1, w2), b.clone()),
            None => UValue::Bot,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::monoid::m3_elem;

    #[test]
    fn error_return_and_bind() {
        let e = Error::new(RepType::new("unit", DeflExpr::Unit).unwrap());
        assert_eq!(e.univ_return(&UValue::Unit), ok(UValue::Unit));
        assert_ne!(e.univ_return(&UValue::Bot), UValue::Bot);
        let k = FnVal::builtin("k", |_| err(UValue::Unit));
        assert_eq!(e.univ_bind(&ok(UValue::Bot), &k), err(UValue::Unit));
        assert_eq!(e.univ_bind(&err(UValue::Bot), &k), err(UValue::Bot));
        assert_eq!(e.univ_bind(&UValue::Bot, &k), UValue::Bot);
    }

    #[test]
    fn identity_return_is_strict() {
        assert_eq!(Identity::new().univ_return(&UValue::Bot), UValue::Bot);
    }

    #[test]
    fn writer_accumulates() {
        let w = Writer::new(Monoid::m3());
        let m = result(m3_elem(1), UValue::Unit);
        let k = FnVal::builtin("k", |a| result(m3_elem(2), a.clone()));
        assert_eq!(w.univ_bind(&m, &k), result(m3_elem(0), UValue::Unit));
    }
}
