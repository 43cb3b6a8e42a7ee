//! Concrete type constructors and their operations.

pub mod errort;
pub mod invariant;
pub mod list;
pub mod monoid;
pub mod rest;
pub mod simple;
pub mod writert;

pub use errort::ErrorT;
pub use list::List;
pub use monoid::Monoid;
pub use rest::ResT;
pub use simple::{Error, Identity, Writer};
pub use writert::WriterT;

use crate::udom::UValue;

/// `InL(Lift x)`: the left summand of a sum of liftings.
pub(crate) fn left(x: UValue) -> UValue {
    UValue::mk_inl(UValue::mk_lift(x))
}

/// `InR(Lift x)`.
pub(crate) fn right(x: UValue) -> UValue {
    UValue::mk_inr(UValue::mk_lift(x))
}

pub(crate) enum Either<'a> {
    Left(&'a UValue),
    Right(&'a UValue),
    Neither,
}

/// Case analysis on a sum of liftings; `_|_` and junk give `Neither`.
pub(crate) fn either(u: &UValue) -> Either<'_> {
    match u {
        UValue::InL(x) => match &**x {
            UValue::Lift(y) => Either::Left(y),
            _ => Either::Neither,
        },
        UValue::InR(x) => match &**x {
            UValue::Lift(y) => Either::Right(y),
            _ => Either::Neither,
        },
        _ => Either::Neither,
    }
}

/// `Pair(Lift a, Lift b)`.
pub(crate) fn lazy_pair(a: UValue, b: UValue) -> UValue {
    UValue::mk_pair(UValue::mk_lift(a), UValue::mk_lift(b))
}

/// Matches `Pair(Lift a, Lift b)`.
pub(crate) fn unpair(u: &UValue) -> Option<(&UValue, &UValue)> {
    match u {
        UValue::Pair(a, b) => match (&**a, &**b) {
            (UValue::Lift(x), UValue::Lift(y)) => Some((x, y)),
            _ => None,
        },
        _ => None,
    }
}
