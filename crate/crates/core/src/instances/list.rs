//! Lazy lists: `mu t. sum(unit, prod(lift(a), lift(t)))`.

use crate::classes::{Functor, FunctorPlus, Monad};
use crate::deflation::{DeflExpr, Tycon};
use crate::rep::FnVal;
use crate::udom::UValue;

use super::{lazy_pair, unpair};

pub fn nil() -> UValue {
    UValue::mk_inl(UValue::Unit)
}

pub fn cons(x: UValue, xs: UValue) -> UValue {
    UValue::mk_inr(lazy_pair(x, xs))
}

pub enum ListView<'a> {
    Nil,
    Cons(&'a UValue, &'a UValue),
    /// `_|_` or a term outside the list image.
    Undefined,
}

pub fn view(u: &UValue) -> ListView<'_> {
    match u {
        UValue::InL(x) if **x == UValue::Unit => ListView::Nil,
        UValue::InR(p) => match unpair(p) {
            Some((x, xs)) => ListView::Cons(x, xs),
            None => ListView::Undefined,
        },
        _ => ListView::Undefined,
    }
}

pub fn from_vec(items: Vec<UValue>) -> UValue {
    items.into_iter().rev().fold(nil(), |acc, x| cons(x, acc))
}

pub fn list_tycon() -> Tycon {
    Tycon::new(
        "a",
        DeflExpr::mu(
            "t",
            DeflExpr::sum(
                DeflExpr::Unit,
                DeflExpr::prod(
                    DeflExpr::lift(DeflExpr::var("a")),
                    DeflExpr::lift(DeflExpr::var("t")),
                ),
            ),
        ),
    )
}

pub fn map(f: &FnVal, u: &UValue) -> UValue {
    match view(u) {
        ListView::Nil => nil(),
        ListView::Cons(x, xs) => cons(f.call(x), map(f, xs)),
        ListView::Undefined => UValue::Bot,
    }
}

pub fn append(u: &UValue, v: &UValue) -> UValue {
    match view(u) {
        ListView::Nil => v.clone(),
        ListView::Cons(x, xs) => cons(x.clone(), append(xs, v)),
        ListView::Undefined => UValue::Bot,
    }
}

pub fn list_return(a: &UValue) -> UValue {
    cons(a.clone(), nil())
}

/// Concatenation of `k` over the list.
pub fn list_bind(m: &UValue, k: &FnVal) -> UValue {
    match view(m) {
        ListView::Nil => nil(),
        ListView::Cons(x, xs) => append(&k.call(x), &list_bind(xs, k)),
        ListView::Undefined => UValue::Bot,
    }
}

/// Truncation to `n` cells: `take 0 xs = _|_`, elements untouched.
pub fn list_take(n: usize, u: &UValue) -> UValue {
    if n == 0 {
        return UValue::Bot;
    }
    match view(u) {
        ListView::Nil => nil(),
        ListView::Cons(x, xs) => cons(x.clone(), list_take(n - 1, xs)),
        ListView::Undefined => UValue::Bot,
    }
}

pub struct List {
    tycon: Tycon,
}

impl List {
    pub fn new() -> Self {
        List {
            tycon: list_tycon(),
        }
    }
}

impl Default for List {
    fn default() -> Self {
        Self::new()
    }
}

impl Functor for List {
    fn name(&self) -> String {
        "list".into()
    }

    fn tycon(&self) -> &Tycon {
        &self.tycon
    }

    fn univ_fmap(&self, f: &FnVal, x: &UValue) -> UValue {
        map(f, x)
    }
}

impl FunctorPlus for List {
    fn univ_append(&self, x: &UValue, y: &UValue) -> UValue {
        append(x, y)
    }
}

impl Monad for List {
    fn univ_return(&self, u: &UValue) -> UValue {
        list_return(u)
    }

    fn univ_bind(&self, m: &UValue, k: &FnVal) -> UValue {
        list_bind(m, k)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::deflation::{carrier, Bound, Deflation};

    fn tt() -> UValue {
        UValue::mk_inl(UValue::Unit)
    }

    fn ff() -> UValue {
        UValue::mk_inr(UValue::Unit)
    }

    #[test]
    fn append_examples() {
        assert_eq!(append(&UValue::Bot, &nil()), UValue::Bot);
        assert_eq!(append(&nil(), &from_vec(vec![tt()])), from_vec(vec![tt()]));
        assert_eq!(
            append(&from_vec(vec![tt()]), &from_vec(vec![ff()])),
            from_vec(vec![tt(), ff()])
        );
        // lazy in the tail: a partial list stays partial
        assert_eq!(
            append(&cons(tt(), UValue::Bot), &nil()),
            cons(tt(), UValue::Bot)
        );
    }

    #[test]
    fn return_is_not_strict() {
        assert_eq!(list_return(&UValue::Bot), cons(UValue::Bot, nil()));
        assert_ne!(list_return(&UValue::Bot), UValue::Bot);
    }

    #[test]
    fn bind_concatenates() {
        let dup = FnVal::builtin("dup", |x| from_vec(vec![x.clone(), x.clone()]));
        assert_eq!(
            list_bind(&from_vec(vec![tt(), ff()]), &dup),
            from_vec(vec![tt(), tt(), ff(), ff()])
        );
        assert_eq!(list_bind(&UValue::Bot, &dup), UValue::Bot);
    }

    #[test]
    fn fmap_not() {
        let not = FnVal::builtin("not", |u| match u {
            UValue::InL(x) => UValue::InR(x.clone()),
            UValue::InR(x) => UValue::InL(x.clone()),
            _ => UValue::Bot,
        });
        assert_eq!(map(&not, &cons(tt(), nil())), cons(ff(), nil()));
    }

    #[test]
    fn take_examples() {
        let xs = from_vec(vec![tt(), ff()]);
        assert_eq!(list_take(0, &xs), UValue::Bot);
        assert_eq!(list_take(1, &xs), cons(tt(), UValue::Bot));
        assert_eq!(list_take(3, &xs), xs);
    }

    #[test]
    fn tycon_matches_domain_equation() {
        let bool_d = DeflExpr::sum(DeflExpr::Unit, DeflExpr::Unit);
        let d = list_tycon().apply(&bool_d);
        let unfolded = DeflExpr::sum(
            DeflExpr::Unit,
            DeflExpr::prod(DeflExpr::lift(bool_d), DeflExpr::lift(d.clone())),
        );
        let (a, b) = (
            Deflation::new(d.clone()).unwrap(),
            Deflation::new(unfolded).unwrap(),
        );
        for u in crate::udom::enumerate_terms(4) {
            assert_eq!(a.apply(&u), b.apply(&u));
        }
        for u in carrier(&d, Bound::rank(3)).unwrap().iter() {
            assert!(b.contains(u));
        }
    }
}
