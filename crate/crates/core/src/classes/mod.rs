//! Constructor classes over the universal domain.
//!
//! An instance supplies operations at the universal type only
//! (`univ_fmap`, `univ_return`, ...). Operations at other types are obtained
//! by coercion: arguments are embedded (the identity on terms) and results
//! are projected with the deflation of the result type.

mod laws;

pub use laws::{check_fplus_laws, check_functor_laws, check_monad_laws, FnBudget, SuiteConfig};

use std::sync::Arc;

use crate::deflation::Tycon;
use crate::error::{Error, Result};
use crate::rep::{to_univ, FnVal, RepType, TypedValue};
use crate::udom::UValue;

pub trait Functor: Send + Sync {
    fn name(&self) -> String;
    fn tycon(&self) -> &Tycon;
    /// `fmap` at the universal type; `f` is a function on the universe.
    fn univ_fmap(&self, f: &FnVal, x: &UValue) -> UValue;
}

pub trait FunctorPlus: Functor {
    fn univ_append(&self, x: &UValue, y: &UValue) -> UValue;
}

pub trait Monad: Functor {
    fn univ_return(&self, u: &UValue) -> UValue;
    fn univ_bind(&self, m: &UValue, k: &FnVal) -> UValue;
}

/// The type `τ·α`, named `name(α)`.
pub fn applied(inst: &dyn Functor, a: &RepType) -> RepType {
    let name = format!("{}({})", inst.name(), a.name);
    RepType::new(&name, inst.tycon().apply(a.expr()))
        .expect("a type constructor applied to a closed type is closed")
}

pub fn fmap_raw(inst: &dyn Functor, f: &FnVal, a: &RepType, tc_b: &RepType, x: &UValue) -> UValue {
    tc_b.proj(&inst.univ_fmap(&to_univ(f, a), x))
}

pub fn mreturn_raw(inst: &dyn Monad, tc_a: &RepType, a: &UValue) -> UValue {
    tc_a.proj(&inst.univ_return(a))
}

pub fn mbind_raw(inst: &dyn Monad, a: &RepType, tc_b: &RepType, m: &UValue, k: &FnVal) -> UValue {
    tc_b.proj(&inst.univ_bind(m, &to_univ(k, a)))
}

pub fn fplus_raw(inst: &dyn FunctorPlus, tc_a: &RepType, x: &UValue, y: &UValue) -> UValue {
    tc_a.proj(&inst.univ_append(x, y))
}

/// `join m = m >>= id` at `τ·α`; `id` on `τ·α` coerces to its deflation.
pub fn mjoin_raw(inst: &dyn Monad, tc_a: &RepType, mm: &UValue) -> UValue {
    let t = tc_a.clone();
    let id = FnVal::builtin("id", move |u| t.proj(u));
    tc_a.proj(&inst.univ_bind(mm, &id))
}

fn member_of(ty: &RepType, x: &TypedValue) -> Result<()> {
    if ty.contains(x.val()) {
        Ok(())
    } else {
        Err(Error::NotMember {
            ty: ty.name.to_string(),
            term: x.val().to_string(),
        })
    }
}

/// `fmap f x` with `x : τ·α`, `f : α -> β`.
pub fn fmap(
    inst: &dyn Functor,
    f: &FnVal,
    x: &TypedValue,
    a: &RepType,
    b: &RepType,
) -> Result<TypedValue> {
    member_of(&applied(inst, a), x)?;
    let tc_b = applied(inst, b);
    let out = fmap_raw(inst, f, a, &tc_b, x.val());
    tc_b.value(out)
}

pub fn mreturn(inst: &dyn Monad, a: &TypedValue) -> Result<TypedValue> {
    let tc_a = applied(inst, a.ty());
    tc_a.value(mreturn_raw(inst, &tc_a, a.val()))
}

/// `m >>= k` with `m : τ·α`, `k : α -> τ·β`.
pub fn mbind(
    inst: &dyn Monad,
    m: &TypedValue,
    k: &FnVal,
    a: &RepType,
    b: &RepType,
) -> Result<TypedValue> {
    member_of(&applied(inst, a), m)?;
    let tc_b = applied(inst, b);
    tc_b.value(mbind_raw(inst, a, &tc_b, m.val(), k))
}

pub fn fplus(
    inst: &dyn FunctorPlus,
    x: &TypedValue,
    y: &TypedValue,
    a: &RepType,
) -> Result<TypedValue> {
    let tc_a = applied(inst, a);
    member_of(&tc_a, x)?;
    member_of(&tc_a, y)?;
    tc_a.value(fplus_raw(inst, &tc_a, x.val(), y.val()))
}

/// `join mm` with `mm : τ·(τ·α)`.
pub fn mjoin(inst: &dyn Monad, mm: &TypedValue, a: &RepType) -> Result<TypedValue> {
    let tc_a = applied(inst, a);
    member_of(&applied(inst, &tc_a), mm)?;
    tc_a.value(mjoin_raw(inst, &tc_a, mm.val()))
}

/// Shared handle types used by the registry.
pub type FunctorRef = Arc<dyn Functor>;
pub type FunctorPlusRef = Arc<dyn FunctorPlus>;
pub type MonadRef = Arc<dyn Monad>;
