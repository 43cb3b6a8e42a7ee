//! Executable models of type constructors as deflations on a universal
//! domain, with bounded-exhaustive checking of functor, monad and monad
//! transformer laws.

pub mod checker;
pub mod classes;
pub mod deflation;
pub mod error;
pub mod instances;
pub mod law;
pub mod registry;
pub mod rep;
pub mod udom;

pub use error::{Error, Result};
