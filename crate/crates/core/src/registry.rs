//! Named test types, monoids and instances.
//!
//! Instance names: `list`, `identity`, `error:<type>`, `writer:<monoid>`,
//! `rest:<inner>`, `errort:<type>:<inner>`, `writert:<monoid>:<inner>`,
//! where `<inner>` is again an instance name.

use std::sync::Arc;

use crate::classes::{Functor, FunctorPlus, Monad};
use crate::deflation::DeflExpr;
use crate::error::{Error, Result};
use crate::instances::invariant::Transformer;
use crate::instances::monoid::m3_expr;
use crate::instances::{Error as ErrorMonad, Writer};
use crate::instances::{ErrorT, Identity, List, Monoid, ResT, WriterT};
use crate::rep::RepType;

/// The flat test types, in registry order.
pub const BASE_TYPES: [&str; 4] = ["unit", "vert", "bool", "m3"];

/// Instances exercised by the default suite.
pub const DEFAULT_INSTANCES: [&str; 10] = [
    "list",
    "identity",
    "error:unit",
    "writer:m3",
    "rest:identity",
    "rest:list",
    "errort:unit:identity",
    "errort:unit:list",
    "writert:m3:identity",
    "writert:m3:list",
];

pub fn rep_type(name: &str) -> Result<RepType> {
    let expr = match name {
        "unit" => DeflExpr::Unit,
        "vert" => DeflExpr::lift(DeflExpr::Unit),
        "bool" => DeflExpr::sum(DeflExpr::Unit, DeflExpr::Unit),
        "m3" => m3_expr(),
        "univ" => DeflExpr::Id,
        _ => return Err(Error::UnknownName(name.to_string())),
    };
    RepType::new(name, expr)
}

pub fn base_types() -> Vec<RepType> {
    BASE_TYPES.iter().map(|n| rep_type(n).unwrap()).collect()
}

pub fn monoid(name: &str) -> Result<Monoid> {
    match name {
        "m3" => Ok(Monoid::m3()),
        _ => Err(Error::UnknownName(name.to_string())),
    }
}

/// A resolved instance with the classes it belongs to.
#[derive(Clone)]
pub struct Instance {
    pub name: String,
    pub functor: Arc<dyn Functor>,
    pub plus: Option<Arc<dyn FunctorPlus>>,
    pub monad: Option<Arc<dyn Monad>>,
    pub rest: Option<Arc<ResT>>,
    pub transformer: Option<Transformer>,
}

impl Instance {
    fn functor_only(f: Arc<dyn Functor>) -> Self {
        Instance {
            name: f.name(),
            functor: f,
            plus: None,
            monad: None,
            rest: None,
            transformer: None,
        }
    }

    fn monad<M: Monad + 'static>(m: Arc<M>) -> Self {
        let monad: Arc<dyn Monad> = m.clone();
        Instance {
            monad: Some(monad),
            ..Instance::functor_only(m)
        }
    }
}

pub fn instance(name: &str) -> Result<Instance> {
    let tokens: Vec<&str> = name.split(':').collect();
    let (inst, used) = parse(&tokens, name)?;
    if used != tokens.len() {
        return Err(Error::UnknownName(name.to_string()));
    }
    Ok(inst)
}

fn parse(tokens: &[&str], name: &str) -> Result<(Instance, usize)> {
    let unknown = || Error::UnknownName(name.to_string());
    let head = *tokens.first().ok_or_else(unknown)?;
    let arg = |i: usize| tokens.get(i).copied().ok_or_else(unknown);
    match head {
        "list" => {
            let l = Arc::new(List::new());
            let plus: Arc<dyn FunctorPlus> = l.clone();
            Ok((
                Instance {
                    plus: Some(plus),
                    ..Instance::monad(l)
                },
                1,
            ))
        }
        "identity" => Ok((Instance::monad(Arc::new(Identity::new())), 1)),
        "error" => Ok((
            Instance::monad(Arc::new(ErrorMonad::new(rep_type(arg(1)?)?))),
            2,
        )),
        "writer" => Ok((Instance::monad(Arc::new(Writer::new(monoid(arg(1)?)?))), 2)),
        "rest" => {
            let (inner, used) = parse(&tokens[1..], name)?;
            let r = Arc::new(match &inner.plus {
                Some(p) => ResT::with_plus(p.clone()),
                None => ResT::new(inner.functor.clone()),
            });
            Ok((
                Instance {
                    rest: Some(r.clone()),
                    ..Instance::monad(r)
                },
                used + 1,
            ))
        }
        "errort" => {
            let eps = rep_type(arg(1)?)?;
            let (inner, used) = parse(&tokens[2..], name)?;
            let m = inner.monad.ok_or_else(unknown)?;
            let t = Arc::new(ErrorT::new(eps, m));
            Ok((
                Instance {
                    transformer: Some(Transformer::ErrorT(t.clone())),
                    ..Instance::monad(t)
                },
                used + 2,
            ))
        }
        "writert" => {
            let w = monoid(arg(1)?)?;
            let (inner, used) = parse(&tokens[2..], name)?;
            let m = inner.monad.ok_or_else(unknown)?;
            let t = Arc::new(WriterT::new(w, m));
            Ok((
                Instance {
                    transformer: Some(Transformer::WriterT(t.clone())),
                    ..Instance::monad(t)
                },
                used + 2,
            ))
        }
        _ => Err(unknown()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for name in DEFAULT_INSTANCES {
            assert_eq!(instance(name).unwrap().name, name);
        }
        assert_eq!(instance("rest:rest:list").unwrap().name, "rest:rest:list");
        assert_eq!(
            instance("errort:bool:writert:m3:list").unwrap().name,
            "errort:bool:writert:m3:list"
        );
    }

    #[test]
    fn unknown_names_are_rejected() {
        for bad in [
            "nosuch",
            "list:extra",
            "error",
            "error:nosuch",
            "rest:",
            "errort:unit:rest",
        ] {
            assert!(instance(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn registered_deflations_are_well_formed() {
        for name in DEFAULT_INSTANCES {
            let inst = instance(name).unwrap();
            for t in base_types() {
                let d = inst.functor.tycon().apply(t.expr());
                assert!(d.well_formed(), "{name}({})", t.name);
                assert!(d.is_lift_guarded(), "{name}({})", t.name);
            }
        }
    }
}
