//! Monoids on flat carriers.

use std::sync::Arc;

use crate::deflation::DeflExpr;
use crate::rep::RepType;
use crate::udom::UValue;

type Op = Arc<dyn Fn(&UValue, &UValue) -> UValue + Send + Sync>;

#[derive(Clone)]
pub struct Monoid {
    pub carrier: RepType,
    pub mempty: UValue,
    mappend: Op,
}

impl Monoid {
    pub fn new(
        carrier: RepType,
        mempty: UValue,
        mappend: impl Fn(&UValue, &UValue) -> UValue + Send + Sync + 'static,
    ) -> Self {
        Monoid {
            carrier,
            mempty,
            mappend: Arc::new(mappend),
        }
    }

    pub fn name(&self) -> &str {
        &self.carrier.name
    }

    pub fn mappend(&self, x: &UValue, y: &UValue) -> UValue {
        (self.mappend)(x, y)
    }

    /// Addition mod 3 on `sum(unit, sum(unit, unit))`, strict in both
    /// arguments, with `InL(())` as the identity.
    pub fn m3() -> Self {
        let carrier = RepType::new("m3", m3_expr()).unwrap();
        Monoid::new(carrier, m3_elem(0), |x, y| {
            match (m3_index(x), m3_index(y)) {
                (Some(i), Some(j)) => m3_elem((i + j) % 3),
                _ => UValue::Bot,
            }
        })
    }
}

pub fn m3_expr() -> DeflExpr {
    DeflExpr::sum(
        DeflExpr::Unit,
        DeflExpr::sum(DeflExpr::Unit, DeflExpr::Unit),
    )
}

pub fn m3_elem(i: usize) -> UValue {
    match i {
        0 => UValue::mk_inl(UValue::Unit),
        1 => UValue::mk_inr(UValue::mk_inl(UValue::Unit)),
        2 => UValue::mk_inr(UValue::mk_inr(UValue::Unit)),
        _ => panic!("m3 has three elements"),
    }
}

pub fn m3_index(u: &UValue) -> Option<usize> {
    (0..3).find(|&i| &m3_elem(i) == u)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::deflation::Bound;

    #[test]
    fn m3_is_a_strict_monoid() {
        let m = Monoid::m3();
        let xs = m.carrier.carrier(Bound::rank(2)).unwrap();
        assert_eq!(xs.len(), 4);
        assert!(!m.mempty.is_bot());
        for x in xs.iter() {
            assert_eq!(m.mappend(&UValue::Bot, x), UValue::Bot);
            assert_eq!(m.mappend(x, &UValue::Bot), UValue::Bot);
            assert_eq!(&m.mappend(&m.mempty, x), x);
            assert_eq!(&m.mappend(x, &m.mempty), x);
            for y in xs.iter() {
                for z in xs.iter() {
                    assert_eq!(
                        m.mappend(&m.mappend(x, y), z),
                        m.mappend(x, &m.mappend(y, z))
                    );
                }
            }
        }
        let one = m3_elem(1);
        assert_ne!(m.mappend(&one, &one), one);
    }
}
