use proptest::prelude::*;

use tyconlab::deflation::{apply, DeflExpr};
use tyconlab::registry;
use tyconlab::rep::coerce_val;
use tyconlab::udom::UValue;

fn uvalue() -> impl Strategy<Value = UValue> {
    let leaf = prop_oneof![Just(UValue::Bot), Just(UValue::Unit)];
    leaf.prop_recursive(5, 40, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(UValue::mk_inl),
            inner.clone().prop_map(UValue::mk_inr),
            inner.clone().prop_map(UValue::mk_lift),
            (inner.clone(), inner).prop_map(|(a, b)| UValue::mk_pair(a, b)),
        ]
    })
}

/// Closed deflations, some of them recursive in a lifted position.
fn deflation() -> impl Strategy<Value = DeflExpr> {
    let leaf = prop_oneof![
        Just(DeflExpr::Bot),
        Just(DeflExpr::Id),
        Just(DeflExpr::Unit)
    ];
    let flat = leaf.prop_recursive(3, 16, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(DeflExpr::lift),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| DeflExpr::sum(a, b)),
            (inner.clone(), inner).prop_map(|(a, b)| DeflExpr::prod(a, b)),
        ]
    });
    prop_oneof![
        flat.clone(),
        flat.prop_map(|elem| {
            DeflExpr::mu(
                "t",
                DeflExpr::sum(
                    DeflExpr::Unit,
                    DeflExpr::prod(DeflExpr::lift(elem), DeflExpr::lift(DeflExpr::var("t"))),
                ),
            )
        }),
    ]
}

proptest! {
    #[test]
    fn smart_constructors_give_canonical_terms(u in uvalue()) {
        prop_assert!(u.is_canonical());
    }

    #[test]
    fn order_is_reflexive_and_antisymmetric(u in uvalue(), v in uvalue()) {
        prop_assert!(u.leq(&u));
        if u.leq(&v) && v.leq(&u) {
            prop_assert_eq!(u, v);
        }
    }

    #[test]
    fn order_is_transitive(u in uvalue(), v in uvalue(), w in uvalue()) {
        if u.leq(&v) && v.leq(&w) {
            prop_assert!(u.leq(&w));
        }
    }

    #[test]
    fn lub_is_least_upper_bound(u in uvalue(), v in uvalue(), w in uvalue()) {
        if let Some(l) = u.lub2(&v) {
            prop_assert!(u.leq(&l) && v.leq(&l));
            if u.leq(&w) && v.leq(&w) {
                prop_assert!(l.leq(&w));
            }
        } else {
            prop_assert!(!(u.leq(&w) && v.leq(&w)));
        }
    }

    #[test]
    fn lower_steps_are_strictly_below(u in uvalue()) {
        for v in u.lower_steps() {
            prop_assert!(v.leq(&u));
            prop_assert!(v != u);
            prop_assert!(v.size() < u.size());
        }
    }

    #[test]
    fn deflations_are_idempotent_below_identity_and_monotone(d in deflation(), u in uvalue()) {
        let du = apply(&d, &u).unwrap();
        prop_assert!(du.leq(&u));
        prop_assert_eq!(apply(&d, &du).unwrap(), du.clone());
        for v in u.lower_steps() {
            prop_assert!(apply(&d, &v).unwrap().leq(&du));
        }
    }

    #[test]
    fn unfolding_preserves_meaning(d in deflation(), u in uvalue()) {
        prop_assert_eq!(apply(&d, &u).unwrap(), apply(&d.unfold(), &u).unwrap());
    }

    #[test]
    fn syntax_round_trips(d in deflation()) {
        let parsed: DeflExpr = d.to_string().parse().unwrap();
        prop_assert_eq!(parsed, d);
    }

    #[test]
    fn coercion_lands_in_target(u in uvalue(), i in 0usize..4) {
        let t = registry::rep_type(registry::BASE_TYPES[i]).unwrap();
        let c = coerce_val(&t, &u);
        prop_assert!(t.contains(&c));
        prop_assert!(c.leq(&u));
    }
}
