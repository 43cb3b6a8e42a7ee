//! Finite terms of the universal domain.
//!
//! A [`UValue`] is built from bottom, unit, strict injections, a strict pair
//! and a non-strict lifting. Values are kept canonical by the `mk_*` smart
//! constructors: a strict constructor applied to `_|_` is `_|_`. Because of
//! that, structural equality coincides with equality in the domain.

use std::fmt;
use std::sync::Arc;

use crate::error::Error;

/// A canonical finite element of the universal domain.
///
/// Build values with [`UValue::mk_inl`], [`UValue::mk_inr`],
/// [`UValue::mk_pair`] and [`UValue::mk_lift`]; the variants are public for
/// pattern matching only.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum UValue {
    Bot,
    Unit,
    InL(Arc<UValue>),
    InR(Arc<UValue>),
    Pair(Arc<UValue>, Arc<UValue>),
    Lift(Arc<UValue>),
}

use UValue::*;

impl UValue {
    pub fn mk_inl(u: UValue) -> UValue {
        if u.is_bot() {
            Bot
        } else {
            InL(Arc::new(u))
        }
    }

    pub fn mk_inr(u: UValue) -> UValue {
        if u.is_bot() {
            Bot
        } else {
            InR(Arc::new(u))
        }
    }

    pub fn mk_pair(l: UValue, r: UValue) -> UValue {
        if l.is_bot() || r.is_bot() {
            Bot
        } else {
            Pair(Arc::new(l), Arc::new(r))
        }
    }

    /// Lifting never collapses: `Lift(_|_)` is a proper value.
    pub fn mk_lift(u: UValue) -> UValue {
        Lift(Arc::new(u))
    }

    pub fn is_bot(&self) -> bool {
        matches!(self, Bot)
    }

    /// True when no strict constructor anywhere in the term has a `_|_` child.
    pub fn is_canonical(&self) -> bool {
        match self {
            Bot | Unit => true,
            InL(x) | InR(x) => !x.is_bot() && x.is_canonical(),
            Pair(a, b) => !a.is_bot() && !b.is_bot() && a.is_canonical() && b.is_canonical(),
            Lift(x) => x.is_canonical(),
        }
    }

    /// Decides `self ⊑ other`.
    pub fn leq(&self, other: &UValue) -> bool {
        match (self, other) {
            (Bot, _) => true,
            (Unit, Unit) => true,
            (InL(a), InL(b)) | (InR(a), InR(b)) | (Lift(a), Lift(b)) => a.leq(b),
            (Pair(a1, b1), Pair(a2, b2)) => a1.leq(a2) && b1.leq(b2),
            _ => false,
        }
    }

    /// Least upper bound of two values, or `None` when they are inconsistent.
    pub fn lub2(&self, other: &UValue) -> Option<UValue> {
        Some(match (self, other) {
            (Bot, x) | (x, Bot) => x.clone(),
            (Unit, Unit) => Unit,
            (InL(a), InL(b)) => UValue::mk_inl(a.lub2(b)?),
            (InR(a), InR(b)) => UValue::mk_inr(a.lub2(b)?),
            (Lift(a), Lift(b)) => UValue::mk_lift(a.lub2(b)?),
            (Pair(a1, b1), Pair(a2, b2)) => UValue::mk_pair(a1.lub2(a2)?, b1.lub2(b2)?),
            _ => return None,
        })
    }

    /// Constructors on the deepest path; `_|_` has depth 0.
    pub fn depth(&self) -> usize {
        match self {
            Bot => 0,
            Unit => 1,
            InL(x) | InR(x) | Lift(x) => 1 + x.depth(),
            Pair(a, b) => 1 + a.depth().max(b.depth()),
        }
    }

    /// Laziness depth: liftings on the deepest path, plus one for a defined
    /// value. This is the truncation depth of the `take` functions of lazy
    /// datatypes: `Cons x xs` has rank `1 + max(rank x, rank xs)` when
    /// elements are flat.
    pub fn rank(&self) -> usize {
        match self {
            Bot => 0,
            Unit => 1,
            InL(x) | InR(x) => x.rank(),
            Pair(a, b) => a.rank().max(b.rank()),
            Lift(x) => 1 + x.rank(),
        }
    }

    /// Number of constructors (`_|_` counts 0). Strictly increasing along `⊑`.
    pub fn size(&self) -> usize {
        match self {
            Bot => 0,
            Unit => 1,
            InL(x) | InR(x) | Lift(x) => 1 + x.size(),
            Pair(a, b) => 1 + a.size() + b.size(),
        }
    }

    /// Occurrences of `_|_` strictly inside the term.
    pub fn inner_bots(&self) -> usize {
        fn go(u: &UValue) -> usize {
            match u {
                Bot => 1,
                Unit => 0,
                InL(x) | InR(x) | Lift(x) => go(x),
                Pair(a, b) => go(a) + go(b),
            }
        }
        if self.is_bot() {
            0
        } else {
            go(self)
        }
    }

    /// Values obtained by replacing one defined subterm with `_|_`, at the
    /// root or directly under a lifting. The reflexive-transitive closure of
    /// this relation is exactly `⊑` on canonical terms, so monotonicity can
    /// be checked on these pairs alone.
    pub fn lower_steps(&self) -> Vec<UValue> {
        let mut out = Vec::new();
        if !self.is_bot() {
            out.push(Bot);
        }
        match self {
            Bot | Unit => {}
            InL(x) => out.extend(inner_steps(x).into_iter().map(UValue::mk_inl)),
            InR(x) => out.extend(inner_steps(x).into_iter().map(UValue::mk_inr)),
            Lift(x) => out.extend(x.lower_steps().into_iter().map(UValue::mk_lift)),
            Pair(a, b) => {
                out.extend(
                    inner_steps(a)
                        .into_iter()
                        .map(|a2| UValue::mk_pair(a2, (**b).clone())),
                );
                out.extend(
                    inner_steps(b)
                        .into_iter()
                        .map(|b2| UValue::mk_pair((**a).clone(), b2)),
                );
            }
        }
        out
    }
}

// Steps below a strict constructor: the child itself may not become `_|_`.
fn inner_steps(u: &UValue) -> Vec<UValue> {
    u.lower_steps()
        .into_iter()
        .filter(|v| !v.is_bot())
        .collect()
}

/// Every canonical value of depth at most `max_depth`, ordered by depth and
/// then structurally.
pub fn enumerate_terms(max_depth: usize) -> Vec<UValue> {
    let mut all = vec![Bot];
    for d in 1..=max_depth {
        // all values of depth < d
        let below: Vec<UValue> = all.clone();
        let mut layer: Vec<UValue> = Vec::new();
        if d == 1 {
            layer.push(Unit);
        }
        for x in &below {
            if x.depth() == d - 1 {
                if !x.is_bot() {
                    layer.push(UValue::mk_inl(x.clone()));
                    layer.push(UValue::mk_inr(x.clone()));
                }
                layer.push(UValue::mk_lift(x.clone()));
            }
        }
        let nonbot: Vec<&UValue> = below.iter().filter(|x| !x.is_bot()).collect();
        for a in &nonbot {
            for b in &nonbot {
                if a.depth().max(b.depth()) == d - 1 {
                    layer.push(UValue::mk_pair((*a).clone(), (*b).clone()));
                }
            }
        }
        layer.sort();
        all.extend(layer);
    }
    all
}

impl fmt::Display for UValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bot => write!(f, "_|_"),
            Unit => write!(f, "()"),
            InL(x) => write!(f, "InL({x})"),
            InR(x) => write!(f, "InR({x})"),
            Pair(a, b) => write!(f, "({a}, {b})"),
            Lift(x) => write!(f, "Lift({x})"),
        }
    }
}

impl fmt::Debug for UValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl std::str::FromStr for UValue {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut p = Parser { src: s, pos: 0 };
        let v = p.value()?;
        p.skip_ws();
        if p.pos != s.len() {
            return Err(p.error("trailing input"));
        }
        Ok(v)
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn eat(&mut self, tok: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(tok) {
            self.pos += tok.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: &str) -> Result<(), Error> {
        if self.eat(tok) {
            Ok(())
        } else {
            Err(self.error(&format!("expected `{tok}`")))
        }
    }

    fn error(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at offset {} in `{}`", self.pos, self.src))
    }

    fn wrapped(&mut self) -> Result<UValue, Error> {
        self.expect("(")?;
        let v = self.value()?;
        self.expect(")")?;
        Ok(v)
    }

    fn value(&mut self) -> Result<UValue, Error> {
        if self.eat("_|_") {
            return Ok(Bot);
        }
        if self.eat("()") {
            return Ok(Unit);
        }
        let strict = |v: UValue, this: &Self| {
            if v.is_bot() {
                Err(this.error("strict constructor applied to _|_"))
            } else {
                Ok(v)
            }
        };
        if self.eat("InL") {
            let v = self.wrapped()?;
            return Ok(UValue::mk_inl(strict(v, self)?));
        }
        if self.eat("InR") {
            let v = self.wrapped()?;
            return Ok(UValue::mk_inr(strict(v, self)?));
        }
        if self.eat("Lift") {
            return Ok(UValue::mk_lift(self.wrapped()?));
        }
        if self.eat("(") {
            let a = strict(self.value()?, self)?;
            self.expect(",")?;
            let b = strict(self.value()?, self)?;
            self.expect(")")?;
            return Ok(UValue::mk_pair(a, b));
        }
        Err(self.error("expected a term"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit() -> UValue {
        Unit
    }

    #[test]
    fn strict_constructors_collapse() {
        assert_eq!(UValue::mk_inl(Bot), Bot);
        assert_eq!(UValue::mk_inr(Bot), Bot);
        assert_eq!(UValue::mk_pair(UValue::mk_lift(unit()), Bot), Bot);
        assert_eq!(UValue::mk_pair(Bot, unit()), Bot);
        let lb = UValue::mk_lift(Bot);
        assert_ne!(lb, Bot);
        assert!(matches!(lb, Lift(_)));
    }

    #[test]
    fn order_examples() {
        let lu = UValue::mk_lift(unit());
        let lb = UValue::mk_lift(Bot);
        assert!(Bot.leq(&lu));
        assert!(lb.leq(&lu));
        assert!(!lu.leq(&lb));
        assert!(!UValue::mk_inl(unit()).leq(&UValue::mk_inr(unit())));
    }

    #[test]
    fn lub_examples() {
        let lu = UValue::mk_lift(unit());
        assert_eq!(Bot.lub2(&lu), Some(lu.clone()));
        assert_eq!(UValue::mk_lift(Bot).lub2(&lu), Some(lu.clone()));
        assert_eq!(UValue::mk_inl(unit()).lub2(&UValue::mk_inr(unit())), None);
    }

    #[test]
    fn depth_examples() {
        assert_eq!(Bot.depth(), 0);
        assert_eq!(UValue::mk_lift(Bot).depth(), 1);
        let t = UValue::mk_inr(UValue::mk_pair(
            UValue::mk_lift(unit()),
            UValue::mk_lift(Bot),
        ));
        // InR, Pair, Lift, Unit along the deepest path
        assert_eq!(t.depth(), 4);
        assert_eq!(t.rank(), 2);
    }

    #[test]
    fn enumerate_small_depths() {
        assert_eq!(enumerate_terms(0), vec![Bot]);
        assert_eq!(enumerate_terms(1), vec![Bot, Unit, UValue::mk_lift(Bot)]);
    }

    // Counts canonical terms of depth <= n straight from the grammar.
    fn count_oracle(n: usize) -> usize {
        if n == 0 {
            return 1;
        }
        let below = count_oracle(n - 1);
        let defined = below - 1;
        // bot, unit, inl, inr, lift, pair
        1 + 1 + defined + defined + below + defined * defined
    }

    #[test]
    fn enumeration_matches_counting_oracle() {
        assert_eq!(count_oracle(2), 13);
        assert_eq!(count_oracle(3), 183);
        for n in 0..=3 {
            let terms = enumerate_terms(n);
            assert_eq!(terms.len(), count_oracle(n), "depth {n}");
            let mut dedup = terms.clone();
            dedup.sort();
            dedup.dedup();
            assert_eq!(dedup.len(), terms.len());
            assert!(terms.iter().all(|t| t.is_canonical() && t.depth() <= n));
            assert!(terms.windows(2).all(|w| w[0].depth() <= w[1].depth()));
        }
    }

    #[test]
    fn order_axioms_exhaustive() {
        let terms = enumerate_terms(3);
        for u in &terms {
            assert!(u.leq(u));
        }
        for u in &terms {
            for v in &terms {
                if u.leq(v) && v.leq(u) {
                    assert_eq!(u, v);
                }
                if u.leq(v) {
                    assert!(u.size() <= v.size());
                    for w in &terms {
                        if v.leq(w) {
                            assert!(u.leq(w));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn constructors_monotone() {
        let terms = enumerate_terms(2);
        for u in &terms {
            for v in &terms {
                if !u.leq(v) {
                    continue;
                }
                assert!(UValue::mk_inl(u.clone()).leq(&UValue::mk_inl(v.clone())));
                assert!(UValue::mk_inr(u.clone()).leq(&UValue::mk_inr(v.clone())));
                assert!(UValue::mk_lift(u.clone()).leq(&UValue::mk_lift(v.clone())));
                for w in &terms {
                    assert!(UValue::mk_pair(u.clone(), w.clone())
                        .leq(&UValue::mk_pair(v.clone(), w.clone())));
                    assert!(UValue::mk_pair(w.clone(), u.clone())
                        .leq(&UValue::mk_pair(w.clone(), v.clone())));
                }
            }
        }
    }

    #[test]
    fn lub_is_least_upper_bound() {
        let terms = enumerate_terms(2);
        for u in &terms {
            for v in &terms {
                let uppers: Vec<&UValue> = terms.iter().filter(|z| u.leq(z) && v.leq(z)).collect();
                match u.lub2(v) {
                    Some(z) => {
                        assert!(z.is_canonical());
                        assert!(u.leq(&z) && v.leq(&z));
                        for w in uppers {
                            assert!(z.leq(w));
                        }
                    }
                    None => assert!(uppers.is_empty()),
                }
            }
        }
    }

    #[test]
    fn lower_steps_generate_order() {
        let terms = enumerate_terms(3);
        let idx: std::collections::HashMap<&UValue, usize> =
            terms.iter().enumerate().map(|(i, t)| (t, i)).collect();
        // closure of lower_steps from each v must be exactly {u | u ⊑ v}
        for v in terms.iter().step_by(7) {
            let mut seen = vec![false; terms.len()];
            let mut stack = vec![v.clone()];
            while let Some(x) = stack.pop() {
                let i = idx[&x];
                if seen[i] {
                    continue;
                }
                seen[i] = true;
                for y in x.lower_steps() {
                    assert!(y.is_canonical());
                    stack.push(y);
                }
            }
            for (i, u) in terms.iter().enumerate() {
                assert_eq!(seen[i], u.leq(v), "{u} vs {v}");
            }
        }
    }

    #[test]
    fn render_and_parse() {
        for t in enumerate_terms(3) {
            let s = t.to_string();
            assert_eq!(s.parse::<UValue>().unwrap(), t);
        }
        assert!("InL(_|_)".parse::<UValue>().is_err());
        assert!("(_|_, ())".parse::<UValue>().is_err());
    }
}
