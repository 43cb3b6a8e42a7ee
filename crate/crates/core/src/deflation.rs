//! Deflation expressions over the universal domain.
//!
//! A [`DeflExpr`] is syntax for an idempotent function below the identity.
//! Closed, guarded expressions are evaluated directly on [`UValue`]s; a
//! recursive binder `mu t. d` is unfolded lazily, once per constructor the
//! argument gives up, so evaluation is exact on finite terms.
//!
//! Off-image inputs are sent to `_|_` at the first structural mismatch.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::law::{Arg, CaseKey, LawReport, Quantifier};
use crate::udom::{enumerate_terms, UValue};

/// Syntax of deflations: `bot`, `id`, `unit`, `lift(d)`, `sum(d1,d2)`,
/// `prod(d1,d2)`, variables and `mu t. d`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DeflExpr {
    Bot,
    Id,
    Unit,
    Lift(Arc<DeflExpr>),
    Sum(Arc<DeflExpr>, Arc<DeflExpr>),
    Prod(Arc<DeflExpr>, Arc<DeflExpr>),
    Var(Arc<str>),
    Mu(Arc<str>, Arc<DeflExpr>),
}

impl DeflExpr {
    pub fn lift(d: DeflExpr) -> Self {
        DeflExpr::Lift(Arc::new(d))
    }

    pub fn sum(a: DeflExpr, b: DeflExpr) -> Self {
        DeflExpr::Sum(Arc::new(a), Arc::new(b))
    }

    pub fn prod(a: DeflExpr, b: DeflExpr) -> Self {
        DeflExpr::Prod(Arc::new(a), Arc::new(b))
    }

    pub fn var(name: &str) -> Self {
        DeflExpr::Var(name.into())
    }

    pub fn mu(name: &str, body: DeflExpr) -> Self {
        DeflExpr::Mu(name.into(), Arc::new(body))
    }

    pub fn free_vars(&self) -> BTreeSet<Arc<str>> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<Arc<str>>, out: &mut BTreeSet<Arc<str>>) {
        match self {
            DeflExpr::Bot | DeflExpr::Id | DeflExpr::Unit => {}
            DeflExpr::Lift(d) => d.collect_free(bound, out),
            DeflExpr::Sum(a, b) | DeflExpr::Prod(a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            DeflExpr::Var(x) => {
                if !bound.contains(x) {
                    out.insert(x.clone());
                }
            }
            DeflExpr::Mu(x, body) => {
                bound.push(x.clone());
                body.collect_free(bound, out);
                bound.pop();
            }
        }
    }

    pub fn is_closed(&self) -> bool {
        self.free_vars().is_empty()
    }

    /// Every bound variable sits under at least one constructor between its
    /// binder and the occurrence. Free variables are ignored.
    pub fn is_guarded(&self) -> bool {
        self.guard_check(&mut Vec::new(), &|d| {
            matches!(
                d,
                DeflExpr::Lift(_) | DeflExpr::Sum(..) | DeflExpr::Prod(..)
            )
        })
    }

    /// Like [`is_guarded`](Self::is_guarded) but only a lifting counts as a
    /// guard. Carriers bounded by [`UValue::rank`] are finite exactly for
    /// lift-guarded expressions.
    pub fn is_lift_guarded(&self) -> bool {
        self.guard_check(&mut Vec::new(), &|d| matches!(d, DeflExpr::Lift(_)))
    }

    // `scopes` holds (binder, guarded-since-binder) for enclosing binders.
    fn guard_check(
        &self,
        scopes: &mut Vec<(Arc<str>, bool)>,
        guard: &dyn Fn(&DeflExpr) -> bool,
    ) -> bool {
        let is_guard = guard(self);
        let saved: Vec<bool> = scopes.iter().map(|s| s.1).collect();
        if is_guard {
            for s in scopes.iter_mut() {
                s.1 = true;
            }
        }
        let ok = match self {
            DeflExpr::Bot | DeflExpr::Id | DeflExpr::Unit => true,
            DeflExpr::Lift(d) => d.guard_check(scopes, guard),
            DeflExpr::Sum(a, b) | DeflExpr::Prod(a, b) => {
                a.guard_check(scopes, guard) && b.guard_check(scopes, guard)
            }
            DeflExpr::Var(x) => scopes.iter().rev().find(|s| &s.0 == x).is_none_or(|s| s.1),
            DeflExpr::Mu(x, body) => {
                scopes.push((x.clone(), false));
                let ok = body.guard_check(scopes, guard);
                scopes.pop();
                ok
            }
        };
        for (s, g) in scopes.iter_mut().zip(saved) {
            s.1 = g;
        }
        ok
    }

    /// Closed and guarded: evaluation terminates on every finite term.
    ///
    /// `id` is accepted anywhere, including under `mu`; it consumes nothing
    /// but also never re-enters a binder.
    pub fn well_formed(&self) -> bool {
        self.is_closed() && self.is_guarded()
    }

    pub fn check_well_formed(&self) -> Result<()> {
        if !self.is_closed() {
            return Err(Error::IllFormed {
                expr: self.to_string(),
                reason: "expression has free variables".into(),
            });
        }
        if !self.is_guarded() {
            return Err(Error::IllFormed {
                expr: self.to_string(),
                reason: "recursive variable is not guarded by a constructor".into(),
            });
        }
        Ok(())
    }

    /// Capture-avoiding substitution of `replacement` for free `name`.
    pub fn subst(&self, name: &str, replacement: &DeflExpr) -> DeflExpr {
        let fv = replacement.free_vars();
        self.subst_with(name, replacement, &fv)
    }

    fn subst_with(&self, name: &str, r: &DeflExpr, fv: &BTreeSet<Arc<str>>) -> DeflExpr {
        match self {
            DeflExpr::Bot | DeflExpr::Id | DeflExpr::Unit => self.clone(),
            DeflExpr::Lift(d) => DeflExpr::lift(d.subst_with(name, r, fv)),
            DeflExpr::Sum(a, b) => {
                DeflExpr::sum(a.subst_with(name, r, fv), b.subst_with(name, r, fv))
            }
            DeflExpr::Prod(a, b) => {
                DeflExpr::prod(a.subst_with(name, r, fv), b.subst_with(name, r, fv))
            }
            DeflExpr::Var(x) => {
                if &**x == name {
                    r.clone()
                } else {
                    self.clone()
                }
            }
            DeflExpr::Mu(x, body) => {
                if &**x == name {
                    return self.clone();
                }
                if fv.contains(x) {
                    let mut avoid = fv.clone();
                    avoid.extend(body.free_vars());
                    avoid.insert(name.into());
                    let mut fresh = format!("{x}'");
                    while avoid.contains(fresh.as_str()) {
                        fresh.push('\'');
                    }
                    let renamed = body.subst(x, &DeflExpr::var(&fresh));
                    DeflExpr::mu(&fresh, renamed.subst_with(name, r, fv))
                } else {
                    DeflExpr::Mu(x.clone(), Arc::new(body.subst_with(name, r, fv)))
                }
            }
        }
    }

    /// One-step unfolding of a top-level binder; other expressions are
    /// returned unchanged.
    pub fn unfold(&self) -> DeflExpr {
        match self {
            DeflExpr::Mu(x, body) => body.subst(x, self),
            _ => self.clone(),
        }
    }
}

/// Evaluates a deflation after checking that it is well formed.
pub fn apply(d: &DeflExpr, u: &UValue) -> Result<UValue> {
    d.check_well_formed()?;
    Ok(eval(d, &None, u))
}

type Env = Option<Arc<Frame>>;

struct Frame {
    name: Arc<str>,
    body: Arc<DeflExpr>,
    env: Env,
    next: Env,
}

fn bind(name: &Arc<str>, body: &Arc<DeflExpr>, env: &Env) -> Env {
    Some(Arc::new(Frame {
        name: name.clone(),
        body: body.clone(),
        env: env.clone(),
        next: env.clone(),
    }))
}

fn eval(d: &DeflExpr, env: &Env, u: &UValue) -> UValue {
    if u.is_bot() {
        return UValue::Bot;
    }
    match d {
        DeflExpr::Bot => UValue::Bot,
        DeflExpr::Id => u.clone(),
        DeflExpr::Unit => match u {
            UValue::Unit => UValue::Unit,
            _ => UValue::Bot,
        },
        DeflExpr::Lift(e) => match u {
            UValue::Lift(x) => UValue::mk_lift(eval(e, env, x)),
            _ => UValue::Bot,
        },
        DeflExpr::Sum(a, b) => match u {
            UValue::InL(x) => UValue::mk_inl(eval(a, env, x)),
            UValue::InR(x) => UValue::mk_inr(eval(b, env, x)),
            _ => UValue::Bot,
        },
        DeflExpr::Prod(a, b) => match u {
            UValue::Pair(x, y) => UValue::mk_pair(eval(a, env, x), eval(b, env, y)),
            _ => UValue::Bot,
        },
        DeflExpr::Var(x) => {
            let mut cur = env;
            while let Some(frame) = cur {
                if frame.name == *x {
                    let inner = bind(&frame.name, &frame.body, &frame.env);
                    return eval(&frame.body, &inner, u);
                }
                cur = &frame.next;
            }
            panic!("free variable `{x}` during evaluation");
        }
        DeflExpr::Mu(x, body) => eval(body, &bind(x, body, env), u),
    }
}

/// A closed, well-formed deflation expression.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Deflation(Arc<DeflExpr>);

impl Deflation {
    pub fn new(expr: DeflExpr) -> Result<Self> {
        expr.check_well_formed()?;
        Ok(Deflation(Arc::new(expr)))
    }

    pub fn expr(&self) -> &DeflExpr {
        &self.0
    }

    pub fn apply(&self, u: &UValue) -> UValue {
        eval(&self.0, &None, u)
    }

    pub fn contains(&self, u: &UValue) -> bool {
        &self.apply(u) == u
    }
}

impl fmt::Display for Deflation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl fmt::Debug for Deflation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// A type constructor: a deflation expression with one formal parameter.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Tycon {
    pub param: Arc<str>,
    pub body: Arc<DeflExpr>,
}

impl Tycon {
    pub fn new(param: &str, body: DeflExpr) -> Self {
        Tycon {
            param: param.into(),
            body: Arc::new(body),
        }
    }

    pub fn identity() -> Self {
        Tycon::new("a", DeflExpr::var("a"))
    }

    /// Substitutes `arg` for the parameter.
    pub fn apply(&self, arg: &DeflExpr) -> DeflExpr {
        self.body.subst(&self.param, arg)
    }

    /// The constructor `a ↦ self(inner(a))`.
    pub fn compose(&self, inner: &Tycon) -> Tycon {
        Tycon {
            param: inner.param.clone(),
            body: Arc::new(self.apply(&inner.body)),
        }
    }
}

/// Substitutes a closed, well-formed argument into a type constructor.
pub fn tycon_apply(t: &Tycon, arg: &DeflExpr) -> Result<DeflExpr> {
    arg.check_well_formed()?;
    let out = t.apply(arg);
    out.check_well_formed()?;
    Ok(out)
}

/// Every `u` of depth at most `max_depth` with `apply(d, u) = u`, generated
/// structurally from `d` rather than by filtering the universe.
pub fn enumerate_image(d: &DeflExpr, max_depth: usize) -> Result<Vec<UValue>> {
    d.check_well_formed()?;
    let mut memo = HashMap::new();
    let mut out = (*image_by_depth(d, max_depth, &mut memo)).clone();
    out.sort_by(|a, b| (a.depth(), a).cmp(&(b.depth(), b)));
    Ok(out)
}

fn image_by_depth(
    d: &DeflExpr,
    k: usize,
    memo: &mut HashMap<(DeflExpr, usize), Arc<Vec<UValue>>>,
) -> Arc<Vec<UValue>> {
    if let Some(v) = memo.get(&(d.clone(), k)) {
        return v.clone();
    }
    let mut out = vec![UValue::Bot];
    if k > 0 {
        match d {
            DeflExpr::Bot => {}
            DeflExpr::Id => out = enumerate_terms(k),
            DeflExpr::Unit => out.push(UValue::Unit),
            DeflExpr::Lift(e) => {
                for x in image_by_depth(e, k - 1, memo).iter() {
                    out.push(UValue::mk_lift(x.clone()));
                }
            }
            DeflExpr::Sum(a, b) => {
                for x in image_by_depth(a, k - 1, memo)
                    .iter()
                    .filter(|x| !x.is_bot())
                {
                    out.push(UValue::mk_inl(x.clone()));
                }
                for x in image_by_depth(b, k - 1, memo)
                    .iter()
                    .filter(|x| !x.is_bot())
                {
                    out.push(UValue::mk_inr(x.clone()));
                }
            }
            DeflExpr::Prod(a, b) => {
                let xs = image_by_depth(a, k - 1, memo);
                let ys = image_by_depth(b, k - 1, memo);
                for x in xs.iter().filter(|x| !x.is_bot()) {
                    for y in ys.iter().filter(|y| !y.is_bot()) {
                        out.push(UValue::mk_pair(x.clone(), y.clone()));
                    }
                }
            }
            DeflExpr::Mu(..) => out = (*image_by_depth(&d.unfold(), k, memo)).clone(),
            DeflExpr::Var(x) => panic!("free variable `{x}` in image enumeration"),
        }
    }
    let out = Arc::new(out);
    memo.insert((d.clone(), k), out.clone());
    out
}

/// Bound on typed carriers: elements of rank at most `rank`; positions
/// governed by `id` range over universal terms of depth at most
/// `univ_depth`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bound {
    pub rank: usize,
    pub univ_depth: usize,
}

impl Bound {
    pub fn rank(rank: usize) -> Self {
        Bound {
            rank,
            univ_depth: 2,
        }
    }

    pub fn lower(self) -> Self {
        Bound {
            rank: self.rank.saturating_sub(1),
            ..self
        }
    }
}

type CarrierCache = Mutex<HashMap<(DeflExpr, Bound), Arc<Vec<UValue>>>>;

fn carrier_cache() -> &'static CarrierCache {
    static CACHE: OnceLock<CarrierCache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Image elements of `d` within `bound`, ordered by rank, then size, then
/// structurally. Requires every recursion in `d` to pass through a lifting.
pub fn carrier(d: &DeflExpr, bound: Bound) -> Result<Arc<Vec<UValue>>> {
    d.check_well_formed()?;
    if !d.is_lift_guarded() {
        return Err(Error::Unbounded(d.to_string()));
    }
    if let Some(v) = carrier_cache().lock().unwrap().get(&(d.clone(), bound)) {
        return Ok(v.clone());
    }
    let mut memo = HashMap::new();
    let mut out = (*carrier_rec(d, bound.rank, bound.univ_depth, &mut memo)).clone();
    out.sort_by(|a, b| (a.rank(), a.size(), a).cmp(&(b.rank(), b.size(), b)));
    out.dedup();
    let out = Arc::new(out);
    carrier_cache()
        .lock()
        .unwrap()
        .insert((d.clone(), bound), out.clone());
    Ok(out)
}

fn carrier_rec(
    d: &DeflExpr,
    n: usize,
    univ_depth: usize,
    memo: &mut HashMap<(DeflExpr, usize), Arc<Vec<UValue>>>,
) -> Arc<Vec<UValue>> {
    if let Some(v) = memo.get(&(d.clone(), n)) {
        return v.clone();
    }
    let mut out = vec![UValue::Bot];
    match d {
        DeflExpr::Bot => {}
        DeflExpr::Id => {
            out = enumerate_terms(univ_depth)
                .into_iter()
                .filter(|u| u.rank() <= n)
                .collect()
        }
        DeflExpr::Unit => {
            if n >= 1 {
                out.push(UValue::Unit)
            }
        }
        DeflExpr::Lift(e) => {
            if n >= 1 {
                for x in carrier_rec(e, n - 1, univ_depth, memo).iter() {
                    out.push(UValue::mk_lift(x.clone()));
                }
            }
        }
        DeflExpr::Sum(a, b) => {
            for x in carrier_rec(a, n, univ_depth, memo)
                .iter()
                .filter(|x| !x.is_bot())
            {
                out.push(UValue::mk_inl(x.clone()));
            }
            for x in carrier_rec(b, n, univ_depth, memo)
                .iter()
                .filter(|x| !x.is_bot())
            {
                out.push(UValue::mk_inr(x.clone()));
            }
        }
        DeflExpr::Prod(a, b) => {
            let xs = carrier_rec(a, n, univ_depth, memo);
            let ys = carrier_rec(b, n, univ_depth, memo);
            for x in xs.iter().filter(|x| !x.is_bot()) {
                for y in ys.iter().filter(|y| !y.is_bot()) {
                    out.push(UValue::mk_pair(x.clone(), y.clone()));
                }
            }
        }
        DeflExpr::Mu(..) => out = (*carrier_rec(&d.unfold(), n, univ_depth, memo)).clone(),
        DeflExpr::Var(x) => panic!("free variable `{x}` in carrier generation"),
    }
    let out = Arc::new(out);
    memo.insert((d.clone(), n), out.clone());
    out
}

/// Largest depth at which the whole universe is enumerated for axiom checks.
pub const UNIVERSE_CHECK_DEPTH: usize = 4;

/// Terms used to check the deflation axioms for `d` up to `max_depth`.
///
/// Up to [`UNIVERSE_CHECK_DEPTH`] this is every term. Beyond it the
/// universe is too large to enumerate, so deeper terms are generated along
/// the shape of `d`: at each position the constructors `d` accepts there
/// (recursively), plus the smallest term of every other head constructor.
/// Positions governed by `id` draw from universal terms of depth at most 2.
pub fn axiom_carrier(d: &DeflExpr, max_depth: usize) -> Vec<UValue> {
    let mut all: Vec<UValue> = enumerate_terms(max_depth.min(UNIVERSE_CHECK_DEPTH));
    if max_depth > UNIVERSE_CHECK_DEPTH {
        let mut memo = HashMap::new();
        let extra = shaped(d, max_depth, &mut memo);
        all.extend(
            extra
                .iter()
                .filter(|u| u.depth() > UNIVERSE_CHECK_DEPTH)
                .cloned(),
        );
    }
    all.sort_by(|a, b| (a.depth(), a).cmp(&(b.depth(), b)));
    all.dedup();
    all
}

fn junk(k: usize, skip: &[&str]) -> Vec<UValue> {
    let unit = || UValue::Unit;
    let probes = [
        ("unit", 1, unit()),
        ("lift", 1, UValue::mk_lift(UValue::Bot)),
        ("inl", 2, UValue::mk_inl(unit())),
        ("inr", 2, UValue::mk_inr(unit())),
        ("pair", 2, UValue::mk_pair(unit(), unit())),
    ];
    probes
        .into_iter()
        .filter(|(h, depth, _)| *depth <= k && !skip.contains(h))
        .map(|(_, _, u)| u)
        .collect()
}

fn shaped(
    d: &DeflExpr,
    k: usize,
    memo: &mut HashMap<(DeflExpr, usize), Arc<Vec<UValue>>>,
) -> Arc<Vec<UValue>> {
    if let Some(v) = memo.get(&(d.clone(), k)) {
        return v.clone();
    }
    let mut out = vec![UValue::Bot];
    if k > 0 {
        match d {
            DeflExpr::Bot => out.extend(junk(k, &[])),
            DeflExpr::Id => out = enumerate_terms(k.min(2)),
            DeflExpr::Unit => {
                out.push(UValue::Unit);
                out.extend(junk(k, &["unit"]));
            }
            DeflExpr::Lift(e) => {
                for x in shaped(e, k - 1, memo).iter() {
                    out.push(UValue::mk_lift(x.clone()));
                }
                out.extend(junk(k, &["lift"]));
            }
            DeflExpr::Sum(a, b) => {
                for x in shaped(a, k - 1, memo).iter().filter(|x| !x.is_bot()) {
                    out.push(UValue::mk_inl(x.clone()));
                }
                for x in shaped(b, k - 1, memo).iter().filter(|x| !x.is_bot()) {
                    out.push(UValue::mk_inr(x.clone()));
                }
                out.extend(junk(k, &["inl", "inr"]));
            }
            DeflExpr::Prod(a, b) => {
                let xs = shaped(a, k - 1, memo);
                let ys = shaped(b, k - 1, memo);
                for x in xs.iter().filter(|x| !x.is_bot()) {
                    for y in ys.iter().filter(|y| !y.is_bot()) {
                        out.push(UValue::mk_pair(x.clone(), y.clone()));
                    }
                }
                out.extend(junk(k, &["pair"]));
            }
            DeflExpr::Mu(..) => out = (*shaped(&d.unfold(), k, memo)).clone(),
            DeflExpr::Var(x) => panic!("free variable `{x}` in shaped enumeration"),
        }
    }
    let out = Arc::new(out);
    memo.insert((d.clone(), k), out.clone());
    out
}

/// Checks idempotence, below-identity and monotonicity of `d` on
/// [`axiom_carrier`]`(d, max_depth)`. Monotonicity is checked on the
/// generating pairs of [`UValue::lower_steps`].
pub fn check_deflation_axioms(d: &DeflExpr, name: &str, max_depth: usize) -> Result<LawReport> {
    let defl = Deflation::new(d.clone())?;
    let key = |law: &str| CaseKey::new("deflation", law, &[name], max_depth);
    let terms = axiom_carrier(d, max_depth);
    let images: HashMap<&UValue, UValue> = terms.iter().map(|u| (u, defl.apply(u))).collect();
    let mut checked = 0usize;
    for u in &terms {
        let du = &images[u];
        checked += 1;
        if &defl.apply(du) != du {
            return Ok(LawReport::failed(
                key("idempotent"),
                checked,
                vec![Quantifier::single("u", Arg::Val(u.clone()))],
            ));
        }
        if !du.leq(u) {
            return Ok(LawReport::failed(
                key("below-identity"),
                checked,
                vec![Quantifier::single("u", Arg::Val(u.clone()))],
            ));
        }
        for v in u.lower_steps() {
            let dv = images.get(&v).cloned().unwrap_or_else(|| defl.apply(&v));
            if !dv.leq(du) {
                return Ok(LawReport::failed(
                    key("monotone"),
                    checked,
                    vec![
                        Quantifier::single("lower", Arg::Val(v)),
                        Quantifier::single("upper", Arg::Val(u.clone())),
                    ],
                ));
            }
        }
    }
    Ok(LawReport::passed(key("axioms"), checked))
}

/// Bounded check of `d1 ⊑ d2`: pointwise on [`axiom_carrier`] of both.
pub fn defl_leq(d1: &DeflExpr, d2: &DeflExpr, max_depth: usize) -> Result<bool> {
    let a = Deflation::new(d1.clone())?;
    let b = Deflation::new(d2.clone())?;
    let mut terms = axiom_carrier(d1, max_depth);
    if max_depth > UNIVERSE_CHECK_DEPTH {
        terms.extend(axiom_carrier(d2, max_depth));
    }
    Ok(terms.iter().all(|u| a.apply(u).leq(&b.apply(u))))
}

impl fmt::Display for DeflExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DeflExpr::Bot => write!(f, "bot"),
            DeflExpr::Id => write!(f, "id"),
            DeflExpr::Unit => write!(f, "unit"),
            DeflExpr::Lift(d) => write!(f, "lift({d})"),
            DeflExpr::Sum(a, b) => write!(f, "sum({a},{b})"),
            DeflExpr::Prod(a, b) => write!(f, "prod({a},{b})"),
            DeflExpr::Var(x) => write!(f, "{x}"),
            DeflExpr::Mu(x, body) => write!(f, "mu {x}. {body}"),
        }
    }
}

impl fmt::Debug for DeflExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl std::str::FromStr for DeflExpr {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut p = ExprParser { src: s, pos: 0 };
        let e = p.expr()?;
        p.skip_ws();
        if p.pos != s.len() {
            return Err(p.error("trailing input"));
        }
        Ok(e)
    }
}

struct ExprParser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> ExprParser<'a> {
    fn skip_ws(&mut self) {
        let rest = &self.src[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn error(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at offset {} in `{}`", self.pos, self.src))
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(&format!("expected `{c}`")))
        }
    }

    fn ident(&mut self) -> Result<&'a str> {
        self.skip_ws();
        let rest = &self.src[self.pos..];
        let len = rest
            .char_indices()
            .find(|&(i, c)| {
                !(c.is_ascii_alphabetic()
                    || c == '_'
                    || (i > 0 && (c.is_ascii_digit() || c == '\'')))
            })
            .map_or(rest.len(), |(i, _)| i);
        if len == 0 {
            return Err(self.error("expected identifier"));
        }
        self.pos += len;
        Ok(&rest[..len])
    }

    fn expr(&mut self) -> Result<DeflExpr> {
        let word = self.ident()?;
        match word {
            "bot" => Ok(DeflExpr::Bot),
            "id" => Ok(DeflExpr::Id),
            "unit" => Ok(DeflExpr::Unit),
            "lift" => {
                self.expect('(')?;
                let d = self.expr()?;
                self.expect(')')?;
                Ok(DeflExpr::lift(d))
            }
            "sum" | "prod" => {
                self.expect('(')?;
                let a = self.expr()?;
                self.expect(',')?;
                let b = self.expr()?;
                self.expect(')')?;
                Ok(if word == "sum" {
                    DeflExpr::sum(a, b)
                } else {
                    DeflExpr::prod(a, b)
                })
            }
            "mu" => {
                let x = self.ident()?;
                self.expect('.')?;
                let body = self.expr()?;
                Ok(DeflExpr::mu(x, body))
            }
            x => Ok(DeflExpr::var(x)),
        }
    }
}
