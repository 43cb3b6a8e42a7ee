//! Representable types, values and functions over the universal domain.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::deflation::{carrier, Bound, DeflExpr, Deflation};
use crate::error::{Error, Result};
use crate::udom::{enumerate_terms, UValue};

/// A named type given by a closed deflation.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RepType {
    pub name: Arc<str>,
    defl: Deflation,
}

impl RepType {
    pub fn new(name: &str, expr: DeflExpr) -> Result<Self> {
        Ok(RepType {
            name: name.into(),
            defl: Deflation::new(expr)?,
        })
    }

    /// The universal type, whose deflation is the identity.
    pub fn univ() -> Self {
        RepType::new("univ", DeflExpr::Id).unwrap()
    }

    pub fn expr(&self) -> &DeflExpr {
        self.defl.expr()
    }

    pub fn deflation(&self) -> &Deflation {
        &self.defl
    }

    /// `proj`: the deflation applied to a universal value.
    pub fn proj(&self, u: &UValue) -> UValue {
        self.defl.apply(u)
    }

    pub fn contains(&self, u: &UValue) -> bool {
        self.defl.contains(u)
    }

    pub fn carrier(&self, bound: Bound) -> Result<Arc<Vec<UValue>>> {
        carrier(self.expr(), bound)
    }

    pub fn value(&self, u: UValue) -> Result<TypedValue> {
        TypedValue::new(self.clone(), u)
    }
}

impl fmt::Display for RepType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

impl fmt::Debug for RepType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.name, self.defl)
    }
}

/// A universal value known to lie in the image of its type.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TypedValue {
    ty: RepType,
    val: UValue,
}

impl TypedValue {
    pub fn new(ty: RepType, val: UValue) -> Result<Self> {
        if !ty.contains(&val) {
            return Err(Error::NotMember {
                ty: ty.name.to_string(),
                term: val.to_string(),
            });
        }
        Ok(TypedValue { ty, val })
    }

    pub fn ty(&self) -> &RepType {
        &self.ty
    }

    pub fn val(&self) -> &UValue {
        &self.val
    }

    pub fn into_val(self) -> UValue {
        self.val
    }
}

type Builtin = Arc<dyn Fn(&UValue) -> UValue + Send + Sync>;

/// A continuous function on universal values.
#[derive(Clone)]
pub enum FnVal {
    /// A closure with a description used when rendering.
    Builtin { eval: Builtin, desc: Arc<str> },
    /// A monotone function given by its graph on a finite carrier.
    Table(Arc<FnTable>),
}

/// Graph of a monotone function from a carrier of `src` into `dst`.
pub struct FnTable {
    pub src: RepType,
    pub dst: RepType,
    pub graph: Vec<(UValue, UValue)>,
    index: BTreeMap<UValue, usize>,
}

impl FnTable {
    pub fn new(src: RepType, dst: RepType, graph: Vec<(UValue, UValue)>) -> Self {
        let index = graph
            .iter()
            .enumerate()
            .map(|(i, (x, _))| (x.clone(), i))
            .collect();
        FnTable {
            src,
            dst,
            graph,
            index,
        }
    }

    /// Value at `u`. Off the tabulated points this is the least upper bound
    /// of the values at tabulated points below `u`, which is the least
    /// monotone extension of the graph.
    pub fn call(&self, u: &UValue) -> UValue {
        if let Some(&i) = self.index.get(u) {
            return self.graph[i].1.clone();
        }
        let mut acc = UValue::Bot;
        for (x, y) in &self.graph {
            if x.leq(u) {
                acc = acc
                    .lub2(y)
                    .unwrap_or_else(|| panic!("tabulated function has no upper bound below {u}"));
            }
        }
        acc
    }

    /// Distinct outputs, in first-occurrence order.
    pub fn outputs(&self) -> Vec<&UValue> {
        let mut out: Vec<&UValue> = Vec::new();
        for (_, y) in &self.graph {
            if !out.contains(&y) {
                out.push(y);
            }
        }
        out
    }
}

impl FnVal {
    pub fn builtin(desc: &str, f: impl Fn(&UValue) -> UValue + Send + Sync + 'static) -> Self {
        FnVal::Builtin {
            eval: Arc::new(f),
            desc: desc.into(),
        }
    }

    pub fn table(src: RepType, dst: RepType, graph: Vec<(UValue, UValue)>) -> Self {
        FnVal::Table(Arc::new(FnTable::new(src, dst, graph)))
    }

    pub fn identity() -> Self {
        FnVal::builtin("id", |u| u.clone())
    }

    pub fn constant(v: UValue) -> Self {
        let desc = format!("const {v}");
        FnVal::builtin(&desc, move |_| v.clone())
    }

    pub fn call(&self, u: &UValue) -> UValue {
        match self {
            FnVal::Builtin { eval, .. } => eval(u),
            FnVal::Table(t) => t.call(u),
        }
    }

    /// `self ∘ g`.
    pub fn after(&self, g: &FnVal) -> FnVal {
        let (f, g2) = (self.clone(), g.clone());
        let desc = format!("({self} . {g})");
        FnVal::builtin(&desc, move |u| f.call(&g2.call(u)))
    }

    pub fn is_strict(&self) -> bool {
        self.call(&UValue::Bot).is_bot()
    }

    /// Ordering key for counterexample search: total inner `_|_` and
    /// total size over the distinct outputs of a table.
    pub fn measure(&self) -> (usize, usize) {
        match self {
            FnVal::Builtin { .. } => (0, 0),
            FnVal::Table(t) => t
                .outputs()
                .into_iter()
                .fold((0, 0), |(b, s), y| (b + y.inner_bots(), s + y.size())),
        }
    }
}

impl fmt::Display for FnVal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FnVal::Builtin { desc, .. } => f.write_str(desc),
            FnVal::Table(t) => {
                let outs = t.outputs();
                if outs.len() == 1 && t.graph.len() > 1 {
                    return write!(f, "const {}", outs[0]);
                }
                f.write_str("{")?;
                for (i, (x, y)) in t.graph.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{x} -> {y}")?;
                }
                f.write_str("}")
            }
        }
    }
}

impl fmt::Debug for FnVal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Coerces a value to `target` (`emb` is the identity, so this is `proj`).
pub fn coerce_val(target: &RepType, u: &UValue) -> UValue {
    target.proj(u)
}

/// `coerce (a -> b) (c -> d) f = proj_d . emb_b . f . proj_a . emb_c`.
/// Domains are coerced with `src_in`, results with `tgt_out`.
pub fn coerce_fn(f: &FnVal, src_in: &RepType, tgt_out: &RepType) -> FnVal {
    let (f2, a, d) = (f.clone(), src_in.clone(), tgt_out.clone());
    let desc = format!("coerce({f} : {src_in} -> {tgt_out})");
    FnVal::builtin(&desc, move |u| d.proj(&f2.call(&a.proj(u))))
}

/// A function on `src` viewed as a function on the universe.
pub fn to_univ(f: &FnVal, src: &RepType) -> FnVal {
    if src.expr() == &DeflExpr::Id {
        return f.clone();
    }
    let (f2, a) = (f.clone(), src.clone());
    FnVal::builtin(&format!("{f}"), move |u| f2.call(&a.proj(u)))
}

/// Every monotone function from the carrier of `a` into that of `b` at
/// `bound`, in lexicographic order of outputs along the carrier of `a`.
/// Fails when `|A|·|B|` or the number of functions exceeds `guard`.
pub fn gen_monotone_fns(
    a: &RepType,
    b: &RepType,
    bound: Bound,
    guard: usize,
) -> Result<Vec<FnVal>> {
    let xs = a.carrier(bound)?;
    let ys = b.carrier(bound)?;
    if xs.len() * ys.len() > guard {
        return Err(Error::GuardExceeded {
            what: format!("function space {a} -> {b}"),
            size: xs.len() * ys.len(),
            limit: guard,
        });
    }
    // carriers are sorted by rank then size, so predecessors come first
    // along any chain in which size strictly grows
    let mut order: Vec<usize> = (0..xs.len()).collect();
    order.sort_by_key(|&i| xs[i].size());
    let preds: Vec<Vec<usize>> = order
        .iter()
        .enumerate()
        .map(|(pos, &i)| {
            order[..pos]
                .iter()
                .enumerate()
                .filter(|&(_, &j)| xs[j].leq(&xs[i]))
                .map(|(p, _)| p)
                .collect()
        })
        .collect();
    let leq: Vec<Vec<bool>> = ys
        .iter()
        .map(|y| ys.iter().map(|z| y.leq(z)).collect())
        .collect();

    let mut out = Vec::new();
    let mut choice = vec![0usize; order.len()];
    let mut overflow = false;
    search(0, &preds, &leq, &mut choice, &mut |ch| {
        if out.len() >= guard {
            overflow = true;
            return false;
        }
        let mut graph: Vec<(UValue, UValue)> = Vec::with_capacity(xs.len());
        let mut by_index = vec![0usize; xs.len()];
        for (pos, &i) in order.iter().enumerate() {
            by_index[i] = ch[pos];
        }
        for (i, x) in xs.iter().enumerate() {
            graph.push((x.clone(), ys[by_index[i]].clone()));
        }
        out.push(FnVal::table(a.clone(), b.clone(), graph));
        true
    });
    if overflow {
        return Err(Error::GuardExceeded {
            what: format!("number of monotone functions {a} -> {b}"),
            size: out.len() + 1,
            limit: guard,
        });
    }
    Ok(out)
}

fn search(
    pos: usize,
    preds: &[Vec<usize>],
    leq: &[Vec<bool>],
    choice: &mut Vec<usize>,
    emit: &mut dyn FnMut(&[usize]) -> bool,
) -> bool {
    if pos == preds.len() {
        return emit(choice);
    }
    for y in 0..leq.len() {
        if preds[pos].iter().all(|&p| leq[choice[p]][y]) {
            choice[pos] = y;
            if !search(pos + 1, preds, leq, choice, emit) {
                return false;
            }
        }
    }
    true
}

/// Extensional equality on the carrier of `dom` at `bound`.
pub fn fn_equal(f: &FnVal, g: &FnVal, dom: &RepType, bound: Bound) -> Result<bool> {
    Ok(dom.carrier(bound)?.iter().all(|x| f.call(x) == g.call(x)))
}

/// `f ⊩ d` on `points`: the first point where `f` and `d` do not commute.
pub fn agrees_on(
    f: &dyn Fn(&UValue) -> UValue,
    d: &Deflation,
    points: &[UValue],
) -> Option<UValue> {
    points
        .iter()
        .find(|u| f(&d.apply(u)) != d.apply(&f(u)))
        .cloned()
}

/// `f ⊩ d` on every universal term of depth at most `max_depth`.
pub fn agrees(f: &dyn Fn(&UValue) -> UValue, d: &Deflation, max_depth: usize) -> bool {
    agrees_on(f, d, &enumerate_terms(max_depth)).is_none()
}
