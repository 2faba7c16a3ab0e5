//! Rationally indexed ≺-increasing paths, their classes, and the dyadic chain.
//!
//! Paths are classified by the behaviour just below an index: a
//! [`PathClass`] records the limit value there and whether it is attained.
//! Over a finite carrier every path is eventually constant, so the class is
//! the eventual value. Over `(P̄,≺₁)` and `(P̄,≤)` the pair
//! `(endpoint, attained)` is a complete invariant.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::finite::FiniteQ;
use crate::numbers::{fmt_rat, parse_rat, Ext, Rat};
use crate::{Error, Result};

/// Rational strictly between 0 and 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalIndex(Rat);

impl RationalIndex {
    pub fn new(r: Rat) -> Result<RationalIndex> {
        if r.is_positive() && r < Rat::one() {
            Ok(RationalIndex(r))
        } else {
            Err(Error::Path(format!("index {} outside (0,1)", fmt_rat(&r))))
        }
    }

    pub fn parse(s: &str) -> Result<RationalIndex> {
        RationalIndex::new(parse_rat(s)?)
    }

    pub fn value(&self) -> &Rat {
        &self.0
    }
}

impl fmt::Display for RationalIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", fmt_rat(&self.0))
    }
}

/// Behaviour of a path just below an index: limit value and whether it is attained.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PathClass<E> {
    pub endpoint: E,
    pub attained: bool,
}

impl<E> PathClass<E> {
    pub fn new(endpoint: E, attained: bool) -> Self {
        PathClass { endpoint, attained }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Cmp {
    Le,
    Nle,
    Unknown,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Tri {
    True,
    False,
    Unknown,
}

impl From<bool> for Tri {
    fn from(b: bool) -> Tri {
        if b {
            Tri::True
        } else {
            Tri::False
        }
    }
}

/// A Q-semigroup over which paths can be evaluated and classified.
pub trait PathCarrier: Send + Sync {
    type Elem: Clone + PartialEq + fmt::Debug + Send + Sync + 'static;

    fn zero(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn leq(&self, a: &Self::Elem, b: &Self::Elem) -> bool;
    fn prec(&self, a: &Self::Elem, b: &Self::Elem) -> bool;
    fn format(&self, a: &Self::Elem) -> String;
    fn parse(&self, s: &str) -> Result<Self::Elem>;

    /// Value at `λ ∈ (0,1]` of the scaled path through `a`, if the carrier supports scaling.
    fn scale(&self, _lambda: &Rat, _a: &Self::Elem) -> Option<Self::Elem> {
        None
    }

    /// `[f] ≤ [g]` for classes taken at the top index.
    fn class_leq(&self, f: &PathClass<Self::Elem>, g: &PathClass<Self::Elem>) -> bool;

    /// Whether every value of a path with class `f` is `≺ c`.
    fn dominated(&self, f: &PathClass<Self::Elem>, c: &Self::Elem) -> bool;

    /// `∃μ ∀λ f(λ) ≺ g(μ)`.
    fn class_waybelow(&self, f: &PathClass<Self::Elem>, g: &PathClass<Self::Elem>) -> bool;

    fn class_add(&self, f: &PathClass<Self::Elem>, g: &PathClass<Self::Elem>) -> PathClass<Self::Elem>;
}

impl PathCarrier for FiniteQ {
    type Elem = usize;

    fn zero(&self) -> usize {
        self.pom.zero
    }

    fn add(&self, a: &usize, b: &usize) -> usize {
        self.pom.sum(*a, *b)
    }

    fn leq(&self, a: &usize, b: &usize) -> bool {
        self.pom.le(*a, *b)
    }

    fn prec(&self, a: &usize, b: &usize) -> bool {
        self.aux.rel[*a][*b]
    }

    fn format(&self, a: &usize) -> String {
        self.pom.label(*a).to_string()
    }

    fn parse(&self, s: &str) -> Result<usize> {
        self.pom.index_of(s.trim()).ok_or_else(|| Error::Element(format!("no element {s:?}")))
    }

    fn class_leq(&self, f: &PathClass<usize>, g: &PathClass<usize>) -> bool {
        self.aux.rel[f.endpoint][g.endpoint]
    }

    fn dominated(&self, f: &PathClass<usize>, c: &usize) -> bool {
        self.aux.rel[f.endpoint][*c]
    }

    fn class_waybelow(&self, f: &PathClass<usize>, g: &PathClass<usize>) -> bool {
        self.aux.rel[f.endpoint][g.endpoint]
    }

    fn class_add(&self, f: &PathClass<usize>, g: &PathClass<usize>) -> PathClass<usize> {
        PathClass::new(self.add(&f.endpoint, &g.endpoint), true)
    }
}

/// `P̄ = [0,∞]` with `a ≺₁ b` iff `a < ∞` and `a ≤ b` (`One`), or with `≺ = ≤` (`Infinity`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RealAux {
    One,
    Infinity,
}

impl PathCarrier for RealAux {
    type Elem = Ext;

    fn zero(&self) -> Ext {
        Ext::zero()
    }

    fn add(&self, a: &Ext, b: &Ext) -> Ext {
        a.add(b)
    }

    fn leq(&self, a: &Ext, b: &Ext) -> bool {
        a <= b
    }

    fn prec(&self, a: &Ext, b: &Ext) -> bool {
        match self {
            RealAux::One => !a.is_inf() && a <= b,
            RealAux::Infinity => a <= b,
        }
    }

    fn format(&self, a: &Ext) -> String {
        a.to_string()
    }

    fn parse(&self, s: &str) -> Result<Ext> {
        Ext::parse(s)
    }

    /// `λa` for finite `a`; the unbounded ramp `λ/(1-λ)` for `a = ∞`.
    fn scale(&self, lambda: &Rat, a: &Ext) -> Option<Ext> {
        match a {
            Ext::Fin(r) => Some(Ext::Fin(r * lambda)),
            Ext::Inf if lambda.is_one() => Some(Ext::Inf),
            Ext::Inf => Some(Ext::Fin(lambda / (Rat::one() - lambda))),
        }
    }

    fn class_leq(&self, f: &PathClass<Ext>, g: &PathClass<Ext>) -> bool {
        f.endpoint < g.endpoint || (f.endpoint == g.endpoint && (g.attained || !f.attained))
    }

    fn dominated(&self, f: &PathClass<Ext>, c: &Ext) -> bool {
        match (self, f.attained) {
            (RealAux::One, true) => self.prec(&f.endpoint, c),
            _ => f.endpoint <= *c,
        }
    }

    fn class_waybelow(&self, f: &PathClass<Ext>, g: &PathClass<Ext>) -> bool {
        if g.attained {
            self.dominated(f, &g.endpoint)
        } else {
            f.endpoint < g.endpoint
        }
    }

    fn class_add(&self, f: &PathClass<Ext>, g: &PathClass<Ext>) -> PathClass<Ext> {
        let endpoint = f.endpoint.add(&g.endpoint);
        let attained = (f.attained && g.attained)
            || (f.attained && f.endpoint.is_inf())
            || (g.attained && g.endpoint.is_inf())
            || endpoint.is_zero();
        PathClass::new(endpoint, attained)
    }
}

type Evaluator<E> = dyn Fn(&Rat) -> Result<E> + Send + Sync;

/// Lazily evaluated path, e.g. the output of [`dyadic_chain`].
pub struct LazyPath<E> {
    pub label: String,
    pub class: Option<PathClass<E>>,
    eval: Box<Evaluator<E>>,
}

impl<E> LazyPath<E> {
    pub fn new(label: impl Into<String>, class: Option<PathClass<E>>, eval: Box<Evaluator<E>>) -> Self {
        LazyPath { label: label.into(), class, eval }
    }

    pub fn eval(&self, lambda: &Rat) -> Result<E> {
        (self.eval)(lambda)
    }
}

#[derive(Clone)]
pub enum PathExpr<E> {
    Const(E),
    /// `λ ↦ λa`.
    Scaled(E),
    /// Pieces `(cut_i, p_i)`: `p_i` is used on `[cut_{i-1}, cut_i)`; the last cut is 1.
    Stitched(Vec<(Rat, PathExpr<E>)>),
    /// `λ ↦ f((λ-ε)₊)` with `f(0) = 0`.
    CutDown(Box<PathExpr<E>>, Rat),
    Sum(Box<PathExpr<E>>, Box<PathExpr<E>>),
    /// `λ ↦ f(scale·λ + shift)`, arguments `≤ 0` reading as `0`.
    Affine {
        path: Box<PathExpr<E>>,
        scale: Rat,
        shift: Rat,
    },
    Lazy(Arc<LazyPath<E>>),
}

impl<E: fmt::Debug> fmt::Debug for PathExpr<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PathExpr::Const(a) => write!(f, "const({a:?})"),
            PathExpr::Scaled(a) => write!(f, "scaled({a:?})"),
            PathExpr::Stitched(ps) => {
                write!(f, "stitch[")?;
                for (i, (c, p)) in ps.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "({},{p:?})", fmt_rat(c))?;
                }
                write!(f, "]")
            }
            PathExpr::CutDown(p, e) => write!(f, "cut({p:?},{})", fmt_rat(e)),
            PathExpr::Sum(p, q) => write!(f, "sum({p:?},{q:?})"),
            PathExpr::Affine { path, scale, shift } => {
                write!(f, "affine({path:?},{},{})", fmt_rat(scale), fmt_rat(shift))
            }
            PathExpr::Lazy(l) => write!(f, "lazy({})", l.label),
        }
    }
}

impl<E> PathExpr<E> {
    pub fn stitch(pieces: Vec<(Rat, PathExpr<E>)>) -> PathExpr<E> {
        PathExpr::Stitched(pieces)
    }

    pub fn sum(p: PathExpr<E>, q: PathExpr<E>) -> PathExpr<E> {
        PathExpr::Sum(Box::new(p), Box::new(q))
    }
}

fn split_top(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let (mut depth, mut start) = (0i32, 0);
    for (i, ch) in s.char_indices() {
        match ch {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            ',' if depth == 0 => {
                out.push(s[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(s[start..].trim());
    out
}

fn call<'a>(s: &'a str, name: &str) -> Option<&'a str> {
    s.strip_prefix(name)?.trim_start().strip_prefix('(')?.strip_suffix(')')
}

/// Parses `const(a)`, `scaled(a)`, `cut(p,e)`, `sum(p,q)` and
/// `stitch[(c1,p1),...,(1,pn)]`, elements read by the carrier.
pub fn parse_path<C: PathCarrier>(c: &C, s: &str) -> Result<PathExpr<C::Elem>> {
    let s = s.trim();
    let bad = || Error::Path(format!("cannot parse path {s:?}"));
    let pair = |inner: &str| -> Result<(String, String)> {
        match split_top(inner)[..] {
            [a, b] => Ok((a.to_string(), b.to_string())),
            _ => Err(bad()),
        }
    };
    if let Some(a) = call(s, "const") {
        return Ok(PathExpr::Const(c.parse(a)?));
    }
    if let Some(a) = call(s, "scaled") {
        return Ok(PathExpr::Scaled(c.parse(a)?));
    }
    if let Some(inner) = call(s, "cut") {
        let (p, e) = pair(inner)?;
        return Ok(PathExpr::CutDown(Box::new(parse_path(c, &p)?), parse_rat(&e)?));
    }
    if let Some(inner) = call(s, "sum") {
        let (p, q) = pair(inner)?;
        return Ok(PathExpr::sum(parse_path(c, &p)?, parse_path(c, &q)?));
    }
    if let Some(inner) =
        s.strip_prefix("stitch").map(str::trim_start).and_then(|r| r.strip_prefix('[')?.strip_suffix(']'))
    {
        let pieces = split_top(inner)
            .into_iter()
            .map(|piece| {
                let body = piece.strip_prefix('(').and_then(|r| r.strip_suffix(')')).ok_or_else(bad)?;
                let (cut, p) = pair(body)?;
                Ok((parse_rat(&cut)?, parse_path(c, &p)?))
            })
            .collect::<Result<Vec<_>>>()?;
        return Ok(PathExpr::stitch(pieces));
    }
    Err(bad())
}

/// Inverse of [`parse_path`] for the textual variants.
pub fn format_path<C: PathCarrier>(c: &C, p: &PathExpr<C::Elem>) -> String {
    match p {
        PathExpr::Const(a) => format!("const({})", c.format(a)),
        PathExpr::Scaled(a) => format!("scaled({})", c.format(a)),
        PathExpr::CutDown(q, e) => format!("cut({},{})", format_path(c, q), fmt_rat(e)),
        PathExpr::Sum(a, b) => format!("sum({},{})", format_path(c, a), format_path(c, b)),
        PathExpr::Stitched(ps) => {
            let parts: Vec<String> =
                ps.iter().map(|(cut, q)| format!("({},{})", fmt_rat(cut), format_path(c, q))).collect();
            format!("stitch[{}]", parts.join(","))
        }
        PathExpr::Affine { path, scale, shift } => {
            format!("affine({},{},{})", format_path(c, path), fmt_rat(scale), fmt_rat(shift))
        }
        PathExpr::Lazy(l) => format!("lazy({})", l.label),
    }
}

fn zero_rat() -> Rat {
    Rat::zero()
}

/// Value of `p` at `λ`, for `λ ∈ (0,1)`.
pub fn path_eval<C: PathCarrier>(c: &C, p: &PathExpr<C::Elem>, lambda: &RationalIndex) -> Result<C::Elem> {
    eval_at(c, p, lambda.value())
}

fn eval_at<C: PathCarrier>(c: &C, p: &PathExpr<C::Elem>, lambda: &Rat) -> Result<C::Elem> {
    if !lambda.is_positive() {
        return Ok(c.zero());
    }
    if *lambda >= Rat::one() {
        return Err(Error::Path(format!("evaluation at {} outside (0,1)", fmt_rat(lambda))));
    }
    match p {
        PathExpr::Const(a) => Ok(a.clone()),
        PathExpr::Scaled(a) => c.scale(lambda, a).ok_or_else(|| Error::Unsupported("carrier has no scaling".into())),
        PathExpr::Stitched(pieces) => {
            let (_, piece) = pieces
                .iter()
                .find(|(cut, _)| lambda < cut)
                .ok_or_else(|| Error::Path("stitched path does not reach 1".into()))?;
            eval_at(c, piece, lambda)
        }
        PathExpr::CutDown(f, eps) => eval_at(c, f, &(lambda - eps)),
        PathExpr::Sum(f, g) => Ok(c.add(&eval_at(c, f, lambda)?, &eval_at(c, g, lambda)?)),
        PathExpr::Affine { path, scale, shift } => eval_at(c, path, &(scale * lambda + shift)),
        PathExpr::Lazy(l) => l.eval(lambda),
    }
}

/// Class of `p` restricted to a left neighbourhood of `t ∈ (0,1]`; `None`
/// when it cannot be decided (lazy paths below the top index).
pub fn left_limit<C: PathCarrier>(c: &C, p: &PathExpr<C::Elem>, t: &Rat) -> Option<PathClass<C::Elem>> {
    if !t.is_positive() {
        return Some(PathClass::new(c.zero(), true));
    }
    match p {
        PathExpr::Const(a) => Some(PathClass::new(a.clone(), true)),
        PathExpr::Scaled(a) => {
            let v = c.scale(t, a)?;
            let zero = c.zero();
            if *a == zero {
                Some(PathClass::new(zero, true))
            } else {
                Some(PathClass::new(v, false))
            }
        }
        PathExpr::Stitched(pieces) => {
            let (_, piece) = pieces.iter().find(|(cut, _)| t <= cut)?;
            left_limit(c, piece, t)
        }
        PathExpr::CutDown(f, eps) => left_limit(c, f, &(t - eps)),
        PathExpr::Sum(f, g) => Some(c.class_add(&left_limit(c, f, t)?, &left_limit(c, g, t)?)),
        PathExpr::Affine { path, scale, shift } => {
            if !scale.is_positive() {
                return None;
            }
            left_limit(c, path, &(scale * t + shift))
        }
        PathExpr::Lazy(l) => {
            if t.is_one() {
                l.class.clone()
            } else {
                None
            }
        }
    }
}

/// Canonical class of `p`, if decidable.
pub fn classify<C: PathCarrier>(c: &C, p: &PathExpr<C::Elem>) -> Option<PathClass<C::Elem>> {
    left_limit(c, p, &Rat::one())
}

/// Grid used when a path can only be checked by sampling.
pub const SAMPLE_DENOMINATOR: i64 = 64;

fn grid(hi: &Rat) -> Vec<Rat> {
    (1..SAMPLE_DENOMINATOR)
        .map(|k| Rat::new(BigInt::from(k), BigInt::from(SAMPLE_DENOMINATOR)))
        .filter(|x| x < hi)
        .collect()
}

/// Checks that `p` is ≺-increasing: exactly for constructed paths, on a
/// sample grid for lazy ones.
pub fn validate<C: PathCarrier>(c: &C, p: &PathExpr<C::Elem>) -> Result<()> {
    validate_on(c, p, &Rat::one())
}

fn validate_on<C: PathCarrier>(c: &C, p: &PathExpr<C::Elem>, hi: &Rat) -> Result<()> {
    if !hi.is_positive() {
        return Ok(());
    }
    match p {
        PathExpr::Const(a) => {
            if c.prec(a, a) {
                Ok(())
            } else {
                Err(Error::Path(format!("constant value {} is not self-related", c.format(a))))
            }
        }
        PathExpr::Scaled(a) => {
            let half = Rat::new(1.into(), 2.into());
            c.scale(&half, a).map(|_| ()).ok_or_else(|| Error::Unsupported("carrier has no scaling".into()))
        }
        PathExpr::Stitched(pieces) => {
            if pieces.is_empty() || !pieces.last().unwrap().0.is_one() {
                return Err(Error::Path("last cut of a stitched path must be 1".into()));
            }
            let mut prev = zero_rat();
            for (i, (cut, piece)) in pieces.iter().enumerate() {
                if *cut <= prev {
                    return Err(Error::Path("cuts must increase".into()));
                }
                if prev >= *hi {
                    break;
                }
                let top = if cut < hi { cut.clone() } else { hi.clone() };
                validate_on(c, piece, &top)?;
                if i + 1 < pieces.len() && cut < hi {
                    let below =
                        left_limit(c, piece, cut).ok_or_else(|| Error::Path("cannot classify piece at cut".into()))?;
                    let next = eval_at(c, &pieces[i + 1].1, cut)?;
                    if !c.dominated(&below, &next) {
                        return Err(Error::Path(format!(
                            "values before cut {} are not ≺ {}",
                            fmt_rat(cut),
                            c.format(&next)
                        )));
                    }
                }
                prev = cut.clone();
            }
            Ok(())
        }
        PathExpr::CutDown(f, eps) => {
            if !eps.is_positive() || *eps >= Rat::one() {
                return Err(Error::Path("cut-down parameter must lie in (0,1)".into()));
            }
            validate_on(c, f, &(hi - eps))
        }
        PathExpr::Sum(f, g) => {
            validate_on(c, f, hi)?;
            validate_on(c, g, hi)
        }
        PathExpr::Affine { path, scale, shift } => {
            let top = scale * hi + shift;
            if !scale.is_positive() || top > Rat::one() {
                return Err(Error::Path("affine reindexing leaves (0,1)".into()));
            }
            validate_on(c, path, &top)
        }
        PathExpr::Lazy(l) => {
            let pts = grid(hi);
            let vals: Vec<C::Elem> = pts.iter().map(|x| l.eval(x)).collect::<Result<_>>()?;
            for w in 0..vals.len().saturating_sub(1) {
                if !c.prec(&vals[w], &vals[w + 1]) {
                    return Err(Error::Path(format!(
                        "lazy path not increasing between {} and {}",
                        fmt_rat(&pts[w]),
                        fmt_rat(&pts[w + 1])
                    )));
                }
            }
            Ok(())
        }
    }
}

/// `p ≾ q`.
pub fn path_compare<C: PathCarrier>(c: &C, p: &PathExpr<C::Elem>, q: &PathExpr<C::Elem>) -> Cmp {
    match (classify(c, p), classify(c, q)) {
        (Some(f), Some(g)) => {
            if c.class_leq(&f, &g) {
                Cmp::Le
            } else {
                Cmp::Nle
            }
        }
        _ => Cmp::Unknown,
    }
}

/// `[p] ≪ [q]`, decided through `∃μ ∀λ p(λ) ≺ q(μ)`.
pub fn path_waybelow<C: PathCarrier>(c: &C, p: &PathExpr<C::Elem>, q: &PathExpr<C::Elem>) -> Tri {
    match (classify(c, p), classify(c, q)) {
        (Some(f), Some(g)) => c.class_waybelow(&f, &g).into(),
        _ => Tri::Unknown,
    }
}

pub fn cut_down<E>(p: &PathExpr<E>, eps: &RationalIndex) -> PathExpr<E>
where
    E: Clone,
{
    PathExpr::CutDown(Box::new(p.clone()), eps.value().clone())
}

/// Path `γ ↦ f(γλ + (1-γ)λ')`, whose values lie between `f(λ')` and `f(λ)`.
pub fn interpolate<E: Clone>(p: &PathExpr<E>, lo: &RationalIndex, hi: &RationalIndex) -> Result<PathExpr<E>> {
    if lo >= hi {
        return Err(Error::Precondition("interpolation needs λ' < λ".into()));
    }
    Ok(PathExpr::Affine { path: Box::new(p.clone()), scale: hi.value() - lo.value(), shift: lo.value().clone() })
}

fn witness_index<C: PathCarrier>(c: &C, below: &C::Elem, g: &PathExpr<C::Elem>) -> Result<Rat> {
    let two = BigInt::from(2);
    for j in 1..=64u32 {
        let mu = Rat::one() - Rat::new(BigInt::one(), two.pow(j));
        if c.prec(below, &eval_at(c, g, &mu)?) {
            return Ok(mu);
        }
    }
    Err(Error::Path(format!("no index μ ≤ 1-2^-64 with {} ≺ g(μ)", c.format(below))))
}

/// Supremum of an increasing list of paths. Segment `n` (ending at
/// `n/(n+1)`) runs through `f_n` up to an index `λ_n`, and starts where
/// `f_{n-1}(λ_{n-1}) ≺ f_n(μ_n)`; the last segment runs through `f_m` up to 1.
pub fn path_sup<C: PathCarrier>(c: &C, fs: &[PathExpr<C::Elem>]) -> Result<PathExpr<C::Elem>> {
    if fs.is_empty() {
        return Ok(PathExpr::Const(c.zero()));
    }
    for w in fs.windows(2) {
        match path_compare(c, &w[0], &w[1]) {
            Cmp::Le => {}
            Cmp::Nle => return Err(Error::Precondition("paths are not increasing".into())),
            Cmp::Unknown => return Err(Error::Precondition("cannot decide whether paths increase".into())),
        }
    }
    if fs.len() == 1 {
        return Ok(fs[0].clone());
    }
    let m = fs.len();
    let half = Rat::new(1.into(), 2.into());
    let mut pieces = Vec::with_capacity(m);
    let mut mu = zero_rat();
    let mut start = zero_rat();
    for (n, f) in fs.iter().enumerate() {
        let last = n + 1 == m;
        let end = if last { Rat::one() } else { Rat::new(BigInt::from(n + 1), BigInt::from(n + 2)) };
        let lam = if last { Rat::one() } else { (&mu + Rat::one()) * &half };
        let scale = (&lam - &mu) / (&end - &start);
        let shift = &mu - &start * &scale;
        pieces.push((end.clone(), PathExpr::Affine { path: Box::new(f.clone()), scale, shift }));
        if !last {
            let reached = eval_at(c, f, &lam)?;
            mu = witness_index(c, &reached, &fs[n + 1])?;
            start = end;
        }
    }
    Ok(PathExpr::Stitched(pieces))
}

/// Supremum of an infinite increasing sequence of paths, built lazily by the
/// construction of [`path_sup`]. The class of the result is `limit`, which
/// the caller supplies; it is checked to dominate the first `check` terms.
pub fn path_sup_sequence<C>(
    c: Arc<C>,
    seq: Arc<dyn Fn(usize) -> PathExpr<C::Elem> + Send + Sync>,
    limit: PathClass<C::Elem>,
    check: usize,
) -> Result<PathExpr<C::Elem>>
where
    C: PathCarrier + 'static,
{
    for n in 1..=check {
        let f = classify(c.as_ref(), &seq(n)).ok_or_else(|| Error::Precondition("unclassifiable term".into()))?;
        if !c.class_leq(&f, &limit) {
            return Err(Error::Precondition(format!("term {n} exceeds the supplied limit")));
        }
    }
    // knots[n-1] = (μ_n, λ_n) for segment n, computed on demand.
    let knots: Arc<Mutex<Vec<(Rat, Rat)>>> = Arc::new(Mutex::new(Vec::new()));
    let carrier = c.clone();
    let eval = move |lambda: &Rat| -> Result<C::Elem> {
        let c = carrier.as_ref();
        // Segment n covers [(n-1)/n, n/(n+1)), i.e. n = floor(1/(1-λ)).
        let inv = Rat::one() / (Rat::one() - lambda);
        let n: usize = inv.floor().to_integer().try_into().map_err(|_| Error::Path("index too close to 1".into()))?;
        let mut k = knots.lock().expect("knot cache poisoned");
        let half = Rat::new(1.into(), 2.into());
        while k.len() < n {
            let i = k.len() + 1;
            let mu = match k.last() {
                None => zero_rat(),
                Some((_, prev_lam)) => {
                    let reached = eval_at(c, &seq(i - 1), prev_lam)?;
                    witness_index(c, &reached, &seq(i))?
                }
            };
            let lam = (&mu + Rat::one()) * &half;
            k.push((mu, lam));
        }
        let (mu, lam) = k[n - 1].clone();
        drop(k);
        let start = Rat::new(BigInt::from(n - 1), BigInt::from(n));
        let end = Rat::new(BigInt::from(n), BigInt::from(n + 1));
        let arg = &mu + (lambda - &start) * (&lam - &mu) / (&end - &start);
        eval_at(c, &seq(n), &arg)
    };
    Ok(PathExpr::Lazy(Arc::new(LazyPath::new("sup", Some(limit), Box::new(eval)))))
}

/// `τ(α)`: the path `α∘p`. `α` must preserve `≺`, and commute with the
/// carrier scaling when `p` contains scaled pieces.
pub fn tau_of_morphism<E, F>(alpha: Arc<dyn Fn(&E) -> F + Send + Sync>, p: &PathExpr<E>) -> PathExpr<F>
where
    E: Clone + Send + Sync + 'static,
    F: Clone + Send + Sync + 'static,
{
    match p {
        PathExpr::Const(a) => PathExpr::Const(alpha(a)),
        PathExpr::Scaled(a) => PathExpr::Scaled(alpha(a)),
        PathExpr::Stitched(ps) => {
            PathExpr::Stitched(ps.iter().map(|(c, q)| (c.clone(), tau_of_morphism(alpha.clone(), q))).collect())
        }
        PathExpr::CutDown(f, e) => PathExpr::CutDown(Box::new(tau_of_morphism(alpha, f)), e.clone()),
        PathExpr::Sum(f, g) => PathExpr::sum(tau_of_morphism(alpha.clone(), f), tau_of_morphism(alpha, g)),
        PathExpr::Affine { path, scale, shift } => PathExpr::Affine {
            path: Box::new(tau_of_morphism(alpha, path)),
            scale: scale.clone(),
            shift: shift.clone(),
        },
        PathExpr::Lazy(l) => {
            let inner = l.clone();
            let a2 = alpha.clone();
            let class = l.class.as_ref().map(|k| PathClass::new(alpha(&k.endpoint), k.attained));
            PathExpr::Lazy(Arc::new(LazyPath::new(
                format!("mapped {}", l.label),
                class,
                Box::new(move |x: &Rat| inner.eval(x).map(|v| a2(&v))),
            )))
        }
    }
}

/// `τ(α)` on a finite Q-semigroup: the restriction of the table `alpha`
/// to self-related elements, after checking that `alpha` preserves `≺`.
pub fn tau_of_finite_morphism(s: &FiniteQ, t: &FiniteQ, alpha: &[usize]) -> Result<Vec<(usize, usize)>> {
    let n = s.len();
    for a in 0..n {
        for b in 0..n {
            if s.prec(a, b) && !t.prec(alpha[a], alpha[b]) {
                return Err(Error::Precondition(format!(
                    "map does not preserve ≺ at ({},{})",
                    s.pom.label(a),
                    s.pom.label(b)
                )));
            }
        }
    }
    Ok(s.self_related().into_iter().map(|a| (a, alpha[a])).collect())
}

/// Dyadic index `i/2^n` with `i` odd.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Dyadic {
    pub level: u32,
    pub index: String,
}

impl Dyadic {
    fn from_rat(r: &Rat) -> Dyadic {
        let level = r.denom().bits() as u32 - 1;
        Dyadic { level, index: r.numer().to_string() }
    }
}

fn mediant(a: &Rat, b: &Rat) -> Rat {
    Rat::new(a.numer() + b.numer(), a.denom() + b.denom())
}

/// Rational of smallest Stern–Brocot depth in the open interval `(lo, hi)`.
fn simplest_rational(lo: &Rat, hi: &Rat) -> Rat {
    let (mut l, mut r) = (Rat::zero(), Rat::one());
    loop {
        let m = mediant(&l, &r);
        if m <= *lo {
            l = m;
        } else if m >= *hi {
            r = m;
        } else {
            return m;
        }
    }
}

/// Dyadic of smallest level in the open interval `(lo, hi)`.
fn simplest_dyadic(lo: &Rat, hi: &Rat) -> Rat {
    let (mut l, mut r) = (Rat::zero(), Rat::one());
    let half = Rat::new(1.into(), 2.into());
    loop {
        let m = (&l + &r) * &half;
        if m <= *lo {
            l = m;
        } else if m >= *hi {
            r = m;
        } else {
            return m;
        }
    }
}

/// Dyadic with the same Stern–Brocot address as `q ∈ (0,1)`. This is the
/// limit of the back-and-forth in [`CantorIso`], computed without stepping.
pub fn dyadic_of_rational(q: &Rat) -> Rat {
    let (mut l, mut r) = (Rat::zero(), Rat::one());
    let (mut dl, mut dr) = (Rat::zero(), Rat::one());
    let half = Rat::new(1.into(), 2.into());
    loop {
        let m = mediant(&l, &r);
        let dm = (&dl + &dr) * &half;
        if m == *q {
            return dm;
        }
        if m < *q {
            l = m;
            dl = dm;
        } else {
            r = m;
            dr = dm;
        }
    }
}

/// Inverse of [`dyadic_of_rational`].
pub fn rational_of_dyadic(d: &Rat) -> Rat {
    let (mut l, mut r) = (Rat::zero(), Rat::one());
    let (mut dl, mut dr) = (Rat::zero(), Rat::one());
    let half = Rat::new(1.into(), 2.into());
    loop {
        let m = mediant(&l, &r);
        let dm = (&dl + &dr) * &half;
        if dm == *d {
            return m;
        }
        if dm < *d {
            l = m;
            dl = dm;
        } else {
            r = m;
            dr = dm;
        }
    }
}

/// Breadth-first Stern–Brocot enumeration of `Q ∩ (0,1)`: 1/2, 1/3, 2/3, 1/4, 2/5, ...
#[derive(Default)]
struct SternBrocot {
    seq: Vec<Rat>,
    emitted: Vec<Rat>,
}

impl SternBrocot {
    fn get(&mut self, i: usize) -> &Rat {
        if self.seq.is_empty() {
            self.seq = vec![Rat::zero(), Rat::one()];
        }
        while self.emitted.len() <= i {
            let mut next = Vec::with_capacity(self.seq.len() * 2);
            for w in self.seq.windows(2) {
                next.push(w[0].clone());
                let m = mediant(&w[0], &w[1]);
                self.emitted.push(m.clone());
                next.push(m);
            }
            next.push(Rat::one());
            self.seq = next;
        }
        &self.emitted[i]
    }
}

fn dyadic_at(i: usize) -> Rat {
    // Level order: 1/2, 1/4, 3/4, 1/8, ...
    let level = usize::BITS - (i + 1).leading_zeros();
    let first = (1usize << (level - 1)) - 1;
    let odd = 2 * (i - first) + 1;
    Rat::new(BigInt::from(odd), BigInt::one() << level)
}

/// Back-and-forth order isomorphism between the dyadic rationals in `(0,1)`
/// and `Q ∩ (0,1)`. Even steps match the first unmatched dyadic (level
/// order), odd steps the first unmatched rational (Stern–Brocot order); each
/// partner is the simplest candidate in the gap its neighbours leave.
#[derive(Default)]
pub struct CantorIso {
    forward: BTreeMap<Rat, Rat>,
    backward: BTreeMap<Rat, Rat>,
    steps: Vec<(Rat, Rat)>,
    next_dyadic: usize,
    next_rational: usize,
    sb: SternBrocot,
}

fn gap(map: &BTreeMap<Rat, Rat>, x: &Rat) -> (Rat, Rat) {
    let lo = map.range(..x.clone()).next_back().map(|(_, v)| v.clone()).unwrap_or_else(Rat::zero);
    let hi = map.range(x.clone()..).next().map(|(_, v)| v.clone()).unwrap_or_else(Rat::one);
    (lo, hi)
}

impl CantorIso {
    pub fn new() -> CantorIso {
        CantorIso::default()
    }

    fn step(&mut self) {
        if self.steps.len().is_multiple_of(2) {
            while self.forward.contains_key(&dyadic_at(self.next_dyadic)) {
                self.next_dyadic += 1;
            }
            let d = dyadic_at(self.next_dyadic);
            let (lo, hi) = gap(&self.forward, &d);
            let q = simplest_rational(&lo, &hi);
            self.insert(d, q);
        } else {
            while self.backward.contains_key(self.sb.get(self.next_rational)) {
                self.next_rational += 1;
            }
            let q = self.sb.get(self.next_rational).clone();
            let (lo, hi) = gap(&self.backward, &q);
            let d = simplest_dyadic(&lo, &hi);
            self.insert(d, q);
        }
    }

    fn insert(&mut self, d: Rat, q: Rat) {
        self.forward.insert(d.clone(), q.clone());
        self.backward.insert(q.clone(), d.clone());
        self.steps.push((d, q));
    }

    /// First `k` matched pairs `(dyadic, rational)` in step order.
    pub fn pairs(&mut self, k: usize) -> Vec<(Rat, Rat)> {
        while self.steps.len() < k {
            self.step();
        }
        self.steps[..k].to_vec()
    }

    pub fn image(&mut self, dyadic: &Rat) -> Rat {
        while !self.forward.contains_key(dyadic) {
            self.step();
        }
        self.forward[dyadic].clone()
    }

    pub fn preimage(&mut self, q: &Rat) -> Rat {
        while !self.backward.contains_key(q) {
            self.step();
        }
        self.backward[q].clone()
    }
}

/// First `k` steps of the back-and-forth isomorphism, as `(dyadic, rational)` pairs.
pub fn cantor_iso(k: usize) -> Vec<(Dyadic, Rat)> {
    CantorIso::new().pairs(k).into_iter().map(|(d, q)| (Dyadic::from_rat(&d), q)).collect()
}

/// Oracles feeding [`dyadic_chain`].
pub trait ChainOracle<E>: Send + Sync {
    /// `a_n` for `n ≥ 1`, with `a_n ≺ a_{n+1} ≺ a`, cofinal below `a`.
    fn cofinal(&self, n: usize) -> E;
    /// Some `b₃` with `b₁, b₂ ≺ b₃ ≺ b`.
    fn interp(&self, b1: &E, b2: &E, b: &E) -> E;
    /// Class of the resulting path, when the oracle knows it.
    fn limit_class(&self) -> Option<PathClass<E>> {
        None
    }
}

struct Chain<C: PathCarrier> {
    carrier: Arc<C>,
    target: C::Elem,
    oracle: Arc<dyn ChainOracle<C::Elem>>,
    values: Mutex<HashMap<Rat, C::Elem>>,
}

impl<C: PathCarrier> Chain<C> {
    fn check(&self, a: &C::Elem, b: &C::Elem, what: &str) -> Result<()> {
        if self.carrier.prec(a, b) {
            Ok(())
        } else {
            Err(Error::Path(format!("{what}: {} is not ≺ {}", self.carrier.format(a), self.carrier.format(b))))
        }
    }

    fn interp(&self, b1: &C::Elem, b2: &C::Elem, b: &C::Elem) -> Result<C::Elem> {
        let b3 = self.oracle.interp(b1, b2, b);
        self.check(b1, &b3, "interpolation")?;
        self.check(b2, &b3, "interpolation")?;
        self.check(&b3, b, "interpolation")?;
        Ok(b3)
    }

    fn cofinal(&self, n: usize) -> Result<C::Elem> {
        let a = self.oracle.cofinal(n);
        self.check(&a, &self.target, "cofinal sequence")?;
        Ok(a)
    }

    /// Chain entry at the dyadic `d = i/2^n`.
    fn value(&self, d: &Rat) -> Result<C::Elem> {
        if let Some(v) = self.values.lock().expect("chain cache poisoned").get(d) {
            return Ok(v.clone());
        }
        let level = d.denom().bits() - 1;
        let step = Rat::new(BigInt::one(), d.denom().clone());
        let v = if level == 1 {
            let a1 = self.cofinal(1)?;
            self.interp(&a1, &a1, &self.target)?
        } else if *d == step {
            let z = self.carrier.zero();
            self.interp(&z, &z, &self.value(&(&step * BigInt::from(2)))?)?
        } else if *d == Rat::one() - &step {
            let below = self.value(&(Rat::one() - &step * BigInt::from(2)))?;
            let an = self.cofinal(level as usize)?;
            self.interp(&below, &an, &self.target)?
        } else {
            let lo = self.value(&(d - &step))?;
            let hi = self.value(&(d + &step))?;
            self.interp(&lo, &lo, &hi)?
        };
        self.values.lock().expect("chain cache poisoned").insert(d.clone(), v.clone());
        Ok(v)
    }
}

/// The dyadic chain below `a`, reindexed over `Q ∩ (0,1)` through [`CantorIso`].
pub fn dyadic_chain<C>(c: Arc<C>, a: C::Elem, oracle: Arc<dyn ChainOracle<C::Elem>>) -> PathExpr<C::Elem>
where
    C: PathCarrier + 'static,
{
    if a == c.zero() {
        return PathExpr::Const(a);
    }
    let class = oracle.limit_class();
    let chain = Arc::new(Chain { carrier: c, target: a, oracle, values: Mutex::new(HashMap::new()) });
    let eval = move |lambda: &Rat| -> Result<C::Elem> { chain.value(&dyadic_of_rational(lambda)) };
    PathExpr::Lazy(Arc::new(LazyPath::new("dyadic chain", class, Box::new(eval))))
}

/// Index at which a dyadic chain takes its top level-`n` entry `a^{(n)}_{2^n-1}`,
/// which dominates the `n`-th cofinal element.
pub fn chain_top_index(n: u32) -> Rat {
    rational_of_dyadic(&(Rat::one() - Rat::new(BigInt::one(), BigInt::one() << n)))
}

/// Chain oracle on `P̄` below `a`: `a_n = a - a/(n+1)`, or `n` when `a = ∞`,
/// interpolating by midpoints.
pub struct RealToward(pub Ext);

impl ChainOracle<Ext> for RealToward {
    fn cofinal(&self, n: usize) -> Ext {
        match &self.0 {
            Ext::Fin(a) => Ext::Fin(a - a / Rat::from_integer(BigInt::from(n + 1))),
            Ext::Inf => Ext::int(n as i64),
        }
    }

    fn interp(&self, b1: &Ext, b2: &Ext, b: &Ext) -> Ext {
        let m = b1.clone().max(b2.clone());
        match (m, b) {
            (Ext::Fin(x), Ext::Fin(y)) => Ext::Fin((x + y) / Rat::from_integer(BigInt::from(2))),
            (Ext::Fin(x), Ext::Inf) => Ext::Fin(x + Rat::one()),
            (m, _) => m,
        }
    }

    fn limit_class(&self) -> Option<PathClass<Ext>> {
        Some(PathClass::new(self.0.clone(), false))
    }
}

/// Chain oracle below a self-related element of a finite Q-semigroup: the
/// constant chain.
pub struct FiniteStay(pub usize);

impl ChainOracle<usize> for FiniteStay {
    fn cofinal(&self, _n: usize) -> usize {
        self.0
    }

    fn interp(&self, _b1: &usize, _b2: &usize, _b: &usize) -> usize {
        self.0
    }

    fn limit_class(&self) -> Option<PathClass<usize>> {
        Some(PathClass::new(self.0, true))
    }
}

pub mod corpus {
    //! Seeded random path expressions that pass [`validate`].

    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::numbers::rat;

    fn cuts() -> Vec<Rat> {
        [(1, 8), (1, 4), (1, 3), (1, 2), (2, 3), (3, 4)].iter().map(|&(n, d)| rat(n, d)).collect()
    }

    fn random_expr<E: Clone, R: Rng>(rng: &mut R, atoms: &[PathExpr<E>], depth: usize) -> PathExpr<E> {
        let leaf = atoms.choose(rng).expect("atoms").clone();
        if depth == 0 {
            return leaf;
        }
        match rng.gen_range(0..5) {
            0 | 1 => leaf,
            2 => PathExpr::CutDown(
                Box::new(random_expr(rng, atoms, depth - 1)),
                cuts().choose(rng).expect("cuts").clone(),
            ),
            3 => PathExpr::sum(random_expr(rng, atoms, depth - 1), random_expr(rng, atoms, depth - 1)),
            _ => {
                let c = cuts().choose(rng).expect("cuts").clone();
                PathExpr::stitch(vec![
                    (c, random_expr(rng, atoms, depth - 1)),
                    (Rat::one(), random_expr(rng, atoms, depth - 1)),
                ])
            }
        }
    }

    fn collect<C: PathCarrier>(c: &C, atoms: &[PathExpr<C::Elem>], count: usize, seed: u64) -> Vec<PathExpr<C::Elem>> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut out: Vec<PathExpr<C::Elem>> = atoms.iter().filter(|p| validate(c, p).is_ok()).cloned().collect();
        out.truncate(count);
        let mut attempts = 0;
        while out.len() < count && attempts < 200 * count {
            attempts += 1;
            let p = random_expr(&mut rng, atoms, 2);
            if validate(c, &p).is_ok() {
                out.push(p);
            }
        }
        out
    }

    /// Constants at self-related elements, combined by cut-downs, sums and stitching.
    pub fn finite_paths(s: &FiniteQ, count: usize, seed: u64) -> Vec<PathExpr<usize>> {
        let atoms: Vec<PathExpr<usize>> = s.self_related().into_iter().map(PathExpr::Const).collect();
        collect(s, &atoms, count, seed)
    }

    /// Constants and linear ramps on `P̄`, combined as in [`finite_paths`].
    pub fn real_paths(c: &RealAux, count: usize, seed: u64) -> Vec<PathExpr<Ext>> {
        let values: Vec<Ext> = [(0, 1), (1, 2), (1, 1), (3, 2), (2, 1), (3, 1)]
            .iter()
            .map(|&(n, d)| Ext::Fin(rat(n, d)))
            .chain([Ext::Inf])
            .collect();
        let atoms: Vec<PathExpr<Ext>> =
            values.iter().flat_map(|v| [PathExpr::Const(v.clone()), PathExpr::Scaled(v.clone())]).collect();
        collect(c, &atoms, count, seed)
    }
}

pub mod steps {
    //! Step paths over finite Q-semigroups, used as a brute-force model of τ.

    use super::*;
    use crate::order::Pom;

    /// Segments in index order: `(0,c₁)`, `{c₁}`, `(c₁,c₂)`, ..., `(c_b,1)`.
    #[derive(Clone, Debug, PartialEq, Eq, Hash)]
    pub struct StepPath {
        pub cuts: Vec<Rat>,
        /// Values on the `cuts.len()+1` open intervals.
        pub intervals: Vec<usize>,
        /// Values at the cuts.
        pub points: Vec<usize>,
    }

    impl StepPath {
        pub fn constant(a: usize) -> StepPath {
            StepPath { cuts: vec![], intervals: vec![a], points: vec![] }
        }

        pub fn eval(&self, lambda: &Rat) -> usize {
            for (i, c) in self.cuts.iter().enumerate() {
                if lambda < c {
                    return self.intervals[i];
                }
                if lambda == c {
                    return self.points[i];
                }
            }
            *self.intervals.last().unwrap()
        }

        /// Segment values in index order.
        pub fn segments(&self) -> Vec<usize> {
            let mut out = Vec::with_capacity(2 * self.cuts.len() + 1);
            for i in 0..self.cuts.len() {
                out.push(self.intervals[i]);
                out.push(self.points[i]);
            }
            out.push(*self.intervals.last().unwrap());
            out
        }

        pub fn is_valid(&self, s: &FiniteQ) -> bool {
            self.intervals.iter().all(|&v| s.prec(v, v)) && self.segments().windows(2).all(|w| s.prec(w[0], w[1]))
        }

        /// Pointwise sum over the common refinement of the cuts.
        pub fn add(&self, other: &StepPath, p: &Pom) -> StepPath {
            let mut cuts: Vec<Rat> = self.cuts.iter().chain(other.cuts.iter()).cloned().collect();
            cuts.sort();
            cuts.dedup();
            let mut bounds = vec![Rat::zero()];
            bounds.extend(cuts.iter().cloned());
            bounds.push(Rat::one());
            let half = Rat::new(1.into(), 2.into());
            let intervals = bounds
                .windows(2)
                .map(|w| {
                    let mid = (&w[0] + &w[1]) * &half;
                    p.sum(self.eval(&mid), other.eval(&mid))
                })
                .collect();
            let points = cuts.iter().map(|c| p.sum(self.eval(c), other.eval(c))).collect();
            StepPath { cuts, intervals, points }
        }

        /// `self ≾ other`: `∀λ ∃μ self(λ) ≺ other(μ)`, over segments.
        pub fn below(&self, other: &StepPath, s: &FiniteQ) -> bool {
            let theirs = other.segments();
            self.segments().iter().all(|&v| theirs.iter().any(|&w| s.prec(v, w)))
        }

        /// `∃μ ∀λ self(λ) ≺ other(μ)`, over segments.
        pub fn way_below(&self, other: &StepPath, s: &FiniteQ) -> bool {
            let mine = self.segments();
            other.segments().iter().any(|&w| mine.iter().all(|&v| s.prec(v, w)))
        }

        pub fn to_expr(&self) -> Option<PathExpr<usize>> {
            if self.points.iter().zip(&self.intervals[1..]).any(|(p, i)| p != i) {
                return None;
            }
            if self.cuts.is_empty() {
                return Some(PathExpr::Const(self.intervals[0]));
            }
            let mut ends: Vec<Rat> = self.cuts.clone();
            ends.push(Rat::one());
            Some(PathExpr::Stitched(
                ends.into_iter().zip(&self.intervals).map(|(c, &v)| (c, PathExpr::Const(v))).collect(),
            ))
        }
    }

    fn cut_set(b: usize) -> Vec<Rat> {
        (1..=b).map(|i| Rat::new(BigInt::from(i), BigInt::from(b + 1))).collect()
    }

    /// Every valid step path with at most `max_breaks` cuts, cuts evenly spaced.
    pub fn enumerate(s: &FiniteQ, max_breaks: usize) -> Vec<StepPath> {
        let mut out = Vec::new();
        for b in 0..=max_breaks {
            let cuts = cut_set(b);
            let mut seg = Vec::with_capacity(2 * b + 1);
            extend(s, b, &cuts, &mut seg, &mut out);
        }
        out
    }

    fn extend(s: &FiniteQ, b: usize, cuts: &[Rat], seg: &mut Vec<usize>, out: &mut Vec<StepPath>) {
        if seg.len() == 2 * b + 1 {
            let intervals = seg.iter().step_by(2).copied().collect();
            let points = seg.iter().skip(1).step_by(2).copied().collect();
            out.push(StepPath { cuts: cuts.to_vec(), intervals, points });
            return;
        }
        let is_interval = seg.len().is_multiple_of(2);
        for v in 0..s.len() {
            if is_interval && !s.prec(v, v) {
                continue;
            }
            if let Some(&last) = seg.last() {
                if !s.prec(last, v) {
                    continue;
                }
            }
            seg.push(v);
            extend(s, b, cuts, seg, out);
            seg.pop();
        }
    }

    /// τ computed from step paths: classes of mutual `≾`, with order,
    /// addition and way-below evaluated on representatives.
    #[derive(Clone, Debug)]
    pub struct BruteTau {
        pub reps: Vec<StepPath>,
        pub leq: Vec<Vec<bool>>,
        pub add: Vec<Vec<usize>>,
        pub waybelow: Vec<Vec<bool>>,
        pub zero: usize,
    }

    impl BruteTau {
        pub fn class_of(&self, f: &StepPath, s: &FiniteQ) -> Option<usize> {
            self.reps.iter().position(|r| r.below(f, s) && f.below(r, s))
        }

        pub fn to_pom(&self) -> Pom {
            let labels = (0..self.reps.len()).map(|i| format!("c{i}")).collect();
            Pom::new(labels, self.zero, self.add.clone(), self.leq.clone()).expect("square tables")
        }
    }

    pub fn brute_tau(s: &FiniteQ, max_breaks: usize) -> BruteTau {
        let mut reps: Vec<StepPath> = Vec::new();
        for f in enumerate(s, max_breaks) {
            if !reps.iter().any(|r| r.below(&f, s) && f.below(r, s)) {
                reps.push(f);
            }
        }
        let n = reps.len();
        let leq = (0..n).map(|i| (0..n).map(|j| reps[i].below(&reps[j], s)).collect()).collect();
        let waybelow = (0..n).map(|i| (0..n).map(|j| reps[i].way_below(&reps[j], s)).collect()).collect();
        let class =
            |f: &StepPath| reps.iter().position(|r| r.below(f, s) && f.below(r, s)).expect("sum of paths has a class");
        let add = (0..n).map(|i| (0..n).map(|j| class(&reps[i].add(&reps[j], &s.pom))).collect()).collect();
        let zero = class(&StepPath::constant(s.pom.zero));
        BruteTau { reps, leq, add, waybelow, zero }
    }
}
