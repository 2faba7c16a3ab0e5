//! Bivariant Cu-semigroups `⟦S,T⟧`.
//!
//! Two engines sit behind [`bivariant`]. When both carriers are finite the
//! hom Q-semigroup is enumerated and τ is applied to it; its elements are
//! the self-related (Cu-)morphisms. Otherwise a closed form identifies
//! `⟦S,T⟧` with a catalog carrier, together with executable maps between
//! coordinates and endpoint morphisms. Pairs without a closed form are
//! refused rather than approximated.

use std::collections::HashMap;
use std::fmt;
use std::path::Path;

use serde::Serialize;

use crate::catalog::{fact_table, facts, kronecker, mat_mul, Carrier, CatElem, PrimeSet};
use crate::finite::{isomorphism, morphisms, quotient, tau_finite, FiniteCu, FiniteQ, Ideal, Tau};
use crate::numbers::{Ext, NInf};
use crate::order::{AuxRelation, Pom};
use crate::structure_file::StructureFile;
use crate::{Error, Result};

/// A carrier: a finite table or a catalog carrier. `E_k` is always finite.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Space {
    Finite { name: String, cu: FiniteCu },
    Cat(Carrier),
}

/// An element of a [`Space`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Value {
    Idx(usize),
    Cat(CatElem),
}

impl Value {
    pub fn idx(&self) -> Result<usize> {
        match self {
            Value::Idx(i) => Ok(*i),
            Value::Cat(e) => Err(Error::Mismatch(format!("{e} is not a finite element"))),
        }
    }

    pub fn cat(&self) -> Result<&CatElem> {
        match self {
            Value::Cat(e) => Ok(e),
            Value::Idx(i) => Err(Error::Mismatch(format!("element #{i} is not a catalog element"))),
        }
    }
}

impl Space {
    pub fn named(name: &str) -> Result<Space> {
        let c = Carrier::parse(name)?;
        Ok(Space::from_carrier(c))
    }

    pub fn from_carrier(c: Carrier) -> Space {
        match c {
            Carrier::E(k) => Space::Finite { name: format!("E{k}"), cu: FiniteCu::e_k(k as usize) },
            c => Space::Cat(c),
        }
    }

    pub fn finite(name: impl Into<String>, cu: FiniteCu) -> Space {
        Space::Finite { name: name.into(), cu }
    }

    pub fn name(&self) -> String {
        match self {
            Space::Finite { name, .. } => name.clone(),
            Space::Cat(c) => c.to_string(),
        }
    }

    pub fn finite_cu(&self) -> Option<&FiniteCu> {
        match self {
            Space::Finite { cu, .. } => Some(cu),
            Space::Cat(_) => None,
        }
    }

    pub fn carrier(&self) -> Option<&Carrier> {
        match self {
            Space::Cat(c) => Some(c),
            Space::Finite { .. } => None,
        }
    }

    pub fn zero(&self) -> Value {
        match self {
            Space::Finite { cu, .. } => Value::Idx(cu.pom.zero),
            Space::Cat(c) => Value::Cat(c.zero()),
        }
    }

    pub fn add(&self, a: &Value, b: &Value) -> Result<Value> {
        Ok(match self {
            Space::Finite { cu, .. } => Value::Idx(cu.pom.sum(a.idx()?, b.idx()?)),
            Space::Cat(c) => Value::Cat(c.add(a.cat()?, b.cat()?)),
        })
    }

    pub fn leq(&self, a: &Value, b: &Value) -> Result<bool> {
        Ok(match self {
            Space::Finite { cu, .. } => cu.pom.le(a.idx()?, b.idx()?),
            Space::Cat(c) => c.leq(a.cat()?, b.cat()?),
        })
    }

    pub fn waybelow(&self, a: &Value, b: &Value) -> Result<bool> {
        Ok(match self {
            Space::Finite { cu, .. } => cu.pom.le(a.idx()?, b.idx()?),
            Space::Cat(c) => c.waybelow(a.cat()?, b.cat()?),
        })
    }

    pub fn is_compact(&self, a: &Value) -> Result<bool> {
        self.waybelow(a, a)
    }

    pub fn format(&self, a: &Value) -> String {
        match (self, a) {
            (Space::Finite { cu, .. }, Value::Idx(i)) if *i < cu.len() => cu.pom.label(*i).to_string(),
            (_, Value::Cat(e)) => e.to_string(),
            (_, Value::Idx(i)) => format!("#{i}"),
        }
    }

    pub fn parse(&self, s: &str) -> Result<Value> {
        match self {
            Space::Finite { cu, .. } => cu
                .pom
                .index_of(s.trim())
                .map(Value::Idx)
                .ok_or_else(|| Error::Element(format!("no element {s:?} in {}", self.name()))),
            Space::Cat(c) => c.parse_elem(s).map(Value::Cat),
        }
    }

    /// Every element of a finite space, or a deterministic sample.
    pub fn samples(&self, n: usize, seed: u64) -> Vec<Value> {
        match self {
            Space::Finite { cu, .. } => (0..cu.len()).map(Value::Idx).collect(),
            Space::Cat(c) => c.sample(n, seed).into_iter().map(Value::Cat).collect(),
        }
    }

    /// `n·a`; for `n = ∞` the supremum of the finite multiples.
    pub fn nmul(&self, n: NInf, a: &Value) -> Result<Value> {
        match (self, n) {
            (Space::Finite { cu, .. }, NInf::Fin(k)) => Ok(Value::Idx(cu.pom.multiple(k as usize, a.idx()?))),
            // Multiples form an increasing chain in a finite poset, so they
            // stabilize within `len` steps.
            (Space::Finite { cu, .. }, NInf::Inf) => Ok(Value::Idx(cu.pom.multiple(cu.len(), a.idx()?))),
            (Space::Cat(c), n) => Ok(Value::Cat(nmul_cat(c, n, a.cat()?))),
        }
    }

    fn check(&self, a: &Value) -> Result<()> {
        match (self, a) {
            (Space::Finite { cu, .. }, Value::Idx(i)) if *i < cu.len() => Ok(()),
            (Space::Cat(c), Value::Cat(e)) => c.check(e),
            _ => Err(Error::Mismatch(format!("{} is not an element of {}", self.format(a), self.name()))),
        }
    }
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

pub(crate) fn nmul_cat(c: &Carrier, n: NInf, a: &CatElem) -> CatElem {
    match n {
        NInf::Fin(k) => (0..k).fold(c.zero(), |acc, _| c.add(&acc, a)),
        NInf::Inf => {
            let inf_n = |x: &NInf| if x.is_zero() { NInf::ZERO } else { NInf::Inf };
            match a {
                CatElem::N(x) => CatElem::N(inf_n(x)),
                CatElem::Tuple(v) => CatElem::Tuple(v.iter().map(inf_n).collect()),
                CatElem::Mat(m) => CatElem::Mat(m.iter().map(|r| r.iter().map(inf_n).collect()).collect()),
                CatElem::X(x) if x.is_zero() => a.clone(),
                CatElem::X(_) => CatElem::X(Ext::Inf),
                CatElem::Cpt(x) if x.is_zero() || x.is_inf() => a.clone(),
                CatElem::Cpt(_) | CatElem::Soft(_) => CatElem::Soft(Ext::Inf),
            }
        }
    }
}

/// Number of `N̄` coordinates of a free carrier.
fn free_rank(c: &Carrier) -> Option<usize> {
    match c {
        Carrier::NBar => Some(1),
        Carrier::NBarPow(k) => Some(*k),
        Carrier::Mat { rows, cols } => Some(rows * cols),
        _ => None,
    }
}

fn flatten(e: &CatElem) -> Result<Vec<NInf>> {
    match e {
        CatElem::N(x) => Ok(vec![*x]),
        CatElem::Tuple(v) => Ok(v.clone()),
        CatElem::Mat(m) => Ok(m.iter().flatten().copied().collect()),
        _ => Err(Error::Mismatch(format!("{e} has no N̄ coordinates"))),
    }
}

fn unflatten(c: &Carrier, v: Vec<NInf>) -> CatElem {
    match c {
        Carrier::NBar => CatElem::N(v[0]),
        Carrier::Mat { cols, .. } => CatElem::Mat(v.chunks(*cols).map(|r| r.to_vec()).collect()),
        _ => CatElem::Tuple(v),
    }
}

fn column(v: &[NInf]) -> Vec<Vec<NInf>> {
    v.iter().map(|x| vec![*x]).collect()
}

/// Generalized Cu-morphism: additive, monotone, zero- and sup-preserving.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GenMorphism {
    Zero,
    /// Value table of a map between finite carriers.
    Table(Vec<usize>),
    /// `x ↦ c·x`, compact and soft parts multiplied as in the target.
    Scalar(CatElem),
    /// `x ↦ (a·x)'`, landing in the soft part of the target.
    SoftScalar(Ext),
    /// `a ↦ t·a` on `S_ex`, values above 1 becoming `∞`.
    Capped(Ext),
    /// Matrix acting on `N̄` coordinates.
    Matrix(Vec<Vec<NInf>>),
    /// `n ↦ n·s` on `N̄`.
    Multiple(Value),
    /// Steps applied in order, each landing in its paired space.
    Composed(Vec<(GenMorphism, Space)>),
}

/// Product of scalar elements: zero annihilates, compact times compact is
/// compact, a compact `∞` absorbs, anything else is soft.
pub(crate) fn tag_mul(a: &CatElem, b: &CatElem) -> Result<CatElem> {
    let (x, y) = (
        a.value().ok_or_else(|| Error::Mismatch(format!("{a} is not a scalar")))?,
        b.value().ok_or_else(|| Error::Mismatch(format!("{b} is not a scalar")))?,
    );
    if x.is_zero() || y.is_zero() {
        return Ok(CatElem::Cpt(Ext::zero()));
    }
    let cpt = |e: &CatElem| matches!(e, CatElem::Cpt(_));
    if matches!(a, CatElem::Cpt(Ext::Inf)) || matches!(b, CatElem::Cpt(Ext::Inf)) {
        return Ok(CatElem::Cpt(Ext::Inf));
    }
    Ok(if cpt(a) && cpt(b) { CatElem::Cpt(x.mul(&y)) } else { CatElem::Soft(x.mul(&y)) })
}

/// Expresses a scalar in the target carrier's representation.
fn land(tgt: &Carrier, e: CatElem) -> CatElem {
    match (tgt, e) {
        (Carrier::PBar | Carrier::SEx, e) => CatElem::X(e.value().unwrap_or(Ext::Inf)),
        (_, CatElem::X(v)) => {
            if v.is_zero() {
                CatElem::Cpt(v)
            } else {
                CatElem::Soft(v)
            }
        }
        (_, e) => e,
    }
}

impl GenMorphism {
    pub fn apply(&self, src: &Space, tgt: &Space, x: &Value) -> Result<Value> {
        src.check(x)?;
        let out = match self {
            GenMorphism::Zero => tgt.zero(),
            GenMorphism::Table(t) => {
                Value::Idx(*t.get(x.idx()?).ok_or_else(|| Error::Mismatch("table shorter than source".into()))?)
            }
            GenMorphism::Scalar(c) => {
                let tc = tgt.carrier().ok_or_else(|| Error::Mismatch("scalar map into a finite space".into()))?;
                let xe = match x.cat()? {
                    CatElem::X(v) if !v.is_zero() => CatElem::Soft(v.clone()),
                    e => e.clone(),
                };
                Value::Cat(land(tc, tag_mul(c, &xe)?))
            }
            GenMorphism::SoftScalar(a) => {
                let tc = tgt.carrier().ok_or_else(|| Error::Mismatch("scalar map into a finite space".into()))?;
                let v = x.cat()?.value().ok_or_else(|| Error::Mismatch("not a scalar".into()))?;
                let v = a.mul(&v);
                Value::Cat(land(tc, if v.is_zero() { CatElem::Cpt(v) } else { CatElem::Soft(v) }))
            }
            GenMorphism::Capped(t) => {
                let v = x.cat()?.value().ok_or_else(|| Error::Mismatch("not a scalar".into()))?;
                let p = t.mul(&v);
                Value::Cat(CatElem::X(if p > Ext::int(1) { Ext::Inf } else { p }))
            }
            GenMorphism::Matrix(m) => {
                let tc = tgt.carrier().ok_or_else(|| Error::Mismatch("matrix map into a finite space".into()))?;
                let v = flatten(x.cat()?)?;
                let prod = mat_mul(m, &column(&v))?;
                Value::Cat(unflatten(tc, prod.into_iter().map(|r| r[0]).collect()))
            }
            GenMorphism::Multiple(s) => match x.cat()? {
                CatElem::N(n) => tgt.nmul(*n, s)?,
                e => return Err(Error::Mismatch(format!("{e} is not in N̄"))),
            },
            GenMorphism::Composed(steps) => {
                let mut cur = x.clone();
                let mut here = src.clone();
                for (m, next) in steps {
                    cur = m.apply(&here, next, &cur)?;
                    here = next.clone();
                }
                cur
            }
        };
        tgt.check(&out)?;
        Ok(out)
    }
}

/// The hom Q-semigroup of two finite Cu-semigroups.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomQSemigroup {
    pub tables: Vec<Vec<usize>>,
    pub q: FiniteQ,
}

fn morphism_label(src: &Pom, tgt: &Pom, table: &[usize]) -> String {
    let gens = src.generators();
    let vals: Vec<&str> = gens.iter().map(|&g| tgt.label(table[g])).collect();
    match vals.len() {
        0 => "0".to_string(),
        1 => vals[0].to_string(),
        _ => format!("({})", vals.join(",")),
    }
}

/// All generalized morphisms `S → T` with pointwise order and sum, and
/// `φ ≺ ψ` iff `φ(a') ≪ ψ(a)` whenever `a' ≪ a`. Elements are labelled by
/// their values on the generators of `S`.
pub fn hom_monoid_finite(s: &FiniteCu, t: &FiniteCu, bound: usize) -> Result<HomQSemigroup> {
    let tables = morphisms(&s.pom, &t.pom, bound)?;
    let index: HashMap<&Vec<usize>, usize> = tables.iter().enumerate().map(|(i, t)| (t, i)).collect();
    let n = tables.len();
    let sp = &s.pom;
    let tp = &t.pom;
    let add = tables
        .iter()
        .map(|f| {
            tables
                .iter()
                .map(|g| {
                    let h: Vec<usize> = f.iter().zip(g).map(|(&a, &b)| tp.sum(a, b)).collect();
                    index[&h]
                })
                .collect()
        })
        .collect();
    let leq =
        tables.iter().map(|f| tables.iter().map(|g| f.iter().zip(g).all(|(&a, &b)| tp.le(a, b))).collect()).collect();
    let rel = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    (0..sp.len()).all(|a| (0..sp.len()).all(|a2| !sp.le(a2, a) || tp.le(tables[i][a2], tables[j][a])))
                })
                .collect()
        })
        .collect();
    let labels = tables.iter().map(|f| morphism_label(sp, tp, f)).collect();
    let zero = index[&vec![tp.zero; sp.len()]];
    let pom = Pom::new(labels, zero, add, leq)?;
    let q = FiniteQ::new(pom, AuxRelation { rel })?;
    Ok(HomQSemigroup { tables, q })
}

/// Closed-form identifications of `⟦S,T⟧` with a catalog carrier.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum ClosedForm {
    /// `⟦P̄,P̄⟧ ≅ M₁`.
    PbarPbar,
    /// `⟦R_p,R_q⟧ ≅ R_q` when `p | q`, else `≅ P̄` (Z counts as `R_1`).
    Rr { divides: bool },
    /// `⟦M₁,M₁⟧ ≅ M₁`.
    M1M1,
    /// `⟦R_q,P̄⟧ ≅ P̄`.
    RPbar,
    /// `⟦P̄,R_q⟧ ≅ M₁`.
    PbarR,
    /// `⟦N̄^k,N̄^l⟧ ≅ Mat_{l,k}(N̄)`.
    Matrix { k: usize, l: usize },
    /// `⟦S_ex,S_ex⟧ ≅ H_ex`.
    SexSex,
    /// `⟦N̄,T⟧ ≅ T`.
    NbarT,
}

fn r_primes(c: &Carrier) -> Option<Option<&PrimeSet>> {
    match c {
        Carrier::Z => Some(None),
        Carrier::R(q) => Some(Some(q)),
        _ => None,
    }
}

fn divides(p: Option<&PrimeSet>, q: Option<&PrimeSet>) -> bool {
    match (p, q) {
        (None, _) => true,
        (Some(_), None) => false,
        (Some(p), Some(q)) => p.is_subset(q),
    }
}

fn closed_form(s: &Space, t: &Space) -> Result<(ClosedForm, Space)> {
    let none = || Error::NoClosedForm(format!("⟦{s},{t}⟧"));
    let sc = match s {
        Space::Cat(c) => c,
        Space::Finite { .. } => return Err(none()),
    };
    if let (Some(k), Some(l)) = (free_rank(sc), t.carrier().and_then(free_rank)) {
        return Ok((ClosedForm::Matrix { k, l }, Space::Cat(Carrier::Mat { rows: l, cols: k })));
    }
    if *sc == Carrier::NBar {
        return Ok((ClosedForm::NbarT, t.clone()));
    }
    let tc = t.carrier().ok_or_else(none)?;
    let form = match (sc, tc) {
        (Carrier::PBar, Carrier::PBar) => (ClosedForm::PbarPbar, Carrier::M1),
        (Carrier::M1, Carrier::M1) => (ClosedForm::M1M1, Carrier::M1),
        (Carrier::SEx, Carrier::SEx) => (ClosedForm::SexSex, Carrier::HEx),
        (Carrier::PBar, _) if r_primes(tc).is_some() => (ClosedForm::PbarR, Carrier::M1),
        (_, Carrier::PBar) if r_primes(sc).is_some() => (ClosedForm::RPbar, Carrier::PBar),
        _ => match (r_primes(sc), r_primes(tc)) {
            (Some(p), Some(q)) if divides(p, q) => (ClosedForm::Rr { divides: true }, tc.clone()),
            (Some(_), Some(_)) => (ClosedForm::Rr { divides: false }, Carrier::PBar),
            _ => return Err(none()),
        },
    };
    Ok((form.0, Space::Cat(form.1)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Engine {
    Finite { hom: HomQSemigroup, tau: Tau },
    Closed(ClosedForm),
}

/// `⟦S,T⟧` with its elements realized in [`Bivariant::carrier`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bivariant {
    pub source: Space,
    pub target: Space,
    pub carrier: Space,
    pub engine: Engine,
}

pub fn bivariant(s: &Space, t: &Space, bound: usize) -> Result<Bivariant> {
    if let (Some(sf), Some(tf)) = (s.finite_cu(), t.finite_cu()) {
        let hom = hom_monoid_finite(sf, tf, bound)?;
        let tau = tau_finite(&hom.q);
        let carrier = Space::finite(format!("[{s},{t}]"), tau.cu.clone());
        return Ok(Bivariant { source: s.clone(), target: t.clone(), carrier, engine: Engine::Finite { hom, tau } });
    }
    let (form, carrier) = closed_form(s, t)?;
    Ok(Bivariant { source: s.clone(), target: t.clone(), carrier, engine: Engine::Closed(form) })
}

pub fn bivariant_named(s: &str, t: &str, bound: usize) -> Result<Bivariant> {
    bivariant(&Space::named(s)?, &Space::named(t)?, bound)
}

fn scalar_of(v: &Value) -> Result<Ext> {
    v.cat()?.value().ok_or_else(|| Error::Mismatch("not a scalar coordinate".into()))
}

/// A file, `0` for `{0}`, a `+`-separated direct sum, or a catalog name.
pub fn resolve_space(arg: &str) -> Result<Space> {
    let arg = arg.trim();
    if Path::new(arg).is_file() {
        let f = StructureFile::load(arg)?;
        let q = f.to_q()?;
        if q.aux != q.pom.order_relation() {
            return Err(Error::Precondition(format!("{arg} has an auxiliary relation; a Cu-semigroup file is needed")));
        }
        return Ok(Space::finite(&f.name, FiniteCu::new(q.pom)?));
    }
    if arg == "0" || arg == "{0}" {
        return Ok(Space::finite("{0}", FiniteCu::trivial()));
    }
    if arg.contains('+') {
        let mut acc: Option<FiniteCu> = None;
        for part in arg.split('+') {
            let cu = resolve_space(part)?
                .finite_cu()
                .cloned()
                .ok_or_else(|| Error::Unsupported(format!("direct sums need finite summands, got {part}")))?;
            acc = Some(match acc {
                None => cu,
                Some(a) => a.direct_sum(&cu),
            });
        }
        return Ok(Space::finite(arg, acc.expect("nonempty")));
    }
    Space::named(arg)
}

/// Parses `S->T:ELEM`, an element of `⟦S,T⟧`.
pub fn parse_expr(expr: &str, bound: usize) -> Result<(Bivariant, Value)> {
    let bad = || Error::Parse(format!("expected S->T:ELEM, got {expr:?}"));
    let (spaces, elem) = expr.rsplit_once(':').ok_or_else(bad)?;
    let (s, t) = spaces.split_once("->").ok_or_else(bad)?;
    let b = bivariant(&resolve_space(s)?, &resolve_space(t)?, bound)?;
    let v = b.carrier.parse(elem)?;
    Ok((b, v))
}

pub fn show_expr(b: &Bivariant, v: &Value) -> String {
    format!("{}->{}:{}", b.source, b.target, b.carrier.format(v))
}

impl Bivariant {
    /// Elements in carrier order (finite), or a sample (closed form).
    pub fn elements(&self, n: usize, seed: u64) -> Vec<Value> {
        self.carrier.samples(n, seed)
    }

    pub fn describe(&self) -> String {
        match (&self.engine, &self.carrier) {
            (Engine::Finite { .. }, Space::Finite { cu, .. }) => format!("{{{}}}", cu.pom.elements.join(",")),
            _ => self.carrier.name(),
        }
    }

    /// Morphism tables of the finite engine, indexed like the carrier.
    pub fn tables(&self) -> Option<Vec<&Vec<usize>>> {
        match &self.engine {
            Engine::Finite { hom, tau } => Some(tau.endpoint.iter().map(|&i| &hom.tables[i]).collect()),
            Engine::Closed(_) => None,
        }
    }

    /// Endpoint morphism `σ(x)`.
    pub fn sigma(&self, x: &Value) -> Result<GenMorphism> {
        self.carrier.check(x)?;
        Ok(match &self.engine {
            Engine::Finite { hom, tau } => GenMorphism::Table(hom.tables[tau.endpoint[x.idx()?]].clone()),
            Engine::Closed(form) => match form {
                ClosedForm::PbarPbar | ClosedForm::RPbar => GenMorphism::Scalar(CatElem::X(scalar_of(x)?)),
                ClosedForm::Rr { divides: true } | ClosedForm::M1M1 => GenMorphism::Scalar(x.cat()?.clone()),
                ClosedForm::Rr { divides: false } | ClosedForm::PbarR => GenMorphism::SoftScalar(scalar_of(x)?),
                ClosedForm::Matrix { .. } => match x.cat()? {
                    CatElem::Mat(m) => GenMorphism::Matrix(m.clone()),
                    e => return Err(Error::Mismatch(format!("{e} is not a matrix"))),
                },
                ClosedForm::SexSex => GenMorphism::Capped(scalar_of(x)?),
                ClosedForm::NbarT => GenMorphism::Multiple(x.clone()),
            },
        })
    }

    /// Inverse witness: the coordinate of a Cu-morphism.
    pub fn coordinate_of(&self, m: &GenMorphism) -> Result<Value> {
        let not_cu = || Error::Precondition(format!("{m:?} is not a Cu-morphism in ⟦{},{}⟧", self.source, self.target));
        let out = match (&self.engine, m) {
            (Engine::Finite { .. }, GenMorphism::Table(t)) => {
                let tables = self.tables().expect("finite engine");
                Value::Idx(tables.iter().position(|x| *x == t).ok_or_else(not_cu)?)
            }
            (_, GenMorphism::Zero) => self.carrier.zero(),
            (Engine::Closed(form), _) => {
                let c = match (form, m) {
                    (ClosedForm::PbarPbar, GenMorphism::Scalar(CatElem::X(Ext::Fin(a))))
                    | (ClosedForm::PbarR, GenMorphism::SoftScalar(Ext::Fin(a))) => CatElem::Cpt(Ext::Fin(a.clone())),
                    (ClosedForm::SexSex, GenMorphism::Capped(t)) => CatElem::Cpt(t.clone()),
                    (ClosedForm::Rr { divides: false }, GenMorphism::SoftScalar(a))
                    | (ClosedForm::RPbar, GenMorphism::Scalar(CatElem::X(a)))
                        if a.is_zero() =>
                    {
                        CatElem::X(Ext::zero())
                    }
                    (ClosedForm::Rr { divides: true } | ClosedForm::M1M1, GenMorphism::Scalar(c)) => c.clone(),
                    (ClosedForm::Matrix { .. }, GenMorphism::Matrix(a)) => CatElem::Mat(a.clone()),
                    (ClosedForm::NbarT, GenMorphism::Multiple(s)) => {
                        let v = Value::Cat(s.cat()?.clone());
                        if !self.carrier.is_compact(&v)? {
                            return Err(not_cu());
                        }
                        return Ok(v);
                    }
                    _ => return Err(not_cu()),
                };
                let v = Value::Cat(c);
                self.carrier.check(&v).map_err(|_| not_cu())?;
                v
            }
            _ => return Err(not_cu()),
        };
        if let (Engine::Closed(ClosedForm::NbarT), Space::Finite { .. }) = (&self.engine, &self.carrier) {
            return Ok(out);
        }
        if !self.carrier.is_compact(&out)? {
            return Err(not_cu());
        }
        Ok(out)
    }

    /// Evaluation `x(s) = σ(x)(s)`.
    pub fn evaluate(&self, x: &Value, s: &Value) -> Result<Value> {
        self.sigma(x)?.apply(&self.source, &self.target, s)
    }

    /// Cu-morphisms `S → T`: the compact elements.
    pub fn compact_elements(&self, n: usize, seed: u64) -> Result<Vec<Value>> {
        let mut out = Vec::new();
        for v in self.elements(n, seed) {
            if self.carrier.is_compact(&v)? {
                out.push(v);
            }
        }
        Ok(out)
    }

    /// `id_S` as an element of `⟦S,S⟧`.
    pub fn identity(&self) -> Result<Value> {
        if self.source != self.target {
            return Err(Error::Mismatch("identity needs ⟦S,S⟧".into()));
        }
        match &self.engine {
            Engine::Finite { .. } => {
                let n = self.source.finite_cu().expect("finite").len();
                self.coordinate_of(&GenMorphism::Table((0..n).collect()))
            }
            Engine::Closed(ClosedForm::Matrix { k, .. }) => Ok(Value::Cat(CatElem::Mat(
                (0..*k).map(|i| (0..*k).map(|j| if i == j { NInf::ONE } else { NInf::ZERO }).collect()).collect(),
            ))),
            Engine::Closed(
                ClosedForm::Rr { divides: true } | ClosedForm::PbarPbar | ClosedForm::M1M1 | ClosedForm::SexSex,
            ) => Ok(Value::Cat(CatElem::Cpt(Ext::int(1)))),
            Engine::Closed(_) => {
                Err(Error::Unsupported(format!("no identity rule for ⟦{},{}⟧", self.source, self.target)))
            }
        }
    }
}

/// Composition product `y∘x` for `y ∈ ⟦T,P⟧`, `x ∈ ⟦S,T⟧`, returned with `⟦S,P⟧`.
pub fn compose(outer: &Bivariant, y: &Value, inner: &Bivariant, x: &Value, bound: usize) -> Result<(Bivariant, Value)> {
    if inner.target != outer.source {
        return Err(Error::Mismatch(format!("cannot compose through {} and {}", inner.target, outer.source)));
    }
    outer.carrier.check(y)?;
    inner.carrier.check(x)?;
    let result = bivariant(&inner.source, &outer.target, bound)?;
    let value = match (&outer.engine, &inner.engine, &result.engine) {
        (Engine::Finite { .. }, Engine::Finite { .. }, _) => {
            let yt = outer.tables().expect("finite")[y.idx()?].clone();
            let xt = inner.tables().expect("finite")[x.idx()?];
            let table: Vec<usize> = xt.iter().map(|&v| yt[v]).collect();
            result.coordinate_of(&GenMorphism::Table(table))?
        }
        (Engine::Closed(ClosedForm::Matrix { .. }), Engine::Closed(ClosedForm::Matrix { .. }), _) => {
            match (y.cat()?, x.cat()?) {
                (CatElem::Mat(a), CatElem::Mat(b)) => Value::Cat(CatElem::Mat(mat_mul(a, b)?)),
                _ => return Err(Error::Mismatch("matrix coordinates expected".into())),
            }
        }
        (_, Engine::Closed(ClosedForm::NbarT), Engine::Closed(ClosedForm::NbarT)) => outer.evaluate(y, x)?,
        (Engine::Closed(fo), Engine::Closed(fi), Engine::Closed(fr))
            if scalar_family(fo) && scalar_family(fi) && scalar_family(fr) =>
        {
            let (cy, cx) = (y.cat()?, x.cat()?);
            let rc = result.carrier.carrier().expect("catalog coordinates").clone();
            let same = outer.carrier == inner.carrier && inner.carrier == result.carrier;
            let e = if same && rc.has_product() {
                rc.mul(cy, cx)?
            } else {
                let v = scalar_of(y)?.mul(&scalar_of(x)?);
                let compact = outer.carrier.is_compact(y)? && inner.carrier.is_compact(x)?;
                if v.is_zero() {
                    rc.zero()
                } else if rc == Carrier::PBar {
                    CatElem::X(v)
                } else if compact {
                    CatElem::Cpt(v)
                } else {
                    CatElem::Soft(v)
                }
            };
            let v = Value::Cat(e);
            result.carrier.check(&v)?;
            v
        }
        _ => {
            return Err(Error::Unsupported(format!(
                "no composition rule for ⟦{},{}⟧∘⟦{},{}⟧",
                outer.source, outer.target, inner.source, inner.target
            )))
        }
    };
    Ok((result, value))
}

fn scalar_family(f: &ClosedForm) -> bool {
    !matches!(f, ClosedForm::Matrix { .. } | ClosedForm::NbarT)
}

fn nbar_power(k: usize) -> Space {
    Space::Cat(if k == 1 { Carrier::NBar } else { Carrier::NBarPow(k) })
}

fn is_unit_hom(b: &Bivariant) -> bool {
    matches!(b.engine, Engine::Closed(ClosedForm::Matrix { k: 1, l: 1 }))
}

/// External tensor product `x₁ ⊠ x₂ ∈ ⟦S₁⊗S₂, T₁⊗T₂⟧`: the Kronecker
/// product on the free family, and the `N̄`-scalar action when one factor is
/// `⟦N̄,N̄⟧`.
pub fn external_tensor(
    b1: &Bivariant,
    x1: &Value,
    b2: &Bivariant,
    x2: &Value,
    bound: usize,
) -> Result<(Bivariant, Value)> {
    b1.carrier.check(x1)?;
    b2.carrier.check(x2)?;
    if let (Engine::Closed(ClosedForm::Matrix { k: k1, l: l1 }), Engine::Closed(ClosedForm::Matrix { k: k2, l: l2 })) =
        (&b1.engine, &b2.engine)
    {
        if !(is_unit_hom(b1) || is_unit_hom(b2)) || (b1.source == nbar_power(*k1) && b2.source == nbar_power(*k2)) {
            let (CatElem::Mat(a), CatElem::Mat(b)) = (x1.cat()?, x2.cat()?) else {
                return Err(Error::Mismatch("matrix coordinates expected".into()));
            };
            let result = bivariant(&nbar_power(k1 * k2), &nbar_power(l1 * l2), bound)?;
            return Ok((result, Value::Cat(CatElem::Mat(kronecker(a, b)))));
        }
    }
    let (b, x, n) = if is_unit_hom(b2) {
        (b1, x1, x2)
    } else if is_unit_hom(b1) {
        (b2, x2, x1)
    } else {
        return Err(Error::NoClosedForm(format!("⟦{},{}⟧ ⊠ ⟦{},{}⟧", b1.source, b1.target, b2.source, b2.target)));
    };
    let n = match n.cat()? {
        CatElem::Mat(m) => m[0][0],
        _ => return Err(Error::Mismatch("unit coordinate expected".into())),
    };
    let v = match &b.engine {
        Engine::Finite { .. } => {
            let t = b.tables().expect("finite")[x.idx()?];
            let tp = b.target.finite_cu().expect("finite");
            let table = t
                .iter()
                .map(|&v| b.target.nmul(n, &Value::Idx(v)).and_then(|w| w.idx()))
                .collect::<Result<Vec<_>>>()?;
            let _ = tp;
            b.coordinate_of(&GenMorphism::Table(table))?
        }
        Engine::Closed(_) => b.carrier.nmul(n, x)?,
    };
    Ok((b.clone(), v))
}

/// `ι_S(s) ∈ ⟦N̄,S⟧`, the element with endpoint `1 ↦ s`.
pub fn iota(s: &Space, x: &Value, bound: usize) -> Result<(Bivariant, Value)> {
    s.check(x)?;
    let b = bivariant(&Space::Cat(Carrier::NBar), s, bound)?;
    let v = match &b.engine {
        Engine::Closed(ClosedForm::Matrix { .. }) => Value::Cat(CatElem::Mat(column(&flatten(x.cat()?)?))),
        _ => x.clone(),
    };
    Ok((b, v))
}

/// `ι_S⁻¹(x) = σ(x)(1)`.
pub fn iota_inv(b: &Bivariant, x: &Value) -> Result<Value> {
    if b.source != Space::Cat(Carrier::NBar) {
        return Err(Error::Mismatch("ι⁻¹ needs ⟦N̄,S⟧".into()));
    }
    b.evaluate(x, &Value::Cat(CatElem::N(NInf::ONE)))
}

fn ring_space(r: &Carrier) -> Space {
    Space::from_carrier(r.clone())
}

fn ring_value(r: &Carrier, e: &CatElem) -> Result<Value> {
    match ring_space(r) {
        Space::Finite { cu, .. } => {
            cu.pom.index_of(&e.to_string()).map(Value::Idx).ok_or_else(|| Error::Element(format!("{e} is not in {r}")))
        }
        Space::Cat(_) => Ok(Value::Cat(e.clone())),
    }
}

fn ring_elem(r: &Carrier, v: &Value) -> Result<CatElem> {
    match (ring_space(r), v) {
        (Space::Finite { cu, .. }, Value::Idx(i)) => r.parse_elem(cu.pom.label(*i)),
        (_, Value::Cat(e)) => Ok(e.clone()),
        _ => Err(Error::Mismatch("element does not belong to the semiring".into())),
    }
}

/// `⟦R,R⟧` for a catalog semiring.
pub fn ring_hom(r: &Carrier, bound: usize) -> Result<Bivariant> {
    if !r.has_product() {
        return Err(Error::Unsupported(format!("{r} is not a Cu-semiring")));
    }
    let s = ring_space(r);
    bivariant(&s, &s, bound)
}

/// `π_R(r)`: left multiplication by `r`, as an element of `⟦R,R⟧`.
pub fn pi_r(r: &Carrier, x: &CatElem, bound: usize) -> Result<(Bivariant, Value)> {
    r.check(x)?;
    let b = ring_hom(r, bound)?;
    let v = match (&b.engine, r) {
        (Engine::Finite { .. }, _) => {
            let space = ring_space(r);
            let n = space.finite_cu().expect("finite").len();
            let table = (0..n)
                .map(|i| {
                    let s = ring_elem(r, &Value::Idx(i))?;
                    ring_value(r, &r.mul(x, &s)?)?.idx()
                })
                .collect::<Result<Vec<_>>>()?;
            let tables = b.tables().expect("finite");
            Value::Idx(
                tables
                    .iter()
                    .position(|t| **t == table)
                    .ok_or_else(|| Error::Precondition("left multiplication is not self-related".into()))?,
            )
        }
        (Engine::Closed(ClosedForm::PbarPbar), _) => {
            let a = x.value().expect("scalar");
            Value::Cat(if a.is_zero() { CatElem::Cpt(a) } else { CatElem::Soft(a) })
        }
        (Engine::Closed(ClosedForm::Matrix { .. }), Carrier::NBar) => {
            Value::Cat(CatElem::Mat(vec![vec![flatten(x)?[0]]]))
        }
        (Engine::Closed(ClosedForm::Matrix { .. }), Carrier::Mat { rows, .. }) => {
            let CatElem::Mat(a) = x else { unreachable!("checked") };
            let id: Vec<Vec<NInf>> =
                (0..*rows).map(|i| (0..*rows).map(|j| if i == j { NInf::ONE } else { NInf::ZERO }).collect()).collect();
            Value::Cat(CatElem::Mat(kronecker(a, &id)))
        }
        (Engine::Closed(ClosedForm::Rr { divides: true } | ClosedForm::M1M1), _) => Value::Cat(x.clone()),
        _ => return Err(Error::Unsupported(format!("no π rule for {r}"))),
    };
    Ok((b, v))
}

/// `ε_R(x) = σ(x)(1_R)`.
pub fn eps_r(r: &Carrier, b: &Bivariant, x: &Value) -> Result<CatElem> {
    let unit = r.unit().ok_or_else(|| Error::Unsupported(format!("{r} has no unit")))?;
    let v = b.evaluate(x, &ring_value(r, &unit)?)?;
    ring_elem(r, &v)
}

/// Left action `r·x` of a semiring with compact unit on `⟦S,T⟧`.
pub fn left_action(r: &Carrier, a: &CatElem, b: &Bivariant, x: &Value) -> Result<Value> {
    r.check(a)?;
    b.carrier.check(x)?;
    let unit = r.unit().ok_or_else(|| Error::Unsupported(format!("{r} has no unit")))?;
    if !r.waybelow(&unit, &unit) {
        return Err(Error::Precondition(format!("the unit of {r} is not compact")));
    }
    if let CatElem::N(n) = a {
        if *r == Carrier::NBar {
            return b.carrier.nmul(*n, x);
        }
    }
    let coords = b
        .carrier
        .carrier()
        .ok_or_else(|| Error::Unsupported(format!("{r} does not act on ⟦{},{}⟧", b.source, b.target)))?;
    let acts = match (r_primes(r), coords) {
        (_, Carrier::M1) if matches!(r, Carrier::M1) => true,
        (Some(p), c) => match r_primes(c) {
            Some(q) => divides(p, q),
            None => matches!(c, Carrier::PBar | Carrier::M1),
        },
        _ => false,
    };
    if !acts {
        return Err(Error::Unsupported(format!("{r} does not act on {coords}")));
    }
    let e = x.cat()?;
    let out = if r == coords {
        r.mul(a, e)?
    } else {
        let v = a.value().expect("scalar").mul(&scalar_of(x)?);
        let compact = r.waybelow(a, a) && coords.waybelow(e, e);
        if v.is_zero() {
            coords.zero()
        } else if *coords == Carrier::PBar {
            CatElem::X(v)
        } else if compact {
            CatElem::Cpt(v)
        } else {
            CatElem::Soft(v)
        }
    };
    let v = Value::Cat(out);
    b.carrier.check(&v)?;
    Ok(v)
}

fn decompositions(p: &Pom) -> Vec<Vec<usize>> {
    let gens = p.generators();
    let mut words: Vec<Option<Vec<usize>>> = vec![None; p.len()];
    words[p.zero] = Some(Vec::new());
    let mut frontier = vec![p.zero];
    while let Some(a) = frontier.pop() {
        for (gi, &g) in gens.iter().enumerate() {
            let s = p.sum(a, g);
            if words[s].is_none() {
                let mut w = words[a].clone().expect("reached");
                w.push(gi);
                words[s] = Some(w);
                frontier.insert(0, s);
            }
        }
    }
    words.into_iter().map(|w| w.expect("generators generate")).collect()
}

/// Cu-bimorphisms `S × T → P` of finite Cu-semigroups: maps additive and
/// monotone in each variable; `β[a][b]`, in lexicographic order.
pub fn bimorphisms(s: &Pom, t: &Pom, p: &Pom, bound: usize) -> Result<Vec<Vec<Vec<usize>>>> {
    let (gs, gt) = (s.generators(), t.generators());
    let slots = gs.len() * gt.len();
    let needed = (p.len() as u128).checked_pow(slots as u32).unwrap_or(u128::MAX);
    if needed > bound as u128 {
        return Err(Error::Bound { what: "bimorphisms".into(), needed: needed.to_string(), bound });
    }
    let (ws, wt) = (decompositions(s), decompositions(t));
    let mut out = Vec::new();
    let mut vals = vec![p.zero; slots];
    loop {
        let beta: Vec<Vec<usize>> = (0..s.len())
            .map(|a| {
                (0..t.len())
                    .map(|b| {
                        ws[a].iter().fold(p.zero, |acc, &i| {
                            wt[b].iter().fold(acc, |acc2, &j| p.sum(acc2, vals[i * gt.len() + j]))
                        })
                    })
                    .collect()
            })
            .collect();
        if is_bimorphism(s, t, p, &beta) {
            out.push(beta);
        }
        let mut i = 0;
        loop {
            if i == slots {
                out.sort();
                out.dedup();
                return Ok(out);
            }
            vals[i] += 1;
            if vals[i] < p.len() {
                break;
            }
            vals[i] = 0;
            i += 1;
        }
    }
}

pub fn is_bimorphism(s: &Pom, t: &Pom, p: &Pom, beta: &[Vec<usize>]) -> bool {
    bimorphism_violation(s, t, p, beta).is_none()
}

/// The first bimorphism law `beta` fails, with its witness.
pub fn bimorphism_violation(s: &Pom, t: &Pom, p: &Pom, beta: &[Vec<usize>]) -> Option<String> {
    if beta.len() != s.len() || beta.iter().any(|r| r.len() != t.len() || r.iter().any(|&v| v >= p.len())) {
        return Some(format!("table must be {}x{} with entries below {}", s.len(), t.len(), p.len()));
    }
    let (ls, lt) = (|a: usize| s.label(a).to_string(), |b: usize| t.label(b).to_string());
    for a in 0..s.len() {
        if beta[a][t.zero] != p.zero {
            return Some(format!("zero in second variable at ({},0)", ls(a)));
        }
        for b in 0..t.len() {
            if beta[s.zero][b] != p.zero {
                return Some(format!("zero in first variable at (0,{})", lt(b)));
            }
            for a2 in 0..s.len() {
                if beta[s.sum(a, a2)][b] != p.sum(beta[a][b], beta[a2][b]) {
                    return Some(format!("additive in first variable at ({},{},{})", ls(a), ls(a2), lt(b)));
                }
                if s.le(a, a2) && !p.le(beta[a][b], beta[a2][b]) {
                    return Some(format!("monotone in first variable at ({},{},{})", ls(a), ls(a2), lt(b)));
                }
            }
            for b2 in 0..t.len() {
                if beta[a][t.sum(b, b2)] != p.sum(beta[a][b], beta[a][b2]) {
                    return Some(format!("additive in second variable at ({},{},{})", ls(a), lt(b), lt(b2)));
                }
                if t.le(b, b2) && !p.le(beta[a][b], beta[a][b2]) {
                    return Some(format!("monotone in second variable at ({},{},{})", ls(a), lt(b), lt(b2)));
                }
            }
        }
    }
    None
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AdjunctionReport {
    pub cu_into_hom: usize,
    pub bimorphisms: usize,
    /// `|Cu(S⊗T,P)|` when the tensor product resolves.
    pub tensor_leg: Option<usize>,
    pub holds: bool,
    pub failure: Option<String>,
}

fn pointwise_le(p: &Pom, a: &[Vec<usize>], b: &[Vec<usize>]) -> bool {
    a.iter().flatten().zip(b.iter().flatten()).all(|(&x, &y)| p.le(x, y))
}

/// Product table of `E_k` when `s ≅ E_k`.
fn as_e_k(s: &FiniteCu) -> Option<(usize, Vec<usize>)> {
    let k = s.len().checked_sub(2)?;
    let e = Pom::e_k(k);
    isomorphism(&e, &s.pom).map(|iso| (k, iso))
}

/// Checks `Cu(S,⟦T,P⟧) ≅ CuBimor(S×T,P)` through `α ↦ ((a,b) ↦ σ(α(a))(b))`,
/// and `≅ Cu(S⊗T,P)` when the tensor product is known.
pub fn adjunction_check(s: &FiniteCu, t: &FiniteCu, p: &FiniteCu, bound: usize) -> Result<AdjunctionReport> {
    let ts = Space::finite("T", t.clone());
    let ps = Space::finite("P", p.clone());
    let hom = bivariant(&ts, &ps, bound)?;
    let tables: Vec<Vec<usize>> = hom.tables().expect("finite").into_iter().cloned().collect();
    let h = hom.carrier.finite_cu().expect("finite").clone();
    let alphas = morphisms(&s.pom, &h.pom, bound)?;
    let betas = bimorphisms(&s.pom, &t.pom, &p.pom, bound)?;
    let mut report = AdjunctionReport {
        cu_into_hom: alphas.len(),
        bimorphisms: betas.len(),
        tensor_leg: None,
        holds: true,
        failure: None,
    };
    let fail = |r: &mut AdjunctionReport, msg: String| {
        if r.holds {
            r.holds = false;
            r.failure = Some(msg);
        }
    };
    let bar = |alpha: &[usize]| -> Vec<Vec<usize>> { alpha.iter().map(|&x| tables[x].clone()).collect() };
    let unbar = |beta: &[Vec<usize>]| -> Option<Vec<usize>> {
        beta.iter().map(|row| tables.iter().position(|t| t == row)).collect()
    };
    let images: Vec<Vec<Vec<usize>>> = alphas.iter().map(|a| bar(a)).collect();
    for (i, img) in images.iter().enumerate() {
        if betas.binary_search(img).is_err() {
            fail(&mut report, format!("image of morphism #{i} is not a bimorphism"));
        }
        if unbar(img).as_deref() != Some(&alphas[i][..]) {
            fail(&mut report, format!("inverse map does not recover morphism #{i}"));
        }
    }
    for (j, beta) in betas.iter().enumerate() {
        match unbar(beta) {
            Some(a) if alphas.binary_search(&a).is_ok() => {}
            _ => fail(&mut report, format!("bimorphism #{j} has no preimage")),
        }
    }
    if alphas.len() != betas.len() {
        fail(&mut report, format!("{} morphisms but {} bimorphisms", alphas.len(), betas.len()));
    }
    for i in 0..alphas.len() {
        for j in 0..alphas.len() {
            let le_a = alphas[i].iter().zip(&alphas[j]).all(|(&x, &y)| h.pom.le(x, y));
            if le_a != pointwise_le(&p.pom, &images[i], &images[j]) {
                fail(&mut report, format!("order not preserved between morphisms #{i} and #{j}"));
            }
        }
    }
    // S⊗T is known when a factor is trivial, or S ≅ T ≅ E_k with ω the product.
    let tensor = if s.len() == 1 || t.len() == 1 {
        Some((FiniteCu::trivial(), None))
    } else {
        match (as_e_k(s), as_e_k(t)) {
            (Some((k, is)), Some((l, it))) if k == l => Some((FiniteCu::e_k(k), Some((k, is, it)))),
            _ => None,
        }
    };
    if let Some((st, omega_data)) = tensor {
        let leg = morphisms(&st.pom, &p.pom, bound)?;
        report.tensor_leg = Some(leg.len());
        let omega = |a: usize, b: usize| -> usize {
            match &omega_data {
                None => st.pom.zero,
                Some((k, is, it)) => {
                    let e = Carrier::E(*k as u64);
                    let ea = e.parse_elem(Pom::e_k(*k).label(is.iter().position(|&x| x == a).unwrap())).unwrap();
                    let eb = e.parse_elem(Pom::e_k(*k).label(it.iter().position(|&x| x == b).unwrap())).unwrap();
                    st.pom.index_of(&e.mul(&ea, &eb).unwrap().to_string()).unwrap()
                }
            }
        };
        let mut composed: Vec<Vec<Vec<usize>>> = leg
            .iter()
            .map(|g| (0..s.len()).map(|a| (0..t.len()).map(|b| g[omega(a, b)]).collect()).collect())
            .collect();
        composed.sort();
        composed.dedup();
        if composed.len() != leg.len() || composed != betas {
            fail(&mut report, "bimorphisms do not factor uniquely through the tensor product".into());
        }
    }
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SolidReport {
    pub name: String,
    pub statuses: [bool; 5],
    /// `ε_R∘π_R = id` on samples, when `π_R` is implemented.
    pub eps_pi_identity: Option<bool>,
    /// `π_R` lands in soft elements (checked for non-compact units).
    pub pi_image_soft: Option<bool>,
    /// `(2)⇒(1)`, `(2)⇒(3)`, `(4)⇒(3)`, `(4)⇔(5)` across the fact table.
    pub implications_hold: bool,
}

pub fn implications_hold(s: &[bool; 5]) -> bool {
    (!s[1] || s[0]) && (!s[1] || s[2]) && (!s[3] || s[2]) && (s[3] == s[4])
}

pub fn solid_status(name: &str, bound: usize) -> Result<SolidReport> {
    let f = facts(name)?;
    let r = Carrier::parse(name)?;
    let statuses = [0, 1, 2, 3, 4].map(|i| f.char_solid[i].value);
    let implications = fact_table().iter().all(|row| implications_hold(&row.char_solid.clone().map(|x| x.value)));
    let samples = r.sample(25, 11);
    let mut eps_pi = Some(true);
    let mut soft = None;
    for a in &samples {
        match pi_r(&r, a, bound) {
            Ok((b, v)) => {
                if eps_r(&r, &b, &v)? != *a {
                    eps_pi = Some(false);
                }
                if !f.unit_compact.value {
                    let is_soft = b.carrier.carrier().is_some_and(|c| c.is_soft(v.cat().unwrap()));
                    soft = Some(soft.unwrap_or(true) && is_soft);
                }
            }
            Err(Error::Unsupported(_)) => eps_pi = None,
            Err(e) => return Err(e),
        }
    }
    Ok(SolidReport {
        name: f.name,
        statuses,
        eps_pi_identity: eps_pi,
        pi_image_soft: soft,
        implications_hold: implications,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EmbedReport {
    pub sub_size: usize,
    pub hom_size: usize,
    pub holds: bool,
    pub failure: Option<String>,
}

fn check_ideal_image(h: &FiniteCu, image: &[usize], expected: &[usize]) -> Option<String> {
    let mut img = image.to_vec();
    img.sort_unstable();
    if img.windows(2).any(|w| w[0] == w[1]) {
        return Some("induced map is not injective".into());
    }
    if img != expected {
        return Some("image differs from the characterized subset".into());
    }
    let inside = |x: usize| img.binary_search(&x).is_ok();
    for &a in &img {
        for &b in &img {
            if !inside(h.pom.sum(a, b)) {
                return Some("image is not closed under addition".into());
            }
        }
        if (0..h.len()).any(|x| h.pom.le(x, a) && !inside(x)) {
            return Some("image is not downward hereditary".into());
        }
    }
    None
}

/// `⟦S,J⟧ → ⟦S,T⟧` for an ideal `J` of `T`: an order-embedding onto the
/// ideal of elements whose morphism takes values in `J`.
pub fn ideal_embed_check(s: &FiniteCu, t: &FiniteCu, j: &Ideal, bound: usize) -> Result<EmbedReport> {
    let jpom = t.pom.restrict(&j.members)?;
    let js = Space::finite("J", FiniteCu::new(jpom)?);
    let ss = Space::finite("S", s.clone());
    let sub = bivariant(&ss, &js, bound)?;
    let full = bivariant(&ss, &Space::finite("T", t.clone()), bound)?;
    let h = full.carrier.finite_cu().expect("finite").clone();
    let ftables = full.tables().expect("finite");
    let mut image = Vec::new();
    for tab in sub.tables().expect("finite") {
        let lifted: Vec<usize> = tab.iter().map(|&v| j.members[v]).collect();
        match ftables.iter().position(|x| **x == lifted) {
            Some(i) => image.push(i),
            None => {
                return Ok(EmbedReport {
                    sub_size: sub.carrier.finite_cu().unwrap().len(),
                    hom_size: h.len(),
                    holds: false,
                    failure: Some("lifted morphism is not in ⟦S,T⟧".into()),
                })
            }
        }
    }
    let expected: Vec<usize> = (0..h.len()).filter(|&i| ftables[i].iter().all(|v| j.members.contains(v))).collect();
    let mut failure = check_ideal_image(&h, &image, &expected);
    let sc = sub.carrier.finite_cu().expect("finite");
    for a in 0..image.len() {
        for b in 0..image.len() {
            if sc.pom.le(a, b) != h.pom.le(image[a], image[b]) && failure.is_none() {
                failure = Some("induced map is not an order-embedding".into());
            }
        }
    }
    Ok(EmbedReport { sub_size: image.len(), hom_size: h.len(), holds: failure.is_none(), failure })
}

/// `⟦S/J,T⟧ → ⟦S,T⟧`, `φ ↦ φ∘π`, for an ideal `J` of `S`: an order-embedding
/// onto the ideal of elements vanishing on `J`.
pub fn quotient_embed_check(s: &FiniteCu, t: &FiniteCu, j: &Ideal, bound: usize) -> Result<EmbedReport> {
    let q = quotient(s, j)?;
    let ts = Space::finite("T", t.clone());
    let sub = bivariant(&Space::finite("S/J", q.cu.clone()), &ts, bound)?;
    let full = bivariant(&Space::finite("S", s.clone()), &ts, bound)?;
    let h = full.carrier.finite_cu().expect("finite").clone();
    let ftables = full.tables().expect("finite");
    let mut image = Vec::new();
    let mut failure = None;
    for tab in sub.tables().expect("finite") {
        let pulled: Vec<usize> = q.projection.iter().map(|&c| tab[c]).collect();
        match ftables.iter().position(|x| **x == pulled) {
            Some(i) => image.push(i),
            None => failure = Some("pulled-back morphism is not in ⟦S,T⟧".to_string()),
        }
    }
    let expected: Vec<usize> =
        (0..h.len()).filter(|&i| j.members.iter().all(|&m| ftables[i][m] == t.pom.zero)).collect();
    if failure.is_none() {
        failure = check_ideal_image(&h, &image, &expected);
    }
    let sc = sub.carrier.finite_cu().expect("finite");
    for a in 0..image.len() {
        for b in 0..image.len() {
            if sc.pom.le(a, b) != h.pom.le(image[a], image[b]) && failure.is_none() {
                failure = Some("induced map is not an order-embedding".into());
            }
        }
    }
    Ok(EmbedReport { sub_size: image.len(), hom_size: h.len(), holds: failure.is_none(), failure })
}
