//! Named concrete Cu-semigroups and Cu-semirings with exact arithmetic.
//!
//! Elements are restricted to rational values; every order, addition and
//! way-below fact about these carriers is decided exactly on that skeleton.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::numbers::{prime_factors, Ext, NInf, Rat};
use crate::order::{check_o5, check_o6, EffectiveCu, Pom};
use crate::{Error, Result};

/// Set of primes `q` with `q = q²`; `All` is the universal UHF case.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PrimeSet {
    All,
    Finite(BTreeSet<u64>),
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

impl PrimeSet {
    pub fn finite(primes: impl IntoIterator<Item = u64>) -> Result<PrimeSet> {
        let set: BTreeSet<u64> = primes.into_iter().collect();
        if set.is_empty() {
            return Err(Error::Unknown("R_q needs a nonempty prime set".into()));
        }
        if let Some(p) = set.iter().find(|p| !is_prime(**p)) {
            return Err(Error::Unknown(format!("{p} is not prime")));
        }
        Ok(PrimeSet::Finite(set))
    }

    pub fn contains(&self, p: u64) -> bool {
        match self {
            PrimeSet::All => true,
            PrimeSet::Finite(s) => s.contains(&p),
        }
    }

    pub fn is_subset(&self, other: &PrimeSet) -> bool {
        match (self, other) {
            (_, PrimeSet::All) => true,
            (PrimeSet::All, PrimeSet::Finite(_)) => false,
            (PrimeSet::Finite(a), PrimeSet::Finite(b)) => a.is_subset(b),
        }
    }

    pub fn union(&self, other: &PrimeSet) -> PrimeSet {
        match (self, other) {
            (PrimeSet::Finite(a), PrimeSet::Finite(b)) => PrimeSet::Finite(a.union(b).copied().collect()),
            _ => PrimeSet::All,
        }
    }

    /// Whether every prime of the denominator of `r` lies in the set.
    pub fn admits(&self, r: &Rat) -> bool {
        prime_factors(r.denom()).into_iter().all(|p| self.contains(p))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Carrier {
    NBar,
    /// `N̄^k` as a Cu-semigroup, without product.
    NBarPow(usize),
    /// `Mat_{rows,cols}(N̄)`; a semiring when square.
    Mat {
        rows: usize,
        cols: usize,
    },
    E(u64),
    PBar,
    Z,
    R(PrimeSet),
    M1,
    MInf,
    SEx,
    HEx,
}

impl Carrier {
    /// `Q`, the R_q for all primes.
    pub fn q_univ() -> Carrier {
        Carrier::R(PrimeSet::All)
    }

    pub fn parse(name: &str) -> Result<Carrier> {
        let raw = name.trim();
        let s: String = raw.chars().filter(|c| !c.is_whitespace() && *c != '_').collect();
        let unknown = || Error::Unknown(format!("unknown carrier {raw:?}"));
        let num = |t: &str| t.parse::<usize>().map_err(|_| unknown());
        match s.as_str() {
            "Nbar" | "N̄" => return Ok(Carrier::NBar),
            "Pbar" | "P̄" => return Ok(Carrier::PBar),
            "Z" => return Ok(Carrier::Z),
            "Q" => return Ok(Carrier::q_univ()),
            "M1" | "M₁" => return Ok(Carrier::M1),
            "Minf" | "M∞" => return Ok(Carrier::MInf),
            "Sex" => return Ok(Carrier::SEx),
            "Hex" => return Ok(Carrier::HEx),
            _ => {}
        }
        if let Some(k) = s.strip_prefix("Nbar^") {
            let k = num(k)?;
            if k == 0 {
                return Err(unknown());
            }
            return Ok(if k == 1 { Carrier::NBar } else { Carrier::NBarPow(k) });
        }
        if let Some(rest) = s.strip_prefix("Mat") {
            let inner = rest.trim_start_matches('(').trim_end_matches(')');
            let (r, c) = inner.split_once(',').ok_or_else(unknown)?;
            let (rows, cols) = (num(r)?, num(c)?);
            if rows == 0 || cols == 0 {
                return Err(unknown());
            }
            return Ok(Carrier::Mat { rows, cols });
        }
        if let Some(k) = s.strip_prefix('E') {
            return Ok(Carrier::E(num(k)? as u64));
        }
        if let Some(rest) = s.strip_prefix('R') {
            let inner = rest.trim_start_matches(['{', '(']).trim_end_matches(['}', ')']);
            if inner == "1" {
                return Ok(Carrier::Z);
            }
            let primes = inner
                .split(',')
                .filter(|t| !t.is_empty())
                .map(|t| t.parse::<u64>().map_err(|_| unknown()))
                .collect::<Result<Vec<_>>>()?;
            return Ok(Carrier::R(PrimeSet::finite(primes)?));
        }
        Err(unknown())
    }

    /// Names accepted by [`Carrier::parse`], with placeholder parameters.
    pub fn listing() -> Vec<(&'static str, &'static str)> {
        vec![
            ("Nbar", "extended naturals {0,1,...,inf}"),
            ("Nbar^k", "k-tuples of extended naturals"),
            ("Mat(l,k)", "l×k matrices over Nbar; square ones multiply"),
            ("Ek", "{0,...,k,inf} with sums above k set to inf"),
            ("Pbar", "[0,inf] with the usual order"),
            ("Z", "compact naturals and soft (0,inf]"),
            ("R{p,...}", "compact rationals with denominators over the primes, soft (0,inf]"),
            ("Q", "R over all primes"),
            ("M1", "compact [0,inf) and soft (0,inf]"),
            ("Minf", "M1 with a compact inf"),
            ("Sex", "[0,1] and inf, sums above 1 set to inf"),
            ("Hex", "compact {0} and [1,inf], soft (1,inf]"),
        ]
    }

    fn two_part(&self) -> bool {
        matches!(self, Carrier::Z | Carrier::R(_) | Carrier::M1 | Carrier::MInf | Carrier::HEx)
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Carrier::E(_))
    }

    /// Table form of a finite carrier.
    pub fn to_pom(&self) -> Option<Pom> {
        match self {
            Carrier::E(k) => Some(Pom::e_k(*k as usize)),
            _ => None,
        }
    }
}

impl fmt::Display for Carrier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Carrier::NBar => write!(f, "Nbar"),
            Carrier::NBarPow(k) => write!(f, "Nbar^{k}"),
            Carrier::Mat { rows, cols } => write!(f, "Mat({rows},{cols})"),
            Carrier::E(k) => write!(f, "E{k}"),
            Carrier::PBar => write!(f, "Pbar"),
            Carrier::Z => write!(f, "Z"),
            Carrier::R(PrimeSet::All) => write!(f, "Q"),
            Carrier::R(PrimeSet::Finite(s)) if s.len() == 1 => write!(f, "R{}", s.iter().next().unwrap()),
            Carrier::R(PrimeSet::Finite(s)) => {
                let v: Vec<String> = s.iter().map(|p| p.to_string()).collect();
                write!(f, "R{{{}}}", v.join(","))
            }
            Carrier::M1 => write!(f, "M1"),
            Carrier::MInf => write!(f, "Minf"),
            Carrier::SEx => write!(f, "Sex"),
            Carrier::HEx => write!(f, "Hex"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CatElem {
    /// Element of `N̄` or `E_k`.
    N(NInf),
    Tuple(Vec<NInf>),
    /// Row-major matrix.
    Mat(Vec<Vec<NInf>>),
    /// Element of `P̄` or `S_ex`.
    X(Ext),
    Cpt(Ext),
    /// Nonzero soft element `a'`.
    Soft(Ext),
}

impl CatElem {
    pub fn cpt(n: i64, d: i64) -> CatElem {
        CatElem::Cpt(Ext::frac(n, d))
    }

    pub fn soft(n: i64, d: i64) -> CatElem {
        CatElem::Soft(Ext::frac(n, d))
    }

    /// Value of a scalar element, forgetting the compact/soft tag.
    pub fn value(&self) -> Option<Ext> {
        match self {
            CatElem::N(NInf::Fin(n)) => Some(Ext::Fin(Rat::from_integer(BigInt::from(*n)))),
            CatElem::N(NInf::Inf) => Some(Ext::Inf),
            CatElem::X(a) | CatElem::Cpt(a) | CatElem::Soft(a) => Some(a.clone()),
            _ => None,
        }
    }

    /// Zero-normalized two-part element.
    fn two(soft: bool, v: Ext) -> CatElem {
        if soft && !v.is_zero() {
            CatElem::Soft(v)
        } else {
            CatElem::Cpt(v)
        }
    }
}

fn fmt_entries(v: &[NInf]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

impl fmt::Display for CatElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CatElem::N(a) => write!(f, "{a}"),
            CatElem::Tuple(v) => write!(f, "({})", fmt_entries(v)),
            CatElem::Mat(rows) => {
                let r: Vec<String> = rows.iter().map(|r| format!("[{}]", fmt_entries(r))).collect();
                write!(f, "mat[{}]", r.join(","))
            }
            CatElem::X(a) => write!(f, "{a}"),
            CatElem::Cpt(a) if a.is_zero() => write!(f, "0"),
            CatElem::Cpt(a) => write!(f, "cpt({a})"),
            CatElem::Soft(a) => write!(f, "soft({a})"),
        }
    }
}

impl Serialize for Carrier {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl Serialize for CatElem {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

fn parse_list(s: &str) -> Result<Vec<NInf>> {
    s.split(',').map(NInf::parse).collect()
}

fn parse_matrix(body: &str) -> Result<Vec<Vec<NInf>>> {
    let bad = || Error::Parse(format!("bad matrix {body:?}"));
    let inner = body.strip_prefix('[').and_then(|t| t.strip_suffix(']')).ok_or_else(bad)?;
    let mut rows = Vec::new();
    let mut rest = inner.trim();
    while !rest.is_empty() {
        let open = rest.strip_prefix('[').ok_or_else(bad)?;
        let close = open.find(']').ok_or_else(bad)?;
        rows.push(parse_list(&open[..close])?);
        rest = open[close + 1..].trim_start_matches(',').trim();
    }
    Ok(rows)
}

fn wrapped<'a>(s: &'a str, head: &str) -> Option<&'a str> {
    s.strip_prefix(head)?.strip_prefix('(')?.strip_suffix(')')
}

impl Carrier {
    /// Checks the per-carrier well-formedness of `e`.
    pub fn check(&self, e: &CatElem) -> Result<()> {
        let ok = match (self, e) {
            (Carrier::NBar, CatElem::N(_)) => true,
            (Carrier::NBarPow(k), CatElem::Tuple(v)) => v.len() == *k,
            (Carrier::Mat { rows, cols }, CatElem::Mat(m)) => m.len() == *rows && m.iter().all(|r| r.len() == *cols),
            (Carrier::E(k), CatElem::N(a)) => a.cap(*k) == *a,
            (Carrier::PBar, CatElem::X(_)) => true,
            (Carrier::SEx, CatElem::X(a)) => a.is_inf() || *a <= Ext::int(1),
            (_, CatElem::Soft(a)) if self.two_part() => !a.is_zero() && (*self != Carrier::HEx || *a > Ext::int(1)),
            (Carrier::Z, CatElem::Cpt(Ext::Fin(r))) => r.is_integer(),
            (Carrier::R(q), CatElem::Cpt(Ext::Fin(r))) => q.admits(r),
            (Carrier::M1 | Carrier::MInf, CatElem::Cpt(Ext::Fin(_))) => true,
            (Carrier::MInf, CatElem::Cpt(Ext::Inf)) => true,
            (Carrier::HEx, CatElem::Cpt(a)) => a.is_zero() || *a >= Ext::int(1),
            _ => false,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::Element(format!("{e} is not an element of {self}")))
        }
    }

    pub fn parse_elem(&self, s: &str) -> Result<CatElem> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let e = if let Some(body) = t.strip_prefix("mat") {
            CatElem::Mat(parse_matrix(body)?)
        } else if let Some(body) = wrapped(&t, "soft") {
            CatElem::two(true, Ext::parse(body)?)
        } else if let Some(body) = wrapped(&t, "cpt") {
            CatElem::Cpt(Ext::parse(body)?)
        } else if let Some(body) = t.strip_prefix('(').and_then(|b| b.strip_suffix(')')) {
            CatElem::Tuple(parse_list(body)?)
        } else {
            match self {
                Carrier::NBar | Carrier::E(_) => CatElem::N(NInf::parse(&t)?),
                Carrier::PBar | Carrier::SEx => CatElem::X(Ext::parse(&t)?),
                Carrier::NBarPow(_) | Carrier::Mat { .. } => {
                    return Err(Error::Parse(format!("expected a tuple or matrix, got {t:?}")))
                }
                _ => {
                    let v = Ext::parse(&t)?;
                    let cpt = CatElem::Cpt(v.clone());
                    if v.is_inf() && self.check(&cpt).is_err() {
                        CatElem::Soft(v)
                    } else {
                        cpt
                    }
                }
            }
        };
        self.check(&e)?;
        Ok(e)
    }

    pub fn zero(&self) -> CatElem {
        match self {
            Carrier::NBar | Carrier::E(_) => CatElem::N(NInf::ZERO),
            Carrier::NBarPow(k) => CatElem::Tuple(vec![NInf::ZERO; *k]),
            Carrier::Mat { rows, cols } => CatElem::Mat(vec![vec![NInf::ZERO; *cols]; *rows]),
            Carrier::PBar | Carrier::SEx => CatElem::X(Ext::zero()),
            _ => CatElem::Cpt(Ext::zero()),
        }
    }

    pub fn add(&self, a: &CatElem, b: &CatElem) -> CatElem {
        use CatElem::*;
        match (self, a, b) {
            (Carrier::E(k), N(x), N(y)) => N(x.add(*y).cap(*k)),
            (_, N(x), N(y)) => N(x.add(*y)),
            (_, Tuple(x), Tuple(y)) => Tuple(x.iter().zip(y).map(|(p, q)| p.add(*q)).collect()),
            (_, Mat(x), Mat(y)) => {
                Mat(x.iter().zip(y).map(|(r, s)| r.iter().zip(s).map(|(p, q)| p.add(*q)).collect()).collect())
            }
            (Carrier::SEx, X(x), X(y)) => {
                let s = x.add(y);
                X(if s > Ext::int(1) { Ext::Inf } else { s })
            }
            (_, X(x), X(y)) => X(x.add(y)),
            (_, Cpt(Ext::Inf), _) | (_, _, Cpt(Ext::Inf)) => Cpt(Ext::Inf),
            (_, Cpt(x), Cpt(y)) => Cpt(x.add(y)),
            (_, Cpt(x) | Soft(x), Cpt(y) | Soft(y)) => CatElem::two(true, x.add(y)),
            _ => panic!("{a} and {b} do not belong to the same carrier"),
        }
    }

    pub fn leq(&self, a: &CatElem, b: &CatElem) -> bool {
        use CatElem::*;
        match (a, b) {
            (N(x), N(y)) => x <= y,
            (Tuple(x), Tuple(y)) => x.iter().zip(y).all(|(p, q)| p <= q),
            (Mat(x), Mat(y)) => x.iter().flatten().zip(y.iter().flatten()).all(|(p, q)| p <= q),
            (X(x), X(y)) | (Cpt(x), Cpt(y)) | (Soft(x), Soft(y)) | (Soft(x), Cpt(y)) => x <= y,
            (Cpt(x), Soft(y)) => x < y,
            _ => false,
        }
    }

    pub fn waybelow(&self, a: &CatElem, b: &CatElem) -> bool {
        use CatElem::*;
        let nbar = |x: &NInf, y: &NInf| x <= y && *x != NInf::Inf;
        match (self, a, b) {
            (Carrier::E(_), N(x), N(y)) => x <= y,
            (_, N(x), N(y)) => nbar(x, y),
            (_, Tuple(x), Tuple(y)) => x.iter().zip(y).all(|(p, q)| nbar(p, q)),
            (_, Mat(x), Mat(y)) => x.iter().flatten().zip(y.iter().flatten()).all(|(p, q)| nbar(p, q)),
            (Carrier::SEx, X(x), X(y)) => x.is_zero() || x < y || (x.is_inf() && y.is_inf()),
            (_, X(x), X(y)) => x.is_zero() || x < y,
            (_, Soft(x), Soft(y)) => x < y,
            _ => self.leq(a, b),
        }
    }

    /// Exact softness.
    pub fn is_soft(&self, a: &CatElem) -> bool {
        let soft_n = |x: &NInf| x.is_zero() || *x == NInf::Inf;
        match (self, a) {
            (Carrier::E(_), _) | (_, CatElem::X(_)) | (_, CatElem::Soft(_)) => true,
            (_, CatElem::N(x)) => soft_n(x),
            (_, CatElem::Tuple(v)) => v.iter().all(soft_n),
            (_, CatElem::Mat(m)) => m.iter().flatten().all(soft_n),
            (_, CatElem::Cpt(x)) => x.is_zero() || x.is_inf(),
        }
    }

    pub fn has_product(&self) -> bool {
        match self {
            Carrier::Mat { rows, cols } => rows == cols,
            Carrier::NBarPow(_) | Carrier::MInf | Carrier::SEx => false,
            _ => true,
        }
    }

    pub fn unit(&self) -> Option<CatElem> {
        if !self.has_product() {
            return None;
        }
        Some(match self {
            Carrier::NBar => CatElem::N(NInf::ONE),
            Carrier::E(k) => CatElem::N(NInf::ONE.cap(*k)),
            Carrier::Mat { rows, .. } => CatElem::Mat(
                (0..*rows).map(|i| (0..*rows).map(|j| if i == j { NInf::ONE } else { NInf::ZERO }).collect()).collect(),
            ),
            Carrier::PBar => CatElem::X(Ext::int(1)),
            _ => CatElem::Cpt(Ext::int(1)),
        })
    }

    pub fn mul(&self, a: &CatElem, b: &CatElem) -> Result<CatElem> {
        use CatElem::*;
        if !self.has_product() {
            return Err(Error::Unsupported(format!("{self} has no product")));
        }
        self.check(a)?;
        self.check(b)?;
        Ok(match (self, a, b) {
            (Carrier::E(k), N(x), N(y)) => N(x.mul(*y).cap(*k)),
            (_, N(x), N(y)) => N(x.mul(*y)),
            (_, Mat(x), Mat(y)) => Mat(mat_mul(x, y)?),
            (_, X(x), X(y)) => X(x.mul(y)),
            (_, Cpt(x), Cpt(y)) => Cpt(x.mul(y)),
            (_, Cpt(x) | Soft(x), Cpt(y) | Soft(y)) => {
                if x.is_zero() || y.is_zero() {
                    Cpt(Ext::zero())
                } else if matches!(a, Cpt(Ext::Inf)) || matches!(b, Cpt(Ext::Inf)) {
                    Cpt(Ext::Inf)
                } else {
                    Soft(x.mul(y))
                }
            }
            _ => unreachable!("checked elements"),
        })
    }

    /// Deterministic sample of at most `n` elements, always including zero.
    pub fn sample(&self, n: usize, seed: u64) -> Vec<CatElem> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut out = vec![self.zero()];
        let nval = |rng: &mut ChaCha8Rng| -> NInf {
            if rng.gen_ratio(1, 5) {
                NInf::Inf
            } else {
                NInf::Fin(rng.gen_range(0..=3))
            }
        };
        let mut attempts = 0;
        while out.len() < n && attempts < 50 * n + 50 {
            attempts += 1;
            let e = match self {
                Carrier::NBar => CatElem::N(nval(&mut rng)),
                Carrier::E(k) => {
                    let v = rng.gen_range(0..=*k + 1);
                    CatElem::N(if v > *k { NInf::Inf } else { NInf::Fin(v) })
                }
                Carrier::NBarPow(k) => CatElem::Tuple((0..*k).map(|_| nval(&mut rng)).collect()),
                Carrier::Mat { rows, cols } => {
                    CatElem::Mat((0..*rows).map(|_| (0..*cols).map(|_| nval(&mut rng)).collect()).collect())
                }
                Carrier::PBar => CatElem::X(self.sample_value(&mut rng, true)),
                Carrier::SEx => {
                    let v = self.sample_value(&mut rng, true);
                    CatElem::X(if v > Ext::int(1) { Ext::Inf } else { v })
                }
                _ => {
                    let soft = rng.gen_bool(0.5);
                    let mut v = self.sample_value(&mut rng, soft || *self == Carrier::MInf || *self == Carrier::HEx);
                    if *self == Carrier::HEx && !v.is_zero() && v < Ext::int(1) {
                        v = v.add(&Ext::int(1));
                    }
                    CatElem::two(soft, v)
                }
            };
            if self.check(&e).is_ok() && !out.contains(&e) {
                out.push(e);
            }
        }
        out
    }

    fn sample_value(&self, rng: &mut ChaCha8Rng, allow_inf: bool) -> Ext {
        if allow_inf && rng.gen_ratio(1, 8) {
            return Ext::Inf;
        }
        let den: i64 = match self {
            Carrier::Z => 1,
            Carrier::R(PrimeSet::Finite(s)) => {
                let ps: Vec<u64> = s.iter().copied().collect();
                let p = ps[rng.gen_range(0..ps.len())] as i64;
                [1, p, p * p][rng.gen_range(0..3)]
            }
            _ => [1, 2, 3, 4][rng.gen_range(0..4)],
        };
        Ext::frac(rng.gen_range(0..=4 * den), den)
    }
}

/// Matrix product over `N̄` with `0·∞ = 0`.
pub fn mat_mul(x: &[Vec<NInf>], y: &[Vec<NInf>]) -> Result<Vec<Vec<NInf>>> {
    let inner = y.len();
    if x.iter().any(|r| r.len() != inner) {
        return Err(Error::Mismatch("matrix dimensions do not agree".into()));
    }
    let cols = y.first().map_or(0, |r| r.len());
    Ok(x.iter()
        .map(|r| (0..cols).map(|j| (0..inner).fold(NInf::ZERO, |acc, t| acc.add(r[t].mul(y[t][j])))).collect())
        .collect())
}

/// Kronecker product over `N̄`.
pub fn kronecker(x: &[Vec<NInf>], y: &[Vec<NInf>]) -> Vec<Vec<NInf>> {
    let mut out = Vec::new();
    for xr in x {
        for yr in y {
            out.push(xr.iter().flat_map(|a| yr.iter().map(move |b| a.mul(*b))).collect());
        }
    }
    out
}

/// Carrier bundled as an [`EffectiveCu`] handle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogCu(pub Carrier);

pub fn catalog(name: &str) -> Result<CatalogCu> {
    Carrier::parse(name).map(CatalogCu)
}

impl EffectiveCu for CatalogCu {
    type Elem = CatElem;

    fn zero(&self) -> CatElem {
        self.0.zero()
    }

    fn add(&self, a: &CatElem, b: &CatElem) -> CatElem {
        self.0.add(a, b)
    }

    fn leq(&self, a: &CatElem, b: &CatElem) -> bool {
        self.0.leq(a, b)
    }

    fn waybelow(&self, a: &CatElem, b: &CatElem) -> bool {
        self.0.waybelow(a, b)
    }

    fn is_soft(&self, a: &CatElem) -> bool {
        self.0.is_soft(a)
    }

    fn parse(&self, s: &str) -> Result<CatElem> {
        self.0.parse_elem(s)
    }

    fn format(&self, a: &CatElem) -> String {
        a.to_string()
    }

    fn samples(&self, n: usize, seed: u64) -> Vec<CatElem> {
        self.0.sample(n, seed)
    }
}

pub fn semiring_mul(name: &str, a: &str, b: &str) -> Result<CatElem> {
    let c = Carrier::parse(name)?;
    let (x, y) = (c.parse_elem(a)?, c.parse_elem(b)?);
    c.mul(&x, &y)
}

/// A fact with the reason it holds.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Fact {
    pub value: bool,
    pub reason: String,
}

fn fact(value: bool, reason: &str) -> Fact {
    Fact { value, reason: reason.to_string() }
}

/// Golden semiring data. `char_solid[i]` is statement `i+1` of the
/// solidity characterization: (1) `μ: R⊗R→R` iso; (2) evaluation
/// `⟦R,R⟧⊗R→R` iso; (3) `π_R⊗id` iso; (4) `π_R` iso; (5) `ε_R` iso.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SemiringFacts {
    pub name: String,
    pub has_product: bool,
    pub unit: CatElem,
    pub unit_compact: Fact,
    pub solid: Fact,
    pub o5: Fact,
    pub o6: Fact,
    pub char_solid: [Fact; 5],
}

const COMPACT_UNIT_SOLID: &str = "solid with compact unit, so ⟦R,R⟧ ≅ R via π_R and evaluation is an isomorphism";

pub fn facts(name: &str) -> Result<SemiringFacts> {
    let c = Carrier::parse(name)?;
    let unit = c.unit().ok_or_else(|| Error::Unknown(format!("{c} is not a Cu-semiring")))?;
    let unit_compact = c.waybelow(&unit, &unit);
    let solid_compact = |why: &str, o: (Fact, Fact)| SemiringFacts {
        name: c.to_string(),
        has_product: true,
        unit: unit.clone(),
        unit_compact: fact(unit_compact, "unit is way-below itself"),
        solid: fact(true, why),
        o5: o.0,
        o6: o.1,
        char_solid: [
            fact(true, why),
            fact(true, COMPACT_UNIT_SOLID),
            fact(true, "implied by (2)"),
            fact(true, COMPACT_UNIT_SOLID),
            fact(true, "equivalent to (4) since ε_R∘π_R = id"),
        ],
    };
    let cstar = |what: &str| {
        (fact(true, &format!("Cuntz semigroup of {what}")), fact(true, &format!("Cuntz semigroup of {what}")))
    };
    Ok(match &c {
        Carrier::NBar => solid_compact("N̄⊗N̄ ≅ N̄ (tensor unit)", cstar("the complex numbers")),
        Carrier::E(k) => {
            let p = Pom::e_k(*k as usize);
            let o5 = check_o5(&p)?.is_empty();
            let o6 = check_o6(&p)?.is_empty();
            solid_compact(
                "solid Cu-semiring with the capped product",
                (fact(o5, "decided by the finite O5 checker"), fact(o6, "decided by the finite O6 checker")),
            )
        }
        Carrier::Z => solid_compact("multiplication Z⊗Z → Z is an isomorphism", cstar("the Jiang–Su algebra")),
        Carrier::R(PrimeSet::All) => solid_compact("R_q⊗R_q ≅ R_{q²} = R_q", cstar("the universal UHF algebra")),
        Carrier::R(_) => solid_compact("R_q⊗R_q ≅ R_{q²} = R_q", cstar("a UHF algebra of infinite type")),
        Carrier::PBar => SemiringFacts {
            name: c.to_string(),
            has_product: true,
            unit: unit.clone(),
            unit_compact: fact(false, "1 is the supremum of 1-1/n, never reached"),
            solid: fact(true, "multiplication P̄⊗P̄ → P̄ is an isomorphism"),
            o5: fact(true, "Cuntz semigroup of the Jacelon–Razak algebra"),
            o6: fact(true, "Cuntz semigroup of the Jacelon–Razak algebra"),
            char_solid: [
                fact(true, "P̄ is solid"),
                fact(true, "solid with O5 and O6, which suffices for the evaluation map"),
                fact(true, "implied by (2)"),
                fact(false, "⟦P̄,P̄⟧ ≅ M₁ has compacts, P̄ has none besides 0"),
                fact(false, "equivalent to (4)"),
            ],
        },
        Carrier::M1 => SemiringFacts {
            name: c.to_string(),
            has_product: true,
            unit: unit.clone(),
            unit_compact: fact(unit_compact, "unit is way-below itself"),
            solid: fact(false, "multiplication M₁⊗M₁ → M₁ is not an isomorphism"),
            o5: fact(true, "Cuntz semigroup of a II₁-factor"),
            o6: fact(true, "Cuntz semigroup of a II₁-factor"),
            char_solid: [
                fact(false, "M₁ is not solid"),
                fact(false, "(2) would imply (1)"),
                fact(true, "implied by (4)"),
                fact(true, "π_{M₁}: M₁ → ⟦M₁,M₁⟧ is an isomorphism"),
                fact(true, "equivalent to (4)"),
            ],
        },
        _ => return Err(Error::Unknown(format!("no fact row for {c}"))),
    })
}

/// Carriers that carry a fact row.
pub fn fact_table() -> Vec<SemiringFacts> {
    ["Nbar", "E0", "E1", "E2", "E3", "Pbar", "Z", "R2", "R{2,3}", "Q", "M1"]
        .iter()
        .map(|n| facts(n).expect("known fact row"))
        .collect()
}
