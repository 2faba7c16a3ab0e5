//! Exact scalars: rationals, extended nonnegative rationals and extended naturals.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Rat::new(n, d))
}

pub fn fmt_rat(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Prime factors of a positive integer, by trial division.
pub fn prime_factors(n: &BigInt) -> Vec<u64> {
    let mut n = n.abs();
    let mut out = Vec::new();
    let mut p = 2u64;
    while BigInt::from(p) * BigInt::from(p) <= n {
        let bp = BigInt::from(p);
        if (&n % &bp).is_zero() {
            out.push(p);
            while (&n % &bp).is_zero() {
                n /= &bp;
            }
        }
        p += 1;
    }
    if n > BigInt::one() {
        let last: u64 = n.try_into().unwrap_or(u64::MAX);
        out.push(last);
    }
    out
}

/// Element of `[0, ∞]` with rational finite part.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Ext {
    Fin(Rat),
    Inf,
}

impl Ext {
    pub fn zero() -> Ext {
        Ext::Fin(Rat::zero())
    }

    pub fn int(n: i64) -> Ext {
        Ext::Fin(int(n))
    }

    pub fn frac(n: i64, d: i64) -> Ext {
        Ext::Fin(rat(n, d))
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Ext::Fin(r) if r.is_zero())
    }

    pub fn is_inf(&self) -> bool {
        matches!(self, Ext::Inf)
    }

    pub fn finite(&self) -> Option<&Rat> {
        match self {
            Ext::Fin(r) => Some(r),
            Ext::Inf => None,
        }
    }

    pub fn add(&self, other: &Ext) -> Ext {
        match (self, other) {
            (Ext::Fin(a), Ext::Fin(b)) => Ext::Fin(a + b),
            _ => Ext::Inf,
        }
    }

    /// Product with the convention `0·∞ = 0`.
    pub fn mul(&self, other: &Ext) -> Ext {
        if self.is_zero() || other.is_zero() {
            return Ext::zero();
        }
        match (self, other) {
            (Ext::Fin(a), Ext::Fin(b)) => Ext::Fin(a * b),
            _ => Ext::Inf,
        }
    }

    pub fn scale(&self, r: &Rat) -> Ext {
        self.mul(&Ext::Fin(r.clone()))
    }

    pub fn parse(s: &str) -> Result<Ext> {
        let t = s.trim();
        if t == "inf" || t == "∞" {
            return Ok(Ext::Inf);
        }
        let r = parse_rat(t)?;
        if r.is_negative() {
            return Err(Error::Element(format!("negative value {t}")));
        }
        Ok(Ext::Fin(r))
    }
}

impl fmt::Display for Ext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ext::Fin(r) => write!(f, "{}", fmt_rat(r)),
            Ext::Inf => write!(f, "inf"),
        }
    }
}

/// Element of `N̄ = {0, 1, 2, ..., ∞}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NInf {
    Fin(u64),
    Inf,
}

impl NInf {
    pub const ZERO: NInf = NInf::Fin(0);
    pub const ONE: NInf = NInf::Fin(1);

    pub fn is_zero(self) -> bool {
        self == NInf::ZERO
    }

    pub fn add(self, other: NInf) -> NInf {
        match (self, other) {
            (NInf::Fin(a), NInf::Fin(b)) => NInf::Fin(a.checked_add(b).expect("N̄ overflow")),
            _ => NInf::Inf,
        }
    }

    /// Product with the convention `0·∞ = 0`.
    pub fn mul(self, other: NInf) -> NInf {
        if self.is_zero() || other.is_zero() {
            return NInf::ZERO;
        }
        match (self, other) {
            (NInf::Fin(a), NInf::Fin(b)) => NInf::Fin(a.checked_mul(b).expect("N̄ overflow")),
            _ => NInf::Inf,
        }
    }

    /// Sum truncated to `E_k`: anything above `k` becomes `∞`.
    pub fn cap(self, k: u64) -> NInf {
        match self {
            NInf::Fin(a) if a <= k => self,
            _ => NInf::Inf,
        }
    }

    pub fn parse(s: &str) -> Result<NInf> {
        let t = s.trim();
        if t == "inf" || t == "∞" {
            return Ok(NInf::Inf);
        }
        t.parse::<u64>().map(NInf::Fin).map_err(|_| Error::Parse(format!("not an extended natural: {t:?}")))
    }
}

impl fmt::Display for NInf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NInf::Fin(a) => write!(f, "{a}"),
            NInf::Inf => write!(f, "inf"),
        }
    }
}

/// Smallest integer `≥ a/b` for positive `b`.
pub fn ceil_div(a: u64, b: u64) -> u64 {
    a.div_ceil(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print_round_trip() {
        for s in ["0", "3", "3/2", "inf"] {
            assert_eq!(Ext::parse(s).unwrap().to_string(), s);
        }
        assert_eq!(Ext::parse("6/4").unwrap().to_string(), "3/2");
        assert!(Ext::parse("-1").is_err());
        assert!(parse_rat("1/0").is_err());
    }

    #[test]
    fn zero_times_infinity_is_zero() {
        assert_eq!(Ext::zero().mul(&Ext::Inf), Ext::zero());
        assert_eq!(NInf::ZERO.mul(NInf::Inf), NInf::ZERO);
        assert_eq!(NInf::Fin(2).mul(NInf::Inf), NInf::Inf);
    }

    #[test]
    fn ordering_puts_infinity_last() {
        assert!(Ext::int(1000) < Ext::Inf);
        assert!(NInf::Fin(u64::MAX) < NInf::Inf);
    }

    #[test]
    fn factors() {
        assert_eq!(prime_factors(&BigInt::from(360)), vec![2, 3, 5]);
        assert_eq!(prime_factors(&BigInt::from(1)), Vec::<u64>::new());
        assert_eq!(prime_factors(&BigInt::from(97)), vec![97]);
    }
}
