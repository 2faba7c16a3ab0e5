//! Tensor products: closed forms for catalog carriers, formal sums of simple
//! tensors, and a bounded search for counterexamples to the universal
//! property on finite Cu-semigroups.
//!
//! There is no general tensor construction here. Closed forms are resolved
//! by normalizing the multiset of factors; anything outside the rules is
//! reported as having no closed form.

use serde::Serialize;

use crate::bivariant::{bimorphism_violation, bimorphisms, nmul_cat, tag_mul};
use crate::catalog::{Carrier, CatElem, PrimeSet};
use crate::family::cu_family;
use crate::finite::{morphisms, FiniteCu};
use crate::numbers::NInf;
use crate::order::Pom;
use crate::{Error, Result};

fn free_rank(c: &Carrier) -> Option<usize> {
    match c {
        Carrier::NBar => Some(1),
        Carrier::NBarPow(k) => Some(*k),
        Carrier::Mat { rows, cols } => Some(rows * cols),
        _ => None,
    }
}

fn r_primes(c: &Carrier) -> Option<PrimeSet> {
    match c {
        Carrier::Z => Some(PrimeSet::Finite(Default::default())),
        Carrier::R(q) => Some(q.clone()),
        _ => None,
    }
}

fn r_carrier(p: PrimeSet) -> Carrier {
    match &p {
        PrimeSet::Finite(s) if s.is_empty() => Carrier::Z,
        _ => Carrier::R(p),
    }
}

/// `X⊗X ≅ X` through the multiplication, for semirings where it is an isomorphism.
fn idempotent(c: &Carrier) -> bool {
    matches!(c, Carrier::E(_) | Carrier::PBar)
}

/// Resolves `c₁⊗…⊗c_n` to a catalog carrier. The factors are treated as a
/// multiset: `N̄` is dropped, free factors multiply ranks, the `R_q` family
/// merges by union of prime sets, and `X⊗X ≅ X` for `E_k` and `P̄`.
pub fn tensor_resolve(factors: &[Carrier]) -> Result<Carrier> {
    let fail = || {
        let names: Vec<String> = factors.iter().map(|c| c.to_string()).collect();
        Error::NoClosedForm(names.join("⊗"))
    };
    let mut rank = 1usize;
    let mut primes: Option<PrimeSet> = None;
    let mut others: Vec<&Carrier> = Vec::new();
    for c in factors {
        if let Some(k) = free_rank(c) {
            rank = rank.checked_mul(k).ok_or_else(fail)?;
        } else if let Some(p) = r_primes(c) {
            primes = Some(match primes {
                None => p,
                Some(q) => q.union(&p),
            });
        } else if !others.contains(&c) || !idempotent(c) {
            others.push(c);
        }
    }
    let mut kinds: Vec<Carrier> = others.into_iter().cloned().collect();
    if let Some(p) = primes {
        kinds.push(r_carrier(p));
    }
    match (kinds.len(), rank) {
        (0, 1) => Ok(Carrier::NBar),
        (0, k) => Ok(Carrier::NBarPow(k)),
        (1, 1) => Ok(kinds.pop().expect("one kind")),
        _ => Err(fail()),
    }
}

/// `left⊗right` for two catalog carriers.
pub fn tensor_catalog(left: &Carrier, right: &Carrier) -> Result<Carrier> {
    tensor_resolve(&[left.clone(), right.clone()])
}

fn flatten(e: &CatElem) -> Vec<NInf> {
    match e {
        CatElem::N(x) => vec![*x],
        CatElem::Tuple(v) => v.clone(),
        CatElem::Mat(m) => m.iter().flatten().copied().collect(),
        _ => Vec::new(),
    }
}

/// Image of the simple tensor `a⊗b` in the resolved carrier.
pub fn embed_simple(left: &Carrier, a: &CatElem, right: &Carrier, b: &CatElem) -> Result<(Carrier, CatElem)> {
    left.check(a)?;
    right.check(b)?;
    let r = tensor_catalog(left, right)?;
    let e = match (free_rank(left), free_rank(right)) {
        (Some(_), Some(_)) => {
            let v: Vec<NInf> = flatten(a).iter().flat_map(|x| flatten(b).into_iter().map(move |y| x.mul(y))).collect();
            if v.len() == 1 {
                CatElem::N(v[0])
            } else {
                CatElem::Tuple(v)
            }
        }
        (Some(1), None) => nmul_cat(right, flatten(a)[0], b),
        (None, Some(1)) => nmul_cat(left, flatten(b)[0], a),
        _ => match &r {
            Carrier::E(_) => r.mul(a, b)?,
            Carrier::PBar => CatElem::X(a.value().expect("scalar").mul(&b.value().expect("scalar"))),
            _ => tag_mul(a, b)?,
        },
    };
    r.check(&e)?;
    Ok((r, e))
}

/// A finite sum of simple tensors `Σ aᵢ⊗bᵢ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FormalTensor {
    pub left: Carrier,
    pub right: Carrier,
    pub terms: Vec<(CatElem, CatElem)>,
}

/// Drops terms with a zero factor and sorts the rest; equal terms are kept.
pub fn bilinear_normalize(t: &FormalTensor) -> Result<FormalTensor> {
    let mut terms = Vec::new();
    for (a, b) in &t.terms {
        t.left.check(a)?;
        t.right.check(b)?;
        if *a != t.left.zero() && *b != t.right.zero() {
            terms.push((a.clone(), b.clone()));
        }
    }
    terms.sort();
    Ok(FormalTensor { left: t.left.clone(), right: t.right.clone(), terms })
}

impl FormalTensor {
    /// Sum of the embedded simple tensors in the resolved carrier.
    pub fn embed(&self) -> Result<(Carrier, CatElem)> {
        let r = tensor_catalog(&self.left, &self.right)?;
        let mut acc = r.zero();
        for (a, b) in &self.terms {
            let (_, e) = embed_simple(&self.left, a, &self.right, b)?;
            acc = r.add(&acc, &e);
        }
        Ok((r, acc))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum FailureKind {
    /// No Cu-morphism `α` with `α∘ω = φ`.
    NoFactorization,
    /// More than one such `α`.
    NotUnique,
    /// `α₁∘ω ≤ α₂∘ω` disagrees with `α₁ ≤ α₂`.
    OrderReflection,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UniversalViolation {
    pub q: Pom,
    pub kind: FailureKind,
    /// The bimorphism `φ` (factorization failures).
    pub phi: Option<Vec<Vec<usize>>>,
    /// Offending morphisms `P → Q`.
    pub alphas: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FalsifyReport {
    pub structures_checked: usize,
    pub bimorphisms_checked: usize,
    pub violation: Option<UniversalViolation>,
}

fn compose_omega(alpha: &[usize], omega: &[Vec<usize>]) -> Vec<Vec<usize>> {
    omega.iter().map(|row| row.iter().map(|&x| alpha[x]).collect()).collect()
}

fn pointwise_le(q: &Pom, a: &[Vec<usize>], b: &[Vec<usize>]) -> bool {
    a.iter().flatten().zip(b.iter().flatten()).all(|(&x, &y)| q.le(x, y))
}

fn check_against(
    s: &Pom,
    t: &Pom,
    p: &Pom,
    omega: &[Vec<usize>],
    q: &Pom,
    bound: usize,
) -> Result<(usize, Option<UniversalViolation>)> {
    let alphas = morphisms(p, q, bound)?;
    let composed: Vec<Vec<Vec<usize>>> = alphas.iter().map(|a| compose_omega(a, omega)).collect();
    let phis = bimorphisms(s, t, q, bound)?;
    for phi in &phis {
        let hits: Vec<Vec<usize>> =
            alphas.iter().zip(&composed).filter(|(_, c)| *c == phi).map(|(a, _)| a.clone()).collect();
        let kind = match hits.len() {
            0 => FailureKind::NoFactorization,
            1 => continue,
            _ => FailureKind::NotUnique,
        };
        return Ok((phis.len(), Some(UniversalViolation { q: q.clone(), kind, phi: Some(phi.clone()), alphas: hits })));
    }
    for i in 0..alphas.len() {
        for j in 0..alphas.len() {
            let le = alphas[i].iter().zip(&alphas[j]).all(|(&x, &y)| q.le(x, y));
            if le != pointwise_le(q, &composed[i], &composed[j]) {
                return Ok((
                    phis.len(),
                    Some(UniversalViolation {
                        q: q.clone(),
                        kind: FailureKind::OrderReflection,
                        phi: None,
                        alphas: vec![alphas[i].clone(), alphas[j].clone()],
                    }),
                ));
            }
        }
    }
    Ok((phis.len(), None))
}

/// Searches every finite Cu-semigroup `Q` with at most `size` elements for a
/// failure of `(P, ω)` to be the tensor product of `S` and `T`. Finding none
/// is evidence, not proof.
pub fn universal_property_falsify(
    s: &FiniteCu,
    t: &FiniteCu,
    p: &FiniteCu,
    omega: &[Vec<usize>],
    size: usize,
    bound: usize,
) -> Result<FalsifyReport> {
    if let Some(law) = bimorphism_violation(&s.pom, &t.pom, &p.pom, omega) {
        return Err(Error::Bimorphism(law));
    }
    let mut report = FalsifyReport { structures_checked: 0, bimorphisms_checked: 0, violation: None };
    for q in cu_family(size)? {
        let (count, violation) = check_against(&s.pom, &t.pom, &p.pom, omega, &q.pom, bound)?;
        report.structures_checked += 1;
        report.bimorphisms_checked += count;
        if violation.is_some() {
            report.violation = violation;
            break;
        }
    }
    Ok(report)
}

/// Re-checks a reported violation from scratch.
pub fn replay(s: &FiniteCu, t: &FiniteCu, p: &FiniteCu, omega: &[Vec<usize>], v: &UniversalViolation) -> bool {
    let valid: Vec<bool> = v.alphas.iter().map(|a| crate::finite::is_morphism(&p.pom, &v.q, a)).collect();
    if valid.iter().any(|ok| !ok) {
        return false;
    }
    match v.kind {
        FailureKind::NoFactorization | FailureKind::NotUnique => {
            let Some(phi) = &v.phi else { return false };
            if bimorphism_violation(&s.pom, &t.pom, &v.q, phi).is_some() {
                return false;
            }
            let Ok(all) = morphisms(&p.pom, &v.q, usize::MAX) else { return false };
            let hits = all.iter().filter(|a| compose_omega(a, omega) == *phi).count();
            match v.kind {
                FailureKind::NoFactorization => hits == 0,
                _ => hits > 1 && v.alphas.iter().all(|a| compose_omega(a, omega) == *phi),
            }
        }
        FailureKind::OrderReflection => {
            let [a1, a2] = &v.alphas[..] else { return false };
            let le = a1.iter().zip(a2).all(|(&x, &y)| v.q.le(x, y));
            le != pointwise_le(&v.q, &compose_omega(a1, omega), &compose_omega(a2, omega))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::DEFAULT_BOUND;

    fn c(s: &str) -> Carrier {
        Carrier::parse(s).unwrap()
    }

    #[test]
    fn catalog_examples() {
        assert_eq!(tensor_catalog(&c("R2"), &c("R3")).unwrap(), c("R{2,3}"));
        assert_eq!(tensor_catalog(&c("E2"), &c("Nbar")).unwrap(), c("E2"));
        assert_eq!(tensor_catalog(&c("Nbar^2"), &c("Nbar^3")).unwrap(), c("Nbar^6"));
        assert_eq!(tensor_catalog(&c("Z"), &c("R5")).unwrap(), c("R5"));
        assert_eq!(tensor_catalog(&c("Q"), &c("R5")).unwrap(), c("Q"));
        assert_eq!(tensor_catalog(&c("Nbar"), &c("Nbar")).unwrap(), c("Nbar"));
        assert_eq!(tensor_catalog(&c("Z"), &c("Z")).unwrap(), c("Z"));
        assert_eq!(tensor_catalog(&c("M1"), &c("Nbar")).unwrap(), c("M1"));
        for (a, b) in [("E2", "E3"), ("M1", "M1"), ("Z", "Pbar"), ("Nbar^2", "Z"), ("Sex", "Sex")] {
            assert!(matches!(tensor_catalog(&c(a), &c(b)), Err(Error::NoClosedForm(_))), "{a} {b}");
        }
    }

    #[test]
    fn rewriting_is_confluent() {
        let names = ["Nbar", "Nbar^2", "Z", "R2", "R3", "Q", "E1", "E2", "Pbar", "M1"];
        let perms = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        for x in names {
            for y in names {
                for z in names {
                    let f = [c(x), c(y), c(z)];
                    let whole = tensor_resolve(&f).ok();
                    for p in perms {
                        let g = [&f[p[0]], &f[p[1]], &f[p[2]]];
                        let left = tensor_catalog(g[0], g[1]).and_then(|ab| tensor_catalog(&ab, g[2])).ok();
                        let right = tensor_catalog(g[1], g[2]).and_then(|bc| tensor_catalog(g[0], &bc)).ok();
                        assert_eq!(left, whole, "{x} {y} {z}");
                        assert_eq!(right, whole, "{x} {y} {z}");
                    }
                }
            }
        }
    }

    #[test]
    fn simple_tensor_embedding() {
        let (r, e) = embed_simple(&c("Z"), &CatElem::cpt(3, 1), &c("R2"), &CatElem::soft(1, 2)).unwrap();
        assert_eq!(r, c("R2"));
        assert_eq!(e, CatElem::soft(3, 2));
        let (_, e) = embed_simple(&c("Nbar"), &CatElem::N(NInf::Inf), &c("E2"), &CatElem::N(NInf::ONE)).unwrap();
        assert_eq!(e, CatElem::N(NInf::Inf));
        let (r, e) = embed_simple(
            &c("Nbar^2"),
            &CatElem::Tuple(vec![NInf::ONE, NInf::Fin(2)]),
            &c("Nbar^2"),
            &CatElem::Tuple(vec![NInf::ZERO, NInf::Inf]),
        )
        .unwrap();
        assert_eq!(r, c("Nbar^4"));
        assert_eq!(e, CatElem::Tuple(vec![NInf::ZERO, NInf::Inf, NInf::ZERO, NInf::Inf]));
    }

    #[test]
    fn normalize_examples() {
        let z = FormalTensor {
            left: c("E2"),
            right: c("E2"),
            terms: vec![(CatElem::N(NInf::ONE), CatElem::N(NInf::ZERO))],
        };
        assert!(bilinear_normalize(&z).unwrap().terms.is_empty());
        let ab = (CatElem::N(NInf::ONE), CatElem::N(NInf::ONE));
        let d = FormalTensor { left: c("E2"), right: c("E2"), terms: vec![ab.clone(), ab] };
        let n = bilinear_normalize(&d).unwrap();
        assert_eq!(n.terms.len(), 2);
        assert_eq!(n.embed().unwrap().1, CatElem::N(NInf::Fin(2)));
        let t = FormalTensor {
            left: c("Z"),
            right: c("R3"),
            terms: vec![
                (CatElem::cpt(2, 1), CatElem::cpt(1, 3)),
                (CatElem::cpt(0, 1), CatElem::cpt(5, 1)),
                (CatElem::cpt(1, 1), CatElem::soft(1, 1)),
            ],
        };
        assert_eq!(t.embed().unwrap(), bilinear_normalize(&t).unwrap().embed().unwrap());
        assert_eq!(t.embed().unwrap().1, CatElem::soft(5, 3));
    }

    #[test]
    fn falsifier_examples() {
        let e0 = FiniteCu::e_k(0);
        let omega = vec![vec![0, 0], vec![0, 1]];
        let r = universal_property_falsify(&e0, &e0, &e0, &omega, 3, DEFAULT_BOUND).unwrap();
        assert!(r.violation.is_none(), "{r:?}");
        assert!(r.structures_checked >= 4);

        let d = e0.direct_sum(&e0);
        let top = d.pom.sum(1, 2).max(d.pom.sum(2, 1));
        let diag = vec![vec![0, 0], vec![0, top]];
        let r = universal_property_falsify(&e0, &e0, &d, &diag, 3, DEFAULT_BOUND).unwrap();
        let v = r.violation.expect("diagonal is not universal");
        assert!(replay(&e0, &e0, &d, &diag, &v));

        let t = FiniteCu::trivial();
        let r = universal_property_falsify(&t, &t, &t, &[vec![0]], 3, DEFAULT_BOUND).unwrap();
        assert!(r.violation.is_none());

        let bad = vec![vec![0, 1], vec![0, 1]];
        assert!(matches!(universal_property_falsify(&e0, &e0, &e0, &bad, 3, DEFAULT_BOUND), Err(Error::Bimorphism(_))));
    }
}
