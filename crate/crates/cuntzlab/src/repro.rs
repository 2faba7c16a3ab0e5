//! Reproduction cases: fixed computations with their expected output.

use serde::Serialize;

use crate::bivariant::{bivariant, bivariant_named, compose, eps_r, external_tensor, pi_r, solid_status, Space};
use crate::catalog::{Carrier, CatElem};
use crate::finite::{tau_finite, FiniteQ};
use crate::order::{check_o5, AuxRelation, Pom};
use crate::tensor::tensor_catalog;
use crate::{Error, Result};

#[derive(Clone, Debug, Serialize)]
pub struct ReproCase {
    pub id: &'static str,
    pub description: &'static str,
    /// How the expected value was obtained.
    pub basis: &'static str,
    pub expected: &'static str,
    #[serde(skip)]
    run: fn(usize) -> Result<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReproResult {
    pub id: String,
    pub description: String,
    pub basis: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
}

/// `{0,1,2}` with addition capped at 2 and only `0 ≺ x`; its τ is `{0}`.
pub fn strict3() -> FiniteQ {
    let pom = Pom::truncated(2);
    let rel = (0..3).map(|a| (0..3).map(|_| a == 0).collect()).collect();
    FiniteQ::new(pom, AuxRelation { rel }).expect("valid")
}

/// `⟦E_2,E_3⟧`, the submonoid `{0,2,3,∞}` of `E_3`.
pub fn hom_e2_e3(bound: usize) -> Result<Pom> {
    let b = bivariant_named("E2", "E3", bound)?;
    Ok(b.carrier.finite_cu().expect("finite").pom.clone())
}

fn elem(c: &str, e: &str) -> crate::bivariant::Value {
    crate::bivariant::Value::Cat(Carrier::parse(c).expect("carrier").parse_elem(e).expect("element"))
}

/// Expected `⟦E_k,E_l⟧`: `{0, ⌈(l+1)/(k+1)⌉, …, l, ∞}`.
pub fn expected_ek_el(k: usize, l: usize) -> Vec<String> {
    let start = (l + 1).div_ceil(k + 1);
    std::iter::once("0".to_string())
        .chain((start.max(1)..=l).map(|i| i.to_string()))
        .chain(std::iter::once("inf".to_string()))
        .collect()
}

fn ek_el(bound: usize) -> Result<String> {
    let mut ok = 0;
    for k in 0..=5 {
        for l in 0..=5 {
            let b = bivariant_named(&format!("E{k}"), &format!("E{l}"), bound)?;
            let got = &b.carrier.finite_cu().expect("finite").pom;
            let want = Pom::e_k(l).restrict(
                &expected_ek_el(k, l).iter().map(|s| Pom::e_k(l).index_of(s).expect("label")).collect::<Vec<_>>(),
            )?;
            if crate::finite::isomorphism(&want, got).is_some() && got.elements == want.elements {
                ok += 1;
            }
        }
    }
    Ok(format!("{ok}/36 pairs match"))
}

fn pbar_rules(bound: usize) -> Result<String> {
    let b = bivariant_named("Pbar", "Pbar", bound)?;
    let m = &b.carrier;
    let e = |s: &str| elem("M1", s);
    let sum = |x: &str, y: &str| -> Result<String> { Ok(format!("{x}+{y}={}", m.format(&m.add(&e(x), &e(y))?))) };
    let le = |x: &str, y: &str| -> Result<String> { Ok(format!("{x}<={y}:{}", m.leq(&e(x), &e(y))?)) };
    let parts = [
        m.name(),
        sum("cpt(1)", "soft(1/2)")?,
        sum("soft(1)", "soft(1)")?,
        sum("cpt(1)", "cpt(1)")?,
        le("cpt(1)", "soft(1)")?,
        le("soft(1)", "cpt(1)")?,
        le("cpt(1)", "soft(3/2)")?,
    ];
    Ok(parts.join("; "))
}

fn r2_r3(bound: usize) -> Result<String> {
    let b = bivariant_named("R2", "R3", bound)?;
    let cu: Vec<String> = b.compact_elements(50, 7)?.iter().map(|v| b.carrier.format(v)).collect();
    Ok(format!("{}; Cu={{{}}}", b.carrier.name(), cu.join(",")))
}

fn sex_hex(bound: usize) -> Result<String> {
    let b = bivariant_named("Sex", "Sex", bound)?;
    let top = b.carrier.leq(&elem("Hex", "cpt(inf)"), &elem("Hex", "soft(inf)"))?;
    Ok(format!("{}; cpt(inf)<=soft(inf):{top}", b.carrier.name()))
}

fn matrix_compose(bound: usize) -> Result<String> {
    let outer = bivariant_named("Nbar^3", "Nbar^2", bound)?;
    let inner = bivariant_named("Nbar^2", "Nbar^3", bound)?;
    let a = elem("Mat(2,3)", "mat[[1,0,2],[0,1,inf]]");
    let x = elem("Mat(3,2)", "mat[[1,1],[0,2],[3,0]]");
    let (r, v) = compose(&outer, &a, &inner, &x, bound)?;
    // The product must also agree with composing the endpoint maps.
    for basis in ["(1,0)", "(0,1)", "(2,inf)"] {
        let s = elem("Nbar^2", basis);
        if r.evaluate(&v, &s)? != outer.evaluate(&a, &inner.evaluate(&x, &s)?)? {
            return Err(Error::Mismatch(format!("composition disagrees with evaluation at {basis}")));
        }
    }
    Ok(r.carrier.format(&v))
}

fn kronecker(bound: usize) -> Result<String> {
    let b = bivariant_named("Nbar", "Nbar^2", bound)?;
    let (r, v) =
        external_tensor(&b, &elem("Mat(2,1)", "mat[[1],[2]]"), &b, &elem("Mat(2,1)", "mat[[0],[inf]]"), bound)?;
    Ok(r.carrier.format(&v))
}

fn o5_hom(bound: usize) -> Result<String> {
    let w = check_o5(&hom_e2_e3(bound)?)?;
    Ok(w.first().map_or("none".into(), |w| format!("({})", w.join(","))))
}

fn tau_strict3(_: usize) -> Result<String> {
    let t = tau_finite(&strict3());
    Ok(format!("{{{}}}", t.cu.pom.elements.join(",")))
}

fn eps_pi(bound: usize) -> Result<String> {
    let mut parts = Vec::new();
    for name in ["Pbar", "Z", "R2", "E3", "M1"] {
        let r = Carrier::parse(name)?;
        let mut ok = true;
        for a in r.sample(25, 5) {
            let (b, v) = pi_r(&r, &a, bound)?;
            ok &= eps_r(&r, &b, &v)? == a;
        }
        parts.push(format!("{name} {}", if ok { "ok" } else { "FAIL" }));
    }
    Ok(parts.join("; "))
}

fn char_solid(bound: usize) -> Result<String> {
    let row = |n: &str| -> Result<String> {
        let s = solid_status(n, bound)?;
        Ok(format!("{n} {}", s.statuses.iter().map(|&b| if b { '1' } else { '0' }).collect::<String>()))
    };
    Ok(format!("{}; {}", row("Pbar")?, row("M1")?))
}

fn tensor_r2_r3(_: usize) -> Result<String> {
    Ok(tensor_catalog(&Carrier::parse("R2")?, &Carrier::parse("R3")?)?.to_string())
}

fn pbar_compose(bound: usize) -> Result<String> {
    let b = bivariant(&Space::named("Pbar")?, &Space::named("Pbar")?, bound)?;
    let (_, v) = compose(&b, &elem("M1", "soft(2)"), &b, &elem("M1", "soft(3)"), bound)?;
    let e = b.evaluate(&v, &crate::bivariant::Value::Cat(CatElem::X(crate::numbers::Ext::int(5))))?;
    Ok(format!("{}; at 5: {}", b.carrier.format(&v), Space::named("Pbar")?.format(&e)))
}

pub fn cases() -> Vec<ReproCase> {
    vec![
        ReproCase {
            id: "ihom-E2-E3",
            description: "bivariant semigroup of E2 and E3 by finite enumeration",
            basis: "closed formula {0,ceil((l+1)/(k+1)),...,l,inf}",
            expected: "{0,2,3,inf}",
            run: |b| Ok(bivariant_named("E2", "E3", b)?.describe()),
        },
        ReproCase {
            id: "ihom-Ek-El",
            description: "bivariant semigroups of E_k and E_l for k,l <= 5",
            basis: "closed formula {0,ceil((l+1)/(k+1)),...,l,inf}",
            expected: "36/36 pairs match",
            run: ek_el,
        },
        ReproCase {
            id: "ihom-Pbar-Pbar",
            description: "bivariant semigroup of Pbar is M1 with its order and addition rules",
            basis: "closed-form rules: compact+soft is soft, cpt(a)<=soft(b) iff a<b",
            expected: "M1; cpt(1)+soft(1/2)=soft(3/2); soft(1)+soft(1)=soft(2); cpt(1)+cpt(1)=cpt(2); \
                       cpt(1)<=soft(1):false; soft(1)<=cpt(1):true; cpt(1)<=soft(3/2):true",
            run: pbar_rules,
        },
        ReproCase {
            id: "pbar-compose",
            description: "composition in the bivariant semigroup of Pbar",
            basis: "closed-form rule soft(a) o soft(b) = soft(ab)",
            expected: "soft(6); at 5: 30",
            run: pbar_compose,
        },
        ReproCase {
            id: "ihom-R2-R3",
            description: "bivariant semigroup of R2 and R3 and its compact elements",
            basis: "closed-form rule: no nonzero Cu-morphism R_p -> R_q unless p divides q",
            expected: "Pbar; Cu={0}",
            run: r2_r3,
        },
        ReproCase {
            id: "ihom-Sex-Sex",
            description: "bivariant semigroup of S_ex and its proper ideal below soft(inf)",
            basis: "closed-form rule; compact infinity is not below soft infinity",
            expected: "Hex; cpt(inf)<=soft(inf):false",
            run: sex_hex,
        },
        ReproCase {
            id: "matrix-compose",
            description: "composition in the matrix family is matrix multiplication",
            basis: "table composition of the endpoint maps",
            expected: "mat[[7,1],[inf,2]]",
            run: matrix_compose,
        },
        ReproCase {
            id: "matrix-tensor",
            description: "external tensor product in the matrix family is the Kronecker product",
            basis: "enumeration on simple tensors",
            expected: "mat[[0],[inf],[0],[inf]]",
            run: kronecker,
        },
        ReproCase {
            id: "o5-homE2E3",
            description: "almost algebraic order fails in {0,2,3,inf}",
            basis: "exhaustive search; no x with 2+x <= 3 <= 2+x",
            expected: "(2,2,0,0,3)",
            run: o5_hom,
        },
        ReproCase {
            id: "tau-strict3",
            description: "tau of the zero-only relation on {0,1,2}",
            basis: "only the constant zero path is self-related",
            expected: "{0}",
            run: tau_strict3,
        },
        ReproCase {
            id: "eps-pi",
            description: "epsilon after pi is the identity on 25 samples",
            basis: "closed-form semiring maps",
            expected: "Pbar ok; Z ok; R2 ok; E3 ok; M1 ok",
            run: eps_pi,
        },
        ReproCase {
            id: "char-solid",
            description: "solidity characterization statuses (1)-(5)",
            basis: "fact table",
            expected: "Pbar 11100; M1 00111",
            run: char_solid,
        },
        ReproCase {
            id: "tensor-R2-R3",
            description: "tensor product of R2 and R3",
            basis: "rewrite rule R_p (x) R_q = R_pq",
            expected: "R{2,3}",
            run: tensor_r2_r3,
        },
    ]
}

pub fn run_case(case: &ReproCase, bound: usize) -> ReproResult {
    let actual = (case.run)(bound).unwrap_or_else(|e| format!("error: {e}"));
    ReproResult {
        id: case.id.into(),
        description: case.description.into(),
        basis: case.basis.into(),
        expected: case.expected.into(),
        pass: actual == case.expected,
        actual,
    }
}

pub fn run_repro(id: &str, bound: usize) -> Result<ReproResult> {
    let case =
        cases().into_iter().find(|c| c.id == id).ok_or_else(|| Error::Unknown(format!("no repro case {id:?}")))?;
    Ok(run_case(&case, bound))
}

pub fn run_all(bound: usize) -> Vec<ReproResult> {
    cases().iter().map(|c| run_case(c, bound)).collect()
}
