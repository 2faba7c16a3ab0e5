//! Positively ordered monoids, auxiliary relations and the axiom checkers.
//!
//! In a finite poset every increasing sequence is eventually constant, so the
//! way-below relation of a finite pom coincides with its order.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Bound `K` used by the softness test `(k+1)a' ≤ ka, k ≤ K`.
pub const K_TEST: usize = 16;

/// Largest number of quintuples `check_o5` will scan.
pub const CHECK_LIMIT: u128 = 100_000_000;

/// Finite commutative monoid with a compatible partial order, stored as tables.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Pom {
    pub elements: Vec<String>,
    pub zero: usize,
    pub add: Vec<Vec<usize>>,
    pub leq: Vec<Vec<bool>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AuxRelation {
    pub rel: Vec<Vec<bool>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Violation {
    pub law: String,
    pub witness: Vec<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn laws(&self) -> Vec<&str> {
        self.violations.iter().map(|v| v.law.as_str()).collect()
    }

    fn push(&mut self, law: &str, witness: Vec<String>) {
        if !self.violations.iter().any(|v| v.law == law) {
            self.violations.push(Violation { law: law.to_string(), witness });
        }
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return write!(f, "valid");
        }
        let parts: Vec<String> =
            self.violations.iter().map(|v| format!("{} at ({})", v.law, v.witness.join(","))).collect();
        write!(f, "{}", parts.join("; "))
    }
}

fn square(name: &str, t: &[Vec<impl Sized>], n: usize) -> Result<()> {
    if t.len() != n || t.iter().any(|row| row.len() != n) {
        return Err(Error::Structure(format!("{name} table must be {n}x{n}")));
    }
    Ok(())
}

impl Pom {
    /// Builds a pom after checking table shapes and index ranges; the laws are
    /// checked separately by [`validate_pom`].
    pub fn new(elements: Vec<String>, zero: usize, add: Vec<Vec<usize>>, leq: Vec<Vec<bool>>) -> Result<Pom> {
        let n = elements.len();
        if n == 0 {
            return Err(Error::Structure("no elements".into()));
        }
        if zero >= n {
            return Err(Error::Structure(format!("zero index {zero} out of range")));
        }
        square("add", &add, n)?;
        square("leq", &leq, n)?;
        if let Some(v) = add.iter().flatten().find(|&&v| v >= n) {
            return Err(Error::Structure(format!("add entry {v} out of range")));
        }
        let mut seen = std::collections::HashSet::new();
        if let Some(dup) = elements.iter().find(|e| !seen.insert(e.as_str())) {
            return Err(Error::Structure(format!("duplicate label {dup:?}")));
        }
        Ok(Pom { elements, zero, add, leq })
    }

    /// The one-element monoid `{0}`.
    pub fn trivial() -> Pom {
        Pom::new(vec!["0".into()], 0, vec![vec![0]], vec![vec![true]]).unwrap()
    }

    /// `E_k = {0, 1, ..., k, ∞}` with `a+b = ∞` once `a+b > k`.
    pub fn e_k(k: usize) -> Pom {
        let n = k + 2;
        let label = |i: usize| if i == k + 1 { "inf".to_string() } else { i.to_string() };
        let add = (0..n).map(|a| (0..n).map(|b| if a + b > k { k + 1 } else { a + b }).collect()).collect();
        let leq = (0..n).map(|a| (0..n).map(|b| a <= b).collect()).collect();
        Pom::new((0..n).map(label).collect(), 0, add, leq).unwrap()
    }

    /// The chain `{0, 1, ..., m}` with addition truncated at `m`.
    pub fn truncated(m: usize) -> Pom {
        let n = m + 1;
        let add = (0..n).map(|a| (0..n).map(|b| (a + b).min(m)).collect()).collect();
        let leq = (0..n).map(|a| (0..n).map(|b| a <= b).collect()).collect();
        Pom::new((0..n).map(|i| i.to_string()).collect(), 0, add, leq).unwrap()
    }

    /// Direct sum with componentwise order and addition, elements in
    /// lexicographic order of index pairs.
    pub fn direct_sum(&self, other: &Pom) -> Pom {
        let (n, m) = (self.len(), other.len());
        let idx = |a: usize, b: usize| a * m + b;
        let mut elements = Vec::with_capacity(n * m);
        for a in 0..n {
            for b in 0..m {
                elements.push(format!("({},{})", self.elements[a], other.elements[b]));
            }
        }
        let mut add = vec![vec![0; n * m]; n * m];
        let mut leq = vec![vec![false; n * m]; n * m];
        for a in 0..n {
            for b in 0..m {
                for c in 0..n {
                    for d in 0..m {
                        add[idx(a, b)][idx(c, d)] = idx(self.add[a][c], other.add[b][d]);
                        leq[idx(a, b)][idx(c, d)] = self.leq[a][c] && other.leq[b][d];
                    }
                }
            }
        }
        Pom::new(elements, idx(self.zero, other.zero), add, leq).unwrap()
    }

    /// Restriction to a subset that contains zero and is closed under addition.
    pub fn restrict(&self, keep: &[usize]) -> Result<Pom> {
        let pos = |x: usize| keep.iter().position(|&k| k == x);
        let zero = pos(self.zero).ok_or_else(|| Error::Precondition("subset does not contain zero".into()))?;
        let mut add = Vec::with_capacity(keep.len());
        for &a in keep {
            let mut row = Vec::with_capacity(keep.len());
            for &b in keep {
                let s = self.add[a][b];
                row.push(pos(s).ok_or_else(|| {
                    Error::Precondition(format!(
                        "subset not closed: {}+{}={}",
                        self.elements[a], self.elements[b], self.elements[s]
                    ))
                })?);
            }
            add.push(row);
        }
        let leq = keep.iter().map(|&a| keep.iter().map(|&b| self.leq[a][b]).collect()).collect();
        let elements = keep.iter().map(|&a| self.elements[a].clone()).collect();
        Pom::new(elements, zero, add, leq)
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn le(&self, a: usize, b: usize) -> bool {
        self.leq[a][b]
    }

    pub fn sum(&self, a: usize, b: usize) -> usize {
        self.add[a][b]
    }

    pub fn label(&self, a: usize) -> &str {
        &self.elements[a]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.elements.iter().position(|e| e == label)
    }

    /// `n·a`, with `0·a = 0`.
    pub fn multiple(&self, n: usize, a: usize) -> usize {
        (0..n).fold(self.zero, |acc, _| self.add[acc][a])
    }

    /// Order relation as an auxiliary relation.
    pub fn order_relation(&self) -> AuxRelation {
        AuxRelation { rel: self.leq.clone() }
    }

    fn labels(&self, xs: &[usize]) -> Vec<String> {
        xs.iter().map(|&x| self.elements[x].clone()).collect()
    }

    /// Greedy additive generating set: elements are scanned by the number of
    /// elements below them and added when not yet generated.
    pub fn generators(&self) -> Vec<usize> {
        let n = self.len();
        let mut order: Vec<usize> = (0..n).collect();
        let height = |a: usize| (0..n).filter(|&b| self.leq[b][a]).count();
        order.sort_by_key(|&a| (height(a), a));
        let mut generated = vec![false; n];
        generated[self.zero] = true;
        let mut gens = Vec::new();
        for a in order {
            if generated[a] {
                continue;
            }
            gens.push(a);
            loop {
                let mut changed = false;
                for x in 0..n {
                    if !generated[x] {
                        continue;
                    }
                    for &g in &gens {
                        let s = self.add[x][g];
                        if !generated[s] {
                            generated[s] = true;
                            changed = true;
                        }
                    }
                }
                if !changed {
                    break;
                }
            }
        }
        gens
    }
}

/// Checks the monoid, partial-order and compatibility laws; each violated law
/// is reported once, with its first witness.
pub fn validate_pom(p: &Pom) -> Result<ValidationReport> {
    Pom::new(p.elements.clone(), p.zero, p.add.clone(), p.leq.clone())?;
    let n = p.len();
    let z = p.zero;
    let mut r = ValidationReport::default();
    for a in 0..n {
        if p.add[a][z] != a || p.add[z][a] != a {
            r.push("zero-neutral", p.labels(&[a]));
        }
        if !p.leq[a][a] {
            r.push("reflexivity", p.labels(&[a]));
        }
        if !p.leq[z][a] {
            r.push("zero-least", p.labels(&[a]));
        }
        for b in 0..n {
            if p.add[a][b] != p.add[b][a] {
                r.push("commutativity", p.labels(&[a, b]));
            }
            if a != b && p.leq[a][b] && p.leq[b][a] {
                r.push("antisymmetry", p.labels(&[a, b]));
            }
            for c in 0..n {
                if p.add[p.add[a][b]][c] != p.add[a][p.add[b][c]] {
                    r.push("associativity", p.labels(&[a, b, c]));
                }
                if p.leq[a][b] && p.leq[b][c] && !p.leq[a][c] {
                    r.push("transitivity", p.labels(&[a, b, c]));
                }
                if p.leq[a][b] && !p.leq[p.add[a][c]][p.add[b][c]] {
                    r.push("add-compatibility", p.labels(&[a, b, c]));
                }
            }
        }
    }
    Ok(r)
}

/// Checks the four auxiliary-relation laws against the pom `p`.
pub fn validate_aux(p: &Pom, aux: &AuxRelation) -> Result<ValidationReport> {
    let n = p.len();
    square("aux", &aux.rel, n)?;
    let rel = &aux.rel;
    let mut r = ValidationReport::default();
    for x in 0..n {
        if !rel[p.zero][x] {
            r.push("zero-aux", p.labels(&[p.zero, x]));
        }
        for y in 0..n {
            if !rel[x][y] {
                continue;
            }
            if !p.leq[x][y] {
                r.push("aux-implies-leq", p.labels(&[x, y]));
            }
            for x1 in 0..n {
                if !p.leq[x1][x] {
                    continue;
                }
                for y1 in 0..n {
                    if p.leq[y][y1] && !rel[x1][y1] {
                        r.push("aux-monotone", p.labels(&[x1, x, y, y1]));
                    }
                }
            }
            for x2 in 0..n {
                for y2 in 0..n {
                    if rel[x2][y2] && !rel[p.add[x][x2]][p.add[y][y2]] {
                        r.push("aux-additive", p.labels(&[x, y, x2, y2]));
                    }
                }
            }
        }
    }
    Ok(r)
}

/// Whether the relation is transitive; returns the first failing triple.
pub fn transitivity_witness(rel: &AuxRelation) -> Option<(usize, usize, usize)> {
    let n = rel.rel.len();
    for a in 0..n {
        for b in 0..n {
            if !rel.rel[a][b] {
                continue;
            }
            for c in 0..n {
                if rel.rel[b][c] && !rel.rel[a][c] {
                    return Some((a, b, c));
                }
            }
        }
    }
    None
}

fn guard(p: &Pom, arity: u32, what: &str) -> Result<()> {
    let needed = (p.len() as u128).pow(arity);
    if needed > CHECK_LIMIT {
        return Err(Error::Bound { what: what.into(), needed: needed.to_string(), bound: CHECK_LIMIT as usize });
    }
    Ok(())
}

/// Quintuples `(a',a,b',b,c)` violating almost algebraic order, over labels.
pub fn check_o5(p: &Pom) -> Result<Vec<[String; 5]>> {
    guard(p, 5, "O5 check")?;
    let n = p.len();
    let mut out = Vec::new();
    for a in 0..n {
        for b in 0..n {
            let ab = p.add[a][b];
            for c in (0..n).filter(|&c| p.leq[ab][c]) {
                for a1 in (0..n).filter(|&x| p.leq[x][a]) {
                    for b1 in (0..n).filter(|&x| p.leq[x][b]) {
                        let found = (0..n).any(|x| p.leq[p.add[a1][x]][c] && p.leq[c][p.add[a][x]] && p.leq[b1][x]);
                        if !found {
                            out.push([a1, a, b1, b, c].map(|i| p.elements[i].clone()));
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Quadruples `(a',a,b,c)` violating almost Riesz decomposition, over labels.
pub fn check_o6(p: &Pom) -> Result<Vec<[String; 4]>> {
    guard(p, 5, "O6 check")?;
    let n = p.len();
    let mut out = Vec::new();
    for a in 0..n {
        for b in 0..n {
            for c in (0..n).filter(|&c| p.leq[a][p.add[b][c]]) {
                for a1 in (0..n).filter(|&x| p.leq[x][a]) {
                    let found = (0..n)
                        .filter(|&x| p.leq[x][a] && p.leq[x][b])
                        .any(|b1| (0..n).any(|c1| p.leq[c1][a] && p.leq[c1][c] && p.leq[a1][p.add[b1][c1]]));
                    if !found {
                        out.push([a1, a, b, c].map(|i| p.elements[i].clone()));
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Bounded softness test: every `a' ≤ a` must satisfy `(k+1)a' ≤ ka` for some `k ≤ k_test`.
pub fn is_soft_bounded(p: &Pom, a: usize, k_test: usize) -> bool {
    (0..p.len()).filter(|&x| p.leq[x][a]).all(|x| (0..=k_test).any(|k| p.leq[p.multiple(k + 1, x)][p.multiple(k, a)]))
}

/// Exact element arithmetic every carrier supplies.
pub trait EffectiveCu {
    type Elem: Clone + PartialEq + fmt::Debug;

    fn zero(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn leq(&self, a: &Self::Elem, b: &Self::Elem) -> bool;
    fn waybelow(&self, a: &Self::Elem, b: &Self::Elem) -> bool;
    fn is_soft(&self, a: &Self::Elem) -> bool;
    fn parse(&self, s: &str) -> Result<Self::Elem>;
    fn format(&self, a: &Self::Elem) -> String;
    /// Deterministic sample of at most `n` elements.
    fn samples(&self, n: usize, seed: u64) -> Vec<Self::Elem>;

    fn eq(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        self.leq(a, b) && self.leq(b, a)
    }

    fn is_compact(&self, a: &Self::Elem) -> bool {
        self.waybelow(a, a)
    }

    fn multiple(&self, n: usize, a: &Self::Elem) -> Self::Elem {
        (0..n).fold(self.zero(), |acc, _| self.add(&acc, a))
    }

    /// Bounded softness check of `a` against the given candidates `a' ≪ a`.
    fn soft_against(&self, a: &Self::Elem, candidates: &[Self::Elem], k_test: usize) -> bool {
        candidates
            .iter()
            .filter(|x| self.waybelow(x, a))
            .all(|x| (0..=k_test).any(|k| self.leq(&self.multiple(k + 1, x), &self.multiple(k, a))))
    }
}

impl EffectiveCu for Pom {
    type Elem = usize;

    fn zero(&self) -> usize {
        self.zero
    }

    fn add(&self, a: &usize, b: &usize) -> usize {
        self.add[*a][*b]
    }

    fn leq(&self, a: &usize, b: &usize) -> bool {
        self.leq[*a][*b]
    }

    fn waybelow(&self, a: &usize, b: &usize) -> bool {
        self.leq[*a][*b]
    }

    fn is_soft(&self, a: &usize) -> bool {
        is_soft_bounded(self, *a, K_TEST)
    }

    fn parse(&self, s: &str) -> Result<usize> {
        self.index_of(s.trim()).ok_or_else(|| Error::Element(format!("no element {s:?}")))
    }

    fn format(&self, a: &usize) -> String {
        self.elements[*a].clone()
    }

    fn samples(&self, n: usize, _seed: u64) -> Vec<usize> {
        (0..self.len().min(n)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sub_e3() -> Pom {
        Pom::e_k(3).restrict(&[0, 2, 3, 4]).unwrap()
    }

    #[test]
    fn e2_is_valid() {
        assert!(validate_pom(&Pom::e_k(2)).unwrap().is_empty());
        assert!(validate_pom(&Pom::trivial()).unwrap().is_empty());
    }

    #[test]
    fn antisymmetry_violation_is_reported() {
        let mut p = Pom::truncated(2);
        p.leq[2][1] = true;
        let r = validate_pom(&p).unwrap();
        assert!(r.laws().contains(&"antisymmetry"));
        let v = r.violations.iter().find(|v| v.law == "antisymmetry").unwrap();
        assert_eq!(v.witness, vec!["1", "2"]);
    }

    #[test]
    fn malformed_tables_are_structural_errors() {
        let p =
            Pom { elements: vec!["0".into(), "1".into()], zero: 0, add: vec![vec![0]], leq: vec![vec![true; 2]; 2] };
        assert!(matches!(validate_pom(&p), Err(Error::Structure(_))));
        let aux = AuxRelation { rel: vec![vec![true]] };
        assert!(matches!(validate_aux(&Pom::e_k(1), &aux), Err(Error::Structure(_))));
    }

    #[test]
    fn strict_relation_on_capped_chain_is_not_additive() {
        // 2≺∞ and 1≺∞ would force ∞≺∞.
        let p = Pom::e_k(2);
        let rel = (0..4).map(|k| (0..4).map(|l| k < l || (k == 0 && l == 0)).collect()).collect();
        let r = validate_aux(&p, &AuxRelation { rel }).unwrap();
        assert_eq!(r.laws(), vec!["aux-additive"]);
    }

    #[test]
    fn zero_only_relation_is_auxiliary() {
        let p = Pom::truncated(2);
        let rel = (0..3).map(|k| (0..3).map(|_| k == 0).collect()).collect();
        assert!(validate_aux(&p, &AuxRelation { rel }).unwrap().is_empty());
    }

    #[test]
    fn missing_zero_row_is_reported() {
        let p = Pom::e_k(1);
        let mut aux = p.order_relation();
        aux.rel[0][1] = false;
        let r = validate_aux(&p, &aux).unwrap();
        assert!(r.laws().contains(&"zero-aux"));
    }

    #[test]
    fn order_is_auxiliary_to_itself() {
        for k in 0..4 {
            let p = Pom::e_k(k);
            assert!(validate_aux(&p, &p.order_relation()).unwrap().is_empty());
        }
    }

    #[test]
    fn o5_fails_on_hom_e2_e3() {
        let v = check_o5(&sub_e3()).unwrap();
        let w: Vec<String> = ["2", "2", "0", "0", "3"].iter().map(|s| s.to_string()).collect();
        assert!(v.iter().any(|q| q.to_vec() == w));
    }

    #[test]
    fn o5_and_o6_hold_on_small_e_k() {
        for k in 0..=3 {
            assert!(check_o5(&Pom::e_k(k)).unwrap().is_empty());
            assert!(check_o6(&Pom::e_k(k)).unwrap().is_empty());
        }
        assert!(check_o5(&Pom::trivial()).unwrap().is_empty());
        assert!(check_o6(&Pom::trivial()).unwrap().is_empty());
    }

    #[test]
    fn o6_holds_on_hom_e2_e3() {
        assert!(check_o6(&sub_e3()).unwrap().is_empty());
    }

    #[test]
    fn softness_in_e_k() {
        let p = Pom::e_k(2);
        // k·1 = ∞ for k ≥ 3, so every element passes (k+1)a' ≤ ka.
        assert!((0..4).all(|a| p.is_soft(&a)));
        assert!(p.is_compact(&1));
        assert!(!is_soft_bounded(&p, 1, 1));
    }

    #[test]
    fn generators_of_e_k_and_sums() {
        assert_eq!(Pom::e_k(4).generators(), vec![1]);
        assert_eq!(Pom::e_k(0).generators(), vec![1]);
        let s = Pom::e_k(0).direct_sum(&Pom::e_k(0));
        assert_eq!(s.generators().len(), 2);
    }
}
