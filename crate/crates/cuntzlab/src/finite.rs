//! Finite Q-semigroups: τ, ideals, quotients and the coreflection check.

use serde::{Deserialize, Serialize};

use crate::order::{transitivity_witness, validate_aux, validate_pom, AuxRelation, Pom, Violation};
use crate::{Error, Result};

/// Finite pom with a transitive auxiliary relation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FiniteQ {
    pub pom: Pom,
    pub aux: AuxRelation,
}

/// Finite Cu-semigroup: any finite pom, with way-below equal to the order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FiniteCu {
    pub pom: Pom,
}

impl FiniteQ {
    pub fn new(pom: Pom, aux: AuxRelation) -> Result<FiniteQ> {
        let mut report = validate_pom(&pom)?;
        if !report.is_empty() {
            return Err(Error::Invalid(report));
        }
        report = validate_aux(&pom, &aux)?;
        if let Some((a, b, c)) = transitivity_witness(&aux) {
            report.violations.push(Violation {
                law: "aux-transitive".into(),
                witness: [a, b, c].iter().map(|&i| pom.elements[i].clone()).collect(),
            });
        }
        if !report.is_empty() {
            return Err(Error::Invalid(report));
        }
        Ok(FiniteQ { pom, aux })
    }

    pub fn prec(&self, a: usize, b: usize) -> bool {
        self.aux.rel[a][b]
    }

    pub fn len(&self) -> usize {
        self.pom.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pom.is_empty()
    }

    /// Elements `a` with `a ≺ a`.
    pub fn self_related(&self) -> Vec<usize> {
        (0..self.len()).filter(|&a| self.prec(a, a)).collect()
    }
}

impl FiniteCu {
    pub fn new(pom: Pom) -> Result<FiniteCu> {
        let report = validate_pom(&pom)?;
        if !report.is_empty() {
            return Err(Error::Invalid(report));
        }
        Ok(FiniteCu { pom })
    }

    pub fn e_k(k: usize) -> FiniteCu {
        FiniteCu { pom: Pom::e_k(k) }
    }

    pub fn trivial() -> FiniteCu {
        FiniteCu { pom: Pom::trivial() }
    }

    pub fn direct_sum(&self, other: &FiniteCu) -> FiniteCu {
        FiniteCu { pom: self.pom.direct_sum(&other.pom) }
    }

    pub fn as_q(&self) -> FiniteQ {
        FiniteQ { pom: self.pom.clone(), aux: self.pom.order_relation() }
    }

    pub fn len(&self) -> usize {
        self.pom.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pom.is_empty()
    }
}

/// τ of a finite Q-semigroup together with its endpoint map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tau {
    pub cu: FiniteCu,
    /// `endpoint[i]` is the element of the source represented by element `i`.
    pub endpoint: Vec<usize>,
}

/// Every path in a finite Q-semigroup is eventually constant at a
/// self-related value, and two paths are equivalent exactly when these values
/// agree; so τ is the self-related part, ordered by the auxiliary relation.
pub fn tau_finite(s: &FiniteQ) -> Tau {
    let keep = s.self_related();
    let pos = |x: usize| keep.iter().position(|&k| k == x).expect("closed under addition");
    let add = keep.iter().map(|&a| keep.iter().map(|&b| pos(s.pom.sum(a, b))).collect()).collect();
    let leq = keep.iter().map(|&a| keep.iter().map(|&b| s.prec(a, b)).collect()).collect();
    let elements = keep.iter().map(|&a| s.pom.elements[a].clone()).collect();
    let pom = Pom::new(elements, pos(s.pom.zero), add, leq).expect("tables are square");
    Tau { cu: FiniteCu { pom }, endpoint: keep }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ideal {
    pub members: Vec<usize>,
    /// Largest element, the sum of all members.
    pub top: usize,
}

/// Ideals of a finite Cu-semigroup. An ideal is `↓z` for its largest element
/// `z`, which satisfies `z+z = z`; conversely `↓z` is an ideal for every such `z`.
pub fn enumerate_ideals(s: &FiniteCu) -> Vec<Ideal> {
    let p = &s.pom;
    let mut out: Vec<Ideal> = (0..p.len())
        .filter(|&z| p.sum(z, z) == z)
        .map(|z| Ideal { members: (0..p.len()).filter(|&a| p.le(a, z)).collect(), top: z })
        .collect();
    out.sort_by(|a, b| (a.members.len(), &a.members).cmp(&(b.members.len(), &b.members)));
    out
}

/// Checks that `members` is a downward-hereditary submonoid and returns it as an ideal.
pub fn ideal_from_members(s: &FiniteCu, members: &[usize]) -> Result<Ideal> {
    let p = &s.pom;
    let mut m: Vec<usize> = members.to_vec();
    m.sort_unstable();
    m.dedup();
    let inside = |x: usize| m.binary_search(&x).is_ok();
    if !inside(p.zero) {
        return Err(Error::Precondition("ideal must contain zero".into()));
    }
    for &a in &m {
        for &b in &m {
            if !inside(p.sum(a, b)) {
                return Err(Error::Precondition(format!("not closed under {}+{}", p.label(a), p.label(b))));
            }
        }
        if let Some(x) = (0..p.len()).find(|&x| p.le(x, a) && !inside(x)) {
            return Err(Error::Precondition(format!("not hereditary: {} ≤ {}", p.label(x), p.label(a))));
        }
    }
    let top = m.iter().fold(p.zero, |acc, &a| p.sum(acc, a));
    Ok(Ideal { members: m, top })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quotient {
    pub cu: FiniteCu,
    pub projection: Vec<usize>,
}

/// `S/J` with `a ≈ b` iff `a ≤ b+z` and `b ≤ a+z`, `z` the largest element of `J`.
pub fn quotient(s: &FiniteCu, j: &Ideal) -> Result<Quotient> {
    let checked = ideal_from_members(s, &j.members)?;
    let p = &s.pom;
    let z = checked.top;
    let below = |a: usize, b: usize| p.le(a, p.sum(b, z));
    let mut reps: Vec<usize> = Vec::new();
    let mut projection = vec![0; p.len()];
    for a in 0..p.len() {
        match reps.iter().position(|&r| below(a, r) && below(r, a)) {
            Some(i) => projection[a] = i,
            None => {
                projection[a] = reps.len();
                reps.push(a);
            }
        }
    }
    let add = reps.iter().map(|&a| reps.iter().map(|&b| projection[p.sum(a, b)]).collect()).collect();
    let leq = reps.iter().map(|&a| reps.iter().map(|&b| below(a, b)).collect()).collect();
    let elements = reps.iter().map(|&a| p.elements[a].clone()).collect();
    let pom = Pom::new(elements, projection[p.zero], add, leq)?;
    Ok(Quotient { cu: FiniteCu::new(pom)?, projection })
}

/// Additive, order-preserving, zero-preserving maps `src → tgt`, as value
/// tables in lexicographic order. A map is fixed by its values on
/// `src.generators()`, so `|tgt|^|generators|` candidates are tried.
pub fn morphisms(src: &Pom, tgt: &Pom, bound: usize) -> Result<Vec<Vec<usize>>> {
    let gens = src.generators();
    let needed = (tgt.len() as u128).checked_pow(gens.len() as u32).unwrap_or(u128::MAX);
    if needed > bound as u128 {
        return Err(Error::Bound {
            what: format!("morphisms from a {}-element source", src.len()),
            needed: needed.to_string(),
            bound,
        });
    }
    let mut out = Vec::new();
    let mut choice = vec![0usize; gens.len()];
    loop {
        if let Some(table) = extend(src, tgt, &gens, &choice) {
            if is_morphism(src, tgt, &table) {
                out.push(table);
            }
        }
        let mut i = 0;
        while i < choice.len() {
            choice[i] += 1;
            if choice[i] < tgt.len() {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
        if i == choice.len() {
            break;
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// Whether `table` is an additive, monotone, zero-preserving map `src → tgt`.
pub fn is_morphism(src: &Pom, tgt: &Pom, table: &[usize]) -> bool {
    let n = src.len();
    table.len() == n
        && table.iter().all(|&v| v < tgt.len())
        && table[src.zero] == tgt.zero
        && (0..n).all(|a| {
            (0..n).all(|b| {
                table[src.sum(a, b)] == tgt.sum(table[a], table[b]) && (!src.le(a, b) || tgt.le(table[a], table[b]))
            })
        })
}

fn extend(src: &Pom, tgt: &Pom, gens: &[usize], choice: &[usize]) -> Option<Vec<usize>> {
    let mut val: Vec<Option<usize>> = vec![None; src.len()];
    val[src.zero] = Some(tgt.zero);
    for (g, &v) in gens.iter().zip(choice) {
        match val[*g] {
            Some(old) if old != v => return None,
            _ => val[*g] = Some(v),
        }
    }
    loop {
        let mut changed = false;
        for x in 0..src.len() {
            let Some(vx) = val[x] else { continue };
            for &g in gens {
                let y = src.sum(x, g);
                let vy = tgt.sum(vx, val[g].unwrap());
                match val[y] {
                    None => {
                        val[y] = Some(vy);
                        changed = true;
                    }
                    Some(old) if old != vy => return None,
                    _ => {}
                }
            }
        }
        if !changed {
            break;
        }
    }
    val.into_iter().collect()
}

/// Q-morphisms `ι(t) → s`: morphisms sending `a ≤ b` to `φ(a) ≺ φ(b)`.
pub fn q_morphisms(t: &FiniteCu, s: &FiniteQ, bound: usize) -> Result<Vec<Vec<usize>>> {
    let n = t.len();
    Ok(morphisms(&t.pom, &s.pom, bound)?
        .into_iter()
        .filter(|phi| (0..n).all(|a| (0..n).all(|b| !t.pom.le(a, b) || s.prec(phi[a], phi[b]))))
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoreflectionReport {
    pub cu_morphisms: usize,
    pub q_morphisms: usize,
    pub holds: bool,
    pub failure: Option<String>,
}

/// Verifies that `β ↦ endpoint∘β` is an order-isomorphism `Cu(t, τ(s)) ≅ Q(t, s)`.
pub fn coreflection_check(t: &FiniteCu, s: &FiniteQ, bound: usize) -> Result<CoreflectionReport> {
    let tau = tau_finite(s);
    let left = morphisms(&t.pom, &tau.cu.pom, bound)?;
    let right = q_morphisms(t, s, bound)?;
    let image: Vec<Vec<usize>> = left.iter().map(|b| b.iter().map(|&x| tau.endpoint[x]).collect()).collect();
    let label = |phi: &Vec<usize>| phi.iter().map(|&x| s.pom.label(x).to_string()).collect::<Vec<_>>().join(",");
    let mut failure = None;
    if let Some(q) = right.iter().find(|q| !image.contains(q)) {
        failure = Some(format!("Q-morphism [{}] has no preimage", label(q)));
    } else if let Some(i) = image.iter().position(|q| !right.contains(q)) {
        failure = Some(format!("image [{}] is not a Q-morphism", label(&image[i])));
    } else {
        let n = t.len();
        'outer: for (i, b1) in left.iter().enumerate() {
            for (j, b2) in left.iter().enumerate() {
                let in_tau = (0..n).all(|a| tau.cu.pom.le(b1[a], b2[a]));
                let in_s = (0..n).all(|a| s.pom.le(image[i][a], image[j][a]));
                if in_tau != in_s || (i != j && image[i] == image[j]) {
                    failure = Some(format!("order not reflected at [{}] vs [{}]", label(&image[i]), label(&image[j])));
                    break 'outer;
                }
            }
        }
    }
    Ok(CoreflectionReport { cu_morphisms: left.len(), q_morphisms: right.len(), holds: failure.is_none(), failure })
}

/// An isomorphism of poms `a → b` (order and addition), if any, found by backtracking.
pub fn isomorphism(a: &Pom, b: &Pom) -> Option<Vec<usize>> {
    if a.len() != b.len() {
        return None;
    }
    let n = a.len();
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    map[a.zero] = b.zero;
    used[b.zero] = true;
    fn go(a: &Pom, b: &Pom, i: usize, map: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
        let n = a.len();
        if i == n {
            return (0..n).all(|x| {
                (0..n).all(|y| b.sum(map[x], map[y]) == map[a.sum(x, y)] && b.le(map[x], map[y]) == a.le(x, y))
            });
        }
        if map[i] != usize::MAX {
            return go(a, b, i + 1, map, used);
        }
        for v in 0..n {
            if used[v] {
                continue;
            }
            let ok = (0..n)
                .filter(|&x| map[x] != usize::MAX)
                .all(|x| b.le(map[x], v) == a.le(x, i) && b.le(v, map[x]) == a.le(i, x));
            if !ok {
                continue;
            }
            map[i] = v;
            used[v] = true;
            if go(a, b, i + 1, map, used) {
                return true;
            }
            map[i] = usize::MAX;
            used[v] = false;
        }
        false
    }
    if go(a, b, 0, &mut map, &mut used) {
        Some(map)
    } else {
        None
    }
}
