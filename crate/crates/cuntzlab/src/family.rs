//! Deterministic families of small finite structures used by the verifiers:
//! every positively ordered monoid up to a size (one per isomorphism class),
//! and auxiliary relations on them, either all of them or seeded samples.

use std::collections::{BTreeSet, HashMap};
use std::sync::{Mutex, OnceLock};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::finite::{isomorphism, FiniteCu, FiniteQ};
use crate::order::{AuxRelation, Pom};
use crate::{Error, Result};

/// Largest size for which the exhaustive enumeration is offered.
pub const MAX_FAMILY_SIZE: usize = 5;

const LABELS: [&str; 5] = ["0", "a", "b", "c", "d"];

/// Commutative tables on `{0..n}` with neutral `0` and no nonzero summing to
/// zero (a requirement for a positive order), found by backtracking with
/// incremental associativity checks.
fn conical_monoids(n: usize) -> Vec<Vec<Vec<usize>>> {
    let cells: Vec<(usize, usize)> = (1..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    let mut t = vec![vec![usize::MAX; n]; n];
    for i in 0..n {
        t[0][i] = i;
        t[i][0] = i;
    }
    let mut out = Vec::new();
    fn assoc_ok(t: &[Vec<usize>]) -> bool {
        let n = t.len();
        for a in 0..n {
            for b in 0..n {
                let ab = t[a][b];
                if ab == usize::MAX {
                    continue;
                }
                for c in 0..n {
                    let bc = t[b][c];
                    if bc == usize::MAX {
                        continue;
                    }
                    let (l, r) = (t[ab][c], t[a][bc]);
                    if l != usize::MAX && r != usize::MAX && l != r {
                        return false;
                    }
                }
            }
        }
        true
    }
    fn go(k: usize, cells: &[(usize, usize)], t: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
        if k == cells.len() {
            out.push(t.clone());
            return;
        }
        let (i, j) = cells[k];
        for v in 1..t.len() {
            t[i][j] = v;
            t[j][i] = v;
            if assoc_ok(t) {
                go(k + 1, cells, t, out);
            }
        }
        t[i][j] = usize::MAX;
        t[j][i] = usize::MAX;
    }
    go(0, &cells, &mut t, &mut out);
    out
}

/// Per-element (down-set size, up-set size, idempotent, steps to absorb), sorted.
type Signature = Vec<(usize, usize, bool, usize)>;

fn signature(p: &Pom) -> Signature {
    let n = p.len();
    let mut s: Vec<_> = (0..n)
        .map(|a| {
            let below = (0..n).filter(|&b| p.le(b, a)).count();
            let above = (0..n).filter(|&b| p.le(a, b)).count();
            let mut m = a;
            let mut steps = 0;
            while p.sum(m, a) != m && steps < n {
                m = p.sum(m, a);
                steps += 1;
            }
            (below, above, p.sum(a, a) == a, steps)
        })
        .collect();
    s.sort_unstable();
    s
}

/// Keeps one representative per isomorphism class, in input order.
pub fn dedup_isomorphic(items: Vec<Pom>) -> Vec<Pom> {
    let mut buckets: HashMap<Signature, Vec<usize>> = HashMap::new();
    let mut out: Vec<Pom> = Vec::new();
    for p in items {
        let sig = signature(&p);
        let bucket = buckets.entry(sig).or_default();
        if bucket.iter().any(|&i| isomorphism(&out[i], &p).is_some()) {
            continue;
        }
        bucket.push(out.len());
        out.push(p);
    }
    out
}

fn compatible_orders(add: &[Vec<usize>]) -> Vec<Vec<Vec<bool>>> {
    let n = add.len();
    let pairs: Vec<(usize, usize)> =
        (1..n).flat_map(|i| (1..n).filter(move |&j| j != i).map(move |j| (i, j))).collect();
    let mut out = Vec::new();
    for mask in 0u32..(1u32 << pairs.len()) {
        let mut leq: Vec<Vec<bool>> = (0..n).map(|a| (0..n).map(|b| a == b || a == 0).collect()).collect();
        for (bit, &(i, j)) in pairs.iter().enumerate() {
            if mask >> bit & 1 == 1 {
                leq[i][j] = true;
            }
        }
        let ok = (0..n).all(|a| {
            (0..n).all(|b| {
                (a == b || !(leq[a][b] && leq[b][a]))
                    && (0..n)
                        .all(|c| (!(leq[a][b] && leq[b][c]) || leq[a][c]) && (!leq[a][b] || leq[add[a][c]][add[b][c]]))
            })
        });
        if ok {
            out.push(leq);
        }
    }
    out
}

fn build_poms(n: usize) -> Vec<Pom> {
    let labels: Vec<String> = LABELS[..n].iter().map(|s| s.to_string()).collect();
    let discrete: Vec<Vec<bool>> = (0..n).map(|a| (0..n).map(|b| a == b).collect()).collect();
    let monoids = dedup_isomorphic(
        conical_monoids(n)
            .into_iter()
            .map(|add| Pom { elements: labels.clone(), zero: 0, add, leq: discrete.clone() })
            .collect(),
    );
    let mut all = Vec::new();
    for m in monoids {
        for leq in compatible_orders(&m.add) {
            all.push(Pom { leq, ..m.clone() });
        }
    }
    dedup_isomorphic(all)
}

/// Every finite positively ordered monoid with exactly `n` elements, one per
/// isomorphism class, in a fixed order. These are also the finite
/// Cu-semigroups of that size.
pub fn poms_of_size(n: usize) -> Result<Vec<Pom>> {
    if n == 0 || n > MAX_FAMILY_SIZE {
        return Err(Error::Bound { what: "pom family size".into(), needed: n.to_string(), bound: MAX_FAMILY_SIZE });
    }
    static CACHE: OnceLock<Mutex<HashMap<usize, Vec<Pom>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = cache.lock().expect("cache").get(&n) {
        return Ok(v.clone());
    }
    let v = build_poms(n);
    cache.lock().expect("cache").insert(n, v.clone());
    Ok(v)
}

/// All finite Cu-semigroups with at most `max` elements.
pub fn cu_family(max: usize) -> Result<Vec<FiniteCu>> {
    let mut out = Vec::new();
    for n in 1..=max {
        for p in poms_of_size(n)? {
            out.push(FiniteCu { pom: p });
        }
    }
    Ok(out)
}

/// Smallest auxiliary relation containing `seed` and the zero row, closed
/// under monotonicity, additivity and transitivity. Seeds must lie in the order.
pub fn aux_closure(p: &Pom, seed: &[(usize, usize)]) -> AuxRelation {
    let n = p.len();
    let mut rel = vec![vec![false; n]; n];
    for x in 0..n {
        rel[p.zero][x] = true;
    }
    for &(a, b) in seed {
        rel[a][b] = true;
    }
    loop {
        let mut changed = false;
        let pairs: Vec<(usize, usize)> =
            (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).filter(|&(a, b)| rel[a][b]).collect();
        let mut set = |rel: &mut Vec<Vec<bool>>, a: usize, b: usize| {
            if !rel[a][b] {
                rel[a][b] = true;
                changed = true;
            }
        };
        for &(x, y) in &pairs {
            for x1 in (0..n).filter(|&x1| p.le(x1, x)) {
                for y1 in (0..n).filter(|&y1| p.le(y, y1)) {
                    set(&mut rel, x1, y1);
                }
            }
            for &(x2, y2) in &pairs {
                set(&mut rel, p.sum(x, x2), p.sum(y, y2));
                if y == x2 {
                    set(&mut rel, x, y2);
                }
            }
        }
        if !changed {
            return AuxRelation { rel };
        }
    }
}

/// Every auxiliary relation on `p` (each is the closure of its own pairs).
pub fn all_aux(p: &Pom) -> Vec<AuxRelation> {
    let n = p.len();
    let pairs: Vec<(usize, usize)> =
        (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).filter(|&(a, b)| a != p.zero && p.le(a, b)).collect();
    let mut seen = BTreeSet::new();
    for mask in 0u64..(1u64 << pairs.len()) {
        let seed: Vec<(usize, usize)> =
            pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &pr)| pr).collect();
        seen.insert(aux_closure(p, &seed).rel);
    }
    seen.into_iter().map(|rel| AuxRelation { rel }).collect()
}

/// Every finite Q-semigroup with at most `max` elements: all auxiliary
/// relations on every pom of the family.
pub fn q_family(max: usize) -> Result<Vec<FiniteQ>> {
    let mut out = Vec::new();
    for cu in cu_family(max)? {
        for aux in all_aux(&cu.pom) {
            out.push(FiniteQ::new(cu.pom.clone(), aux)?);
        }
    }
    Ok(out)
}

/// `count` seeded random Q-semigroups with at most `max` elements.
pub fn random_q_family(count: usize, max: usize, seed: u64) -> Result<Vec<FiniteQ>> {
    let poms = cu_family(max)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let p = &poms[rng.gen_range(0..poms.len())].pom;
        let n = p.len();
        let density = rng.gen_range(0.0..0.6);
        let seed: Vec<(usize, usize)> = (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .filter(|&(a, b)| p.le(a, b))
            .filter(|_| rng.gen_bool(density))
            .collect();
        out.push(FiniteQ::new(p.clone(), aux_closure(p, &seed))?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::{validate_aux, validate_pom};

    #[test]
    fn small_counts() {
        // Conicality forces a+a=a on two elements.
        assert_eq!(poms_of_size(1).unwrap().len(), 1);
        assert_eq!(poms_of_size(2).unwrap().len(), 1);
        let three = poms_of_size(3).unwrap();
        assert!(three.iter().any(|p| isomorphism(p, &Pom::e_k(1)).is_some()));
        assert!(three.iter().any(|p| isomorphism(p, &Pom::truncated(2)).is_some()));
        for n in 1..=4 {
            for p in poms_of_size(n).unwrap() {
                assert!(validate_pom(&p).unwrap().is_empty());
            }
        }
    }

    #[test]
    fn family_contains_known_structures() {
        let four = poms_of_size(4).unwrap();
        for known in [Pom::e_k(2), Pom::e_k(0).direct_sum(&Pom::e_k(0)), Pom::truncated(3)] {
            assert_eq!(four.iter().filter(|p| isomorphism(p, &known).is_some()).count(), 1);
        }
    }

    #[test]
    fn aux_closures_are_valid() {
        for q in random_q_family(60, 4, 9).unwrap() {
            assert!(validate_aux(&q.pom, &q.aux).unwrap().is_empty());
        }
        let e1 = Pom::e_k(1);
        let all = all_aux(&e1);
        assert!(all.contains(&e1.order_relation()));
        assert!(all.iter().any(|a| !a.rel[1][1]));
    }
}
