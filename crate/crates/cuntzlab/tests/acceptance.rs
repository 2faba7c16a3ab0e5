//! Acceptance criteria 1-11, one PASS/FAIL line each.

use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use cuntzlab::bivariant::{
    adjunction_check, bivariant_named, compose, eps_r, external_tensor, ideal_embed_check, implications_hold, pi_r,
    quotient_embed_check, solid_status, Bivariant, Value,
};
use cuntzlab::catalog::{fact_table, Carrier, CatElem};
use cuntzlab::family::{q_family, random_q_family};
use cuntzlab::finite::{coreflection_check, enumerate_ideals, isomorphism, tau_finite, FiniteCu, FiniteQ};
use cuntzlab::numbers::{rat, Ext, NInf};
use cuntzlab::order::{check_o5, Pom};
use cuntzlab::paths::{
    chain_top_index, classify, corpus, cut_down, dyadic_chain, path_compare, path_eval, path_sup, path_waybelow, steps,
    validate, ChainOracle, Cmp, FiniteStay, PathCarrier, PathExpr, RationalIndex, RealAux, RealToward, Tri,
};
use cuntzlab::repro::strict3;
use cuntzlab::structure_file::StructureFile;
use cuntzlab::DEFAULT_BOUND;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e(r: cuntzlab::Error) -> String {
    r.to_string()
}

// 1. ⟦E_k,E_l⟧ by finite enumeration against {0, ⌈(l+1)/(k+1)⌉, ..., l, ∞}.

fn expected_hom(k: u64, l: u64) -> Pom {
    let c = (l + 1).div_ceil(k + 1);
    // Values 0, c..=l, and ∞ encoded as l+1.
    let mut vals = vec![0];
    vals.extend(c..=l);
    vals.push(l + 1);
    vals.dedup();
    let n = vals.len();
    let pos = |v: u64| vals.iter().position(|&x| x == v).expect("closed");
    let cap = |v: u64| if v > l { l + 1 } else { v };
    let add = (0..n).map(|i| (0..n).map(|j| pos(cap(vals[i] + vals[j]))).collect()).collect();
    let leq = (0..n).map(|i| (0..n).map(|j| vals[i] <= vals[j]).collect()).collect();
    let labels = vals.iter().map(|&v| if v > l { "inf".into() } else { v.to_string() }).collect();
    Pom::new(labels, 0, add, leq).expect("square")
}

fn criterion_1() -> Outcome {
    for k in 0..=5u64 {
        for l in 0..=5u64 {
            let b = bivariant_named(&format!("E{k}"), &format!("E{l}"), DEFAULT_BOUND).map_err(e)?;
            let cu = b.carrier.finite_cu().ok_or("finite engine expected")?;
            let want = expected_hom(k, l);
            ensure(isomorphism(&want, &cu.pom).is_some(), || format!("⟦E{k},E{l}⟧ = {}", b.describe()))?;
        }
    }
    Ok("36 pairs".into())
}

// 2. tau_finite against step-path τ with at most 3 breakpoints.

fn criterion_2() -> Outcome {
    let family = random_q_family(200, 5, 2024).map_err(e)?;
    for (i, q) in family.iter().enumerate() {
        let brute = steps::brute_tau(q, 3);
        let t = tau_finite(q);
        let iso = isomorphism(&brute.to_pom(), &t.cu.pom).ok_or_else(|| format!("structure {i}: not isomorphic"))?;
        let n = iso.len();
        // Finite Cu-semigroups are algebraic: way-below is the order.
        for a in 0..n {
            for b in 0..n {
                ensure(brute.waybelow[a][b] == t.cu.pom.le(iso[a], iso[b]), || {
                    format!("structure {i}: way-below differs")
                })?;
            }
        }
    }
    Ok(format!("{} structures", family.len()))
}

// 3. ⟦P̄,P̄⟧ ≅ M₁ on a 50-point grid.

fn m1_leq(a: &CatElem, b: &CatElem) -> bool {
    match (a, b) {
        (CatElem::Cpt(x), CatElem::Cpt(y))
        | (CatElem::Soft(x), CatElem::Soft(y))
        | (CatElem::Soft(x), CatElem::Cpt(y)) => x <= y,
        (CatElem::Cpt(x), CatElem::Soft(y)) => x < y,
        _ => unreachable!(),
    }
}

fn m1_add(a: &CatElem, b: &CatElem) -> CatElem {
    match (a, b) {
        (CatElem::Cpt(x), CatElem::Cpt(y)) => CatElem::Cpt(x.add(y)),
        _ => CatElem::Soft(a.value().unwrap().add(&b.value().unwrap())),
    }
}

fn m1_grid() -> Vec<CatElem> {
    let vals: Vec<Ext> = (1..=25).map(|n| Ext::Fin(rat(n, 4))).collect();
    vals.iter().flat_map(|v| [CatElem::Cpt(v.clone()), CatElem::Soft(v.clone())]).collect()
}

fn criterion_3() -> Outcome {
    let b = bivariant_named("Pbar", "Pbar", DEFAULT_BOUND).map_err(e)?;
    ensure(b.describe() == "M1", || format!("carrier {}", b.describe()))?;
    let grid = m1_grid();
    let points: Vec<Value> = [rat(0, 1), rat(1, 3), rat(1, 1), rat(5, 2)]
        .into_iter()
        .map(|r| Value::Cat(CatElem::X(Ext::Fin(r))))
        .chain([Value::Cat(CatElem::X(Ext::Inf))])
        .collect();
    for x in &grid {
        let vx = Value::Cat(x.clone());
        let sigma = b.sigma(&vx).map_err(e)?;
        // σ(soft a) and σ(cpt a) are both t ↦ at; the Cu-morphism has the compact coordinate.
        let back = Value::Cat(CatElem::Cpt(x.value().unwrap()));
        ensure(b.coordinate_of(&sigma).map_err(e)? == back, || format!("witness maps do not invert at {x}"))?;
        for p in &points {
            let got = b.evaluate(&vx, p).map_err(e)?;
            let want = Value::Cat(CatElem::X(x.value().unwrap().mul(p.cat().unwrap().value().as_ref().unwrap())));
            ensure(got == want, || format!("σ({x}) at {} is wrong", b.source.format(p)))?;
        }
        for y in &grid {
            let vy = Value::Cat(y.clone());
            ensure(b.carrier.leq(&vx, &vy).map_err(e)? == m1_leq(x, y), || format!("order {x} <= {y}"))?;
            let sum = b.carrier.add(&vx, &vy).map_err(e)?;
            ensure(sum == Value::Cat(m1_add(x, y)), || format!("sum {x} + {y}"))?;
            if let (CatElem::Soft(a), CatElem::Soft(c)) = (x, y) {
                let (_, v) = compose(&b, &vx, &b, &vy, DEFAULT_BOUND).map_err(e)?;
                ensure(v == Value::Cat(CatElem::Soft(a.mul(c))), || format!("compose soft({a}) soft({c})"))?;
            }
        }
    }
    Ok(format!("{} grid points", grid.len()))
}

// 4. Matrix semiring: composition is matrix multiplication, external tensor is Kronecker.

fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> Vec<Vec<NInf>> {
    let entries = [NInf::Fin(0), NInf::Fin(1), NInf::Fin(2), NInf::Fin(3), NInf::Inf];
    (0..rows).map(|_| (0..cols).map(|_| entries[rng.gen_range(0..5)]).collect()).collect()
}

fn naive_mul(a: &[Vec<NInf>], b: &[Vec<NInf>]) -> Vec<Vec<NInf>> {
    let inner = b.len();
    let cols = b[0].len();
    a.iter()
        .map(|row| (0..cols).map(|j| (0..inner).fold(NInf::ZERO, |acc, t| acc.add(row[t].mul(b[t][j])))).collect())
        .collect()
}

fn naive_kron(a: &[Vec<NInf>], b: &[Vec<NInf>]) -> Vec<Vec<NInf>> {
    let (br, bc) = (b.len(), b[0].len());
    (0..a.len() * br)
        .map(|i| (0..a[0].len() * bc).map(|j| a[i / br][j / bc].mul(b[i % br][j % bc])).collect())
        .collect()
}

fn nbar_pow(k: usize) -> String {
    if k == 1 {
        "Nbar".into()
    } else {
        format!("Nbar^{k}")
    }
}

fn vector_elem(v: &[NInf]) -> Value {
    if v.len() == 1 {
        Value::Cat(CatElem::N(v[0]))
    } else {
        Value::Cat(CatElem::Tuple(v.to_vec()))
    }
}

fn vectors(k: usize) -> Vec<Vec<NInf>> {
    let mut out: Vec<Vec<NInf>> = (0..k).map(|i| (0..k).map(|j| NInf::Fin((i == j) as u64)).collect()).collect();
    out.push(vec![NInf::Fin(2); k]);
    out.push((0..k).map(|i| if i == 0 { NInf::Inf } else { NInf::Fin(i as u64) }).collect());
    out
}

fn kron_vec(u: &[NInf], v: &[NInf]) -> Vec<NInf> {
    u.iter().flat_map(|a| v.iter().map(move |b| a.mul(*b))).collect()
}

fn mat_vec(a: &[Vec<NInf>], v: &[NInf]) -> Vec<NInf> {
    a.iter().map(|row| row.iter().zip(v).fold(NInf::ZERO, |acc, (x, y)| acc.add(x.mul(*y)))).collect()
}

fn hom(k: usize, l: usize) -> Result<Bivariant, String> {
    bivariant_named(&nbar_pow(k), &nbar_pow(l), DEFAULT_BOUND).map_err(e)
}

fn criterion_4() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut cases = 0;
    for k in 1..=3 {
        for l in 1..=3 {
            for m in 1..=3 {
                let (inner, outer) = (hom(k, l)?, hom(l, m)?);
                for _ in 0..4 {
                    let b = random_matrix(&mut rng, l, k);
                    let a = random_matrix(&mut rng, m, l);
                    let (xa, xb) = (Value::Cat(CatElem::Mat(a.clone())), Value::Cat(CatElem::Mat(b.clone())));
                    let (r, v) = compose(&outer, &xa, &inner, &xb, DEFAULT_BOUND).map_err(e)?;
                    ensure(v == Value::Cat(CatElem::Mat(naive_mul(&a, &b))), || format!("compose {k}->{l}->{m}"))?;
                    for u in vectors(k) {
                        let direct =
                            outer.evaluate(&xa, &inner.evaluate(&xb, &vector_elem(&u)).map_err(e)?).map_err(e)?;
                        ensure(r.evaluate(&v, &vector_elem(&u)).map_err(e)? == direct, || {
                            "composite disagrees pointwise".into()
                        })?;
                    }
                    let (t, w) = external_tensor(&inner, &xb, &outer, &xa, DEFAULT_BOUND).map_err(e)?;
                    ensure(w == Value::Cat(CatElem::Mat(naive_kron(&b, &a))), || {
                        format!("tensor {k},{l} with {l},{m}")
                    })?;
                    for u in vectors(k) {
                        for z in vectors(l) {
                            let got = t.evaluate(&w, &vector_elem(&kron_vec(&u, &z))).map_err(e)?;
                            let want = vector_elem(&kron_vec(&mat_vec(&b, &u), &mat_vec(&a, &z)));
                            ensure(got == want, || "tensor disagrees on elementary tensors".into())?;
                        }
                    }
                    cases += 1;
                }
            }
        }
    }
    Ok(format!("{cases} cases"))
}

// 5. Tensor-hom adjunction on small finite Cu-semigroups.

fn small_cus() -> Vec<(&'static str, FiniteCu)> {
    vec![
        ("E0", FiniteCu::e_k(0)),
        ("E1", FiniteCu::e_k(1)),
        ("E2", FiniteCu::e_k(2)),
        ("E0+E0", FiniteCu::e_k(0).direct_sum(&FiniteCu::e_k(0))),
        ("{0}", FiniteCu::trivial()),
    ]
}

fn criterion_5() -> Outcome {
    let spaces = small_cus();
    let mut n = 0;
    for (sn, s) in &spaces {
        for (tn, t) in &spaces {
            for (pn, p) in &spaces {
                let r = adjunction_check(s, t, p, DEFAULT_BOUND).map_err(e)?;
                ensure(r.holds, || format!("({sn},{tn},{pn}): {}", r.failure.clone().unwrap_or_default()))?;
                n += 1;
            }
        }
    }
    Ok(format!("{n} triples"))
}

// 6. τ as coreflection.

fn criterion_6() -> Outcome {
    let family = q_family(4).map_err(e)?;
    for k in 0..=2 {
        let t = FiniteCu::e_k(k);
        for (i, s) in family.iter().enumerate() {
            let r = coreflection_check(&t, s, DEFAULT_BOUND).map_err(e)?;
            ensure(r.holds, || format!("E{k} against structure {i}: {}", r.failure.clone().unwrap_or_default()))?;
        }
    }
    Ok(format!("{} Q-semigroups x 3", family.len()))
}

// 7. ε_R∘π_R = id, π_R multiplicative, π_P̄ lands in soft elements.

fn criterion_7() -> Outcome {
    for name in ["Pbar", "Z", "R2", "E3", "M1"] {
        let r = Carrier::parse(name).map_err(e)?;
        let sample = r.sample(25, 7);
        let pis: Vec<(Bivariant, Value)> =
            sample.iter().map(|a| pi_r(&r, a, DEFAULT_BOUND)).collect::<Result<_, _>>().map_err(e)?;
        for (a, (b, v)) in sample.iter().zip(&pis) {
            ensure(eps_r(&r, b, v).map_err(e)? == *a, || format!("{name}: ε∘π differs at {a}"))?;
            if name == "Pbar" {
                let soft = b.carrier.carrier().is_some_and(|c| c.is_soft(v.cat().unwrap()));
                ensure(soft, || format!("π({a}) is not soft"))?;
            }
        }
        for (i, a) in sample.iter().enumerate() {
            for (j, c) in sample.iter().enumerate() {
                let prod = r.mul(a, c).map_err(e)?;
                let (_, want) = pi_r(&r, &prod, DEFAULT_BOUND).map_err(e)?;
                let (_, got) = compose(&pis[i].0, &pis[i].1, &pis[j].0, &pis[j].1, DEFAULT_BOUND).map_err(e)?;
                ensure(got == want, || format!("{name}: π({a}·{c}) ≠ π({a})∘π({c})"))?;
            }
        }
    }
    Ok("Pbar, Z, R2, E3, M1".into())
}

// 8. Solidity characterization table.

fn criterion_8() -> Outcome {
    let pbar = solid_status("Pbar", DEFAULT_BOUND).map_err(e)?;
    ensure(pbar.statuses == [true, true, true, false, false], || format!("Pbar {:?}", pbar.statuses))?;
    let m1 = solid_status("M1", DEFAULT_BOUND).map_err(e)?;
    ensure(m1.statuses == [false, false, true, true, true], || format!("M1 {:?}", m1.statuses))?;
    for row in fact_table() {
        let s = row.char_solid.clone().map(|f| f.value);
        ensure(implications_hold(&s), || format!("implications fail for {}", row.name))?;
    }
    ensure(pbar.implications_hold && m1.implications_hold, || "report disagrees".into())?;
    Ok(format!("{} rows", fact_table().len()))
}

// 9. O5 failure on {0,2,3,∞}.

fn criterion_9() -> Outcome {
    let data: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "data", "homE2E3.json"].iter().collect();
    let from_file = StructureFile::load(&data).map_err(e)?.pom;
    let b = bivariant_named("E2", "E3", DEFAULT_BOUND).map_err(e)?;
    let computed = b.carrier.finite_cu().ok_or("finite")?.pom.clone();
    for p in [&from_file, &computed] {
        let w = check_o5(p).map_err(e)?;
        ensure(!w.is_empty(), || "no witness".into())?;
        ensure(w.iter().all(|q| q[1] == "2" && q[4] == "3"), || format!("witnesses {w:?}"))?;
    }
    for k in 0..=5 {
        ensure(check_o5(&Pom::e_k(k)).map_err(e)?.is_empty(), || format!("E{k} reported"))?;
    }
    Ok("witness (2,2,0,0,3)".into())
}

// 10. Path laws.

fn preorder<C: PathCarrier>(c: &C, ps: &[PathExpr<C::Elem>]) -> Result<(), String> {
    let n = ps.len();
    let mut le = vec![vec![false; n]; n];
    for i in 0..n {
        for j in 0..n {
            le[i][j] = match path_compare(c, &ps[i], &ps[j]) {
                Cmp::Le => true,
                Cmp::Nle => false,
                Cmp::Unknown => return Err("UNKNOWN comparison".into()),
            };
        }
        ensure(le[i][i], || format!("not reflexive at path {i}"))?;
    }
    for i in 0..n {
        for j in (0..n).filter(|&j| le[i][j]) {
            ensure((0..n).all(|k| !le[j][k] || le[i][k]), || format!("not transitive through {i},{j}"))?;
        }
    }
    Ok(())
}

fn cut_downs<C: PathCarrier>(c: &C, ps: &[PathExpr<C::Elem>], exact: bool) -> Result<(), String> {
    let eps: Vec<RationalIndex> = [(1, 64), (1, 8), (1, 4), (1, 2), (3, 4)]
        .iter()
        .map(|&(n, d)| RationalIndex::new(rat(n, d)).unwrap())
        .collect();
    for (i, p) in ps.iter().enumerate() {
        let class = classify(c, p).ok_or("unclassified path")?;
        for (a, big) in eps.iter().enumerate() {
            let f = cut_down(p, big);
            validate(c, &f).map_err(e)?;
            let fc = classify(c, &f).ok_or("unclassified cut-down")?;
            ensure(c.class_leq(&fc, &class), || format!("cut-down of path {i} exceeds it"))?;
            for small in &eps[..a] {
                ensure(path_waybelow(c, &f, &cut_down(p, small)) == Tri::True, || {
                    format!("cut-downs of path {i} at {big} and {small}")
                })?;
            }
        }
        if exact {
            let fc = classify(c, &cut_down(p, &eps[0])).unwrap();
            ensure(fc == class, || format!("small cut-down of path {i} changes its class"))?;
        }
    }
    Ok(())
}

fn sup_is_least(s: &FiniteQ, rng: &mut ChaCha8Rng) -> Result<usize, String> {
    let corpus: Vec<PathExpr<usize>> = steps::enumerate(s, 2).iter().filter_map(|p| p.to_expr()).take(200).collect();
    let classes: Vec<_> = corpus.iter().map(|p| classify(s, p).expect("finite")).collect();
    let mut checked = 0;
    for _ in 0..300 {
        let mut idx: Vec<usize> = (0..rng.gen_range(1..=3)).map(|_| rng.gen_range(0..corpus.len())).collect();
        idx.sort_by(|&a, &b| {
            if s.class_leq(&classes[a], &classes[b]) {
                std::cmp::Ordering::Less
            } else {
                std::cmp::Ordering::Greater
            }
        });
        if idx.windows(2).any(|w| !s.class_leq(&classes[w[0]], &classes[w[1]])) {
            continue;
        }
        let fs: Vec<PathExpr<usize>> = idx.iter().map(|&i| corpus[i].clone()).collect();
        let sup = path_sup(s, &fs).map_err(e)?;
        validate(s, &sup).map_err(e)?;
        let sc = classify(s, &sup).ok_or("unclassified sup")?;
        for (u, uc) in classes.iter().enumerate() {
            let upper = idx.iter().all(|&i| s.class_leq(&classes[i], uc));
            ensure(!upper || s.class_leq(&sc, uc), || format!("sup exceeds upper bound {u}"))?;
        }
        ensure(idx.iter().all(|&i| s.class_leq(&classes[i], &sc)), || "sup is not an upper bound".into())?;
        checked += 1;
    }
    Ok(checked)
}

fn chain_checks<C>(c: Arc<C>, a: C::Elem, oracle: Arc<dyn ChainOracle<C::Elem>>) -> Result<(), String>
where
    C: PathCarrier + 'static,
{
    let p = dyadic_chain(c.clone(), a.clone(), oracle.clone());
    let vals: Vec<C::Elem> = (1..=64)
        .map(|k| path_eval(c.as_ref(), &p, &RationalIndex::new(rat(k, 65)).unwrap()))
        .collect::<Result<_, _>>()
        .map_err(e)?;
    ensure(vals.windows(2).all(|w| c.prec(&w[0], &w[1])), || "chain is not ≺-increasing".into())?;
    ensure(vals.iter().all(|v| c.leq(v, &a)), || "chain exceeds its target".into())?;
    if a != c.zero() {
        for n in 1..=64u32 {
            let v = path_eval(c.as_ref(), &p, &RationalIndex::new(chain_top_index(n)).unwrap()).map_err(e)?;
            ensure(c.prec(&oracle.cofinal(n as usize), &v), || format!("not cofinal at level {n}"))?;
        }
    }
    Ok(())
}

fn criterion_10() -> Outcome {
    let mut finite: Vec<FiniteQ> =
        vec![FiniteCu::e_k(2).as_q(), FiniteCu::e_k(0).direct_sum(&FiniteCu::e_k(1)).as_q(), strict3()];
    finite.extend(random_q_family(5, 5, 10).map_err(e)?);
    let mut total = 0;
    for (i, s) in finite.iter().enumerate() {
        let ps = corpus::finite_paths(s, 50, i as u64);
        preorder(s, &ps)?;
        cut_downs(s, &ps, true)?;
        total += ps.len();
    }
    for c in [RealAux::One, RealAux::Infinity] {
        let ps = corpus::real_paths(&c, 120, 3);
        ensure(ps.len() == 120, || "short real corpus".into())?;
        preorder(&c, &ps)?;
        cut_downs(&c, &ps, false)?;
        total += ps.len();
    }
    ensure(total >= 500, || format!("corpus has {total} paths"))?;
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut sups = 0;
    for s in &finite {
        sups += sup_is_least(s, &mut rng)?;
    }
    for a in [Ext::int(1), Ext::frac(5, 2), Ext::Inf, Ext::zero()] {
        chain_checks(Arc::new(RealAux::One), a.clone(), Arc::new(RealToward(a)))?;
    }
    for s in &finite {
        for a in s.self_related() {
            chain_checks(Arc::new(s.clone()), a, Arc::new(FiniteStay(a)))?;
        }
    }
    Ok(format!("{total} paths, {sups} sups"))
}

// 11. ⟦S_ex,S_ex⟧ and ideals.

fn hex_member(x: &CatElem) -> bool {
    match x {
        CatElem::Cpt(a) => a.is_zero() || *a >= Ext::int(1),
        CatElem::Soft(a) => *a > Ext::int(1),
        _ => false,
    }
}

fn criterion_11() -> Outcome {
    let b = bivariant_named("Sex", "Sex", DEFAULT_BOUND).map_err(e)?;
    let hex = b.carrier.carrier().ok_or("catalog carrier expected")?.clone();
    ensure(hex == Carrier::HEx, || format!("carrier {hex}"))?;
    let mut sample: Vec<Ext> = (0..=24).map(|n| Ext::Fin(rat(n, 6))).collect();
    sample.push(Ext::Inf);
    let elems: Vec<CatElem> = sample.iter().flat_map(|v| [CatElem::Cpt(v.clone()), CatElem::Soft(v.clone())]).collect();
    for x in &elems {
        ensure(hex.check(x).is_ok() == hex_member(x), || format!("membership of {x}"))?;
    }
    let members: Vec<&CatElem> = elems.iter().filter(|x| hex_member(x)).collect();
    for x in &members {
        for y in &members {
            let zero = |z: &CatElem| z.value().is_some_and(|v| v.is_zero());
            if !zero(x) && !zero(y) {
                ensure(hex.leq(x, y) == m1_leq(x, y), || format!("order {x} <= {y}"))?;
            }
        }
    }
    let top = CatElem::Soft(Ext::Inf);
    ensure(!hex.leq(&CatElem::Cpt(Ext::Inf), &top), || "Cpt(∞) lies in the ideal".into())?;
    ensure(members.iter().filter(|x| **x != &CatElem::Cpt(Ext::Inf)).all(|x| hex.leq(x, &top)), || {
        "ideal too small".into()
    })?;

    let spaces = small_cus();
    let mut checks = 0;
    for (sn, s) in &spaces {
        for (tn, t) in &spaces {
            for j in enumerate_ideals(t) {
                let r = ideal_embed_check(s, t, &j, DEFAULT_BOUND).map_err(e)?;
                ensure(r.holds, || format!("ideal embedding ({sn},{tn}): {}", r.failure.clone().unwrap_or_default()))?;
                checks += 1;
            }
            for j in enumerate_ideals(s) {
                let r = quotient_embed_check(s, t, &j, DEFAULT_BOUND).map_err(e)?;
                ensure(r.holds, || {
                    format!("quotient embedding ({sn},{tn}): {}", r.failure.clone().unwrap_or_default())
                })?;
                checks += 1;
            }
        }
    }
    Ok(format!("{} sample points, {checks} embeddings", elems.len()))
}

type Criterion = (u32, &'static str, fn() -> Outcome, Option<u64>);

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        (1, "internal hom of E_k, E_l", criterion_1, Some(30)),
        (2, "τ against step paths", criterion_2, Some(60)),
        (3, "⟦Pbar,Pbar⟧ is M1", criterion_3, None),
        (4, "matrix semiring", criterion_4, None),
        (5, "tensor-hom adjunction", criterion_5, Some(120)),
        (6, "coreflection", criterion_6, None),
        (7, "semiring identities", criterion_7, None),
        (8, "solidity table", criterion_8, None),
        (9, "O5 failure detection", criterion_9, None),
        (10, "path laws", criterion_10, None),
        (11, "non-simplicity and ideals", criterion_11, None),
    ];
    let mut failed = 0;
    for (n, name, run, limit) in criteria {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let took = start.elapsed();
        let outcome = match (outcome, limit) {
            (Ok(_), Some(s)) if took > Duration::from_secs(s) => Err(format!("took {took:.1?}, limit {s}s")),
            (o, _) => o,
        };
        match outcome {
            Ok(detail) => println!("PASS criterion {n:>2}: {name} ({detail}; {took:.2?})"),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {n:>2}: {name}: {why}");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
