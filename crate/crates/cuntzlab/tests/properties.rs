use proptest::prelude::*;

use cuntzlab::bivariant::{bivariant_named, compose, Value};
use cuntzlab::catalog::{kronecker, mat_mul, Carrier, CatElem};
use cuntzlab::family::{all_aux, cu_family, random_q_family};
use cuntzlab::finite::{isomorphism, tau_finite, FiniteQ};
use cuntzlab::numbers::NInf;
use cuntzlab::order::{validate_aux, validate_pom};
use cuntzlab::paths::{corpus, path_compare, Cmp, RealAux};
use cuntzlab::structure_file::StructureFile;
use cuntzlab::tensor::tensor_resolve;
use cuntzlab::DEFAULT_BOUND;

const CARRIERS: [&str; 12] = ["Nbar", "Nbar^2", "E0", "E2", "Pbar", "Z", "R2", "R3", "Q", "M1", "Minf", "Hex"];

fn ninf() -> impl Strategy<Value = NInf> {
    prop_oneof![4 => (0u64..6).prop_map(NInf::Fin), 1 => Just(NInf::Inf)]
}

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = Vec<Vec<NInf>>> {
    prop::collection::vec(prop::collection::vec(ninf(), cols), rows)
}

fn random_q(max: usize) -> impl Strategy<Value = FiniteQ> {
    (any::<u64>()).prop_map(move |seed| random_q_family(1, max, seed).unwrap().remove(0))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn extended_naturals_form_a_semiring(a in ninf(), b in ninf(), c in ninf()) {
        prop_assert_eq!(a.add(b), b.add(a));
        prop_assert_eq!(a.add(b).add(c), a.add(b.add(c)));
        prop_assert_eq!(a.mul(b).mul(c), a.mul(b.mul(c)));
        prop_assert_eq!(a.mul(b.add(c)), a.mul(b).add(a.mul(c)));
        prop_assert_eq!(a.mul(NInf::ZERO), NInf::ZERO);
        prop_assert!(a <= a.add(b));
    }

    #[test]
    fn matrix_product_is_associative_and_kronecker_mixes(
        a in matrix(2, 3), b in matrix(3, 2), c in matrix(2, 2), d in matrix(2, 1),
    ) {
        let ab_c = mat_mul(&mat_mul(&a, &b).unwrap(), &c).unwrap();
        let a_bc = mat_mul(&a, &mat_mul(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(ab_c, a_bc);
        let left = mat_mul(&kronecker(&a, &c), &kronecker(&b, &d)).unwrap();
        let right = kronecker(&mat_mul(&a, &b).unwrap(), &mat_mul(&c, &d).unwrap());
        prop_assert_eq!(left, right);
    }

    #[test]
    fn composing_matrices_is_associative(a in matrix(2, 2), b in matrix(2, 3), c in matrix(3, 1)) {
        let name = |k: usize| if k == 1 { "Nbar".to_string() } else { format!("Nbar^{k}") };
        let h = |k: usize, l: usize| bivariant_named(&name(k), &name(l), DEFAULT_BOUND).unwrap();
        let m = |x: &Vec<Vec<NInf>>| Value::Cat(CatElem::Mat(x.clone()));
        let (h13, h32, h22) = (h(1, 3), h(3, 2), h(2, 2));
        let (bc, vbc) = compose(&h32, &m(&b), &h13, &m(&c), DEFAULT_BOUND).unwrap();
        let (_, left) = compose(&h22, &m(&a), &bc, &vbc, DEFAULT_BOUND).unwrap();
        let (ab, vab) = compose(&h22, &m(&a), &h32, &m(&b), DEFAULT_BOUND).unwrap();
        let (_, right) = compose(&ab, &vab, &h13, &m(&c), DEFAULT_BOUND).unwrap();
        prop_assert_eq!(&left, &right);
        let abc = mat_mul(&mat_mul(&a, &b).unwrap(), &c).unwrap();
        prop_assert_eq!(left, m(&abc));
    }

    #[test]
    fn tensor_rewriting_is_confluent(picks in prop::collection::vec(0..CARRIERS.len(), 1..5), rot in 0usize..4) {
        let factors: Vec<Carrier> = picks.iter().map(|&i| Carrier::parse(CARRIERS[i]).unwrap()).collect();
        let r = |f: &[Carrier]| tensor_resolve(f).ok();
        let mut rotated = factors.clone();
        rotated.rotate_left(rot % factors.len());
        let mut reversed = factors.clone();
        reversed.reverse();
        let whole = r(&factors);
        prop_assert_eq!(&whole, &r(&rotated));
        prop_assert_eq!(&whole, &r(&reversed));
        if factors.len() > 1 {
            let (init, last) = factors.split_at(factors.len() - 1);
            if let Some(h) = r(init) {
                prop_assert_eq!(&whole, &r(&[h, last[0].clone()]));
            }
        }
    }

    #[test]
    fn catalog_carriers_are_ordered_monoids(i in 0..CARRIERS.len(), seed in any::<u64>()) {
        let c = Carrier::parse(CARRIERS[i]).unwrap();
        let xs = c.sample(6, seed);
        let z = c.zero();
        for a in &xs {
            prop_assert!(c.check(a).is_ok());
            prop_assert_eq!(&c.add(a, &z), a);
            prop_assert!(c.leq(&z, a));
            for b in &xs {
                prop_assert_eq!(c.add(a, b), c.add(b, a));
                prop_assert!(c.leq(a, &c.add(a, b)));
                for d in &xs {
                    prop_assert_eq!(c.add(&c.add(a, b), d), c.add(a, &c.add(b, d)));
                    if c.leq(a, b) {
                        prop_assert!(c.leq(&c.add(a, d), &c.add(b, d)));
                        if c.leq(b, d) {
                            prop_assert!(c.leq(a, d));
                        }
                    }
                    if c.waybelow(a, b) && c.leq(b, d) {
                        prop_assert!(c.waybelow(a, d));
                    }
                }
            }
        }
    }

    #[test]
    fn evaluation_is_additive_and_monotone(
        pair in prop::sample::select(vec![("Pbar", "Pbar"), ("Z", "Z"), ("R2", "R3"), ("Pbar", "R2"), ("M1", "M1"), ("Sex", "Sex"), ("Nbar", "E3")]),
        seed in any::<u64>(),
    ) {
        let b = bivariant_named(pair.0, pair.1, DEFAULT_BOUND).unwrap();
        let xs = b.elements(4, seed);
        let ss = b.source.samples(4, seed ^ 1);
        for x in &xs {
            for y in &xs {
                let xy = b.carrier.add(x, y).unwrap();
                for s in &ss {
                    let lhs = b.evaluate(&xy, s).unwrap();
                    let rhs = b.target.add(&b.evaluate(x, s).unwrap(), &b.evaluate(y, s).unwrap()).unwrap();
                    prop_assert_eq!(lhs, rhs);
                    if b.carrier.leq(x, y).unwrap() {
                        prop_assert!(b.target.leq(&b.evaluate(x, s).unwrap(), &b.evaluate(y, s).unwrap()).unwrap());
                    }
                }
                for s in &ss {
                    for t in &ss {
                        let st = b.source.add(s, t).unwrap();
                        let lhs = b.evaluate(x, &st).unwrap();
                        let rhs = b.target.add(&b.evaluate(x, s).unwrap(), &b.evaluate(x, t).unwrap()).unwrap();
                        prop_assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn tau_is_idempotent_and_files_round_trip(q in random_q(5)) {
        let t = tau_finite(&q);
        prop_assert!(validate_pom(&t.cu.pom).unwrap().is_empty());
        let tt = tau_finite(&t.cu.as_q());
        prop_assert!(isomorphism(&t.cu.pom, &tt.cu.pom).is_some());
        let text = StructureFile::from_q("q", &q).to_json();
        let back = StructureFile::parse(&text).unwrap();
        prop_assert_eq!(back.to_q().unwrap(), q);
        prop_assert_eq!(back.to_json(), text);
    }

    #[test]
    fn path_comparison_is_a_preorder(seed in any::<u64>(), strict in any::<bool>()) {
        let c = if strict { RealAux::One } else { RealAux::Infinity };
        let ps = corpus::real_paths(&c, 12, seed);
        let le: Vec<Vec<bool>> = ps
            .iter()
            .map(|p| ps.iter().map(|q| path_compare(&c, p, q)).map(|r| { assert_ne!(r, Cmp::Unknown); r == Cmp::Le }).collect())
            .collect();
        for i in 0..ps.len() {
            prop_assert!(le[i][i]);
            for j in 0..ps.len() {
                for k in 0..ps.len() {
                    prop_assert!(!(le[i][j] && le[j][k]) || le[i][k]);
                }
            }
        }
    }
}

#[test]
fn every_aux_relation_on_the_family_is_valid() {
    for cu in cu_family(4).unwrap() {
        for aux in all_aux(&cu.pom) {
            assert!(validate_aux(&cu.pom, &aux).unwrap().is_empty());
        }
    }
}
