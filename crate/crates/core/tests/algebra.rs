use klr_core::algebra::polyrep::{PolyRep, PolyVec};
use klr_core::algebra::*;
use klr_core::roots::{RootSystem, Weight};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn algebra(t: &str, alpha: &[i64]) -> KlrAlgebra {
    let sys = RootSystem::parse(t).unwrap();
    KlrAlgebra::new(&sys, &Weight(alpha.to_vec())).unwrap()
}

fn basis_upto(h: &KlrAlgebra, dmax: i32) -> Vec<Mono> {
    let mut out = Vec::new();
    for d in h.min_degree()..=dmax {
        out.extend(h.graded_basis(None, None, d).unwrap());
    }
    out
}

/// Compares two elements through the faithful polynomial representation.
fn rep_equal(h: &KlrAlgebra, lhs: &dyn Fn(&PolyVec) -> PolyVec, rhs: &dyn Fn(&PolyVec) -> PolyVec) -> bool {
    let rep = PolyRep::new(h.datum(), h.n());
    rep.probes(h.words(), 2).iter().all(|v| lhs(v) == rhs(v))
}

#[test]
fn idempotents_are_orthogonal() {
    let h = algebra("A2", &[1, 1]);
    let e12 = h.idempotent(&[0, 1]);
    let e21 = h.idempotent(&[1, 0]);
    assert_eq!(h.multiply(&e12, &e12).unwrap(), e12);
    assert!(h.multiply(&e12, &e21).unwrap().is_zero());
}

#[test]
fn nil_hecke_tau_squared_vanishes() {
    let h = algebra("A1", &[2]);
    let t = h.tau(0);
    assert!(h.multiply(&t, &t).unwrap().is_zero());
}

#[test]
fn quadratic_relation_a2() {
    let h = algebra("A2", &[1, 1]);
    let t = h.apply_generator(Generator::Tau(0), &h.idempotent(&[0, 1]));
    let sq = h.multiply(&h.tau(0), &t).unwrap();
    let want = KlrElement::from_terms([
        (Mono::poly(vec![1, 0], vec![0, 1]), 1),
        (Mono::poly(vec![0, 1], vec![0, 1]), -1),
    ]);
    assert_eq!(sq, want);
}

#[test]
fn products_agree_with_polynomial_representation() {
    let cases: &[(&str, &[i64], i32)] = &[
        ("A1", &[3], 0),
        ("A2", &[1, 2], 2),
        ("A2", &[2, 2], 0),
        ("B2", &[1, 1], 2),
        ("B2", &[1, 2], 2),
        ("C2", &[1, 2], 2),
        ("G2", &[1, 1], 4),
        ("G2", &[1, 2], 2),
        ("G2", &[2, 1], 2),
        ("B2", &[2, 1], 2),
        ("A3", &[1, 1, 1], 1),
        ("A3", &[1, 2, 1], 0),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for &(t, alpha, dmax) in cases {
        let h = algebra(t, alpha);
        let rep = PolyRep::new(h.datum(), h.n());
        let mut basis = basis_upto(&h, dmax);
        basis.shuffle(&mut rng);
        let sample: Vec<Mono> = basis.iter().take(40).cloned().collect();
        for m1 in &sample {
            for m2 in sample.iter().take(12) {
                let prod = KlrElement::from_terms(h.mono_mul(m1, m2));
                for d in prod.terms() {
                    assert_eq!(h.degree(d.0), h.degree(m1) + h.degree(m2), "{t} degree");
                }
                let ok = rep_equal(&h, &|v| rep.element(&prod, v), &|v| rep.mono(m1, &rep.mono(m2, v)));
                assert!(ok, "{t} {alpha:?}: {m1:?} * {m2:?} = {prod:?}");
            }
        }
    }
}

#[test]
fn associativity_on_random_triples() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for (t, alpha) in [("A2", vec![1, 2]), ("B2", vec![1, 2]), ("A3", vec![1, 1, 1]), ("A1", vec![2])] {
        let h = algebra(t, &alpha);
        let basis = basis_upto(&h, 2);
        for _ in 0..60 {
            let pick = |rng: &mut ChaCha8Rng| KlrElement::from_mono(basis.choose(rng).unwrap().clone());
            let (a, b, c) = (pick(&mut rng), pick(&mut rng), pick(&mut rng));
            let left = h.multiply(&h.multiply(&a, &b).unwrap(), &c).unwrap();
            let right = h.multiply(&a, &h.multiply(&b, &c).unwrap()).unwrap();
            assert_eq!(left, right, "{t}");
        }
    }
}

#[test]
fn exhaustive_associativity_height_two() {
    for (t, alpha) in [("A1", vec![2]), ("A2", vec![1, 1]), ("B2", vec![1, 1]), ("G2", vec![1, 1])] {
        let h = algebra(t, &alpha);
        let basis = basis_upto(&h, 4);
        let els: Vec<KlrElement> = basis.iter().cloned().map(KlrElement::from_mono).collect();
        for a in &els {
            for b in &els {
                let ab = h.multiply(a, b).unwrap();
                for c in els.iter().take(8) {
                    let l = h.multiply(&ab, c).unwrap();
                    let r = h.multiply(a, &h.multiply(b, c).unwrap()).unwrap();
                    assert_eq!(l, r, "{t}");
                }
            }
        }
    }
}

#[test]
fn graded_dimensions_small() {
    let h = algebra("A2", &[1, 1]);
    let dims: Vec<usize> = (0..=4).map(|d| h.graded_basis(Some(&[0, 1]), Some(&[0, 1]), d).unwrap().len()).collect();
    assert_eq!(dims, vec![1, 0, 2, 0, 3]);
    let a1 = algebra("A1", &[1]);
    for k in 0..4 {
        let b = a1.graded_basis(None, None, 2 * k).unwrap();
        assert_eq!(b, vec![Mono::poly(vec![k as u16], vec![0])]);
    }
    let nh = algebra("A1", &[2]);
    assert_eq!(nh.min_degree(), -2);
    let b = nh.graded_basis(None, None, -2).unwrap();
    assert_eq!(b.len(), 1);
    assert_eq!(b[0].w, Perm::from_word(2, &[0]));
}

#[test]
fn window_is_enforced() {
    let sys = RootSystem::parse("A2").unwrap();
    let h = KlrAlgebra::new(&sys, &Weight(vec![1, 1])).unwrap().with_window(3);
    assert!(h.graded_basis(None, None, 4).unwrap_err().is_refusal());
}

#[test]
fn iota_is_an_anti_involution() {
    let h = algebra("B2", &[1, 2]);
    let basis = basis_upto(&h, 2);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..40 {
        let a = KlrElement::from_mono(basis.choose(&mut rng).unwrap().clone());
        let b = KlrElement::from_mono(basis.choose(&mut rng).unwrap().clone());
        assert_eq!(h.iota(&h.iota(&a)), a);
        let ab = h.multiply(&a, &b).unwrap();
        assert_eq!(h.iota(&ab), h.multiply(&h.iota(&b), &h.iota(&a)).unwrap());
    }
    // iota(tau_1 x_2 1_i) = x_2 tau_1 1_i re-expanded
    let a2 = algebra("A1", &[2]);
    let m = Mono { w: Perm::from_word(2, &[0]), a: vec![0, 1], i: vec![0, 0] };
    let lhs = a2.iota(&KlrElement::from_mono(m));
    let expect = a2.multiply(&a2.x(1), &a2.tau(0)).unwrap();
    assert_eq!(lhs, expect);
    // x_2 tau_1 = tau_1 x_1 + 1 on equal colors
    let t1x1 = KlrElement::from_mono(Mono { w: Perm::from_word(2, &[0]), a: vec![1, 0], i: vec![0, 0] });
    assert_eq!(expect, t1x1.add(&a2.idempotent(&[0, 0])));
}

/// Span of all products of generators, computed degreewise, against the basis count.
#[test]
fn rewriting_closure_matches_basis_count() {
    use klr_core::linalg::{Field, Subspace, Q};
    use std::collections::{BTreeMap, HashMap};
    for (t, alpha, dmax) in [("A2", vec![1, 1], 8), ("B2", vec![1, 1], 8), ("A3", vec![1, 1, 1], 4)] {
        let h = algebra(&t, &alpha);
        let slack = 8;
        // coordinates: index of each basis monomial by (left, right, degree)
        let mut index: HashMap<Mono, usize> = HashMap::new();
        let mut blocks: BTreeMap<(Word, Word, i32), usize> = BTreeMap::new();
        for d in h.min_degree()..=dmax + slack {
            for m in h.graded_basis(None, None, d).unwrap() {
                let key = (m.left_word(), m.i.clone(), d);
                let k = blocks.entry(key).or_insert(0);
                index.insert(m, *k);
                *k += 1;
            }
        }
        let mut spans: BTreeMap<(Word, Word, i32), Subspace<Q>> = BTreeMap::new();
        let mut frontier: Vec<KlrElement> = h.words().iter().map(|w| h.idempotent(w)).collect();
        let gens: Vec<Generator> =
            (0..h.n()).map(Generator::X).chain((0..h.n() - 1).map(Generator::Tau)).collect();
        while let Some(e) = frontier.pop() {
            let Some(d) = h.element_degree(&e) else { continue };
            if d > dmax + slack {
                continue;
            }
            let (m0, _) = e.terms().next().unwrap();
            let key = (m0.left_word(), m0.i.clone(), d);
            let dim = blocks[&key];
            let mut v = vec![Q::zero(); dim];
            for (m, c) in e.terms() {
                v[index[m]] = Q::from_i64(c);
            }
            let span = spans.entry(key).or_insert_with(|| Subspace::new(dim));
            if span.insert(v) {
                for g in &gens {
                    let ge = h.apply_generator(g.clone(), &e);
                    if !ge.is_zero() {
                        frontier.push(ge);
                    }
                }
            }
        }
        for (key, &count) in &blocks {
            if key.2 <= dmax {
                let got = spans.get(key).map_or(0, |s| s.dim());
                assert_eq!(got, count, "{t} block {key:?}");
            }
        }
    }
}

#[test]
fn p_element_and_z_in_a2() {
    let h = algebra("A2", &[1, 1]);
    let want = KlrElement::from_terms([
        (Mono::poly(vec![1, 0], vec![0, 1]), 1),
        (Mono::poly(vec![0, 1], vec![1, 0]), 1),
    ]);
    assert_eq!(h.p_element(0).unwrap(), want);
    assert_eq!(h.central_z(0, 0).unwrap(), want);
    assert!(h.centrality(&want).unwrap().is_central());
    assert_eq!(h.element_degree(&want), Some(2));
    let a1 = algebra("A1", &[1]);
    assert!(a1.centrality(&a1.x(0)).unwrap().is_central());
}

#[test]
fn central_elements_commute_in_all_small_types() {
    for (t, alpha) in [("B2", vec![1, 2]), ("G2", vec![1, 2]), ("A3", vec![1, 1, 1]), ("A2", vec![2, 1])] {
        let h = algebra(t, &alpha);
        for color in 0..alpha.len() {
            for k in 1..=alpha[color] as usize {
                let e = h.central_elementary(color, k);
                assert!(h.centrality(&e).unwrap().is_central(), "{t} e_{k}({color})");
            }
            assert!(h.centrality(&h.p_element(color).unwrap()).unwrap().is_central());
        }
        // a non-central element is detected
        let cert = h.centrality(&h.x(0)).unwrap();
        assert!(!cert.is_central());
    }
}

#[test]
fn z_preconditions() {
    let b2 = algebra("B2", &[1, 1]);
    assert!(b2.central_z(0, 0).is_err());
    let a2 = algebra("A2", &[2, 1]);
    assert!(matches!(a2.central_z(0, 2), Err(klr_core::KlrError::Domain(_))));
    assert!(a2.central_z(1, 2).is_ok());
    assert_eq!(a2.z_color(2), Some(1));
}

#[test]
fn hprime_basis_and_tensor_decomposition() {
    let h = algebra("A2", &[1, 1]);
    let b0: Vec<KlrElement> = h.hprime_basis(0).unwrap().into_iter().map(|x| x.1).collect();
    assert_eq!(b0, vec![h.idempotent(&[0, 1]), h.idempotent(&[1, 0])]);
    let b1 = h.hprime_basis(1).unwrap();
    assert_eq!(b1.len(), 2);
    assert!(b1.iter().all(|(l, _)| l.1 == Perm::from_word(2, &[0])));
    assert!(h.hprime_basis(-1).unwrap().is_empty());

    use klr_core::linalg::{Field, Matrix, Q};
    for (t, alpha) in [("A2", vec![1, 1]), ("A2", vec![1, 2]), ("A3", vec![1, 1, 1])] {
        let h = algebra(t, &alpha);
        let z = h.central_z(h.z_color(0).unwrap(), 0).unwrap();
        for d in h.min_degree()..=4 {
            let full = h.graded_basis(None, None, d).unwrap();
            let mut span: Vec<KlrElement> = Vec::new();
            for k in 0.. {
                let dd = d - 2 * k;
                if dd < h.min_degree() {
                    break;
                }
                let mut zk = h.one();
                for _ in 0..k {
                    zk = h.multiply(&z, &zk).unwrap();
                }
                for (_, e) in h.hprime_basis(dd).unwrap() {
                    span.push(h.multiply(&zk, &e).unwrap());
                }
            }
            // dim H_d = sum_k dim H'_{d-2k}, and the products span H_d
            assert_eq!(span.len(), full.len(), "{t} degree {d}");
            let rows: Vec<Vec<Q>> =
                span.iter().map(|e| full.iter().map(|m| Q::from_i64(e.coeff(m))).collect()).collect();
            let m = Matrix::from_rows(rows, full.len());
            assert_eq!(m.rank(), full.len(), "{t} degree {d}");
        }
    }
}

#[test]
fn coset_decomposition_round_trips() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for (t, alpha, sizes) in [("A2", vec![1, 2], vec![1, 2]), ("B2", vec![1, 2], vec![2, 1]), ("A3", vec![1, 1, 1], vec![1, 1, 1])] {
        let h = algebra(t, &alpha);
        let basis = basis_upto(&h, 2);
        for _ in 0..30 {
            let e = KlrElement::from_mono(basis.choose(&mut rng).unwrap().clone())
                .add(&KlrElement::from_mono(basis.choose(&mut rng).unwrap().clone()).scale(3));
            let dec = h.coset_decompose(&e, &sizes);
            for term in &dec {
                assert!(term.u.is_min_coset_rep(&sizes));
                let parts = split_parabolic(&term.h, &sizes);
                let v = parts.iter().skip(1).fold(parts[0].w.clone(), |acc, p| acc.concat(&p.w));
                assert_eq!(v, term.h.w);
            }
            assert_eq!(h.coset_recombine(&dec), e, "{t}");
        }
    }
}
