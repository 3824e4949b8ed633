use klr_core::linalg::{Field, LaurentSeries, Matrix, F2, F3, Q};
use klr_core::modules::{induce, Act, Character, CompKey, Gen, GradedModule};
use klr_core::roots::RootSystem;

fn simple<F: Field>(sys: &RootSystem, i: u8) -> GradedModule<F> {
    GradedModule::one_dimensional(sys, &[i], 0).unwrap()
}

/// `k[x]` on the word `(i)`, truncated at `top`: the standard module of a simple root.
fn polynomial<F: Field>(sys: &RootSystem, i: u8, top: i32) -> GradedModule<F> {
    let step = 2 * sys.datum.d(i as usize) as i32;
    let comps = (0..).map(|k| k * step).take_while(|d| *d <= top).map(|d| (CompKey::new(d, vec![i]), 1)).collect();
    let alpha = klr_core::roots::Weight::simple(sys.rank(), i as usize);
    GradedModule::build(sys, &alpha, Some(top), comps, |_, _, _| Ok(Some(Matrix::identity(1)))).unwrap()
}

#[test]
fn two_dimensional_product_in_a2() {
    let sys = RootSystem::parse("A2").unwrap();
    let m = induce(&[&simple::<Q>(&sys, 0), &simple::<Q>(&sys, 1)]).unwrap().module;
    assert_eq!(m.dim(), 2);
    assert_eq!(m.keys(), &[CompKey::new(0, vec![0, 1]), CompKey::new(1, vec![1, 0])]);
    m.check_relations().unwrap();
    // tau_1 sends 1 (x) v to tau_1 (x) v and kills it afterwards
    let low = m.comp(&CompKey::new(0, vec![0, 1])).unwrap();
    let (t, w) = m.apply_gen(Gen::T(0), low, &[Q::one()]).unwrap().unwrap();
    assert_eq!(m.key(t).word, vec![1, 0]);
    assert!(m.apply_gen(Gen::T(0), t, &w).unwrap().is_none());
}

#[test]
fn nilhecke_square_in_a1() {
    let sys = RootSystem::parse("A1").unwrap();
    let l = simple::<Q>(&sys, 0);
    let m = induce(&[&l, &l]).unwrap().module;
    m.check_relations().unwrap();
    let degs: Vec<i32> = m.keys().iter().map(|k| k.degree).collect();
    assert_eq!(degs, vec![-2, 0]);
    let ch = Character::of_module(&m);
    assert_eq!(ch.series[&vec![0u8, 0]], LaurentSeries::from_terms([(-2, 1), (0, 1)]));
    // by hand: tau (1 (x) v) = tau (x) v, x_1 (tau (x) v) = -(1 (x) v), x_2 (tau (x) v) = 1 (x) v
    let hi = m.comp(&CompKey::new(0, vec![0, 0])).unwrap();
    let lo = m.comp(&CompKey::new(-2, vec![0, 0])).unwrap();
    let Act::Map(t, a) = m.action(hi, Gen::T(0)) else { panic!() };
    assert_eq!(*t, lo);
    let Act::Map(_, x1) = m.action(lo, Gen::X(0)) else { panic!() };
    let Act::Map(_, x2) = m.action(lo, Gen::X(1)) else { panic!() };
    assert_eq!(x1.mul(a).get(0, 0).clone(), -Q::one());
    assert_eq!(x2.mul(a).get(0, 0).clone(), Q::one());
}

fn shuffle_agrees<F: Field>(ty: &str, words: &[&[u8]]) {
    let sys = RootSystem::parse(ty).unwrap();
    let factors: Vec<GradedModule<F>> = words
        .iter()
        .map(|w| {
            let pieces: Vec<GradedModule<F>> = w.iter().map(|&i| simple(&sys, i)).collect();
            let refs: Vec<&GradedModule<F>> = pieces.iter().collect();
            if refs.len() == 1 { pieces[0].clone() } else { induce(&refs).unwrap().module }
        })
        .collect();
    let refs: Vec<&GradedModule<F>> = factors.iter().collect();
    let m = induce(&refs).unwrap().module;
    m.check_relations().unwrap();
    let mut expect = Character::of_module(&factors[0]);
    for f in &factors[1..] {
        expect = expect.shuffle(&Character::of_module(f), &sys);
    }
    assert!(Character::of_module(&m).agrees_with(&expect), "{} {:?}", ty, words);
    let d = m.dual().unwrap();
    d.check_relations().unwrap();
    assert_eq!(Character::of_module(&d), Character::of_module(&m).bar().unwrap());
}

#[test]
fn induction_matches_quantum_shuffle() {
    shuffle_agrees::<Q>("A2", &[&[0], &[1], &[0]]);
    shuffle_agrees::<Q>("A3", &[&[1], &[0, 2], &[1]]);
    shuffle_agrees::<Q>("B2", &[&[0], &[1], &[1]]);
    shuffle_agrees::<Q>("C2", &[&[1], &[0], &[0]]);
    shuffle_agrees::<Q>("G2", &[&[0], &[1], &[0]]);
    shuffle_agrees::<F2>("B2", &[&[1], &[0, 1]]);
    shuffle_agrees::<F3>("G2", &[&[0, 0], &[1]]);
}

#[test]
fn truncated_induction_is_trusted_below_top() {
    let sys = RootSystem::parse("B2").unwrap();
    let a = polynomial::<Q>(&sys, 0, 12);
    let b = polynomial::<Q>(&sys, 1, 12);
    let m = induce(&[&a, &b]).unwrap().module;
    let top = m.top().unwrap();
    assert!(top >= 12 + -2 - 1, "top {}", top);
    m.check_relations().unwrap();
    let expect = Character::of_module(&a).shuffle(&Character::of_module(&b), &sys);
    assert!(Character::of_module(&m).agrees_with(&expect));
    // refusal above the window
    let c = m.comps_of_degree(top).first().copied().or_else(|| m.comps_of_degree(top - 1).first().copied()).unwrap();
    let err = m.apply_gen(Gen::X(0), c, &vec![Q::one(); m.dim_of(c)]);
    assert!(err.is_err() || m.key(c).degree + 4 <= top);
}

#[test]
fn height_zero_factor_is_neutral() {
    let sys = RootSystem::parse("A2").unwrap();
    let l = simple::<Q>(&sys, 0);
    let z = GradedModule::<Q>::build(&sys, &klr_core::roots::Weight::zero(2), None, vec![(CompKey::new(0, vec![]), 1)], |_, _, _| Ok(None)).unwrap();
    let m = induce(&[&l, &z]).unwrap().module;
    assert!(m.same_data(&l));
}

#[test]
fn restriction_to_blocks() {
    let sys = RootSystem::parse("A2").unwrap();
    let m = induce(&[&simple::<Q>(&sys, 0), &simple::<Q>(&sys, 1)]).unwrap().module;
    let r = m.restrict(&[sys.simple(0), sys.simple(1)]).unwrap();
    assert_eq!(r.dim(), 1);
    assert_eq!(r.key(0).word, vec![0, 1]);
    r.check_relations().unwrap();
    let whole = m.restrict(&[m.alpha().clone()]).unwrap();
    assert!(Character::of_module(&whole).agrees_with(&Character::of_module(&m)));
}

#[test]
fn endomorphisms_of_polynomial_module() {
    let sys = RootSystem::parse("A1").unwrap();
    let delta = polynomial::<Q>(&sys, 0, 16);
    let gen = delta.basis_vector(0, 0);
    let p = klr_core::modules::Presentation::cyclic(&delta, gen, Some(6)).unwrap();
    assert!(!p.is_exact());
    for (d, want) in [(-2, 0), (0, 1), (1, 0), (2, 1), (4, 1), (10, 1)] {
        assert_eq!(p.hom_space(&delta, d).unwrap().dim(), want, "degree {}", d);
    }
    let err = p.hom_space(&delta, 11).unwrap_err();
    assert!(err.is_refusal());
}

#[test]
fn homs_between_finite_modules_are_exact() {
    let sys = RootSystem::parse("A2").unwrap();
    let m = induce(&[&simple::<Q>(&sys, 0), &simple::<Q>(&sys, 1)]).unwrap().module;
    let p = klr_core::modules::Presentation::auto(&m, None).unwrap();
    assert!(p.is_exact());
    assert_eq!(p.generators().len(), 1);
    let dual = m.dual().unwrap();
    let dims: Vec<usize> = (-3..=3).map(|d| p.hom_space(&dual, d).unwrap().dim()).collect();
    // the only map to the dual kills the socle and lands in degree 0
    assert_eq!(dims, vec![0, 0, 0, 1, 0, 0, 0]);
    let h = p.hom_space(&dual, 0).unwrap();
    let f = p.map_from(&dual, 0, &h.basis[0]).unwrap();
    assert_eq!(f.rank(), 1);
    let head = m.image_of(&f).unwrap();
    head.check_relations().unwrap();
    assert_eq!(head.keys(), &[CompKey::new(0, vec![0, 1])]);
}

#[test]
fn simplicity_and_heads() {
    use klr_core::modules::{is_simple, simple_quotient, unique_head};
    let sys = RootSystem::parse("A2").unwrap();
    let l1 = simple::<Q>(&sys, 0);
    assert!(is_simple(&l1).unwrap());
    let m = induce(&[&l1, &simple::<Q>(&sys, 1)]).unwrap().module;
    assert!(!is_simple(&m).unwrap());
    let (head, s) = unique_head(&m).unwrap();
    assert_eq!((head.dim(), s), (1, 0));
    let other = induce(&[&simple::<Q>(&sys, 1), &l1]).unwrap().module;
    let q = simple_quotient(&other).unwrap();
    assert!(is_simple(&q).unwrap());
    assert_eq!(q.key(0).word, vec![1, 0]);
    // L(a1) o L(a1) is simple of graded dimension [2]
    let a1 = RootSystem::parse("A1").unwrap();
    let sq = induce(&[&simple::<Q>(&a1, 0), &simple::<Q>(&a1, 0)]).unwrap().module;
    assert!(is_simple(&sq).unwrap());
    let (h, s) = unique_head(&sq).unwrap();
    assert_eq!(s, 1);
    assert_eq!(Character::of_module(&h).graded_dim(), LaurentSeries::quantum_integer(2));
}

#[test]
fn decomposition_by_hand_subtraction() {
    use klr_core::modules::{decompose_character, unique_head};
    let sys = RootSystem::parse("A2").unwrap();
    let m = induce(&[&simple::<Q>(&sys, 0), &simple::<Q>(&sys, 1)]).unwrap().module;
    let (head, _) = unique_head(&m).unwrap();
    let socle = Character::of_module(&m).sub(&Character::of_module(&head));
    // ch m - ch head is one copy of the simple on (2,1), in degree 1 relative to its
    // bar-invariant normalization
    let cusp = Character::of_module(&GradedModule::<Q>::one_dimensional(&sys, &[1, 0], 0).unwrap());
    let dec = decompose_character(&Character::of_module(&m), &[Character::of_module(&head), cusp.clone()]).unwrap();
    assert_eq!(dec.mult[0], LaurentSeries::one());
    assert_eq!(dec.mult[1], LaurentSeries::monomial(1, 1));
    assert_eq!(socle, cusp.shift(1));
    // truncated input: the polynomial module of a simple root is [1/(1-q^2)] copies of L
    let a1 = RootSystem::parse("A1").unwrap();
    let delta = polynomial::<Q>(&a1, 0, 9);
    let dec = decompose_character(&Character::of_module(&delta), &[Character::of_module(&simple::<Q>(&a1, 0))]).unwrap();
    assert!(dec.mult[0].agrees_with(&LaurentSeries::geometric(2, 9)));
    assert_eq!(dec.mult[0].exact_below, Some(9));
}

#[test]
fn json_round_trip() {
    let sys = RootSystem::parse("B2").unwrap();
    let m = induce(&[&polynomial::<F3>(&sys, 0, 8), &simple::<F3>(&sys, 1)]).unwrap().module;
    let text = serde_json::to_string(&m.to_json()).unwrap();
    let back: klr_core::modules::ModuleJson = serde_json::from_str(&text).unwrap();
    let n = GradedModule::<F3>::from_json(&sys, &back).unwrap();
    assert!(n.same_data(&m));
    assert!(GradedModule::<Q>::from_json(&sys, &back).is_err());
}
