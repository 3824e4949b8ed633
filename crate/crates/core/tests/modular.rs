use klr_core::linalg::{F2, F3, Q};
use klr_core::modular::{adjustment_matrix, decomposition_matrix, integral_form};
use klr_core::modules::{Character, GradedModule};
use klr_core::roots::{ConvexOrder, RootSystem, Weight};
use klr_core::standard::Family;

fn families(ty: &str) -> (Family<Q>, Family<F2>, Family<F3>) {
    let sys = RootSystem::parse(ty).unwrap();
    let order = ConvexOrder::default_for(&sys);
    (Family::new(&sys, &order), Family::new(&sys, &order), Family::new(&sys, &order))
}

#[test]
fn lattices_of_small_modules() {
    let sys = RootSystem::parse("A1").unwrap();
    let l = GradedModule::<Q>::one_dimensional(&sys, &[0], 0).unwrap();
    let lat = integral_form(&l, &[l.basis_vector(0, 0)]).unwrap();
    assert_eq!(lat.comps[0].basis, vec![vec![1.into()]]);
    let (q, _, _) = families("A2");
    let cusp = q.cuspidal(&Weight(vec![1, 1])).unwrap();
    let lat = integral_form(&cusp, &[cusp.basis_vector(0, 0)]).unwrap();
    assert_eq!(lat.comps.len(), 1);
    assert_eq!(lat.comps[0].rank(), 1);
    // the polynomial module reduces to F2[x]
    let d = q.delta(&Weight(vec![1, 0]), 8).unwrap();
    let lat = integral_form(&d, &[d.basis_vector(0, 0)]).unwrap();
    let red = lat.reduce::<F2>().unwrap();
    red.check_relations().unwrap();
    assert_eq!(Character::of_module(&red), Character::of_module(&*d));
}

#[test]
fn decomposition_matrices_in_a2() {
    let (q, f2, _) = families("A2");
    let alpha = Weight(vec![1, 1]);
    let dk = decomposition_matrix(&q, &alpha).unwrap();
    assert_eq!(dk.size(), 2);
    eprintln!("{}", dk.to_csv());
    assert_eq!(dk.entries[0][0].to_laurent_string(), "1");
    assert_eq!(dk.entries[1][0].to_laurent_string(), "q");
    let df = decomposition_matrix(&f2, &alpha).unwrap();
    assert!(df.same_entries(&dk.entries));
    let a1 = families("A1");
    let m = decomposition_matrix(&a1.0, &Weight(vec![2])).unwrap();
    assert!(m.is_identity());
}

#[test]
fn adjustment_matrices_in_type_a() {
    for (ty, alpha) in [("A2", vec![1, 1]), ("A2", vec![1, 2]), ("A3", vec![1, 1, 1])] {
        let (q, f2, f3) = families(ty);
        let alpha = Weight(alpha);
        let r2 = adjustment_matrix(&q, &f2, &alpha).unwrap();
        let r3 = adjustment_matrix(&q, &f3, &alpha).unwrap();
        for r in [&r2.verdict, &r3.verdict] {
            eprintln!("{}", r);
        }
        for ok in [r2.characters_preserved, r2.lattice_independent, r2.unitriangular, r2.bar_invariant, r2.factorization] {
            assert!(ok, "{:?}", r2);
        }
        assert!(r3.factorization && r3.unitriangular && r3.lattice_independent);
    }
}

#[test]
fn ext1_windows_in_a2() {
    use klr_core::modular::{ext1_stable, ext1_window, sorted_partitions, torsion_report};
    let (q, f2, _) = families("A2");
    let kps = sorted_partitions(q.order(), &Weight(vec![1, 1]));
    let (lo, hi) = (&kps[0], &kps[1]);
    // self-extensions and extensions against the order vanish
    for (l, m) in [(lo, lo), (hi, hi), (hi, lo)] {
        let w = ext1_window(&q, l, m, 6, 8).unwrap();
        eprintln!("{} {} {:?}", l, m, w.degrees.iter().filter(|x| x.upper > 0).collect::<Vec<_>>());
        assert!(w.degrees.iter().all(|x| x.upper == 0), "{:?}", w);
    }
    let (a, b, stable) = ext1_stable(&q, lo, hi, 6, 8, 12).unwrap();
    eprintln!("{:?}\n{:?}", a.degrees.iter().filter(|x| x.upper > 0).collect::<Vec<_>>(), b.degrees.iter().filter(|x| x.upper > 0).collect::<Vec<_>>());
    assert!(stable);
    let t = torsion_report(&q, &f2, lo, hi, 6, 8).unwrap();
    eprintln!("{}", t.verdict);
    assert!(t.hom_vanishing && t.degrees.iter().all(|x| x.difference >= 0));
}
