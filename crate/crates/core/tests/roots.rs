use std::cmp::Ordering;

use klr_core::roots::*;

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for k in 0..n {
            let mut q = p.clone();
            q.insert(k, n - 1);
            out.push(q);
        }
    }
    out
}

/// Elements of the positive cone with height at most `h`.
fn cone(rank: usize, h: i64) -> Vec<Weight> {
    let mut out = vec![Weight::zero(rank)];
    for i in 0..rank {
        out = out
            .into_iter()
            .flat_map(|w| {
                (0..=h).filter_map(move |c| {
                    let mut v = w.clone();
                    v.0[i] = c;
                    (v.height() <= h).then_some(v)
                })
            })
            .collect();
    }
    out.retain(|w| !w.is_zero());
    out
}

fn small_setups() -> Vec<(RootSystem, ConvexOrder)> {
    let mut out = Vec::new();
    for t in ["A2", "A3", "B2", "C3", "G2"] {
        let s = RootSystem::parse(t).unwrap();
        for word in longest_words(&s, 3) {
            let o = ConvexOrder::from_word(&s, &word).unwrap();
            out.push((s.clone(), o));
        }
    }
    out
}

#[test]
fn bilex_is_a_partial_order() {
    for (s, o) in small_setups() {
        for alpha in cone(s.rank(), if s.rank() > 2 { 4 } else { 5 }) {
            let kp = kostant_partitions(&o, &alpha);
            for a in &kp {
                assert_eq!(a.weight(), alpha);
                assert_eq!(bilex_cmp(&o, a, a), Some(Ordering::Equal));
                for b in &kp {
                    if a != b {
                        assert!(!(bilex_less(&o, a, b) && bilex_less(&o, b, a)));
                    }
                    for c in &kp {
                        if bilex_less(&o, a, b) && bilex_less(&o, b, c) {
                            assert!(bilex_less(&o, a, c));
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn partition_count_matches_multiset_enumeration() {
    // independent count: multisets of positive roots summing to alpha, ignoring order
    fn count(roots: &[Weight], start: usize, rem: &Weight) -> usize {
        if rem.is_zero() {
            return 1;
        }
        (start..roots.len())
            .filter(|&k| rem.sub(&roots[k]).is_nonnegative())
            .map(|k| count(roots, k, &rem.sub(&roots[k])))
            .sum()
    }
    for (s, o) in small_setups() {
        for alpha in cone(s.rank(), 4) {
            assert_eq!(kostant_partitions(&o, &alpha).len(), count(s.positive_roots(), 0, &alpha));
        }
    }
}

#[test]
fn minimal_pairs_straddle_their_root() {
    for (s, o) in small_setups() {
        for alpha in s.positive_roots() {
            let mp = minimal_pairs(&s, &o, alpha).unwrap();
            if alpha.height() >= 2 {
                assert!(!mp.is_empty(), "{alpha}");
            }
            for pair in mp {
                assert_eq!(pair.beta.add(&pair.gamma), *alpha);
                assert!(o.less(alpha, &pair.beta) && o.less(&pair.gamma, alpha));
                assert!(s.is_signed_root(&pair.beta.sub(&pair.gamma.scale(pair.p))));
                assert!(!s.is_signed_root(&pair.beta.sub(&pair.gamma.scale(pair.p + 1))));
            }
        }
    }
}

#[test]
fn lambda_equivalence_holds_exhaustively() {
    let mut checked = 0;
    for (s, o) in small_setups() {
        for alpha in cone(s.rank(), 4) {
            let n = alpha.height() as usize;
            let kp = kostant_partitions(&o, &alpha);
            let perms = permutations(n);
            for l in &kp {
                for m in &kp {
                    if bilex_leq(&o, m, l) {
                        continue;
                    }
                    for w in &perms {
                        if word_compatible(&s, l, m, w) {
                            assert!(lambda_equiv_witness(&s, &o, l, m, w).unwrap().is_some(), "{l} {m} {w:?}");
                            checked += 1;
                        }
                    }
                }
            }
        }
    }
    assert!(checked > 100);
}

#[test]
fn b2_minimal_pair_string() {
    let s = RootSystem::parse("B2").unwrap();
    for word in longest_words(&s, 10) {
        let o = ConvexOrder::from_word(&s, &word).unwrap();
        let mp = minimal_pairs(&s, &o, &Weight(vec![1, 1])).unwrap();
        assert_eq!(mp.len(), 1);
        // a1 - a2 and a2 - a1 are not roots
        assert_eq!(mp[0].p, 0);
        let top = Weight(vec![1, 2]);
        if let [pair] = minimal_pairs(&s, &o, &top).unwrap().as_slice() {
            assert_eq!(pair.beta.add(&pair.gamma), top);
        }
    }
}
