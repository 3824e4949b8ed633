//! Kostant partitions, the bilexicographic order and minimal pairs.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::order::ConvexOrder;
use super::system::{RootSystem, Weight};
use crate::error::{KlrError, Result};

/// Parts in weakly decreasing convex order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct KostantPartition {
    pub parts: Vec<Weight>,
}

impl KostantPartition {
    /// Sorts the parts into decreasing order.
    pub fn new(mut parts: Vec<Weight>, order: &ConvexOrder) -> Result<Self> {
        if parts.is_empty() {
            return Err(KlrError::Invalid("empty Kostant partition".into()));
        }
        for p in &parts {
            if order.position(p).is_none() {
                return Err(KlrError::Invalid(format!("{p} is not a positive root")));
            }
        }
        parts.sort_by_key(|p| order.position(p).unwrap());
        Ok(KostantPartition { parts })
    }

    pub fn single(root: Weight) -> Self {
        KostantPartition { parts: vec![root] }
    }

    /// `(root, ..., root)` with `m` copies.
    pub fn power(root: Weight, m: usize) -> Self {
        KostantPartition { parts: vec![root; m] }
    }

    pub fn weight(&self) -> Weight {
        let mut s = Weight::zero(self.parts[0].0.len());
        for p in &self.parts {
            s = s.add(p);
        }
        s
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Groups equal consecutive parts: `[(root, multiplicity)]`.
    pub fn blocks(&self) -> Vec<(Weight, usize)> {
        let mut out: Vec<(Weight, usize)> = Vec::new();
        for p in &self.parts {
            match out.last_mut() {
                Some((r, m)) if r == p => *m += 1,
                _ => out.push((p.clone(), 1)),
            }
        }
        out
    }

    /// Heights of the parts.
    pub fn heights(&self) -> Vec<usize> {
        self.parts.iter().map(|p| p.height() as usize).collect()
    }

    /// Block index of every position `0..n`.
    pub fn block_of_position(&self) -> Vec<usize> {
        self.heights().iter().enumerate().flat_map(|(b, &h)| std::iter::repeat(b).take(h)).collect()
    }
}

impl fmt::Display for KostantPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "[{}]", parts.join(" "))
    }
}

/// Every Kostant partition of `alpha`.
pub fn kostant_partitions(order: &ConvexOrder, alpha: &Weight) -> Vec<KostantPartition> {
    fn go(
        roots: &[Weight],
        start: usize,
        rem: &Weight,
        cur: &mut Vec<Weight>,
        out: &mut Vec<KostantPartition>,
    ) {
        if rem.is_zero() {
            out.push(KostantPartition { parts: cur.clone() });
            return;
        }
        for k in start..roots.len() {
            let next = rem.sub(&roots[k]);
            if next.is_nonnegative() {
                cur.push(roots[k].clone());
                go(roots, k, &next, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    if alpha.is_nonnegative() && !alpha.is_zero() {
        go(order.roots(), 0, alpha, &mut Vec::new(), &mut out);
    }
    out
}

/// First position where the sequences differ, compared in the convex order.
fn lex(order: &ConvexOrder, a: impl Iterator<Item = Weight>, b: impl Iterator<Item = Weight>) -> Ordering {
    for (x, y) in a.zip(b) {
        match order.cmp_roots(&x, &y) {
            Ordering::Equal => continue,
            o => return o,
        }
    }
    Ordering::Equal
}

/// Bilexicographic comparison: `Some(Less)` iff `l < m`, `None` if incomparable.
pub fn bilex_cmp(order: &ConvexOrder, l: &KostantPartition, m: &KostantPartition) -> Option<Ordering> {
    if l == m {
        return Some(Ordering::Equal);
    }
    let front = lex(order, l.parts.iter().cloned(), m.parts.iter().cloned());
    let back = lex(order, l.parts.iter().rev().cloned(), m.parts.iter().rev().cloned());
    match (front, back) {
        (Ordering::Less, Ordering::Greater) => Some(Ordering::Less),
        (Ordering::Greater, Ordering::Less) => Some(Ordering::Greater),
        _ => None,
    }
}

pub fn bilex_less(order: &ConvexOrder, l: &KostantPartition, m: &KostantPartition) -> bool {
    bilex_cmp(order, l, m) == Some(Ordering::Less)
}

pub fn bilex_leq(order: &ConvexOrder, l: &KostantPartition, m: &KostantPartition) -> bool {
    matches!(bilex_cmp(order, l, m), Some(Ordering::Less | Ordering::Equal))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinimalPair {
    pub beta: Weight,
    pub gamma: Weight,
    /// Largest `p` with `beta - p gamma` a root.
    pub p: i64,
}

/// Minimal elements of `{l in KP(alpha) : l > (alpha)}`.
pub fn minimal_pairs(sys: &RootSystem, order: &ConvexOrder, alpha: &Weight) -> Result<Vec<MinimalPair>> {
    if !sys.is_root(alpha) {
        return Err(KlrError::Invalid(format!("{alpha} is not a positive root")));
    }
    if alpha.height() < 2 {
        return Ok(Vec::new());
    }
    let me = KostantPartition::single(alpha.clone());
    let above: Vec<KostantPartition> =
        kostant_partitions(order, alpha).into_iter().filter(|l| bilex_less(order, &me, l)).collect();
    let mut out = Vec::new();
    for l in &above {
        if above.iter().any(|m| bilex_less(order, m, l)) {
            continue;
        }
        if l.len() != 2 {
            return Err(KlrError::Inconsistent(format!("minimal partition {l} above {alpha} is not a pair")));
        }
        let (beta, gamma) = (l.parts[0].clone(), l.parts[1].clone());
        if !(order.less(alpha, &beta) && order.less(&gamma, alpha)) {
            return Err(KlrError::Inconsistent(format!("pair {l} does not straddle {alpha}")));
        }
        let p = sys.string_length(&beta, &gamma);
        out.push(MinimalPair { beta, gamma, p });
    }
    out.sort_by(|a, b| {
        order.position(&a.beta).cmp(&order.position(&b.beta)).then(order.position(&a.gamma).cmp(&order.position(&b.gamma)))
    });
    Ok(out)
}

/// Place action of a permutation (one-line, 0-based) on a word: `(w.i)_{w(k)} = i_k`.
pub fn permute_word(w: &[usize], word: &[usize]) -> Vec<usize> {
    let mut out = vec![0; word.len()];
    for (k, &x) in word.iter().enumerate() {
        out[w[k]] = x;
    }
    out
}

fn concatenated_words(sys: &RootSystem, l: &KostantPartition) -> Vec<Vec<usize>> {
    let mut acc: Vec<Vec<usize>> = vec![Vec::new()];
    for p in &l.parts {
        let ws = sys.words(p);
        acc = acc.iter().flat_map(|a| ws.iter().map(move |w| [a.clone(), w.clone()].concat())).collect();
    }
    acc
}

/// Whether `w` sends some word of `I^mu` (block concatenation) into `I^lambda`.
pub fn word_compatible(sys: &RootSystem, l: &KostantPartition, m: &KostantPartition, w: &[usize]) -> bool {
    let targets: std::collections::HashSet<Vec<usize>> = concatenated_words(sys, l).into_iter().collect();
    concatenated_words(sys, m).iter().any(|i| targets.contains(&permute_word(w, i)))
}

/// For `l` not `>= m` and a word-compatible `w`, finds `r` (0-based, comparing positions
/// `r` and `r+1`) in one block of `l` whose preimages lie in different blocks of `m`.
pub fn lambda_equiv_witness(
    sys: &RootSystem,
    order: &ConvexOrder,
    l: &KostantPartition,
    m: &KostantPartition,
    w: &[usize],
) -> Result<Option<usize>> {
    if bilex_leq(order, m, l) {
        return Err(KlrError::Hypothesis(format!("{l} >= {m}")));
    }
    let n = l.weight().height() as usize;
    if l.weight() != m.weight() || w.len() != n {
        return Err(KlrError::WeightMismatch(format!("{l} vs {m} with permutation of length {}", w.len())));
    }
    if !word_compatible(sys, l, m, w) {
        return Ok(None);
    }
    let mut inv = vec![0; n];
    for (k, &v) in w.iter().enumerate() {
        inv[v] = k;
    }
    let bl = l.block_of_position();
    let bm = m.block_of_position();
    Ok((0..n.saturating_sub(1)).find(|&r| bl[r] == bl[r + 1] && bm[inv[r]] != bm[inv[r + 1]]))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(v: &[i64]) -> Weight {
        Weight(v.to_vec())
    }

    fn a2() -> (RootSystem, ConvexOrder) {
        let s = RootSystem::parse("A2").unwrap();
        let o = ConvexOrder::from_word(&s, &[0, 1, 0]).unwrap();
        (s, o)
    }

    #[test]
    fn a2_partitions_and_order() {
        let (_, o) = a2();
        let kp = kostant_partitions(&o, &w(&[1, 1]));
        assert_eq!(kp.len(), 2);
        let pair = KostantPartition::new(vec![w(&[0, 1]), w(&[1, 0])], &o).unwrap();
        assert_eq!(pair.parts, vec![w(&[1, 0]), w(&[0, 1])]);
        let single = KostantPartition::single(w(&[1, 1]));
        assert!(kp.contains(&pair) && kp.contains(&single));
        assert!(bilex_less(&o, &single, &pair));
        assert!(!bilex_less(&o, &pair, &single));
    }

    #[test]
    fn a1_power() {
        let s = RootSystem::parse("A1").unwrap();
        let o = ConvexOrder::default_for(&s);
        let kp = kostant_partitions(&o, &w(&[2]));
        assert_eq!(kp, vec![KostantPartition::power(w(&[1]), 2)]);
    }

    #[test]
    fn a3_count_for_given_word() {
        let s = RootSystem::parse("A3").unwrap();
        let o = ConvexOrder::from_word(&s, &[0, 1, 2, 0, 1, 0]).unwrap();
        assert_eq!(kostant_partitions(&o, &w(&[1, 1, 1])).len(), 4);
    }

    #[test]
    fn minimal_pairs_small() {
        let (s, o) = a2();
        let mp = minimal_pairs(&s, &o, &w(&[1, 1])).unwrap();
        assert_eq!(mp, vec![MinimalPair { beta: w(&[1, 0]), gamma: w(&[0, 1]), p: 0 }]);
        assert!(minimal_pairs(&s, &o, &w(&[1, 0])).unwrap().is_empty());
        let b2 = RootSystem::parse("B2").unwrap();
        let ob = ConvexOrder::default_for(&b2);
        let mp = minimal_pairs(&b2, &ob, &w(&[1, 1])).unwrap();
        assert_eq!(mp.len(), 1);
        assert_eq!(mp[0].p, b2.string_length(&mp[0].beta, &mp[0].gamma));
    }

    #[test]
    fn witness_for_a2() {
        let (s, o) = a2();
        let l = KostantPartition::single(w(&[1, 1]));
        let m = KostantPartition::new(vec![w(&[1, 0]), w(&[0, 1])], &o).unwrap();
        assert_eq!(lambda_equiv_witness(&s, &o, &l, &m, &[0, 1]).unwrap(), Some(0));
        assert_eq!(lambda_equiv_witness(&s, &o, &l, &m, &[1, 0]).unwrap(), Some(0));
        assert!(lambda_equiv_witness(&s, &o, &m, &l, &[0, 1]).is_err());
    }
}
