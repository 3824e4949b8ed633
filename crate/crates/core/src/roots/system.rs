//! Root lattice elements and the positive roots of a finite-type datum.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use super::cartan::{CartanDatum, CartanType};
use crate::error::{KlrError, Result};

/// Element of the root lattice in the basis of simple roots.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    pub fn zero(rank: usize) -> Self {
        Weight(vec![0; rank])
    }

    pub fn simple(rank: usize, i: usize) -> Self {
        let mut v = vec![0; rank];
        v[i] = 1;
        Weight(v)
    }

    pub fn height(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }

    pub fn add(&self, o: &Weight) -> Weight {
        Weight(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, o: &Weight) -> Weight {
        Weight(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, k: i64) -> Weight {
        Weight(self.0.iter().map(|a| a * k).collect())
    }

    /// Weight of a word of simple-root indices.
    pub fn of_word(rank: usize, word: &[usize]) -> Weight {
        let mut v = vec![0; rank];
        for &i in word {
            v[i] += 1;
        }
        Weight(v)
    }

    /// Parses `1,2,0` or `(1,2)` style coefficient vectors.
    pub fn parse(s: &str, rank: usize) -> Result<Weight> {
        let t = s.trim().trim_start_matches(['(', '[']).trim_end_matches([')', ']']);
        let v = t
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|x| !x.is_empty())
            .map(|x| x.parse::<i64>().map_err(|_| KlrError::Parse(format!("bad weight {s:?}"))))
            .collect::<Result<Vec<_>>>()?;
        if v.len() != rank {
            return Err(KlrError::Parse(format!("weight {s:?} needs {rank} coefficients")));
        }
        Ok(Weight(v))
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// A Cartan datum together with its positive roots.
#[derive(Clone, Debug)]
pub struct RootSystem {
    pub datum: CartanDatum,
    roots: Vec<Weight>,
    index: HashMap<Weight, usize>,
}

impl RootSystem {
    pub fn new(datum: CartanDatum) -> Self {
        let roots = positive_roots(&datum);
        let index = roots.iter().cloned().enumerate().map(|(k, r)| (r, k)).collect();
        RootSystem { datum, roots, index }
    }

    pub fn of_type(t: CartanType) -> Self {
        Self::new(CartanDatum::of_type(t))
    }

    pub fn parse(s: &str) -> Result<Self> {
        Ok(Self::of_type(s.parse()?))
    }

    pub fn rank(&self) -> usize {
        self.datum.rank()
    }

    /// Positive roots sorted by height, then coefficient vector.
    pub fn positive_roots(&self) -> &[Weight] {
        &self.roots
    }

    pub fn is_root(&self, w: &Weight) -> bool {
        self.index.contains_key(w)
    }

    /// Positive or negative root.
    pub fn is_signed_root(&self, w: &Weight) -> bool {
        self.is_root(w) || self.is_root(&w.scale(-1))
    }

    pub fn root_index(&self, w: &Weight) -> Option<usize> {
        self.index.get(w).copied()
    }

    pub fn simple(&self, i: usize) -> Weight {
        Weight::simple(self.rank(), i)
    }

    /// Symmetric pairing `a . b`.
    pub fn dot(&self, a: &Weight, b: &Weight) -> i64 {
        let n = self.rank();
        let mut s = 0;
        for i in 0..n {
            if a.0[i] == 0 {
                continue;
            }
            for j in 0..n {
                s += a.0[i] * b.0[j] * self.datum.dot(i, j);
            }
        }
        s
    }

    /// `d_b = (b . b) / 2`.
    pub fn d_of(&self, b: &Weight) -> i64 {
        self.dot(b, b) / 2
    }

    /// Simple reflection `s_i`.
    pub fn reflect(&self, i: usize, b: &Weight) -> Weight {
        let pair: i64 = (0..self.rank()).map(|j| b.0[j] * self.datum.dot(j, i)).sum::<i64>() / self.datum.d(i);
        let mut v = b.0.clone();
        v[i] -= pair;
        Weight(v)
    }

    /// `s_{w_1} ... s_{w_k}(b)`.
    pub fn act(&self, word: &[usize], b: &Weight) -> Weight {
        word.iter().rev().fold(b.clone(), |acc, &i| self.reflect(i, &acc))
    }

    /// Largest `p >= 0` with `beta - p gamma` a root, positive or negative.
    pub fn string_length(&self, beta: &Weight, gamma: &Weight) -> i64 {
        let mut p = 0;
        while self.is_signed_root(&beta.sub(&gamma.scale(p + 1))) {
            p += 1;
        }
        p
    }

    /// All words in `I^alpha`, lexicographically ordered.
    pub fn words(&self, alpha: &Weight) -> Vec<Vec<usize>> {
        fn go(rem: &mut Vec<i64>, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if rem.iter().all(|&c| c == 0) {
                out.push(cur.clone());
                return;
            }
            for i in 0..rem.len() {
                if rem[i] > 0 {
                    rem[i] -= 1;
                    cur.push(i);
                    go(rem, cur, out);
                    cur.pop();
                    rem[i] += 1;
                }
            }
        }
        let mut out = Vec::new();
        if alpha.is_nonnegative() {
            go(&mut alpha.0.clone(), &mut Vec::new(), &mut out);
        }
        out
    }

    /// `|R^+|`, the length of the longest Weyl group element.
    pub fn longest_length(&self) -> usize {
        self.roots.len()
    }
}

/// Positive roots by closure of the simple roots under simple reflections.
pub fn positive_roots(datum: &CartanDatum) -> Vec<Weight> {
    let n = datum.rank();
    let sys = RootSystem { datum: datum.clone(), roots: Vec::new(), index: HashMap::new() };
    let mut seen: BTreeSet<Weight> = (0..n).map(|i| Weight::simple(n, i)).collect();
    let mut queue: VecDeque<Weight> = seen.iter().cloned().collect();
    while let Some(b) = queue.pop_front() {
        for i in 0..n {
            let r = sys.reflect(i, &b);
            if r.is_nonnegative() && !r.is_zero() && !seen.contains(&r) {
                seen.insert(r.clone());
                queue.push_back(r);
            }
        }
    }
    let mut v: Vec<Weight> = seen.into_iter().collect();
    v.sort_by(|a, b| a.height().cmp(&b.height()).then_with(|| b.cmp(a)));
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn root_counts() {
        for (t, n) in [("A1", 1), ("A2", 3), ("A3", 6), ("B2", 4), ("B3", 9), ("C3", 9), ("D4", 12), ("G2", 6), ("F4", 24), ("E6", 36), ("E7", 63), ("E8", 120)] {
            assert_eq!(RootSystem::parse(t).unwrap().positive_roots().len(), n, "{t}");
        }
    }

    #[test]
    fn b2_roots_and_lengths() {
        let s = RootSystem::parse("B2").unwrap();
        let r: Vec<Vec<i64>> = s.positive_roots().iter().map(|w| w.0.clone()).collect();
        assert_eq!(r, vec![vec![1, 0], vec![0, 1], vec![1, 1], vec![1, 2]]);
        let d: Vec<i64> = s.positive_roots().iter().map(|w| s.d_of(w)).collect();
        assert_eq!(d, vec![2, 1, 1, 2]);
    }

    #[test]
    fn g2_highest_root() {
        let s = RootSystem::parse("G2").unwrap();
        assert!(s.is_root(&Weight(vec![3, 2])));
        assert!(s.is_root(&Weight(vec![3, 1])));
        assert!(!s.is_root(&Weight(vec![2, 2])));
        assert_eq!(s.string_length(&Weight(vec![3, 1]), &Weight(vec![1, 0])), 3);
    }

    #[test]
    fn words_of_weight() {
        let s = RootSystem::parse("A2").unwrap();
        assert_eq!(s.words(&Weight(vec![1, 1])), vec![vec![0, 1], vec![1, 0]]);
        assert_eq!(s.words(&Weight(vec![2, 1])).len(), 3);
    }
}
