//! Permutations in one-line notation and their canonical reduced words.
//!
//! `w[k]` is the image of `k` (0-based). The simple transposition `s_r` swaps `r` and `r+1`,
//! and a word `r_1 ... r_k` denotes `s_{r_1} ... s_{r_k}`.

use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(pub Vec<u8>);

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm((0..n as u8).collect())
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(k, &v)| k == v as usize)
    }

    pub fn from_word(n: usize, word: &[u8]) -> Self {
        let mut p = Self::identity(n);
        for &r in word.iter().rev() {
            p = p.left_mul(r);
        }
        p
    }

    pub fn image(&self, k: usize) -> usize {
        self.0[k] as usize
    }

    /// `self o o`.
    pub fn compose(&self, o: &Perm) -> Perm {
        Perm(o.0.iter().map(|&k| self.0[k as usize]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut v = vec![0u8; self.n()];
        for (k, &x) in self.0.iter().enumerate() {
            v[x as usize] = k as u8;
        }
        Perm(v)
    }

    /// `s_r o self`: swaps the values `r` and `r+1`.
    pub fn left_mul(&self, r: u8) -> Perm {
        Perm(
            self.0
                .iter()
                .map(|&v| if v == r { r + 1 } else if v == r + 1 { r } else { v })
                .collect(),
        )
    }

    /// `self o s_r`: swaps the positions `r` and `r+1`.
    pub fn right_mul(&self, r: u8) -> Perm {
        let mut v = self.0.clone();
        v.swap(r as usize, r as usize + 1);
        Perm(v)
    }

    pub fn length(&self) -> usize {
        let n = self.n();
        let mut l = 0;
        for a in 0..n {
            for b in a + 1..n {
                if self.0[a] > self.0[b] {
                    l += 1;
                }
            }
        }
        l
    }

    /// `l(s_r w) < l(w)`.
    pub fn is_left_descent(&self, r: u8) -> bool {
        let pa = self.0.iter().position(|&v| v == r).unwrap();
        let pb = self.0.iter().position(|&v| v == r + 1).unwrap();
        pa > pb
    }

    /// `l(w s_r) < l(w)`.
    pub fn is_right_descent(&self, r: u8) -> bool {
        self.0[r as usize] > self.0[r as usize + 1]
    }

    pub fn min_left_descent(&self) -> Option<u8> {
        (0..self.n().saturating_sub(1) as u8).find(|&r| self.is_left_descent(r))
    }

    /// Lexicographically smallest reduced word.
    pub fn canonical_word(&self) -> Vec<u8> {
        let mut w = self.clone();
        let mut out = Vec::with_capacity(self.length());
        while let Some(r) = w.min_left_descent() {
            out.push(r);
            w = w.left_mul(r);
        }
        out
    }

    /// Pairs `a < b` with `w(a) > w(b)`.
    pub fn inversions(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.n();
        (0..n).flat_map(move |a| (a + 1..n).filter(move |&b| self.0[a] > self.0[b]).map(move |b| (a, b)))
    }

    /// Place action on words: `(w.i)_{w(k)} = i_k`.
    pub fn act<T: Copy + Default>(&self, word: &[T]) -> Vec<T> {
        let mut out = vec![T::default(); word.len()];
        for (k, &x) in word.iter().enumerate() {
            out[self.0[k] as usize] = x;
        }
        out
    }

    /// All permutations of `0..n` in lexicographic order.
    pub fn all(n: usize) -> Vec<Perm> {
        let mut out = Vec::new();
        let mut cur: Vec<u8> = (0..n as u8).collect();
        loop {
            out.push(Perm(cur.clone()));
            // next lexicographic permutation
            let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
                break;
            };
            let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).unwrap();
            cur.swap(i, j);
            cur[i + 1..].reverse();
        }
        out
    }

    /// Block-diagonal product `u x v` acting on `0..n` then `n..n+m`.
    pub fn concat(&self, o: &Perm) -> Perm {
        let n = self.n() as u8;
        Perm(self.0.iter().copied().chain(o.0.iter().map(|&x| x + n)).collect())
    }

    /// Whether `w` is increasing on each block of the composition `sizes`, i.e. a
    /// minimal-length representative of `w S_sizes`.
    pub fn is_min_coset_rep(&self, sizes: &[usize]) -> bool {
        let mut start = 0;
        for &s in sizes {
            if (start..start + s.saturating_sub(1)).any(|k| self.0[k] > self.0[k + 1]) {
                return false;
            }
            start += s;
        }
        true
    }

    /// Minimal-length representatives of `S_n / (S_{sizes[0]} x ...)`.
    pub fn min_coset_reps(sizes: &[usize]) -> Vec<Perm> {
        let n: usize = sizes.iter().sum();
        Perm::all(n).into_iter().filter(|w| w.is_min_coset_rep(sizes)).collect()
    }

    /// Factorization `w = u (v_1 x ... x v_m)` with `u` a minimal coset representative.
    pub fn parabolic_split(&self, sizes: &[usize]) -> (Perm, Vec<Perm>) {
        let mut u = vec![0u8; self.n()];
        let mut parts = Vec::new();
        let mut start = 0;
        for &s in sizes {
            let mut vals: Vec<u8> = self.0[start..start + s].to_vec();
            vals.sort_unstable();
            for (k, &v) in vals.iter().enumerate() {
                u[start + k] = v;
            }
            // v_b sends local position k to the rank of w(start+k) inside the block
            let v: Vec<u8> =
                self.0[start..start + s].iter().map(|x| vals.iter().position(|y| y == x).unwrap() as u8).collect();
            parts.push(Perm(v));
            start += s;
        }
        (Perm(u), parts)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn words_round_trip() {
        for w in Perm::all(5) {
            let word = w.canonical_word();
            assert_eq!(word.len(), w.length());
            assert_eq!(Perm::from_word(5, &word), w);
        }
    }

    #[test]
    fn canonical_word_is_lex_min() {
        // brute force over all reduced words of S_4
        fn reduced_words(w: &Perm) -> Vec<Vec<u8>> {
            if w.is_identity() {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for r in 0..w.n() as u8 - 1 {
                if w.is_left_descent(r) {
                    for rest in reduced_words(&w.left_mul(r)) {
                        out.push([vec![r], rest].concat());
                    }
                }
            }
            out
        }
        for w in Perm::all(4) {
            let min = reduced_words(&w).into_iter().min().unwrap();
            assert_eq!(w.canonical_word(), min);
        }
    }

    #[test]
    fn place_action_is_an_action() {
        let word = [0u8, 1, 1, 2];
        for a in Perm::all(4) {
            for b in Perm::all(4) {
                assert_eq!(a.compose(&b).act(&word), a.act(&b.act(&word)));
            }
        }
        assert_eq!(Perm::from_word(2, &[0]).act(&[1u8, 2]), vec![2, 1]);
    }

    #[test]
    fn parabolic_factorization() {
        let sizes = [2, 1, 2];
        assert_eq!(Perm::min_coset_reps(&sizes).len(), 30);
        for w in Perm::all(5) {
            let (u, parts) = w.parabolic_split(&sizes);
            assert!(u.is_min_coset_rep(&sizes));
            let v = parts.iter().skip(1).fold(parts[0].clone(), |acc, p| acc.concat(p));
            assert_eq!(u.compose(&v), w);
            assert_eq!(u.length() + v.length(), w.length());
        }
    }
}
