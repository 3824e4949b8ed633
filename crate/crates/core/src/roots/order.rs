//! Convex orders on positive roots from reduced words of the longest element.

use std::cmp::Ordering;
use std::collections::HashMap;

use super::system::{RootSystem, Weight};
use crate::error::{KlrError, Result};

/// A total order on the positive roots, stored from largest to smallest.
#[derive(Clone, Debug)]
pub struct ConvexOrder {
    roots: Vec<Weight>,
    pos: HashMap<Weight, usize>,
    word: Option<Vec<usize>>,
}

impl ConvexOrder {
    /// Order `b_1 > b_2 > ... ` with `b_k = s_{i_1} ... s_{i_{k-1}}(a_{i_k})`.
    pub fn from_word(sys: &RootSystem, word: &[usize]) -> Result<Self> {
        if word.iter().any(|&i| i >= sys.rank()) {
            return Err(KlrError::Invalid(format!("letter out of range in {word:?}")));
        }
        let mut roots = Vec::with_capacity(word.len());
        for k in 0..word.len() {
            let b = sys.act(&word[..k], &sys.simple(word[k]));
            if !b.is_nonnegative() {
                return Err(KlrError::NotReduced(word.iter().map(|i| i + 1).collect()));
            }
            roots.push(b);
        }
        if roots.len() != sys.longest_length() {
            return Err(KlrError::Invalid(format!(
                "word has length {}, the longest element has length {}",
                word.len(),
                sys.longest_length()
            )));
        }
        let order = Self::from_sequence_unchecked(roots, Some(word.to_vec()));
        order.validate(sys)?;
        Ok(order)
    }

    /// Order from the lexicographically smallest reduced word of the longest element.
    pub fn default_for(sys: &RootSystem) -> Self {
        Self::from_word(sys, &lex_min_longest_word(sys)).expect("lex-min word is reduced")
    }

    /// Order given directly as a sequence of roots from largest to smallest.
    pub fn from_sequence(sys: &RootSystem, roots: Vec<Weight>) -> Result<Self> {
        let mut sorted = roots.clone();
        sorted.sort();
        let mut all = sys.positive_roots().to_vec();
        all.sort();
        if sorted != all {
            return Err(KlrError::Invalid("sequence is not a permutation of the positive roots".into()));
        }
        let o = Self::from_sequence_unchecked(roots, None);
        o.validate(sys)?;
        Ok(o)
    }

    fn from_sequence_unchecked(roots: Vec<Weight>, word: Option<Vec<usize>>) -> Self {
        let pos = roots.iter().cloned().enumerate().map(|(k, r)| (r, k)).collect();
        ConvexOrder { roots, pos, word }
    }

    /// Brute-force convexity check over all pairs.
    pub fn validate(&self, sys: &RootSystem) -> Result<()> {
        for g in &self.roots {
            for b in &self.roots {
                let s = g.add(b);
                if self.less_eq(g, b) && sys.is_root(&s) && !(self.less_eq(g, &s) && self.less_eq(&s, b)) {
                    return Err(KlrError::NotConvex(format!("{g} <= {b} but {s} is not between them")));
                }
            }
        }
        Ok(())
    }

    /// Roots from largest to smallest.
    pub fn roots(&self) -> &[Weight] {
        &self.roots
    }

    pub fn word(&self) -> Option<&[usize]> {
        self.word.as_deref()
    }

    /// Position from the top: 0 is the largest root.
    pub fn position(&self, r: &Weight) -> Option<usize> {
        self.pos.get(r).copied()
    }

    pub fn cmp_roots(&self, a: &Weight, b: &Weight) -> Ordering {
        self.pos[b].cmp(&self.pos[a])
    }

    pub fn less(&self, a: &Weight, b: &Weight) -> bool {
        self.cmp_roots(a, b) == Ordering::Less
    }

    pub fn less_eq(&self, a: &Weight, b: &Weight) -> bool {
        self.cmp_roots(a, b) != Ordering::Greater
    }
}

/// Greedy lexicographically minimal reduced word of `w_0`.
pub fn lex_min_longest_word(sys: &RootSystem) -> Vec<usize> {
    let mut word = Vec::new();
    while word.len() < sys.longest_length() {
        let i = (0..sys.rank())
            .find(|&i| sys.act(&word, &sys.simple(i)).is_nonnegative())
            .expect("a non-longest element has an ascent");
        word.push(i);
    }
    word
}

/// All reduced words of `w_0`, up to `limit` of them, in lexicographic order.
pub fn longest_words(sys: &RootSystem, limit: usize) -> Vec<Vec<usize>> {
    fn go(sys: &RootSystem, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>, limit: usize) {
        if out.len() >= limit {
            return;
        }
        if cur.len() == sys.longest_length() {
            out.push(cur.clone());
            return;
        }
        for i in 0..sys.rank() {
            if sys.act(cur, &sys.simple(i)).is_nonnegative() {
                cur.push(i);
                go(sys, cur, out, limit);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(sys, &mut Vec::new(), &mut out, limit);
    out
}
