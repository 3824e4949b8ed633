//! The faithful polynomial representation on `sum_i Z[x_1..x_n] 1_i`.
//!
//! `tau_r` acts on `f 1_i` by the divided difference `(s_r f - f)/(x_r - x_{r+1})` when
//! `i_r = i_{r+1}`, and by `g(x_r, x_{r+1}) s_r(f) 1_{s_r i}` otherwise, where `g = 1` if
//! `i_r < i_{r+1}` or the colors are orthogonal and `g = x_r^{-c_{ji}} - x_{r+1}^{-c_{ij}}`
//! for `(i_r, i_{r+1}) = (i, j)` with `i > j`. This is independent of the rewriting engine
//! and serves as a check on it.

use std::collections::BTreeMap;

use super::element::{KlrElement, Mono, Word};
use crate::roots::CartanDatum;

/// Multivariate integer polynomial.
pub type Poly = BTreeMap<Vec<u16>, i64>;

/// A vector `sum_i f_i 1_i`.
pub type PolyVec = BTreeMap<Word, Poly>;

fn add_term(p: &mut Poly, e: Vec<u16>, c: i64) {
    if c == 0 {
        return;
    }
    let v = p.entry(e.clone()).or_insert(0);
    *v += c;
    if *v == 0 {
        p.remove(&e);
    }
}

fn swap_vars(p: &Poly, r: usize) -> Poly {
    p.iter()
        .map(|(e, &c)| {
            let mut e = e.clone();
            e.swap(r, r + 1);
            (e, c)
        })
        .collect()
}

fn mul(p: &Poly, q: &Poly) -> Poly {
    let mut out = Poly::new();
    for (e1, c1) in p {
        for (e2, c2) in q {
            let e: Vec<u16> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
            add_term(&mut out, e, c1 * c2);
        }
    }
    out
}

/// `(s_r f - f) / (x_r - x_{r+1})`.
fn divided_difference(p: &Poly, r: usize) -> Poly {
    let mut out = Poly::new();
    for (e, &c) in p {
        let (a, b) = (e[r], e[r + 1]);
        // x_r^a x_{r+1}^b
        if a > b {
            for k in 0..a - b {
                let mut f = e.clone();
                f[r] = b + k;
                f[r + 1] = a - 1 - k;
                add_term(&mut out, f, -c);
            }
        } else if b > a {
            for k in 0..b - a {
                let mut f = e.clone();
                f[r] = a + k;
                f[r + 1] = b - 1 - k;
                add_term(&mut out, f, c);
            }
        }
    }
    out
}

pub struct PolyRep<'a> {
    datum: &'a CartanDatum,
    n: usize,
}

impl<'a> PolyRep<'a> {
    pub fn new(datum: &'a CartanDatum, n: usize) -> Self {
        PolyRep { datum, n }
    }

    fn monomial(&self, e: Vec<u16>) -> Poly {
        Poly::from([(e, 1)])
    }

    fn power(&self, r: usize, k: u16) -> Vec<u16> {
        let mut e = vec![0; self.n];
        e[r] = k;
        e
    }

    pub fn x(&self, t: usize, v: &PolyVec) -> PolyVec {
        v.iter().map(|(w, f)| (w.clone(), mul(f, &self.monomial(self.power(t, 1))))).collect()
    }

    pub fn tau(&self, r: usize, v: &PolyVec) -> PolyVec {
        let mut out = PolyVec::new();
        for (w, f) in v {
            let (i, j) = (w[r], w[r + 1]);
            if i == j {
                let d = divided_difference(f, r);
                if !d.is_empty() {
                    out.insert(w.clone(), d);
                }
                continue;
            }
            let mut sw = w.clone();
            sw.swap(r, r + 1);
            let s = swap_vars(f, r);
            let (iu, ju) = (i as usize, j as usize);
            let g = if i < j || self.datum.c(iu, ju) == 0 {
                self.monomial(vec![0; self.n])
            } else {
                let mut g = Poly::new();
                add_term(&mut g, self.power(r, (-self.datum.c(ju, iu)) as u16), 1);
                add_term(&mut g, self.power(r + 1, (-self.datum.c(iu, ju)) as u16), -1);
                g
            };
            let res = mul(&g, &s);
            let slot = out.entry(sw).or_default();
            for (e, c) in res {
                add_term(slot, e, c);
            }
        }
        out.retain(|_, f| !f.is_empty());
        out
    }

    pub fn idem(&self, i: &[u8], v: &PolyVec) -> PolyVec {
        v.iter().filter(|(w, _)| w.as_slice() == i).map(|(w, f)| (w.clone(), f.clone())).collect()
    }

    pub fn mono(&self, m: &Mono, v: &PolyVec) -> PolyVec {
        let mut cur = self.idem(&m.i, v);
        for (t, &e) in m.a.iter().enumerate() {
            for _ in 0..e {
                cur = self.x(t, &cur);
            }
        }
        for &r in m.w.canonical_word().iter().rev() {
            cur = self.tau(r as usize, &cur);
        }
        cur
    }

    pub fn element(&self, e: &KlrElement, v: &PolyVec) -> PolyVec {
        let mut out = PolyVec::new();
        for (m, c) in e.terms() {
            for (w, f) in self.mono(m, v) {
                let slot = out.entry(w).or_default();
                for (ex, cc) in f {
                    add_term(slot, ex, cc * c);
                }
            }
        }
        out.retain(|_, f| !f.is_empty());
        out
    }

    /// Test vectors: every monomial of total degree `<= deg` in every word.
    pub fn probes(&self, words: &[Word], deg: u16) -> Vec<PolyVec> {
        let mut exps: Vec<Vec<u16>> = vec![vec![]];
        for _ in 0..self.n {
            exps = exps
                .into_iter()
                .flat_map(|e| {
                    let used: u16 = e.iter().sum();
                    (0..=deg - used).map(move |k| [e.clone(), vec![k]].concat())
                })
                .collect();
        }
        let mut out = Vec::new();
        for w in words {
            for e in &exps {
                out.push(PolyVec::from([(w.clone(), self.monomial(e.clone()))]));
            }
        }
        out
    }
}
