//! Formal characters: graded dimensions of weight spaces, one Laurent series per word.

use std::collections::BTreeMap;

use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::graded::GradedModule;
use crate::algebra::Word;
use crate::error::{KlrError, Result};
use crate::linalg::{Field, LaurentSeries};
use crate::roots::RootSystem;

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Character {
    pub series: BTreeMap<Word, LaurentSeries>,
    /// Coefficients at degrees `<= exact_below` are exact for every word.
    pub exact_below: Option<i32>,
}

/// Words print 1-based and comma separated, e.g. `1,2`.
pub fn word_label(w: &[u8]) -> String {
    w.iter().map(|c| (c + 1).to_string()).collect::<Vec<_>>().join(",")
}

pub fn parse_word_label(s: &str) -> Result<Word> {
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|t| match t.trim().parse::<u8>() {
            Ok(v) if v >= 1 => Ok(v - 1),
            _ => Err(KlrError::Parse(format!("bad word label {:?}", s))),
        })
        .collect()
}

impl Serialize for Character {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(self.series.len()))?;
        for (w, ser) in &self.series {
            m.serialize_entry(&word_label(w), ser)?;
        }
        m.end()
    }
}

impl<'de> Deserialize<'de> for Character {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let m = BTreeMap::<String, LaurentSeries>::deserialize(d)?;
        let mut ch = Character::default();
        for (k, v) in m {
            let w = parse_word_label(&k).map_err(serde::de::Error::custom)?;
            if let Some(e) = v.exact_below {
                ch.exact_below = Some(ch.exact_below.map_or(e, |x: i32| x.min(e)));
            }
            ch.series.insert(w, v);
        }
        Ok(ch)
    }
}

/// Canonical form of a series: tight bounds and the given exactness.
fn tight(s: &LaurentSeries, e: Option<i32>) -> LaurentSeries {
    let terms = s.coeffs.iter().map(|(&d, &c)| (d, c));
    match e {
        Some(e) => LaurentSeries::truncated(terms, e),
        None => LaurentSeries::from_terms(terms),
    }
}

fn clamp(a: Option<i32>, b: Option<i32>) -> Option<i32> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

impl Character {
    pub fn zero(exact_below: Option<i32>) -> Self {
        Character { series: BTreeMap::new(), exact_below }
    }

    pub fn of_module<F: Field>(m: &GradedModule<F>) -> Self {
        let mut terms: BTreeMap<Word, Vec<(i32, i64)>> = BTreeMap::new();
        for (k, d) in m.keys().iter().zip(m.dims()) {
            terms.entry(k.word.clone()).or_default().push((k.degree, *d as i64));
        }
        let mut ch = Character::zero(m.top());
        for (w, t) in terms {
            ch.add_series(w, LaurentSeries::from_terms(t));
        }
        ch
    }

    fn add_series(&mut self, w: Word, s: LaurentSeries) {
        let cur = self.series.remove(&w).unwrap_or_else(LaurentSeries::zero);
        let sum = tight(&tight(&cur, None).add(&tight(&s, None)), self.exact_below);
        if !sum.is_zero() {
            self.series.insert(w, sum);
        }
    }

    fn normalized(mut self) -> Self {
        let e = self.exact_below;
        let words: Vec<Word> = self.series.keys().cloned().collect();
        for w in words {
            let s = tight(&self.series.remove(&w).unwrap(), e);
            if !s.is_zero() {
                self.series.insert(w, s);
            }
        }
        self
    }

    pub fn coeff(&self, w: &[u8], d: i32) -> i64 {
        self.series.get(w).map_or(0, |s| s.coeff(d))
    }

    pub fn is_zero(&self) -> bool {
        self.series.is_empty()
    }

    pub fn words(&self) -> Vec<Word> {
        self.series.keys().cloned().collect()
    }

    pub fn lowest(&self) -> Option<i32> {
        self.series.values().filter_map(|s| s.lowest()).min()
    }

    pub fn highest(&self) -> Option<i32> {
        self.series.values().filter_map(|s| s.highest()).max()
    }

    pub fn shift(&self, d: i32) -> Self {
        Character {
            series: self.series.iter().map(|(w, s)| (w.clone(), s.shift(d))).collect(),
            exact_below: self.exact_below.map(|e| e + d),
        }
        .normalized()
    }

    /// Bar involution `q -> q^{-1}`; only defined for exact characters.
    pub fn bar(&self) -> Result<Self> {
        if self.exact_below.is_some() {
            return Err(KlrError::InfiniteDimensional);
        }
        Ok(Character { series: self.series.iter().map(|(w, s)| (w.clone(), s.bar())).collect(), exact_below: None }.normalized())
    }

    pub fn is_bar_invariant(&self) -> bool {
        self.bar().map_or(false, |b| b == *self)
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = Character::zero(clamp(self.exact_below, o.exact_below));
        for (w, s) in self.series.iter().chain(&o.series) {
            r.add_series(w.clone(), s.clone());
        }
        r.normalized()
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&LaurentSeries::monomial(0, -1)))
    }

    /// Multiplication by a Laurent polynomial or truncated series.
    pub fn scale(&self, f: &LaurentSeries) -> Self {
        let mut e = None;
        if let Some(fe) = f.exact_below {
            e = clamp(e, Some(fe + self.lowest().unwrap_or(0)));
        }
        if let Some(se) = self.exact_below {
            e = clamp(e, Some(se + f.lowest().unwrap_or(0)));
        }
        let mut r = Character::zero(e);
        for (w, s) in &self.series {
            let mut p = s.mul(f);
            p.exact_below = None;
            r.add_series(w.clone(), p);
        }
        r.normalized()
    }

    /// Forgets degrees above `d`.
    pub fn truncate_above(&self, d: i32) -> Self {
        Character { series: self.series.clone(), exact_below: clamp(self.exact_below, Some(d)) }.normalized()
    }

    /// Equality on the common exact window.
    pub fn agrees_with(&self, o: &Self) -> bool {
        let e = clamp(self.exact_below, o.exact_below);
        let cut = |c: &Self| -> BTreeMap<Word, BTreeMap<i32, i64>> {
            let c = match e {
                Some(e) => c.truncate_above(e),
                None => c.clone(),
            };
            c.series.into_iter().map(|(w, s)| (w, s.coeffs)).filter(|(_, m)| !m.is_empty()).collect()
        };
        cut(self) == cut(o)
    }

    /// Graded dimension: the sum over all words.
    pub fn graded_dim(&self) -> LaurentSeries {
        let mut s = LaurentSeries::zero();
        for v in self.series.values() {
            let mut v = v.clone();
            v.exact_below = None;
            s = s.add(&v);
        }
        match self.exact_below {
            Some(e) => s.truncate_above(e),
            None => s,
        }
    }

    /// Restriction to words that are concatenations of words of the given lengths and
    /// weights; the result is keyed by the full word.
    pub fn restrict_to_blocks(&self, sys: &RootSystem, blocks: &[crate::roots::Weight]) -> Self {
        let mut r = Character::zero(self.exact_below);
        for (w, s) in &self.series {
            if word_in_blocks(sys, w, blocks) {
                r.series.insert(w.clone(), s.clone());
            }
        }
        r
    }

    /// Quantum shuffle product: each crossing of a letter `b` from the right factor past a
    /// letter `a` of the left factor contributes `q^{-a.b}`.
    pub fn shuffle(&self, o: &Self, sys: &RootSystem) -> Self {
        let low_a = self.lowest().unwrap_or(0);
        let low_b = o.lowest().unwrap_or(0);
        let min_cross = min_shuffle_cross(sys, self, o);
        let mut e = None;
        let mut r_terms: BTreeMap<Word, Vec<(i32, i64)>> = BTreeMap::new();
        for (u, su) in &self.series {
            for (v, sv) in &o.series {
                for (w, cross) in shuffles(sys, u, v) {
                    let entry = r_terms.entry(w).or_default();
                    for (&d1, &c1) in &su.coeffs {
                        for (&d2, &c2) in &sv.coeffs {
                            entry.push((d1 + d2 + cross, c1 * c2));
                        }
                    }
                }
            }
        }
        if let Some(ea) = self.exact_below {
            e = clamp(e, Some(ea + low_b + min_cross));
        }
        if let Some(eb) = o.exact_below {
            e = clamp(e, Some(eb + low_a + min_cross));
        }
        let mut r = Character::zero(e);
        for (w, t) in r_terms {
            r.add_series(w, LaurentSeries::from_terms(t));
        }
        r.normalized()
    }
}

/// Lower bound for the crossing degree of any shuffle of the two weights: every pair of
/// letters crosses at most once.
fn min_shuffle_cross(sys: &RootSystem, a: &Character, b: &Character) -> i32 {
    let (Some(u), Some(v)) = (a.series.keys().next(), b.series.keys().next()) else {
        return 0;
    };
    let mut m = 0;
    for &x in u {
        for &y in v {
            m += (-sys.datum.dot(x as usize, y as usize)).min(0);
        }
    }
    m as i32
}

/// All shuffles of `u` and `v` with their crossing degrees.
pub fn shuffles(sys: &RootSystem, u: &[u8], v: &[u8]) -> Vec<(Word, i32)> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(u.len() + v.len());
    rec(sys, u, v, 0, 0, 0, &mut cur, &mut out);
    out
}

#[allow(clippy::too_many_arguments)]
fn rec(sys: &RootSystem, u: &[u8], v: &[u8], a: usize, b: usize, deg: i32, cur: &mut Word, out: &mut Vec<(Word, i32)>) {
    if a == u.len() && b == v.len() {
        out.push((cur.clone(), deg));
        return;
    }
    if a < u.len() {
        cur.push(u[a]);
        rec(sys, u, v, a + 1, b, deg, cur, out);
        cur.pop();
    }
    if b < v.len() {
        // v[b] crosses the remaining letters u[a..]
        let cross: i64 = u[a..].iter().map(|&x| -sys.datum.dot(x as usize, v[b] as usize)).sum();
        cur.push(v[b]);
        rec(sys, u, v, a, b + 1, deg + cross as i32, cur, out);
        cur.pop();
    }
}

fn word_in_blocks(sys: &RootSystem, w: &[u8], blocks: &[crate::roots::Weight]) -> bool {
    let mut pos = 0;
    for b in blocks {
        let len = b.height() as usize;
        if pos + len > w.len() {
            return false;
        }
        let part: Vec<usize> = w[pos..pos + len].iter().map(|&c| c as usize).collect();
        if crate::roots::Weight::of_word(sys.rank(), &part) != *b {
            return false;
        }
        pos += len;
    }
    pos == w.len()
}
