//! Normal-form monomials `tau_w x^a 1_i` and integer linear combinations of them.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use super::perm::Perm;

pub type Word = Vec<u8>;

/// The basis element `tau_w x^a 1_i`; `i` is the idempotent on the right.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mono {
    pub w: Perm,
    pub a: Vec<u16>,
    pub i: Word,
}

impl Mono {
    pub fn idempotent(i: Word) -> Self {
        let n = i.len();
        Mono { w: Perm::identity(n), a: vec![0; n], i }
    }

    pub fn poly(a: Vec<u16>, i: Word) -> Self {
        Mono { w: Perm::identity(i.len()), a, i }
    }

    /// The word `w.i` on the left.
    pub fn left_word(&self) -> Word {
        self.w.act(&self.i)
    }

    pub fn n(&self) -> usize {
        self.i.len()
    }
}

impl fmt::Debug for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        for r in self.w.canonical_word() {
            s += &format!("t{}", r + 1);
        }
        for (k, &e) in self.a.iter().enumerate() {
            match e {
                0 => {}
                1 => s += &format!("x{}", k + 1),
                _ => s += &format!("x{}^{}", k + 1, e),
            }
        }
        let word: Vec<String> = self.i.iter().map(|c| (c + 1).to_string()).collect();
        write!(f, "{s}1_({})", word.join(","))
    }
}

pub(crate) type Terms = Vec<(Mono, i64)>;

pub(crate) fn checked(v: Option<i64>) -> i64 {
    v.expect("structure constant overflowed i64")
}

/// Accumulates `c * terms` into `acc`.
pub(crate) fn add_into(acc: &mut HashMap<Mono, i64>, terms: &[(Mono, i64)], c: i64) {
    if c == 0 {
        return;
    }
    for (m, v) in terms {
        let e = acc.entry(m.clone()).or_insert(0);
        *e = checked(e.checked_add(checked(v.checked_mul(c))));
    }
}

pub(crate) fn finish(acc: HashMap<Mono, i64>) -> Terms {
    let mut v: Terms = acc.into_iter().filter(|(_, c)| *c != 0).collect();
    v.sort_by(|a, b| a.0.cmp(&b.0));
    v
}

/// A finite integer combination of normal-form monomials.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct KlrElement {
    terms: BTreeMap<Mono, i64>,
}

impl fmt::Debug for KlrElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(m, c)| format!("{c}*{m:?}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl KlrElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_mono(m: Mono) -> Self {
        Self::from_terms([(m, 1)])
    }

    pub fn from_terms(t: impl IntoIterator<Item = (Mono, i64)>) -> Self {
        let mut e = Self::zero();
        for (m, c) in t {
            e.add_term(m, c);
        }
        e
    }

    pub fn add_term(&mut self, m: Mono, c: i64) {
        if c == 0 {
            return;
        }
        let v = checked(self.terms.get(&m).copied().unwrap_or(0).checked_add(c));
        if v == 0 {
            self.terms.remove(&m);
        } else {
            self.terms.insert(m, v);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, i64)> {
        self.terms.iter().map(|(m, &c)| (m, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Mono) -> i64 {
        self.terms.get(m).copied().unwrap_or(0)
    }

    pub fn add(&self, o: &KlrElement) -> KlrElement {
        let mut e = self.clone();
        for (m, c) in o.terms() {
            e.add_term(m.clone(), c);
        }
        e
    }

    pub fn sub(&self, o: &KlrElement) -> KlrElement {
        self.add(&o.scale(-1))
    }

    pub fn scale(&self, k: i64) -> KlrElement {
        Self::from_terms(self.terms().map(|(m, c)| (m.clone(), checked(c.checked_mul(k)))))
    }

    /// Keeps the terms for which `keep` holds.
    pub fn filter(&self, keep: impl Fn(&Mono) -> bool) -> KlrElement {
        Self::from_terms(self.terms().filter(|(m, _)| keep(m)).map(|(m, c)| (m.clone(), c)))
    }

    /// Whether every coefficient is divisible by `p`.
    pub fn vanishes_mod(&self, p: i64) -> bool {
        self.terms().all(|(_, c)| c % p == 0)
    }
}

/// JSON form of a single term.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct TermJson {
    /// Idempotent word on the right, 1-based colors.
    pub word: Vec<usize>,
    /// Canonical reduced word of `w`, 1-based letters.
    pub reduced_word: Vec<usize>,
    pub exponents: Vec<u16>,
    pub coeff: String,
}

impl KlrElement {
    pub fn to_json(&self) -> Vec<TermJson> {
        self.terms()
            .map(|(m, c)| TermJson {
                word: m.i.iter().map(|&x| x as usize + 1).collect(),
                reduced_word: m.w.canonical_word().iter().map(|&x| x as usize + 1).collect(),
                exponents: m.a.clone(),
                coeff: c.to_string(),
            })
            .collect()
    }
}
