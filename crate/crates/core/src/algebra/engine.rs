//! Multiplication in `H_alpha` by rewriting with the defining relations.
//!
//! Everything is computed as left multiplication of a generator on a normal-form monomial
//! and memoized. Braid rewriting follows the constructive proof of Matsumoto's theorem:
//! a left descent is moved to the front of a reduced word by commutations and braid moves,
//! each braid move contributing a correction of strictly smaller length.

use std::cell::RefCell;
use std::collections::HashMap;
use std::rc::Rc;

use super::element::{add_into, finish, KlrElement, Mono, Terms, Word};
use super::perm::Perm;
use crate::error::{KlrError, Result};
use crate::roots::{CartanDatum, RootSystem, Weight};

/// A polynomial in the `x_r`: list of (list of (position, power), coefficient).
pub type Poly = Vec<(Vec<(usize, u16)>, i64)>;

#[derive(Clone, Copy, Debug)]
enum Move {
    /// Swap commuting letters at positions `k, k+1`.
    Commute(usize),
    /// Replace the triple at `k`.
    Braid(usize),
}

pub struct KlrAlgebra {
    sys: RootSystem,
    alpha: Weight,
    n: usize,
    words: Vec<Word>,
    max_deg: Option<i32>,
    memo_x: RefCell<HashMap<(u8, Mono), Rc<Terms>>>,
    memo_t: RefCell<HashMap<(u8, Mono), Rc<Terms>>>,
    memo_w: RefCell<HashMap<(Word, Vec<u16>, Word), Rc<Terms>>>,
}

impl KlrAlgebra {
    pub fn new(sys: &RootSystem, alpha: &Weight) -> Result<Self> {
        if alpha.0.len() != sys.rank() || !alpha.is_nonnegative() {
            return Err(KlrError::Invalid(format!("{alpha} is not in the positive cone")));
        }
        let n = alpha.height() as usize;
        if n > 250 {
            return Err(KlrError::Invalid("height too large".into()));
        }
        let words = sys.words(alpha).into_iter().map(|w| w.into_iter().map(|c| c as u8).collect()).collect();
        Ok(KlrAlgebra {
            sys: sys.clone(),
            alpha: alpha.clone(),
            n,
            words,
            max_deg: None,
            memo_x: RefCell::default(),
            memo_t: RefCell::default(),
            memo_w: RefCell::default(),
        })
    }

    /// Sets the largest degree accepted by basis enumeration.
    pub fn with_window(mut self, max_deg: i32) -> Self {
        self.max_deg = Some(max_deg);
        self
    }

    pub fn system(&self) -> &RootSystem {
        &self.sys
    }

    pub fn datum(&self) -> &CartanDatum {
        &self.sys.datum
    }

    pub fn alpha(&self) -> &Weight {
        &self.alpha
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `I^alpha` in lexicographic order.
    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn max_deg(&self) -> Option<i32> {
        self.max_deg
    }

    pub fn memo_size(&self) -> usize {
        self.memo_x.borrow().len() + self.memo_t.borrow().len() + self.memo_w.borrow().len()
    }

    fn dot(&self, i: u8, j: u8) -> i64 {
        self.sys.datum.dot(i as usize, j as usize)
    }

    /// `deg x_r 1_i = 2 d_{i_r}`.
    pub fn x_degree(&self, color: u8) -> i32 {
        2 * self.sys.datum.d(color as usize) as i32
    }

    pub fn degree(&self, m: &Mono) -> i32 {
        let mut d: i64 = m.w.inversions().map(|(a, b)| -self.dot(m.i[a], m.i[b])).sum();
        for (r, &e) in m.a.iter().enumerate() {
            d += e as i64 * self.x_degree(m.i[r]) as i64;
        }
        d as i32
    }

    /// Degree of `tau_w 1_i`.
    pub fn tau_degree(&self, w: &Perm, i: &[u8]) -> i32 {
        w.inversions().map(|(a, b)| -self.dot(i[a], i[b])).sum::<i64>() as i32
    }

    pub(crate) fn quadratic(&self, r: usize, j: &[u8]) -> Poly {
        quadratic_poly(&self.sys.datum, r, j)
    }

    pub(crate) fn braid_defect(&self, r: usize, j: &[u8]) -> Poly {
        braid_defect_poly(&self.sys.datum, r, j)
    }

    // ----- generator actions on monomials -----

    /// `x_t * m` in normal form.
    pub(crate) fn x_mono(&self, t: usize, m: &Mono) -> Rc<Terms> {
        let key = (t as u8, m.clone());
        if let Some(v) = self.memo_x.borrow().get(&key) {
            return v.clone();
        }
        let out = Rc::new(self.x_mono_raw(t, m));
        self.memo_x.borrow_mut().insert(key, out.clone());
        out
    }

    fn x_mono_raw(&self, t: usize, m: &Mono) -> Terms {
        let Some(r) = m.w.min_left_descent() else {
            let mut a = m.a.clone();
            a[t] += 1;
            return vec![(Mono { w: m.w.clone(), a, i: m.i.clone() }, 1)];
        };
        let ru = r as usize;
        let sub = Mono { w: m.w.left_mul(r), a: m.a.clone(), i: m.i.clone() };
        let j = sub.left_word();
        let ts = if t == ru {
            ru + 1
        } else if t == ru + 1 {
            ru
        } else {
            t
        };
        let mut acc = HashMap::new();
        for (mono, c) in self.x_mono(ts, &sub).iter() {
            add_into(&mut acc, &self.tau_mono(ru, mono), *c);
        }
        if j[ru] == j[ru + 1] {
            if t == ru + 1 {
                add_into(&mut acc, &[(sub.clone(), 1)], 1);
            } else if t == ru {
                add_into(&mut acc, &[(sub.clone(), 1)], -1);
            }
        }
        finish(acc)
    }

    /// `tau_r * m` in normal form.
    pub(crate) fn tau_mono(&self, r: usize, m: &Mono) -> Rc<Terms> {
        let key = (r as u8, m.clone());
        if let Some(v) = self.memo_t.borrow().get(&key) {
            return v.clone();
        }
        let out = Rc::new(self.tau_mono_raw(r, m));
        self.memo_t.borrow_mut().insert(key, out.clone());
        out
    }

    fn tau_mono_raw(&self, r: usize, m: &Mono) -> Terms {
        let ru = r as u8;
        if !m.w.is_left_descent(ru) {
            let v = m.w.left_mul(ru);
            if v.min_left_descent() == Some(ru) {
                return vec![(Mono { w: v, a: m.a.clone(), i: m.i.clone() }, 1)];
            }
            let mut word = vec![ru];
            word.extend(m.w.canonical_word());
            return (*self.word_normal(&word, &m.a, &m.i)).clone();
        }
        // tau_w = tau_r tau_{W'} + corrections, then tau_r^2 acts on tau_{W'} x^a 1_i
        let mut word = m.w.canonical_word();
        let mut acc = HashMap::new();
        if word[0] != ru {
            let corr = self.bring_to_front(&mut word, ru, &m.a, &m.i);
            for (mono, c) in corr.iter() {
                add_into(&mut acc, &self.tau_mono(r, mono), *c);
            }
        }
        let rest = self.word_normal(&word[1..], &m.a, &m.i);
        for (mono, c) in rest.iter() {
            let q = self.quadratic(r, &mono.left_word());
            add_into(&mut acc, &self.apply_poly(&q, mono), *c);
        }
        finish(acc)
    }

    /// `f * m` for a polynomial `f` in the `x_r`.
    pub(crate) fn apply_poly(&self, f: &Poly, m: &Mono) -> Terms {
        let mut acc = HashMap::new();
        for (mono_f, c) in f {
            let mut cur: Terms = vec![(m.clone(), 1)];
            for &(pos, pow) in mono_f {
                for _ in 0..pow {
                    let mut next = HashMap::new();
                    for (mm, cc) in &cur {
                        add_into(&mut next, &self.x_mono(pos, mm), *cc);
                    }
                    cur = finish(next);
                }
            }
            add_into(&mut acc, &cur, *c);
        }
        finish(acc)
    }

    /// Normal form of `tau_{W} x^a 1_i` for a reduced word `W`.
    pub(crate) fn word_normal(&self, word: &[u8], a: &[u16], i: &[u8]) -> Rc<Terms> {
        let key = (word.to_vec(), a.to_vec(), i.to_vec());
        if let Some(v) = self.memo_w.borrow().get(&key) {
            return v.clone();
        }
        let out = Rc::new(self.word_normal_raw(word, a, i));
        self.memo_w.borrow_mut().insert(key, out.clone());
        out
    }

    fn word_normal_raw(&self, word: &[u8], a: &[u16], i: &[u8]) -> Terms {
        if word.is_empty() {
            return vec![(Mono::poly(a.to_vec(), i.to_vec()), 1)];
        }
        let v = Perm::from_word(self.n, word);
        let q = v.min_left_descent().expect("nonempty reduced word");
        let mut w = word.to_vec();
        let mut acc = HashMap::new();
        if w[0] != q {
            let corr = self.bring_to_front(&mut w, q, a, i);
            add_into(&mut acc, &corr, 1);
        }
        let rest = self.word_normal(&w[1..], a, i);
        for (mono, c) in rest.iter() {
            add_into(&mut acc, &self.tau_mono(q as usize, mono), *c);
        }
        finish(acc)
    }

    /// Rewrites `word` in place so that it starts with `q` (a left descent), returning the
    /// accumulated corrections: `tau_{old} x^a 1_i = tau_{new} x^a 1_i + corrections`.
    fn bring_to_front(&self, word: &mut [u8], q: u8, a: &[u16], i: &[u8]) -> Terms {
        let mut moves = Vec::new();
        plan_front(&mut word.to_vec(), 0, q, &mut moves);
        let mut acc = HashMap::new();
        for mv in moves {
            match mv {
                Move::Commute(k) => word.swap(k, k + 1),
                Move::Braid(k) => {
                    let (x, y) = (word[k], word[k + 1]);
                    // high-low-high = low-high-low + defect, evaluated at the positions x.min(y)
                    let low = x.min(y) as usize;
                    let sign = if x > y { 1 } else { -1 };
                    let tail = self.word_normal(&word[k + 3..], a, i);
                    for (mono, c) in tail.iter() {
                        let defect = self.braid_defect(low, &mono.left_word());
                        if defect.is_empty() {
                            continue;
                        }
                        let mut cur = self.apply_poly(&defect, mono);
                        for &letter in word[..k].iter().rev() {
                            let mut next = HashMap::new();
                            for (mm, cc) in &cur {
                                add_into(&mut next, &self.tau_mono(letter as usize, mm), *cc);
                            }
                            cur = finish(next);
                        }
                        add_into(&mut acc, &cur, sign * c);
                    }
                    word[k] = y;
                    word[k + 1] = x;
                    word[k + 2] = y;
                }
            }
        }
        debug_assert_eq!(word[0], q);
        finish(acc)
    }

    // ----- public algebra operations -----

    fn check_mono(&self, m: &Mono) -> Result<()> {
        if m.n() != self.n || m.a.len() != self.n || m.w.n() != self.n {
            return Err(KlrError::WeightMismatch(format!("monomial of length {} in H of height {}", m.n(), self.n)));
        }
        if Weight::of_word(self.sys.rank(), &m.i.iter().map(|&c| c as usize).collect::<Vec<_>>()) != self.alpha {
            return Err(KlrError::WeightMismatch(format!("word {:?} does not have weight {}", m.i, self.alpha)));
        }
        Ok(())
    }

    /// `m1 * m2` for normal-form monomials.
    pub fn mono_mul(&self, m1: &Mono, m2: &Mono) -> Terms {
        if m2.left_word() != m1.i {
            return Vec::new();
        }
        let mut cur: Terms = vec![(m2.clone(), 1)];
        for (t, &e) in m1.a.iter().enumerate().rev() {
            for _ in 0..e {
                let mut next = HashMap::new();
                for (mm, cc) in &cur {
                    add_into(&mut next, &self.x_mono(t, mm), *cc);
                }
                cur = finish(next);
            }
        }
        for &r in m1.w.canonical_word().iter().rev() {
            let mut next = HashMap::new();
            for (mm, cc) in &cur {
                add_into(&mut next, &self.tau_mono(r as usize, mm), *cc);
            }
            cur = finish(next);
        }
        cur
    }

    pub fn multiply(&self, a: &KlrElement, b: &KlrElement) -> Result<KlrElement> {
        for (m, _) in a.terms().chain(b.terms()) {
            self.check_mono(m)?;
        }
        let mut by_left: HashMap<Word, Vec<(&Mono, i64)>> = HashMap::new();
        for (m, c) in b.terms() {
            by_left.entry(m.left_word()).or_default().push((m, c));
        }
        let mut acc = HashMap::new();
        for (m1, c1) in a.terms() {
            let Some(list) = by_left.get(&m1.i) else { continue };
            for &(m2, c2) in list {
                add_into(&mut acc, &self.mono_mul(m1, m2), c1 * c2);
            }
        }
        Ok(KlrElement::from_terms(finish(acc)))
    }

    /// `g * e` where `g` is a generator.
    pub fn apply_generator(&self, g: Generator, e: &KlrElement) -> KlrElement {
        let mut acc = HashMap::new();
        for (m, c) in e.terms() {
            match g {
                Generator::X(t) => add_into(&mut acc, &self.x_mono(t, m), c),
                Generator::Tau(r) => add_into(&mut acc, &self.tau_mono(r, m), c),
                Generator::Idem(ref j) => {
                    if m.left_word() == *j {
                        add_into(&mut acc, &[(m.clone(), 1)], c)
                    }
                }
            }
        }
        KlrElement::from_terms(finish(acc))
    }

    pub fn idempotent(&self, i: &[u8]) -> KlrElement {
        KlrElement::from_mono(Mono::idempotent(i.to_vec()))
    }

    pub fn one(&self) -> KlrElement {
        KlrElement::from_terms(self.words.iter().map(|w| (Mono::idempotent(w.clone()), 1)))
    }

    /// `x_t = sum_i x_t 1_i`.
    pub fn x(&self, t: usize) -> KlrElement {
        self.apply_generator(Generator::X(t), &self.one())
    }

    /// `tau_r = sum_i tau_r 1_i`.
    pub fn tau(&self, r: usize) -> KlrElement {
        self.apply_generator(Generator::Tau(r), &self.one())
    }

    /// `1_{beta_1, ..., beta_m}`: sum over concatenations of words of the parts.
    pub fn block_idempotent(&self, parts: &[Weight]) -> Result<KlrElement> {
        let total = parts.iter().fold(Weight::zero(self.sys.rank()), |s, p| s.add(p));
        if total != self.alpha {
            return Err(KlrError::WeightMismatch(format!("composition does not sum to {}", self.alpha)));
        }
        let mut words: Vec<Word> = vec![Vec::new()];
        for p in parts {
            let ws = self.sys.words(p);
            words = words
                .iter()
                .flat_map(|a| ws.iter().map(move |w| [a.clone(), w.iter().map(|&c| c as u8).collect()].concat()))
                .collect();
        }
        Ok(KlrElement::from_terms(words.into_iter().map(|w| (Mono::idempotent(w), 1))))
    }

    /// The anti-automorphism fixing all generators.
    pub fn iota(&self, e: &KlrElement) -> KlrElement {
        let mut acc = HashMap::new();
        for (m, c) in e.terms() {
            // iota(tau_{r_1}..tau_{r_k} x^a 1_i) = 1_i x^a tau_{r_k}..tau_{r_1}
            let word = m.w.canonical_word();
            let j = m.left_word();
            let mut cur: Terms = vec![(Mono::idempotent(j), 1)];
            for &r in &word {
                let mut next = HashMap::new();
                for (mm, cc) in &cur {
                    add_into(&mut next, &self.tau_mono(r as usize, mm), *cc);
                }
                cur = finish(next);
            }
            let poly: Poly = vec![(m.a.iter().enumerate().map(|(k, &p)| (k, p)).collect(), 1)];
            let mut out = HashMap::new();
            for (mm, cc) in &cur {
                add_into(&mut out, &self.apply_poly(&poly, mm), *cc);
            }
            add_into(&mut acc, &finish(out), c);
        }
        KlrElement::from_terms(finish(acc))
    }

    /// Homogeneous degree, or `None` for a non-homogeneous or zero element.
    pub fn element_degree(&self, e: &KlrElement) -> Option<i32> {
        let mut it = e.terms().map(|(m, _)| self.degree(m));
        let d = it.next()?;
        it.all(|x| x == d).then_some(d)
    }
}

/// `tau_r^2 1_j` as a polynomial in `x_r, x_{r+1}` (empty when it vanishes).
pub fn quadratic_poly(datum: &CartanDatum, r: usize, j: &[u8]) -> Poly {
    let (a, b) = (j[r] as usize, j[r + 1] as usize);
    if a == b {
        return Vec::new();
    }
    let c = datum.c(a, b);
    if c == 0 {
        return vec![(Vec::new(), 1)];
    }
    let e = datum.eps(a, b);
    let cb = datum.c(b, a);
    vec![(vec![(r, (-c) as u16)], e), (vec![(r + 1, (-cb) as u16)], -e)]
}

/// `(tau_{r+1} tau_r tau_{r+1} - tau_r tau_{r+1} tau_r) 1_j` as a polynomial.
pub fn braid_defect_poly(datum: &CartanDatum, r: usize, j: &[u8]) -> Poly {
    let (a, b) = (j[r] as usize, j[r + 1] as usize);
    if a != j[r + 2] as usize || a == b {
        return Vec::new();
    }
    let c = datum.c(a, b);
    if c >= 0 {
        return Vec::new();
    }
    let e = datum.eps(a, b);
    let top = (-1 - c) as u16;
    (0..=top).map(|p| (vec![(r, p), (r + 2, top - p)], e)).collect()
}

/// Generators of `H_alpha`, 0-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    Idem(Word),
    X(usize),
    Tau(usize),
}

/// Moves turning `word[start..]` into a word beginning with `q`.
fn plan_front(word: &mut [u8], start: usize, q: u8, moves: &mut Vec<Move>) {
    let r = word[start];
    if r == q {
        return;
    }
    plan_front(word, start + 1, q, moves);
    if r.abs_diff(q) > 1 {
        word.swap(start, start + 1);
        moves.push(Move::Commute(start));
    } else {
        plan_front(word, start + 2, r, moves);
        // r q r -> q r q
        word[start] = q;
        word[start + 1] = r;
        word[start + 2] = q;
        moves.push(Move::Braid(start));
    }
}
