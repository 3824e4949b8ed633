//! Finite or degree-truncated graded modules over a KLR algebra.
//!
//! A module is stored as a list of weight-degree components `(degree, word)` together with
//! the matrix of every generator `x_t`, `tau_r` on every component. Idempotents act
//! diagonally. A truncated module carries a `top` degree: every component of degree
//! `<= top` is present, and every map whose source and target lie at or below `top` is
//! known. Maps leaving the window are recorded as unknown and applying them is refused.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::algebra::{braid_defect_poly, quadratic_poly, KlrElement, Mono, Poly, Word};
use crate::error::{KlrError, Result};
use crate::linalg::{Field, Matrix};
use crate::roots::{RootSystem, Weight};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CompKey {
    pub degree: i32,
    pub word: Word,
}

impl CompKey {
    pub fn new(degree: i32, word: Word) -> Self {
        CompKey { degree, word }
    }
}

/// A generator acting on modules: `x_t` or `tau_r`, 0-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Gen {
    X(usize),
    T(usize),
}

impl Gen {
    pub fn all(n: usize) -> Vec<Gen> {
        (0..n).map(Gen::X).chain((0..n.saturating_sub(1)).map(Gen::T)).collect()
    }

    pub fn index(self, n: usize) -> usize {
        match self {
            Gen::X(t) => t,
            Gen::T(r) => n + r,
        }
    }
}

#[derive(Clone)]
pub enum Act<F> {
    Zero,
    /// Target component and the `dim(target) x dim(source)` matrix.
    Map(usize, Matrix<F>),
    Unknown,
}

impl<F: Field> std::fmt::Debug for Act<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Act::Zero => write!(f, "Zero"),
            Act::Unknown => write!(f, "Unknown"),
            Act::Map(t, m) => write!(f, "Map({}, {:?})", t, m),
        }
    }
}

/// A homogeneous vector: a component index and coordinates in that component.
pub type HVec<F> = (usize, Vec<F>);

#[derive(Clone, Debug)]
pub struct GradedModule<F: Field> {
    sys: RootSystem,
    alpha: Weight,
    n: usize,
    keys: Vec<CompKey>,
    dims: Vec<usize>,
    index: HashMap<CompKey, usize>,
    acts: Vec<Vec<Act<F>>>,
    top: Option<i32>,
    /// Block sizes of the parabolic subalgebra acting; `[n]` for the full algebra.
    blocks: Vec<usize>,
}

/// Degree and word reached from `key` by a generator.
pub fn target_key(sys: &RootSystem, key: &CompKey, g: Gen) -> CompKey {
    let w = &key.word;
    match g {
        Gen::X(t) => CompKey::new(key.degree + 2 * sys.datum.d(w[t] as usize) as i32, w.clone()),
        Gen::T(r) => {
            let mut v = w.clone();
            v.swap(r, r + 1);
            let deg = -sys.datum.dot(w[r] as usize, w[r + 1] as usize) as i32;
            CompKey::new(key.degree + deg, v)
        }
    }
}

impl<F: Field> GradedModule<F> {
    /// Builds a module from its components and a callback producing the matrix of each
    /// generator on each component. The callback receives the source and target keys and
    /// returns `None` for a zero map; it is only called when the target is present.
    pub fn build(
        sys: &RootSystem,
        alpha: &Weight,
        top: Option<i32>,
        comps: Vec<(CompKey, usize)>,
        mut action: impl FnMut(&CompKey, Gen, &CompKey) -> Result<Option<Matrix<F>>>,
    ) -> Result<Self> {
        let mut m = Self::skeleton(sys, alpha, top, comps)?;
        for c in 0..m.keys.len() {
            for g in Gen::all(m.n) {
                if !m.acts_by(g) {
                    continue;
                }
                let tk = target_key(sys, &m.keys[c], g);
                let act = match m.index.get(&tk) {
                    Some(&t) => match action(&m.keys[c], g, &tk)? {
                        Some(mat) => {
                            if mat.rows() != m.dims[t] || mat.cols() != m.dims[c] {
                                return Err(KlrError::Invalid(format!(
                                    "action of {:?} on {:?} has shape {}x{}",
                                    g,
                                    m.keys[c],
                                    mat.rows(),
                                    mat.cols()
                                )));
                            }
                            if mat.is_zero() { Act::Zero } else { Act::Map(t, mat) }
                        }
                        None => Act::Zero,
                    },
                    None if top.map_or(false, |t| tk.degree > t) => Act::Unknown,
                    None => Act::Zero,
                };
                m.acts[c][g.index(m.n)] = act;
            }
        }
        Ok(m)
    }

    fn skeleton(
        sys: &RootSystem,
        alpha: &Weight,
        top: Option<i32>,
        mut comps: Vec<(CompKey, usize)>,
    ) -> Result<Self> {
        let n = alpha.height() as usize;
        comps.retain(|(_, d)| *d > 0);
        comps.sort();
        let mut index = HashMap::new();
        for (k, (key, _)) in comps.iter().enumerate() {
            if key.word.len() != n || Weight::of_word(sys.rank(), &key.word.iter().map(|&c| c as usize).collect::<Vec<_>>()) != *alpha {
                return Err(KlrError::WeightMismatch(format!("component word {:?}", key.word)));
            }
            if let Some(t) = top {
                if key.degree > t {
                    return Err(KlrError::Invalid(format!("component {:?} above top {}", key, t)));
                }
            }
            if index.insert(key.clone(), k).is_some() {
                return Err(KlrError::Invalid(format!("duplicate component {:?}", key)));
            }
        }
        let gens = 2 * n - n.min(1);
        Ok(GradedModule {
            sys: sys.clone(),
            alpha: alpha.clone(),
            n,
            acts: vec![vec![Act::Zero; gens]; comps.len()],
            dims: comps.iter().map(|c| c.1).collect(),
            keys: comps.into_iter().map(|c| c.0).collect(),
            index,
            top,
            blocks: vec![n],
        })
    }

    /// The one-dimensional module on `word` with every `x_t` and `tau_r` acting by zero.
    pub fn one_dimensional(sys: &RootSystem, word: &[u8], degree: i32) -> Result<Self> {
        let alpha = Weight::of_word(sys.rank(), &word.iter().map(|&c| c as usize).collect::<Vec<_>>());
        Self::build(sys, &alpha, None, vec![(CompKey::new(degree, word.to_vec()), 1)], |_, _, _| Ok(None))
    }

    pub fn system(&self) -> &RootSystem {
        &self.sys
    }
    pub fn alpha(&self) -> &Weight {
        &self.alpha
    }
    pub fn n(&self) -> usize {
        self.n
    }
    pub fn top(&self) -> Option<i32> {
        self.top
    }
    pub fn is_complete(&self) -> bool {
        self.top.is_none()
    }
    pub fn keys(&self) -> &[CompKey] {
        &self.keys
    }
    pub fn dims(&self) -> &[usize] {
        &self.dims
    }
    pub fn dim_of(&self, c: usize) -> usize {
        self.dims[c]
    }
    pub fn key(&self, c: usize) -> &CompKey {
        &self.keys[c]
    }
    pub fn comp(&self, key: &CompKey) -> Option<usize> {
        self.index.get(key).copied()
    }
    pub fn num_comps(&self) -> usize {
        self.keys.len()
    }
    /// Total dimension of the stored window.
    pub fn dim(&self) -> usize {
        self.dims.iter().sum()
    }
    pub fn is_zero(&self) -> bool {
        self.keys.is_empty()
    }
    pub fn lowest_degree(&self) -> Option<i32> {
        self.keys.iter().map(|k| k.degree).min()
    }
    pub fn highest_degree(&self) -> Option<i32> {
        self.keys.iter().map(|k| k.degree).max()
    }
    pub fn blocks(&self) -> &[usize] {
        &self.blocks
    }

    /// Whether `g` belongs to the (parabolic) algebra acting on this module.
    pub fn acts_by(&self, g: Gen) -> bool {
        match g {
            Gen::X(_) => true,
            Gen::T(r) => {
                let mut edge = 0;
                for &b in &self.blocks {
                    edge += b;
                    if r + 1 == edge {
                        return false;
                    }
                }
                true
            }
        }
    }

    /// Generators of the acting algebra.
    pub fn gens(&self) -> Vec<Gen> {
        Gen::all(self.n).into_iter().filter(|&g| self.acts_by(g)).collect()
    }

    pub fn action(&self, c: usize, g: Gen) -> &Act<F> {
        &self.acts[c][g.index(self.n)]
    }

    /// Whether degree `d` lies inside the trusted window.
    pub fn trusted(&self, d: i32) -> bool {
        self.top.map_or(true, |t| d <= t)
    }

    /// Components of a given word, ordered by degree.
    pub fn comps_of_word(&self, word: &[u8]) -> Vec<usize> {
        (0..self.keys.len()).filter(|&c| self.keys[c].word == word).collect()
    }

    /// Components of a given degree.
    pub fn comps_of_degree(&self, d: i32) -> Vec<usize> {
        (0..self.keys.len()).filter(|&c| self.keys[c].degree == d).collect()
    }

    pub(crate) fn refusal(&self, required: i32) -> KlrError {
        KlrError::WindowExceeded { required, available: self.top.unwrap_or(i32::MAX) }
    }

    /// Applies a generator to a homogeneous vector; `None` is the zero vector.
    pub fn apply_gen(&self, g: Gen, c: usize, v: &[F]) -> Result<Option<HVec<F>>> {
        if !self.acts_by(g) {
            return Err(KlrError::Domain(format!("{:?} does not act on a restricted module", g)));
        }
        match &self.acts[c][g.index(self.n)] {
            Act::Zero => Ok(None),
            Act::Unknown => Err(self.refusal(target_key(&self.sys, &self.keys[c], g).degree)),
            Act::Map(t, m) => {
                let w = m.mul_vec(v);
                Ok(if w.iter().all(|x| x.is_zero()) { None } else { Some((*t, w)) })
            }
        }
    }

    /// Applies a generator to a block of column vectors in component `c`.
    pub fn apply_gen_block(&self, g: Gen, c: usize, block: &Matrix<F>) -> Result<Option<(usize, Matrix<F>)>> {
        match &self.acts[c][g.index(self.n)] {
            Act::Zero => Ok(None),
            Act::Unknown => Err(self.refusal(target_key(&self.sys, &self.keys[c], g).degree)),
            Act::Map(t, m) => Ok(Some((*t, m.mul(block)))),
        }
    }

    /// Applies a word in the generators, rightmost letter first.
    pub fn apply_word(&self, word: &[Gen], c: usize, v: &[F]) -> Result<Option<HVec<F>>> {
        let mut cur = (c, v.to_vec());
        for &g in word.iter().rev() {
            match self.apply_gen(g, cur.0, &cur.1)? {
                Some(next) => cur = next,
                None => return Ok(None),
            }
        }
        Ok(Some(cur))
    }

    /// Applies a normal-form monomial `tau_w x^a 1_i`.
    pub fn apply_mono(&self, m: &Mono, c: usize, v: &[F]) -> Result<Option<HVec<F>>> {
        if self.keys[c].word != m.i {
            return Ok(None);
        }
        let mut word: Vec<Gen> = m.w.canonical_word().into_iter().map(|r| Gen::T(r as usize)).collect();
        for (t, &e) in m.a.iter().enumerate() {
            word.extend(std::iter::repeat(Gen::X(t)).take(e as usize));
        }
        self.apply_word(&word, c, v)
    }

    /// Matrix of a normal-form monomial on component `c`: target component and block.
    pub fn mono_matrix(&self, m: &Mono, c: usize) -> Result<Option<(usize, Matrix<F>)>> {
        if self.keys[c].word != m.i {
            return Ok(None);
        }
        let mut cur = (c, Matrix::identity(self.dims[c]));
        let taus = m.w.canonical_word();
        let xs = m.a.iter().enumerate().flat_map(|(t, &e)| std::iter::repeat(Gen::X(t)).take(e as usize));
        for g in xs.chain(taus.into_iter().rev().map(|r| Gen::T(r as usize))) {
            match self.apply_gen_block(g, cur.0, &cur.1)? {
                Some(next) => cur = next,
                None => return Ok(None),
            }
        }
        Ok(Some(cur))
    }

    /// Applies an algebra element to a vector given as a map from components to coordinates.
    pub fn apply_element(&self, e: &KlrElement, v: &BTreeMap<usize, Vec<F>>) -> Result<BTreeMap<usize, Vec<F>>> {
        let mut out: BTreeMap<usize, Vec<F>> = BTreeMap::new();
        for (m, coeff) in e.terms() {
            let cf = F::from_i64(coeff);
            for (&c, x) in v {
                if let Some((t, w)) = self.apply_mono(m, c, x)? {
                    let slot = out.entry(t).or_insert_with(|| vec![F::zero(); self.dims[t]]);
                    for (s, y) in slot.iter_mut().zip(w) {
                        *s = s.clone() + cf.clone() * y;
                    }
                }
            }
        }
        out.retain(|_, w| w.iter().any(|x| !x.is_zero()));
        Ok(out)
    }

    /// Restriction of scalars along a change of trusted window: forgets components
    /// above `top` and marks maps into them unknown.
    pub fn truncate(&self, top: i32) -> Self {
        let top = self.top.map_or(top, |t| t.min(top));
        let keep: Vec<usize> = (0..self.keys.len()).filter(|&c| self.keys[c].degree <= top).collect();
        let comps = keep.iter().map(|&c| (self.keys[c].clone(), self.dims[c])).collect();
        Self::build(&self.sys, &self.alpha, Some(top), comps, |s, g, _| {
            let c = self.index[s];
            Ok(match &self.acts[c][g.index(self.n)] {
                Act::Map(_, m) => Some(m.clone()),
                _ => None,
            })
        })
        .expect("truncation preserves shapes")
        .with_blocks(self.blocks.clone())
    }

    /// Replaces the trusted bound without touching the data; used by constructions
    /// that discover their exact window after building.
    /// Same data with the acting algebra cut down to the parabolic with these block sizes.
    pub(crate) fn with_blocks(mut self, blocks: Vec<usize>) -> Self {
        self.blocks = blocks;
        for c in 0..self.keys.len() {
            for g in Gen::all(self.n) {
                if !self.acts_by(g) {
                    self.acts[c][g.index(self.n)] = Act::Zero;
                }
            }
        }
        self
    }
}

/// A linear combination of generator words, each applied rightmost letter first.
pub type WordSum = Vec<(i64, Vec<Gen>)>;

fn poly_words(p: &Poly) -> WordSum {
    p.iter()
        .map(|(mono, c)| {
            let mut w = Vec::new();
            for &(t, e) in mono {
                w.extend(std::iter::repeat(Gen::X(t)).take(e as usize));
            }
            (*c, w)
        })
        .collect()
}

/// Every defining relation of the algebra on the idempotent `1_i`, as `lhs - rhs`.
pub fn defining_relations(sys: &RootSystem, i: &[u8]) -> Vec<(String, WordSum)> {
    let n = i.len();
    let datum = &sys.datum;
    let mut rels = Vec::new();
    for t in 0..n {
        for s in t + 1..n {
            rels.push((format!("x{}x{}", t + 1, s + 1), vec![(1, vec![Gen::X(t), Gen::X(s)]), (-1, vec![Gen::X(s), Gen::X(t)])]));
        }
    }
    for r in 0..n.saturating_sub(1) {
        for t in 0..n {
            let st = if t == r { r + 1 } else if t == r + 1 { r } else { t };
            let mut sum = vec![(1, vec![Gen::X(t), Gen::T(r)]), (-1, vec![Gen::T(r), Gen::X(st)])];
            if i[r] == i[r + 1] {
                if t == r + 1 {
                    sum.push((-1, vec![]));
                } else if t == r {
                    sum.push((1, vec![]));
                }
            }
            rels.push((format!("x{}t{}", t + 1, r + 1), sum));
        }
        let mut sq = vec![(1, vec![Gen::T(r), Gen::T(r)])];
        sq.extend(poly_words(&quadratic_poly(datum, r, i)).into_iter().map(|(c, w)| (-c, w)));
        rels.push((format!("t{}^2", r + 1), sq));
        for s in r + 2..n.saturating_sub(1) {
            rels.push((format!("t{}t{}", r + 1, s + 1), vec![(1, vec![Gen::T(r), Gen::T(s)]), (-1, vec![Gen::T(s), Gen::T(r)])]));
        }
        if r + 2 < n {
            let mut b = vec![
                (1, vec![Gen::T(r + 1), Gen::T(r), Gen::T(r + 1)]),
                (-1, vec![Gen::T(r), Gen::T(r + 1), Gen::T(r)]),
            ];
            b.extend(poly_words(&braid_defect_poly(datum, r, i)).into_iter().map(|(c, w)| (-c, w)));
            rels.push((format!("braid{}", r + 1), b));
        }
    }
    rels
}

impl<F: Field> GradedModule<F> {
    /// Evaluates a word sum on all of component `c` (identity block); `Ok(None)` when it
    /// vanishes. Errors when some intermediate map is unknown.
    pub fn eval_word_sum(&self, sum: &WordSum, c: usize) -> Result<Option<(usize, Matrix<F>)>> {
        let mut acc: Option<(usize, Matrix<F>)> = None;
        for (coeff, word) in sum {
            let mut cur = (c, Matrix::identity(self.dims[c]));
            let mut dead = false;
            for &g in word.iter().rev() {
                match self.apply_gen_block(g, cur.0, &cur.1)? {
                    Some(next) => cur = next,
                    None => {
                        dead = true;
                        break;
                    }
                }
            }
            if dead {
                continue;
            }
            let term = cur.1.scale(&F::from_i64(*coeff));
            acc = Some(match acc {
                None => (cur.0, term),
                Some((t, m)) if t == cur.0 => (t, m.add(&term)),
                Some((t, _)) => {
                    return Err(KlrError::Inconsistent(format!(
                        "relation terms land in components {:?} and {:?}",
                        self.keys[t], self.keys[cur.0]
                    )))
                }
            });
        }
        Ok(acc.filter(|(_, m)| !m.is_zero()))
    }

    /// Checks every defining relation on every component where all maps involved are
    /// known. Returns the violated relations as `(component, relation name)`.
    pub fn relation_violations(&self) -> Result<Vec<(CompKey, String)>> {
        let mut bad = Vec::new();
        for c in 0..self.keys.len() {
            for (name, sum) in defining_relations(&self.sys, &self.keys[c].word) {
                if sum.iter().any(|(_, w)| w.iter().any(|&g| !self.acts_by(g))) {
                    continue;
                }
                match self.eval_word_sum(&sum, c) {
                    Ok(None) => {}
                    Ok(Some(_)) => bad.push((self.keys[c].clone(), name)),
                    Err(e) if e.is_refusal() => {}
                    Err(e) => return Err(e),
                }
            }
        }
        Ok(bad)
    }

    pub fn check_relations(&self) -> Result<()> {
        let bad = self.relation_violations()?;
        if let Some((k, name)) = bad.first() {
            return Err(KlrError::Inconsistent(format!(
                "relation {} fails on component {:?} ({} violations)",
                name,
                k,
                bad.len()
            )));
        }
        Ok(())
    }
}
