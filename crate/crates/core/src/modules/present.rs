//! Presentations by generators and spanning trees, and Hom spaces computed from them.
//!
//! Starting from generating vectors, generators of the algebra are applied breadth first.
//! A result outside the current span becomes a new tree vector; a result inside it
//! yields a relation `g b_j = sum c_k b_k`, i.e. an element of the annihilator. A module
//! map is then determined by the images of the generating vectors, subject to these
//! relations. Restricting the tree to degrees `<= bound` drops relations, so the solution
//! space only grows: it is a certified superset of the Hom space, and exact once the
//! tree spans a finite-dimensional module completely.

use std::collections::VecDeque;

use super::graded::{Gen, GradedModule, HVec};
use super::ops::ModuleMap;
use crate::error::{KlrError, Result};
use crate::linalg::{Field, Matrix, Subspace};

#[derive(Clone, Debug)]
enum Origin {
    Root(usize),
    Child(usize, Gen),
}

#[derive(Clone, Debug)]
struct Node<F: Field> {
    comp: usize,
    vec: Vec<F>,
    origin: Origin,
}

#[derive(Clone, Debug)]
struct Relation<F: Field> {
    gen: Gen,
    node: usize,
    combo: Vec<(usize, F)>,
}

#[derive(Clone, Debug)]
pub struct Presentation<F: Field> {
    source: GradedModule<F>,
    gens: Vec<HVec<F>>,
    nodes: Vec<Node<F>>,
    relations: Vec<Relation<F>>,
    by_comp: Vec<Vec<usize>>,
    bound: Option<i32>,
}

/// Candidate images of the generators for maps of a fixed degree.
#[derive(Clone, Debug)]
pub struct HomSpace<F: Field> {
    pub degree: i32,
    /// One entry per basis element: the image of each generator (component in the
    /// target, coordinates).
    pub basis: Vec<Vec<Option<HVec<F>>>>,
    /// True when the relations used generate the whole annihilator, so the candidates
    /// are exactly the homomorphisms.
    pub exact: bool,
    pub ann_bound: Option<i32>,
}

impl<F: Field> HomSpace<F> {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

impl<F: Field> Presentation<F> {
    /// Presentation with explicit generators, exploring degrees `<= bound`.
    pub fn new(m: &GradedModule<F>, gens: Vec<HVec<F>>, bound: Option<i32>) -> Result<Self> {
        let bound = match (bound, m.top()) {
            (Some(b), Some(t)) => Some(b.min(t)),
            (b, t) => b.or(t),
        };
        let mut p = Presentation {
            source: m.clone(),
            gens: gens.clone(),
            nodes: Vec::new(),
            relations: Vec::new(),
            by_comp: vec![Vec::new(); m.num_comps()],
            bound,
        };
        let mut spaces: Vec<Subspace<F>> = m.dims().iter().map(|&d| Subspace::new(d)).collect();
        let mut queue = VecDeque::new();
        for (s, (c, v)) in gens.into_iter().enumerate() {
            if !spaces[c].insert(v.clone()) {
                return Err(KlrError::Invalid(format!("generator {} is redundant", s)));
            }
            p.by_comp[c].push(p.nodes.len());
            queue.push_back(p.nodes.len());
            p.nodes.push(Node { comp: c, vec: v, origin: Origin::Root(s) });
        }
        let gens_alg = m.gens();
        while let Some(j) = queue.pop_front() {
            let (c, v) = (p.nodes[j].comp, p.nodes[j].vec.clone());
            for &g in &gens_alg {
                let tk = super::graded::target_key(m.system(), m.key(c), g);
                if bound.map_or(false, |b| tk.degree > b) {
                    continue;
                }
                let w = match m.apply_gen(g, c, &v) {
                    Ok(w) => w,
                    Err(e) if e.is_refusal() => continue,
                    Err(e) => return Err(e),
                };
                match w {
                    None => p.relations.push(Relation { gen: g, node: j, combo: Vec::new() }),
                    Some((t, w)) => {
                        if spaces[t].contains(&w) {
                            let combo = p.express(t, &w);
                            p.relations.push(Relation { gen: g, node: j, combo });
                        } else {
                            spaces[t].insert(w.clone());
                            p.by_comp[t].push(p.nodes.len());
                            queue.push_back(p.nodes.len());
                            p.nodes.push(Node { comp: t, vec: w, origin: Origin::Child(j, g) });
                        }
                    }
                }
            }
        }
        Ok(p)
    }

    /// Presentation with generators chosen greedily, lowest degree first.
    pub fn auto(m: &GradedModule<F>, bound: Option<i32>) -> Result<Self> {
        let mut gens: Vec<HVec<F>> = Vec::new();
        let mut order: Vec<usize> = (0..m.num_comps()).collect();
        order.sort_by_key(|&c| (m.key(c).degree, c));
        let mut span = m.spin(&[]);
        for c in order {
            if bound.map_or(false, |b| m.key(c).degree > b) {
                continue;
            }
            for k in 0..m.dim_of(c) {
                let (_, e) = m.basis_vector(c, k);
                if !span[c].contains(&e) {
                    gens.push((c, e));
                    span = m.spin(&gens);
                }
            }
        }
        Self::new(m, gens, bound)
    }

    pub fn cyclic(m: &GradedModule<F>, v: HVec<F>, bound: Option<i32>) -> Result<Self> {
        Self::new(m, vec![v], bound)
    }

    fn express(&self, c: usize, w: &[F]) -> Vec<(usize, F)> {
        let ids = &self.by_comp[c];
        let cols: Vec<Vec<F>> = ids.iter().map(|&j| self.nodes[j].vec.clone()).collect();
        let b = Matrix::from_columns(&cols, w.len());
        let x = b.solve(w).expect("vector lies in the span");
        ids.iter().zip(x).filter(|(_, x)| !x.is_zero()).map(|(&j, x)| (j, x)).collect()
    }

    pub fn source(&self) -> &GradedModule<F> {
        &self.source
    }
    pub fn generators(&self) -> &[HVec<F>] {
        &self.gens
    }
    pub fn bound(&self) -> Option<i32> {
        self.bound
    }
    pub fn num_relations(&self) -> usize {
        self.relations.len()
    }

    /// Whether the tree vectors span component `c`.
    pub fn spans(&self, c: usize) -> bool {
        self.by_comp[c].len() == self.source.dim_of(c)
    }

    /// True when the relations generate the full annihilator: the source is finite,
    /// nothing was cut off by the bound and the tree spans every component.
    pub fn is_exact(&self) -> bool {
        self.source.is_complete()
            && self.bound.map_or(true, |b| self.source.highest_degree().map_or(true, |h| h + self.max_gen_degree() <= b))
            && (0..self.source.num_comps()).all(|c| self.spans(c))
    }

    fn max_gen_degree(&self) -> i32 {
        let sys = self.source.system();
        (0..sys.rank())
            .flat_map(|i| (0..sys.rank()).map(move |j| (i, j)))
            .map(|(i, j)| (-sys.datum.dot(i, j) as i32).max(2 * sys.datum.d(i) as i32))
            .max()
            .unwrap_or(0)
    }

    /// Path of generators from a root to tree vector `j`, rightmost applied first.
    pub fn path(&self, mut j: usize) -> (usize, Vec<Gen>) {
        let mut word = Vec::new();
        loop {
            match self.nodes[j].origin {
                Origin::Root(s) => return (s, word),
                Origin::Child(p, g) => {
                    word.push(g);
                    j = p;
                }
            }
        }
    }

    /// Images of all tree vectors under the linear parametrisation of generator images:
    /// for each node, the target component and a matrix from the unknowns.
    fn propagate(
        &self,
        target: &GradedModule<F>,
        d: i32,
        slots: &[(Option<usize>, usize)],
        total: usize,
    ) -> Result<Vec<Option<(usize, Matrix<F>)>>> {
        let mut images: Vec<Option<(usize, Matrix<F>)>> = Vec::with_capacity(self.nodes.len());
        for node in &self.nodes {
            let img = match node.origin {
                Origin::Root(s) => {
                    let (tc, off) = slots[s];
                    tc.map(|tc| {
                        let mut m = Matrix::zeros(target.dim_of(tc), total);
                        for k in 0..target.dim_of(tc) {
                            m.set(k, off + k, F::one());
                        }
                        (tc, m)
                    })
                }
                Origin::Child(p, g) => match &images[p] {
                    None => None,
                    Some((tc, m)) => target.apply_gen_block(g, *tc, m).map_err(|e| widen(e, self, d))?,
                },
            };
            images.push(img);
        }
        Ok(images)
    }

    fn slots(&self, target: &GradedModule<F>, d: i32) -> Result<(Vec<(Option<usize>, usize)>, usize)> {
        let mut slots = Vec::new();
        let mut total = 0;
        for (c, _) in &self.gens {
            let key = self.source.key(*c);
            let want = super::graded::CompKey::new(key.degree + d, key.word.clone());
            if !target.trusted(want.degree) {
                return Err(KlrError::WindowExceeded { required: want.degree, available: target.top().unwrap_or(i32::MAX) });
            }
            match target.comp(&want) {
                Some(tc) => {
                    slots.push((Some(tc), total));
                    total += target.dim_of(tc);
                }
                None => slots.push((None, total)),
            }
        }
        Ok((slots, total))
    }

    /// Candidate homomorphisms `q^d V -> W`, i.e. maps raising degree by `d`.
    pub fn hom_space(&self, target: &GradedModule<F>, d: i32) -> Result<HomSpace<F>> {
        if target.alpha() != self.source.alpha() || target.system().datum != self.source.system().datum {
            return Err(KlrError::WeightMismatch("Hom between different blocks".into()));
        }
        if let (Some(b), Some(t)) = (self.bound, target.top()) {
            if b + d > t {
                return Err(KlrError::InsufficientTrust { what: "hom target".into(), required: b + d, available: t });
            }
        }
        let (slots, total) = self.slots(target, d)?;
        let exact = self.is_exact();
        if total == 0 {
            return Ok(HomSpace { degree: d, basis: Vec::new(), exact, ann_bound: self.bound });
        }
        let images = self.propagate(target, d, &slots, total)?;
        let mut rows: Vec<Vec<F>> = Vec::new();
        for rel in &self.relations {
            let lhs = match &images[rel.node] {
                None => None,
                Some((tc, m)) => target.apply_gen_block(rel.gen, *tc, m).map_err(|e| widen(e, self, d))?,
            };
            let mut acc: Option<(usize, Matrix<F>)> = lhs;
            for (k, c) in &rel.combo {
                if let Some((tc, m)) = &images[*k] {
                    let term = m.scale(&-c.clone());
                    acc = Some(match acc {
                        None => (*tc, term),
                        Some((t0, a)) => {
                            debug_assert_eq!(t0, *tc);
                            (t0, a.add(&term))
                        }
                    });
                }
            }
            if let Some((_, m)) = acc {
                for r in 0..m.rows() {
                    if m.row(r).iter().any(|x| !x.is_zero()) {
                        rows.push(m.row(r).to_vec());
                    }
                }
            }
        }
        let sys = Matrix::from_rows(rows, total);
        let basis = sys
            .kernel()
            .into_iter()
            .map(|v| {
                slots
                    .iter()
                    .map(|(tc, off)| tc.map(|tc| (tc, v[*off..*off + target.dim_of(tc)].to_vec())))
                    .collect()
            })
            .collect();
        Ok(HomSpace { degree: d, basis, exact, ann_bound: self.bound })
    }

    /// The module map determined by generator images, on every component spanned by the
    /// tree (other components get `None` blocks and `spans` is false there).
    pub fn map_from(&self, target: &GradedModule<F>, d: i32, images: &[Option<HVec<F>>]) -> Result<ModuleMap<F>> {
        let (slots, total) = self.slots(target, d)?;
        let mut v = vec![F::zero(); total];
        for ((tc, off), img) in slots.iter().zip(images) {
            if let (Some(_), Some((_, x))) = (tc, img) {
                v[*off..*off + x.len()].clone_from_slice(x);
            }
        }
        let col = Matrix::from_columns(&[v], total);
        let lin = self.propagate(target, d, &slots, total)?;
        let mut blocks = Vec::with_capacity(self.source.num_comps());
        for c in 0..self.source.num_comps() {
            let key = self.source.key(c);
            let tkey = super::graded::CompKey::new(key.degree + d, key.word.clone());
            let Some(tc) = target.comp(&tkey) else {
                blocks.push(None);
                continue;
            };
            if !self.spans(c) {
                blocks.push(None);
                continue;
            }
            let ids = &self.by_comp[c];
            let b = Matrix::from_columns(&ids.iter().map(|&j| self.nodes[j].vec.clone()).collect::<Vec<_>>(), self.source.dim_of(c));
            let mut w = Matrix::zeros(target.dim_of(tc), ids.len());
            for (k, &j) in ids.iter().enumerate() {
                if let Some((_, m)) = &lin[j] {
                    let y = m.mul(&col);
                    for r in 0..y.rows() {
                        w.set(r, k, y.get(r, 0).clone());
                    }
                }
            }
            let binv = b.inverse().ok_or_else(|| KlrError::Inconsistent("tree vectors not a basis".into()))?;
            blocks.push(Some((tc, w.mul(&binv))));
        }
        Ok(ModuleMap { blocks })
    }
}

fn widen<F: Field>(e: KlrError, p: &Presentation<F>, d: i32) -> KlrError {
    match e {
        KlrError::WindowExceeded { available, .. } => KlrError::InsufficientTrust {
            what: "hom target".into(),
            required: p.bound.unwrap_or(i32::MAX).saturating_add(d),
            available,
        },
        e => e,
    }
}
