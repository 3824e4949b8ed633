//! Degree shifts, duality, submodules, quotients, spans and restriction.

use super::graded::{Act, CompKey, Gen, GradedModule, HVec};
use crate::error::{KlrError, Result};
use crate::linalg::{Field, Matrix, Subspace};
use crate::roots::Weight;

/// A degree-preserving linear map between two modules, one block per source component.
#[derive(Clone, Debug)]
pub struct ModuleMap<F: Field> {
    /// For each source component: target component and `dim(target) x dim(source)` matrix.
    pub blocks: Vec<Option<(usize, Matrix<F>)>>,
}

impl<F: Field> ModuleMap<F> {
    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(|b| b.as_ref().map_or(true, |(_, m)| m.is_zero()))
    }

    pub fn rank(&self) -> usize {
        self.blocks.iter().flatten().map(|(_, m)| m.rank()).sum()
    }

    pub fn add(&self, o: &Self) -> Self {
        let blocks = self
            .blocks
            .iter()
            .zip(&o.blocks)
            .map(|(a, b)| match (a, b) {
                (Some((t, x)), Some((_, y))) => Some((*t, x.add(y))),
                (Some(x), None) => Some(x.clone()),
                (None, y) => y.clone(),
            })
            .collect();
        ModuleMap { blocks }
    }

    pub fn scale(&self, s: &F) -> Self {
        ModuleMap { blocks: self.blocks.iter().map(|b| b.as_ref().map(|(t, m)| (*t, m.scale(s)))).collect() }
    }

    /// Kernel of the map on each source component.
    pub fn kernel_spaces(&self, src: &GradedModule<F>) -> Vec<Subspace<F>> {
        (0..src.num_comps())
            .map(|c| {
                let mut s = Subspace::new(src.dim_of(c));
                match &self.blocks[c] {
                    None => {
                        for i in 0..src.dim_of(c) {
                            let mut v = vec![F::zero(); src.dim_of(c)];
                            v[i] = F::one();
                            s.insert(v);
                        }
                    }
                    Some((_, m)) => {
                        for v in m.kernel() {
                            s.insert(v);
                        }
                    }
                }
                s
            })
            .collect()
    }

    pub fn is_injective(&self, src: &GradedModule<F>) -> bool {
        self.kernel_spaces(src).iter().all(|s| s.dim() == 0)
    }

    /// Whether the map intertwines every generator wherever both sides are known.
    pub fn commutes(&self, src: &GradedModule<F>, tgt: &GradedModule<F>) -> Result<bool> {
        for c in 0..src.num_comps() {
            for g in src.gens() {
                let before = match src.action(c, g) {
                    Act::Unknown => continue,
                    Act::Zero => None,
                    Act::Map(t, a) => match &self.blocks[*t] {
                        None if !a.is_zero() => continue,
                        None => None,
                        Some((u, f)) => Some((*u, f.mul(a))),
                    },
                };
                let after = match &self.blocks[c] {
                    None => continue,
                    Some((u, f)) => match tgt.action(*u, g) {
                        Act::Unknown => continue,
                        Act::Zero => None,
                        Act::Map(t, b) => Some((*t, b.mul(f))),
                    },
                };
                let ok = match (before, after) {
                    (None, None) => true,
                    (Some((_, x)), None) | (None, Some((_, x))) => x.is_zero(),
                    (Some((t1, x)), Some((t2, y))) => (t1 == t2 && x == y) || (x.is_zero() && y.is_zero()),
                };
                if !ok {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

impl<F: Field> GradedModule<F> {
    /// `q^d V`: the component of degree `e` moves to degree `e + d`.
    pub fn shift(&self, d: i32) -> Self {
        let comps = self.keys().iter().zip(self.dims()).map(|(k, &n)| (CompKey::new(k.degree + d, k.word.clone()), n)).collect();
        Self::build(self.system(), self.alpha(), self.top().map(|t| t + d), comps, |s, g, _| {
            let c = self.comp(&CompKey::new(s.degree - d, s.word.clone())).unwrap();
            Ok(match self.action(c, g) {
                Act::Map(_, m) => Some(m.clone()),
                _ => None,
            })
        })
        .expect("shift preserves shapes")
        .with_blocks(self.blocks().to_vec())
    }

    /// The graded dual twisted by the anti-involution fixing the generators.
    pub fn dual(&self) -> Result<Self> {
        if !self.is_complete() {
            return Err(KlrError::InfiniteDimensional);
        }
        let comps = self.keys().iter().zip(self.dims()).map(|(k, &n)| (CompKey::new(-k.degree, k.word.clone()), n)).collect();
        Self::build(self.system(), self.alpha(), None, comps, |s, g, t| {
            let src = self.comp(&CompKey::new(-t.degree, t.word.clone())).unwrap();
            let dst = self.comp(&CompKey::new(-s.degree, s.word.clone())).unwrap();
            Ok(match self.action(src, g) {
                Act::Map(tt, m) if *tt == dst => Some(m.transpose()),
                Act::Map(..) => return Err(KlrError::Inconsistent("dual: action target mismatch".into())),
                _ => None,
            })
        })
        .map(|m| m.with_blocks(self.blocks().to_vec()))
    }

    /// The smallest family of subspaces containing the given vectors and stable under the
    /// acting generators. Maps leaving the trusted window are skipped, so for a truncated
    /// module the result is the part of the span reachable inside the window.
    pub fn spin(&self, seeds: &[HVec<F>]) -> Vec<Subspace<F>> {
        let mut spaces: Vec<Subspace<F>> = self.dims().iter().map(|&d| Subspace::new(d)).collect();
        let mut queue: Vec<HVec<F>> = Vec::new();
        for (c, v) in seeds {
            if spaces[*c].insert(v.clone()) {
                queue.push((*c, v.clone()));
            }
        }
        let gens = self.gens();
        while let Some((c, v)) = queue.pop() {
            for &g in &gens {
                if let Ok(Some((t, w))) = self.apply_gen(g, c, &v) {
                    if spaces[t].insert(w.clone()) {
                        queue.push((t, w));
                    }
                }
            }
        }
        spaces
    }

    /// Checks that the subspaces are stable under every known generator map.
    pub fn is_stable(&self, spaces: &[Subspace<F>]) -> bool {
        for c in 0..self.num_comps() {
            for &g in &self.gens() {
                for v in spaces[c].basis() {
                    if let Ok(Some((t, w))) = self.apply_gen(g, c, v) {
                        if !spaces[t].contains(&w) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// The submodule on the given stable subspaces, in their echelon bases.
    pub fn submodule(&self, spaces: &[Subspace<F>]) -> Result<Self> {
        let comps = (0..self.num_comps()).map(|c| (self.key(c).clone(), spaces[c].dim())).collect();
        Self::build(self.system(), self.alpha(), self.top(), comps, |s, g, _| {
            let c = self.comp(s).unwrap();
            let mut cols = Vec::new();
            let mut target = None;
            for v in spaces[c].basis() {
                match self.apply_gen(g, c, v)? {
                    None => cols.push(None),
                    Some((t, w)) => {
                        let coords = spaces[t]
                            .coordinates(&w)
                            .ok_or_else(|| KlrError::Inconsistent(format!("subspace not stable under {:?}", g)))?;
                        target = Some(t);
                        cols.push(Some(coords));
                    }
                }
            }
            Ok(target.map(|t| {
                let cols: Vec<Vec<F>> = cols.into_iter().map(|c| c.unwrap_or_else(|| vec![F::zero(); spaces[t].dim()])).collect();
                Matrix::from_columns(&cols, spaces[t].dim())
            }))
        })
        .map(|m| m.with_blocks(self.blocks().to_vec()))
    }

    /// The quotient by the given stable subspaces; the quotient basis of each component is
    /// indexed by the non-pivot coordinates.
    pub fn quotient(&self, spaces: &[Subspace<F>]) -> Result<Self> {
        let comps = (0..self.num_comps()).map(|c| (self.key(c).clone(), self.dim_of(c) - spaces[c].dim())).collect();
        Self::build(self.system(), self.alpha(), self.top(), comps, |s, g, _| {
            let c = self.comp(s).unwrap();
            let mut cols = Vec::new();
            let mut target = None;
            for j in spaces[c].non_pivots() {
                let mut e = vec![F::zero(); self.dim_of(c)];
                e[j] = F::one();
                match self.apply_gen(g, c, &e)? {
                    None => cols.push(None),
                    Some((t, w)) => {
                        let r = spaces[t].reduce(&w);
                        target = Some(t);
                        cols.push(Some(spaces[t].non_pivots().iter().map(|&k| r[k].clone()).collect::<Vec<F>>()));
                    }
                }
            }
            Ok(target.map(|t| {
                let d = self.dim_of(t) - spaces[t].dim();
                let cols: Vec<Vec<F>> = cols.into_iter().map(|c| c.unwrap_or_else(|| vec![F::zero(); d])).collect();
                Matrix::from_columns(&cols, d)
            }))
        })
        .map(|m| m.with_blocks(self.blocks().to_vec()))
    }

    /// Image of a module map, realised as the quotient by its kernel.
    pub fn image_of(&self, map: &ModuleMap<F>) -> Result<Self> {
        self.quotient(&map.kernel_spaces(self))
    }

    /// Restriction to the parabolic subalgebra of the given block weights: keeps the
    /// words that are concatenations of words of those weights.
    pub fn restrict(&self, blocks: &[Weight]) -> Result<Self> {
        let total = blocks.iter().fold(Weight::zero(self.system().rank()), |a, b| a.add(b));
        if total != *self.alpha() {
            return Err(KlrError::WeightMismatch(format!("blocks sum to {} not {}", total, self.alpha())));
        }
        let sizes: Vec<usize> = blocks.iter().map(|b| b.height() as usize).collect();
        let ok = |w: &[u8]| {
            let mut pos = 0;
            blocks.iter().zip(&sizes).all(|(b, &l)| {
                let part: Vec<usize> = w[pos..pos + l].iter().map(|&c| c as usize).collect();
                pos += l;
                Weight::of_word(self.system().rank(), &part) == *b
            })
        };
        let keep: Vec<usize> = (0..self.num_comps()).filter(|&c| ok(&self.key(c).word)).collect();
        let comps = keep.iter().map(|&c| (self.key(c).clone(), self.dim_of(c))).collect();
        let restricted = Self::build(self.system(), self.alpha(), self.top(), comps, |s, g, _| {
            let c = self.comp(s).unwrap();
            Ok(match self.action(c, g) {
                Act::Map(_, m) => Some(m.clone()),
                _ => None,
            })
        })?;
        Ok(restricted.with_blocks(sizes))
    }

    /// Basis vector `k` of component `c`.
    pub fn basis_vector(&self, c: usize, k: usize) -> HVec<F> {
        let mut v = vec![F::zero(); self.dim_of(c)];
        v[k] = F::one();
        (c, v)
    }

    /// Structural equality of the stored data (same components, same matrices).
    pub fn same_data(&self, o: &Self) -> bool {
        if self.keys() != o.keys() || self.dims() != o.dims() || self.top() != o.top() {
            return false;
        }
        (0..self.num_comps()).all(|c| {
            Gen::all(self.n()).into_iter().all(|g| match (self.action(c, g), o.action(c, g)) {
                (Act::Zero, Act::Zero) | (Act::Unknown, Act::Unknown) => true,
                (Act::Map(a, x), Act::Map(b, y)) => a == b && x == y,
                _ => false,
            })
        })
    }
}
