//! Cuspidal standard modules `Delta(alpha)`.
//!
//! Two constructions. In simply-laced types the sum `z` of the dots of one fixed color is
//! central, the subalgebra generated by idempotents, crossings and differences of dots is
//! a tensor complement to `k[z]`, and `Delta(alpha)` has basis `z^m (x) v` with `v` running
//! over `L(alpha)`. In general `Delta(alpha)` is the limit of the modules `Delta_m` built as
//! iterated nonsplit extensions of `L(alpha)` by `q_alpha^2 Delta_{m-1}`; the filtration
//! layers of `Delta` live in degrees `>= 2 d_alpha k + low(L)`, so `Delta_m` is exact below
//! `2 d_alpha m + low(L)`.

use std::collections::BTreeMap;
use std::rc::Rc;

use super::family::{DeltaPath, Family};
use crate::error::{KlrError, Result};
use crate::linalg::{Field, Matrix};
use crate::modules::{extension_module, extension_space, Act, Character, CompKey, Gen, GradedModule};

/// `Delta(alpha)` through the central element `z`, exact through degree `top`.
pub fn central_standard<F: Field>(l: &GradedModule<F>, top: i32) -> Result<GradedModule<F>> {
    let sys = l.system();
    let alpha = l.alpha();
    let support: Vec<usize> = (0..sys.rank()).filter(|&i| alpha.0[i] > 0).collect();
    let d = sys.datum.d(support[0]);
    if (0..sys.rank()).any(|i| sys.datum.d(i) != d) {
        return Err(KlrError::Domain("the central construction needs a simply-laced datum".into()));
    }
    if !l.is_complete() {
        return Err(KlrError::InfiniteDimensional);
    }
    let (color, inv) = support
        .iter()
        .find_map(|&i| F::from_i64(alpha.0[i]).inv().map(|a| (i as u8, a)))
        .ok_or_else(|| KlrError::Domain(format!("no color of {} has invertible multiplicity", alpha)))?;
    let step = 2 * d as i32;
    // component (deg, word) of Delta is the sum over m of z^m (x) L_(deg - step m, word)
    let mut layout: BTreeMap<CompKey, Vec<(usize, usize, usize)>> = BTreeMap::new();
    for c in 0..l.num_comps() {
        let key = l.key(c);
        let mut m = 0;
        while key.degree + step * m as i32 <= top {
            let k = CompKey::new(key.degree + step * m as i32, key.word.clone());
            let blocks = layout.entry(k).or_default();
            let off = blocks.iter().map(|&(_, c, _)| l.dim_of(c)).sum();
            blocks.push((m, c, off));
            m += 1;
        }
    }
    let dim = |k: &CompKey| layout[k].iter().map(|&(_, c, _)| l.dim_of(c)).sum::<usize>();
    let find = |k: &CompKey, m: usize, c: usize| layout[k].iter().find(|b| b.0 == m && b.1 == c).map(|b| b.2);
    let comps = layout.keys().map(|k| (k.clone(), dim(k))).collect();
    GradedModule::build(sys, alpha, Some(top), comps, |src, g, tgt| {
        let mut out = Matrix::zeros(dim(tgt), dim(src));
        for &(m, c, off) in &layout[src] {
            match g {
                Gen::T(_) => {
                    if let Act::Map(t, a) = l.action(c, g) {
                        let to = find(tgt, m, *t).expect("crossing stays in the same z-layer");
                        put(&mut out, to, off, a, &F::one());
                    }
                }
                Gen::X(r) => {
                    if let Some(to) = find(tgt, m + 1, c) {
                        put(&mut out, to, off, &Matrix::identity(l.dim_of(c)), &inv);
                    }
                    // (x_p - x_r) v summed over the dots p of the chosen color
                    let mut acc: Option<(usize, Matrix<F>)> = None;
                    for (p, &col) in src.word.iter().enumerate() {
                        if col != color || p == r {
                            continue;
                        }
                        for (gen, sign) in [(Gen::X(p), F::one()), (Gen::X(r), -F::one())] {
                            if let Act::Map(t, a) = l.action(c, gen) {
                                let a = a.scale(&sign);
                                acc = Some(match acc {
                                    Some((t0, b)) if t0 == *t => (t0, b.add(&a)),
                                    None => (*t, a),
                                    Some(_) => unreachable!("dots of equal degree reach one component"),
                                });
                            }
                        }
                    }
                    if let Some((t, a)) = acc {
                        let to = find(tgt, m, t).expect("dot difference stays in the same z-layer");
                        put(&mut out, to, off, &a, &-inv.clone());
                    }
                }
            }
        }
        Ok(Some(out))
    })
}

fn put<F: Field>(out: &mut Matrix<F>, r0: usize, c0: usize, a: &Matrix<F>, s: &F) {
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            let v = out.get(r0 + i, c0 + j).clone() + a.get(i, j).clone() * s.clone();
            out.set(r0 + i, c0 + j, v);
        }
    }
}

/// `Delta_m` from `Delta_{m-1}`: the unique nonsplit extension of `L` by the shifted
/// previous layer.
pub fn extend_once<F: Field>(prev: &GradedModule<F>, l: &GradedModule<F>) -> Result<GradedModule<F>> {
    let shift = 2 * l.system().d_of(l.alpha()) as i32;
    let k = prev.shift(shift);
    let ext = extension_space(&k, l)?;
    if ext.dim() != 1 {
        return Err(KlrError::Construction(format!(
            "extension space of L({}) by its shifted layer has dimension {}",
            l.alpha(),
            ext.dim()
        )));
    }
    extension_module(&k, l, &ext, &ext.classes[0])
}

/// Number of layers needed for exactness through `top`.
pub fn layers_for(low: i32, d: i32, top: i32) -> usize {
    if top < low {
        return 1;
    }
    ((top + 1 - low + 2 * d - 1) / (2 * d)).max(1) as usize
}

impl<F: Field> Family<F> {
    fn uses_central(&self) -> bool {
        let d0 = self.sys.datum.d(0);
        match self.path {
            DeltaPath::Central => true,
            DeltaPath::Extensions => false,
            DeltaPath::Auto => (0..self.sys.rank()).all(|i| self.sys.datum.d(i) == d0),
        }
    }

    /// `Delta(alpha)`, exact through degree `top`.
    pub fn delta(&self, alpha: &crate::roots::Weight, top: i32) -> Result<Rc<GradedModule<F>>> {
        if let Some(m) = self.delta.borrow().get(alpha) {
            if m.top().map_or(false, |t| t >= top) {
                return Ok(m.clone());
            }
        }
        let l = self.cuspidal(alpha)?;
        let m = if self.uses_central() { central_standard(&l, top)? } else { self.delta_by_layers(alpha, top)? };
        let m = Rc::new(m);
        self.delta.borrow_mut().insert(alpha.clone(), m.clone());
        Ok(m)
    }

    /// `Delta(alpha)` through iterated extensions, whatever the type.
    pub fn delta_by_layers(&self, alpha: &crate::roots::Weight, top: i32) -> Result<GradedModule<F>> {
        let l = self.cuspidal(alpha)?;
        let low = l.lowest_degree().unwrap();
        let d = self.sys.d_of(alpha) as i32;
        let want = layers_for(low, d, top);
        let mut chain = self.layers.borrow_mut();
        let entry = chain.entry(alpha.clone()).or_insert_with(|| (1, Rc::new((*l).clone())));
        while entry.0 < want {
            let next = extend_once(&entry.1, &l)?;
            *entry = (entry.0 + 1, Rc::new(next));
        }
        Ok(entry.1.truncate(top))
    }

    /// Agreement of the two constructions through `top`, for simply-laced data.
    pub fn cross_check_delta(&self, alpha: &crate::roots::Weight, top: i32) -> Result<bool> {
        let l = self.cuspidal(alpha)?;
        let a = central_standard(&l, top)?;
        let b = self.delta_by_layers(alpha, top)?;
        Ok(Character::of_module(&a) == Character::of_module(&b))
    }
}
