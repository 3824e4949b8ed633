//! Degree-zero extensions `0 -> K -> E -> L -> 0` of finite-dimensional modules.
//!
//! An extension is the direct sum `K + L` with every generator acting by a block upper
//! triangular matrix `[[g_K, Y_g], [0, g_L]]`. The defining relations are linear in the
//! blocks `Y`, so the cocycles form the kernel of one linear system; coboundaries are the
//! `Y_g = g_K phi - phi g_L` for degree-zero linear maps `phi: L -> K`.

use std::collections::{BTreeMap, HashMap};

use super::graded::{defining_relations, target_key, Act, CompKey, Gen, GradedModule};
use crate::error::{KlrError, Result};
use crate::linalg::{Field, Matrix, Subspace};

/// Position of one block `Y_g: L_c -> K_t` inside the cocycle vector.
#[derive(Clone, Debug)]
struct Slot {
    k_comp: usize,
    offset: usize,
}

/// Cocycles modulo coboundaries for a pair `(K, L)`.
pub struct ExtSpace<F: Field> {
    slots: HashMap<(usize, Gen), Slot>,
    len: usize,
    /// Cocycles whose classes form a basis of `Ext^1(L, K)` in degree zero.
    pub classes: Vec<Vec<F>>,
    pub cocycle_dim: usize,
    pub coboundary_dim: usize,
}

impl<F: Field> ExtSpace<F> {
    pub fn dim(&self) -> usize {
        self.classes.len()
    }
}

fn block<F: Field>(m: &GradedModule<F>, c: usize, g: Gen) -> Result<Option<(usize, &Matrix<F>)>> {
    match m.action(c, g) {
        Act::Zero => Ok(None),
        Act::Map(t, a) => Ok(Some((*t, a))),
        Act::Unknown => Err(KlrError::InfiniteDimensional),
    }
}

/// Applies a generator word (rightmost first) to the identity block of component `c`.
fn run<F: Field>(m: &GradedModule<F>, word: &[Gen], c: usize) -> Result<Option<(usize, Matrix<F>)>> {
    let mut cur = (c, Matrix::identity(m.dim_of(c)));
    for &g in word.iter().rev() {
        match block(m, cur.0, g)? {
            Some((t, a)) => cur = (t, a.mul(&cur.1)),
            None => return Ok(None),
        }
    }
    Ok(Some(cur))
}

pub fn extension_space<F: Field>(k: &GradedModule<F>, l: &GradedModule<F>) -> Result<ExtSpace<F>> {
    if !k.is_complete() || !l.is_complete() {
        return Err(KlrError::InfiniteDimensional);
    }
    if k.alpha() != l.alpha() {
        return Err(KlrError::WeightMismatch("extension of modules of different weights".into()));
    }
    let sys = l.system();
    let mut slots = HashMap::new();
    let mut len = 0;
    for c in 0..l.num_comps() {
        for g in l.gens() {
            if let Some(t) = k.comp(&target_key(sys, l.key(c), g)) {
                slots.insert((c, g), Slot { k_comp: t, offset: len });
                len += k.dim_of(t) * l.dim_of(c);
            }
        }
    }
    let mut rows: Vec<Vec<F>> = Vec::new();
    for c in 0..l.num_comps() {
        for (_, sum) in defining_relations(sys, &l.key(c).word) {
            let mut eqs: BTreeMap<(usize, usize, usize), BTreeMap<usize, F>> = BTreeMap::new();
            for (coeff, word) in &sum {
                let coeff = F::from_i64(*coeff);
                for s in 0..word.len() {
                    let Some((mid, r)) = run(l, &word[s + 1..], c)? else { continue };
                    let Some(slot) = slots.get(&(mid, word[s])) else { continue };
                    let Some((fin, left)) = run(k, &word[..s], slot.k_comp)? else { continue };
                    let (kd, ld) = (k.dim_of(slot.k_comp), l.dim_of(mid));
                    for i in 0..left.rows() {
                        for j in 0..r.cols() {
                            let eq = eqs.entry((fin, i, j)).or_default();
                            for a in 0..kd {
                                let la = left.get(i, a);
                                if la.is_zero() {
                                    continue;
                                }
                                for b in 0..ld {
                                    let rb = r.get(b, j);
                                    if rb.is_zero() {
                                        continue;
                                    }
                                    let e = eq.entry(slot.offset + a * ld + b).or_insert_with(F::zero);
                                    *e = e.clone() + coeff.clone() * la.clone() * rb.clone();
                                }
                            }
                        }
                    }
                }
            }
            for (_, eq) in eqs {
                if eq.values().all(|v| v.is_zero()) {
                    continue;
                }
                let mut row = vec![F::zero(); len];
                for (i, v) in eq {
                    row[i] = v;
                }
                rows.push(row);
            }
        }
    }
    let cocycles = if rows.is_empty() {
        (0..len).map(|i| unit(len, i)).collect()
    } else {
        Matrix::from_rows(rows, len).kernel()
    };
    // coboundaries of the elementary maps phi = E_ab on L_c -> K_c
    let mut bounds = Subspace::new(len);
    for c in 0..l.num_comps() {
        let Some(kc) = k.comp(l.key(c)) else { continue };
        for a in 0..k.dim_of(kc) {
            for b in 0..l.dim_of(c) {
                let mut y = vec![F::zero(); len];
                // g_K phi on L_c
                for g in l.gens() {
                    let (Some(slot), Some((_, ka))) = (slots.get(&(c, g)), block(k, kc, g)?) else { continue };
                    let ld = l.dim_of(c);
                    for i in 0..ka.rows() {
                        let v = ka.get(i, a);
                        if !v.is_zero() {
                            let e = &mut y[slot.offset + i * ld + b];
                            *e = e.clone() + v.clone();
                        }
                    }
                }
                // - phi g_L on every L_s mapping into L_c
                for s in 0..l.num_comps() {
                    for g in l.gens() {
                        let Some((t, la)) = block(l, s, g)? else { continue };
                        if t != c {
                            continue;
                        }
                        let slot = slots.get(&(s, g)).expect("coboundary slot exists");
                        let ld = l.dim_of(s);
                        for j in 0..ld {
                            let v = la.get(b, j);
                            if !v.is_zero() {
                                let e = &mut y[slot.offset + a * ld + j];
                                *e = e.clone() - v.clone();
                            }
                        }
                    }
                }
                bounds.insert(y);
            }
        }
    }
    let coboundary_dim = bounds.dim();
    let mut classes = Vec::new();
    for z in &cocycles {
        if bounds.insert(z.clone()) {
            classes.push(z.clone());
        }
    }
    Ok(ExtSpace { slots, len, classes, cocycle_dim: cocycles.len(), coboundary_dim })
}

fn unit<F: Field>(n: usize, i: usize) -> Vec<F> {
    let mut v = vec![F::zero(); n];
    v[i] = F::one();
    v
}

/// The middle term of the extension given by a cocycle of `ext`.
pub fn extension_module<F: Field>(
    k: &GradedModule<F>,
    l: &GradedModule<F>,
    ext: &ExtSpace<F>,
    cocycle: &[F],
) -> Result<GradedModule<F>> {
    if cocycle.len() != ext.len {
        return Err(KlrError::Invalid("cocycle of the wrong length".into()));
    }
    let mut comps: BTreeMap<CompKey, usize> = BTreeMap::new();
    for c in 0..k.num_comps() {
        *comps.entry(k.key(c).clone()).or_default() += k.dim_of(c);
    }
    for c in 0..l.num_comps() {
        *comps.entry(l.key(c).clone()).or_default() += l.dim_of(c);
    }
    let kdim = |key: &CompKey| k.comp(key).map_or(0, |c| k.dim_of(c));
    GradedModule::build(l.system(), l.alpha(), None, comps.into_iter().collect(), |src, g, tgt| {
        let (ks, kt) = (kdim(src), kdim(tgt));
        let mut m = Matrix::zeros(kt + l.comp(tgt).map_or(0, |c| l.dim_of(c)), ks + l.comp(src).map_or(0, |c| l.dim_of(c)));
        if let Some(c) = k.comp(src) {
            if let Some((_, a)) = block(k, c, g)? {
                place(&mut m, 0, 0, a);
            }
        }
        if let Some(c) = l.comp(src) {
            if let Some((_, a)) = block(l, c, g)? {
                place(&mut m, kt, ks, a);
            }
            if let Some(slot) = ext.slots.get(&(c, g)) {
                let ld = l.dim_of(c);
                for i in 0..k.dim_of(slot.k_comp) {
                    for j in 0..ld {
                        m.set(i, ks + j, cocycle[slot.offset + i * ld + j].clone());
                    }
                }
            }
        }
        Ok(Some(m))
    })
}

fn place<F: Field>(m: &mut Matrix<F>, r0: usize, c0: usize, a: &Matrix<F>) {
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            m.set(r0 + i, c0 + j, a.get(i, j).clone());
        }
    }
}
