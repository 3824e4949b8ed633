//! Induction products `V_1 o ... o V_m` in the basis `tau_u (x) v_1 (x) ... (x) v_m`,
//! `u` running over minimal left coset representatives of the parabolic subgroup.

use std::collections::HashMap;

use super::graded::{target_key, CompKey, Gen, GradedModule, HVec};
use crate::algebra::{split_parabolic, CosetTerm, Generator, KlrAlgebra, KlrElement, Mono, Perm, Word};
use crate::error::{KlrError, Result};
use crate::linalg::{Field, Matrix};
use crate::roots::Weight;

/// A block of the induced basis: a coset representative and one component per factor.
#[derive(Clone, Debug)]
struct Cell {
    u: Perm,
    parts: Vec<usize>,
    concat: Word,
    comp: usize,
    offset: usize,
    dim: usize,
}

/// An induced module together with the bookkeeping needed to name its vectors.
#[derive(Clone, Debug)]
pub struct Induced<F: Field> {
    pub module: GradedModule<F>,
    pub sizes: Vec<usize>,
    cells: Vec<Cell>,
    cell_index: HashMap<(Perm, Vec<usize>), usize>,
}

fn kron<F: Field>(a: &Matrix<F>, b: &Matrix<F>) -> Matrix<F> {
    let mut m = Matrix::zeros(a.rows() * b.rows(), a.cols() * b.cols());
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            let x = a.get(i, j);
            if x.is_zero() {
                continue;
            }
            for k in 0..b.rows() {
                for l in 0..b.cols() {
                    let y = b.get(k, l);
                    if !y.is_zero() {
                        m.set(i * b.rows() + k, j * b.cols() + l, x.clone() * y.clone());
                    }
                }
            }
        }
    }
    m
}

fn cartesian(dims: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for &d in dims {
        out = out.into_iter().flat_map(|p| (0..d).map(move |k| [p.clone(), vec![k]].concat())).collect();
    }
    out
}

/// Lower bound for `deg tau_u 1_j` over all shuffles of words of the given block weights.
fn crossing_bound(factors: &[&GradedModule<impl Field>]) -> i32 {
    let sys = factors[0].system();
    let mut m = 0;
    for a in 0..factors.len() {
        for b in a + 1..factors.len() {
            let (wa, wb) = (factors[a].alpha(), factors[b].alpha());
            for i in 0..sys.rank() {
                for j in 0..sys.rank() {
                    m += wa.0[i] * wb.0[j] * (-sys.datum.dot(i, j)).min(0);
                }
            }
        }
    }
    m as i32
}

/// Induction product of the factors.
pub fn induce<F: Field>(factors: &[&GradedModule<F>]) -> Result<Induced<F>> {
    if factors.is_empty() {
        return Err(KlrError::Invalid("induction needs at least one factor".into()));
    }
    let sys = factors[0].system().clone();
    for f in factors {
        if f.system().datum != sys.datum {
            return Err(KlrError::Domain("factors over different Cartan data".into()));
        }
        if f.blocks().len() != 1 {
            return Err(KlrError::Domain("cannot induce from a restricted module".into()));
        }
    }
    // height-zero factors are graded vector spaces in degree shifts only
    let mut shift = 0;
    let mut real: Vec<&GradedModule<F>> = Vec::new();
    for f in factors {
        if f.n() == 0 {
            if f.dim() != 1 || !f.is_complete() {
                return Err(KlrError::Domain("height-zero factor must be one-dimensional".into()));
            }
            shift += f.key(0).degree;
        } else {
            real.push(f);
        }
    }
    if real.is_empty() {
        return Err(KlrError::Invalid("induction of height-zero factors only".into()));
    }
    let alpha = real.iter().fold(Weight::zero(sys.rank()), |a, f| a.add(f.alpha()));
    let sizes: Vec<usize> = real.iter().map(|f| f.n()).collect();
    let alg = KlrAlgebra::new(&sys, &alpha)?;

    let lows: Vec<i32> = real.iter().map(|f| f.lowest_degree().unwrap_or(0)).collect();
    let tau_lb = crossing_bound(&real);
    let mut top: Option<i32> = None;
    for (k, f) in real.iter().enumerate() {
        if let Some(t) = f.top() {
            let others: i32 = lows.iter().enumerate().filter(|(l, _)| *l != k).map(|(_, d)| d).sum();
            let b = t + 1 + others + tau_lb - 1 + shift;
            top = Some(top.map_or(b, |x: i32| x.min(b)));
        }
    }

    // cells
    let mut raw: Vec<(CompKey, Perm, Vec<usize>, Word, usize)> = Vec::new();
    let comp_lists: Vec<usize> = real.iter().map(|f| f.num_comps()).collect();
    for parts in cartesian(&comp_lists) {
        let mut concat = Vec::new();
        let mut deg = shift;
        let mut dim = 1;
        for (k, &c) in parts.iter().enumerate() {
            concat.extend_from_slice(&real[k].key(c).word);
            deg += real[k].key(c).degree;
            dim *= real[k].dim_of(c);
        }
        for u in Perm::min_coset_reps(&sizes) {
            let d = deg + alg.tau_degree(&u, &concat);
            if top.map_or(false, |t| d > t) {
                continue;
            }
            raw.push((CompKey::new(d, u.act(&concat)), u, parts.clone(), concat.clone(), dim));
        }
    }
    raw.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.cmp(&b.1)).then_with(|| a.2.cmp(&b.2)));
    let mut comps: Vec<(CompKey, usize)> = Vec::new();
    let mut cells = Vec::new();
    for (key, u, parts, concat, dim) in raw {
        if comps.last().map_or(true, |(k, _)| *k != key) {
            comps.push((key.clone(), 0));
        }
        let last = comps.len() - 1;
        cells.push(Cell { u, parts, concat, comp: last, offset: comps[last].1, dim });
        comps[last].1 += dim;
    }
    let cell_index: HashMap<(Perm, Vec<usize>), usize> =
        cells.iter().enumerate().map(|(k, c)| ((c.u.clone(), c.parts.clone()), k)).collect();
    let mut by_comp: Vec<Vec<usize>> = vec![Vec::new(); comps.len()];
    for (k, c) in cells.iter().enumerate() {
        by_comp[c.comp].push(k);
    }

    let mut deco: HashMap<(Gen, Perm, Word), Vec<CosetTerm>> = HashMap::new();
    let mut mono_cache: HashMap<(usize, Mono, usize), Option<(usize, Matrix<F>)>> = HashMap::new();
    let mut lowered = top;
    let comp_keys: Vec<CompKey> = comps.iter().map(|c| c.0.clone()).collect();
    let comp_dims: Vec<usize> = comps.iter().map(|c| c.1).collect();
    let key_index: HashMap<CompKey, usize> = comp_keys.iter().enumerate().map(|(k, c)| (c.clone(), k)).collect();

    let mut actions: HashMap<(usize, Gen), Matrix<F>> = HashMap::new();
    for s in 0..comps.len() {
        for g in Gen::all(alg.n()) {
            let tk = target_key(&sys, &comp_keys[s], g);
            let Some(&t) = key_index.get(&tk) else { continue };
            let mut mat = Matrix::<F>::zeros(comp_dims[t], comp_dims[s]);
            let mut failed = None;
            'cells: for &ci in &by_comp[s] {
                let cell = &cells[ci];
                let terms = deco
                    .entry((g, cell.u.clone(), cell.concat.clone()))
                    .or_insert_with(|| {
                        let e = KlrElement::from_mono(Mono { w: cell.u.clone(), a: vec![0; alg.n()], i: cell.concat.clone() });
                        let gen = match g {
                            Gen::X(t) => Generator::X(t),
                            Gen::T(r) => Generator::Tau(r),
                        };
                        alg.coset_decompose(&alg.apply_generator(gen, &e), &sizes)
                    })
                    .clone();
                for term in terms {
                    let hs = split_parabolic(&term.h, &sizes);
                    let mut parts = Vec::with_capacity(hs.len());
                    let mut block: Option<Matrix<F>> = None;
                    let mut dead = false;
                    for (k, h) in hs.into_iter().enumerate() {
                        let key = (k, h, cell.parts[k]);
                        let r = match mono_cache.get(&key) {
                            Some(r) => r.clone(),
                            None => match real[k].mono_matrix(&key.1, key.2) {
                                Ok(r) => {
                                    mono_cache.insert(key, r.clone());
                                    r
                                }
                                Err(e) if e.is_refusal() => {
                                    failed = Some(e);
                                    break 'cells;
                                }
                                Err(e) => return Err(e),
                            },
                        };
                        match r {
                            None => {
                                dead = true;
                                break;
                            }
                            Some((c2, m)) => {
                                parts.push(c2);
                                block = Some(match block {
                                    None => m,
                                    Some(b) => kron(&b, &m),
                                });
                            }
                        }
                    }
                    if dead {
                        continue;
                    }
                    let Some(&tc) = cell_index.get(&(term.u.clone(), parts)) else {
                        failed = Some(KlrError::WindowExceeded { required: tk.degree, available: top.unwrap_or(i32::MAX) });
                        break 'cells;
                    };
                    let target = &cells[tc];
                    if target.comp != t {
                        return Err(KlrError::Inconsistent("induced action left its weight space".into()));
                    }
                    let block = block.unwrap().scale(&F::from_i64(term.coeff));
                    for i in 0..block.rows() {
                        for j in 0..block.cols() {
                            let x = block.get(i, j);
                            if !x.is_zero() {
                                let (r, c) = (target.offset + i, cell.offset + j);
                                let v = mat.get(r, c).clone() + x.clone();
                                mat.set(r, c, v);
                            }
                        }
                    }
                }
            }
            match failed {
                Some(_) => {
                    let bad = comp_keys[s].degree.max(tk.degree) - 1;
                    lowered = Some(lowered.map_or(bad, |x| x.min(bad)));
                }
                None => {
                    actions.insert((s, g), mat);
                }
            }
        }
    }

    let mut module = GradedModule::build(&sys, &alpha, top, comps, |src, g, _| {
        let s = key_index[src];
        Ok(actions.remove(&(s, g)))
    })?;
    if lowered != top {
        module = module.truncate(lowered.unwrap());
    }
    // cells above a lowered window disappear with their components
    let module_keys: HashMap<CompKey, usize> = module.keys().iter().cloned().enumerate().map(|(k, c)| (c, k)).collect();
    let mut kept = Vec::new();
    for c in cells {
        if let Some(&k) = module_keys.get(&comp_keys[c.comp]) {
            kept.push(Cell { comp: k, ..c });
        }
    }
    let cell_index = kept.iter().enumerate().map(|(k, c)| ((c.u.clone(), c.parts.clone()), k)).collect();
    Ok(Induced { module, sizes, cells: kept, cell_index })
}

impl<F: Field> Induced<F> {
    /// The vector `tau_u (x) v_1 (x) ... (x) v_m` for homogeneous factor vectors.
    pub fn pure_tensor(&self, u: &Perm, vs: &[HVec<F>]) -> Result<HVec<F>> {
        let parts: Vec<usize> = vs.iter().map(|v| v.0).collect();
        let &ci = self
            .cell_index
            .get(&(u.clone(), parts))
            .ok_or_else(|| KlrError::WindowExceeded { required: i32::MAX, available: self.module.top().unwrap_or(i32::MAX) })?;
        let cell = &self.cells[ci];
        let mut coords = vec![F::one()];
        for (_, v) in vs {
            coords = coords.iter().flat_map(|a| v.iter().map(move |b| a.clone() * b.clone())).collect();
        }
        let mut out = vec![F::zero(); self.module.dim_of(cell.comp)];
        out[cell.offset..cell.offset + cell.dim].clone_from_slice(&coords);
        Ok((cell.comp, out))
    }

    /// `1 (x) v_1 (x) ... (x) v_m`.
    pub fn unit_tensor(&self, vs: &[HVec<F>]) -> Result<HVec<F>> {
        self.pure_tensor(&Perm::identity(self.sizes.iter().sum()), vs)
    }
}

impl<F: Field> GradedModule<F> {
    /// Convenience wrapper returning only the induced module.
    pub fn circ(&self, other: &GradedModule<F>) -> Result<GradedModule<F>> {
        Ok(induce(&[self, other])?.module)
    }
}
