//! Standard modules of root powers, `Delta(alpha^m) = q_alpha^{m(m-1)/2} Delta(alpha)^{o m} e`
//! for a primitive idempotent `e` of degree zero.
//!
//! The degree-zero endomorphisms of `Delta(alpha)^{o m}` are computed from a presentation
//! and checked to intertwine the action. Idempotents are split by generalized eigenspaces
//! of elements of the corner algebras until no element separates them; among the
//! primitive pieces the one reaching lowest degree is `q_alpha^{-m(m-1)/2} Delta(alpha^m)`.

use std::rc::Rc;

use super::family::Family;
use crate::error::{KlrError, Result};
use crate::linalg::{Field, LaurentSeries, Matrix, Subspace};
use crate::modules::{decompose_character, induce, unique_head, Character, GradedModule, ModuleMap, Presentation};
use crate::roots::Weight;

/// A degree-zero endomorphism as one square block per component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Endo<F: Field> {
    pub blocks: Vec<Matrix<F>>,
}

impl<F: Field> Endo<F> {
    pub fn identity(m: &GradedModule<F>) -> Self {
        Endo { blocks: (0..m.num_comps()).map(|c| Matrix::identity(m.dim_of(c))).collect() }
    }

    fn from_map(m: &GradedModule<F>, f: &ModuleMap<F>) -> Result<Self> {
        let blocks = (0..m.num_comps())
            .map(|c| match &f.blocks[c] {
                Some((t, a)) if *t == c => Ok(a.clone()),
                Some(_) => Err(KlrError::Inconsistent("degree-zero endomorphism moves a component".into())),
                None if m.dim_of(c) == 0 => Ok(Matrix::zeros(0, 0)),
                None => Err(refusal("endomorphism undetermined on a component", m.top())),
            })
            .collect::<Result<_>>()?;
        Ok(Endo { blocks })
    }

    pub fn mul(&self, o: &Self) -> Self {
        Endo { blocks: self.blocks.iter().zip(&o.blocks).map(|(a, b)| a.mul(b)).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        Endo { blocks: self.blocks.iter().zip(&o.blocks).map(|(a, b)| a.sub(b)).collect() }
    }

    pub fn add(&self, o: &Self) -> Self {
        Endo { blocks: self.blocks.iter().zip(&o.blocks).map(|(a, b)| a.add(b)).collect() }
    }

    pub fn rank(&self) -> usize {
        self.blocks.iter().map(|b| b.rank()).sum()
    }

    pub fn is_idempotent(&self) -> bool {
        self.mul(self) == *self
    }

    pub fn to_map(&self) -> ModuleMap<F> {
        ModuleMap { blocks: self.blocks.iter().enumerate().map(|(c, b)| Some((c, b.clone()))).collect() }
    }
}

/// Degree-zero endomorphisms of a module, verified to intertwine the action on its window.
pub fn degree_zero_endomorphisms<F: Field>(m: &GradedModule<F>) -> Result<Vec<Endo<F>>> {
    let p = Presentation::auto(m, m.top())?;
    let h = p.hom_space(m, 0)?;
    let mut out = Vec::new();
    for b in &h.basis {
        let f = p.map_from(m, 0, b)?;
        if !f.commutes(m, m)? {
            return Err(refusal("a candidate endomorphism does not intertwine the action", m.top()));
        }
        out.push(Endo::from_map(m, &f)?);
    }
    Ok(out)
}

fn refusal(what: &str, top: Option<i32>) -> KlrError {
    let available = top.unwrap_or(i32::MAX);
    KlrError::InsufficientTrust { what: what.into(), required: available.saturating_add(1), available }
}

/// Eigenvalue candidates: all of a small prime field, small integers over the rationals.
fn eigen_candidates<F: Field>() -> Vec<F> {
    match F::characteristic() {
        0 => (-12..=12).map(F::from_i64).collect(),
        p if p < 1000 => (0..p as i64).map(F::from_i64).collect(),
        _ => (-12..=12).map(F::from_i64).collect(),
    }
}

/// Column basis of the image of a square matrix.
fn image_basis<F: Field>(a: &Matrix<F>) -> Vec<Vec<F>> {
    let mut s = Subspace::new(a.rows());
    let mut out = Vec::new();
    for j in 0..a.cols() {
        let v = a.column(j);
        if s.insert(v.clone()) {
            out.push(v);
        }
    }
    out
}

fn power<F: Field>(a: &Matrix<F>, k: usize) -> Matrix<F> {
    let mut r = Matrix::identity(a.rows());
    for _ in 0..k {
        r = r.mul(a);
    }
    r
}

/// Splits `e` along the generalized `lambda`-eigenspace of `b = e b e`, if that is a proper
/// nonzero part of the image of `e`.
fn split<F: Field>(e: &Endo<F>, b: &Endo<F>, lambda: &F) -> Option<Endo<F>> {
    let mut blocks = Vec::with_capacity(e.blocks.len());
    let (mut some, mut all) = (false, true);
    for (ec, bc) in e.blocks.iter().zip(&b.blocks) {
        let n = ec.rows();
        let img = image_basis(ec);
        if img.is_empty() {
            blocks.push(Matrix::zeros(n, n));
            continue;
        }
        let k = img.len();
        let basis = Matrix::from_columns(&img, n);
        // matrix of b on the image of e, in the basis `img`
        let mut cols = Vec::with_capacity(k);
        let mut coords = Vec::new();
        for v in &img {
            let w = bc.mul_vec(v);
            coords.push(basis.solve(&w)?);
        }
        let bm = Matrix::from_columns(&coords, k);
        let shifted = bm.sub(&Matrix::identity(k).scale(lambda));
        let nk = power(&shifted, k);
        let gen = nk.kernel();
        let rest = image_basis(&nk);
        if !gen.is_empty() {
            some = true;
        }
        if gen.len() < k {
            all = false;
        }
        // basis of the whole component: kernel of e, then G, then R (both in ambient coords)
        for v in ec.kernel() {
            cols.push(v);
        }
        let kdim = cols.len();
        for g in &gen {
            cols.push(basis.mul_vec(g));
        }
        for r in &rest {
            cols.push(basis.mul_vec(r));
        }
        let p = Matrix::from_columns(&cols, n);
        let pinv = p.inverse()?;
        let mut d = Matrix::zeros(n, n);
        for i in kdim..kdim + gen.len() {
            d.set(i, i, F::one());
        }
        blocks.push(p.mul(&d).mul(&pinv));
    }
    (some && !all).then_some(Endo { blocks })
}

/// A complete family of orthogonal primitive idempotents summing to `e`, as far as the
/// elements of the corner algebras can separate them.
pub fn primitive_idempotents<F: Field>(algebra: &[Endo<F>], e: &Endo<F>) -> Vec<Endo<F>> {
    let mut todo = vec![e.clone()];
    let mut done = Vec::new();
    let lambdas = eigen_candidates::<F>();
    'outer: while let Some(e) = todo.pop() {
        let mut probes: Vec<Endo<F>> = algebra.iter().map(|a| e.mul(a).mul(&e)).collect();
        let n = probes.len();
        for i in 0..n {
            for j in 0..n {
                probes.push(probes[i].mul(&probes[j]));
            }
            for j in i + 1..n {
                probes.push(probes[i].add(&probes[j]));
            }
        }
        for b in &probes {
            for l in &lambdas {
                if let Some(f) = split(&e, b, l) {
                    let g = e.sub(&f);
                    todo.push(f);
                    todo.push(g);
                    continue 'outer;
                }
            }
        }
        done.push(e);
    }
    done
}

impl<F: Field> Family<F> {
    /// `Delta(alpha^m)`, exact through degree `top`.
    pub fn delta_power(&self, alpha: &Weight, m: usize, top: i32) -> Result<Rc<GradedModule<F>>> {
        if m == 0 {
            return Err(KlrError::Invalid("power must be positive".into()));
        }
        if m == 1 {
            return self.delta(alpha, top);
        }
        if let Some(d) = self.power.borrow().get(&(alpha.clone(), m)) {
            if d.top().map_or(false, |t| t >= top) {
                return Ok(d.clone());
            }
        }
        let dal = self.sys.d_of(alpha) as i32;
        let shift = dal * (m * (m - 1) / 2) as i32;
        let low = self.cuspidal(alpha)?.lowest_degree().unwrap();
        let want = top - shift;
        let mut t1 = want - (m as i32 - 1) * low;
        let product = loop {
            let d = self.delta(alpha, t1)?;
            let factors = vec![d.as_ref(); m];
            let p = induce(&factors)?.module;
            if p.top().map_or(false, |t| t >= want) {
                break p.truncate(want);
            }
            t1 += 2 * dal;
        };
        let algebra = degree_zero_endomorphisms(&product)?;
        let one = Endo::identity(&product);
        let prims = primitive_idempotents(&algebra, &one);
        let mut best: Option<(i32, GradedModule<F>, Endo<F>)> = None;
        for e in prims {
            if !e.is_idempotent() {
                return Err(refusal("split idempotent is not idempotent", product.top()));
            }
            let img = product.image_of(&e.to_map())?;
            let lo = img.lowest_degree().unwrap_or(i32::MAX);
            if best.as_ref().map_or(true, |b| lo < b.0) {
                best = Some((lo, img, e));
            }
        }
        let (_, img, _) = best.ok_or_else(|| KlrError::Construction("no idempotent found".into()))?;
        let out = img.shift(shift);
        self.check_power_character(alpha, m, &out)?;
        let out = Rc::new(out);
        self.power.borrow_mut().insert((alpha.clone(), m), out.clone());
        Ok(out)
    }

    /// `[Delta(alpha^m) : L(alpha^m)] = 1 / prod_r (1 - q_alpha^{2r})` on the window.
    fn check_power_character(&self, alpha: &Weight, m: usize, d: &GradedModule<F>) -> Result<()> {
        let l = self.cuspidal(alpha)?;
        let factors = vec![l.as_ref(); m];
        let (head, _) = unique_head(&induce(&factors)?.module)?;
        let dec = decompose_character(&Character::of_module(d), &[Character::of_module(&head)])?;
        let dal = self.sys.d_of(alpha) as i32;
        let top = d.top().unwrap_or(i32::MAX);
        let expect = LaurentSeries::inverse_product(2 * dal, m as u32, top);
        if !dec.mult[0].agrees_with(&expect) {
            let what = format!(
                "idempotent image with multiplicity {} instead of {}",
                dec.mult[0].to_laurent_string(),
                expect.to_laurent_string()
            );
            return Err(refusal(&what, d.top()));
        }
        Ok(())
    }
}
