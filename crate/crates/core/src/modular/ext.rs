//! Graded `Ext^1` between standard modules, bounded from a free cover.
//!
//! `Delta(lambda)` is cyclic on a vector `v` of word `i` and degree `e`, so it is a quotient
//! of `P = H 1_i`, which is induced from polynomial rings in one variable. With
//! `K = ker(P -> Delta(lambda))` we have `Ext^1(Delta(lambda), N) = coker(Hom(P, N) -> Hom(K, N))`.
//! `Hom(K, N)` is over-approximated by dropping relations above the annihilator bound,
//! which only enlarges it, so the cokernel dimension is an upper bound, provided `K` is
//! generated in degrees up to the generator bound. It is exact only when it is zero.

use serde::Serialize;

use crate::error::{KlrError, Result};
use crate::linalg::{Field, Subspace, Q};
use crate::modules::{induce, CompKey, GradedModule, HVec, Presentation};
use crate::roots::{bilex_less, kostant_partitions, KostantPartition, RootSystem, Weight};
use crate::standard::{Family, HomVanishingReport};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Ext1Degree {
    pub degree: i32,
    pub lower: usize,
    pub upper: usize,
    pub exact: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Ext1Window {
    pub lambda: String,
    pub mu: String,
    pub field: String,
    pub max_degree: i32,
    pub ann_degree: i32,
    /// Generators of the kernel are searched in degrees up to this bound.
    pub gen_degree: i32,
    /// Degree of the cyclic generator of `Delta(lambda)`.
    pub generator_degree: i32,
    pub degrees: Vec<Ext1Degree>,
    pub semantics: String,
}

impl Ext1Window {
    pub fn upper(&self, d: i32) -> usize {
        self.degrees.iter().find(|x| x.degree == d).map_or(0, |x| x.upper)
    }

    pub fn is_exact(&self) -> bool {
        self.degrees.iter().all(|x| x.exact)
    }
}

const SEMANTICS: &str = "upper: dim of Hom(K, N) candidates modulo restrictions of Hom(P, N), \
valid if K is generated in degrees <= gen_degree; lower: 0 unless upper is 0; exact iff lower = upper";

/// Largest degree of a generator of the algebra.
fn max_gen_degree(sys: &RootSystem) -> i32 {
    let r = sys.rank();
    (0..r)
        .flat_map(|i| (0..r).map(move |j| (i, j)))
        .map(|(i, j)| (-sys.datum.dot(i, j) as i32).max(2 * sys.datum.d(i) as i32))
        .max()
        .unwrap_or(2)
}

/// `H 1_i` through degree `top`, with its generator `1_i`.
fn free_cover<F: Field>(family: &Family<F>, word: &[u8], top: i32) -> Result<(GradedModule<F>, HVec<F>)> {
    let sys = family.system();
    let mut t = top;
    loop {
        let factors = word.iter().map(|&i| family.delta(&sys.simple(i as usize), t)).collect::<Result<Vec<_>>>()?;
        let refs: Vec<&GradedModule<F>> = factors.iter().map(|f| f.as_ref()).collect();
        let ind = induce(&refs)?;
        if ind.module.top().map_or(true, |x| x >= top) {
            let unit = ind.unit_tensor(&refs.iter().map(|f| f.basis_vector(0, 0)).collect::<Vec<_>>())?;
            let p = ind.module.truncate(top);
            let c = p.comp(ind.module.key(unit.0)).ok_or_else(|| KlrError::Construction("unit outside the window".into()))?;
            return Ok((p, (c, unit.1)));
        }
        t += 2;
    }
}

/// A vector generating every component of degree `<= upto`, searched among basis vectors
/// and component sums in degrees `<= search`.
fn cyclic_generator<F: Field>(m: &GradedModule<F>, search: i32, upto: i32) -> Result<HVec<F>> {
    let mut order: Vec<usize> = (0..m.num_comps()).filter(|&c| m.key(c).degree <= search).collect();
    order.sort_by_key(|&c| (m.key(c).degree, c));
    for c in order {
        let n = m.dim_of(c);
        let mut tries: Vec<Vec<F>> = (0..n).map(|k| m.basis_vector(c, k).1).collect();
        if n > 1 {
            tries.push(vec![F::one(); n]);
        }
        for v in tries {
            let span = m.spin(&[(c, v.clone())]);
            if (0..m.num_comps()).all(|k| m.key(k).degree > upto || span[k].dim() == m.dim_of(k)) {
                return Ok((c, v));
            }
        }
    }
    Err(KlrError::Construction("no cyclic generator found in the window".into()))
}

/// Images of homogeneous vectors, flattened into one coordinate vector over generator
/// slots, or `None` when a slot has no target component.
fn flatten<F: Field>(slots: &[Option<(usize, usize)>], total: usize, images: &[Option<HVec<F>>]) -> Vec<F> {
    let mut v = vec![F::zero(); total];
    for (s, img) in slots.iter().zip(images) {
        if let (Some((_, off)), Some((_, x))) = (s, img) {
            v[*off..*off + x.len()].clone_from_slice(x);
        }
    }
    v
}

/// Bounds on `dim Ext^1(Delta(lambda), Delta(mu))_d` for `d <= max_deg`.
pub fn ext1_window<F: Field>(
    family: &Family<F>,
    lambda: &KostantPartition,
    mu: &KostantPartition,
    max_deg: i32,
    ann_deg: i32,
) -> Result<Ext1Window> {
    let sys = family.system();
    let g = max_gen_degree(sys);
    let gen_deg = ann_deg - 2 * g;
    let low = family.standard(lambda, 0)?.lowest_degree().unwrap();
    let m0 = family.standard(lambda, low + 4 * g)?;
    let e = m0.key(cyclic_generator(&m0, low + g, low + 2 * g)?.0).degree;
    let top_p = ann_deg + 2 * g;
    let m = family.standard(lambda, e + top_p + 2 * g)?;
    let v = cyclic_generator(&m, e, e + top_p)?;
    let e = m.key(v.0).degree;
    let word = m.key(v.0).word.clone();

    let (p, u) = free_cover(family, &word, top_p)?;
    let pres_p = Presentation::cyclic(&p, u.clone(), Some(top_p))?;
    let pi = pres_p.map_from(&m, e, &[Some(v.clone())])?;
    if !pi.commutes(&p, &m)? {
        return Err(KlrError::Inconsistent("cover map does not intertwine".into()));
    }
    // kernel on the annihilator window
    let pa = p.truncate(ann_deg);
    let kernels = pi.kernel_spaces(&p);
    let mut spaces = Vec::with_capacity(pa.num_comps());
    for c in 0..pa.num_comps() {
        let pc = p.comp(pa.key(c)).unwrap();
        if pi.blocks[pc].is_none() && m.comp(&CompKey::new(pa.key(c).degree + e, pa.key(c).word.clone())).is_some() {
            return Err(KlrError::InsufficientTrust { what: "cover map".into(), required: pa.key(c).degree + e, available: m.top().unwrap_or(i32::MAX) });
        }
        spaces.push(kernels[pc].clone());
    }
    let k = pa.submodule(&spaces)?;
    let kgens = Presentation::auto(&k, Some(gen_deg))?.generators().to_vec();
    let pres_k = Presentation::new(&k, kgens.clone(), Some(ann_deg))?;
    // kernel generators as vectors of P
    let kgens_p: Vec<HVec<F>> = kgens
        .iter()
        .map(|(c, x)| {
            let pc = p.comp(k.key(*c)).unwrap();
            let ac = pa.comp(k.key(*c)).unwrap();
            let mut w = vec![F::zero(); p.dim_of(pc)];
            for (a, b) in x.iter().zip(spaces[ac].basis()) {
                for (wi, bi) in w.iter_mut().zip(b) {
                    *wi = wi.clone() + a.clone() * bi.clone();
                }
            }
            (pc, w)
        })
        .collect();

    let pres_pa = Presentation::cyclic(&p, u, Some(ann_deg))?;
    let n = family.standard(mu, ann_deg + max_deg + e)?;
    let lo = n.lowest_degree().unwrap() - gen_deg - e;
    let mut degrees = Vec::new();
    for d in lo.min(max_deg)..=max_deg {
        let h = pres_k.hom_space(&n, d + e)?;
        // slots of the kernel generators in the target
        let mut slots = Vec::with_capacity(kgens.len());
        let mut total = 0;
        for (c, _) in &kgens {
            let key = k.key(*c);
            match n.comp(&CompKey::new(key.degree + d + e, key.word.clone())) {
                Some(t) => {
                    slots.push(Some((t, total)));
                    total += n.dim_of(t);
                }
                None => slots.push(None),
            }
        }
        let cands: Vec<Vec<F>> = h.basis.iter().map(|b| flatten(&slots, total, b)).collect();
        let mut restr = Subspace::new(total);
        if let Some(tc) = n.comp(&CompKey::new(d + e, word.clone())) {
            for y in 0..n.dim_of(tc) {
                let f = pres_pa.map_from(&n, d + e, &[Some(n.basis_vector(tc, y))])?;
                let imgs = kgens_p
                    .iter()
                    .map(|(pc, x)| match &f.blocks[*pc] {
                        Some((t, a)) => Ok(Some((*t, a.mul_vec(x)))),
                        None if n.comp(&CompKey::new(p.key(*pc).degree + d + e, p.key(*pc).word.clone())).is_none() => Ok(None),
                        None => Err(KlrError::InsufficientTrust { what: "restriction of a free map".into(), required: ann_deg, available: p.key(*pc).degree }),
                    })
                    .collect::<Result<Vec<_>>>()?;
                restr.insert(flatten(&slots, total, &imgs));
            }
        }
        let mut span = Subspace::new(total);
        for c in &cands {
            span.insert(c.clone());
        }
        if restr.basis().iter().any(|r| !span.contains(r)) {
            return Err(KlrError::Inconsistent(format!("a restricted map is not a Hom candidate in degree {}", d)));
        }
        let upper = cands.len() - restr.dim();
        degrees.push(Ext1Degree { degree: d, lower: 0, upper, exact: upper == 0 });
    }
    Ok(Ext1Window {
        lambda: lambda.to_string(),
        mu: mu.to_string(),
        field: F::tag(),
        max_degree: max_deg,
        ann_degree: ann_deg,
        gen_degree: gen_deg,
        generator_degree: e,
        degrees,
        semantics: SEMANTICS.into(),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct TorsionDegree {
    pub degree: i32,
    pub rational: usize,
    pub modular: usize,
    /// Rank of the torsion of `Ext^2` over the integral form in this degree.
    pub difference: i64,
}

#[derive(Clone, Debug, Serialize)]
pub struct TorsionReport {
    pub lambda: String,
    pub mu: String,
    pub p: u64,
    pub comparable_below: bool,
    /// `Hom(Delta(lambda), Delta(mu))` vanishes in the window over both fields.
    pub hom_vanishing: bool,
    pub degrees: Vec<TorsionDegree>,
    /// Both windows are exact in every degree.
    pub exact: bool,
    pub torsion_free: bool,
    pub verdict: String,
}

fn hom_pair(r: &HomVanishingReport, lambda: &KostantPartition, mu: &KostantPartition) -> bool {
    let (l, m) = (lambda.to_string(), mu.to_string());
    r.pairs.iter().filter(|x| x.lambda == l && x.mu == m).all(|x| x.pass)
}

fn compare<F: Field>(
    rational: &Family<Q>,
    modular: &Family<F>,
    lambda: &KostantPartition,
    mu: &KostantPartition,
    max_deg: i32,
    ann_deg: i32,
    hom_vanishing: bool,
) -> Result<TorsionReport> {
    let p = F::characteristic();
    let eq = ext1_window(rational, lambda, mu, max_deg, ann_deg)?;
    let ep = ext1_window(modular, lambda, mu, max_deg, ann_deg)?;
    let mut degs: Vec<i32> = eq.degrees.iter().chain(&ep.degrees).map(|x| x.degree).collect();
    degs.sort();
    degs.dedup();
    let mut degrees = Vec::new();
    for d in degs {
        let (a, b) = (eq.upper(d), ep.upper(d));
        let difference = b as i64 - a as i64;
        if difference < 0 {
            return Err(KlrError::Inconsistent(format!(
                "Ext^1 over F_{} is smaller than over Q in degree {} for {} and {}",
                p, d, lambda, mu
            )));
        }
        degrees.push(TorsionDegree { degree: d, rational: a, modular: b, difference });
    }
    let exact = eq.is_exact() && ep.is_exact();
    let torsion_free = degrees.iter().all(|x| x.difference == 0);
    let verdict = match (torsion_free, exact) {
        (true, true) => format!("Ext^2({}, {}) has no {}-torsion in the window", lambda, mu, p),
        (true, false) => format!("Ext^1 bounds agree over Q and F_{}: no {}-torsion in Ext^2({}, {}) detected", p, p, lambda, mu),
        (false, _) => format!("Ext^1 bounds differ over Q and F_{}: {}-torsion in Ext^2({}, {}) indicated", p, p, lambda, mu),
    };
    Ok(TorsionReport {
        lambda: lambda.to_string(),
        mu: mu.to_string(),
        p,
        comparable_below: bilex_less(rational.order(), lambda, mu),
        hom_vanishing,
        degrees,
        exact,
        torsion_free,
        verdict,
    })
}

/// Compares `Ext^1` windows over the rationals and over `F_p`; a positive difference is
/// the rank of the `p`-torsion of `Ext^2` over the integral form.
pub fn torsion_report<F: Field>(
    rational: &Family<Q>,
    modular: &Family<F>,
    lambda: &KostantPartition,
    mu: &KostantPartition,
    max_deg: i32,
    ann_deg: i32,
) -> Result<TorsionReport> {
    let alpha = lambda.weight();
    let hom = lambda == mu || {
        let q = rational.verify_hom_vanishing(&alpha, max_deg, ann_deg)?;
        let f = modular.verify_hom_vanishing(&alpha, max_deg, ann_deg)?;
        hom_pair(&q, lambda, mu) && hom_pair(&f, lambda, mu)
    };
    compare(rational, modular, lambda, mu, max_deg, ann_deg, hom)
}

/// Torsion reports for all ordered pairs of Kostant partitions of `alpha`.
pub fn torsion_reports<F: Field>(
    rational: &Family<Q>,
    modular: &Family<F>,
    alpha: &Weight,
    max_deg: i32,
    ann_deg: i32,
) -> Result<Vec<TorsionReport>> {
    let q = rational.verify_hom_vanishing(alpha, max_deg, ann_deg)?;
    let f = modular.verify_hom_vanishing(alpha, max_deg, ann_deg)?;
    let kps = kostant_partitions(rational.order(), alpha);
    let mut out = Vec::new();
    for l in &kps {
        for m in &kps {
            let hom = l == m || (hom_pair(&q, l, m) && hom_pair(&f, l, m));
            out.push(compare(rational, modular, l, m, max_deg, ann_deg, hom)?);
        }
    }
    Ok(out)
}

/// Upper bounds computed with two annihilator bounds; the larger bound never gives more.
pub fn ext1_stable<F: Field>(family: &Family<F>, lambda: &KostantPartition, mu: &KostantPartition, max_deg: i32, ann_deg: i32, wider: i32) -> Result<(Ext1Window, Ext1Window, bool)> {
    let a = ext1_window(family, lambda, mu, max_deg, ann_deg)?;
    let b = ext1_window(family, lambda, mu, max_deg, wider)?;
    let agree = a.degrees.iter().all(|x| x.upper == b.upper(x.degree)) && b.degrees.iter().all(|x| x.upper == a.upper(x.degree));
    Ok((a, b, agree))
}
