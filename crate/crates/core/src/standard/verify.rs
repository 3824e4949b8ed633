//! Checks of Hom-vanishing between standard modules, injectivity of their endomorphisms and
//! freeness of cuspidal standard modules, within explicit degree windows.

use serde::Serialize;

use super::family::Family;
use crate::error::{KlrError, Result};
use crate::linalg::{Field, LaurentSeries, Matrix};
use crate::modules::{Act, Gen, GradedModule, Presentation};
use crate::roots::{bilex_leq, kostant_partitions, KostantPartition, Weight};

#[derive(Clone, Debug, Serialize)]
pub struct PairReport {
    pub lambda: String,
    pub mu: String,
    /// `lambda <= mu` in the bilexicographic order.
    pub comparable_below: bool,
    /// Candidate Hom dimension per degree.
    pub dims: Vec<(i32, usize)>,
    /// Set when the window could not certify some degree.
    pub refusal: Option<String>,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct HomVanishingReport {
    pub alpha: String,
    pub field: String,
    pub max_degree: i32,
    pub ann_degree: i32,
    pub pairs: Vec<PairReport>,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct EndRingReport {
    pub lambda: String,
    pub field: String,
    pub max_degree: i32,
    pub ann_degree: i32,
    /// Candidate endomorphism dimension per degree.
    pub dims: Vec<(i32, usize)>,
    /// Coefficients of `prod_i prod_r 1/(1 - q_i^{2r})`.
    pub expected: Vec<(i32, i64)>,
    /// Per degree, whether each basis candidate is injective on every certified component.
    pub injective: Vec<(i32, Vec<bool>)>,
    pub series_match: bool,
    /// A nonzero candidate with a kernel: a counterexample unless the window is too small.
    pub non_injective_found: bool,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct FreenessReport {
    pub alpha: String,
    pub field: String,
    /// 1-based dot index.
    pub r: usize,
    pub top: i32,
    pub x_injective: bool,
    /// Number of free generators over `k[x_r]` seen in the window.
    pub free_rank: usize,
    /// `dim L(alpha)`, the rank in simply-laced type.
    pub expected_rank: usize,
    pub rank_certified: bool,
    /// `(color, p_{i,alpha} nonzero, p_{i,alpha} injective)` per color of the support.
    pub central_dots: Vec<(usize, bool, bool)>,
    /// `(s, d for Delta, d for L)` with `d` minimal such that `(x_r - x_s)^d` kills.
    pub nilpotency: Vec<(usize, Option<u32>, Option<u32>)>,
    pub pass: bool,
}

/// Coefficients of `prod_i prod_{r <= m_i} 1 / (1 - q_{lambda_i}^{2r})` through `top`.
pub fn endomorphism_series<F: Field>(f: &Family<F>, lambda: &KostantPartition, top: i32) -> LaurentSeries {
    let mut s = LaurentSeries::one().truncate_above(top);
    for (root, m) in lambda.blocks() {
        let d = 2 * f.system().d_of(&root) as i32;
        s = s.mul(&LaurentSeries::inverse_product(d, m as u32, top));
    }
    s
}

impl<F: Field> Family<F> {
    /// `Hom(Delta(lambda), Delta(mu)) = 0` for `lambda != mu` in `KP(alpha)`, in degrees up
    /// to `max_deg`, using relations of the source through degree `ann_deg`.
    pub fn verify_hom_vanishing(&self, alpha: &Weight, max_deg: i32, ann_deg: i32) -> Result<HomVanishingReport> {
        let kps = kostant_partitions(&self.order, alpha);
        let mut pairs = Vec::new();
        for l in &kps {
            let src = self.standard(l, ann_deg)?;
            let pres = Presentation::auto(&src, Some(ann_deg))?;
            for m in &kps {
                if l == m {
                    continue;
                }
                let tgt = self.standard(m, ann_deg + max_deg)?;
                let lo = tgt.lowest_degree().unwrap() - src.lowest_degree().unwrap();
                let mut dims = Vec::new();
                let mut refusal = None;
                for d in lo.min(max_deg)..=max_deg {
                    match pres.hom_space(&tgt, d) {
                        Ok(h) => dims.push((d, h.dim())),
                        Err(e) if e.is_refusal() => {
                            refusal = Some(e.to_string());
                            break;
                        }
                        Err(e) => return Err(e),
                    }
                }
                let pass = refusal.is_none() && dims.iter().all(|&(_, n)| n == 0);
                pairs.push(PairReport {
                    lambda: l.to_string(),
                    mu: m.to_string(),
                    comparable_below: bilex_leq(&self.order, l, m),
                    dims,
                    refusal,
                    pass,
                });
            }
        }
        let pass = pairs.iter().all(|p| p.pass);
        Ok(HomVanishingReport {
            alpha: alpha.to_string(),
            field: F::tag(),
            max_degree: max_deg,
            ann_degree: ann_deg,
            pairs,
            pass,
        })
    }

    /// Every nonzero endomorphism of `Delta(lambda)` is injective, and the endomorphism
    /// space has the expected graded dimension, in degrees `0..=max_deg`.
    pub fn verify_endomorphisms(&self, lambda: &KostantPartition, max_deg: i32, ann_deg: i32) -> Result<EndRingReport> {
        let m = self.standard(lambda, ann_deg + max_deg)?;
        let pres = Presentation::auto(&m, Some(ann_deg))?;
        let expect = endomorphism_series(self, lambda, max_deg);
        let mut dims = Vec::new();
        let mut injective = Vec::new();
        for d in 0..=max_deg {
            let h = pres.hom_space(&m, d)?;
            let mut flags = Vec::new();
            for b in &h.basis {
                let f = pres.map_from(&m, d, b)?;
                let ok = (0..m.num_comps()).all(|c| match &f.blocks[c] {
                    Some((_, a)) => a.rank() == m.dim_of(c),
                    None => true,
                });
                flags.push(ok);
            }
            dims.push((d, h.dim()));
            injective.push((d, flags));
        }
        let expected: Vec<(i32, i64)> = (0..=max_deg).map(|d| (d, expect.coeff(d))).collect();
        let series_match = dims.iter().zip(&expected).all(|(a, b)| a.1 as i64 == b.1);
        let non_injective_found = injective.iter().any(|(_, v)| v.iter().any(|ok| !ok));
        Ok(EndRingReport {
            lambda: lambda.to_string(),
            field: F::tag(),
            max_degree: max_deg,
            ann_degree: ann_deg,
            dims,
            expected,
            injective,
            series_match,
            non_injective_found,
            pass: series_match && !non_injective_found,
        })
    }

    /// Freeness of `Delta(alpha)` over `k[x_r]` and related facts, through degree `top`.
    pub fn verify_freeness(&self, alpha: &Weight, r: usize, top: i32) -> Result<FreenessReport> {
        let n = alpha.height() as usize;
        if r >= n {
            return Err(KlrError::Invalid(format!("dot {} out of range for height {}", r + 1, n)));
        }
        let delta = self.delta(alpha, top)?;
        let l = self.cuspidal(alpha)?;
        // (a) injectivity and (b) generators over k[x_r]
        let mut x_injective = true;
        let mut incoming = vec![0usize; delta.num_comps()];
        for c in 0..delta.num_comps() {
            match delta.action(c, Gen::X(r)) {
                Act::Map(t, a) => {
                    let rk = a.rank();
                    x_injective &= rk == delta.dim_of(c);
                    incoming[*t] += rk;
                }
                Act::Zero => x_injective &= delta.dim_of(c) == 0,
                Act::Unknown => {}
            }
        }
        let hi_l = l.highest_degree().unwrap();
        let mut free_rank = 0;
        let mut late = 0;
        for c in 0..delta.num_comps() {
            let coker = delta.dim_of(c) - incoming[c];
            free_rank += coker;
            if delta.key(c).degree > hi_l {
                late += coker;
            }
        }
        let dmax = (0..self.sys.rank()).filter(|&i| alpha.0[i] > 0).map(|i| 2 * self.sys.datum.d(i) as i32).max().unwrap();
        let rank_certified = late == 0 && top >= hi_l + dmax;
        // (c) central products of dots
        let support: Vec<usize> = (0..self.sys.rank()).filter(|&i| alpha.0[i] > 0).collect();
        let mut central_dots = Vec::new();
        for &i in &support {
            let (mut nonzero, mut inj) = (false, true);
            for c in 0..delta.num_comps() {
                let word = delta.key(c).word.clone();
                let dots: Vec<Gen> = (0..n).filter(|&t| word[t] as usize == i).map(Gen::X).collect();
                match product_matrix(&delta, &dots, c) {
                    Ok(Some(a)) => {
                        nonzero |= !a.is_zero();
                        inj &= a.rank() == delta.dim_of(c);
                    }
                    Ok(None) => inj &= delta.dim_of(c) == 0,
                    Err(e) if e.is_refusal() => {}
                    Err(e) => return Err(e),
                }
            }
            central_dots.push((i, nonzero, inj));
        }
        // (d) nilpotency of dot differences
        let mut nilpotency = Vec::new();
        for s in 0..n {
            if s == r {
                continue;
            }
            nilpotency.push((s + 1, nil_degree(&delta, r, s, 4 * n as u32 + 4)?, nil_degree(&l, r, s, 4 * n as u32 + 4)?));
        }
        // the rank and nilpotency statements rest on the central element of simply-laced type
        let simply_laced = (0..self.sys.rank()).all(|i| self.sys.datum.d(i) == self.sys.datum.d(0));
        let pass = x_injective
            && central_dots.iter().all(|c| c.1 && c.2)
            && (!simply_laced
                || (nilpotency.iter().all(|(_, a, b)| a.is_some() && a == b) && (!rank_certified || free_rank == l.dim())));
        Ok(FreenessReport {
            alpha: alpha.to_string(),
            field: F::tag(),
            r: r + 1,
            top,
            x_injective,
            free_rank,
            expected_rank: l.dim(),
            rank_certified,
            central_dots,
            nilpotency,
            pass,
        })
    }
}

/// Matrix of a product of dots (commuting) on component `c`; `None` when it is zero.
fn product_matrix<F: Field>(m: &GradedModule<F>, dots: &[Gen], c: usize) -> Result<Option<Matrix<F>>> {
    let mut cur = (c, Matrix::identity(m.dim_of(c)));
    for &g in dots {
        match m.apply_gen_block(g, cur.0, &cur.1)? {
            Some(next) => cur = next,
            None => return Ok(None),
        }
    }
    Ok(Some(cur.1))
}

/// Smallest `d <= cap` with `(x_r - x_s)^d` killing every component from which `d`
/// applications stay inside the window; `None` if no such `d` is certified.
fn nil_degree<F: Field>(m: &GradedModule<F>, r: usize, s: usize, cap: u32) -> Result<Option<u32>> {
    use std::collections::BTreeMap;
    let sys = m.system();
    let step = (0..sys.rank()).map(|i| 2 * sys.datum.d(i) as i32).max().unwrap();
    let top = m.top().unwrap_or(i32::MAX);
    for d in 0..=cap {
        let eligible: Vec<usize> =
            (0..m.num_comps()).filter(|&c| m.key(c).degree.saturating_add(step * d as i32) <= top).collect();
        if eligible.is_empty() || eligible.iter().all(|&c| m.key(c).degree > m.lowest_degree().unwrap()) {
            return Ok(None);
        }
        let mut killed = true;
        for &c in &eligible {
            let mut img: BTreeMap<usize, Matrix<F>> = BTreeMap::from([(c, Matrix::identity(m.dim_of(c)))]);
            for _ in 0..d {
                let mut out: BTreeMap<usize, Matrix<F>> = BTreeMap::new();
                for (t, a) in &img {
                    for (g, sign) in [(Gen::X(r), F::one()), (Gen::X(s), -F::one())] {
                        if let Some((u, b)) = m.apply_gen_block(g, *t, a)? {
                            let b = b.scale(&sign);
                            let e = out.entry(u).or_insert_with(|| Matrix::zeros(m.dim_of(u), b.cols()));
                            *e = e.add(&b);
                        }
                    }
                }
                out.retain(|_, a| !a.is_zero());
                img = out;
            }
            if !img.is_empty() {
                killed = false;
                break;
            }
        }
        if killed {
            return Ok(Some(d));
        }
    }
    Ok(None)
}
