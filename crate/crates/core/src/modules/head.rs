//! Simple quotients via maps into the dual.
//!
//! Every simple module is isomorphic to a shift of its dual. Hence a finite module `M` is
//! simple exactly when the maps `M -> q^d M^*` over all `d` form a single line spanned by
//! an injective map: any proper simple quotient `S` would give the non-injective map
//! `M -> S -> q^e M^*`. A map of minimal rank has simple image, which is how quotients
//! are found.

use super::character::Character;
use super::graded::GradedModule;
use super::ops::ModuleMap;
use super::present::Presentation;
use crate::error::{KlrError, Result};
use crate::linalg::{Field, Matrix};

/// All maps from `m` into shifts of its dual, one entry per degree with a nonzero space.
pub struct DualMaps<F: Field> {
    pub maps: Vec<(i32, Vec<ModuleMap<F>>)>,
}

impl<F: Field> DualMaps<F> {
    pub fn total_dim(&self) -> usize {
        self.maps.iter().map(|(_, v)| v.len()).sum()
    }
}

pub fn dual_maps<F: Field>(m: &GradedModule<F>) -> Result<DualMaps<F>> {
    if !m.is_complete() {
        return Err(KlrError::InfiniteDimensional);
    }
    let (Some(lo), Some(hi)) = (m.lowest_degree(), m.highest_degree()) else {
        return Ok(DualMaps { maps: Vec::new() });
    };
    let p = Presentation::auto(m, None)?;
    let dual = m.dual()?;
    let mut maps = Vec::new();
    for d in -2 * hi..=-2 * lo {
        let h = p.hom_space(&dual, d)?;
        if h.dim() > 0 {
            let fs = h.basis.iter().map(|b| p.map_from(&dual, d, b)).collect::<Result<Vec<_>>>()?;
            maps.push((d, fs));
        }
    }
    Ok(DualMaps { maps })
}

/// Exact simplicity test for a finite-dimensional module.
pub fn is_simple<F: Field>(m: &GradedModule<F>) -> Result<bool> {
    if m.is_zero() {
        return Ok(false);
    }
    let dm = dual_maps(m)?;
    Ok(dm.total_dim() == 1 && dm.maps[0].1[0].is_injective(m))
}

/// A simple quotient of a nonzero finite-dimensional module.
pub fn simple_quotient<F: Field>(m: &GradedModule<F>) -> Result<GradedModule<F>> {
    let mut cur = m.clone();
    loop {
        if cur.is_zero() {
            return Err(KlrError::Construction("simple quotient search reached the zero module".into()));
        }
        let dm = dual_maps(&cur)?;
        if dm.total_dim() == 0 {
            return Err(KlrError::Construction("module has no map into a shift of its dual".into()));
        }
        let dim = cur.dim();
        let best = dm
            .maps
            .iter()
            .flat_map(|(_, fs)| fs.iter())
            .min_by_key(|f| f.rank())
            .unwrap();
        if best.rank() < dim {
            cur = cur.image_of(best)?;
            continue;
        }
        if dm.total_dim() == 1 {
            return Ok(cur);
        }
        // all basis maps are isomorphisms onto the same shift of the dual; a suitable
        // combination has a kernel
        if dm.maps.len() != 1 {
            return Err(KlrError::Inconsistent("isomorphisms to the dual in two different degrees".into()));
        }
        let fs = &dm.maps[0].1;
        let f = split_pencil(&cur, &fs[0], &fs[1])?;
        cur = cur.image_of(&f)?;
    }
}

/// Given isomorphisms `f1`, `f2`, finds `lambda` with `f2 - lambda f1` singular.
fn split_pencil<F: Field>(m: &GradedModule<F>, f1: &ModuleMap<F>, f2: &ModuleMap<F>) -> Result<ModuleMap<F>> {
    let mut comps: Vec<usize> = (0..m.num_comps()).collect();
    comps.sort_by_key(|&c| m.dim_of(c));
    for &c in &comps {
        let (Some((_, a)), Some((_, b))) = (&f1.blocks[c], &f2.blocks[c]) else { continue };
        let g = a.inverse().ok_or_else(|| KlrError::Inconsistent("non-invertible block".into()))?.mul(b);
        for lambda in eigenvalue_candidates(&g) {
            let shifted = g.sub(&Matrix::identity(g.rows()).scale(&lambda));
            if shifted.rank() < g.rows() {
                return Ok(f2.add(&f1.scale(&-lambda)));
            }
        }
    }
    Err(KlrError::Construction("endomorphism without eigenvalue in the coefficient field".into()))
}

/// Eigenvalue candidates: every field element for small prime fields, otherwise the
/// scalar of a 1x1 block or the trace-average of a scalar-plus-nilpotent block.
fn eigenvalue_candidates<F: Field>(g: &Matrix<F>) -> Vec<F> {
    let p = F::characteristic();
    if p > 0 && p < 1000 {
        return (0..p as i64).map(F::from_i64).collect();
    }
    let n = g.rows();
    let mut tr = F::zero();
    for i in 0..n {
        tr = tr + g.get(i, i).clone();
    }
    match F::from_i64(n as i64).inv() {
        Some(inv) => vec![tr * inv],
        None => Vec::new(),
    }
}

/// Shift making the character bar-invariant, if one exists.
pub fn bar_normalizing_shift(ch: &Character) -> Result<i32> {
    let (Some(lo), Some(hi)) = (ch.lowest(), ch.highest()) else {
        return Err(KlrError::Invalid("zero character".into()));
    };
    if (lo + hi) % 2 != 0 {
        return Err(KlrError::Construction("character cannot be made bar-invariant".into()));
    }
    let s = -(lo + hi) / 2;
    if !ch.shift(s).is_bar_invariant() {
        return Err(KlrError::Construction("character is not bar-invariant up to shift".into()));
    }
    Ok(s)
}

/// The head of a module whose maps to shifts of its dual form a single line: the image of
/// that map, shifted to a bar-invariant character. Returns the head and the shift applied.
pub fn unique_head<F: Field>(m: &GradedModule<F>) -> Result<(GradedModule<F>, i32)> {
    let dm = dual_maps(m)?;
    if dm.total_dim() != 1 {
        return Err(KlrError::Construction(format!(
            "expected a unique map into the dual up to scalar, found {} (degrees {:?})",
            dm.total_dim(),
            dm.maps.iter().map(|(d, v)| (*d, v.len())).collect::<Vec<_>>()
        )));
    }
    let head = m.image_of(&dm.maps[0].1[0])?;
    let s = bar_normalizing_shift(&Character::of_module(&head))?;
    Ok((head.shift(s), s))
}
