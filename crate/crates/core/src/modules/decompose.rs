//! Writing a character as a `Z[q, q^-1]`-combination of simple characters.

use std::collections::BTreeMap;

use super::character::Character;
use crate::error::{KlrError, Result};
use crate::linalg::{Field, LaurentSeries, Matrix, Q};

/// Multiplicities `[V : L(nu)]_q`, one series per simple; a truncated input yields series
/// that are exact only below their `exact_below`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub mult: Vec<LaurentSeries>,
}

pub fn decompose_character(ch: &Character, simples: &[Character]) -> Result<Decomposition> {
    if simples.iter().any(|s| s.exact_below.is_some() || s.is_zero()) {
        return Err(KlrError::Invalid("simple characters must be exact and nonzero".into()));
    }
    if ch.is_zero() {
        return Ok(Decomposition { mult: vec![LaurentSeries::zero(); simples.len()] });
    }
    let lo = ch.lowest().unwrap();
    let hi = match ch.exact_below {
        Some(e) => e,
        None => ch.highest().unwrap(),
    };
    let span: Vec<(i32, i32)> = simples.iter().map(|s| (s.lowest().unwrap(), s.highest().unwrap())).collect();
    let hmax = span.iter().map(|s| s.1).max().unwrap();
    let lmin = span.iter().map(|s| s.0).min().unwrap();
    // unknown m_{nu,k} for k in [lo - hmax, hi - lo_nu]
    let mut unknowns: Vec<(usize, i32)> = Vec::new();
    for (nu, &(l, _)) in span.iter().enumerate() {
        for k in lo - hmax..=hi - l {
            unknowns.push((nu, k));
        }
    }
    let mut words: Vec<Vec<u8>> = ch.words();
    for s in simples {
        words.extend(s.words());
    }
    words.sort();
    words.dedup();
    let tmin = lo - hmax + lmin;
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for w in &words {
        for t in tmin..=hi {
            let row: Vec<Q> = unknowns.iter().map(|&(nu, k)| Q::from_i64(simples[nu].coeff(w, t - k))).collect();
            let b = ch.coeff(w, t);
            if row.iter().all(|x| x.is_zero()) {
                if b != 0 {
                    return Err(KlrError::Inconsistent(format!("degree {} of word {:?} not covered by simples", t, w)));
                }
                continue;
            }
            rows.push(row);
            rhs.push(Q::from_i64(b));
        }
    }
    let a = Matrix::from_rows(rows, unknowns.len());
    let x = a.solve(&rhs).ok_or_else(|| {
        KlrError::Inconsistent("character is not a combination of the given simples in this window".into())
    })?;
    let kernel = a.kernel();
    let mut mult: Vec<BTreeMap<i32, i64>> = vec![BTreeMap::new(); simples.len()];
    let mut first_free: Vec<Option<i32>> = vec![None; simples.len()];
    for (idx, &(nu, k)) in unknowns.iter().enumerate() {
        if kernel.iter().any(|v| !v[idx].is_zero()) {
            first_free[nu] = Some(first_free[nu].map_or(k, |f: i32| f.min(k)));
            continue;
        }
        let v = x[idx].to_i64().ok_or_else(|| KlrError::Inconsistent(format!("non-integral multiplicity {}", x[idx])))?;
        if v != 0 {
            mult[nu].insert(k, v);
        }
    }
    let out = mult
        .into_iter()
        .enumerate()
        .map(|(nu, m)| {
            let terms: Vec<(i32, i64)> = m.into_iter().collect();
            match (ch.exact_below, first_free[nu]) {
                (None, None) => LaurentSeries::from_terms(terms),
                (_, Some(f)) => LaurentSeries::truncated(terms, f - 1),
                (Some(_), None) => LaurentSeries::truncated(terms, hi - span[nu].0),
            }
        })
        .collect();
    Ok(Decomposition { mult: out })
}
