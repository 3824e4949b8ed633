//! Decomposition of elements along `H_alpha = sum_u tau_u H_{beta_1, ..., beta_m}`.

use std::collections::{BTreeMap, HashMap};

use super::element::{add_into, finish, KlrElement, Mono};
use super::engine::KlrAlgebra;
use super::perm::Perm;

/// A term `coeff * tau_u * h` with `u` a minimal coset representative and `h` a
/// normal-form monomial of the parabolic subalgebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetTerm {
    pub u: Perm,
    pub h: Mono,
    pub coeff: i64,
}

impl KlrAlgebra {
    /// Writes `e` as `sum tau_u h_u`. Terms of maximal length are peeled off one at a
    /// time; `tau_u tau_v` differs from `tau_{uv}` only by shorter terms.
    pub fn coset_decompose(&self, e: &KlrElement, sizes: &[usize]) -> Vec<CosetTerm> {
        let mut cur: HashMap<Mono, i64> = e.terms().map(|(m, c)| (m.clone(), c)).collect();
        let mut out: BTreeMap<(Perm, Mono), i64> = BTreeMap::new();
        while let Some((m, c)) = cur
            .iter()
            .filter(|(_, c)| **c != 0)
            .max_by(|a, b| a.0.w.length().cmp(&b.0.w.length()).then_with(|| b.0.cmp(a.0)))
            .map(|(m, c)| (m.clone(), *c))
        {
            let (u, parts) = m.w.parabolic_split(sizes);
            let v = parts.iter().skip(1).fold(parts[0].clone(), |acc, p| acc.concat(p));
            let h = Mono { w: v, a: m.a.clone(), i: m.i.clone() };
            let mut prod: Vec<(Mono, i64)> = vec![(h.clone(), 1)];
            for &r in u.canonical_word().iter().rev() {
                let mut acc = HashMap::new();
                for (mm, cc) in &prod {
                    add_into(&mut acc, &self.tau_mono(r as usize, mm), *cc);
                }
                prod = finish(acc);
            }
            add_into(&mut cur, &prod, -c);
            cur.retain(|_, v| *v != 0);
            *out.entry((u, h)).or_insert(0) += c;
        }
        out.into_iter().filter(|(_, c)| *c != 0).map(|((u, h), coeff)| CosetTerm { u, h, coeff }).collect()
    }

    /// Reassembles `sum coeff tau_u h`.
    pub fn coset_recombine(&self, terms: &[CosetTerm]) -> KlrElement {
        let mut acc = HashMap::new();
        for t in terms {
            let mut prod: Vec<(Mono, i64)> = vec![(t.h.clone(), 1)];
            for &r in t.u.canonical_word().iter().rev() {
                let mut next = HashMap::new();
                for (mm, cc) in &prod {
                    add_into(&mut next, &self.tau_mono(r as usize, mm), *cc);
                }
                prod = finish(next);
            }
            add_into(&mut acc, &prod, t.coeff);
        }
        KlrElement::from_terms(finish(acc))
    }
}

/// Splits a parabolic monomial into its block factors.
pub fn split_parabolic(m: &Mono, sizes: &[usize]) -> Vec<Mono> {
    let mut out = Vec::new();
    let mut start = 0;
    for &s in sizes {
        let w = Perm(m.w.0[start..start + s].iter().map(|&x| x - start as u8).collect());
        out.push(Mono { w, a: m.a[start..start + s].to_vec(), i: m.i[start..start + s].to_vec() });
        start += s;
    }
    out
}
