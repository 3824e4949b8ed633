//! Distinguished central elements, the subalgebra `H'_alpha` and commutation checks.

use std::collections::HashMap;

use super::element::{add_into, finish, KlrElement, Mono};
use super::engine::{Generator, KlrAlgebra};
use super::perm::Perm;
use crate::error::{KlrError, Result};

/// Result of commuting an element with every generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentralityCertificate {
    pub generators_checked: usize,
    /// Generators that failed to commute, as readable labels.
    pub failures: Vec<String>,
}

impl CentralityCertificate {
    pub fn is_central(&self) -> bool {
        self.failures.is_empty()
    }
}

fn elementary(vars: &[usize], k: usize) -> Vec<Vec<usize>> {
    fn go(vars: &[usize], k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for s in start..vars.len() {
            cur.push(vars[s]);
            go(vars, k, s + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(vars, k, 0, &mut Vec::new(), &mut out);
    out
}

impl KlrAlgebra {
    /// `sum_i e_k(x_r : i_r = color) 1_i`, central by the description of the center.
    pub fn central_elementary(&self, color: usize, k: usize) -> KlrElement {
        let mut e = KlrElement::zero();
        for w in self.words() {
            let vars: Vec<usize> = (0..w.len()).filter(|&r| w[r] as usize == color).collect();
            for subset in elementary(&vars, k) {
                let mut a = vec![0u16; w.len()];
                for r in subset {
                    a[r] += 1;
                }
                e.add_term(Mono::poly(a, w.clone()), 1);
            }
        }
        e
    }

    /// Product of elementary symmetric functions `prod e_{k}(color)`.
    pub fn central_symmetric(&self, factors: &[(usize, usize)]) -> Result<KlrElement> {
        let mut e = self.one();
        for &(color, k) in factors {
            e = self.multiply(&self.central_elementary(color, k), &e)?;
        }
        Ok(e)
    }

    /// `p_{i,alpha} = sum_i (prod_{i_r = i} x_r) 1_i`.
    pub fn p_element(&self, color: usize) -> Result<KlrElement> {
        let a = self.alpha().0.get(color).copied().unwrap_or(0);
        if a == 0 {
            return Err(KlrError::Invalid(format!("color {} is not in the support", color + 1)));
        }
        Ok(self.central_elementary(color, a as usize))
    }

    /// The degree-two central element `z = sum_i (sum_{i_r = i_1} x_r) 1_i` for the color
    /// `i_1`. Needs all colors in the support to have the same length, and `a_{i_1}` to be
    /// invertible in characteristic `p` (0 for the rationals).
    pub fn central_z(&self, first: usize, p: u64) -> Result<KlrElement> {
        let support: Vec<usize> = (0..self.alpha().0.len()).filter(|&i| self.alpha().0[i] > 0).collect();
        let d0 = self.datum().d(support[0]);
        if support.iter().any(|&i| self.datum().d(i) != d0) {
            return Err(KlrError::Hypothesis("z needs all simple roots in the support to have equal length".into()));
        }
        let a = self.alpha().0.get(first).copied().unwrap_or(0);
        if a == 0 {
            return Err(KlrError::Invalid(format!("color {} is not in the support", first + 1)));
        }
        if p != 0 && a as u64 % p == 0 {
            return Err(KlrError::Domain(format!("a_{} = {a} vanishes in characteristic {p}", first + 1)));
        }
        Ok(self.central_elementary(first, 1))
    }

    /// Smallest color whose coefficient is invertible in characteristic `p`.
    pub fn z_color(&self, p: u64) -> Option<usize> {
        (0..self.alpha().0.len()).find(|&i| {
            let a = self.alpha().0[i];
            a > 0 && (p == 0 || a as u64 % p != 0)
        })
    }

    pub fn generators(&self) -> Vec<Generator> {
        let mut g: Vec<Generator> = self.words().iter().map(|w| Generator::Idem(w.clone())).collect();
        g.extend((0..self.n()).map(Generator::X));
        g.extend((0..self.n().saturating_sub(1)).map(Generator::Tau));
        g
    }

    fn generator_element(&self, g: &Generator) -> KlrElement {
        self.apply_generator(g.clone(), &self.one())
    }

    /// Checks `[e, g] = 0` for every generator `g`.
    pub fn centrality(&self, e: &KlrElement) -> Result<CentralityCertificate> {
        let gens = self.generators();
        let mut failures = Vec::new();
        for g in &gens {
            let ge = self.generator_element(g);
            let lhs = self.multiply(e, &ge)?;
            let rhs = self.multiply(&ge, e)?;
            if lhs != rhs {
                failures.push(match g {
                    Generator::Idem(w) => format!("1_{:?}", w.iter().map(|c| c + 1).collect::<Vec<_>>()),
                    Generator::X(t) => format!("x_{}", t + 1),
                    Generator::Tau(r) => format!("tau_{}", r + 1),
                });
            }
        }
        Ok(CentralityCertificate { generators_checked: gens.len(), failures })
    }

    /// Elements `(x_1-x_2)^{m_1} ... (x_{n-1}-x_n)^{m_{n-1}} tau_w 1_i` of degree `d`, with
    /// their labels `(m, w, i)`. Simply-laced types only.
    pub fn hprime_basis(&self, d: i32) -> Result<Vec<((Vec<u16>, Perm, Vec<u8>), KlrElement)>> {
        let n = self.n();
        if (0..self.datum().rank()).any(|i| self.datum().d(i) != 1) {
            return Err(KlrError::Invalid("H' basis is only defined in simply-laced types".into()));
        }
        if let Some(m) = self.max_deg() {
            if d > m {
                return Err(KlrError::WindowExceeded { required: d, available: m });
            }
        }
        let mut out = Vec::new();
        for i in self.words() {
            for w in Perm::all(n) {
                let rem = d - self.tau_degree(&w, i);
                if rem < 0 || rem % 2 != 0 {
                    continue;
                }
                for m in compositions((rem / 2) as u16, n.saturating_sub(1)) {
                    let mut cur = vec![(Mono { w: w.clone(), a: vec![0; n], i: i.clone() }, 1i64)];
                    for (r, &e) in m.iter().enumerate() {
                        for _ in 0..e {
                            let mut acc = HashMap::new();
                            for (mm, c) in &cur {
                                add_into(&mut acc, &self.x_mono(r, mm), *c);
                                add_into(&mut acc, &self.x_mono(r + 1, mm), -*c);
                            }
                            cur = finish(acc);
                        }
                    }
                    out.push(((m, w.clone(), i.clone()), KlrElement::from_terms(cur)));
                }
            }
        }
        Ok(out)
    }
}

/// Weak compositions of `total` into `parts` parts.
fn compositions(total: u16, parts: usize) -> Vec<Vec<u16>> {
    if parts == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for rest in compositions(total - first, parts - 1) {
            out.push([vec![first], rest].concat());
        }
    }
    out
}
