//! Enumeration of the graded normal-form basis.

use super::element::{Mono, Word};
use super::engine::KlrAlgebra;
use super::perm::Perm;
use crate::error::{KlrError, Result};

impl KlrAlgebra {
    /// Smallest degree of any `tau_w 1_i`, the bottom of every degree window.
    pub fn min_degree(&self) -> i32 {
        let perms = Perm::all(self.n());
        self.words()
            .iter()
            .flat_map(|i| perms.iter().map(move |w| (w, i)))
            .map(|(w, i)| self.tau_degree(w, i))
            .min()
            .unwrap_or(0)
    }

    fn check_window(&self, d: i32) -> Result<()> {
        match self.max_deg() {
            Some(m) if d > m => Err(KlrError::WindowExceeded { required: d, available: m }),
            _ => Ok(()),
        }
    }

    /// Exponent vectors `a` with `sum_r deg(x_r 1_i) a_r = d`.
    pub fn exponents(&self, i: &[u8], d: i32) -> Vec<Vec<u16>> {
        fn go(steps: &[i32], k: usize, rem: i32, cur: &mut Vec<u16>, out: &mut Vec<Vec<u16>>) {
            if k == steps.len() {
                if rem == 0 {
                    out.push(cur.clone());
                }
                return;
            }
            let mut e = 0;
            while e * steps[k] <= rem {
                cur.push(e as u16);
                go(steps, k + 1, rem - e * steps[k], cur, out);
                cur.pop();
                e += 1;
            }
        }
        let steps: Vec<i32> = i.iter().map(|&c| self.x_degree(c)).collect();
        let mut out = Vec::new();
        if d >= 0 {
            go(&steps, 0, d, &mut Vec::new(), &mut out);
        }
        out
    }

    /// Normal-form monomials `1_left tau_w x^a 1_right` of degree `d`.
    pub fn graded_basis(&self, left: Option<&[u8]>, right: Option<&[u8]>, d: i32) -> Result<Vec<Mono>> {
        self.check_window(d)?;
        let perms = Perm::all(self.n());
        let mut out = Vec::new();
        let rights: Vec<&Word> = self.words().iter().filter(|w| right.map_or(true, |r| r == w.as_slice())).collect();
        for i in rights {
            for w in &perms {
                if let Some(l) = left {
                    if w.act(i) != l {
                        continue;
                    }
                }
                let rem = d - self.tau_degree(w, i);
                for a in self.exponents(i, rem) {
                    out.push(Mono { w: w.clone(), a, i: i.clone() });
                }
            }
        }
        out.sort();
        Ok(out)
    }

    /// Monomials `tau_w 1_i` of every degree with `w` in a given list, i.e. the free
    /// generators over the polynomial part.
    pub fn tau_monomials(&self, right: &[u8]) -> Vec<Mono> {
        Perm::all(self.n()).into_iter().map(|w| Mono { w, a: vec![0; right.len()], i: right.to_vec() }).collect()
    }
}
