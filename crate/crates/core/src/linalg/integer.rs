//! Integer matrix normal forms: Hermite, Smith and fraction-free rank.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

/// Row-style Hermite normal form of the lattice spanned by the rows.
///
/// The result has no zero rows, strictly increasing pivot columns, positive pivots and
/// entries above each pivot reduced into `0..pivot`.
pub fn hermite_normal_form(rows: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let Some(cols) = rows.first().map(|r| r.len()) else {
        return Vec::new();
    };
    let mut m: Vec<Vec<BigInt>> = rows.iter().filter(|r| r.iter().any(|x| !x.is_zero())).cloned().collect();
    let mut pivot_row = 0;
    for col in 0..cols {
        if pivot_row == m.len() {
            break;
        }
        // Euclid on column `col` among rows pivot_row..
        loop {
            let nz: Vec<usize> = (pivot_row..m.len()).filter(|&r| !m[r][col].is_zero()).collect();
            if nz.is_empty() {
                break;
            }
            let best = *nz.iter().min_by(|&&a, &&b| m[a][col].abs().cmp(&m[b][col].abs())).unwrap();
            m.swap(pivot_row, best);
            let mut done = true;
            for r in pivot_row + 1..m.len() {
                if m[r][col].is_zero() {
                    continue;
                }
                let q = m[r][col].div_floor(&m[pivot_row][col]);
                let prow = m[pivot_row].clone();
                for (x, p) in m[r].iter_mut().zip(&prow) {
                    *x -= &q * p;
                }
                if !m[r][col].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if pivot_row < m.len() && !m[pivot_row][col].is_zero() {
            if m[pivot_row][col].is_negative() {
                for x in m[pivot_row].iter_mut() {
                    *x = -x.clone();
                }
            }
            let prow = m[pivot_row].clone();
            for r in 0..pivot_row {
                let q = m[r][col].div_floor(&prow[col]);
                if !q.is_zero() {
                    for (x, p) in m[r].iter_mut().zip(&prow) {
                        *x -= &q * p;
                    }
                }
            }
            pivot_row += 1;
        }
    }
    m.truncate(pivot_row);
    m.retain(|r| r.iter().any(|x| !x.is_zero()));
    m
}

/// Smith normal form data: `U * M * V = diag(invariant_factors)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SnfResult {
    /// Length `min(rows, cols)`; nonnegative; each divides the next, zeros last.
    pub invariant_factors: Vec<BigInt>,
    pub row_transform: Option<Vec<Vec<BigInt>>>,
    pub col_transform: Option<Vec<Vec<BigInt>>>,
}

impl SnfResult {
    /// Factors greater than one: the torsion of the cokernel.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.invariant_factors.iter().filter(|d| **d > BigInt::one()).cloned().collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors.iter().filter(|d| !d.is_zero()).count()
    }

    /// Exponent of `p` in the torsion part, summed over factors.
    pub fn p_torsion_length(&self, p: u64) -> usize {
        let p = BigInt::from(p);
        self.invariant_factors
            .iter()
            .filter(|d| !d.is_zero())
            .map(|d| {
                let mut d = d.clone();
                let mut k = 0;
                while (&d % &p).is_zero() {
                    d /= &p;
                    k += 1;
                }
                k
            })
            .sum()
    }
}

fn identity(n: usize) -> Vec<Vec<BigInt>> {
    (0..n).map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect()
}

/// Smith normal form of an integer matrix given by rows.
pub fn smith_normal_form(rows: &[Vec<BigInt>], with_transforms: bool) -> SnfResult {
    let r = rows.len();
    let c = rows.first().map_or(0, |x| x.len());
    let mut a: Vec<Vec<BigInt>> = rows.to_vec();
    let mut u = identity(r);
    let mut v = identity(c);
    let k = r.min(c);
    for t in 0..k {
        // pick the smallest nonzero entry in the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..r {
            for j in t..c {
                if !a[i][j].is_zero() && best.map_or(true, |(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        a.swap(t, bi);
        u.swap(t, bi);
        for row in a.iter_mut() {
            row.swap(t, bj);
        }
        for row in v.iter_mut() {
            row.swap(t, bj);
        }
        loop {
            let mut changed = false;
            // clear column t
            for i in t + 1..r {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                let (pa, pu) = (a[t].clone(), u[t].clone());
                for (x, p) in a[i].iter_mut().zip(&pa) {
                    *x -= &q * p;
                }
                for (x, p) in u[i].iter_mut().zip(&pu) {
                    *x -= &q * p;
                }
                if !a[i][t].is_zero() {
                    a.swap(t, i);
                    u.swap(t, i);
                    changed = true;
                }
            }
            // clear row t
            for j in t + 1..c {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                for row in a.iter_mut() {
                    let p = row[t].clone();
                    row[j] -= &q * p;
                }
                for row in v.iter_mut() {
                    let p = row[t].clone();
                    row[j] -= &q * p;
                }
                if !a[t][j].is_zero() {
                    for row in a.iter_mut() {
                        row.swap(t, j);
                    }
                    for row in v.iter_mut() {
                        row.swap(t, j);
                    }
                    changed = true;
                }
            }
            if changed {
                continue;
            }
            // enforce divisibility on the trailing block
            let mut fix = None;
            'outer: for i in t + 1..r {
                for j in t + 1..c {
                    if !(&a[i][j] % &a[t][t]).is_zero() {
                        fix = Some(i);
                        break 'outer;
                    }
                }
            }
            match fix {
                Some(i) => {
                    let (pa, pu) = (a[i].clone(), u[i].clone());
                    for (x, p) in a[t].iter_mut().zip(&pa) {
                        *x += p;
                    }
                    for (x, p) in u[t].iter_mut().zip(&pu) {
                        *x += p;
                    }
                }
                None => break,
            }
        }
        if a[t][t].is_negative() {
            for x in a[t].iter_mut() {
                *x = -x.clone();
            }
            for x in u[t].iter_mut() {
                *x = -x.clone();
            }
        }
    }
    let factors = (0..k).map(|i| a[i][i].clone()).collect();
    SnfResult {
        invariant_factors: factors,
        row_transform: with_transforms.then_some(u),
        col_transform: with_transforms.then_some(v),
    }
}

/// Rank over the rationals by Bareiss fraction-free elimination.
pub fn bareiss_rank(rows: &[Vec<BigInt>]) -> usize {
    let mut a = rows.to_vec();
    let r = a.len();
    let c = a.first().map_or(0, |x| x.len());
    let mut prev = BigInt::one();
    let mut rank = 0;
    for col in 0..c {
        if rank == r {
            break;
        }
        let Some(p) = (rank..r).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        for i in rank + 1..r {
            for j in col + 1..c {
                let v = &a[rank][col] * &a[i][j] - &a[i][col] * &a[rank][j];
                a[i][j] = v / &prev;
            }
            a[i][col] = BigInt::zero();
        }
        prev = a[rank][col].clone();
        rank += 1;
    }
    rank
}
