//! Cartan data of finite type.
//!
//! Simple roots are numbered as in Bourbaki. Internally the index set is `0..rank`;
//! everything user-facing is 1-based.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{KlrError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

/// A Cartan type such as `A3` or `G2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CartanType {
    pub family: Family,
    pub rank: usize,
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.family, self.rank)
    }
}

impl FromStr for CartanType {
    type Err = KlrError;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let letter = chars.next().ok_or_else(|| KlrError::Parse("empty Cartan type".into()))?;
        let rest: String = chars.filter(|c| *c != '_').collect();
        let rank: usize = rest.parse().map_err(|_| KlrError::Parse(format!("bad Cartan type {s:?}")))?;
        let family = match letter.to_ascii_uppercase() {
            'A' => Family::A,
            'B' => Family::B,
            'C' => Family::C,
            'D' => Family::D,
            'E' => Family::E,
            'F' => Family::F,
            'G' => Family::G,
            _ => return Err(KlrError::Parse(format!("unknown Cartan family in {s:?}"))),
        };
        let ok = match family {
            Family::A => rank >= 1,
            Family::B | Family::C => rank >= 2,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if !ok {
            return Err(KlrError::NotFiniteType(format!("{s} is not a finite Cartan type")));
        }
        Ok(CartanType { family, rank })
    }
}

/// Symmetrizable Cartan matrix with symmetrizers and a sign convention.
///
/// `c[i][j] = (a_i . a_j) / d_i`, `d_i = (a_i . a_i) / 2` with the short roots normalized to
/// `d_i = 1`, and `eps(i, j) = +1` for `i < j`, `-1` for `i > j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CartanDatum {
    pub label: String,
    c: Vec<Vec<i64>>,
    d: Vec<i64>,
}

/// JSON descriptor `{"type": "B2", "rank": 2, "sign_convention": "ascending"}`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct CartanDescriptor {
    #[serde(rename = "type")]
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank: Option<usize>,
    #[serde(default = "default_signs")]
    pub sign_convention: String,
}

fn default_signs() -> String {
    "ascending".into()
}

impl CartanDatum {
    pub fn of_type(t: CartanType) -> Self {
        let n = t.rank;
        // symmetric form b[i][j] = a_i . a_j
        let mut b = vec![vec![0i64; n]; n];
        let link = |b: &mut Vec<Vec<i64>>, i: usize, j: usize, v: i64| {
            b[i][j] = v;
            b[j][i] = v;
        };
        let mut norm = vec![2i64; n];
        match t.family {
            Family::A => {
                for i in 0..n - 1 {
                    link(&mut b, i, i + 1, -1);
                }
            }
            Family::B => {
                for v in norm.iter_mut().take(n - 1) {
                    *v = 4;
                }
                for i in 0..n - 1 {
                    link(&mut b, i, i + 1, -2);
                }
            }
            Family::C => {
                norm[n - 1] = 4;
                for i in 0..n - 2 {
                    link(&mut b, i, i + 1, -1);
                }
                link(&mut b, n - 2, n - 1, -2);
            }
            Family::D => {
                for i in 0..n - 2 {
                    link(&mut b, i, i + 1, -1);
                }
                link(&mut b, n - 3, n - 1, -1);
            }
            Family::E => {
                link(&mut b, 0, 2, -1);
                link(&mut b, 1, 3, -1);
                for i in 2..n - 1 {
                    link(&mut b, i, i + 1, -1);
                }
            }
            Family::F => {
                norm = vec![4, 4, 2, 2];
                link(&mut b, 0, 1, -2);
                link(&mut b, 1, 2, -2);
                link(&mut b, 2, 3, -1);
            }
            Family::G => {
                norm = vec![2, 6];
                link(&mut b, 0, 1, -3);
            }
        }
        for i in 0..n {
            b[i][i] = norm[i];
        }
        Self::from_symmetric(t.to_string(), &b).expect("built-in types are valid")
    }

    /// Builds a datum from a Cartan matrix, rejecting anything not of finite type.
    pub fn from_matrix(label: impl Into<String>, c: Vec<Vec<i64>>) -> Result<Self> {
        let n = c.len();
        if n == 0 || c.iter().any(|r| r.len() != n) {
            return Err(KlrError::Invalid("Cartan matrix must be square and nonempty".into()));
        }
        for i in 0..n {
            if c[i][i] != 2 {
                return Err(KlrError::Invalid(format!("c[{i}][{i}] must be 2")));
            }
            for j in 0..n {
                if i != j && (c[i][j] > 0 || (c[i][j] == 0) != (c[j][i] == 0)) {
                    return Err(KlrError::Invalid(format!("bad off-diagonal entries at ({i},{j})")));
                }
            }
        }
        let d = symmetrizers(&c)?;
        let b: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| d[i] * c[i][j]).collect()).collect();
        Self::from_symmetric(label.into(), &b)
    }

    fn from_symmetric(label: String, b: &[Vec<i64>]) -> Result<Self> {
        let n = b.len();
        // doubled form: b[i][i] = 2 d_i
        let g = (0..n).map(|i| b[i][i] / 2).fold(0i64, |acc, x| num_integer::gcd(acc, x));
        let min = (0..n).map(|i| b[i][i] / 2 / g).min().unwrap_or(1);
        if min != 1 {
            return Err(KlrError::Invalid("symmetrizers not normalized".into()));
        }
        let d: Vec<i64> = (0..n).map(|i| b[i][i] / 2 / g).collect();
        let c: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| b[i][j] / g / d[i]).collect()).collect();
        if !positive_definite(b) {
            return Err(KlrError::NotFiniteType(format!("{label}: symmetrized form is not positive definite")));
        }
        Ok(CartanDatum { label, c, d })
    }

    pub fn from_descriptor(desc: &CartanDescriptor) -> Result<Self> {
        if desc.sign_convention != "ascending" {
            return Err(KlrError::Invalid(format!("unsupported sign convention {:?}", desc.sign_convention)));
        }
        let t: CartanType = desc.kind.parse()?;
        if desc.rank.is_some_and(|r| r != t.rank) {
            return Err(KlrError::Invalid("rank does not match type".into()));
        }
        Ok(Self::of_type(t))
    }

    pub fn rank(&self) -> usize {
        self.d.len()
    }

    pub fn c(&self, i: usize, j: usize) -> i64 {
        self.c[i][j]
    }

    pub fn d(&self, i: usize) -> i64 {
        self.d[i]
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.c
    }

    /// `a_i . a_j`.
    pub fn dot(&self, i: usize, j: usize) -> i64 {
        self.d[i] * self.c[i][j]
    }

    pub fn eps(&self, i: usize, j: usize) -> i64 {
        if i < j {
            1
        } else {
            -1
        }
    }
}

fn symmetrizers(c: &[Vec<i64>]) -> Result<Vec<i64>> {
    // propagate rational ratios d_j / d_i = c_ij / c_ji along the Dynkin graph
    let n = c.len();
    let mut num = vec![0i64; n];
    let mut den = vec![1i64; n];
    for start in 0..n {
        if num[start] != 0 {
            continue;
        }
        num[start] = 1;
        let mut stack = vec![start];
        while let Some(i) = stack.pop() {
            for j in 0..n {
                if i == j || c[i][j] == 0 {
                    continue;
                }
                // d_i c_ij = d_j c_ji
                let (nj, dj) = (num[i] * c[i][j], den[i] * c[j][i]);
                let g = num_integer::gcd(nj, dj);
                let (nj, dj) = (nj / g * dj.signum(), dj.abs() / g);
                if num[j] == 0 {
                    num[j] = nj;
                    den[j] = dj;
                    stack.push(j);
                } else if num[j] * dj != nj * den[j] {
                    return Err(KlrError::Invalid("Cartan matrix is not symmetrizable".into()));
                }
            }
        }
    }
    let l = den.iter().fold(1i64, |a, &b| num_integer::lcm(a, b));
    let d: Vec<i64> = (0..n).map(|i| num[i] * l / den[i]).collect();
    let g = d.iter().fold(0i64, |a, &b| num_integer::gcd(a, b));
    Ok(d.into_iter().map(|x| x / g).collect())
}

/// Sylvester's criterion with exact rational elimination.
fn positive_definite(b: &[Vec<i64>]) -> bool {
    use num_rational::BigRational;
    use num_traits::{Signed, Zero};
    let n = b.len();
    let mut m: Vec<Vec<BigRational>> =
        b.iter().map(|r| r.iter().map(|&x| BigRational::from_integer(x.into())).collect()).collect();
    for k in 0..n {
        if !m[k][k].is_positive() {
            return false;
        }
        for i in k + 1..n {
            let f = &m[i][k] / &m[k][k];
            if f.is_zero() {
                continue;
            }
            for j in k..n {
                let v = &m[k][j] * &f;
                m[i][j] -= v;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn datum(s: &str) -> CartanDatum {
        CartanDatum::of_type(s.parse().unwrap())
    }

    #[test]
    fn axioms_hold_for_all_small_types() {
        for s in ["A1", "A4", "B2", "B3", "C3", "D4", "D5", "E6", "E7", "E8", "F4", "G2"] {
            let c = datum(s);
            let n = c.rank();
            assert_eq!(c.d.iter().min(), Some(&1), "{s}");
            for i in 0..n {
                assert_eq!(c.c(i, i), 2);
                for j in 0..n {
                    assert_eq!(c.d(i) * c.c(i, j), c.d(j) * c.c(j, i), "{s}");
                    if i != j {
                        assert!(c.c(i, j) <= 0);
                        if c.c(i, j) < 0 {
                            assert_eq!(c.eps(i, j) * c.eps(j, i), -1);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn rank_two_conventions() {
        let b2 = datum("B2");
        assert_eq!((b2.d(0), b2.d(1)), (2, 1));
        assert_eq!((b2.c(0, 1), b2.c(1, 0)), (-1, -2));
        let g2 = datum("G2");
        assert_eq!((g2.d(0), g2.d(1)), (1, 3));
        assert_eq!((g2.c(0, 1), g2.c(1, 0)), (-3, -1));
        let c3 = datum("C3");
        assert_eq!((c3.d(1), c3.d(2)), (1, 2));
    }

    #[test]
    fn affine_matrix_rejected() {
        let a1_affine = vec![vec![2, -2], vec![-2, 2]];
        assert!(matches!(CartanDatum::from_matrix("A1~", a1_affine), Err(KlrError::NotFiniteType(_))));
        let g2 = CartanDatum::from_matrix("G2", vec![vec![2, -3], vec![-1, 2]]).unwrap();
        assert_eq!(g2.d, vec![1, 3]);
    }

    #[test]
    fn parse_types() {
        assert!("A0".parse::<CartanType>().is_err());
        assert!("E9".parse::<CartanType>().is_err());
        assert_eq!("d_4".parse::<CartanType>().unwrap().to_string(), "D4");
        let desc: CartanDescriptor = serde_json::from_str(r#"{"type":"C2","rank":2}"#).unwrap();
        assert_eq!(CartanDatum::from_descriptor(&desc).unwrap().d(1), 2);
    }
}
