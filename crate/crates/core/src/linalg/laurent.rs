//! Laurent polynomials and truncated Laurent series in `q` with integer coefficients.
//!
//! A series stores its nonzero coefficients inside the window `[lo, hi]` together with the
//! range of degrees on which the stored data is known to be exact. Outside the exact range
//! the coefficients are unknown, not zero.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LaurentSeries {
    pub lo: i32,
    pub hi: i32,
    /// Coefficients at degrees `<= exact_below` are exact; `None` means no upper truncation.
    pub exact_below: Option<i32>,
    /// Coefficients at degrees `>= exact_above` are exact; `None` means no lower truncation.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exact_above: Option<i32>,
    #[serde(with = "coeff_map")]
    pub coeffs: BTreeMap<i32, i64>,
}

mod coeff_map {
    use std::collections::BTreeMap;

    use serde::ser::SerializeMap;
    use serde::{Deserialize, Deserializer, Serializer};

    /// Keys are written as strings in numeric order.
    pub fn serialize<S: Serializer>(m: &BTreeMap<i32, i64>, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(m.len()))?;
        for (k, v) in m {
            map.serialize_entry(&k.to_string(), v)?;
        }
        map.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BTreeMap<i32, i64>, D::Error> {
        let m = BTreeMap::<String, i64>::deserialize(d)?;
        m.into_iter()
            .map(|(k, v)| k.parse::<i32>().map(|k| (k, v)).map_err(serde::de::Error::custom))
            .collect()
    }
}

impl LaurentSeries {
    /// The zero polynomial.
    pub fn zero() -> Self {
        LaurentSeries { lo: 0, hi: 0, exact_below: None, exact_above: None, coeffs: BTreeMap::new() }
    }

    pub fn monomial(d: i32, c: i64) -> Self {
        let mut s = Self::zero();
        s.lo = d;
        s.hi = d;
        if c != 0 {
            s.coeffs.insert(d, c);
        }
        s
    }

    pub fn one() -> Self {
        Self::monomial(0, 1)
    }

    /// Exact Laurent polynomial from (degree, coefficient) pairs.
    pub fn from_terms(terms: impl IntoIterator<Item = (i32, i64)>) -> Self {
        let mut coeffs = BTreeMap::new();
        for (d, c) in terms {
            *coeffs.entry(d).or_insert(0) += c;
        }
        coeffs.retain(|_, c| *c != 0);
        let lo = coeffs.keys().next().copied().unwrap_or(0);
        let hi = coeffs.keys().last().copied().unwrap_or(0);
        LaurentSeries { lo, hi, exact_below: None, exact_above: None, coeffs }
    }

    /// A series known only through degree `exact_below`.
    pub fn truncated(terms: impl IntoIterator<Item = (i32, i64)>, exact_below: i32) -> Self {
        let mut s = Self::from_terms(terms.into_iter().filter(|(d, _)| *d <= exact_below));
        s.exact_below = Some(exact_below);
        s.hi = exact_below.max(s.lo);
        if s.coeffs.is_empty() {
            s.lo = s.lo.min(exact_below);
        }
        s
    }

    /// `1 / prod_{r=1}^{m} (1 - q^{step * r})` through degree `upto`.
    pub fn inverse_product(step: i32, m: u32, upto: i32) -> Self {
        let mut s = Self::one().truncate_above(upto);
        for r in 1..=m as i32 {
            s = s.mul(&Self::geometric(step * r, upto));
        }
        s
    }

    /// `1 / (1 - q^step)` through degree `upto`.
    pub fn geometric(step: i32, upto: i32) -> Self {
        assert!(step > 0);
        let terms = (0..).map(|k| k * step).take_while(|d| *d <= upto).map(|d| (d, 1));
        Self::truncated(terms, upto)
    }

    /// Quantum integer `[n] = q^{1-n} + q^{3-n} + ... + q^{n-1}`.
    pub fn quantum_integer(n: u32) -> Self {
        Self::from_terms((0..n as i32).map(|k| (1 - n as i32 + 2 * k, 1)))
    }

    pub fn is_exact(&self) -> bool {
        self.exact_below.is_none() && self.exact_above.is_none()
    }

    pub fn coeff(&self, d: i32) -> i64 {
        self.coeffs.get(&d).copied().unwrap_or(0)
    }

    pub fn is_exact_at(&self, d: i32) -> bool {
        self.exact_below.map_or(true, |e| d <= e) && self.exact_above.map_or(true, |e| d >= e)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn lowest(&self) -> Option<i32> {
        self.coeffs.keys().next().copied()
    }

    pub fn highest(&self) -> Option<i32> {
        self.coeffs.keys().last().copied()
    }

    fn normalize(mut self) -> Self {
        self.coeffs.retain(|_, c| *c != 0);
        if let Some(e) = self.exact_below {
            self.coeffs.retain(|d, _| *d <= e);
        }
        if let Some(e) = self.exact_above {
            self.coeffs.retain(|d, _| *d >= e);
        }
        if let (Some(l), Some(h)) = (self.lowest(), self.highest()) {
            self.lo = self.lo.min(l);
            self.hi = self.hi.max(h);
        }
        if let Some(e) = self.exact_below {
            self.hi = self.hi.min(e).max(self.lo);
        }
        self
    }

    /// Forgets everything above degree `d`.
    pub fn truncate_above(&self, d: i32) -> Self {
        let mut s = self.clone();
        s.exact_below = Some(self.exact_below.map_or(d, |e| e.min(d)));
        s.normalize()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut coeffs = self.coeffs.clone();
        for (d, c) in &o.coeffs {
            *coeffs.entry(*d).or_insert(0) += c;
        }
        LaurentSeries {
            lo: self.lo.min(o.lo),
            hi: self.hi.max(o.hi),
            exact_below: min_opt(self.exact_below, o.exact_below),
            exact_above: max_opt(self.exact_above, o.exact_above),
            coeffs,
        }
        .normalize()
    }

    pub fn neg(&self) -> Self {
        let mut s = self.clone();
        for c in s.coeffs.values_mut() {
            *c = -*c;
        }
        s
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn scale(&self, k: i64) -> Self {
        let mut s = self.clone();
        for c in s.coeffs.values_mut() {
            *c *= k;
        }
        s.normalize()
    }

    /// Multiplication by `q^d`.
    pub fn shift(&self, d: i32) -> Self {
        LaurentSeries {
            lo: self.lo + d,
            hi: self.hi + d,
            exact_below: self.exact_below.map(|e| e + d),
            exact_above: self.exact_above.map(|e| e + d),
            coeffs: self.coeffs.iter().map(|(k, v)| (k + d, *v)).collect(),
        }
    }

    /// Product. The exact range shrinks to what both factors determine: if `f` is exact
    /// through `E_f` and `g` has lowest degree `l_g`, the product is exact through `E_f + l_g`.
    pub fn mul(&self, o: &Self) -> Self {
        let mut coeffs = BTreeMap::new();
        for (a, x) in &self.coeffs {
            for (b, y) in &o.coeffs {
                *coeffs.entry(a + b).or_insert(0) += x * y;
            }
        }
        let l_self = self.lowest().unwrap_or(self.lo).min(self.lo);
        let l_o = o.lowest().unwrap_or(o.lo).min(o.lo);
        let h_self = self.highest().unwrap_or(self.hi).max(self.hi);
        let h_o = o.highest().unwrap_or(o.hi).max(o.hi);
        let below = min_opt(self.exact_below.map(|e| e + l_o), o.exact_below.map(|e| e + l_self));
        let above = max_opt(self.exact_above.map(|e| e + h_o), o.exact_above.map(|e| e + h_self));
        LaurentSeries { lo: self.lo + o.lo, hi: self.hi + o.hi, exact_below: below, exact_above: above, coeffs }.normalize()
    }

    /// The bar involution `q -> q^{-1}`.
    pub fn bar(&self) -> Self {
        LaurentSeries {
            lo: -self.hi,
            hi: -self.lo,
            exact_below: self.exact_above.map(|e| -e),
            exact_above: self.exact_below.map(|e| -e),
            coeffs: self.coeffs.iter().map(|(k, v)| (-k, *v)).collect(),
        }
    }

    pub fn is_bar_invariant(&self) -> bool {
        self.is_exact() && self.coeffs.iter().all(|(d, c)| self.coeff(-d) == *c)
    }

    /// Equality on the degrees where both operands are exact.
    pub fn agrees_with(&self, o: &Self) -> bool {
        let degrees: std::collections::BTreeSet<i32> = self.coeffs.keys().chain(o.coeffs.keys()).copied().collect();
        degrees
            .into_iter()
            .filter(|d| self.is_exact_at(*d) && o.is_exact_at(*d))
            .all(|d| self.coeff(d) == o.coeff(d))
    }

    /// Coefficientwise `self <= o` on the common exact range.
    pub fn dominated_by(&self, o: &Self) -> bool {
        let degrees: std::collections::BTreeSet<i32> = self.coeffs.keys().chain(o.coeffs.keys()).copied().collect();
        degrees
            .into_iter()
            .filter(|d| self.is_exact_at(*d) && o.is_exact_at(*d))
            .all(|d| self.coeff(d) <= o.coeff(d))
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.values().all(|c| *c >= 0)
    }

    /// Human-readable form such as `q^-1+2+q^3`, with `+O(q^k)` when truncated.
    pub fn to_laurent_string(&self) -> String {
        let mut out = String::new();
        for (d, c) in &self.coeffs {
            let sign = if *c < 0 { "-" } else if out.is_empty() { "" } else { "+" };
            let a = c.abs();
            let mono = match *d {
                0 => String::new(),
                1 => "q".into(),
                _ => format!("q^{d}"),
            };
            let body = match (a, mono.is_empty()) {
                (_, true) => a.to_string(),
                (1, false) => mono,
                (_, false) => format!("{a}{mono}"),
            };
            out.push_str(sign);
            out.push_str(&body);
        }
        if out.is_empty() {
            out.push('0');
        }
        if let Some(e) = self.exact_below {
            out.push_str(&format!("+O(q^{})", e + 1));
        }
        out
    }
}

impl fmt::Display for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_laurent_string())
    }
}

fn min_opt(a: Option<i32>, b: Option<i32>) -> Option<i32> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

fn max_opt(a: Option<i32>, b: Option<i32>) -> Option<i32> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.max(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quantum_two_squared() {
        let two = LaurentSeries::quantum_integer(2);
        assert_eq!(two.mul(&two), LaurentSeries::from_terms([(-2, 1), (0, 2), (2, 1)]));
        assert!(two.is_bar_invariant());
    }

    #[test]
    fn geometric_series_product() {
        let s = LaurentSeries::inverse_product(2, 2, 8);
        // 1/((1-q^2)(1-q^4)) = 1 + q^2 + 2q^4 + 2q^6 + 3q^8 + ...
        assert_eq!(s.coeff(0), 1);
        assert_eq!(s.coeff(2), 1);
        assert_eq!(s.coeff(4), 2);
        assert_eq!(s.coeff(6), 2);
        assert_eq!(s.coeff(8), 3);
        assert_eq!(s.exact_below, Some(8));
        let inv = LaurentSeries::from_terms([(0, 1), (2, -1)]);
        let back = LaurentSeries::geometric(2, 10).mul(&inv);
        assert!(back.agrees_with(&LaurentSeries::one()));
    }

    #[test]
    fn bar_is_involution_on_truncated() {
        let s = LaurentSeries::truncated([(-1, 2), (3, 1)], 5);
        assert_eq!(s.bar().bar(), s);
    }

    #[test]
    fn display() {
        let s = LaurentSeries::from_terms([(-1, 1), (0, 2), (3, -1)]);
        assert_eq!(s.to_string(), "q^-1+2-q^3");
    }
}
