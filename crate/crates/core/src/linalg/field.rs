//! Coefficient fields: the rationals and prime fields with a compile-time modulus.

use std::fmt::{self, Debug, Display};
use std::hash::Hash;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::scalar::Scalar;

/// An exact field. Every algebra and module routine is written once against this trait.
pub trait Field:
    Clone
    + PartialEq
    + Eq
    + Hash
    + Debug
    + Display
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn from_bigint(v: &BigInt) -> Self;
    fn is_zero(&self) -> bool;
    /// Multiplicative inverse; `None` for zero.
    fn inv(&self) -> Option<Self>;
    /// 0 for the rationals, p for 𝔽_p.
    fn characteristic() -> u64;
    /// Short tag used in reports: `Q`, `F2`, `F3`, ...
    fn tag() -> String;
    fn to_scalar(&self) -> Scalar;
    fn from_scalar(s: &Scalar) -> Option<Self>;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }
    fn div(&self, o: &Self) -> Option<Self> {
        o.inv().map(|i| self.clone() * i)
    }
    /// Reduction of a rational number; `None` when the denominator is not invertible.
    fn from_rational(r: &BigRational) -> Option<Self> {
        Self::from_bigint(r.numer()).div(&Self::from_bigint(r.denom()))
    }
}

/// The field of rational numbers backed by arbitrary-precision integers.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Q(pub BigRational);

impl Q {
    pub fn new(n: i64, d: i64) -> Self {
        Q(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }
    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }
    pub fn to_integer(&self) -> Option<BigInt> {
        self.is_integer().then(|| self.0.to_integer())
    }
    pub fn to_i64(&self) -> Option<i64> {
        self.to_integer().and_then(|b| b.to_i64())
    }
}

impl Debug for Q {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl Display for Q {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl Add for Q {
    type Output = Q;
    fn add(self, o: Q) -> Q {
        Q(self.0 + o.0)
    }
}
impl Sub for Q {
    type Output = Q;
    fn sub(self, o: Q) -> Q {
        Q(self.0 - o.0)
    }
}
impl Mul for Q {
    type Output = Q;
    fn mul(self, o: Q) -> Q {
        Q(self.0 * o.0)
    }
}
impl Neg for Q {
    type Output = Q;
    fn neg(self) -> Q {
        Q(-self.0)
    }
}

impl Field for Q {
    fn zero() -> Self {
        Q(BigRational::zero())
    }
    fn one() -> Self {
        Q(BigRational::one())
    }
    fn from_i64(v: i64) -> Self {
        Q(BigRational::from_integer(BigInt::from(v)))
    }
    fn from_bigint(v: &BigInt) -> Self {
        Q(BigRational::from_integer(v.clone()))
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
    fn inv(&self) -> Option<Self> {
        (!self.0.is_zero()).then(|| Q(self.0.recip()))
    }
    fn characteristic() -> u64 {
        0
    }
    fn tag() -> String {
        "Q".to_string()
    }
    fn to_scalar(&self) -> Scalar {
        Scalar::Rational(self.0.clone())
    }
    fn from_scalar(s: &Scalar) -> Option<Self> {
        match s {
            Scalar::Rational(r) => Some(Q(r.clone())),
            Scalar::Integer(z) => Some(Q::from_bigint(z)),
            Scalar::Modular { .. } => None,
        }
    }
    fn from_rational(r: &BigRational) -> Option<Self> {
        Some(Q(r.clone()))
    }
}

/// The prime field 𝔽_P; representatives are kept in `0..P`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fp<const P: u64>(u64);

impl<const P: u64> Fp<P> {
    pub fn new(v: i64) -> Self {
        Fp(v.rem_euclid(P as i64) as u64)
    }
    pub fn value(&self) -> u64 {
        self.0
    }
}

impl<const P: u64> Debug for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}
impl<const P: u64> Display for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}
impl<const P: u64> Add for Fp<P> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Fp((self.0 + o.0) % P)
    }
}
impl<const P: u64> Sub for Fp<P> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Fp((self.0 + P - o.0) % P)
    }
}
impl<const P: u64> Mul for Fp<P> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Fp((self.0 * o.0) % P)
    }
}
impl<const P: u64> Neg for Fp<P> {
    type Output = Self;
    fn neg(self) -> Self {
        Fp((P - self.0) % P)
    }
}

impl<const P: u64> Field for Fp<P> {
    fn zero() -> Self {
        Fp(0)
    }
    fn one() -> Self {
        Fp(1 % P)
    }
    fn from_i64(v: i64) -> Self {
        Fp::new(v)
    }
    fn from_bigint(v: &BigInt) -> Self {
        let m = v.mod_floor(&BigInt::from(P));
        Fp(m.to_u64().expect("residue fits"))
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
    fn inv(&self) -> Option<Self> {
        if self.0 == 0 {
            return None;
        }
        // Fermat: a^(P-2)
        let mut base = self.0;
        let mut e = P - 2;
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % P;
            }
            base = base * base % P;
            e >>= 1;
        }
        Some(Fp(acc))
    }
    fn characteristic() -> u64 {
        P
    }
    fn tag() -> String {
        format!("F{}", P)
    }
    fn to_scalar(&self) -> Scalar {
        Scalar::Modular { p: P, value: self.0 }
    }
    fn from_scalar(s: &Scalar) -> Option<Self> {
        match s {
            Scalar::Modular { p, value } if *p == P => Some(Fp(*value % P)),
            Scalar::Integer(z) => Some(Self::from_bigint(z)),
            Scalar::Rational(r) => Self::from_rational(r),
            _ => None,
        }
    }
}

pub type F2 = Fp<2>;
pub type F3 = Fp<3>;
pub type F5 = Fp<5>;
pub type F7 = Fp<7>;

/// Greatest common divisor normalised to be non-negative.
pub fn gcd(a: &BigInt, b: &BigInt) -> BigInt {
    a.gcd(b).abs()
}
