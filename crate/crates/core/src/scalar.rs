//! Coefficient rings.
//!
//! Every jet, vector-field jet and connection component in this crate is
//! generic over [`Scalar`]: a (possibly graded, possibly non-commutative in
//! the Koszul sense) ring with a partial reciprocal. Three families implement
//! it: exact rationals, symbolic expressions ([`crate::symba::Expr`] and
//! [`crate::symba::Mixed`]), and first-order dual numbers over any of those.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::Error;

/// Arbitrary precision rational number, always in lowest terms.
pub type Rational = BigRational;

/// A ring element usable as a jet coefficient.
///
/// Products are never reordered by generic code: `a * b` keeps `a` on the
/// left, so graded-commutative coefficient rings get their Koszul signs from
/// their own multiplication.
pub trait Scalar:
    Clone
    + PartialEq
    + fmt::Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn from_rational(r: Rational) -> Self;
    /// Two-sided inverse, when one exists in the ring.
    fn try_recip(&self) -> Option<Self>;

    fn from_int(n: i64) -> Self {
        Self::from_rational(rat(n, 1))
    }

    fn scale(&self, r: &Rational) -> Self {
        Self::from_rational(r.clone()) * self.clone()
    }
}

impl Scalar for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn from_rational(r: Rational) -> Self {
        r
    }
    fn try_recip(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
}

/// Shorthand for `p/q` as a [`Rational`].
pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Renders a rational as `p/q`, or `p` when the denominator is one.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `p/q`, `p` or a finite decimal such as `-1.25`.
pub fn parse_rational(s: &str) -> Result<Rational, Error> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        return Ok(Rational::new(p, q));
    }
    if let Some((int, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let negative = int.trim_start().starts_with('-');
        let int_part: BigInt = match int.trim() {
            "" | "-" | "+" => BigInt::zero(),
            t => t.parse().map_err(|_| bad())?,
        };
        let frac_part: BigInt = frac.parse().map_err(|_| bad())?;
        let scale = num_traits::pow(BigInt::from(10), frac.len());
        let mut value = Rational::from_integer(int_part.abs()) + Rational::new(frac_part, scale);
        if negative {
            value = -value;
        }
        return Ok(value);
    }
    let p: BigInt = s.parse().map_err(|_| bad())?;
    Ok(Rational::from_integer(p))
}

/// Element `real + eps * infinitesimal` of `R[eps]/(eps^2)`.
///
/// Used to take exact first-order variations: the adjoint action is the
/// `eps` part of a conjugation, the Maurer-Cartan term is the `eps` part of
/// `g . (g^-1 + eps dg^-1)`. The infinitesimal part may carry a different
/// grading than the real part.
#[derive(Clone, Debug, PartialEq)]
pub struct Dual<T> {
    pub real: T,
    pub eps: T,
}

impl<T: Scalar> Dual<T> {
    pub fn new(real: T, eps: T) -> Self {
        Self { real, eps }
    }

    pub fn real(real: T) -> Self {
        Self { real, eps: T::zero() }
    }
}

impl<T: Scalar> Add for Dual<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Dual::new(self.real + rhs.real, self.eps + rhs.eps)
    }
}

impl<T: Scalar> Sub for Dual<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Dual::new(self.real - rhs.real, self.eps - rhs.eps)
    }
}

impl<T: Scalar> Neg for Dual<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Dual::new(-self.real, -self.eps)
    }
}

impl<T: Scalar> Mul for Dual<T> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let eps = self.real.clone() * rhs.eps + self.eps * rhs.real.clone();
        Dual::new(self.real * rhs.real, eps)
    }
}

impl<T: Scalar> Scalar for Dual<T> {
    fn zero() -> Self {
        Dual::new(T::zero(), T::zero())
    }
    fn one() -> Self {
        Dual::real(T::one())
    }
    fn is_zero(&self) -> bool {
        self.real.is_zero() && self.eps.is_zero()
    }
    fn from_rational(r: Rational) -> Self {
        Dual::real(T::from_rational(r))
    }
    fn try_recip(&self) -> Option<Self> {
        // (a + eps b)^-1 = a^-1 - eps a^-1 b a^-1
        let inv = self.real.try_recip()?;
        let eps = -(inv.clone() * self.eps.clone() * inv.clone());
        Some(Dual::new(inv, eps))
    }
}
