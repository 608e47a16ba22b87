//! Exact scalars: arbitrary-precision rationals and the Gaussian rationals
//! `Q(i)`, together with the complex conjugation that fixes the reals.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::poly::UniPoly;
use crate::error::{Error, Result};

/// Reduced fraction with positive denominator; equality is structural.
pub type Rational = BigRational;

/// Minimal field interface shared by [`Rational`] and [`GaussianRational`].
pub trait Field:
    Clone
    + PartialEq
    + fmt::Debug
    + Zero
    + One
    + Neg<Output = Self>
    + Sub<Output = Self>
    + Div<Output = Self>
    + Send
    + Sync
{
    fn from_int(n: i64) -> Self;

    /// A gcd of `a` and `b` (not both zero) by a method faster than the
    /// generic Euclidean algorithm, if the field has one.
    fn fast_gcd(_a: &UniPoly<Self>, _b: &UniPoly<Self>) -> Option<UniPoly<Self>> {
        None
    }
}

impl Field for Rational {
    fn from_int(n: i64) -> Self {
        Rational::from_integer(BigInt::from(n))
    }

    fn fast_gcd(a: &UniPoly<Self>, b: &UniPoly<Self>) -> Option<UniPoly<Self>> {
        Some(super::sturm::primitive_gcd(a, b))
    }
}

/// The involution fixing the real subfield and sending `i` to `-i`.
pub trait Conjugate {
    fn conjugate(&self) -> Self;
}

impl Conjugate for Rational {
    fn conjugate(&self) -> Self {
        self.clone()
    }
}

impl<T: Conjugate> Conjugate for Vec<T> {
    fn conjugate(&self) -> Self {
        self.iter().map(Conjugate::conjugate).collect()
    }
}

impl<T: Conjugate> Conjugate for [T; 2] {
    fn conjugate(&self) -> Self {
        [self[0].conjugate(), self[1].conjugate()]
    }
}

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p"` or `"p/q"` (surrounding whitespace allowed).
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    match s.split_once('/') {
        None => BigInt::from_str(s)
            .map(Rational::from_integer)
            .map_err(|_| bad()),
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
            let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(Rational::new(n, d))
        }
    }
}

/// Least common multiple of the denominators.
pub fn denominator_lcm<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

/// Best-effort conversion used only for reporting and numeric seeding.
pub fn to_f64(x: &Rational) -> f64 {
    if let Some(v) = x.to_f64() {
        if v.is_finite() {
            return v;
        }
    }
    // Scale both parts down so the quotient survives the conversion.
    let nb = x.numer().bits() as i64;
    let db = x.denom().bits() as i64;
    let shift = (nb.max(db) - 1000).max(0) as usize;
    let n = (x.numer() >> shift).to_f64().unwrap_or(f64::NAN);
    let d = (x.denom() >> shift).to_f64().unwrap_or(f64::NAN);
    n / d
}

/// Rounds `x` to the nearest multiple of `2^-bits`.
pub fn round_dyadic(x: &Rational, bits: u32) -> Rational {
    let scale = BigInt::one() << bits;
    let scaled = x * Rational::from_integer(scale.clone());
    Rational::new(scaled.round().to_integer(), scale)
}

/// Element `re + im*i` of `Q(i)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct GaussianRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        Self { re, im }
    }

    pub fn real(re: Rational) -> Self {
        Self {
            re,
            im: Rational::zero(),
        }
    }

    pub fn i() -> Self {
        Self::new(Rational::zero(), Rational::one())
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// `re^2 + im^2`.
    pub fn norm_sqr(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }
}

impl Conjugate for GaussianRational {
    fn conjugate(&self) -> Self {
        Self::new(self.re.clone(), -self.im.clone())
    }
}

impl From<Rational> for GaussianRational {
    fn from(re: Rational) -> Self {
        Self::real(re)
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else if self.re.is_zero() {
            write!(f, "{}i", self.im)
        } else if self.im.is_negative() {
            write!(f, "{}-{}i", self.re, -self.im.clone())
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

impl Add for GaussianRational {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::new(self.re + rhs.re, self.im + rhs.im)
    }
}

impl Sub for GaussianRational {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.re - rhs.re, self.im - rhs.im)
    }
}

impl Mul for GaussianRational {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        &self * &rhs
    }
}

impl<'a> Mul<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl Div for GaussianRational {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        let n = rhs.norm_sqr();
        let num = &self * &rhs.conjugate();
        Self::new(num.re / &n, num.im / n)
    }
}

impl Neg for GaussianRational {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.re, -self.im)
    }
}

impl Zero for GaussianRational {
    fn zero() -> Self {
        Self::new(Rational::zero(), Rational::zero())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussianRational {
    fn one() -> Self {
        Self::real(Rational::one())
    }
}

impl Field for GaussianRational {
    fn from_int(n: i64) -> Self {
        Self::real(rat(n))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(a: (i64, i64), b: (i64, i64)) -> GaussianRational {
        GaussianRational::new(frac(a.0, a.1), frac(b.0, b.1))
    }

    #[test]
    fn conjugation_flips_imaginary_part() {
        assert_eq!(g((3, 2), (5, 7)).conjugate(), g((3, 2), (-5, 7)));
        let real = GaussianRational::real(frac(4, 3));
        assert_eq!(real.conjugate(), real);
        assert_eq!(frac(4, 3).conjugate(), frac(4, 3));
    }

    #[test]
    fn gaussian_division_inverts_multiplication() {
        let a = g((1, 2), (-3, 4));
        let b = g((2, 1), (5, 3));
        assert_eq!((a.clone() * b.clone()) / b, a);
        assert_eq!(
            GaussianRational::i() * GaussianRational::i(),
            -GaussianRational::one()
        );
    }

    #[test]
    fn parses_rationals() {
        assert_eq!(parse_rational(" -6/4 ").unwrap(), frac(-3, 2));
        assert_eq!(parse_rational("17").unwrap(), rat(17));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert!(parse_rational("1.5").is_err());
    }

    #[test]
    fn display_forms() {
        assert_eq!(g((3, 2), (-5, 7)).to_string(), "3/2-5/7i");
        assert_eq!(g((0, 1), (1, 1)).to_string(), "1i");
        assert_eq!(g((2, 1), (0, 1)).to_string(), "2");
    }

    #[test]
    fn dyadic_rounding() {
        assert_eq!(round_dyadic(&frac(1, 3), 2), frac(1, 4));
        assert_eq!(round_dyadic(&frac(-5, 8), 3), frac(-5, 8));
    }
}
