//! Exact arithmetic on the numbers that dominate certification: binary
//! fractions. `Dyadic` never normalizes, so it avoids the gcd cost of
//! general rationals; `Exact` lets the same code run on either.

use std::cmp::Ordering;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_traits::{One, ToPrimitive, Zero};

use crate::exact::scalar::{to_f64, GaussianRational, Rational};

/// `m * 2^e`.
#[derive(Clone, Debug)]
pub(crate) struct Dyadic {
    m: BigInt,
    e: i64,
}

impl Dyadic {
    fn align(&self, other: &Self) -> (BigInt, BigInt, i64) {
        match self.e.cmp(&other.e) {
            Ordering::Equal => (self.m.clone(), other.m.clone(), self.e),
            Ordering::Less => (
                self.m.clone(),
                &other.m << (other.e - self.e) as usize,
                self.e,
            ),
            Ordering::Greater => (
                &self.m << (self.e - other.e) as usize,
                other.m.clone(),
                other.e,
            ),
        }
    }
}

impl Add for Dyadic {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let (a, b, e) = self.align(&rhs);
        Self { m: a + b, e }
    }
}

impl Sub for Dyadic {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        let (a, b, e) = self.align(&rhs);
        Self { m: a - b, e }
    }
}

impl Mul for Dyadic {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Self {
            m: self.m * rhs.m,
            e: self.e + rhs.e,
        }
    }
}

impl Neg for Dyadic {
    type Output = Self;
    fn neg(self) -> Self {
        Self {
            m: -self.m,
            e: self.e,
        }
    }
}

impl Zero for Dyadic {
    fn zero() -> Self {
        Self {
            m: BigInt::zero(),
            e: 0,
        }
    }
    fn is_zero(&self) -> bool {
        self.m.is_zero()
    }
}

impl PartialEq for Dyadic {
    fn eq(&self, other: &Self) -> bool {
        self.partial_cmp(other) == Some(Ordering::Equal)
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        let (a, b, _) = self.align(other);
        Some(a.cmp(&b))
    }
}

pub(crate) trait Exact:
    Clone
    + PartialOrd
    + Zero
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn from_integer(v: BigInt) -> Self;
    fn from_rational(x: &Rational) -> Option<Self>;
    fn to_rational(&self) -> Rational;
    fn approx(&self) -> f64;
}

impl Exact for Rational {
    fn from_integer(v: BigInt) -> Self {
        Rational::from_integer(v)
    }
    fn from_rational(x: &Rational) -> Option<Self> {
        Some(x.clone())
    }
    fn to_rational(&self) -> Rational {
        self.clone()
    }
    fn approx(&self) -> f64 {
        to_f64(self)
    }
}

impl Exact for Dyadic {
    fn from_integer(v: BigInt) -> Self {
        Self { m: v, e: 0 }
    }
    fn from_rational(x: &Rational) -> Option<Self> {
        let d = x.denom();
        let k = d.bits() - 1;
        (*d == BigInt::one() << k).then(|| Self {
            m: x.numer().clone(),
            e: -(k as i64),
        })
    }
    fn to_rational(&self) -> Rational {
        if self.e >= 0 {
            Rational::from_integer(&self.m << self.e as usize)
        } else {
            Rational::new(self.m.clone(), BigInt::one() << (-self.e) as usize)
        }
    }
    fn approx(&self) -> f64 {
        let b = self.m.bits() as i64;
        let shift = (b - 62).max(0);
        let top = (&self.m >> shift as usize).to_f64().unwrap_or(f64::NAN);
        let e = self.e + shift;
        if self.m.sign() == Sign::NoSign {
            0.0
        } else {
            top * 2f64.powi(e.clamp(-2000, 2000) as i32)
        }
    }
}

/// A complex number with parts in `T`.
#[derive(Clone, Debug)]
pub(crate) struct Cx<T> {
    pub re: T,
    pub im: T,
}

impl<T: Exact> Cx<T> {
    pub fn from_gauss(z: &GaussianRational) -> Option<Self> {
        Some(Self {
            re: T::from_rational(&z.re)?,
            im: T::from_rational(&z.im)?,
        })
    }

    pub fn real(re: T) -> Self {
        Self { re, im: T::zero() }
    }

    pub fn zero() -> Self {
        Self {
            re: T::zero(),
            im: T::zero(),
        }
    }

    pub fn one() -> Self {
        Self::real(T::from_integer(BigInt::one()))
    }

    pub fn add(&self, o: &Self) -> Self {
        Self {
            re: self.re.clone() + o.re.clone(),
            im: self.im.clone() + o.im.clone(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self {
            re: self.re.clone() - o.re.clone(),
            im: self.im.clone() - o.im.clone(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self {
            re: self.re.clone() * o.re.clone() - self.im.clone() * o.im.clone(),
            im: self.re.clone() * o.im.clone() + self.im.clone() * o.re.clone(),
        }
    }

    pub fn norm_sqr(&self) -> T {
        self.re.clone() * self.re.clone() + self.im.clone() * self.im.clone()
    }
}

/// Converts all values or none.
pub(crate) fn convert_all<T: Exact>(zs: &[GaussianRational]) -> Option<Vec<Cx<T>>> {
    zs.iter().map(Cx::from_gauss).collect()
}
