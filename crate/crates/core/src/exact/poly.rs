//! Dense univariate polynomials over an exact field.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::scalar::{Conjugate, Field};
use crate::error::{Error, Result};

/// Coefficients indexed by monomial degree. The last stored coefficient is
/// nonzero; the zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct UniPoly<F> {
    coeffs: Vec<F>,
}

impl<F: Field> UniPoly<F> {
    pub fn new(mut coeffs: Vec<F>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: F) -> Self {
        Self::new(vec![c])
    }

    /// `c * t^n`
    pub fn monomial(c: F, n: usize) -> Self {
        let mut coeffs = vec![F::zero(); n + 1];
        coeffs[n] = c;
        Self::new(coeffs)
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| F::from_int(c)).collect())
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<F> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading(&self) -> Option<&F> {
        self.coeffs.last()
    }

    pub fn coeff(&self, n: usize) -> F {
        self.coeffs.get(n).cloned().unwrap_or_else(F::zero)
    }

    pub fn eval(&self, x: &F) -> F {
        self.coeffs
            .iter()
            .rev()
            .fold(F::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.clone() * F::from_int(i as i64))
                .collect(),
        )
    }

    pub fn scale(&self, c: &F) -> Self {
        Self::new(self.coeffs.iter().map(|x| x.clone() * c.clone()).collect())
    }

    pub fn monic(&self) -> Result<Self> {
        let lc = self.leading().ok_or(Error::ZeroPolynomial)?.clone();
        Ok(self.scale(&(F::one() / lc)))
    }

    /// Euclidean division; `divisor` must be nonzero.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        let dd = divisor.degree().ok_or(Error::ZeroPolynomial)?;
        let lc = divisor.coeffs[dd].clone();
        let mut rem = self.coeffs.clone();
        let n = rem.len();
        if n <= dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quot = vec![F::zero(); n - dd];
        for k in (0..n - dd).rev() {
            let c = rem[k + dd].clone() / lc.clone();
            if c.is_zero() {
                continue;
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[k + j] = rem[k + j].clone() - c.clone() * dc.clone();
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Ok((Self::new(quot), Self::new(rem)))
    }

    pub fn rem(&self, divisor: &Self) -> Result<Self> {
        Ok(self.div_rem(divisor)?.1)
    }

    /// Monic gcd over the coefficient field.
    pub fn gcd(&self, other: &Self) -> Result<Self> {
        if self.is_zero() && other.is_zero() {
            return Err(Error::GcdOfZeros);
        }
        if let Some(g) = F::fast_gcd(self, other) {
            return g.monic();
        }
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `f / gcd(f, f')`, monic.
    pub fn square_free_part(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if self.is_constant() {
            return Ok(Self::one());
        }
        let g = self.gcd(&self.derivative())?;
        self.div_rem(&g)?.0.monic()
    }

    pub fn is_square_free(&self) -> Result<bool> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        Ok(self.gcd(&self.derivative())?.is_constant())
    }

    /// Resultant via the Euclidean remainder sequence.
    pub fn resultant(&self, other: &Self) -> F {
        let (Some(m), Some(n)) = (self.degree(), other.degree()) else {
            return F::zero();
        };
        if n == 0 {
            return pow(&other.coeffs[0], m);
        }
        if m == 0 {
            return pow(&self.coeffs[0], n);
        }
        // res(f, g) = (-1)^(mn) lc(g)^(m - deg r) res(g, r),  r = f mod g
        let r = self.rem(other).expect("nonzero divisor");
        let Some(k) = r.degree() else {
            return F::zero();
        };
        let mut out = pow(&other.coeffs[n], m - k) * other.resultant(&r);
        if (m * n) % 2 == 1 {
            out = -out;
        }
        out
    }

    /// `(-1)^(n(n-1)/2) res(f, f') / lc(f)`, so `disc(at^2+bt+c) = b^2-4ac`.
    pub fn discriminant(&self) -> Result<F> {
        let n = self.degree().ok_or(Error::ZeroPolynomial)?;
        if n == 0 {
            return Err(Error::ConstantPolynomial);
        }
        let mut r = self.resultant(&self.derivative()) / self.coeffs[n].clone();
        if (n * (n - 1) / 2) % 2 == 1 {
            r = -r;
        }
        Ok(r)
    }

    /// Lagrange interpolation through `(x_k, y_k)` with distinct nodes.
    pub fn interpolate(points: &[(F, F)]) -> Self {
        let mut out = Self::zero();
        for (k, (xk, yk)) in points.iter().enumerate() {
            let mut basis = Self::constant(F::one());
            let mut denom = F::one();
            for (j, (xj, _)) in points.iter().enumerate() {
                if j != k {
                    basis = &basis * &Self::new(vec![-xj.clone(), F::one()]);
                    denom = denom * (xk.clone() - xj.clone());
                }
            }
            out = &out + &basis.scale(&(yk.clone() / denom));
        }
        out
    }
}

fn pow<F: Field>(x: &F, n: usize) -> F {
    (0..n).fold(F::one(), |acc, _| acc * x.clone())
}

impl<F: Field> One for UniPoly<F> {
    fn one() -> Self {
        Self::constant(F::one())
    }
}

impl<F: Field> Zero for UniPoly<F> {
    fn zero() -> Self {
        UniPoly::zero()
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl<F: Field + Conjugate> Conjugate for UniPoly<F> {
    fn conjugate(&self) -> Self {
        Self::new(self.coeffs.iter().map(Conjugate::conjugate).collect())
    }
}

impl<F: Field> Add for &UniPoly<F> {
    type Output = UniPoly<F>;
    fn add(self, rhs: Self) -> UniPoly<F> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl<F: Field> Sub for &UniPoly<F> {
    type Output = UniPoly<F>;
    fn sub(self, rhs: Self) -> UniPoly<F> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl<F: Field> Mul for &UniPoly<F> {
    type Output = UniPoly<F>;
    fn mul(self, rhs: Self) -> UniPoly<F> {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![F::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        UniPoly::new(out)
    }
}

impl<F: Field> Add for UniPoly<F> {
    type Output = UniPoly<F>;
    fn add(self, rhs: Self) -> UniPoly<F> {
        &self + &rhs
    }
}

impl<F: Field> Mul for UniPoly<F> {
    type Output = UniPoly<F>;
    fn mul(self, rhs: Self) -> UniPoly<F> {
        &self * &rhs
    }
}

impl<F: Field> Neg for UniPoly<F> {
    type Output = UniPoly<F>;
    fn neg(self) -> UniPoly<F> {
        UniPoly::new(self.coeffs.into_iter().map(Neg::neg).collect())
    }
}

impl<F: Field + fmt::Display> fmt::Display for UniPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})t")?,
                _ => write!(f, "({c})t^{i}")?,
            }
        }
        Ok(())
    }
}

impl<F: Field + fmt::Display> fmt::Debug for UniPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
