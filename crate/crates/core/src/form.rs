//! Homogeneous binary forms in the monomial basis.
//!
//! A form of degree `d` is stored as `c_0..c_d` meaning
//! `sum_i c_i x^(d-i) y^i`. Dehomogenization sets `y = 1`, so the point
//! `(1:0)` is the root "at infinity" and its multiplicity is the number of
//! leading zero coefficients.

use std::fmt;
use std::ops::Deref;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::scalar::{denominator_lcm, parse_rational, rat, Rational};
use crate::exact::sturm::{sturm_count, RootRange};
use crate::exact::UniPoly;

/// Distinct projective roots of a form, and how many of them are real.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootProfile {
    pub total: usize,
    pub real: usize,
}

/// Any homogeneous binary form over `Q`, zero included.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct HomForm {
    coeffs: Vec<Rational>,
}

impl HomForm {
    /// `coeffs` must be non-empty; its length fixes the formal degree.
    pub fn new(coeffs: Vec<Rational>) -> Self {
        assert!(
            !coeffs.is_empty(),
            "a binary form has at least one coefficient"
        );
        Self { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| rat(c)).collect())
    }

    pub fn zero(degree: usize) -> Self {
        Self::new(vec![Rational::zero(); degree + 1])
    }

    /// `x^(d-i) y^i`
    pub fn monomial(degree: usize, i: usize) -> Self {
        let mut c = vec![Rational::zero(); degree + 1];
        c[i] = Rational::one();
        Self::new(c)
    }

    /// Parses a comma-separated list of `p` or `p/q` coefficients `c_0..c_d`,
    /// keeping the given scale. The zero form is rejected.
    pub fn parse(list: &str) -> Result<Self> {
        let coeffs = list
            .split(',')
            .map(parse_rational)
            .collect::<Result<Vec<_>>>()?;
        if coeffs.len() < 2 {
            return Err(Error::Parse(
                "a form needs at least two coefficients (degree >= 1)".into(),
            ));
        }
        let f = Self::new(coeffs);
        if f.is_zero() {
            return Err(Error::ZeroForm);
        }
        Ok(f)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// `(F(t, 1), multiplicity of the root (1:0))`.
    pub fn dehomogenize(&self) -> Result<(UniPoly<Rational>, usize)> {
        let lead_zeros = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead_zeros == self.coeffs.len() {
            return Err(Error::ZeroForm);
        }
        let p = UniPoly::new(self.coeffs.iter().rev().cloned().collect());
        Ok((p, lead_zeros))
    }

    /// Inverse of [`HomForm::dehomogenize`].
    pub fn from_dehomogenized(p: &UniPoly<Rational>, infinity: usize) -> Self {
        let n = p.degree().unwrap_or(0);
        let d = n + infinity;
        let coeffs = (0..=d)
            .map(|i| {
                if i < infinity {
                    Rational::zero()
                } else {
                    p.coeff(d - i)
                }
            })
            .collect();
        Self::new(coeffs)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    /// Sum of two forms of equal degree.
    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.degree(), other.degree());
        Self::new(
            self.coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    /// Linear combination `sum_j w_j * forms_j` of forms of equal degree.
    pub fn combine(forms: &[impl AsRef<HomForm>], weights: &[Rational]) -> Self {
        let d = forms[0].as_ref().degree();
        let mut out = vec![Rational::zero(); d + 1];
        for (f, w) in forms.iter().zip(weights) {
            if w.is_zero() {
                continue;
            }
            for (o, c) in out.iter_mut().zip(f.as_ref().coeffs()) {
                *o += c * w;
            }
        }
        Self::new(out)
    }

    /// Substitutes `x -> a x + b y`, `y -> c x + d y` for `m = [[a, b], [c, d]]`.
    pub fn substitute(&self, m: &[[Rational; 2]; 2]) -> Self {
        let d = self.degree();
        let lx = Self::new(vec![m[0][0].clone(), m[0][1].clone()]);
        let ly = Self::new(vec![m[1][0].clone(), m[1][1].clone()]);
        let mut px = vec![Self::from_ints(&[1])];
        let mut py = vec![Self::from_ints(&[1])];
        for k in 0..d {
            px.push(px[k].mul(&lx));
            py.push(py[k].mul(&ly));
        }
        let mut out = Self::zero(d);
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                out = out.add(&px[d - i].mul(&py[i]).scale(c));
            }
        }
        out
    }

    /// Homogeneous discriminant of formal degree `d`: zero iff the form has a
    /// repeated projective root. Degree-one forms have discriminant one.
    pub fn discriminant(&self) -> Result<Rational> {
        let (p, inf) = self.dehomogenize()?;
        let d = self.degree();
        if d <= 1 {
            return Ok(Rational::one());
        }
        Ok(match inf {
            0 => p.discriminant()?,
            1 => {
                let lc = p.leading().cloned().unwrap_or_default();
                if p.degree() == Some(0) {
                    lc.clone() * lc
                } else {
                    &lc * &lc * p.discriminant()?
                }
            }
            _ => Rational::zero(),
        })
    }

    /// Projective square-freeness, counting `(1:0)` with its multiplicity.
    pub fn is_square_free(&self) -> Result<bool> {
        let (p, inf) = self.dehomogenize()?;
        Ok(inf <= 1 && p.is_square_free()?)
    }

    /// Distinct projective roots on `P^1(C)` and the real ones among them.
    pub fn root_profile(&self) -> Result<RootProfile> {
        let (p, inf) = self.dehomogenize()?;
        let at_inf = usize::from(inf > 0);
        let sf = p.square_free_part()?;
        let total = sf.degree().unwrap_or(0) + at_inf;
        let real = if sf.is_constant() {
            0
        } else {
            sturm_count(&sf, &RootRange::Line)?
        } + at_inf;
        Ok(RootProfile { total, real })
    }

    /// Projective gcd of nonzero forms (degree counts the root at infinity).
    pub fn gcd(forms: &[impl AsRef<HomForm>]) -> Result<HomForm> {
        let mut acc: Option<(UniPoly<Rational>, usize)> = None;
        for f in forms {
            let f = f.as_ref();
            if f.is_zero() {
                continue;
            }
            let (p, inf) = f.dehomogenize()?;
            acc = Some(match acc {
                None => (p.monic()?, inf),
                Some((g, m)) => (g.gcd(&p)?, m.min(inf)),
            });
        }
        let (g, m) = acc.ok_or(Error::ZeroForm)?;
        Ok(Self::from_dehomogenized(&g, m))
    }

    pub fn canonical(&self) -> Result<BinaryForm> {
        BinaryForm::new(self.coeffs.clone())
    }

    /// Renders with the given variable names, e.g. `("x", "y")`.
    pub fn display_with(&self, x: &str, y: &str) -> String {
        let d = self.degree();
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mono = match (d - i, i) {
                (0, 0) => String::new(),
                (a, 0) => power(x, a),
                (0, b) => power(y, b),
                (a, b) => format!("{}{}", power(x, a), power(y, b)),
            };
            let neg = c.is_negative();
            let abs = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if mono.is_empty() || !abs.is_one() {
                out.push_str(&abs.to_string());
            }
            out.push_str(&mono);
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

fn power(v: &str, e: usize) -> String {
    if e == 1 {
        v.to_string()
    } else {
        format!("{v}^{e}")
    }
}

impl AsRef<HomForm> for HomForm {
    fn as_ref(&self) -> &HomForm {
        self
    }
}

impl fmt::Display for HomForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with("x", "y"))
    }
}

/// Nonzero binary form normalized to a canonical projective representative:
/// integer coefficients with content one and first nonzero coefficient
/// positive. Two forms define the same point of `P^d` iff they are equal.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct BinaryForm {
    ints: Vec<BigInt>,
    form: HomForm,
}

impl PartialOrd for BinaryForm {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for BinaryForm {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.ints
            .len()
            .cmp(&other.ints.len())
            .then_with(|| self.ints.cmp(&other.ints))
    }
}

impl BinaryForm {
    pub fn new(coeffs: Vec<Rational>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::ZeroForm);
        }
        let l = denominator_lcm(&coeffs);
        let ints: Vec<BigInt> = coeffs
            .iter()
            .map(|c| (c * Rational::from_integer(l.clone())).to_integer())
            .collect();
        Self::from_integers(ints)
    }

    pub fn from_integers(ints: Vec<BigInt>) -> Result<Self> {
        let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if g.is_zero() {
            return Err(Error::ZeroForm);
        }
        let first_negative = ints
            .iter()
            .find(|c| !c.is_zero())
            .is_some_and(Signed::is_negative);
        let g = if first_negative { -g } else { g };
        let ints: Vec<BigInt> = ints.into_iter().map(|c| c / &g).collect();
        let form = HomForm::new(ints.iter().cloned().map(Rational::from_integer).collect());
        Ok(Self { ints, form })
    }

    pub fn from_ints(coeffs: &[i64]) -> Result<Self> {
        Self::from_integers(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// Parses a comma-separated list of `p` or `p/q` coefficients `c_0..c_d`.
    pub fn parse(list: &str) -> Result<Self> {
        HomForm::parse(list)?.canonical()
    }

    pub fn integer_coeffs(&self) -> &[BigInt] {
        &self.ints
    }

    pub fn as_hom(&self) -> &HomForm {
        &self.form
    }
}

impl Deref for BinaryForm {
    type Target = HomForm;
    fn deref(&self) -> &HomForm {
        &self.form
    }
}

impl AsRef<HomForm> for BinaryForm {
    fn as_ref(&self) -> &HomForm {
        &self.form
    }
}

impl fmt::Display for BinaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.form, f)
    }
}

/// Distinct projective roots of a nonzero form over `C`, and the real ones.
pub fn projective_root_profile(f: &HomForm) -> Result<RootProfile> {
    f.root_profile()
}

/// Square-freeness of a nonzero form as a projective object.
pub fn is_square_free(f: &HomForm) -> Result<bool> {
    f.is_square_free()
}
