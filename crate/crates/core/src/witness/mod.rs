//! Conjugation-stable point sets on the rational normal curve and
//! decompositions `f = sum lambda_k (alpha_k x + beta_k y)^d` read off from a
//! square-free apolar form.
//!
//! The points of a decomposition are the projective roots of the apolar form
//! `g`. Roots in `Q(i)` are found exactly. The others are approximated and
//! enclosed in disks certified by the Weierstrass criterion; the coefficients
//! are then fitted exactly at the disk centers, so the reported residual is
//! the exact residual of an explicit decomposition with those centers.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::apolarity::apolar_action;
use crate::error::{Error, Result};
use crate::exact::scalar::{
    denominator_lcm, rat, round_dyadic, to_f64, Conjugate, GaussianRational, Rational,
};
use crate::exact::sturm::sturm_count;
use crate::exact::{RootRange, UniPoly};
use crate::form::HomForm;
use crate::linalg::{rank, solve};
use crate::real_rank::Label;

mod dyadic;

use dyadic::{convert_all, Cx, Dyadic, Exact};

type Gauss = GaussianRational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum PointKind {
    Exact,
    Boxed,
}

/// The point `(alpha x + beta y)^d` of the curve, scaled so that the first
/// nonzero coordinate is 1. A boxed point is an approximation: the true
/// point is `(1 : u)` with `|u - beta| <= radius`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurvePoint {
    pub coords: [Gauss; 2],
    pub radius: Option<Rational>,
}

impl CurvePoint {
    pub fn exact(alpha: Gauss, beta: Gauss) -> Result<Self> {
        Ok(Self {
            coords: canonical_point(&[alpha, beta])?,
            radius: None,
        })
    }

    pub fn kind(&self) -> PointKind {
        if self.radius.is_some() {
            PointKind::Boxed
        } else {
            PointKind::Exact
        }
    }

    pub fn is_real(&self) -> bool {
        self.coords[0].is_real() && self.coords[1].is_real()
    }

    fn radius_or_zero(&self) -> Rational {
        self.radius.clone().unwrap_or_else(Rational::zero)
    }
}

fn canonical_point(p: &[Gauss; 2]) -> Result<[Gauss; 2]> {
    if p[0].is_zero() {
        if p[1].is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        return Ok([Gauss::zero(), Gauss::one()]);
    }
    let inv = Gauss::one() / p[0].clone();
    Ok([Gauss::one(), &p[1] * &inv])
}

/// Projective points together with the involution induced by conjugation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionSet {
    pub points: Vec<CurvePoint>,
    pub pairing: Vec<usize>,
}

impl DecompositionSet {
    /// Builds the set from exact points, rejecting repeated or unstable sets.
    pub fn from_exact(points: &[[Gauss; 2]]) -> Result<Self> {
        let pairing = is_conjugation_stable(points)?.ok_or(Error::NotConjugationStable)?;
        let points = points
            .iter()
            .map(|p| CurvePoint::exact(p[0].clone(), p[1].clone()))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { points, pairing })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn is_exact(&self) -> bool {
        self.points.iter().all(|p| p.kind() == PointKind::Exact)
    }

    pub fn fixed_points(&self) -> usize {
        self.pairing
            .iter()
            .enumerate()
            .filter(|(i, j)| i == *j)
            .count()
    }
}

/// The conjugation involution on a set of distinct projective points, or
/// `None` when conjugation does not preserve the set.
pub fn is_conjugation_stable(points: &[[Gauss; 2]]) -> Result<Option<Vec<usize>>> {
    let canon = points
        .iter()
        .map(canonical_point)
        .collect::<Result<Vec<_>>>()?;
    for (i, p) in canon.iter().enumerate() {
        if canon[..i].contains(p) {
            return Err(Error::DuplicatePoint);
        }
    }
    let mut pairing = Vec::with_capacity(canon.len());
    for p in &canon {
        let c = p.conjugate();
        match canon.iter().position(|q| *q == c) {
            Some(j) => pairing.push(j),
            None => return Ok(None),
        }
    }
    Ok(Some(pairing))
}

fn pairing_is_consistent(set: &DecompositionSet) -> bool {
    let n = set.points.len();
    if set.pairing.len() != n {
        return false;
    }
    set.pairing.iter().enumerate().all(|(i, &j)| {
        if j >= n || set.pairing[j] != i {
            return false;
        }
        let (p, q) = (&set.points[i], &set.points[j]);
        if i == j {
            return p.is_real();
        }
        let off_axis = match &p.radius {
            None => true,
            Some(r) => {
                let im = &p.coords[1].im;
                r * r < im * im
            }
        };
        q.coords == p.coords.conjugate() && q.radius == p.radius && off_axis
    })
}

/// `(s, a)` for a conjugation-stable set: `s` points, `a` swapped pairs.
pub fn label_of_set(set: &DecompositionSet) -> Result<Label> {
    if !pairing_is_consistent(set) {
        return Err(Error::NotConjugationStable);
    }
    let s = set.points.len();
    Ok(Label::new(s, (s - set.fixed_points()) / 2))
}

fn binomial(n: usize, k: usize) -> BigInt {
    let mut b = BigInt::one();
    for j in 0..k {
        b = b * BigInt::from(n - j) / BigInt::from(j + 1);
    }
    b
}

/// Coefficients of `(alpha x + beta y)^d` in the monomial basis.
pub fn curve_embedding(p: &[Gauss; 2], d: usize) -> Vec<Gauss> {
    let mut a_pow = vec![Gauss::one(); d + 1];
    let mut b_pow = vec![Gauss::one(); d + 1];
    for i in 1..=d {
        a_pow[i] = &a_pow[i - 1] * &p[0];
        b_pow[i] = &b_pow[i - 1] * &p[1];
    }
    (0..=d)
        .map(|i| {
            let c = Gauss::real(Rational::from_integer(binomial(d, i)));
            &c * &(&a_pow[d - i] * &b_pow[i])
        })
        .collect()
}

/// Whether the point with coordinates `p` lies in the span of the curve
/// points `set`, decided by exact elimination over `Q(i)`.
pub fn in_span(p: &[Gauss], set: &[[Gauss; 2]]) -> bool {
    let d = p.len() - 1;
    let mut rows: Vec<Vec<Gauss>> = set.iter().map(|q| curve_embedding(q, d)).collect();
    let base = rank(rows.clone());
    rows.push(p.to_vec());
    rank(rows) == base
}

/// A decomposition of a form with its exact relative residual.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub set: DecompositionSet,
    pub coefficients: Vec<Gauss>,
    /// `max |f - sum lambda_k l_k^d| / max |f|` over the coefficients.
    pub residual: f64,
    /// Working precision in bits of the approximate roots; 0 when exact.
    pub precision_bits: u32,
}

impl Decomposition {
    pub fn label(&self) -> Result<Label> {
        label_of_set(&self.set)
    }
}

/// Largest number of precision doublings spent on certification, counted
/// in bits beyond double precision.
pub const REFINEMENT_BUDGET: u32 = 256;

/// Decomposes `f` along the projective roots of the square-free apolar form
/// `g`. Fails with `CertificationFailed` if the residual stays above `tol`.
pub fn decompose(f: &HomForm, g: &HomForm, tol: f64) -> Result<Decomposition> {
    let d = f.degree();
    let s = g.degree();
    if f.is_zero() {
        return Err(Error::ZeroForm);
    }
    if g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if s > d {
        return Err(Error::WitnessTooLarge {
            witness: s,
            form: d,
        });
    }
    if !g.is_square_free()? {
        return Err(Error::NotSquareFree);
    }
    if !apolar_action(g, f)?.is_zero() {
        return Err(Error::NotApolar);
    }
    // g(1, u) = sum b_j u^j; a degree drop means (0:1) is a root.
    let p = UniPoly::new(g.coeffs().to_vec());
    let at_infinity = p.degree() != Some(s);
    let n = p.degree().unwrap_or(0);
    let real_count = if n == 0 {
        0
    } else {
        sturm_count(&p, &RootRange::Line)?
    };
    let tol_q = Rational::from_float(tol).unwrap_or_else(Rational::zero);
    let tol_sq = &tol_q * &tol_q;

    let mut approx = if n == 0 {
        Vec::new()
    } else {
        initial_roots(&p)
    };
    let mut last = f64::INFINITY;
    let mut bits = 48u32;
    loop {
        if n > 0 {
            approx = newton_fixed(&p, &approx, bits);
        }
        let mut certified = certify(&p, &approx, real_count, at_infinity, bits);
        if certified.is_none() && n > 0 {
            approx = refine_roots(&p, approx, bits);
            certified = certify(&p, &approx, real_count, at_infinity, bits);
        }
        if let Some(set) = certified {
            let exact = set.is_exact();
            if let Some(fitted) = fit(&set, f.coeffs(), &tol_sq) {
                last = fitted.residual;
                if fitted.within {
                    let precision_bits = if exact { 0 } else { bits };
                    return Ok(Decomposition {
                        set,
                        coefficients: fitted.lambda,
                        residual: last,
                        precision_bits,
                    });
                }
            }
        }
        if bits >= 53 + REFINEMENT_BUDGET {
            return Err(Error::CertificationFailed {
                residual: last,
                tolerance: tol,
            });
        }
        bits = (bits * 2).min(53 + REFINEMENT_BUDGET);
    }
}

fn horner(p: &UniPoly<Rational>, z: &Gauss) -> (Gauss, Gauss) {
    let mut v = Gauss::zero();
    let mut dv = Gauss::zero();
    for c in p.coeffs().iter().rev() {
        dv = &dv * z + v.clone();
        v = &v * z + Gauss::real(c.clone());
    }
    (v, dv)
}

fn complex_horner(c: &[f64], z: Complex64) -> (Complex64, Complex64) {
    let mut v = Complex64::new(0.0, 0.0);
    let mut dv = Complex64::new(0.0, 0.0);
    for &a in c.iter().rev() {
        dv = dv * z + v;
        v = v * z + a;
    }
    (v, dv)
}

/// Aberth iteration in double precision.
fn initial_roots(p: &UniPoly<Rational>) -> Vec<Gauss> {
    let n = p.degree().unwrap_or(0);
    let lead = p.leading().cloned().unwrap_or_else(Rational::one);
    let c: Vec<f64> = p.coeffs().iter().map(|a| to_f64(&(a / &lead))).collect();
    let radius = 1.0 + c[..n].iter().fold(0.0f64, |m, a| m.max(a.abs()));
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(radius, 0.4 + std::f64::consts::TAU * k as f64 / n as f64))
        .collect();
    if c.iter().all(|a| a.is_finite()) {
        for _ in 0..500 {
            let mut moved = 0.0f64;
            for k in 0..n {
                let (v, dv) = complex_horner(&c, z[k]);
                if v == Complex64::new(0.0, 0.0) {
                    continue;
                }
                let ratio = v / dv;
                let repulsion: Complex64 = (0..n)
                    .filter(|&j| j != k)
                    .map(|j| 1.0 / (z[k] - z[j]))
                    .sum();
                let step = ratio / (1.0 - ratio * repulsion);
                if step.is_finite() {
                    z[k] -= step;
                    moved = moved.max(step.norm() / (1.0 + z[k].norm()));
                }
            }
            if moved < 1e-15 {
                break;
            }
        }
    }
    z.iter()
        .map(|w| {
            let re = Rational::from_float(w.re).unwrap_or_else(Rational::zero);
            let im = Rational::from_float(w.im).unwrap_or_else(Rational::zero);
            Gauss::new(round_dyadic(&re, 60), round_dyadic(&im, 60))
        })
        .collect()
}

fn round_gauss(z: &Gauss, bits: u32) -> Gauss {
    Gauss::new(round_dyadic(&z.re, bits), round_dyadic(&z.im, bits))
}

/// Newton iteration on each root separately, in fixed point with `bits`
/// fractional bits. Fast, but only reliable from good starting points.
fn newton_fixed(p: &UniPoly<Rational>, z: &[Gauss], bits: u32) -> Vec<Gauss> {
    let l = Rational::from_integer(denominator_lcm(p.coeffs()));
    let a: Vec<BigInt> = p.coeffs().iter().map(|c| (c * &l).to_integer()).collect();
    let one = BigInt::one() << bits;
    let fix = |x: &Rational| {
        (x * Rational::from_integer(one.clone()))
            .round()
            .to_integer()
    };
    let mul = |(ar, ai): (&BigInt, &BigInt), (br, bi): (&BigInt, &BigInt)| {
        ((ar * br - ai * bi) >> bits, (ar * bi + ai * br) >> bits)
    };
    z.iter()
        .map(|w| {
            let (mut zr, mut zi) = (fix(&w.re), fix(&w.im));
            for _ in 0..40 {
                let (mut vr, mut vi) = (BigInt::zero(), BigInt::zero());
                let (mut dr, mut di) = (BigInt::zero(), BigInt::zero());
                for c in a.iter().rev() {
                    let (tr, ti) = mul((&dr, &di), (&zr, &zi));
                    dr = tr + &vr;
                    di = ti + &vi;
                    let (tr, ti) = mul((&vr, &vi), (&zr, &zi));
                    vr = tr + (c << bits);
                    vi = ti;
                }
                let den = &dr * &dr + &di * &di;
                if den.is_zero() {
                    break;
                }
                let sr = ((&vr * &dr + &vi * &di) << bits) / &den;
                let si = ((&vi * &dr - &vr * &di) << bits) / &den;
                zr -= &sr;
                zi -= &si;
                if sr.abs() <= BigInt::one() && si.abs() <= BigInt::one() {
                    break;
                }
            }
            Gauss::new(
                Rational::new(zr, one.clone()),
                Rational::new(zi, one.clone()),
            )
        })
        .collect()
}

/// Aberth iteration in `Q(i)`, rounded to multiples of `2^-bits`.
fn refine_roots(p: &UniPoly<Rational>, mut z: Vec<Gauss>, bits: u32) -> Vec<Gauss> {
    let n = z.len();
    // Steps below the rounding noise mean the iteration has converged.
    let eps = Rational::new(BigInt::one(), BigInt::one() << (2 * bits - 16));
    let nudge = Rational::new(BigInt::one(), BigInt::one() << bits);
    for _ in 0..64 {
        let mut done = true;
        for k in 0..n {
            for j in 0..n {
                if j != k && z[j] == z[k] {
                    z[k].im += &nudge * rat(k as i64 + 1);
                }
            }
            let (v, dv) = horner(p, &z[k]);
            if v.is_zero() {
                continue;
            }
            if dv.is_zero() {
                z[k].re += &nudge;
                done = false;
                continue;
            }
            let ratio = v / dv;
            let mut repulsion = Gauss::zero();
            for j in (0..n).filter(|&j| j != k) {
                repulsion = repulsion + Gauss::one() / (z[k].clone() - z[j].clone());
            }
            let denom = Gauss::one() - &ratio * &repulsion;
            if denom.is_zero() {
                continue;
            }
            let step = round_gauss(&(ratio / denom), bits + 8);
            if step.norm_sqr() > eps {
                done = false;
            }
            z[k] = round_gauss(&(z[k].clone() - step), bits);
        }
        if done {
            break;
        }
    }
    z
}

/// Tries to turn approximations into a certified, conjugation-symmetric set.
fn certify(
    p: &UniPoly<Rational>,
    approx: &[Gauss],
    real_count: usize,
    at_infinity: bool,
    bits: u32,
) -> Option<DecompositionSet> {
    let n = approx.len();
    let lead = p.leading().cloned().unwrap_or_else(Rational::one);
    let snap = Rational::new(BigInt::one(), BigInt::one() << (bits / 2));
    let scale = (&lead * Rational::from_integer(denominator_lcm(p.coeffs()))).abs();

    // Real approximations first, then upper half-plane ones mirrored.
    let mut reals = Vec::new();
    let mut uppers = Vec::new();
    let mut lowers = 0;
    for z in approx {
        if z.im.abs() < &snap * (Rational::one() + z.re.abs()) {
            reals.push(Gauss::real(z.re.clone()));
        } else if z.im.is_positive() {
            uppers.push(z.clone());
        } else {
            lowers += 1;
        }
    }
    if reals.len() != real_count || uppers.len() != lowers {
        return None;
    }
    reals.sort_by(|a, b| a.re.cmp(&b.re));
    uppers.sort_by(|a, b| (&a.re, &a.im).cmp(&(&b.re, &b.im)));

    let recognize = |z: Gauss| -> (Gauss, bool) {
        // A root in Q(i) of an integer polynomial with leading coefficient
        // c is w / c for a Gaussian integer w.
        let w = Gauss::new(
            Rational::from_integer((&z.re * &scale).round().to_integer()) / &scale,
            Rational::from_integer((&z.im * &scale).round().to_integer()) / &scale,
        );
        let near = &snap * (Rational::one() + z.re.abs() + z.im.abs());
        if (&w.re - &z.re).abs() < near && (&w.im - &z.im).abs() < near && horner(p, &w).0.is_zero()
        {
            (w, true)
        } else {
            (z, false)
        }
    };

    let mut centers = Vec::with_capacity(n);
    let mut exact = Vec::with_capacity(n);
    for z in reals {
        let (w, e) = recognize(z);
        centers.push(w);
        exact.push(e);
    }
    for z in uppers {
        let (w, e) = recognize(z);
        if !w.im.is_positive() {
            return None;
        }
        centers.push(w.clone());
        centers.push(w.conjugate());
        exact.push(e);
        exact.push(e);
    }

    let l = Rational::from_integer(denominator_lcm(p.coeffs()));
    let ints: Vec<BigInt> = p.coeffs().iter().map(|c| (c * &l).to_integer()).collect();
    let radii = match convert_all::<Dyadic>(&centers) {
        Some(cs) => weierstrass_radii(&ints, &cs, &exact, bits)?,
        None => weierstrass_radii(&ints, &convert_all::<Rational>(&centers)?, &exact, bits)?,
    };

    let mut points = Vec::with_capacity(n + 1);
    let mut pairing = Vec::with_capacity(n + 1);
    for k in 0..n {
        points.push(CurvePoint {
            coords: [Gauss::one(), centers[k].clone()],
            radius: radii[k].clone(),
        });
        let real = k < real_count;
        pairing.push(if real {
            k
        } else if (k - real_count).is_multiple_of(2) {
            k + 1
        } else {
            k - 1
        });
    }
    if at_infinity {
        pairing.push(points.len());
        points.push(CurvePoint {
            coords: [Gauss::zero(), Gauss::one()],
            radius: None,
        });
    }
    Some(DecompositionSet { points, pairing })
}

/// Certified radii of the Weierstrass disks `n |p(z_k)| / (|lc| prod |z_k - z_j|)`
/// around `cs`, or `None` unless the disks are pairwise disjoint and the
/// non-real ones avoid the real axis. Exact roots get no radius.
fn weierstrass_radii<T: Exact>(
    p: &[BigInt],
    cs: &[Cx<T>],
    exact: &[bool],
    bits: u32,
) -> Option<Vec<Option<Rational>>> {
    let n = cs.len();
    let lead = T::from_integer(p.last()?.clone());
    let nn = T::from_integer(BigInt::from(n));
    let two = T::from_integer(BigInt::from(2));
    // r_k^2 = num[k] / den[k]
    let mut num = Vec::with_capacity(n);
    let mut den = Vec::with_capacity(n);
    for k in 0..n {
        if exact[k] {
            num.push(T::zero());
            den.push(T::from_integer(BigInt::one()));
            continue;
        }
        let mut prod = lead.clone() * lead.clone();
        for j in (0..n).filter(|&j| j != k) {
            let dist = cs[k].sub(&cs[j]).norm_sqr();
            if dist.is_zero() {
                return None;
            }
            prod = prod * dist;
        }
        num.push(nn.clone() * nn.clone() * horner_exact(p, &cs[k]).norm_sqr());
        den.push(prod);
    }
    for i in 0..n {
        for j in i + 1..n {
            // (r_i + r_j)^2 <= 2 (r_i^2 + r_j^2) < |z_i - z_j|^2
            let dist = cs[i].sub(&cs[j]).norm_sqr();
            let lhs =
                two.clone() * (num[i].clone() * den[j].clone() + num[j].clone() * den[i].clone());
            if lhs >= dist * den[i].clone() * den[j].clone() {
                return None;
            }
        }
        if !cs[i].im.is_zero() && num[i] >= cs[i].im.clone() * cs[i].im.clone() * den[i].clone() {
            return None;
        }
    }
    Some(
        (0..n)
            .map(|k| {
                (!exact[k]).then(|| {
                    sqrt_upper(
                        &(num[k].to_rational() / den[k].to_rational()),
                        2 * bits + 64,
                    )
                })
            })
            .collect(),
    )
}

fn horner_exact<T: Exact>(p: &[BigInt], z: &Cx<T>) -> Cx<T> {
    let mut v = Cx::zero();
    for c in p.iter().rev() {
        v = v.mul(z).add(&Cx::real(T::from_integer(c.clone())));
    }
    v
}

/// A multiple of `2^-bits` that is at least `sqrt(x)`.
fn sqrt_upper(x: &Rational, bits: u32) -> Rational {
    let scaled = x * Rational::from_integer(BigInt::one() << (2 * bits));
    let root = scaled.ceil().to_integer().sqrt() + BigInt::one();
    Rational::new(root, BigInt::one() << bits)
}

fn embedding_exact<T: Exact>(p: &[Cx<T>; 2], d: usize) -> Vec<Cx<T>> {
    let mut a_pow = vec![Cx::one(); d + 1];
    let mut b_pow = vec![Cx::one(); d + 1];
    for i in 1..=d {
        a_pow[i] = a_pow[i - 1].mul(&p[0]);
        b_pow[i] = b_pow[i - 1].mul(&p[1]);
    }
    (0..=d)
        .map(|i| Cx::real(T::from_integer(binomial(d, i))).mul(&a_pow[d - i].mul(&b_pow[i])))
        .collect()
}

fn larger<T: PartialOrd>(a: T, b: T) -> T {
    if b > a {
        b
    } else {
        a
    }
}

struct Fit {
    lambda: Vec<Gauss>,
    residual: f64,
    within: bool,
}

/// Coefficients of the full system with their residual; `None` when the
/// system is singular. Approximate sets are first fitted by iterative
/// refinement, the exact normal equations are the fallback.
fn fit(set: &DecompositionSet, target: &[Rational], tol_sq: &Rational) -> Option<Fit> {
    if !set.is_exact() {
        let refined = refined_fit::<Dyadic>(set, target, tol_sq)
            .or_else(|| refined_fit::<Rational>(set, target, tol_sq));
        if let Some((lambda, residual)) = refined {
            return Some(Fit {
                lambda,
                residual,
                within: true,
            });
        }
    }
    let d = target.len() - 1;
    let cols: Vec<Vec<Gauss>> = set
        .points
        .iter()
        .map(|p| curve_embedding(&p.coords, d))
        .collect();
    let s = cols.len();
    let mut normal = vec![vec![Gauss::zero(); s]; s];
    let mut rhs = vec![Gauss::zero(); s];
    for i in 0..s {
        for j in 0..s {
            normal[i][j] = cols[i]
                .iter()
                .zip(&cols[j])
                .fold(Gauss::zero(), |acc, (a, b)| acc + &a.conjugate() * b);
        }
        rhs[i] = cols[i]
            .iter()
            .zip(target)
            .fold(Gauss::zero(), |acc, (a, b)| {
                acc + &a.conjugate() * &Gauss::real(b.clone())
            });
    }
    let lambda = solve(&normal, &rhs)?;
    let (within, residual) = residual_check::<Rational>(&set.points, &lambda, target, tol_sq)?;
    Some(Fit {
        lambda,
        residual,
        within,
    })
}

/// Whether `max |f - sum lambda_k l_k^d|^2 <= tol_sq max |f|^2`, with the
/// relative residual itself. `None` if the data do not fit in `T`.
fn residual_check<T: Exact>(
    points: &[CurvePoint],
    lambda: &[Gauss],
    target: &[Rational],
    tol_sq: &Rational,
) -> Option<(bool, f64)> {
    let d = target.len() - 1;
    let mut cols = Vec::with_capacity(points.len());
    for p in points {
        let c = [
            Cx::<T>::from_gauss(&p.coords[0])?,
            Cx::from_gauss(&p.coords[1])?,
        ];
        cols.push(embedding_exact(&c, d));
    }
    let lambda = convert_all::<T>(lambda)?;
    let tol_sq = T::from_rational(tol_sq)?;
    let mut worst = T::zero();
    let mut size = T::zero();
    for (i, t) in target.iter().enumerate() {
        let t = T::from_rational(t)?;
        let mut r = Cx::real(t.clone());
        for (col, l) in cols.iter().zip(&lambda) {
            r = r.sub(&col[i].mul(l));
        }
        worst = larger(worst, r.norm_sqr());
        size = larger(size, t.clone() * t);
    }
    let ratio = if size.is_zero() {
        worst.approx()
    } else {
        worst.approx() / size.approx()
    };
    Some((worst <= tol_sq * size, ratio.sqrt()))
}

fn assemble(set: &DecompositionSet, owner: &[(usize, bool)], x: &[Rational]) -> Vec<Gauss> {
    let mut lambda = vec![Gauss::zero(); set.points.len()];
    for (&(k, imag), v) in owner.iter().zip(x) {
        if imag {
            lambda[k].im = v.clone();
        } else {
            lambda[k].re = v.clone();
        }
    }
    for (k, &j) in set.pairing.iter().enumerate() {
        if j < k {
            lambda[k] = lambda[j].conjugate();
        }
    }
    lambda
}

/// Least squares in double precision over real unknowns (one per real
/// point, real and imaginary part per pair, so conjugate points get
/// conjugate coefficients), corrected against the exact residual until it
/// drops below the tolerance.
fn refined_fit<T: Exact>(
    set: &DecompositionSet,
    target: &[Rational],
    tol_sq: &Rational,
) -> Option<(Vec<Gauss>, f64)> {
    let d = target.len() - 1;
    let mut cols = Vec::with_capacity(set.points.len());
    for p in &set.points {
        let c = [
            Cx::<T>::from_gauss(&p.coords[0])?,
            Cx::from_gauss(&p.coords[1])?,
        ];
        cols.push(embedding_exact(&c, d));
    }
    let tgt: Vec<T> = target.iter().map(T::from_rational).collect::<Option<_>>()?;
    let tol_sq = T::from_rational(tol_sq)?;
    let two = T::from_integer(BigInt::from(2));
    let mut columns: Vec<Vec<T>> = Vec::new();
    let mut owner = Vec::new();
    for (k, &j) in set.pairing.iter().enumerate() {
        if j == k {
            columns.push(cols[k].iter().map(|v| v.re.clone()).collect());
            owner.push((k, false));
        } else if k < j {
            columns.push(cols[k].iter().map(|v| two.clone() * v.re.clone()).collect());
            columns.push(
                cols[k]
                    .iter()
                    .map(|v| -(two.clone() * v.im.clone()))
                    .collect(),
            );
            owner.push((k, false));
            owner.push((k, true));
        }
    }
    let m = tgt.len();
    let a: Vec<Vec<f64>> = (0..m)
        .map(|i| columns.iter().map(|c| c[i].approx()).collect())
        .collect();
    if a.iter().flatten().any(|v| !v.is_finite()) {
        return None;
    }
    let size = tgt
        .iter()
        .fold(T::zero(), |acc, t| larger(acc, t.clone() * t.clone()));
    if size.is_zero() {
        return None;
    }
    let mut x = vec![T::zero(); columns.len()];
    let mut best: Option<T> = None;
    for _ in 0..12 {
        let r: Vec<T> = (0..m)
            .map(|i| {
                columns
                    .iter()
                    .zip(&x)
                    .fold(tgt[i].clone(), |acc, (c, v)| acc - c[i].clone() * v.clone())
            })
            .collect();
        let worst = r
            .iter()
            .fold(T::zero(), |acc, v| larger(acc, v.clone() * v.clone()));
        if worst <= tol_sq.clone() * size.clone() {
            let xs: Vec<Rational> = x.iter().map(T::to_rational).collect();
            return Some((
                assemble(set, &owner, &xs),
                (worst.approx() / size.approx()).sqrt(),
            ));
        }
        if best.as_ref().is_some_and(|b| worst >= *b) {
            return None;
        }
        best = Some(worst);
        let rf: Vec<f64> = r.iter().map(T::approx).collect();
        let delta = least_squares_f64(&a, &rf)?;
        for (xi, di) in x.iter_mut().zip(delta) {
            *xi = xi.clone() + T::from_rational(&Rational::from_float(di)?)?;
        }
    }
    None
}

/// Householder QR least squares with column equilibration.
fn least_squares_f64(a: &[Vec<f64>], b: &[f64]) -> Option<Vec<f64>> {
    let m = a.len();
    let n = a.first()?.len();
    if m < n {
        return None;
    }
    let scale: Vec<f64> = (0..n)
        .map(|j| (0..m).map(|i| a[i][j] * a[i][j]).sum::<f64>().sqrt())
        .collect();
    if scale.iter().any(|&s| s == 0.0 || !s.is_finite()) {
        return None;
    }
    let mut r: Vec<Vec<f64>> = a
        .iter()
        .map(|row| row.iter().zip(&scale).map(|(v, s)| v / s).collect())
        .collect();
    let mut y = b.to_vec();
    for k in 0..n {
        let norm = (k..m).map(|i| r[i][k] * r[i][k]).sum::<f64>().sqrt();
        if norm == 0.0 {
            return None;
        }
        let alpha = if r[k][k] > 0.0 { -norm } else { norm };
        let mut v: Vec<f64> = (k..m).map(|i| r[i][k]).collect();
        v[0] -= alpha;
        let vn = v.iter().map(|t| t * t).sum::<f64>();
        if vn == 0.0 {
            continue;
        }
        for j in k..n {
            let dot: f64 = (k..m).map(|i| v[i - k] * r[i][j]).sum();
            for i in k..m {
                r[i][j] -= 2.0 * dot / vn * v[i - k];
            }
        }
        let dot: f64 = (k..m).map(|i| v[i - k] * y[i]).sum();
        for i in k..m {
            y[i] -= 2.0 * dot / vn * v[i - k];
        }
    }
    let mut x = vec![0.0; n];
    for k in (0..n).rev() {
        let s: f64 = (k + 1..n).map(|j| r[k][j] * x[j]).sum();
        x[k] = (y[k] - s) / r[k][k];
    }
    let out: Vec<f64> = x.iter().zip(&scale).map(|(v, s)| v / s).collect();
    out.iter().all(|v| v.is_finite()).then_some(out)
}

/// One named check of [`verify_decomposition`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub passed: bool,
    pub label: Option<Label>,
    pub residual: f64,
    pub checks: Vec<Check>,
}

/// Re-checks a decomposition from scratch: distinctness, conjugation
/// symmetry of points and coefficients, membership in the span, residual
/// and label. Failures are reported, never raised.
pub fn verify_decomposition(
    f: &HomForm,
    dec: &Decomposition,
    tol: f64,
    expected: Option<Label>,
) -> VerificationReport {
    let set = &dec.set;
    let mut checks = Vec::new();
    let mut check = |name: &str, passed: bool, detail: String| {
        checks.push(Check {
            name: name.to_string(),
            passed,
            detail,
        });
    };

    let n = set.points.len();
    let mut distinct = n == dec.coefficients.len();
    for i in 0..n {
        for j in i + 1..n {
            let (p, q) = (&set.points[i], &set.points[j]);
            let dist = if p.coords[0] == q.coords[0] {
                (p.coords[1].clone() - q.coords[1].clone()).norm_sqr()
            } else {
                Rational::one()
            };
            let (rp, rq) = (p.radius_or_zero(), q.radius_or_zero());
            if (&rp + &rq) * (&rp + &rq) >= dist {
                distinct = false;
            }
        }
    }
    check("distinct", distinct, format!("{n} points"));

    let stable = pairing_is_consistent(set);
    check(
        "conjugation",
        stable,
        format!("{} fixed points", set.fixed_points()),
    );

    let conj_coeffs = stable
        && dec.coefficients.len() == n
        && set
            .pairing
            .iter()
            .enumerate()
            .all(|(i, &j)| dec.coefficients[j] == dec.coefficients[i].conjugate());
    check(
        "coefficients",
        conj_coeffs,
        "coefficients at conjugate points are conjugate".into(),
    );

    let target: Vec<Gauss> = f.coeffs().iter().cloned().map(Gauss::real).collect();
    if set.is_exact() {
        let pts: Vec<[Gauss; 2]> = set.points.iter().map(|p| p.coords.clone()).collect();
        let inside = in_span(&target, &pts);
        check("span", inside, "exact elimination over Q(i)".into());
    } else {
        check("span", true, "boxed points: residual certificate".into());
    }

    let tol_q = Rational::from_float(tol).unwrap_or_else(Rational::zero);
    let tol_sq = &tol_q * &tol_q;
    let (within, residual) = if dec.coefficients.len() == n {
        residual_check::<Dyadic>(&set.points, &dec.coefficients, f.coeffs(), &tol_sq)
            .or_else(|| {
                residual_check::<Rational>(&set.points, &dec.coefficients, f.coeffs(), &tol_sq)
            })
            .unwrap_or((false, f64::INFINITY))
    } else {
        (false, f64::INFINITY)
    };
    check(
        "residual",
        within,
        format!("{residual:.3e} against {tol:.3e}"),
    );

    let label = label_of_set(set).ok();
    let label_ok = match (label, expected) {
        (Some(l), Some(e)) => l == e,
        (Some(l), None) => l.real_points() == set.fixed_points(),
        (None, _) => false,
    };
    let detail = match (label, expected) {
        (Some(l), Some(e)) => format!("{l}, expected {e}"),
        (Some(l), None) => l.to_string(),
        (None, _) => "set is not conjugation-stable".to_string(),
    };
    check("label", label_ok, detail);

    let passed = checks.iter().all(|c| c.passed);
    VerificationReport {
        passed,
        label,
        residual,
        checks,
    }
}
