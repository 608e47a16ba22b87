//! Sturm sequences over the integers and real-root isolation by bisection.
//!
//! The sequence is built from primitive pseudo-remainders with the sign fixed
//! so that every term is a positive multiple of the classical Sturm term;
//! sign-variation counts are therefore identical to the textbook sequence
//! while coefficients stay integral.

use std::cmp::Ordering;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::poly::UniPoly;
use super::scalar::{denominator_lcm, Rational};
use crate::error::{Error, Result};

/// Integer coefficients, index = degree, trimmed.
pub(crate) type IntPoly = Vec<BigInt>;

fn trim(mut p: IntPoly) -> IntPoly {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn content(p: &[BigInt]) -> BigInt {
    p.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c))
}

/// Clears denominators and divides by the content, keeping the sign.
pub(crate) fn primitive_integer_poly(f: &UniPoly<Rational>) -> IntPoly {
    let l = denominator_lcm(f.coeffs());
    let p: IntPoly = f
        .coeffs()
        .iter()
        .map(|c| (c * Rational::from_integer(l.clone())).to_integer())
        .collect();
    let g = content(&p);
    if g.is_zero() {
        return Vec::new();
    }
    p.into_iter().map(|c| c / &g).collect()
}

fn int_derivative(p: &[BigInt]) -> IntPoly {
    trim(
        p.iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * BigInt::from(i))
            .collect(),
    )
}

/// `(lc(b)^k * (a mod b), k)` where `k` counts the reduction steps taken.
fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> (IntPoly, usize) {
    let db = b.len() - 1;
    let lc = &b[db];
    let mut r = a.to_vec();
    let mut k = 0;
    while r.len() > db && !r.is_empty() {
        k += 1;
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        for c in r.iter_mut() {
            *c *= lc;
        }
        for (j, bc) in b.iter().enumerate() {
            r[dr - db + j] -= &lr * bc;
        }
        r = trim(r);
    }
    (r, k)
}

fn primitive(p: IntPoly) -> IntPoly {
    let g = content(&p);
    if g.is_zero() {
        return p;
    }
    p.into_iter().map(|c| c / &g).collect()
}

/// Gcd over `Q` through the primitive pseudo-remainder sequence, which keeps
/// coefficients integral and small. Not both of `a`, `b` may be zero.
pub(crate) fn primitive_gcd(a: &UniPoly<Rational>, b: &UniPoly<Rational>) -> UniPoly<Rational> {
    let (mut a, mut b) = (primitive_integer_poly(a), primitive_integer_poly(b));
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_empty() {
        let r = primitive(pseudo_rem(&a, &b).0);
        a = b;
        b = r;
    }
    UniPoly::new(a.into_iter().map(Rational::from_integer).collect())
}

/// Sign of `p(x)` for a rational `x`, without forming fractions.
pub(crate) fn sign_at(p: &[BigInt], x: &Rational) -> Ordering {
    if p.is_empty() {
        return Ordering::Equal;
    }
    let (num, den) = (x.numer(), x.denom());
    let n = p.len() - 1;
    // sum a_i num^i den^(n-i); den > 0 so the sign matches p(x).
    let mut acc = BigInt::zero();
    let mut num_pow = BigInt::one();
    let mut den_pows = Vec::with_capacity(n + 1);
    let mut dp = BigInt::one();
    for _ in 0..=n {
        den_pows.push(dp.clone());
        dp *= den;
    }
    for (i, a) in p.iter().enumerate() {
        if !a.is_zero() {
            acc += a * &num_pow * &den_pows[n - i];
        }
        num_pow *= num;
    }
    acc.sign().cmp_zero()
}

trait SignExt {
    fn cmp_zero(self) -> Ordering;
}

impl SignExt for Sign {
    fn cmp_zero(self) -> Ordering {
        match self {
            Sign::Minus => Ordering::Less,
            Sign::NoSign => Ordering::Equal,
            Sign::Plus => Ordering::Greater,
        }
    }
}

fn sign_at_infinity(p: &[BigInt], negative: bool) -> Ordering {
    let Some(lc) = p.last() else {
        return Ordering::Equal;
    };
    let s = lc.sign().cmp_zero();
    if negative && (p.len() - 1) % 2 == 1 {
        s.reverse()
    } else {
        s
    }
}

fn variations(signs: impl Iterator<Item = Ordering>) -> usize {
    let mut last = Ordering::Equal;
    let mut count = 0;
    for s in signs.filter(|s| *s != Ordering::Equal) {
        if last != Ordering::Equal && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

/// Where to count roots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RootRange {
    /// All of the real line.
    Line,
    /// The open interval `(lo, hi)`.
    Open(Rational, Rational),
}

#[derive(Clone, Debug)]
pub struct SturmSequence {
    seq: Vec<IntPoly>,
}

impl SturmSequence {
    pub fn new(f: &UniPoly<Rational>) -> Result<Self> {
        let p0 = primitive_integer_poly(f);
        if p0.is_empty() {
            return Err(Error::ZeroPolynomial);
        }
        let mut seq = vec![p0.clone()];
        let p1 = int_derivative(&p0);
        if p1.is_empty() {
            return Ok(Self { seq });
        }
        let g = content(&p1);
        seq.push(p1.into_iter().map(|c| c / &g).collect());
        loop {
            let n = seq.len();
            let (a, b) = (&seq[n - 2], &seq[n - 1]);
            if b.len() <= 1 {
                break;
            }
            let (r, k) = pseudo_rem(a, b);
            if r.is_empty() {
                break;
            }
            // next = -(a mod b) up to a positive factor
            let lc_negative = b.last().unwrap().is_negative();
            let flip = !(lc_negative && k % 2 == 1);
            let g = content(&r);
            let next: IntPoly = r
                .into_iter()
                .map(|c| {
                    let c = c / &g;
                    if flip {
                        -c
                    } else {
                        c
                    }
                })
                .collect();
            seq.push(next);
        }
        Ok(Self { seq })
    }

    fn variations_at(&self, x: &Rational) -> usize {
        variations(self.seq.iter().map(|p| sign_at(p, x)))
    }

    fn variations_at_infinity(&self, negative: bool) -> usize {
        variations(self.seq.iter().map(|p| sign_at_infinity(p, negative)))
    }

    pub(crate) fn poly(&self) -> &[BigInt] {
        &self.seq[0]
    }

    /// Distinct real roots in `(lo, hi]`.
    pub fn count_half_open(&self, lo: &Rational, hi: &Rational) -> usize {
        self.variations_at(lo)
            .saturating_sub(self.variations_at(hi))
    }

    pub fn count(&self, range: &RootRange) -> usize {
        match range {
            RootRange::Line => self
                .variations_at_infinity(true)
                .saturating_sub(self.variations_at_infinity(false)),
            RootRange::Open(lo, hi) => {
                if lo >= hi {
                    return 0;
                }
                let at_hi = usize::from(sign_at(self.poly(), hi) == Ordering::Equal);
                self.count_half_open(lo, hi).saturating_sub(at_hi)
            }
        }
    }

    /// Power-of-two bound strictly exceeding the modulus of every root.
    pub fn root_bound(&self) -> Rational {
        let p = self.poly();
        let n = p.len() - 1;
        let lc = p[n].abs();
        let max = p[..n].iter().map(|c| c.abs()).max().unwrap_or_default();
        // Cauchy: |root| <= 1 + max|a_i| / |a_n|
        let bound = BigInt::one() + max.div_ceil(&lc);
        let mut b = BigInt::one();
        while b <= bound {
            b <<= 1;
        }
        Rational::from_integer(b)
    }
}

/// Distinct real roots of `f` in `range`; `f` should be square-free on it.
pub fn sturm_count(f: &UniPoly<Rational>, range: &RootRange) -> Result<usize> {
    Ok(SturmSequence::new(f)?.count(range))
}

/// Isolating interval for a single real root. `lo == hi` marks an exact
/// rational root; otherwise the root lies strictly inside `(lo, hi)` and is
/// the only one there.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootInterval {
    pub lo: Rational,
    pub hi: Rational,
}

impl RootInterval {
    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / Rational::from_integer(BigInt::from(2))
    }
}

/// Real roots of a square-free rational polynomial, kept refinable.
#[derive(Clone, Debug)]
pub struct RealRoots {
    sturm: SturmSequence,
    pub intervals: Vec<RootInterval>,
}

impl RealRoots {
    pub fn isolate(f: &UniPoly<Rational>) -> Result<Self> {
        if f.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if !f.is_square_free()? {
            return Err(Error::NotSquareFree);
        }
        let sturm = SturmSequence::new(f)?;
        let mut intervals = Vec::new();
        if f.is_constant() {
            return Ok(Self { sturm, intervals });
        }
        let b = sturm.root_bound();
        let mut stack = vec![(-b.clone(), b)];
        while let Some((lo, hi)) = stack.pop() {
            let n = sturm.count_half_open(&lo, &hi);
            if n == 0 {
                continue;
            }
            if n == 1 {
                if sign_at(sturm.poly(), &hi) == Ordering::Equal {
                    intervals.push(RootInterval { lo: hi.clone(), hi });
                } else {
                    intervals.push(RootInterval { lo, hi });
                }
                continue;
            }
            let mid = (&lo + &hi) / Rational::from_integer(BigInt::from(2));
            stack.push((lo, mid.clone()));
            stack.push((mid, hi));
        }
        intervals.sort_by(|a, b| (&a.lo, &a.hi).cmp(&(&b.lo, &b.hi)));
        Ok(Self { sturm, intervals })
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    /// Bisects interval `i` once.
    pub fn bisect(&mut self, i: usize) {
        let iv = &self.intervals[i];
        if iv.is_exact() {
            return;
        }
        let mid = iv.midpoint();
        let poly = self.sturm.poly();
        let next = if sign_at(poly, &mid) == Ordering::Equal {
            RootInterval {
                lo: mid.clone(),
                hi: mid,
            }
        } else if self.sturm.count_half_open(&iv.lo, &mid) == 1 {
            RootInterval {
                lo: iv.lo.clone(),
                hi: mid,
            }
        } else {
            RootInterval {
                lo: mid,
                hi: iv.hi.clone(),
            }
        };
        self.intervals[i] = next;
    }

    /// Bisects interval `i` until its width is at most `width`.
    pub fn refine(&mut self, i: usize, width: &Rational) {
        while !self.intervals[i].is_exact() && self.intervals[i].width() > *width {
            self.bisect(i);
        }
    }

    /// Refines until consecutive intervals are disjoint as closed sets and
    /// returns the open cells between them: `(None, Some(lo_0))`, the gaps
    /// `(Some(hi_i), Some(lo_{i+1}))`, and `(Some(hi_last), None)`. Every cell
    /// is root-free. With no roots the single cell is the whole line.
    pub fn cells(&mut self) -> Vec<(Option<Rational>, Option<Rational>)> {
        let n = self.intervals.len();
        if n == 0 {
            return vec![(None, None)];
        }
        for i in 0..n - 1 {
            while self.intervals[i].hi >= self.intervals[i + 1].lo {
                let (wa, wb) = (self.intervals[i].width(), self.intervals[i + 1].width());
                if wa >= wb && !self.intervals[i].is_exact() {
                    self.bisect(i);
                } else {
                    self.bisect(i + 1);
                }
            }
        }
        let mut cells = vec![(None, Some(self.intervals[0].lo.clone()))];
        for w in self.intervals.windows(2) {
            cells.push((Some(w[0].hi.clone()), Some(w[1].lo.clone())));
        }
        cells.push((Some(self.intervals[n - 1].hi.clone()), None));
        cells
    }

    /// One rational point in each cell of [`RealRoots::cells`].
    pub fn separating_points(&mut self) -> Vec<Rational> {
        self.cells().iter().map(|c| cell_point(c, 1, 2)).collect()
    }
}

/// The point at fraction `k/n` across a cell; unbounded sides are treated
/// as extending by `n` units.
pub fn cell_point(cell: &(Option<Rational>, Option<Rational>), k: i64, n: i64) -> Rational {
    let r = |v: i64| Rational::from_integer(BigInt::from(v));
    match cell {
        (None, None) => r(k - 1),
        (None, Some(hi)) => hi - r(n - k),
        (Some(lo), None) => lo + r(k),
        (Some(lo), Some(hi)) => lo + (hi - lo) * Rational::new(BigInt::from(k), BigInt::from(n)),
    }
}

/// One isolating interval per distinct real root of a square-free `f`.
pub fn isolate_real_roots(f: &UniPoly<Rational>) -> Result<Vec<RootInterval>> {
    Ok(RealRoots::isolate(f)?.intervals)
}
