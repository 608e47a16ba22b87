//! Brute-force oracle shared by the integration tests. It deliberately
//! avoids the library's algorithms: kernels come from a Hankel system solved
//! by plain Gauss-Jordan, square-freeness from a Sylvester resultant of the
//! two partial derivatives, existence of square-free members from an
//! exhaustive grid large enough that a nonzero polynomial cannot vanish on
//! all of it, and real-rooted forms are built from their roots.

#![allow(dead_code, clippy::needless_range_loop)]

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

fn binom(n: usize, k: usize) -> BigInt {
    let mut b = BigInt::one();
    for i in 0..k {
        b = b * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    b
}

/// Basis of `{b : sum_j b_j a_(i+j) = 0 for all i}` where
/// `c_k = binom(d, k) a_k`, i.e. forms `sum b_j X^(s-j) Y^j` apolar to `f`.
pub fn kernel(c: &[i64], s: usize) -> Vec<Vec<Q>> {
    let d = c.len() - 1;
    assert!(s <= d);
    let a: Vec<Q> = c
        .iter()
        .enumerate()
        .map(|(k, &v)| Q::new(BigInt::from(v), binom(d, k)))
        .collect();
    let rows = d - s + 1;
    let cols = s + 1;
    let mut m: Vec<Vec<Q>> = (0..rows)
        .map(|i| (0..cols).map(|j| a[i + j].clone()).collect())
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][col].recip();
        for v in m[r].iter_mut() {
            *v = &*v * &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][col].is_zero() {
                let factor = m[i][col].clone();
                for j in 0..cols {
                    let t = &m[r][j] * &factor;
                    m[i][j] = &m[i][j] - t;
                }
            }
        }
        pivots.push(col);
        r += 1;
        if r == rows {
            break;
        }
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fcol| {
            let mut v = vec![Q::zero(); cols];
            v[fcol] = Q::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -m[row][fcol].clone();
            }
            v
        })
        .collect()
}

fn to_integers(v: &[Q]) -> Vec<BigInt> {
    let l = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    v.iter()
        .map(|x| (x * Q::from_integer(l.clone())).to_integer())
        .collect()
}

/// Determinant by fraction-free Bareiss elimination.
pub fn det(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * m[n - 1][n - 1].clone()
}

/// Sylvester matrix of two forms of the same formal degree `n`
/// (coefficients listed from `X^n` down to `Y^n`).
fn sylvester(p: &[BigInt], r: &[BigInt]) -> Vec<Vec<BigInt>> {
    let n = p.len() - 1;
    let size = 2 * n;
    let mut m = vec![vec![BigInt::zero(); size]; size];
    for i in 0..n {
        for (j, v) in p.iter().enumerate() {
            m[i][i + j] = v.clone();
        }
        for (j, v) in r.iter().enumerate() {
            m[n + i][i + j] = v.clone();
        }
    }
    m
}

/// A nonzero binary form `sum b_j X^(s-j) Y^j` is square-free iff its two
/// partial derivatives have no common projective zero.
pub fn square_free(b: &[BigInt]) -> bool {
    if b.iter().all(Zero::is_zero) {
        return false;
    }
    let s = b.len() - 1;
    if s <= 1 {
        return true;
    }
    let gx: Vec<BigInt> = (0..s).map(|j| &b[j] * BigInt::from(s - j)).collect();
    let gy: Vec<BigInt> = (1..=s).map(|j| &b[j] * BigInt::from(j)).collect();
    !det(sylvester(&gx, &gy)).is_zero()
}

/// Calls `visit` on every weight vector in `{0..n-1}^k`, stopping early when
/// it returns true.
fn grid(k: usize, n: i64, mut visit: impl FnMut(&[i64]) -> bool) -> bool {
    let mut w = vec![0i64; k];
    loop {
        if visit(&w) {
            return true;
        }
        let mut i = 0;
        loop {
            if i == k {
                return false;
            }
            w[i] += 1;
            if w[i] < n {
                break;
            }
            w[i] = 0;
            i += 1;
        }
    }
}

fn combine(basis: &[Vec<BigInt>], w: &[i64]) -> Vec<BigInt> {
    let mut g = vec![BigInt::zero(); basis[0].len()];
    for (v, &wt) in basis.iter().zip(w) {
        if wt != 0 {
            for (gi, vi) in g.iter_mut().zip(v) {
                *gi += vi * BigInt::from(wt);
            }
        }
    }
    g
}

/// Whether the span of `basis` (degree `s`) contains a square-free form. The
/// discriminant of the generic member has degree `2s - 2` in the weights, so
/// a grid with `2s - 1` values per weight decides the question.
pub fn has_square_free_member(basis: &[Vec<Q>], s: usize) -> bool {
    if basis.is_empty() {
        return false;
    }
    let ints: Vec<Vec<BigInt>> = basis.iter().map(|v| to_integers(v)).collect();
    let n = (2 * s as i64 - 1).max(2);
    grid(ints.len(), n, |w| square_free(&combine(&ints, w)))
}

/// Minimal `s` whose apolar kernel has a square-free member. Over the
/// rationals this is both the complex and the admissible rank.
pub fn oracle_rank(c: &[i64]) -> usize {
    let d = c.len() - 1;
    for s in 1..=d {
        if has_square_free_member(&kernel(c, s), s) {
            return s;
        }
    }
    d + 1
}

fn multiply(p: &[BigInt], r: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); p.len() + r.len() - 1];
    for (i, a) in p.iter().enumerate() {
        for (j, b) in r.iter().enumerate() {
            out[i + j] += a * b;
        }
    }
    out
}

/// `sum_j b_j a_j` for a form `b` of degree `d = deg f`; the whole Hankel
/// system at `s = d` is this one equation.
fn pairing(c: &[i64], b: &[BigInt]) -> Q {
    let d = c.len() - 1;
    b.iter()
        .enumerate()
        .map(|(j, bj)| Q::new(bj * BigInt::from(c[j]), binom(d, j)))
        .sum()
}

fn subsets(
    pool: &[i64],
    k: usize,
    chosen: &mut Vec<i64>,
    visit: &mut dyn FnMut(&[i64]) -> bool,
) -> bool {
    if k == 0 {
        return visit(chosen);
    }
    for (i, &r) in pool.iter().enumerate() {
        chosen.push(r);
        if subsets(&pool[i + 1..], k - 1, chosen, visit) {
            return true;
        }
        chosen.pop();
    }
    false
}

/// An apolar form of degree `d` with `d` distinct real roots. `d - 1` roots
/// are integers in `[-range, range]`; the last linear factor solves the one
/// apolarity equation, so every root is real by construction.
pub fn real_rooted_top_member(c: &[i64], range: i64) -> Option<Vec<BigInt>> {
    let d = c.len() - 1;
    let pool: Vec<i64> = (-range..=range).collect();
    let mut found = None;
    subsets(&pool, d - 1, &mut Vec::new(), &mut |rs| {
        let mut h = vec![BigInt::one()];
        for &r in rs {
            h = multiply(&h, &[BigInt::one(), BigInt::from(-r)]);
        }
        let hx = multiply(&h, &[BigInt::one(), BigInt::zero()]);
        let hy = multiply(&h, &[BigInt::zero(), BigInt::one()]);
        // alpha * <hX> + beta * <hY> = 0
        let (alpha, beta) = (pairing(c, &hy), -pairing(c, &hx));
        if alpha.is_zero() && beta.is_zero() {
            return false;
        }
        let l = alpha.denom().lcm(beta.denom());
        let alpha = (alpha * Q::from_integer(l.clone())).to_integer();
        let beta = (beta * Q::from_integer(l)).to_integer();
        let g: Vec<BigInt> = hx
            .iter()
            .zip(&hy)
            .map(|(x, y)| x * &alpha + y * &beta)
            .collect();
        if pairing(c, &g).is_zero() && square_free(&g) {
            found = Some(g);
            return true;
        }
        false
    });
    found
}

/// Integer coefficient vectors of degree `d` with entries in
/// `[-bound, bound]`, primitive and with positive leading nonzero entry.
pub fn canonical_corpus(d: usize, bound: i64) -> Vec<Vec<i64>> {
    let mut out = BTreeSet::new();
    let n = 2 * bound + 1;
    let total = (n as u64).pow(d as u32 + 1);
    for code in 0..total {
        let mut v = Vec::with_capacity(d + 1);
        let mut x = code;
        for _ in 0..=d {
            v.push((x % n as u64) as i64 - bound);
            x /= n as u64;
        }
        let g = v.iter().fold(0i64, |acc, &c| acc.gcd(&c));
        if g == 0 {
            continue;
        }
        let first_negative = v.iter().find(|&&c| c != 0).is_some_and(|&c| c < 0);
        let g = if first_negative { -g } else { g };
        out.insert(v.into_iter().map(|c| c / g).collect::<Vec<i64>>());
    }
    out.into_iter().collect()
}
