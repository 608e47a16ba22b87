//! Exact linear algebra: fraction-free kernels over the integers and plain
//! Gauss-Jordan elimination over any exact field.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::exact::scalar::{Field, Rational};

/// Row-echelon form by Bareiss fraction-free elimination. Returns the pivot
/// column of each nonzero row; `m` is overwritten with the echelon form.
fn bareiss_echelon(m: &mut [Vec<BigInt>], ncols: usize) -> Vec<usize> {
    let nrows = m.len();
    let mut pivots = Vec::new();
    let mut prev = BigInt::from(1);
    let mut row = 0;
    for col in 0..ncols {
        if row == nrows {
            break;
        }
        let Some(p) = (row..nrows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        for r in row + 1..nrows {
            for c in col + 1..ncols {
                let v = &m[row][col] * &m[r][c] - &m[r][col] * &m[row][c];
                m[r][c] = v / &prev;
            }
            m[r][col] = BigInt::zero();
        }
        prev = m[row][col].clone();
        pivots.push(col);
        row += 1;
    }
    pivots
}

/// Integer basis of the right kernel of an integer matrix with `ncols`
/// columns. Each vector is primitive with first nonzero entry positive; the
/// basis is indexed by the free columns in increasing order.
pub fn integer_kernel(rows: &[Vec<BigInt>], ncols: usize) -> Vec<Vec<BigInt>> {
    let mut m = rows.to_vec();
    let pivots = bareiss_echelon(&mut m, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    let mut basis = Vec::with_capacity(free.len());
    for &fc in &free {
        let mut x = vec![Rational::zero(); ncols];
        x[fc] = Rational::from_integer(BigInt::from(1));
        for (r, &pc) in pivots.iter().enumerate().rev() {
            let mut acc = Rational::zero();
            for c in pc + 1..ncols {
                if !m[r][c].is_zero() && !x[c].is_zero() {
                    acc += Rational::from_integer(m[r][c].clone()) * &x[c];
                }
            }
            x[pc] = -acc / Rational::from_integer(m[r][pc].clone());
        }
        basis.push(primitive(&x));
    }
    basis
}

fn primitive(x: &[Rational]) -> Vec<BigInt> {
    let l = x.iter().fold(BigInt::from(1), |acc, v| acc.lcm(v.denom()));
    let ints: Vec<BigInt> = x
        .iter()
        .map(|v| (v * Rational::from_integer(l.clone())).to_integer())
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
    let neg = ints
        .iter()
        .find(|v| !v.is_zero())
        .is_some_and(Signed::is_negative);
    let g = if neg { -g } else { g };
    ints.into_iter().map(|v| v / &g).collect()
}

/// Rank over a field, by Gauss elimination.
pub fn rank<F: Field>(mut m: Vec<Vec<F>>) -> usize {
    let nrows = m.len();
    let ncols = m.first().map_or(0, Vec::len);
    let mut row = 0;
    for col in 0..ncols {
        if row == nrows {
            break;
        }
        let Some(p) = (row..nrows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let pivot = m[row][col].clone();
        for r in row + 1..nrows {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = m[r][col].clone() / pivot.clone();
            for c in col..ncols {
                let v = m[r][c].clone() - factor.clone() * m[row][c].clone();
                m[r][c] = v;
            }
        }
        row += 1;
    }
    row
}

/// Solves `a x = b`. Returns `None` when the system is inconsistent; when it
/// is underdetermined, free variables are set to zero.
pub fn solve<F: Field>(a: &[Vec<F>], b: &[F]) -> Option<Vec<F>> {
    let nrows = a.len();
    let ncols = a.first().map_or(0, Vec::len);
    let mut m: Vec<Vec<F>> = a
        .iter()
        .zip(b)
        .map(|(r, v)| {
            let mut r = r.clone();
            r.push(v.clone());
            r
        })
        .collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        if row == nrows {
            break;
        }
        let Some(p) = (row..nrows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = F::one() / m[row][col].clone();
        for c in col..=ncols {
            m[row][c] = m[row][c].clone() * inv.clone();
        }
        for r in 0..nrows {
            if r == row || m[r][col].is_zero() {
                continue;
            }
            let factor = m[r][col].clone();
            for c in col..=ncols {
                let v = m[r][c].clone() - factor.clone() * m[row][c].clone();
                m[r][c] = v;
            }
        }
        pivots.push(col);
        row += 1;
    }
    if m[row..].iter().any(|r| !r[ncols].is_zero()) {
        return None;
    }
    let mut x = vec![F::zero(); ncols];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = m[r][ncols].clone();
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::scalar::rat;

    fn ints(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter()
            .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
            .collect()
    }

    #[test]
    fn kernel_of_single_row() {
        let k = integer_kernel(&ints(&[&[2, 0, 2]]), 3);
        let want = ints(&[&[0, 1, 0], &[1, 0, -1]]);
        assert_eq!(k, want);
    }

    #[test]
    fn kernel_vectors_annihilate() {
        let m = ints(&[&[1, 2, 3, 4], &[2, 4, 6, 8], &[0, 1, -1, 5]]);
        let k = integer_kernel(&m, 4);
        assert_eq!(k.len(), 2);
        for v in &k {
            for row in &m {
                let dot: BigInt = row.iter().zip(v).map(|(a, b)| a * b).sum();
                assert!(dot.is_zero());
            }
        }
    }

    #[test]
    fn empty_matrix_kernel_is_everything() {
        assert_eq!(integer_kernel(&[], 2), ints(&[&[1, 0], &[0, 1]]));
    }

    #[test]
    fn rank_and_solve() {
        let a = vec![
            vec![rat(1), rat(2)],
            vec![rat(2), rat(4)],
            vec![rat(0), rat(1)],
        ];
        assert_eq!(rank(a.clone()), 2);
        assert_eq!(
            solve(&a, &[rat(3), rat(6), rat(1)]),
            Some(vec![rat(1), rat(1)])
        );
        assert_eq!(solve(&a, &[rat(3), rat(7), rat(1)]), None);
    }
}
