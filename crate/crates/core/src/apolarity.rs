//! The apolarity pairing on binary forms, catalecticant kernels, the two
//! generators of the apolar ideal, and Sylvester's complex rank.
//!
//! A form `g(X, Y)` of degree `s` acts on `f(x, y)` of degree `d >= s` as the
//! differential operator `g(d/dx, d/dy)`. The degree-`s` kernel of this action
//! is the set of degree-`s` forms whose roots give an `s`-point decomposition
//! of `f` on the rational normal curve, as long as they are square-free.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact::scalar::Rational;
use crate::form::{BinaryForm, HomForm};
use crate::linalg::{integer_kernel, rank};

fn falling(n: usize, k: usize) -> BigInt {
    (n - k + 1..=n).fold(BigInt::from(1), |acc, v| acc * BigInt::from(v))
}

/// `g(d/dx, d/dy) f`, a form of degree `deg f - deg g`.
pub fn apolar_action(g: &HomForm, f: &HomForm) -> Result<HomForm> {
    let (s, d) = (g.degree(), f.degree());
    if s > d {
        return Err(Error::DegreeTooLarge {
            operator: s,
            form: d,
        });
    }
    let c = f.coeffs();
    let out = (0..=d - s)
        .map(|k| {
            let mut acc = Rational::zero();
            for (j, gj) in g.coeffs().iter().enumerate() {
                let i = k + j;
                if gj.is_zero() || c[i].is_zero() {
                    continue;
                }
                // d^(s-j)/dx^(s-j) x^(d-i) and d^j/dy^j y^i
                let w = falling(d - i, s - j) * falling(i, j);
                acc += gj * &c[i] * Rational::from_integer(w);
            }
            acc
        })
        .collect();
    Ok(HomForm::new(out))
}

/// Integer matrix of `g -> g o f` on degree-`s` forms, rows indexed by the
/// monomials of degree `d - s`.
fn catalecticant(f: &BinaryForm, s: usize) -> Vec<Vec<BigInt>> {
    let d = f.degree();
    let c = f.integer_coeffs();
    (0..=d - s)
        .map(|k| {
            (0..=s)
                .map(|j| {
                    let i = k + j;
                    &c[i] * falling(d - i, s - j) * falling(i, j)
                })
                .collect()
        })
        .collect()
}

/// Exact basis of `{ g : deg g = s, g o f = 0 }` for `1 <= s <= d + 1`.
pub fn catalecticant_kernel(f: &BinaryForm, s: usize) -> Result<Vec<BinaryForm>> {
    let d = f.degree();
    if s == 0 || s > d + 1 {
        return Err(Error::DegreeOutOfRange {
            degree: s,
            max: d + 1,
        });
    }
    let rows = if s > d {
        Vec::new()
    } else {
        catalecticant(f, s)
    };
    integer_kernel(&rows, s + 1)
        .into_iter()
        .map(BinaryForm::from_integers)
        .collect()
}

/// Deterministic square-free search over the span of `basis`, all of one
/// degree `s`. Every member is divisible by the gcd of the basis, so a
/// non-square-free gcd settles the question at once. Otherwise the homogeneous
/// discriminant of `sum t_j g_j` is a polynomial of degree at most `2s - 2`
/// in each `t_j`; on each affine patch `t_m = 1` it is probed on the grid
/// `{0, .., 2s-2}` in the remaining coordinates, which detects any nonzero
/// polynomial of that degree.
pub fn squarefree_exists(basis: &[BinaryForm]) -> Result<Option<BinaryForm>> {
    let Some(first) = basis.first() else {
        return Ok(None);
    };
    let s = first.degree();
    if basis.len() == 1 {
        return Ok(first.is_square_free()?.then(|| first.clone()));
    }
    if !HomForm::gcd(basis)?.is_square_free()? {
        return Ok(None);
    }
    let k = basis.len();
    let top = (2 * s).saturating_sub(2) as u64;
    for patch in 0..k {
        let mut grid = vec![0u64; k - 1];
        loop {
            let weights: Vec<Rational> = (0..k)
                .map(|j| match j.cmp(&patch) {
                    std::cmp::Ordering::Equal => Rational::from_integer(1.into()),
                    std::cmp::Ordering::Less => Rational::from_integer(grid[j].into()),
                    std::cmp::Ordering::Greater => Rational::from_integer(grid[j - 1].into()),
                })
                .collect();
            let g = HomForm::combine(basis, &weights);
            if !g.is_zero() && g.is_square_free()? {
                return Ok(Some(g.canonical()?));
            }
            if !advance(&mut grid, top) {
                break;
            }
        }
    }
    Ok(None)
}

/// Odometer step over `{0..=top}^n`; false once exhausted.
pub(crate) fn advance(grid: &mut [u64], top: u64) -> bool {
    for v in grid.iter_mut() {
        if *v < top {
            *v += 1;
            return true;
        }
        *v = 0;
    }
    false
}

/// Per-form cache of apolar kernels and the apolar ideal's generators.
#[derive(Clone, Debug)]
pub struct ApolarProfile {
    form: BinaryForm,
    /// `kernels[s]` for `0 <= s <= d + 1`; entry 0 is unused and empty.
    kernels: Vec<Vec<BinaryForm>>,
    g1: BinaryForm,
    g2: BinaryForm,
}

impl ApolarProfile {
    pub fn new(form: &BinaryForm) -> Result<Self> {
        let d = form.degree();
        let mut kernels = vec![Vec::new()];
        for s in 1..=d + 1 {
            kernels.push(catalecticant_kernel(form, s)?);
        }
        let r1 = (1..=d + 1)
            .find(|&s| !kernels[s].is_empty())
            .expect("every degree-(d+1) form is apolar");
        let g1 = kernels[r1][0].clone();
        let r2 = d + 2 - r1;
        let g2 = if r2 == r1 {
            kernels[r1][1].clone()
        } else {
            // A degree-r2 kernel element outside g1 * (forms of degree r2 - r1).
            let multiples: Vec<HomForm> = (0..=r2 - r1)
                .map(|j| g1.mul(&HomForm::monomial(r2 - r1, j)))
                .collect();
            let base = rank(multiples.iter().map(|m| m.coeffs().to_vec()).collect());
            kernels[r2]
                .iter()
                .find(|g| {
                    let mut rows: Vec<Vec<Rational>> =
                        multiples.iter().map(|m| m.coeffs().to_vec()).collect();
                    rows.push(g.coeffs().to_vec());
                    rank(rows) > base
                })
                .cloned()
                .expect("the apolar ideal of a binary form has two generators")
        };
        Ok(Self {
            form: form.clone(),
            kernels,
            g1,
            g2,
        })
    }

    pub fn form(&self) -> &BinaryForm {
        &self.form
    }

    pub fn degree(&self) -> usize {
        self.form.degree()
    }

    /// Basis of the degree-`s` kernel, `1 <= s <= d + 1`.
    pub fn kernel(&self, s: usize) -> Result<&[BinaryForm]> {
        let max = self.degree() + 1;
        if s == 0 || s > max {
            return Err(Error::DegreeOutOfRange { degree: s, max });
        }
        Ok(&self.kernels[s])
    }

    pub fn kernel_dim(&self, s: usize) -> usize {
        self.kernels.get(s).map_or(0, Vec::len)
    }

    /// `(g1, g2)` with `deg g1 <= deg g2` and `deg g1 + deg g2 = d + 2`.
    pub fn generators(&self) -> (&BinaryForm, &BinaryForm) {
        (&self.g1, &self.g2)
    }

    /// Dimension predicted by the generator degrees.
    pub fn expected_kernel_dim(&self, s: usize) -> usize {
        let (r1, r2) = (self.g1.degree(), self.g2.degree());
        (s + 1).saturating_sub(r1) + (s + 1).saturating_sub(r2)
    }
}

pub fn apolar_generators(f: &BinaryForm) -> Result<(BinaryForm, BinaryForm)> {
    let p = ApolarProfile::new(f)?;
    let (g1, g2) = p.generators();
    Ok((g1.clone(), g2.clone()))
}

/// Sylvester: the rank is `deg g1` when the lowest-degree kernel holds a
/// square-free form, and `d + 2 - deg g1` otherwise. The whole lowest kernel
/// is searched, not just `g1`.
pub fn complex_rank(profile: &ApolarProfile) -> Result<(usize, BinaryForm)> {
    let (g1, _) = profile.generators();
    let r1 = g1.degree();
    if let Some(w) = squarefree_exists(profile.kernel(r1)?)? {
        return Ok((r1, w));
    }
    let d = profile.degree();
    for s in d + 2 - r1..=d + 1 {
        if let Some(w) = squarefree_exists(profile.kernel(s)?)? {
            return Ok((s, w));
        }
    }
    unreachable!("degree-(d+1) kernel is the full space and contains square-free forms")
}
