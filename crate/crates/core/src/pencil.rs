//! Cell decomposition of a real pencil `g1 + lambda g2` of binary forms.
//!
//! The number of distinct real projective roots of a member can only change
//! where two roots collide, i.e. at real zeros of the discriminant
//! `D(lambda) = disc(g1 + lambda g2)`. The zeros of the leading coefficient
//! are added as extra cell walls so that every sampled member has full degree
//! after dehomogenization. One rational sample per open cell, plus the member
//! `g2` at `lambda = infinity`, therefore sees every achievable real-root count.

use num_traits::{One, Zero};

use crate::error::Result;
use crate::exact::scalar::{rat, Rational};
use crate::exact::sturm::{cell_point, RealRoots};
use crate::exact::UniPoly;
use crate::form::{HomForm, RootProfile};

#[derive(Clone, Debug)]
pub struct PencilSample {
    /// `None` stands for the member `g2` at `lambda = infinity`.
    pub lambda: Option<Rational>,
    /// Index of the open cell the sample came from; `None` at infinity.
    pub cell: Option<usize>,
    pub member: HomForm,
    /// `None` when the member is not square-free.
    pub roots: Option<RootProfile>,
}

pub fn member(g1: &HomForm, g2: &HomForm, lambda: &Rational) -> HomForm {
    HomForm::combine(&[g1, g2], &[Rational::one(), lambda.clone()])
}

/// `D(lambda)` by interpolation through `2s - 1` integer nodes; the
/// homogeneous discriminant has degree `2s - 2` in the coefficients.
pub fn pencil_discriminant(g1: &HomForm, g2: &HomForm) -> Result<UniPoly<Rational>> {
    let s = g1.degree();
    let nodes = (2 * s).saturating_sub(1).max(1);
    let mut pts = Vec::with_capacity(nodes);
    for k in 0..nodes as i64 {
        let m = member(g1, g2, &rat(k));
        let v = if m.is_zero() {
            Rational::zero()
        } else {
            m.discriminant()?
        };
        pts.push((rat(k), v));
    }
    Ok(UniPoly::interpolate(&pts))
}

/// Samples the pencil with `per_cell` points inside each open cell.
pub fn pencil_samples(g1: &HomForm, g2: &HomForm, per_cell: usize) -> Result<Vec<PencilSample>> {
    let disc = pencil_discriminant(g1, g2)?;
    let lead = UniPoly::new(vec![g1.coeffs()[0].clone(), g2.coeffs()[0].clone()]);
    let walls = if lead.is_zero() {
        disc.clone()
    } else {
        &disc * &lead
    };
    let mut out = Vec::new();
    if !walls.is_zero() {
        let sf = walls.square_free_part()?;
        let mut roots = RealRoots::isolate(&sf)?;
        for (ci, cell) in roots.cells().iter().enumerate() {
            for k in 1..=per_cell {
                let lambda = cell_point(cell, k as i64, per_cell as i64 + 1);
                let m = member(g1, g2, &lambda);
                let roots = profile_if_square_free(&m)?;
                out.push(PencilSample {
                    lambda: Some(lambda),
                    cell: Some(ci),
                    member: m,
                    roots,
                });
            }
        }
    }
    let roots = profile_if_square_free(g2)?;
    out.push(PencilSample {
        lambda: None,
        cell: None,
        member: g2.clone(),
        roots,
    });
    Ok(out)
}

fn profile_if_square_free(m: &HomForm) -> Result<Option<RootProfile>> {
    if m.is_zero() || !m.is_square_free()? {
        return Ok(None);
    }
    Ok(Some(m.root_profile()?))
}
