//! Machine-readable output. Rationals are written as `"p"` or `"p/q"`
//! strings so that nothing is lost in transit.

use serde::Serialize;

use crate::exact::scalar::{GaussianRational, Rational};
use crate::form::{BinaryForm, HomForm};
use crate::real_rank::{Exactness, Label, LabelSet, RankReport, RankValue};
use crate::witness::{Decomposition, PointKind, VerificationReport};

/// Coefficient convention, repeated in every form object.
pub const CONVENTION: &str = "c_i multiplies x^(d-i) y^i";

pub fn rational(x: &Rational) -> String {
    x.to_string()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Complex {
    pub re: String,
    pub im: String,
}

impl From<&GaussianRational> for Complex {
    fn from(z: &GaussianRational) -> Self {
        Self {
            re: rational(&z.re),
            im: rational(&z.im),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FormJson {
    pub degree: usize,
    pub coefficients: Vec<String>,
    pub convention: &'static str,
}

impl From<&HomForm> for FormJson {
    fn from(f: &HomForm) -> Self {
        Self {
            degree: f.degree(),
            coefficients: f.coeffs().iter().map(rational).collect(),
            convention: CONVENTION,
        }
    }
}

fn coeffs(g: &BinaryForm) -> Vec<String> {
    g.integer_coeffs().iter().map(ToString::to_string).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LabelJson {
    pub s: usize,
    pub a: usize,
    /// Square-free apolar form in the same coefficient convention.
    pub witness: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LabelSetJson {
    pub s: usize,
    pub normative: bool,
    pub marker: Option<&'static str>,
    pub exactness: Exactness,
    pub labels: Vec<LabelJson>,
}

impl LabelSetJson {
    pub fn new(set: &LabelSet, normative: bool) -> Self {
        Self {
            s: set.s,
            normative,
            marker: (!normative).then_some("NON-NORMATIVE"),
            exactness: set.exactness,
            labels: set
                .labels
                .iter()
                .map(|(l, w)| LabelJson {
                    s: l.s,
                    a: l.a,
                    witness: coeffs(w),
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RankJson {
    pub form: FormJson,
    pub complex_rank: usize,
    pub complex_witness: Vec<String>,
    pub admissible_rank: usize,
    pub admissible_witness: Vec<String>,
    pub real_rank: RankValue,
    pub real_witness: Vec<String>,
    pub inconclusive: bool,
    pub labels: LabelSetJson,
    pub exploratory: Vec<LabelSetJson>,
}

impl RankJson {
    pub fn new(input: &HomForm, r: &RankReport) -> Self {
        Self {
            form: input.into(),
            complex_rank: r.complex_rank,
            complex_witness: coeffs(&r.complex_witness),
            admissible_rank: r.admissible_rank,
            admissible_witness: coeffs(&r.admissible_witness),
            real_rank: r.real_rank,
            real_witness: coeffs(&r.real_witness),
            inconclusive: r.real_rank.exact().is_none(),
            labels: LabelSetJson::new(&r.labels, true),
            exploratory: r
                .exploratory
                .iter()
                .map(|s| LabelSetJson::new(s, false))
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LabelsJson {
    pub form: FormJson,
    #[serde(flatten)]
    pub set: LabelSetJson,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PointJson {
    pub coords: [Complex; 2],
    pub kind: PointKind,
    /// Bound on the distance to the true point `(1 : u)`, boxed points only.
    pub radius: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DecompositionJson {
    pub form: FormJson,
    pub label: Label,
    pub points: Vec<PointJson>,
    pub pairing: Vec<usize>,
    pub coefficients: Vec<Complex>,
    pub residual: f64,
    pub precision_bits: u32,
    pub verification: VerificationReport,
}

impl DecompositionJson {
    pub fn new(
        input: &HomForm,
        label: Label,
        dec: &Decomposition,
        verification: VerificationReport,
    ) -> Self {
        Self {
            form: input.into(),
            label,
            points: dec
                .set
                .points
                .iter()
                .map(|p| PointJson {
                    coords: [(&p.coords[0]).into(), (&p.coords[1]).into()],
                    kind: p.kind(),
                    radius: p.radius.as_ref().map(rational),
                })
                .collect(),
            pairing: dec.set.pairing.clone(),
            coefficients: dec.coefficients.iter().map(Complex::from).collect(),
            residual: dec.residual,
            precision_bits: dec.precision_bits,
            verification,
        }
    }
}

/// Pretty JSON with a trailing newline.
pub fn to_string<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("output serializes");
    s.push('\n');
    s
}
