//! Admissible rank, real rank, a-ranks and label sets of real binary forms.
//!
//! Conjugation-stable sets of `s` distinct points on the rational normal
//! curve whose span contains `f` correspond to real square-free forms of
//! degree `s` in the apolar kernel of `f`. A member with `c` distinct real
//! roots has label `(s, a)` with `s - 2a = c`. The kernel at degree `s` is
//! analysed completely when it has dimension one or two; larger kernels are
//! searched and the result is flagged as a sound but possibly partial answer.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::apolarity::{advance, apolar_action, complex_rank, squarefree_exists, ApolarProfile};
use crate::error::{Error, Result};
use crate::exact::scalar::{rat, Rational};
use crate::form::{BinaryForm, HomForm};
use crate::pencil::pencil_samples;

/// `s` points, `a` of the conjugate pairs among them.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Label {
    pub s: usize,
    pub a: usize,
}

impl Label {
    pub fn new(s: usize, a: usize) -> Self {
        debug_assert!(2 * a <= s);
        Self { s, a }
    }

    /// Number of real points, `s - 2a`.
    pub fn real_points(&self) -> usize {
        self.s - 2 * self.a
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.s, self.a)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING-KEBAB-CASE")]
pub enum Exactness {
    /// Every achievable label was found.
    Complete,
    /// Every reported label is achievable; others may exist.
    SoundPartial,
}

/// Labels achievable at one cardinality, each with a square-free witness.
#[derive(Clone, Debug)]
pub struct LabelSet {
    pub s: usize,
    pub labels: BTreeMap<Label, BinaryForm>,
    pub exactness: Exactness,
}

impl LabelSet {
    pub fn contains_a(&self, a: usize) -> bool {
        self.labels.contains_key(&Label::new(self.s, a))
    }

    pub fn labels(&self) -> impl Iterator<Item = Label> + '_ {
        self.labels.keys().copied()
    }

    pub fn is_complete(&self) -> bool {
        self.exactness == Exactness::Complete
    }
}

/// Effort spent on kernels of dimension three or more.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchBudget {
    /// Grid weights range over `-grid_bound..=grid_bound`.
    pub grid_bound: i64,
    /// Cap on the number of grid combinations tried.
    pub max_grid: usize,
    /// Random combinations with weights in `-1000..=1000`.
    pub random_samples: usize,
    /// Attempts per root pattern when fixing a factor of the witness.
    pub factor_tries: usize,
}

impl Default for SearchBudget {
    fn default() -> Self {
        Self {
            grid_bound: 1,
            max_grid: 243,
            random_samples: 64,
            factor_tries: 8,
        }
    }
}

/// Minimal degree of a real square-free apolar form, starting the scan at
/// the complex rank.
pub fn admissible_rank(profile: &ApolarProfile) -> Result<(usize, BinaryForm)> {
    let (r, _) = complex_rank(profile)?;
    for s in r..=profile.degree() + 1 {
        if let Some(w) = squarefree_exists(profile.kernel(s)?)? {
            return Ok((s, w));
        }
    }
    unreachable!("degree-(d+1) kernel is the full space")
}

fn label_of(s: usize, g: &HomForm) -> Result<Option<Label>> {
    if g.is_zero() || !g.is_square_free()? {
        return Ok(None);
    }
    let p = g.root_profile()?;
    debug_assert_eq!(p.total, s);
    Ok(Some(Label::new(s, (s - p.real) / 2)))
}

fn insert(labels: &mut BTreeMap<Label, BinaryForm>, s: usize, g: &HomForm) -> Result<()> {
    if let Some(l) = label_of(s, g)? {
        if let std::collections::btree_map::Entry::Vacant(e) = labels.entry(l) {
            e.insert(g.canonical()?);
        }
    }
    Ok(())
}

/// `c` real roots `0, 1, .., c-1` and `a` conjugate pairs `±(k+1) i`.
fn explicit_witness(c: usize, a: usize) -> HomForm {
    let mut g = HomForm::from_ints(&[1]);
    for j in 0..c {
        g = g.mul(&HomForm::from_ints(&[1, -(j as i64)]));
    }
    for k in 0..a {
        let q = (k as i64 + 1).pow(2);
        g = g.mul(&HomForm::from_ints(&[1, 0, q]));
    }
    g
}

/// Every label `(s, a)` achievable by a real square-free apolar form of
/// degree `s`. Degrees above `d` impose no condition, so all labels occur.
pub fn labels_at(profile: &ApolarProfile, s: usize, budget: &SearchBudget) -> Result<LabelSet> {
    let d = profile.degree();
    if s == 0 {
        return Err(Error::DegreeOutOfRange {
            degree: 0,
            max: d + 1,
        });
    }
    let mut labels = BTreeMap::new();
    if s > d {
        for a in 0..=s / 2 {
            insert(&mut labels, s, &explicit_witness(s - 2 * a, a))?;
        }
        return Ok(LabelSet {
            s,
            labels,
            exactness: Exactness::Complete,
        });
    }
    let basis = profile.kernel(s)?;
    match basis.len() {
        0 => Err(Error::TrivialKernel(s)),
        1 => {
            insert(&mut labels, s, &basis[0])?;
            Ok(LabelSet {
                s,
                labels,
                exactness: Exactness::Complete,
            })
        }
        2 => {
            let simple = [
                basis[0].as_hom().clone(),
                basis[1].as_hom().clone(),
                basis[0].add(&basis[1]),
                basis[0].add(&basis[1].scale(&rat(-1))),
            ];
            for g in &simple {
                insert(&mut labels, s, g)?;
            }
            for sample in pencil_samples(&basis[0], &basis[1], 1)? {
                if let Some(p) = sample.roots {
                    let l = Label::new(s, (s - p.real) / 2);
                    if let std::collections::btree_map::Entry::Vacant(e) = labels.entry(l) {
                        e.insert(sample.member.canonical()?);
                    }
                }
            }
            Ok(LabelSet {
                s,
                labels,
                exactness: Exactness::Complete,
            })
        }
        _ => {
            search_labels(profile, s, budget, &mut labels)?;
            Ok(LabelSet {
                s,
                labels,
                exactness: Exactness::SoundPartial,
            })
        }
    }
}

fn form_seed(f: &BinaryForm, s: usize) -> u64 {
    // FNV-1a over the canonical coefficients; stable across platforms.
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    let mut eat = |b: u8| {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x0100_0000_01b3);
    };
    for c in f.integer_coeffs() {
        c.to_signed_bytes_le().into_iter().for_each(&mut eat);
        eat(0xff);
    }
    (s as u64).to_le_bytes().into_iter().for_each(eat);
    h
}

/// Random real form of degree `2 * pairs + reals` with the given root
/// pattern; roots are small integers, pairs are `(X - pY)^2 + q^2 Y^2`.
fn random_factor(rng: &mut ChaCha8Rng, pairs: usize, reals: usize) -> HomForm {
    let mut h = HomForm::from_ints(&[1]);
    for _ in 0..reals {
        let r: i64 = rng.gen_range(-30..=30);
        h = h.mul(&HomForm::from_ints(&[1, -r]));
    }
    for _ in 0..pairs {
        let p: i64 = rng.gen_range(-30..=30);
        let q: i64 = rng.gen_range(1..=30);
        h = h.mul(&HomForm::from_ints(&[1, -2 * p, p * p + q * q]));
    }
    h
}

/// Search of a kernel of dimension at least three. Besides grid and random
/// combinations, it fixes a factor `h` of degree `m = 2s - d - 2` with a
/// prescribed root pattern: `h q` is apolar to `f` iff `q` is apolar to
/// `h o f`, whose degree-`(s - m)` kernel is generically a pencil and is then
/// analysed completely.
fn search_labels(
    profile: &ApolarProfile,
    s: usize,
    budget: &SearchBudget,
    labels: &mut BTreeMap<Label, BinaryForm>,
) -> Result<()> {
    let basis = profile.kernel(s)?;
    let k = basis.len();
    let all = s / 2 + 1;
    let done = |labels: &BTreeMap<Label, BinaryForm>| labels.len() == all;

    for g in basis {
        insert(labels, s, g)?;
    }
    let span = (2 * budget.grid_bound) as u64;
    let mut grid = vec![0u64; k];
    let mut tried = 0;
    while advance(&mut grid, span) && tried < budget.max_grid && !done(labels) {
        let w: Vec<Rational> = grid
            .iter()
            .map(|&v| rat(v as i64 - budget.grid_bound))
            .collect();
        if w.iter().filter(|v| **v != rat(0)).count() >= 2 {
            insert(labels, s, &HomForm::combine(basis, &w))?;
            tried += 1;
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(form_seed(profile.form(), s));
    for _ in 0..budget.random_samples {
        if done(labels) {
            return Ok(());
        }
        let w: Vec<Rational> = (0..k).map(|_| rat(rng.gen_range(-1000..=1000))).collect();
        insert(labels, s, &HomForm::combine(basis, &w))?;
    }

    let d = profile.degree();
    if 2 * s < d + 3 {
        return Ok(());
    }
    let m = 2 * s - d - 2;
    for pairs in 0..=m / 2 {
        for _ in 0..budget.factor_tries {
            if done(labels) {
                return Ok(());
            }
            let h = random_factor(&mut rng, pairs, m - 2 * pairs);
            if !h.is_square_free()? {
                continue;
            }
            let reduced = apolar_action(&h, profile.form())?;
            let Ok(reduced) = reduced.canonical() else {
                continue;
            };
            let sub = ApolarProfile::new(&reduced)?;
            let sub_s = s - m;
            let sub_basis = sub.kernel(sub_s)?;
            if sub_basis.is_empty() {
                continue;
            }
            if sub_basis.len() <= 2 {
                let sub_set = labels_at(&sub, sub_s, budget)?;
                for q in sub_set.labels.values() {
                    insert(labels, s, &h.mul(q))?;
                }
            } else {
                for _ in 0..budget.factor_tries {
                    let w: Vec<Rational> = (0..sub_basis.len())
                        .map(|_| rat(rng.gen_range(-1000..=1000)))
                        .collect();
                    insert(labels, s, &h.mul(&HomForm::combine(sub_basis, &w)))?;
                }
            }
        }
    }
    Ok(())
}

/// A rank that is either decided or only bracketed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RankValue {
    Exact(usize),
    Bracket { lo: usize, hi: usize },
}

impl RankValue {
    pub fn lower(&self) -> usize {
        match *self {
            RankValue::Exact(v) => v,
            RankValue::Bracket { lo, .. } => lo,
        }
    }

    pub fn upper(&self) -> usize {
        match *self {
            RankValue::Exact(v) => v,
            RankValue::Bracket { hi, .. } => hi,
        }
    }

    pub fn exact(&self) -> Option<usize> {
        match *self {
            RankValue::Exact(v) => Some(v),
            RankValue::Bracket { .. } => None,
        }
    }

    fn from_bounds(lo: usize, hi: usize) -> Self {
        if lo >= hi {
            RankValue::Exact(hi)
        } else {
            RankValue::Bracket { lo, hi }
        }
    }
}

impl Serialize for RankValue {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = ser.serialize_struct("RankValue", 3)?;
        st.serialize_field("lo", &self.lower())?;
        st.serialize_field("hi", &self.upper())?;
        st.serialize_field("exact", &self.exact().is_some())?;
        st.end()
    }
}

impl fmt::Display for RankValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RankValue::Exact(v) => write!(f, "{v}"),
            RankValue::Bracket { lo, hi } => write!(f, "[{lo},{hi}]"),
        }
    }
}

/// Lazily computed label sets of one form, shared between rank scans.
pub struct LabelScan<'a> {
    profile: &'a ApolarProfile,
    budget: SearchBudget,
    admissible: usize,
    sets: BTreeMap<usize, LabelSet>,
}

impl<'a> LabelScan<'a> {
    pub fn new(profile: &'a ApolarProfile, budget: SearchBudget) -> Result<Self> {
        let (admissible, _) = admissible_rank(profile)?;
        Ok(Self {
            profile,
            budget,
            admissible,
            sets: BTreeMap::new(),
        })
    }

    pub fn admissible(&self) -> usize {
        self.admissible
    }

    /// Label set at `s`; below the admissible rank it is empty and complete.
    pub fn at(&mut self, s: usize) -> Result<&LabelSet> {
        if !self.sets.contains_key(&s) {
            let set = if s < self.admissible {
                LabelSet {
                    s,
                    labels: BTreeMap::new(),
                    exactness: Exactness::Complete,
                }
            } else {
                labels_at(self.profile, s, &self.budget)?
            };
            self.sets.insert(s, set);
        }
        Ok(&self.sets[&s])
    }

    /// Minimal number of real points `c` such that label `(2a + c, a)` is
    /// achievable, with a witness for the upper end.
    pub fn a_rank(&mut self, a: usize) -> Result<(RankValue, BinaryForm)> {
        let start = (2 * a).max(1);
        let mut lo = start - 2 * a;
        let mut decided_below = true;
        let mut s = start;
        loop {
            let set = self.at(s)?;
            if let Some(w) = set.labels.get(&Label::new(s, a)) {
                return Ok((RankValue::from_bounds(lo, s - 2 * a), w.clone()));
            }
            if decided_below && set.is_complete() {
                lo = s + 1 - 2 * a;
            } else {
                decided_below = false;
            }
            s += 1;
        }
    }
}

pub fn a_rank(
    profile: &ApolarProfile,
    a: usize,
    budget: &SearchBudget,
) -> Result<(RankValue, BinaryForm)> {
    LabelScan::new(profile, budget.clone())?.a_rank(a)
}

/// Minimal `s` admitting the label `(s, 0)`.
pub fn real_rank(
    profile: &ApolarProfile,
    budget: &SearchBudget,
) -> Result<(RankValue, BinaryForm)> {
    a_rank(profile, 0, budget)
}

/// Label of the witness returned by [`admissible_rank`].
pub fn admissible_label(profile: &ApolarProfile) -> Result<(Label, BinaryForm)> {
    let (s, g) = admissible_rank(profile)?;
    let roots = g.root_profile()?;
    Ok((Label::new(s, (roots.total - roots.real) / 2), g))
}

/// A square-free apolar form with the requested label, usable for an
/// explicit decomposition (so `s <= d`). `Ok(None)` means the label was not
/// found by an incomplete search.
pub fn witness_for(
    profile: &ApolarProfile,
    label: Label,
    budget: &SearchBudget,
) -> Result<Option<BinaryForm>> {
    let d = profile.degree();
    if label.s > d {
        return Err(Error::WitnessTooLarge {
            witness: label.s,
            form: d,
        });
    }
    let missing = Error::LabelNotAchievable {
        s: label.s,
        a: label.a,
    };
    let set = match labels_at(profile, label.s, budget) {
        Ok(set) => set,
        Err(Error::TrivialKernel(_)) => return Err(missing),
        Err(e) => return Err(e),
    };
    match set.labels.get(&label) {
        Some(g) => Ok(Some(g.clone())),
        None if set.is_complete() => Err(missing),
        None => Ok(None),
    }
}

#[derive(Clone, Debug, Default)]
pub struct RankOptions {
    pub budget: SearchBudget,
    /// Also report label sets for `admissible < s <= explore_to`. These are
    /// exploratory and carry no meaning as labels of the form.
    pub explore_to: Option<usize>,
}

#[derive(Clone, Debug)]
pub struct RankReport {
    pub form: BinaryForm,
    pub complex_rank: usize,
    pub complex_witness: BinaryForm,
    pub admissible_rank: usize,
    pub admissible_witness: BinaryForm,
    pub real_rank: RankValue,
    pub real_witness: BinaryForm,
    /// Labels at `s = admissible_rank`.
    pub labels: LabelSet,
    /// Non-normative label sets above the admissible rank.
    pub exploratory: Vec<LabelSet>,
}

pub fn rank_report(f: &BinaryForm, options: &RankOptions) -> Result<RankReport> {
    let profile = ApolarProfile::new(f)?;
    let (complex_rank, complex_witness) = complex_rank(&profile)?;
    let (admissible_rank, admissible_witness) = admissible_rank(&profile)?;
    let mut scan = LabelScan::new(&profile, options.budget.clone())?;
    let (real_rank, real_witness) = scan.a_rank(0)?;
    let labels = scan.at(admissible_rank)?.clone();
    let mut exploratory = Vec::new();
    if let Some(top) = options.explore_to {
        for s in admissible_rank + 1..=top {
            exploratory.push(scan.at(s)?.clone());
        }
    }
    Ok(RankReport {
        form: f.clone(),
        complex_rank,
        complex_witness,
        admissible_rank,
        admissible_witness,
        real_rank,
        real_witness,
        labels,
        exploratory,
    })
}

/// Integer view of a canonical form, for callers that want plain numbers.
pub fn witness_coefficients(g: &BinaryForm) -> Vec<BigInt> {
    g.integer_coeffs().to_vec()
}
