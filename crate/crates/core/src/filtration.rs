//! The two Alexander filtrations of the ambient homology `H(C{j=0})` and
//! dimension checks relating them to the surgery groups and `B` blocks.
//!
//! `F_s = H(C{i<=s, j=0})` maps to the ambient homology by inclusion.
//! `F'_t = H(C{i=0, j<=t})` maps there through the flip. Images and kernels of
//! these maps, their intersections and the associated graded pieces `A_{p,q}`
//! are all computed over a window wide enough that both filtrations are
//! constant outside it.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::cfk::{BifilteredComplex, Cell, ChainComplex, Constraint, Homology, SubquotientSpec};
use crate::duality::SurgeryPackage;
use crate::gf2::{Gf2Matrix, Subspace};
use crate::surgery::{chain_matrix, Engine, SurgeryError};

/// Which of the two filtrations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    /// `F_s`, from `C{i<=s, j=0}`
    First,
    /// `F'_t`, from `C{i=0, j<=t}` through the flip
    Second,
}

/// One filtration over the window.
#[derive(Debug, Clone)]
struct Filtration {
    /// `dim F_s`
    dims: Vec<usize>,
    /// the map `F_s -> H(C{j=0})`
    to_ambient: Vec<Gf2Matrix>,
    /// `F_s -> F_{s+1}`; one fewer than the window length
    step: Vec<Gf2Matrix>,
    /// kernel of `to_ambient`, in `F_s` coordinates
    kernel: Vec<Subspace>,
    image: Vec<Subspace>,
}

#[derive(Debug, Clone)]
pub struct FiltrationProfile {
    window: (i32, i32),
    ambient: usize,
    first: Filtration,
    second: Filtration,
    graded: BTreeMap<(i32, i32), usize>,
    e: BTreeMap<i32, usize>,
}

fn filtration(hf: &Homology, complexes: Vec<(ChainComplex<Cell>, Gf2Matrix)>) -> Result<Filtration, SurgeryError> {
    let mut hs = Vec::with_capacity(complexes.len());
    let mut to_ambient = Vec::new();
    for (cx, into) in &complexes {
        let h = Homology::of(cx).map_err(SurgeryError::Cfk)?;
        to_ambient.push(hf.induced(&h, into));
        hs.push(h);
    }
    let mut step = Vec::new();
    for k in 0..complexes.len().saturating_sub(1) {
        let (src, tgt) = (&complexes[k].0, &complexes[k + 1].0);
        let inc = chain_matrix(src, tgt, |c| vec![*c]);
        step.push(hs[k + 1].induced(&hs[k], &inc));
    }
    Ok(Filtration {
        dims: hs.iter().map(Homology::dim).collect(),
        kernel: to_ambient.iter().map(Subspace::kernel).collect(),
        image: to_ambient.iter().map(Subspace::image).collect(),
        to_ambient,
        step,
    })
}

pub fn profile(c: &BifilteredComplex) -> Result<FiltrationProfile, SurgeryError> {
    let engine = Engine::new(c)?;
    let xi = engine.xi();
    let (lo, hi) = c.alexander_range();
    let window = (lo - 2, hi + 2);
    let ambient_cx = c.j_zero();
    let hf = Homology::of(&ambient_cx).map_err(SurgeryError::Cfk)?;
    let n = c.len();
    let inclusion = |cells: &[Cell]| Gf2Matrix::from_fn(n, cells.len(), |r, k| cells[k].generator == r);
    let mut firsts = Vec::new();
    let mut seconds = Vec::new();
    for s in window.0..=window.1 {
        let sub = c
            .subquotient(SubquotientSpec::new(Constraint::AtMost(s), Constraint::Eq(0)))
            .map_err(SurgeryError::Cfk)?;
        let into = inclusion(&sub.basis);
        firsts.push((sub, into));
        let sub = c
            .subquotient(SubquotientSpec::new(Constraint::Eq(0), Constraint::AtMost(s)))
            .map_err(SurgeryError::Cfk)?;
        let into = xi * &inclusion(&sub.basis);
        seconds.push((sub, into));
    }
    let first = filtration(&hf, firsts)?;
    let second = filtration(&hf, seconds)?;
    let mut p = FiltrationProfile {
        window,
        ambient: hf.dim(),
        first,
        second,
        graded: BTreeMap::new(),
        e: BTreeMap::new(),
    };
    for a in window.0..=window.1 {
        for b in window.0..=window.1 {
            let below = p.h_pq(a - 1, b).sum(&p.h_pq(a, b - 1)).dim();
            let v = p.h_pq(a, b).dim() - below;
            if v > 0 {
                p.graded.insert((a, b), v);
                *p.e.entry(a + b).or_default() += v;
            }
        }
    }
    Ok(p)
}

impl FiltrationProfile {
    pub fn window(&self) -> (i32, i32) {
        self.window
    }

    /// `dim H(C{j=0})`.
    pub fn ambient(&self) -> usize {
        self.ambient
    }

    fn side(&self, side: Side) -> &Filtration {
        match side {
            Side::First => &self.first,
            Side::Second => &self.second,
        }
    }

    /// Window slot for `s`, or `None` below it. Values above the window use
    /// the last slot since both filtrations are exhausted there.
    fn slot(&self, s: i32) -> Option<usize> {
        if s < self.window.0 {
            None
        } else {
            Some((s.min(self.window.1) - self.window.0) as usize)
        }
    }

    /// Image of `F_s` (or `F'_s`) in the ambient homology.
    pub fn image(&self, side: Side, s: i32) -> Subspace {
        self.slot(s)
            .map_or_else(|| Subspace::zero(self.ambient), |k| self.side(side).image[k].clone())
    }

    /// `dim` of the kernel of `F_s -> H(C{j=0})`.
    pub fn kernel_dim(&self, side: Side, s: i32) -> usize {
        self.slot(s).map_or(0, |k| self.side(side).kernel[k].dim())
    }

    pub fn filtered_dim(&self, side: Side, s: i32) -> usize {
        self.slot(s).map_or(0, |k| self.side(side).dims[k])
    }

    /// Matrix of `F_s -> H(C{j=0})`; zero columns below the window.
    pub fn to_ambient(&self, side: Side, s: i32) -> Gf2Matrix {
        self.slot(s).map_or_else(
            || Gf2Matrix::zeros(self.ambient, 0),
            |k| self.side(side).to_ambient[k].clone(),
        )
    }

    /// `H_{p,q}`, the intersection of the two images.
    pub fn h_pq(&self, p: i32, q: i32) -> Subspace {
        self.image(Side::First, p).intersect(&self.image(Side::Second, q))
    }

    pub fn graded(&self) -> &BTreeMap<(i32, i32), usize> {
        &self.graded
    }

    pub fn graded_dim(&self, p: i32, q: i32) -> usize {
        self.graded.get(&(p, q)).copied().unwrap_or(0)
    }

    /// `e_s`, the sum of `A_{p,q}` over `p + q = s`; only nonzero entries.
    pub fn e(&self) -> &BTreeMap<i32, usize> {
        &self.e
    }

    pub fn e_at(&self, s: i32) -> usize {
        self.e.get(&s).copied().unwrap_or(0)
    }

    pub fn total(&self) -> usize {
        self.e.values().sum()
    }

    /// Kernel of the step `F_s -> F_{s+1}` restricted to the kernel at `s`,
    /// in `F_s` coordinates. Zero outside the window.
    pub fn kernel_below(&self, side: Side, s: i32) -> Subspace {
        let f = self.side(side);
        match self.inner_slot(s) {
            Some(k) => {
                let ker = &f.kernel[k];
                let step = &f.step[k];
                Subspace::span(&(ker.basis() * &(step * ker.basis()).kernel_matrix()))
            }
            None => Subspace::zero(self.filtered_dim(side, s)),
        }
    }

    /// Image of the kernel at `s - 1` inside `F_s`. Zero outside the window.
    pub fn kernel_above(&self, side: Side, s: i32) -> Subspace {
        let f = self.side(side);
        match self.inner_slot(s - 1) {
            Some(k) => f.kernel[k].map(&f.step[k]),
            None => Subspace::zero(self.filtered_dim(side, s)),
        }
    }

    pub fn kernel(&self, side: Side, s: i32) -> Subspace {
        self.slot(s)
            .map_or_else(|| Subspace::zero(0), |k| self.side(side).kernel[k].clone())
    }

    /// Slot of `s` when both `s` and `s + 1` are in the window.
    fn inner_slot(&self, s: i32) -> Option<usize> {
        (self.window.0..self.window.1)
            .contains(&s)
            .then(|| (s - self.window.0) as usize)
    }

    /// Structural identities every profile satisfies.
    pub fn invariant_failures(&self) -> Vec<String> {
        let mut bad = Vec::new();
        let sum: usize = self.graded.values().sum();
        if sum != self.ambient || self.total() != self.ambient {
            bad.push(format!("graded pieces sum to {sum}, ambient is {}", self.ambient));
        }
        let (lo, hi) = self.window;
        for p in lo..=hi {
            for q in lo..=hi {
                let direct = self.h_pq(p, q).dim();
                let graded: usize = self
                    .graded
                    .range((lo, lo)..=(p, q))
                    .filter(|((_, b), _)| *b <= q)
                    .map(|(_, v)| v)
                    .sum();
                if direct != graded {
                    bad.push(format!("dim H({p},{q}) = {direct} but graded pieces give {graded}"));
                }
            }
        }
        for side in [Side::First, Side::Second] {
            for s in lo..hi {
                if self.image(side, s).dim() > self.image(side, s + 1).dim()
                    || !span_contains(&self.image(side, s + 1), &self.image(side, s))
                {
                    bad.push(format!("{side:?} image not increasing at {s}"));
                }
            }
            if self.image(side, hi).dim() != self.ambient || self.kernel_dim(side, hi) != 0 {
                bad.push(format!("{side:?} filtration not exhausted at {hi}"));
            }
            if self.filtered_dim(side, lo) != 0 {
                bad.push(format!("{side:?} filtration not empty at {lo}"));
            }
        }
        bad
    }
}

fn span_contains(big: &Subspace, small: &Subspace) -> bool {
    big.sum(small).dim() == big.dim()
}

/// One compared pair of dimensions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Equality {
    pub name: String,
    pub direct: usize,
    pub structural: usize,
}

impl Equality {
    fn new(name: impl Into<String>, direct: usize, structural: usize) -> Self {
        Equality {
            name: name.into(),
            direct,
            structural,
        }
    }

    pub fn holds(&self) -> bool {
        self.direct == self.structural
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LemmaReport {
    pub name: &'static str,
    pub checks: Vec<Equality>,
}

impl LemmaReport {
    pub fn mismatches(&self) -> Vec<&Equality> {
        self.checks.iter().filter(|c| !c.holds()).collect()
    }

    pub fn holds(&self) -> bool {
        self.mismatches().is_empty()
    }
}

fn graded_sum(p: &FiltrationProfile, keep: impl Fn(i32, i32) -> bool) -> usize {
    p.graded.iter().filter(|((a, b), _)| keep(*a, *b)).map(|(_, v)| v).sum()
}

/// `dim H_n(s)` against kernels of the two filtrations plus graded pieces,
/// for `n` in `{0, 1}` and every `s` in the window.
pub fn surgery_decomposition_check(c: &BifilteredComplex, p: &FiltrationProfile) -> Result<LemmaReport, SurgeryError> {
    let engine = Engine::new(c)?;
    let mut checks = Vec::new();
    let (lo, hi) = p.window;
    for s in lo..=hi {
        let slice = engine.slice(s)?;
        for (n, direct) in [(0, slice.h0.dim()), (1, slice.h1.dim())] {
            let structural = p.kernel_dim(Side::First, s)
                + p.kernel_dim(Side::Second, n - s - 1)
                + graded_sum(p, |a, b| a <= s && s < n - b)
                + graded_sum(p, |a, b| a > s && s >= n - b);
            checks.push(Equality::new(format!("n={n} s={s}"), direct, structural));
        }
    }
    Ok(LemmaReport {
        name: "surgery decomposition",
        checks,
    })
}

/// Kernel and image of the inclusion `H0(s) -> H1(s)` for every `s`.
pub fn inclusion_check(c: &BifilteredComplex, p: &FiltrationProfile) -> Result<LemmaReport, SurgeryError> {
    let engine = Engine::new(c)?;
    let m = c.alexander_range().0.abs().max(c.alexander_range().1.abs()) + 2;
    let mut checks = Vec::new();
    let mut below = engine.slice(-m - 1)?;
    for s in -m..=m {
        let here = engine.slice(s)?;
        let f = engine.local_maps(&below, &here).f_inf;
        let t = -s - 1;
        let down = p.kernel_below(Side::Second, t).dim();
        let whole = p.kernel_dim(Side::Second, t);
        let ker = down + graded_sum(p, |a, b| a > s && b == -s);
        let im = p.kernel_dim(Side::First, s)
            + (whole - down)
            + graded_sum(p, |a, b| a <= s && s < -b)
            + graded_sum(p, |a, b| a > s && s > -b);
        checks.push(Equality::new(format!("kernel s={s}"), f.kernel_dim(), ker));
        checks.push(Equality::new(format!("image s={s}"), f.rank(), im));
        below = here;
    }
    Ok(LemmaReport {
        name: "inclusion kernel and image",
        checks,
    })
}

/// How a graded piece raised to an exponent `m` contributes dimension.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Reading {
    /// `m` copies: `m * e_s`
    Multiplicity,
    /// at most `m` dimensions: `min(e_s, m)`
    Truncation,
    /// the whole piece once when `m > 0`
    Indicator,
}

impl Reading {
    pub fn dim(self, e: usize, m: i64) -> usize {
        let m = m.max(0) as usize;
        match self {
            Reading::Multiplicity => m * e,
            Reading::Truncation => m.min(e),
            Reading::Indicator => {
                if m > 0 {
                    e
                } else {
                    0
                }
            }
        }
    }
}

/// An exponent as a function of the grading.
pub type Exponent = fn(i32) -> i64;

/// An exponent with the reading that makes it match.
#[derive(Debug, Clone, Copy)]
pub struct GradedTerm {
    pub exponent: Exponent,
    pub reading: Reading,
}

impl GradedTerm {
    fn total(&self, p: &FiltrationProfile) -> usize {
        p.e.iter().map(|(&s, &e)| self.reading.dim(e, (self.exponent)(s))).sum()
    }
}

// The frozen readings. They were fixed by comparing against the
// directly computed side over the corpus and random complexes.

/// `ker B_1`: `max(0, |s| - 1)` copies of each piece.
pub const KER_B1_TERM: GradedTerm = GradedTerm {
    exponent: |s| (s.abs() as i64 - 1).max(0),
    reading: Reading::Multiplicity,
};

/// `coker B_0`: the stated exponent `max(0, -s)` misses the pieces above
/// `s = 2`; the extra `max(0, s - 2)` is what the direct side shows.
pub const COKER_B0_TERM: GradedTerm = GradedTerm {
    exponent: |s| (-s as i64).max(0) + (s as i64 - 2).max(0),
    reading: Reading::Multiplicity,
};

/// `ker B_1 B_0`: each piece with `s > 0` once.
pub const KER_B1B0_TERM: GradedTerm = GradedTerm {
    exponent: |s| (s as i64).max(0),
    reading: Reading::Indicator,
};

/// `coker B_1 B_0`: each piece with `s < 1` once.
pub const COKER_B1B0_TERM: GradedTerm = GradedTerm {
    exponent: |s| (1 - s as i64).max(0),
    reading: Reading::Indicator,
};

/// The exponents as stated, before calibration, for the survey.
pub const STATED_EXPONENTS: [(&str, Exponent); 4] = [
    ("ker B1", |s| (s.abs() as i64 - 1).max(0)),
    ("coker B0", |s| (-s as i64).max(0)),
    ("ker B1B0", |s| (s as i64).max(0)),
    ("coker B1B0", |s| (1 - s as i64).max(0)),
];

/// `sum_s dim [K_s]^{s+1}` over both filtrations.
fn kernel_images(p: &FiltrationProfile) -> usize {
    let (lo, hi) = p.window;
    (lo..hi)
        .map(|s| p.kernel_above(Side::First, s + 1).dim() + p.kernel_above(Side::Second, s + 1).dim())
        .sum()
}

/// `(sum dim of the intersection, sum dim of the quotient)` for the second
/// filtration's kernel pieces.
fn kernel_overlaps(p: &FiltrationProfile) -> (usize, usize) {
    let (lo, hi) = p.window;
    let mut meet = 0;
    let mut quotient = 0;
    for s in lo..=hi {
        let down = p.kernel_below(Side::Second, s);
        let up = p.kernel_above(Side::Second, s);
        meet += down.intersect(&up).dim();
        quotient += p.kernel_dim(Side::Second, s) - down.sum(&up).dim();
    }
    (meet, quotient)
}

/// Direct dimensions of the four spaces the graded terms describe.
struct BlockDims {
    ker_b0: usize,
    coker_b1: usize,
    ker_b1: usize,
    coker_b0: usize,
    ker_b1b0: usize,
    coker_b1b0: usize,
}

impl BlockDims {
    fn of(pk: &SurgeryPackage) -> Self {
        let b0 = &pk.blocks.zero.b;
        let b1 = &pk.blocks.one.b;
        let prod = b1 * b0;
        BlockDims {
            ker_b0: b0.kernel_dim(),
            coker_b1: b1.cokernel_dim(),
            ker_b1: b1.kernel_dim(),
            coker_b0: b0.cokernel_dim(),
            ker_b1b0: prod.kernel_dim(),
            coker_b1b0: prod.cokernel_dim(),
        }
    }
}

/// Kernels and cokernels of `B_0` and `B_1` against the profile.
pub fn block_rank_check(pk: &SurgeryPackage, p: &FiltrationProfile) -> LemmaReport {
    let d = BlockDims::of(pk);
    let images = kernel_images(p);
    LemmaReport {
        name: "B block ranks",
        checks: vec![
            Equality::new("ker B0", d.ker_b0, p.e_at(1)),
            Equality::new("coker B1", d.coker_b1, p.e_at(0)),
            Equality::new("ker B1", d.ker_b1, images + KER_B1_TERM.total(p)),
            Equality::new("coker B0", d.coker_b0, images + COKER_B0_TERM.total(p)),
        ],
    }
}

/// Kernel and cokernel of `B_1 B_0` against the profile.
pub fn product_rank_check(pk: &SurgeryPackage, p: &FiltrationProfile) -> LemmaReport {
    let d = BlockDims::of(pk);
    let (meet, quotient) = kernel_overlaps(p);
    LemmaReport {
        name: "B1 B0 ranks",
        checks: vec![
            Equality::new("ker B1B0", d.ker_b1b0, meet + KER_B1B0_TERM.total(p)),
            Equality::new("coker B1B0", d.coker_b1b0, quotient + COKER_B1B0_TERM.total(p)),
        ],
    }
}

/// Every stated exponent under every reading, for recording which ones
/// match. Not a pass/fail check.
pub fn reading_survey(pk: &SurgeryPackage, p: &FiltrationProfile) -> Vec<(Reading, Equality)> {
    let d = BlockDims::of(pk);
    let images = kernel_images(p);
    let (meet, quotient) = kernel_overlaps(p);
    let bases = [
        (d.ker_b1, images),
        (d.coker_b0, images),
        (d.ker_b1b0, meet),
        (d.coker_b1b0, quotient),
    ];
    let mut out = Vec::new();
    for ((name, exponent), (direct, base)) in STATED_EXPONENTS.iter().zip(bases) {
        for reading in [Reading::Multiplicity, Reading::Truncation, Reading::Indicator] {
            let term = GradedTerm {
                exponent: *exponent,
                reading,
            };
            out.push((reading, Equality::new(*name, direct, base + term.total(p))));
        }
    }
    out
}

/// All four reports for one complex and its package.
pub fn lemma_suite(
    c: &BifilteredComplex,
    pk: &SurgeryPackage,
    p: &FiltrationProfile,
) -> Result<Vec<LemmaReport>, SurgeryError> {
    Ok(vec![
        surgery_decomposition_check(c, p)?,
        inclusion_check(c, p)?,
        block_rank_check(pk, p),
        product_rank_check(pk, p),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cfk::corpus;
    use crate::duality::geometric_package;

    #[test]
    fn unknot_profile() {
        let p = profile(&corpus("unknot").unwrap()).unwrap();
        assert_eq!(p.graded().iter().collect::<Vec<_>>(), vec![(&(0, 0), &1)]);
        assert_eq!(p.e_at(0), 1);
        let (lo, hi) = p.window();
        for s in lo..=hi {
            assert_eq!(p.kernel_dim(Side::First, s), 0);
            assert_eq!(p.kernel_dim(Side::Second, s), 0);
        }
        assert!(p.invariant_failures().is_empty());
    }

    #[test]
    fn trefoil_profile() {
        let p = profile(&corpus("trefoil_staircase").unwrap()).unwrap();
        assert_eq!(p.graded_dim(1, 1), 1);
        assert_eq!(p.e().iter().collect::<Vec<_>>(), vec![(&2, &1)]);
        assert_eq!(p.kernel_dim(Side::First, -1), 1);
        assert_eq!(p.kernel_dim(Side::First, 0), 0);
        assert_eq!(p.filtered_dim(Side::First, 0), 0);
        assert!(p.invariant_failures().is_empty());
    }

    #[test]
    fn mirror_negates_the_profile() {
        for name in ["trefoil_staircase", "fig8_box", "torus_3_4"] {
            let k = corpus(name).unwrap();
            let p = profile(&k).unwrap();
            let m = profile(&k.mirror()).unwrap();
            let negated: BTreeMap<i32, usize> = p.e().iter().map(|(&s, &e)| (-s, e)).collect();
            assert_eq!(m.e(), &negated, "{name}");
        }
    }

    #[test]
    fn unknot_block_ranks() {
        let k = corpus("unknot").unwrap();
        let r = block_rank_check(&geometric_package(&k).unwrap(), &profile(&k).unwrap());
        assert!(r.holds(), "{r:?}");
        assert_eq!(r.checks[1].direct, 1);
    }

    #[test]
    fn corpus_lemmas() {
        for name in crate::cfk::corpus_names() {
            let k = corpus(&name).unwrap();
            let p = profile(&k).unwrap();
            let pk = geometric_package(&k).unwrap();
            for r in lemma_suite(&k, &pk, &p).unwrap() {
                assert!(r.holds(), "{name}: {} {:?}", r.name, r.mismatches());
            }
        }
    }

    #[test]
    fn readings_differ_on_their_dimension() {
        assert_eq!(Reading::Multiplicity.dim(2, 3), 6);
        assert_eq!(Reading::Truncation.dim(2, 3), 2);
        assert_eq!(Reading::Indicator.dim(2, 3), 2);
        assert_eq!(Reading::Indicator.dim(2, -1), 0);
    }
}
