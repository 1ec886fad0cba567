//! The splice matrix of two packages and the checks built on it.
//!
//! Block order: rows and columns are the six tensor products listed in
//! [`row_dims`] and [`col_dims`]. Knot 1 is always the left Kronecker
//! factor. Entries are numbered from 1 in error messages, as
//! (row block, column block).

use serde::Serialize;
use thiserror::Error;

use crate::cfk::BifilteredComplex;
use crate::duality::{geometric_package, ByIndex, DualityError, PackageStats, SurgeryPackage};
use crate::filtration::FiltrationProfile;
use crate::gf2::{span_rank, BitVec, BlockGrid, Gf2Error, Gf2Matrix};
use crate::surgery::Coefficient;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpliceError {
    #[error(transparent)]
    Duality(#[from] DualityError),
    #[error("entry ({}, {}) of the splice matrix: {detail}", .entry.0, .entry.1)]
    ShapeMismatch { entry: (usize, usize), detail: String },
    #[error("witness {family:?} ({left}, {right}) is not in the kernel")]
    WitnessNotInKernel {
        family: WitnessFamily,
        left: usize,
        right: usize,
    },
}

/// Which form of the entries involving `X_1` to use.
///
/// `Standard` is the default. `Swapped` replaces `X_1 A_inf` on the left
/// factor by `A_inf X_1` and `D_0 X_1` on the right factor by `X_1 D_0`, the
/// only reorderings that keep every block shape.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EntryVariant {
    #[default]
    Standard,
    Swapped,
}

/// Row block sizes for packages with ranks `a` (left) and `b` (right).
pub fn row_dims(a: ByIndex<usize>, b: ByIndex<usize>) -> [usize; 6] {
    [
        a.zero * b.zero,
        a.inf * b.one,
        a.inf * b.zero,
        a.one * b.inf,
        a.zero * b.inf,
        a.one * b.one,
    ]
}

/// Column block sizes, in the order of the witness vector components.
pub fn col_dims(a: ByIndex<usize>, b: ByIndex<usize>) -> [usize; 6] {
    [
        a.inf * b.inf,
        a.inf * b.zero,
        a.one * b.zero,
        a.zero * b.inf,
        a.zero * b.one,
        a.one * b.one,
    ]
}

#[derive(Debug, Clone)]
pub struct SpliceMatrix {
    pub grid: BlockGrid,
    pub assembled: Gf2Matrix,
    pub row_block_dims: Vec<usize>,
    pub col_block_dims: Vec<usize>,
    pub variant: EntryVariant,
}

impl SpliceMatrix {
    pub fn h(&self) -> usize {
        self.assembled.h_number()
    }
}

fn shape_err(entry: (usize, usize), detail: String) -> SpliceError {
    SpliceError::ShapeMismatch { entry, detail }
}

/// Ordered product of blocks, failing with the entry name on a mismatch.
fn prod(entry: (usize, usize), ms: &[&Gf2Matrix]) -> Result<Gf2Matrix, SpliceError> {
    let mut acc = ms[0].clone();
    for m in &ms[1..] {
        acc = acc
            .try_mul(m)
            .ok_or_else(|| shape_err(entry, format!("cannot multiply {:?} by {:?}", acc.shape(), m.shape())))?;
    }
    Ok(acc)
}

fn sum(entry: (usize, usize), terms: &[Gf2Matrix]) -> Result<Gf2Matrix, SpliceError> {
    let mut acc = terms[0].clone();
    for t in &terms[1..] {
        acc = acc
            .try_add(t)
            .ok_or_else(|| shape_err(entry, format!("cannot add {:?} and {:?}", acc.shape(), t.shape())))?;
    }
    Ok(acc)
}

/// The blocks of one package under short names.
struct Parts<'a> {
    a: ByIndex<usize>,
    a0: &'a Gf2Matrix,
    b0: &'a Gf2Matrix,
    d0: &'a Gf2Matrix,
    a1: &'a Gf2Matrix,
    b1: &'a Gf2Matrix,
    d1: &'a Gf2Matrix,
    ai: &'a Gf2Matrix,
    bi: &'a Gf2Matrix,
    di: &'a Gf2Matrix,
    x1: &'a Gf2Matrix,
}

impl<'a> Parts<'a> {
    fn of(p: &'a SurgeryPackage) -> Self {
        Parts {
            a: p.a,
            a0: &p.blocks.zero.a,
            b0: &p.blocks.zero.b,
            d0: &p.blocks.zero.d,
            a1: &p.blocks.one.a,
            b1: &p.blocks.one.b,
            d1: &p.blocks.one.d,
            ai: &p.blocks.inf.a,
            bi: &p.blocks.inf.b,
            di: &p.blocks.inf.d,
            x1: &p.x.one,
        }
    }

    fn id(&self, i: Coefficient) -> Gf2Matrix {
        Gf2Matrix::identity(match i {
            Coefficient::Zero => self.a.zero,
            Coefficient::One => self.a.one,
            Coefficient::Infinity => self.a.inf,
        })
    }
}

pub fn build_d(p1: &SurgeryPackage, p2: &SurgeryPackage) -> Result<SpliceMatrix, SpliceError> {
    build_d_with(p1, p2, EntryVariant::Standard)
}

pub fn build_d_with(
    p1: &SurgeryPackage,
    p2: &SurgeryPackage,
    variant: EntryVariant,
) -> Result<SpliceMatrix, SpliceError> {
    use Coefficient::{Infinity as Inf, One, Zero};
    let (p, q) = (Parts::of(p1), Parts::of(p2));
    let rd = row_dims(p.a, q.a).to_vec();
    let cd = col_dims(p.a, q.a).to_vec();
    let mut grid = BlockGrid::new(rd.clone(), cd.clone());

    // x1 a_inf on the left and d0 x1 on the right, in the chosen order
    let left_x1_ai = |e| match variant {
        EntryVariant::Standard => prod(e, &[p.x1, p.ai]),
        EntryVariant::Swapped => prod(e, &[p.ai, p.x1]),
    };
    let right_d0_x1 = |e| match variant {
        EntryVariant::Standard => prod(e, &[q.d0, q.x1]),
        EntryVariant::Swapped => prod(e, &[q.x1, q.d0]),
    };

    let mut put = |e: (usize, usize), m: Gf2Matrix| grid.set(e.0 - 1, e.1 - 1, m);

    let e = (1, 1);
    put(e, prod(e, &[p.di, p.b1])?.kron(&prod(e, &[q.b1, q.a0])?));
    let e = (1, 2);
    put(e, prod(e, &[p.b1, p.a0])?.kron(&q.id(Zero)));
    let e = (1, 3);
    put(e, prod(e, &[p.b1, p.b0])?.kron(&q.id(Zero)));
    let e = (1, 4);
    put(e, prod(e, &[p.di, p.a1])?.kron(&prod(e, &[q.b1, q.a0])?));
    let e = (1, 5);
    put(e, p.id(Zero).kron(&prod(e, &[q.b1, q.b0])?));

    let e = (2, 1);
    put(e, p.id(Inf).kron(&prod(e, &[q.bi, q.b1])?));
    let e = (2, 2);
    put(e, prod(e, &[p.d1, p.a0])?.kron(&prod(e, &[q.bi, q.a1])?));
    let e = (2, 3);
    put(e, prod(e, &[p.d1, p.b0])?.kron(&prod(e, &[q.bi, q.a1])?));
    let e = (2, 5);
    put(e, prod(e, &[p.b0, p.bi])?.kron(&q.id(One)));
    let e = (2, 6);
    put(e, prod(e, &[p.b0, p.ai])?.kron(&q.id(One)));

    let e = (3, 1);
    put(e, p.id(Inf).kron(&prod(e, &[q.di, q.b1])?));
    let e = (3, 2);
    let m = sum(
        e,
        &[
            p.id(Inf).kron(&q.id(Zero)),
            prod(e, &[p.d1, p.a0])?.kron(&prod(e, &[q.di, q.a1])?),
        ],
    )?;
    put(e, m);
    let e = (3, 3);
    put(e, prod(e, &[p.d1, p.b0])?.kron(&prod(e, &[q.di, q.a1])?));

    let e = (4, 1);
    put(e, prod(e, &[p.bi, p.b1])?.kron(&q.id(Inf)));
    let e = (4, 3);
    put(e, p.id(One).kron(&prod(e, &[q.b0, q.bi])?));
    let e = (4, 4);
    put(e, prod(e, &[p.bi, p.a1])?.kron(&q.id(Inf)));
    let e = (4, 5);
    let m = sum(
        e,
        &[
            prod(e, &[p.d0, p.bi])?.kron(&prod(e, &[q.b0, q.ai])?),
            prod(e, &[p.x1, p.bi])?.kron(&prod(e, &[q.b0, q.x1])?),
        ],
    )?;
    put(e, m);
    let e = (4, 6);
    let m = sum(
        e,
        &[
            prod(e, &[p.d0, p.ai])?.kron(&prod(e, &[q.b0, q.ai])?),
            left_x1_ai(e)?.kron(&prod(e, &[q.b0, q.x1])?),
        ],
    )?;
    put(e, m);

    let e = (5, 1);
    put(e, prod(e, &[p.di, p.b1])?.kron(&prod(e, &[q.d1, q.a0])?));
    let e = (5, 4);
    let m = sum(
        e,
        &[
            p.id(Zero).kron(&q.id(Inf)),
            prod(e, &[p.di, p.a1])?.kron(&prod(e, &[q.d1, q.a0])?),
        ],
    )?;
    put(e, m);
    let e = (5, 5);
    put(e, p.id(Zero).kron(&prod(e, &[q.d1, q.b0])?));

    let e = (6, 3);
    put(e, p.id(One).kron(&prod(e, &[q.d0, q.bi])?));
    let e = (6, 5);
    let m = sum(
        e,
        &[
            prod(e, &[p.d0, p.bi])?.kron(&prod(e, &[q.d0, q.ai])?),
            prod(e, &[p.x1, p.bi])?.kron(&right_d0_x1(e)?),
        ],
    )?;
    put(e, m);
    let e = (6, 6);
    let m = sum(
        e,
        &[
            p.id(One).kron(&q.id(One)),
            prod(e, &[p.d0, p.ai])?.kron(&prod(e, &[q.d0, q.ai])?),
            left_x1_ai(e)?.kron(&right_d0_x1(e)?),
        ],
    )?;
    put(e, m);

    let assembled = grid.assemble().map_err(|err| match err {
        Gf2Error::ShapeMismatch {
            row,
            col,
            expected,
            found,
        } => shape_err((row + 1, col + 1), format!("block is {found:?}, expected {expected:?}")),
        other => shape_err((0, 0), other.to_string()),
    })?;
    Ok(SpliceMatrix {
        grid,
        assembled,
        row_block_dims: rd,
        col_block_dims: cd,
        variant,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SpliceRank {
    pub h: usize,
    pub ker: usize,
    pub coker: usize,
}

impl SpliceRank {
    pub fn of(d: &Gf2Matrix) -> Self {
        SpliceRank {
            h: d.h_number(),
            ker: d.kernel_dim(),
            coker: d.cokernel_dim(),
        }
    }
}

pub fn splice_rank(p1: &SurgeryPackage, p2: &SurgeryPackage) -> Result<SpliceRank, SpliceError> {
    Ok(SpliceRank::of(&build_d(p1, p2)?.assembled))
}

/// The six kinds of kernel vector. The letters name the solution spaces the
/// two factors come from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessFamily {
    /// pairs solving the zero system on the left, infinity system on the right
    ZeroInf,
    InfZero,
    OneOne,
    /// `ker B_1` on both sides
    KerB1,
    /// `ker B_0` on the left, `ker B_inf` on the right
    KerB0BInf,
    KerBInfB0,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelWitness {
    pub family: WitnessFamily,
    /// basis indices of the two factors
    pub left: usize,
    pub right: usize,
    pub vector: BitVec,
}

/// Solutions `(x, y)` of `top x = 0`, `mid x + bottom y = 0`.
fn block_system(top: &Gf2Matrix, mid: &Gf2Matrix, bottom: &Gf2Matrix) -> Vec<(BitVec, BitVec)> {
    let n = top.cols();
    let upper = top.hstack(&Gf2Matrix::zeros(top.rows(), bottom.cols()));
    let lower = mid.hstack(bottom);
    upper
        .vstack(&lower)
        .kernel_basis()
        .into_iter()
        .map(|v| (v.slice(0, n), v.slice(n, v.len())))
        .collect()
}

/// The three systems and three kernels of one package.
struct Systems {
    inf: Vec<(BitVec, BitVec)>,
    one: Vec<(BitVec, BitVec)>,
    zero: Vec<(BitVec, BitVec)>,
    ker_b0: Vec<BitVec>,
    ker_b1: Vec<BitVec>,
    ker_bi: Vec<BitVec>,
}

impl Systems {
    fn of(p: &Parts<'_>) -> Self {
        Systems {
            inf: block_system(p.b1, &(p.d1 + p.a0), p.b0),
            one: block_system(p.b0, &(p.d0 + p.ai), p.bi),
            zero: block_system(p.bi, &(p.di + p.a1), p.b1),
            ker_b0: p.b0.kernel_basis(),
            ker_b1: p.b1.kernel_basis(),
            ker_bi: p.bi.kernel_basis(),
        }
    }
}

/// All witness vectors, one per pair of basis elements in each family.
pub fn witness_vectors(p1: &SurgeryPackage, p2: &SurgeryPackage) -> Vec<KernelWitness> {
    let cd = col_dims(p1.a, p2.a);
    let mut offsets = [0; 7];
    for k in 0..6 {
        offsets[k + 1] = offsets[k] + cd[k];
    }
    let total = offsets[6];
    let (s, t) = (Systems::of(&Parts::of(p1)), Systems::of(&Parts::of(p2)));
    let mut out = Vec::new();
    let mut emit = |family, left, right, parts: &[(usize, BitVec)]| {
        let mut v = BitVec::zeros(total);
        for (col, piece) in parts {
            for i in piece.ones() {
                v.toggle(offsets[*col - 1] + i);
            }
        }
        out.push(KernelWitness {
            family,
            left,
            right,
            vector: v,
        });
    };
    for (i, (x0, y0)) in s.zero.iter().enumerate() {
        for (j, (xi, yi)) in t.inf.iter().enumerate() {
            emit(
                WitnessFamily::ZeroInf,
                i,
                j,
                &[(1, y0.kron(xi)), (4, x0.kron(xi)), (5, x0.kron(yi))],
            );
        }
    }
    for (i, (xi, yi)) in s.inf.iter().enumerate() {
        for (j, (x0, y0)) in t.zero.iter().enumerate() {
            emit(
                WitnessFamily::InfZero,
                i,
                j,
                &[(1, xi.kron(y0)), (2, xi.kron(x0)), (3, yi.kron(x0))],
            );
        }
    }
    for (i, (x1, y1)) in s.one.iter().enumerate() {
        for (j, (u1, v1)) in t.one.iter().enumerate() {
            emit(
                WitnessFamily::OneOne,
                i,
                j,
                &[(3, x1.kron(v1)), (5, y1.kron(u1)), (6, x1.kron(u1))],
            );
        }
    }
    for (i, z) in s.ker_b1.iter().enumerate() {
        for (j, w) in t.ker_b1.iter().enumerate() {
            emit(WitnessFamily::KerB1, i, j, &[(1, z.kron(w))]);
        }
    }
    for (i, z) in s.ker_b0.iter().enumerate() {
        for (j, w) in t.ker_bi.iter().enumerate() {
            emit(WitnessFamily::KerB0BInf, i, j, &[(3, z.kron(w))]);
        }
    }
    for (i, z) in s.ker_bi.iter().enumerate() {
        for (j, w) in t.ker_b0.iter().enumerate() {
            emit(WitnessFamily::KerBInfB0, i, j, &[(5, z.kron(w))]);
        }
    }
    out
}

/// Six-term lower bounds on the kernel and cokernel from the two knots'
/// statistics.
pub fn six_term_bounds(s1: &PackageStats, s2: &PackageStats) -> (usize, usize) {
    let ker = s1.k.zero * s2.k.zero
        + s1.k.inf * s2.k.one
        + s1.k.one * s2.k.inf
        + s1.l.inf * s2.l.zero
        + s1.l.zero * s2.l.inf
        + s1.l.one * s2.l.one;
    let coker = s1.c.inf * s2.c.inf
        + s1.c.zero * s2.c.one
        + s1.c.one * s2.c.zero
        + s1.d.inf * s2.d.zero
        + s1.d.zero * s2.d.inf
        + s1.d.one * s2.d.one;
    (ker, coker)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessReport {
    pub count: usize,
    pub span_rank: usize,
    pub ker: usize,
    pub coker: usize,
    pub ker_bound: usize,
    pub coker_bound: usize,
}

impl WitnessReport {
    pub fn bounds_hold(&self) -> bool {
        self.ker >= self.ker_bound && self.coker >= self.coker_bound
    }
}

/// Builds every witness, checks each is killed by the splice matrix, and
/// evaluates the six-term bounds.
pub fn kernel_witnesses(p1: &SurgeryPackage, p2: &SurgeryPackage) -> Result<WitnessReport, SpliceError> {
    let d = build_d(p1, p2)?;
    let ws = witness_vectors(p1, p2);
    for w in &ws {
        if !d.assembled.mul_vec(&w.vector).is_zero() {
            return Err(SpliceError::WitnessNotInKernel {
                family: w.family,
                left: w.left,
                right: w.right,
            });
        }
    }
    let cols: Vec<BitVec> = ws.iter().map(|w| w.vector.clone()).collect();
    let span = Gf2Matrix::from_columns(d.assembled.cols(), &cols);
    let (ker_bound, coker_bound) = six_term_bounds(&p1.stats()?, &p2.stats()?);
    Ok(WitnessReport {
        count: ws.len(),
        span_rank: span_rank(&[&span]),
        ker: d.assembled.kernel_dim(),
        coker: d.assembled.cokernel_dim(),
        ker_bound,
        coker_bound,
    })
}

/// Which of the five rank conditions hold for the second knot.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct SCase {
    pub s1: bool,
    pub s2: bool,
    pub s3: bool,
    pub s4: bool,
    pub s5: bool,
}

impl SCase {
    pub fn from_ranks(a: ByIndex<usize>, r: ByIndex<usize>) -> Self {
        let (a0, a1, ai) = (a.zero, a.one, a.inf);
        let (r0, r1, ri) = (r.zero, r.one, r.inf);
        SCase {
            s1: r0 <= r1 && r1 == ri && ri == a1 && a1 == ai && ai < a0,
            s2: r0 == r1 && r1 == ai && ai <= ri && ai < a1 && ai < a0,
            s3: r0 == ri && ri == a1 && a1 <= r1 && a1 < ai && a1 < a0,
            s4: r0 == ai && ri == a0 && a1 >= a0 && a1 >= ai,
            s5: r0 == a1 && r1 == a0 && ai >= a0 && ai >= a1,
        }
    }

    /// Numbers of the conditions that hold.
    pub fn satisfied(&self) -> Vec<u8> {
        [self.s1, self.s2, self.s3, self.s4, self.s5]
            .iter()
            .zip(1..)
            .filter_map(|(&b, k)| b.then_some(k))
            .collect()
    }

    pub fn any(&self) -> bool {
        !self.satisfied().is_empty()
    }
}

pub fn classify_s(stats2: &PackageStats) -> SCase {
    SCase::from_ranks(stats2.a, stats2.r)
}

/// The relabelling that swaps `0` and `inf` and fixes `1`.
pub fn swap_zero_inf(i: Coefficient) -> Coefficient {
    match i {
        Coefficient::Zero => Coefficient::Infinity,
        Coefficient::One => Coefficient::One,
        Coefficient::Infinity => Coefficient::Zero,
    }
}

fn b_block(p: &SurgeryPackage, i: Coefficient) -> &Gf2Matrix {
    match i {
        Coefficient::Zero => &p.blocks.zero.b,
        Coefficient::One => &p.blocks.one.b,
        Coefficient::Infinity => &p.blocks.inf.b,
    }
}

fn injective(m: &Gf2Matrix) -> bool {
    m.rank() == m.cols()
}

fn surjective(m: &Gf2Matrix) -> bool {
    m.rank() == m.rows()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum BoundStatus {
    Checked { bound: usize, actual: usize, holds: bool },
    Skipped { reason: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundCheck {
    pub name: String,
    #[serde(flatten)]
    pub status: BoundStatus,
}

impl BoundCheck {
    fn checked(name: String, bound: usize, actual: usize) -> Self {
        BoundCheck {
            name,
            status: BoundStatus::Checked {
                bound,
                actual,
                holds: actual >= bound,
            },
        }
    }

    fn skipped(name: String, reason: String) -> Self {
        BoundCheck {
            name,
            status: BoundStatus::Skipped { reason },
        }
    }

    pub fn failed(&self) -> bool {
        matches!(self.status, BoundStatus::Checked { holds: false, .. })
    }
}

/// The three cyclic orderings of the coefficients.
pub const CYCLIC: [(Coefficient, Coefficient, Coefficient); 3] = [
    (Coefficient::Zero, Coefficient::One, Coefficient::Infinity),
    (Coefficient::One, Coefficient::Infinity, Coefficient::Zero),
    (Coefficient::Infinity, Coefficient::Zero, Coefficient::One),
];

/// Tensor-product subspace bounds that apply when the second knot's `B`
/// blocks are injective or surjective in the right places. Checks whose
/// hypotheses fail are reported as skipped.
pub fn subspace_bounds(p1: &SurgeryPackage, p2: &SurgeryPackage) -> Result<Vec<BoundCheck>, SpliceError> {
    let d = build_d(p1, p2)?.assembled;
    let (ker, coker) = (d.kernel_dim(), d.cokernel_dim());
    let l = |i| b_block(p1, swap_zero_inf(i));
    let r = |i| b_block(p2, i);
    let kd = |m: &Gf2Matrix| m.kernel_dim();
    let cd = |m: &Gf2Matrix| m.cokernel_dim();
    let mut out = Vec::new();
    for (o, b, s) in CYCLIC {
        let tag = format!("({o},{b},{s})");
        let case1 = injective(r(o)) && surjective(r(b));
        let case2 = surjective(r(o)) && injective(r(b));
        if case1 {
            let left = l(o) * l(b);
            let right = r(b) * r(o);
            out.push(BoundCheck::checked(
                format!("case1 ker {tag}"),
                kd(&left) * kd(&right),
                ker,
            ));
            out.push(BoundCheck::checked(
                format!("case1 coker {tag}"),
                cd(&left) * cd(&right),
                coker,
            ));
        } else {
            let why = format!("B_{o} of the second knot is not injective or B_{b} is not surjective");
            out.push(BoundCheck::skipped(format!("case1 {tag}"), why));
        }
        if case2 {
            let kl = l(b) * l(s);
            let kr = r(s) * r(b);
            let cl = l(s) * l(o);
            let cr = r(o) * r(s);
            out.push(BoundCheck::checked(format!("case2 ker {tag}"), kd(&kl) * kd(&kr), ker));
            out.push(BoundCheck::checked(
                format!("case2 coker {tag}"),
                cd(&cl) * cd(&cr),
                coker,
            ));
        } else {
            let why = format!("B_{o} of the second knot is not surjective or B_{b} is not injective");
            out.push(BoundCheck::skipped(format!("case2 {tag}"), why));
        }
    }
    let (b0, b1, bi) = (&p1.blocks.zero.b, &p1.blocks.one.b, &p1.blocks.inf.b);
    let (c0, c1, ci) = (&p2.blocks.zero.b, &p2.blocks.one.b, &p2.blocks.inf.b);
    if injective(c0) && surjective(ci) {
        let base = kd(b0) * kd(ci) + kd(bi) * kd(c0);
        let k = kd(&(bi * b1)) * kd(&(c1 * c0));
        let k2 = kd(b1) * kd(c1);
        out.push(BoundCheck::checked("refined ker".into(), base + k.max(k2), ker));
        let base = cd(b0) * cd(ci) + cd(bi) * cd(c0);
        let c = cd(&(b1 * b0)) * cd(&(ci * c1));
        let c2 = cd(b1) * cd(c1);
        out.push(BoundCheck::checked("refined coker".into(), base + c.max(c2), coker));
    } else {
        out.push(BoundCheck::skipped(
            "refined".into(),
            "B_0 of the second knot is not injective or B_inf is not surjective".into(),
        ));
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TheoremVerdict {
    /// whether the second knot lives in an L-space
    pub applicable: bool,
    pub holds: bool,
    /// `h` minus the required rank of the first manifold
    pub margin: i64,
    pub h: usize,
    pub required: usize,
    pub y_inf_second: usize,
    pub witness_bounds_hold: bool,
    /// whether the profile total agrees with the first package's `y_inf`
    pub ranks_agree: bool,
}

/// When the second manifold is an L-space the splice is at least as large as
/// the first; the witness bounds are required either way.
pub fn theorem_check(
    p1: &SurgeryPackage,
    p2: &SurgeryPackage,
    profile1: Option<&FiltrationProfile>,
) -> Result<TheoremVerdict, SpliceError> {
    let s1 = p1.stats()?;
    let s2 = p2.stats()?;
    let w = kernel_witnesses(p1, p2)?;
    let h = w.ker + w.coker;
    let required = profile1.map_or(s1.y.inf, |p| p.total());
    let applicable = s2.y.inf == 1;
    let witness_bounds_hold = w.bounds_hold();
    Ok(TheoremVerdict {
        applicable,
        holds: witness_bounds_hold && (!applicable || h >= required),
        margin: h as i64 - required as i64,
        h,
        required,
        y_inf_second: s2.y.inf,
        witness_bounds_hold,
        ranks_agree: required == s1.y.inf,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MirrorVerdict {
    pub h: usize,
    pub h_mirror: usize,
    pub holds: bool,
}

pub fn mirror_invariance(k1: &BifilteredComplex, k2: &BifilteredComplex) -> Result<MirrorVerdict, SpliceError> {
    let h = splice_rank(&geometric_package(k1)?, &geometric_package(k2)?)?.h;
    let h_mirror = splice_rank(&geometric_package(&k1.mirror())?, &geometric_package(&k2.mirror())?)?.h;
    Ok(MirrorVerdict {
        h,
        h_mirror,
        holds: h == h_mirror,
    })
}

/// Everything computed for one pair.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairAnalysis {
    pub rank: SpliceRank,
    pub rank_swapped: SpliceRank,
    pub rows: usize,
    pub cols: usize,
    pub witnesses: WitnessReport,
    pub s_case: SCase,
    pub bounds: Vec<BoundCheck>,
    pub theorem: TheoremVerdict,
}

impl PairAnalysis {
    /// Failures of checks that must hold for every pair.
    pub fn failures(&self) -> Vec<String> {
        let mut bad = Vec::new();
        if !self.witnesses.bounds_hold() {
            bad.push(format!("six-term bounds: {:?}", self.witnesses));
        }
        for b in self.bounds.iter().filter(|b| b.failed()) {
            bad.push(format!("subspace bound {}: {:?}", b.name, b.status));
        }
        if !self.theorem.holds {
            bad.push(format!("rank inequality: {:?}", self.theorem));
        }
        bad
    }
}

pub fn analyze_pair(
    p1: &SurgeryPackage,
    p2: &SurgeryPackage,
    profile1: Option<&FiltrationProfile>,
) -> Result<PairAnalysis, SpliceError> {
    let d = build_d(p1, p2)?;
    let swapped = build_d_with(p1, p2, EntryVariant::Swapped)?;
    Ok(PairAnalysis {
        rank: SpliceRank::of(&d.assembled),
        rank_swapped: SpliceRank::of(&swapped.assembled),
        rows: d.assembled.rows(),
        cols: d.assembled.cols(),
        witnesses: kernel_witnesses(p1, p2)?,
        s_case: classify_s(&p2.stats()?),
        bounds: subspace_bounds(p1, p2)?,
        theorem: theorem_check(p1, p2, profile1)?,
    })
}
