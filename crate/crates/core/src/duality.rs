//! Duality maps, normalized bases and the statistics of a surgery package.
//!
//! Exchanging the two basepoints identifies each mapping cone with the one
//! where the summands trade places. At chain level this is
//! `Sub(x) -> Flip(flip^-1 x)`, `Flip(x) -> Sub(flip x)`, `Target(x) -> Target(x)`,
//! which induces `tau_1: H_1(s) -> H_1(-s)`, `tau_0: H_0(s) -> H_0(-1-s)` and
//! `tau_inf: H_inf(s) -> H_inf(-s)`.
//!
//! Normalized bases split `H_0 = (a_inf | a_1)`, `H_1 = (a_0 | a_inf)` and
//! `H_inf = (a_1 | a_0)`, so that each `f` is `(0 0; I 0)` and
//! `tau = (A B; C D)` has `B_0: a_inf x a_1`, `B_1: a_0 x a_inf`,
//! `B_inf: a_1 x a_0`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::cfk::{BifilteredComplex, CfkError, TauOverride};
use crate::gf2::{complement_basis, Gf2Matrix};
use crate::surgery::{chain_matrix, place, total_package, ConeCell, Engine, SurgeryError, SurgeryTriple};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DualityError {
    #[error(transparent)]
    Surgery(#[from] SurgeryError),
    #[error("the flip map must be invertible and send alexander grading s to -s")]
    FlipNotGraded,
    #[error("duality relation fails: {0}")]
    TauRelationFailure(String),
    #[error("normalization failed: {0}")]
    NormalizationFailure(String),
    #[error("statistics disagree: {0}")]
    StatsInconsistent(String),
    #[error("no admissible sample after {attempts} attempts")]
    SamplingExhausted { attempts: usize },
}

impl From<CfkError> for DualityError {
    fn from(e: CfkError) -> Self {
        DualityError::Surgery(SurgeryError::Cfk(e))
    }
}

/// Values indexed by the three surgery coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct ByIndex<T> {
    #[serde(rename = "0")]
    pub zero: T,
    #[serde(rename = "1")]
    pub one: T,
    #[serde(rename = "inf")]
    pub inf: T,
}

impl<T> ByIndex<T> {
    pub fn new(zero: T, one: T, inf: T) -> Self {
        ByIndex { zero, one, inf }
    }

    pub fn map<U>(&self, mut f: impl FnMut(&T) -> U) -> ByIndex<U> {
        ByIndex {
            zero: f(&self.zero),
            one: f(&self.one),
            inf: f(&self.inf),
        }
    }
}

/// Duality maps in whatever bases the surgery groups currently carry.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TauMaps {
    pub tau0: Gf2Matrix,
    pub tau1: Gf2Matrix,
    pub tau_inf: Gf2Matrix,
}

/// The six triangle maps on the total spaces.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TotalMaps {
    pub f0: Gf2Matrix,
    pub f1: Gf2Matrix,
    pub f_inf: Gf2Matrix,
    pub bar_f0: Gf2Matrix,
    pub bar_f1: Gf2Matrix,
    pub bar_f_inf: Gf2Matrix,
}

impl TotalMaps {
    fn of(t: &SurgeryTriple) -> Self {
        TotalMaps {
            f0: t.f0.clone(),
            f1: t.f1.clone(),
            f_inf: t.f_inf.clone(),
            bar_f0: t.bar_f0.clone(),
            bar_f1: t.bar_f1.clone(),
            bar_f_inf: t.bar_f_inf.clone(),
        }
    }
}

/// Names of the relations `bar f = tau^-1 f tau` that fail.
pub fn relation_failures(f: &TotalMaps, tau: &TauMaps) -> Vec<String> {
    let mut out = Vec::new();
    let (Some(i0), Some(i1), Some(ii)) = (tau.tau0.inverse(), tau.tau1.inverse(), tau.tau_inf.inverse()) else {
        out.push("tau is not invertible".to_string());
        return out;
    };
    let check = |lhs: &Gf2Matrix, inv: &Gf2Matrix, mid: &Gf2Matrix, right: &Gf2Matrix| {
        inv.try_mul(mid)
            .and_then(|m| m.try_mul(right))
            .is_some_and(|rhs| &rhs == lhs)
    };
    if !check(&f.bar_f0, &ii, &f.f0, &tau.tau1) {
        out.push("bar_f0 = tau_inf^-1 f0 tau_1".to_string());
    }
    if !check(&f.bar_f1, &i0, &f.f1, &tau.tau_inf) {
        out.push("bar_f1 = tau_0^-1 f1 tau_inf".to_string());
    }
    if !check(&f.bar_f_inf, &i1, &f.f_inf, &tau.tau0) {
        out.push("bar_f_inf = tau_1^-1 f_inf tau_0".to_string());
    }
    out
}

/// Chain-level duality maps on the raw total spaces of `t`.
pub fn build_tau(c: &BifilteredComplex, t: &SurgeryTriple) -> Result<TauMaps, DualityError> {
    let engine = Engine::new(c)?;
    let xi = engine.xi().clone();
    let xi_inv = xi.inverse().ok_or(DualityError::FlipNotGraded)?;
    for m in [&xi, &xi_inv] {
        for r in 0..m.rows() {
            for col in m.row(r).ones() {
                if c.alexander(r) != -c.alexander(col) {
                    return Err(DualityError::FlipNotGraded);
                }
            }
        }
    }
    let swap = |cell: &ConeCell| -> Vec<ConeCell> {
        match *cell {
            ConeCell::Sub(x) => xi_inv.column(x).ones().map(ConeCell::Flip).collect(),
            ConeCell::Flip(x) => xi.column(x).ones().map(ConeCell::Sub).collect(),
            ConeCell::Target(x) => vec![ConeCell::Target(x)],
        }
    };
    let [o0, o1, oi] = &t.offsets;
    let [n0, n1, ni] = t.dims;
    let mut tau0 = Gf2Matrix::zeros(n0, n0);
    let mut tau1 = Gf2Matrix::zeros(n1, n1);
    let mut tau_inf = Gf2Matrix::zeros(ni, ni);
    let missing = |what: &str, s: i32, image: i32| {
        DualityError::TauRelationFailure(format!(
            "{what}({s}) is nonzero but its dual grading {image} lies outside the window"
        ))
    };
    for (k, src) in t.slices.iter().enumerate() {
        let s = src.s;
        let chain_check =
            |from: &crate::cfk::ChainComplex<ConeCell>, to: &crate::cfk::ChainComplex<ConeCell>, m: &Gf2Matrix| {
                if &to.boundary * m != m * &from.boundary {
                    Err(DualityError::TauRelationFailure(format!(
                        "duality map at s = {s} is not a chain map"
                    )))
                } else {
                    Ok(())
                }
            };
        if src.h1.dim() > 0 {
            let dst = t.slot(-s).map(|j| &t.slices[j]).ok_or_else(|| missing("H_1", s, -s))?;
            let m = chain_matrix(&src.cone1, &dst.cone1, swap);
            chain_check(&src.cone1, &dst.cone1, &m)?;
            let j = t.slot(-s).expect("present");
            place(&mut tau1, o1[j], o1[k], &dst.h1.induced(&src.h1, &m));
        }
        if src.h0.dim() > 0 {
            let dst = t
                .slot(-1 - s)
                .map(|j| &t.slices[j])
                .ok_or_else(|| missing("H_0", s, -1 - s))?;
            let m = chain_matrix(&src.cone0, &dst.cone0, swap);
            chain_check(&src.cone0, &dst.cone0, &m)?;
            let j = t.slot(-1 - s).expect("present");
            place(&mut tau0, o0[j], o0[k], &dst.h0.induced(&src.h0, &m));
        }
        if src.hinf.dim() > 0 {
            let j = t.slot(-s).ok_or_else(|| missing("H_inf", s, -s))?;
            let dst = &t.slices[j];
            let m = chain_matrix(&src.hat, &dst.hat, |&x| xi_inv.column(x).ones().collect());
            if &dst.hat.boundary * &m != &m * &src.hat.boundary {
                return Err(DualityError::TauRelationFailure(format!(
                    "duality map on H_inf({s}) is not a chain map"
                )));
            }
            place(&mut tau_inf, oi[j], oi[k], &dst.hinf.induced(&src.hinf, &m));
        }
    }
    let tau = TauMaps { tau0, tau1, tau_inf };
    let failures = relation_failures(&TotalMaps::of(t), &tau);
    if !failures.is_empty() {
        return Err(DualityError::TauRelationFailure(failures.join("; ")));
    }
    Ok(tau)
}

/// The four blocks of `tau = (A B; C D)` and the lower-left block of its
/// inverse.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TauBlocks {
    pub a: Gf2Matrix,
    pub b: Gf2Matrix,
    pub c: Gf2Matrix,
    pub c_bar: Gf2Matrix,
    pub d: Gf2Matrix,
}

impl TauBlocks {
    fn split(tau: &Gf2Matrix, inverse: &Gf2Matrix, p: usize) -> Self {
        let n = tau.rows();
        TauBlocks {
            a: tau.submatrix(0, p, 0, p),
            b: tau.submatrix(0, p, p, n),
            c: tau.submatrix(p, n, 0, p),
            c_bar: inverse.submatrix(p, n, 0, p),
            d: tau.submatrix(p, n, p, n),
        }
    }

    /// Whether `inverse` has the same `A`, `B`, `D` blocks as `tau`.
    fn inverse_shares_blocks(tau: &Gf2Matrix, inverse: &Gf2Matrix, p: usize) -> bool {
        let n = tau.rows();
        tau.submatrix(0, p, 0, n) == inverse.submatrix(0, p, 0, n)
            && tau.submatrix(p, n, p, n) == inverse.submatrix(p, n, p, n)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "source", rename_all = "snake_case")]
pub enum Provenance {
    Geometric(String),
    Synthetic(u64),
    ExplicitInput(String),
}

/// `(0 0; I 0)` with top block `top` rows, an identity of size `id`, and
/// right block `right` columns.
pub fn block_form(top: usize, id: usize, right: usize) -> Gf2Matrix {
    Gf2Matrix::from_fn(top + id, id + right, |r, c| r >= top && c < id && r - top == c)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SurgeryPackage {
    pub a: ByIndex<usize>,
    pub tau: TauMaps,
    /// The triangle maps in normalized bases.
    pub maps: TotalMaps,
    pub blocks: ByIndex<TauBlocks>,
    /// `X0 = B1 B0 B_inf`, `X1 = B_inf B1 B0`, `X_inf = B0 B_inf B1`.
    pub x: ByIndex<Gf2Matrix>,
    pub provenance: Provenance,
    /// When an override replaced the computed duality maps, the computed
    /// ones (in the same normalized bases), for comparison.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub replaced_tau: Option<TauMaps>,
    /// `dim H(C{j=0})` for geometric packages.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ambient_rank: Option<usize>,
}

impl SurgeryPackage {
    /// Assembles a package from duality maps and triangle maps that are
    /// already in normalized bases.
    pub fn from_normalized(
        a: ByIndex<usize>,
        tau: TauMaps,
        maps: TotalMaps,
        provenance: Provenance,
    ) -> Result<Self, DualityError> {
        let shapes = [
            ("tau0", &tau.tau0, a.inf + a.one),
            ("tau1", &tau.tau1, a.zero + a.inf),
            ("tau_inf", &tau.tau_inf, a.one + a.zero),
        ];
        for (name, m, n) in shapes {
            if m.shape() != (n, n) {
                return Err(DualityError::NormalizationFailure(format!(
                    "{name} is {}x{}, expected {n}x{n}",
                    m.rows(),
                    m.cols()
                )));
            }
        }
        let inv = |name: &str, m: &Gf2Matrix| {
            m.inverse()
                .ok_or_else(|| DualityError::TauRelationFailure(format!("{name} is not invertible")))
        };
        let i0 = inv("tau0", &tau.tau0)?;
        let i1 = inv("tau1", &tau.tau1)?;
        let ii = inv("tau_inf", &tau.tau_inf)?;
        let blocks = ByIndex::new(
            TauBlocks::split(&tau.tau0, &i0, a.inf),
            TauBlocks::split(&tau.tau1, &i1, a.zero),
            TauBlocks::split(&tau.tau_inf, &ii, a.one),
        );
        let (b0, b1, bi) = (&blocks.zero.b, &blocks.one.b, &blocks.inf.b);
        let x = ByIndex::new(&(b1 * b0) * bi, &(bi * b1) * b0, &(b0 * bi) * b1);
        Ok(SurgeryPackage {
            a,
            tau,
            maps,
            blocks,
            x,
            provenance,
            replaced_tau: None,
            ambient_rank: None,
        })
    }

    pub fn ranks(&self) -> ByIndex<usize> {
        self.blocks.map(|b| b.b.rank())
    }

    /// Every package axiom that fails, by name. Parity is left to the caller,
    /// since it is only expected of geometric packages.
    pub fn axiom_failures(&self) -> Vec<String> {
        let a = self.a;
        let mut out = Vec::new();
        let forms = [
            ("f_inf", &self.maps.f_inf, block_form(a.zero, a.inf, a.one)),
            ("f0", &self.maps.f0, block_form(a.one, a.zero, a.inf)),
            ("f1", &self.maps.f1, block_form(a.inf, a.one, a.zero)),
        ];
        for (name, m, want) in forms {
            if *m != want {
                out.push(format!("{name} is not in block form"));
            }
        }
        let splits = [
            ("tau0", &self.tau.tau0, a.inf),
            ("tau1", &self.tau.tau1, a.zero),
            ("tau_inf", &self.tau.tau_inf, a.one),
        ];
        for (name, t, p) in splits {
            match t.inverse() {
                Some(inv) if TauBlocks::inverse_shares_blocks(t, &inv, p) => {}
                Some(_) => out.push(format!("{name}^-1 does not share the A, B, D blocks")),
                None => out.push(format!("{name} is not invertible")),
            }
        }
        let shapes = [
            ("B0", self.blocks.zero.b.shape(), (a.inf, a.one)),
            ("B1", self.blocks.one.b.shape(), (a.zero, a.inf)),
            ("B_inf", self.blocks.inf.b.shape(), (a.one, a.zero)),
        ];
        for (name, got, want) in shapes {
            if got != want {
                out.push(format!("{name} has shape {got:?}, expected {want:?}"));
            }
        }
        for (name, x) in [("X0", &self.x.zero), ("X1", &self.x.one), ("X_inf", &self.x.inf)] {
            if !(x * x).is_zero() {
                out.push(format!("{name}^2 is nonzero"));
            }
        }
        out.extend(relation_failures(&self.maps, &self.tau));
        out
    }

    /// `a1 = a_inf = a0 + 1 (mod 2)`.
    pub fn parity_holds(&self) -> bool {
        self.a.one % 2 == self.a.inf % 2 && self.a.inf % 2 != self.a.zero % 2
    }

    /// Conjugates every map by an admissible change of basis.
    pub fn conjugate(&self, p: &AdmissibleChange) -> Result<Self, DualityError> {
        let [m0, m1, mi] = p.matrices();
        let inv = |m: &Gf2Matrix| {
            m.inverse()
                .ok_or_else(|| DualityError::NormalizationFailure("change of basis is singular".into()))
        };
        let (j0, j1, ji) = (inv(&m0)?, inv(&m1)?, inv(&mi)?);
        let conj = |left: &Gf2Matrix, m: &Gf2Matrix, right: &Gf2Matrix| &(left * m) * right;
        let tau = TauMaps {
            tau0: conj(&j0, &self.tau.tau0, &m0),
            tau1: conj(&j1, &self.tau.tau1, &m1),
            tau_inf: conj(&ji, &self.tau.tau_inf, &mi),
        };
        let f = &self.maps;
        let maps = TotalMaps {
            f_inf: conj(&j1, &f.f_inf, &m0),
            f0: conj(&ji, &f.f0, &m1),
            f1: conj(&j0, &f.f1, &mi),
            bar_f_inf: conj(&j1, &f.bar_f_inf, &m0),
            bar_f0: conj(&ji, &f.bar_f0, &m1),
            bar_f1: conj(&j0, &f.bar_f1, &mi),
        };
        let mut out = Self::from_normalized(self.a, tau, maps, self.provenance.clone())?;
        out.ambient_rank = self.ambient_rank;
        Ok(out)
    }

    pub fn stats(&self) -> Result<PackageStats, DualityError> {
        stats(self)
    }
}

/// Bases realizing the block forms, and the raw maps conjugated into them.
pub fn normalize(t: &SurgeryTriple, tau: &TauMaps, provenance: Provenance) -> Result<SurgeryPackage, DualityError> {
    let fail = |m: String| DualityError::NormalizationFailure(m);
    let (a0, a1, ainf) = t.ranks();
    let [n0, n1, ni] = t.dims;
    if n0 != ainf + a1 || n1 != a0 + ainf || ni != a1 + a0 {
        return Err(fail(format!(
            "dimensions ({n0}, {n1}, {ni}) do not match ranks ({a0}, {a1}, {ainf}); a triangle is not exact"
        )));
    }
    let w0 = complement_basis(&t.f_inf.kernel_matrix());
    let im1 = &t.f_inf * &w0;
    let w1 = complement_basis(&im1);
    let imi = &t.f0 * &w1;
    let wi = complement_basis(&imi);
    let k0 = &t.f1 * &wi;
    let b0 = w0.hstack(&k0);
    let b1 = w1.hstack(&im1);
    let bi = wi.hstack(&imi);
    let (Some(j0), Some(j1), Some(ji)) = (b0.inverse(), b1.inverse(), bi.inverse()) else {
        return Err(fail("adapted bases are singular; a triangle is not exact".into()));
    };
    let conj = |left: &Gf2Matrix, m: &Gf2Matrix, right: &Gf2Matrix| &(left * m) * right;
    let maps = TotalMaps {
        f_inf: conj(&j1, &t.f_inf, &b0),
        f0: conj(&ji, &t.f0, &b1),
        f1: conj(&j0, &t.f1, &bi),
        bar_f_inf: conj(&j1, &t.bar_f_inf, &b0),
        bar_f0: conj(&ji, &t.bar_f0, &b1),
        bar_f1: conj(&j0, &t.bar_f1, &bi),
    };
    let a = ByIndex::new(a0, a1, ainf);
    if maps.f_inf != block_form(a0, ainf, a1)
        || maps.f0 != block_form(a1, a0, ainf)
        || maps.f1 != block_form(ainf, a1, a0)
    {
        return Err(fail("maps did not reach block form".into()));
    }
    let tau = TauMaps {
        tau0: conj(&j0, &tau.tau0, &b0),
        tau1: conj(&j1, &tau.tau1, &b1),
        tau_inf: conj(&ji, &tau.tau_inf, &bi),
    };
    let mut p = SurgeryPackage::from_normalized(a, tau, maps, provenance)?;
    p.ambient_rank = Some(t.ambient_rank);
    Ok(p)
}

/// The normalized package of a complex. An explicit `tau_override` in the
/// input replaces the computed duality maps (which are kept in
/// `replaced_tau`) and must satisfy the same relations.
pub fn geometric_package(c: &BifilteredComplex) -> Result<SurgeryPackage, DualityError> {
    let t = total_package(c)?;
    let raw = build_tau(c, &t)?;
    let mut p = normalize(&t, &raw, Provenance::Geometric(c.name().to_string()))?;
    if let Some(o) = c.tau_override() {
        p = apply_override(&p, o, c.name())?;
    }
    Ok(p)
}

fn apply_override(p: &SurgeryPackage, o: &TauOverride, name: &str) -> Result<SurgeryPackage, DualityError> {
    let tau = TauMaps {
        tau0: o.tau0.clone(),
        tau1: o.tau1.clone(),
        tau_inf: o.tau_inf.clone(),
    };
    let mut out =
        SurgeryPackage::from_normalized(p.a, tau, p.maps.clone(), Provenance::ExplicitInput(name.to_string()))?;
    let failures = relation_failures(&out.maps, &out.tau);
    if !failures.is_empty() {
        return Err(DualityError::TauRelationFailure(failures.join("; ")));
    }
    out.replaced_tau = Some(p.tau.clone());
    out.ambient_rank = p.ambient_rank;
    Ok(out)
}

/// Block lower-triangular base changes that preserve the block forms:
/// `P_0 = (P_inf 0; Q_0 P_1)` on `H_0`, `P_1 = (P_0 0; Q_1 P_inf)` on `H_1`,
/// `P_inf = (P_1 0; Q_inf P_0)` on `H_inf`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdmissibleChange {
    pub p: ByIndex<Gf2Matrix>,
    pub q: ByIndex<Gf2Matrix>,
}

fn random_matrix(rng: &mut impl Rng, rows: usize, cols: usize) -> Gf2Matrix {
    Gf2Matrix::random(rng, rows, cols)
}

fn random_invertible(rng: &mut impl Rng, n: usize) -> Gf2Matrix {
    loop {
        let m = random_matrix(rng, n, n);
        if m.rank() == n {
            return m;
        }
    }
}

fn lower_triangular(top: &Gf2Matrix, low: &Gf2Matrix, bottom: &Gf2Matrix) -> Gf2Matrix {
    let upper = top.hstack(&Gf2Matrix::zeros(top.rows(), bottom.cols()));
    upper.vstack(&low.hstack(bottom))
}

impl AdmissibleChange {
    pub fn random(rng: &mut impl Rng, a: ByIndex<usize>) -> Self {
        let p = ByIndex::new(
            random_invertible(rng, a.zero),
            random_invertible(rng, a.one),
            random_invertible(rng, a.inf),
        );
        let q = ByIndex::new(
            random_matrix(rng, a.one, a.inf),
            random_matrix(rng, a.inf, a.zero),
            random_matrix(rng, a.zero, a.one),
        );
        AdmissibleChange { p, q }
    }

    /// The three base-change matrices on `H_0`, `H_1`, `H_inf`.
    pub fn matrices(&self) -> [Gf2Matrix; 3] {
        let (p, q) = (&self.p, &self.q);
        [
            lower_triangular(&p.inf, &q.zero, &p.one),
            lower_triangular(&p.zero, &q.one, &p.inf),
            lower_triangular(&p.one, &q.inf, &p.zero),
        ]
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PackageStats {
    pub a: ByIndex<usize>,
    pub r: ByIndex<usize>,
    pub delta: ByIndex<i64>,
    pub k: ByIndex<usize>,
    pub l: ByIndex<usize>,
    pub c: ByIndex<usize>,
    pub d: ByIndex<usize>,
    pub y: ByIndex<usize>,
}

/// `(k, l, c, d)` of a pair of maps with the same shape.
pub fn pair_dims(f: &Gf2Matrix, bar: &Gf2Matrix) -> (usize, usize, usize, usize) {
    let (m, n) = f.shape();
    let stacked = f.vstack(bar).rank();
    let side = f.hstack(bar).rank();
    let sum = (f + bar).rank();
    let k = n - stacked;
    let l = (n - sum) - k;
    let c = m - side;
    let d = side - sum;
    (k, l, c, d)
}

/// Direct subspace dimensions, checked against the closed forms in the
/// ranks of the `B` blocks with `delta` recovered from `l`.
pub fn stats(p: &SurgeryPackage) -> Result<PackageStats, DualityError> {
    let a = p.a;
    let r = p.ranks();
    let f = &p.maps;
    let (k0, l0, c0, d0) = pair_dims(&f.f0, &f.bar_f0);
    let (k1, l1, c1, d1) = pair_dims(&f.f1, &f.bar_f1);
    let (ki, li, ci, di) = pair_dims(&f.f_inf, &f.bar_f_inf);
    let (a0, a1, ai) = (a.zero as i64, a.one as i64, a.inf as i64);
    let (r0, r1, ri) = (r.zero as i64, r.one as i64, r.inf as i64);
    let delta = ByIndex::new(a0 - ri - l0 as i64, a1 - r0 - l1 as i64, ai - r1 - li as i64);
    let closed = [
        ("k0 = a_inf - r1", k0 as i64, ai - r1),
        ("k1 = a0 - r_inf", k1 as i64, a0 - ri),
        ("k_inf = a1 - r0", ki as i64, a1 - r0),
        ("c0 = a1 - r_inf", c0 as i64, a1 - ri),
        ("c1 = a_inf - r0", c1 as i64, ai - r0),
        ("c_inf = a0 - r1", ci as i64, a0 - r1),
        ("d0 = a0 - r1 - delta0", d0 as i64, a0 - r1 - delta.zero),
        ("d1 = a1 - r_inf - delta1", d1 as i64, a1 - ri - delta.one),
        ("d_inf = a_inf - r0 - delta_inf", di as i64, ai - r0 - delta.inf),
    ];
    let mut bad: Vec<String> = closed
        .iter()
        .filter(|(_, got, want)| got != want)
        .map(|(name, got, want)| format!("{name}: direct {got}, closed form {want}"))
        .collect();
    let bounds = [
        ("delta0", delta.zero, a0 - r1.max(ri)),
        ("delta1", delta.one, a1 - ri.max(r0)),
        ("delta_inf", delta.inf, ai - r0.max(r1)),
    ];
    for (name, v, hi) in bounds {
        if v < 0 || v > hi {
            bad.push(format!("{name} = {v} outside [0, {hi}]"));
        }
    }
    let y = ByIndex::new(k0 + l0 + c0 + d0, k1 + l1 + c1 + d1, ki + li + ci + di);
    if y.inf as i64 != 2 * ai + a1 + a0 - 2 * r0 - 2 * r1 - 2 * delta.inf {
        bad.push("y_inf closed form".to_string());
    }
    if !bad.is_empty() {
        return Err(DualityError::StatsInconsistent(bad.join("; ")));
    }
    Ok(PackageStats {
        a,
        r,
        delta,
        k: ByIndex::new(k0, k1, ki),
        l: ByIndex::new(l0, l1, li),
        c: ByIndex::new(c0, c1, ci),
        d: ByIndex::new(d0, d1, di),
        y,
    })
}

/// Attempts per synthetic package before giving up.
pub const SYNTHETIC_ATTEMPTS: usize = 10_000;

/// A random involution `I + S N S^-1` where `N = (0 0; R 0)` squares to zero.
fn random_involution(rng: &mut impl Rng, n: usize) -> Gf2Matrix {
    let s = random_invertible(rng, n);
    let k = rng.gen_range(0..=n / 2);
    let r = random_matrix(rng, n - k, k);
    let nil = lower_triangular(&Gf2Matrix::zeros(k, k), &r, &Gf2Matrix::zeros(n - k, n - k));
    let conj = &(&s * &nil) * &s.inverse().expect("invertible");
    &Gf2Matrix::identity(n) + &conj
}

/// A package not coming from any complex: the maps are in block form, the
/// duality maps are random involutions with every `X^2 = 0`, and the barred
/// maps are defined by the duality relations.
pub fn synthetic_package(seed: u64, a: ByIndex<usize>) -> Result<SurgeryPackage, DualityError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let f_inf = block_form(a.zero, a.inf, a.one);
    let f0 = block_form(a.one, a.zero, a.inf);
    let f1 = block_form(a.inf, a.one, a.zero);
    for _ in 0..SYNTHETIC_ATTEMPTS {
        let tau = TauMaps {
            tau0: random_involution(&mut rng, a.inf + a.one),
            tau1: random_involution(&mut rng, a.zero + a.inf),
            tau_inf: random_involution(&mut rng, a.one + a.zero),
        };
        // involutions are their own inverses
        let maps = TotalMaps {
            bar_f0: &(&tau.tau_inf * &f0) * &tau.tau1,
            bar_f1: &(&tau.tau0 * &f1) * &tau.tau_inf,
            bar_f_inf: &(&tau.tau1 * &f_inf) * &tau.tau0,
            f0: f0.clone(),
            f1: f1.clone(),
            f_inf: f_inf.clone(),
        };
        let p = SurgeryPackage::from_normalized(a, tau, maps, Provenance::Synthetic(seed))?;
        if [&p.x.zero, &p.x.one, &p.x.inf].iter().all(|x| (*x * *x).is_zero()) {
            return Ok(p);
        }
    }
    Err(DualityError::SamplingExhausted {
        attempts: SYNTHETIC_ATTEMPTS,
    })
}

/// Random dimensions in `[0, max]` for each coefficient, then a synthetic
/// package with them.
pub fn random_synthetic(seed: u64, max: usize) -> Result<SurgeryPackage, DualityError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_d1a5);
    let a = ByIndex::new(rng.gen_range(0..=max), rng.gen_range(0..=max), rng.gen_range(0..=max));
    synthetic_package(seed, a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cfk::corpus;

    #[test]
    fn unknot_package() {
        let p = geometric_package(&corpus("unknot").unwrap()).unwrap();
        assert_eq!(p.a, ByIndex::new(1, 0, 0));
        assert!(p.tau.tau1.is_identity() && p.tau.tau1.rows() == 1);
        assert_eq!(p.tau.tau0.shape(), (0, 0));
        assert!(p.tau.tau_inf.is_identity());
        assert_eq!(p.blocks.zero.b.shape(), (0, 0));
        assert_eq!(p.blocks.one.b.shape(), (1, 0));
        assert_eq!(p.blocks.inf.b.shape(), (0, 1));
        assert!(p.axiom_failures().is_empty());
        let s = p.stats().unwrap();
        assert_eq!(s.y.inf, 1);
        assert_eq!((s.k.inf, s.l.inf, s.c.inf, s.d.inf), (0, 0, 1, 0));
    }

    #[test]
    fn trefoil_package() {
        let p = geometric_package(&corpus("trefoil_staircase").unwrap()).unwrap();
        assert_eq!(p.a, ByIndex::new(1, 2, 2));
        assert!(p.axiom_failures().is_empty(), "{:?}", p.axiom_failures());
        assert!(p.parity_holds());
        let x1 = &p.x.one;
        assert!(x1.kernel_dim() > 0 && x1.cokernel_dim() > 0);
    }

    #[test]
    fn closed_form_instance() {
        // a_inf = 2, r1 = 1 gives k0 = 1: the trefoil has exactly these values
        let s = geometric_package(&corpus("trefoil_staircase").unwrap())
            .unwrap()
            .stats()
            .unwrap();
        assert_eq!((s.a.inf, s.r.one, s.k.zero), (2, 1, 1));
    }

    #[test]
    fn synthetic_determinism_and_unknot_shape() {
        let a = ByIndex::new(1, 0, 0);
        let p = synthetic_package(1, a).unwrap();
        assert_eq!(p, synthetic_package(1, a).unwrap());
        assert!(p.axiom_failures().is_empty());
        assert!(p.tau.tau1.is_identity());
    }

    #[test]
    fn override_inconsistent_with_relations_is_rejected() {
        let k = corpus("trefoil_staircase").unwrap();
        let p = geometric_package(&k).unwrap();
        // some transposition of two basis vectors of H_1 breaks a relation
        let swap = [(0, 1), (1, 2), (0, 2)]
            .into_iter()
            .map(|(i, j)| {
                let mut m = Gf2Matrix::identity(3);
                m.set(i, i, false);
                m.set(j, j, false);
                m.set(i, j, true);
                m.set(j, i, true);
                &m * &p.tau.tau1
            })
            .find(|t1| {
                let tau = TauMaps {
                    tau0: p.tau.tau0.clone(),
                    tau1: t1.clone(),
                    tau_inf: p.tau.tau_inf.clone(),
                };
                !relation_failures(&p.maps, &tau).is_empty()
            })
            .unwrap();
        let bad = TauOverride {
            tau0: p.tau.tau0.clone(),
            tau1: swap,
            tau_inf: p.tau.tau_inf.clone(),
        };
        let err = geometric_package(&k.clone().with_tau_override(Some(bad))).unwrap_err();
        assert!(matches!(err, DualityError::TauRelationFailure(_)), "{err}");
        let good = TauOverride {
            tau0: p.tau.tau0.clone(),
            tau1: p.tau.tau1.clone(),
            tau_inf: p.tau.tau_inf.clone(),
        };
        let q = geometric_package(&k.with_tau_override(Some(good))).unwrap();
        assert!(matches!(q.provenance, Provenance::ExplicitInput(_)));
        assert_eq!(q.replaced_tau.as_ref(), Some(&p.tau));
    }
}
