//! Mapping cones of the comparison maps `i_n^s` and the two exact triangles
//! relating the surgery groups `H_0`, `H_1` and `H_inf`.
//!
//! For `n` in `{0, 1}` the cone of
//! `C{i<=s, j=0} (+) C{i=0, j<=n-s-1} -> C{j=0}`, `(a, b) -> a + flip(b)`,
//! computes `H_n(s)`. Its basis has three kinds of cells, one per generator
//! and summand. Fixing `j = 0` puts generator `x` at `i = s(x)`, so the first
//! summand holds the generators with `s(x) <= s`; fixing `i = 0` puts it at
//! `j = -s(x)`, so the second holds those with `s(x) >= s + 1 - n`.

use std::collections::HashMap;
use std::hash::Hash;

use serde::Serialize;
use thiserror::Error;

use crate::cfk::{BifilteredComplex, CfkError, ChainComplex, Homology};
use crate::gf2::Gf2Matrix;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SurgeryError {
    #[error(transparent)]
    Cfk(#[from] CfkError),
    #[error("H_{n}({s}) has dimension {dim} outside the support window")]
    WindowNotStable { n: Coefficient, s: i32, dim: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Coefficient {
    #[serde(rename = "0")]
    Zero,
    #[serde(rename = "1")]
    One,
    #[serde(rename = "inf")]
    Infinity,
}

impl std::fmt::Display for Coefficient {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Coefficient::Zero => "0",
            Coefficient::One => "1",
            Coefficient::Infinity => "inf",
        })
    }
}

/// A basis cell of a mapping cone.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ConeCell {
    /// Generator of `C{i<=s, j=0}`.
    Sub(usize),
    /// Generator of `C{i=0, j<=n-s-1}`.
    Flip(usize),
    /// Generator of the target `C{j=0}`.
    Target(usize),
}

#[derive(Debug, Clone)]
pub struct MappingCone {
    pub n: u8,
    pub s: i32,
    /// The two summands, `Sub` cells then `Flip` cells.
    pub domain: ChainComplex<ConeCell>,
    /// `C{j=0}` with generator-indexed basis.
    pub codomain: ChainComplex<ConeCell>,
    pub map: Gf2Matrix,
    pub cone: ChainComplex<ConeCell>,
}

struct Differentials {
    /// out-arrows with `drop_j = 0`, the differential of `C{j=0}`
    j_flat: Vec<Vec<usize>>,
    /// out-arrows with `drop_i = 0`, the differential of `C{i=0}`
    i_flat: Vec<Vec<usize>>,
    /// out-arrows with both drops zero
    flat: Vec<Vec<usize>>,
}

impl Differentials {
    fn of(c: &BifilteredComplex) -> Self {
        let n = c.len();
        let mut d = Differentials {
            j_flat: vec![Vec::new(); n],
            i_flat: vec![Vec::new(); n],
            flat: vec![Vec::new(); n],
        };
        for a in c.arrows() {
            if a.drop_j == 0 {
                d.j_flat[a.from].push(a.to);
            }
            if a.drop_i == 0 {
                d.i_flat[a.from].push(a.to);
            }
            if a.drop_i == 0 && a.drop_j == 0 {
                d.flat[a.from].push(a.to);
            }
        }
        d
    }
}

fn column_ones(m: &Gf2Matrix, c: usize) -> Vec<usize> {
    m.column(c).ones().collect()
}

fn cone_complex(c: &BifilteredComplex, d: &Differentials, xi: &Gf2Matrix, n: u8, s: i32) -> ChainComplex<ConeCell> {
    let len = c.len();
    let flip_min = s + 1 - n as i32;
    let mut basis = Vec::new();
    basis.extend((0..len).filter(|&x| c.alexander(x) <= s).map(ConeCell::Sub));
    basis.extend((0..len).filter(|&x| c.alexander(x) >= flip_min).map(ConeCell::Flip));
    basis.extend((0..len).map(ConeCell::Target));
    ChainComplex::from_fn(basis, |cell| match *cell {
        ConeCell::Sub(x) => {
            let mut out: Vec<ConeCell> = d.j_flat[x].iter().map(|&y| ConeCell::Sub(y)).collect();
            out.push(ConeCell::Target(x));
            out
        }
        ConeCell::Flip(x) => {
            let mut out: Vec<ConeCell> = d.i_flat[x].iter().map(|&y| ConeCell::Flip(y)).collect();
            out.extend(column_ones(xi, x).into_iter().map(ConeCell::Target));
            out
        }
        ConeCell::Target(x) => d.j_flat[x].iter().map(|&y| ConeCell::Target(y)).collect(),
    })
}

/// The mapping cone computing `H_n(s)`, with its pieces.
pub fn build_cone(c: &BifilteredComplex, n: u8, s: i32) -> Result<MappingCone, SurgeryError> {
    assert!(n <= 1, "coefficient must be 0 or 1");
    let xi = c.flip_map()?;
    let d = Differentials::of(c);
    let cone = cone_complex(c, &d, &xi, n, s);
    let domain_cells: Vec<ConeCell> = cone
        .basis
        .iter()
        .copied()
        .filter(|x| !matches!(x, ConeCell::Target(_)))
        .collect();
    let domain = ChainComplex::from_fn(domain_cells, |cell| match *cell {
        ConeCell::Sub(x) => d.j_flat[x].iter().map(|&y| ConeCell::Sub(y)).collect::<Vec<_>>(),
        ConeCell::Flip(x) => d.i_flat[x].iter().map(|&y| ConeCell::Flip(y)).collect(),
        ConeCell::Target(_) => unreachable!(),
    });
    let codomain = ChainComplex::from_fn((0..c.len()).map(ConeCell::Target).collect(), |cell| {
        let ConeCell::Target(x) = *cell else { unreachable!() };
        d.j_flat[x].iter().map(|&y| ConeCell::Target(y)).collect::<Vec<_>>()
    });
    let map = chain_matrix(&domain, &codomain, |cell| match *cell {
        ConeCell::Sub(x) => vec![ConeCell::Target(x)],
        ConeCell::Flip(x) => column_ones(&xi, x).into_iter().map(ConeCell::Target).collect(),
        ConeCell::Target(_) => unreachable!(),
    });
    Ok(MappingCone {
        n,
        s,
        domain,
        codomain,
        map,
        cone,
    })
}

/// Matrix of the linear map sending each basis label of `src` to the listed
/// labels of `tgt`. Labels absent from `tgt` are dropped, which realizes
/// projections onto quotient complexes.
pub(crate) fn chain_matrix<A, B: Clone + Eq + Hash>(
    src: &ChainComplex<A>,
    tgt: &ChainComplex<B>,
    mut f: impl FnMut(&A) -> Vec<B>,
) -> Gf2Matrix {
    let index: HashMap<B, usize> = tgt.index();
    let mut m = Gf2Matrix::zeros(tgt.len(), src.len());
    for (k, a) in src.basis.iter().enumerate() {
        for b in f(a) {
            if let Some(&r) = index.get(&b) {
                m.toggle(r, k);
            }
        }
    }
    m
}

/// Everything computed at one value of `s`.
#[derive(Debug, Clone)]
pub struct SpinSlice {
    pub s: i32,
    pub cone0: ChainComplex<ConeCell>,
    pub h0: Homology,
    pub cone1: ChainComplex<ConeCell>,
    pub h1: Homology,
    /// `C{i=0, j=-s}`: generators with `s(x) = s` and their flat arrows.
    pub hat: ChainComplex<usize>,
    pub hinf: Homology,
}

/// The six triangle maps at one value of `s`.
///
/// `f_inf: H0(s) -> H1(s)`, `f0: H1(s) -> Hinf(s)`, `f1: Hinf(s) -> H0(s)`,
/// `bar_f_inf: H0(s-1) -> H1(s)`, `bar_f0: H1(s) -> Hinf(s)`,
/// `bar_f1: Hinf(s) -> H0(s-1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalMaps {
    pub f_inf: Gf2Matrix,
    pub f0: Gf2Matrix,
    pub f1: Gf2Matrix,
    pub bar_f_inf: Gf2Matrix,
    pub bar_f0: Gf2Matrix,
    pub bar_f1: Gf2Matrix,
}

pub(crate) struct Engine<'a> {
    c: &'a BifilteredComplex,
    d: Differentials,
    xi: Gf2Matrix,
}

impl<'a> Engine<'a> {
    pub(crate) fn new(c: &'a BifilteredComplex) -> Result<Self, SurgeryError> {
        Ok(Engine {
            c,
            d: Differentials::of(c),
            xi: c.flip_map()?,
        })
    }

    pub(crate) fn xi(&self) -> &Gf2Matrix {
        &self.xi
    }

    pub(crate) fn slice(&self, s: i32) -> Result<SpinSlice, SurgeryError> {
        let cone0 = cone_complex(self.c, &self.d, &self.xi, 0, s);
        let cone1 = cone_complex(self.c, &self.d, &self.xi, 1, s);
        let gens: Vec<usize> = (0..self.c.len()).filter(|&x| self.c.alexander(x) == s).collect();
        let hat = ChainComplex::from_fn(gens, |&x| self.d.flat[x].clone());
        Ok(SpinSlice {
            s,
            h0: Homology::of(&cone0)?,
            h1: Homology::of(&cone1)?,
            hinf: Homology::of(&hat)?,
            cone0,
            cone1,
            hat,
        })
    }

    /// The maps at `here.s`; `below` is the slice at `here.s - 1`.
    pub(crate) fn local_maps(&self, below: &SpinSlice, here: &SpinSlice) -> LocalMaps {
        let s = here.s;
        let identity = |cell: &ConeCell| vec![*cell];
        let f_inf = here
            .h1
            .induced(&here.h0, &chain_matrix(&here.cone0, &here.cone1, identity));
        let bar_f_inf = here
            .h1
            .induced(&below.h0, &chain_matrix(&below.cone0, &here.cone1, identity));
        let alex = |x: usize| self.c.alexander(x);
        let f0 = here.hinf.induced(
            &here.h1,
            &chain_matrix(&here.cone1, &here.hat, |cell| match *cell {
                ConeCell::Flip(x) if alex(x) == s => vec![x],
                _ => vec![],
            }),
        );
        let bar_f0 = here.hinf.induced(
            &here.h1,
            &chain_matrix(&here.cone1, &here.hat, |cell| match *cell {
                ConeCell::Sub(x) if alex(x) == s => vec![x],
                _ => vec![],
            }),
        );
        let f1 = connecting(here, &here.cone0, &here.h0, ConeCell::Flip);
        let bar_f1 = connecting(here, &below.cone0, &below.h0, ConeCell::Sub);
        LocalMaps {
            f_inf,
            f0,
            f1,
            bar_f_inf,
            bar_f0,
            bar_f1,
        }
    }
}

/// Connecting map `Hinf(s) -> H(sub)`: lift a cycle of the quotient into
/// `cone1` through `lift`, take its boundary, and read the class in `sub`.
fn connecting(
    here: &SpinSlice,
    sub: &ChainComplex<ConeCell>,
    sub_h: &Homology,
    lift: fn(usize) -> ConeCell,
) -> Gf2Matrix {
    let lifted = chain_matrix(&here.hat, &here.cone1, |&x| vec![lift(x)]);
    let boundary = &here.cone1.boundary * &(&lifted * here.hinf.reps());
    let restrict = chain_matrix(&here.cone1, sub, |cell| vec![*cell]);
    let inside = &restrict * &boundary;
    debug_assert_eq!(
        &chain_matrix(sub, &here.cone1, |cell| vec![*cell]) * &inside,
        boundary,
        "connecting boundary leaves the subcomplex"
    );
    sub_h.classes(&inside)
}

/// Dimension of `H_n(s)`.
pub fn surgery_homology(c: &BifilteredComplex, n: Coefficient, s: i32) -> Result<Homology, SurgeryError> {
    let e = Engine::new(c)?;
    let slice = e.slice(s)?;
    Ok(match n {
        Coefficient::Zero => slice.h0,
        Coefficient::One => slice.h1,
        Coefficient::Infinity => slice.hinf,
    })
}

pub fn triangle_maps(c: &BifilteredComplex, s: i32) -> Result<LocalMaps, SurgeryError> {
    let e = Engine::new(c)?;
    Ok(e.local_maps(&e.slice(s - 1)?, &e.slice(s)?))
}

/// A report of exactness at every node of one triangle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExactnessFailure {
    /// `None` for the total maps.
    pub s: Option<i32>,
    pub barred: bool,
    /// The node in whose homology exactness fails.
    pub node: Coefficient,
}

/// `Im f = Ker g` for `f: U -> V`, `g: V -> W`.
pub fn exact_at(f: &Gf2Matrix, g: &Gf2Matrix) -> bool {
    (g * f).is_zero() && f.rank() + g.rank() == f.rows()
}

/// Exactness of `H0 -> H1 -> Hinf -> H0` given as `(f_inf, f0, f1)`.
fn triangle_failures(
    s: Option<i32>,
    barred: bool,
    f_inf: &Gf2Matrix,
    f0: &Gf2Matrix,
    f1: &Gf2Matrix,
) -> Vec<ExactnessFailure> {
    let mut out = Vec::new();
    for (node, ok) in [
        (Coefficient::One, exact_at(f_inf, f0)),
        (Coefficient::Infinity, exact_at(f0, f1)),
        (Coefficient::Zero, exact_at(f1, f_inf)),
    ] {
        if !ok {
            out.push(ExactnessFailure { s, barred, node });
        }
    }
    out
}

/// Per-`s` data over the support window assembled into total spaces.
#[derive(Debug, Clone)]
pub struct SurgeryTriple {
    pub window: (i32, i32),
    pub slices: Vec<SpinSlice>,
    /// `local[k]` holds the maps at `slices[k].s`.
    pub local: Vec<LocalMaps>,
    /// Offsets of each slice inside the totals of `H0`, `H1`, `Hinf`.
    pub offsets: [Vec<usize>; 3],
    pub dims: [usize; 3],
    pub f_inf: Gf2Matrix,
    pub f0: Gf2Matrix,
    pub f1: Gf2Matrix,
    pub bar_f_inf: Gf2Matrix,
    pub bar_f0: Gf2Matrix,
    pub bar_f1: Gf2Matrix,
    /// `dim H(C{j=0})`.
    pub ambient_rank: usize,
}

impl SurgeryTriple {
    pub fn slice(&self, s: i32) -> Option<&SpinSlice> {
        let k = s.checked_sub(self.window.0)?;
        self.slices.get(usize::try_from(k).ok()?)
    }

    pub(crate) fn slot(&self, s: i32) -> Option<usize> {
        (self.window.0..=self.window.1)
            .contains(&s)
            .then(|| (s - self.window.0) as usize)
    }

    /// `dim H_n(s)`, zero outside the window.
    pub fn dim_at(&self, n: Coefficient, s: i32) -> usize {
        self.slice(s).map_or(0, |sl| match n {
            Coefficient::Zero => sl.h0.dim(),
            Coefficient::One => sl.h1.dim(),
            Coefficient::Infinity => sl.hinf.dim(),
        })
    }

    pub fn dim(&self, n: Coefficient) -> usize {
        match n {
            Coefficient::Zero => self.dims[0],
            Coefficient::One => self.dims[1],
            Coefficient::Infinity => self.dims[2],
        }
    }

    /// Ranks `(a0, a1, a_inf)` of `f0`, `f1`, `f_inf`.
    pub fn ranks(&self) -> (usize, usize, usize) {
        (self.f0.rank(), self.f1.rank(), self.f_inf.rank())
    }

    /// Every node of both triangles, per `s` and in total, where exactness
    /// fails. Empty when everything is exact.
    pub fn exactness_failures(&self) -> Vec<ExactnessFailure> {
        let mut out = Vec::new();
        for (sl, m) in self.slices.iter().zip(&self.local) {
            out.extend(triangle_failures(Some(sl.s), false, &m.f_inf, &m.f0, &m.f1));
            // the barred triangle at s runs through H0(s-1)
            out.extend(triangle_failures(Some(sl.s), true, &m.bar_f_inf, &m.bar_f0, &m.bar_f1));
        }
        out.extend(triangle_failures(None, false, &self.f_inf, &self.f0, &self.f1));
        out.extend(triangle_failures(
            None,
            true,
            &self.bar_f_inf,
            &self.bar_f0,
            &self.bar_f1,
        ));
        out
    }
}

/// Number of extra values of `s` probed past each end of the window.
pub const PROBES: i32 = 2;

/// All surgery data of `c` over its support window
/// `[min s(x) - 1, max s(x) + 1]`, certified by probing `PROBES` more values
/// on each side.
pub fn total_package(c: &BifilteredComplex) -> Result<SurgeryTriple, SurgeryError> {
    let e = Engine::new(c)?;
    let (lo, hi) = c.alexander_range();
    let window = (lo - 1, hi + 1);
    for s in (window.0 - PROBES..window.0).chain(window.1 + 1..=window.1 + PROBES) {
        let sl = e.slice(s)?;
        for (n, dim) in [
            (Coefficient::Zero, sl.h0.dim()),
            (Coefficient::One, sl.h1.dim()),
            (Coefficient::Infinity, sl.hinf.dim()),
        ] {
            if dim != 0 {
                return Err(SurgeryError::WindowNotStable { n, s, dim });
            }
        }
    }
    let below_window = e.slice(window.0 - 1)?;
    let slices: Vec<SpinSlice> = (window.0..=window.1).map(|s| e.slice(s)).collect::<Result<_, _>>()?;
    let mut local = Vec::with_capacity(slices.len());
    for k in 0..slices.len() {
        let below = if k == 0 { &below_window } else { &slices[k - 1] };
        local.push(e.local_maps(below, &slices[k]));
    }

    let offsets_of = |dim: &dyn Fn(&SpinSlice) -> usize| {
        let mut off = Vec::with_capacity(slices.len() + 1);
        let mut t = 0;
        for sl in &slices {
            off.push(t);
            t += dim(sl);
        }
        off.push(t);
        off
    };
    let o0 = offsets_of(&|sl| sl.h0.dim());
    let o1 = offsets_of(&|sl| sl.h1.dim());
    let oi = offsets_of(&|sl| sl.hinf.dim());
    let (n0, n1, ni) = (o0[slices.len()], o1[slices.len()], oi[slices.len()]);

    let mut f_inf = Gf2Matrix::zeros(n1, n0);
    let mut f0 = Gf2Matrix::zeros(ni, n1);
    let mut f1 = Gf2Matrix::zeros(n0, ni);
    let mut bar_f_inf = Gf2Matrix::zeros(n1, n0);
    let mut bar_f0 = Gf2Matrix::zeros(ni, n1);
    let mut bar_f1 = Gf2Matrix::zeros(n0, ni);
    for (k, m) in local.iter().enumerate() {
        place(&mut f_inf, o1[k], o0[k], &m.f_inf);
        place(&mut f0, oi[k], o1[k], &m.f0);
        place(&mut f1, o0[k], oi[k], &m.f1);
        place(&mut bar_f0, oi[k], o1[k], &m.bar_f0);
        if k > 0 {
            place(&mut bar_f_inf, o1[k], o0[k - 1], &m.bar_f_inf);
            place(&mut bar_f1, o0[k - 1], oi[k], &m.bar_f1);
        } else {
            debug_assert!(m.bar_f_inf.cols() == 0 && m.bar_f1.rows() == 0);
        }
    }
    Ok(SurgeryTriple {
        window,
        slices,
        local,
        offsets: [o0, o1, oi],
        dims: [n0, n1, ni],
        f_inf,
        f0,
        f1,
        bar_f_inf,
        bar_f0,
        bar_f1,
        ambient_rank: c.ambient_rank()?,
    })
}

pub(crate) fn place(target: &mut Gf2Matrix, r0: usize, c0: usize, block: &Gf2Matrix) {
    for r in 0..block.rows() {
        for c in 0..block.cols() {
            if block.get(r, c) {
                target.set(r0 + r, c0 + c, true);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cfk::corpus;

    #[test]
    fn unknot_cones() {
        let u = corpus("unknot").unwrap();
        let c0 = build_cone(&u, 0, 0).unwrap();
        assert_eq!(c0.domain.basis, vec![ConeCell::Sub(0)]);
        assert!(c0.map.is_identity());
        assert_eq!(Homology::of(&c0.cone).unwrap().dim(), 0);
        let c1 = build_cone(&u, 1, 0).unwrap();
        assert_eq!(c1.domain.len(), 2);
        assert_eq!(c1.map, Gf2Matrix::parse(&["11"]));
        assert_eq!(Homology::of(&c1.cone).unwrap().dim(), 1);
        assert!(c1.cone.is_complex());
    }

    #[test]
    fn unknot_totals() {
        let t = total_package(&corpus("unknot").unwrap()).unwrap();
        assert_eq!(t.dims, [0, 1, 1]);
        let m = triangle_maps(&corpus("unknot").unwrap(), 0).unwrap();
        assert!(m.f0.is_identity());
        assert!(t.exactness_failures().is_empty());
    }

    #[test]
    fn trefoil_slices() {
        let k = corpus("trefoil_staircase").unwrap();
        let t = total_package(&k).unwrap();
        assert_eq!(t.dims[2], 3);
        for s in -1..=1 {
            assert_eq!(t.dim_at(Coefficient::Infinity, s), 1);
        }
        for s in [-3, -2, 2, 3] {
            assert_eq!(surgery_homology(&k, Coefficient::Zero, s).unwrap().dim(), 0);
        }
        for s in -2..=2 {
            let m = triangle_maps(&k, s).unwrap();
            assert!(exact_at(&m.f_inf, &m.f0) && exact_at(&m.f0, &m.f1) && exact_at(&m.f1, &m.f_inf));
        }
        assert!(t.exactness_failures().is_empty());
        let (a0, a1, ainf) = t.ranks();
        assert_eq!(t.dims[0], a1 + ainf);
        assert_eq!(t.dims[1], a0 + ainf);
    }

    #[test]
    fn corpus_triangles_are_exact() {
        for name in crate::cfk::corpus_names() {
            let t = total_package(&corpus(&name).unwrap()).unwrap();
            assert!(t.exactness_failures().is_empty(), "{name}");
        }
    }
}
