//! Finite models of knot Floer complexes.
//!
//! A model is a list of generators, each with an Alexander grading `s(x)`, and
//! a set of arrows `x -> y` decorated by how far they drop the two filtration
//! indices. The generator `[x, i, j]` of the infinite complex exists whenever
//! `s(x) - i + j = 0`, so fixing either index leaves one copy of each
//! generator and every subquotient used downstream is finite.

mod chain;
mod corpus;
mod json;
mod random;

pub use chain::{ChainComplex, Homology};
pub use corpus::{corpus, corpus_names, staircase, CATALOG};
pub use json::{ComplexFile, InputError};
pub use random::{random_complex, random_geometric};

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gf2::Gf2Matrix;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CfkError {
    #[error("boundary does not square to zero")]
    NotAComplex,
    #[error("complex {0:?} has neither a valid symmetry nor an explicit flip map")]
    NoFlipData(String),
    #[error("flip map is not a chain map")]
    NotChainMap,
    #[error("flip map is not a quasi-isomorphism")]
    NotQuasiIso,
    #[error("flip map has shape {found:?}, expected {expected:?}")]
    FlipShape {
        expected: (usize, usize),
        found: (usize, usize),
    },
    #[error("unknown corpus entry {0:?}")]
    UnknownName(String),
    #[error("invalid staircase steps {0:?}: need a nonempty palindromic list of even length with positive steps")]
    BadStaircase(Vec<u32>),
    #[error("unknown generator id {0:?}")]
    UnknownId(String),
    #[error("subquotient needs an equality constraint on i or j to be finite")]
    Unbounded,
    #[error("invalid complex: {0}")]
    Invalid(ValidationReport),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Generator {
    pub id: String,
    pub alexander: i32,
}

/// An arrow of the differential, between generator indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Arrow {
    pub from: usize,
    pub to: usize,
    pub drop_i: u32,
    pub drop_j: u32,
}

/// Explicit duality maps supplied with an input, in normalized bases.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TauOverride {
    pub tau0: Gf2Matrix,
    pub tau1: Gf2Matrix,
    pub tau_inf: Gf2Matrix,
}

/// A position `[x, i, j]` in the infinite complex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cell {
    pub generator: usize,
    pub i: i32,
    pub j: i32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Constraint {
    Eq(i32),
    AtMost(i32),
    Free,
}

impl Constraint {
    fn admits(self, v: i32) -> bool {
        match self {
            Constraint::Eq(a) => v == a,
            Constraint::AtMost(a) => v <= a,
            Constraint::Free => true,
        }
    }
}

/// Which region `C{i ?, j ?}` to cut out.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SubquotientSpec {
    pub i: Constraint,
    pub j: Constraint,
}

impl SubquotientSpec {
    pub fn new(i: Constraint, j: Constraint) -> Self {
        SubquotientSpec { i, j }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    /// `s(from) - s(to)` differs from `drop_i - drop_j`.
    Grading {
        from: String,
        to: String,
        drop_i: u32,
        drop_j: u32,
        alexander_difference: i32,
    },
    /// The composite `from -> ... -> to` with the given total drop is nonzero.
    BoundarySquare {
        from: String,
        to: String,
        drop_i: u32,
        drop_j: u32,
    },
    SymmetryNotInvolution {
        id: String,
    },
    SymmetryGrading {
        id: String,
        image: String,
    },
    /// The image of this arrow under the symmetry (with drops swapped) is missing.
    SymmetryArrow {
        from: String,
        to: String,
        drop_i: u32,
        drop_j: u32,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Grading {
                from,
                to,
                drop_i,
                drop_j,
                alexander_difference,
            } => write!(
                f,
                "arrow {from}->{to} drops ({drop_i},{drop_j}) but the alexander difference is {alexander_difference}"
            ),
            Violation::BoundarySquare {
                from,
                to,
                drop_i,
                drop_j,
            } => write!(f, "d^2 is nonzero from {from} to {to} at drop ({drop_i},{drop_j})"),
            Violation::SymmetryNotInvolution { id } => {
                write!(f, "symmetry applied twice does not fix {id}")
            }
            Violation::SymmetryGrading { id, image } => {
                write!(
                    f,
                    "symmetry sends {id} to {image} without negating the alexander grading"
                )
            }
            Violation::SymmetryArrow {
                from,
                to,
                drop_i,
                drop_j,
            } => write!(
                f,
                "arrow {from}->{to} ({drop_i},{drop_j}) has no mirror under the symmetry"
            ),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn symmetry_ok(&self) -> bool {
        !self.violations.iter().any(|v| {
            matches!(
                v,
                Violation::SymmetryNotInvolution { .. }
                    | Violation::SymmetryGrading { .. }
                    | Violation::SymmetryArrow { .. }
            )
        })
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            return write!(f, "valid");
        }
        let parts: Vec<String> = self.violations.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", parts.join("; "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BifilteredComplex {
    name: String,
    generators: Vec<Generator>,
    arrows: Vec<Arrow>,
    symmetry: Option<Vec<usize>>,
    flip: Option<Gf2Matrix>,
    tau_override: Option<TauOverride>,
}

impl BifilteredComplex {
    /// Arrows listed twice cancel, as coefficients are mod 2.
    pub fn from_parts(name: impl Into<String>, generators: Vec<Generator>, arrows: Vec<Arrow>) -> Self {
        let mut set = BTreeSet::new();
        for a in arrows {
            assert!(
                a.from < generators.len() && a.to < generators.len(),
                "arrow index out of range"
            );
            if !set.remove(&a) {
                set.insert(a);
            }
        }
        BifilteredComplex {
            name: name.into(),
            generators,
            arrows: set.into_iter().collect(),
            symmetry: None,
            flip: None,
            tau_override: None,
        }
    }

    /// Convenience constructor by generator id.
    ///
    /// ```
    /// use splice_rank::cfk::BifilteredComplex;
    /// let k = BifilteredComplex::build(
    ///     "trefoil",
    ///     &[("a", -1), ("b", 0), ("c", 1)],
    ///     &[("b", "a", 1, 0), ("b", "c", 0, 1)],
    /// )
    /// .unwrap()
    /// .with_symmetry_pairs(&[("a", "c")])
    /// .unwrap();
    /// assert!(k.validate().is_valid());
    /// ```
    pub fn build(name: &str, generators: &[(&str, i32)], arrows: &[(&str, &str, u32, u32)]) -> Result<Self, CfkError> {
        let gens: Vec<Generator> = generators
            .iter()
            .map(|&(id, alexander)| Generator {
                id: id.to_string(),
                alexander,
            })
            .collect();
        let find = |id: &str| {
            gens.iter()
                .position(|g| g.id == id)
                .ok_or_else(|| CfkError::UnknownId(id.to_string()))
        };
        let arrows = arrows
            .iter()
            .map(|&(from, to, drop_i, drop_j)| {
                Ok(Arrow {
                    from: find(from)?,
                    to: find(to)?,
                    drop_i,
                    drop_j,
                })
            })
            .collect::<Result<Vec<_>, CfkError>>()?;
        Ok(Self::from_parts(name, gens, arrows))
    }

    /// Sets the symmetry from its 2-cycles; unlisted generators are fixed.
    pub fn with_symmetry_pairs(mut self, pairs: &[(&str, &str)]) -> Result<Self, CfkError> {
        let mut perm: Vec<usize> = (0..self.generators.len()).collect();
        for &(a, b) in pairs {
            let ia = self.index_of(a).ok_or_else(|| CfkError::UnknownId(a.to_string()))?;
            let ib = self.index_of(b).ok_or_else(|| CfkError::UnknownId(b.to_string()))?;
            perm[ia] = ib;
            perm[ib] = ia;
        }
        self.symmetry = Some(perm);
        Ok(self)
    }

    pub fn with_symmetry(mut self, perm: Option<Vec<usize>>) -> Self {
        if let Some(p) = &perm {
            assert_eq!(p.len(), self.generators.len());
        }
        self.symmetry = perm;
        self
    }

    pub fn with_flip(mut self, flip: Option<Gf2Matrix>) -> Self {
        self.flip = flip;
        self
    }

    pub fn with_tau_override(mut self, t: Option<TauOverride>) -> Self {
        self.tau_override = t;
        self
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn symmetry(&self) -> Option<&[usize]> {
        self.symmetry.as_deref()
    }

    pub fn explicit_flip(&self) -> Option<&Gf2Matrix> {
        self.flip.as_ref()
    }

    pub fn tau_override(&self) -> Option<&TauOverride> {
        self.tau_override.as_ref()
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.id == id)
    }

    pub fn alexander(&self, x: usize) -> i32 {
        self.generators[x].alexander
    }

    /// Smallest and largest alexander grading (`(0, 0)` for an empty model).
    pub fn alexander_range(&self) -> (i32, i32) {
        let it = self.generators.iter().map(|g| g.alexander);
        (it.clone().min().unwrap_or(0), it.max().unwrap_or(0))
    }

    fn id(&self, x: usize) -> String {
        self.generators[x].id.clone()
    }

    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        for a in &self.arrows {
            let diff = self.alexander(a.from) - self.alexander(a.to);
            if diff != a.drop_i as i32 - a.drop_j as i32 {
                violations.push(Violation::Grading {
                    from: self.id(a.from),
                    to: self.id(a.to),
                    drop_i: a.drop_i,
                    drop_j: a.drop_j,
                    alexander_difference: diff,
                });
            }
        }
        // d^2 in the infinite complex: compose paths, group by endpoint and total drop
        let mut out_arrows: Vec<Vec<&Arrow>> = vec![Vec::new(); self.len()];
        for a in &self.arrows {
            out_arrows[a.from].push(a);
        }
        let mut square: BTreeMap<(usize, usize, u32, u32), bool> = BTreeMap::new();
        for a in &self.arrows {
            for b in &out_arrows[a.to] {
                let key = (a.from, b.to, a.drop_i + b.drop_i, a.drop_j + b.drop_j);
                let e = square.entry(key).or_insert(false);
                *e = !*e;
            }
        }
        for ((from, to, drop_i, drop_j), odd) in square {
            if odd {
                violations.push(Violation::BoundarySquare {
                    from: self.id(from),
                    to: self.id(to),
                    drop_i,
                    drop_j,
                });
            }
        }
        if let Some(sigma) = &self.symmetry {
            for x in 0..self.len() {
                if sigma[sigma[x]] != x {
                    violations.push(Violation::SymmetryNotInvolution { id: self.id(x) });
                }
                if self.alexander(sigma[x]) != -self.alexander(x) {
                    violations.push(Violation::SymmetryGrading {
                        id: self.id(x),
                        image: self.id(sigma[x]),
                    });
                }
            }
            let set: BTreeSet<Arrow> = self.arrows.iter().copied().collect();
            for a in &self.arrows {
                let image = Arrow {
                    from: sigma[a.from],
                    to: sigma[a.to],
                    drop_i: a.drop_j,
                    drop_j: a.drop_i,
                };
                if !set.contains(&image) {
                    violations.push(Violation::SymmetryArrow {
                        from: self.id(a.from),
                        to: self.id(a.to),
                        drop_i: a.drop_i,
                        drop_j: a.drop_j,
                    });
                }
            }
        }
        ValidationReport { violations }
    }

    /// The finite complex `C{i ?, j ?}` with the induced differential.
    pub fn subquotient(&self, spec: SubquotientSpec) -> Result<ChainComplex<Cell>, CfkError> {
        let cell_for = |x: usize| -> Option<Cell> {
            let s = self.alexander(x);
            let (i, j) = match (spec.i, spec.j) {
                (Constraint::Eq(a), _) => (a, a - s),
                (_, Constraint::Eq(b)) => (s + b, b),
                _ => return None,
            };
            (spec.i.admits(i) && spec.j.admits(j)).then_some(Cell { generator: x, i, j })
        };
        if !matches!(spec.i, Constraint::Eq(_)) && !matches!(spec.j, Constraint::Eq(_)) {
            return Err(CfkError::Unbounded);
        }
        let basis: Vec<Cell> = (0..self.len()).filter_map(cell_for).collect();
        let mut out_arrows: Vec<Vec<&Arrow>> = vec![Vec::new(); self.len()];
        for a in &self.arrows {
            out_arrows[a.from].push(a);
        }
        Ok(ChainComplex::from_fn(basis, |c| {
            out_arrows[c.generator]
                .iter()
                .map(|a| Cell {
                    generator: a.to,
                    i: c.i - a.drop_i as i32,
                    j: c.j - a.drop_j as i32,
                })
                .collect::<Vec<_>>()
        }))
    }

    /// `C{j=0}`, basis indexed by generator.
    pub fn j_zero(&self) -> ChainComplex<Cell> {
        self.subquotient(SubquotientSpec::new(Constraint::Free, Constraint::Eq(0)))
            .expect("bounded")
    }

    /// `C{i=0}`, basis indexed by generator.
    pub fn i_zero(&self) -> ChainComplex<Cell> {
        self.subquotient(SubquotientSpec::new(Constraint::Eq(0), Constraint::Free))
            .expect("bounded")
    }

    /// Dimension of the hat knot Floer group in alexander grading `s`, the
    /// homology of `C{i=0, j=-s}`.
    pub fn hfk_rank(&self, s: i32) -> Result<usize, CfkError> {
        let c = self.subquotient(SubquotientSpec::new(Constraint::Eq(0), Constraint::Eq(-s)))?;
        Ok(Homology::of(&c)?.dim())
    }

    /// Nonzero hat knot Floer ranks by alexander grading.
    pub fn hfk_ranks(&self) -> Result<BTreeMap<i32, usize>, CfkError> {
        let (lo, hi) = self.alexander_range();
        let mut out = BTreeMap::new();
        for s in lo..=hi {
            let r = self.hfk_rank(s)?;
            if r > 0 {
                out.insert(s, r);
            }
        }
        Ok(out)
    }

    /// Rank of the homology of the ambient 3-manifold, `H(C{j=0})`.
    pub fn ambient_rank(&self) -> Result<usize, CfkError> {
        Ok(Homology::of(&self.j_zero())?.dim())
    }

    /// The model of the reversed knot: drops swap and gradings negate. This
    /// exchanges the roles of `C{i=0}` and `C{j=0}`.
    pub fn reverse_orientation(&self) -> Self {
        let generators = self
            .generators
            .iter()
            .map(|g| Generator {
                id: g.id.clone(),
                alexander: -g.alexander,
            })
            .collect();
        let arrows = self
            .arrows
            .iter()
            .map(|a| Arrow {
                drop_i: a.drop_j,
                drop_j: a.drop_i,
                ..*a
            })
            .collect();
        let mut out = Self::from_parts(self.name.clone(), generators, arrows);
        out.symmetry = self.symmetry.clone();
        out.flip = self.flip.as_ref().and_then(Gf2Matrix::inverse);
        out
    }

    /// The dual complex, which models the mirror knot: every arrow reversed,
    /// gradings negated, drops kept.
    pub fn mirror(&self) -> Self {
        let generators = self
            .generators
            .iter()
            .map(|g| Generator {
                id: g.id.clone(),
                alexander: -g.alexander,
            })
            .collect();
        let arrows = self
            .arrows
            .iter()
            .map(|a| Arrow {
                from: a.to,
                to: a.from,
                ..*a
            })
            .collect();
        let mut out = Self::from_parts(mirror_name(&self.name), generators, arrows);
        out.symmetry = self.symmetry.clone();
        // the dual of an invertible flip, inverted to point the right way
        out.flip = self.flip.as_ref().and_then(Gf2Matrix::inverse).map(|m| m.transpose());
        out
    }

    /// Tensor product of models, which models the connected sum.
    pub fn tensor(&self, other: &Self) -> Self {
        let m = other.len();
        let mut generators = Vec::with_capacity(self.len() * m);
        for a in &self.generators {
            for b in &other.generators {
                generators.push(Generator {
                    id: format!("{}*{}", a.id, b.id),
                    alexander: a.alexander + b.alexander,
                });
            }
        }
        let mut arrows = Vec::new();
        for a in &self.arrows {
            for y in 0..m {
                arrows.push(Arrow {
                    from: a.from * m + y,
                    to: a.to * m + y,
                    ..*a
                });
            }
        }
        for b in &other.arrows {
            for x in 0..self.len() {
                arrows.push(Arrow {
                    from: x * m + b.from,
                    to: x * m + b.to,
                    ..*b
                });
            }
        }
        let mut out = Self::from_parts(format!("{}#{}", self.name, other.name), generators, arrows);
        if let (Some(s), Some(t)) = (&self.symmetry, &other.symmetry) {
            out.symmetry = Some((0..self.len() * m).map(|k| s[k / m] * m + t[k % m]).collect());
        }
        out
    }

    /// The flip map `C{i=0} -> C{j=0}` as a matrix between the
    /// generator-indexed bases of the two complexes. Built from the symmetry
    /// (`x -> sigma x`) unless an explicit matrix was supplied.
    pub fn flip_map(&self) -> Result<Gf2Matrix, CfkError> {
        let n = self.len();
        let xi = match (&self.flip, &self.symmetry) {
            (Some(f), _) => {
                if f.shape() != (n, n) {
                    return Err(CfkError::FlipShape {
                        expected: (n, n),
                        found: f.shape(),
                    });
                }
                f.clone()
            }
            (None, Some(sigma)) => {
                if !self.validate().symmetry_ok() {
                    return Err(CfkError::NoFlipData(self.name.clone()));
                }
                Gf2Matrix::from_fn(n, n, |r, c| sigma[c] == r)
            }
            (None, None) => return Err(CfkError::NoFlipData(self.name.clone())),
        };
        let dj = self.j_zero();
        let di = self.i_zero();
        if &dj.boundary * &xi != &xi * &di.boundary {
            return Err(CfkError::NotChainMap);
        }
        let hj = Homology::of(&dj)?;
        let hi = Homology::of(&di)?;
        let induced = hj.induced(&hi, &xi);
        if hi.dim() != hj.dim() || induced.inverse().is_none() {
            return Err(CfkError::NotQuasiIso);
        }
        Ok(xi)
    }
}

fn mirror_name(name: &str) -> String {
    match name.strip_prefix("mirror(").and_then(|r| r.strip_suffix(')')) {
        Some(inner) => inner.to_string(),
        None => format!("mirror({name})"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trefoil() -> BifilteredComplex {
        corpus("trefoil_staircase").unwrap()
    }

    #[test]
    fn unknot_is_valid_and_trivial() {
        let u = corpus("unknot").unwrap();
        assert!(u.validate().is_valid());
        let c = u.j_zero();
        assert_eq!(
            c.basis,
            vec![Cell {
                generator: 0,
                i: 0,
                j: 0
            }]
        );
        assert!(c.boundary.is_zero());
        assert_eq!(u.flip_map().unwrap(), Gf2Matrix::identity(1));
        assert_eq!(u.reverse_orientation(), u);
    }

    #[test]
    fn trefoil_validates() {
        assert!(trefoil().validate().is_valid());
    }

    #[test]
    fn wrong_drop_is_a_grading_violation() {
        let bad = BifilteredComplex::build(
            "bad",
            &[("a", -1), ("b", 0), ("c", 1)],
            &[("b", "a", 0, 1), ("b", "c", 0, 1)],
        )
        .unwrap();
        let report = bad.validate();
        assert!(matches!(report.violations[0], Violation::Grading { .. }));
    }

    #[test]
    fn trefoil_subquotients() {
        let t = trefoil();
        let c = t.j_zero();
        let cells: Vec<(usize, i32, i32)> = c.basis.iter().map(|c| (c.generator, c.i, c.j)).collect();
        assert_eq!(cells, vec![(0, -1, 0), (1, 0, 0), (2, 1, 0)]);
        // d[b] = [a] only
        assert_eq!(c.boundary, Gf2Matrix::parse(&["010", "000", "000"]));
        let h = Homology::of(&c).unwrap();
        assert_eq!(h.dim(), 1);
        assert_eq!(h.reps().column(0), crate::gf2::BitVec::unit(3, 2));

        let low = t
            .subquotient(SubquotientSpec::new(Constraint::AtMost(0), Constraint::Eq(0)))
            .unwrap();
        assert_eq!(low.len(), 2);
        assert_eq!(Homology::of(&low).unwrap().dim(), 0);
    }

    #[test]
    fn unbounded_subquotient_is_rejected() {
        let t = trefoil();
        assert_eq!(
            t.subquotient(SubquotientSpec::new(Constraint::AtMost(0), Constraint::Free)),
            Err(CfkError::Unbounded)
        );
    }

    #[test]
    fn reverse_trefoil() {
        let r = trefoil().reverse_orientation();
        assert_eq!(r.alexander(0), 1);
        assert_eq!(r.alexander(2), -1);
        let drops: Vec<(usize, usize, u32, u32)> =
            r.arrows().iter().map(|a| (a.from, a.to, a.drop_i, a.drop_j)).collect();
        assert_eq!(drops, vec![(1, 0, 0, 1), (1, 2, 1, 0)]);
        assert_eq!(r.reverse_orientation(), trefoil());
    }

    #[test]
    fn trefoil_flip_is_the_swap() {
        let xi = trefoil().flip_map().unwrap();
        assert_eq!(xi, Gf2Matrix::parse(&["001", "010", "100"]));
    }

    #[test]
    fn bad_symmetry_means_no_flip() {
        let k = BifilteredComplex::build("k", &[("a", 1), ("b", 1)], &[])
            .unwrap()
            .with_symmetry_pairs(&[("a", "b")])
            .unwrap();
        assert!(!k.validate().is_valid());
        assert!(matches!(k.flip_map(), Err(CfkError::NoFlipData(_))));
        let plain = BifilteredComplex::build("p", &[("a", 0)], &[]).unwrap();
        assert!(matches!(plain.flip_map(), Err(CfkError::NoFlipData(_))));
    }

    #[test]
    fn fig8_hfk() {
        let f = corpus("fig8_box").unwrap();
        assert_eq!(f.len(), 5);
        let ranks: Vec<(i32, usize)> = f.hfk_ranks().unwrap().into_iter().collect();
        assert_eq!(ranks, vec![(-1, 1), (0, 3), (1, 1)]);
    }

    #[test]
    fn mirror_is_an_involution() {
        for name in corpus_names() {
            let k = corpus(&name).unwrap();
            assert_eq!(k.mirror().mirror(), k, "{name}");
            assert!(k.mirror().validate().is_valid(), "{name}");
        }
    }

    #[test]
    fn mirror_negates_hfk() {
        let t = trefoil();
        let m = t.mirror();
        for s in -2..=2 {
            assert_eq!(t.hfk_rank(s).unwrap(), m.hfk_rank(-s).unwrap());
        }
    }
}
