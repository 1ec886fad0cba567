use std::collections::HashMap;
use std::hash::Hash;

use crate::gf2::{complement_basis, Gf2Matrix};

use super::CfkError;

/// A finite chain complex over GF(2). Column `k` of `boundary` is the
/// boundary of `basis[k]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainComplex<L> {
    pub basis: Vec<L>,
    pub boundary: Gf2Matrix,
}

impl<L: Clone + Eq + Hash> ChainComplex<L> {
    /// Builds the complex on `basis` whose differential sends each label to
    /// the sum of the returned labels. Targets outside the basis are dropped,
    /// which is how subcomplexes and quotients are cut out.
    pub fn from_fn<I>(basis: Vec<L>, mut boundary_of: impl FnMut(&L) -> I) -> Self
    where
        I: IntoIterator<Item = L>,
    {
        let index = index_of(&basis);
        let n = basis.len();
        let mut boundary = Gf2Matrix::zeros(n, n);
        for (k, label) in basis.iter().enumerate() {
            for t in boundary_of(label) {
                if let Some(&row) = index.get(&t) {
                    boundary.toggle(row, k);
                }
            }
        }
        ChainComplex { basis, boundary }
    }

    pub fn index(&self) -> HashMap<L, usize> {
        index_of(&self.basis)
    }
}

impl<L> ChainComplex<L> {
    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_complex(&self) -> bool {
        (&self.boundary * &self.boundary).is_zero()
    }
}

pub(crate) fn index_of<L: Clone + Eq + Hash>(basis: &[L]) -> HashMap<L, usize> {
    basis.iter().enumerate().map(|(i, l)| (l.clone(), i)).collect()
}

/// Homology of a chain complex with a fixed basis of cycle representatives.
///
/// `project` is a `dim x n` matrix that sends any cycle to the coordinates of
/// its class, so induced maps are plain matrix products.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Homology {
    reps: Gf2Matrix,
    project: Gf2Matrix,
}

impl Homology {
    pub fn of<L>(c: &ChainComplex<L>) -> Result<Self, CfkError> {
        if !c.is_complex() {
            return Err(CfkError::NotAComplex);
        }
        Ok(Self::of_boundary(&c.boundary))
    }

    fn of_boundary(d: &Gf2Matrix) -> Self {
        let n = d.rows();
        let cycles = d.kernel_matrix();
        let mut acc = d.column_space();
        let boundaries = acc.cols();
        let mut reps = Vec::new();
        for z in cycles.columns() {
            let trial = acc.hstack(&Gf2Matrix::from_columns(n, std::slice::from_ref(&z)));
            if trial.rank() > acc.cols() {
                acc = trial;
                reps.push(z);
            }
        }
        let reps = Gf2Matrix::from_columns(n, &reps);
        // basis of the whole chain group: reps, boundaries, then the rest
        let full = reps.hstack(&d.column_space()).hstack(&complement_basis(&cycles));
        debug_assert_eq!(full.cols(), n);
        debug_assert_eq!(boundaries + reps.cols() + (n - cycles.cols()), n);
        let inv = full.inverse().expect("extended basis is invertible");
        let project = inv.submatrix(0, reps.cols(), 0, n);
        Homology { reps, project }
    }

    pub fn dim(&self) -> usize {
        self.reps.cols()
    }

    /// Cycle representatives, one column per basis class.
    pub fn reps(&self) -> &Gf2Matrix {
        &self.reps
    }

    /// Class coordinates of each column of `cycles`.
    pub fn classes(&self, cycles: &Gf2Matrix) -> Gf2Matrix {
        &self.project * cycles
    }

    /// Matrix of the map `H(src) -> H(self)` induced by a chain map whose
    /// matrix is `chain_map` (`self.n x src.n`).
    pub fn induced(&self, src: &Homology, chain_map: &Gf2Matrix) -> Gf2Matrix {
        self.classes(&(chain_map * &src.reps))
    }
}
