use super::{BitVec, Gf2Matrix};

/// A linear subspace of `GF(2)^n`, held as a matrix whose columns form a basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    basis: Gf2Matrix,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            basis: Gf2Matrix::zeros(ambient, 0),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace {
            basis: Gf2Matrix::identity(ambient),
        }
    }

    /// Span of the columns of `m` (redundant columns are dropped).
    pub fn span(m: &Gf2Matrix) -> Self {
        Subspace {
            basis: m.column_space(),
        }
    }

    pub fn image(m: &Gf2Matrix) -> Self {
        Self::span(m)
    }

    pub fn kernel(m: &Gf2Matrix) -> Self {
        Subspace {
            basis: m.kernel_matrix(),
        }
    }

    pub fn ambient(&self) -> usize {
        self.basis.rows()
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn basis(&self) -> &Gf2Matrix {
        &self.basis
    }

    pub fn contains(&self, v: &BitVec) -> bool {
        self.basis.solve_vec(v).is_some()
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        Subspace::span(&self.basis.hstack(&other.basis))
    }

    pub fn intersect(&self, other: &Subspace) -> Subspace {
        Subspace {
            basis: intersection(&self.basis, &other.basis),
        }
    }

    /// Image under a linear map.
    pub fn map(&self, f: &Gf2Matrix) -> Subspace {
        Subspace::span(&(f * &self.basis))
    }

    /// Preimage under a linear map (the full preimage, kernel included).
    pub fn preimage(&self, f: &Gf2Matrix) -> Subspace {
        // v with f v in span(B): kernel of [f | B] projected to the first block
        let stacked = f.hstack(&self.basis);
        let k = stacked.kernel_matrix();
        Subspace::span(&k.submatrix(0, f.cols(), 0, k.cols()))
    }
}

/// Rank of the column span of several matrices with the same row count.
pub fn span_rank(parts: &[&Gf2Matrix]) -> usize {
    let Some(first) = parts.first() else {
        return 0;
    };
    let mut all = (*first).clone();
    for p in &parts[1..] {
        all = all.hstack(p);
    }
    all.rank()
}

/// A basis of `span(a) ∩ span(b)` as matrix columns.
pub fn intersection(a: &Gf2Matrix, b: &Gf2Matrix) -> Gf2Matrix {
    assert_eq!(a.rows(), b.rows());
    let k = a.hstack(b).kernel_matrix();
    let coeffs = k.submatrix(0, a.cols(), 0, k.cols());
    (a * &coeffs).column_space()
}

/// Unit vectors that extend a basis of `span(sub)` to all of `GF(2)^n`.
pub fn complement_basis(sub: &Gf2Matrix) -> Gf2Matrix {
    let n = sub.rows();
    let mut acc = sub.column_space();
    let mut picked = Vec::new();
    for i in 0..n {
        if acc.cols() == n {
            break;
        }
        let e = Gf2Matrix::from_columns(n, &[BitVec::unit(n, i)]);
        let trial = acc.hstack(&e);
        if trial.rank() > acc.cols() {
            acc = trial;
            picked.push(BitVec::unit(n, i));
        }
    }
    Gf2Matrix::from_columns(n, &picked)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn intersection_of_coordinate_planes() {
        let xy = Gf2Matrix::parse(&["10", "01", "00"]);
        let yz = Gf2Matrix::parse(&["00", "10", "01"]);
        let i = intersection(&xy, &yz);
        assert_eq!(i.cols(), 1);
        assert_eq!(i.column(0), BitVec::unit(3, 1));
    }

    #[test]
    fn complement_fills_the_space() {
        let s = Gf2Matrix::parse(&["1", "1", "0"]);
        let c = complement_basis(&s);
        assert_eq!(c.cols(), 2);
        assert_eq!(s.hstack(&c).rank(), 3);
    }

    #[test]
    fn preimage_contains_kernel() {
        let f = Gf2Matrix::parse(&["110", "000"]);
        let p = Subspace::zero(2).preimage(&f);
        assert_eq!(p.dim(), 2);
    }
}
