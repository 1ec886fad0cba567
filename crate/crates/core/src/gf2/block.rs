use super::{Gf2Error, Gf2Matrix};

/// A matrix partitioned into row and column blocks.
///
/// Missing blocks are zero. `assemble` checks every supplied block against the
/// declared block sizes and reports the first offender.
#[derive(Debug, Clone)]
pub struct BlockGrid {
    row_dims: Vec<usize>,
    col_dims: Vec<usize>,
    blocks: Vec<Vec<Option<Gf2Matrix>>>,
}

impl BlockGrid {
    pub fn new(row_dims: Vec<usize>, col_dims: Vec<usize>) -> Self {
        let blocks = vec![vec![None; col_dims.len()]; row_dims.len()];
        BlockGrid {
            row_dims,
            col_dims,
            blocks,
        }
    }

    pub fn row_dims(&self) -> &[usize] {
        &self.row_dims
    }

    pub fn col_dims(&self) -> &[usize] {
        &self.col_dims
    }

    pub fn set(&mut self, row: usize, col: usize, m: Gf2Matrix) {
        self.blocks[row][col] = Some(m);
    }

    /// Add `m` to whatever is already in block `(row, col)`.
    pub fn accumulate(&mut self, row: usize, col: usize, m: Gf2Matrix) {
        let slot = &mut self.blocks[row][col];
        *slot = Some(match slot.take() {
            None => m,
            Some(old) if old.shape() == m.shape() => &old + &m,
            // keep the offending block so assemble reports it
            Some(old) => old,
        });
    }

    pub fn assemble(&self) -> Result<Gf2Matrix, Gf2Error> {
        let rows: usize = self.row_dims.iter().sum();
        let cols: usize = self.col_dims.iter().sum();
        let mut out = Gf2Matrix::zeros(rows, cols);
        let mut r0 = 0;
        for (bi, &h) in self.row_dims.iter().enumerate() {
            let mut c0 = 0;
            for (bj, &w) in self.col_dims.iter().enumerate() {
                if let Some(b) = &self.blocks[bi][bj] {
                    if b.shape() != (h, w) {
                        return Err(Gf2Error::ShapeMismatch {
                            row: bi,
                            col: bj,
                            expected: (h, w),
                            found: b.shape(),
                        });
                    }
                    for r in 0..h {
                        for c in 0..w {
                            if b.get(r, c) {
                                out.set(r0 + r, c0 + c, true);
                            }
                        }
                    }
                }
                c0 += w;
            }
            r0 += h;
        }
        Ok(out)
    }

    /// Cut `m` back into the block `(row, col)` of this layout.
    pub fn slice(&self, m: &Gf2Matrix, row: usize, col: usize) -> Gf2Matrix {
        let r0: usize = self.row_dims[..row].iter().sum();
        let c0: usize = self.col_dims[..col].iter().sum();
        m.submatrix(r0, r0 + self.row_dims[row], c0, c0 + self.col_dims[col])
    }
}
