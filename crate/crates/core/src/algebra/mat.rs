//! Dense matrices over a finite field with deterministic Gaussian
//! elimination: RREF, rank, right-kernel basis, affine solve.
//!
//! Tie-breaking is fixed (leftmost pivot column, first nonzero row) so every
//! result is reproducible bit for bit.

use super::{Fe, FieldId, FiniteField};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Mat {
    rows: usize,
    cols: usize,
    fid: FieldId,
    data: Vec<Fe>,
}

impl Mat {
    pub fn zeros<F: FiniteField>(field: &F, rows: usize, cols: usize) -> Self {
        Mat { rows, cols, fid: field.id(), data: vec![field.zero(); rows * cols] }
    }

    pub fn identity<F: FiniteField>(field: &F, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows<F: FiniteField>(field: &F, rows: Vec<Vec<Fe>>) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(nrows * ncols);
        for r in rows {
            assert_eq!(r.len(), ncols, "ragged rows");
            for e in r {
                data.push(field.check(e));
            }
        }
        Mat { rows: nrows, cols: ncols, fid: field.id(), data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field_id(&self) -> FieldId {
        self.fid
    }

    pub fn at(&self, r: usize, c: usize) -> Fe {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Fe) {
        assert_eq!(v.field_id(), self.fid, "element used with a foreign field");
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Fe] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Fe>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose<F: FiniteField>(&self, field: &F) -> Mat {
        let mut t = Mat::zeros(field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.at(r, c));
            }
        }
        t
    }

    /// Matrix product; panics on dimension mismatch.
    pub fn mul<F: FiniteField>(&self, field: &F, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Mat::zeros(field, self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let v = field.add(out.at(r, c), field.mul(a, other.at(k, c)));
                    out.set(r, c, v);
                }
            }
        }
        out
    }

    /// Stacks `self` on top of `other` (same width).
    pub fn vstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.cols, "width mismatch");
        assert_eq!(self.fid, other.fid);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Mat { rows: self.rows + other.rows, cols: self.cols, fid: self.fid, data }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }
}

#[derive(Debug, Clone)]
pub struct RrefOutcome {
    pub mat: Mat,
    pub rank: usize,
    /// Pivot column indices, ascending.
    pub pivots: Vec<usize>,
}

/// Reduced row echelon form. Deterministic: scans columns left to right and
/// picks the first row with a nonzero entry at or below the pivot row.
pub fn rref<F: FiniteField>(field: &F, m: &Mat) -> RrefOutcome {
    assert_eq!(m.field_id(), field.id());
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut pr = 0usize; // next pivot row
    for col in 0..a.cols {
        if pr == a.rows {
            break;
        }
        let Some(sel) = (pr..a.rows).find(|&r| !a.at(r, col).is_zero()) else {
            continue;
        };
        a.swap_rows(pr, sel);
        let inv = field.inv(a.at(pr, col));
        for c in col..a.cols {
            a.set(pr, c, field.mul(inv, a.at(pr, c)));
        }
        for r in 0..a.rows {
            if r == pr {
                continue;
            }
            let f = a.at(r, col);
            if f.is_zero() {
                continue;
            }
            for c in col..a.cols {
                let v = field.sub(a.at(r, c), field.mul(f, a.at(pr, c)));
                a.set(r, c, v);
            }
        }
        pivots.push(col);
        pr += 1;
    }
    RrefOutcome { mat: a, rank: pivots.len(), pivots }
}

pub fn rank<F: FiniteField>(field: &F, m: &Mat) -> usize {
    rref(field, m).rank
}

/// Basis of the right kernel {v : M v^T = 0}, one basis vector per row.
/// Rows are ordered by ascending free-column index; row count equals
/// cols - rank.
pub fn kernel_basis<F: FiniteField>(field: &F, m: &Mat) -> Mat {
    let r = rref(field, m);
    let cols = m.cols();
    let free: Vec<usize> = (0..cols).filter(|c| !r.pivots.contains(c)).collect();
    let mut out = Mat::zeros(field, free.len(), cols);
    for (i, &fc) in free.iter().enumerate() {
        out.set(i, fc, field.one());
        for (prow, &pc) in r.pivots.iter().enumerate() {
            out.set(i, pc, field.neg(r.mat.at(prow, fc)));
        }
    }
    out
}

#[derive(Debug, Clone)]
pub enum AffineSolution {
    /// One particular solution plus a kernel basis of the homogeneous system.
    Solution { particular: Vec<Fe>, kernel: Mat },
    Inconsistent,
}

/// Solves M x = b. Inconsistency is a value, not an error.
pub fn solve_affine<F: FiniteField>(field: &F, m: &Mat, b: &[Fe]) -> AffineSolution {
    assert_eq!(m.rows(), b.len(), "rhs length mismatch");
    let cols = m.cols();
    let mut aug = Mat::zeros(field, m.rows(), cols + 1);
    for r in 0..m.rows() {
        for c in 0..cols {
            aug.set(r, c, m.at(r, c));
        }
        aug.set(r, cols, field.check(b[r]));
    }
    let r = rref(field, &aug);
    if r.pivots.contains(&cols) {
        return AffineSolution::Inconsistent;
    }
    let mut particular = vec![field.zero(); cols];
    for (prow, &pc) in r.pivots.iter().enumerate() {
        particular[pc] = r.mat.at(prow, cols);
    }
    AffineSolution::Solution { particular, kernel: kernel_basis(field, m) }
}

/// v * M for a row vector v.
pub fn row_times_mat<F: FiniteField>(field: &F, v: &[Fe], m: &Mat) -> Vec<Fe> {
    assert_eq!(v.len(), m.rows());
    let mut out = vec![field.zero(); m.cols()];
    for (k, &vk) in v.iter().enumerate() {
        if vk.is_zero() {
            continue;
        }
        for c in 0..m.cols() {
            out[c] = field.add(out[c], field.mul(vk, m.at(k, c)));
        }
    }
    out
}

/// M * v^T for a column vector v.
pub fn mat_times_col<F: FiniteField>(field: &F, m: &Mat, v: &[Fe]) -> Vec<Fe> {
    assert_eq!(v.len(), m.cols());
    (0..m.rows())
        .map(|r| {
            let mut acc = field.zero();
            for c in 0..m.cols() {
                acc = field.add(acc, field.mul(m.at(r, c), v[c]));
            }
            acc
        })
        .collect()
}
