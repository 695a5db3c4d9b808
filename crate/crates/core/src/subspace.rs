//! Subspaces of F_{q^m}^c as F_q row spaces in canonical (RREF) form, with
//! the subspace distance dim U + dim V - 2 dim(U intersect V).
//!
//! Canonical form makes equality and hashing structural, so codeword
//! identity checks and list deduplication are plain comparisons.

use thiserror::Error;

use crate::algebra::{rref, ExtField, Fe, FieldId, FiniteField, Mat, PrimeField};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SubspaceError {
    #[error("subspaces live in different ambient spaces")]
    AmbientMismatch,
    #[error("direct sum requires trivial intersection (got dimension {0})")]
    NontrivialIntersection(usize),
}

/// Canonical basis of a subspace: the RREF over F_q of the expanded basis
/// vectors, zero rows dropped. Two values are equal iff they are the same
/// subspace.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SubspaceBasis {
    ext_fid: FieldId,
    q: u64,
    m: usize,
    /// Vectors live in F_{q^m}^ambient_cols.
    ambient_cols: usize,
    /// dim x (ambient_cols * m) RREF matrix over F_q, no zero rows.
    mat: Mat,
}

impl SubspaceBasis {
    /// Canonicalizes the row space of `rows` (vectors over F_{q^m} of length
    /// `ambient_cols`).
    pub fn canonicalize(field: &ExtField, rows: &[Vec<Fe>], ambient_cols: usize) -> Self {
        let base = field.base_field();
        let expanded: Vec<Vec<Fe>> = rows
            .iter()
            .map(|r| {
                assert_eq!(r.len(), ambient_cols, "row length != ambient columns");
                field.expand_to_base(r)
            })
            .collect();
        let mat = if expanded.is_empty() {
            Mat::zeros(&base, 0, ambient_cols * field.m())
        } else {
            Mat::from_rows(&base, expanded)
        };
        Self::from_expanded(field, &mat, ambient_cols)
    }

    /// Same, from already-expanded F_q rows of width ambient_cols * m.
    pub fn from_expanded(field: &ExtField, expanded: &Mat, ambient_cols: usize) -> Self {
        let base = field.base_field();
        assert_eq!(expanded.cols(), ambient_cols * field.m());
        let r = rref(&base, expanded);
        let kept: Vec<Vec<Fe>> =
            (0..r.rank).map(|i| r.mat.row(i).to_vec()).collect();
        let mat = if kept.is_empty() {
            Mat::zeros(&base, 0, ambient_cols * field.m())
        } else {
            Mat::from_rows(&base, kept)
        };
        SubspaceBasis { ext_fid: field.id(), q: field.q(), m: field.m(), ambient_cols, mat }
    }

    /// The zero subspace.
    pub fn zero(field: &ExtField, ambient_cols: usize) -> Self {
        Self::canonicalize(field, &[], ambient_cols)
    }

    pub fn dim(&self) -> usize {
        self.mat.rows()
    }

    pub fn ambient_cols(&self) -> usize {
        self.ambient_cols
    }

    /// Expanded F_q dimension of the ambient space.
    pub fn expanded_width(&self) -> usize {
        self.ambient_cols * self.m
    }

    /// The canonical RREF basis over F_q.
    pub fn basis_mat(&self) -> &Mat {
        &self.mat
    }

    /// Basis rows repacked as vectors over F_{q^m}.
    pub fn rows_ext(&self, field: &ExtField) -> Vec<Vec<Fe>> {
        assert_eq!(field.id(), self.ext_fid);
        self.mat
            .row_vecs()
            .into_iter()
            .map(|row| {
                row.chunks(self.m).map(|chunk| field.from_coords(chunk)).collect()
            })
            .collect()
    }

    fn same_ambient(&self, other: &Self) -> Result<(), SubspaceError> {
        if self.ext_fid != other.ext_fid || self.ambient_cols != other.ambient_cols {
            return Err(SubspaceError::AmbientMismatch);
        }
        Ok(())
    }

    /// dim(U + V) via RREF of the stacked bases.
    pub fn sum_dim(&self, other: &Self) -> Result<usize, SubspaceError> {
        self.same_ambient(other)?;
        if self.dim() == 0 {
            return Ok(other.dim());
        }
        if other.dim() == 0 {
            return Ok(self.dim());
        }
        let base = PrimeField::new(self.q).expect("q validated at construction");
        Ok(rref(&base, &self.mat.vstack(&other.mat)).rank)
    }

    /// dim(U intersect V) = dim U + dim V - dim(U + V).
    pub fn intersection_dim(&self, other: &Self) -> Result<usize, SubspaceError> {
        Ok(self.dim() + other.dim() - self.sum_dim(other)?)
    }

    /// The subspace distance dim U + dim V - 2 dim(U intersect V).
    pub fn distance(&self, other: &Self) -> Result<usize, SubspaceError> {
        let sum = self.sum_dim(other)?;
        Ok(2 * sum - self.dim() - other.dim())
    }

    /// U + E for subspaces with trivial intersection.
    pub fn direct_sum(&self, other: &Self) -> Result<Self, SubspaceError> {
        let inter = self.intersection_dim(other)?;
        if inter != 0 {
            return Err(SubspaceError::NontrivialIntersection(inter));
        }
        let base = PrimeField::new(self.q).expect("q validated at construction");
        let stacked = self.mat.vstack(&other.mat);
        let r = rref(&base, &stacked);
        let kept: Vec<Vec<Fe>> = (0..r.rank).map(|i| r.mat.row(i).to_vec()).collect();
        let mat = if kept.is_empty() {
            Mat::zeros(&base, 0, self.expanded_width())
        } else {
            Mat::from_rows(&base, kept)
        };
        Ok(SubspaceBasis {
            ext_fid: self.ext_fid,
            q: self.q,
            m: self.m,
            ambient_cols: self.ambient_cols,
            mat,
        })
    }
}
