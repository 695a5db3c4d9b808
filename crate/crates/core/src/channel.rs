//! The operator channel: the received space is a uniformly random
//! (n_t - delta)-dimensional subspace of the transmitted space, direct-summed
//! with a gamma-dimensional error space that intersects the codeword space
//! trivially. The receiver sees a uniformly random basis of the result.

use rand::RngCore;
use thiserror::Error;

use crate::algebra::{rank, ExtField, Fe, FiniteField, Mat, PrimeField};
use crate::code::FSCodeParams;
use crate::subspace::SubspaceBasis;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ChannelError {
    #[error("error space of dimension {gamma} does not fit: dim V = {dim_v}, ambient = {ambient}")]
    DimensionOverflow { gamma: usize, dim_v: usize, ambient: usize },
    #[error("cannot delete {delta} dimensions from a {dim}-dimensional space")]
    TooManyDeletions { delta: usize, dim: usize },
    #[error("invalid received word: {0}")]
    InvalidReceivedWord(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ChannelParams {
    pub deletions: usize,
    pub insertions: usize,
}

/// Where the first coordinate of sampled error vectors lives.
///
/// `LocatorSpan` confines it to the span of the code locators, keeping the
/// simulation inside the ambient space of dimension n_t + h*m that the bound
/// formulas use. `FullField` allows the whole of F_{q^m}.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ErrorFirstCoord {
    #[default]
    LocatorSpan,
    FullField,
}

/// Ambient space data the channel needs: the field, the number of payload
/// coordinates, and the span admitted for the first error coordinate.
#[derive(Debug, Clone)]
pub struct Ambient<'a> {
    field: &'a ExtField,
    payload_cols: usize,
    locator_basis: Vec<Fe>,
    locator_span_dim: usize,
    mode: ErrorFirstCoord,
}

impl<'a> Ambient<'a> {
    pub fn new(
        field: &'a ExtField,
        payload_cols: usize,
        locator_basis: Vec<Fe>,
        mode: ErrorFirstCoord,
    ) -> Self {
        let base = field.base_field();
        let locator_span_dim = if locator_basis.is_empty() {
            0
        } else {
            let rows: Vec<Vec<Fe>> = locator_basis.iter().map(|&v| field.expand_to_base(&[v])).collect();
            rank(&base, &Mat::from_rows(&base, rows))
        };
        Ambient { field, payload_cols, locator_basis, locator_span_dim, mode }
    }

    pub fn for_code(params: &'a FSCodeParams, mode: ErrorFirstCoord) -> Self {
        Self::new(params.field(), params.h(), params.locator_basis(), mode)
    }

    pub fn field(&self) -> &ExtField {
        self.field
    }

    /// Total columns of a transmitted vector (locator + payload).
    pub fn cols(&self) -> usize {
        self.payload_cols + 1
    }

    /// Effective ambient dimension for error sampling.
    pub fn dim(&self) -> usize {
        match self.mode {
            ErrorFirstCoord::LocatorSpan => self.locator_span_dim + self.payload_cols * self.field.m(),
            ErrorFirstCoord::FullField => (self.payload_cols + 1) * self.field.m(),
        }
    }

    fn random_first_coord(&self, rng: &mut dyn RngCore) -> Fe {
        match self.mode {
            ErrorFirstCoord::FullField => self.field.random(rng),
            ErrorFirstCoord::LocatorSpan => {
                let base = self.field.base_field();
                let mut acc = self.field.zero();
                for &g in &self.locator_basis {
                    let c = self.field.embed(base.random(rng));
                    acc = self.field.add(acc, self.field.mul(c, g));
                }
                acc
            }
        }
    }
}

/// A received basis: n_r independent rows (x_j, y_{j,0}, ..., y_{j,h-1}).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReceivedWord {
    rows: Vec<Vec<Fe>>,
}

impl ReceivedWord {
    /// Wraps rows that are known to be independent; panics otherwise.
    pub fn new(field: &ExtField, rows: Vec<Vec<Fe>>, payload_cols: usize) -> Self {
        Self::try_new(field, rows, payload_cols).expect("invalid received word")
    }

    pub fn try_new(
        field: &ExtField,
        rows: Vec<Vec<Fe>>,
        payload_cols: usize,
    ) -> Result<Self, ChannelError> {
        let cols = payload_cols + 1;
        for r in &rows {
            if r.len() != cols {
                return Err(ChannelError::InvalidReceivedWord(format!(
                    "row has {} entries, expected {cols}",
                    r.len()
                )));
            }
        }
        let dim = SubspaceBasis::canonicalize(field, &rows, cols).dim();
        if dim != rows.len() {
            return Err(ChannelError::InvalidReceivedWord(
                "rows must be linearly independent".into(),
            ));
        }
        Ok(ReceivedWord { rows })
    }

    pub fn n_r(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<Fe>] {
        &self.rows
    }

    pub fn space(&self, field: &ExtField, payload_cols: usize) -> SubspaceBasis {
        SubspaceBasis::canonicalize(field, &self.rows, payload_cols + 1)
    }
}

/// Random full-rank rows x cols matrix over F_q by rejection.
fn random_full_rank(base: &PrimeField, rows: usize, cols: usize, rng: &mut dyn RngCore) -> Mat {
    assert!(rows <= cols);
    if rows == 0 {
        return Mat::zeros(base, 0, cols);
    }
    loop {
        let mut m = Mat::zeros(base, rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                m.set(r, c, base.random(rng));
            }
        }
        if rank(base, &m) == rows {
            return m;
        }
    }
}

/// Uniformly random (dim V - delta)-dimensional subspace of V: a random
/// full-rank matrix over F_q applied to the canonical basis, canonicalized.
pub fn sample_deletion(
    field: &ExtField,
    v: &SubspaceBasis,
    delta: usize,
    rng: &mut dyn RngCore,
) -> Result<SubspaceBasis, ChannelError> {
    if delta > v.dim() {
        return Err(ChannelError::TooManyDeletions { delta, dim: v.dim() });
    }
    if delta == 0 {
        return Ok(v.clone());
    }
    let keep = v.dim() - delta;
    if keep == 0 {
        return Ok(SubspaceBasis::zero(field, v.ambient_cols()));
    }
    let base = field.base_field();
    let mix = random_full_rank(&base, keep, v.dim(), rng);
    let rows = mix.mul(&base, v.basis_mat());
    Ok(SubspaceBasis::from_expanded(field, &rows, v.ambient_cols()))
}

/// Number of attempts after which error-space rejection sampling gives up.
/// The per-attempt failure probability is below q^(dim V + gamma - N), so
/// this is unreachable for valid inputs.
const MAX_SAMPLING_ATTEMPTS: usize = 10_000;

/// A gamma-dimensional error space with trivial intersection with V, by
/// rejection: draw gamma ambient vectors, accept iff dim(V + span) grows by
/// gamma.
pub fn sample_error_space(
    v: &SubspaceBasis,
    gamma: usize,
    ambient: &Ambient,
    rng: &mut dyn RngCore,
) -> Result<SubspaceBasis, ChannelError> {
    let field = ambient.field;
    if gamma + v.dim() > ambient.dim() {
        return Err(ChannelError::DimensionOverflow {
            gamma,
            dim_v: v.dim(),
            ambient: ambient.dim(),
        });
    }
    if gamma == 0 {
        return Ok(SubspaceBasis::zero(field, ambient.cols()));
    }
    for _ in 0..MAX_SAMPLING_ATTEMPTS {
        let rows: Vec<Vec<Fe>> = (0..gamma)
            .map(|_| {
                let mut row = Vec::with_capacity(ambient.cols());
                row.push(ambient.random_first_coord(rng));
                for _ in 0..ambient.payload_cols {
                    row.push(field.random(rng));
                }
                row
            })
            .collect();
        let e = SubspaceBasis::canonicalize(field, &rows, ambient.cols());
        if e.dim() == gamma && v.sum_dim(&e).expect("same ambient") == v.dim() + gamma {
            return Ok(e);
        }
    }
    unreachable!("error space rejection sampling failed to converge");
}

/// Passes a codeword through the operator channel and returns a uniformly
/// random basis of the received space.
pub fn transmit(
    codeword_rows: &[Vec<Fe>],
    ambient: &Ambient,
    ch: &ChannelParams,
    rng: &mut dyn RngCore,
) -> Result<ReceivedWord, ChannelError> {
    let field = ambient.field;
    let cols = ambient.cols();
    let v = SubspaceBasis::canonicalize(field, codeword_rows, cols);
    assert_eq!(v.dim(), codeword_rows.len(), "codeword rows must be independent");

    let h_space = sample_deletion(field, &v, ch.deletions, rng)?;
    let e_space = sample_error_space(&v, ch.insertions, ambient, rng)?;

    let mut stacked = h_space.rows_ext(field);
    stacked.extend(e_space.rows_ext(field));
    let n_r = stacked.len();

    let base = field.base_field();
    let mix = random_full_rank(&base, n_r, n_r, rng);
    let rows: Vec<Vec<Fe>> = (0..n_r)
        .map(|i| {
            let mut out = vec![field.zero(); cols];
            for (j, src) in stacked.iter().enumerate() {
                let lambda = mix.at(i, j);
                if lambda.is_zero() {
                    continue;
                }
                let lam = field.embed(lambda);
                for (c, &x) in src.iter().enumerate() {
                    out[c] = field.add(out[c], field.mul(lam, x));
                }
            }
            out
        })
        .collect();

    Ok(ReceivedWord { rows })
}
