//! Folded subspace code parameters, the encoder, and the closed-form
//! distance / radius / rate formulas.
//!
//! A codeword of FS[h; n_t, k] is the row space of the n_t vectors
//! (alpha^{jh}, f(alpha^{jh}), f(alpha^{jh+1}), ..., f(alpha^{(j+1)h-1}))
//! for a message polynomial f of q-degree < k.

use std::sync::Arc;

use rand::RngCore;
use thiserror::Error;

use crate::algebra::{AlgebraError, ExtField, Fe, FiniteField};
use crate::linpoly::LinPoly;
use crate::subspace::SubspaceBasis;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CodeError {
    #[error(transparent)]
    Field(#[from] AlgebraError),
    #[error("folding too large: h*n_t = {hnt} exceeds m = {m}")]
    FoldingTooLarge { hnt: usize, m: usize },
    #[error("message degree bound k = {k} exceeds h*n_t = {hnt}")]
    DegreeTooLarge { k: usize, hnt: usize },
    #[error("decoding parameter s = {s} outside [1, h = {h}]")]
    BadS { s: usize, h: usize },
    #[error("message q-degree {got} not below k = {k}")]
    MessageDegreeTooLarge { got: usize, k: usize },
}

/// Validated parameter set of an FS[h; n_t, k] code with decoding parameter s.
#[derive(Debug, Clone)]
pub struct FSCodeParams {
    field: Arc<ExtField>,
    h: usize,
    n_t: usize,
    k: usize,
    s: usize,
}

impl FSCodeParams {
    pub fn new(
        q: u64,
        m: usize,
        h: usize,
        n_t: usize,
        k: usize,
        s: usize,
    ) -> Result<Self, CodeError> {
        let field = ExtField::new(q, m)?;
        Self::with_field(Arc::new(field), h, n_t, k, s)
    }

    pub fn with_field(
        field: Arc<ExtField>,
        h: usize,
        n_t: usize,
        k: usize,
        s: usize,
    ) -> Result<Self, CodeError> {
        let m = field.m();
        if h == 0 || n_t == 0 || h * n_t > m {
            return Err(CodeError::FoldingTooLarge { hnt: h * n_t, m });
        }
        if k == 0 || k > h * n_t {
            return Err(CodeError::DegreeTooLarge { k, hnt: h * n_t });
        }
        if s == 0 || s > h {
            return Err(CodeError::BadS { s, h });
        }
        Ok(FSCodeParams { field, h, n_t, k, s })
    }

    pub fn field(&self) -> &ExtField {
        &self.field
    }

    pub fn shared_field(&self) -> Arc<ExtField> {
        Arc::clone(&self.field)
    }

    pub fn q(&self) -> u64 {
        self.field.q()
    }

    pub fn m(&self) -> usize {
        self.field.m()
    }

    pub fn h(&self) -> usize {
        self.h
    }

    pub fn n_t(&self) -> usize {
        self.n_t
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn s(&self) -> usize {
        self.s
    }

    /// Ambient dimension N = n_t + h*m (locator coordinates plus h payload
    /// coordinates of m bits each).
    pub fn ambient_dim(&self) -> usize {
        self.n_t + self.h * self.m()
    }

    /// Code rate k*m / (n_t * (n_t + h*m)) as an exact fraction.
    pub fn rate_exact(&self) -> (u64, u64) {
        let num = (self.k * self.m()) as u64;
        let den = (self.n_t * self.ambient_dim()) as u64;
        let g = gcd(num, den);
        (num / g, den / g)
    }

    pub fn rate(&self) -> f64 {
        let (n, d) = self.rate_exact();
        n as f64 / d as f64
    }

    /// Code locator of row j: alpha^{jh}.
    pub fn locator(&self, j: usize) -> Fe {
        self.field.pow(self.field.alpha(), (j * self.h) as u64)
    }

    /// Basis of the span the first received coordinate lives in
    /// (alpha^0, alpha^h, ..., alpha^{(n_t-1)h}).
    pub fn locator_basis(&self) -> Vec<Fe> {
        (0..self.n_t).map(|j| self.locator(j)).collect()
    }

    /// Minimum subspace distance 2(n_t - ceil(k/h) + 1).
    pub fn min_distance(&self) -> usize {
        2 * (self.n_t - self.k.div_ceil(self.h) + 1)
    }

    /// Largest tau with tau < s(n_t - (k-1)/(h-s+1)): list decoding succeeds
    /// whenever gamma + s*delta <= tau. May be negative when even the
    /// noiseless case is not guaranteed.
    pub fn list_radius(&self) -> i64 {
        let den = (self.h - self.s + 1) as i64;
        let num = self.s as i64 * (self.n_t as i64 * den - (self.k as i64 - 1));
        (num - 1).div_euclid(den)
    }

    /// floor((s(n_t(h-s+1) - (k-1)) - mu) / (h-s+1)): the probabilistic
    /// unique decoding radius at surplus threshold mu.
    pub fn unique_radius(&self, mu: usize) -> i64 {
        assert!(mu >= 1);
        let den = (self.h - self.s + 1) as i64;
        let num = self.s as i64 * (self.n_t as i64 * den - (self.k as i64 - 1));
        (num - mu as i64).div_euclid(den)
    }
}

/// A message polynomial of q-degree < k.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Message(LinPoly);

impl Message {
    pub fn new(params: &FSCodeParams, poly: LinPoly) -> Result<Self, CodeError> {
        if let Some(d) = poly.qdeg() {
            if d >= params.k {
                return Err(CodeError::MessageDegreeTooLarge { got: d, k: params.k });
            }
        }
        Ok(Message(poly))
    }

    pub fn zero() -> Self {
        Message(LinPoly::zero())
    }

    pub fn random(params: &FSCodeParams, rng: &mut dyn RngCore) -> Self {
        Message(LinPoly::random(params.field(), params.k, rng))
    }

    pub fn poly(&self) -> &LinPoly {
        &self.0
    }

    pub fn into_poly(self) -> LinPoly {
        self.0
    }
}

/// The n_t basis rows of a codeword, each in F_{q^m}^{h+1}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Codeword {
    rows: Vec<Vec<Fe>>,
}

impl Codeword {
    pub fn rows(&self) -> &[Vec<Fe>] {
        &self.rows
    }

    pub fn n_t(&self) -> usize {
        self.rows.len()
    }

    /// Canonical row space.
    pub fn space(&self, params: &FSCodeParams) -> SubspaceBasis {
        SubspaceBasis::canonicalize(params.field(), &self.rows, params.h + 1)
    }
}

/// Evaluates the message at the folded evaluation points.
pub fn encode(params: &FSCodeParams, msg: &Message) -> Codeword {
    let field = params.field();
    let alpha = field.alpha();
    let f = msg.poly();
    let mut rows = Vec::with_capacity(params.n_t);
    for j in 0..params.n_t {
        let mut row = Vec::with_capacity(params.h + 1);
        let loc = params.locator(j);
        row.push(loc);
        let mut point = loc;
        for _ in 0..params.h {
            row.push(f.eval(field, point));
            point = field.mul(point, alpha);
        }
        rows.push(row);
    }
    Codeword { rows }
}

/// Normalized list decoding radius s(1 - ((1/h + h)/(h - s + 1)) R),
/// the n_t*h ~ m approximation, clipped below at zero.
pub fn normalized_list_radius(h: usize, s: usize, rate: f64) -> f64 {
    let v = s as f64 * (1.0 - (1.0 / h as f64 + h as f64) / (h - s + 1) as f64 * rate);
    v.max(0.0)
}

/// Normalized unique decoding radius: the list radius minus
/// mu / ((h - s + 1) n_t), clipped below at zero.
pub fn normalized_unique_radius(h: usize, s: usize, mu: usize, n_t: usize, rate: f64) -> f64 {
    let v = s as f64 * (1.0 - (1.0 / h as f64 + h as f64) / (h - s + 1) as f64 * rate)
        - mu as f64 / ((h - s + 1) * n_t) as f64;
    v.max(0.0)
}

/// One row of the radius/rate trade-off table.
#[derive(Debug, Clone, PartialEq)]
pub struct RadiusRow {
    pub rate: f64,
    /// List decoding radius of the folded code.
    pub tau_f: f64,
    /// Probabilistic unique decoding radius.
    pub tau_u: f64,
    /// Unfolded (h = s = 1) reference radius 1 - 2R.
    pub tau_kk: f64,
}

/// Radius table over a rate grid. `n_t` enters only the tau_u term; the
/// default of h matches the n_t*h ~ m regime of the normalized formulas.
pub fn radius_table(
    h: usize,
    s: usize,
    mu: usize,
    n_t: Option<usize>,
    grid: &[f64],
) -> Vec<RadiusRow> {
    let n_t = n_t.unwrap_or(h);
    grid.iter()
        .map(|&rate| RadiusRow {
            rate,
            tau_f: normalized_list_radius(h, s, rate),
            tau_u: normalized_unique_radius(h, s, mu, n_t, rate),
            tau_kk: (1.0 - 2.0 * rate).max(0.0),
        })
        .collect()
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}
