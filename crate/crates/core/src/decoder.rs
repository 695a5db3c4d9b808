//! Interpolation-based decoding: build the interpolation system from a
//! received basis, extract a kernel basis of multivariate linearized
//! polynomials, assemble the block lower-triangular root-finding system, and
//! solve it in unique or list mode.

use thiserror::Error;

use crate::algebra::{kernel_basis, ExtField, Fe, FiniteField, Mat};
use crate::channel::ReceivedWord;
use crate::code::{encode, FSCodeParams, Message};
use crate::linpoly::{LinPoly, OrdPoly};
use crate::subspace::SubspaceBasis;

/// Default cap on list-mode candidate enumeration.
pub const DEFAULT_LIST_CAP: usize = 1 << 20;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DecoderError {
    #[error("interpolation degree bound {d} does not exceed k-1 = {k_minus_1}")]
    DegreeTooSmall { d: usize, k_minus_1: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FailureReason {
    /// Some diagonal block of the root-finding matrix vanished; the event
    /// whose probability the failure bound controls.
    RankDeficient,
    /// A block equation was unsatisfiable (possible only beyond the radius).
    Inconsistent,
    /// List enumeration exceeded the configured cap.
    ListCap,
    /// The degree bound collapsed below k (possible only beyond the radius).
    DegreeBound,
}

impl FailureReason {
    pub fn as_str(&self) -> &'static str {
        match self {
            FailureReason::RankDeficient => "rank-deficient",
            FailureReason::Inconsistent => "inconsistent",
            FailureReason::ListCap => "list-cap",
            FailureReason::DegreeBound => "degree-bound",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DecodeResult {
    Unique(Message),
    List(Vec<Message>),
    Failure(FailureReason),
}

/// Pipeline diagnostics for the simulator and the test suite.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DecodeTrace {
    /// The degree bound D used for interpolation.
    pub degree_bound: usize,
    /// Kernel dimension of the interpolation system.
    pub d_i: usize,
    /// How many kernel basis polynomials entered root finding.
    pub polys_used: usize,
    /// List mode only: candidates before distance verification.
    pub raw_list_size: usize,
}

/// The n_r(h-s+1) interpolation tuples
/// (x_j alpha^i, y_{j,i}, ..., y_{j,i+s-1}), ordered j outer, i inner.
#[derive(Debug, Clone)]
pub struct InterpolationTuples {
    rows: Vec<Vec<Fe>>,
    s: usize,
}

impl InterpolationTuples {
    pub fn rows(&self) -> &[Vec<Fe>] {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }
}

pub fn build_tuples(field: &ExtField, rw: &ReceivedWord, h: usize, s: usize) -> InterpolationTuples {
    assert!(s >= 1 && s <= h, "need 1 <= s <= h");
    let alpha = field.alpha();
    let mut rows = Vec::with_capacity(rw.n_r() * (h - s + 1));
    for row in rw.rows() {
        let x = row[0];
        let mut loc = x;
        for i in 0..=h - s {
            let mut t = Vec::with_capacity(s + 1);
            t.push(loc);
            for offset in 0..s {
                t.push(row[1 + i + offset]);
            }
            rows.push(t);
            loc = field.mul(loc, alpha);
        }
    }
    InterpolationTuples { rows, s }
}

/// D = ceil((n_r(h-s+1) + s(k-1) + mu) / (s+1)): the smallest degree bound
/// leaving at least mu more unknowns than interpolation constraints.
pub fn degree_bound(n_r: usize, h: usize, s: usize, k: usize, mu: usize) -> usize {
    assert!(mu >= 1);
    (n_r * (h - s + 1) + s * (k - 1) + mu).div_ceil(s + 1)
}

/// The interpolation matrix: one row per tuple, columns the Frobenius powers
/// of the locator entry (D of them) followed by s blocks of D-k+1 powers of
/// the payload entries.
pub fn build_interpolation_matrix(
    field: &ExtField,
    tuples: &InterpolationTuples,
    d: usize,
    k: usize,
) -> Result<Mat, DecoderError> {
    if d < k {
        return Err(DecoderError::DegreeTooSmall { d, k_minus_1: k - 1 });
    }
    let s = tuples.s;
    let ycols = d - k + 1;
    let cols = d + s * ycols;
    let mut m = Mat::zeros(field, tuples.len(), cols);
    for (r, tuple) in tuples.rows.iter().enumerate() {
        let mut v = tuple[0];
        for c in 0..d {
            m.set(r, c, v);
            v = field.frobenius(v, 1);
        }
        for l in 1..=s {
            let mut v = tuple[l];
            for c in 0..ycols {
                m.set(r, d + (l - 1) * ycols + c, v);
                v = field.frobenius(v, 1);
            }
        }
    }
    Ok(m)
}

/// One multivariate interpolation polynomial
/// Q(x, y_1, ..., y_s) = Q_0(x) + Q_1(y_1) + ... + Q_s(y_s).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QPoly {
    q0: LinPoly,
    ys: Vec<LinPoly>,
}

impl QPoly {
    /// Splits a kernel vector laid out as
    /// (q_{0,0..D-1} | q_{1,0..D-k} | ... | q_{s,0..D-k}).
    pub fn from_kernel_row(field: &ExtField, row: &[Fe], d: usize, k: usize, s: usize) -> Self {
        let ycols = d - k + 1;
        assert_eq!(row.len(), d + s * ycols);
        let q0 = LinPoly::new(field, row[..d].to_vec());
        let ys = (0..s)
            .map(|l| LinPoly::new(field, row[d + l * ycols..d + (l + 1) * ycols].to_vec()))
            .collect();
        QPoly { q0, ys }
    }

    pub fn q0(&self) -> &LinPoly {
        &self.q0
    }

    /// Q_l for l in 1..=s.
    pub fn y(&self, l: usize) -> &LinPoly {
        &self.ys[l - 1]
    }

    pub fn s(&self) -> usize {
        self.ys.len()
    }

    /// Evaluates Q at a tuple (t_0, t_1, ..., t_s).
    pub fn eval_tuple(&self, field: &ExtField, tuple: &[Fe]) -> Fe {
        let mut acc = self.q0.eval(field, tuple[0]);
        for (l, y) in self.ys.iter().enumerate() {
            acc = field.add(acc, y.eval(field, tuple[1 + l]));
        }
        acc
    }
}

/// A basis of the solution space of the interpolation system.
#[derive(Debug, Clone)]
pub struct InterpolationBasis {
    polys: Vec<QPoly>,
    degree_bound: usize,
}

impl InterpolationBasis {
    pub fn polys(&self) -> &[QPoly] {
        &self.polys
    }

    pub fn d_i(&self) -> usize {
        self.polys.len()
    }

    pub fn degree_bound(&self) -> usize {
        self.degree_bound
    }
}

/// Kernel basis of the interpolation system, reassembled into polynomials.
/// With D from [`degree_bound`] the kernel dimension is at least mu >= 1.
pub fn interpolate_basis(
    field: &ExtField,
    tuples: &InterpolationTuples,
    d: usize,
    k: usize,
) -> Result<InterpolationBasis, DecoderError> {
    let m = build_interpolation_matrix(field, tuples, d, k)?;
    let kern = kernel_basis(field, &m);
    let polys = (0..kern.rows())
        .map(|r| QPoly::from_kernel_row(field, kern.row(r), d, k, tuples.s))
        .collect();
    Ok(InterpolationBasis { polys, degree_bound: d })
}

/// Symbolically composes P(x) = Q(x, f(x), f(alpha x), ..., f(alpha^{s-1} x))
/// and tests whether it is the zero polynomial.
pub fn verify_root_identity(field: &ExtField, q: &QPoly, f: &LinPoly) -> bool {
    let alpha = field.alpha();
    let mut p = q.q0.clone();
    let mut c = field.one();
    for y in &q.ys {
        let scaled_arg = f.compose(field, &LinPoly::scale(field, c));
        p = p.add(field, &y.compose(field, &scaled_arg));
        c = field.mul(c, alpha);
    }
    p.is_zero()
}

/// The block lower-triangular root-finding system B u = -rhs over the
/// twisted unknowns u_j = f_j^{[-j]}.
#[derive(Debug, Clone)]
pub struct RootFindingSystem {
    k: usize,
    /// Number of interpolation polynomials contributing equations.
    d_used: usize,
    /// blocks[j][c][l] = B_{j-c}^{(l)}(alpha^{[j]})^{[-j]}, c <= j.
    blocks: Vec<Vec<Vec<Fe>>>,
    /// rhs[j][l] = q_{0,j}^{(l)[-j]}.
    rhs: Vec<Vec<Fe>>,
}

impl RootFindingSystem {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn d_used(&self) -> usize {
        self.d_used
    }

    /// Total rows k * d_used, columns k.
    pub fn shape(&self) -> (usize, usize) {
        (self.k * self.d_used, self.k)
    }

    /// The diagonal block of block-row j (zero iff every polynomial's
    /// B_0^{(l)} vanishes at alpha^{[j]}).
    pub fn diagonal_block(&self, j: usize) -> &[Fe] {
        &self.blocks[j][j]
    }
}

/// Sets up the root-finding system from `polys` (any prefix of an
/// interpolation basis). Coefficients q_{l,i} beyond the stored degree are
/// zero.
pub fn build_root_system(
    field: &ExtField,
    polys: &[QPoly],
    params: &FSCodeParams,
) -> RootFindingSystem {
    let k = params.k();
    let s = params.s();
    let alpha = field.alpha();
    let d_used = polys.len();

    // B_i^{(l)}(x) = q_{1,i} + q_{2,i} x + ... + q_{s,i} x^{s-1}
    let b_poly = |poly: &QPoly, i: usize| -> OrdPoly {
        let coeffs = (1..=s).map(|l| poly.y(l).coeff(field, i)).collect();
        OrdPoly::new(field, coeffs)
    };

    let mut blocks = Vec::with_capacity(k);
    let mut rhs = Vec::with_capacity(k);
    for j in 0..k {
        let point = field.frobenius(alpha, j as i64);
        let mut row_blocks = Vec::with_capacity(j + 1);
        for c in 0..=j {
            let i = j - c;
            let col = polys
                .iter()
                .map(|p| field.frobenius(b_poly(p, i).eval(field, point), -(j as i64)))
                .collect();
            row_blocks.push(col);
        }
        blocks.push(row_blocks);
        rhs.push(
            polys
                .iter()
                .map(|p| field.frobenius(p.q0.coeff(field, j), -(j as i64)))
                .collect(),
        );
    }
    RootFindingSystem { k, d_used, blocks, rhs }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveMode {
    Unique,
    List { cap: usize },
}

/// Raw outcome of block forward substitution, before any candidate
/// verification.
#[derive(Debug, Clone)]
pub enum RawSolve {
    Unique(LinPoly),
    Candidates(Vec<LinPoly>),
    Failure(FailureReason),
}

/// Block forward substitution on the twisted unknowns. Within a block the
/// first nonzero diagonal entry pivots; the remaining equations of the block
/// are consistency checks. In list mode an all-zero diagonal block makes the
/// coordinate free and enumerates it over the field.
pub fn solve_root_system(
    field: &ExtField,
    sys: &RootFindingSystem,
    mode: SolveMode,
) -> RawSolve {
    let k = sys.k;
    let d = sys.d_used;

    // residual[l] of block j given the prefix u: -rhs[j][l] - sum blocks[j][c][l] u_c
    let residual = |j: usize, u: &[Fe]| -> Vec<Fe> {
        (0..d)
            .map(|l| {
                let mut acc = field.neg(sys.rhs[j][l]);
                for (c, &uc) in u.iter().enumerate() {
                    acc = field.sub(acc, field.mul(sys.blocks[j][c][l], uc));
                }
                acc
            })
            .collect()
    };

    let untwist = |u: &[Fe]| -> LinPoly {
        let coeffs = u.iter().enumerate().map(|(j, &v)| field.frobenius(v, j as i64)).collect();
        LinPoly::new(field, coeffs)
    };

    match mode {
        SolveMode::Unique => {
            let mut u: Vec<Fe> = Vec::with_capacity(k);
            for j in 0..k {
                let r = residual(j, &u);
                let diag = &sys.blocks[j][j];
                let Some(pivot) = diag.iter().position(|e| !e.is_zero()) else {
                    return RawSolve::Failure(FailureReason::RankDeficient);
                };
                let uj = field.div(r[pivot], diag[pivot]);
                for l in 0..d {
                    if field.mul(diag[l], uj) != r[l] {
                        return RawSolve::Failure(FailureReason::Inconsistent);
                    }
                }
                u.push(uj);
            }
            RawSolve::Unique(untwist(&u))
        }
        SolveMode::List { cap } => {
            let mut complete: Vec<Vec<Fe>> = Vec::new();
            let mut stack: Vec<Vec<Fe>> = vec![Vec::new()];
            while let Some(u) = stack.pop() {
                let j = u.len();
                if j == k {
                    complete.push(u);
                    if complete.len() > cap {
                        return RawSolve::Failure(FailureReason::ListCap);
                    }
                    continue;
                }
                let r = residual(j, &u);
                let diag = &sys.blocks[j][j];
                if let Some(pivot) = diag.iter().position(|e| !e.is_zero()) {
                    let uj = field.div(r[pivot], diag[pivot]);
                    if (0..d).all(|l| field.mul(diag[l], uj) == r[l]) {
                        let mut ext = u;
                        ext.push(uj);
                        stack.push(ext);
                    }
                    // inconsistent branch: drop
                } else if r.iter().all(|e| e.is_zero()) {
                    let order = field.order();
                    let pending = complete.len() + stack.len();
                    if order > cap as u64 || pending + order as usize > cap {
                        return RawSolve::Failure(FailureReason::ListCap);
                    }
                    for v in 0..order {
                        let mut ext = u.clone();
                        ext.push(field.elem(v));
                        stack.push(ext);
                    }
                }
                // zero diagonal with nonzero residual: dead branch
            }
            let mut out: Vec<LinPoly> = complete.iter().map(|u| untwist(u)).collect();
            out.sort_by_key(|a| a.canonical_coeffs());
            RawSolve::Candidates(out)
        }
    }
}

fn interpolation_step(
    params: &FSCodeParams,
    rw: &ReceivedWord,
    mu: usize,
) -> Result<(usize, InterpolationBasis), DecodeTrace> {
    let field = params.field();
    let d = degree_bound(rw.n_r(), params.h(), params.s(), params.k(), mu);
    if d < params.k() {
        return Err(DecodeTrace { degree_bound: d, d_i: 0, polys_used: 0, raw_list_size: 0 });
    }
    let tuples = build_tuples(field, rw, params.h(), params.s());
    let basis = interpolate_basis(field, &tuples, d, params.k())
        .expect("degree bound checked above");
    Ok((d, basis))
}

/// Probabilistic unique decoding: interpolate with surplus mu, feed the
/// first mu kernel basis polynomials into root finding, and demand a full
/// set of nonzero diagonal blocks. Guaranteed to contain the transmitted
/// message among its solutions whenever gamma + s*delta is within
/// [`FSCodeParams::unique_radius`].
pub fn decode_unique(
    params: &FSCodeParams,
    rw: &ReceivedWord,
    mu: usize,
) -> (DecodeResult, DecodeTrace) {
    let field = params.field();
    let (d, basis) = match interpolation_step(params, rw, mu) {
        Ok(v) => v,
        Err(trace) => return (DecodeResult::Failure(FailureReason::DegreeBound), trace),
    };
    let retained: Vec<QPoly> = basis
        .polys()
        .iter()
        .filter(|p| p.q0().qdeg().is_none_or(|deg| deg < d))
        .cloned()
        .collect();
    let d_i = basis.d_i();
    let use_count = mu.min(retained.len());
    let sys = build_root_system(field, &retained[..use_count], params);
    let trace =
        DecodeTrace { degree_bound: d, d_i, polys_used: use_count, raw_list_size: 0 };
    match solve_root_system(field, &sys, SolveMode::Unique) {
        RawSolve::Unique(poly) => {
            let msg = Message::new(params, poly).expect("solution degree < k by construction");
            (DecodeResult::Unique(msg), trace)
        }
        RawSolve::Failure(r) => (DecodeResult::Failure(r), trace),
        RawSolve::Candidates(_) => unreachable!("unique mode never enumerates"),
    }
}

/// List decoding: interpolate with mu = 1, use the whole kernel basis, and
/// enumerate the affine solution set. Candidates are kept only if their
/// re-encoding lies within the list decoding radius of the received word.
pub fn decode_list(
    params: &FSCodeParams,
    rw: &ReceivedWord,
    cap: usize,
) -> (DecodeResult, DecodeTrace) {
    let field = params.field();
    let (d, basis) = match interpolation_step(params, rw, 1) {
        Ok(v) => v,
        Err(trace) => return (DecodeResult::Failure(FailureReason::DegreeBound), trace),
    };
    let d_i = basis.d_i();
    let sys = build_root_system(field, basis.polys(), params);
    let mut trace = DecodeTrace { degree_bound: d, d_i, polys_used: d_i, raw_list_size: 0 };
    match solve_root_system(field, &sys, SolveMode::List { cap }) {
        RawSolve::Candidates(cands) => {
            trace.raw_list_size = cands.len();
            let received_space = rw.space(field, params.h());
            let kept: Vec<Message> = cands
                .into_iter()
                .filter_map(|poly| Message::new(params, poly).ok())
                .filter(|msg| within_list_radius(params, msg, &received_space))
                .collect();
            (DecodeResult::List(kept), trace)
        }
        RawSolve::Failure(r) => (DecodeResult::Failure(r), trace),
        RawSolve::Unique(_) => unreachable!("list mode always enumerates"),
    }
}

/// Does the candidate's codeword sit at an (insertions, deletions) pair
/// covered by the list decoding radius of the received space?
fn within_list_radius(
    params: &FSCodeParams,
    msg: &Message,
    received_space: &SubspaceBasis,
) -> bool {
    let cw_space = encode(params, msg).space(params);
    let dist = received_space.distance(&cw_space).expect("same ambient");
    let n_r = received_space.dim();
    let n_t = params.n_t();
    // dist = (n_t - w) + (n_r - w) with w the intersection dimension
    let w = (n_t + n_r - dist) / 2;
    let gamma = (n_r - w) as i64;
    let delta = (n_t - w) as i64;
    gamma + params.s() as i64 * delta <= params.list_radius()
}
