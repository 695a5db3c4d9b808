//! Exact arithmetic in F_q (q prime) and F_{q^m}, plus dense linear algebra
//! (RREF, rank, kernel, affine solve) over both fields.
//!
//! Elements are stored as canonical integers: a field element with coordinate
//! vector (c_0, ..., c_{m-1}) in the polynomial basis alpha^0, ..., alpha^{m-1}
//! is encoded as the integer sum c_i * q^i. This encoding is the wire format
//! for all serialization and keeps an element in a single machine word
//! (field sizes are capped at 2^61).

mod ext;
mod factor;
mod mat;
mod prime;

pub use ext::ExtField;
pub use mat::{
    kernel_basis, mat_times_col, rank, row_times_mat, rref, solve_affine, AffineSolution, Mat,
    RrefOutcome,
};
pub use prime::PrimeField;

pub(crate) use factor::prime_factors;

use rand::RngCore;
use thiserror::Error;

/// Largest admitted field order. Canonical integers must fit comfortably in
/// u64 with headroom for intermediate exponent arithmetic.
pub const MAX_FIELD_ORDER: u64 = 1 << 61;

/// Largest prime admitted as a base field characteristic.
pub const MAX_PRIME: u64 = 251;

/// Largest extension degree.
pub const MAX_DEGREE: usize = 24;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("{0} is not a prime in [2, {MAX_PRIME}]")]
    NotPrime(u64),
    #[error("extension degree {m} out of range (need 1 <= m <= {MAX_DEGREE} and q^m <= 2^61)")]
    DegreeOutOfRange { m: usize },
    #[error("no primitive polynomial found for q={q}, m={m} (internal search bug)")]
    NoPrimitivePolynomialFound { q: u64, m: usize },
    #[error("canonical value {value} is not an element of a field of order {order}")]
    ElemOutOfRange { value: u64, order: u64 },
    #[error("modulus is not a valid primitive polynomial: {0}")]
    BadModulus(String),
}

/// Identifies the field an element belongs to. Derived deterministically from
/// the field parameters, so two independently constructed copies of the same
/// field interoperate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldId(u64);

fn mix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

impl FieldId {
    fn derive(tag: u64, parts: impl IntoIterator<Item = u64>) -> Self {
        let mut h = mix64(tag);
        for p in parts {
            h = mix64(h ^ p);
        }
        FieldId(h)
    }
}

/// A field element: canonical integer plus owning-field identifier.
/// Mixing elements of different fields is a programming error and panics at
/// operation time.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fe {
    fid: FieldId,
    val: u64,
}

impl Fe {
    pub(crate) fn raw(fid: FieldId, val: u64) -> Self {
        Fe { fid, val }
    }

    /// Canonical integer encoding sum c_i q^i.
    pub fn canonical(self) -> u64 {
        self.val
    }

    pub fn field_id(self) -> FieldId {
        self.fid
    }

    pub fn is_zero(self) -> bool {
        self.val == 0
    }
}

/// Common surface of [`PrimeField`] and [`ExtField`].
///
/// All operations are pure; fields are immutable after construction and safe
/// to share across threads.
pub trait FiniteField {
    fn id(&self) -> FieldId;
    /// Number of elements.
    fn order(&self) -> u64;
    /// Characteristic q.
    fn characteristic(&self) -> u64;

    fn zero(&self) -> Fe {
        Fe::raw(self.id(), 0)
    }
    fn one(&self) -> Fe {
        Fe::raw(self.id(), 1 % self.order())
    }

    /// Element from its canonical integer; panics if out of range.
    fn elem(&self, canonical: u64) -> Fe {
        self.try_elem(canonical).expect("canonical value out of range")
    }

    fn try_elem(&self, canonical: u64) -> Result<Fe, AlgebraError> {
        if canonical < self.order() {
            Ok(Fe::raw(self.id(), canonical))
        } else {
            Err(AlgebraError::ElemOutOfRange { value: canonical, order: self.order() })
        }
    }

    /// Panics if the element belongs to a different field.
    fn check(&self, a: Fe) -> Fe {
        assert_eq!(a.fid, self.id(), "element used with a foreign field");
        a
    }

    fn add(&self, a: Fe, b: Fe) -> Fe;
    fn sub(&self, a: Fe, b: Fe) -> Fe;
    fn neg(&self, a: Fe) -> Fe;
    fn mul(&self, a: Fe, b: Fe) -> Fe;
    /// Multiplicative inverse; panics on zero.
    fn inv(&self, a: Fe) -> Fe;

    fn div(&self, a: Fe, b: Fe) -> Fe {
        self.mul(a, self.inv(b))
    }

    fn pow(&self, a: Fe, e: u64) -> Fe {
        let mut base = self.check(a);
        let mut e = e;
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Uniformly random element.
    fn random(&self, rng: &mut dyn RngCore) -> Fe {
        Fe::raw(self.id(), uniform_u64(rng, self.order()))
    }

    /// Multiplicative order of a nonzero element (brute force friendly sizes
    /// only; used by tests and validation, not hot paths).
    fn mult_order(&self, a: Fe) -> u64 {
        let a = self.check(a);
        assert!(!a.is_zero(), "zero has no multiplicative order");
        let group = self.order() - 1;
        let mut ord = group;
        for p in prime_factors(group) {
            while ord.is_multiple_of(p) && self.pow(a, ord / p) == self.one() {
                ord /= p;
            }
        }
        ord
    }
}

/// Rejection-sampled uniform integer in [0, bound).
pub(crate) fn uniform_u64(rng: &mut dyn RngCore, bound: u64) -> u64 {
    debug_assert!(bound > 0);
    if bound.is_power_of_two() {
        return rng.next_u64() & (bound - 1);
    }
    let zone = u64::MAX - (u64::MAX % bound + 1) % bound;
    loop {
        let v = rng.next_u64();
        if v <= zone {
            return v % bound;
        }
    }
}
