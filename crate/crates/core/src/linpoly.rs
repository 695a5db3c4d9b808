//! Linearized polynomials sum p_i x^{[i]} over F_{q^m}: evaluation,
//! addition, noncommutative composition, Moore matrices. Also the small
//! ordinary polynomials the root-finding step evaluates.

use rand::RngCore;

use crate::algebra::{ExtField, Fe, FiniteField, Mat};

/// A linearized polynomial. `coeffs[i]` multiplies x^{[i]} = x^{q^i}.
/// The zero polynomial is the empty coefficient list; otherwise the trailing
/// coefficient is nonzero.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LinPoly {
    coeffs: Vec<Fe>,
}

impl LinPoly {
    pub fn new(field: &ExtField, mut coeffs: Vec<Fe>) -> Self {
        for &c in &coeffs {
            field.check(c);
        }
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        LinPoly { coeffs }
    }

    pub fn zero() -> Self {
        LinPoly { coeffs: Vec::new() }
    }

    /// The identity map x^{[0]}.
    pub fn identity(field: &ExtField) -> Self {
        LinPoly { coeffs: vec![field.one()] }
    }

    /// The map x -> c * x.
    pub fn scale(field: &ExtField, c: Fe) -> Self {
        Self::new(field, vec![c])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// q-degree; `None` for the zero polynomial.
    pub fn qdeg(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Fe] {
        &self.coeffs
    }

    /// Coefficient of x^{[i]} (zero beyond the stored length).
    pub fn coeff(&self, field: &ExtField, i: usize) -> Fe {
        self.coeffs.get(i).copied().unwrap_or_else(|| field.zero())
    }

    pub fn eval(&self, field: &ExtField, x: Fe) -> Fe {
        let mut acc = field.zero();
        let mut xi = field.check(x);
        for &c in &self.coeffs {
            acc = field.add(acc, field.mul(c, xi));
            xi = field.frobenius(xi, 1);
        }
        acc
    }

    pub fn add(&self, field: &ExtField, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| field.add(self.coeff(field, i), other.coeff(field, i)))
            .collect();
        Self::new(field, coeffs)
    }

    pub fn scale_by(&self, field: &ExtField, c: Fe) -> Self {
        Self::new(field, self.coeffs.iter().map(|&a| field.mul(a, c)).collect())
    }

    pub fn sub(&self, field: &ExtField, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| field.sub(self.coeff(field, i), other.coeff(field, i)))
            .collect();
        Self::new(field, coeffs)
    }

    /// Noncommutative composition f(g(x)): coefficient d gets
    /// sum over i+j=d of f_i * g_j^{[i]}.
    pub fn compose(&self, field: &ExtField, g: &Self) -> Self {
        if self.is_zero() || g.is_zero() {
            return Self::zero();
        }
        let df = self.coeffs.len() - 1;
        let dg = g.coeffs.len() - 1;
        let mut out = vec![field.zero(); df + dg + 1];
        for (i, &fi) in self.coeffs.iter().enumerate() {
            if fi.is_zero() {
                continue;
            }
            for (j, &gj) in g.coeffs.iter().enumerate() {
                let t = field.mul(fi, field.frobenius(gj, i as i64));
                out[i + j] = field.add(out[i + j], t);
            }
        }
        Self::new(field, out)
    }

    /// Uniform random polynomial of q-degree < `max_qdeg_exclusive`.
    pub fn random(field: &ExtField, max_qdeg_exclusive: usize, rng: &mut dyn RngCore) -> Self {
        assert!(max_qdeg_exclusive >= 1);
        let coeffs = (0..max_qdeg_exclusive).map(|_| field.random(rng)).collect();
        Self::new(field, coeffs)
    }

    /// Canonical integer encodings, low q-degree first (the JSON wire form).
    pub fn canonical_coeffs(&self) -> Vec<u64> {
        self.coeffs.iter().map(|c| c.canonical()).collect()
    }

    pub fn from_canonical_coeffs(
        field: &ExtField,
        coeffs: &[u64],
    ) -> Result<Self, crate::algebra::AlgebraError> {
        let elems = coeffs.iter().map(|&v| field.try_elem(v)).collect::<Result<Vec<_>, _>>()?;
        Ok(Self::new(field, elems))
    }
}

/// The r x n Moore matrix of a vector: entry (i, j) = a_j^{[i]}.
pub fn moore_matrix(field: &ExtField, r: usize, a: &[Fe]) -> Mat {
    assert!(r >= 1 && !a.is_empty());
    let mut m = Mat::zeros(field, r, a.len());
    let mut row: Vec<Fe> = a.iter().map(|&x| field.check(x)).collect();
    for i in 0..r {
        for (j, &v) in row.iter().enumerate() {
            m.set(i, j, v);
        }
        if i + 1 < r {
            for v in row.iter_mut() {
                *v = field.frobenius(*v, 1);
            }
        }
    }
    m
}

/// An ordinary polynomial sum c_i x^i, used for the degree < s polynomials
/// of the root-finding step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrdPoly {
    coeffs: Vec<Fe>,
}

impl OrdPoly {
    pub fn new(field: &ExtField, mut coeffs: Vec<Fe>) -> Self {
        for &c in &coeffs {
            field.check(c);
        }
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        OrdPoly { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn eval(&self, field: &ExtField, x: Fe) -> Fe {
        let mut acc = field.zero();
        for &c in self.coeffs.iter().rev() {
            acc = field.add(field.mul(acc, x), c);
        }
        acc
    }
}
