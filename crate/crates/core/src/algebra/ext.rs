//! The extension field F_{q^m} = F_q[x]/(f) with f the deterministically
//! chosen primitive modulus, and alpha = x a primitive element.

use rand::RngCore;

use super::{
    factor, prime::PrimeField, uniform_u64, AlgebraError, Fe, FieldId, FiniteField,
    MAX_DEGREE, MAX_FIELD_ORDER,
};

/// Fields up to this order carry exp/log tables for O(1) multiplication.
const TABLE_LIMIT: u64 = 1 << 20;

struct Tables {
    /// exp[i] = canonical(alpha^i), i in [0, order-1)
    exp: Vec<u64>,
    /// log[canonical] for canonical != 0; log[0] is a sentinel
    log: Vec<u32>,
}

pub struct ExtField {
    q: u64,
    m: usize,
    /// Monic modulus, coefficient list low to high, length m+1.
    modulus: Vec<u64>,
    order: u64,
    fid: FieldId,
    base: PrimeField,
    /// q^i for i in 0..=m.
    q_pow: Vec<u64>,
    /// x^{m+j} mod modulus for j in 0..m-1, each a length-m coefficient vector.
    reduction: Vec<Vec<u64>>,
    alpha_val: u64,
    tables: Option<Tables>,
}

impl std::fmt::Debug for ExtField {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ExtField")
            .field("q", &self.q)
            .field("m", &self.m)
            .field("modulus", &self.modulus)
            .finish()
    }
}

impl ExtField {
    /// Constructs F_{q^m} with the deterministic modulus: the monic degree-m
    /// irreducible polynomial with primitive root x whose non-leading
    /// coefficient vector has the smallest canonical integer encoding
    /// (equivalently, smallest when coefficients are compared from the
    /// highest degree down).
    pub fn new(q: u64, m: usize) -> Result<Self, AlgebraError> {
        let base = PrimeField::new(q)?;
        let order = checked_order(q, m)?;
        let group_factors = factor::prime_factors(order - 1);
        let m_factors = factor::prime_factors(m as u64);
        for t in 0..order {
            let mut f = unpack_digits(t, q, m);
            f.push(1);
            if f[0] == 0 {
                continue; // divisible by x
            }
            if m > 1 && !is_irreducible(&f, q, m, &m_factors) {
                continue;
            }
            if !x_is_primitive(&f, q, m, order, &group_factors) {
                continue;
            }
            return Ok(Self::assemble(q, m, f, order, base));
        }
        Err(AlgebraError::NoPrimitivePolynomialFound { q, m })
    }

    /// Constructs F_{q^m} from an explicit modulus (e.g. a parsed field
    /// descriptor), validating irreducibility and primitivity of x.
    pub fn with_modulus(q: u64, m: usize, modulus: &[u64]) -> Result<Self, AlgebraError> {
        let base = PrimeField::new(q)?;
        let order = checked_order(q, m)?;
        if modulus.len() != m + 1 || modulus[m] != 1 {
            return Err(AlgebraError::BadModulus("must be monic of degree m".into()));
        }
        if modulus.iter().any(|&c| c >= q) {
            return Err(AlgebraError::BadModulus("coefficients must be reduced mod q".into()));
        }
        let f = modulus.to_vec();
        if m > 1 && !is_irreducible(&f, q, m, &factor::prime_factors(m as u64)) {
            return Err(AlgebraError::BadModulus("not irreducible".into()));
        }
        if !x_is_primitive(&f, q, m, order, &factor::prime_factors(order - 1)) {
            return Err(AlgebraError::BadModulus("x is not primitive".into()));
        }
        Ok(Self::assemble(q, m, f, order, base))
    }

    fn assemble(q: u64, m: usize, modulus: Vec<u64>, order: u64, base: PrimeField) -> Self {
        let fid = FieldId::derive(0xe77, [q, m as u64].into_iter().chain(modulus.iter().copied()));
        let mut q_pow = Vec::with_capacity(m + 1);
        let mut p = 1u64;
        for _ in 0..=m {
            q_pow.push(p);
            p = p.saturating_mul(q);
        }

        // reduction[j] = x^{m+j} mod f; row 0 is -(low part of f), higher
        // rows by iterated shift-and-reduce. mul_generic needs j up to m-2,
        // mul_by_x needs j = 0.
        let rows_needed = (m - 1).max(1);
        let mut reduction: Vec<Vec<u64>> = Vec::with_capacity(rows_needed);
        let row0: Vec<u64> = modulus[..m].iter().map(|&c| (q - c) % q).collect();
        reduction.push(row0);
        while reduction.len() < rows_needed {
            let prev = reduction.last().unwrap().clone();
            let mut next = vec![0u64; m];
            let top = prev[m - 1];
            next[1..m].copy_from_slice(&prev[..m - 1]);
            if top != 0 {
                for i in 0..m {
                    next[i] = (next[i] + top * reduction[0][i]) % q;
                }
            }
            reduction.push(next);
        }

        let alpha_val = if m == 1 { (q - modulus[0]) % q } else { q };

        let mut field = ExtField {
            q,
            m,
            modulus,
            order,
            fid,
            base,
            q_pow,
            reduction,
            alpha_val,
            tables: None,
        };
        if order <= TABLE_LIMIT {
            field.build_tables();
        }
        field
    }

    fn build_tables(&mut self) {
        let n = self.order as usize;
        let mut exp = Vec::with_capacity(n - 1);
        let mut log = vec![u32::MAX; n];
        let mut cur = vec![0u64; self.m];
        cur[0] = 1;
        for i in 0..n - 1 {
            let v = pack_digits(&cur, self.q);
            exp.push(v);
            log[v as usize] = i as u32;
            self.mul_by_x(&mut cur);
        }
        debug_assert_eq!(pack_digits(&cur, self.q), 1, "alpha period != order - 1");
        self.tables = Some(Tables { exp, log });
    }

    /// Multiply a digit vector by x and reduce mod the modulus, in place.
    fn mul_by_x(&self, digits: &mut [u64]) {
        let m = self.m;
        let top = digits[m - 1];
        for i in (1..m).rev() {
            digits[i] = digits[i - 1];
        }
        digits[0] = 0;
        if top != 0 {
            let red = &self.reduction[0];
            for i in 0..m {
                digits[i] = (digits[i] + top * red[i]) % self.q;
            }
        }
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Monic modulus polynomial, coefficients low to high.
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// The primitive element alpha (the residue class of x).
    pub fn alpha(&self) -> Fe {
        Fe::raw(self.fid, self.alpha_val)
    }

    pub fn base_field(&self) -> PrimeField {
        self.base
    }

    /// Embeds a base field element as the constant coordinate.
    pub fn embed(&self, c: Fe) -> Fe {
        let c = self.base.check(c);
        Fe::raw(self.fid, c.canonical())
    }

    /// Coordinates of `a` in the basis alpha^0, ..., alpha^{m-1}, as base
    /// field elements.
    pub fn coords(&self, a: Fe) -> Vec<Fe> {
        let a = self.check(a);
        let mut v = a.canonical();
        let mut out = Vec::with_capacity(self.m);
        for _ in 0..self.m {
            out.push(Fe::raw(self.base.id(), v % self.q));
            v /= self.q;
        }
        out
    }

    /// Inverse of [`coords`](Self::coords): m base field coordinates to an element.
    pub fn from_coords(&self, coords: &[Fe]) -> Fe {
        assert_eq!(coords.len(), self.m, "need exactly m coordinates");
        let mut v = 0u64;
        for c in coords.iter().rev() {
            let c = self.base.check(*c);
            v = v * self.q + c.canonical();
        }
        Fe::raw(self.fid, v)
    }

    /// F_q-linear expansion of a length-c vector over F_{q^m} into a length
    /// c*m vector over F_q (component coordinates concatenated in order).
    pub fn expand_to_base(&self, v: &[Fe]) -> Vec<Fe> {
        let mut out = Vec::with_capacity(v.len() * self.m);
        for &a in v {
            out.extend(self.coords(a));
        }
        out
    }

    /// The Frobenius power a^{q^{i mod m}}; i may be negative, with [-j]
    /// meaning [m-j] (the inverse automorphism applied j times).
    pub fn frobenius(&self, a: Fe, i: i64) -> Fe {
        let a = self.check(a);
        let j = i.rem_euclid(self.m as i64) as usize;
        if j == 0 {
            return a;
        }
        self.pow(a, self.q_pow[j])
    }

    fn mul_generic(&self, a: u64, b: u64) -> u64 {
        let m = self.m;
        let ad = unpack_digits(a, self.q, m);
        let bd = unpack_digits(b, self.q, m);
        let mut conv = vec![0u64; 2 * m - 1];
        for (i, &ai) in ad.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in bd.iter().enumerate() {
                conv[i + j] += ai * bj;
            }
        }
        for c in conv.iter_mut() {
            *c %= self.q;
        }
        for d in (m..2 * m - 1).rev() {
            let t = conv[d];
            if t != 0 {
                let red = &self.reduction[d - m];
                for i in 0..m {
                    conv[i] = (conv[i] + t * red[i]) % self.q;
                }
            }
        }
        pack_digits(&conv[..m], self.q)
    }
}

impl FiniteField for ExtField {
    fn id(&self) -> FieldId {
        self.fid
    }

    fn order(&self) -> u64 {
        self.order
    }

    fn characteristic(&self) -> u64 {
        self.q
    }

    fn add(&self, a: Fe, b: Fe) -> Fe {
        let (a, b) = (self.check(a), self.check(b));
        if self.q == 2 {
            return Fe::raw(self.fid, a.canonical() ^ b.canonical());
        }
        let (mut va, mut vb) = (a.canonical(), b.canonical());
        let mut out = 0u64;
        let mut scale = 1u64;
        for _ in 0..self.m {
            out += scale * ((va % self.q + vb % self.q) % self.q);
            va /= self.q;
            vb /= self.q;
            scale *= self.q;
        }
        Fe::raw(self.fid, out)
    }

    fn sub(&self, a: Fe, b: Fe) -> Fe {
        if self.q == 2 {
            return self.add(a, b);
        }
        self.add(a, self.neg(b))
    }

    fn neg(&self, a: Fe) -> Fe {
        let a = self.check(a);
        if self.q == 2 {
            return a;
        }
        let mut v = a.canonical();
        let mut out = 0u64;
        let mut scale = 1u64;
        for _ in 0..self.m {
            out += scale * ((self.q - v % self.q) % self.q);
            v /= self.q;
            scale *= self.q;
        }
        Fe::raw(self.fid, out)
    }

    fn mul(&self, a: Fe, b: Fe) -> Fe {
        let (a, b) = (self.check(a), self.check(b));
        let (va, vb) = (a.canonical(), b.canonical());
        if va == 0 || vb == 0 {
            return self.zero();
        }
        if let Some(t) = &self.tables {
            let g = self.order - 1;
            let idx = (t.log[va as usize] as u64 + t.log[vb as usize] as u64) % g;
            return Fe::raw(self.fid, t.exp[idx as usize]);
        }
        Fe::raw(self.fid, self.mul_generic(va, vb))
    }

    fn inv(&self, a: Fe) -> Fe {
        let a = self.check(a);
        assert!(!a.is_zero(), "inverse of zero");
        if let Some(t) = &self.tables {
            let g = self.order - 1;
            let idx = (g - t.log[a.canonical() as usize] as u64) % g;
            return Fe::raw(self.fid, t.exp[idx as usize]);
        }
        self.pow(a, self.order - 2)
    }

    fn pow(&self, a: Fe, e: u64) -> Fe {
        let a = self.check(a);
        if a.is_zero() {
            return if e == 0 { self.one() } else { self.zero() };
        }
        if let Some(t) = &self.tables {
            let g = self.order - 1;
            let idx = (t.log[a.canonical() as usize] as u128 * (e % g) as u128 % g as u128) as u64;
            return Fe::raw(self.fid, t.exp[idx as usize]);
        }
        let mut base = a;
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

    fn random(&self, rng: &mut dyn RngCore) -> Fe {
        Fe::raw(self.fid, uniform_u64(rng, self.order))
    }
}

fn checked_order(q: u64, m: usize) -> Result<u64, AlgebraError> {
    if !(1..=MAX_DEGREE).contains(&m) {
        return Err(AlgebraError::DegreeOutOfRange { m });
    }
    let mut order = 1u64;
    for _ in 0..m {
        order = order
            .checked_mul(q)
            .filter(|&o| o <= MAX_FIELD_ORDER)
            .ok_or(AlgebraError::DegreeOutOfRange { m })?;
    }
    Ok(order)
}

fn unpack_digits(mut v: u64, q: u64, m: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(m + 1);
    for _ in 0..m {
        out.push(v % q);
        v /= q;
    }
    out
}

fn pack_digits(digits: &[u64], q: u64) -> u64 {
    let mut v = 0u64;
    for &d in digits.iter().rev() {
        v = v * q + d;
    }
    v
}

// --- dense polynomial arithmetic over F_q, used only at construction time ---

fn poly_trim(p: &mut Vec<u64>) {
    while p.last() == Some(&0) {
        p.pop();
    }
}

/// a * b mod f, all coefficient vectors over F_q, f monic of degree m.
fn poly_mul_mod(a: &[u64], b: &[u64], f: &[u64], q: u64, m: usize) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut conv = vec![0u64; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            conv[i + j] = (conv[i + j] + ai * bj) % q;
        }
    }
    for d in (m..conv.len()).rev() {
        let t = conv[d];
        if t != 0 {
            conv[d] = 0;
            for i in 0..m {
                conv[d - m + i] = (conv[d - m + i] + t * (q - f[i]) % q) % q;
            }
        }
    }
    conv.truncate(m);
    poly_trim(&mut conv);
    conv
}

fn poly_pow_mod(base: &[u64], mut e: u64, f: &[u64], q: u64, m: usize) -> Vec<u64> {
    let mut acc = vec![1u64];
    let mut b = base.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            acc = poly_mul_mod(&acc, &b, f, q, m);
        }
        b = poly_mul_mod(&b, &b, f, q, m);
        e >>= 1;
    }
    acc
}

/// x^{q^j} mod f by j successive q-th powers.
fn x_frob_power(j: usize, f: &[u64], q: u64, m: usize) -> Vec<u64> {
    let mut r = poly_mul_mod(&[0, 1], &[1], f, q, m);
    for _ in 0..j {
        r = poly_pow_mod(&r, q, f, q, m);
    }
    r
}

fn poly_gcd(a: &[u64], b: &[u64], q: u64) -> Vec<u64> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    poly_trim(&mut a);
    poly_trim(&mut b);
    while !b.is_empty() {
        // a mod b
        let lead_inv = mod_inv(b[b.len() - 1], q);
        while a.len() >= b.len() && !a.is_empty() {
            let shift = a.len() - b.len();
            let factor = a[a.len() - 1] * lead_inv % q;
            for (i, &bc) in b.iter().enumerate() {
                a[shift + i] = (a[shift + i] + factor * (q - bc) % q) % q;
            }
            poly_trim(&mut a);
        }
        std::mem::swap(&mut a, &mut b);
    }
    a
}

fn mod_inv(a: u64, q: u64) -> u64 {
    // q prime, a != 0
    let mut r = 1u64;
    let mut base = a % q;
    let mut e = q - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * base % q;
        }
        base = base * base % q;
        e >>= 1;
    }
    r
}

/// Rabin irreducibility test for monic f of degree m >= 2 over F_q.
fn is_irreducible(f: &[u64], q: u64, m: usize, m_factors: &[u64]) -> bool {
    // x^{q^m} == x mod f
    let xqm = x_frob_power(m, f, q, m);
    let x = poly_mul_mod(&[0, 1], &[1], f, q, m);
    if xqm != x {
        return false;
    }
    for &p in m_factors {
        let j = m / p as usize;
        let mut g = x_frob_power(j, f, q, m);
        // g - x
        if g.len() < 2 {
            g.resize(2, 0);
        }
        g[1] = (g[1] + q - 1) % q;
        poly_trim(&mut g);
        let d = poly_gcd(&g, f, q);
        if d.len() != 1 {
            return false;
        }
    }
    true
}

/// Checks that x has multiplicative order q^m - 1 in F_q[x]/(f).
fn x_is_primitive(f: &[u64], q: u64, m: usize, order: u64, group_factors: &[u64]) -> bool {
    let x = poly_mul_mod(&[0, 1], &[1], f, q, m);
    if x.is_empty() {
        return false;
    }
    for &p in group_factors {
        let e = (order - 1) / p;
        if poly_pow_mod(&x, e, f, q, m) == vec![1] {
            return false;
        }
    }
    true
}
