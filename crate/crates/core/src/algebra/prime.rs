//! The prime field F_q for q prime, 2 <= q <= 251.

use super::{factor, AlgebraError, Fe, FieldId, FiniteField, MAX_PRIME};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    q: u64,
    fid: FieldId,
}

impl PrimeField {
    pub fn new(q: u64) -> Result<Self, AlgebraError> {
        if !(2..=MAX_PRIME).contains(&q) || !factor::is_prime(q) {
            return Err(AlgebraError::NotPrime(q));
        }
        Ok(PrimeField { q, fid: FieldId::derive(0x9d1e, [q]) })
    }

    pub fn q(&self) -> u64 {
        self.q
    }
}

impl FiniteField for PrimeField {
    fn id(&self) -> FieldId {
        self.fid
    }

    fn order(&self) -> u64 {
        self.q
    }

    fn characteristic(&self) -> u64 {
        self.q
    }

    fn add(&self, a: Fe, b: Fe) -> Fe {
        let (a, b) = (self.check(a), self.check(b));
        Fe::raw(self.fid, (a.canonical() + b.canonical()) % self.q)
    }

    fn sub(&self, a: Fe, b: Fe) -> Fe {
        let (a, b) = (self.check(a), self.check(b));
        Fe::raw(self.fid, (a.canonical() + self.q - b.canonical()) % self.q)
    }

    fn neg(&self, a: Fe) -> Fe {
        let a = self.check(a);
        Fe::raw(self.fid, (self.q - a.canonical()) % self.q)
    }

    fn mul(&self, a: Fe, b: Fe) -> Fe {
        let (a, b) = (self.check(a), self.check(b));
        // q <= 251, so the product fits u64 with room to spare.
        Fe::raw(self.fid, (a.canonical() * b.canonical()) % self.q)
    }

    fn inv(&self, a: Fe) -> Fe {
        let a = self.check(a);
        assert!(!a.is_zero(), "inverse of zero");
        self.pow(a, self.q - 2)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_primes() {
        assert_eq!(PrimeField::new(1).unwrap_err(), AlgebraError::NotPrime(1));
        assert_eq!(PrimeField::new(4).unwrap_err(), AlgebraError::NotPrime(4));
        assert_eq!(PrimeField::new(253).unwrap_err(), AlgebraError::NotPrime(253));
        assert!(PrimeField::new(251).is_ok());
    }

    #[test]
    fn small_field_arithmetic() {
        let f = PrimeField::new(7).unwrap();
        let a = f.elem(3);
        let b = f.elem(5);
        assert_eq!(f.add(a, b).canonical(), 1);
        assert_eq!(f.mul(a, b).canonical(), 1);
        assert_eq!(f.sub(a, b).canonical(), 5);
        assert_eq!(f.mul(a, f.inv(a)), f.one());
        assert_eq!(f.neg(f.zero()), f.zero());
    }
}
