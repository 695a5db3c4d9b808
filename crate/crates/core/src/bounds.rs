//! Exact Grassmannian combinatorics (Gaussian binomials, distance shells,
//! ball volumes) and the derived bounds: average list size and decoding
//! failure probability.
//!
//! Everything combinatorial is kept in arbitrary precision; floats appear
//! only in the final reported values. Exponents like 2^-39 vanish in naive
//! floating evaluation of the huge numerators and denominators involved.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::code::FSCodeParams;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BoundsError {
    #[error("gaussian binomial arguments out of range: l = {l} not in [0, n = {n}]")]
    OutOfRange { n: i64, l: i64 },
    #[error("tau = {tau} violates the list decoding radius {radius}")]
    RadiusViolation { tau: usize, radius: i64 },
}

fn qpow(q: u64, e: u64) -> BigUint {
    BigUint::from(q).pow(e.try_into().expect("exponent fits u32"))
}

/// The Gaussian binomial [n l]_q: the number of l-dimensional subspaces of
/// F_q^n, as the exact product prod (q^{n-i} - 1) / (q^{l-i} - 1).
pub fn gaussian_binom(n: u64, l: u64, q: u64) -> Result<BigUint, BoundsError> {
    if l > n {
        return Err(BoundsError::OutOfRange { n: n as i64, l: l as i64 });
    }
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..l {
        num *= qpow(q, n - i) - 1u32;
        den *= qpow(q, l - i) - 1u32;
    }
    Ok(num / den) // exact
}

/// Zero outside the valid range instead of an error; the shell and ball
/// formulas index binomials freely.
fn binom_or_zero(n: i64, l: i64, q: u64) -> BigUint {
    if l < 0 || n < 0 || l > n {
        return BigUint::zero();
    }
    gaussian_binom(n as u64, l as u64, q).expect("range checked")
}

/// Number of n_t-dimensional subspaces of F_q^N at subspace distance exactly
/// t from a fixed n_r-dimensional subspace: q^{u(t-u)} [n_r u] [N-n_r t-u]
/// with u = (n_r - n_t + t)/2, and zero when u is not an integer.
pub fn shell_count(n_r: u64, n_t: u64, t: u64, n_ambient: u64, q: u64) -> BigUint {
    let two_u = n_r as i64 - n_t as i64 + t as i64;
    if two_u < 0 || two_u % 2 != 0 {
        return BigUint::zero();
    }
    let u = two_u / 2;
    let rest = t as i64 - u;
    if rest < 0 {
        return BigUint::zero();
    }
    let b1 = binom_or_zero(n_r as i64, u, q);
    let b2 = binom_or_zero(n_ambient as i64 - n_r as i64, rest, q);
    if b1.is_zero() || b2.is_zero() {
        return BigUint::zero();
    }
    qpow(q, (u * rest) as u64) * b1 * b2
}

/// Ball volume: the number of n_t-dimensional subspaces at distance at most
/// tau from a fixed n_r-dimensional subspace, summed over the shell index
/// j in [ceil((n_r-n_t)/2), floor((n_r-n_t+tau)/2)].
pub fn ball_volume(n_r: u64, n_t: u64, tau: u64, n_ambient: u64, q: u64) -> BigUint {
    let diff = n_r as i64 - n_t as i64;
    let u_l = (diff + 1).div_euclid(2); // ceil(diff / 2)
    let u_m = (diff + tau as i64).div_euclid(2);
    let mut total = BigUint::zero();
    for j in u_l.max(0)..=u_m.max(-1) {
        let co_dim = j - diff; // j - n_r + n_t
        if co_dim < 0 {
            continue;
        }
        let b1 = binom_or_zero(n_r as i64, j, q);
        let b2 = binom_or_zero(n_ambient as i64 - n_r as i64, co_dim, q);
        if b1.is_zero() || b2.is_zero() {
            continue;
        }
        total += qpow(q, (j * co_dim) as u64) * b1 * b2;
    }
    total
}

/// The average list size bound 1 + 16(tau/2 + 1) q^{mk + (n_r-u_m)(n_t+u_m-N)}
/// together with the exact average count of noncausal codewords in the ball.
#[derive(Debug, Clone)]
pub struct AvgListBound {
    /// Exponent mk + (n_r - u_m)(n_t + u_m - N) of the closed form.
    pub exponent: i64,
    /// The closed-form excess 16(tau/2 + 1) q^exponent, exactly.
    pub excess_exact: BigRational,
    /// Same as a float.
    pub excess: f64,
    /// 1 + excess.
    pub bound: f64,
    /// Exact expected number of noncausal codewords within distance tau:
    /// (q^{mk} - 1) * ball_volume / [N n_t]_q.
    pub lprime_exact: BigRational,
    pub lprime: f64,
}

/// Evaluates the average list size bound for a received dimension n_r and a
/// radius tau = gamma + s*delta; tau must satisfy the list decoding radius.
pub fn avg_list_bound(
    params: &FSCodeParams,
    n_r: usize,
    tau: usize,
) -> Result<AvgListBound, BoundsError> {
    let radius = params.list_radius();
    if (tau as i64) > radius {
        return Err(BoundsError::RadiusViolation { tau, radius });
    }
    let q = params.q();
    let m = params.m() as i64;
    let k = params.k() as i64;
    let n_t = params.n_t() as i64;
    let n_ambient = params.ambient_dim() as i64;

    let u_m = (n_r as i64 - n_t + tau as i64).div_euclid(2);
    let exponent = m * k + (n_r as i64 - u_m) * (n_t + u_m - n_ambient);
    // 16(tau/2 + 1) = 8(tau + 2), an integer either parity.
    let prefactor = BigRational::from_integer(BigInt::from(8 * (tau as i64 + 2)));
    let excess_exact = &prefactor * rational_qpow(q, exponent);
    let excess = ratio_to_f64(&excess_exact);

    let vol = ball_volume(n_r as u64, params.n_t() as u64, tau as u64, n_ambient as u64, q);
    let total = gaussian_binom(n_ambient as u64, params.n_t() as u64, q).expect("valid range");
    let causal = qpow(q, (m * k) as u64) - 1u32;
    let lprime_exact = BigRational::new(BigInt::from(causal * vol), BigInt::from(total));
    let lprime = ratio_to_f64(&lprime_exact);

    Ok(AvgListBound { exponent, excess_exact, excess, bound: 1.0 + excess, lprime_exact, lprime })
}

/// The decoding failure bound k (k / q^m)^exponent, exactly and as a float.
/// The exponent is the number of interpolation polynomials used in root
/// finding (at least the surplus threshold mu).
#[derive(Debug, Clone)]
pub struct FailureBound {
    pub exact: BigRational,
    pub float: f64,
}

pub fn failure_bound(k: usize, q: u64, m: usize, exponent: usize) -> FailureBound {
    assert!(exponent >= 1);
    let num = BigInt::from(k).pow(exponent as u32 + 1);
    let den = BigInt::from(qpow(q, (m * exponent) as u64));
    let exact = BigRational::new(num, den);
    let float = ratio_to_f64(&exact);
    FailureBound { exact, float }
}

/// q^e as an exact rational, e possibly negative.
fn rational_qpow(q: u64, e: i64) -> BigRational {
    let p = BigInt::from(qpow(q, e.unsigned_abs()));
    if e >= 0 {
        BigRational::from_integer(p)
    } else {
        BigRational::new(BigInt::one(), p)
    }
}

/// Lossless-enough conversion that survives numerators and denominators far
/// beyond the f64 exponent range.
pub fn ratio_to_f64(r: &BigRational) -> f64 {
    let sign = if r.is_negative() { -1.0 } else { 1.0 };
    let num = r.numer().magnitude();
    let den = r.denom().magnitude();
    if num.is_zero() {
        return 0.0;
    }
    let shift_n = num.bits().saturating_sub(63);
    let shift_d = den.bits().saturating_sub(63);
    let nf = (num >> shift_n).to_f64().expect("fits after shift");
    let df = (den >> shift_d).to_f64().expect("fits after shift");
    sign * (nf / df) * 2f64.powi(shift_n as i32 - shift_d as i32)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn gaussian_binom_basics() {
        assert_eq!(gaussian_binom(5, 0, 2).unwrap(), BigUint::one());
        assert_eq!(gaussian_binom(2, 1, 2).unwrap(), BigUint::from(3u32));
        assert_eq!(gaussian_binom(4, 2, 2).unwrap(), BigUint::from(35u32));
        assert!(gaussian_binom(2, 3, 2).is_err());
    }

    // Independent oracle: enumerate subspaces of F_2^n as bit matrices with
    // a self-contained bitwise RREF.
    fn bit_rref(rows: &mut Vec<u64>, width: u32) -> usize {
        let mut rank = 0;
        for col in 0..width {
            let bit = 1u64 << col;
            let Some(pivot) = (rank..rows.len()).find(|&r| rows[r] & bit != 0) else {
                continue;
            };
            rows.swap(rank, pivot);
            for r in 0..rows.len() {
                if r != rank && rows[r] & bit != 0 {
                    rows[r] ^= rows[rank];
                }
            }
            rank += 1;
        }
        rows.truncate(rank);
        rank
    }

    fn enumerate_subspaces(n: u32, l: u32) -> HashSet<Vec<u64>> {
        let mut seen = HashSet::new();
        if l == 0 {
            seen.insert(Vec::new());
            return seen;
        }
        let total_bits = n * l;
        for mask in 0u64..1 << total_bits {
            let mut rows: Vec<u64> = (0..l)
                .map(|r| (mask >> (r * n)) & ((1 << n) - 1))
                .collect();
            if bit_rref(&mut rows, n) == l as usize {
                seen.insert(rows);
            }
        }
        seen
    }

    #[test]
    fn gaussian_binom_matches_enumeration() {
        for n in 1..=5u32 {
            for l in 0..=n.min(3) {
                let count = enumerate_subspaces(n, l).len();
                assert_eq!(
                    gaussian_binom(n as u64, l as u64, 2).unwrap(),
                    BigUint::from(count),
                    "n={n} l={l}"
                );
            }
        }
    }

    #[test]
    fn binom_symmetry_and_pascal() {
        for q in [2u64, 3, 5] {
            for n in 1..=8u64 {
                for l in 0..=n {
                    let b = gaussian_binom(n, l, q).unwrap();
                    assert_eq!(b, gaussian_binom(n, n - l, q).unwrap());
                    if l >= 1 {
                        let lhs = gaussian_binom(n, l, q).unwrap();
                        let rhs = gaussian_binom(n - 1, l - 1, q).unwrap()
                            + qpow(q, l) * binom_or_zero(n as i64 - 1, l as i64, q);
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn binom_sandwich_bound() {
        for q in [2u64, 3] {
            for n in 2..=9u64 {
                for l in 1..n {
                    let b = gaussian_binom(n, l, q).unwrap();
                    let lo = qpow(q, l * (n - l));
                    let hi = BigUint::from(4u32) * &lo;
                    assert!(lo < b && b < hi, "q={q} n={n} l={l}");
                }
            }
        }
    }

    fn distance(a: &[u64], b: &[u64], width: u32) -> usize {
        let mut stacked: Vec<u64> = a.iter().chain(b.iter()).copied().collect();
        let sum = bit_rref(&mut stacked, width);
        2 * sum - a.len() - b.len()
    }

    #[test]
    fn shell_and_ball_match_enumeration() {
        // All 2-dim subspaces of F_2^4 against a fixed one.
        let all = enumerate_subspaces(4, 2);
        assert_eq!(all.len(), 35);
        let fixed: Vec<u64> = vec![0b0001, 0b0010];
        for t in 0..=4u64 {
            let count =
                all.iter().filter(|s| distance(&fixed, s, 4) == t as usize).count();
            assert_eq!(shell_count(2, 2, t, 4, 2), BigUint::from(count), "t={t}");
        }
        assert_eq!(ball_volume(2, 2, 4, 4, 2), BigUint::from(35u32));
        assert_eq!(ball_volume(2, 2, 0, 4, 2), BigUint::one());
        assert_eq!(shell_count(2, 2, 0, 4, 2), BigUint::one());
        // Odd n_r - n_t + t has no subspaces at that distance.
        assert_eq!(shell_count(3, 2, 2, 5, 2), BigUint::zero());

        // Mixed dimensions: 2-dim subspaces around a 3-dim one in F_2^5.
        let all2 = enumerate_subspaces(5, 2);
        assert_eq!(all2.len(), 155);
        let fixed3: Vec<u64> = vec![0b00001, 0b00010, 0b00100];
        for tau in 0..=5u64 {
            let count = all2
                .iter()
                .filter(|s| distance(&fixed3, s, 5) <= tau as usize)
                .count();
            assert_eq!(ball_volume(3, 2, tau, 5, 2), BigUint::from(count), "tau={tau}");
        }
        // Ball is the shell prefix sum.
        for tau in 0..=6u64 {
            let sum: BigUint = (0..=tau).map(|t| shell_count(3, 2, t, 5, 2)).sum();
            assert_eq!(ball_volume(3, 2, tau, 5, 2), sum);
        }
    }

    #[test]
    fn failure_bound_paper_values() {
        // k = 4, q^m = 512
        let b1 = failure_bound(4, 2, 9, 1);
        assert_eq!(b1.exact, BigRational::new(BigInt::from(1), BigInt::from(32)));
        assert_eq!(b1.float, 0.03125);
        let b2 = failure_bound(4, 2, 9, 2);
        assert_eq!(b2.exact, BigRational::new(BigInt::from(1), BigInt::from(4096)));
        assert_eq!(b2.float, 2.44140625e-4);
        let b3 = failure_bound(4, 2, 9, 3);
        assert_eq!(b3.exact, BigRational::new(BigInt::from(1), BigInt::from(524288)));
        assert_eq!(b3.float, 1.9073486328125e-6);
    }

    #[test]
    fn avg_list_bound_simulated_code() {
        let p = FSCodeParams::new(2, 9, 3, 3, 4, 2).unwrap();
        let b = avg_list_bound(&p, 5, 2).unwrap();
        assert_eq!(b.exponent, -39);
        let want = 32.0 * 2f64.powi(-39);
        assert!((b.excess - want).abs() < want * 1e-12);
        assert!((b.bound - (1.0 + want)).abs() < 1e-15);
        // The exact average is below the closed-form excess, as the chain of
        // inequalities in its derivation requires.
        assert!(b.lprime_exact < b.excess_exact);
        assert!(b.lprime < 1e-10);

        // tau beyond the radius is rejected.
        assert!(matches!(
            avg_list_bound(&p, 5, 3),
            Err(BoundsError::RadiusViolation { .. })
        ));
    }

    #[test]
    fn avg_list_exact_degenerate_ball() {
        // tau = 0 and n_r = n_t: the ball is the received subspace alone, so
        // L' = (q^{mk} - 1) / [N n_t]_q.
        let p = FSCodeParams::new(2, 9, 3, 3, 4, 2).unwrap();
        let b = avg_list_bound(&p, 3, 0).unwrap();
        let want = BigRational::new(
            BigInt::from(qpow(2, 36) - 1u32),
            BigInt::from(gaussian_binom(30, 3, 2).unwrap()),
        );
        assert_eq!(b.lprime_exact, want);
    }

    #[test]
    fn ratio_to_f64_handles_extreme_magnitudes() {
        let tiny = BigRational::new(BigInt::one(), BigInt::from(2).pow(200));
        assert!((ratio_to_f64(&tiny) - 2f64.powi(-200)).abs() < 1e-75);
        let huge = BigRational::new(BigInt::from(2).pow(300), BigInt::one());
        assert_eq!(ratio_to_f64(&huge), 2f64.powi(300));
        let third = BigRational::new(BigInt::from(1), BigInt::from(3));
        assert!((ratio_to_f64(&third) - 1.0 / 3.0).abs() < 1e-15);
    }
}
