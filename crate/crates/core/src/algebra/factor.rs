//! Small integer number theory: deterministic 64-bit primality and factoring.
//!
//! Used once per field construction to factor `q^m - 1` for the primitivity
//! test of the modulus root. Inputs stay below 2^61 so the deterministic
//! Miller-Rabin base set is sufficient.

fn mul_mod(a: u64, b: u64, n: u64) -> u64 {
    ((a as u128 * b as u128) % n as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, n: u64) -> u64 {
    let mut r = 1u64 % n;
    a %= n;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, n);
        }
        a = mul_mod(a, a, n);
        e >>= 1;
    }
    r
}

/// Deterministic Miller-Rabin for u64 (base set valid for all n < 2^64).
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d & 1 == 0 {
        d >>= 1;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Pollard rho (Brent variant) for a nontrivial factor of composite odd n.
fn pollard_rho(n: u64) -> u64 {
    if n.is_multiple_of(2) {
        return 2;
    }
    let mut c = 1u64;
    loop {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let mut x = 2u64;
        let mut y = 2u64;
        let mut d = 1u64;
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = gcd(x.abs_diff(y), n);
        }
        if d != n {
            return d;
        }
        c += 1;
    }
}

/// Distinct prime factors of n, ascending. `factorize(1)` is empty.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    for p in [2u64, 3, 5] {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
    }
    let mut stack = Vec::new();
    if n > 1 {
        stack.push(n);
    }
    while let Some(v) = stack.pop() {
        if v == 1 {
            continue;
        }
        if is_prime(v) {
            if !out.contains(&v) {
                out.push(v);
            }
            continue;
        }
        // Peel small factors first; rho handles the rest.
        let mut v = v;
        let mut small = 7u64;
        let mut found_small = false;
        while small * small <= v && small < 10_000 {
            if v % small == 0 {
                if !out.contains(&small) {
                    out.push(small);
                }
                while v % small == 0 {
                    v /= small;
                }
                found_small = true;
                break;
            }
            small += 2;
        }
        if found_small {
            stack.push(v);
            continue;
        }
        let d = pollard_rho(v);
        stack.push(d);
        stack.push(v / d);
    }
    out.sort_unstable();
    out
}
