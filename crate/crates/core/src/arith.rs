//! Small integer helpers shared across the crate.

pub fn gcd(a: u64, b: u64) -> u64 {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// `base^exp mod modulus` for u64 values, widening through u128.
pub fn mod_pow(base: u64, exp: u64, modulus: u64) -> u64 {
    if modulus == 1 {
        return 0;
    }
    let mut result: u128 = 1;
    let mut base = (base % modulus) as u128;
    let mut exp = exp;
    let m = modulus as u128;
    while exp > 0 {
        if exp & 1 == 1 {
            result = result * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    result as u64
}

/// Multiplicative order of `a` modulo `n`; requires gcd(a, n) = 1.
pub fn mult_order(a: u64, n: u64) -> u64 {
    assert!(n >= 1 && gcd(a % n.max(1), n) == 1 || n == 1);
    if n == 1 {
        return 1;
    }
    let mut t = 1u64;
    let mut x = a % n;
    while x != 1 {
        x = x * (a % n) % n;
        t += 1;
    }
    t
}

/// Inverse of `a` modulo `n` (n small), None if gcd != 1.
pub fn mod_inv(a: u64, n: u64) -> Option<u64> {
    let a = a % n;
    if gcd(a, n) != 1 {
        return None;
    }
    // extended Euclid on i128 to dodge sign juggling
    let (mut r0, mut r1) = (n as i128, a as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    debug_assert_eq!(r0, 1);
    Some(s0.rem_euclid(n as i128) as u64)
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Trial-division factorization, returned as (prime, exponent) pairs.
pub fn factor(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Writes `q = p^s` with p prime, or None if q is not a prime power.
pub fn prime_power_split(q: u64) -> Option<(u64, usize)> {
    let f = factor(q);
    if f.len() == 1 {
        Some((f[0].0, f[0].1 as usize))
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mod_pow_small() {
        assert_eq!(mod_pow(2, 10, 1000), 24);
        assert_eq!(mod_pow(3, 0, 7), 1);
    }

    #[test]
    fn order_and_inverse() {
        assert_eq!(mult_order(2, 7), 3);
        assert_eq!(mult_order(3, 7), 6);
        assert_eq!(mod_inv(3, 7), Some(5));
        assert_eq!(mod_inv(2, 4), None);
    }

    #[test]
    fn factor_split() {
        assert_eq!(factor(360), vec![(2, 3), (3, 2), (5, 1)]);
        assert_eq!(prime_power_split(8), Some((2, 3)));
        assert_eq!(prime_power_split(9), Some((3, 2)));
        assert_eq!(prime_power_split(12), None);
    }
}
