//! Small integer number-theory helpers shared across the crate.

/// Greatest common divisor.
pub fn gcd(a: u64, b: u64) -> u64 {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Least common multiple. Panics on overflow, which cannot happen for the
/// group sizes this crate supports (v <= ~10^4).
pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        return 0;
    }
    a / gcd(a, b) * b
}

/// Floor of the square root.
pub fn isqrt(n: u64) -> u64 {
    if n == 0 {
        return 0;
    }
    let mut x = (n as f64).sqrt() as u64;
    while x > 0 && x * x > n {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= n {
        x += 1;
    }
    x
}

/// `Some(s)` with `s >= 0` and `s*s == n`, if `n` is a perfect square.
pub fn perfect_sqrt(n: i64) -> Option<i64> {
    if n < 0 {
        return None;
    }
    let s = isqrt(n as u64) as i64;
    (s * s == n).then_some(s)
}

/// Modular exponentiation with u128 intermediates.
pub fn pow_mod(base: u64, exp: u64, modulus: u64) -> u64 {
    debug_assert!(modulus > 0);
    if modulus == 1 {
        return 0;
    }
    let mut result: u128 = 1;
    let mut b: u128 = (base % modulus) as u128;
    let mut e = exp;
    let m = modulus as u128;
    while e > 0 {
        if e & 1 == 1 {
            result = result * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    result as u64
}

/// Multiplicative order of `a` modulo `m`; requires gcd(a, m) == 1.
pub fn mult_order(a: u64, m: u64) -> u64 {
    debug_assert_eq!(gcd(a % m, m), 1);
    let mut x = a % m;
    let mut ord = 1;
    while x != 1 % m {
        x = x * (a % m) % m;
        ord += 1;
    }
    ord
}

/// Deterministic primality by trial division; adequate for the v <= ~10^6
/// range this crate works in.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    if n.is_multiple_of(3) {
        return n == 3;
    }
    let mut d = 5;
    while d * d <= n {
        if n.is_multiple_of(d) || n.is_multiple_of(d + 2) {
            return false;
        }
        d += 6;
    }
    true
}

/// Prime factorization as (prime, multiplicity) pairs in increasing order.
pub fn factorize(n: u64) -> Vec<(u64, u32)> {
    let mut n = n;
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
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

/// `Some((p, k))` if `n == p^k` for a prime `p` and `k >= 1`.
pub fn prime_power(n: u64) -> Option<(u64, u32)> {
    let f = factorize(n);
    match f.as_slice() {
        [(p, k)] => Some((*p, *k)),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gcd_lcm_basics() {
        assert_eq!(gcd(12, 18), 6);
        assert_eq!(gcd(7, 0), 7);
        assert_eq!(lcm(4, 6), 12);
        assert_eq!(lcm(2, 3), 6);
    }

    #[test]
    fn isqrt_edges() {
        for n in 0..2000u64 {
            let s = isqrt(n);
            assert!(s * s <= n && (s + 1) * (s + 1) > n, "n={n}");
        }
        assert_eq!(perfect_sqrt(49), Some(7));
        assert_eq!(perfect_sqrt(68), None);
        assert_eq!(perfect_sqrt(-4), None);
        assert_eq!(perfect_sqrt(0), Some(0));
    }

    #[test]
    fn orders_and_powers() {
        assert_eq!(pow_mod(7, 3, 19), 1); // 7 has order 3 mod 19
        assert_eq!(mult_order(7, 19), 3);
        assert_eq!(mult_order(11, 19), 3);
        assert_eq!(mult_order(2, 29), 28); // 2 is a primitive root mod 29
        assert_eq!(mult_order(3, 55), 20);
    }

    #[test]
    fn primality_and_factoring() {
        let primes: Vec<u64> = (0..60).filter(|&n| is_prime(n)).collect();
        assert_eq!(
            primes,
            vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]
        );
        assert_eq!(factorize(360), vec![(2, 3), (3, 2), (5, 1)]);
        assert_eq!(prime_power(27), Some((3, 3)));
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(7), Some((7, 1)));
    }
}
