//! Small-integer number theory used by constructors and recognizers.

use num_integer::Integer;

pub fn gcd(a: usize, b: usize) -> usize {
    a.gcd(&b)
}

pub fn lcm(a: usize, b: usize) -> usize {
    a.lcm(&b)
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Prime factorization as ascending (prime, exponent) pairs.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
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

/// `Some((p, k))` when `n = p^k` with `k >= 1`.
pub fn prime_power(n: u64) -> Option<(u64, u32)> {
    match factorize(n).as_slice() {
        [(p, k)] => Some((*p, *k)),
        _ => None,
    }
}

/// True iff `n` is a power of `p` (including `p^0 = 1`).
pub fn is_power_of(mut n: u64, p: u64) -> bool {
    while n > 1 {
        if !n.is_multiple_of(p) {
            return false;
        }
        n /= p;
    }
    n == 1
}

pub fn pow_mod(base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut b = base % m;
    let mut acc = 1 % m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc
}

/// Multiplicative order of `t` modulo `m`, if `gcd(t, m) = 1`.
pub fn mult_order(t: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(1);
    }
    if (t % m).gcd(&m) != 1 {
        return None;
    }
    let mut x = t % m;
    let mut k = 1;
    while x != 1 {
        x = x * t % m;
        k += 1;
    }
    Some(k)
}

/// Modular inverse of `t` modulo `m` (requires `gcd(t, m) = 1`).
pub fn inv_mod(t: u64, m: u64) -> Option<u64> {
    let k = mult_order(t, m)?;
    Some(pow_mod(t, k - 1, m))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorization() {
        assert_eq!(factorize(1), vec![]);
        assert_eq!(factorize(360), vec![(2, 3), (3, 2), (5, 1)]);
        assert_eq!(prime_power(27), Some((3, 3)));
        assert_eq!(prime_power(12), None);
        assert!(is_prime(97));
        assert!(!is_prime(91));
        assert!(is_power_of(1, 5));
        assert!(is_power_of(125, 5));
        assert!(!is_power_of(10, 5));
    }

    #[test]
    fn modular() {
        assert_eq!(mult_order(2, 7), Some(3));
        assert_eq!(mult_order(2, 4), None);
        assert_eq!(inv_mod(4, 9), Some(7));
        assert_eq!(pow_mod(3, 4, 5), 1);
    }
}
