//! Small-integer number theory helpers shared across the crate.
//!
//! Everything here works on `u64` at desk scale (trial division is fine for
//! the field sizes this crate targets).

/// Deterministic primality test by trial division.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Prime factorization as `(prime, exponent)` pairs, ascending.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            let mut e = 0u32;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Writes `q` as `p^n` for prime `p`, if possible.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    let f = factorize(q);
    if f.len() == 1 {
        Some(f[0])
    } else {
        None
    }
}

/// All positive divisors of `n`, ascending.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut divs = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            divs.push(d);
            if d != n / d {
                divs.push(n / d);
            }
        }
        d += 1;
    }
    divs.sort_unstable();
    divs
}

/// Euler's totient.
pub fn euler_phi(n: u64) -> u64 {
    let mut phi = n;
    for (p, _) in factorize(n) {
        phi = phi / p * (p - 1);
    }
    phi
}

pub fn gcd(a: u64, b: u64) -> u64 {
    num_integer::gcd(a, b)
}

pub fn lcm(a: u64, b: u64) -> u64 {
    num_integer::lcm(a, b)
}

/// `a * b mod m` without overflow.
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    (a as u128 * b as u128 % m as u128) as u64
}

/// Deterministic Miller-Rabin primality for u64 (fixed witness set).
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = mod_pow(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// `base^exp mod m` for `m` small enough that `m^2` fits in `u128`.
pub fn mod_pow(mut base: u64, mut exp: u64, m: u64) -> u64 {
    assert!(m > 0);
    let mut acc = 1u64 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = ((acc as u128 * base as u128) % m as u128) as u64;
        }
        base = ((base as u128 * base as u128) % m as u128) as u64;
        exp >>= 1;
    }
    acc
}

/// Inverse of `a` modulo prime `p`.
pub fn mod_inv(a: u64, p: u64) -> u64 {
    debug_assert!(a % p != 0);
    mod_pow(a, p - 2, p)
}

/// Reduces a signed exponent into `[0, modulus)`.
pub fn norm_exp(e: i64, modulus: u64) -> u64 {
    debug_assert!(modulus > 0);
    e.rem_euclid(modulus as i64) as u64
}

/// Binomial coefficient mod prime `p` by Lucas' theorem.
///
/// Works digit by digit in base `p`; a zero digit-binomial corresponds to a
/// positive p-adic valuation of C(n, k), so the result is 0 exactly when
/// p | C(n, k).
pub fn binomial_mod_p(mut n: u64, mut k: u64, p: u64) -> u64 {
    if k > n {
        return 0;
    }
    let mut acc = 1u64;
    while n > 0 || k > 0 {
        let (nd, kd) = (n % p, k % p);
        if kd > nd {
            return 0;
        }
        acc = acc * small_binomial_mod_p(nd, kd, p) % p;
        n /= p;
        k /= p;
    }
    acc
}

/// C(n, k) mod p for n, k < p.
fn small_binomial_mod_p(n: u64, k: u64, p: u64) -> u64 {
    let k = k.min(n - k);
    if k == 0 {
        return 1;
    }
    let mut num = 1u64;
    let mut den = 1u64;
    for i in 0..k {
        num = num * (n - i) % p;
        den = den * (i + 1) % p;
    }
    num * mod_inv(den, p) % p
}

/// `((p-1)/2)! mod p` by direct product.
pub fn half_factorial_mod_p(p: u64) -> u64 {
    let mut acc = 1u64;
    for i in 2..=(p - 1) / 2 {
        acc = acc * i % p;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality_small() {
        let primes: Vec<u64> = (0..40).filter(|&n| is_prime(n)).collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37]);
    }

    #[test]
    fn factorize_and_phi() {
        assert_eq!(factorize(720), vec![(2, 4), (3, 2), (5, 1)]);
        assert_eq!(euler_phi(1), 1);
        assert_eq!(euler_phi(12), 4);
        assert_eq!(euler_phi(80), 32);
        assert_eq!(prime_power(81), Some((3, 4)));
        assert_eq!(prime_power(12), None);
    }

    #[test]
    fn divisor_list() {
        assert_eq!(divisors(28), vec![1, 2, 4, 7, 14, 28]);
    }

    #[test]
    fn modular_ops() {
        assert_eq!(mod_pow(3, 6, 7), 1);
        assert_eq!(mod_inv(3, 7) * 3 % 7, 1);
        assert_eq!(norm_exp(-1, 6), 5);
        assert_eq!(norm_exp(13, 6), 1);
    }

    #[test]
    fn lucas_binomials() {
        // C(10, 3) = 120
        assert_eq!(binomial_mod_p(10, 3, 7), 120 % 7);
        // p | C(p, 1)
        assert_eq!(binomial_mod_p(7, 1, 7), 0);
        // Oracle: exact u128 binomials reduced mod p.
        for n in 0..30u64 {
            for k in 0..=n {
                let mut exact: u128 = 1;
                for i in 0..k {
                    exact = exact * (n - i) as u128 / (i + 1) as u128;
                }
                for &p in &[3u64, 5, 7, 13] {
                    assert_eq!(
                        binomial_mod_p(n, k, p),
                        (exact % p as u128) as u64,
                        "C({n},{k}) mod {p}"
                    );
                }
            }
        }
    }

    #[test]
    fn half_factorial() {
        // 3! = 6 mod 7
        assert_eq!(half_factorial_mod_p(7), 6);
        // 5! = 120 = 10 mod 11
        assert_eq!(half_factorial_mod_p(11), 10);
    }

    #[test]
    fn miller_rabin_agrees_with_trial_division() {
        for n in 0..5000u64 {
            assert_eq!(is_prime_u64(n), is_prime(n), "n = {n}");
        }
        assert!(is_prime_u64((1 << 61) - 1)); // Mersenne prime
        assert!(!is_prime_u64(u64::MAX)); // 2^64 - 1 = 3 * 5 * 17 * ...
    }
}
