//! Small number-theory helpers on machine integers.

use serde::Serialize;

use super::ArithError;

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let (mut old_r, mut r) = (a as i128 % m as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(m as i128) as u64)
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    // Deterministic Miller-Rabin for 64-bit inputs.
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
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

pub fn is_squarefree(n: u64) -> bool {
    if n == 0 {
        return false;
    }
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            m /= p;
            if m.is_multiple_of(p) {
                return false;
            }
        }
        p += 1;
    }
    true
}

/// Trial-division factorization with divisors up to `bound`. Returns the
/// prime factors found (with multiplicity) and the unfactored cofactor,
/// which is 1 when the factorization is complete.
pub fn trial_factor(mut n: u128, bound: u64) -> (Vec<(u128, u32)>, u128) {
    let mut out = Vec::new();
    let mut push = |p: u128, n: &mut u128| {
        let mut e = 0;
        while (*n).is_multiple_of(p) {
            *n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
    };
    push(2, &mut n);
    push(3, &mut n);
    let mut p: u128 = 5;
    while p <= bound as u128 && p * p <= n {
        push(p, &mut n);
        push(p + 2, &mut n);
        p += 6;
    }
    if n > 1 && (p * p > n) {
        out.push((n, 1));
        n = 1;
    }
    (out, n)
}

pub fn sigma(k: u32, n: u64) -> num_bigint::BigInt {
    let mut acc = num_bigint::BigInt::from(0);
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            acc += num_bigint::BigInt::from(d).pow(k);
            let e = n / d;
            if e != d {
                acc += num_bigint::BigInt::from(e).pow(k);
            }
        }
        d += 1;
    }
    acc
}

pub fn mobius(mut n: u64) -> i64 {
    let mut sign = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

/// Kronecker symbol `(a / n)` for `n >= 1`.
pub fn kronecker(a: i64, n: u64) -> i32 {
    if n == 0 {
        return if a.abs() == 1 { 1 } else { 0 };
    }
    let mut n = n;
    let mut result = 1i32;
    while n.is_multiple_of(2) {
        n /= 2;
        if a % 2 == 0 {
            return 0;
        }
        let r = a.rem_euclid(8);
        if r == 3 || r == 5 {
            result = -result;
        }
    }
    // Jacobi symbol for odd n.
    let mut a = a.rem_euclid(n as i64) as u64;
    while a != 0 {
        while a.is_multiple_of(2) {
            a /= 2;
            let r = n % 8;
            if r == 3 || r == 5 {
                result = -result;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            result = -result;
        }
        a %= n;
    }
    if n == 1 {
        result
    } else {
        0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Splitting {
    Split,
    Inert,
    Ramified,
}

/// Decomposition of the odd prime `p` in the quadratic field of
/// discriminant (or radicand) `disc`.
pub fn is_split(disc: i64, p: u64) -> Result<Splitting, ArithError> {
    if p == 2 || !is_prime(p) {
        return Err(ArithError::NotOddPrime(p));
    }
    Ok(match kronecker(disc, p) {
        1 => Splitting::Split,
        -1 => Splitting::Inert,
        _ => Splitting::Ramified,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn splitting_examples() {
        assert_eq!(is_split(-4, 5).unwrap(), Splitting::Split);
        assert_eq!(is_split(-7, 11).unwrap(), Splitting::Split);
        // 13 is inert in Q(sqrt 7) and in Q(sqrt -7)
        assert_eq!(is_split(28, 13).unwrap(), Splitting::Inert);
        assert_eq!(is_split(-7, 13).unwrap(), Splitting::Inert);
        assert_eq!(is_split(-7, 7).unwrap(), Splitting::Ramified);
        assert_eq!(is_split(-4, 3).unwrap(), Splitting::Inert);
        assert!(is_split(-4, 9).is_err());
        assert!(is_split(-4, 2).is_err());
    }

    #[test]
    fn kronecker_matches_euler_criterion() {
        for p in [3u64, 5, 7, 11, 13, 17, 19, 23] {
            for a in -40i64..40 {
                let e = pow_mod(a.rem_euclid(p as i64) as u64, (p - 1) / 2, p);
                let expect = if e == 0 {
                    0
                } else if e == 1 {
                    1
                } else {
                    -1
                };
                assert_eq!(kronecker(a, p), expect, "({a}/{p})");
            }
        }
        assert_eq!(kronecker(-4, 2), 0);
        assert_eq!(kronecker(5, 2), -1);
        assert_eq!(kronecker(-7, 2), 1);
    }

    #[test]
    fn factoring_printed_norms() {
        let (f, rest) = trial_factor(5121, 1000);
        assert_eq!(rest, 1);
        assert_eq!(f, vec![(3, 2), (569, 1)]);
        let (f, _) = trial_factor(2764125, 1000);
        assert_eq!(f, vec![(3, 5), (5, 3), (7, 1), (13, 1)]);
    }

    #[test]
    fn small_helpers() {
        assert_eq!(inv_mod(57, 125), Some(68));
        assert_eq!(inv_mod(5, 25), None);
        assert!(is_prime(1801) && !is_prime(5121));
        assert!(is_squarefree(7) && !is_squarefree(12));
        assert_eq!(sigma(1, 9), 13.into());
        assert_eq!(mobius(30), -1);
        assert_eq!(mobius(12), 0);
    }
}
