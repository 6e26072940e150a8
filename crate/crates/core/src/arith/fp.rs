//! Scalar arithmetic modulo a machine-word prime p < 2^62.
//!
//! Residues are `u64` values in `[0, p)`. Products go through `u128`, so any
//! p below 2^62 is safe without Montgomery tricks.

pub const MAX_PRIME: u64 = 1 << 62;

#[inline]
pub fn add(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

#[inline]
pub fn sub(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

#[inline]
pub fn neg(a: u64, p: u64) -> u64 {
    if a == 0 {
        0
    } else {
        p - a
    }
}

#[inline]
pub fn mul(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn pow(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul(acc, base, p);
        }
        base = mul(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Multiplicative inverse via the extended Euclidean algorithm.
/// Returns `None` when `gcd(a, p) != 1` (only possible for a = 0 with p prime).
pub fn inv(a: u64, p: u64) -> Option<u64> {
    if a == 0 {
        return None;
    }
    let (mut r0, mut r1) = (p as i128, a as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 != 1 {
        return None;
    }
    let t = t0.rem_euclid(p as i128);
    Some(t as u64)
}

/// Reduce a signed value into `[0, p)`.
#[inline]
pub fn from_i64(v: i64, p: u64) -> u64 {
    let r = v % p as i64;
    if r < 0 {
        (r + p as i64) as u64
    } else {
        r as u64
    }
}

/// Deterministic primality test, exact for all u64 (Miller-Rabin with the
/// standard witness set).
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == q {
            return true;
        }
        if n.is_multiple_of(q) {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mul(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Smallest prime strictly greater than `n`.
pub fn next_prime(mut n: u64) -> u64 {
    loop {
        n += 1;
        if is_prime(n) {
            return n;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_roundtrip() {
        let p = 101;
        for a in 1..p {
            let b = inv(a, p).unwrap();
            assert_eq!(mul(a, b, p), 1);
        }
        assert_eq!(inv(0, p), None);
    }

    #[test]
    fn primes() {
        assert!(is_prime(2));
        assert!(is_prime(23));
        assert!(!is_prime(25));
        assert!(is_prime(4611686018427387847)); // large prime below 2^62
        assert_eq!(next_prime(20), 23);
        assert_eq!(next_prime(4), 5);
    }
}
