//! Chinese remaindering and rational reconstruction.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::z_poly::crt_pair;
use crate::error::{Error, Result};

/// Combine residues modulo pairwise-distinct primes into the unique
/// representative in `[0, P)`, `P` the product of the primes. Returns
/// `(value, P)`.
pub fn crt_combine(residues: &[(u64, u64)]) -> Result<(BigInt, BigInt)> {
    let mut seen = std::collections::HashSet::new();
    for &(_, p) in residues {
        if !seen.insert(p) {
            return Err(Error::DuplicatePrime(p));
        }
    }
    let mut x = BigInt::zero();
    let mut m = BigInt::one();
    for &(r, p) in residues {
        let pb = BigInt::from(p);
        x = crt_pair(&x, &m, &BigInt::from(r % p), &pb);
        m *= pb;
        x = x.mod_floor(&m);
    }
    Ok((x, m))
}

/// Rational reconstruction: find a/b with |a| <= bound, 0 < b <= bound,
/// a = b * residue (mod modulus) and gcd(b, modulus) = 1, or `None` when the
/// Euclidean search yields no valid pair.
///
/// When `modulus > 2 * bound^2` the answer is unique if it exists; outside
/// that regime the function still returns a validated pair when the Euclidean
/// remainder sequence exposes one.
pub fn rational_reconstruct(
    residue: &BigInt,
    modulus: &BigInt,
    bound: &BigInt,
) -> Option<BigRational> {
    assert!(modulus > &BigInt::zero() && bound > &BigInt::zero());
    let x = residue.mod_floor(modulus);
    if x.is_zero() {
        return Some(BigRational::zero());
    }
    let (mut r0, mut r1) = (modulus.clone(), x);
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while &r1 > bound {
        let q = &r0 / &r1;
        let nr = &r0 - &q * &r1;
        (r0, r1) = (r1, nr);
        let nt = &t0 - &q * &t1;
        (t0, t1) = (t1, nt);
    }
    let (mut a, mut b) = (r1, t1);
    if b.is_negative() {
        a = -a;
        b = -b;
    }
    if b.is_zero() || &b > bound || &a.abs() > bound {
        return None;
    }
    if !b.gcd(modulus).is_one() {
        return None;
    }
    // The sequence invariant gives a = t * residue (mod modulus); re-check to
    // keep the contract independent of the search path.
    if (&a - &b * residue).mod_floor(modulus) != BigInt::zero() {
        return None;
    }
    Some(BigRational::new(a, b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::q_poly::rat;

    /// Exhaustive oracle over the full residue range.
    fn crt_oracle(residues: &[(u64, u64)]) -> Option<u64> {
        let m: u64 = residues.iter().map(|&(_, p)| p).product();
        (0..m).find(|&x| residues.iter().all(|&(r, p)| x % p == r % p))
    }

    #[test]
    fn crt_matches_exhaustive_scan() {
        let input = [(1u64, 3u64), (2, 5)];
        let (x, m) = crt_combine(&input).unwrap();
        assert_eq!(m, BigInt::from(15));
        assert_eq!(x, BigInt::from(crt_oracle(&input).unwrap()));
        assert_eq!(x, BigInt::from(7));
    }

    #[test]
    fn crt_single_and_constant() {
        let (x, m) = crt_combine(&[(0, 7)]).unwrap();
        assert_eq!((x, m), (BigInt::zero(), BigInt::from(7)));
        let (x, m) = crt_combine(&[(2, 3), (2, 5), (2, 7)]).unwrap();
        assert_eq!((x, m), (BigInt::from(2), BigInt::from(105)));
    }

    #[test]
    fn crt_duplicate_prime_rejected() {
        assert!(matches!(
            crt_combine(&[(1, 3), (2, 3)]),
            Err(Error::DuplicatePrime(3))
        ));
    }

    /// Exhaustive oracle: scan all |a| <= bound, 0 < b <= bound.
    fn rr_oracle(residue: i64, modulus: i64, bound: i64) -> Option<BigRational> {
        for b in 1..=bound {
            for a in -bound..=bound {
                if (a - b * residue).rem_euclid(modulus) == 0
                    && num_integer::gcd(b, modulus) == 1
                {
                    return Some(rat(a, b));
                }
            }
        }
        None
    }

    #[test]
    fn reconstruct_one_half_mod_101() {
        // residue of 1/2 mod 101 is 51
        let got = rational_reconstruct(&BigInt::from(51), &BigInt::from(101), &BigInt::from(10));
        assert_eq!(got, Some(rat(1, 2)));
        assert_eq!(got, rr_oracle(51, 101, 10));
    }

    #[test]
    fn reconstruct_zero() {
        let got = rational_reconstruct(&BigInt::zero(), &BigInt::from(101), &BigInt::from(3));
        assert_eq!(got, Some(BigRational::zero()));
    }

    #[test]
    fn reconstruct_small_bound_matches_scan() {
        // The exhaustive scan finds -1/2 here (2*50 = 100 = -1 mod 101), and
        // the Euclidean search agrees.
        let got = rational_reconstruct(&BigInt::from(50), &BigInt::from(101), &BigInt::from(3));
        assert_eq!(rr_oracle(50, 101, 3), Some(rat(-1, 2)));
        assert_eq!(got, Some(rat(-1, 2)));
    }

    #[test]
    fn reconstruct_none_when_no_pair() {
        // bound 1: need a = b*residue with a,b in {-1,0,1}; none works for 50.
        let got = rational_reconstruct(&BigInt::from(50), &BigInt::from(101), &BigInt::one());
        assert_eq!(rr_oracle(50, 101, 1), None);
        assert_eq!(got, None);
    }

    #[test]
    fn reconstruct_random_roundtrip() {
        // a/b mod P recovers a/b whenever |a|, b <= bound and P > 2*bound^2.
        let p = BigInt::from(1000003);
        let bound = BigInt::from(700); // 2*700^2 < 1000003
        for a in [-700i64, -123, -1, 1, 17, 699] {
            for b in [1i64, 2, 7, 700] {
                if num_integer::gcd(a.unsigned_abs(), b as u64) != 1 {
                    continue;
                }
                let binv = BigInt::from(b).modinv(&p).unwrap();
                let residue = (BigInt::from(a) * binv).mod_floor(&p);
                let got = rational_reconstruct(&residue, &p, &bound);
                assert_eq!(got, Some(rat(a, b)), "a={a} b={b}");
            }
        }
    }
}
