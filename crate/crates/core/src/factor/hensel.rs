//! Multifactor Hensel lifting: a factorization of monic f modulo p is lifted
//! to a factorization modulo p^a by recursive two-way splits, each split
//! lifted quadratically.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::arith::fp_poly::FpPoly;
use crate::arith::z_poly::ZPoly;
use crate::error::{Error, Result};

fn red(a: &ZPoly, m: &BigInt) -> ZPoly {
    ZPoly::new(a.coeffs.iter().map(|c| c.mod_floor(m)).collect())
}

fn mul_m(a: &ZPoly, b: &ZPoly, m: &BigInt) -> ZPoly {
    red(&a.mul(b), m)
}

fn sub_m(a: &ZPoly, b: &ZPoly, m: &BigInt) -> ZPoly {
    red(&a.sub(b), m)
}

fn add_m(a: &ZPoly, b: &ZPoly, m: &BigInt) -> ZPoly {
    red(&a.add(b), m)
}

/// Division with remainder modulo m by a monic divisor.
fn divrem_monic_m(a: &ZPoly, div: &ZPoly, m: &BigInt) -> (ZPoly, ZPoly) {
    debug_assert!(div.is_monic());
    let dd = div.degree().unwrap();
    let a = red(a, m);
    if a.degree().is_none_or(|d| d < dd) {
        return (ZPoly::zero(), a);
    }
    let mut rem = a.coeffs.clone();
    let mut quot = vec![BigInt::zero(); rem.len() - dd];
    for i in (dd..rem.len()).rev() {
        let q = rem[i].mod_floor(m);
        if q.is_zero() {
            continue;
        }
        quot[i - dd] = q.clone();
        for (j, dc) in div.coeffs.iter().enumerate() {
            let t = (&q * dc).mod_floor(m);
            rem[i - dd + j] = (&rem[i - dd + j] - t).mod_floor(m);
        }
    }
    rem.truncate(dd);
    (ZPoly::new(quot), ZPoly::new(rem))
}

fn lift_fp(a: &FpPoly) -> ZPoly {
    ZPoly::new(a.coeffs.iter().map(|&c| BigInt::from(c)).collect())
}

/// One two-factor lift: from f = g*h (mod p), with Bezout data mod p, up to
/// modulus >= p^a, following the classical quadratic iteration.
fn lift_pair(f: &ZPoly, g0: &FpPoly, h0: &FpPoly, p: u64, a: u32) -> (ZPoly, ZPoly) {
    let (gg, s0, t0) = g0.xgcd(h0);
    debug_assert!(gg.is_one());
    let target: BigInt = BigInt::from(p).pow(a);
    let mut m = BigInt::from(p);
    let mut g = lift_fp(g0);
    let mut h = lift_fp(h0);
    let mut s = lift_fp(&s0);
    let mut t = lift_fp(&t0);
    while m < target {
        let m2 = &m * &m;
        let e = sub_m(f, &g.mul(&h), &m2);
        let (q, r) = divrem_monic_m(&s.mul(&e), &h, &m2);
        g = red(&add_m(&g, &t.mul(&e), &m2).add(&mul_m(&q, &g, &m2)), &m2);
        h = add_m(&h, &r, &m2);
        let b = sub_m(&add_m(&s.mul(&g), &t.mul(&h), &m2), &ZPoly::one(), &m2);
        let (c, d) = divrem_monic_m(&s.mul(&b), &h, &m2);
        s = sub_m(&s, &d, &m2);
        t = red(&t.sub(&mul_m(&t, &b, &m2)).sub(&mul_m(&c, &g, &m2)), &m2);
        m = m2;
    }
    (red(&g, &target), red(&h, &target))
}

fn lift_rec(f: &ZPoly, factors: &[FpPoly], p: u64, a: u32, out: &mut Vec<ZPoly>) {
    if factors.len() == 1 {
        out.push(f.clone());
        return;
    }
    let mid = factors.len() / 2;
    let (left, right) = factors.split_at(mid);
    let g0 = left.iter().fold(FpPoly::one(p), |acc, x| acc.mul(x));
    let h0 = right.iter().fold(FpPoly::one(p), |acc, x| acc.mul(x));
    let (g, h) = lift_pair(f, &g0, &h0, p, a);
    lift_rec(&g, left, p, a, out);
    lift_rec(&h, right, p, a, out);
}

/// Lift monic pairwise-coprime factors of monic f from mod p to mod p^a.
/// Each returned factor is monic with coefficients in [0, p^a), congruent to
/// its input mod p, and the product is f mod p^a.
pub fn hensel_lift(f: &ZPoly, factors: &[FpPoly], p: u64, a: u32) -> Result<Vec<ZPoly>> {
    assert!(f.is_monic());
    assert!(a >= 1);
    assert!(!factors.is_empty());
    for fac in factors {
        if !fac.is_monic() {
            return Err(Error::Internal("hensel factors must be monic".into()));
        }
    }
    for i in 0..factors.len() {
        for j in i + 1..factors.len() {
            if !factors[i].gcd(&factors[j]).is_one() {
                return Err(Error::Internal(
                    "hensel factors must be pairwise coprime mod p".into(),
                ));
            }
        }
    }
    let prod = factors.iter().fold(FpPoly::one(p), |acc, x| acc.mul(x));
    if prod != f.reduce_mod(p) {
        return Err(Error::Internal(
            "hensel factor product does not match f mod p".into(),
        ));
    }
    let target: BigInt = BigInt::from(p).pow(a);
    let mut out = vec![];
    lift_rec(&red(f, &target), factors, p, a, &mut out);
    Ok(out)
}
