//! Complete factorization over F_p: squarefree decomposition, then
//! distinct-degree splitting, then Cantor-Zassenhaus equal-degree splitting.

use num_bigint::BigUint;
use num_traits::One;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::arith::fp_poly::FpPoly;

/// Irreducible factorization of a nonzero polynomial over F_p, returned as
/// (monic irreducible, multiplicity) pairs in a deterministic order. The unit
/// leading coefficient is dropped; constants factor into nothing.
pub fn factor_mod_p(g: &FpPoly) -> Vec<(FpPoly, usize)> {
    assert!(!g.is_zero(), "cannot factor the zero polynomial");
    if g.degree() == Some(0) {
        return vec![];
    }
    let monic = g.make_monic();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5EED_F00D ^ g.p);
    let mut out = vec![];
    for (part, mult) in squarefree_decomposition(&monic) {
        for (prod, d) in distinct_degree(&part) {
            for irred in equal_degree(&prod, d, &mut rng) {
                out.push((irred, mult));
            }
        }
    }
    out.sort_by_key(|a| poly_key(&a.0));
    out
}

fn poly_key(f: &FpPoly) -> (usize, Vec<u64>) {
    (f.coeffs.len(), f.coeffs.clone())
}

/// Coefficient-wise p-th root of a polynomial with zero derivative
/// (all exponents divisible by p; over F_p the coefficients are fixed by
/// Frobenius).
fn pth_root(f: &FpPoly) -> FpPoly {
    let p = f.p as usize;
    let coeffs = f.coeffs.iter().step_by(p).copied().collect();
    FpPoly::new(f.p, coeffs)
}

/// Monic squarefree decomposition in characteristic p.
fn squarefree_decomposition(f: &FpPoly) -> Vec<(FpPoly, usize)> {
    debug_assert!(f.is_monic());
    let mut out = vec![];
    sff_into(f, 1, &mut out);
    out
}

fn sff_into(f: &FpPoly, outer_mult: usize, out: &mut Vec<(FpPoly, usize)>) {
    let deriv = f.derivative();
    if deriv.is_zero() {
        // f = u(t^p); recurse on the p-th root with multiplicity scaled by p.
        if f.degree() == Some(0) {
            return;
        }
        sff_into(&pth_root(f), outer_mult * f.p as usize, out);
        return;
    }
    let mut c = f.gcd(&deriv);
    let mut w = f.divrem(&c).0;
    let mut i = 1usize;
    while !w.is_one() {
        let y = w.gcd(&c);
        let fac = w.divrem(&y).0;
        if !fac.is_one() {
            out.push((fac, outer_mult * i));
        }
        w = y;
        c = c.divrem(&w).0;
        i += 1;
    }
    if !c.is_one() {
        sff_into(&pth_root(&c), outer_mult * f.p as usize, out);
    }
}

/// Split a monic squarefree polynomial into (product, d) pairs where each
/// product collects the irreducible factors of degree exactly d.
fn distinct_degree(f: &FpPoly) -> Vec<(FpPoly, usize)> {
    let p = f.p;
    let mut out = vec![];
    let mut rest = f.clone();
    let mut h = FpPoly::x(p).rem(&rest);
    let mut d = 0usize;
    while rest.degree().is_some_and(|deg| deg >= 2 * (d + 1)) {
        d += 1;
        h = h.pow_mod(p, &rest);
        let diff = h.sub(&FpPoly::x(p));
        let g = rest.gcd(&diff);
        if g.degree().is_some_and(|dg| dg > 0) {
            out.push((g.clone(), d));
            rest = rest.divrem(&g).0;
            h = h.rem(&rest);
        }
    }
    if rest.degree().is_some_and(|dg| dg > 0) {
        let dg = rest.degree().unwrap();
        out.push((rest, dg));
    }
    out
}

/// Cantor-Zassenhaus equal-degree splitting of a monic squarefree product of
/// irreducibles all of degree d.
fn equal_degree(f: &FpPoly, d: usize, rng: &mut ChaCha8Rng) -> Vec<FpPoly> {
    let deg = f.degree().unwrap();
    if deg == d {
        return vec![f.clone()];
    }
    let p = f.p;
    loop {
        let a = FpPoly::random(p, deg, rng);
        if a.degree().is_none_or(|da| da == 0) {
            continue;
        }
        let g1 = f.gcd(&a);
        if g1.degree().is_some_and(|dg| dg > 0 && dg < deg) {
            let rest = f.divrem(&g1).0;
            let mut out = equal_degree(&g1, d, rng);
            out.extend(equal_degree(&rest, d, rng));
            return out;
        }
        let b = if p == 2 {
            // Trace map a + a^2 + ... + a^(2^(d-1)) splits over F_2.
            let mut acc = a.clone();
            let mut t = a.clone();
            for _ in 1..d {
                t = t.mul(&t).rem(f);
                acc = acc.add(&t).rem(f);
            }
            acc
        } else {
            // a^((p^d - 1)/2) - 1 vanishes on about half the factors.
            let e = (BigUint::from(p).pow(d as u32) - BigUint::one()) / BigUint::from(2u32);
            let bits: Vec<bool> = (0..e.bits()).map(|i| e.bit(i)).collect();
            a.pow_mod_bits(&bits, f).sub(&FpPoly::one(p))
        };
        let g = f.gcd(&b);
        if g.degree().is_some_and(|dg| dg > 0 && dg < deg) {
            let rest = f.divrem(&g).0;
            let mut out = equal_degree(&g, d, rng);
            out.extend(equal_degree(&rest, d, rng));
            return out;
        }
    }
}
