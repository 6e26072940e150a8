//! Factorization over Z / Q: Zassenhaus with subset recombination, plus the
//! squarefree/content wrapper and the irreducibility gate.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::finite::factor_mod_p;
use super::hensel::hensel_lift;
use crate::arith::fp_poly::FpPoly;
use crate::arith::z_poly::{symmetric_lift_poly, zpoly_gcd, ZPoly};

/// Irreducible factorization of a squarefree, content-1 polynomial over Q,
/// as primitive integer polynomials whose product is the input exactly.
pub fn factor_over_z(g: &ZPoly) -> Vec<ZPoly> {
    factor_over_z_stride(g, 1)
}

/// Like `factor_over_z`, with the promise that every irreducible factor has
/// degree divisible by `stride` (e.g. resultant norms over a degree-n field);
/// recombination skips subsets violating it.
pub fn factor_over_z_stride(g: &ZPoly, stride: usize) -> Vec<ZPoly> {
    let d = g.degree().expect("factor_over_z: zero polynomial");
    assert!(d >= 1);
    if g.lc().is_negative() {
        let mut fs = factor_over_z_stride(&g.neg(), stride);
        fs[0] = fs[0].neg();
        return fs;
    }
    if d == 1 {
        return vec![g.clone()];
    }
    if g.is_monic() {
        return factor_monic(g, stride);
    }
    // Monicize: G(y) = lc^(d-1) * g(y/lc) is monic over Z; factors map back
    // through y = lc*x followed by a primitive-part pass.
    let lc = g.lc();
    let mut big_coeffs: Vec<BigInt> = g
        .coeffs
        .iter()
        .enumerate()
        .take(d)
        .map(|(i, c)| c * lc.pow((d - 1 - i) as u32))
        .collect();
    big_coeffs.push(BigInt::one());
    let big = ZPoly::new(big_coeffs);
    let mut out: Vec<ZPoly> = factor_monic(&big, stride)
        .iter()
        .map(|f| {
            ZPoly::new(
                f.coeffs
                    .iter()
                    .enumerate()
                    .map(|(i, c)| c * lc.pow(i as u32))
                    .collect(),
            )
            .primitive()
        })
        .collect();
    // The primitive parts multiply to g up to a positive unit; distribute
    // nothing, but keep a defensive check.
    let prod = out.iter().fold(ZPoly::one(), |acc, f| acc.mul(f));
    debug_assert_eq!(prod, *g);
    out.sort_by(sort_key);
    out
}

fn sort_key(a: &ZPoly, b: &ZPoly) -> std::cmp::Ordering {
    a.coeffs
        .len()
        .cmp(&b.coeffs.len())
        .then_with(|| a.coeffs.cmp(&b.coeffs))
}

fn factor_monic(g: &ZPoly, stride: usize) -> Vec<ZPoly> {
    let d = g.degree().unwrap();
    // Prime selection: smallest odd primes with squarefree image, preferring
    // the one with the fewest modular factors.
    let mut candidates = vec![];
    let mut p = 2u64;
    let mut tried = 0;
    while candidates.len() < 8 && tried < 80 {
        p = crate::arith::fp::next_prime(p);
        tried += 1;
        let gm = g.reduce_mod(p);
        if gm.degree() != Some(d) {
            continue;
        }
        if !gm.gcd(&gm.derivative()).is_one() {
            continue;
        }
        let nfac = factor_mod_p(&gm).len();
        candidates.push((nfac, p));
    }
    assert!(
        !candidates.is_empty(),
        "no usable prime found for squarefree input"
    );
    candidates.sort();
    let (_, p) = candidates[0];
    let modular: Vec<FpPoly> = factor_mod_p(&g.reduce_mod(p))
        .into_iter()
        .map(|(f, m)| {
            debug_assert_eq!(m, 1);
            f
        })
        .collect();
    if modular.len() == 1 {
        return vec![g.clone()];
    }
    // Landau-Mignotte style bound for coefficients of any monic factor.
    let bound: BigInt = (BigInt::one() << d) * g.norm2_ceil();
    let mut a = 1u32;
    let mut pa = BigInt::from(p);
    while pa <= &bound * 2 {
        pa *= BigInt::from(p);
        a += 1;
    }
    let lifted = hensel_lift(g, &modular, p, a).expect("modular factors lift");
    recombine(g, &lifted, &pa, stride)
}

/// Zassenhaus recombination: search subsets of the lifted modular factors,
/// smallest cardinality first, with a trailing-coefficient divisibility test
/// before each trial division.
fn recombine(g: &ZPoly, lifted: &[ZPoly], pa: &BigInt, stride: usize) -> Vec<ZPoly> {
    let mut current = g.clone();
    let mut remaining: Vec<usize> = (0..lifted.len()).collect();
    let mut out = vec![];
    let mut card = 1usize;
    'outer: while 2 * card <= remaining.len() {
        // per-round tables so the enumeration walk allocates nothing
        let degs: Vec<usize> = remaining
            .iter()
            .map(|&i| lifted[i].degree().unwrap())
            .collect();
        let trails: Vec<BigInt> = remaining.iter().map(|&i| lifted[i].coeff(0)).collect();
        let c0 = current.coeff(0);
        let n = remaining.len();
        let mut subset: Vec<usize> = (0..card).collect();
        loop {
            let degsum: usize = subset.iter().map(|&i| degs[i]).sum();
            if degsum.is_multiple_of(stride) && trailing_divides(&subset, &trails, &c0, pa) {
                let idxs: Vec<usize> = subset.iter().map(|&i| remaining[i]).collect();
                if let Some(f) = try_subset(&current, lifted, &idxs, pa) {
                    out.push(f.clone());
                    current = current.exact_div(&f).unwrap();
                    remaining.retain(|i| !idxs.contains(i));
                    continue 'outer; // restart at the same cardinality
                }
            }
            // next combination in lexicographic order
            let k = card;
            let mut i = k;
            loop {
                if i == 0 {
                    card += 1;
                    continue 'outer;
                }
                i -= 1;
                if subset[i] != i + n - k {
                    break;
                }
            }
            subset[i] += 1;
            for j in i + 1..k {
                subset[j] = subset[j - 1] + 1;
            }
        }
    }
    if current.degree().is_some_and(|d| d >= 1) {
        out.push(current);
    }
    out.sort_by(sort_key);
    out
}

/// Constant-term test: the candidate's trailing coefficient must divide
/// current(0) over Z.
fn trailing_divides(subset: &[usize], trails: &[BigInt], c0: &BigInt, pa: &BigInt) -> bool {
    if c0.is_zero() {
        return true;
    }
    let mut t = BigInt::one();
    for &i in subset {
        t = (t * &trails[i]).mod_floor(pa);
    }
    let t = crate::arith::z_poly::symmetric_lift(&t, pa);
    !t.is_zero() && c0.is_multiple_of(&t)
}

fn try_subset(current: &ZPoly, lifted: &[ZPoly], idxs: &[usize], pa: &BigInt) -> Option<ZPoly> {
    let mut prod = ZPoly::one();
    for &i in idxs {
        prod = prod.mul(&lifted[i]);
        prod = ZPoly::new(prod.coeffs.iter().map(|c| c.mod_floor(pa)).collect());
    }
    let cand = symmetric_lift_poly(&prod.coeffs, pa);
    if current.exact_div(&cand).is_ok() {
        Some(cand)
    } else {
        None
    }
}

/// Factor an arbitrary nonzero polynomial over Q into primitive irreducible
/// integer polynomials with multiplicities (content and sign are dropped).
pub fn factor_over_q_support(g: &ZPoly) -> Vec<(ZPoly, usize)> {
    let gp = g.primitive();
    let d = gp.degree().expect("zero polynomial");
    if d == 0 {
        return vec![];
    }
    let mut out = vec![];
    // Yun's squarefree decomposition over Z.
    let deriv = gp.derivative();
    let u = zpoly_gcd(&gp, &deriv);
    let mut v = gp.exact_div(&u).unwrap();
    let mut w = deriv.exact_div(&u).unwrap();
    let mut i = 1usize;
    while v.degree().is_some_and(|dv| dv >= 1) {
        let z = w.sub(&v.derivative());
        let h = zpoly_gcd(&v, &z);
        if h.degree().is_some_and(|dh| dh >= 1) {
            for f in factor_over_z(&h) {
                out.push((f.primitive(), i));
            }
        }
        v = v.exact_div(&h).unwrap();
        w = z.exact_div(&h).unwrap();
        i += 1;
    }
    out
}

/// True exactly when g is irreducible over Q (degree >= 1 required).
pub fn is_irreducible(g: &ZPoly) -> bool {
    match g.degree() {
        None | Some(0) => false,
        Some(1) => true,
        Some(_) => {
            let fs = factor_over_q_support(g);
            fs.len() == 1 && fs[0].1 == 1
        }
    }
}
