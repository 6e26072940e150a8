//! Factorization over K by Trager's norm method, and the subfield
//! factorization of f itself: known roots of f in K (closed under
//! composition) are split off as linear factors before the norm machinery
//! runs on the remaining cofactor.
//!
//! The norm Res_y(f(y), g(x - s*y)) is computed by evaluation/interpolation
//! modulo good primes with CRT up to a Hadamard-style bound, never through
//! fraction-field subresultants.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::integers::factor_over_z_stride;
use crate::arith::fp;
use crate::arith::fp_poly::FpPoly;
use crate::arith::q_poly::QPoly;
use crate::arith::z_poly::{bigint_mod_u64, crt_pair, symmetric_lift_poly, ZPoly};
use crate::error::{Error, Result};
use crate::modgcd::modular_gcd;
use crate::numfield::{next_good_prime, prime_search_floor, GoodPrime, KPoly, NumberField};

/// Ordered monic factors f_1..f_r of f over K with f_1 = x - alpha, plus the
/// prime that fixes the canonical order of the rest.
#[derive(Debug)]
pub struct SubfieldFactorization {
    field: Arc<NumberField>,
    factors: Vec<KPoly>,
    canonical_prime: GoodPrime,
}

impl SubfieldFactorization {
    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn r(&self) -> usize {
        self.factors.len()
    }

    pub fn factors(&self) -> &[KPoly] {
        &self.factors
    }

    /// 1-based access mirroring the f_i notation.
    pub fn factor(&self, i: usize) -> &KPoly {
        &self.factors[i - 1]
    }

    pub fn canonical_prime(&self) -> &GoodPrime {
        &self.canonical_prime
    }
}

/// Univariate resultant over F_p by the Euclidean remainder sequence.
fn fp_resultant(a: &FpPoly, b: &FpPoly, p: u64) -> u64 {
    if a.is_zero() || b.is_zero() {
        return 0;
    }
    let mut a = a.clone();
    let mut b = b.clone();
    let mut res = 1u64;
    loop {
        let da = a.degree().unwrap();
        let db = b.degree().unwrap();
        if db == 0 {
            return fp::mul(res, fp::pow(b.coeff(0), da as u64, p), p);
        }
        let r = a.rem(&b);
        if r.is_zero() {
            return 0;
        }
        let dr = r.degree().unwrap();
        if (da * db) % 2 == 1 {
            res = fp::neg(res, p);
        }
        res = fp::mul(res, fp::pow(b.lc(), (da - dr) as u64, p), p);
        a = b;
        b = r;
    }
}

/// Lagrange interpolation through distinct points.
fn fp_interpolate(points: &[(u64, u64)], p: u64) -> FpPoly {
    let mut full = FpPoly::one(p);
    for &(x, _) in points {
        full = full.mul(&FpPoly::new(p, vec![fp::neg(x, p), 1]));
    }
    let mut acc = FpPoly::zero(p);
    for &(x, y) in points {
        let li = full.divrem(&FpPoly::new(p, vec![fp::neg(x, p), 1])).0;
        let denom = li.eval(x);
        let scale = fp::mul(y, fp::inv(denom, p).expect("distinct points"), p);
        acc = acc.add(&li.scale(scale));
    }
    acc
}

/// The shifted bivariate d0 * g(x - s*y) with alpha replaced by y, stored as
/// one integer y-polynomial per x-degree.
struct ShiftedNorm {
    rows: Vec<ZPoly>,
    d0: BigInt,
    /// y-degree of the bivariate (0 when g has rational coefficients).
    ydeg: usize,
}

fn build_shifted(field: &Arc<NumberField>, g: &KPoly, s: i64) -> ShiftedNorm {
    let shift = KPoly::new(
        Arc::clone(field),
        vec![
            QPoly::x().scale(&num_rational::BigRational::from_integer(BigInt::from(-s))),
            QPoly::one(),
        ],
    );
    let gs = g.compose(&shift);
    let d0 = gs.denominator_lcm();
    let d = gs.degree().expect("nonzero");
    let mut rows = Vec::with_capacity(d + 1);
    let mut ydeg = 0usize;
    for b in 0..=d {
        let rep = gs.coeff_rep(b);
        let scaled = QPoly::new(
            rep.coeffs
                .iter()
                .map(|c| c * num_rational::BigRational::from_integer(d0.clone()))
                .collect(),
        );
        let (z, den) = scaled.clear_denominators();
        debug_assert!(den.is_one());
        if let Some(dy) = z.degree() {
            ydeg = ydeg.max(dy);
        }
        rows.push(z);
    }
    ShiftedNorm { rows, d0, ydeg }
}

/// Hadamard-style coefficient bound for the integer resultant: every
/// coefficient of det(Sylvester) is a sum of at most (n+m)! permutation
/// products, each bounded by the row 1-norms.
fn resultant_bound(field: &NumberField, sh: &ShiftedNorm) -> BigInt {
    let n = field.degree();
    let m = sh.ydeg;
    let f1 = field.min_poly().norm1();
    let g1: BigInt = sh.rows.iter().map(|r| r.norm1()).sum();
    let g1 = if g1.is_zero() { BigInt::one() } else { g1 };
    let mut fact = BigInt::one();
    for i in 2..=(n + m) {
        fact *= BigInt::from(i);
    }
    fact * f1.pow(m as u32) * g1.pow(n as u32)
}

/// Exact integer norm d0^n * Res_y(f(y), G(x,y)), or None when no prime
/// certifies the norm squarefree (the caller advances the shift).
fn norm_via_crt(field: &Arc<NumberField>, sh: &ShiftedNorm, xdeg: usize) -> Option<ZPoly> {
    let n = field.degree();
    let bound = resultant_bound(field, sh);
    let hard: BigInt = &bound * 2;
    let mut cursor = prime_search_floor(n)
        .max(xdeg as u64 + 2)
        .max(1 << 20);
    let mut acc: Vec<BigInt> = vec![BigInt::zero(); xdeg + 1];
    let mut modulus = BigInt::one();
    let mut certified = false;
    let mut primes_done = 0usize;
    // Leading y-coefficient as a polynomial in x, for per-point validity.
    let lead_x = ZPoly::new(sh.rows.iter().map(|r| r.coeff(sh.ydeg)).collect());

    while modulus <= hard {
        let gp = next_good_prime(field, cursor);
        cursor = gp.p;
        let p = gp.p;
        if bigint_mod_u64(&sh.d0, p) == 0 {
            continue;
        }
        let lead_p = lead_x.reduce_mod(p);
        if sh.ydeg > 0 && lead_p.is_zero() {
            continue;
        }
        let rows_p: Vec<FpPoly> = sh.rows.iter().map(|r| r.reduce_mod(p)).collect();
        let mut points = Vec::with_capacity(xdeg + 1);
        let mut x0 = 0u64;
        while points.len() <= xdeg && x0 < p {
            if sh.ydeg > 0 && lead_p.eval(x0) == 0 {
                x0 += 1;
                continue;
            }
            // G(x0, y) as a y-polynomial.
            let mut gy = FpPoly::zero(p);
            let mut xpow = 1u64;
            for row in &rows_p {
                gy = gy.add(&row.scale(xpow));
                xpow = fp::mul(xpow, x0, p);
            }
            points.push((x0, fp_resultant(&gp.fbar, &gy, p)));
            x0 += 1;
        }
        if points.len() <= xdeg {
            continue;
        }
        let image = fp_interpolate(&points, p);
        if image.degree() != Some(xdeg) {
            continue; // leading coefficient collapsed; treat prime as bad
        }
        if !certified && image.gcd(&image.derivative()).is_one() {
            certified = true;
        }
        primes_done += 1;
        if !certified && primes_done >= 3 {
            return None; // norm almost surely not squarefree for this shift
        }
        let pb = BigInt::from(p);
        for (i, slot) in acc.iter_mut().enumerate() {
            let v = BigInt::from(image.coeff(i));
            if modulus.is_one() {
                *slot = v;
            } else {
                *slot = crt_pair(slot, &modulus, &v, &pb);
            }
        }
        modulus *= pb;
    }
    if !certified {
        return None;
    }
    Some(symmetric_lift_poly(&acc, &modulus))
}

/// Complete factorization of a monic squarefree g over K into monic
/// irreducible factors (unordered).
pub fn trager_factor_over_k(field: &Arc<NumberField>, g: &KPoly) -> Result<Vec<KPoly>> {
    if !g.is_monic() {
        return Err(Error::NonMonicDivisor);
    }
    let d = g.degree().expect("nonzero polynomial");
    if d == 0 {
        return Ok(vec![]);
    }
    if d == 1 {
        return Ok(vec![g.clone()]);
    }
    let n = field.degree();
    let shift_cap = (n * d) * (n * d) + 3;
    for k in 0..shift_cap {
        // 0, 1, -1, 2, -2, ...
        let s = if k == 0 {
            0i64
        } else if k % 2 == 1 {
            k.div_ceil(2) as i64
        } else {
            -((k / 2) as i64)
        };
        let sh = build_shifted(field, g, s);
        let Some(norm) = norm_via_crt(field, &sh, n * d) else {
            continue;
        };
        let prim = norm.primitive();
        let rational_factors = factor_over_z_stride(&prim, n);
        let shift_back = KPoly::new(
            Arc::clone(field),
            vec![
                QPoly::x().scale(&num_rational::BigRational::from_integer(BigInt::from(s))),
                QPoly::one(),
            ],
        );
        let mut out = Vec::with_capacity(rational_factors.len());
        for nj in &rational_factors {
            let dj = nj.degree().unwrap();
            if dj % n != 0 {
                return Err(Error::Internal(
                    "norm factor degree not divisible by the field degree".into(),
                ));
            }
            let pulled = KPoly::from_scalar_poly(field, &QPoly::from_zpoly(nj)).compose(&shift_back);
            let monic = pulled.make_monic()?;
            let fac = modular_gcd(g, &monic, Some(dj / n))?;
            if fac.degree() != Some(dj / n) {
                return Err(Error::Internal("norm pullback degree mismatch".into()));
            }
            out.push(fac);
        }
        let prod = out.iter().fold(KPoly::one(field), |acc, f| acc.mul(f));
        if &prod != g {
            return Err(Error::Internal(
                "norm factor pullbacks do not multiply back to the input".into(),
            ));
        }
        return Ok(out);
    }
    Err(Error::Internal("no squarefree shift found".into()))
}

/// Close a set of root representatives under composition h1(h2(alpha)); the
/// composition of two roots of f is again a root because roots correspond to
/// automorphisms into the Galois closure fixing Q.
fn close_roots(field: &Arc<NumberField>, roots: &mut Vec<QPoly>) -> Result<()> {
    let f = field.min_poly_q();
    loop {
        let mut added = false;
        let snapshot = roots.clone();
        for h1 in &snapshot {
            for h2 in &snapshot {
                let comp = h1.compose(h2).rem(f);
                if !roots.contains(&comp) {
                    if !f.compose(&comp).rem(f).is_zero() {
                        return Err(Error::Internal(
                            "root composition produced a non-root".into(),
                        ));
                    }
                    roots.push(comp);
                    added = true;
                }
            }
        }
        if !added {
            return Ok(());
        }
    }
}

/// Full irreducible factorization of f over K, ordered with f_1 = x - alpha
/// first and the rest by (degree, image mod the canonical prime).
pub fn subfield_factorization(field: &Arc<NumberField>) -> Result<SubfieldFactorization> {
    let f = field.min_poly_as_kpoly();
    let mut roots: Vec<QPoly> = vec![QPoly::x().rem(field.min_poly_q())];
    close_roots(field, &mut roots)?;

    let mut cofactor = f.clone();
    for r in &roots {
        let lin = KPoly::new(Arc::clone(field), vec![r.neg(), QPoly::one()]);
        let (q, rem) = cofactor.divrem_monic(&lin)?;
        if !rem.is_zero() {
            return Err(Error::Internal("known root does not divide f".into()));
        }
        cofactor = q;
    }

    let mut nonlinear = vec![];
    if cofactor.degree().is_some_and(|d| d >= 1) {
        for fac in trager_factor_over_k(field, &cofactor)? {
            if fac.degree() == Some(1) {
                roots.push(fac.coeff_rep(0).neg());
            } else {
                nonlinear.push(fac);
            }
        }
        let before = roots.len();
        close_roots(field, &mut roots)?;
        if roots.len() != before {
            return Err(Error::Internal(
                "factorization missed a root reachable by composition".into(),
            ));
        }
    }

    let mut factors: Vec<KPoly> = roots
        .iter()
        .map(|r| KPoly::new(Arc::clone(field), vec![r.neg(), QPoly::one()]))
        .collect();
    factors.extend(nonlinear);

    // Canonical prime: the first good prime above the search floor under
    // which every factor reduces.
    let mut cursor = prime_search_floor(field.degree());
    let canonical_prime = loop {
        let gp = next_good_prime(field, cursor);
        cursor = gp.p;
        if factors.iter().all(|fac| fac.reduce_mod(&gp).is_ok()) {
            break gp;
        }
    };

    let x_minus_alpha = field.x_minus_alpha();
    let ring = canonical_prime.ring();
    let mut rest: Vec<(Vec<u64>, KPoly)> = factors
        .into_iter()
        .filter(|fac| fac != &x_minus_alpha)
        .map(|fac| {
            let key = fac.reduce_mod(&canonical_prime).unwrap().order_key(&ring);
            (key, fac)
        })
        .collect();
    rest.sort_by(|a, b| a.0.cmp(&b.0));
    for w in rest.windows(2) {
        if w[0].0 == w[1].0 {
            return Err(Error::Internal("distinct factors share a modular image".into()));
        }
    }
    let mut ordered = vec![x_minus_alpha];
    ordered.extend(rest.into_iter().map(|(_, fac)| fac));

    let prod = ordered.iter().fold(KPoly::one(field), |acc, x| acc.mul(x));
    if prod != f {
        return Err(Error::Internal(
            "subfield factorization does not multiply to f".into(),
        ));
    }
    Ok(SubfieldFactorization {
        field: Arc::clone(field),
        factors: ordered,
        canonical_prime,
    })
}
