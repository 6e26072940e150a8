//! Phase I: the partition P_i of each principal subfield L_{f_i}.
//!
//! Equations are generated modulo a good prime from random evaluation points
//! (logarithmic derivatives in the finite ring F_p[t]/(fbar)), solved for a
//! {0,1}-echelon basis, and the resulting candidate partition is certified
//! modulo a second, independent good prime. A slow all-rational version of
//! the equation generator serves as the trusted oracle.

use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::fp;
use crate::arith::fp_poly::FpPoly;
use crate::arith::quotient::{QuotientRing, RPoly};
use crate::error::{Error, Result};
use crate::factor::trager::SubfieldFactorization;
use crate::numfield::{GoodPrime, KPoly, NFElement};
use crate::partition::PartitionVec;

/// Retry budget for (equations, solve, certify) rounds; in practice one or
/// two rounds suffice.
const MAX_ROUNDS: usize = 32;

/// A subfield factorization reduced modulo one good prime: the quotient ring,
/// every factor image, and every factor-derivative image.
pub struct ReducedFactorization<'a> {
    sf: &'a SubfieldFactorization,
    gp: GoodPrime,
    ring: QuotientRing,
    factors: Vec<RPoly>,
    derivs: Vec<RPoly>,
}

impl<'a> ReducedFactorization<'a> {
    pub fn new(sf: &'a SubfieldFactorization, gp: &GoodPrime) -> Result<Self> {
        let ring = gp.ring();
        let mut factors = Vec::with_capacity(sf.r());
        let mut derivs = Vec::with_capacity(sf.r());
        for f in sf.factors() {
            let img = f.reduce_mod(gp)?;
            derivs.push(f.derivative().reduce_mod(gp)?);
            factors.push(img);
        }
        Ok(ReducedFactorization {
            sf,
            gp: gp.clone(),
            ring,
            factors,
            derivs,
        })
    }

    pub fn prime(&self) -> u64 {
        self.gp.p
    }

    pub fn good_prime(&self) -> &GoodPrime {
        &self.gp
    }

    pub fn ring(&self) -> &QuotientRing {
        &self.ring
    }

    pub fn r(&self) -> usize {
        self.factors.len()
    }

    pub fn factor_image(&self, i: usize) -> &RPoly {
        &self.factors[i - 1]
    }

    pub fn factorization(&self) -> &SubfieldFactorization {
        self.sf
    }
}

/// Homogeneous linear system over F_p kept in reduced row-echelon form; rows
/// are inserted incrementally and reduced on the fly.
pub struct LinearSystemModP {
    p: u64,
    cols: usize,
    rows: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

impl LinearSystemModP {
    pub fn new(p: u64, cols: usize) -> Self {
        LinearSystemModP {
            p,
            cols,
            rows: vec![],
            pivots: vec![],
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn add_row(&mut self, mut row: Vec<u64>) {
        assert_eq!(row.len(), self.cols);
        let p = self.p;
        for (r, &pc) in self.rows.iter().zip(&self.pivots) {
            if row[pc] != 0 {
                let c = row[pc];
                for j in 0..self.cols {
                    row[j] = fp::sub(row[j], fp::mul(c, r[j], p), p);
                }
            }
        }
        let Some(pc) = row.iter().position(|&x| x != 0) else {
            return;
        };
        let inv = fp::inv(row[pc], p).unwrap();
        for x in row.iter_mut() {
            *x = fp::mul(*x, inv, p);
        }
        // eliminate the new pivot from existing rows
        for r in self.rows.iter_mut() {
            if r[pc] != 0 {
                let c = r[pc];
                for j in 0..self.cols {
                    r[j] = fp::sub(r[j], fp::mul(c, row[j], p), p);
                }
            }
        }
        let at = self.pivots.partition_point(|&x| x < pc);
        self.rows.insert(at, row);
        self.pivots.insert(at, pc);
    }

    pub fn add_rows(&mut self, rows: Vec<Vec<u64>>) {
        for row in rows {
            self.add_row(row);
        }
    }

    /// Basis of the solution space in reduced echelon form (rows of the
    /// nullspace matrix, re-reduced).
    fn solution_basis(&self) -> Vec<Vec<u64>> {
        let p = self.p;
        let free: Vec<usize> = (0..self.cols).filter(|c| !self.pivots.contains(c)).collect();
        let mut basis: Vec<Vec<u64>> = vec![];
        for &fc in &free {
            let mut v = vec![0u64; self.cols];
            v[fc] = 1;
            for (r, &pc) in self.rows.iter().zip(&self.pivots) {
                v[pc] = fp::neg(r[fc], p);
            }
            basis.push(v);
        }
        // reduce the basis rows to the unique reduced echelon form
        let mut echelon = LinearSystemModP::new(p, self.cols);
        echelon.add_rows(basis);
        echelon.rows
    }
}

/// Solution basis with rows in {0,1}^r summing to the all-ones vector; the
/// row supports are the parts of the partition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EchelonBasis {
    pub rows: Vec<Vec<bool>>,
}

impl EchelonBasis {
    pub fn to_partition(&self) -> PartitionVec {
        let parts: Vec<Vec<usize>> = self
            .rows
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(_, &b)| b)
                    .map(|(i, _)| i)
                    .collect()
            })
            .collect();
        let r = self.rows.first().map_or(0, |r| r.len());
        PartitionVec::from_parts_0based(r, &parts)
    }
}

/// Reduced echelon solution basis when it is a {0,1}-echelon basis; `None`
/// signals that more equations are needed.
pub fn extract_echelon_basis(sys: &LinearSystemModP) -> Option<EchelonBasis> {
    let basis = sys.solution_basis();
    if basis.is_empty() {
        return None; // only the zero solution; cannot happen for valid systems
    }
    let mut rows = Vec::with_capacity(basis.len());
    let mut colsum = vec![0u64; sys.cols()];
    for b in &basis {
        let mut row = Vec::with_capacity(b.len());
        for (j, &x) in b.iter().enumerate() {
            if x > 1 {
                return None;
            }
            colsum[j] += x;
            row.push(x == 1);
        }
        rows.push(row);
    }
    if colsum.iter().any(|&s| s != 1) {
        return None;
    }
    Some(EchelonBasis { rows })
}

/// One round of necessary equations for the index-i system, generated from a
/// fresh random point c (redrawn while any f_j(c) fails to invert, at most p
/// attempts).
pub fn equations_mod_p(
    ctx: &ReducedFactorization,
    i: usize,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<Vec<u64>>> {
    let ring = &ctx.ring;
    let p = ctx.gp.p;
    let n = ring.deg();
    let r = ctx.r();
    let fi = ctx.factor_image(i);
    let di = fi.degree().expect("factor has positive degree");

    let mut log_derivs: Option<Vec<FpPoly>> = None;
    for _ in 0..p {
        let c = rng.gen_range(0..p);
        let mut hs = Vec::with_capacity(r);
        let mut ok = true;
        for (fj, dj) in ctx.factors.iter().zip(&ctx.derivs) {
            let val = fj.eval_scalar(ring, c);
            let Some(inv) = ring.inv(&val) else {
                ok = false;
                break;
            };
            let num = dj.eval_scalar(ring, c);
            hs.push(ring.mul(&num, &inv));
        }
        if ok {
            log_derivs = Some(hs);
            break;
        }
    }
    let Some(hs) = log_derivs else {
        return Err(Error::BadPrime(p));
    };

    // For each j: A_j = rem(H_j(x), f_i) - h_j, where H_j is h_j with its
    // t-digits read as x-coefficients. The equations are the (x, t)
    // coordinates of sum_j e_j A_j = 0.
    let mut cols: Vec<RPoly> = Vec::with_capacity(r);
    for h in &hs {
        let hx = RPoly::from_fp_poly(ring, h);
        let mut a = hx.rem_monic(ring, fi);
        let hconst = RPoly::new(ring, vec![h.clone()]);
        a = a.sub(ring, &hconst);
        cols.push(a);
    }
    let mut rows = Vec::with_capacity(n * di);
    for b in 0..di {
        for a in 0..n {
            let row: Vec<u64> = cols
                .iter()
                .map(|col| col.coeffs.get(b).map_or(0, |c| c.coeff(a)))
                .collect();
            if row.iter().any(|&x| x != 0) {
                rows.push(row);
            }
        }
    }
    Ok(rows)
}

/// Correctness check: every candidate-part product, computed modulo q only,
/// must have all coefficients h(alpha) with rem(h(y), f_i(y)) = h(alpha) in
/// the quotient ring. True certifies the candidate exactly.
pub fn verify_partition(
    ctx_q: &ReducedFactorization,
    i: usize,
    candidate: &PartitionVec,
) -> Result<bool> {
    let ring = &ctx_q.ring;
    let fi = ctx_q.factor_image(i);
    for part in candidate.parts_0based() {
        let mut prod = RPoly::one(ring);
        for idx in part {
            prod = prod.mul(ring, &ctx_q.factors[idx]);
        }
        for cof in &prod.coeffs {
            let hy = RPoly::from_fp_poly(ring, cof);
            let rem = hy.rem_monic(ring, fi);
            let hconst = RPoly::new(ring, vec![cof.clone()]);
            if rem != hconst {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn rng_for_index(seed: u64, i: usize) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ (i as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

/// The partition P_i of L_{f_i}, computed modulo the equation prime and
/// certified modulo the independent prime q. Rounds append equations from
/// fresh random points until the echelon basis exists and certifies.
pub fn principal_partition(
    ctx_p: &ReducedFactorization,
    ctx_q: &ReducedFactorization,
    i: usize,
    seed: u64,
) -> Result<PartitionVec> {
    assert_ne!(ctx_p.prime(), ctx_q.prime(), "certification prime must differ");
    let mut rng = rng_for_index(seed, i);
    let mut sys = LinearSystemModP::new(ctx_p.prime(), ctx_p.r());
    for _ in 0..MAX_ROUNDS {
        sys.add_rows(equations_mod_p(ctx_p, i, &mut rng)?);
        let Some(basis) = extract_echelon_basis(&sys) else {
            continue;
        };
        let cand = basis.to_partition();
        if verify_partition(ctx_q, i, &cand)? {
            return Ok(cand);
        }
    }
    Err(Error::CertificationBudget(i))
}

// ---------------------------------------------------------------------------
// Slow rational oracle (Algorithm Equations with 2n points).

/// Incremental reduced row echelon form over Q.
pub(crate) struct QMatrix {
    cols: usize,
    rows: Vec<Vec<BigRational>>,
    pivots: Vec<usize>,
}

impl QMatrix {
    pub(crate) fn new(cols: usize) -> Self {
        QMatrix {
            cols,
            rows: vec![],
            pivots: vec![],
        }
    }

    pub(crate) fn add_row(&mut self, mut row: Vec<BigRational>) {
        for (r, &pc) in self.rows.iter().zip(&self.pivots) {
            if !row[pc].is_zero() {
                let c = row[pc].clone();
                for j in 0..self.cols {
                    let t = &c * &r[j];
                    row[j] -= t;
                }
            }
        }
        let Some(pc) = row.iter().position(|x| !x.is_zero()) else {
            return;
        };
        let inv = row[pc].recip();
        for x in row.iter_mut() {
            *x = &*x * &inv;
        }
        for r in self.rows.iter_mut() {
            if !r[pc].is_zero() {
                let c = r[pc].clone();
                for j in 0..self.cols {
                    let t = &c * &row[j];
                    r[j] -= t;
                }
            }
        }
        let at = self.pivots.partition_point(|&x| x < pc);
        self.rows.insert(at, row);
        self.pivots.insert(at, pc);
    }

    pub(crate) fn rank(&self) -> usize {
        self.rows.len()
    }

    pub(crate) fn rows(&self) -> &[Vec<BigRational>] {
        &self.rows
    }

    fn solution_basis(&self) -> Vec<Vec<BigRational>> {
        let free: Vec<usize> = (0..self.cols).filter(|c| !self.pivots.contains(c)).collect();
        let mut basis = vec![];
        for &fc in &free {
            let mut v = vec![BigRational::zero(); self.cols];
            v[fc] = BigRational::one();
            for (r, &pc) in self.rows.iter().zip(&self.pivots) {
                v[pc] = -r[fc].clone();
            }
            basis.push(v);
        }
        let mut echelon = QMatrix::new(self.cols);
        for b in basis {
            echelon.add_row(b);
        }
        echelon.rows
    }
}

/// Exact partition of L_{f_i} from rational linear algebra over 2n evaluation
/// points (points skipping any root of a factor). This is the trusted oracle
/// for the modular path.
pub fn slow_equations_over_q(sf: &SubfieldFactorization, i: usize) -> Result<PartitionVec> {
    let field = sf.field();
    let n = field.degree();
    let r = sf.r();
    let fi = sf.factor(i);
    let di = fi.degree().unwrap();
    let mut sys = QMatrix::new(r);

    let mut points_used = 0usize;
    let mut c_int: i64 = 1;
    while points_used < 2 * n {
        let c = field.elem_from_rational(BigRational::from_integer(c_int.into()));
        c_int += 1;
        let mut hs: Vec<NFElement> = Vec::with_capacity(r);
        let mut ok = true;
        for fj in sf.factors() {
            let val = fj.eval(&c);
            if val.is_zero() {
                ok = false;
                break;
            }
            hs.push(fj.derivative().eval(&c).mul(&val.inv()?));
        }
        if !ok {
            continue; // c is a root of some factor; shift to the next point
        }
        points_used += 1;
        for h in &hs {
            debug_assert!(h.rep().degree().is_none_or(|d| d < n));
        }
        // A_j = rem(H_j(x), f_i) - h_j over K[x].
        let mut cols: Vec<KPoly> = Vec::with_capacity(r);
        for h in &hs {
            let hx = KPoly::from_scalar_poly(field, h.rep());
            let mut a = hx.rem_monic(fi)?;
            a = a.sub(&KPoly::from_elems(vec![h.clone()]));
            cols.push(a);
        }
        for b in 0..di {
            for a in 0..n {
                let row: Vec<BigRational> = cols
                    .iter()
                    .map(|col| col.coeff_rep(b).coeff(a))
                    .collect();
                if row.iter().any(|x| !x.is_zero()) {
                    sys.add_row(row);
                }
            }
        }
    }

    let basis = sys.solution_basis();
    // With all 2n points the solution space is exactly the span of the part
    // indicators, so the reduced basis must be a {0,1}-echelon basis.
    let mut parts: Vec<Vec<usize>> = vec![];
    let one = BigRational::one();
    for row in &basis {
        let mut part = vec![];
        for (j, x) in row.iter().enumerate() {
            if x == &one {
                part.push(j);
            } else if !x.is_zero() {
                return Err(Error::Internal(
                    "slow oracle basis is not a 0-1 basis".into(),
                ));
            }
        }
        parts.push(part);
    }
    Ok(PartitionVec::from_parts_0based(r, &parts))
}
