//! Karatsuba multiplication for dense coefficient slices over Z and Q;
//! schoolbook below the threshold.

use num_traits::Zero;
use std::ops::{Add, Mul, Sub};

pub(crate) const THRESHOLD: usize = 32;

pub(crate) fn mul<T>(a: &[T], b: &[T]) -> Vec<T>
where
    T: Clone + Zero,
    for<'x> &'x T: Mul<&'x T, Output = T> + Add<&'x T, Output = T> + Sub<&'x T, Output = T>,
{
    debug_assert!(!a.is_empty() && !b.is_empty());
    if a.len().min(b.len()) < THRESHOLD {
        let mut out = vec![T::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                out[i + j] = &out[i + j] + &(x * y);
            }
        }
        return out;
    }
    let m = a.len().max(b.len()) / 2;
    let (a0, a1) = a.split_at(a.len().min(m));
    let (b0, b1) = b.split_at(b.len().min(m));
    let z0 = mul(a0, b0);
    let mut out = vec![T::zero(); a.len() + b.len() - 1];
    for (i, c) in z0.iter().enumerate() {
        out[i] = &out[i] + c;
    }
    if !a1.is_empty() && !b1.is_empty() {
        let z2 = mul(a1, b1);
        for (i, c) in z2.iter().enumerate() {
            out[2 * m + i] = &out[2 * m + i] + c;
        }
        let sa: Vec<T> = sum_halves(a0, a1);
        let sb: Vec<T> = sum_halves(b0, b1);
        let z1 = mul(&sa, &sb);
        for (i, c) in z1.iter().enumerate() {
            let mut v = c.clone();
            if let Some(c0) = z0.get(i) {
                v = &v - c0;
            }
            if let Some(c2) = z2.get(i) {
                v = &v - c2;
            }
            out[m + i] = &out[m + i] + &v;
        }
    } else {
        // one operand lies entirely below the split; only a cross term is
        // left
        let (lo, hi) = if a1.is_empty() { (a0, b1) } else { (b0, a1) };
        let z1 = mul(lo, hi);
        for (i, c) in z1.iter().enumerate() {
            out[m + i] = &out[m + i] + c;
        }
    }
    out
}

fn sum_halves<T>(lo: &[T], hi: &[T]) -> Vec<T>
where
    T: Clone + Zero,
    for<'x> &'x T: Add<&'x T, Output = T>,
{
    let n = lo.len().max(hi.len());
    (0..n)
        .map(|i| match (lo.get(i), hi.get(i)) {
            (Some(x), Some(y)) => x + y,
            (Some(x), None) => x.clone(),
            (None, Some(y)) => y.clone(),
            (None, None) => T::zero(),
        })
        .collect()
}
