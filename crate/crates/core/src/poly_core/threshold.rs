//! The threshold `n_F`: the least `n >= 0` such that every `a > n` has
//! `F(a) > 0` and `F(a) > F(b)` for all `1 <= b < a`.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::IntPoly;
use crate::error::{Error, Result};

/// Largest monotonicity bound we are willing to scan value-by-value.
pub const MAX_SCAN: u64 = 50_000_000;

/// Minimal threshold `n_F`.
///
/// Past the Cauchy root bound `B` of `F'` the polynomial is strictly
/// increasing, so the first `x >= B` whose value beats every value on
/// `[1, B]` gives a valid threshold; the downward scan then makes it
/// minimal.
pub fn compute_nf(poly: &IntPoly) -> Result<u64> {
    let deg = poly.degree().ok_or(Error::ConstantPolynomial)?;
    if deg == 0 {
        return Err(Error::ConstantPolynomial);
    }
    if !poly.leading().unwrap().is_positive() {
        return Err(Error::NonPositiveLeading);
    }
    let bound = increasing_from(poly)?;

    let mut ceiling = BigInt::zero();
    for i in 1..=bound {
        let v = poly.eval_u64(i);
        if v > ceiling {
            ceiling = v;
        }
    }

    // first x >= max(bound, 1) with F(x) > ceiling, by doubling then bisection
    let start = bound.max(1);
    let above = |x: u64| poly.eval_u64(x) > ceiling;
    let first = if above(start) {
        start
    } else {
        let mut lo = start;
        let mut step = 1u64;
        let mut hi = start + step;
        while !above(hi) {
            lo = hi;
            step = step.saturating_mul(2);
            hi = hi
                .checked_add(step)
                .expect("increasing polynomial is unbounded");
        }
        while hi - lo > 1 {
            let mid = lo + (hi - lo) / 2;
            if above(mid) {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        hi
    };
    let mut n = first - 1;

    // At a = n the defining property needs F(n) > 0 and F(n) above every
    // earlier value; only possible while n stays within the scanned head.
    if n > bound + 1 {
        return Ok(n);
    }
    let values: Vec<BigInt> = (0..=n).map(|i| poly.eval_u64(i)).collect();
    let mut prefix_max = Vec::with_capacity(values.len());
    let mut best: Option<&BigInt> = None;
    for v in values.iter().skip(1) {
        prefix_max.push(best.cloned());
        if best.is_none_or(|b| v > b) {
            best = Some(v);
        }
    }
    while n >= 1 {
        let v = &values[n as usize];
        let earlier = &prefix_max[n as usize - 1];
        let ok = v.is_positive() && earlier.as_ref().is_none_or(|e| v > e);
        if !ok {
            break;
        }
        n -= 1;
    }
    Ok(n)
}

/// An integer `B >= 0` with `F` strictly increasing on `[B, inf)`.
fn increasing_from(poly: &IntPoly) -> Result<u64> {
    let d = poly.derivative();
    if d.is_constant() {
        // linear with positive slope
        return Ok(0);
    }
    let lead = d.leading().unwrap().abs();
    let top = d.coeffs()[..d.coeffs().len() - 1]
        .iter()
        .map(|c| c.abs())
        .max()
        .unwrap_or_default();
    // Cauchy: every root z of F' has |z| < 1 + max|c_i| / |c_lead|
    let ratio = (&top + &lead - BigInt::one()) / &lead;
    let bound = ratio + BigInt::one();
    match bound.to_u64() {
        Some(b) if b <= MAX_SCAN => Ok(b),
        _ => Err(Error::ThresholdScanTooLarge(bound.to_string())),
    }
}
