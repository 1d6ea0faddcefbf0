//! Root-structure analysis: squarefree parts, the single-root forms
//! `a(ux+v)^b`, and perfect-power splitting `F = f^m`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Signed;

use super::IntPoly;
use crate::error::{Error, Result};

/// The primitive polynomial with the same distinct roots as `p`, each of
/// multiplicity one: `pp(p) / pp(gcd(p, p'))`. Its degree is the number of
/// distinct complex roots of `p`.
pub fn squarefree_part(p: &IntPoly) -> Result<IntPoly> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if p.is_constant() {
        return Ok(IntPoly::one());
    }
    let g = p.gcd(&p.derivative()).primitive_part();
    Ok(p.primitive_part()
        .div_exact(&g)
        .expect("gcd(p, p') divides p")
        .primitive_part())
}

/// Parameters of `p = a (u x + v)^b` with `u > 0`, `gcd(u, v) = 1`, `b >= 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExcludedForm {
    pub a: BigInt,
    pub u: BigInt,
    pub v: BigInt,
    pub b: u32,
}

/// Recognises polynomials with exactly one distinct root.
pub fn is_excluded_form(p: &IntPoly) -> Result<Option<ExcludedForm>> {
    if p.is_constant() {
        return Err(Error::ConstantPolynomial);
    }
    let sqf = squarefree_part(p)?;
    if sqf.degree() != Some(1) {
        return Ok(None);
    }
    // primitive_part already makes u > 0 and gcd(u, v) = 1
    let (v, u) = (sqf.coeff(0), sqf.coeff(1));
    let b = p.degree().unwrap() as u32;
    let power = sqf.pow(b);
    // Gauss: a primitive divisor leaves an integer cofactor
    let a = p
        .div_exact(&power)
        .expect("single-root polynomial is a multiple of its root power");
    debug_assert!(a.is_constant());
    Ok(Some(ExcludedForm {
        a: a.coeff(0),
        u,
        v,
        b,
    }))
}

/// Splits `p` (positive leading coefficient) as `f^m` with `m` maximal and
/// `f` having positive leading coefficient. Returns `(p, 1)` when no proper
/// power exists.
pub fn perfect_power(p: &IntPoly) -> Result<(IntPoly, u32)> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if p.leading().is_some_and(|c| !c.is_positive()) {
        return Err(Error::NonPositiveLeading);
    }
    if p.is_constant() {
        return Ok((p.clone(), 1));
    }
    // chain[k] = gcd(chain[k-1], chain[k-1]') strips one from every root
    // multiplicity; consecutive quotients collect roots of multiplicity > k.
    let mut chain = vec![p.primitive_part()];
    while !chain.last().unwrap().is_constant() {
        let last = chain.last().unwrap();
        chain.push(last.gcd(&last.derivative()).primitive_part());
    }
    // at_least[k-1] = product of the roots with multiplicity >= k
    let at_least: Vec<IntPoly> = chain
        .windows(2)
        .map(|w| {
            w[0].div_exact(&w[1])
                .expect("gcd chain divides")
                .primitive_part()
        })
        .collect();
    let degrees: Vec<usize> = at_least.iter().map(|q| q.degree().unwrap()).collect();
    let mut mult_gcd = 0usize;
    for k in 1..=degrees.len() {
        let here = degrees[k - 1];
        let next = degrees.get(k).copied().unwrap_or(0);
        if here > next {
            mult_gcd = mult_gcd.gcd(&k);
        }
    }
    let lc = p.leading().unwrap();
    let mut divisors: Vec<usize> = (2..=mult_gcd)
        .filter(|d| mult_gcd.is_multiple_of(*d))
        .collect();
    divisors.reverse();
    for m in divisors {
        let mut root = IntPoly::one();
        for k in (m..=at_least.len()).step_by(m) {
            root = &root * &at_least[k - 1];
        }
        let powered = root.pow(m as u32);
        let scale = lc / powered.leading().unwrap();
        let c = scale.nth_root(m as u32);
        if !c.pow(m as u32).eq(&scale) {
            continue;
        }
        let f = root.scale(&c);
        if f.pow(m as u32) == *p {
            return Ok((f, m as u32));
        }
    }
    Ok((p.clone(), 1))
}
