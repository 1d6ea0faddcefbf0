//! Dense univariate polynomials over the integers.
//!
//! Coefficients are stored constant term first, so `coeffs[i]` is the
//! coefficient of `x^i`. The zero polynomial is the empty vector; every
//! other value has a nonzero last coefficient.

mod parse;
mod sightline;
mod structure;
mod threshold;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::Error;

pub use parse::parse_poly;
pub use sightline::SightLine;
pub use structure::{is_excluded_form, perfect_power, squarefree_part, ExcludedForm};
pub use threshold::compute_nf;

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    /// The identity polynomial `x`.
    pub fn x() -> Self {
        IntPoly {
            coeffs: vec![BigInt::zero(), BigInt::one()],
        }
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::from_coeffs(vec![c.into()])
    }

    /// Builds a polynomial from coefficients, constant term first. Trailing
    /// zeros are trimmed.
    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// `c * x^k`.
    pub fn monomial(c: impl Into<BigInt>, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c.into();
        Self::from_coeffs(coeffs)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc *= x;
            acc += c;
        }
        acc
    }

    pub fn eval_i64(&self, x: i64) -> BigInt {
        self.eval(&BigInt::from(x))
    }

    pub fn eval_u64(&self, x: u64) -> BigInt {
        self.eval(&BigInt::from(x))
    }

    pub fn derivative(&self) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    /// Nonnegative gcd of the coefficients; zero for the zero polynomial.
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// The polynomial divided by its content, with positive leading
    /// coefficient.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut content = self.content();
        if self.leading().is_some_and(Signed::is_negative) {
            content = -content;
        }
        self.div_scalar_exact(&content)
            .expect("content divides every coefficient")
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|x| x * c).collect())
    }

    /// Divides every coefficient by `c`, or `None` if some division is
    /// inexact.
    pub fn div_scalar_exact(&self, c: &BigInt) -> Option<Self> {
        if c.is_zero() {
            return None;
        }
        let mut out = Vec::with_capacity(self.coeffs.len());
        for x in &self.coeffs {
            let (q, r) = x.div_rem(c);
            if !r.is_zero() {
                return None;
            }
            out.push(q);
        }
        Some(Self::from_coeffs(out))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut result = Self::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// `p(scale*x + shift)`.
    pub fn compose_linear(&self, scale: &BigInt, shift: &BigInt) -> Self {
        let lin = IntPoly::from_coeffs(vec![shift.clone(), scale.clone()]);
        let mut acc = IntPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * &lin) + &IntPoly::constant(c.clone());
        }
        acc
    }

    /// Pseudo-remainder: `lc(d)^k * self = q * d + r` with `deg r < deg d`,
    /// where `k = deg(self) - deg(d) + 1`.
    pub fn pseudo_rem(&self, d: &IntPoly) -> IntPoly {
        let dd = d.degree().expect("pseudo_rem by zero polynomial");
        let lc = d.leading().unwrap().clone();
        let mut r = self.clone();
        while let Some(rd) = r.degree() {
            if rd < dd {
                break;
            }
            let shift = rd - dd;
            let rl = r.leading().unwrap().clone();
            let mut next = r.scale(&lc).coeffs;
            for (i, c) in d.coeffs.iter().enumerate() {
                next[i + shift] -= &rl * c;
            }
            r = IntPoly::from_coeffs(next);
        }
        r
    }

    /// Exact division over the integers. Returns `None` when `d` does not
    /// divide `self` in `Z[x]`.
    pub fn div_exact(&self, d: &IntPoly) -> Option<IntPoly> {
        let dd = d.degree()?;
        if self.is_zero() {
            return Some(IntPoly::zero());
        }
        let lc = d.leading().unwrap();
        let sd = self.degree().unwrap();
        if sd < dd {
            return None;
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); sd - dd + 1];
        for k in (0..=sd - dd).rev() {
            let top = &rem[k + dd];
            if top.is_zero() {
                continue;
            }
            let (q, r) = top.div_rem(lc);
            if !r.is_zero() {
                return None;
            }
            for (i, c) in d.coeffs.iter().enumerate() {
                rem[k + i] -= &q * c;
            }
            quot[k] = q;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(IntPoly::from_coeffs(quot))
    }

    /// Greatest common divisor by the primitive Euclidean algorithm. The
    /// result has positive leading coefficient and carries the gcd of the
    /// two contents.
    pub fn gcd(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() {
            return other.primitive_part().scale(&other.content());
        }
        if other.is_zero() {
            return self.primitive_part().scale(&self.content());
        }
        let content = self.content().gcd(&other.content());
        let (mut a, mut b) = (self.primitive_part(), other.primitive_part());
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b);
            a = b;
            b = r.primitive_part();
        }
        a.primitive_part().scale(&content)
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly({self})")
    }
}

/// Canonical form: descending powers, `*` between coefficient and `x`,
/// unit coefficients elided, e.g. `x^4-2*x^2+1`.
impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if c.is_negative() {
                f.write_str("-")?;
            } else if !first {
                f.write_str("+")?;
            }
            first = false;
            match k {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    f.write_str("x")?;
                    if k > 1 {
                        write!(f, "^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl FromStr for IntPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_poly(s)
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;

    fn add(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::from_coeffs((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;

    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::from_coeffs((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;

    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::from_coeffs(out)
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;

    fn neg(self) -> IntPoly {
        IntPoly::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Add for IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: IntPoly) -> IntPoly {
        &self + &rhs
    }
}

impl Sub for IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: IntPoly) -> IntPoly {
        &self - &rhs
    }
}

impl Mul for IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: IntPoly) -> IntPoly {
        &self * &rhs
    }
}

impl Neg for IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    #[test]
    fn eval_examples() {
        assert_eq!(p(&[-1, 0, 1]).eval_i64(4), BigInt::from(15));
        assert_eq!(IntPoly::zero().eval_i64(7), BigInt::zero());
        let sq = p(&[-1, 0, 1]).pow(2);
        assert_eq!(sq.eval_i64(3), BigInt::from(64));
    }

    #[test]
    fn trailing_zeros_are_trimmed() {
        assert_eq!(p(&[1, 2, 0, 0]).degree(), Some(1));
        assert!(p(&[0, 0]).is_zero());
        assert_eq!(IntPoly::zero().degree(), None);
    }

    #[test]
    fn display_canonical() {
        assert_eq!(p(&[1, 0, -2, 0, 1]).to_string(), "x^4-2*x^2+1");
        assert_eq!(p(&[0, 1]).to_string(), "x");
        assert_eq!(p(&[1, 2]).to_string(), "2*x+1");
        assert_eq!(p(&[3, 0, -1]).to_string(), "-x^2+3");
        assert_eq!(p(&[-5]).to_string(), "-5");
        assert_eq!(IntPoly::zero().to_string(), "0");
    }

    #[test]
    fn gcd_of_shared_factor() {
        // (x-1)(x+2) and (x-1)(x-3)
        let a = &p(&[-1, 1]) * &p(&[2, 1]);
        let b = &p(&[-1, 1]) * &p(&[-3, 1]);
        assert_eq!(a.gcd(&b), p(&[-1, 1]));
        // contents: 6x and 4x^2 share 2x
        assert_eq!(p(&[0, 6]).gcd(&p(&[0, 0, 4])), p(&[0, 2]));
    }

    #[test]
    fn div_exact_detects_remainders() {
        let a = &p(&[-1, 1]) * &p(&[1, 2]);
        assert_eq!(a.div_exact(&p(&[1, 2])), Some(p(&[-1, 1])));
        assert_eq!(a.div_exact(&p(&[1, 3])), None);
        assert_eq!(p(&[1, 1]).div_exact(&p(&[0, 2])), None);
    }

    #[test]
    fn compose_linear_shifts() {
        // (x^2)(2x+1) = 4x^2+4x+1
        let q = p(&[0, 0, 1]).compose_linear(&BigInt::from(2), &BigInt::one());
        assert_eq!(q, p(&[1, 4, 4]));
    }

    fn small_poly() -> impl Strategy<Value = IntPoly> {
        prop::collection::vec(-20i64..=20, 0..6).prop_map(|c| IntPoly::from_i64s(&c))
    }

    proptest! {
        #[test]
        fn horner_matches_power_sum(poly in small_poly(), x in -50i64..=50) {
            let xb = BigInt::from(x);
            let naive = poly
                .coeffs()
                .iter()
                .enumerate()
                .fold(BigInt::zero(), |acc, (i, c)| acc + c * num_traits::pow(xb.clone(), i));
            prop_assert_eq!(poly.eval(&xb), naive);
        }

        #[test]
        fn product_evaluates_pointwise(a in small_poly(), b in small_poly(), x in -30i64..=30) {
            prop_assert_eq!((&a * &b).eval_i64(x), a.eval_i64(x) * b.eval_i64(x));
        }

        #[test]
        fn gcd_divides_both(a in small_poly(), b in small_poly(), c in small_poly()) {
            let pa = &a * &c;
            let pb = &b * &c;
            prop_assume!(!pa.is_zero() && !pb.is_zero());
            let g = pa.gcd(&pb);
            prop_assert!(pa.div_exact(&g).is_some());
            prop_assert!(pb.div_exact(&g).is_some());
            // c's primitive part always divides the gcd
            if !c.is_constant() {
                prop_assert!(g.div_exact(&c.primitive_part()).is_some());
            }
        }
    }
}
