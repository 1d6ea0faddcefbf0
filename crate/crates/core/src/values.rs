//! Tabulated values `F(0..=n)` with a fixed-width fast path.
//!
//! When every tabulated `|F(x)|` fits in 126 bits, gcds and quotients of
//! those values fit too, so `i128` arithmetic is exact.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::poly_core::IntPoly;

const SMALL_LIMIT: u128 = 1 << 126;

#[derive(Debug, Clone)]
pub(crate) enum ValueTable {
    Small(Vec<i128>),
    Big(Vec<BigInt>),
}

impl ValueTable {
    /// Values at `0..=n`.
    pub(crate) fn new(poly: &IntPoly, n: u64) -> Self {
        let big: Vec<BigInt> = (0..=n).map(|x| poly.eval_u64(x)).collect();
        let small: Option<Vec<i128>> = big
            .iter()
            .map(|v| v.to_i128().filter(|s| s.unsigned_abs() < SMALL_LIMIT))
            .collect();
        match small {
            Some(s) => ValueTable::Small(s),
            None => ValueTable::Big(big),
        }
    }

    /// Sign of `F(x)` as -1, 0 or 1.
    pub(crate) fn sign(&self, x: u64) -> i8 {
        match self {
            ValueTable::Small(v) => v[x as usize].signum() as i8,
            ValueTable::Big(v) => {
                let s = &v[x as usize];
                if s.is_zero() {
                    0
                } else if s.is_positive() {
                    1
                } else {
                    -1
                }
            }
        }
    }

    /// `|F(a)| / gcd(F(a), F(b))` when it is at most `cap`. `F(a)` must be
    /// nonzero.
    pub(crate) fn cofactor_upto(&self, a: u64, b: u64, cap: u64) -> Option<u64> {
        match self {
            ValueTable::Small(v) => {
                let fa = v[a as usize].unsigned_abs();
                let fb = v[b as usize].unsigned_abs();
                let q = fa / fa.gcd(&fb);
                (q <= cap as u128).then_some(q as u64)
            }
            ValueTable::Big(v) => {
                let fa = v[a as usize].abs();
                let g = fa.gcd(&v[b as usize]);
                (fa / g).to_u64().filter(|&q| q <= cap)
            }
        }
    }

    #[cfg(test)]
    pub(crate) fn is_small(&self) -> bool {
        matches!(self, ValueTable::Small(_))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly_core::parse_poly;

    #[test]
    fn big_and_small_agree() {
        let poly = parse_poly("(x^2-1)^2").unwrap();
        let small = ValueTable::new(&poly, 40);
        assert!(small.is_small());
        let big = match &small {
            ValueTable::Small(v) => ValueTable::Big(v.iter().map(|&x| BigInt::from(x)).collect()),
            ValueTable::Big(_) => unreachable!(),
        };
        for a in 2..=40u64 {
            if small.sign(a) == 0 {
                continue;
            }
            for b in 1..a {
                assert_eq!(small.sign(b), big.sign(b));
                assert_eq!(
                    small.cofactor_upto(a, b, 10_000),
                    big.cofactor_upto(a, b, 10_000)
                );
            }
        }
    }

    #[test]
    fn huge_values_take_big_path() {
        let poly = parse_poly("x^40").unwrap();
        assert!(!ValueTable::new(&poly, 20).is_small());
        assert!(ValueTable::new(&poly, 8).is_small());
    }
}
