//! Exact rational summation helpers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Running sum of terms `c / q` kept over a least common denominator, so
/// each update costs a few linear-size big-integer operations instead of a
/// full big gcd.
#[derive(Debug, Clone)]
pub struct LcmSum {
    num: BigInt,
    den: BigInt,
}

impl Default for LcmSum {
    fn default() -> Self {
        LcmSum {
            num: BigInt::zero(),
            den: BigInt::one(),
        }
    }
}

impl LcmSum {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds `c / q` with `q > 0`.
    pub fn add(&mut self, c: &BigInt, q: &BigInt) {
        let g = (&self.den % q).gcd(q);
        let lift = q / &g;
        if !lift.is_one() {
            self.num *= &lift;
            self.den *= &lift;
        }
        self.num += c * (&self.den / q);
    }

    pub fn value(&self) -> BigRational {
        BigRational::new(self.num.clone(), self.den.clone())
    }
}

/// Sum by balanced binary splitting; keeps operand sizes matched.
pub fn tree_sum(mut terms: Vec<BigRational>) -> BigRational {
    if terms.is_empty() {
        return BigRational::zero();
    }
    while terms.len() > 1 {
        let mut next = Vec::with_capacity(terms.len().div_ceil(2));
        let mut it = terms.into_iter();
        while let Some(a) = it.next() {
            match it.next() {
                Some(b) => next.push(a + b),
                None => next.push(a),
            }
        }
        terms = next;
    }
    terms.pop().unwrap()
}
