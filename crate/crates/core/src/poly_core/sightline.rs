use num_traits::Signed;

use super::{compute_nf, perfect_power, squarefree_part, IntPoly};
use crate::error::{Error, Result};

/// A validated line of sight `F = f^m`.
///
/// `n_big_f` is the minimal threshold of `F` itself. `n_small_f` is the same
/// threshold computed for `f`; above `max(n_F, n_f)` both `F` and `f` are
/// positive and strictly increasing, which is what the gcd-sum
/// decomposition needs (for even `m` the two thresholds can differ in
/// either direction).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SightLine {
    f: IntPoly,
    m: u32,
    big_f: IntPoly,
    n_big_f: u64,
    n_small_f: u64,
    distinct_roots: usize,
}

impl SightLine {
    pub fn from_power(f: IntPoly, m: u32) -> Result<Self> {
        if m == 0 {
            return Err(Error::ZeroExponent);
        }
        if f.is_constant() {
            return Err(Error::ConstantPolynomial);
        }
        if !f.leading().unwrap().is_positive() {
            return Err(Error::NonPositiveLeading);
        }
        let big_f = f.pow(m);
        let n_big_f = compute_nf(&big_f)?;
        let n_small_f = compute_nf(&f)?;
        let distinct_roots = squarefree_part(&f)?.degree().unwrap();
        Ok(SightLine {
            f,
            m,
            big_f,
            n_big_f,
            n_small_f,
            distinct_roots,
        })
    }

    /// Accepts an expanded `F` and splits off the largest power `F = f^m`.
    pub fn from_poly(big_f: IntPoly) -> Result<Self> {
        if big_f.is_constant() {
            return Err(Error::ConstantPolynomial);
        }
        let (f, m) = perfect_power(&big_f)?;
        Self::from_power(f, m)
    }

    pub fn base(&self) -> &IntPoly {
        &self.f
    }

    pub fn exponent(&self) -> u32 {
        self.m
    }

    /// The expanded `F = f^m`.
    pub fn poly(&self) -> &IntPoly {
        &self.big_f
    }

    pub fn n_f(&self) -> u64 {
        self.n_big_f
    }

    pub fn base_threshold(&self) -> u64 {
        self.n_small_f
    }

    /// Lower end of the pair range used by the gcd sums: pairs
    /// `pair_threshold() < b < a` have `f(a) > f(b) > 0`.
    pub fn pair_threshold(&self) -> u64 {
        self.n_big_f.max(self.n_small_f)
    }

    pub fn distinct_roots(&self) -> usize {
        self.distinct_roots
    }

    pub fn degree(&self) -> usize {
        self.f.degree().unwrap()
    }
}
