//! The gcd decomposition of pairs and the double sum
//! `S_F(N) = sum over n < b < a <= N of gcd(F(a), F(b)) / F(a)`.
//!
//! For `F = f^m` and `f(a) > f(b) > 0` write `g = gcd(f(a), f(b))`,
//! `s = f(a) / g`, `r = f(b) / g`. Then `gcd(F(a), F(b)) / F(a) = 1 / s^m`,
//! and grouping pairs by `(s, r)` rewrites the sum as
//! `sum_{s, r} M_{s,r}(N) / s^m`.
//!
//! Pairs run over `pair_threshold() < b < a`, the range where both `F` and
//! `f` are positive and increasing.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, Zero};

use crate::error::{Error, Result};
use crate::poly_core::SightLine;
use crate::rational::{tree_sum, LcmSum};
use crate::visibility;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GcdTriple {
    pub g: BigInt,
    pub s: BigInt,
    pub r: BigInt,
}

/// `M_{s,r}(N)` for every `(s, r)` that occurs, keyed by `(s, r)`.
pub type Spectrum = BTreeMap<(BigInt, BigInt), u64>;

fn triple_of(fa: &BigInt, fb: &BigInt) -> GcdTriple {
    let g = fa.gcd(fb);
    GcdTriple {
        s: fa / &g,
        r: fb / &g,
        g,
    }
}

pub fn gsr(line: &SightLine, a: u64, b: u64) -> Result<GcdTriple> {
    if b <= line.pair_threshold() || b >= a {
        return Err(Error::PairOutsideDomain);
    }
    let f = line.base();
    Ok(triple_of(&f.eval_u64(a), &f.eval_u64(b)))
}

/// Checks `gcd(f(a)^m, f(b)^m) = gcd(f(a), f(b))^m` directly.
pub fn gcd_power_identity_check(line: &SightLine, a: u64, b: u64) -> Result<bool> {
    let t = gsr(line, a, b)?;
    let m = line.exponent();
    let big_f = line.poly();
    let lhs = big_f.eval_u64(a).gcd(&big_f.eval_u64(b));
    Ok(lhs == Pow::pow(&t.g, m))
}

/// Values `f(0..=n)`.
fn base_values(line: &SightLine, n: u64) -> Vec<BigInt> {
    (0..=n).map(|x| line.base().eval_u64(x)).collect()
}

/// `S_F(1), ..., S_F(n_max)`, accumulated column by column.
pub fn s_sum_direct_series(line: &SightLine, n_max: u64) -> Vec<BigRational> {
    let t = line.pair_threshold();
    let m = line.exponent();
    let f = base_values(line, n_max);
    let one = BigInt::one();
    let mut acc = LcmSum::new();
    let mut out = Vec::with_capacity(n_max as usize);
    for a in 1..=n_max {
        for b in t + 1..a {
            let fa = &f[a as usize];
            let s = fa / fa.gcd(&f[b as usize]);
            acc.add(&one, &Pow::pow(&s, m));
        }
        out.push(acc.value());
    }
    out
}

/// `S_F(N)` summed pair by pair.
pub fn s_sum_direct(line: &SightLine, n: u64) -> BigRational {
    s_sum_direct_series(line, n)
        .pop()
        .unwrap_or_else(BigRational::zero)
}

/// Pairs contributed by column `a` to the spectrum.
fn add_column(spectrum: &mut Spectrum, f: &[BigInt], threshold: u64, a: u64) {
    for b in threshold + 1..a {
        let t = triple_of(&f[a as usize], &f[b as usize]);
        *spectrum.entry((t.s, t.r)).or_insert(0) += 1;
    }
}

/// The full `(s, r)` spectrum of pairs `threshold < b < a <= N`.
pub fn msr_spectrum(line: &SightLine, n: u64) -> Spectrum {
    let f = base_values(line, n);
    let mut spectrum = Spectrum::new();
    for a in 1..=n {
        add_column(&mut spectrum, &f, line.pair_threshold(), a);
    }
    spectrum
}

/// Spectra for every `N` in `1..=n_max` are built incrementally and handed
/// to `visit(N, spectrum)`.
pub fn for_each_spectrum(line: &SightLine, n_max: u64, mut visit: impl FnMut(u64, &Spectrum)) {
    let f = base_values(line, n_max);
    let mut spectrum = Spectrum::new();
    for a in 1..=n_max {
        add_column(&mut spectrum, &f, line.pair_threshold(), a);
        visit(a, &spectrum);
    }
}

/// `M_{s,r}(N)` by a filtered scan over pairs.
pub fn m_sr(line: &SightLine, n: u64, s: &BigInt, r: &BigInt) -> Result<u64> {
    if s <= r {
        return Err(Error::RequireSGreaterR);
    }
    if !r.is_positive() || !s.gcd(r).is_one() {
        return Ok(0);
    }
    let t = line.pair_threshold();
    if n <= t + 1 || *s > line.base().eval_u64(n) {
        return Ok(0);
    }
    let f = base_values(line, n);
    let mut count = 0;
    for a in t + 2..=n {
        let fa = &f[a as usize];
        // s | f(a) is necessary; skip the inner loop otherwise
        if !fa.is_multiple_of(s) {
            continue;
        }
        let g = fa / s;
        let target = r * &g;
        for b in t + 1..a {
            let fb = &f[b as usize];
            if *fb == target && fa.gcd(fb) == g {
                count += 1;
            }
        }
    }
    Ok(count)
}

/// `sum_{(s, r)} M_{s,r} / s^m` over a spectrum.
pub fn rearranged_from_spectrum(spectrum: &Spectrum, m: u32) -> BigRational {
    // M / s^m grouped by s first, then summed by binary splitting
    let mut by_s: BTreeMap<&BigInt, u64> = BTreeMap::new();
    for ((s, _r), count) in spectrum {
        *by_s.entry(s).or_insert(0) += count;
    }
    let terms = by_s
        .into_iter()
        .map(|(s, count)| BigRational::new(BigInt::from(count), Pow::pow(s, m)))
        .collect();
    tree_sum(terms)
}

/// `S_F(N)` through the grouped form.
pub fn s_sum_rearranged(line: &SightLine, n: u64) -> BigRational {
    rearranged_from_spectrum(&msr_spectrum(line, n), line.exponent())
}

/// Witnesses for `#Invisible_F(N) <= N S_F(N) + #E_F(N) <= N S_F(N) + 2 n N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GcdSumReport {
    pub n: u64,
    /// Threshold `n` the pair range and the `E` term are taken over.
    pub threshold: u64,
    pub s_direct: BigRational,
    pub s_rearranged: BigRational,
    pub invisible_count: u64,
    pub ef_count: u64,
    /// `N S_F(N) + #E_F(N)`.
    pub block_rhs: BigRational,
    /// `N S_F(N) + 2 n N`.
    pub bound_rhs: BigRational,
}

impl GcdSumReport {
    pub fn identity_holds(&self) -> bool {
        self.s_direct == self.s_rearranged
    }

    pub fn chain_holds(&self) -> bool {
        let inv = BigRational::from_integer(self.invisible_count.into());
        inv <= self.block_rhs && self.block_rhs <= self.bound_rhs
    }
}

pub fn verify_inequality_chain(line: &SightLine, n: u64) -> Result<GcdSumReport> {
    let threshold = line.pair_threshold();
    if n <= threshold {
        return Err(Error::ThresholdExceedsRange);
    }
    let s_direct = s_sum_direct(line, n);
    let s_rearranged = s_sum_rearranged(line, n);
    let (_, invisible_count) = visibility::count_visibility(line, n);
    let ef_count = visibility::ef_count_with_threshold(line, n, threshold);
    let nn = BigRational::from_integer(n.into());
    let ns = &nn * &s_direct;
    let block_rhs = &ns + BigRational::from_integer(ef_count.into());
    let bound_rhs = ns + BigRational::from_integer((2 * threshold * n).into());
    Ok(GcdSumReport {
        n,
        threshold,
        s_direct,
        s_rearranged,
        invisible_count,
        ef_count,
        block_rhs,
        bound_rhs,
    })
}
