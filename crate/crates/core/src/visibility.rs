//! Visibility along a polynomial line of sight.
//!
//! For `F(a) != 0` the only candidate slope is `t = h / F(a)`, so `(a, h)`
//! is invisible exactly when some `u < a` has `h F(u) / F(a)` a positive
//! integer. Writing `s = |F(a)| / gcd(F(a), F(u))`, that happens iff `F(u)`
//! has the sign of `F(a)` and `s | h`. The sieve marks those multiples
//! column by column. When `F(a) = 0` no slope exists and the whole column
//! is invisible.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::poly_core::{IntPoly, SightLine};
use crate::values::ValueTable;

/// A lattice point with positive coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LatticePoint {
    pub a: u64,
    pub h: u64,
}

/// Classification of `[1, N]^2` with per-column invisible ordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VisibilityGrid {
    pub n: u64,
    /// `invisible[a - 1]` lists the invisible `h` of column `a`, ascending.
    pub invisible: Vec<Vec<u64>>,
    pub visible_count: u64,
    pub invisible_count: u64,
}

impl VisibilityGrid {
    pub fn is_visible(&self, a: u64, h: u64) -> bool {
        self.invisible[(a - 1) as usize].binary_search(&h).is_err()
    }
}

/// Definition check by exact rational arithmetic, for any nonzero `F`.
pub fn visible_along(poly: &IntPoly, a: u64, h: u64) -> bool {
    assert!(a >= 1 && h >= 1, "lattice points have positive coordinates");
    let fa = poly.eval_u64(a);
    if fa.is_zero() {
        return false;
    }
    let h = BigInt::from(h);
    !(1..a).any(|u| blocks(&poly.eval_u64(u), &fa, &h).is_some())
}

/// `k = h F(u) / F(a)` when it is a positive integer.
fn blocks(fu: &BigInt, fa: &BigInt, h: &BigInt) -> Option<BigInt> {
    let (k, rem) = (h * fu).div_rem(fa);
    (rem.is_zero() && k.is_positive()).then_some(k)
}

pub fn visible_oracle(line: &SightLine, a: u64, h: u64) -> bool {
    visible_along(line.poly(), a, h)
}

/// Points `(b, k)` blocking `(a, h)`, ascending in `b`, at most `limit`.
pub fn blockers(line: &SightLine, a: u64, h: u64, limit: usize) -> Vec<(u64, BigInt)> {
    assert!(a >= 1 && h >= 1, "lattice points have positive coordinates");
    let poly = line.poly();
    let fa = poly.eval_u64(a);
    if fa.is_zero() {
        return Vec::new();
    }
    let h = BigInt::from(h);
    (1..a)
        .filter_map(|b| blocks(&poly.eval_u64(b), &fa, &h).map(|k| (b, k)))
        .take(limit)
        .collect()
}

/// Per-column sieve result.
struct Column {
    /// Invisible ordinates, or `None` when only counts were requested.
    listing: Option<Vec<u64>>,
    invisible: u64,
    /// Invisible points none of whose blockers lies past the threshold.
    low_only: u64,
}

fn sieve_column(table: &ValueTable, a: u64, n: u64, threshold: u64, list: bool) -> Column {
    let len = n as usize + 1;
    if table.sign(a) == 0 {
        return Column {
            listing: list.then(|| (1..=n).collect()),
            invisible: n,
            low_only: if a <= threshold { n } else { 0 },
        };
    }
    let sa = table.sign(a);
    let mut low = Vec::new();
    let mut high = Vec::new();
    for b in 1..a {
        if table.sign(b) != sa {
            continue;
        }
        if let Some(s) = table.cofactor_upto(a, b, n) {
            if b <= threshold {
                low.push(s);
            } else {
                high.push(s);
            }
        }
    }
    let mut marks = vec![false; len];
    let mark = |marks: &mut [bool], mut moduli: Vec<u64>| -> u64 {
        moduli.sort_unstable();
        moduli.dedup();
        let mut fresh = 0;
        for s in moduli {
            let s = s as usize;
            for h in (s..len).step_by(s) {
                if !marks[h] {
                    marks[h] = true;
                    fresh += 1;
                }
            }
        }
        fresh
    };
    let high_count = mark(&mut marks, high);
    let low_only = mark(&mut marks, low);
    let invisible = high_count + low_only;
    let listing = list.then(|| (1..=n).filter(|&h| marks[h as usize]).collect());
    Column {
        listing,
        invisible,
        low_only,
    }
}

fn sieve(line: &SightLine, n: u64, threshold: u64, list: bool) -> Vec<Column> {
    let table = ValueTable::new(line.poly(), n);
    (1..=n)
        .into_par_iter()
        .map(|a| sieve_column(&table, a, n, threshold, list))
        .collect()
}

/// Classifies every point of `[1, N]^2`, keeping the invisible listings.
pub fn sieve_invisible(line: &SightLine, n: u64) -> VisibilityGrid {
    assert!(n >= 1, "N must be positive");
    let columns = sieve(line, n, line.n_f(), true);
    let invisible_count = columns.iter().map(|c| c.invisible).sum();
    VisibilityGrid {
        n,
        invisible: columns.into_iter().map(|c| c.listing.unwrap()).collect(),
        visible_count: n * n - invisible_count,
        invisible_count,
    }
}

/// `(visible, invisible)` over `[1, N]^2`.
pub fn count_visibility(line: &SightLine, n: u64) -> (u64, u64) {
    assert!(n >= 1, "N must be positive");
    let invisible: u64 = sieve(line, n, line.n_f(), false)
        .iter()
        .map(|c| c.invisible)
        .sum();
    (n * n - invisible, invisible)
}

/// `#E_F(N)`: invisible points of `[1, N]^2` all of whose blockers have
/// first coordinate at most `n_F`.
pub fn ef_count(line: &SightLine, n: u64) -> u64 {
    ef_count_with_threshold(line, n, line.n_f())
}

/// `#E` taken over any valid threshold `threshold >= n_F`.
pub fn ef_count_with_threshold(line: &SightLine, n: u64, threshold: u64) -> u64 {
    assert!(n >= 1, "N must be positive");
    assert!(threshold >= line.n_f(), "threshold below n_F");
    sieve(line, n, threshold, false)
        .iter()
        .map(|c| c.low_only)
        .sum()
}

/// `#Block_F(a, b; N)`: ordinates `h <= N` for which `(b, k)` blocks
/// `(a, h)` for some positive integer `k`.
pub fn block_count(line: &SightLine, a: u64, b: u64, n: u64) -> Result<u64> {
    if b >= a {
        return Err(Error::BlockerNotSmaller);
    }
    if b == 0 {
        return Err(Error::InvalidArgument("b must be positive".into()));
    }
    let poly = line.poly();
    let (fa, fb) = (poly.eval_u64(a), poly.eval_u64(b));
    if fa.is_zero() || fb.is_zero() || fa.is_positive() != fb.is_positive() {
        return Ok(0);
    }
    let s = fa.abs() / fa.gcd(&fb);
    Ok(u64::try_from(BigInt::from(n) / s).unwrap())
}
