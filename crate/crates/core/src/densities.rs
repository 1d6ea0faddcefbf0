//! Reference and empirical densities of visible points.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

use crate::curves::{linear_factor_probe, CurveSpec};
use crate::error::{Error, Result};
use crate::poly_core::{is_excluded_form, IntPoly, SightLine};
use crate::visibility::count_visibility;

/// A floating value with an absolute error bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Certified {
    pub value: f64,
    pub error_bound: f64,
}

const EPS: f64 = f64::EPSILON;

/// `zeta(k)` for integer `k >= 2` with `|result - zeta(k)| <= tol`.
///
/// Partial sum below `M` plus the Euler-Maclaurin tail through the `B_2`
/// term; the remainder is bounded by the first omitted term
/// `k (k+1) (k+2) M^{-k-3} / 720`. Summation runs from the small end and the
/// rounding error is budgeted against `tol` as well.
pub fn zeta(k: u32, tol: f64) -> Result<Certified> {
    if k < 2 {
        return Err(Error::Divergent);
    }
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::InvalidArgument("tolerance must be positive".into()));
    }
    let kf = k as f64;
    let remainder = |m: f64| kf * (kf + 1.0) * (kf + 2.0) * m.powf(-kf - 3.0) / 720.0;
    let mut m = 1u64;
    while remainder(m as f64) > tol / 2.0 {
        m += 1 + m / 8;
    }
    let rounding = (m as f64 + 10.0) * EPS * 2.0;
    if rounding > tol / 2.0 {
        return Err(Error::ToleranceTooSmall(format!(
            "tolerance {tol:e} is below double-precision rounding"
        )));
    }
    let mf = m as f64;
    let mut sum =
        mf.powf(1.0 - kf) / (kf - 1.0) + mf.powf(-kf) / 2.0 + kf * mf.powf(-kf - 1.0) / 12.0;
    for n in (1..m).rev() {
        sum += (n as f64).powi(-(k as i32));
    }
    Ok(Certified {
        value: sum,
        error_bound: remainder(mf) + rounding,
    })
}

/// Tolerance used for zeta values inside density formulas.
pub const DENSITY_ZETA_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DensityStatus {
    Proven,
    /// The value 1 predicted for polynomials with two or more distinct roots.
    Conjectural,
}

impl DensityStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            DensityStatus::Proven => "proven",
            DensityStatus::Conjectural => "conjectural",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReferenceDensity {
    pub value: f64,
    pub error_bound: f64,
    pub status: DensityStatus,
}

fn prime_divisors(mut u: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= u {
        if u.is_multiple_of(p) {
            out.push(p);
            while u.is_multiple_of(p) {
                u /= p;
            }
        }
        p += 1;
    }
    if u > 1 {
        out.push(u);
    }
    out
}

/// Limiting density of visible points along `F`, when known or predicted.
///
/// `a (u x + v)^b` gives `(1/zeta(1+b)) prod_{p | u} (1 - p^{-(1+b)})^{-1}`.
/// Anything with two or more distinct roots gets 1, proven when
/// `F = f^m` with `m >= 2` and `deg f >= 2`, conjectural otherwise.
pub fn known_density(poly: &IntPoly) -> Result<Option<ReferenceDensity>> {
    if poly.is_constant() {
        return Err(Error::ConstantPolynomial);
    }
    if !poly.leading().unwrap().is_positive() {
        return Err(Error::NonPositiveLeading);
    }
    if let Some(form) = is_excluded_form(poly)? {
        let z = zeta(1 + form.b, DENSITY_ZETA_TOL)?;
        let u = form.u.to_u64().ok_or_else(|| {
            Error::InvalidArgument("linear coefficient too large to factor".into())
        })?;
        let s = 1 + form.b as i32;
        let mut correction = 1.0;
        let primes = prime_divisors(u);
        for &p in &primes {
            correction /= 1.0 - (p as f64).powi(-s);
        }
        // 1/z moves by at most err/z^2 <= err since z > 1
        let value = correction / z.value;
        let error_bound = correction * z.error_bound + 4.0 * EPS * (primes.len() as f64 + 1.0);
        return Ok(Some(ReferenceDensity {
            value,
            error_bound,
            status: DensityStatus::Proven,
        }));
    }
    let line = SightLine::from_poly(poly.clone())?;
    if line.distinct_roots() < 2 {
        return Ok(None);
    }
    let status = if line.exponent() >= 2 && line.base().degree() >= Some(2) {
        DensityStatus::Proven
    } else {
        DensityStatus::Conjectural
    };
    Ok(Some(ReferenceDensity {
        value: 1.0,
        error_bound: 0.0,
        status,
    }))
}

/// Visible proportion of `[1, N]^2`.
pub fn empirical_density(line: &SightLine, n: u64) -> f64 {
    let (visible, _) = count_visibility(line, n);
    visible as f64 / (n as f64 * n as f64)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityRow {
    pub n: u64,
    pub visible: u64,
    pub invisible: u64,
    pub density: f64,
}

impl DensityRow {
    pub fn invisible_fraction(&self) -> f64 {
        self.invisible as f64 / (self.n as f64 * self.n as f64)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DensityReport {
    /// Canonical form of `F`.
    pub poly: String,
    pub rows: Vec<DensityRow>,
    pub reference: Option<ReferenceDensity>,
    pub fitted_exponent: Option<f64>,
    pub exponent_target: Option<f64>,
}

/// Least-squares slope of `ln(invisible)` against `ln(N)` over rows with
/// invisible points; `None` with fewer than two such rows.
pub fn fit_exponent(rows: &[DensityRow]) -> Option<f64> {
    let pts: Vec<(f64, f64)> = rows
        .iter()
        .filter(|r| r.invisible > 0)
        .map(|r| ((r.n as f64).ln(), (r.invisible as f64).ln()))
        .collect();
    if pts.len() < 2 {
        return None;
    }
    let k = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / k;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / k;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    if sxx == 0.0 {
        return None;
    }
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    Some(sxy / sxx)
}

/// Largest `s` in the probe sweep behind the exponent target.
pub const TARGET_PROBE_S_MAX: u64 = 12;
const TARGET_PROBE_BITS: u32 = 40;

/// `1 + 1/2` when `F = f^m` is in the proven class and the linear factor
/// probe finds no line on `G_{s,r}` for any coprime `r < s <= 12`.
pub fn exponent_target(line: &SightLine) -> Option<f64> {
    if line.exponent() < 2 || line.degree() < 2 || line.distinct_roots() < 2 {
        return None;
    }
    for s in 2..=TARGET_PROBE_S_MAX {
        for r in 1..s {
            if num_integer::gcd(r, s) != 1 {
                continue;
            }
            let curve =
                CurveSpec::new(line.base().clone(), BigInt::from(s), BigInt::from(r)).ok()?;
            match linear_factor_probe(&curve, TARGET_PROBE_BITS) {
                Ok(rep) if !rep.linear_factor_found => {}
                _ => return None,
            }
        }
    }
    Some(1.0 + 1.0 / 2.0)
}

/// Density rows for each `N`, in the given order; the exponent fit needs at
/// least two rows to be present.
pub fn density_table(line: &SightLine, ns: &[u64]) -> Result<DensityReport> {
    if ns.is_empty() {
        return Err(Error::InvalidArgument("need at least one N".into()));
    }
    if ns.contains(&0) {
        return Err(Error::InvalidArgument("N must be positive".into()));
    }
    let rows: Vec<DensityRow> = ns
        .iter()
        .map(|&n| {
            let (visible, invisible) = count_visibility(line, n);
            DensityRow {
                n,
                visible,
                invisible,
                density: visible as f64 / (n as f64 * n as f64),
            }
        })
        .collect();
    let fitted = fit_exponent(&rows);
    Ok(DensityReport {
        poly: line.poly().to_string(),
        rows,
        reference: known_density(line.poly())?,
        fitted_exponent: fitted,
        exponent_target: exponent_target(line),
    })
}

/// Density table over a strictly ascending list of at least two sizes.
pub fn convergence_report(line: &SightLine, ns: &[u64]) -> Result<DensityReport> {
    if ns.len() < 2 {
        return Err(Error::InvalidArgument(
            "convergence report needs at least two N".into(),
        ));
    }
    if ns.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidArgument(
            "N list must be strictly ascending".into(),
        ));
    }
    density_table(line, ns)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly_core::parse_poly;
    use std::f64::consts::PI;

    fn line(text: &str) -> SightLine {
        SightLine::from_poly(parse_poly(text).unwrap()).unwrap()
    }

    fn density(text: &str) -> ReferenceDensity {
        known_density(&parse_poly(text).unwrap()).unwrap().unwrap()
    }

    #[test]
    fn zeta_values() {
        for tol in [1e-6, 1e-9, 1e-12] {
            let z = zeta(2, tol).unwrap();
            assert!((z.value - PI * PI / 6.0).abs() <= tol);
            assert!(z.error_bound <= tol);
        }
        assert!((zeta(3, 1e-12).unwrap().value - 1.202_056_903_159_594_2).abs() <= 1e-12);
        assert!((zeta(4, 1e-12).unwrap().value - PI.powi(4) / 90.0).abs() <= 1e-12);
        assert!((zeta(20, 1e-12).unwrap().value - 1.000_000_953_962_033_9).abs() <= 1e-12);
    }

    #[test]
    fn zeta_errors() {
        assert_eq!(zeta(1, 1e-6), Err(Error::Divergent));
        assert_eq!(zeta(0, 1e-6), Err(Error::Divergent));
        assert!(matches!(zeta(2, 1e-18), Err(Error::ToleranceTooSmall(_))));
        assert!(matches!(zeta(2, 0.0), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn classical_densities() {
        assert!((density("x").value - 6.0 / (PI * PI)).abs() < 1e-11);
        assert!((density("2*x+1").value - 8.0 / (PI * PI)).abs() < 1e-11);
        // u = 6: primes 2 and 3
        let expect = 6.0 / (PI * PI) / (1.0 - 0.25) / (1.0 - 1.0 / 9.0);
        assert!((density("6*x-1").value - expect).abs() < 1e-11);
        let z3 = zeta(3, 1e-12).unwrap().value;
        assert!((density("x^2").value - 1.0 / z3).abs() < 1e-11);
        assert_eq!(density("x").status, DensityStatus::Proven);
    }

    #[test]
    fn density_ignores_scalar_multiple() {
        for b in 1..=3 {
            let base = density(&format!("x^{b}")).value;
            for alpha in [2, 7] {
                assert_eq!(density(&format!("{alpha}*x^{b}")).value, base);
            }
            // u = 1 leaves only the zeta factor
            let z = zeta(1 + b, DENSITY_ZETA_TOL).unwrap().value;
            assert_eq!(density(&format!("3*(x+5)^{b}")).value, 1.0 / z);
            assert!(density(&format!("(4*x+3)^{b}")).value <= 1.0);
        }
    }

    #[test]
    fn multi_root_densities() {
        let d = density("(x^2-1)^2");
        assert_eq!((d.value, d.status), (1.0, DensityStatus::Proven));
        assert_eq!(density("x^2-1").status, DensityStatus::Conjectural);
        assert_eq!(density("x^2+x").status, DensityStatus::Conjectural);
        assert_eq!(density("(x^2+x)^3").status, DensityStatus::Proven);
        assert_eq!(
            known_density(&parse_poly("7").unwrap()),
            Err(Error::ConstantPolynomial)
        );
        assert_eq!(
            known_density(&parse_poly("-x").unwrap()),
            Err(Error::NonPositiveLeading)
        );
    }

    #[test]
    fn empirical_examples() {
        assert_eq!(empirical_density(&line("x"), 4), 11.0 / 16.0);
        assert_eq!(empirical_density(&line("x^2+x+3"), 1), 1.0);
        assert_eq!(empirical_density(&line("(x^2-1)^2"), 1), 0.0);
    }

    #[test]
    fn fit_on_exact_power_law() {
        let rows: Vec<DensityRow> = [10u64, 20, 40]
            .iter()
            .map(|&n| DensityRow {
                n,
                visible: 0,
                invisible: n * n * n / 10,
                density: 0.0,
            })
            .collect();
        assert!((fit_exponent(&rows).unwrap() - 3.0).abs() < 1e-9);
        assert_eq!(fit_exponent(&rows[..1]), None);
    }

    #[test]
    fn convergence_for_x() {
        let rep = convergence_report(&line("x"), &[100, 200]).unwrap();
        assert!((rep.fitted_exponent.unwrap() - 2.0).abs() < 0.05);
        assert_eq!(rep.exponent_target, None);
        assert_eq!(rep.poly, "x");
        for row in &rep.rows {
            assert_eq!(row.density, row.visible as f64 / (row.n * row.n) as f64);
        }
        assert!(matches!(
            convergence_report(&line("x"), &[100]),
            Err(Error::InvalidArgument(_))
        ));
        assert!(matches!(
            convergence_report(&line("x"), &[200, 100]),
            Err(Error::InvalidArgument(_))
        ));
        assert_eq!(
            density_table(&line("x"), &[50]).unwrap().fitted_exponent,
            None
        );
    }

    #[test]
    fn exponent_target_for_proven_class() {
        assert_eq!(exponent_target(&line("(x^2-1)^2")), Some(1.5));
        assert_eq!(exponent_target(&line("x^2-1")), None);
        assert_eq!(exponent_target(&line("x^4")), None);
    }

    #[test]
    fn zero_invisible_rows_give_no_fit() {
        // F = x^2 + x + 1 at N = 1 has no invisible points
        let rep = density_table(&line("x^2+x+1"), &[1, 1]).unwrap();
        assert_eq!(rep.fitted_exponent, None);
    }
}
