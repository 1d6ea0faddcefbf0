//! The curves `G_{s,r}(x, y) = s f(y) - r f(x)`.
//!
//! Every pair counted by `M_{s,r}(N)` is an integer point of `G_{s,r}` in
//! `[1, N]^2`, so point counts in boxes bound the gcd sums. The linear
//! factor probe checks that no member of the family contains a line, which
//! is what keeps the curve point counts small.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::gcd_sums;
use crate::poly_core::{compute_nf, IntPoly, SightLine};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveSpec {
    f: IntPoly,
    s: BigInt,
    r: BigInt,
}

impl CurveSpec {
    /// Requires a nonconstant `f` and coprime `s > r >= 1`.
    pub fn new(f: IntPoly, s: BigInt, r: BigInt) -> Result<Self> {
        if f.is_constant() {
            return Err(Error::ConstantPolynomial);
        }
        if s <= r {
            return Err(Error::RequireSGreaterR);
        }
        if !r.is_positive() {
            return Err(Error::InvalidArgument("r must be positive".into()));
        }
        if !s.gcd(&r).is_one() {
            return Err(Error::NotCoprime);
        }
        Ok(CurveSpec { f, s, r })
    }

    pub fn base(&self) -> &IntPoly {
        &self.f
    }

    pub fn s(&self) -> &BigInt {
        &self.s
    }

    pub fn r(&self) -> &BigInt {
        &self.r
    }

    pub fn eval(&self, x: &BigInt, y: &BigInt) -> BigInt {
        &self.s * self.f.eval(y) - &self.r * self.f.eval(x)
    }

    pub fn total_degree(&self) -> usize {
        self.f.degree().unwrap()
    }

    /// Nonzero terms `((i, j), c)` of `c x^i y^j`, sorted by `(i, j)`.
    pub fn expand(&self) -> Vec<((usize, usize), BigInt)> {
        let mut terms = Vec::new();
        for (i, c) in self.f.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if i == 0 {
                let c0 = (&self.s - &self.r) * c;
                if !c0.is_zero() {
                    terms.push(((0, 0), c0));
                }
            } else {
                terms.push(((0, i), &self.s * c));
                terms.push(((i, 0), -(&self.r * c)));
            }
        }
        terms.sort_by_key(|t| t.0);
        terms
    }
}

/// All integer points of `G_{s,r} = 0` in `[1, N]^2`, ascending.
///
/// For each `x` the target `f(y) = r f(x) / s` is looked up by a direct
/// scan below the monotonicity threshold of `f` and by bisection above it.
pub fn integer_points(curve: &CurveSpec, n: u64) -> Result<Vec<(u64, u64)>> {
    // same zero set for f and -f
    let f = if curve.f.leading().unwrap().is_negative() {
        -&curve.f
    } else {
        curve.f.clone()
    };
    let head = compute_nf(&f)?.min(n);
    let values: Vec<BigInt> = (0..=n).map(|y| f.eval_u64(y)).collect();
    let tail = &values[head as usize + 1..];
    let points = (1..=n)
        .into_par_iter()
        .flat_map_iter(|x| {
            let mut ys = Vec::new();
            let target = &curve.r * &values[x as usize];
            let (v, rem) = target.div_rem(&curve.s);
            if rem.is_zero() {
                ys.extend((1..=head).filter(|&y| values[y as usize] == v));
                if let Ok(i) = tail.binary_search(&v) {
                    ys.push(head + 1 + i as u64);
                }
            }
            ys.into_iter().map(move |y| (x, y))
        })
        .collect();
    Ok(points)
}

/// One `(s, r)` row of the `M_{s,r}` versus curve-point comparison.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MsrRow {
    pub s: u64,
    pub r: u64,
    pub m_sr: u64,
    /// Points of `G_{s,r}` in `[1, N]^2`.
    pub curve_points: u64,
    /// Points with both coordinates past the pair threshold.
    pub domain_points: u64,
}

impl MsrRow {
    pub fn bound_holds(&self) -> bool {
        self.m_sr <= self.curve_points
    }

    pub fn domain_matches(&self) -> bool {
        self.m_sr == self.domain_points
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MsrBoundReport {
    pub n: u64,
    pub rows: Vec<MsrRow>,
}

impl MsrBoundReport {
    pub fn all_hold(&self) -> bool {
        self.rows
            .iter()
            .all(|r| r.bound_holds() && r.domain_matches())
    }

    pub fn row(&self, s: u64, r: u64) -> Option<&MsrRow> {
        self.rows.iter().find(|row| row.s == s && row.r == r)
    }
}

/// Compares `M_{s,r}(N)` with the curve point count for every coprime
/// `s > r` with `s <= s_max`.
pub fn verify_msr_bound(line: &SightLine, n: u64, s_max: u64) -> Result<MsrBoundReport> {
    if s_max < 2 {
        return Err(Error::InvalidArgument("s_max must be at least 2".into()));
    }
    let threshold = line.pair_threshold();
    let mut rows = Vec::new();
    for s in 2..=s_max {
        for r in (1..s).filter(|r| r.gcd(&s) == 1) {
            let (sb, rb) = (BigInt::from(s), BigInt::from(r));
            let m = gcd_sums::m_sr(line, n, &sb, &rb)?;
            let curve = CurveSpec::new(line.base().clone(), sb, rb)?;
            let points = integer_points(&curve, n)?;
            let domain = points
                .iter()
                .filter(|&&(a, b)| a > threshold && b > threshold)
                .count();
            rows.push(MsrRow {
                s,
                r,
                m_sr: m,
                curve_points: points.len() as u64,
                domain_points: domain as u64,
            });
        }
    }
    Ok(MsrBoundReport { n, rows })
}

/// A line `alpha x + beta y + gamma` dividing `G_{s,r}`.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearFactor {
    pub alpha: Complex64,
    pub beta: Complex64,
    pub gamma: Complex64,
    /// Largest relative coefficient residual after substitution.
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProbeReport {
    pub linear_factor_found: bool,
    pub factors: Vec<LinearFactor>,
    /// Residuals at or below this count as zero.
    pub residual_bound: f64,
    /// 1 when a linear factor exists, 2 otherwise.
    pub delta_lower_bound: u32,
    /// Gcd over `Z[lambda]` of `r lambda^d - s` and the coefficient
    /// equations; its roots are exactly the admissible slopes.
    pub certificate: IntPoly,
}

impl ProbeReport {
    pub fn factor_coefficients(&self) -> Option<(Complex64, Complex64, Complex64)> {
        self.factors.first().map(|l| (l.alpha, l.beta, l.gamma))
    }
}

/// Largest working precision the double-precision route can certify.
pub const MAX_PROBE_BITS: u32 = 52;

fn binomial(n: usize, k: usize) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Exact slope polynomial: roots `lambda` with `s f(y) = r f(lambda y + mu)`.
///
/// Matching the top two coefficients forces `lambda^d = s / r` and
/// `mu = c_{d-1} (lambda - 1) / (d c_d)`; the remaining coefficient
/// equations, cleared of the denominator `D = d c_d`, are polynomials in
/// `lambda` that must vanish together with `r lambda^d - s`.
fn slope_certificate(f: &IntPoly, s: &BigInt, r: &BigInt) -> IntPoly {
    let c = f.coeffs();
    let d = c.len() - 1;
    let denom = BigInt::from(d) * &c[d];
    let lam = IntPoly::x();
    let lam_minus_one = IntPoly::from_coeffs(vec![-BigInt::one(), BigInt::one()]);
    // mu * D = c_{d-1} (lambda - 1)
    let mu_scaled = lam_minus_one.scale(&c[d - 1]);
    let mu_pows: Vec<IntPoly> = (0..=d).map(|e| mu_scaled.pow(e as u32)).collect();
    let denom_pows: Vec<BigInt> = (0..=d).map(|e| num_traits::pow(denom.clone(), e)).collect();

    let mut acc = IntPoly::from_coeffs(vec![-s.clone()]) + IntPoly::monomial(r.clone(), d);
    for k in 0..=d {
        // D^d [ s c_k - r sum_j c_j C(j,k) lambda^k mu^{j-k} ]
        let mut eq = IntPoly::constant(s * &c[k] * &denom_pows[d]);
        let lam_k = lam.pow(k as u32);
        for j in k..=d {
            if c[j].is_zero() {
                continue;
            }
            let coef = r * &c[j] * binomial(j, k) * &denom_pows[d - (j - k)];
            let term = (&lam_k * &mu_pows[j - k]).scale(&coef);
            eq = &eq - &term;
        }
        acc = acc.gcd(&eq);
    }
    acc.primitive_part()
}

/// Searches for a linear factor of `G_{s,r}` over the complex numbers.
///
/// Factors with `alpha = 0` or `beta = 0` would make `f` constant, so only
/// `x = lambda y + mu` needs checking. The decision is the exact slope
/// certificate; the candidate slopes are also evaluated in double precision
/// at `precision_bits`, and any disagreement between the two routes, or a
/// residual that falls between the acceptance and separation thresholds,
/// is reported as inconclusive.
pub fn linear_factor_probe(curve: &CurveSpec, precision_bits: u32) -> Result<ProbeReport> {
    let d = curve.total_degree();
    if d < 2 {
        return Err(Error::DegreeTooSmall);
    }
    if precision_bits == 0 || precision_bits > MAX_PROBE_BITS {
        return Err(Error::Inconclusive);
    }
    let certificate = slope_certificate(&curve.f, &curve.s, &curve.r);
    let exact_count = certificate.degree().unwrap_or(0);

    let tol = (-(precision_bits as f64)).exp2();
    let separation = tol.sqrt();
    let c: Vec<f64> = curve
        .f
        .coeffs()
        .iter()
        .map(|x| x.to_f64().unwrap())
        .collect();
    let (s, r) = (curve.s.to_f64().unwrap(), curve.r.to_f64().unwrap());
    let rho = (s / r).powf(1.0 / d as f64);
    let mut factors = Vec::new();
    for j in 0..d {
        let lam = Complex64::from_polar(rho, std::f64::consts::TAU * j as f64 / d as f64);
        let mu = (lam - 1.0) * (c[d - 1] / (d as f64 * c[d]));
        let residual = relative_residual(&c, s, r, lam, mu);
        if residual <= tol {
            factors.push(LinearFactor {
                alpha: Complex64::new(1.0, 0.0),
                beta: snap(-lam, rho * tol),
                gamma: snap(-mu, (1.0 + mu.norm()) * tol),
                residual,
            });
        } else if residual <= separation {
            return Err(Error::Inconclusive);
        }
    }
    if factors.len() != exact_count {
        return Err(Error::Inconclusive);
    }
    let found = !factors.is_empty();
    Ok(ProbeReport {
        linear_factor_found: found,
        factors,
        residual_bound: tol,
        delta_lower_bound: if found { 1 } else { 2 },
        certificate,
    })
}

/// Zeroes components below `eps`; they are rounding noise of the polar form.
fn snap(z: Complex64, eps: f64) -> Complex64 {
    let clean = |x: f64| if x.abs() <= eps { 0.0 } else { x };
    Complex64::new(clean(z.re), clean(z.im))
}

/// `max_k |s c_k - r [f(lam y + mu)]_k| / scale_k` over all coefficients.
fn relative_residual(c: &[f64], s: f64, r: f64, lam: Complex64, mu: Complex64) -> f64 {
    let d = c.len() - 1;
    let mut worst = 0.0f64;
    for k in 0..=d {
        let mut sum = Complex64::new(0.0, 0.0);
        let mut scale = (s * c[k]).abs();
        for (j, &cj) in c.iter().enumerate().skip(k) {
            let binom = binomial(j, k).to_f64().unwrap();
            let term = lam.powu(k as u32) * mu.powu((j - k) as u32) * (r * cj * binom);
            scale += term.norm();
            sum += term;
        }
        let diff = (Complex64::new(s * c[k], 0.0) - sum).norm();
        if scale > 0.0 {
            worst = worst.max(diff / scale);
        }
    }
    worst
}
