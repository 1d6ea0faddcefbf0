use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use polyvis::curves::{integer_points, linear_factor_probe, verify_msr_bound, CurveSpec};
use polyvis::gcd_sums::{
    for_each_spectrum, gcd_power_identity_check, gsr, m_sr, msr_spectrum, rearranged_from_spectrum,
    s_sum_direct, s_sum_direct_series, verify_inequality_chain,
};
use polyvis::poly_core::parse_poly;
use polyvis::SightLine;

const BATTERY: [&str; 8] = [
    "x",
    "x^2",
    "2*x+1",
    "x^2+x",
    "x^3-x",
    "(x^2-1)^2",
    "(x^2-5*x+6)^2",
    "(x^3-x)^2",
];

fn line(text: &str) -> SightLine {
    SightLine::from_poly(parse_poly(text).unwrap()).unwrap()
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// `sum gcd(F(a), F(b)) / F(a)` on the expanded `F`, no `(g, s, r)` split.
fn s_oracle(l: &SightLine, n: u64) -> BigRational {
    let big_f = l.poly();
    let t = l.pair_threshold();
    let mut total = BigRational::zero();
    for a in t + 2..=n {
        for b in t + 1..a {
            let (fa, fb) = (big_f.eval_u64(a), big_f.eval_u64(b));
            total += BigRational::new(fa.gcd(&fb), fa);
        }
    }
    total
}

#[test]
fn spot_values_from_independent_sum() {
    let l = SightLine::from_power(parse_poly("x^2-1").unwrap(), 2).unwrap();
    // pairs (3,2), (4,2), (4,3): s = 8, 5, 15
    assert_eq!(s_oracle(&l, 4), rat(1, 64) + rat(1, 25) + rat(1, 225));
    assert_eq!(s_sum_direct(&l, 4), s_oracle(&l, 4));
    assert_eq!(s_sum_direct(&l, 4), rat(173, 2880));
    let x = line("x");
    assert_eq!(s_oracle(&x, 3), rat(7, 6));
    assert_eq!(s_sum_direct(&x, 3), rat(7, 6));
    assert_eq!(s_sum_direct(&l, 1), BigRational::zero());
}

#[test]
fn direct_series_matches_oracle() {
    for text in BATTERY {
        let l = line(text);
        let series = s_sum_direct_series(&l, 40);
        for n in [1u64, 5, 13, 40] {
            assert_eq!(series[n as usize - 1], s_oracle(&l, n), "{text} N={n}");
        }
    }
}

#[test]
fn rearrangement_identity_up_to_200() {
    for text in BATTERY {
        let l = line(text);
        let series = s_sum_direct_series(&l, 200);
        let m = l.exponent();
        for_each_spectrum(&l, 200, |n, spectrum| {
            assert_eq!(
                rearranged_from_spectrum(spectrum, m),
                series[n as usize - 1],
                "{text} N={n}"
            );
        });
    }
}

#[test]
fn spectrum_counts_match_scan() {
    for text in ["(x^2-1)^2", "(x^3-x)^2", "x^2+x"] {
        let l = line(text);
        let spectrum = msr_spectrum(&l, 60);
        let t = l.pair_threshold();
        let pairs = (60 - t) * (60 - t - 1) / 2;
        assert_eq!(spectrum.values().sum::<u64>(), pairs, "{text}");
        for ((s, r), count) in spectrum.iter().take(40) {
            assert_eq!(m_sr(&l, 60, s, r).unwrap(), *count, "{text} ({s},{r})");
        }
    }
}

#[test]
fn gcd_of_powers_is_power_of_gcd() {
    for text in BATTERY {
        let l = line(text);
        let t = l.pair_threshold();
        for a in t + 2..=t + 40 {
            for b in t + 1..a {
                assert!(
                    gcd_power_identity_check(&l, a, b).unwrap(),
                    "{text} ({a},{b})"
                );
                let g = gsr(&l, a, b).unwrap();
                assert_eq!(g.g * &g.s, l.base().eval_u64(a));
                assert!(g.s.gcd(&g.r) == BigInt::from(1));
            }
        }
    }
}

#[test]
fn chain_holds_on_battery() {
    for text in BATTERY {
        let l = line(text);
        for n in [30, 60, 120] {
            let rep = verify_inequality_chain(&l, n).unwrap();
            assert!(rep.identity_holds(), "{text} N={n}");
            assert!(rep.chain_holds(), "{text} N={n}: {rep:?}");
        }
    }
}

#[test]
fn normalised_sum_decreases_for_theorem_instance() {
    let l = line("(x^2-1)^2");
    let values: Vec<BigRational> = [100u64, 200, 400, 800]
        .iter()
        .map(|&n| s_sum_direct(&l, n) / BigRational::from_integer(n.into()))
        .collect();
    for w in values.windows(2) {
        assert!(w[1] < w[0]);
    }
}

fn brute_points(c: &CurveSpec, n: u64) -> Vec<(u64, u64)> {
    let f: Vec<BigInt> = (0..=n).map(|x| c.base().eval_u64(x)).collect();
    let mut out = Vec::new();
    for x in 1..=n {
        for y in 1..=n {
            if (c.s() * &f[y as usize] - c.r() * &f[x as usize]).is_zero() {
                out.push((x, y));
            }
        }
    }
    out
}

#[test]
fn curve_points_match_brute_force() {
    let cases = [
        ("x^2-1", 2, 1),
        ("x^2-1", 9, 4),
        ("x^3-x", 3, 1),
        ("x^2-5*x+6", 2, 1),
        ("x^2+x", 3, 1),
        ("x^2", 4, 1),
        ("x^2-7*x+3", 5, 2),
    ];
    for (f, s, r) in cases {
        let c = CurveSpec::new(parse_poly(f).unwrap(), s.into(), r.into()).unwrap();
        assert_eq!(
            integer_points(&c, 300).unwrap(),
            brute_points(&c, 300),
            "{f} ({s},{r})"
        );
    }
}

#[test]
fn pell_family() {
    let c = CurveSpec::new(parse_poly("x^2-1").unwrap(), 2.into(), 1.into()).unwrap();
    assert_eq!(integer_points(&c, 10).unwrap(), vec![(1, 1), (7, 5)]);
    assert_eq!(
        integer_points(&c, 200).unwrap(),
        vec![(1, 1), (7, 5), (41, 29)]
    );
    // x^2 - 2y^2 = -1 recursion (x, y) -> (3x + 4y, 2x + 3y)
    let mut expect = vec![(1u64, 1u64)];
    while let Some(&(x, y)) = expect.last() {
        if 3 * x + 4 * y > 10_000 {
            break;
        }
        expect.push((3 * x + 4 * y, 2 * x + 3 * y));
    }
    assert_eq!(integer_points(&c, 10_000).unwrap(), expect);
    assert_eq!(expect.len(), 6);
}

#[test]
fn msr_bounded_by_curve_points() {
    for text in ["(x^2-1)^2", "(x^2-5*x+6)^2", "(x^3-x)^2", "x^2+x"] {
        let l = line(text);
        for n in [10, 40] {
            let rep = verify_msr_bound(&l, n, 10).unwrap();
            assert!(rep.all_hold(), "{text} N={n}");
        }
    }
    let rep = verify_msr_bound(&line("(x^2-1)^2"), 10, 10).unwrap();
    let row = rep.row(2, 1).unwrap();
    assert_eq!((row.m_sr, row.curve_points), (1, 2));
}

#[test]
fn probe_on_battery_bases() {
    for f in ["x^2-1", "x^2+x", "x^3-x", "x^2-5*x+6"] {
        for s in 2..=12u64 {
            for r in (1..s).filter(|r| r.gcd(&s) == 1) {
                let c = CurveSpec::new(parse_poly(f).unwrap(), s.into(), r.into()).unwrap();
                let rep = linear_factor_probe(&c, 40).unwrap();
                assert!(!rep.linear_factor_found, "{f} ({s},{r})");
                assert_eq!(rep.delta_lower_bound, 2);
            }
        }
    }
}

#[test]
fn probe_factor_divides_curve() {
    // the reported line x = lambda y + mu must make G vanish identically
    for (f, s, r) in [
        ("x^2", 4, 1),
        ("x^3", 8, 1),
        ("(x+1)^2", 9, 4),
        ("x^2", 9, 4),
    ] {
        let c = CurveSpec::new(parse_poly(f).unwrap(), s.into(), r.into()).unwrap();
        let rep = linear_factor_probe(&c, 40).unwrap();
        assert!(rep.linear_factor_found);
        for fac in rep
            .factors
            .iter()
            .filter(|l| l.beta.im == 0.0 && l.gamma.im == 0.0)
        {
            let (lam, mu) = (-fac.beta.re, -fac.gamma.re);
            for y in [1.0f64, 2.0, 5.0] {
                let x = lam * y + mu;
                let fv = |t: f64| {
                    c.base().coeffs().iter().rev().fold(0.0, |acc, k| {
                        acc * t + k.to_string().parse::<f64>().unwrap()
                    })
                };
                let g = s as f64 * fv(y) - r as f64 * fv(x);
                assert!(g.abs() < 1e-9 * (1.0 + fv(y).abs()), "{f} y={y}: {g}");
            }
        }
        assert!(rep.factors.iter().any(|l| l.beta.re.is_sign_negative()));
        assert!(rep.certificate.leading().unwrap().is_positive());
    }
}

#[test]
fn sum_is_nondecreasing() {
    for text in BATTERY {
        let series = s_sum_direct_series(&line(text), 120);
        assert!(series.windows(2).all(|w| w[0] <= w[1]), "{text}");
    }
}
