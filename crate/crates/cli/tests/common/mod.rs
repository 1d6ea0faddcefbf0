#![allow(dead_code)]

use std::path::Path;
use std::process::{Command, Output};

pub fn polyvis(cache: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_polyvis"))
        .args(args)
        .env("POLYVIS_CACHE", cache)
        .output()
        .expect("binary runs")
}

pub fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

pub fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

pub fn json(out: &Output) -> serde_json::Value {
    assert!(out.status.success(), "failed: {}", stderr(out));
    serde_json::from_slice(&out.stdout).expect("json output")
}

pub fn gcd(a: u128, b: u128) -> u128 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Reduced `sum gcd(F(a), F(b)) / F(a)` over `t < b < a <= n` for a
/// nonnegative increasing `F` given as a closure; small inputs only.
pub fn gcd_sum_fraction(big_f: impl Fn(u128) -> u128, t: u128, n: u128) -> String {
    let (mut num, mut den) = (0u128, 1u128);
    for a in t + 2..=n {
        for b in t + 1..a {
            let (fa, fb) = (big_f(a), big_f(b));
            let (p, q) = (gcd(fa, fb), fa);
            num = num * q + p * den;
            den *= q;
            let g = gcd(num, den);
            num /= g;
            den /= g;
        }
    }
    if den == 1 {
        num.to_string()
    } else {
        format!("{num}/{den}")
    }
}
