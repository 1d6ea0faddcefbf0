mod cache;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use polyvis::curves::{integer_points, linear_factor_probe, CurveSpec};
use polyvis::densities::density_table;
use polyvis::gcd_sums::{s_sum_direct, s_sum_rearranged, verify_inequality_chain};
use polyvis::poly_core::{is_excluded_form, parse_poly, squarefree_part};
use polyvis::visibility::count_visibility;
use polyvis::{Error, IntPoly, SightLine};
use serde::de::DeserializeOwned;

use cache::{Cache, FORMAT_VERSION};
use report::{Format, Render};

#[derive(Parser)]
#[command(
    name = "polyvis",
    version,
    about = "Lattice-point visibility along polynomial curves"
)]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    #[arg(long, global = true, value_enum, default_value = "table")]
    format: Format,
    /// Result cache directory [default: $XDG_CACHE_HOME/polyvis]
    #[arg(long, global = true, env = "POLYVIS_CACHE")]
    cache_dir: Option<PathBuf>,
    #[arg(long, global = true)]
    no_cache: bool,
    /// Worker threads; defaults to available parallelism
    #[arg(long, global = true, value_parser = clap::value_parser!(u16).range(1..))]
    threads: Option<u16>,
}

#[derive(Subcommand)]
enum Command {
    /// Count visible and invisible points of [1,N]^2 along F
    Visible {
        #[arg(long)]
        poly: String,
        #[arg(long = "N", value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
    },
    /// Exact gcd sum S_F(N) for F = f^m, both ways, with the invisible-count chain
    Gcdsum {
        #[arg(long)]
        f: String,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
        m: u32,
        #[arg(long = "N", value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
    },
    /// Integer points of s f(y) - r f(x) = 0 in [1,N]^2
    Curve {
        #[arg(long)]
        f: String,
        #[arg(long)]
        s: u64,
        #[arg(long)]
        r: u64,
        #[arg(long = "N", default_value_t = 100, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
    },
    /// Empirical densities against the reference value, with exponent fit
    Density {
        #[arg(long)]
        poly: String,
        #[arg(long = "Ns", value_delimiter = ',', required = true,
              value_parser = clap::value_parser!(u64).range(1..))]
        ns: Vec<u64>,
    },
    /// Search for a linear factor of s f(y) - r f(x)
    Probe {
        #[arg(long)]
        f: String,
        #[arg(long)]
        s: u64,
        #[arg(long)]
        r: u64,
        #[arg(long, default_value_t = 40)]
        bits: u32,
    },
    /// Structural data of a polynomial: power split, roots, thresholds
    Poly {
        #[arg(long)]
        poly: String,
    },
}

fn exit_code(err: &Error) -> u8 {
    match err {
        Error::Parse { .. } => 2,
        Error::Inconclusive => 4,
        _ => 3,
    }
}

fn default_cache_dir() -> PathBuf {
    if let Some(dir) = std::env::var_os("XDG_CACHE_HOME") {
        return PathBuf::from(dir).join("polyvis");
    }
    if let Some(home) = std::env::var_os("HOME") {
        return PathBuf::from(home).join(".cache").join("polyvis");
    }
    PathBuf::from(".polyvis-cache")
}

struct Runner {
    cache: Option<Cache>,
}

impl Runner {
    /// Cached payload for `key`, else computes and stores it.
    fn cached<T, F>(&self, key: String, compute: F) -> Result<T, Error>
    where
        T: Render + DeserializeOwned,
        F: FnOnce() -> Result<T, Error>,
    {
        if let Some(hit) = self.cache.as_ref().and_then(|c| c.get(&key)) {
            return Ok(hit);
        }
        let value = compute()?;
        if let Some(c) = &self.cache {
            if let Err(e) = c.put(&key, &value) {
                eprintln!("warning: cache write to {} failed: {e}", c.dir().display());
            }
        }
        Ok(value)
    }
}

fn key(cmd: &str, poly: &IntPoly, params: &str) -> String {
    format!("v{FORMAT_VERSION}|{cmd}|{poly}|{params}")
}

fn visible(run: &Runner, poly: &str, n: u64) -> Result<report::VisibleReport, Error> {
    let poly = parse_poly(poly)?;
    let line = SightLine::from_poly(poly.clone())?;
    run.cached(key("visible", &poly, &format!("N={n}")), || {
        let (visible, invisible) = count_visibility(&line, n);
        Ok(report::VisibleReport {
            version: FORMAT_VERSION,
            poly: poly.to_string(),
            n,
            visible,
            invisible,
            density: visible as f64 / (n as f64 * n as f64),
        })
    })
}

fn gcdsum(run: &Runner, f: &str, m: u32, n: u64) -> Result<report::GcdSumReport, Error> {
    let f = parse_poly(f)?;
    let line = SightLine::from_power(f.clone(), m)?;
    run.cached(key("gcdsum", &f, &format!("m={m}|N={n}")), || {
        let direct = s_sum_direct(&line, n);
        let rearranged = s_sum_rearranged(&line, n);
        let chain = match verify_inequality_chain(&line, n) {
            Ok(rep) => Some(rep),
            Err(Error::ThresholdExceedsRange) => None,
            Err(e) => return Err(e),
        };
        Ok(report::GcdSumReport {
            version: FORMAT_VERSION,
            f: f.to_string(),
            m,
            poly: line.poly().to_string(),
            n,
            threshold: line.pair_threshold(),
            s: direct.to_string(),
            s_direct: direct.to_string(),
            s_rearranged: rearranged.to_string(),
            identity_ok: direct == rearranged,
            invisible: chain.as_ref().map(|c| c.invisible_count),
            ef_count: chain.as_ref().map(|c| c.ef_count),
            block_rhs: chain.as_ref().map(|c| c.block_rhs.to_string()),
            bound_rhs: chain.as_ref().map(|c| c.bound_rhs.to_string()),
            chain_ok: chain.as_ref().map(|c| c.chain_holds()),
        })
    })
}

fn curve(run: &Runner, f: &str, s: u64, r: u64, n: u64) -> Result<report::CurveReport, Error> {
    let f = parse_poly(f)?;
    let spec = CurveSpec::new(f.clone(), BigInt::from(s), BigInt::from(r))?;
    run.cached(key("curve", &f, &format!("s={s}|r={r}|N={n}")), || {
        let points = integer_points(&spec, n)?;
        Ok(report::CurveReport {
            version: FORMAT_VERSION,
            f: f.to_string(),
            s,
            r,
            n,
            count: points.len(),
            points,
        })
    })
}

fn density(run: &Runner, poly: &str, ns: &[u64]) -> Result<report::DensityReport, Error> {
    let poly = parse_poly(poly)?;
    let line = SightLine::from_poly(poly.clone())?;
    let list: Vec<String> = ns.iter().map(u64::to_string).collect();
    run.cached(
        key("density", &poly, &format!("Ns={}", list.join(","))),
        || {
            let rep = density_table(&line, ns)?;
            Ok(report::DensityReport {
                version: FORMAT_VERSION,
                poly: rep.poly,
                rows: rep
                    .rows
                    .iter()
                    .map(|r| report::DensityRow {
                        n: r.n,
                        visible: r.visible,
                        invisible: r.invisible,
                        density: r.density,
                    })
                    .collect(),
                reference: rep.reference.map(|r| report::Reference {
                    value: r.value,
                    error_bound: r.error_bound,
                    status: r.status.as_str().to_string(),
                }),
                fitted_exponent: rep.fitted_exponent,
                exponent_target: rep.exponent_target,
            })
        },
    )
}

fn probe(run: &Runner, f: &str, s: u64, r: u64, bits: u32) -> Result<report::ProbeReport, Error> {
    let f = parse_poly(f)?;
    let spec = CurveSpec::new(f.clone(), BigInt::from(s), BigInt::from(r))?;
    run.cached(
        key("probe", &f, &format!("s={s}|r={r}|bits={bits}")),
        || {
            let rep = linear_factor_probe(&spec, bits)?;
            Ok(report::ProbeReport {
                version: FORMAT_VERSION,
                f: f.to_string(),
                s,
                r,
                precision_bits: bits,
                linear_factor_found: rep.linear_factor_found,
                delta_lower_bound: rep.delta_lower_bound,
                residual_bound: rep.residual_bound,
                certificate: rep.certificate.to_string(),
                factors: rep
                    .factors
                    .iter()
                    .map(|l| report::Factor {
                        alpha: [l.alpha.re, l.alpha.im],
                        beta: [l.beta.re, l.beta.im],
                        gamma: [l.gamma.re, l.gamma.im],
                        residual: l.residual,
                    })
                    .collect(),
            })
        },
    )
}

fn poly_info(poly: &str) -> Result<report::PolyReport, Error> {
    let poly = parse_poly(poly)?;
    let line = SightLine::from_poly(poly.clone())?;
    Ok(report::PolyReport {
        version: FORMAT_VERSION,
        poly: poly.to_string(),
        degree: poly.degree().unwrap(),
        base: line.base().to_string(),
        m: line.exponent(),
        squarefree: squarefree_part(&poly)?.to_string(),
        distinct_roots: line.distinct_roots(),
        n_f: line.n_f(),
        n_base: line.base_threshold(),
        pair_threshold: line.pair_threshold(),
        excluded_form: is_excluded_form(&poly)?.map(|e| report::ExcludedForm {
            a: e.a.to_string(),
            u: e.u.to_string(),
            v: e.v.to_string(),
            b: e.b,
        }),
    })
}

fn dispatch(cli: &Cli) -> Result<String, Error> {
    let common = &cli.common;
    let run = Runner {
        cache: (!common.no_cache)
            .then(|| Cache::new(common.cache_dir.clone().unwrap_or_else(default_cache_dir))),
    };
    let fmt = common.format;
    Ok(match &cli.command {
        Command::Visible { poly, n } => visible(&run, poly, *n)?.render(fmt),
        Command::Gcdsum { f, m, n } => gcdsum(&run, f, *m, *n)?.render(fmt),
        Command::Curve { f, s, r, n } => curve(&run, f, *s, *r, *n)?.render(fmt),
        Command::Density { poly, ns } => density(&run, poly, ns)?.render(fmt),
        Command::Probe { f, s, r, bits } => probe(&run, f, *s, *r, *bits)?.render(fmt),
        Command::Poly { poly } => poly_info(poly)?.render(fmt),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.common.threads {
        Some(t) => match rayon::ThreadPoolBuilder::new()
            .num_threads(t as usize)
            .build()
        {
            Ok(pool) => pool.install(|| dispatch(&cli)),
            Err(e) => {
                eprintln!("error: cannot start thread pool: {e}");
                return ExitCode::from(3);
            }
        },
        None => dispatch(&cli),
    };
    match result {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
