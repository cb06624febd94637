//! `mobius-nu` command line.
//!
//! Exit codes: 0 when every assertion passes, 1 when any fails, 2 on usage
//! errors, 3 on resource or accuracy errors.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::analytic::{eta_mellin_truncated, eta_series, ComplexPoint, MAX_ABS_T};
use crate::arith::{
    load_cache, mertens, mobius_sieve_with, nu, save_cache, MobiusTable, SieveConfig,
};
use crate::error::{Error, Result};
use crate::experiments::{
    add_eq12_all_n, bound_sweep_eq12_eq13, convergence_study, growth_study, residual_study,
    s_grid, verify_eq8_suite, verify_theorem2, StudyReport,
};
use crate::stepfn::{f_profile_range, f_value};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

/// Environment variable that supplies the sieve cache path when `--cache` is absent.
pub const CACHE_ENV: &str = "MOBIUS_NU_CACHE";

#[derive(Debug, Parser)]
#[command(name = "mobius-nu", version, about = "Exact and numerical checks of the Möbius–ν step function identities")]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Möbius table limit N. Raised automatically to what the subcommand needs.
    #[arg(long, global = true, default_value_t = 0)]
    pub limit: u64,
    /// Sieve cache file (MUNV0001 format). Read when present and large enough.
    #[arg(long, global = true, env = CACHE_ENV)]
    pub cache: Option<PathBuf>,
    /// Directory for `<subcommand>-<timestamp>.csv/json` outputs.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Worker threads; 0 picks one per core. Results do not depend on it.
    #[arg(long, global = true, default_value_t = 0)]
    pub threads: usize,
    /// Target absolute accuracy of the accelerated η series (>= 1e-14).
    #[arg(long, global = true, default_value_t = crate::experiments::DEFAULT_ETA_TOL)]
    pub tol: f64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build the Möbius table up to N and optionally write it to the cache.
    Sieve {
        /// Table limit, 1 <= N <= 2^31 - 1.
        #[arg(long)]
        n: u64,
        /// Segment length (entries) for segmented sieving above 2^24.
        #[arg(long, default_value_t = crate::arith::DEFAULT_SEGMENT_LEN)]
        segment_len: usize,
        /// Memory budget in bytes.
        #[arg(long, default_value_t = 4 << 30)]
        memory_budget: u64,
    },
    /// Print ν(x) = ⌊x⌋ mod 2 for finite x >= 0.
    Nu {
        #[arg(long, allow_hyphen_values = true)]
        x: f64,
    },
    /// Print f_n(x) = Σ_{k<=n} μ(k) ν(x/k); optionally export a profile CSV.
    Fvalue {
        /// Truncation index, n >= 1.
        #[arg(long)]
        n: u64,
        /// Real argument x >= 0.
        #[arg(long, allow_hyphen_values = true)]
        x: f64,
        /// Start of an integer window [m_lo, m_hi) written as `m,f_n_of_m` CSV.
        #[arg(long, requires = "m_hi")]
        m_lo: Option<u64>,
        #[arg(long, requires = "m_lo")]
        m_hi: Option<u64>,
    },
    /// Check the full convolution equals 0, 1, -1 on [0,1), [1,2), [2,∞).
    VerifyThm2 {
        /// Every integer 0 <= m <= m_max is checked, plus random reals.
        #[arg(long, default_value_t = 100_000)]
        m_max: u64,
        /// Number of uniform random reals in [0, m_max].
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Truncated integral ∫_2^X (1+f_n) x^{-s-1} dx against its Dirichlet-series form.
    VerifyEq8 {
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long, value_delimiter = ',', default_values_t = crate::experiments::DEFAULT_N_SET)]
        n_set: Vec<u64>,
        /// Integration cutoff X (> max n).
        #[arg(long, default_value_t = 1_000_000)]
        x_cutoff: u64,
    },
    /// η(s) by accelerated series and by piecewise Mellin integration.
    Eta {
        /// Re(s) > 0.
        #[arg(long)]
        sigma: f64,
        /// Im(s), |t| <= 1000.
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        t: f64,
        /// Even cutoff X for the Mellin evaluation; 0 skips it.
        #[arg(long, default_value_t = 1_000_000)]
        mellin_x: u64,
    },
    /// Residual |η(s)/s Σμ(k)k^{-s} − (1−2^{1−s})/s| against its bounds.
    Residuals {
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long, value_delimiter = ',', default_values_t = [1u64, 5, 10, 100, 1_000, 10_000])]
        n_set: Vec<u64>,
        /// Scan window [1, ⌈factor·n⌉) for the windowed sup (> 1).
        #[arg(long, default_value_t = crate::experiments::DEFAULT_WINDOW_FACTOR)]
        window_factor: f64,
    },
    /// |Σ_{k<=n} μ(k)k^{-s} − 1/ζ(s)| along an n grid.
    Converge {
        #[arg(long)]
        sigma: f64,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        t: f64,
        #[arg(long, value_delimiter = ',', default_values_t = [100u64, 1_000, 10_000, 100_000, 1_000_000])]
        n_grid: Vec<u64>,
    },
    /// Windowed sup |f_n| over an n grid with a log–log exponent fit.
    Growth {
        #[arg(long, value_delimiter = ',', default_values_t = crate::experiments::DEFAULT_N_GRID)]
        n_grid: Vec<u64>,
        #[arg(long, default_value_t = crate::experiments::DEFAULT_WINDOW_FACTOR)]
        window_factor: f64,
    },
    /// Geometric bound on Σ|μ(k)|/k^σ and the |f_n| Mellin bound.
    Bounds {
        #[arg(long, value_delimiter = ',', default_values_t = crate::experiments::DEFAULT_N_GRID)]
        n_grid: Vec<u64>,
        #[arg(long, value_delimiter = ',', default_values_t = [0.6, 0.75, 0.9, 1.0])]
        sigma_set: Vec<f64>,
        /// Integration cutoff X for ∫_1^X |f_n| x^{-σ-1} dx.
        #[arg(long, default_value_t = 100_000)]
        x_cutoff: u64,
        /// Check the Σ|μ(k)|/k^σ bound for every n up to this value; 0 skips.
        #[arg(long, default_value_t = 100_000)]
        eq12_n_max: u64,
    },
}

#[derive(Debug, Args)]
pub struct GridArgs {
    /// Real parts of the s grid (each > 0).
    #[arg(long, value_delimiter = ',', default_values_t = crate::experiments::DEFAULT_SIGMAS)]
    pub sigma_set: Vec<f64>,
    /// Imaginary parts of the s grid (|t| <= 1000).
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_values_t = crate::experiments::DEFAULT_TS)]
    pub t_set: Vec<f64>,
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Sieve { .. } => "sieve",
            Command::Nu { .. } => "nu",
            Command::Fvalue { .. } => "fvalue",
            Command::VerifyThm2 { .. } => "verify-thm2",
            Command::VerifyEq8 { .. } => "verify-eq8",
            Command::Eta { .. } => "eta",
            Command::Residuals { .. } => "residuals",
            Command::Converge { .. } => "converge",
            Command::Growth { .. } => "growth",
            Command::Bounds { .. } => "bounds",
        }
    }

    /// Table size the subcommand reads.
    fn table_need(&self) -> Option<u64> {
        let max = |v: &[u64]| v.iter().copied().max().unwrap_or(1);
        match self {
            Command::Sieve { .. } | Command::Nu { .. } | Command::Eta { .. } => None,
            Command::Fvalue { n, .. } => Some(*n),
            Command::VerifyThm2 { m_max, .. } => Some((*m_max).max(1)),
            Command::VerifyEq8 { n_set, .. } | Command::Residuals { n_set, .. } => Some(max(n_set)),
            Command::Converge { n_grid, .. } | Command::Growth { n_grid, .. } => Some(max(n_grid)),
            Command::Bounds { n_grid, eq12_n_max, .. } => Some(max(n_grid).max(*eq12_n_max)),
        }
    }
}

fn exit_code(err: &Error) -> i32 {
    match err {
        Error::InvalidArgument(_) | Error::OutOfRange { .. } | Error::Domain(_) => EXIT_USAGE,
        _ => EXIT_RESOURCE,
    }
}

/// Parses `argv` (program name first) and runs the subcommand.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli, &mut std::io::stdout()) {
        Ok(true) => EXIT_PASS,
        Ok(false) => EXIT_FAIL,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

/// Runs a parsed command, writing human-readable output to `out`.
/// Returns whether every assertion passed.
pub fn execute(cli: &Cli, out: &mut (dyn Write + Send)) -> Result<bool> {
    validate(cli)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.common.threads)
        .build()
        .map_err(|e| Error::invalid(format!("thread pool: {e}")))?;
    pool.install(|| dispatch(cli, out))
}

fn validate(cli: &Cli) -> Result<()> {
    let c = &cli.common;
    if !(c.tol.is_finite() && c.tol >= crate::analytic::MIN_ETA_TOL) {
        return Err(Error::invalid(format!("--tol must be >= 1e-14, got {}", c.tol)));
    }
    let positive = |name: &str, v: &[u64]| -> Result<()> {
        if v.is_empty() || v.contains(&0) {
            return Err(Error::invalid(format!("--{name} entries must be positive")));
        }
        Ok(())
    };
    let grid = |g: &GridArgs| -> Result<()> {
        if g.sigma_set.iter().any(|s| !(s.is_finite() && *s > 0.0)) {
            return Err(Error::invalid("--sigma-set entries must be positive"));
        }
        if g.t_set.iter().any(|t| !(t.is_finite() && t.abs() <= MAX_ABS_T)) {
            return Err(Error::invalid("--t-set entries must satisfy |t| <= 1000"));
        }
        Ok(())
    };
    match &cli.command {
        Command::VerifyEq8 { grid: g, n_set, .. } => {
            grid(g)?;
            positive("n-set", n_set)
        }
        Command::Residuals { grid: g, n_set, .. } => {
            grid(g)?;
            positive("n-set", n_set)
        }
        Command::Converge { n_grid, .. } | Command::Growth { n_grid, .. } => positive("n-grid", n_grid),
        Command::Bounds { n_grid, sigma_set, .. } => {
            if sigma_set.iter().any(|s| !(s.is_finite() && *s > 0.0)) {
                return Err(Error::invalid("--sigma-set entries must be positive"));
            }
            positive("n-grid", n_grid)
        }
        _ => Ok(()),
    }
}

fn obtain_table(common: &Common, need: u64) -> Result<MobiusTable> {
    let want = need.max(common.limit).max(1);
    if let Some(path) = &common.cache {
        if path.exists() {
            let table = load_cache(path)?;
            if table.limit() >= want {
                return Ok(table);
            }
        }
    }
    mobius_sieve_with(want, &SieveConfig::default())
}

fn dispatch(cli: &Cli, out: &mut (dyn Write + Send)) -> Result<bool> {
    let common = &cli.common;
    let tol = common.tol;
    let table = match cli.command.table_need() {
        Some(need) => Some(obtain_table(common, need)?),
        None => None,
    };
    let table = || table.as_ref().expect("subcommand declared a table need");

    let report = match &cli.command {
        Command::Sieve { n, segment_len, memory_budget } => {
            let config = SieveConfig {
                segment_len: *segment_len,
                memory_budget_bytes: *memory_budget,
                ..SieveConfig::default()
            };
            let t = mobius_sieve_with(*n, &config)?;
            writeln!(out, "N = {}", t.limit())?;
            writeln!(out, "M(N) = {}", mertens(&t, *n)?)?;
            writeln!(out, "squarefree count = {}", t.squarefree_count(*n)?)?;
            if let Some(path) = &common.cache {
                save_cache(&t, path)?;
                writeln!(out, "cache written to {}", path.display())?;
            }
            return Ok(true);
        }
        Command::Nu { x } => {
            writeln!(out, "{}", nu(*x)?.bit())?;
            return Ok(true);
        }
        Command::Fvalue { n, x, m_lo, m_hi } => {
            writeln!(out, "{}", f_value(table(), *n, *x)?)?;
            if let (Some(lo), Some(hi)) = (m_lo, m_hi) {
                let profile = f_profile_range(table(), *n, *lo, *hi)?;
                match &common.out {
                    Some(dir) => {
                        let path = output_path(dir, "fvalue", "csv")?;
                        profile.write_csv(fs::File::create(&path)?)?;
                        writeln!(out, "profile written to {}", path.display())?;
                    }
                    None => profile.write_csv(&mut *out)?,
                }
            }
            return Ok(true);
        }
        Command::Eta { sigma, t, mellin_x } => {
            let s = ComplexPoint::new(*sigma, *t)?;
            let series = eta_series(s, tol)?;
            writeln!(
                out,
                "accelerated_series {:.16e} {:+.16e}i  bound {:.3e}  terms {}",
                series.value.re, series.value.im, series.abs_error_bound, series.terms
            )?;
            if *mellin_x > 0 {
                let mellin = eta_mellin_truncated(s, *mellin_x)?;
                writeln!(
                    out,
                    "mellin_truncated   {:.16e} {:+.16e}i  bound {:.3e}  X {}",
                    mellin.value.re, mellin.value.im, mellin.abs_error_bound, mellin_x
                )?;
                let gap = (series.value - mellin.value).norm();
                let allowed = series.abs_error_bound + mellin.abs_error_bound;
                writeln!(out, "gap {gap:.3e} <= {allowed:.3e}: {}", gap <= allowed)?;
                return Ok(gap <= allowed);
            }
            return Ok(true);
        }
        Command::VerifyThm2 { m_max, samples, seed } => verify_theorem2(table(), *m_max, *samples, *seed)?,
        Command::VerifyEq8 { grid, n_set, x_cutoff } => {
            let points = s_grid(&grid.sigma_set, &grid.t_set)?;
            verify_eq8_suite(table(), n_set, &points, *x_cutoff, tol)?
        }
        Command::Residuals { grid, n_set, window_factor } => {
            let points = s_grid(&grid.sigma_set, &grid.t_set)?;
            residual_study(table(), n_set, &points, *window_factor, tol)?.1
        }
        Command::Converge { sigma, t, n_grid } => {
            let s = ComplexPoint::new(*sigma, *t)?;
            convergence_study(table(), s, n_grid, tol)?
        }
        Command::Growth { n_grid, window_factor } => {
            let study = growth_study(table(), n_grid, *window_factor)?;
            match &study.fit {
                Some(fit) => writeln!(
                    out,
                    "exponent {:.6} intercept {:.6} r_squared {:.6}",
                    fit.exponent, fit.intercept, fit.r_squared
                )?,
                None => writeln!(out, "fewer than 3 points: no fit")?,
            }
            study.to_report()
        }
        Command::Bounds { n_grid, sigma_set, x_cutoff, eq12_n_max } => {
            let mut report = bound_sweep_eq12_eq13(table(), n_grid, sigma_set, *x_cutoff, tol)?;
            if *eq12_n_max > 0 {
                add_eq12_all_n(&mut report, table(), *eq12_n_max, sigma_set)?;
            }
            report
        }
    };
    print_report(&report, out)?;
    if let Some(dir) = &common.out {
        write_outputs(&report, dir, cli.command.name(), out)?;
    }
    Ok(report.pass())
}

fn print_report(report: &StudyReport, out: &mut dyn Write) -> Result<()> {
    let failures: Vec<_> = report.failures().collect();
    writeln!(
        out,
        "{}: {} ({} assertions, {} failed, {} rows)",
        report.study,
        if failures.is_empty() { "PASS" } else { "FAIL" },
        report.assertions.len(),
        failures.len(),
        report.rows.len()
    )?;
    for f in failures.iter().take(20) {
        writeln!(out, "  FAIL {}: {:e} {:?} {:e}", f.name, f.lhs, f.relation, f.rhs)?;
    }
    Ok(())
}

fn output_path(dir: &Path, name: &str, ext: &str) -> Result<PathBuf> {
    fs::create_dir_all(dir)?;
    let stamp = chrono::Utc::now().format("%Y%m%dT%H%M%SZ");
    Ok(dir.join(format!("{name}-{stamp}.{ext}")))
}

fn write_outputs(report: &StudyReport, dir: &Path, name: &str, out: &mut dyn Write) -> Result<()> {
    let csv_path = output_path(dir, name, "csv")?;
    let json_path = csv_path.with_extension("json");
    report.write_csv(fs::File::create(&csv_path)?)?;
    report.write_summary(fs::File::create(&json_path)?)?;
    writeln!(out, "wrote {} and {}", csv_path.display(), json_path.display())?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (Result<bool>, String) {
        let cli = Cli::try_parse_from(std::iter::once("mobius-nu").chain(args.iter().copied())).unwrap();
        let mut buf = Vec::new();
        let r = execute(&cli, &mut buf);
        (r, String::from_utf8(buf).unwrap())
    }

    #[test]
    fn simple_commands() {
        let (r, text) = run_capture(&["fvalue", "--n", "3", "--x", "5"]);
        assert!(r.unwrap());
        assert_eq!(text.trim(), "0");
        let (_, text) = run_capture(&["nu", "--x", "1.5"]);
        assert_eq!(text.trim(), "1");
        let (r, text) = run_capture(&["eta", "--sigma", "2", "--t", "0", "--mellin-x", "10000"]);
        assert!(r.unwrap());
        assert!(text.contains("8.224670334241"), "{text}");
    }

    #[test]
    fn usage_errors() {
        assert_eq!(run(["mobius-nu", "bogus"]), EXIT_USAGE);
        assert_eq!(run(["mobius-nu", "fvalue", "--n", "3"]), EXIT_USAGE);
        assert_eq!(run(["mobius-nu", "nu", "--x", "-1"]), EXIT_USAGE);
        assert_eq!(run(["mobius-nu", "eta", "--sigma", "0"]), EXIT_USAGE);
        assert_eq!(run(["mobius-nu", "--tol", "1e-20", "eta", "--sigma", "2"]), EXIT_USAGE);
        assert_eq!(run(["mobius-nu", "growth", "--n-grid", "0,10"]), EXIT_USAGE);
        assert_eq!(run(["mobius-nu", "fvalue", "--help"]), EXIT_PASS);
    }

    #[test]
    fn accuracy_error_exit_code() {
        assert_eq!(run(["mobius-nu", "--tol", "1e-14", "eta", "--sigma", "0.5", "--t", "900"]), EXIT_RESOURCE);
    }

    #[test]
    fn profile_to_stdout() {
        let (r, text) = run_capture(&["fvalue", "--n", "1", "--x", "0", "--m-lo", "0", "--m-hi", "4"]);
        assert!(r.unwrap());
        assert_eq!(text, "0\nm,f_n_of_m\n0,0\n1,1\n2,0\n3,1\n");
    }
}
