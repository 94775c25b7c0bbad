//! `hecke`: compute and verify the Hecke generating series of `Sp_n`, `n <= 4`.
//!
//! Every flag can also be set through the environment variable shown in
//! `--help` (`HECKE_N`, `HECKE_FORMAT`, ...). An explicit flag wins.

mod output;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use hecke_core::cache::OmegaCache;
use hecke_core::error::{Error, Result};
use hecke_core::glhecke::{omega_erratum, omega_t, DeltaTuple, OmegaTable};
use hecke_core::pipeline::run_theorem_to;
use hecke_core::verify::{reports_json, run_checks, Status, Workspace, CHECK_IDS};

#[derive(Parser)]
#[command(name = "hecke", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Spherical image of the double coset t(p^delta).
    Omega {
        #[arg(long, env = "HECKE_N")]
        n: usize,
        /// Non-decreasing exponents, comma separated.
        #[arg(long, value_delimiter = ',', num_args = 1..)]
        delta: Vec<u16>,
        #[arg(long, env = "HECKE_FORMAT", value_enum, default_value = "text")]
        format: Format,
    },
    /// Computes E(X), F(X) in Hecke coordinates and writes the result files.
    Theorem {
        #[arg(long, env = "HECKE_N")]
        n: usize,
        #[arg(long, env = "HECKE_OUT", default_value = "out")]
        out: PathBuf,
        /// Directory of cached omega values; read before and written after the run.
        #[arg(long, env = "HECKE_CACHE")]
        cache: Option<PathBuf>,
        /// Worker threads (0: one per core).
        #[arg(long, env = "HECKE_JOBS", default_value_t = 0)]
        jobs: usize,
        /// Only solve coefficients up to X^degree.
        #[arg(long, env = "HECKE_DEGREE")]
        degree: Option<usize>,
        #[arg(long, env = "HECKE_FORMAT", value_enum, default_value = "text")]
        format: Format,
    },
    /// Runs verification checks; exits 0 iff none fails.
    Verify {
        /// Check ids, comma separated or repeated; all when omitted.
        #[arg(long, env = "HECKE_CHECK", value_delimiter = ',')]
        check: Vec<String>,
        #[arg(long, env = "HECKE_CACHE")]
        cache: Option<PathBuf>,
        #[arg(long, env = "HECKE_JOBS", default_value_t = 0)]
        jobs: usize,
        #[arg(long, env = "HECKE_FORMAT", value_enum, default_value = "text")]
        format: Format,
    },
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Usage(_) | Error::Parse(_) | Error::ArityMismatch { .. } => 2,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = match cli.command {
        Command::Omega { n, delta, format } => cmd_omega(n, &delta, format),
        Command::Theorem {
            n,
            out,
            cache,
            jobs,
            degree,
            format,
        } => cmd_theorem(n, out, cache, jobs, degree, format),
        Command::Verify {
            check,
            cache,
            jobs,
            format,
        } => cmd_verify(check, cache, jobs, format),
    };
    match res {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn init_pool(jobs: usize) -> Result<()> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build_global()
        .map_err(|e| Error::Usage(format!("cannot size worker pool: {e}")))
}

fn cmd_omega(n: usize, delta: &[u16], format: Format) -> Result<u8> {
    if delta.len() != n {
        return Err(Error::Usage(format!(
            "--delta has {} entries but --n is {n}",
            delta.len()
        )));
    }
    let d = DeltaTuple::new(delta)?;
    let value = omega_t(&d)?;
    let erratum = omega_erratum(&d);
    match format {
        Format::Text => {
            println!("{value}");
            if let Some(note) = erratum {
                println!("{note}");
            }
        }
        Format::Json => {
            let doc = serde_json::json!({
                "n": n,
                "delta": delta,
                "value": value.to_json(),
                "display": value.to_string(),
                "erratum": erratum,
            });
            println!("{}", serde_json::to_string_pretty(&doc).expect("json"));
        }
    }
    Ok(0)
}

/// Loads cached omega values for genus `n` up to `bound`, warning about bad entries.
fn warm(
    cache: &OmegaCache,
    table: &OmegaTable,
    n: usize,
    bound: u16,
) -> Result<output::CacheStats> {
    let stats = cache.warm(table, n, bound)?;
    for (path, reason) in &stats.corrupt {
        eprintln!(
            "warning: cache entry {} is corrupt ({reason}); recomputing",
            path.display()
        );
    }
    Ok(output::CacheStats {
        loaded: stats.loaded,
        corrupt: stats
            .corrupt
            .iter()
            .map(|(p, _)| p.display().to_string())
            .collect(),
        written: 0,
    })
}

fn cmd_theorem(
    n: usize,
    out: PathBuf,
    cache: Option<PathBuf>,
    jobs: usize,
    degree: Option<usize>,
    format: Format,
) -> Result<u8> {
    if !(1..=4).contains(&n) {
        return Err(Error::Usage(format!("--n must be in 1..=4, got {n}")));
    }
    init_pool(jobs)?;
    let start = Instant::now();
    let table = OmegaTable::new();
    let cache = cache.map(OmegaCache::new);
    let e_bound = degree.map_or((1 << n) - 2, |d| d.min((1 << n) - 2));
    let mut cache_stats = match &cache {
        Some(c) => {
            let s = warm(c, &table, n, e_bound as u16)?;
            eprintln!(
                "cache: loaded {} omega values from {}",
                s.loaded,
                c.root().display()
            );
            Some(s)
        }
        None => None,
    };

    eprintln!("genus {n}: computing spherical images and solving");
    let result = run_theorem_to(n, &table, degree)?;
    for (stage, secs) in &result.timings {
        eprintln!("  {stage}: {secs:.2}s");
    }
    if let (Some(c), Some(s)) = (&cache, cache_stats.as_mut()) {
        s.written = c.persist(&table)?;
        eprintln!("cache: wrote {} omega values", s.written);
    }

    let run = output::RunInfo {
        degree,
        jobs: rayon::current_num_threads(),
        primitive_values: table.len(),
        cache: cache_stats,
        total_seconds: start.elapsed().as_secs_f64(),
    };
    output::write_theorem(&out, &result, &run)?;
    eprintln!("wrote results to {}", out.display());

    match format {
        Format::Text => {
            for (k, c) in result.e.iter().enumerate() {
                println!("e_{k} = {c}");
            }
            for (k, c) in result.f.iter().enumerate() {
                println!("f_{k} = {c}");
            }
        }
        Format::Json => {
            let doc = serde_json::json!({
                "genus": n,
                "E": output::coefficients_json(&result.e),
                "F": output::coefficients_json(&result.f),
            });
            println!("{}", serde_json::to_string_pretty(&doc).expect("json"));
        }
    }
    Ok(0)
}

fn cmd_verify(
    check: Vec<String>,
    cache: Option<PathBuf>,
    jobs: usize,
    format: Format,
) -> Result<u8> {
    init_pool(jobs)?;
    let ids: Vec<String> = if check.is_empty() {
        CHECK_IDS.iter().map(|s| s.to_string()).collect()
    } else {
        check
    };
    let ws = Workspace::new();
    let cache = cache.map(OmegaCache::new);
    if let Some(c) = &cache {
        for n in 1..=4 {
            warm(c, ws.omegas(n)?, n, (1 << n) - 2)?;
        }
    }
    let reports = run_checks(&ids, &ws)?;
    if let Some(c) = &cache {
        for n in 1..=4 {
            c.persist(ws.omegas(n)?)?;
        }
    }
    match format {
        Format::Text => {
            for r in &reports {
                println!("{r}");
            }
        }
        Format::Json => {
            println!(
                "{}",
                serde_json::to_string_pretty(&reports_json(&reports)).expect("json")
            )
        }
    }
    let failed = reports.iter().filter(|r| r.status == Status::Fail).count();
    let errata = reports
        .iter()
        .filter(|r| r.status == Status::ErratumNoted)
        .count();
    eprintln!(
        "{} checks: {} passed, {errata} with errata noted, {failed} failed",
        reports.len(),
        reports.len() - failed - errata
    );
    Ok(if failed == 0 { 0 } else { 1 })
}
