//! Result files of a `theorem` run.
//!
//! Everything except the `runtime` section of `manifest.json` depends only on
//! the engine version, the genus and `--degree`, so reruns are byte-identical.

use std::fs;
use std::path::Path;

use hecke_core::error::Result;
use hecke_core::inversion::{HeckePoly, SolveStats};
use hecke_core::pipeline::TheoremResult;
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

pub const ENGINE: &str = concat!("hecke ", env!("CARGO_PKG_VERSION"));
pub const MANIFEST: &str = "manifest.json";

#[derive(Clone, Debug, Default, Serialize)]
pub struct CacheStats {
    pub loaded: usize,
    pub written: usize,
    pub corrupt: Vec<String>,
}

/// Run facts that are not part of the result.
pub struct RunInfo {
    pub degree: Option<usize>,
    pub jobs: usize,
    pub primitive_values: usize,
    pub cache: Option<CacheStats>,
    pub total_seconds: f64,
}

#[derive(Serialize)]
struct FileEntry {
    name: String,
    sha256: String,
}

#[derive(Serialize)]
struct Timing<'a> {
    stage: &'a str,
    seconds: f64,
}

#[derive(Serialize)]
struct Manifest<'a> {
    engine: &'static str,
    run_id: String,
    genus: usize,
    degree_limit: Option<usize>,
    e_bound: usize,
    f_bound: usize,
    /// Distinct primitive omega values the run needed.
    omega_values: usize,
    e_systems: &'a [SolveStats],
    f_systems: &'a [SolveStats],
    files: Vec<FileEntry>,
    runtime: Runtime<'a>,
}

#[derive(Serialize)]
struct Runtime<'a> {
    jobs: usize,
    omega_evaluations: usize,
    cache: Option<&'a CacheStats>,
    timings: Vec<Timing<'a>>,
    total_seconds: f64,
}

/// Identifies the manifest from the inputs alone, so it is stable across reruns.
fn run_id(n: usize, degree: Option<usize>) -> String {
    let key = format!("{ENGINE} genus={n} degree={degree:?}");
    hex::encode(&Sha256::digest(key.as_bytes())[..8])
}

pub fn coefficients_json(cs: &[HeckePoly]) -> Value {
    Value::Array(
        cs.iter()
            .enumerate()
            .map(|(k, c)| json!({"X": k, "terms": c.to_json()}))
            .collect(),
    )
}

fn canonical_text(title: &str, id: &str, cs: &[HeckePoly]) -> String {
    let mut s = format!("# {title}; {MANIFEST} run {id}\n");
    for (k, c) in cs.iter().enumerate() {
        s.push_str(&format!("# X^{k}\n"));
        s.push_str(&c.to_canonical());
    }
    s
}

fn json_text(id: &str, n: usize, cs: &[HeckePoly]) -> String {
    let doc = json!({
        "manifest": format!("{MANIFEST} run {id}"),
        "genus": n,
        "coefficients": coefficients_json(cs),
    });
    serde_json::to_string_pretty(&doc).expect("json") + "\n"
}

/// Writes `E.txt`, `F.txt`, their JSON mirrors, the spherical-side series and
/// the manifest into `dir`.
pub fn write_theorem(dir: &Path, r: &TheoremResult, run: &RunInfo) -> Result<()> {
    fs::create_dir_all(dir)?;
    let n = r.n;
    let id = run_id(n, run.degree);
    let files = [
        (
            "E.txt",
            canonical_text(&format!("E(X), genus {n}"), &id, &r.e),
        ),
        (
            "F.txt",
            canonical_text(&format!("F(X), genus {n}"), &id, &r.f),
        ),
        ("E.json", json_text(&id, n, &r.e)),
        ("F.json", json_text(&id, n, &r.f)),
        (
            "omega_E.series",
            format!(
                "# Omega(E(X)), genus {n}; {MANIFEST} run {id}\n{}",
                r.e_series.to_canonical()
            ),
        ),
        (
            "omega_F.series",
            format!(
                "# Omega(F(X)), genus {n}; {MANIFEST} run {id}\n{}",
                r.f_series.to_canonical()
            ),
        ),
    ];
    let mut entries = Vec::new();
    for (name, text) in &files {
        fs::write(dir.join(name), text)?;
        entries.push(FileEntry {
            name: name.to_string(),
            sha256: hex::encode(Sha256::digest(text.as_bytes())),
        });
    }
    let manifest = Manifest {
        engine: ENGINE,
        run_id: id,
        genus: n,
        degree_limit: run.degree,
        e_bound: r.e.len().saturating_sub(1),
        f_bound: r.f.len().saturating_sub(1),
        omega_values: run.primitive_values,
        e_systems: &r.e_stats,
        f_systems: &r.f_stats,
        files: entries,
        runtime: Runtime {
            jobs: run.jobs,
            omega_evaluations: r.omega_evaluations,
            cache: run.cache.as_ref(),
            timings: r
                .timings
                .iter()
                .map(|(s, t)| Timing {
                    stage: s,
                    seconds: *t,
                })
                .collect(),
            total_seconds: run.total_seconds,
        },
    };
    let text = serde_json::to_string_pretty(&manifest).expect("json") + "\n";
    fs::write(dir.join(MANIFEST), text)?;
    Ok(())
}
