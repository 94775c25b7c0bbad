//! Acceptance run: one line per criterion with its runtime limit.
//! Built with `harness = false` so the lines always reach the test log.

use std::fs;
use std::path::Path;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use hecke_core::error::Result;
use hecke_core::glhecke::{omega_erratum, DeltaTuple, OmegaTable};
use hecke_core::pipeline::run_theorem;
use hecke_core::verify::{
    generator_images_report, golden_report, lp_report, omega_examples_report, omega_hom_report,
    run_check, CheckReport, Status, Workspace,
};

struct Outcome {
    ok: bool,
    detail: String,
}

fn from_report(r: &CheckReport, allow_erratum: bool) -> Outcome {
    let ok = match r.status {
        Status::Pass => true,
        Status::ErratumNoted => allow_erratum,
        Status::Fail => false,
    };
    let mut detail = r.status.to_string();
    if let Some(w) = &r.witness {
        detail.push_str(&format!(": {w}"));
    }
    Outcome { ok, detail }
}

struct Runner {
    failures: usize,
}

impl Runner {
    fn criterion(
        &mut self,
        id: u32,
        name: &str,
        limit: Duration,
        f: impl FnOnce() -> Result<Outcome>,
    ) {
        let t = Instant::now();
        let res = f();
        let elapsed = t.elapsed();
        let (ok, detail) = match res {
            Ok(o) => (o.ok && elapsed <= limit, o.detail),
            Err(e) => (false, format!("error: {e}")),
        };
        let timing = if elapsed > limit { "OVER LIMIT " } else { "" };
        println!(
            "{} {id:>2} {name}: {timing}{:.2}s (limit {}s); {detail}",
            if ok { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            limit.as_secs()
        );
        if !ok {
            self.failures += 1;
        }
    }
}

fn golden(n: usize, ws: &Workspace) -> Result<Outcome> {
    let r = run_theorem(n, &OmegaTable::new())?;
    let rep = golden_report(n, &r.e, &r.f)?;
    let mut out = from_report(&rep, n == 3);
    out.detail
        .push_str(&format!(" ({} e, {} f coefficients)", r.e.len(), r.f.len()));
    for note in rep.notes.iter().filter(|s| s.contains("erratum")) {
        out.detail.push_str(&format!("; {note}"));
    }
    ws.insert_theorem(r)?;
    Ok(out)
}

fn check(ws: &Workspace, id: &str) -> Result<Outcome> {
    Ok(from_report(&run_check(id, ws)?, false))
}

fn hecke(args: &[&str], out: &Path) -> std::result::Result<(), String> {
    let status = Command::new(env!("CARGO_BIN_EXE_hecke"))
        .args(args)
        .arg("--out")
        .arg(out)
        .stdout(std::process::Stdio::null())
        .stderr(std::process::Stdio::null())
        .status()
        .map_err(|e| e.to_string())?;
    if status.success() {
        Ok(())
    } else {
        Err(format!("hecke {args:?} exited with {status}"))
    }
}

/// Result files must match byte for byte; the manifest only outside `runtime`.
fn same_results(a: &Path, b: &Path) -> std::result::Result<usize, String> {
    let mut names: Vec<String> = fs::read_dir(a)
        .map_err(|e| e.to_string())?
        .map(|e| e.unwrap().file_name().to_string_lossy().into_owned())
        .collect();
    names.sort();
    for name in &names {
        let (x, y) = (fs::read(a.join(name)), fs::read(b.join(name)));
        let (x, y) = (
            x.map_err(|e| e.to_string())?,
            y.map_err(|e| format!("{name}: {e}"))?,
        );
        let equal = if name == "manifest.json" {
            let strip = |bytes: &[u8]| {
                let mut v: serde_json::Value = serde_json::from_slice(bytes).unwrap();
                v.as_object_mut().unwrap().remove("runtime");
                v
            };
            strip(&x) == strip(&y)
        } else {
            x == y
        };
        if !equal {
            return Err(format!("{name} differs"));
        }
    }
    Ok(names.len())
}

fn determinism() -> Result<Outcome> {
    let dir = tempfile::tempdir()?;
    let runs = [
        (vec!["theorem", "--n", "3"], "g3a"),
        (vec!["theorem", "--n", "3"], "g3b"),
        (
            vec!["theorem", "--n", "4", "--degree", "6", "--jobs", "1"],
            "g4j1",
        ),
        (
            vec!["theorem", "--n", "4", "--degree", "6", "--jobs", "8"],
            "g4j8",
        ),
    ];
    for (args, name) in &runs {
        if let Err(e) = hecke(args, &dir.path().join(name)) {
            return Ok(Outcome {
                ok: false,
                detail: e,
            });
        }
    }
    let p = |s: &str| dir.path().join(s);
    Ok(match (same_results(&p("g3a"), &p("g3b")), same_results(&p("g4j1"), &p("g4j8"))) {
        (Ok(a), Ok(b)) => Outcome {
            ok: true,
            detail: format!("genus 3 reruns: {a} files identical; genus 4 to X^6, jobs 1 vs 8: {b} files identical"),
        },
        (Err(e), _) => Outcome { ok: false, detail: format!("genus 3 reruns: {e}") },
        (_, Err(e)) => Outcome { ok: false, detail: format!("jobs 1 vs 8: {e}") },
    })
}

fn main() -> ExitCode {
    let secs = Duration::from_secs;
    let ws = Workspace::new();
    let mut r = Runner { failures: 0 };

    r.criterion(1, "genus-1 golden", secs(1), || golden(1, &ws));
    r.criterion(2, "genus-2 golden", secs(10), || golden(2, &ws));
    r.criterion(3, "genus-3 golden", secs(300), || golden(3, &ws));
    r.criterion(4, "genus-4 theorem", secs(7200), || golden(4, &ws));
    r.criterion(5, "generator images", secs(5), || {
        let images = hecke_core::spseries::generator_images(4, &OmegaTable::new())?;
        Ok(from_report(&generator_images_report(&images), false))
    });
    r.criterion(6, "omega examples and erratum", secs(60), || {
        let rep = omega_examples_report()?;
        let d = DeltaTuple::new(&[0, 1, 1, 1])?;
        let note = omega_erratum(&d).unwrap_or_default();
        let mut out = from_report(&rep, true);
        out.ok &= rep.status == Status::ErratumNoted && note.contains("p^-3");
        out.detail.push_str(&format!("; {note}"));
        Ok(out)
    });
    r.criterion(7, "l_p oracle gate", secs(60), || {
        Ok(from_report(&lp_report()?, false))
    });
    r.criterion(8, "omega homomorphism", secs(60), || {
        Ok(from_report(&omega_hom_report(4)?, false))
    });
    r.criterion(9, "series cross-check", secs(600), || {
        check(&ws, "series-crosscheck")
    });
    for id in [
        "functional-eq",
        "satake",
        "denom-symmetry",
        "genus-reduction",
    ] {
        r.criterion(10, id, secs(600), || check(&ws, id));
    }
    r.criterion(11, "inversion of e3", secs(60), || {
        check(&ws, "inversion-e3")
    });
    r.criterion(12, "determinism", secs(600), determinism);

    println!("acceptance: {} failing line(s)", r.failures);
    if r.failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
