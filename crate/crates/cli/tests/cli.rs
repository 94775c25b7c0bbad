use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn hecke(args: &[&str]) -> Output {
    hecke_env(args, &[])
}

fn hecke_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_hecke"));
    for var in [
        "HECKE_N",
        "HECKE_FORMAT",
        "HECKE_OUT",
        "HECKE_CACHE",
        "HECKE_JOBS",
        "HECKE_DEGREE",
        "HECKE_CHECK",
    ] {
        cmd.env_remove(var);
    }
    cmd.args(args)
        .envs(env.iter().copied())
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn omega_examples() {
    let o = hecke(&["omega", "--n", "4", "--delta", "0,0,1,1"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "p^-3 * sym[1,1,0,0]\n");

    let o = hecke(&["omega", "--n", "4", "--delta", "0,0,0,0"]);
    assert_eq!(stdout(&o), "1\n");

    let o = hecke(&["omega", "--n", "4", "--delta", "0,1,1,1"]);
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("p^-6 * sym[1,1,1,0]"));
    let note = lines.next().unwrap();
    assert!(
        note.starts_with("erratum:") && note.contains("p^-3"),
        "{note}"
    );
}

#[test]
fn omega_json() {
    let o = hecke(&["omega", "--n", "2", "--delta", "0,1", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["display"], "p^-1 * sym[1,0]");
    assert_eq!(v["value"][0]["partition"], serde_json::json!([1, 0]));
    assert_eq!(
        v["value"][0]["p"],
        serde_json::json!({"min": -1, "coeffs": [1]})
    );
    assert!(v["erratum"].is_null());
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        vec!["omega", "--n", "4", "--delta", "0,1,0,1"],
        vec!["omega", "--n", "3", "--delta", "0,1"],
        vec!["theorem", "--n", "5"],
        vec!["verify", "--check", "no-such-check"],
        vec!["frobnicate"],
    ] {
        let o = hecke(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}: {}", stderr(&o));
    }
    let o = hecke(&["verify", "--check", "no-such-check"]);
    assert!(stderr(&o).contains("golden-4") && stderr(&o).contains("lp-oracle"));
}

#[test]
fn genus_one_files() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("g1");
    let o = hecke(&["theorem", "--n", "1", "--out", path_str(&out)]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(stdout(&o), "e_0 = 1\nf_0 = 1\nf_1 = -T\nf_2 = p * [p]\n");
    // progress goes to stderr only
    assert!(stderr(&o).contains("genus 1"));

    let manifest: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(out.join("manifest.json")).unwrap()).unwrap();
    let run = manifest["run_id"].as_str().unwrap();
    let f = fs::read_to_string(out.join("F.txt")).unwrap();
    assert!(f.lines().next().unwrap().contains(run));
    assert!(
        f.ends_with("# X^1\n1,0 -> [0; -1]\n# X^2\n0,1 -> [1; 1]\n"),
        "{f}"
    );

    let fj: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(out.join("F.json")).unwrap()).unwrap();
    assert!(fj["manifest"].as_str().unwrap().contains(run));
    assert_eq!(
        fj["coefficients"][2],
        serde_json::json!({"X": 2, "terms": [{"gen": [0, 1], "p": {"min": 1, "coeffs": [1]}}]})
    );
    for entry in manifest["files"].as_array().unwrap() {
        assert!(out.join(entry["name"].as_str().unwrap()).exists());
    }
}

#[test]
fn environment_overrides_and_flag_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let out = path_str(dir.path());
    let o = hecke_env(
        &["theorem", "--out", out],
        &[("HECKE_N", "2"), ("HECKE_FORMAT", "json")],
    );
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["genus"], 2);

    let o = hecke_env(&["theorem", "--n", "1", "--out", out], &[("HECKE_N", "2")]);
    assert!(stdout(&o).starts_with("e_0 = 1\nf_0 = 1\nf_1 = -T\n"));
}

#[test]
fn truncated_run_writes_prefix() {
    let dir = tempfile::tempdir().unwrap();
    let full = dir.path().join("full");
    let cut = dir.path().join("cut");
    hecke(&["theorem", "--n", "3", "--out", path_str(&full)]);
    let o = hecke(&[
        "theorem",
        "--n",
        "3",
        "--degree",
        "2",
        "--out",
        path_str(&cut),
    ]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("e_2 = ") && !text.contains("e_3 = ") && !text.contains("f_3 = "));
    let full_e: Vec<String> = fs::read_to_string(full.join("E.txt"))
        .unwrap()
        .lines()
        .skip(1)
        .map(String::from)
        .collect();
    let cut_e: Vec<String> = fs::read_to_string(cut.join("E.txt"))
        .unwrap()
        .lines()
        .skip(1)
        .map(String::from)
        .collect();
    assert_eq!(cut_e[..], full_e[..cut_e.len()]);
}

#[test]
fn corrupt_cache_is_recomputed() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache");
    let (a, b) = (dir.path().join("a"), dir.path().join("b"));
    let o = hecke(&[
        "theorem",
        "--n",
        "3",
        "--cache",
        path_str(&cache),
        "--out",
        path_str(&a),
    ]);
    assert!(o.status.success());

    let entry = cache.join("n3").join("d1_2.sym");
    let text = fs::read_to_string(&entry).unwrap();
    fs::write(&entry, text.replacen("1", "7", 1)).unwrap();

    let o = hecke(&[
        "theorem",
        "--n",
        "3",
        "--cache",
        path_str(&cache),
        "--out",
        path_str(&b),
    ]);
    assert!(o.status.success());
    assert!(
        stderr(&o).contains("warning: cache entry"),
        "{}",
        stderr(&o)
    );
    assert_eq!(fs::read_to_string(&entry).unwrap(), text);
    for name in [
        "E.txt",
        "F.txt",
        "E.json",
        "F.json",
        "omega_E.series",
        "omega_F.series",
    ] {
        assert_eq!(
            fs::read(a.join(name)).unwrap(),
            fs::read(b.join(name)).unwrap(),
            "{name}"
        );
    }
}

#[test]
fn verify_selected_checks() {
    let o = hecke(&["verify", "--check", "lp-oracle,golden-2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    assert!(
        text.contains("pass lp-oracle") && text.contains("pass golden-2"),
        "{text}"
    );

    let o = hecke(&[
        "verify",
        "--check",
        "golden-1",
        "--check",
        "omega-examples",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v[0]["check"], "golden-1");
    assert_eq!(v[1]["status"], "erratum-noted");
}
