use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn instances() -> Vec<PathBuf> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("instances");
    let mut v: Vec<PathBuf> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "txt"))
        .collect();
    v.sort();
    assert!(v.len() >= 12);
    v
}

fn run(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut c = Command::new(env!("CARGO_BIN_EXE_pfcount"));
    c.args(args).env_remove("PFCOUNT_BUDGET");
    for (k, v) in env {
        c.env(k, v);
    }
    c.output().unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut a = args.to_vec();
    a.push("--json");
    let out = run(&a, &[]);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn scratch(name: &str, text: &str) -> PathBuf {
    let p = Path::new(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&p, text).unwrap();
    p
}

/// The all-left-to-right K2,2 orientation is the cancellation witness, not a Pfaffian instance.
fn is_witness(p: &Path) -> bool {
    p.ends_with("k22_cancel.txt")
}

fn is_path_family(report: &Value) -> bool {
    matches!(report["family"].as_str(), Some("st" | "stu"))
}

#[test]
fn count_agrees_with_oracle_on_every_instance() {
    for p in instances() {
        let f = p.to_str().unwrap();
        if is_witness(&p) {
            assert_eq!(json(&["count", f])["count"], "0");
            assert_eq!(json(&["oracle", f])["count"], 2);
            continue;
        }
        let count = json(&["count", f]);
        let oracle = json(&["oracle", f]);
        let want = if is_path_family(&count) { &oracle["min_weight_count"] } else { &oracle["count"] };
        let want = want.as_u64().unwrap();
        let got = count["count"].as_str().unwrap();
        match count["field"].as_str().unwrap() {
            "rational" => assert_eq!(got, want.to_string(), "{f}"),
            field => {
                let p: u64 = field.trim_start_matches("gf:").parse().unwrap();
                assert_eq!(got, format!("{} mod {p}", want % p), "{f}");
            }
        }
        if is_path_family(&count) {
            assert_eq!(count["min_weight"], oracle["min_weight"], "{f}");
        }
    }
}

#[test]
fn weighted_counts_agree_with_oracle() {
    for p in instances() {
        let f = p.to_str().unwrap();
        let count = json(&["count", "--weighted", f]);
        let oracle = json(&["oracle", f]);
        if is_witness(&p) || count["field"] != "rational" || oracle["count"] == 0 {
            continue;
        }
        assert_eq!(count["count"].as_str().unwrap(), oracle["min_weight_count"].to_string(), "{f}");
        assert_eq!(count["min_weight"], oracle["min_weight"], "{f}");
    }
}

#[test]
fn crt_matches_direct_count() {
    for p in instances() {
        let f = p.to_str().unwrap();
        let direct = json(&["count", "--field", "rational", f]);
        let crt = json(&["count", "--crt", "--field", "rational", f]);
        assert_eq!(crt["count"], direct["count"], "{f}");
    }
}

#[test]
fn reports_are_byte_identical_across_runs() {
    for p in instances() {
        let f = p.to_str().unwrap();
        for cmd in [&["count", f][..], &["verify", "--budget", "24", f], &["oracle", f], &["reduce", f]] {
            for json in [false, true] {
                let mut args = cmd.to_vec();
                if json {
                    args.push("--json");
                }
                let a = run(&args, &[]);
                let b = run(&args, &[]);
                assert!(a.status.success(), "{args:?}");
                assert_eq!(a.stdout, b.stdout, "{args:?}");
            }
        }
    }
}

#[test]
fn verify_passes_on_bundled_pfaffian_instances() {
    for p in instances() {
        let f = p.to_str().unwrap();
        let v = json(&["verify", "--budget", "24", f]);
        for c in v["sign_checks"].as_array().unwrap() {
            assert_eq!(c["holds"], true, "{f}: {c}");
        }
        if is_witness(&p) {
            assert_eq!(v["pfaffian"]["holds"], false);
            assert_eq!(v["oracle"]["agrees"], false);
        } else if !is_path_family(&v) {
            assert_eq!(v["pfaffian"]["holds"], true, "{f}");
            assert_eq!(v["oracle"]["agrees"], true, "{f}");
        } else {
            assert_eq!(v["oracle"]["agrees"], true, "{f}");
        }
    }
}

#[test]
fn reduce_round_trips() {
    for (i, p) in instances().into_iter().enumerate() {
        let f = p.to_str().unwrap();
        let weighted = is_path_family(&json(&["count", f]));
        for emit in ["native", "lawler"] {
            let mut args = vec!["reduce", f, "--emit", emit];
            if weighted {
                args.push("--weighted");
            }
            let out = run(&args, &[]);
            if !out.status.success() {
                // A parity has no Lawler form.
                assert_eq!(emit, "lawler");
                assert_eq!(out.status.code(), Some(2));
                continue;
            }
            let text = String::from_utf8(out.stdout).unwrap();
            let raw = scratch(&format!("reduced_{i}_{emit}.txt"), &text);
            let r = raw.to_str().unwrap();
            let mut c1 = vec!["count", f];
            let mut c2 = vec!["count", r];
            if weighted {
                c1.push("--weighted");
                c2.push("--weighted");
            }
            let (a, b) = (json(&c1), json(&c2));
            assert_eq!(a["count"], b["count"], "{f} via {emit}");
            if weighted {
                // The raw instance carries the reduced weights, already multiplied by the scale.
                let scale = a["length_scale"].as_i64().unwrap();
                assert_eq!(a["min_weight"].as_i64().unwrap() * scale, b["min_weight"].as_i64().unwrap());
            }
            // Reducing a raw instance reproduces it.
            if emit == "native" {
                let mut again = vec!["reduce", r];
                if weighted {
                    again.push("--weighted");
                }
                assert_eq!(String::from_utf8(run(&again, &[]).stdout).unwrap(), text);
            }
        }
    }
}

#[test]
fn field_override_gives_residues() {
    let f = Path::new(env!("CARGO_MANIFEST_DIR")).join("instances/k4_tree_weighted.txt");
    let f = f.to_str().unwrap();
    assert_eq!(json(&["count", f])["count"], "16");
    assert_eq!(json(&["count", "--field", "gf:7", f])["count"], "2 mod 7");
    assert_eq!(json(&["count", "--field", "gf:2", f])["count"], "0 mod 2");
}

#[test]
fn exit_codes() {
    let bad = scratch("bad.txt", "family tree\nvertices a\nedge e a zz\n");
    let out = run(&["count", bad.to_str().unwrap()], &[]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));

    assert_eq!(run(&["count", "/nonexistent/instance.txt"], &[]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"], &[]).status.code(), Some(2));

    let tri = Path::new(env!("CARGO_MANIFEST_DIR")).join("instances/k3_tree.txt");
    let tri = tri.to_str().unwrap();
    assert_eq!(run(&["oracle", tri, "--budget", "2"], &[]).status.code(), Some(3));
    assert_eq!(run(&["oracle", tri], &[("PFCOUNT_BUDGET", "2")]).status.code(), Some(3));
    // The flag wins over the environment.
    assert_eq!(run(&["oracle", tri, "--budget", "3"], &[("PFCOUNT_BUDGET", "2")]).status.code(), Some(0));
    assert_eq!(run(&["count", tri, "--crt", "--field", "gf:5"], &[]).status.code(), Some(2));

    let grid = Path::new(env!("CARGO_MANIFEST_DIR")).join("instances/grid_dag.txt");
    assert_eq!(run(&["verify", grid.to_str().unwrap()], &[]).status.code(), Some(3));
    // Counting needs no enumeration, whatever the budget.
    assert_eq!(run(&["count", grid.to_str().unwrap(), "--budget", "1"], &[]).status.code(), Some(0));
}

#[test]
fn no_base_is_not_an_error() {
    let f = scratch("disconnected.txt", "family tree\nvertices a b c\nedge e a b\n");
    let r = json(&["count", f.to_str().unwrap()]);
    assert_eq!(r["count"], "0");
    let empty = scratch("empty_pair.txt", "family raw-pair\ncolumns a b\nrow1 r 1 0\nrow2 r 0 1\n");
    assert_eq!(json(&["count", empty.to_str().unwrap()])["constant"], "none");
    let w = json(&["count", "--weighted", f.to_str().unwrap()]);
    assert_eq!(w["count"], "0");
    assert_eq!(w["min_weight"], Value::Null);
}

#[test]
fn timings_are_opt_in() {
    let tri = Path::new(env!("CARGO_MANIFEST_DIR")).join("instances/k3_tree.txt");
    let tri = tri.to_str().unwrap();
    assert!(json(&["count", tri]).get("timings_ms").is_none());
    assert!(json(&["count", tri, "--timings"])["timings_ms"]["count"].is_number());
}
