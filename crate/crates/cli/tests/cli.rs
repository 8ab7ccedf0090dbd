use dinv_cli::{run, Outcome};

fn dinv(args: &[&str]) -> Outcome {
    let mut full = vec!["dinv"];
    full.extend_from_slice(args);
    run(full)
}

#[test]
fn cached_output_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().to_str().unwrap();
    let commands: &[&[&str]] = &[
        &["sfs", "d", "(-1; 1/2, 1/3, 2/5)"],
        &["surgery", "d", "16/3", "--torus", "3,2"],
        &["match", "(-1; 1/2, 1/2, 7/5)"],
        &["classify", "--h1-max", "9", "--n-max", "11"],
    ];
    for cmd in commands {
        for format in ["text", "json", "csv"] {
            let mut plain = vec!["--format", format];
            plain.extend_from_slice(cmd);
            let fresh = dinv(&plain);
            assert_eq!(fresh.code, 0, "{cmd:?}: {}", fresh.stderr);
            let mut cached = vec!["--cache-dir", cache];
            cached.extend_from_slice(&plain);
            let first = dinv(&cached);
            let second = dinv(&cached);
            assert_eq!(fresh, first, "{cmd:?} {format}");
            assert_eq!(first, second, "{cmd:?} {format}");
        }
    }
    assert!(std::fs::read_dir(dir.path()).unwrap().count() >= commands.len());
}

#[test]
fn corrupt_cache_entries_are_recomputed() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().to_str().unwrap();
    let args = ["--cache-dir", cache, "match", "(-1; 1/2, 1/3, 1/5)"];
    let good = dinv(&args);
    for entry in std::fs::read_dir(dir.path()).unwrap() {
        std::fs::write(entry.unwrap().path(), b"{not json").unwrap();
    }
    assert_eq!(dinv(&args), good);
}

#[test]
fn exit_codes() {
    assert_eq!(dinv(&["sfs", "d", "(-1; 1/2"]).code, 2);
    assert_eq!(dinv(&["sfs", "d", "(-1; 1/0, 1/3, 1/5)"]).code, 2);
    assert_eq!(dinv(&["surgery", "d", "7/0", "--alex", "D1"]).code, 2);
    assert_eq!(dinv(&["surgery", "d", "7", "--alex", "1,1"]).code, 2);
    assert_eq!(dinv(&["knots", "enumerate", "--g-max", "0"]).code, 2);
    assert_eq!(dinv(&["--workers", "0", "knots", "enumerate"]).code, 2);
    assert_eq!(dinv(&["frobnicate"]).code, 2);
    // Below the L-space bound and a form that is not definite.
    let low = dinv(&["surgery", "d", "2", "--alex", "D2"]);
    assert_eq!(low.code, 3, "{}", low.stderr);
    assert!(low.stderr.contains("2g-1"));
    assert_eq!(dinv(&["sfs", "d", "(-2; 1/2, 1/2, 1/2, 1/2)"]).code, 3);
    assert_eq!(
        dinv(&[
            "sfs",
            "d",
            "(-1; 1/2, 1/3, 2/5)",
            "--bruteforce",
            "--limit",
            "10"
        ])
        .code,
        3
    );
    assert_eq!(dinv(&["--version"]).code, 0);
}

#[test]
fn output_formats() {
    let text = dinv(&["sfs", "d", "(-1; 1/2, 1/3, 1/5)"]);
    assert!(text.stdout.contains("multiset: -2"), "{}", text.stdout);

    let csv = dinv(&["--format", "csv", "surgery", "d", "4", "--torus", "3,2"]);
    assert_eq!(csv.stdout, "label,d\n0,-5/4\n1,0\n2,-1/4\n3,0\n");

    let json = dinv(&[
        "--format",
        "json",
        "sfs",
        "normalize",
        "-(-1; 1/2, 1/3, 1/5)",
    ]);
    let v: serde_json::Value = serde_json::from_str(&json.stdout).unwrap();
    assert_eq!(v["type"], "I");
    assert_eq!(v["h1"], 1);

    let graph = dinv(&[
        "--format",
        "json",
        "sfs",
        "d",
        "--graph",
        r#"{"weights":[-2,-2,-2,-2,-2,-2,-2,-2],"edges":[[0,1],[1,2],[2,3],[3,4],[4,5],[5,6],[2,7]]}"#,
    ]);
    let v: serde_json::Value = serde_json::from_str(&graph.stdout).unwrap();
    assert_eq!(v["multiset"], serde_json::json!(["2"]));

    let rev = dinv(&["sfs", "d", "-(-1; 1/2, 1/3, 1/5)"]);
    assert!(rev.stdout.contains("multiset: 2"), "{}", rev.stdout);
}

#[test]
fn brute_force_agrees_through_the_cli() {
    for m in [
        "(-1; 1/2, 1/3, 2/5)",
        "(-1; 1/2, 1/2, 2/3)",
        "(-1; 1/2, 1/3, 1/4)",
    ] {
        let path = dinv(&["--format", "json", "sfs", "d", m]);
        let brute = dinv(&["--format", "json", "sfs", "d", m, "--bruteforce"]);
        let a: serde_json::Value = serde_json::from_str(&path.stdout).unwrap();
        let b: serde_json::Value = serde_json::from_str(&brute.stdout).unwrap();
        assert_eq!(a["multiset"], b["multiset"], "{m}");
    }
}

#[test]
fn worker_count_does_not_change_results() {
    let args = [
        "--format",
        "json",
        "classify",
        "--h1-max",
        "16",
        "--n-max",
        "21",
        "--dihedral-only",
    ];
    let one = dinv(&[&["--workers", "1"][..], &args[..]].concat());
    let four = dinv(&[&["--workers", "4"][..], &args[..]].concat());
    assert_eq!(one.code, 0, "{}", one.stderr);
    assert_eq!(one, four);
}

#[test]
fn table_diffs() {
    let t4 = dinv(&["tables", "4", "--diff"]);
    assert_eq!(t4.stdout, "0 discrepancies\n");
    let t1 = dinv(&["tables", "1", "--diff"]);
    assert_eq!(t1.stdout, "0 discrepancies\n");
    let t3 = dinv(&["--format", "json", "tables", "3", "--diff"]);
    let v: serde_json::Value = serde_json::from_str(&t3.stdout).unwrap();
    let rows: Vec<&str> = v["discrepancies"]
        .as_array()
        .unwrap()
        .iter()
        .map(|d| d["row"].as_str().unwrap())
        .collect();
    assert!(
        rows.iter()
            .all(|r| r.starts_with("4m=24") || r.starts_with("4m=32")),
        "{rows:?}"
    );
}
