use std::process::Command;

use groupmagic_cli::{run, EXIT_NEGATIVE, EXIT_OK, EXIT_USAGE};

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn gm(args: &[&str]) -> Run {
    let mut stdout = Vec::new();
    let mut stderr = Vec::new();
    let argv = std::iter::once("groupmagic").chain(args.iter().copied());
    let code = run(argv, &mut stdout, &mut stderr);
    Run { code, stdout: String::from_utf8(stdout).unwrap(), stderr: String::from_utf8(stderr).unwrap() }
}

#[test]
fn label_even_degree_certificate() {
    let r = gm(&["label", "--graph", "C(3)", "--h", "C(4)", "--product", "lex", "--group", "Z4xZ3"]);
    assert_eq!(r.code, EXIT_OK, "{}", r.stderr);
    assert!(r.stdout.starts_with("# theorem: even-degrees-lex\n"), "{}", r.stdout);
    assert!(r.stdout.contains("\nmu: (3,0)\n"));
    assert_eq!(r.stdout.lines().filter(|l| l.starts_with("v ")).count(), 12);
}

#[test]
fn naive_count_for_p4() {
    let r = gm(&["search", "--graph", "P(4)", "--group", "Z4", "--mode", "count", "--naive"]);
    assert_eq!((r.code, r.stdout.as_str()), (EXIT_NEGATIVE, "0\n"));
}

#[test]
fn obstructions_for_p4() {
    let r = gm(&["obstructions", "--graph", "P(4)"]);
    assert_eq!(r.code, EXIT_NEGATIVE);
    assert!(r.stdout.lines().any(|l| l == "shared-neighborhood (0,3)"), "{}", r.stdout);
    let r = gm(&["obstructions", "--graph", "C(4)"]);
    assert_eq!((r.code, r.stdout.as_str()), (EXIT_OK, "none\n"));
    // forced identity is reported but is not a negative
    let r = gm(&["obstructions", "--graph", "join(C(4),K(1))"]);
    assert_eq!(r.code, EXIT_OK);
    assert!(r.stdout.contains("forced-identity 4"), "{}", r.stdout);
}

#[test]
fn label_verify_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let cases: &[&[&str]] = &[
        &["--graph", "C(3)", "--h", "C(4)", "--group", "Z12"],
        &["--graph", "C(3)", "--h", "C(4)", "--group", "Z2xZ2xZ3"],
        &["--graph", "K(4)", "--h", "C(4)", "--product", "dir", "--group", "Z4xZ4"],
        &["--graph", "Kb(2,3)", "--h", "C(4)", "--group", "Z4xZ5"],
        &["--graph", "K(2)", "--h", "KmM(6)", "--group", "Z6xZ2"],
        &["--graph", "C(6)", "--h", "pow(C(6),2)", "--product", "dir", "--group", "Z6xZ6"],
        &["--graph", "join(KmM(8),K(1))", "--group", "Z3xZ3"],
        &["--graph", "S(3)", "--group", "Z4"],
        &["--graph", "P(3)", "--h", "KmM(8)", "--method", "balanced-small-lex", "--s", "2", "--group", "Z4xZ6"],
        &["--graph", "K(4)", "--h", "C(4)", "--method", "balanced-large-dir", "--group", "Z4xZ4"],
    ];
    for (i, args) in cases.iter().enumerate() {
        let path = dir.path().join(format!("cert{i}.txt"));
        let mut argv = vec!["label"];
        argv.extend_from_slice(args);
        argv.extend_from_slice(&["--out", path.to_str().unwrap()]);
        let r = gm(&argv);
        assert_eq!(r.code, EXIT_OK, "{args:?}: {}", r.stderr);
        let written = std::fs::read_to_string(&path).unwrap();
        let mu = written.lines().find_map(|l| l.strip_prefix("mu: ")).unwrap().to_string();
        let v = gm(&["verify", "--cert", path.to_str().unwrap()]);
        assert_eq!(v.code, EXIT_OK, "{args:?}: {}{}", v.stdout, v.stderr);
        assert_eq!(v.stdout, format!("accepted: mu {mu}\n"));
    }
}

#[test]
fn verify_rejects_tampered_certificates() {
    let dir = tempfile::tempdir().unwrap();
    let good = gm(&["label", "--graph", "C(3)", "--h", "C(4)", "--group", "Z4xZ3"]).stdout;
    let wrong_mu = good.replace("mu: (3,0)", "mu: (1,0)");
    let path = dir.path().join("wrong_mu.txt");
    std::fs::write(&path, wrong_mu).unwrap();
    let r = gm(&["verify", "--cert", path.to_str().unwrap()]);
    assert_eq!(r.code, EXIT_NEGATIVE);
    assert!(r.stdout.contains("magic constant is (3,0)"), "{}", r.stdout);

    // swap the labels of two vertices in different blocks
    let mut lines: Vec<String> = good.lines().map(String::from).collect();
    let a = lines.iter().position(|l| l.starts_with("v 0 ")).unwrap();
    let b = lines.iter().position(|l| l.starts_with("v 5 ")).unwrap();
    let (la, lb) = (lines[a][4..].to_string(), lines[b][4..].to_string());
    lines[a] = format!("v 0 {lb}");
    lines[b] = format!("v 5 {la}");
    let path = dir.path().join("swapped.txt");
    std::fs::write(&path, lines.join("\n")).unwrap();
    let r = gm(&["verify", "--cert", path.to_str().unwrap()]);
    assert_eq!(r.code, EXIT_NEGATIVE, "{}", r.stdout);
    assert!(r.stdout.starts_with("rejected: w("));

    let path = dir.path().join("garbage.txt");
    std::fs::write(&path, "graph: C(4)\nnonsense\n").unwrap();
    assert_eq!(gm(&["verify", "--cert", path.to_str().unwrap()]).code, EXIT_USAGE);
}

#[test]
fn precondition_diagnostics() {
    let r = gm(&["label", "--graph", "P(3)", "--h", "C(4)", "--product", "dir", "--group", "Z12"]);
    assert_eq!(r.code, EXIT_USAGE);
    assert!(r.stderr.contains("degrees not all ≡ m mod 4 (residues 1,2)"), "{}", r.stderr);
    let r = gm(&["label", "--graph", "P(3)", "--h", "KmM(6)", "--method", "c4k2-dir", "--group", "Z6xZ3"]);
    assert_eq!(r.code, EXIT_USAGE);
    assert!(r.stderr.contains("degrees not all ≡ m mod 6"), "{}", r.stderr);
    let r = gm(&["label", "--graph", "Kb(3,3)", "--h", "C(4)", "--method", "kmn-mixed-lex", "--group", "Z4xZ6"]);
    assert!(r.code == EXIT_USAGE && r.stderr.contains("m even and n odd"), "{}", r.stderr);
    let r = gm(&["label", "--graph", "C(3)", "--h", "P(4)", "--group", "Z12"]);
    assert!(r.code == EXIT_USAGE && r.stderr.contains("H:"), "{}", r.stderr);
    let r = gm(&[
        "label",
        "--graph",
        "C(3)",
        "--h",
        "C(4)",
        "--method",
        "even-degrees-lex",
        "--product",
        "dir",
        "--group",
        "Z12",
    ]);
    assert_eq!(r.code, EXIT_USAGE);
    let r = gm(&["label", "--graph", "C(3)", "--h", "C(4)", "--method", "nope", "--group", "Z12"]);
    assert!(r.code == EXIT_USAGE && r.stderr.contains("unknown method"));
    let r = gm(&["label", "--graph", "S(5)", "--group", "Z6", "--method", "star"]);
    assert_eq!(r.code, EXIT_NEGATIVE);
}

#[test]
fn groups_construct_classify() {
    let r = gm(&["groups", "8"]);
    assert_eq!((r.code, r.stdout.as_str()), (EXIT_OK, "Z8\nZ4xZ2\nZ2xZ2xZ2\n"));
    assert_eq!(gm(&["groups", "0"]).code, EXIT_USAGE);
    let r = gm(&["construct", "C(4)"]);
    assert!(r.stdout.starts_with("vertices: 4\ndegrees: 2 2 2 2\n"), "{}", r.stdout);
    assert!(r.stdout.contains("edges: 4\n0 1\n0 3\n1 2\n2 3\n"), "{}", r.stdout);
    let r = gm(&["classify", "--graph", "C(4)"]);
    assert_eq!((r.code, r.stdout.as_str()), (EXIT_OK, "Z4: yes\nZ2xZ2: yes\ngroup distance magic: yes\n"));
    let r = gm(&["classify", "--graph", "S(5)", "--naive"]);
    assert_eq!(r.code, EXIT_NEGATIVE);
    assert!(r.stdout.ends_with("group distance magic: no\n"));
}

#[test]
fn search_modes() {
    let r = gm(&["search", "--graph", "S(3)", "--group", "Z2xZ2", "--mode", "count", "--jobs", "2"]);
    assert_eq!(r.stdout, "24\n");
    let r = gm(&["search", "--graph", "C(4)", "--group", "Z4", "--mode", "all", "--order", "input"]);
    assert!(r.stdout.starts_with("# count: 16\n"), "{}", r.stdout);
    assert_eq!(r.stdout.matches("graph: C(4)").count(), 16);
    let r = gm(&["search", "--graph", "C(9)", "--group", "Z9", "--naive"]);
    assert_eq!(r.code, EXIT_USAGE);
    let r = gm(&["search", "--graph", "C(4)", "--group", "Z5"]);
    assert_eq!(r.code, EXIT_USAGE);
}

#[test]
fn json_output() {
    let r = gm(&["--json", "search", "--graph", "C(4)", "--group", "Z4", "--mode", "count"]);
    let v: serde_json::Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(v["count"], 16);
    let r = gm(&["label", "--json", "--graph", "C(3)", "--h", "C(4)", "--group", "Z4xZ3"]);
    let v: serde_json::Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(v["theorem"], "even-degrees-lex");
    assert_eq!(v["mu"], "(3,0)");
    assert_eq!(v["labels"].as_array().unwrap().len(), 12);
    assert_eq!(v["parameters"]["r"], 1);
    let r = gm(&["--json", "classify", "--graph", "S(4)"]);
    let v: serde_json::Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(v["group_distance_magic"], true);
    let r = gm(&["--json", "groups", "4"]);
    assert_eq!(serde_json::from_str::<Vec<String>>(&r.stdout).unwrap(), ["Z4", "Z2xZ2"]);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(gm(&[]).code, EXIT_USAGE);
    assert_eq!(gm(&["label", "--graph", "C(4)"]).code, EXIT_USAGE);
    assert_eq!(gm(&["construct", "C(2)"]).code, EXIT_USAGE);
    let r = gm(&["--help"]);
    assert_eq!(r.code, EXIT_OK);
    assert!(r.stdout.contains("obstructions"));
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_groupmagic");
    let ok = Command::new(bin).args(["search", "--graph", "C(4)", "--group", "Z4"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    let neg =
        Command::new(bin).args(["search", "--graph", "P(4)", "--group", "Z4", "--mode", "count"]).output().unwrap();
    assert_eq!(neg.status.code(), Some(1));
    assert_eq!(String::from_utf8_lossy(&neg.stdout), "0\n");
    let bad = Command::new(bin).args(["groups", "x"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
}
