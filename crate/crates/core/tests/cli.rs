use novikov::cli;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut argv = vec!["novikov"];
    argv.extend_from_slice(args);
    let code = cli::run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn derivations_of_n4_20_at_two() {
    let (code, out, _) = run(&["derivations", "N4_20", "--param", "alpha=2"]);
    assert_eq!((code, out.as_str()), (0, "3\n"));
}

#[test]
fn cohomology_golden_n3s_01() {
    let (code, out, _) = run(&["cohomology", "N3s_01", "--golden"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("N3s_01: Z²=6 B²=1 H²=5"), "{out}");
    assert!(out.contains("-> pass"));
}

#[test]
fn check_zero_4_has_every_identity() {
    let (code, out, _) = run(&["check", "zero_4"]);
    assert_eq!(code, 0);
    for l in ["right-commutative true", "left-symmetric true", "novikov true", "two-step true"] {
        assert!(out.contains(l), "{out}");
    }
}

#[test]
fn unicode_alias_is_canonicalized() {
    let (code, out, _) = run(&["--format", "json", "catalog", "show", "N⁴₂₀"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["name"], "N4_20");
}

#[test]
fn catalog_list_counts() {
    let (_, out, _) = run(&["catalog", "list", "--section", "table_a"]);
    assert_eq!(out.lines().count(), 24);
    let (_, out, _) = run(&["catalog", "list", "--dim", "3"]);
    assert_eq!(out.lines().count(), 6);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(&["derivations", "N9_99"]).0, 2);
    assert_eq!(run(&["frobnicate"]).0, 2);
    assert_eq!(run(&["derivations", "N4_20", "--param", "beta=1"]).0, 2);
    assert_eq!(run(&["degenerate", "verify", "--row", "B01", "--digits", "8"]).0, 2);
    assert_eq!(run(&["split", "N4_12", "--subspace", "e1"]).0, 2);
    assert_eq!(run(&["extend", "N3s_01", "--cocycle", "D12", "--s", "2"]).0, 2);
}

#[test]
fn failing_witness_exits_1() {
    let (code, out, _) = run(&["degenerate", "verify", "--row", "B11", "--no-cross-check"]);
    assert_eq!(code, 1);
    assert!(out.contains("Mismatch"), "{out}");
    assert_eq!(run(&["degenerate", "verify", "--row", "B11e"]).0, 0);
}

#[test]
fn split_and_extend() {
    let (code, out, _) = run(&["split", "N4_12", "--subspace", "e4"]);
    assert_eq!(code, 0);
    assert!(out.contains("reproduces N4_12: yes"));
    let (code, out, _) = run(&["extend", "N3s_01", "--cocycle", "D12 + D31", "--s", "1"]);
    assert_eq!(code, 0);
    assert!(out.contains("novikov true"), "{out}");
    assert_eq!(run(&["extend", "N3s_01", "--cocycle", "D23"]).0, 2);
}

#[test]
fn user_algebras_file() {
    let dir = std::env::temp_dir().join(format!("novikov-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join("alg.json");
    std::fs::write(
        &p,
        r#"{"name":"mine","dim":2,"params":[],"constraints_nonzero":[],"products":[{"i":1,"j":1,"k":2,"c":"1"}]}"#,
    )
    .unwrap();
    let (code, out, _) = run(&["check", p.to_str().unwrap()]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("nilpotent, A^3 = 0"), "{out}");
    // e1 e1 = e1 is idempotent, so not nilpotent.
    std::fs::write(
        &p,
        r#"{"name":"bad","dim":2,"params":[],"constraints_nonzero":[],"products":[{"i":1,"j":1,"k":1,"c":"1"}]}"#,
    )
    .unwrap();
    assert_eq!(run(&["check", p.to_str().unwrap()]).0, 1);
}

#[test]
fn json_reports_are_reproducible() {
    let args = ["--format", "json", "--seed", "9", "degenerate", "verify", "--row", "B23", "--schedule", "1e-6,1e-12"];
    let (c1, a, _) = run(&args);
    let (c2, b, _) = run(&args);
    assert_eq!((c1, c2), (0, 0));
    assert_eq!(a, b);
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["seed"], 9);
}

#[test]
fn schedule_values() {
    use novikov::arith::gauss::Rational;
    use num_bigint::BigInt;
    let r = |n: i64, d: i64| Rational::new(BigInt::from(n), BigInt::from(d));
    assert_eq!(cli::parse_t_value("1e-3").unwrap(), r(1, 1000));
    assert_eq!(cli::parse_t_value("2.5e-2").unwrap(), r(1, 40));
    assert_eq!(cli::parse_t_value("1/7").unwrap(), r(1, 7));
    assert!(cli::parse_t_value("-1e-3").is_err());
    assert!(cli::parse_t_value("i").is_err());
}
