use orekit::cli::run;

const SEXTIC: &str = "X^6 + w^3*X^5 + w^17*X^4 + w^3*X^3 + w^27*X^2 + w^35*X + w^36";

fn orekit(args: &[&str]) -> (i32, String, String) {
    run(std::iter::once("orekit").chain(args.iter().copied()))
}

#[test]
fn counts_the_sextic() {
    let (code, out, _) = orekit(&[
        "count-factorizations", "--p", "7", "--r", "2", "--h", "Y^2-Y+3", SEXTIC,
    ]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "99");
}

#[test]
fn splitting_degree_of_the_cubic() {
    let (code, out, _) = orekit(&[
        "splitting-field", "--p", "7", "--r", "5", "--h", "Y^5+Y+4", "X^3 + w*X^2 - w^2", "--json",
    ]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["verb"], "splitting-field");
    assert_eq!(v["result"]["m"], "171");
    assert_eq!(v["field"]["p"], 7);
    assert!(v["timing_ms"].is_null());
}

#[test]
fn x_is_irreducible() {
    let (code, out, _) = orekit(&["irreducible", "--p", "3", "--r", "2", "X"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "true");
}

#[test]
fn exit_codes() {
    assert_eq!(orekit(&["psi", "--p", "3", "--r", "2", "X^2 + q"]).0, 2);
    assert_eq!(orekit(&["factor", "--p", "3", "--r", "2", "X^2 + X"]).0, 3);
    let (code, _, err) = orekit(&[
        "factorizations", "--p", "7", "--r", "2", "--h", "Y^2-Y+3", "--budget", "10", SEXTIC,
    ]);
    assert_eq!(code, 4);
    assert!(!err.is_empty());
    assert_eq!(orekit(&["no-such-verb"]).0, 2);
}

#[test]
fn json_is_deterministic() {
    let args = [
        "factorizations", "--p", "2", "--r", "2", "--seed", "5", "--json", "X^3 + X + 1",
    ];
    let a = orekit(&args);
    let b = orekit(&args);
    assert_eq!(a.0, 0);
    assert_eq!(a, b);
}
