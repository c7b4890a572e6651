use ldt::algebra::{macmahon_neg, MultiPoly, Mono, RatFunc, Series, EXACT, Q};
use ldt::partitions::Partition;
use ldt::tqft::{assemble, degree0};
use ldt_io::cli::{run, EXIT_CHECK, EXIT_OK, EXIT_USAGE};
use ldt_io::expr::{parse_ratfunc, parse_ratfunc_with};
use ldt_io::format::*;
use proptest::prelude::*;
use serde_json::Value;

fn ldt(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut all = vec!["ldt"];
    all.extend_from_slice(args);
    let code = run(all, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json_series(args: &[&str], key: &str) -> Series {
    let (code, out, _) = ldt(args);
    assert_eq!(code, EXIT_OK, "{:?}", args);
    let v: Value = serde_json::from_str(&out).unwrap();
    series_from_json(&v[key], TQFT_NAMES).unwrap()
}

fn rf(s: &str) -> RatFunc {
    parse_ratfunc(s).unwrap()
}

#[test]
fn expressions() {
    assert_eq!(rf("(1/2)/(t2^2)"), RatFunc::t2().pow(-2).scale(&Q::new(1.into(), 2.into())));
    assert_eq!(rf("-3/2*s^2 + t1"), rf("t1 - (3*s*s)/2"));
    assert_eq!(rf("t1^-1"), rf("1/t1"));
    assert_eq!(rf("t1^(-2)*t1^2"), RatFunc::one());
    assert_eq!(rf("((s))"), RatFunc::s());
    assert_eq!(parse_ratfunc_with("s1 + s3", GENERAL_NAMES).unwrap(), rf("s + t2"));
    for bad in ["", "s +", "1/0", "x", "t1^", "(s", "s)", "2 $ 3", "0^-1"] {
        assert!(parse_ratfunc(bad).is_err(), "{bad}");
    }
}

#[test]
fn partitions_and_levels() {
    assert_eq!(parse_partition("2,1").unwrap(), Partition::new(vec![2, 1]));
    assert_eq!(parse_partition("1,2").unwrap(), Partition::new(vec![2, 1]));
    assert_eq!(parse_partition("").unwrap(), Partition::empty());
    assert!(parse_partition("2,0").is_err());
    assert!(parse_partition("a").is_err());
    assert_eq!(parse_insertions("").unwrap(), vec![]);
    assert_eq!(parse_insertions("1;1").unwrap().len(), 2);
    assert_eq!(parse_level("-1,0").unwrap(), (-1, 0));
    assert!(parse_level("1").is_err());
}

#[test]
fn minus_one_cap_example() {
    let got = json_series(
        &["dt", "--genus", "0", "--level", "-1,0", "--cap", "2,1", "--qmax", "8", "--format", "json"],
        "series",
    );
    // (t2^{-2}/2) / ((1+q)(1-q^2))
    let den = Series::from_poly(vec![RatFunc::one(), RatFunc::one(), RatFunc::from_int(-1), RatFunc::from_int(-1)], 8);
    let want = den.inv().unwrap().scale(&rf("1/(2*t2^2)"));
    assert_eq!(got, want);
}

#[test]
fn degree_zero_examples() {
    let got = json_series(
        &["dt", "--genus", "0", "--level", "0,0", "--insertions", "", "--degree", "0", "--qmax", "5", "--format", "json"],
        "series",
    );
    let e = rf("-2*(t1+t2)^2/(t1*t2)");
    assert_eq!(got, macmahon_neg(5).pow_exponent(&e).unwrap());
    assert_eq!(got, degree0(0, 0, 0, 0, 5));

    let one = json_series(&["dt", "--degree", "0", "--qmax", "0", "--format", "json"], "series");
    assert_eq!(one, Series::one(0));
    let (_, text, _) = ldt(&["dt", "--degree", "0", "--qmax", "0"]);
    assert_eq!(text.trim(), "q^0*(1); O(q^1)");
}

#[test]
fn dt_matches_the_library() {
    let got = json_series(&["dt", "--genus", "1", "--insertions", "2;1,1", "--qmax", "4", "--format", "json"], "series");
    let ins = [Partition::new(vec![2]), Partition::new(vec![1, 1])];
    assert_eq!(got, assemble(1, 0, 0, &ins, 2, 4).unwrap());
    let tensors = json_series(
        &["dt", "--genus", "1", "--insertions", "2;1,1", "--qmax", "4", "--gluing", "tensors", "--format", "json"],
        "series",
    );
    assert_eq!(tensors, got);
}

#[test]
fn vertex_examples() {
    let (code, out, _) = ldt(&["vertex", "--degree", "1", "--qmax", "8", "--format", "json"]);
    assert_eq!(code, EXIT_OK);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["variables"][0], "s1");
    let got = series_from_json(&v["vertices"][0]["series"], GENERAL_NAMES).unwrap();
    let one_plus_q = Series::from_poly(vec![RatFunc::one(), RatFunc::one()], 8);
    assert_eq!(got, one_plus_q.pow_exponent(&rf("(t1+t2)/s")).unwrap());

    let (code, out, _) = ldt(&["vertex", "--degree", "2", "--cy", "--qmax", "10"]);
    assert_eq!(code, EXIT_OK);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 2);
    // both hook multisets of degree 2 are {1, 2}
    let want = "q^0*(1) + q^1*(-1) + q^2*(2) + q^3*(-2) + q^4*(3) + q^5*(-3) + q^6*(4) + q^7*(-4) + q^8*(5) + q^9*(-5) + q^10*(6); O(q^11)";
    assert_eq!(lines[0], format!("(2): {}", want));
    assert_eq!(lines[1], format!("(1,1): {}", want));

    let (code, out, _) = ldt(&["vertex", "--degree", "0"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.trim(), "(): q^0*(1); O(q^9)");
}

#[test]
fn custom_frame_reproduces_the_solver_frame() {
    let a = ldt(&["vertex", "--degree", "2", "--qmax", "3", "--frame", "solver"]);
    let b = ldt(&["vertex", "--degree", "2", "--qmax", "3", "--frame", "custom(s, t1 - s, t2)"]);
    assert_eq!(a.0, EXIT_OK);
    assert_eq!(a.1, b.1);
}

#[test]
fn check_reports() {
    let (code, out, _) = ldt(&["check", "additivity", "--dmax", "5"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.starts_with("PASS"));
    let (code, out, _) = ldt(&["check", "cy-vertex", "--dmax", "4", "--qmax", "10", "--format", "json"]);
    assert_eq!(code, EXIT_OK);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["passed"], true);
    let (code, out, _) = ldt(&["--check", "macmahon"]);
    assert_eq!(code, EXIT_OK, "{out}");
}

#[test]
fn tqft_gluing_check() {
    let (code, out, _) = ldt(&["check", "tqft-gluing", "--dmax", "3"]);
    assert_eq!(code, EXIT_OK, "{out}");
    assert_eq!(out.lines().count(), 4);
}

#[test]
fn exit_codes() {
    assert_eq!(ldt(&["check", "no-such-suite"]).0, EXIT_USAGE);
    assert_eq!(ldt(&["dt", "--cap", "2,x"]).0, EXIT_USAGE);
    assert_eq!(ldt(&["dt", "--level", "1"]).0, EXIT_USAGE);
    assert_eq!(ldt(&["dt", "--degree", "3", "--cap", "2"]).0, EXIT_USAGE);
    assert_eq!(ldt(&["dt", "--qmax", "-1"]).0, EXIT_USAGE);
    assert_eq!(ldt(&["frobnicate"]).0, EXIT_USAGE);
    assert_eq!(ldt(&[]).0, EXIT_USAGE);
    assert_eq!(ldt(&["vertex", "--degree", "9"]).0, EXIT_USAGE);
    assert_eq!(ldt(&["vertex", "--degree", "1", "--frame", "custom(s, 0, t2)"]).0, EXIT_USAGE);
    assert_eq!(ldt(&["--help"]).0, EXIT_OK);
    // a zero weight makes the relative empty vertex singular
    let (code, _, err) = ldt(&["vertex", "--degree", "1", "--frame", "custom(s, t1, -s - t1 + t1 + s)"]);
    assert_eq!(code, EXIT_USAGE, "{err}");
}

#[test]
fn check_failure_exit_code_is_distinct() {
    assert_ne!(EXIT_CHECK, EXIT_OK);
    assert_ne!(EXIT_CHECK, EXIT_USAGE);
}

#[test]
fn progress_goes_to_stderr_and_output_is_deterministic() {
    let args = ["dt", "--genus", "2", "--cap", "1,1", "--level", "0,-1", "--qmax", "4", "--format", "json"];
    let (c1, o1, e1) = ldt(&args);
    let (c2, o2, _) = ldt(&args);
    assert_eq!((c1, c2), (EXIT_OK, EXIT_OK));
    assert_eq!(o1, o2);
    assert!(e1.contains("computing"));
    assert!(!o1.contains("computing"));
}

#[test]
fn boxcount_counts() {
    let (code, out, _) = ldt(&["boxcount", "--qmax", "10", "--format", "json"]);
    assert_eq!(code, EXIT_OK);
    let v: Value = serde_json::from_str(&out).unwrap();
    let c: Vec<u64> = v["counts"].as_array().unwrap().iter().map(|x| x.as_u64().unwrap()).collect();
    assert_eq!(c, vec![1, 1, 3, 6, 13, 24, 48, 86, 160, 282, 500]);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_ldt");
    let ok = std::process::Command::new(bin).args(["dt", "--degree", "0", "--qmax", "0"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(EXIT_OK));
    assert_eq!(String::from_utf8_lossy(&ok.stdout).trim(), "q^0*(1); O(q^1)");
    let bad = std::process::Command::new(bin).args(["dt", "--bogus"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(EXIT_USAGE));
}

fn poly_strategy() -> impl Strategy<Value = MultiPoly> {
    proptest::collection::vec(((0u32..3, 0u32..3, 0u32..3), -20i64..20, 1i64..6), 0..5).prop_map(|terms| {
        MultiPoly::from_terms(
            terms
                .into_iter()
                .map(|((a, b, c), n, d)| (Mono([a, b, c]), Q::new(n.into(), d.into())))
                .collect(),
        )
    })
}

fn ratfunc_strategy() -> impl Strategy<Value = RatFunc> {
    (poly_strategy(), poly_strategy()).prop_map(|(n, d)| {
        let d = if d.is_zero() { MultiPoly::one() } else { d };
        RatFunc::new(n, d).unwrap()
    })
}

fn series_strategy() -> impl Strategy<Value = Series> {
    (-3i64..3, proptest::collection::vec(ratfunc_strategy(), 0..5), prop_oneof![Just(EXACT), 0i64..8])
        .prop_map(|(v, c, t)| Series::new(v, c, if t == EXACT { t } else { v + t }))
}

proptest! {
    #[test]
    fn json_round_trip(s in series_strategy()) {
        for names in [TQFT_NAMES, GENERAL_NAMES] {
            let j = series_json(&s, names);
            let text = serde_json::to_string(&j).unwrap();
            let back = series_from_json(&serde_json::from_str(&text).unwrap(), names).unwrap();
            prop_assert_eq!(&back, &s);
        }
    }

    #[test]
    fn text_coefficients_parse_back(r in ratfunc_strategy()) {
        prop_assert_eq!(parse_ratfunc(&ratfunc_text(&r, TQFT_NAMES)).unwrap(), r.clone());
        prop_assert_eq!(parse_ratfunc_with(&ratfunc_text(&r, GENERAL_NAMES), GENERAL_NAMES).unwrap(), r);
    }
}
