use formleb::Tolerance;
use formleb_cli::output::decode_matrix;
use formleb_cli::{parse_input, run_command, CheckKind, Kind, ResultOutput, Status};

const OMEGA: &str = r#"[[[0,0],[0,0],[0,0]],[[0,0],[1,0],[0,0]],[[0,0],[0,0],[1,0]]]"#;
const SIGMA: &str = r#"[[[1,0],[0,0],[0,0]],[[0,0],[1,0],[0,0]],[[0,0],[0,0],[0,0]]]"#;
const T: &str = r#"[[[-1,0],[0,0],[0,0]],[[0,0],[1,0],[0,0]],[[0,0],[0,0],[0,0]]]"#;

fn decompose_request() -> String {
    format!(r#"{{"kind":"decompose","t":{T},"sigma":{SIGMA},"omega":{OMEGA}}}"#)
}

fn run(request: &str) -> ResultOutput {
    let input = parse_input(request.as_bytes()).expect("request parses");
    run_command(&input, &Tolerance::default())
}

fn error_code(out: &ResultOutput) -> &str {
    &out.error.as_ref().expect("error document").code
}

fn assert_matrix(out: &ResultOutput, name: &str, want: &[&[f64]]) {
    let got = decode_matrix(&out.matrices[name]).unwrap();
    for (i, row) in want.iter().enumerate() {
        for (j, &x) in row.iter().enumerate() {
            let z = got[(i, j)];
            assert!(
                (z.re - x).abs() <= 1e-9 && z.im.abs() <= 1e-9,
                "{name}[{i}][{j}] = {z}, expected {x}"
            );
        }
    }
}

#[test]
fn decompose_payload_parses() {
    let input = parse_input(decompose_request().as_bytes()).unwrap();
    assert_eq!(input.kind, Kind::Decompose);
    assert_eq!(input.t.as_ref().unwrap().nrows(), 3);
    assert_eq!(input.t.as_ref().unwrap()[(0, 0)].re, -1.0);
    assert!(input.sigma.is_some() && input.omega.is_some());
}

#[test]
fn zero_form_classify_parses() {
    let input = parse_input(br#"{"kind":"classify","dim":1,"t":[[[0,0]]]}"#).unwrap();
    assert_eq!(input.kind, Kind::Classify);
    assert_eq!(input.dim, Some(1));
    assert_eq!(input.t.unwrap()[(0, 0)].norm(), 0.0);
}

#[test]
fn non_square_matrix_is_a_schema_error_naming_the_field() {
    let err = parse_input(br#"{"kind":"classify","t":[[[1,0],[0,0],[0,0]],[[0,0],[1,0],[0,0]]]}"#)
        .unwrap_err();
    assert_eq!(err.code, "SCHEMA_VIOLATION");
    assert_eq!(err.path.as_deref(), Some("t"));
}

#[test]
fn parse_errors_have_distinct_codes_and_paths() {
    let cases: &[(&[u8], &str, &str)] = &[
        (b"{\"kind\":", "MALFORMED_JSON", "$"),
        (b"[1,2]", "SCHEMA_VIOLATION", "$"),
        (
            br#"{"kind":"nope","t":[[[0,0]]]}"#,
            "SCHEMA_VIOLATION",
            "kind",
        ),
        (
            br#"{"kind":"classify","t":[[[0,0]]],"extra":1}"#,
            "SCHEMA_VIOLATION",
            "extra",
        ),
        (br#"{"kind":"classify"}"#, "SCHEMA_VIOLATION", "t"),
        (
            br#"{"kind":"classify","t":[[[0,0],[1,0]],[[0],[1,0]]]}"#,
            "SCHEMA_VIOLATION",
            "t[1][0]",
        ),
        (
            br#"{"kind":"classify","t":[[[0,0],[1,0]],[[1,0]]]}"#,
            "SCHEMA_VIOLATION",
            "t",
        ),
        (
            br#"{"kind":"classify","t":[[["a",0]]]}"#,
            "SCHEMA_VIOLATION",
            "t[0][0]",
        ),
        (
            br#"{"kind":"classify","dim":2,"t":[[[0,0]]]}"#,
            "DIM_MISMATCH",
            "t",
        ),
        (
            br#"{"kind":"decompose","t":[[[0,0]]],"omega":[[[1,0],[0,0]],[[0,0],[1,0]]]}"#,
            "DIM_MISMATCH",
            "omega",
        ),
        (
            br#"{"kind":"measure","mu":[[1,0]],"nu":[[1,0],[0,0]]}"#,
            "DIM_MISMATCH",
            "nu",
        ),
        (
            br#"{"kind":"measure","atoms":3,"mu":[[1,0]],"nu":[[1,0]]}"#,
            "DIM_MISMATCH",
            "mu",
        ),
        (
            br#"{"kind":"measure","atoms":["a","a"],"mu":[[1,0],[1,0]],"nu":[[1,0],[1,0]]}"#,
            "SCHEMA_VIOLATION",
            "atoms[1]",
        ),
        (
            br#"{"kind":"check","t":[[[0,0]]]}"#,
            "SCHEMA_VIOLATION",
            "check",
        ),
        (
            br#"{"kind":"check","check":"mixed","t":[[[0,0]]],"omega":[[[0,0]]]}"#,
            "SCHEMA_VIOLATION",
            "alpha",
        ),
        (
            br#"{"kind":"classify","t":[[[0,0]]],"tol":{"rank_rel":"x"}}"#,
            "SCHEMA_VIOLATION",
            "tol.rank_rel",
        ),
        (
            br#"{"kind":"classify","t":[[[0,0]]],"tol":{"other":1}}"#,
            "SCHEMA_VIOLATION",
            "tol.other",
        ),
    ];
    for (bytes, code, path) in cases {
        let err = parse_input(bytes).unwrap_err();
        assert_eq!(err.code, *code, "{}", String::from_utf8_lossy(bytes));
        assert_eq!(
            err.path.as_deref(),
            Some(*path),
            "{}",
            String::from_utf8_lossy(bytes)
        );
    }
}

#[test]
fn atoms_accept_count_or_labels() {
    let input =
        parse_input(br#"{"kind":"measure","atoms":2,"mu":[[1,0],[0,0]],"nu":[[1,0],[0,0]]}"#)
            .unwrap();
    assert_eq!(input.atoms.unwrap(), ["a0", "a1"]);
    let input = parse_input(
        br#"{"kind":"measure","atoms":["x","y"],"mu":[[1,0],[0,0]],"nu":[[1,0],[0,0]]}"#,
    )
    .unwrap();
    assert_eq!(input.atoms.unwrap(), ["x", "y"]);
}

#[test]
fn tolerance_overrides_parse() {
    let input =
        parse_input(br#"{"kind":"classify","t":[[[0,0]]],"tol":{"psd_abs":1e-6}}"#).unwrap();
    let tol = input.tol.apply(Tolerance::default());
    assert_eq!(tol.psd_abs, 1e-6);
    assert_eq!(tol.rank_rel, Tolerance::default().rank_rel);
}

#[test]
fn decompose_golden_triple() {
    let out = run(&decompose_request());
    assert_eq!(out.status, Status::Ok);
    assert_eq!(out.kind.as_deref(), Some("decompose"));
    assert_matrix(
        &out,
        "t_r",
        &[&[0.0, 0.0, 0.0], &[0.0, 1.0, 0.0], &[0.0, 0.0, 0.0]],
    );
    assert_matrix(&out, "t_m", &[&[0.0; 3], &[0.0; 3], &[0.0; 3]]);
    assert_matrix(&out, "t_ss", &[&[-1.0, 0.0, 0.0], &[0.0; 3], &[0.0; 3]]);
    assert!(!out.flags["sigma_constructed"]);
    assert!(out.diagnostics["residual"] <= 1e-12);
    assert_eq!(out.counts["rank_sigma_a"], 1);
}

#[test]
fn decompose_without_sigma_constructs_one() {
    let out = run(&format!(
        r#"{{"kind":"decompose","t":{T},"omega":{OMEGA}}}"#
    ));
    assert_eq!(out.status, Status::Ok);
    assert!(out.flags["sigma_constructed"]);
    // |diag(-1,1,0)| = diag(1,1,0), the dominating form used in the golden case.
    assert_matrix(
        &out,
        "sigma",
        &[&[1.0, 0.0, 0.0], &[0.0, 1.0, 0.0], &[0.0; 3]],
    );
    assert_matrix(&out, "t_r", &[&[0.0; 3], &[0.0, 1.0, 0.0], &[0.0; 3]]);
}

#[test]
fn decompose_nonneg_golden_split() {
    let out = run(&format!(
        r#"{{"kind":"decompose-nonneg","sigma":{SIGMA},"omega":{OMEGA}}}"#
    ));
    assert_matrix(&out, "sigma_a", &[&[0.0; 3], &[0.0, 1.0, 0.0], &[0.0; 3]]);
    assert_matrix(&out, "sigma_s", &[&[1.0, 0.0, 0.0], &[0.0; 3], &[0.0; 3]]);
    assert!(!out.flags["absolutely_continuous"]);
    assert!(!out.flags["singular"]);
}

#[test]
fn measure_example() {
    let out = run(
        r#"{"kind":"measure","atoms":["a","b","c"],"mu":[[3,1],[2,0],[0,0]],"nu":[[0,0],[1,0],[2,0]]}"#,
    );
    assert_eq!(out.status, Status::Ok);
    assert_eq!(
        out.measures["mu_a"],
        vec![[0.0, 0.0], [2.0, 0.0], [0.0, 0.0]]
    );
    assert_eq!(
        out.measures["mu_s"],
        vec![[3.0, 1.0], [0.0, 0.0], [0.0, 0.0]]
    );
    assert_eq!(out.labels["support"], ["b", "c"]);
    assert!(!out.flags["absolutely_continuous"]);
    assert!(!out.flags["singular"]);
    let tv = &out.measures["total_variation"];
    assert!((tv[0][0] - 10f64.sqrt()).abs() <= 1e-15);
}

#[test]
fn classify_flags() {
    let out = run(&format!(r#"{{"kind":"classify","t":{T}}}"#));
    assert!(out.flags["real"]);
    assert!(!out.flags["nonnegative"]);
    assert!(!out.flags["half_plane"]);
    assert!(!out.diagnostics.contains_key("sector_c"));

    let out = run(r#"{"kind":"classify","t":[[[1,0],[0,0]],[[0,0],[1,1]]]}"#);
    assert!(out.flags["quadrant"]);
    let c = out.diagnostics["sector_c"];
    assert!((1.0..=1.0 + 2e-8).contains(&c), "sector constant {c}");
}

#[test]
fn dominate_nilpotent() {
    let out = run(r#"{"kind":"dominate","t":[[[0,0],[1,0]],[[0,0],[0,0]]]}"#);
    assert_matrix(&out, "sigma", &[&[1.0, 0.0], &[0.0, 1.0]]);
    assert!(out.flags["member"]);
}

#[test]
fn every_check_kind_runs() {
    let c2_t = r#"[[[1,0],[0,0]],[[0,0],[-1,0]]]"#;
    let ones = r#"[[[1,0],[1,0]],[[1,0],[1,0]]]"#;
    let beta = r#"[[[1,0],[-1,0]],[[-1,0],[1,0]]]"#;
    let cases: Vec<(CheckKind, String, bool)> = vec![
        (
            CheckKind::Membership,
            format!(r#""sigma":{SIGMA},"t":{T}"#),
            true,
        ),
        (
            CheckKind::Regular,
            format!(r#""t":{T},"omega":{OMEGA}"#),
            false,
        ),
        (
            CheckKind::StronglySingular,
            format!(r#""t":{T},"omega":{OMEGA},"sigma":{SIGMA}"#),
            false,
        ),
        (
            CheckKind::Mixed,
            format!(r#""t":{c2_t},"omega":{ones},"alpha":{ones},"beta":{beta}"#),
            true,
        ),
        (
            CheckKind::Ac,
            format!(r#""sigma":{SIGMA},"omega":{OMEGA}"#),
            false,
        ),
        (
            CheckKind::SingularNonneg,
            format!(r#""sigma":{SIGMA},"omega":{OMEGA}"#),
            false,
        ),
        (
            CheckKind::SingularSufficient,
            format!(r#""t":{T},"omega":{OMEGA}"#),
            false,
        ),
        (
            CheckKind::OmegaBounded,
            r#""t":[[[0,0],[0,0]],[[0,0],[2,0]]],"omega":[[[0,0],[0,0]],[[0,0],[1,0]]]"#
                .to_string(),
            true,
        ),
        (
            CheckKind::AcExtremal,
            format!(
                r#""sigma":{SIGMA},"omega":{OMEGA},"u":[[[0,0],[0,0],[0,0]],[[0,0],[0.5,0],[0,0]],[[0,0],[0,0],[0,0]]]"#
            ),
            true,
        ),
    ];
    for (check, body, expected) in cases {
        let out = run(&format!(
            r#"{{"kind":"check","check":"{}",{body}}}"#,
            check.name()
        ));
        assert_eq!(out.status, Status::Ok, "{check:?}: {:?}", out.error);
        assert_eq!(out.check.as_deref(), Some(check.name()));
        assert_eq!(out.flags["result"], expected, "{check:?}");
    }
    let out = run(
        r#"{"kind":"check","check":"omega-bounded","t":[[[0,0],[0,0]],[[0,0],[2,0]]],"omega":[[[0,0],[0,0]],[[0,0],[1,0]]]}"#,
    );
    assert!((out.diagnostics["bound_constant"] - 2.0).abs() <= 1e-12);
}

#[test]
fn domain_errors_carry_library_codes() {
    let not_psd = run(&format!(
        r#"{{"kind":"decompose-nonneg","sigma":{T},"omega":{OMEGA}}}"#
    ));
    assert_eq!(not_psd.status, Status::Error);
    assert_eq!(error_code(&not_psd), "NOT_PSD");

    let not_dominating = run(&format!(
        r#"{{"kind":"decompose","t":[[[2,0],[0,0],[0,0]],[[0,0],[0,0],[0,0]],[[0,0],[0,0],[0,0]]],"sigma":{SIGMA},"omega":{OMEGA}}}"#
    ));
    assert_eq!(error_code(&not_dominating), "NOT_DOMINATING");

    let precondition = run(&format!(
        r#"{{"kind":"check","check":"ac-extremal","sigma":{SIGMA},"omega":{OMEGA},"u":[[[1,0],[0,0],[0,0]],[[0,0],[0,0],[0,0]],[[0,0],[0,0],[0,0]]]}}"#
    ));
    assert_eq!(error_code(&precondition), "PRECONDITION");

    let bad_measure = run(r#"{"kind":"measure","mu":[[1,0]],"nu":[[-1,0]]}"#);
    assert_eq!(error_code(&bad_measure), "NEGATIVE_REFERENCE");

    let input = parse_input(br#"{"kind":"classify","t":[[[0,0]]]}"#).unwrap();
    let bad_tol = Tolerance {
        rank_rel: 2.0,
        ..Tolerance::default()
    };
    assert_eq!(
        error_code(&run_command(&input, &bad_tol)),
        "INVALID_TOLERANCE"
    );
}

#[test]
fn selftest_passes_with_counts() {
    let out =
        formleb_cli::selftest::selftest(formleb_cli::selftest::DEFAULT_SEED, &Tolerance::default());
    assert_eq!(out.status, Status::Ok, "{:?}", out.labels.get("failures"));
    assert_eq!(out.counts["golden_passed"], out.counts["golden_total"]);
    assert_eq!(out.counts["property_passed"], out.counts["property_total"]);
    assert!(out.counts["golden_total"] >= 6);
    assert!(out.counts["property_total"] >= 100);
}
