//! Built-in self-test: reference examples through the full request path, then
//! seeded randomized checks against the library.

use formleb::linalg::{hermitian_eig, max_abs};
use formleb::sampling;
use formleb::{
    construct_dominating, decompose, decompose_via_forms, lebesgue_decompose_measure, m_membership,
    ComplexMatrix, Tolerance,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{codes, CliError, Stage};
use crate::input::parse_input;
use crate::output::{decode_matrix, ResultOutput};
use crate::run_command;

pub const DEFAULT_SEED: u64 = 20_240_601;
const GOLDEN_EPS: f64 = 1e-9;
const PROPERTY_EPS: f64 = 1e-8;
const INSTANCES_PER_DIM: usize = 25;
const MEASURE_INSTANCES: usize = 100;

type Check = Result<(), String>;

struct Golden {
    name: &'static str,
    request: &'static str,
    expect: &'static [(&'static str, &'static [&'static [f64]])],
}

const GOLDEN: &[Golden] = &[
    Golden {
        name: "sigma split",
        request: r#"{"kind":"decompose-nonneg",
            "sigma":[[[1,0],[0,0],[0,0]],[[0,0],[1,0],[0,0]],[[0,0],[0,0],[0,0]]],
            "omega":[[[0,0],[0,0],[0,0]],[[0,0],[1,0],[0,0]],[[0,0],[0,0],[1,0]]]}"#,
        expect: &[
            (
                "sigma_a",
                &[&[0.0, 0.0, 0.0], &[0.0, 1.0, 0.0], &[0.0, 0.0, 0.0]],
            ),
            (
                "sigma_s",
                &[&[1.0, 0.0, 0.0], &[0.0, 0.0, 0.0], &[0.0, 0.0, 0.0]],
            ),
        ],
    },
    Golden {
        name: "u split",
        request: r#"{"kind":"decompose-nonneg",
            "sigma":[[[1.6666666666666667,0],[-1.3333333333333333,0],[0,0]],
                     [[-1.3333333333333333,0],[1.6666666666666667,0],[0,0]],
                     [[0,0],[0,0],[0,0]]],
            "omega":[[[0,0],[0,0],[0,0]],[[0,0],[1,0],[0,0]],[[0,0],[0,0],[1,0]]]}"#,
        expect: &[
            (
                "sigma_a",
                &[&[0.0, 0.0, 0.0], &[0.0, 0.6, 0.0], &[0.0, 0.0, 0.0]],
            ),
            (
                "sigma_s",
                &[
                    &[5.0 / 3.0, -4.0 / 3.0, 0.0],
                    &[-4.0 / 3.0, 16.0 / 15.0, 0.0],
                    &[0.0, 0.0, 0.0],
                ],
            ),
        ],
    },
    Golden {
        name: "triple for sigma",
        request: r#"{"kind":"decompose",
            "t":[[[-1,0],[0,0],[0,0]],[[0,0],[1,0],[0,0]],[[0,0],[0,0],[0,0]]],
            "sigma":[[[1,0],[0,0],[0,0]],[[0,0],[1,0],[0,0]],[[0,0],[0,0],[0,0]]],
            "omega":[[[0,0],[0,0],[0,0]],[[0,0],[1,0],[0,0]],[[0,0],[0,0],[1,0]]]}"#,
        expect: &[
            (
                "t_r",
                &[&[0.0, 0.0, 0.0], &[0.0, 1.0, 0.0], &[0.0, 0.0, 0.0]],
            ),
            (
                "t_m",
                &[&[0.0, 0.0, 0.0], &[0.0, 0.0, 0.0], &[0.0, 0.0, 0.0]],
            ),
            (
                "t_ss",
                &[&[-1.0, 0.0, 0.0], &[0.0, 0.0, 0.0], &[0.0, 0.0, 0.0]],
            ),
        ],
    },
    Golden {
        name: "triple for u",
        request: r#"{"kind":"decompose",
            "t":[[[-1,0],[0,0],[0,0]],[[0,0],[1,0],[0,0]],[[0,0],[0,0],[0,0]]],
            "sigma":[[[1.6666666666666667,0],[-1.3333333333333333,0],[0,0]],
                     [[-1.3333333333333333,0],[1.6666666666666667,0],[0,0]],
                     [[0,0],[0,0],[0,0]]],
            "omega":[[[0,0],[0,0],[0,0]],[[0,0],[1,0],[0,0]],[[0,0],[0,0],[1,0]]]}"#,
        expect: &[
            (
                "t_r",
                &[&[0.0, 0.0, 0.0], &[0.0, 0.36, 0.0], &[0.0, 0.0, 0.0]],
            ),
            (
                "t_m",
                &[&[0.0, -0.8, 0.0], &[-0.8, 1.28, 0.0], &[0.0, 0.0, 0.0]],
            ),
            (
                "t_ss",
                &[&[-1.0, 0.8, 0.0], &[0.8, -0.64, 0.0], &[0.0, 0.0, 0.0]],
            ),
        ],
    },
    Golden {
        name: "indefinite mixed part",
        request: r#"{"kind":"decompose",
            "t":[[[2,0],[1,0],[0,0]],[[1,0],[2,0],[0,0]],[[0,0],[0,0],[0,0]]],
            "sigma":[[[3,0],[0,0],[0,0]],[[0,0],[3,0],[0,0]],[[0,0],[0,0],[0,0]]],
            "omega":[[[0,0],[0,0],[0,0]],[[0,0],[1,0],[0,0]],[[0,0],[0,0],[1,0]]]}"#,
        expect: &[(
            "t_m",
            &[&[0.0, 1.0, 0.0], &[1.0, 0.0, 0.0], &[0.0, 0.0, 0.0]],
        )],
    },
    Golden {
        name: "nilpotent dominating form",
        request: r#"{"kind":"dominate","t":[[[0,0],[1,0]],[[0,0],[0,0]]]}"#,
        expect: &[("sigma", &[&[1.0, 0.0], &[0.0, 1.0]])],
    },
];

fn real_matrix(rows: &[&[f64]]) -> ComplexMatrix {
    ComplexMatrix::from_fn(rows.len(), rows.len(), |i, j| rows[i][j].into())
}

fn run_request(request: &str, tol: &Tolerance) -> Result<ResultOutput, String> {
    let input = parse_input(request.as_bytes()).map_err(|e| e.to_string())?;
    let out = run_command(&input, tol);
    match &out.error {
        Some(e) => Err(format!("{}: {}", e.code, e.message)),
        None => Ok(out),
    }
}

fn check_golden(g: &Golden, tol: &Tolerance) -> Check {
    let out = run_request(g.request, tol)?;
    for (name, rows) in g.expect {
        let got = out
            .matrices
            .get(*name)
            .and_then(decode_matrix)
            .ok_or_else(|| format!("missing matrix {name}"))?;
        let err = max_abs(&(got - real_matrix(rows)));
        if err > GOLDEN_EPS {
            return Err(format!("{name} off by {err:.3e}"));
        }
    }
    Ok(())
}

fn expect_flags(request: &str, tol: &Tolerance, flags: &[(&str, bool)]) -> Check {
    let out = run_request(request, tol)?;
    for (name, want) in flags {
        match out.flags.get(*name) {
            Some(got) if got == want => {}
            got => return Err(format!("flag {name}: expected {want}, got {got:?}")),
        }
    }
    Ok(())
}

fn extra_golden(tol: &Tolerance) -> Vec<(&'static str, Check)> {
    vec![
        (
            "classify real indefinite form",
            expect_flags(
                r#"{"kind":"classify","t":[[[-1,0],[0,0],[0,0]],[[0,0],[1,0],[0,0]],[[0,0],[0,0],[0,0]]]}"#,
                tol,
                &[
                    ("real", true),
                    ("nonnegative", false),
                    ("half_plane", false),
                    ("sector", false),
                ],
            ),
        ),
        (
            "mixed certificate on C^2",
            expect_flags(
                r#"{"kind":"check","check":"mixed",
                    "t":[[[1,0],[0,0]],[[0,0],[-1,0]]],
                    "omega":[[[1,0],[1,0]],[[1,0],[1,0]]],
                    "alpha":[[[1,0],[1,0]],[[1,0],[1,0]]],
                    "beta":[[[1,0],[-1,0]],[[-1,0],[1,0]]]}"#,
                tol,
                &[("result", true)],
            ),
        ),
        ("measure split", check_measure_example(tol)),
    ]
}

fn check_measure_example(tol: &Tolerance) -> Check {
    let out = run_request(
        r#"{"kind":"measure","atoms":["a","b","c"],"mu":[[3,1],[2,0],[0,0]],"nu":[[0,0],[1,0],[2,0]]}"#,
        tol,
    )?;
    let want_a = [[0.0, 0.0], [2.0, 0.0], [0.0, 0.0]];
    let want_s = [[3.0, 1.0], [0.0, 0.0], [0.0, 0.0]];
    for (name, want) in [("mu_a", want_a), ("mu_s", want_s)] {
        let got = out
            .measures
            .get(name)
            .ok_or_else(|| format!("missing measure {name}"))?;
        if got.as_slice() != want.as_slice() {
            return Err(format!("{name} = {got:?}, expected {want:?}"));
        }
    }
    let support = out.labels.get("support").cloned().unwrap_or_default();
    if support != ["b", "c"] {
        return Err(format!("support {support:?}, expected [b, c]"));
    }
    Ok(())
}

fn min_eigenvalue(m: &ComplexMatrix, tol: &Tolerance) -> Result<f64, String> {
    Ok(hermitian_eig(m, tol).map_err(|e| e.to_string())?.min())
}

fn property_checks(seed: u64, tol: &Tolerance) -> Vec<(String, Check)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut results = Vec::new();
    for n in 1..=4 {
        for i in 0..INSTANCES_PER_DIM {
            let omega = sampling::psd(n, &mut rng).form();
            let t = formleb::SesquilinearForm::new(sampling::matrix(n, &mut rng))
                .expect("random matrices are finite");
            let check = (|| -> Check {
                let sigma = construct_dominating(&t, tol);
                if !m_membership(&sigma, &t, tol).map_err(|e| e.to_string())? {
                    return Err("constructed sigma is not dominating".into());
                }
                let d = decompose(&t, &omega, &sigma, tol).map_err(|e| e.to_string())?;
                let residual = max_abs(&(d.sum().matrix() - t.matrix()));
                if residual > PROPERTY_EPS {
                    return Err(format!("t_r + t_m + t_ss misses t by {residual:.3e}"));
                }
                let w = &d.witnesses;
                let residual = max_abs(&(w.sigma_a.matrix() + w.sigma_s.matrix() - sigma.matrix()));
                if residual > PROPERTY_EPS {
                    return Err(format!("sigma_a + sigma_s misses sigma by {residual:.3e}"));
                }
                for (what, m) in [
                    ("sigma_a", w.sigma_a.matrix()),
                    ("sigma_s", w.sigma_s.matrix()),
                ] {
                    let l = min_eigenvalue(m, tol)?;
                    if l < -PROPERTY_EPS {
                        return Err(format!("{what} has eigenvalue {l:.3e}"));
                    }
                }
                Ok(())
            })();
            results.push((format!("random decomposition n={n} #{i}"), check));
        }
    }
    for i in 0..MEASURE_INSTANCES {
        let k = 1 + i % 6;
        let mu = sampling::complex_measure(k, 0.3, &mut rng);
        let nu = sampling::nonnegative_measure(k, 0.4, &mut rng);
        let check = (|| -> Check {
            let direct = lebesgue_decompose_measure(&mu, &nu).map_err(|e| e.to_string())?;
            let via = decompose_via_forms(&mu, &nu, tol).map_err(|e| e.to_string())?;
            for a in 0..k {
                let d = (direct.mu_a.values()[a] - via.mu_a.values()[a]).norm();
                if d > GOLDEN_EPS {
                    return Err(format!("atom {a}: routes differ by {d:.3e}"));
                }
            }
            Ok(())
        })();
        results.push((format!("random measure k={k} #{i}"), check));
    }
    results
}

/// Runs every check and summarizes; the document is an error if anything failed.
pub fn selftest(seed: u64, tol: &Tolerance) -> ResultOutput {
    let mut golden: Vec<(String, Check)> = GOLDEN
        .iter()
        .map(|g| (g.name.to_string(), check_golden(g, tol)))
        .collect();
    golden.extend(
        extra_golden(tol)
            .into_iter()
            .map(|(n, c)| (n.to_string(), c)),
    );
    let properties = property_checks(seed, tol);

    let failures: Vec<String> = golden
        .iter()
        .chain(properties.iter())
        .filter_map(|(name, c)| c.as_ref().err().map(|e| format!("{name}: {e}")))
        .collect();
    let passed = |list: &[(String, Check)]| list.iter().filter(|(_, c)| c.is_ok()).count();

    let mut out = if failures.is_empty() {
        ResultOutput::ok("selftest")
    } else {
        let err = CliError {
            code: codes::SELFTEST_FAILED.to_string(),
            message: format!("{} check(s) failed; first: {}", failures.len(), failures[0]),
            path: None,
            stage: Stage::Domain,
        };
        let mut out = ResultOutput::failure(Some("selftest"), &err);
        out.label_list("failures", failures);
        out
    };
    out.count("golden_passed", passed(&golden))
        .count("golden_total", golden.len())
        .count("property_passed", passed(&properties))
        .count("property_total", properties.len())
        .count("seed", seed as usize);
    out
}
