use formleb::linalg::{max_abs, operator_norm, PsdSpectrum};
use formleb::{
    ac_extremal_check, classify_range, construct_dominating, decompose, decompose_nonneg,
    decompose_via_forms, is_absolutely_continuous, is_ac_measure, is_mixed_certificate,
    is_omega_bounded, is_regular, is_singular_measure, is_singular_nonneg, is_strongly_singular,
    lebesgue_decompose_measure, m_membership, singularity_sufficient, total_variation,
    AtomicMeasureSpace, ComplexMatrix, ComplexMeasure, NonNegativeForm, SesquilinearForm,
    Tolerance,
};

use crate::error::CliError;
use crate::input::{CheckKind, Kind, ProblemInput};
use crate::output::ResultOutput;

/// Dispatches a parsed request. Domain failures become an error document.
pub fn run_command(input: &ProblemInput, tol: &Tolerance) -> ResultOutput {
    let kind = input.kind.name();
    match dispatch(input, tol) {
        Ok(mut out) => {
            out.kind = Some(kind.to_string());
            out
        }
        Err(e) => {
            let mut out = ResultOutput::failure(Some(kind), &e);
            out.check = input.check.map(|c| c.name().to_string());
            out
        }
    }
}

fn dispatch(input: &ProblemInput, tol: &Tolerance) -> Result<ResultOutput, CliError> {
    tol.validate()?;
    match input.kind {
        Kind::Decompose => run_decompose(input, tol),
        Kind::DecomposeNonneg => run_decompose_nonneg(input, tol),
        Kind::Classify => run_classify(input, tol),
        Kind::Check => run_check(input, tol),
        Kind::Dominate => run_dominate(input, tol),
        Kind::Measure => run_measure(input, tol),
    }
}

fn required<'a>(input: &'a ProblemInput, name: &str) -> Result<&'a ComplexMatrix, CliError> {
    input
        .matrix(name)
        .ok_or_else(|| CliError::schema(name, "missing required field"))
}

fn form(input: &ProblemInput, name: &str) -> Result<SesquilinearForm, CliError> {
    Ok(SesquilinearForm::new(required(input, name)?.clone())?)
}

fn nonneg(input: &ProblemInput, name: &str, tol: &Tolerance) -> Result<NonNegativeForm, CliError> {
    Ok(NonNegativeForm::named(
        required(input, name)?.clone(),
        tol,
        name,
    )?)
}

fn rank(m: &ComplexMatrix, tol: &Tolerance, what: &str) -> Result<usize, CliError> {
    Ok(PsdSpectrum::new(m, tol, what)?.rank())
}

fn run_decompose(input: &ProblemInput, tol: &Tolerance) -> Result<ResultOutput, CliError> {
    let t = form(input, "t")?;
    let omega = nonneg(input, "omega", tol)?;
    let (sigma, constructed) = match input.sigma {
        Some(_) => (nonneg(input, "sigma", tol)?, false),
        None => (construct_dominating(&t, tol), true),
    };
    let d = decompose(&t, &omega, &sigma, tol)?;

    let mut out = ResultOutput::default();
    out.matrix("t_r", d.t_r.matrix())
        .matrix("t_m", d.t_m.matrix())
        .matrix("t_ss", d.t_ss.matrix())
        .matrix("t_m_forward", d.t_m_forward.matrix())
        .matrix("t_m_backward", d.t_m_backward.matrix())
        .matrix("sigma", sigma.matrix())
        .matrix("sigma_a", d.witnesses.sigma_a.matrix())
        .matrix("sigma_s", d.witnesses.sigma_s.matrix())
        .flag("sigma_constructed", constructed)
        .diagnostic("residual", max_abs(&(d.sum().matrix() - t.matrix())))
        .diagnostic(
            "sigma_residual",
            max_abs(
                &(d.witnesses.sigma_a.matrix() + d.witnesses.sigma_s.matrix() - sigma.matrix()),
            ),
        )
        .diagnostic("norm_t_r", operator_norm(d.t_r.matrix()))
        .diagnostic("norm_t_m", operator_norm(d.t_m.matrix()))
        .diagnostic("norm_t_ss", operator_norm(d.t_ss.matrix()))
        .count("rank_sigma", rank(sigma.matrix(), tol, "sigma")?)
        .count("rank_omega", rank(omega.matrix(), tol, "omega")?)
        .count(
            "rank_sigma_a",
            rank(d.witnesses.sigma_a.matrix(), tol, "sigma_a")?,
        )
        .count(
            "rank_sigma_s",
            rank(d.witnesses.sigma_s.matrix(), tol, "sigma_s")?,
        );
    Ok(out)
}

fn run_decompose_nonneg(input: &ProblemInput, tol: &Tolerance) -> Result<ResultOutput, CliError> {
    let sigma = nonneg(input, "sigma", tol)?;
    let omega = nonneg(input, "omega", tol)?;
    let split = decompose_nonneg(&sigma, &omega, tol)?;
    let mut out = ResultOutput::default();
    out.matrix("sigma_a", split.sigma_a.matrix())
        .matrix("sigma_s", split.sigma_s.matrix())
        .flag(
            "absolutely_continuous",
            is_absolutely_continuous(&sigma, &omega, tol)?,
        )
        .flag("singular", is_singular_nonneg(&sigma, &omega, tol)?)
        .diagnostic(
            "residual",
            max_abs(&(split.sigma_a.matrix() + split.sigma_s.matrix() - sigma.matrix())),
        )
        .count(
            "rank_sigma_a",
            rank(split.sigma_a.matrix(), tol, "sigma_a")?,
        )
        .count(
            "rank_sigma_s",
            rank(split.sigma_s.matrix(), tol, "sigma_s")?,
        );
    Ok(out)
}

fn run_classify(input: &ProblemInput, tol: &Tolerance) -> Result<ResultOutput, CliError> {
    let t = form(input, "t")?;
    let class = classify_range(&t, tol);
    let mut out = ResultOutput::default();
    out.flag("nonnegative", class.nonnegative)
        .flag("real", class.real)
        .flag("quadrant", class.quadrant)
        .flag("half_plane", class.half_plane)
        .flag("sector", class.sector.is_some());
    if let Some(c) = class.sector {
        out.diagnostic("sector_c", c);
    }
    Ok(out)
}

fn run_dominate(input: &ProblemInput, tol: &Tolerance) -> Result<ResultOutput, CliError> {
    let t = form(input, "t")?;
    let sigma = construct_dominating(&t, tol);
    let mut out = ResultOutput::default();
    out.matrix("sigma", sigma.matrix())
        .flag("member", m_membership(&sigma, &t, tol)?)
        .diagnostic("norm_sigma", operator_norm(sigma.matrix()))
        .count("rank_sigma", rank(sigma.matrix(), tol, "sigma")?);
    Ok(out)
}

fn run_check(input: &ProblemInput, tol: &Tolerance) -> Result<ResultOutput, CliError> {
    let check = input
        .check
        .ok_or_else(|| CliError::schema("check", "missing required field"))?;
    let mut out = ResultOutput {
        check: Some(check.name().to_string()),
        ..Default::default()
    };
    let result = match check {
        CheckKind::Membership => {
            m_membership(&nonneg(input, "sigma", tol)?, &form(input, "t")?, tol)?
        }
        CheckKind::Regular => is_regular(&form(input, "t")?, &nonneg(input, "omega", tol)?, tol)?,
        CheckKind::StronglySingular => is_strongly_singular(
            &form(input, "t")?,
            &nonneg(input, "omega", tol)?,
            &nonneg(input, "sigma", tol)?,
            tol,
        )?,
        CheckKind::Mixed => is_mixed_certificate(
            &form(input, "t")?,
            &nonneg(input, "omega", tol)?,
            &nonneg(input, "alpha", tol)?,
            &nonneg(input, "beta", tol)?,
            tol,
        )?,
        CheckKind::Ac => is_absolutely_continuous(
            &nonneg(input, "sigma", tol)?,
            &nonneg(input, "omega", tol)?,
            tol,
        )?,
        CheckKind::SingularNonneg => is_singular_nonneg(
            &nonneg(input, "sigma", tol)?,
            &nonneg(input, "omega", tol)?,
            tol,
        )?,
        CheckKind::SingularSufficient => {
            singularity_sufficient(&form(input, "t")?, &nonneg(input, "omega", tol)?, tol)?
        }
        CheckKind::OmegaBounded => {
            let bound = is_omega_bounded(&form(input, "t")?, &nonneg(input, "omega", tol)?, tol)?;
            if let Some(c) = bound {
                out.diagnostic("bound_constant", c);
            }
            bound.is_some()
        }
        CheckKind::AcExtremal => ac_extremal_check(
            &nonneg(input, "sigma", tol)?,
            &nonneg(input, "omega", tol)?,
            &nonneg(input, "u", tol)?,
            tol,
        )?,
    };
    out.flag("result", result);
    Ok(out)
}

fn run_measure(input: &ProblemInput, tol: &Tolerance) -> Result<ResultOutput, CliError> {
    let missing = |name: &str| CliError::schema(name, "missing required field");
    let mu_values = input.mu.clone().ok_or_else(|| missing("mu"))?;
    let nu_values = input.nu.clone().ok_or_else(|| missing("nu"))?;
    let space = match &input.atoms {
        Some(labels) => AtomicMeasureSpace::new(labels.iter().cloned())?,
        None => AtomicMeasureSpace::with_len(mu_values.len())?,
    };
    let mu = ComplexMeasure::new(space.clone(), mu_values)?;
    let nu = ComplexMeasure::new(space.clone(), nu_values)?;

    let split = lebesgue_decompose_measure(&mu, &nu)?;
    let via_forms = decompose_via_forms(&mu, &nu, tol)?;
    let deviation = (0..space.len())
        .map(|a| {
            (split.mu_a.values()[a] - via_forms.mu_a.values()[a])
                .norm()
                .max((split.mu_s.values()[a] - via_forms.mu_s.values()[a]).norm())
        })
        .fold(0.0, f64::max);

    let mut out = ResultOutput::default();
    out.measure("mu_a", &split.mu_a)
        .measure("mu_s", &split.mu_s)
        .measure("total_variation", &total_variation(&mu))
        .label_list("atoms", space.atoms().to_vec())
        .label_list(
            "support",
            split
                .support_labels()
                .into_iter()
                .map(str::to_string)
                .collect(),
        )
        .flag("absolutely_continuous", is_ac_measure(&mu, &nu)?)
        .flag("singular", is_singular_measure(&mu, &nu)?)
        .diagnostic("route_deviation", deviation);
    Ok(out)
}
