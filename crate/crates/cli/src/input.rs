//! Request documents.
//!
//! Complex numbers are `[re, im]` pairs; matrices are arrays of rows. Every
//! rejection carries the JSON path of the offending value, e.g. `t[1][0]`.

use formleb::{Complex64, ComplexMatrix, Tolerance};
use serde_json::{Map, Value};

use crate::error::{codes, CliError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Kind {
    Decompose,
    DecomposeNonneg,
    Classify,
    Check,
    Dominate,
    Measure,
}

impl Kind {
    pub const ALL: [Kind; 6] = [
        Kind::Decompose,
        Kind::DecomposeNonneg,
        Kind::Classify,
        Kind::Check,
        Kind::Dominate,
        Kind::Measure,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Kind::Decompose => "decompose",
            Kind::DecomposeNonneg => "decompose-nonneg",
            Kind::Classify => "classify",
            Kind::Check => "check",
            Kind::Dominate => "dominate",
            Kind::Measure => "measure",
        }
    }

    pub fn parse(s: &str) -> Option<Kind> {
        Kind::ALL.into_iter().find(|k| k.name() == s)
    }

    fn required(self) -> &'static [&'static str] {
        match self {
            Kind::Decompose => &["t", "omega"],
            Kind::DecomposeNonneg => &["sigma", "omega"],
            Kind::Classify | Kind::Dominate => &["t"],
            Kind::Check => &["check"],
            Kind::Measure => &["mu", "nu"],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum CheckKind {
    Membership,
    Regular,
    StronglySingular,
    Mixed,
    Ac,
    SingularNonneg,
    SingularSufficient,
    OmegaBounded,
    AcExtremal,
}

impl CheckKind {
    pub const ALL: [CheckKind; 9] = [
        CheckKind::Membership,
        CheckKind::Regular,
        CheckKind::StronglySingular,
        CheckKind::Mixed,
        CheckKind::Ac,
        CheckKind::SingularNonneg,
        CheckKind::SingularSufficient,
        CheckKind::OmegaBounded,
        CheckKind::AcExtremal,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CheckKind::Membership => "membership",
            CheckKind::Regular => "regular",
            CheckKind::StronglySingular => "strongly-singular",
            CheckKind::Mixed => "mixed",
            CheckKind::Ac => "ac",
            CheckKind::SingularNonneg => "singular-nonneg",
            CheckKind::SingularSufficient => "singular-sufficient",
            CheckKind::OmegaBounded => "omega-bounded",
            CheckKind::AcExtremal => "ac-extremal",
        }
    }

    pub fn parse(s: &str) -> Option<CheckKind> {
        CheckKind::ALL.into_iter().find(|k| k.name() == s)
    }

    pub fn required(self) -> &'static [&'static str] {
        match self {
            CheckKind::Membership => &["sigma", "t"],
            CheckKind::Regular | CheckKind::SingularSufficient | CheckKind::OmegaBounded => {
                &["t", "omega"]
            }
            CheckKind::StronglySingular => &["t", "omega", "sigma"],
            CheckKind::Mixed => &["t", "omega", "alpha", "beta"],
            CheckKind::Ac | CheckKind::SingularNonneg => &["sigma", "omega"],
            CheckKind::AcExtremal => &["sigma", "omega", "u"],
        }
    }
}

/// Per-request tolerance overrides; absent fields keep the caller's value.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct TolOverrides {
    pub rank_rel: Option<f64>,
    pub psd_abs: Option<f64>,
    pub cmp_abs: Option<f64>,
}

impl TolOverrides {
    pub fn apply(&self, base: Tolerance) -> Tolerance {
        Tolerance {
            rank_rel: self.rank_rel.unwrap_or(base.rank_rel),
            psd_abs: self.psd_abs.unwrap_or(base.psd_abs),
            cmp_abs: self.cmp_abs.unwrap_or(base.cmp_abs),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProblemInput {
    pub kind: Kind,
    pub check: Option<CheckKind>,
    pub dim: Option<usize>,
    pub atoms: Option<Vec<String>>,
    pub t: Option<ComplexMatrix>,
    pub omega: Option<ComplexMatrix>,
    pub sigma: Option<ComplexMatrix>,
    pub alpha: Option<ComplexMatrix>,
    pub beta: Option<ComplexMatrix>,
    pub u: Option<ComplexMatrix>,
    pub mu: Option<Vec<Complex64>>,
    pub nu: Option<Vec<Complex64>>,
    pub tol: TolOverrides,
}

const MATRIX_FIELDS: [&str; 6] = ["t", "omega", "sigma", "alpha", "beta", "u"];
const KNOWN_FIELDS: [&str; 13] = [
    "kind", "check", "dim", "atoms", "t", "omega", "sigma", "alpha", "beta", "u", "mu", "nu", "tol",
];

impl ProblemInput {
    pub fn matrix(&self, name: &str) -> Option<&ComplexMatrix> {
        match name {
            "t" => self.t.as_ref(),
            "omega" => self.omega.as_ref(),
            "sigma" => self.sigma.as_ref(),
            "alpha" => self.alpha.as_ref(),
            "beta" => self.beta.as_ref(),
            "u" => self.u.as_ref(),
            _ => None,
        }
    }

    fn slot(&mut self, name: &str) -> &mut Option<ComplexMatrix> {
        match name {
            "t" => &mut self.t,
            "omega" => &mut self.omega,
            "sigma" => &mut self.sigma,
            "alpha" => &mut self.alpha,
            "beta" => &mut self.beta,
            "u" => &mut self.u,
            _ => unreachable!("not a matrix field: {name}"),
        }
    }

    fn has(&self, name: &str) -> bool {
        match name {
            "check" => self.check.is_some(),
            "mu" => self.mu.is_some(),
            "nu" => self.nu.is_some(),
            _ => self.matrix(name).is_some(),
        }
    }
}

/// Parses a request whose `kind` field is mandatory.
pub fn parse_input(bytes: &[u8]) -> Result<ProblemInput, CliError> {
    parse_input_with_default(bytes, None)
}

/// Parses a request; a missing `kind` falls back to `default_kind`.
pub fn parse_input_with_default(
    bytes: &[u8],
    default_kind: Option<Kind>,
) -> Result<ProblemInput, CliError> {
    let value: Value = serde_json::from_slice(bytes)
        .map_err(|e| CliError::at(codes::MALFORMED_JSON, "$", format!("invalid JSON: {e}")))?;
    let Value::Object(obj) = value else {
        return Err(CliError::schema("$", "request must be a JSON object"));
    };
    if let Some(key) = obj.keys().find(|k| !KNOWN_FIELDS.contains(&k.as_str())) {
        return Err(CliError::schema(key.clone(), "unknown field"));
    }

    let kind = match obj.get("kind") {
        Some(v) => {
            let s = v
                .as_str()
                .ok_or_else(|| CliError::schema("kind", "expected a string"))?;
            Kind::parse(s).ok_or_else(|| CliError::schema("kind", format!("unknown kind {s:?}")))?
        }
        None => default_kind.ok_or_else(|| CliError::schema("kind", "missing required field"))?,
    };
    let check = match obj.get("check") {
        Some(v) => {
            let s = v
                .as_str()
                .ok_or_else(|| CliError::schema("check", "expected a string"))?;
            Some(
                CheckKind::parse(s)
                    .ok_or_else(|| CliError::schema("check", format!("unknown check {s:?}")))?,
            )
        }
        None => None,
    };

    let mut input = ProblemInput {
        kind,
        check,
        dim: obj.get("dim").map(|v| parse_count(v, "dim")).transpose()?,
        atoms: obj.get("atoms").map(parse_atoms).transpose()?,
        t: None,
        omega: None,
        sigma: None,
        alpha: None,
        beta: None,
        u: None,
        mu: obj.get("mu").map(|v| parse_vector(v, "mu")).transpose()?,
        nu: obj.get("nu").map(|v| parse_vector(v, "nu")).transpose()?,
        tol: obj
            .get("tol")
            .map(parse_tol)
            .transpose()?
            .unwrap_or_default(),
    };
    for name in MATRIX_FIELDS {
        if let Some(v) = obj.get(name) {
            *input.slot(name) = Some(parse_matrix(v, name)?);
        }
    }
    check_required(&input)?;
    check_dimensions(&input)?;
    Ok(input)
}

fn check_required(input: &ProblemInput) -> Result<(), CliError> {
    let mut required: Vec<&str> = input.kind.required().to_vec();
    if let Some(check) = input.check.filter(|_| input.kind == Kind::Check) {
        required.extend_from_slice(check.required());
    }
    match required.into_iter().find(|name| !input.has(name)) {
        Some(name) => Err(CliError::schema(
            name,
            format!("missing required field for kind {:?}", input.kind.name()),
        )),
        None => Ok(()),
    }
}

fn check_dimensions(input: &ProblemInput) -> Result<(), CliError> {
    let mut expected = input.dim.map(|d| (d, "dim"));
    for name in MATRIX_FIELDS {
        if let Some(m) = input.matrix(name) {
            match expected {
                Some((d, from)) if d != m.nrows() => {
                    return Err(CliError::at(
                        codes::DIM_MISMATCH,
                        name,
                        format!(
                            "{name} is {n}x{n} but {from} fixes dimension {d}",
                            n = m.nrows()
                        ),
                    ));
                }
                None => expected = Some((m.nrows(), name)),
                _ => {}
            }
        }
    }

    let mut atoms = input.atoms.as_ref().map(|a| (a.len(), "atoms"));
    for (name, v) in [("mu", &input.mu), ("nu", &input.nu)] {
        if let Some(v) = v {
            match atoms {
                Some((k, from)) if k != v.len() => {
                    return Err(CliError::at(
                        codes::DIM_MISMATCH,
                        name,
                        format!("{name} has {} atoms but {from} has {k}", v.len()),
                    ));
                }
                None => atoms = Some((v.len(), name)),
                _ => {}
            }
        }
    }
    Ok(())
}

fn parse_count(v: &Value, path: &str) -> Result<usize, CliError> {
    v.as_u64()
        .filter(|&n| n > 0)
        .and_then(|n| usize::try_from(n).ok())
        .ok_or_else(|| CliError::schema(path, "expected a positive integer"))
}

fn parse_atoms(v: &Value) -> Result<Vec<String>, CliError> {
    if let Some(k) = v.as_u64() {
        let k = parse_count(v, "atoms").map(|_| k as usize)?;
        return Ok((0..k).map(|i| format!("a{i}")).collect());
    }
    let items = v
        .as_array()
        .ok_or_else(|| CliError::schema("atoms", "expected a count or an array of labels"))?;
    if items.is_empty() {
        return Err(CliError::schema("atoms", "at least one atom is required"));
    }
    let mut labels = Vec::with_capacity(items.len());
    for (i, item) in items.iter().enumerate() {
        let s = item
            .as_str()
            .ok_or_else(|| CliError::schema(format!("atoms[{i}]"), "expected a string label"))?;
        if labels.iter().any(|l| l == s) {
            return Err(CliError::schema(
                format!("atoms[{i}]"),
                format!("duplicate label {s:?}"),
            ));
        }
        labels.push(s.to_string());
    }
    Ok(labels)
}

fn parse_complex(v: &Value, path: &str) -> Result<Complex64, CliError> {
    let pair = v.as_array().filter(|a| a.len() == 2);
    let parts = pair.and_then(|a| Some((a[0].as_f64()?, a[1].as_f64()?)));
    parts
        .map(|(re, im)| Complex64::new(re, im))
        .ok_or_else(|| CliError::schema(path, "expected a [re, im] pair of numbers"))
}

fn parse_vector(v: &Value, path: &str) -> Result<Vec<Complex64>, CliError> {
    let items = v
        .as_array()
        .ok_or_else(|| CliError::schema(path, "expected an array of [re, im] pairs"))?;
    if items.is_empty() {
        return Err(CliError::schema(path, "at least one atom is required"));
    }
    items
        .iter()
        .enumerate()
        .map(|(i, z)| parse_complex(z, &format!("{path}[{i}]")))
        .collect()
}

fn parse_matrix(v: &Value, path: &str) -> Result<ComplexMatrix, CliError> {
    let rows = v
        .as_array()
        .ok_or_else(|| CliError::schema(path, "expected an array of rows"))?;
    if rows.is_empty() {
        return Err(CliError::schema(path, "matrix must have at least one row"));
    }
    let mut parsed: Vec<Vec<Complex64>> = Vec::with_capacity(rows.len());
    for (i, row) in rows.iter().enumerate() {
        let row_path = format!("{path}[{i}]");
        let entries = row
            .as_array()
            .ok_or_else(|| CliError::schema(&row_path, "expected an array of [re, im] pairs"))?;
        let row: Vec<Complex64> = entries
            .iter()
            .enumerate()
            .map(|(j, z)| parse_complex(z, &format!("{row_path}[{j}]")))
            .collect::<Result<_, _>>()?;
        parsed.push(row);
    }
    let n = parsed.len();
    let widths: Vec<usize> = parsed.iter().map(Vec::len).collect();
    if widths.iter().any(|&w| w != widths[0]) {
        return Err(CliError::schema(
            path,
            format!("rows have unequal lengths {widths:?}"),
        ));
    }
    if widths[0] != n {
        return Err(CliError::schema(
            path,
            format!("matrix is {n}x{} but must be square", widths[0]),
        ));
    }
    Ok(ComplexMatrix::from_fn(n, n, |i, j| parsed[i][j]))
}

fn parse_tol(v: &Value) -> Result<TolOverrides, CliError> {
    let obj: &Map<String, Value> = v
        .as_object()
        .ok_or_else(|| CliError::schema("tol", "expected an object"))?;
    let mut tol = TolOverrides::default();
    for (key, value) in obj {
        let path = format!("tol.{key}");
        let x = value
            .as_f64()
            .ok_or_else(|| CliError::schema(&path, "expected a number"))?;
        match key.as_str() {
            "rank_rel" => tol.rank_rel = Some(x),
            "psd_abs" => tol.psd_abs = Some(x),
            "cmp_abs" => tol.cmp_abs = Some(x),
            _ => return Err(CliError::schema(path, "unknown tolerance field")),
        }
    }
    Ok(tol)
}
