use detineq_core::arith::{format_rational, parse_rational, rat, Rational};
use detineq_core::eigen::{float_frame_product, psd_sqrt, to_f64, FloatMatrix};
use detineq_core::generators::{exact_sqrt_frame, gram_psd, equal_spectrum_frame, zero_padded_frame, random_spectrum};
use detineq_core::inequalities::{check_frame_product, check_zy};
use detineq_core::majorization::{check_frame, frame_congruence, frame_to_ds, DoublyStochasticMatrix};
use detineq_core::{EqualityCase, Matrix};
use serde::Serialize;
use serde_json::{json, Value};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExampleId {
    Eg1,
    Eg2,
    Eg3,
    N2Equality,
}

impl std::str::FromStr for ExampleId {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        match s.to_ascii_lowercase().as_str() {
            "eg1" => Ok(ExampleId::Eg1),
            "eg2" => Ok(ExampleId::Eg2),
            "eg3" => Ok(ExampleId::Eg3),
            "n2-equality" => Ok(ExampleId::N2Equality),
            _ => Err(CliError::Input(format!("unknown example {s:?}; expected eg1, eg2, eg3 or n2-equality"))),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Claim {
    pub claim: String,
    pub confirmed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct ExampleReport {
    pub id: String,
    pub claims: Vec<Claim>,
    pub data: Value,
}

impl ExampleReport {
    pub fn all_confirmed(&self) -> bool {
        self.claims.iter().all(|c| c.confirmed)
    }
}

fn claim(claim: &str, confirmed: bool, detail: impl Into<String>) -> Claim {
    Claim { claim: claim.into(), confirmed, detail: detail.into() }
}

fn ds_rows(s: &DoublyStochasticMatrix) -> Vec<Vec<String>> {
    (0..s.n()).map(|i| (0..s.n()).map(|j| format_rational(s.get(i, j))).collect()).collect()
}

fn params(raw: &[String], defaults: &[Rational]) -> Result<Vec<Rational>, CliError> {
    if raw.is_empty() {
        return Ok(defaults.to_vec());
    }
    if raw.len() != defaults.len() {
        return Err(CliError::Input(format!("expected {} parameters, got {}", defaults.len(), raw.len())));
    }
    Ok(raw.iter().map(|p| parse_rational(p)).collect::<Result<_, _>>()?)
}

fn is_unitary(v: &Matrix) -> bool {
    v.adjoint().try_mul(v).map(|g| g == Matrix::identity(v.n())).unwrap_or(false)
}

fn eg1(raw: &[String]) -> Result<ExampleReport, CliError> {
    let p = params(raw, &[rat(4, 5), rat(3, 5)])?;
    let (lambda, v) = equal_spectrum_frame(&p[0], &p[1])?;
    let s = frame_to_ds(&v)?;
    let report = check_frame_product(&lambda, &v)?;
    let claims = vec![
        claim("V has unit rows and columns", check_frame(&v).is_ok(), "diag(V*V) = diag(VV*) = 1"),
        claim("V is not unitary", !is_unitary(&v), "V*V ≠ I"),
        claim(
            "equality ∏λ_i = ∏b_ii",
            report.equality,
            format!("∏b_ii − ∏λ_i = {}", format_rational(&report.g)),
        ),
        claim("S = (|v_ij|²) is not a permutation matrix", !s.is_permutation(), "equal eigenvalues allow this"),
    ];
    Ok(ExampleReport {
        id: "eg1".into(),
        claims,
        data: json!({
            "c": format_rational(&p[0]),
            "s": format_rational(&p[1]),
            "lambda": lambda.values().iter().map(format_rational).collect::<Vec<_>>(),
            "v": v.to_json_value(),
            "S": ds_rows(&s),
            "report": report,
        }),
    })
}

fn eg2(raw: &[String]) -> Result<ExampleReport, CliError> {
    let p = params(raw, &[rat(4, 5), rat(3, 5)])?;
    let (lambda, v) = equal_spectrum_frame(&p[0], &p[1])?;
    let (lambda, v) = zero_padded_frame(&lambda, &v)?;
    let b = frame_congruence(&lambda, &v)?;
    let lhs = lambda.product();
    let rhs: Rational = (0..b.n()).map(|i| b[(i, i)].re.clone()).product();
    let report = check_frame_product(&lambda, &v)?;
    let s = frame_to_ds(&v)?;
    let zero = Rational::from_integer(0.into());
    let claims = vec![
        claim("both sides are zero", lhs == zero && rhs == zero, format!("∏λ_i = {}, ∏b_ii = {}", format_rational(&lhs), format_rational(&rhs))),
        claim("equality is reported", report.equality, report.case.tag()),
        claim("V' is not permutation-shaped", !s.is_permutation(), "a zero eigenvalue forces equality"),
    ];
    Ok(ExampleReport {
        id: "eg2".into(),
        claims,
        data: json!({
            "lambda": lambda.values().iter().map(format_rational).collect::<Vec<_>>(),
            "v": v.to_json_value(),
            "report": report,
        }),
    })
}

pub const EG3_TOLERANCE: f64 = 1e-9;

fn eg3(raw: &[String], seed: u64) -> Result<ExampleReport, CliError> {
    let p = params(raw, &[rat(1, 2)])?;
    let t = to_f64(&p[0]);
    if t.abs() > 1.0 {
        return Err(CliError::Input(format!("need |t| ≤ 1, got {t}")));
    }
    let target = FloatMatrix::from_real_rows(&[&[1.0, t], &[t, 1.0]]);
    let v = psd_sqrt(&target, 1e-12)?;
    let residual = v.mul(&v).sub(&target).frobenius_norm();
    let gram = v.adjoint().mul(&v);
    let diag_error = (0..2).map(|i| (gram[(i, i)].re - 1.0).abs()).fold(0.0, f64::max);
    let unitary_gap = gram.sub(&FloatMatrix::identity(2)).frobenius_norm();
    let lambda = [3.0, 1.0];
    let (lhs, rhs) = float_frame_product(&lambda, &v);

    let exact_v = exact_sqrt_frame(4, seed);
    let exact_lambda = random_spectrum(4, seed, true);
    let exact = check_frame_product(&exact_lambda, &exact_v)?;

    let claims = vec![
        claim("V·V = I + T", residual <= EG3_TOLERANCE, format!("residual {residual:e}")),
        claim("V has ones on the diagonal of V*V", diag_error <= EG3_TOLERANCE, format!("max deviation {diag_error:e}")),
        claim("V is not unitary when T ≠ 0", (t == 0.0) == (unitary_gap <= EG3_TOLERANCE), format!("‖V*V − I‖ = {unitary_gap:e}")),
        claim("∏λ_i ≤ ∏b_ii for λ = (3, 1)", lhs <= rhs + EG3_TOLERANCE, format!("{lhs} ≤ {rhs}")),
        claim("exact rational square-root frame satisfies ∏λ_i ≤ ∏b_ii", exact.holds, format!("slack {}", format_rational(&exact.g))),
    ];
    Ok(ExampleReport {
        id: "eg3".into(),
        claims,
        data: json!({
            "t": t,
            "v": (0..2).map(|i| (0..2).map(|j| v[(i, j)].re).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "exactFrame": exact_v.to_json_value(),
            "exactLambda": exact_lambda.values().iter().map(format_rational).collect::<Vec<_>>(),
            "exactReport": exact,
        }),
    })
}

fn n2_equality(seed: u64) -> Result<ExampleReport, CliError> {
    let a = gram_psd(2, 2, seed)?;
    let report = check_zy(&a, &"2,1".parse()?)?;
    let claims = vec![
        claim("slack is exactly zero for 2×2 PSD", report.equality && report.g_squared() == report.p, format!("g² − p = {}", format_rational(&report.slack()))),
        claim(
            "equality case is the transposition",
            matches!(report.case, EqualityCase::TranspositionOnComplement | EqualityCase::Diagonal),
            report.case.tag(),
        ),
    ];
    Ok(ExampleReport { id: "n2-equality".into(), claims, data: json!({ "matrix": a.to_json_value(), "report": report }) })
}

pub fn run_example(id: ExampleId, params: &[String], seed: u64) -> Result<ExampleReport, CliError> {
    match id {
        ExampleId::Eg1 => eg1(params),
        ExampleId::Eg2 => eg2(params),
        ExampleId::Eg3 => eg3(params, seed),
        ExampleId::N2Equality => n2_equality(seed),
    }
}
