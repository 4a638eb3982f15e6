use std::path::Path;

use detineq_core::arith::parse_rational;
use detineq_core::inequalities::{
    check_block_zy, check_fischer, check_frame_product, check_frame_zy, check_hadamard, check_hadamard_product_form,
    check_refined, check_thompson, check_zy,
};
use detineq_core::majorization::check_lemma_pq;
use detineq_core::{BlockPartition, IndexSet, Matrix, Permutation, SpectrumVector, TheoremId};
use serde_json::Value;

use crate::CliError;

/// What `check` should verify: one of the theorems, or the shifted product
/// lemma for frames.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Target {
    Theorem(TheoremId),
    Lemma,
}

impl std::str::FromStr for Target {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        if s.eq_ignore_ascii_case("lemma") {
            return Ok(Target::Lemma);
        }
        s.parse::<TheoremId>().map(Target::Theorem).map_err(CliError::from)
    }
}

/// Parsed contents of an input file. Accepted shapes: a bare matrix
/// `{"n", "data"}`, a frame `{"lambda", "v"}`, or `{"matrix", ...}` with
/// optional `"tau"` / `"partition"`.
#[derive(Debug, Clone, Default)]
pub struct Instance {
    pub matrix: Option<Matrix>,
    pub lambda: Option<SpectrumVector>,
    pub perm: Option<Permutation>,
    pub partition: Option<BlockPartition>,
}

fn bad(what: &str, e: impl std::fmt::Display) -> CliError {
    CliError::Input(format!("{what}: {e}"))
}

pub fn parse_instance(text: &str) -> Result<Instance, CliError> {
    let v: Value = serde_json::from_str(text).map_err(|e| bad("malformed JSON", e))?;
    let obj = v.as_object().ok_or_else(|| CliError::Input("input must be a JSON object".into()))?;
    let mut inst = Instance::default();
    let matrix_value = if obj.contains_key("data") {
        Some(&v)
    } else {
        obj.get("matrix").or_else(|| obj.get("v"))
    };
    if let Some(m) = matrix_value {
        inst.matrix = Some(Matrix::from_json(&m.to_string())?);
    }
    if obj.contains_key("lambda") {
        inst.lambda = Some(SpectrumVector::from_json(&v.to_string())?);
    }
    if let Some(t) = obj.get("tau") {
        let s = t.as_str().ok_or_else(|| CliError::Input("tau must be a string like \"2,3,1\"".into()))?;
        inst.perm = Some(s.parse()?);
    }
    if let Some(p) = obj.get("partition") {
        let sizes: Vec<usize> = serde_json::from_value(p.clone()).map_err(|e| bad("partition", e))?;
        inst.partition = Some(BlockPartition::new(sizes)?);
    }
    Ok(inst)
}

pub fn load_instance(path: &Path) -> Result<Instance, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| bad(&format!("cannot read {}", path.display()), e))?;
    parse_instance(&text)
}

#[derive(Debug, Clone, Default)]
pub struct CheckOptions {
    pub perm: Option<String>,
    pub partition: Option<String>,
    pub subset: Option<String>,
    pub spectrum: Option<String>,
    pub s: Option<String>,
    pub t: Option<String>,
}

pub fn parse_spectrum(s: &str) -> Result<SpectrumVector, CliError> {
    let values = s.split(',').map(parse_rational).collect::<Result<Vec<_>, _>>()?;
    Ok(SpectrumVector::new(values)?)
}

/// Runs one check and returns `(json, holds)`.
pub fn run_check(inst: Instance, target: Target, opts: &CheckOptions) -> Result<(String, bool), CliError> {
    let Instance { matrix, mut lambda, mut perm, mut partition } = inst;
    let a = matrix.ok_or_else(|| CliError::Input("input has no matrix".into()))?;
    if let Some(p) = &opts.perm {
        perm = Some(p.parse()?);
    }
    if let Some(p) = &opts.partition {
        partition = Some(BlockPartition::parse(p)?);
    }
    if let Some(s) = &opts.spectrum {
        lambda = Some(parse_spectrum(s)?);
    }
    let need_perm = || perm.clone().ok_or_else(|| CliError::Input("this check needs --perm".into()));
    let need_part = || partition.clone().ok_or_else(|| CliError::Input("this check needs --partition".into()));
    let need_lambda = || lambda.clone().ok_or_else(|| CliError::Input("this check needs --spectrum".into()));
    let theorem = match target {
        Target::Lemma => {
            let need = |v: &Option<String>, flag: &str| {
                v.as_deref().ok_or_else(|| CliError::Input(format!("lemma needs --{flag}"))).and_then(|x| Ok(parse_rational(x)?))
            };
            let (s, t) = (need(&opts.s, "s")?, need(&opts.t, "t")?);
            let r = check_lemma_pq(&need_lambda()?, &a, &s, &t)?;
            return Ok((serde_json::to_string(&r).expect("report serializes"), r.holds));
        }
        Target::Theorem(t) => t,
    };
    let report = match theorem {
        TheoremId::Hadamard => check_hadamard(&a)?,
        TheoremId::Fischer => {
            let g = opts.subset.as_deref().ok_or_else(|| CliError::Input("fischer needs --subset".into()))?;
            let g = IndexSet::parse_one_based(g)?;
            check_fischer(&a, &g)?
        }
        TheoremId::Zy => check_zy(&a, &need_perm()?)?,
        TheoremId::Refined => check_refined(&a, &need_perm()?)?,
        TheoremId::Hprod => check_hadamard_product_form(&a, &need_perm()?)?,
        TheoremId::FrameProduct => check_frame_product(&need_lambda()?, &a)?,
        TheoremId::FrameZy => check_frame_zy(&need_lambda()?, &a, &need_perm()?)?,
        TheoremId::Thompson => check_thompson(&a, &need_part()?)?,
        TheoremId::BlockZy => check_block_zy(&a, &need_part()?, &need_perm()?)?,
    };
    Ok((report.to_json(), report.holds))
}
