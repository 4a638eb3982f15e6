use std::collections::BTreeMap;
use std::io::Write;
use std::time::Instant;

use detineq_core::generators::{derive_seed, generate, proper_subsets, ExactRng, Family, Generated, GeneratorSpec};
use detineq_core::inequalities::{
    check_block_zy, check_fischer, check_hadamard, check_thompson, PreparedFrame, PreparedMatrix,
};
use detineq_core::matrix::MatrixJson;
use detineq_core::perm::{derangements, non_identity_permutations};
use detineq_core::{Error, IndexSet, Permutation, TheoremId, VerdictReport};
use rayon::prelude::*;
use serde::Serialize;

/// Permutations and subsets are enumerated exhaustively up to this size.
pub const EXHAUSTIVE_LIMIT: usize = 6;
pub const SAMPLED_PROBES: usize = 200;
const CHUNK: usize = 64;

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct FuzzCampaignConfig {
    /// `seed` here is ignored; each trial derives its own from `seed` below.
    pub generator: GeneratorSpec,
    /// Draw `n` from `generator.n..=n_max` by trial index.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n_max: Option<usize>,
    pub trials: usize,
    pub theorems: Vec<TheoremId>,
    pub seed: u64,
    #[serde(skip)]
    pub workers: usize,
    pub fail_fast: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Kind {
    Matrix,
    Frame,
}

fn family_kind(f: Family) -> Kind {
    match f {
        Family::RationalUnitary | Family::Frame | Family::Eg1 | Family::Eg2 | Family::Eg3 => Kind::Frame,
        _ => Kind::Matrix,
    }
}

fn theorem_kind(t: TheoremId) -> Kind {
    match t {
        TheoremId::FrameProduct | TheoremId::FrameZy => Kind::Frame,
        _ => Kind::Matrix,
    }
}

impl FuzzCampaignConfig {
    pub fn new(generator: GeneratorSpec, trials: usize, theorems: Vec<TheoremId>, seed: u64) -> Self {
        FuzzCampaignConfig { generator, n_max: None, trials, theorems, seed, workers: 1, fail_fast: false }
    }

    pub fn validate(&self) -> Result<(), Error> {
        if self.trials == 0 {
            return Err(Error::Precondition("trials must be at least 1".into()));
        }
        if self.theorems.is_empty() {
            return Err(Error::Precondition("no theorems selected".into()));
        }
        if let Some(max) = self.n_max {
            if max < self.generator.n {
                return Err(Error::Precondition(format!("n-max {max} is below n {}", self.generator.n)));
            }
            GeneratorSpec { n: max, ..self.generator.clone() }.check_bounds()?;
        }
        self.generator.check_bounds()?;
        let kind = family_kind(self.generator.family);
        for &t in &self.theorems {
            if theorem_kind(t) != kind {
                return Err(Error::Precondition(format!("theorem {t} does not apply to family {}", self.generator.family)));
            }
            let block_only = matches!(t, TheoremId::Thompson | TheoremId::BlockZy);
            if block_only && self.generator.family != Family::BlockPd {
                return Err(Error::Precondition(format!("theorem {t} needs the blockPD family")));
            }
        }
        Ok(())
    }

    fn trial_spec(&self, trial: usize) -> GeneratorSpec {
        let n = match self.n_max {
            Some(max) => self.generator.n + trial % (max - self.generator.n + 1),
            None => self.generator.n,
        };
        GeneratorSpec { n, seed: derive_seed(self.seed, trial as u64), ..self.generator.clone() }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct TheoremStats {
    pub checks: usize,
    pub holds: usize,
    pub equalities: usize,
    pub violations: usize,
    pub input_errors: usize,
}

/// Everything needed to rerun a failing check.
#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Violation {
    pub trial: usize,
    pub seed: u64,
    pub family: Family,
    pub n: usize,
    pub theorem: TheoremId,
    pub matrix: MatrixJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub partition: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub permutation: Option<Permutation>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub subset: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub report: Option<VerdictReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CampaignReport {
    pub config: FuzzCampaignConfig,
    pub trials_run: usize,
    pub checks_run: usize,
    /// Trials with at least one tight check.
    pub equality_count: usize,
    pub tight_checks: usize,
    pub classifier_histogram: BTreeMap<String, usize>,
    pub per_theorem_breakdown: BTreeMap<String, TheoremStats>,
    pub input_errors: usize,
    pub input_error_samples: Vec<String>,
    pub violations: Vec<Violation>,
    pub elapsed_ms: u64,
}

const ERROR_SAMPLES: usize = 5;

impl CampaignReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// The report without `elapsedMs`, for comparing runs.
    pub fn canonical_json(&self) -> String {
        let mut v = serde_json::to_value(self).expect("report serializes");
        v.as_object_mut().expect("object").remove("elapsedMs");
        serde_json::to_string_pretty(&v).expect("report serializes")
    }

    pub fn violation_count(&self) -> usize {
        self.violations.len()
    }

    pub fn exit_code(&self) -> i32 {
        if !self.violations.is_empty() {
            crate::EXIT_VIOLATION
        } else if self.input_errors > 0 {
            crate::EXIT_INPUT
        } else {
            crate::EXIT_OK
        }
    }
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
struct TrialLine {
    trial: usize,
    seed: u64,
    n: usize,
    checks: usize,
    tight: usize,
    violations: usize,
    input_errors: usize,
}

#[derive(Debug, Clone)]
struct TrialOutcome {
    line: TrialLine,
    per_theorem: BTreeMap<TheoremId, TheoremStats>,
    cases: BTreeMap<String, usize>,
    violations: Vec<Violation>,
    errors: Vec<String>,
}

enum Probe {
    Whole,
    Perm(Permutation),
    Subset(IndexSet),
}

fn permutation_probes(n: usize, rng: &mut ExactRng, derangement: bool) -> Vec<Permutation> {
    if n <= EXHAUSTIVE_LIMIT {
        return if derangement { derangements(n) } else { non_identity_permutations(n).collect() };
    }
    (0..SAMPLED_PROBES)
        .map(|_| if derangement { rng.derangement(n) } else { rng.non_identity_permutation(n) })
        .collect()
}

fn subset_probes(n: usize, rng: &mut ExactRng) -> Vec<IndexSet> {
    if n <= EXHAUSTIVE_LIMIT {
        return proper_subsets(n).collect();
    }
    (0..SAMPLED_PROBES)
        .map(|_| {
            let mask = 1 + rng.below((1 << n) - 2) as u64;
            IndexSet::from_mask(mask, n)
        })
        .collect()
}

fn run_trial(config: &FuzzCampaignConfig, trial: usize) -> TrialOutcome {
    let spec = config.trial_spec(trial);
    let mut out = TrialOutcome {
        line: TrialLine { trial, seed: spec.seed, n: spec.n, checks: 0, tight: 0, violations: 0, input_errors: 0 },
        per_theorem: BTreeMap::new(),
        cases: BTreeMap::new(),
        violations: Vec::new(),
        errors: Vec::new(),
    };
    let generated = match generate(&spec) {
        Ok(g) => g,
        Err(e) => {
            out.line.input_errors += 1;
            out.errors.push(format!("trial {trial}: {e}"));
            return out;
        }
    };
    let n = generated.matrix().n();
    out.line.n = n;
    let mut rng = ExactRng::new(derive_seed(spec.seed, 0x5052_4f42));
    let mut prepared: Option<Result<PreparedMatrix, Error>> = None;
    for &theorem in &config.theorems {
        let results = probe_theorem(theorem, &generated, n, &mut rng, &mut prepared);
        for (probe, result) in results {
            record(&mut out, config, &spec, &generated, theorem, probe, result);
        }
    }
    out
}

fn probe_theorem(
    theorem: TheoremId,
    generated: &Generated,
    n: usize,
    rng: &mut ExactRng,
    prepared: &mut Option<Result<PreparedMatrix, Error>>,
) -> Vec<(Probe, Result<VerdictReport, Error>)> {
    let a = generated.matrix();
    let orbit_tau = match generated {
        Generated::Orbit { tau, .. } => Some(tau.clone()),
        _ => None,
    };
    let mut with_prepared = |derangement: bool, f: &dyn Fn(&PreparedMatrix, &Permutation) -> Result<VerdictReport, Error>| {
        let p = prepared.get_or_insert_with(|| PreparedMatrix::new(a.clone()));
        let p = match p {
            Ok(p) => p,
            Err(e) => return vec![(Probe::Whole, Err(e.clone()))],
        };
        let perms = match &orbit_tau {
            Some(tau) => vec![tau.clone()],
            None => permutation_probes(n, rng, derangement),
        };
        perms.into_iter().map(|s| {
            let r = f(p, &s);
            (Probe::Perm(s), r)
        }).collect()
    };
    match theorem {
        TheoremId::Hadamard => vec![(Probe::Whole, check_hadamard(a))],
        TheoremId::Fischer => subset_probes(n, rng)
            .into_iter()
            .map(|g| {
                let r = check_fischer(a, &g);
                (Probe::Subset(g), r)
            })
            .collect(),
        TheoremId::Zy => with_prepared(false, &|p, s| p.check_zy(s)),
        TheoremId::Refined => with_prepared(true, &|p, s| p.check_refined(s)),
        TheoremId::Hprod => with_prepared(true, &|p, s| p.check_hadamard_product_form(s)),
        TheoremId::FrameProduct | TheoremId::FrameZy => {
            let Generated::Frame { lambda, v } = generated else {
                return vec![(Probe::Whole, Err(Error::Precondition("frame theorem needs a frame instance".into())))];
            };
            let frame = match PreparedFrame::new(lambda, v) {
                Ok(f) => f,
                Err(e) => return vec![(Probe::Whole, Err(e))],
            };
            if theorem == TheoremId::FrameProduct {
                return vec![(Probe::Whole, frame.check_frame_product())];
            }
            permutation_probes(n, rng, true)
                .into_iter()
                .filter(|t| frame.admits(t))
                .map(|t| {
                    let r = frame.check_frame_zy(&t);
                    (Probe::Perm(t), r)
                })
                .collect()
        }
        TheoremId::Thompson | TheoremId::BlockZy => {
            let Generated::Block { matrix, partition } = generated else {
                return vec![(Probe::Whole, Err(Error::Precondition("block theorem needs a blockPD instance".into())))];
            };
            if theorem == TheoremId::Thompson {
                return vec![(Probe::Whole, check_thompson(matrix, partition))];
            }
            derangements(partition.len())
                .into_iter()
                .map(|t| {
                    let r = check_block_zy(matrix, partition, &t);
                    (Probe::Perm(t), r)
                })
                .collect()
        }
    }
}

fn record(
    out: &mut TrialOutcome,
    config: &FuzzCampaignConfig,
    spec: &GeneratorSpec,
    generated: &Generated,
    theorem: TheoremId,
    probe: Probe,
    result: Result<VerdictReport, Error>,
) {
    let stats = out.per_theorem.entry(theorem).or_default();
    let (report, error) = match result {
        Ok(r) => {
            stats.checks += 1;
            out.line.checks += 1;
            if r.holds {
                stats.holds += 1;
            }
            if r.equality {
                stats.equalities += 1;
                out.line.tight += 1;
                *out.cases.entry(r.case.tag().to_string()).or_default() += 1;
            }
            if r.holds {
                return;
            }
            (Some(r), None)
        }
        Err(e) if e.is_violation() => {
            stats.checks += 1;
            out.line.checks += 1;
            (None, Some(e.to_string()))
        }
        Err(e) => {
            stats.input_errors += 1;
            out.line.input_errors += 1;
            out.errors.push(format!("trial {} ({theorem}): {e}", out.line.trial));
            return;
        }
    };
    stats.violations += 1;
    out.line.violations += 1;
    let (lambda, partition) = match generated {
        Generated::Frame { lambda, .. } => {
            (Some(lambda.values().iter().map(detineq_core::arith::format_rational).collect()), None)
        }
        Generated::Block { partition, .. } => (None, Some(partition.sizes().to_vec())),
        _ => (None, None),
    };
    let (permutation, subset) = match probe {
        Probe::Whole => (None, None),
        Probe::Perm(p) => (Some(p), None),
        Probe::Subset(g) => (None, Some(g.to_string())),
    };
    out.violations.push(Violation {
        trial: out.line.trial,
        seed: spec.seed,
        family: config.generator.family,
        n: spec.n,
        theorem,
        matrix: generated.matrix().to_json_value(),
        lambda,
        partition,
        permutation,
        subset,
        report,
        error,
    });
}

/// Runs the campaign. Trials are independent and merged in trial order,
/// so the report does not depend on `workers`. With `verbose`, one JSON
/// line per trial is written in trial order.
pub fn run_campaign(config: &FuzzCampaignConfig, mut verbose: Option<&mut dyn Write>) -> Result<CampaignReport, crate::CliError> {
    config.validate()?;
    let start = Instant::now();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.workers.max(1))
        .build()
        .map_err(|e| crate::CliError::Input(format!("cannot start worker pool: {e}")))?;
    let mut report = CampaignReport {
        config: config.clone(),
        trials_run: 0,
        checks_run: 0,
        equality_count: 0,
        tight_checks: 0,
        classifier_histogram: BTreeMap::new(),
        per_theorem_breakdown: BTreeMap::new(),
        input_errors: 0,
        input_error_samples: Vec::new(),
        violations: Vec::new(),
        elapsed_ms: 0,
    };
    let mut next = 0;
    'chunks: while next < config.trials {
        let end = (next + CHUNK).min(config.trials);
        let outcomes: Vec<TrialOutcome> = pool.install(|| (next..end).into_par_iter().map(|t| run_trial(config, t)).collect());
        next = end;
        for outcome in outcomes {
            let failed = !outcome.violations.is_empty();
            merge(&mut report, outcome, &mut verbose)?;
            if failed && config.fail_fast {
                break 'chunks;
            }
        }
    }
    report.elapsed_ms = start.elapsed().as_millis() as u64;
    Ok(report)
}

fn merge(report: &mut CampaignReport, outcome: TrialOutcome, verbose: &mut Option<&mut dyn Write>) -> std::io::Result<()> {
    if let Some(w) = verbose.as_mut() {
        writeln!(w, "{}", serde_json::to_string(&outcome.line).expect("line serializes"))?;
    }
    report.trials_run += 1;
    report.checks_run += outcome.line.checks;
    report.tight_checks += outcome.line.tight;
    if outcome.line.tight > 0 {
        report.equality_count += 1;
    }
    report.input_errors += outcome.line.input_errors;
    for (theorem, s) in outcome.per_theorem {
        let total = report.per_theorem_breakdown.entry(theorem.tag().to_string()).or_default();
        total.checks += s.checks;
        total.holds += s.holds;
        total.equalities += s.equalities;
        total.violations += s.violations;
        total.input_errors += s.input_errors;
    }
    for (case, k) in outcome.cases {
        *report.classifier_histogram.entry(case).or_default() += k;
    }
    for e in outcome.errors {
        if report.input_error_samples.len() < ERROR_SAMPLES {
            report.input_error_samples.push(e);
        }
    }
    report.violations.extend(outcome.violations);
    Ok(())
}
