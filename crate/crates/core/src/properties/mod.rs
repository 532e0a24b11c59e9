//! Seeded randomized suites restating the operator and kernel theorems as
//! executable checks, with replayable violation records.

mod cases;
mod generator;
mod suites;

use std::collections::BTreeMap;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use cases::{evaluate, is_ambiguity, known_kernel_element, model_space_eta, winding_dim, Case, Conformance, Outcome};
pub use generator::{
    gen_symbol, trial_rng, DegreeRange, Family, GeneratedSymbol, GeneratorConfig, Sampler,
    BLASCHKE_RADIUS, INVERTIBLE_MARGIN,
};
pub use suites::SUITES;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Tolerances {
    /// Identities that hold coefficientwise in exact arithmetic.
    pub exact: f64,
    /// Identities that pass through rational-to-coefficient conversion.
    pub numeric: f64,
    pub null_threshold: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            exact: 1e-12,
            numeric: 1e-8,
            null_threshold: 1e-8,
        }
    }
}

/// Settings shared by every suite. `None` fields fall back to per-suite defaults.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SuiteConfig {
    pub seed: u64,
    pub trials: Option<usize>,
    pub degree_range: Option<DegreeRange>,
    pub coefficient_scale: f64,
    /// Working band for kernel computations.
    pub band: usize,
    pub grid_points: usize,
    pub tolerances: Tolerances,
    /// Band escalations (16 each) allowed for an unresolved null space.
    pub escalations: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            seed: 0,
            trials: None,
            degree_range: None,
            coefficient_scale: 1.0,
            band: 32,
            grid_points: 1024,
            tolerances: Tolerances::default(),
            escalations: 8,
        }
    }
}

impl SuiteConfig {
    pub fn trials_for(&self, suite: &str) -> usize {
        self.trials.unwrap_or_else(|| suites::default_trials(suite))
    }

    /// The generator settings a suite runs with.
    pub fn generator(&self, suite: &str) -> GeneratorConfig {
        GeneratorConfig {
            seed: suite_seed(self.seed, suite),
            degree_range: self.degree_range.unwrap_or_else(|| suites::default_degrees(suite)),
            coefficient_scale: self.coefficient_scale,
            family: Family::General,
            trials: self.trials_for(suite),
        }
    }
}

/// `seed XOR fnv1a(suite)`, stable across platforms and releases.
pub fn suite_seed(seed: u64, suite: &str) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in suite.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    seed ^ h
}

/// A failed check with everything needed to replay it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub label: String,
    /// `None` for pinned cases.
    pub trial: Option<usize>,
    /// `None` when the inputs could not be generated.
    pub case: Option<Case>,
    pub residual: f64,
    pub measurements: BTreeMap<String, f64>,
    pub message: String,
}

/// A check whose band computation could not separate kernel from non-kernel.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Ambiguity {
    pub label: String,
    pub trial: Option<usize>,
    pub case: Option<Case>,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Stat {
    pub count: usize,
    pub min: f64,
    pub max: f64,
    pub mean: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrialReport {
    pub suite: String,
    pub seed: u64,
    pub trials: usize,
    pub pinned: usize,
    pub checks: usize,
    /// `violations.is_empty()`
    pub passed: bool,
    /// No checks ran: a vacuous pass.
    pub no_evidence: bool,
    pub violations: Vec<Violation>,
    pub ambiguities: Vec<Ambiguity>,
    pub resamples: usize,
    pub max_residual: f64,
    pub stats: BTreeMap<String, Stat>,
    pub runtime_ms: f64,
}

impl TrialReport {
    pub fn exit_code(&self) -> i32 {
        exit_code(!self.violations.is_empty(), !self.ambiguities.is_empty())
    }
}

fn exit_code(violations: bool, ambiguities: bool) -> i32 {
    if violations {
        1
    } else if ambiguities {
        2
    } else {
        0
    }
}

struct Checked {
    label: String,
    trial: Option<usize>,
    case: Option<Case>,
    result: std::result::Result<Outcome, Error>,
}

fn run_cases(cases: Vec<(String, Case)>, trial: Option<usize>) -> Vec<Checked> {
    cases
        .into_iter()
        .map(|(label, case)| {
            let result = evaluate(&case);
            Checked {
                label,
                trial,
                case: Some(case),
                result,
            }
        })
        .collect()
}

/// Runs one suite. Trials execute in parallel; results merge in trial order.
pub fn run_suite(suite: &str, cfg: &SuiteConfig) -> Result<TrialReport> {
    if !SUITES.contains(&suite) {
        return Err(Error::Precondition(format!(
            "unknown suite {suite:?}; expected one of {}",
            SUITES.join(", ")
        )));
    }
    let start = Instant::now();
    let gen = cfg.generator(suite);
    // trials = 0 yields an empty report
    let pinned = if gen.trials == 0 { Vec::new() } else { suites::pinned(suite, cfg) };
    let n_pinned = pinned.len();

    let trial_results: Vec<(usize, Vec<Checked>)> = (0..gen.trials)
        .into_par_iter()
        .map(|t| {
            let mut s = Sampler::new(trial_rng(gen.seed, t), gen.coefficient_scale);
            let checked = match suites::trial_cases(suite, &mut s, t, cfg) {
                Ok(cases) => run_cases(cases, Some(t)),
                Err(e) => vec![Checked {
                    label: "generation".into(),
                    trial: Some(t),
                    case: None,
                    result: Err(e),
                }],
            };
            (s.resamples, checked)
        })
        .collect();

    let mut report = TrialReport {
        suite: suite.to_string(),
        seed: gen.seed,
        trials: gen.trials,
        pinned: n_pinned,
        checks: 0,
        passed: true,
        no_evidence: false,
        violations: Vec::new(),
        ambiguities: Vec::new(),
        resamples: 0,
        max_residual: 0.0,
        stats: BTreeMap::new(),
        runtime_ms: 0.0,
    };
    let mut samples: BTreeMap<String, Vec<f64>> = BTreeMap::new();
    report.resamples = trial_results.iter().map(|(r, _)| r).sum();
    let all = run_cases(pinned, None)
        .into_iter()
        .chain(trial_results.into_iter().flat_map(|(_, c)| c));
    for ch in all {
        report.checks += 1;
        match ch.result {
            Ok(o) => {
                report.max_residual = report.max_residual.max(o.residual);
                for (k, v) in &o.stats {
                    samples.entry(k.clone()).or_default().push(*v);
                }
                if !o.passed {
                    report.violations.push(Violation {
                        label: ch.label,
                        trial: ch.trial,
                        case: ch.case,
                        residual: o.residual,
                        measurements: o.measurements,
                        message: o.notes.join("; "),
                    });
                }
            }
            Err(e) if is_ambiguity(&e) => report.ambiguities.push(Ambiguity {
                label: ch.label,
                trial: ch.trial,
                case: ch.case,
                message: e.to_string(),
            }),
            Err(e) => report.violations.push(Violation {
                label: ch.label,
                trial: ch.trial,
                case: ch.case,
                residual: 0.0,
                measurements: BTreeMap::new(),
                message: e.to_string(),
            }),
        }
    }
    report.stats = samples
        .into_iter()
        .map(|(k, v)| {
            let stat = Stat {
                count: v.len(),
                min: v.iter().copied().fold(f64::INFINITY, f64::min),
                max: v.iter().copied().fold(f64::NEG_INFINITY, f64::max),
                mean: v.iter().sum::<f64>() / v.len() as f64,
            };
            (k, stat)
        })
        .collect();
    report.passed = report.violations.is_empty();
    report.no_evidence = report.checks == 0;
    report.runtime_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AggregateReport {
    pub config: SuiteConfig,
    pub passed: bool,
    pub violations: usize,
    pub ambiguities: usize,
    pub no_evidence: bool,
    pub suites: Vec<TrialReport>,
}

impl AggregateReport {
    pub fn exit_code(&self) -> i32 {
        exit_code(self.violations > 0, self.ambiguities > 0)
    }

    /// The report with every runtime field zeroed, for byte comparisons.
    pub fn without_runtime(&self) -> Self {
        let mut r = self.clone();
        for s in &mut r.suites {
            s.runtime_ms = 0.0;
        }
        r
    }
}

/// Every suite with its derived sub-seed, merged in name order.
pub fn run_all(cfg: &SuiteConfig) -> AggregateReport {
    let suites: Vec<TrialReport> = SUITES
        .iter()
        .map(|s| run_suite(s, cfg).expect("suite names are known"))
        .collect();
    AggregateReport {
        config: cfg.clone(),
        passed: suites.iter().all(|s| s.passed),
        violations: suites.iter().map(|s| s.violations.len()).sum(),
        ambiguities: suites.iter().map(|s| s.ambiguities.len()).sum(),
        no_evidence: suites.iter().all(|s| s.no_evidence),
        suites,
    }
}

/// Re-evaluates the check recorded in a violation.
pub fn replay(v: &Violation) -> Result<Outcome> {
    match &v.case {
        Some(case) => evaluate(case),
        None => Err(Error::Precondition("violation has no recorded inputs".into())),
    }
}
