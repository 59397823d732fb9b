//! Fixture-driven replay of the symbolic computations behind the
//! characteristic-3 proof: every displayed polynomial is recomputed and
//! compared with its fixture by exact zero difference.

mod case1;
mod case2;
mod case3;
mod check;
pub mod fixtures;

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::sync::{Arc, OnceLock};
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::polyring::PolyError;
use crate::ppcheck::{build_case_coeffs, CaseECoeffs, CaseId, CaseParams, PpError, SymbolicCase};

pub use check::{Ctx, Outcome};
pub use fixtures::{Fixture, FixtureSet, Origin};

pub const SCHEMA: &str = "1";

/// Environment variable naming a fixture directory for the CLI.
pub const FIXTURES_ENV: &str = "PERMUT3_FIXTURES";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReplayError {
    #[error("{0}")]
    Io(String),
    #[error("{at}: {msg}")]
    Fixture { at: String, msg: String },
    #[error("fixture {0} not found")]
    MissingFixture(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Pp(#[from] PpError),
    #[error("{0}")]
    Step(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum StepKind {
    Resultant,
    Substitute,
    Reduce,
    FactorVerify,
    Irreducible,
    Gcd,
    RootSearch,
    Identity,
}

type StepFn = Arc<dyn Fn(&Ctx<'_>) -> Result<Outcome, ReplayError> + Send + Sync>;

/// One replayed computation. Its fixture inputs are recorded while it runs.
#[derive(Clone)]
pub struct ReplayStep {
    pub id: String,
    pub case: &'static str,
    pub kind: StepKind,
    run: StepFn,
}

impl ReplayStep {
    pub fn new(
        id: impl Into<String>,
        case: &'static str,
        kind: StepKind,
        run: impl Fn(&Ctx<'_>) -> Result<Outcome, ReplayError> + Send + Sync + 'static,
    ) -> Self {
        ReplayStep { id: id.into(), case, kind, run: Arc::new(run) }
    }

    pub fn execute(&self, fx: &FixtureSet, shared: &Shared) -> StepReport {
        let ctx = Ctx::new(fx, shared);
        let start = Instant::now();
        let result = (self.run)(&ctx);
        let ms = start.elapsed().as_millis() as u64;
        let (status, diff_terms_count, detail) = match result {
            Ok(o) if o.passed() => (Status::Pass, 0, None),
            Ok(o) => (Status::Fail, o.diff_terms(), Some(o.failures())),
            Err(e) => (Status::Fail, 0, Some(format!("error: {e}"))),
        };
        StepReport {
            step: self.id.clone(),
            case: self.case,
            kind: self.kind,
            status,
            ms,
            diff_terms_count,
            inputs: ctx.into_inputs(),
            detail,
        }
    }
}

impl std::fmt::Debug for ReplayStep {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ReplayStep").field("id", &self.id).field("kind", &self.kind).finish()
    }
}

/// Values that do not depend on fixtures, computed once per run.
#[derive(Default)]
pub struct Shared {
    symbolic: [OnceLock<Result<SymbolicCase, PpError>>; 5],
}

impl Shared {
    pub fn symbolic(&self, case: CaseId) -> Result<&SymbolicCase, ReplayError> {
        let slot = &self.symbolic[CaseId::ALL.iter().position(|&c| c == case).unwrap()];
        let built = slot.get_or_init(|| match build_case_coeffs(case, &CaseParams::Symbolic)? {
            CaseECoeffs::Symbolic(s) => Ok(s),
            CaseECoeffs::Numeric(_) => unreachable!("symbolic parameters give symbolic output"),
        });
        built.as_ref().map_err(|e| ReplayError::Pp(e.clone()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StepReport {
    pub step: String,
    pub case: &'static str,
    pub kind: StepKind,
    pub status: Status,
    pub ms: u64,
    /// Terms of the nonzero differences; 0 for passing steps and for
    /// failures that are not polynomial mismatches.
    pub diff_terms_count: usize,
    /// Fixtures read by the step.
    pub inputs: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Totals {
    pub steps: usize,
    pub pass: usize,
    pub fail: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReplayReport {
    pub schema: &'static str,
    pub steps: Vec<StepReport>,
    pub totals: Totals,
}

impl ReplayReport {
    pub fn from_steps(mut steps: Vec<StepReport>) -> Self {
        steps.sort_by(|a, b| natural_cmp(&a.step, &b.step));
        let pass = steps.iter().filter(|s| s.status == Status::Pass).count();
        ReplayReport {
            schema: SCHEMA,
            totals: Totals { steps: steps.len(), pass, fail: steps.len() - pass },
            steps,
        }
    }

    pub fn all_pass(&self) -> bool {
        self.totals.fail == 0
    }

    /// Union of several reports.
    pub fn merge(parts: impl IntoIterator<Item = ReplayReport>) -> Self {
        Self::from_steps(parts.into_iter().flat_map(|r| r.steps).collect())
    }

    /// The same report with all timings zeroed, for comparisons.
    pub fn without_timings(&self) -> Self {
        let mut r = self.clone();
        r.steps.iter_mut().for_each(|s| s.ms = 0);
        r
    }

    pub fn failed(&self) -> impl Iterator<Item = &StepReport> {
        self.steps.iter().filter(|s| s.status == Status::Fail)
    }

    /// One line per failure and a totals line.
    pub fn summary(&self) -> String {
        let mut out = String::new();
        for s in self.failed() {
            out.push_str(&format!("FAIL {} [{}] {}\n", s.step, s.case, s.detail.as_deref().unwrap_or("")));
        }
        let ms: u64 = self.steps.iter().map(|s| s.ms).sum();
        out.push_str(&format!(
            "{} steps: {} pass, {} fail ({:.1} s of step time)\n",
            self.totals.steps,
            self.totals.pass,
            self.totals.fail,
            ms as f64 / 1000.0
        ));
        out
    }
}

/// Orders "3.9" before "3.14" by comparing digit runs numerically.
pub fn natural_cmp(a: &str, b: &str) -> Ordering {
    fn chunks(s: &str) -> Vec<(bool, &str)> {
        let mut out = Vec::new();
        let mut start = 0;
        let bytes = s.as_bytes();
        for i in 1..=bytes.len() {
            if i == bytes.len() || bytes[i].is_ascii_digit() != bytes[start].is_ascii_digit() {
                out.push((bytes[start].is_ascii_digit(), &s[start..i]));
                start = i;
            }
        }
        out
    }
    let (ca, cb) = (chunks(a), chunks(b));
    for (x, y) in ca.iter().zip(&cb) {
        let ord = match (x, y) {
            ((true, p), (true, q)) => {
                let (p, q) = (p.trim_start_matches('0'), q.trim_start_matches('0'));
                p.len().cmp(&q.len()).then_with(|| p.cmp(q))
            }
            ((_, p), (_, q)) => p.cmp(q),
        };
        if ord != Ordering::Equal {
            return ord;
        }
    }
    ca.len().cmp(&cb.len()).then_with(|| a.cmp(b))
}

/// Parse and variable checks on the appendix fixtures.
pub fn integrity_steps() -> Vec<ReplayStep> {
    (1..=44)
        .map(|i| {
            let id = format!("A{i}");
            ReplayStep::new(format!("fixture-{id}"), "fixtures", StepKind::Identity, move |cx| {
                let f = cx.fixture(&id)?;
                let support: BTreeSet<&str> = f.poly.support().into_iter().map(|v| f.reg.name(v)).collect();
                let declared: BTreeSet<&str> = f.vars.iter().map(String::as_str).collect();
                Ok(Outcome::new()
                    .holds("nonzero", !f.poly.is_zero())
                    .holds("variables as declared", support == declared)
                    .holds("factors multiply out", crate::polyring::verify_factorization(&f.factors, &f.poly)))
            })
        })
        .collect()
}

pub fn case1_steps() -> Vec<ReplayStep> {
    case1::steps()
}

pub fn case2_steps() -> Vec<ReplayStep> {
    case2::steps()
}

pub fn case3_steps() -> Vec<ReplayStep> {
    case3::steps()
}

pub fn all_steps() -> Vec<ReplayStep> {
    let mut v = integrity_steps();
    v.extend(case1_steps());
    v.extend(case2_steps());
    v.extend(case3_steps());
    v
}

/// Runs `steps`; the order of execution does not affect the report.
pub fn run_steps(fx: &FixtureSet, steps: &[ReplayStep], parallel: bool) -> ReplayReport {
    let shared = Shared::default();
    let reports = if parallel {
        steps.par_iter().map(|s| s.execute(fx, &shared)).collect()
    } else {
        steps.iter().map(|s| s.execute(fx, &shared)).collect()
    };
    ReplayReport::from_steps(reports)
}

pub fn run_case1(fx: &FixtureSet) -> ReplayReport {
    run_steps(fx, &case1_steps(), true)
}

pub fn run_case2(fx: &FixtureSet) -> ReplayReport {
    run_steps(fx, &case2_steps(), true)
}

pub fn run_case3(fx: &FixtureSet) -> ReplayReport {
    run_steps(fx, &case3_steps(), true)
}

/// Integrity preamble plus the three cases.
pub fn run_all(fx: &FixtureSet, parallel: bool) -> ReplayReport {
    run_steps(fx, &all_steps(), parallel)
}
