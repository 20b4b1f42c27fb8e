//! Property suites over named diagrams. Every check yields one
//! [`CheckResult`]; a failing check carries a counterexample dump (the
//! diagram and, where a walk was involved, the move trace).

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::canonical::{dehn_twist_diagram, is_minimal_size, TwistCurve};
use crate::corpus::CorpusEntry;
use crate::diagram::format::write_diagram;
use crate::diagram::SurfaceDiagram;
use crate::invariants::{
    bracket_skein, bracket_with, crossing_signs, kauffman_f_with, linking_matrix, writhe, BracketOptions,
    InvariantError, LaurentPoly,
};
use crate::moves::{crossing_number_bounds, fuzz, FuzzStep, Move, MoveError, MoveTrace, SearchBudget};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Tait1,
    Tait2,
    Invariance,
    Oracle,
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "tait1" => Ok(Suite::Tait1),
            "tait2" => Ok(Suite::Tait2),
            "invariance" => Ok(Suite::Invariance),
            "oracle" => Ok(Suite::Oracle),
            _ => Err(format!("unknown suite '{s}' (tait1, tait2, invariance, oracle)")),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::Tait1 => "tait1",
            Suite::Tait2 => "tait2",
            Suite::Invariance => "invariance",
            Suite::Oracle => "oracle",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: String,
    /// `None` when the diagram is outside the suite's scope.
    pub passed: Option<bool>,
    pub detail: String,
    pub counterexample: Option<String>,
}

impl CheckResult {
    fn skip(name: &str, why: &str) -> Self {
        CheckResult {
            name: name.to_string(),
            passed: None,
            detail: why.to_string(),
            counterexample: None,
        }
    }

    fn verdict(name: &str, ok: bool, detail: String, dump: impl FnOnce() -> String) -> Self {
        CheckResult {
            name: name.to_string(),
            passed: Some(ok),
            detail,
            counterexample: (!ok).then(dump),
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct SuiteConfig {
    pub steps: usize,
    pub seed: u64,
    /// Crossing cap for fuzz walks.
    pub cap: usize,
    pub budget: usize,
    pub workers: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            steps: 200,
            seed: 0,
            cap: 12,
            budget: crate::invariants::DEFAULT_CROSSING_BUDGET,
            workers: 1,
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum VerifyError {
    #[error(transparent)]
    Invariant(#[from] InvariantError),
    #[error(transparent)]
    Move(#[from] MoveError),
    #[error("worker pool: {0}")]
    Worker(String),
}

fn opts(cfg: &SuiteConfig) -> BracketOptions {
    BracketOptions {
        budget: cfg.budget,
        threads: 1,
    }
}

/// Runs `suite` on every entry. Results keep the corpus order whatever the
/// worker count.
pub fn run_suite(suite: Suite, corpus: &[CorpusEntry], cfg: &SuiteConfig) -> Result<Vec<CheckResult>, VerifyError> {
    let one = |e: &CorpusEntry| -> Result<CheckResult, VerifyError> {
        match suite {
            Suite::Tait1 => tait1(e, cfg),
            Suite::Tait2 => tait2(e, cfg),
            Suite::Invariance => invariance_check(e, cfg, &|x| x.clone()),
            Suite::Oracle => oracle(e, cfg),
        }
    };
    if cfg.workers <= 1 {
        return corpus.iter().map(one).collect();
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.workers)
        .build()
        .map_err(|e| VerifyError::Worker(e.to_string()))?;
    pool.install(|| corpus.par_iter().map(one).collect())
}

/// Walks may always grow at least four crossings past their start.
fn walk_cap(cfg: &SuiteConfig, c: usize) -> usize {
    cfg.cap.max(c + 4)
}

fn dump(d: &SurfaceDiagram, trace: Option<&MoveTrace>) -> String {
    let mut s = write_diagram(d);
    if let Some(t) = trace {
        s.push_str("# trace\n");
        s.push_str(&t.to_text());
    }
    s
}

/// Alternating, reduced and of minimal size.
pub fn is_tait_candidate(d: &SurfaceDiagram) -> bool {
    d.is_alternating() && d.is_reduced().0 && is_minimal_size(d)
}

fn tait1(e: &CorpusEntry, cfg: &SuiteConfig) -> Result<CheckResult, VerifyError> {
    let d = &e.diagram;
    if !is_tait_candidate(d) {
        return Ok(CheckResult::skip(&e.name, "not alternating, reduced and minimal"));
    }
    let c = d.crossings.len();
    let bounds = crossing_number_bounds(
        d,
        SearchBudget {
            seed: cfg.seed,
            crossing_budget: cfg.budget,
            ..Default::default()
        },
    )?;
    let (trace, steps) = fuzz(d, cfg.steps, cfg.seed, walk_cap(cfg, c))?;
    let lowest = steps.iter().map(|s| s.after.crossings.len()).min().unwrap_or(c);
    let ok = bounds.lower == Some(c) && lowest >= c;
    let detail = format!(
        "C={c} lower={} upper={} walk_min={lowest}",
        bounds.lower.map_or("none".into(), |l| l.to_string()),
        bounds.upper
    );
    Ok(CheckResult::verdict(&e.name, ok, detail, || dump(d, Some(&trace))))
}

/// Twists `d` along each torus curve, walks from the result, and keeps the
/// last diagram on the walk that is again alternating and reduced with the
/// same crossing count.
pub fn tait2_partners(d: &SurfaceDiagram, cfg: &SuiteConfig) -> Result<Vec<(SurfaceDiagram, MoveTrace)>, VerifyError> {
    let c = d.crossings.len();
    let mut out = Vec::new();
    for (k, (curve, dir)) in [(TwistCurve::Alpha, 1), (TwistCurve::Beta, 1), (TwistCurve::Alpha, -1)]
        .into_iter()
        .enumerate()
    {
        let Ok(twisted) = dehn_twist_diagram(d, curve, dir) else {
            continue;
        };
        let (trace, steps) = fuzz(&twisted, cfg.steps, cfg.seed + k as u64, walk_cap(cfg, c))?;
        let mut best = (twisted, 0);
        for (i, s) in steps.iter().enumerate() {
            if s.after.crossings.len() == c && s.after.is_alternating() && s.after.is_reduced().0 {
                best = (s.after.clone(), i + 1);
            }
        }
        let prefix = MoveTrace {
            seed: trace.seed,
            moves: trace.moves[..best.1].to_vec(),
        };
        out.push((best.0, prefix));
    }
    Ok(out)
}

fn tait2(e: &CorpusEntry, cfg: &SuiteConfig) -> Result<CheckResult, VerifyError> {
    let d = &e.diagram;
    if d.genus != 1 || !is_tait_candidate(d) {
        return Ok(CheckResult::skip(&e.name, "needs an alternating reduced minimal torus diagram"));
    }
    let w = writhe(d)?;
    let mut ws = Vec::new();
    let mut bad = None;
    for (p, trace) in tait2_partners(d, cfg)? {
        let wp = writhe(&p)?;
        ws.push(wp);
        if wp != w && bad.is_none() {
            bad = Some((p, trace));
        }
    }
    let detail = format!("writhe {w} partners {ws:?}");
    Ok(CheckResult::verdict(&e.name, bad.is_none(), detail, || {
        let (p, t) = bad.clone().unwrap();
        format!("{}# partner\n{}", dump(d, None), dump(&p, Some(&t)))
    }))
}

/// `(-A^3)^sign`.
pub fn curl_factor(sign: i8) -> LaurentPoly {
    LaurentPoly::monomial(-1, 3 * sign as i32)
}

fn off_diagonal(d: &SurfaceDiagram) -> Result<Vec<i64>, InvariantError> {
    let m = linking_matrix(d)?;
    let mut v: Vec<i64> = (0..m.len())
        .flat_map(|i| (i + 1..m.len()).map(move |j| (i, j)))
        .map(|(i, j)| m[i][j])
        .collect();
    v.sort();
    Ok(v)
}

/// What one step of a walk did to the invariants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepCheck {
    pub bracket_ok: bool,
    pub f_ok: bool,
    pub linking_ok: bool,
}

/// Checks every step of a walk: R2 and R3 keep the bracket, R1 scales it by
/// the curl factor of the curl's sign, and `f` and the pairwise linking
/// numbers never change. `tamper` is applied to each produced diagram
/// before checking, which lets tests inject faults.
pub fn check_walk(
    start: &SurfaceDiagram,
    steps: &[FuzzStep],
    opts: BracketOptions,
    tamper: &dyn Fn(&SurfaceDiagram) -> SurfaceDiagram,
) -> Result<Vec<StepCheck>, InvariantError> {
    let mut prev = start.clone();
    let mut prev_b = bracket_with(&prev, opts)?;
    let f0 = kauffman_f_with(start, opts)?;
    let lk0 = off_diagonal(start)?;
    let mut out = Vec::new();
    for s in steps {
        let after = tamper(&s.after);
        let b = bracket_with(&after, opts)?;
        let bracket_ok = match s.mv {
            Move::R1Add { .. } => b == prev_b.mul_poly(&curl_factor(curl_sign_added(&after, &prev)?)),
            Move::R1Remove { face } => b.mul_poly(&curl_factor(curl_sign_removed(&prev, face)?)) == prev_b,
            _ => b == prev_b,
        };
        out.push(StepCheck {
            bracket_ok,
            f_ok: kauffman_f_with(&after, opts)? == f0,
            linking_ok: off_diagonal(&after)? == lk0,
        });
        prev = after;
        prev_b = b;
    }
    Ok(out)
}

/// Sign of the crossing an R1 add created: the writhe difference.
fn curl_sign_added(after: &SurfaceDiagram, before: &SurfaceDiagram) -> Result<i8, InvariantError> {
    Ok((writhe(after)? - writhe(before)?).signum() as i8)
}

fn curl_sign_removed(before: &SurfaceDiagram, face: usize) -> Result<i8, InvariantError> {
    let faces = before.faces()?;
    let c = faces[face].boundary[0].corner.crossing;
    Ok(crossing_signs(before)?[c])
}

/// The invariance suite on one entry. `tamper` is applied to every diagram
/// the walk produces before checking.
pub fn invariance_check(
    e: &CorpusEntry,
    cfg: &SuiteConfig,
    tamper: &(dyn Fn(&SurfaceDiagram) -> SurfaceDiagram + Sync),
) -> Result<CheckResult, VerifyError> {
    let d = &e.diagram;
    let cap = walk_cap(cfg, d.crossings.len());
    if cap > cfg.budget {
        return Ok(CheckResult::skip(&e.name, "walk would exceed the crossing budget"));
    }
    let (trace, steps) = fuzz(d, cfg.steps, cfg.seed, cap)?;
    let checks = check_walk(d, &steps, opts(cfg), tamper)?;
    let first_bad = checks.iter().position(|c| !(c.bracket_ok && c.f_ok && c.linking_ok));
    let detail = match first_bad {
        None => format!("{} steps", checks.len()),
        Some(i) => format!("step {} ({}) breaks {:?}", i + 1, trace.moves[i], checks[i]),
    };
    Ok(CheckResult::verdict(&e.name, first_bad.is_none(), detail, || {
        let i = first_bad.unwrap();
        let t = MoveTrace {
            seed: trace.seed,
            moves: trace.moves[..=i].to_vec(),
        };
        dump(d, Some(&t))
    }))
}

fn oracle(e: &CorpusEntry, cfg: &SuiteConfig) -> Result<CheckResult, VerifyError> {
    let d = &e.diagram;
    if d.crossings.len() > 10 {
        return Ok(CheckResult::skip(&e.name, "more than 10 crossings"));
    }
    let ok = bracket_with(d, opts(cfg))? == bracket_skein(d)?;
    Ok(CheckResult::verdict(&e.name, ok, format!("C={}", d.crossings.len()), || dump(d, None)))
}
