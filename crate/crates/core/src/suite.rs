//! Named verification campaigns. Each suite runs its checks, writes one JSON
//! file per property report plus `summary.json` and `summary.txt`, and
//! compares what it observed with what is expected. Expected failures count
//! as success.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::bicombings::{tau_x1, Bicombing, Delta, FoldedX1, Linear, SigmaDelta};
use crate::error::{Error, Result};
use crate::funcspace::{horizontal_bicombing, horizontal_sqrt_identity, MonotoneFn, SQRT_MESH};
use crate::midpoint::{midpoint_trace, reversibilize, MidpointConfig};
use crate::spaces::{Point2, SpaceId};
use crate::verify::{
    check_conical, check_geodesic, check_local_linearity, check_midpoint_property,
    check_reversible, consistency_deviation, delta_thresholds, mt_set, run_matrix, Builtin,
    MatrixConfig, PropertyMatrix, PropertyReport, SampleConfig, DEFAULT_TAU_STEPS,
};

/// Grid size used by every suite.
pub const SUITE_T_GRID: usize = 33;
/// Grid resolution for the max-norm midstate checks.
pub const MT_RESOLUTION: usize = 2001;
pub const MT_TOL: f64 = 1e-6;
/// Random pairs used for the midpoint contraction check.
pub const CONTRACTION_PAIRS: u64 = 1000;
/// Pointwise bound for the closed-form horizontal geodesic.
pub const CLOSED_FORM_TOL: f64 = 5e-4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SuiteName {
    CounterexampleSigmaDelta,
    CounterexampleSigmaTilde,
    #[serde(rename = "counterexample_X1")]
    CounterexampleX1,
    #[serde(rename = "counterexample_tau_X1")]
    CounterexampleTauX1,
    ReversibilizeDemo,
    FuncspaceDemo,
    Rigidity,
    Thresholds,
    All,
}

impl SuiteName {
    pub const ALL: [SuiteName; 9] = [
        SuiteName::CounterexampleSigmaDelta,
        SuiteName::CounterexampleSigmaTilde,
        SuiteName::CounterexampleX1,
        SuiteName::CounterexampleTauX1,
        SuiteName::ReversibilizeDemo,
        SuiteName::FuncspaceDemo,
        SuiteName::Rigidity,
        SuiteName::Thresholds,
        SuiteName::All,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            SuiteName::CounterexampleSigmaDelta => "counterexample_sigma_delta",
            SuiteName::CounterexampleSigmaTilde => "counterexample_sigma_tilde",
            SuiteName::CounterexampleX1 => "counterexample_X1",
            SuiteName::CounterexampleTauX1 => "counterexample_tau_X1",
            SuiteName::ReversibilizeDemo => "reversibilize_demo",
            SuiteName::FuncspaceDemo => "funcspace_demo",
            SuiteName::Rigidity => "rigidity",
            SuiteName::Thresholds => "thresholds",
            SuiteName::All => "all",
        }
    }

    fn parts(self) -> Vec<Part> {
        match self {
            SuiteName::CounterexampleSigmaDelta => vec![Part::SigmaDelta],
            SuiteName::CounterexampleSigmaTilde => vec![Part::SigmaTilde],
            SuiteName::CounterexampleX1 => vec![Part::X1],
            SuiteName::CounterexampleTauX1 => vec![Part::TauX1],
            SuiteName::ReversibilizeDemo => vec![Part::Reversibilize],
            SuiteName::FuncspaceDemo => vec![Part::Funcspace],
            SuiteName::Rigidity => vec![Part::Rigidity],
            SuiteName::Thresholds => vec![Part::Thresholds],
            SuiteName::All => vec![
                Part::SigmaDelta,
                Part::SigmaTilde,
                Part::X1,
                Part::TauX1,
                Part::Reversibilize,
                Part::Funcspace,
                Part::Rigidity,
                Part::Thresholds,
            ],
        }
    }
}

impl fmt::Display for SuiteName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SuiteName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SuiteName::ALL
            .into_iter()
            .find(|n| n.as_str() == s)
            .ok_or_else(|| Error::Unknown {
                kind: "suite",
                name: s.to_string(),
            })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Part {
    SigmaDelta,
    SigmaTilde,
    X1,
    TauX1,
    Reversibilize,
    Funcspace,
    Rigidity,
    Thresholds,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteSpec {
    pub name: SuiteName,
    pub delta: f64,
    pub seed: u64,
    pub tuples: usize,
    pub tol: f64,
    pub out_dir: PathBuf,
}

impl SuiteSpec {
    pub fn new(name: SuiteName, out_dir: impl Into<PathBuf>) -> Self {
        let sample = SampleConfig::default();
        SuiteSpec {
            name,
            delta: Delta::MAX,
            seed: sample.seed,
            tuples: sample.tuples,
            tol: sample.tol,
            out_dir: out_dir.into(),
        }
    }
}

/// A suite-level check that is not a plain property report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub name: String,
    pub expected: bool,
    pub observed: bool,
    pub detail: serde_json::Value,
}

impl CheckRecord {
    fn new(
        name: impl Into<String>,
        expected: bool,
        observed: bool,
        detail: serde_json::Value,
    ) -> Self {
        CheckRecord {
            name: name.into(),
            expected,
            observed,
            detail,
        }
    }
}

/// A property report with the outcome the suite expects of it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExpectedReport {
    pub expected: bool,
    pub report: PropertyReport,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteSummary {
    pub suite: SuiteName,
    pub delta: f64,
    pub seed: u64,
    pub tuples: usize,
    pub tol: f64,
    pub matrix: Option<PropertyMatrix>,
    pub reports: Vec<ExpectedReport>,
    pub checks: Vec<CheckRecord>,
    pub deviations: Vec<String>,
    pub matches: bool,
}

impl SuiteSummary {
    /// 0 when every observation matches its expectation.
    pub fn exit_code(&self) -> i32 {
        if self.matches {
            0
        } else {
            1
        }
    }
}

impl fmt::Display for SuiteSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "suite {} (delta={}, seed={}, tuples={}, tol={:e})",
            self.suite, self.delta, self.seed, self.tuples, self.tol
        )?;
        if let Some(m) = &self.matrix {
            writeln!(f)?;
            write!(f, "{m}")?;
        }
        if !self.reports.is_empty() {
            writeln!(f)?;
            for r in &self.reports {
                let ok = if r.expected == r.report.passed {
                    " "
                } else {
                    "!"
                };
                writeln!(f, "{ok} {}", r.report)?;
            }
        }
        if !self.checks.is_empty() {
            writeln!(f)?;
            for c in &self.checks {
                let ok = if c.expected == c.observed { " " } else { "!" };
                writeln!(
                    f,
                    "{ok} {:<48} {}",
                    c.name,
                    if c.observed { "pass" } else { "FAIL" }
                )?;
            }
        }
        writeln!(f)?;
        if self.matches {
            writeln!(f, "all observations match expectations")
        } else {
            writeln!(f, "deviations:")?;
            for d in &self.deviations {
                writeln!(f, "  {d}")?;
            }
            Ok(())
        }
    }
}

/// Runs a suite, writes its reports into `spec.out_dir` and returns the
/// summary.
pub fn run_suite(spec: &SuiteSpec) -> Result<SuiteSummary> {
    let delta = Delta::new(spec.delta)?;
    let sample = SampleConfig::new(spec.seed, spec.tuples, SUITE_T_GRID, spec.tol)?;
    let mcfg = MatrixConfig {
        sample,
        delta,
        tau_steps: DEFAULT_TAU_STEPS.to_vec(),
    };
    fs::create_dir_all(&spec.out_dir).map_err(|e| Error::io(&spec.out_dir, e))?;

    let parts = spec.name.parts();
    let mut builtins = Vec::new();
    for part in &parts {
        builtins.extend(match part {
            Part::SigmaDelta => vec![Builtin::SigmaDelta, Builtin::SigmaZero],
            Part::SigmaTilde => vec![Builtin::SigmaTilde],
            Part::X1 => vec![Builtin::SigmaX1],
            Part::TauX1 => vec![Builtin::TauX1],
            Part::Funcspace => vec![Builtin::FuncVertical, Builtin::FuncHorizontal],
            _ => vec![],
        });
    }
    let matrix = if builtins.is_empty() {
        None
    } else {
        Some(run_matrix(&builtins, &mcfg)?)
    };

    let mut reports = Vec::new();
    let mut checks = Vec::new();
    for part in parts {
        match part {
            Part::SigmaDelta => checks.push(sigma_delta_witness(delta)?),
            Part::X1 => checks.push(x1_reversal_witness()?),
            Part::TauX1 => checks.extend(tau_witnesses()?),
            Part::Reversibilize => {
                reports.extend(reversibilize_reports(delta, &sample)?);
                checks.push(midpoint_contraction(spec.seed)?);
            }
            Part::Funcspace => checks.push(closed_form_check()),
            Part::Rigidity => {
                checks.extend(rigidity_checks(spec.seed)?);
                reports.extend(local_linearity_reports(delta, &sample)?);
            }
            Part::Thresholds => checks.push(threshold_check(delta)?),
            Part::SigmaTilde => {}
        }
    }

    let mut deviations = matrix
        .as_ref()
        .map(PropertyMatrix::deviations)
        .unwrap_or_default();
    for r in &reports {
        if r.expected != r.report.passed {
            deviations.push(format!(
                "{} {}: expected {}, observed {} (worst {:e})",
                r.report.bicombing,
                r.report.property,
                verdict(r.expected),
                verdict(r.report.passed),
                r.report.worst_violation
            ));
        }
    }
    for c in &checks {
        if c.expected != c.observed {
            deviations.push(format!(
                "{}: expected {}, observed {}",
                c.name,
                verdict(c.expected),
                verdict(c.observed)
            ));
        }
    }

    let summary = SuiteSummary {
        suite: spec.name,
        delta: spec.delta,
        seed: spec.seed,
        tuples: spec.tuples,
        tol: spec.tol,
        matches: deviations.is_empty(),
        matrix,
        reports,
        checks,
        deviations,
    };
    write_outputs(&spec.out_dir, &summary)?;
    Ok(summary)
}

fn verdict(v: bool) -> &'static str {
    if v {
        "pass"
    } else {
        "fail"
    }
}

fn file_stem(report: &PropertyReport) -> String {
    let raw = format!("{}.{}", report.bicombing, report.property);
    raw.chars()
        .map(|c| {
            if c.is_ascii_alphanumeric() || c == '.' || c == '_' || c == '-' {
                c
            } else {
                '_'
            }
        })
        .collect()
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).map_err(|e| Error::io(path, e))
}

fn write_outputs(dir: &Path, summary: &SuiteSummary) -> Result<()> {
    let mut all: Vec<&PropertyReport> = Vec::new();
    if let Some(m) = &summary.matrix {
        all.extend(
            m.rows
                .iter()
                .flat_map(|r| r.cells.iter().map(|c| &c.report)),
        );
    }
    all.extend(summary.reports.iter().map(|r| &r.report));
    for report in all {
        write_file(
            &dir.join(format!("{}.json", file_stem(report))),
            &report.to_json(),
        )?;
    }
    write_file(
        &dir.join("summary.json"),
        &serde_json::to_string_pretty(summary)?,
    )?;
    write_file(&dir.join("summary.txt"), &summary.to_string())
}

fn sigma_delta_witness(delta: Delta) -> Result<CheckRecord> {
    let b = SigmaDelta::new(delta);
    let p = Point2::new(-3.0, 0.0);
    let q = Point2::new(3.0, 0.0);
    let (s1, s2) = (1.0 / 6.0, 5.0 / 6.0);
    let worst = (0..=32)
        .map(|k| consistency_deviation(&b, &p, &q, s1, s2, k as f64 / 32.0))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .fold(0.0, f64::max);
    let expected_gap = delta.value() > 0.0;
    Ok(CheckRecord::new(
        "sigma_delta consistency gap at (-3,0),(3,0),1/6,5/6",
        expected_gap,
        worst >= 1e-3,
        json!({ "worst_deviation": worst, "threshold": 1e-3 }),
    ))
}

fn x1_reversal_witness() -> Result<CheckRecord> {
    let b = FoldedX1::sigma();
    let p = Point2::new(-2.0, 1.0);
    let q = Point2::new(0.0, 0.0);
    let a = b.eval(&p, &q, 0.75)?;
    let c = b.eval(&q, &p, 0.25)?;
    let gap = SpaceId::Linf.dist(a, c);
    Ok(CheckRecord::new(
        "sigma_X1 reversal gap 1/2 at (-2,1),(0,0),3/4",
        true,
        (gap - 0.5).abs() <= 1e-12,
        json!({ "forward": a, "backward": c, "gap": gap }),
    ))
}

fn tau_witnesses() -> Result<Vec<CheckRecord>> {
    let p = Point2::new(-1.5, 0.5);
    let q = Point2::new(0.0, 0.5);
    let cases = [
        (
            "tau_X1((-3/2,1/2),(0,1/2),5/12) = (-7/8,1/8)",
            p,
            q,
            5.0 / 12.0,
            Point2::new(-0.875, 0.125),
        ),
        (
            "tau_X1((0,1/2),(-3/2,1/2),7/12) = (-7/8,1/48)",
            q,
            p,
            7.0 / 12.0,
            Point2::new(-0.875, 1.0 / 48.0),
        ),
    ];
    cases
        .into_iter()
        .map(|(name, a, b, t, want)| {
            let got = tau_x1(a, b, t)?;
            let err = (got.x - want.x).abs().max((got.y - want.y).abs());
            Ok(CheckRecord::new(
                name,
                true,
                err <= 1e-12,
                json!({ "computed": got, "expected": want, "error": err }),
            ))
        })
        .collect()
}

fn reversibilize_reports(delta: Delta, sample: &SampleConfig) -> Result<Vec<ExpectedReport>> {
    let cfg = MidpointConfig::default();
    let tilde = reversibilize(SigmaDelta::tilde(delta), cfg);
    let x1 = reversibilize(FoldedX1::sigma(), cfg);
    let expect = |report: PropertyReport| ExpectedReport {
        expected: true,
        report,
    };
    Ok(vec![
        expect(check_reversible(&tilde, sample)?),
        expect(check_midpoint_property(&tilde, sample)?),
        expect(check_geodesic(&x1, sample)?),
        expect(check_conical(&x1, sample)?),
        expect(check_reversible(&x1, sample)?),
        expect(check_midpoint_property(&x1, sample)?),
    ])
}

/// `d(x_n, y_n) <= 2⁻ⁿ d(x, y) (1 + 1e-9)` along the midpoint iteration of
/// `sigma_X1` for random pairs.
pub fn midpoint_contraction(seed: u64) -> Result<CheckRecord> {
    let b = FoldedX1::sigma();
    let cfg = MidpointConfig::default();
    let mut worst_ratio: f64 = 0.0;
    let mut max_iterations = 0;
    for index in 0..CONTRACTION_PAIRS {
        let mut rng = crate::verify::tuple_rng(seed, index);
        let x = b.sample_point(&mut rng)?;
        let y = b.sample_point(&mut rng)?;
        let trace = midpoint_trace(&b, &x, &y, &cfg)?;
        max_iterations = max_iterations.max(trace.iterations());
        let d0 = trace.gaps[0];
        for (n, gap) in trace.gaps.iter().enumerate() {
            let bound = d0 * 0.5f64.powi(n as i32);
            if bound > 0.0 {
                worst_ratio = worst_ratio.max(gap / bound);
            } else if *gap > 0.0 {
                worst_ratio = f64::INFINITY;
            }
        }
    }
    Ok(CheckRecord::new(
        "sigma_X1 midpoint gaps halve every step",
        true,
        worst_ratio <= 1.0 + 1e-9,
        json!({
            "pairs": CONTRACTION_PAIRS,
            "worst_gap_over_bound": worst_ratio,
            "max_iterations": max_iterations,
        }),
    ))
}

/// Largest pointwise error of the horizontal geodesic from the graded `√x`
/// to the identity against its closed form, at `t`.
pub fn closed_form_error(t: f64) -> f64 {
    let f = MonotoneFn::sqrt_graded(SQRT_MESH);
    let g = MonotoneFn::identity();
    let h = horizontal_bicombing(&f, &g, t);
    (0..=4096)
        .map(|k| k as f64 / 4096.0)
        .map(|x| (h.eval(x) - horizontal_sqrt_identity(t, x)).abs())
        .fold(0.0, f64::max)
}

fn closed_form_check() -> CheckRecord {
    let err = closed_form_error(0.5);
    CheckRecord::new(
        "horizontal geodesic sqrt->identity matches closed form at t=1/2",
        true,
        err <= CLOSED_FORM_TOL,
        json!({ "max_error": err, "bound": CLOSED_FORM_TOL, "mesh": SQRT_MESH }),
    )
}

fn rigidity_checks(seed: u64) -> Result<Vec<CheckRecord>> {
    let mut out = Vec::new();
    let p = Point2::new(1.0, 1.0);
    for t in [0.25, 0.5, 0.75] {
        let clusters = mt_set(SpaceId::Linf, p, -1.0 * p, t, MT_RESOLUTION, MT_TOL)?;
        let want = (1.0 - 2.0 * t) * p;
        let err = clusters.first().map_or(f64::INFINITY, |c| {
            SpaceId::Linf.dist(c.representative, want)
        });
        out.push(CheckRecord::new(
            format!("linf M^(t)((1,1),(-1,-1)) singleton at t={t}"),
            true,
            clusters.len() == 1 && err <= MT_TOL,
            json!({
                "clusters": clusters.len(),
                "representative": clusters.first().map(|c| c.representative),
                "error": err,
            }),
        ));
    }

    let clusters = mt_set(
        SpaceId::Linf,
        Point2::new(1.0, 0.0),
        Point2::new(-1.0, 0.0),
        0.5,
        MT_RESOLUTION,
        MT_TOL,
    )?;
    let segment = clusters.len() == 1 && {
        let c = &clusters[0];
        c.lower.x.abs() <= MT_TOL
            && c.upper.x.abs() <= MT_TOL
            && c.lower.y <= -1.0 + MT_TOL
            && c.upper.y >= 1.0 - MT_TOL
    };
    out.push(CheckRecord::new(
        "linf M^(1/2)((1,0),(-1,0)) is the segment {0}x[-1,1]",
        true,
        segment,
        json!({
            "clusters": clusters.len(),
            "lower": clusters.first().map(|c| c.lower),
            "upper": clusters.first().map(|c| c.upper),
        }),
    ));

    let mut worst: f64 = 0.0;
    let mut singletons = true;
    for index in 0..100 {
        let mut rng = crate::verify::tuple_rng(seed, index);
        let p = Point2::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
        let q = Point2::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
        let t: f64 = rng.gen_range(0.0..=1.0);
        let clusters = mt_set(SpaceId::Euclid, p, q, t, 401, MT_TOL)?;
        singletons &= clusters.len() == 1;
        if let Some(c) = clusters.first() {
            worst = worst.max(SpaceId::Euclid.dist(c.representative, p.lerp(q, t)));
        }
    }
    out.push(CheckRecord::new(
        "euclid M^(t) is the affine point for 100 random triples",
        true,
        singletons && worst <= MT_TOL,
        json!({ "worst_error": worst, "all_single_clusters": singletons }),
    ));
    Ok(out)
}

fn local_linearity_reports(delta: Delta, sample: &SampleConfig) -> Result<Vec<ExpectedReport>> {
    let expect = |report: PropertyReport| ExpectedReport {
        expected: true,
        report,
    };
    Ok(vec![
        expect(check_local_linearity(
            &SigmaDelta::new(delta),
            Point2::new(0.0, 1.0 / 64.0),
            1.0 / 256.0,
            sample,
        )?),
        expect(check_local_linearity(
            &FoldedX1::sigma(),
            Point2::new(0.1, 0.0),
            0.2,
            sample,
        )?),
        expect(check_local_linearity(
            &Linear::plane(SpaceId::Hybrid),
            Point2::ORIGIN,
            1.0,
            sample,
        )?),
    ])
}

fn threshold_check(delta: Delta) -> Result<CheckRecord> {
    let th = delta_thresholds(delta.value())?;
    Ok(CheckRecord::new(
        format!(
            "all five closing bounds positive at delta={}",
            delta.value()
        ),
        true,
        th.iter().all(|t| t.positive),
        serde_json::to_value(&th)?,
    ))
}
