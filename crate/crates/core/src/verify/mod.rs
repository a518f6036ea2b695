//! Sampling-based property checks for bicombings.
//!
//! Every check draws `tuples` independent tuples from a per-tuple ChaCha
//! stream keyed by `(seed, index)`, scans a grid of parameters for each, and
//! keeps the largest violation. Ties go to the smallest tuple index, so the
//! parallel reduction gives the same report as a sequential run.
//!
//! A failing check refines the parameters of its worst tuple by a compass
//! search that halves its step until the violation stops improving by more
//! than `tol / 10`.

mod checks;
mod matrix;
mod report;
mod rigidity;
mod thresholds;

pub use checks::{
    check_conical, check_consistent, check_convex, check_geodesic, check_midpoint_property,
    check_reversible, consistency_deviation, convexity_defect, DEFAULT_TAU_STEPS,
};
pub use matrix::{
    builtin_matrix, implication_violations, run_matrix, run_row, Builtin, Distinctness, MatrixCell,
    MatrixConfig, MatrixRow, PropertyMatrix, DISTINCT_GAP,
};
pub use report::{Property, PropertyReport, Witness};
pub use rigidity::{check_local_linearity, mt_set, MtCluster};
pub use thresholds::{delta_thresholds, Threshold};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::bicombings::{Bicombing, WitnessPoint};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SampleConfig {
    pub seed: u64,
    pub tuples: usize,
    pub t_grid: usize,
    pub tol: f64,
}

impl SampleConfig {
    pub fn new(seed: u64, tuples: usize, t_grid: usize, tol: f64) -> Result<Self> {
        if tuples == 0 {
            return Err(Error::Config("tuples must be >= 1".into()));
        }
        if t_grid < 3 {
            return Err(Error::Config(format!("t_grid {t_grid} must be >= 3")));
        }
        if !(tol.is_finite() && tol > 0.0) {
            return Err(Error::Config(format!("tol {tol} must be > 0")));
        }
        Ok(SampleConfig {
            seed,
            tuples,
            t_grid,
            tol,
        })
    }

    /// `t_i = i / (t_grid - 1)`.
    pub fn grid(&self) -> Vec<f64> {
        let n = self.t_grid - 1;
        (0..=n).map(|i| i as f64 / n as f64).collect()
    }
}

impl Default for SampleConfig {
    fn default() -> Self {
        SampleConfig {
            seed: 42,
            tuples: 20_000,
            t_grid: 33,
            tol: 1e-9,
        }
    }
}

pub(crate) fn tuple_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Points and auxiliary random parameters drawn for one tuple.
pub(crate) struct Draw<P> {
    pub points: Vec<P>,
    pub params: Vec<f64>,
}

/// Worst violation found while scanning one tuple.
pub(crate) struct Scan {
    pub violation: f64,
    pub ts: Vec<f64>,
    pub evaluated: u64,
}

impl Scan {
    pub fn new() -> Self {
        Scan {
            violation: f64::NEG_INFINITY,
            ts: Vec::new(),
            evaluated: 0,
        }
    }

    pub fn offer(&mut self, violation: f64, ts: &[f64]) {
        let violation = if violation.is_nan() {
            f64::INFINITY
        } else {
            violation
        };
        self.evaluated += 1;
        if violation > self.violation {
            self.violation = violation;
            self.ts = ts.to_vec();
        }
    }
}

struct Candidate<P> {
    violation: f64,
    index: u64,
    points: Vec<P>,
    ts: Vec<f64>,
}

fn better<P>(a: Option<Candidate<P>>, b: Option<Candidate<P>>) -> Option<Candidate<P>> {
    match (a, b) {
        (None, x) | (x, None) => x,
        (Some(a), Some(b)) => {
            if a.violation > b.violation || (a.violation == b.violation && a.index < b.index) {
                Some(a)
            } else {
                Some(b)
            }
        }
    }
}

/// How a property is probed: drawing a tuple, scanning it, and re-evaluating
/// a single parameter choice during witness refinement.
pub(crate) struct Probe<D, S, K> {
    pub property: Property,
    pub draw: D,
    pub scan: S,
    pub kernel: K,
    /// Number of leading t-values the refinement may move.
    pub free: usize,
}

pub(crate) fn run_probe<B, D, S, K>(
    b: &B,
    cfg: &SampleConfig,
    probe: Probe<D, S, K>,
) -> Result<PropertyReport>
where
    B: Bicombing,
    D: Fn(&mut ChaCha8Rng) -> Result<Draw<B::Point>> + Sync,
    S: Fn(&Draw<B::Point>) -> Scan + Sync,
    K: Fn(&[B::Point], &[f64]) -> f64 + Sync,
{
    let (worst, evaluated) = (0..cfg.tuples as u64)
        .into_par_iter()
        .map(|index| -> Result<(Option<Candidate<B::Point>>, u64)> {
            let mut rng = tuple_rng(cfg.seed, index);
            let draw = (probe.draw)(&mut rng)?;
            let scan = (probe.scan)(&draw);
            let candidate = Candidate {
                violation: scan.violation,
                index,
                points: draw.points,
                ts: scan.ts,
            };
            Ok((Some(candidate), scan.evaluated))
        })
        .try_reduce(|| (None, 0), |a, b| Ok((better(a.0, b.0), a.1 + b.1)))?;

    let mut worst = worst.expect("at least one tuple");
    let mut violation = worst.violation.max(0.0);
    if violation > cfg.tol && violation.is_finite() && probe.free > 0 {
        let (ts, refined) = refine(&probe.kernel, &worst.points, &worst.ts, probe.free, cfg);
        if refined > violation {
            violation = refined;
            worst.ts = ts;
        }
    }
    let passed = violation <= cfg.tol;
    let witness = (!passed).then(|| Witness {
        tuple_index: worst.index,
        points: worst.points.iter().map(WitnessPoint::coords).collect(),
        t_values: worst.ts.clone(),
    });
    Ok(PropertyReport {
        property: probe.property,
        bicombing: b.name(),
        passed,
        worst_violation: violation,
        tol: cfg.tol,
        witness,
        samples_evaluated: evaluated,
        seed: cfg.seed,
    })
}

fn refine<P, K>(
    kernel: &K,
    points: &[P],
    start: &[f64],
    free: usize,
    cfg: &SampleConfig,
) -> (Vec<f64>, f64)
where
    K: Fn(&[P], &[f64]) -> f64,
{
    let mut ts = start.to_vec();
    let mut best = kernel(points, &ts);
    if !best.is_finite() {
        return (ts, best);
    }
    let mut step = 0.5 / (cfg.t_grid - 1) as f64;
    let min_improvement = cfg.tol / 10.0;
    let mut rounds = 0;
    while step > 1e-9 && rounds < 500 {
        rounds += 1;
        let mut improved = false;
        for k in 0..free.min(ts.len()) {
            for sign in [1.0, -1.0] {
                let mut trial = ts.clone();
                trial[k] = (trial[k] + sign * step).clamp(0.0, 1.0);
                let v = kernel(points, &trial);
                if v.is_finite() && v > best + min_improvement {
                    best = v;
                    ts = trial;
                    improved = true;
                }
            }
        }
        if !improved {
            step *= 0.5;
        }
    }
    (ts, best)
}
