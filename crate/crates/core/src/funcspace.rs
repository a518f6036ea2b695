//! Strictly increasing normalized functions on `[0, 1]` under the L¹ metric.
//!
//! Functions are stored as piecewise-linear breakpoint lists. On that class
//! inversion is a coordinate swap and the L¹ distance has a closed form, so
//! both bicombings below are computed without numerical inversion:
//!
//! * vertical: `(f, g, t) ↦ (1-t)f + tg`
//! * horizontal: `(f, g, t) ↦ φ((1-t)φ(f) + tφ(g))` with `φ(f) = f⁻¹`

use std::fmt;
use std::str::FromStr;

use rand::Rng;

use crate::bicombings::{Bicombing, WitnessPoint};
use crate::error::{Error, Result};

/// Default resolution of the graded √x mesh.
pub const SQRT_MESH: usize = 256;

#[derive(Debug, Clone, PartialEq)]
pub struct MonotoneFn {
    breakpoints: Vec<(f64, f64)>,
}

impl MonotoneFn {
    pub fn new(breakpoints: Vec<(f64, f64)>) -> Result<Self> {
        let n = breakpoints.len();
        if n < 2 {
            return Err(Error::Monotone("need at least two breakpoints".into()));
        }
        if breakpoints[0] != (0.0, 0.0) || breakpoints[n - 1] != (1.0, 1.0) {
            return Err(Error::Monotone(
                "must start at (0, 0) and end at (1, 1)".into(),
            ));
        }
        for w in breakpoints.windows(2) {
            if !(w[0].0 < w[1].0 && w[0].1 < w[1].1) {
                return Err(Error::Monotone(format!(
                    "breakpoints {:?} and {:?} are not strictly increasing",
                    w[0], w[1]
                )));
            }
        }
        Ok(MonotoneFn { breakpoints })
    }

    /// Builds from values that are increasing up to rounding, dropping any
    /// interior breakpoint that would break strict monotonicity.
    fn from_rounded(raw: Vec<(f64, f64)>) -> Self {
        let mut out: Vec<(f64, f64)> = Vec::with_capacity(raw.len());
        out.push((0.0, 0.0));
        let last = raw.len() - 1;
        for &(x, v) in &raw[1..last] {
            let prev = out[out.len() - 1];
            if x > prev.0 && v > prev.1 && x < 1.0 && v < 1.0 {
                out.push((x, v));
            }
        }
        out.push((1.0, 1.0));
        MonotoneFn { breakpoints: out }
    }

    pub fn identity() -> Self {
        MonotoneFn {
            breakpoints: vec![(0.0, 0.0), (1.0, 1.0)],
        }
    }

    /// Piecewise-linear interpolant of `h` at the given strictly increasing
    /// interior nodes.
    pub fn interpolate(nodes: &[f64], h: impl Fn(f64) -> f64) -> Result<Self> {
        let mut bp = Vec::with_capacity(nodes.len() + 2);
        bp.push((0.0, 0.0));
        bp.extend(nodes.iter().map(|&x| (x, h(x))));
        bp.push((1.0, 1.0));
        MonotoneFn::new(bp)
    }

    /// `√x` interpolated on the graded mesh `x_i = (i/n)²`, whose values
    /// `i/n` are uniform.
    pub fn sqrt_graded(n: usize) -> Self {
        let bp = (0..=n)
            .map(|i| {
                let s = i as f64 / n as f64;
                (s * s, s)
            })
            .collect();
        MonotoneFn { breakpoints: bp }
    }

    /// `x²` on the uniform mesh of `n` cells (the inverse of [`sqrt_graded`]).
    ///
    /// [`sqrt_graded`]: MonotoneFn::sqrt_graded
    pub fn square_uniform(n: usize) -> Self {
        MonotoneFn::sqrt_graded(n).invert()
    }

    /// A random function with `1..=max_inner` interior breakpoints.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, max_inner: usize) -> Self {
        let k = rng.gen_range(1..=max_inner.max(1));
        let mut xs: Vec<f64> = (0..k).map(|_| rng.gen_range(0.001..0.999)).collect();
        let mut vs: Vec<f64> = (0..k).map(|_| rng.gen_range(0.001..0.999)).collect();
        xs.sort_by(f64::total_cmp);
        vs.sort_by(f64::total_cmp);
        let mut raw = vec![(0.0, 0.0)];
        raw.extend(xs.into_iter().zip(vs));
        raw.push((1.0, 1.0));
        MonotoneFn::from_rounded(raw)
    }

    pub fn breakpoints(&self) -> &[(f64, f64)] {
        &self.breakpoints
    }

    pub fn eval(&self, x: f64) -> f64 {
        let bp = &self.breakpoints;
        let x = x.clamp(0.0, 1.0);
        let i = bp.partition_point(|&(bx, _)| bx < x);
        if bp[i].0 == x {
            return bp[i].1;
        }
        let (x0, v0) = bp[i - 1];
        let (x1, v1) = bp[i];
        v0 + (x - x0) / (x1 - x0) * (v1 - v0)
    }

    pub fn is_strictly_increasing(&self) -> bool {
        self.breakpoints
            .windows(2)
            .all(|w| w[0].0 < w[1].0 && w[0].1 < w[1].1)
    }

    /// `φ(f) = f⁻¹`.
    pub fn invert(&self) -> Self {
        MonotoneFn {
            breakpoints: self.breakpoints.iter().map(|&(x, v)| (v, x)).collect(),
        }
    }
}

pub fn eval_fn(f: &MonotoneFn, x: f64) -> f64 {
    f.eval(x)
}

pub fn invert(f: &MonotoneFn) -> MonotoneFn {
    f.invert()
}

/// Sorted union of both breakpoint abscissae.
fn merged_grid(f: &MonotoneFn, g: &MonotoneFn) -> Vec<f64> {
    let (a, b) = (&f.breakpoints, &g.breakpoints);
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let next = match (a.get(i), b.get(j)) {
            (Some(p), Some(q)) if p.0 == q.0 => {
                i += 1;
                j += 1;
                p.0
            }
            (Some(p), Some(q)) if p.0 < q.0 => {
                i += 1;
                p.0
            }
            (Some(p), None) => {
                i += 1;
                p.0
            }
            (_, Some(q)) => {
                j += 1;
                q.0
            }
            (None, None) => unreachable!(),
        };
        out.push(next);
    }
    out
}

/// `∫₀¹ |f − g|`, exact for piecewise-linear functions.
pub fn l1_distance(f: &MonotoneFn, g: &MonotoneFn) -> f64 {
    let grid = merged_grid(f, g);
    let diffs: Vec<f64> = grid.iter().map(|&x| f.eval(x) - g.eval(x)).collect();
    grid.windows(2)
        .zip(diffs.windows(2))
        .map(|(xs, hs)| {
            let width = xs[1] - xs[0];
            let (h0, h1) = (hs[0], hs[1]);
            if h0 * h1 >= 0.0 {
                0.5 * width * (h0 + h1).abs()
            } else {
                // sign change: two triangles meeting at the root
                0.5 * width * (h0 * h0 + h1 * h1) / (h0.abs() + h1.abs())
            }
        })
        .sum()
}

/// `(1-t)f + tg` on the merged grid.
pub fn vertical_bicombing(f: &MonotoneFn, g: &MonotoneFn, t: f64) -> MonotoneFn {
    if t <= 0.0 {
        return f.clone();
    }
    if t >= 1.0 {
        return g.clone();
    }
    let raw = merged_grid(f, g)
        .into_iter()
        .map(|x| (x, (1.0 - t) * f.eval(x) + t * g.eval(x)))
        .collect();
    MonotoneFn::from_rounded(raw)
}

/// `φ((1-t)φ(f) + tφ(g))`.
pub fn horizontal_bicombing(f: &MonotoneFn, g: &MonotoneFn, t: f64) -> MonotoneFn {
    if t <= 0.0 {
        return f.clone();
    }
    if t >= 1.0 {
        return g.clone();
    }
    vertical_bicombing(&f.invert(), &g.invert(), t).invert()
}

/// Closed form of the horizontal geodesic from `√x` to the identity.
pub fn horizontal_sqrt_identity(t: f64, x: f64) -> f64 {
    if t >= 1.0 {
        return x;
    }
    (-t + (4.0 * (1.0 - t) * x + t * t).sqrt()) / (2.0 * (1.0 - t))
}

impl WitnessPoint for MonotoneFn {
    fn coords(&self) -> Vec<f64> {
        self.breakpoints.iter().flat_map(|&(x, v)| [x, v]).collect()
    }
}

/// Two-column text form: one `x v` pair per line.
impl fmt::Display for MonotoneFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &(x, v) in &self.breakpoints {
            writeln!(f, "{x} {v}")?;
        }
        Ok(())
    }
}

impl FromStr for MonotoneFn {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut bp = Vec::new();
        for (lineno, line) in s.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let mut cols = line.split_whitespace();
            let parse = |c: Option<&str>| -> Result<f64> {
                c.ok_or_else(|| Error::Monotone(format!("line {}: missing column", lineno + 1)))?
                    .parse()
                    .map_err(|e| Error::Monotone(format!("line {}: {e}", lineno + 1)))
            };
            let x = parse(cols.next())?;
            let v = parse(cols.next())?;
            if cols.next().is_some() {
                return Err(Error::Monotone(format!(
                    "line {}: extra columns",
                    lineno + 1
                )));
            }
            bp.push((x, v));
        }
        MonotoneFn::new(bp)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Interpolation {
    Vertical,
    Horizontal,
}

/// The two bicombings on `(A, ‖·‖₁)`.
#[derive(Debug, Clone)]
pub struct FunctionBicombing {
    kind: Interpolation,
    max_inner: usize,
}

impl FunctionBicombing {
    pub fn vertical() -> Self {
        FunctionBicombing {
            kind: Interpolation::Vertical,
            max_inner: 6,
        }
    }

    pub fn horizontal() -> Self {
        FunctionBicombing {
            kind: Interpolation::Horizontal,
            max_inner: 6,
        }
    }

    pub fn kind(&self) -> Interpolation {
        self.kind
    }
}

impl Bicombing for FunctionBicombing {
    type Point = MonotoneFn;

    fn name(&self) -> String {
        match self.kind {
            Interpolation::Vertical => "funcspace_vertical".into(),
            Interpolation::Horizontal => "funcspace_horizontal".into(),
        }
    }

    fn distance(&self, a: &MonotoneFn, b: &MonotoneFn) -> f64 {
        l1_distance(a, b)
    }

    fn eval(&self, p: &MonotoneFn, q: &MonotoneFn, t: f64) -> Result<MonotoneFn> {
        Ok(match self.kind {
            Interpolation::Vertical => vertical_bicombing(p, q, t),
            Interpolation::Horizontal => horizontal_bicombing(p, q, t),
        })
    }

    fn sample_point<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<MonotoneFn> {
        Ok(match rng.gen_range(0..20) {
            0 => MonotoneFn::identity(),
            1 => MonotoneFn::sqrt_graded(8),
            2 => MonotoneFn::square_uniform(8),
            _ => MonotoneFn::random(rng, self.max_inner),
        })
    }
}
