//! Midpoint map of a conical bicombing and the reversible bicombing built
//! from it.
//!
//! The midpoint of `(x, y)` is the common limit of
//! `x_{n+1} = σ(x_n, y_n, ½)`, `y_{n+1} = σ(y_n, x_n, ½)`. For a conical `σ`
//! the gap `d(x_n, y_n)` at least halves every step, so the loop stops at the
//! first `n` with gap `<= tol` and returns `x_n`.

use rand::Rng;

use crate::bicombings::Bicombing;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MidpointConfig {
    pub tol: f64,
    pub max_iter: usize,
}

impl MidpointConfig {
    pub fn new(tol: f64, max_iter: usize) -> Result<Self> {
        if !(tol.is_finite() && tol > 0.0) {
            return Err(Error::Config(format!("midpoint tol {tol} must be > 0")));
        }
        if max_iter == 0 {
            return Err(Error::Config("midpoint max_iter must be >= 1".into()));
        }
        Ok(MidpointConfig { tol, max_iter })
    }
}

impl Default for MidpointConfig {
    fn default() -> Self {
        MidpointConfig {
            tol: 1e-10,
            max_iter: 64,
        }
    }
}

/// Result of a midpoint iteration with the gap `d(x_n, y_n)` for every step.
#[derive(Debug, Clone)]
pub struct MidpointTrace<P> {
    pub point: P,
    pub gaps: Vec<f64>,
}

impl<P> MidpointTrace<P> {
    pub fn iterations(&self) -> usize {
        self.gaps.len() - 1
    }
}

pub fn midpoint_trace<B: Bicombing>(
    base: &B,
    x: &B::Point,
    y: &B::Point,
    cfg: &MidpointConfig,
) -> Result<MidpointTrace<B::Point>> {
    let mut xn = x.clone();
    let mut yn = y.clone();
    let mut gap = base.distance(&xn, &yn);
    let mut gaps = vec![gap];
    while gap > cfg.tol {
        if gaps.len() > cfg.max_iter {
            return Err(Error::NoConvergence {
                tol: cfg.tol,
                max_iter: cfg.max_iter,
                gap,
            });
        }
        let next_x = base.eval(&xn, &yn, 0.5)?;
        let next_y = base.eval(&yn, &xn, 0.5)?;
        xn = next_x;
        yn = next_y;
        gap = base.distance(&xn, &yn);
        gaps.push(gap);
    }
    Ok(MidpointTrace { point: xn, gaps })
}

pub fn midpoint<B: Bicombing>(
    base: &B,
    x: &B::Point,
    y: &B::Point,
    cfg: &MidpointConfig,
) -> Result<B::Point> {
    midpoint_trace(base, x, y, cfg).map(|trace| trace.point)
}

/// `τ(x, y, t) = m(σ(x, y, t), σ(y, x, 1-t))`.
#[derive(Debug, Clone)]
pub struct Reversibilized<B> {
    base: B,
    cfg: MidpointConfig,
}

pub fn reversibilize<B: Bicombing>(base: B, cfg: MidpointConfig) -> Reversibilized<B> {
    Reversibilized { base, cfg }
}

impl<B: Bicombing> Reversibilized<B> {
    pub fn base(&self) -> &B {
        &self.base
    }

    pub fn config(&self) -> &MidpointConfig {
        &self.cfg
    }
}

impl<B: Bicombing> Bicombing for Reversibilized<B> {
    type Point = B::Point;

    fn name(&self) -> String {
        format!("reversibilized({})", self.base.name())
    }

    fn distance(&self, a: &B::Point, b: &B::Point) -> f64 {
        self.base.distance(a, b)
    }

    fn eval(&self, p: &B::Point, q: &B::Point, t: f64) -> Result<B::Point> {
        let forward = self.base.eval(p, q, t)?;
        let backward = self.base.eval(q, p, 1.0 - t)?;
        midpoint(&self.base, &forward, &backward, &self.cfg)
    }

    fn sample_point<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<B::Point> {
        self.base.sample_point(rng)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bicombings::{FoldedX1, Linear};
    use crate::spaces::{Point2, SpaceId};

    #[test]
    fn linear_midpoint_in_one_step() {
        let lin = Linear::plane(SpaceId::Euclid);
        let trace = midpoint_trace(
            &lin,
            &Point2::new(0.0, 0.0),
            &Point2::new(2.0, 0.0),
            &MidpointConfig::default(),
        )
        .unwrap();
        assert_eq!(trace.point, Point2::new(1.0, 0.0));
        assert_eq!(trace.iterations(), 1);
    }

    #[test]
    fn coincident_points_need_no_steps() {
        let x = Point2::new(-1.5, 0.5);
        let trace = midpoint_trace(&FoldedX1::sigma(), &x, &x, &MidpointConfig::default()).unwrap();
        assert_eq!(trace.point, x);
        assert_eq!(trace.iterations(), 0);
    }

    #[test]
    fn sigma_x1_midpoint_halves_distance() {
        let b = FoldedX1::sigma();
        let x = Point2::new(-2.0, 1.0);
        let y = Point2::new(0.0, 0.0);
        let cfg = MidpointConfig::new(1e-10, 64).unwrap();
        let z = midpoint(&b, &x, &y, &cfg).unwrap();
        assert_eq!(SpaceId::Linf.dist(x, y), 2.0);
        assert!((SpaceId::Linf.dist(x, z) - 1.0).abs() <= 1e-9);
        assert!((SpaceId::Linf.dist(y, z) - 1.0).abs() <= 1e-9);
    }

    #[test]
    fn exhausted_iterations_are_reported() {
        let lin = Linear::plane(SpaceId::Euclid);
        let cfg = MidpointConfig {
            tol: 1e-300,
            max_iter: 1,
        };
        // σ_X1 is not symmetric at t = 1/2 here, so one step leaves a gap
        let b = FoldedX1::sigma();
        let err = midpoint(&b, &Point2::new(-1.5, 0.5), &Point2::new(0.0, 0.5), &cfg);
        assert!(matches!(err, Err(Error::NoConvergence { .. })));
        assert!(midpoint(&lin, &Point2::new(0.0, 0.0), &Point2::new(1.0, 3.0), &cfg).is_ok());
    }

    #[test]
    fn config_validation() {
        assert!(MidpointConfig::new(0.0, 10).is_err());
        assert!(MidpointConfig::new(1e-9, 0).is_err());
    }

    #[test]
    fn reversibilized_linear_is_linear() {
        let lin = Linear::plane(SpaceId::Linf);
        let rev = reversibilize(lin.clone(), MidpointConfig::default());
        let p = Point2::new(-1.0, 0.5);
        let q = Point2::new(2.0, -0.25);
        for i in 0..=10 {
            let t = i as f64 / 10.0;
            let a = rev.eval(&p, &q, t).unwrap();
            let b = crate::bicombings::linear(p, q, t);
            assert!(SpaceId::Linf.dist(a, b) <= 1e-10);
        }
    }

    #[test]
    fn reversibilized_sigma_x1_at_witness() {
        let cfg = MidpointConfig::default();
        let rev = reversibilize(FoldedX1::sigma(), cfg);
        let p = Point2::new(-2.0, 1.0);
        let q = Point2::new(0.0, 0.0);
        let a = rev.eval(&p, &q, 0.75).unwrap();
        let b = rev.eval(&q, &p, 0.25).unwrap();
        assert!(SpaceId::Linf.dist(a, b) <= 2.0 * cfg.tol);
    }
}
