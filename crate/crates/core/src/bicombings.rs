//! Concrete geodesic bicombings on planar spaces.
//!
//! A bicombing assigns to every ordered pair `(p, q)` a constant-speed
//! geodesic `t ↦ σ(p, q, t)`. The property checks in [`crate::verify`] only
//! need the [`Bicombing`] trait; the planar constructions additionally expose
//! their norm and domain through [`PlanarBicombing`].

use std::fmt::Debug;

use rand::Rng;

use crate::error::{Error, Result};
use crate::spaces::{fold_s, Point2, Region, SpaceId, MEMBERSHIP_TOL};

/// Probability that a bicombing sampler returns one of its landmark points.
const LANDMARK_RATE: f64 = 0.1;

/// Flat coordinate view of a point, used for witnesses in reports.
pub trait WitnessPoint {
    fn coords(&self) -> Vec<f64>;
}

impl WitnessPoint for Point2 {
    fn coords(&self) -> Vec<f64> {
        vec![self.x, self.y]
    }
}

/// A geodesic bicombing on a metric space whose points can be sampled.
pub trait Bicombing: Send + Sync {
    type Point: Clone + Debug + Send + Sync + WitnessPoint;

    fn name(&self) -> String;

    fn distance(&self, a: &Self::Point, b: &Self::Point) -> f64;

    fn eval(&self, p: &Self::Point, q: &Self::Point, t: f64) -> Result<Self::Point>;

    /// Draws a point of the domain.
    fn sample_point<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<Self::Point>;
}

/// A bicombing on a region of a normed plane.
pub trait PlanarBicombing: Send + Sync {
    fn name(&self) -> String;

    fn space(&self) -> SpaceId;

    fn domain(&self) -> &Region;

    fn eval(&self, p: Point2, q: Point2, t: f64) -> Result<Point2>;

    /// Region used for sampling when the domain itself is unbounded.
    fn sampling_region(&self) -> &Region {
        self.domain()
    }

    /// Distinguished points mixed into the sample stream.
    fn landmarks(&self) -> &[Point2] {
        &[]
    }
}

impl<T: PlanarBicombing> Bicombing for T {
    type Point = Point2;

    fn name(&self) -> String {
        PlanarBicombing::name(self)
    }

    fn distance(&self, a: &Point2, b: &Point2) -> f64 {
        self.space().dist(*a, *b)
    }

    fn eval(&self, p: &Point2, q: &Point2, t: f64) -> Result<Point2> {
        PlanarBicombing::eval(self, *p, *q, t)
    }

    fn sample_point<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<Point2> {
        let marks = self.landmarks();
        if !marks.is_empty() && rng.gen_bool(LANDMARK_RATE) {
            return Ok(marks[rng.gen_range(0..marks.len())]);
        }
        self.sampling_region().sample_point(rng)
    }
}

/// Perturbation strength of `σ^δ`, restricted to `[0, 1/64]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Delta(f64);

impl Delta {
    pub const MAX: f64 = 1.0 / 64.0;

    pub fn new(value: f64) -> Result<Self> {
        if (0.0..=Self::MAX).contains(&value) {
            Ok(Delta(value))
        } else {
            Err(Error::InvalidDelta(value))
        }
    }

    pub fn max() -> Self {
        Delta(Self::MAX)
    }

    pub fn zero() -> Self {
        Delta(0.0)
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

pub fn linear(p: Point2, q: Point2, t: f64) -> Point2 {
    p.lerp(q, t)
}

/// Straight segments in a normed plane.
#[derive(Debug, Clone)]
pub struct Linear {
    space: SpaceId,
    domain: Region,
    sampling: Region,
}

impl Linear {
    /// Linear geodesics on all of ℝ², sampled from the ball of radius 3.
    pub fn plane(space: SpaceId) -> Self {
        Linear {
            space,
            domain: Region::Plane,
            sampling: Region::Ball {
                center: Point2::ORIGIN,
                radius: 3.0,
                norm: space,
            },
        }
    }

    /// Linear geodesics restricted to a convex region.
    pub fn on(space: SpaceId, domain: Region) -> Self {
        Linear {
            space,
            sampling: domain.clone(),
            domain,
        }
    }
}

impl PlanarBicombing for Linear {
    fn name(&self) -> String {
        format!("linear[{}]", self.space)
    }

    fn space(&self) -> SpaceId {
        self.space
    }

    fn domain(&self) -> &Region {
        &self.domain
    }

    fn sampling_region(&self) -> &Region {
        &self.sampling
    }

    fn eval(&self, p: Point2, q: Point2, t: f64) -> Result<Point2> {
        self.domain.require(p, MEMBERSHIP_TOL)?;
        self.domain.require(q, MEMBERSHIP_TOL)?;
        Ok(linear(p, q, t))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Antenna {
    Minus,
    Zero,
    Plus,
}

/// Piece of `X` containing `p`. Points with `|x| >= 1` are on the antennas.
fn antenna(p: Point2) -> Antenna {
    if p.x <= -1.0 {
        Antenna::Minus
    } else if p.x >= 1.0 {
        Antenna::Plus
    } else {
        Antenna::Zero
    }
}

/// The five-case table for `p_x <= q_x`.
fn sigma_delta_ordered(delta: f64, p: Point2, q: Point2, t: f64) -> Point2 {
    let x = (1.0 - t) * p.x + t * q.x;
    let y = match (antenna(p), antenna(q)) {
        (Antenna::Minus, Antenna::Plus) => {
            delta * (q.x - p.x - 4.0).max(0.0) * (1.0 - x * x).max(0.0)
        }
        (Antenna::Minus, Antenna::Zero) => (q.y / (q.x + 1.0) * (x + 1.0)).max(0.0),
        (Antenna::Zero, Antenna::Plus) => (p.y / (p.x - 1.0) * (x - 1.0)).max(0.0),
        (Antenna::Zero, Antenna::Zero) => (1.0 - t) * p.y + t * q.y,
        _ => 0.0,
    };
    Point2::new(x, y)
}

/// Lexicographic order on `(x, y)`; ties in `x` are broken by `y` so that
/// reversal is exact.
fn ordered(p: Point2, q: Point2) -> bool {
    (p.x, p.y) <= (q.x, q.y)
}

fn require_x(p: Point2, q: Point2) -> Result<()> {
    Region::X.require(p, MEMBERSHIP_TOL)?;
    Region::X.require(q, MEMBERSHIP_TOL)?;
    Ok(())
}

/// `σ^δ(p, q, t)` on the antenna space `X`.
pub fn sigma_delta(delta: Delta, p: Point2, q: Point2, t: f64) -> Result<Point2> {
    require_x(p, q)?;
    Ok(if ordered(p, q) {
        sigma_delta_ordered(delta.0, p, q, t)
    } else {
        sigma_delta_ordered(delta.0, q, p, 1.0 - t)
    })
}

/// `σ̃^δ`: equal to `σ^δ` except that geodesics from `X₊` to `X₋` run
/// straight along the x-axis.
pub fn sigma_tilde_delta(delta: Delta, p: Point2, q: Point2, t: f64) -> Result<Point2> {
    require_x(p, q)?;
    if antenna(p) == Antenna::Plus && antenna(q) == Antenna::Minus {
        return Ok(Point2::new((1.0 - t) * p.x + t * q.x, 0.0));
    }
    sigma_delta(delta, p, q, t)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SigmaVariant {
    Reversible,
    Tilde,
}

/// `σ^δ` or `σ̃^δ` on `(X, hybrid norm)`.
#[derive(Debug, Clone)]
pub struct SigmaDelta {
    delta: Delta,
    variant: SigmaVariant,
}

const X_LANDMARKS: [Point2; 8] = [
    Point2::new(-3.0, 0.0),
    Point2::new(-2.0, 0.0),
    Point2::new(-1.0, 0.0),
    Point2::new(1.0, 0.0),
    Point2::new(2.0, 0.0),
    Point2::new(3.0, 0.0),
    Point2::new(0.0, 1.0 / 32.0),
    Point2::new(0.0, 0.0),
];

impl SigmaDelta {
    pub fn new(delta: Delta) -> Self {
        SigmaDelta {
            delta,
            variant: SigmaVariant::Reversible,
        }
    }

    pub fn tilde(delta: Delta) -> Self {
        SigmaDelta {
            delta,
            variant: SigmaVariant::Tilde,
        }
    }

    pub fn delta(&self) -> Delta {
        self.delta
    }

    pub fn variant(&self) -> SigmaVariant {
        self.variant
    }
}

impl PlanarBicombing for SigmaDelta {
    fn name(&self) -> String {
        match self.variant {
            SigmaVariant::Reversible => format!("sigma_delta[{}]", self.delta.0),
            SigmaVariant::Tilde => format!("sigma_tilde_delta[{}]", self.delta.0),
        }
    }

    fn space(&self) -> SpaceId {
        SpaceId::Hybrid
    }

    fn domain(&self) -> &Region {
        &Region::X
    }

    fn landmarks(&self) -> &[Point2] {
        &X_LANDMARKS
    }

    fn eval(&self, p: Point2, q: Point2, t: f64) -> Result<Point2> {
        match self.variant {
            SigmaVariant::Reversible => sigma_delta(self.delta, p, q, t),
            SigmaVariant::Tilde => sigma_tilde_delta(self.delta, p, q, t),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FoldDirection {
    /// `X₂ → X₁`
    Forward,
    /// `X₁ → X₂`
    Inverse,
}

fn fold_unchecked(p: Point2) -> Point2 {
    if p.x < -1.0 {
        fold_s(p)
    } else {
        p
    }
}

/// The isometry `f: X₂ → X₁` and its inverse. Both reflect the arm
/// `x ∈ [-2, -1]` and fix the diamond.
pub fn fold_f(p: Point2, direction: FoldDirection) -> Result<Point2> {
    let source = match direction {
        FoldDirection::Forward => Region::X2,
        FoldDirection::Inverse => Region::X1,
    };
    source.require(p, MEMBERSHIP_TOL)?;
    Ok(fold_unchecked(p))
}

/// `f̄`: identity on `X₁`, `f` on `X₂`.
pub fn fold_bar(p: Point2) -> Result<Point2> {
    if Region::X1.contains(p, MEMBERSHIP_TOL) {
        Ok(p)
    } else {
        fold_f(p, FoldDirection::Forward)
    }
}

fn retraction_unchecked(p: Point2) -> Point2 {
    let cap = (p.x.abs() - 1.0).abs();
    let y = if p.y > 0.0 {
        p.y.min(cap)
    } else if p.y < 0.0 {
        -(-p.y).min(cap)
    } else {
        0.0
    };
    Point2::new(p.x, y)
}

/// The 1-Lipschitz retraction `π: Y₁ ∪ Y₂ → X₁ ∪ X₂`.
pub fn retraction_pi(p: Point2) -> Result<Point2> {
    if !(Region::Y1.contains(p, MEMBERSHIP_TOL) || Region::Y2.contains(p, MEMBERSHIP_TOL)) {
        return Err(Error::OutsideRegion {
            point: p,
            region: Region::Y1,
        });
    }
    Ok(retraction_unchecked(p))
}

fn sigma_x1_unchecked(p: Point2, q: Point2, t: f64) -> Point2 {
    if p.x <= q.x {
        retraction_unchecked(linear(p, q, t))
    } else {
        let pulled = linear(fold_unchecked(p), fold_unchecked(q), t);
        fold_unchecked(retraction_unchecked(pulled))
    }
}

/// The non-reversible conical bicombing on `(X₁, ‖·‖_∞)`: retracted straight
/// lines when moving right, folded retracted lines when moving left.
pub fn sigma_x1(p: Point2, q: Point2, t: f64) -> Result<Point2> {
    Region::X1.require(p, MEMBERSHIP_TOL)?;
    Region::X1.require(q, MEMBERSHIP_TOL)?;
    Ok(sigma_x1_unchecked(p, q, t))
}

/// `½(σ(p,q,½) + σ(q,p,½))` for the `X₁` bicombing.
pub fn averaged_midpoint_x1(p: Point2, q: Point2) -> Result<Point2> {
    Region::X1.require(p, MEMBERSHIP_TOL)?;
    Region::X1.require(q, MEMBERSHIP_TOL)?;
    let m = sigma_x1_unchecked(p, q, 0.5).midpoint(sigma_x1_unchecked(q, p, 0.5));
    if Region::X1.contains(m, MEMBERSHIP_TOL) {
        Ok(m)
    } else {
        Err(Error::MidpointOutsideDomain(m))
    }
}

/// Two half-geodesics of `σ` glued at the averaged midpoint; has the midpoint
/// property but is not reversible.
pub fn tau_x1(p: Point2, q: Point2, t: f64) -> Result<Point2> {
    let m = averaged_midpoint_x1(p, q)?;
    Ok(if t <= 0.5 {
        sigma_x1_unchecked(p, m, 2.0 * t)
    } else {
        sigma_x1_unchecked(m, q, 2.0 * t - 1.0)
    })
}

const X1_LANDMARKS: [Point2; 8] = [
    Point2::new(-2.0, 1.0),
    Point2::new(-1.5, 0.5),
    Point2::new(-1.0, 0.0),
    Point2::new(0.0, 1.0),
    Point2::new(0.0, -1.0),
    Point2::new(1.0, 0.0),
    Point2::new(0.0, 0.0),
    Point2::new(0.0, 0.5),
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum X1Variant {
    Sigma,
    Tau,
}

/// The bicombings on `(X₁, ‖·‖_∞)`.
#[derive(Debug, Clone)]
pub struct FoldedX1 {
    variant: X1Variant,
}

impl FoldedX1 {
    pub fn sigma() -> Self {
        FoldedX1 {
            variant: X1Variant::Sigma,
        }
    }

    pub fn tau() -> Self {
        FoldedX1 {
            variant: X1Variant::Tau,
        }
    }
}

impl PlanarBicombing for FoldedX1 {
    fn name(&self) -> String {
        match self.variant {
            X1Variant::Sigma => "sigma_X1".into(),
            X1Variant::Tau => "tau_X1".into(),
        }
    }

    fn space(&self) -> SpaceId {
        SpaceId::Linf
    }

    fn domain(&self) -> &Region {
        &Region::X1
    }

    fn landmarks(&self) -> &[Point2] {
        &X1_LANDMARKS
    }

    fn eval(&self, p: Point2, q: Point2, t: f64) -> Result<Point2> {
        match self.variant {
            X1Variant::Sigma => sigma_x1(p, q, t),
            X1Variant::Tau => tau_x1(p, q, t),
        }
    }
}

/// `(T_z)_* σ`: the bicombing transported along the translation by `shift`.
#[derive(Debug, Clone)]
pub struct Pushforward<B> {
    shift: Point2,
    base: B,
    domain: Region,
    sampling: Region,
    landmarks: Vec<Point2>,
}

impl<B: PlanarBicombing> Pushforward<B> {
    pub fn new(shift: Point2, base: B) -> Self {
        let domain = base.domain().clone().shifted(shift);
        let sampling = base.sampling_region().clone().shifted(shift);
        let landmarks = base.landmarks().iter().map(|p| *p + shift).collect();
        Pushforward {
            shift,
            base,
            domain,
            sampling,
            landmarks,
        }
    }

    pub fn base(&self) -> &B {
        &self.base
    }
}

impl<B: PlanarBicombing> PlanarBicombing for Pushforward<B> {
    fn name(&self) -> String {
        format!("pushforward[{}]({})", self.shift, self.base.name())
    }

    fn space(&self) -> SpaceId {
        self.base.space()
    }

    fn domain(&self) -> &Region {
        &self.domain
    }

    fn sampling_region(&self) -> &Region {
        &self.sampling
    }

    fn landmarks(&self) -> &[Point2] {
        &self.landmarks
    }

    fn eval(&self, p: Point2, q: Point2, t: f64) -> Result<Point2> {
        pushforward(self.shift, &self.base, p, q, t)
    }
}

pub fn pushforward<B: PlanarBicombing + ?Sized>(
    shift: Point2,
    base: &B,
    p: Point2,
    q: Point2,
    t: f64,
) -> Result<Point2> {
    Ok(base.eval(p - shift, q - shift, t)? + shift)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(x: f64, y: f64) -> Point2 {
        Point2::new(x, y)
    }

    fn close(a: Point2, b: Point2, tol: f64) -> bool {
        (a.x - b.x).abs() <= tol && (a.y - b.y).abs() <= tol
    }

    #[test]
    fn linear_examples() {
        assert_eq!(linear(pt(0.0, 0.0), pt(2.0, 2.0), 0.5), pt(1.0, 1.0));
        assert_eq!(linear(pt(0.3, -0.7), pt(2.0, 2.0), 0.0), pt(0.3, -0.7));
        let v = linear(pt(-3.0, 0.0), pt(3.0, 0.0), 1.0 / 3.0);
        assert!(close(v, pt(-1.0, 0.0), 1e-15));
    }

    #[test]
    fn delta_range() {
        assert!(Delta::new(-0.001).is_err());
        assert!(Delta::new(0.02).is_err());
        assert!(Delta::new(1.0 / 64.0).is_ok());
        assert!(Delta::new(0.0).is_ok());
    }

    #[test]
    fn sigma_delta_examples() {
        let d = Delta::max();
        assert_eq!(
            sigma_delta(d, pt(-3.0, 0.0), pt(3.0, 0.0), 0.5).unwrap(),
            pt(0.0, 1.0 / 32.0)
        );
        for delta in [Delta::zero(), Delta::new(0.01).unwrap(), d] {
            assert_eq!(
                sigma_delta(delta, pt(-2.0, 0.0), pt(2.0, 0.0), 0.5).unwrap(),
                pt(0.0, 0.0)
            );
        }
        // p ∈ X₋, q ∈ X₀: y = q_y/(q_x+1)·(x+1) = (1/32)·(1/2)
        let v = sigma_delta(d, pt(-2.0, 0.0), pt(0.0, 1.0 / 32.0), 0.75).unwrap();
        assert_eq!(v, pt(-0.5, 1.0 / 64.0));
    }

    #[test]
    fn sigma_delta_rejects_outside_points() {
        assert!(sigma_delta(Delta::max(), pt(0.0, 0.1), pt(1.0, 0.0), 0.5).is_err());
        assert!(sigma_delta(Delta::max(), pt(-3.5, 0.0), pt(1.0, 0.0), 0.5).is_err());
    }

    #[test]
    fn sigma_delta_reverses_exactly() {
        let d = Delta::max();
        let pairs = [
            (pt(-3.0, 0.0), pt(3.0, 0.0)),
            (pt(0.5, 0.01), pt(-2.5, 0.0)),
            (pt(0.0, 0.0), pt(0.0, 1.0 / 32.0)),
        ];
        for (p, q) in pairs {
            for i in 0..=32 {
                let t = i as f64 / 32.0;
                assert_eq!(
                    sigma_delta(d, p, q, t).unwrap(),
                    sigma_delta(d, q, p, 1.0 - t).unwrap()
                );
            }
        }
    }

    #[test]
    fn sigma_tilde_examples() {
        let d = Delta::max();
        assert_eq!(
            sigma_tilde_delta(d, pt(3.0, 0.0), pt(-3.0, 0.0), 0.5).unwrap(),
            pt(0.0, 0.0)
        );
        assert_eq!(
            sigma_tilde_delta(d, pt(-3.0, 0.0), pt(3.0, 0.0), 0.5).unwrap(),
            pt(0.0, 1.0 / 32.0)
        );
        let q = pt(0.25, 0.01);
        assert_eq!(sigma_tilde_delta(d, pt(-2.0, 0.0), q, 1.0).unwrap(), q);
    }

    #[test]
    fn fold_examples() {
        assert_eq!(fold_s(pt(1.0, 2.0)), pt(1.0, -2.0));
        assert_eq!(fold_s(pt(0.0, 0.0)), pt(0.0, 0.0));
        assert_eq!(fold_s(pt(-2.0, -1.0)), pt(-2.0, 1.0));

        assert_eq!(
            fold_f(pt(0.0, -1.0), FoldDirection::Forward).unwrap(),
            pt(0.0, -1.0)
        );
        assert!(Region::X2.contains(pt(-2.0, -1.0), 0.0));
        let image = fold_f(pt(-2.0, -1.0), FoldDirection::Forward).unwrap();
        assert_eq!(image, pt(-2.0, 1.0));
        assert!(Region::X1.contains(image, 0.0));
        assert_eq!(
            fold_f(pt(-2.0, 1.0), FoldDirection::Inverse).unwrap(),
            pt(-2.0, -1.0)
        );
        // (-2, 1) is in X₁ but not X₂
        assert!(fold_f(pt(-2.0, 1.0), FoldDirection::Forward).is_err());
    }

    #[test]
    fn retraction_examples() {
        assert_eq!(retraction_pi(pt(-1.0, 1.0)).unwrap(), pt(-1.0, 0.0));
        assert_eq!(retraction_pi(pt(-1.5, 1.0)).unwrap(), pt(-1.5, 0.5));
        assert_eq!(retraction_pi(pt(-0.5, -0.25)).unwrap(), pt(-0.5, -0.25));
        assert!(retraction_pi(pt(1.5, 0.0)).is_err());
    }

    #[test]
    fn sigma_x1_examples() {
        let a = sigma_x1(pt(-2.0, 1.0), pt(0.0, 0.0), 0.75).unwrap();
        assert_eq!(a, pt(-0.5, 0.25));
        let b = sigma_x1(pt(0.0, 0.0), pt(-2.0, 1.0), 0.25).unwrap();
        assert_eq!(b, pt(-0.5, -0.25));
        assert_ne!(a, b);
        for t in [0.0, 0.3, 1.0] {
            assert_eq!(
                sigma_x1(pt(0.0, 0.0), pt(0.0, 0.0), t).unwrap(),
                pt(0.0, 0.0)
            );
        }
        assert!(sigma_x1(pt(-1.5, 0.0), pt(0.0, 0.0), 0.5).is_err());
    }

    #[test]
    fn sigma_x1_branches_agree_on_vertical_pairs() {
        let samples = crate::spaces::sample_region(&Region::X1, 11, 400).unwrap();
        for w in samples.chunks(2) {
            let p = w[0];
            let q = Point2::new(p.x, w[1].y.clamp(p.x.abs() - 1.0, (p.x.abs() - 1.0).abs()));
            for i in 0..=16 {
                let t = i as f64 / 16.0;
                let first = retraction_unchecked(linear(p, q, t));
                let second = fold_unchecked(retraction_unchecked(linear(
                    fold_unchecked(p),
                    fold_unchecked(q),
                    t,
                )));
                assert!(close(first, second, 1e-15), "{p} {q} {t}");
            }
        }
    }

    #[test]
    fn tau_x1_witness_values() {
        let p = pt(-1.5, 0.5);
        let q = pt(0.0, 0.5);
        assert_eq!(averaged_midpoint_x1(p, q).unwrap(), pt(-0.75, 0.125));
        let a = tau_x1(p, q, 5.0 / 12.0).unwrap();
        assert!(close(a, pt(-7.0 / 8.0, 1.0 / 8.0), 1e-12), "{a}");
        let b = tau_x1(q, p, 7.0 / 12.0).unwrap();
        assert!(close(b, pt(-7.0 / 8.0, 1.0 / 48.0), 1e-12), "{b}");
        for t in [0.0, 0.4, 1.0] {
            assert_eq!(tau_x1(p, p, t).unwrap(), p);
        }
    }

    #[test]
    fn pushforward_examples() {
        let lin = Linear::plane(SpaceId::Euclid);
        let p = pt(0.2, 0.4);
        let q = pt(-1.0, 2.0);
        assert_eq!(
            pushforward(Point2::ORIGIN, &lin, p, q, 0.3).unwrap(),
            PlanarBicombing::eval(&lin, p, q, 0.3).unwrap()
        );
        assert_eq!(
            pushforward(pt(1.0, 0.0), &lin, pt(1.0, 0.0), pt(3.0, 0.0), 0.5).unwrap(),
            pt(2.0, 0.0)
        );
        let sd = SigmaDelta::new(Delta::max());
        let v = pushforward(pt(5.0, 0.0), &sd, pt(2.0, 0.0), pt(8.0, 0.0), 0.5).unwrap();
        assert_eq!(v, pt(5.0, 1.0 / 32.0));
        let moved = Pushforward::new(pt(5.0, 0.0), sd);
        assert!(moved.domain().contains(v, 0.0));
        assert!(PlanarBicombing::eval(&moved, pt(0.0, 0.0), pt(8.0, 0.0), 0.5).is_err());
    }
}
