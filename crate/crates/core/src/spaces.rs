//! Norms, region predicates and seeded samplers for the planar spaces.
//!
//! Three norms are used: Euclidean, maximum, and the hybrid norm
//! `max{|x|, (√2/2)·‖(x,y)‖₂}` under which the antenna space `X` is metrized.
//! Regions are closed sets described by inequalities; membership takes a
//! tolerance that relaxes every inequality at once.

use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default tolerance for membership checks on bicombing outputs.
pub const MEMBERSHIP_TOL: f64 = 1e-9;

/// Attempts allowed per requested point in rejection sampling.
pub const REJECTION_BUDGET_PER_POINT: usize = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub const ORIGIN: Point2 = Point2 { x: 0.0, y: 0.0 };

    pub const fn new(x: f64, y: f64) -> Self {
        Point2 { x, y }
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    /// `(1-t)·self + t·other`, written so that `t = 0` and `t = 1` reproduce
    /// the endpoints bit for bit.
    pub fn lerp(self, other: Point2, t: f64) -> Point2 {
        Point2::new(
            (1.0 - t) * self.x + t * other.x,
            (1.0 - t) * self.y + t * other.y,
        )
    }

    pub fn midpoint(self, other: Point2) -> Point2 {
        Point2::new(0.5 * (self.x + other.x), 0.5 * (self.y + other.y))
    }
}

impl Add for Point2 {
    type Output = Point2;
    fn add(self, rhs: Point2) -> Point2 {
        Point2::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl Sub for Point2 {
    type Output = Point2;
    fn sub(self, rhs: Point2) -> Point2 {
        Point2::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Neg for Point2 {
    type Output = Point2;
    fn neg(self) -> Point2 {
        Point2::new(-self.x, -self.y)
    }
}

impl Mul<Point2> for f64 {
    type Output = Point2;
    fn mul(self, rhs: Point2) -> Point2 {
        Point2::new(self * rhs.x, self * rhs.y)
    }
}

impl fmt::Display for Point2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl From<(f64, f64)> for Point2 {
    fn from((x, y): (f64, f64)) -> Self {
        Point2::new(x, y)
    }
}

/// Which norm metrizes the plane.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpaceId {
    Euclid,
    Linf,
    Hybrid,
}

impl SpaceId {
    pub fn norm(self, v: Point2) -> f64 {
        match self {
            SpaceId::Euclid => v.x.hypot(v.y),
            SpaceId::Linf => v.x.abs().max(v.y.abs()),
            SpaceId::Hybrid => v.x.abs().max(FRAC_1_SQRT_2 * v.x.hypot(v.y)),
        }
    }

    pub fn dist(self, p: Point2, q: Point2) -> f64 {
        self.norm(p - q)
    }

    /// Half-widths of the axis-aligned box containing the unit ball.
    pub fn unit_ball_extent(self) -> (f64, f64) {
        match self {
            SpaceId::Euclid | SpaceId::Linf => (1.0, 1.0),
            SpaceId::Hybrid => (1.0, std::f64::consts::SQRT_2),
        }
    }
}

impl fmt::Display for SpaceId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SpaceId::Euclid => "euclid",
            SpaceId::Linf => "linf",
            SpaceId::Hybrid => "hybrid",
        })
    }
}

pub fn norm(space: SpaceId, v: Point2) -> f64 {
    space.norm(v)
}

pub fn dist(space: SpaceId, p: Point2, q: Point2) -> f64 {
    space.dist(p, q)
}

/// Upper boundary of `X` over `x`.
pub fn x_ceiling(x: f64) -> f64 {
    (1.0 - x * x).max(0.0) / 32.0
}

/// The regions used by the constructions.
///
/// `X1`, `A1` and their mirror images live in the max-norm plane; `X` and its
/// pieces in the hybrid-norm plane. `Plane` is all of ℝ² and cannot be
/// sampled.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Region {
    X,
    Xminus,
    Xzero,
    Xplus,
    X1,
    X2,
    A1,
    A2,
    Y1,
    Y2,
    Ball {
        center: Point2,
        radius: f64,
        norm: SpaceId,
    },
    Shifted {
        base: Box<Region>,
        shift: Point2,
    },
    Plane,
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Region::X => f.write_str("X"),
            Region::Xminus => f.write_str("X-"),
            Region::Xzero => f.write_str("X0"),
            Region::Xplus => f.write_str("X+"),
            Region::X1 => f.write_str("X1"),
            Region::X2 => f.write_str("X2"),
            Region::A1 => f.write_str("A1"),
            Region::A2 => f.write_str("A2"),
            Region::Y1 => f.write_str("Y1"),
            Region::Y2 => f.write_str("Y2"),
            Region::Ball {
                center,
                radius,
                norm,
            } => write!(f, "B_{radius}{center}[{norm}]"),
            Region::Shifted { base, shift } => write!(f, "{base}+{shift}"),
            Region::Plane => f.write_str("R2"),
        }
    }
}

/// A sampleable piece of a region.
#[derive(Debug, Clone)]
enum Piece {
    Segment(Point2, Point2),
    /// Rejection-sampled from `[min, max]` against the owning region.
    Area {
        min: Point2,
        max: Point2,
    },
    Single(Point2),
    /// The arm of `X1` (or its mirror in `X2`), offset by `shift`.
    Arm {
        mirror: bool,
        shift: Point2,
    },
}

impl Region {
    pub fn ball(center: Point2, radius: f64, norm: SpaceId) -> Result<Region> {
        if !(radius.is_finite() && radius >= 0.0) {
            return Err(Error::Config(format!("ball radius {radius} must be >= 0")));
        }
        Ok(Region::Ball {
            center,
            radius,
            norm,
        })
    }

    pub fn shifted(self, shift: Point2) -> Region {
        Region::Shifted {
            base: Box::new(self),
            shift,
        }
    }

    /// Membership with every defining inequality relaxed by `tol`.
    pub fn contains(&self, p: Point2, tol: f64) -> bool {
        if !p.is_finite() {
            return false;
        }
        let Point2 { x, y } = p;
        match self {
            Region::X => {
                (-3.0 - tol..=3.0 + tol).contains(&x) && y >= -tol && y <= x_ceiling(x) + tol
            }
            Region::Xminus => (-3.0 - tol..=-1.0 + tol).contains(&x) && y.abs() <= tol,
            Region::Xplus => (1.0 - tol..=3.0 + tol).contains(&x) && y.abs() <= tol,
            Region::Xzero => {
                x > -1.0 - tol && x < 1.0 + tol && y >= -tol && y <= (1.0 - x * x) / 32.0 + tol
            }
            Region::X1 => {
                let ax = x.abs();
                (-2.0 - tol..=1.0 + tol).contains(&x)
                    && y >= ax - 1.0 - tol
                    && y <= (ax - 1.0).abs() + tol
            }
            Region::A1 => (x + 1.0).abs() - tol <= y && y <= 1.0 + tol,
            Region::X2 => Region::X1.contains(fold_s(p), tol),
            Region::A2 => Region::A1.contains(fold_s(p), tol),
            Region::Y1 => Region::X1.contains(p, tol) || Region::A1.contains(p, tol),
            Region::Y2 => Region::X2.contains(p, tol) || Region::A2.contains(p, tol),
            Region::Ball {
                center,
                radius,
                norm,
            } => norm.dist(p, *center) <= radius + tol,
            Region::Shifted { base, shift } => base.contains(p - *shift, tol),
            Region::Plane => true,
        }
    }

    /// Returns `Ok(p)` when `p` is in the region at tolerance `tol`.
    pub fn require(&self, p: Point2, tol: f64) -> Result<Point2> {
        if !p.is_finite() {
            return Err(Error::NonFinite(p));
        }
        if self.contains(p, tol) {
            Ok(p)
        } else {
            Err(Error::OutsideRegion {
                point: p,
                region: self.clone(),
            })
        }
    }

    fn pieces(&self) -> Result<Vec<Piece>> {
        let seg = |a: (f64, f64), b: (f64, f64)| Piece::Segment(a.into(), b.into());
        let area = |a: (f64, f64), b: (f64, f64)| Piece::Area {
            min: a.into(),
            max: b.into(),
        };
        Ok(match self {
            Region::Xminus => vec![seg((-3.0, 0.0), (-1.0, 0.0))],
            Region::Xplus => vec![seg((1.0, 0.0), (3.0, 0.0))],
            Region::Xzero => vec![area((-1.0, 0.0), (1.0, 1.0 / 32.0))],
            Region::X => {
                let mut v = Region::Xminus.pieces()?;
                v.extend(Region::Xzero.pieces()?);
                v.extend(Region::Xplus.pieces()?);
                v
            }
            // arm from (-2, 1) to (-1, 0) plus the diamond |x| + |y| <= 1
            Region::X1 => vec![
                Piece::Arm {
                    mirror: false,
                    shift: Point2::ORIGIN,
                },
                area((-1.0, -1.0), (1.0, 1.0)),
                area((-1.0, -1.0), (1.0, 1.0)),
            ],
            Region::X2 => vec![
                Piece::Arm {
                    mirror: true,
                    shift: Point2::ORIGIN,
                },
                area((-1.0, -1.0), (1.0, 1.0)),
                area((-1.0, -1.0), (1.0, 1.0)),
            ],
            Region::A1 => vec![area((-2.0, 0.0), (0.0, 1.0))],
            Region::A2 => vec![area((-2.0, -1.0), (0.0, 0.0))],
            Region::Y1 => vec![area((-2.0, -1.0), (1.0, 1.0))],
            Region::Y2 => vec![area((-2.0, -1.0), (1.0, 1.0))],
            Region::Ball {
                center,
                radius,
                norm,
            } => {
                if *radius == 0.0 {
                    vec![Piece::Single(*center)]
                } else {
                    let (ex, ey) = norm.unit_ball_extent();
                    let half = Point2::new(ex * radius, ey * radius);
                    vec![Piece::Area {
                        min: *center - half,
                        max: *center + half,
                    }]
                }
            }
            Region::Shifted { base, shift } => base
                .pieces()?
                .into_iter()
                .map(|piece| match piece {
                    Piece::Segment(a, b) => Piece::Segment(a + *shift, b + *shift),
                    Piece::Area { min, max } => Piece::Area {
                        min: min + *shift,
                        max: max + *shift,
                    },
                    Piece::Single(p) => Piece::Single(p + *shift),
                    Piece::Arm { mirror, shift: s } => Piece::Arm {
                        mirror,
                        shift: s + *shift,
                    },
                })
                .collect(),
            Region::Plane => return Err(Error::Unsampleable(self.clone())),
        })
    }

    /// Draws one point. Composite regions pick a piece uniformly first, so
    /// the zero-area antennas and arms are hit with positive probability.
    pub fn sample_point<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<Point2> {
        let pieces = self.pieces()?;
        let piece = &pieces[rng.gen_range(0..pieces.len())];
        match piece {
            Piece::Single(p) => Ok(*p),
            Piece::Segment(a, b) => {
                let s: f64 = rng.gen();
                Ok(a.lerp(*b, s))
            }
            Piece::Arm { mirror, shift } => {
                // y = |x| - 1 exactly, so the point passes membership at tol 0
                let x = -2.0 + rng.gen::<f64>();
                let y = -1.0 - x;
                Ok(Point2::new(x, if *mirror { -y } else { y }) + *shift)
            }
            Piece::Area { min, max } => {
                for _ in 0..REJECTION_BUDGET_PER_POINT {
                    let p = Point2::new(rng.gen_range(min.x..=max.x), rng.gen_range(min.y..=max.y));
                    if self.contains(p, 0.0) {
                        return Ok(p);
                    }
                }
                Err(Error::SamplingBudget {
                    region: self.clone(),
                    budget: REJECTION_BUDGET_PER_POINT,
                })
            }
        }
    }
}

pub fn contains(region: &Region, p: Point2, tol: f64) -> Result<bool> {
    if tol.is_nan() || tol < 0.0 {
        return Err(Error::Config(format!(
            "membership tolerance {tol} must be >= 0"
        )));
    }
    Ok(region.contains(p, tol))
}

/// Deterministic list of `count` points of `region` for the given seed.
pub fn sample_region(region: &Region, seed: u64, count: usize) -> Result<Vec<Point2>> {
    if count == 0 {
        return Err(Error::Config("sample count must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| region.sample_point(&mut rng)).collect()
}

/// Reflection across the x-axis.
pub fn fold_s(p: Point2) -> Point2 {
    Point2::new(p.x, -p.y)
}
