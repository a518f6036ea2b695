//! CSV polylines for the pictures of the constructions. Every file has the
//! header `series,t,x,y`; numbers use the shortest decimal form that reads
//! back to the same `f64`.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use crate::bicombings::{sigma_delta, sigma_x1, tau_x1, Delta};
use crate::error::{Error, Result};
use crate::spaces::{x_ceiling, Point2, SpaceId};

/// Samples per curve.
pub const FIGURE_SAMPLES: usize = 257;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Figure {
    SpaceXWithGeodesic,
    ConvexityPair,
    FoldedX1,
    MidpointX1,
}

impl Figure {
    pub const ALL: [Figure; 4] = [
        Figure::SpaceXWithGeodesic,
        Figure::ConvexityPair,
        Figure::FoldedX1,
        Figure::MidpointX1,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Figure::SpaceXWithGeodesic => "space_X_with_geodesic",
            Figure::ConvexityPair => "convexity_pair",
            Figure::FoldedX1 => "folded_X1",
            Figure::MidpointX1 => "midpoint_X1",
        }
    }
}

impl fmt::Display for Figure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Figure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Figure::ALL
            .into_iter()
            .find(|f| f.as_str() == s)
            .ok_or_else(|| Error::Unknown {
                kind: "figure",
                name: s.to_string(),
            })
    }
}

/// One row of a figure file.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Row {
    pub series: &'static str,
    pub t: f64,
    pub x: f64,
    pub y: f64,
}

fn params() -> impl Iterator<Item = f64> {
    let n = (FIGURE_SAMPLES - 1) as f64;
    (0..FIGURE_SAMPLES).map(move |i| i as f64 / n)
}

fn curve(series: &'static str, f: impl Fn(f64) -> Result<Point2>) -> Result<Vec<Row>> {
    params()
        .map(|t| {
            let z = f(t)?;
            Ok(Row {
                series,
                t,
                x: z.x,
                y: z.y,
            })
        })
        .collect()
}

/// A polyline through `vertices`, one row per vertex.
fn polygon(series: &'static str, vertices: &[Point2]) -> Vec<Row> {
    let n = (vertices.len() - 1) as f64;
    vertices
        .iter()
        .enumerate()
        .map(|(i, z)| Row {
            series,
            t: i as f64 / n,
            x: z.x,
            y: z.y,
        })
        .collect()
}

/// Rows of a figure, in output order.
pub fn figure_rows(figure: Figure, delta: f64) -> Result<Vec<Row>> {
    let delta = Delta::new(delta)?;
    let mut rows = Vec::new();
    match figure {
        Figure::SpaceXWithGeodesic => {
            rows.extend(curve("boundary_upper", |t| {
                let x = -3.0 + 6.0 * t;
                Ok(Point2::new(x, x_ceiling(x)))
            })?);
            rows.extend(curve("boundary_lower", |t| {
                Ok(Point2::new(-3.0 + 6.0 * t, 0.0))
            })?);
            let (p, q) = (Point2::new(-3.0, 0.0), Point2::new(3.0, 0.0));
            rows.extend(curve("geodesic", |t| sigma_delta(delta, p, q, t))?);
        }
        Figure::ConvexityPair => {
            let (p, q) = (Point2::new(-3.0, 0.0), Point2::new(3.0, 0.0));
            let (pp, qq) = (Point2::new(-2.0, 0.0), Point2::new(2.0, 0.0));
            rows.extend(curve("geodesic_pq", |t| sigma_delta(delta, p, q, t))?);
            rows.extend(curve("geodesic_pq_prime", |t| {
                sigma_delta(delta, pp, qq, t)
            })?);
            rows.extend(curve("distance", |t| {
                let d = SpaceId::Hybrid
                    .dist(sigma_delta(delta, p, q, t)?, sigma_delta(delta, pp, qq, t)?);
                Ok(Point2::new(t, d))
            })?);
        }
        Figure::FoldedX1 => {
            let v = |x, y| Point2::new(x, y);
            rows.extend(polygon(
                "boundary",
                &[
                    v(-2.0, 1.0),
                    v(-1.0, 0.0),
                    v(0.0, 1.0),
                    v(1.0, 0.0),
                    v(0.0, -1.0),
                    v(-1.0, 0.0),
                ],
            ));
            let (p, q) = (v(-2.0, 1.0), v(0.0, 0.0));
            rows.extend(curve("forward", |t| sigma_x1(p, q, t))?);
            rows.extend(curve("reversed", |t| sigma_x1(q, p, 1.0 - t))?);
        }
        Figure::MidpointX1 => {
            let (p, q) = (Point2::new(-1.5, 0.5), Point2::new(0.0, 0.5));
            rows.extend(curve("forward", |t| tau_x1(p, q, t))?);
            rows.extend(curve("reversed", |t| tau_x1(q, p, 1.0 - t))?);
            let m = crate::bicombings::averaged_midpoint_x1(p, q)?;
            rows.push(Row {
                series: "midpoint",
                t: 0.5,
                x: m.x,
                y: m.y,
            });
        }
    }
    Ok(rows)
}

/// Writes a figure as CSV to `out`.
pub fn export_figure(figure: Figure, delta: f64, out: &Path) -> Result<()> {
    let rows = figure_rows(figure, delta)?;
    if let Some(dir) = out.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    }
    let mut w = csv::Writer::from_path(out)?;
    w.write_record(["series", "t", "x", "y"])?;
    for r in rows {
        w.write_record([
            r.series.to_string(),
            r.t.to_string(),
            r.x.to_string(),
            r.y.to_string(),
        ])?;
    }
    w.flush().map_err(|e| Error::io(out, e))
}
