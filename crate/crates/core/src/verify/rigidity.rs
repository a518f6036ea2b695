use std::collections::HashMap;
use std::f64::consts::PI;

use rayon::prelude::*;

use super::{run_probe, Draw, Probe, Property, PropertyReport, SampleConfig, Scan};
use crate::bicombings::{linear, PlanarBicombing};
use crate::error::{Error, Result};
use crate::spaces::{Point2, Region, SpaceId, MEMBERSHIP_TOL};

/// Directions probed on the boundary of `B_{2r}` before a local linearity
/// check.
const BOUNDARY_DIRECTIONS: usize = 2048;
const ANGLE_SCAN: usize = 64;
const GOLDEN_STEPS: usize = 80;
const BISECTION_STEPS: usize = 80;

/// A connected piece of `M^(t)(p, q)`.
#[derive(Debug, Clone, PartialEq)]
pub struct MtCluster {
    /// Refined points, one per grid hit.
    pub points: Vec<Point2>,
    /// The point of smallest residual.
    pub representative: Point2,
    pub residual: f64,
    /// Corners of the bounding box of `points`.
    pub lower: Point2,
    pub upper: Point2,
}

impl MtCluster {
    /// Builds a cluster from `(extent point, minimizer, minimizer residual)`
    /// triples.
    fn from_hits(hits: Vec<(Point2, Point2, f64)>) -> Self {
        let (_, mut representative, mut residual) = hits[0];
        let mut lower = hits[0].0;
        let mut upper = hits[0].0;
        for &(z, best, r) in &hits {
            if r < residual {
                representative = best;
                residual = r;
            }
            lower = Point2::new(lower.x.min(z.x), lower.y.min(z.y));
            upper = Point2::new(upper.x.max(z.x), upper.y.max(z.y));
        }
        MtCluster {
            points: hits.into_iter().map(|(z, _, _)| z).collect(),
            representative,
            residual,
            lower,
            upper,
        }
    }

    fn single(p: Point2) -> Self {
        MtCluster::from_hits(vec![(p, p, 0.0)])
    }

    /// Largest extent of the bounding box along either axis.
    pub fn span(&self) -> f64 {
        (self.upper.x - self.lower.x).max(self.upper.y - self.lower.y)
    }
}

struct Spheres {
    space: SpaceId,
    p: Point2,
    q: Point2,
    rp: f64,
    rq: f64,
}

impl Spheres {
    fn residual(&self, z: Point2) -> f64 {
        let a = (self.space.dist(z, self.p) - self.rp).abs();
        let b = (self.space.dist(z, self.q) - self.rq).abs();
        a.max(b)
    }

    /// Moves a grid hit onto the larger sphere and searches along it. Returns
    /// the nearest point with residual at most `tol / 10`, together with the
    /// local residual minimizer and its residual.
    fn refine(&self, z: Point2, window: f64, tol: f64) -> Option<(Point2, Point2, f64)> {
        let (c, r, o, ro) = if self.rp >= self.rq {
            (self.p, self.rp, self.q, self.rq)
        } else {
            (self.q, self.rq, self.p, self.rp)
        };
        let on_sphere = |theta: f64| {
            let u = Point2::new(theta.cos(), theta.sin());
            c + (r / self.space.norm(u)) * u
        };
        let g = |theta: f64| (self.space.dist(on_sphere(theta), o) - ro).abs();
        let v = z - c;
        let start = v.y.atan2(v.x);
        let target = tol / 10.0;
        let step = 2.0 * window / ANGLE_SCAN as f64;
        let best = (0..=ANGLE_SCAN)
            .map(|k| start - window + k as f64 * step)
            .map(|theta| (g(theta), theta))
            .fold((f64::INFINITY, start), |a, b| if b.0 < a.0 { b } else { a })
            .1;
        let (mut lo, mut hi) = (best - step, best + step);
        let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
        for _ in 0..GOLDEN_STEPS {
            let a = hi - inv_phi * (hi - lo);
            let b = lo + inv_phi * (hi - lo);
            if g(a) <= g(b) {
                hi = b;
            } else {
                lo = a;
            }
        }
        let minimizer = on_sphere(0.5 * (lo + hi));
        let best_res = self.residual(minimizer);
        if best_res > tol {
            return None;
        }
        if g(start) <= target {
            return Some((on_sphere(start), minimizer, best_res));
        }
        let mut inside = 0.5 * (lo + hi);
        if g(inside) > target {
            return None;
        }
        let mut outside = start;
        for _ in 0..BISECTION_STEPS {
            let mid = 0.5 * (inside + outside);
            if g(mid) <= target {
                inside = mid;
            } else {
                outside = mid;
            }
        }
        let z = on_sphere(inside);
        (self.residual(z) <= tol).then_some((z, minimizer, best_res))
    }
}

fn find(parent: &mut [usize], mut i: usize) -> usize {
    while parent[i] != i {
        parent[i] = parent[parent[i]];
        i = parent[i];
    }
    i
}

fn union(parent: &mut [usize], a: usize, b: usize) {
    let (ra, rb) = (find(parent, a), find(parent, b));
    if ra != rb {
        parent[ra.max(rb)] = ra.min(rb);
    }
}

/// Points `z` with `d(z, p) = t d(p, q)` and `d(z, q) = (1-t) d(p, q)`, found
/// on a `resolution²` grid over the overlap of the two spheres' bounding
/// boxes, refined to residual `tol / 10` and grouped into grid-connected
/// clusters. Clusters are sorted by representative.
pub fn mt_set(
    space: SpaceId,
    p: Point2,
    q: Point2,
    t: f64,
    resolution: usize,
    tol: f64,
) -> Result<Vec<MtCluster>> {
    if !(0.0..=1.0).contains(&t) {
        return Err(Error::Config(format!("t {t} outside [0, 1]")));
    }
    if resolution < 2 {
        return Err(Error::Config(format!(
            "resolution {resolution} must be >= 2"
        )));
    }
    if !(tol.is_finite() && tol > 0.0) {
        return Err(Error::Config(format!("tol {tol} must be > 0")));
    }
    if !p.is_finite() {
        return Err(Error::NonFinite(p));
    }
    if !q.is_finite() {
        return Err(Error::NonFinite(q));
    }
    let d = space.dist(p, q);
    let spheres = Spheres {
        space,
        p,
        q,
        rp: t * d,
        rq: (1.0 - t) * d,
    };
    if spheres.rp == 0.0 {
        return Ok(vec![MtCluster::single(p)]);
    }
    if spheres.rq == 0.0 {
        return Ok(vec![MtCluster::single(q)]);
    }

    let (ex, ey) = space.unit_ball_extent();
    let pad = 0.01 * d + tol;
    let lo = Point2::new(
        (p.x - spheres.rp * ex).max(q.x - spheres.rq * ex) - pad,
        (p.y - spheres.rp * ey).max(q.y - spheres.rq * ey) - pad,
    );
    let hi = Point2::new(
        (p.x + spheres.rp * ex).min(q.x + spheres.rq * ex) + pad,
        (p.y + spheres.rp * ey).min(q.y + spheres.rq * ey) + pad,
    );
    let n = resolution - 1;
    let hx = (hi.x - lo.x) / n as f64;
    let hy = (hi.y - lo.y) / n as f64;
    let node = |i: usize, j: usize| Point2::new(lo.x + i as f64 * hx, lo.y + j as f64 * hy);
    let detect = tol + space.norm(Point2::new(0.5 * hx, 0.5 * hy));
    let diag = hx.hypot(hy);
    let window = (4.0 * (diag + tol) / spheres.rp.min(spheres.rq)).min(PI);

    let hits: Vec<((usize, usize), Point2, Point2, f64)> = (0..resolution)
        .into_par_iter()
        .flat_map_iter(|j| {
            let spheres = &spheres;
            (0..resolution).filter_map(move |i| {
                let z = node(i, j);
                if spheres.residual(z) > detect {
                    return None;
                }
                spheres
                    .refine(z, window, tol)
                    .map(|(z, best, r)| ((i, j), z, best, r))
            })
        })
        .collect();
    if hits.is_empty() {
        return Ok(Vec::new());
    }

    let index: HashMap<(usize, usize), usize> =
        hits.iter().enumerate().map(|(k, h)| (h.0, k)).collect();
    let mut parent: Vec<usize> = (0..hits.len()).collect();
    for (k, &((i, j), ..)) in hits.iter().enumerate() {
        for (di, dj) in [(1, 0), (0, 1), (1, 1), (1, -1)] {
            let (ni, nj) = (i as i64 + di, j as i64 + dj);
            if ni < 0 || nj < 0 {
                continue;
            }
            if let Some(&m) = index.get(&(ni as usize, nj as usize)) {
                union(&mut parent, k, m);
            }
        }
    }

    let mut groups: Vec<Vec<(Point2, Point2, f64)>> = Vec::new();
    let mut slot: HashMap<usize, usize> = HashMap::new();
    for (k, &(_, z, best, r)) in hits.iter().enumerate() {
        let root = find(&mut parent, k);
        let g = *slot.entry(root).or_insert_with(|| {
            groups.push(Vec::new());
            groups.len() - 1
        });
        groups[g].push((z, best, r));
    }
    let mut clusters: Vec<MtCluster> = groups.into_iter().map(MtCluster::from_hits).collect();

    // refinement can pull neighbouring grid components onto the same piece
    let near = |a: &MtCluster, b: &MtCluster| {
        let gx = (a.lower.x - b.upper.x).max(b.lower.x - a.upper.x).max(0.0);
        let gy = (a.lower.y - b.upper.y).max(b.lower.y - a.upper.y).max(0.0);
        gx.hypot(gy) <= diag
    };
    let mut merged = true;
    while merged {
        merged = false;
        'outer: for a in 0..clusters.len() {
            for b in a + 1..clusters.len() {
                if near(&clusters[a], &clusters[b]) {
                    let other = clusters.swap_remove(b);
                    let first = &mut clusters[a];
                    first.points.extend(other.points);
                    first.lower = Point2::new(
                        first.lower.x.min(other.lower.x),
                        first.lower.y.min(other.lower.y),
                    );
                    first.upper = Point2::new(
                        first.upper.x.max(other.upper.x),
                        first.upper.y.max(other.upper.y),
                    );
                    if other.residual < first.residual {
                        first.representative = other.representative;
                        first.residual = other.residual;
                    }
                    merged = true;
                    break 'outer;
                }
            }
        }
    }
    clusters.sort_by(|a, b| {
        (a.representative.x, a.representative.y)
            .partial_cmp(&(b.representative.x, b.representative.y))
            .expect("finite representatives")
    });
    Ok(clusters)
}

/// `b` restricted to sampling inside a ball.
struct Localized<'a, B> {
    inner: &'a B,
    ball: Region,
}

impl<B: PlanarBicombing> PlanarBicombing for Localized<'_, B> {
    fn name(&self) -> String {
        self.inner.name()
    }

    fn space(&self) -> SpaceId {
        self.inner.space()
    }

    fn domain(&self) -> &Region {
        &self.ball
    }

    fn eval(&self, p: Point2, q: Point2, t: f64) -> Result<Point2> {
        self.inner.eval(p, q, t)
    }
}

fn linearity_gap<B: PlanarBicombing>(b: &B, p: Point2, q: Point2, t: f64) -> f64 {
    match b.eval(p, q, t) {
        Ok(z) => b.space().dist(z, linear(p, q, t)),
        Err(_) => f64::INFINITY,
    }
}

/// Checks `σ(p, q, t) = (1-t)p + tq` for `p, q` in `B_r(center)`, after
/// confirming that `B_{2r}(center)` lies in the domain of `b`.
pub fn check_local_linearity<B: PlanarBicombing>(
    b: &B,
    center: Point2,
    r: f64,
    cfg: &SampleConfig,
) -> Result<PropertyReport> {
    let space = b.space();
    let ball = Region::ball(center, r, space)?;
    let domain = b.domain();
    if !domain.contains(center, MEMBERSHIP_TOL) {
        return Err(Error::BallNotInDomain {
            center,
            radius: 2.0 * r,
            escape: center,
        });
    }
    for k in 0..BOUNDARY_DIRECTIONS {
        let theta = 2.0 * PI * k as f64 / BOUNDARY_DIRECTIONS as f64;
        let u = Point2::new(theta.cos(), theta.sin());
        let z = center + (2.0 * r / space.norm(u)) * u;
        if !domain.contains(z, MEMBERSHIP_TOL) {
            return Err(Error::BallNotInDomain {
                center,
                radius: 2.0 * r,
                escape: z,
            });
        }
    }

    let local = Localized { inner: b, ball };
    let grid = cfg.grid();
    let scan = |draw: &Draw<Point2>| {
        let (p, q) = (draw.points[0], draw.points[1]);
        let mut scan = Scan::new();
        for &t in &grid {
            scan.offer(linearity_gap(b, p, q, t), &[t]);
        }
        scan
    };
    let draw = |rng: &mut rand_chacha::ChaCha8Rng| {
        Ok(Draw {
            points: vec![
                crate::bicombings::Bicombing::sample_point(&local, rng)?,
                crate::bicombings::Bicombing::sample_point(&local, rng)?,
            ],
            params: Vec::new(),
        })
    };
    run_probe(
        &local,
        cfg,
        Probe {
            property: Property::Linear,
            draw,
            scan,
            kernel: |pts: &[Point2], ts: &[f64]| linearity_gap(b, pts[0], pts[1], ts[0]),
            free: 1,
        },
    )
}
