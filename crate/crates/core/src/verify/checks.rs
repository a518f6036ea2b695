use rand_chacha::ChaCha8Rng;

use super::{run_probe, Draw, Probe, Property, PropertyReport, SampleConfig, Scan};
use crate::bicombings::Bicombing;
use crate::error::Result;

/// Step sizes for the discrete two-sided convexity test.
pub const DEFAULT_TAU_STEPS: [f64; 2] = [1.0 / 64.0, 1.0 / 128.0];

fn draw_points<B: Bicombing>(
    b: &B,
    k: usize,
) -> impl Fn(&mut ChaCha8Rng) -> Result<Draw<B::Point>> + Sync + '_ {
    move |rng| {
        let points = (0..k)
            .map(|_| b.sample_point(rng))
            .collect::<Result<Vec<_>>>()?;
        Ok(Draw {
            points,
            params: Vec::new(),
        })
    }
}

fn or_inf(v: Result<f64>) -> f64 {
    v.unwrap_or(f64::INFINITY)
}

fn geodesic_kernel<B: Bicombing>(b: &B, pts: &[B::Point], ts: &[f64]) -> f64 {
    or_inf((|| {
        let (p, q) = (&pts[0], &pts[1]);
        let (s, t) = (ts[0], ts[1]);
        let d = b.distance(p, q);
        let a = b.eval(p, q, s)?;
        let c = b.eval(p, q, t)?;
        Ok([
            (b.distance(&a, &c) - (s - t).abs() * d).abs(),
            (b.distance(&a, p) - s * d).abs(),
            (b.distance(&a, q) - (1.0 - s) * d).abs(),
            (b.distance(&c, p) - t * d).abs(),
            (b.distance(&c, q) - (1.0 - t) * d).abs(),
        ]
        .into_iter()
        .fold(0.0, f64::max))
    })())
}

/// Constant speed plus endpoint identities, on every pair of grid times.
pub fn check_geodesic<B: Bicombing>(b: &B, cfg: &SampleConfig) -> Result<PropertyReport> {
    let grid = cfg.grid();
    let scan = |draw: &Draw<B::Point>| {
        let (p, q) = (&draw.points[0], &draw.points[1]);
        let d = b.distance(p, q);
        let mut scan = Scan::new();
        let mut path = Vec::with_capacity(grid.len());
        let mut ends = Vec::with_capacity(grid.len());
        for &t in &grid {
            match b.eval(p, q, t) {
                Ok(z) => {
                    ends.push(
                        (b.distance(&z, p) - t * d)
                            .abs()
                            .max((b.distance(&z, q) - (1.0 - t) * d).abs()),
                    );
                    path.push(z);
                }
                Err(_) => {
                    scan.offer(f64::INFINITY, &[t, t]);
                    return scan;
                }
            }
        }
        for i in 0..grid.len() {
            for j in i..grid.len() {
                let speed = (b.distance(&path[i], &path[j]) - (grid[j] - grid[i]) * d).abs();
                scan.offer(speed.max(ends[i]).max(ends[j]), &[grid[i], grid[j]]);
            }
        }
        scan
    };
    run_probe(
        b,
        cfg,
        Probe {
            property: Property::Geodesic,
            draw: draw_points(b, 2),
            scan,
            kernel: |pts: &[B::Point], ts: &[f64]| geodesic_kernel(b, pts, ts),
            free: 2,
        },
    )
}

fn conical_excess<B: Bicombing>(b: &B, pts: &[B::Point], t: f64) -> Result<f64> {
    let (p, q, pp, qq) = (&pts[0], &pts[1], &pts[2], &pts[3]);
    let lhs = b.distance(&b.eval(p, q, t)?, &b.eval(pp, qq, t)?);
    let rhs = (1.0 - t) * b.distance(p, pp) + t * b.distance(q, qq);
    Ok((lhs - rhs).max(0.0))
}

/// `d(σ_pq(t), σ_p'q'(t)) <= (1-t)d(p,p') + t d(q,q')`.
pub fn check_conical<B: Bicombing>(b: &B, cfg: &SampleConfig) -> Result<PropertyReport> {
    let grid = cfg.grid();
    let scan = |draw: &Draw<B::Point>| {
        let mut scan = Scan::new();
        for &t in &grid {
            scan.offer(or_inf(conical_excess(b, &draw.points, t)), &[t]);
        }
        scan
    };
    run_probe(
        b,
        cfg,
        Probe {
            property: Property::Conical,
            draw: draw_points(b, 4),
            scan,
            kernel: |pts: &[B::Point], ts: &[f64]| or_inf(conical_excess(b, pts, ts[0])),
            free: 1,
        },
    )
}

/// `2f(t) - f(t-τ) - f(t+τ)` for `f(s) = d(σ_pq(s), σ_p'q'(s))`; positive
/// values are convexity violations.
pub fn convexity_defect<B: Bicombing>(b: &B, pts: &[B::Point], t: f64, step: f64) -> Result<f64> {
    let (p, q, pp, qq) = (&pts[0], &pts[1], &pts[2], &pts[3]);
    let f = |s: f64| -> Result<f64> { Ok(b.distance(&b.eval(p, q, s)?, &b.eval(pp, qq, s)?)) };
    Ok(2.0 * f(t)? - f(t - step)? - f(t + step)?)
}

/// Discrete midpoint convexity of the distance between two geodesics at
/// interior grid times and each step in `tau_steps`.
pub fn check_convex<B: Bicombing>(
    b: &B,
    cfg: &SampleConfig,
    tau_steps: &[f64],
) -> Result<PropertyReport> {
    let grid = cfg.grid();
    let steps: Vec<f64> = tau_steps.iter().copied().filter(|s| *s > 0.0).collect();
    let scan = |draw: &Draw<B::Point>| {
        let mut scan = Scan::new();
        for &t in &grid[1..grid.len() - 1] {
            for &step in &steps {
                if t - step < 0.0 || t + step > 1.0 {
                    continue;
                }
                let defect = or_inf(convexity_defect(b, &draw.points, t, step));
                scan.offer(defect.max(0.0), &[t, step]);
            }
        }
        if scan.evaluated == 0 {
            scan.offer(0.0, &[0.5, 0.0]);
        }
        scan
    };
    let kernel = |pts: &[B::Point], ts: &[f64]| {
        let step = ts[1];
        let t = ts[0].clamp(step, 1.0 - step);
        or_inf(convexity_defect(b, pts, t, step)).max(0.0)
    };
    run_probe(
        b,
        cfg,
        Probe {
            property: Property::Convex,
            draw: draw_points(b, 4),
            scan,
            kernel,
            free: 1,
        },
    )
}

/// `d(σ(σ_pq(s₁), σ_pq(s₂), u), σ_pq((1-u)s₁ + u s₂))` with `s₁ <= s₂`.
pub fn consistency_deviation<B: Bicombing>(
    b: &B,
    p: &B::Point,
    q: &B::Point,
    s1: f64,
    s2: f64,
    u: f64,
) -> Result<f64> {
    let (s1, s2) = if s1 <= s2 { (s1, s2) } else { (s2, s1) };
    let a = b.eval(p, q, s1)?;
    let c = b.eval(p, q, s2)?;
    let sub = b.eval(&a, &c, u)?;
    let restricted = b.eval(p, q, (1.0 - u) * s1 + u * s2)?;
    Ok(b.distance(&sub, &restricted))
}

/// Sub-geodesics are reparametrized restrictions. Each tuple draws one pair
/// `s₁ < s₂` from the grid and scans `u` over the grid.
pub fn check_consistent<B: Bicombing>(b: &B, cfg: &SampleConfig) -> Result<PropertyReport> {
    use rand::Rng;
    let grid = cfg.grid();
    let n = grid.len();
    let base_draw = draw_points(b, 2);
    let draw = |rng: &mut ChaCha8Rng| {
        let mut draw = base_draw(rng)?;
        let i = rng.gen_range(0..n - 1);
        let j = rng.gen_range(i + 1..n);
        draw.params = vec![grid[i], grid[j]];
        Ok(draw)
    };
    let scan = |draw: &Draw<B::Point>| {
        let (p, q) = (&draw.points[0], &draw.points[1]);
        let (s1, s2) = (draw.params[0], draw.params[1]);
        let mut scan = Scan::new();
        for &u in &grid {
            scan.offer(
                or_inf(consistency_deviation(b, p, q, s1, s2, u)),
                &[s1, s2, u],
            );
        }
        scan
    };
    let kernel = |pts: &[B::Point], ts: &[f64]| {
        or_inf(consistency_deviation(
            b, &pts[0], &pts[1], ts[0], ts[1], ts[2],
        ))
    };
    run_probe(
        b,
        cfg,
        Probe {
            property: Property::Consistent,
            draw,
            scan,
            kernel,
            free: 3,
        },
    )
}

fn reversal_gap<B: Bicombing>(b: &B, pts: &[B::Point], t: f64) -> Result<f64> {
    let (p, q) = (&pts[0], &pts[1]);
    Ok(b.distance(&b.eval(p, q, t)?, &b.eval(q, p, 1.0 - t)?))
}

/// `σ_pq(t) = σ_qp(1-t)`.
pub fn check_reversible<B: Bicombing>(b: &B, cfg: &SampleConfig) -> Result<PropertyReport> {
    let grid = cfg.grid();
    let scan = |draw: &Draw<B::Point>| {
        let mut scan = Scan::new();
        for &t in &grid {
            scan.offer(or_inf(reversal_gap(b, &draw.points, t)), &[t]);
        }
        scan
    };
    run_probe(
        b,
        cfg,
        Probe {
            property: Property::Reversible,
            draw: draw_points(b, 2),
            scan,
            kernel: |pts: &[B::Point], ts: &[f64]| or_inf(reversal_gap(b, pts, ts[0])),
            free: 1,
        },
    )
}

/// `σ_pq(½) = σ_qp(½)`.
pub fn check_midpoint_property<B: Bicombing>(b: &B, cfg: &SampleConfig) -> Result<PropertyReport> {
    let scan = |draw: &Draw<B::Point>| {
        let mut scan = Scan::new();
        scan.offer(or_inf(reversal_gap(b, &draw.points, 0.5)), &[0.5]);
        scan
    };
    run_probe(
        b,
        cfg,
        Probe {
            property: Property::MidpointProperty,
            draw: draw_points(b, 2),
            scan,
            kernel: |pts: &[B::Point], _: &[f64]| or_inf(reversal_gap(b, pts, 0.5)),
            free: 0,
        },
    )
}
