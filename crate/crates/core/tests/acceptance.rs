//! Acceptance run. Prints one line per criterion and exits non-zero when a
//! criterion's outcome differs from the recorded status in `KNOWN_FAILING`.

use std::process::ExitCode;
use std::time::Instant;

use bicombing_lab::bicombings::{sigma_delta, tau_x1};
use bicombing_lab::funcspace::{
    horizontal_bicombing, l1_distance, vertical_bicombing, MonotoneFn, SQRT_MESH,
};
use bicombing_lab::midpoint::{reversibilize, MidpointConfig};
use bicombing_lab::spaces::{Point2, SpaceId};
use bicombing_lab::suite::{closed_form_error, midpoint_contraction};
use bicombing_lab::verify::{
    builtin_matrix, check_consistent, check_reversible, consistency_deviation, delta_thresholds,
    mt_set, MatrixConfig, SampleConfig,
};
use bicombing_lab::{Delta, SigmaDelta};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Criteria whose stated target does not hold for the implementation.
const KNOWN_FAILING: [u32; 1] = [3];

type Criterion = (u32, &'static str, fn() -> Outcome);

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: String) -> Outcome {
    Outcome { passed, detail }
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let matrix = builtin_matrix(&MatrixConfig::default()).expect("matrix runs");
    let secs = start.elapsed().as_secs_f64();
    let deviations = matrix.deviations();
    outcome(
        deviations.is_empty(),
        format!(
            "property matrix over {} bicombings, {} deviations, {secs:.1}s{}",
            matrix.rows.len(),
            deviations.len(),
            if deviations.is_empty() {
                String::new()
            } else {
                format!(": {}", deviations.join("; "))
            }
        ),
    )
}

fn criterion_2() -> Outcome {
    let p = Point2::new(-1.5, 0.5);
    let q = Point2::new(0.0, 0.5);
    let a = tau_x1(p, q, 5.0 / 12.0).unwrap();
    let b = tau_x1(q, p, 7.0 / 12.0).unwrap();
    let ea = (a.x + 0.875).abs().max((a.y - 0.125).abs());
    let eb = (b.x + 0.875).abs().max((b.y - 1.0 / 48.0).abs());
    outcome(
        ea <= 1e-12 && eb <= 1e-12,
        format!("tau_X1 witnesses {a} and {b}, errors {ea:e} and {eb:e}"),
    )
}

fn worked_gap(t: f64) -> f64 {
    let d = Delta::max();
    let a = sigma_delta(d, Point2::new(-3.0, 0.0), Point2::new(3.0, 0.0), t).unwrap();
    let b = sigma_delta(d, Point2::new(-2.0, 0.0), Point2::new(2.0, 0.0), t).unwrap();
    (a.x - b.x).powi(2) + (a.y - b.y).powi(2)
}

fn criterion_3() -> Outcome {
    let d = Delta::MAX;
    let mut worst: f64 = 0.0;
    for tau in [0.01, 0.05, 0.1] {
        let stated = 4.0 * d * d + (1.0 - 72.0 * d * d) * tau * tau + 324.0 * d * d * tau.powi(4);
        for t in [0.5 - tau, 0.5 + tau] {
            worst = worst.max((worked_gap(t) - stated).abs());
        }
    }
    outcome(
        worst <= 1e-12,
        format!(
            "squared gap at 1/2 +- tau vs 4d^2+(1-72d^2)tau^2+324d^2tau^4: max error {worst:e}"
        ),
    )
}

/// The same configuration against `4δ² + (4-288δ²)τ² + 5184δ²τ⁴`, which is
/// the stated polynomial evaluated at `2τ`, together with the lower bound
/// `4δ²`.
fn criterion_3_companion() -> Outcome {
    let d = Delta::MAX;
    let mut worst: f64 = 0.0;
    let mut above = true;
    for tau in [0.01, 0.05, 0.1] {
        let poly = 4.0 * d * d + (4.0 - 288.0 * d * d) * tau * tau + 5184.0 * d * d * tau.powi(4);
        for t in [0.5 - tau, 0.5 + tau] {
            let g = worked_gap(t);
            worst = worst.max((g - poly).abs());
            above &= g >= 4.0 * d * d;
        }
    }
    outcome(
        worst <= 1e-12 && above && (worked_gap(0.5) - 4.0 * d * d).abs() <= 1e-15,
        format!("same gap vs 4d^2+(4-288d^2)tau^2+5184d^2tau^4: max error {worst:e}, gap >= 4d^2: {above}"),
    )
}

fn criterion_4() -> Outcome {
    let cfg = SampleConfig::default();
    let b = SigmaDelta::new(Delta::max());
    let report = check_consistent(&b, &cfg).unwrap();
    let p = Point2::new(-3.0, 0.0);
    let q = Point2::new(3.0, 0.0);
    let at_witness = (0..=32)
        .map(|k| consistency_deviation(&b, &p, &q, 1.0 / 6.0, 5.0 / 6.0, k as f64 / 32.0).unwrap())
        .fold(0.0, f64::max);
    let flat = check_consistent(&SigmaDelta::new(Delta::zero()), &cfg).unwrap();
    outcome(
        !report.passed && report.worst_violation >= 1e-3 && at_witness >= 1e-3 && flat.passed,
        format!(
            "delta=1/64 worst {:e}, at witness {at_witness:e}; delta=0 worst {:e}",
            report.worst_violation, flat.worst_violation
        ),
    )
}

fn criterion_5() -> Outcome {
    let contraction = midpoint_contraction(42).unwrap();
    let cfg = SampleConfig::new(42, 20_000, 33, 2e-10).unwrap();
    let rev = reversibilize(
        SigmaDelta::tilde(Delta::max()),
        MidpointConfig::new(1e-10, 64).unwrap(),
    );
    let report = check_reversible(&rev, &cfg).unwrap();
    outcome(
        contraction.observed && report.passed,
        format!(
            "contraction {}; reversibilized sigma_tilde worst {:e} at tol 2e-10",
            contraction.detail, report.worst_violation
        ),
    )
}

fn criterion_6() -> Outcome {
    let p = Point2::new(1.0, 1.0);
    let mut ok = true;
    let mut worst: f64 = 0.0;
    for t in [0.25, 0.5, 0.75] {
        let cl = mt_set(SpaceId::Linf, p, -1.0 * p, t, 2001, 1e-6).unwrap();
        ok &= cl.len() == 1;
        if let Some(c) = cl.first() {
            worst = worst.max(SpaceId::Linf.dist(c.representative, (1.0 - 2.0 * t) * p));
        }
    }
    let seg = mt_set(
        SpaceId::Linf,
        Point2::new(1.0, 0.0),
        Point2::new(-1.0, 0.0),
        0.5,
        2001,
        1e-6,
    )
    .unwrap();
    let spans = seg.len() == 1
        && seg[0].lower.y <= -1.0 + 1e-6
        && seg[0].upper.y >= 1.0 - 1e-6
        && seg[0].lower.x.abs() <= 1e-6
        && seg[0].upper.x.abs() <= 1e-6;
    outcome(
        ok && worst <= 1e-6 && spans,
        format!(
            "singletons error {worst:e}; segment cluster x in [{:e}, {:e}], y in [{}, {}]",
            seg[0].lower.x, seg[0].upper.x, seg[0].lower.y, seg[0].upper.y
        ),
    )
}

fn criterion_7() -> Outcome {
    let err = closed_form_error(0.5);
    let f = MonotoneFn::sqrt_graded(SQRT_MESH);
    let g = MonotoneFn::identity();
    let gap = l1_distance(
        &vertical_bicombing(&f, &g, 0.5),
        &horizontal_bicombing(&f, &g, 0.5),
    );
    let mut iso: f64 = 0.0;
    for seed in 0..1000 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = MonotoneFn::random(&mut rng, 16);
        let b = MonotoneFn::random(&mut rng, 16);
        iso = iso.max((l1_distance(&a, &b) - l1_distance(&a.invert(), &b.invert())).abs());
    }
    outcome(
        err <= 5e-4 && gap > 1e-2 && iso <= 1e-12,
        format!("closed-form error {err:e}, L1(vertical, horizontal) {gap:.6}, inversion isometry error {iso:e}"),
    )
}

fn criterion_8() -> Outcome {
    let direct = |d: f64| {
        [
            (4.0 - 144.0 * d - 640.0 * d * d) / (1.0 - 4.0 * d),
            3.0 - 96.0 * d - 576.0 * d * d,
            31.0 / 8.0 - 96.0 * d - 576.0 * d * d,
            255.0 / 64.0 - 96.0 * d - 576.0 * d * d,
            4.0 - 33.0 * d,
        ]
    };
    let at = |d: f64| delta_thresholds(d).unwrap();
    let small = at(Delta::MAX);
    let large = at(0.03);
    let mut err: f64 = 0.0;
    for (th, d) in [(&small, Delta::MAX), (&large, 0.03)] {
        for (t, v) in th.iter().zip(direct(d)) {
            err = err.max((t.value - v).abs());
        }
    }
    let second = large.iter().find(|t| t.label == "3-96δ-576δ²").unwrap();
    outcome(
        small.iter().all(|t| t.positive) && !second.positive && err <= 1e-15,
        format!(
            "all positive at 1/64: {}; 3-96d-576d^2 at 0.03 = {}; max error {err:e}",
            small.iter().all(|t| t.positive),
            second.value
        ),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        (1, "property matrix", criterion_1),
        (2, "tau_X1 golden witness", criterion_2),
        (3, "worked gap polynomial", criterion_3),
        (4, "non-consistency gap", criterion_4),
        (5, "midpoint convergence", criterion_5),
        (6, "max-norm midstates", criterion_6),
        (7, "function space", criterion_7),
        (8, "closing thresholds", criterion_8),
    ];
    let mut unexpected = 0;
    let mut passed = 0;
    for (n, name, run) in criteria {
        let o = run();
        passed += o.passed as u32;
        let known = KNOWN_FAILING.contains(&n);
        if o.passed == known {
            unexpected += 1;
        }
        println!(
            "criterion {n} ({name}): {}{} | {}",
            if o.passed { "PASS" } else { "FAIL" },
            if known && !o.passed { " (known)" } else { "" },
            o.detail
        );
        if n == 3 {
            let c = criterion_3_companion();
            if !c.passed {
                unexpected += 1;
            }
            println!(
                "criterion 3 companion (gap at 1/2 +- tau, direct evaluation): {} | {}",
                if c.passed { "PASS" } else { "FAIL" },
                c.detail
            );
        }
    }
    println!("{passed}/8 criteria pass");
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{unexpected} outcome(s) differ from the recorded status");
        ExitCode::FAILURE
    }
}
