use bicombing_lab::bicombings::{fold_f, retraction_pi, sigma_x1, FoldDirection};
use bicombing_lab::funcspace::{l1_distance, MonotoneFn};
use bicombing_lab::midpoint::{midpoint_trace, MidpointConfig};
use bicombing_lab::spaces::sample_region;
use bicombing_lab::{Bicombing, Delta, FoldedX1, Point2, Region, SigmaDelta, SpaceId};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const SPACES: [SpaceId; 3] = [SpaceId::Euclid, SpaceId::Linf, SpaceId::Hybrid];

fn point() -> impl Strategy<Value = Point2> {
    (-5.0..5.0f64, -5.0..5.0f64).prop_map(|(x, y)| Point2::new(x, y))
}

fn pair_in(region: Region, seed: u64) -> (Point2, Point2) {
    let pts = sample_region(&region, seed, 2).unwrap();
    (pts[0], pts[1])
}

proptest! {
    #[test]
    fn norms_are_norms(a in point(), b in point(), s in -3.0..3.0f64) {
        for space in SPACES {
            let n = |v| space.norm(v);
            prop_assert!(n(a + b) <= n(a) + n(b) + 1e-12);
            prop_assert!((n(s * a) - s.abs() * n(a)).abs() <= 1e-12);
            prop_assert!(n(a) >= 0.0);
        }
    }

    #[test]
    fn norm_ordering(a in point()) {
        let (e, l, h) = (SpaceId::Euclid.norm(a), SpaceId::Linf.norm(a), SpaceId::Hybrid.norm(a));
        prop_assert!(l <= e + 1e-12);
        prop_assert!(h <= e + 1e-12);
        prop_assert!(l <= h * std::f64::consts::SQRT_2 + 1e-12);
    }

    #[test]
    fn retraction_is_one_lipschitz(seed in any::<u64>()) {
        let (p, q) = pair_in(Region::Y1, seed);
        let (rp, rq) = (retraction_pi(p).unwrap(), retraction_pi(q).unwrap());
        prop_assert!(SpaceId::Linf.dist(rp, rq) <= SpaceId::Linf.dist(p, q) + 1e-12);
        prop_assert!(Region::X1.contains(rp, 1e-12));
        prop_assert_eq!(retraction_pi(rp).unwrap(), rp);
    }

    #[test]
    fn fold_is_an_isometry(seed in any::<u64>()) {
        let (p, q) = pair_in(Region::X2, seed);
        let (fp, fq) = (
            fold_f(p, FoldDirection::Forward).unwrap(),
            fold_f(q, FoldDirection::Forward).unwrap(),
        );
        prop_assert!((SpaceId::Linf.dist(fp, fq) - SpaceId::Linf.dist(p, q)).abs() <= 1e-12);
        prop_assert_eq!(fold_f(fp, FoldDirection::Inverse).unwrap(), p);
    }

    #[test]
    fn x1_geodesics_stay_in_x1(seed in any::<u64>(), t in 0.0..=1.0f64) {
        let (p, q) = pair_in(Region::X1, seed);
        prop_assert!(Region::X1.contains(sigma_x1(p, q, t).unwrap(), 1e-12));
    }

    #[test]
    fn sigma_delta_stays_in_x(seed in any::<u64>(), t in 0.0..=1.0f64) {
        let b = SigmaDelta::new(Delta::max());
        let (p, q) = pair_in(Region::X, seed);
        prop_assert!(Region::X.contains(b.eval(&p, &q, t).unwrap(), 1e-12));
        let tilde = SigmaDelta::tilde(Delta::max());
        prop_assert!(Region::X.contains(tilde.eval(&p, &q, t).unwrap(), 1e-12));
    }

    #[test]
    fn averaged_midpoint_sits_between(seed in any::<u64>()) {
        let (p, q) = pair_in(Region::X1, seed);
        let m = bicombing_lab::bicombings::averaged_midpoint_x1(p, q).unwrap();
        let d = SpaceId::Linf.dist(p, q);
        prop_assert!(SpaceId::Linf.dist(m, p) <= 0.5 * d + 1e-12);
        prop_assert!(SpaceId::Linf.dist(m, q) <= 0.5 * d + 1e-12);
        let tau = FoldedX1::tau();
        let half = tau.eval(&p, &q, 0.5).unwrap();
        prop_assert!(SpaceId::Linf.dist(half, m) <= 1e-15);
    }

    #[test]
    fn midpoint_gaps_halve(seed in any::<u64>()) {
        let b = FoldedX1::sigma();
        let (p, q) = pair_in(Region::X1, seed);
        let trace = midpoint_trace(&b, &p, &q, &MidpointConfig::default()).unwrap();
        for w in trace.gaps.windows(2) {
            prop_assert!(w[1] <= 0.5 * w[0] * (1.0 + 1e-9) + 1e-300);
        }
    }

    #[test]
    fn inversion_is_an_l1_isometry(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = MonotoneFn::random(&mut rng, 12);
        let g = MonotoneFn::random(&mut rng, 12);
        let d = l1_distance(&f, &g);
        prop_assert!((l1_distance(&f.invert(), &g.invert()) - d).abs() <= 1e-12);
        prop_assert!(l1_distance(&f.invert().invert(), &f) <= 1e-12);
    }
}
