use std::f64::consts::PI;

use gldepth::{
    apply_rotation, cap_radius_from_angle, depth_curve, depth_profile, distance, expectation_gap, global_depth,
    local_depth, random_rotation, sample_uniform, sample_vmf, DepthConfig, DirectionalSample, DistanceKind, Error,
    UnitVector, VmfParams,
};
use proptest::prelude::*;

fn kind_strategy() -> impl Strategy<Value = DistanceKind> {
    prop_oneof![Just(DistanceKind::Arc), Just(DistanceKind::Cosine), Just(DistanceKind::Chord)]
}

fn vmf_sample(q: usize, kappa: f64, n: usize, seed: u64) -> DirectionalSample {
    let mu = sample_uniform(q, 1, seed ^ 0x5eed).unwrap().points()[0].clone();
    sample_vmf(&VmfParams::new(mu, kappa).unwrap(), n, seed).unwrap()
}

fn probe(q: usize, seed: u64) -> UnitVector {
    sample_uniform(q, 1, seed.wrapping_add(1)).unwrap().points()[0].clone()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn local_depth_decreases_in_delta(
        q in 2usize..6, n in 2usize..50, kappa in 0.0f64..15.0, seed in any::<u64>(),
        kind in kind_strategy(), a in 0.01f64..3.1, b in 0.01f64..3.1,
    ) {
        let sample = vmf_sample(q, kappa, n, seed);
        let x = probe(q, seed);
        let (lo, hi) = (a.min(b), a.max(b));
        let d1 = local_depth(&x, &sample, kind, cap_radius_from_angle(kind, lo).unwrap()).unwrap();
        let d2 = local_depth(&x, &sample, kind, cap_radius_from_angle(kind, hi).unwrap()).unwrap();
        prop_assert!(d1 >= d2 - 1e-12);
    }

    #[test]
    fn sandwich_and_identity(
        q in 2usize..6, n in 1usize..50, kappa in 0.0f64..15.0, seed in any::<u64>(),
        kind in kind_strategy(), angle in 0.05f64..3.1,
    ) {
        let sample = vmf_sample(q, kappa, n, seed);
        let x = probe(q, seed);
        let delta = cap_radius_from_angle(kind, angle).unwrap();
        let g = global_depth(&x, &sample, kind).unwrap();
        let l = local_depth(&x, &sample, kind, delta).unwrap();
        let sup = kind.sup();
        prop_assert!(l >= g - 1e-12);
        match expectation_gap(&x, &sample, kind, delta) {
            Ok(gap) => {
                prop_assert!(l - g < sup - g);
                prop_assert!((g - (l - gap)).abs() < 1e-12);
            }
            Err(Error::EmptyNeighborhood) => prop_assert_eq!(l, sup),
            Err(e) => prop_assert!(false, "unexpected error {e}"),
        }
    }

    #[test]
    fn depth_limit_below_smallest_distance(
        q in 2usize..6, n in 2usize..40, kappa in 0.0f64..15.0, seed in any::<u64>(), kind in kind_strategy(),
    ) {
        let sample = vmf_sample(q, kappa, n, seed);
        let x = &sample.points()[0];
        let min_positive = sample
            .iter()
            .map(|y| distance(kind, x, y).unwrap())
            .filter(|d| *d > 0.0)
            .fold(f64::INFINITY, f64::min);
        let delta = (min_positive / 2.0).min(kind.sup() / 2.0);
        prop_assert_eq!(local_depth(x, &sample, kind, delta).unwrap(), kind.sup());
    }

    #[test]
    fn rotation_leaves_depths_unchanged(
        q in 2usize..6, n in 2usize..40, kappa in 0.0f64..15.0, seed in any::<u64>(),
        kind in kind_strategy(), frac in 0.05f64..0.95, include_self in any::<bool>(),
    ) {
        let sample = vmf_sample(q, kappa, n, seed);
        let rot = random_rotation(q, seed).unwrap();
        let rotated = sample.rotated(&rot).unwrap();
        let config = DepthConfig::new(kind, Some(frac * kind.sup()), include_self).unwrap();
        let a = depth_profile(&sample, &config).unwrap();
        let b = depth_profile(&rotated, &config).unwrap();
        for i in 0..n {
            prop_assert!((a.global[i] - b.global[i]).abs() < 1e-10);
            prop_assert!((a.local[i] - b.local[i]).abs() < 1e-10);
        }
        let x = probe(q, seed);
        let ox = apply_rotation(&rot, &x).unwrap();
        let g = global_depth(&x, &sample, kind).unwrap();
        prop_assert!((g - global_depth(&ox, &rotated, kind).unwrap()).abs() < 1e-10);
    }

    #[test]
    fn profile_ignores_sample_order(q in 2usize..5, n in 3usize..30, seed in any::<u64>(), kind in kind_strategy()) {
        let sample = vmf_sample(q, 3.0, n, seed);
        let mut reversed = sample.points().to_vec();
        reversed.reverse();
        let reversed = DirectionalSample::new(reversed).unwrap();
        let config = DepthConfig::new(kind, Some(kind.sup() / 3.0), true).unwrap();
        let a = depth_profile(&sample, &config).unwrap();
        let b = depth_profile(&reversed, &config).unwrap();
        for i in 0..n {
            prop_assert!((a.global[i] - b.global[n - 1 - i]).abs() < 1e-12);
            prop_assert!((a.local[i] - b.local[n - 1 - i]).abs() < 1e-12);
        }
    }

    #[test]
    fn leave_one_out_matches_reduced_sample(
        q in 2usize..5, n in 2usize..25, seed in any::<u64>(), kind in kind_strategy(), frac in 0.05f64..0.95,
    ) {
        let sample = vmf_sample(q, 2.0, n, seed);
        let delta = frac * kind.sup();
        let profile = depth_profile(&sample, &DepthConfig::new(kind, Some(delta), false).unwrap()).unwrap();
        for i in 0..n {
            let mut rest = sample.points().to_vec();
            let x = rest.remove(i);
            let rest = DirectionalSample::new(rest).unwrap();
            prop_assert!((profile.global[i] - global_depth(&x, &rest, kind).unwrap()).abs() < 1e-12);
            prop_assert!((profile.local[i] - local_depth(&x, &rest, kind, delta).unwrap()).abs() < 1e-12);
        }
    }
}

#[test]
fn profile_is_deterministic_under_parallelism() {
    let sample = vmf_sample(4, 3.0, 400, 11);
    let config = DepthConfig::new(DistanceKind::Arc, Some(1.0), true).unwrap();
    let first = depth_profile(&sample, &config).unwrap();
    for _ in 0..3 {
        assert_eq!(depth_profile(&sample, &config).unwrap(), first);
    }
    for (i, x) in sample.iter().enumerate().step_by(37) {
        assert_eq!(first.global[i], global_depth(x, &sample, DistanceKind::Arc).unwrap());
        assert_eq!(first.local[i], local_depth(x, &sample, DistanceKind::Arc, 1.0).unwrap());
    }
}

fn angle_gap(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(2.0 * PI);
    d.min(2.0 * PI - d)
}

#[test]
fn local_curve_finds_the_mode() {
    let sample = sample_vmf(&VmfParams::circular(PI, 2.0).unwrap(), 2000, 5).unwrap();
    let curve = depth_curve(&sample, DistanceKind::Cosine, Some(1.0), 360).unwrap();
    let argmax = curve.iter().max_by(|a, b| a.1.total_cmp(&b.1)).unwrap().0;
    assert!(angle_gap(argmax, PI).to_degrees() < 15.0, "argmax at {argmax}");
}

#[test]
fn global_curve_is_monotone_between_mode_and_antimode() {
    let mu = 2.0;
    let sample = sample_vmf(&VmfParams::circular(mu, 5.0).unwrap(), 5000, 17).unwrap();
    for kind in DistanceKind::ALL {
        let curve = depth_curve(&sample, kind, None, 360).unwrap();
        let depths: Vec<f64> = curve.iter().map(|c| c.1).collect();
        let imax = (0..360).max_by(|a, b| depths[*a].total_cmp(&depths[*b])).unwrap();
        let imin = (0..360).min_by(|a, b| depths[*a].total_cmp(&depths[*b])).unwrap();
        assert!(angle_gap(curve[imax].0, mu).to_degrees() <= 5.0, "{kind}");
        assert!(angle_gap(curve[imin].0, mu + PI).to_degrees() <= 5.0, "{kind}");
        for step in [1usize, 359] {
            let mut i = imax;
            while i != imin {
                let next = (i + step) % 360;
                assert!(depths[next] <= depths[i] + 1e-3, "{kind}: rise at grid index {next}");
                i = next;
            }
        }
    }
}
