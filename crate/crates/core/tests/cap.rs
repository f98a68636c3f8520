use proptest::prelude::*;

use toric_syzygy::cap::{sample_directions, CapBody, Direction};
use toric_syzygy::geometry::rational::to_f64;
use toric_syzygy::geometry::{builtin, Point};

fn square() -> CapBody {
    CapBody::new(&builtin("square").unwrap()).unwrap()
}

fn angle_direction(theta: f64) -> Direction {
    Direction::from_f64(&[theta.cos(), theta.sin()]).unwrap()
}

#[test]
fn regions_are_nested() {
    let body = square();
    let fractions = [0.1, 0.2, 0.4, 0.8];
    let boundaries: Vec<_> = fractions.iter().map(|&a| body.region_boundary(a, 48, 1e-10).unwrap()).collect();
    for (i, outer) in boundaries.iter().enumerate() {
        for inner in &boundaries[i + 1..] {
            for x in inner.points() {
                assert!(outer.supports(x, 1e-8), "a={} point {:?} escapes a={}", inner.a, x.to_f64(), outer.a);
            }
        }
    }
    let c = body.centroid().clone();
    for &a in &fractions {
        assert!(body.region_contains(a, &c, 48, 1e-9).unwrap());
    }
}

#[test]
fn boundary_points_have_tau_equal_to_fraction() {
    let body = square();
    for a in [0.1, 0.3, 0.5] {
        let boundary = body.region_boundary(a, 8, 1e-12).unwrap();
        for x in boundary.points() {
            let t = body.tau_direction_sweep(x, 360, 1e-9).unwrap();
            assert!((t.tau_over_vol - a).abs() < 5e-3, "a={a} x={:?} tau={}", x.to_f64(), t.tau_over_vol);
        }
    }
}

#[test]
fn sweep_and_grid_agree_on_the_triangle() {
    let delta = builtin("simplex2").unwrap();
    let body = CapBody::new(&delta).unwrap();
    for x in [Point::from_f64(&[0.25, 0.25]), Point::from_f64(&[0.5, 0.25]), Point::from_f64(&[0.1, 0.2])] {
        let sweep = body.tau_direction_sweep(&x, 360, 1e-9).unwrap();
        let lp = body.tau_grid_lp(&x, 32).unwrap();
        assert!((sweep.tau_over_vol - lp.tau_over_vol).abs() < 0.05, "{:?}: {} vs {}", x.to_f64(), sweep.tau_over_vol, lp.tau_over_vol);
    }
}

#[test]
fn square_regions_are_symmetric() {
    let body = square();
    let n = 16;
    let dirs = sample_directions(2, n);
    for a in [0.1, 0.4] {
        let r = body.region_boundary(a, n, 1e-12).unwrap();
        for (k, s) in r.samples.iter().enumerate() {
            let x = s.point.to_f64();
            // rotating by a quarter turn maps the square to itself: (x, y) -> (1 - y, x)
            let turned = &r.samples[(k + n / 4) % n].point.to_f64();
            assert!((turned[0] - (1.0 - x[1])).abs() < 1e-8 && (turned[1] - x[0]).abs() < 1e-8, "a={a} k={k}");
            // the diagonal mirror swaps coordinates exactly
            let v = &dirs[k];
            let mirrored = Direction::from_exact(vec![v.exact[1].clone(), v.exact[0].clone()]).unwrap();
            let m = body.region_sample(&mirrored, a, 1e-12).unwrap().point;
            assert_eq!(m.0, vec![s.point.0[1].clone(), s.point.0[0].clone()]);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn cap_levels_grow_with_fraction(theta in 0.0f64..std::f64::consts::TAU, a in 0.05f64..0.9, step in 0.01f64..0.09) {
        let body = square();
        let v = angle_direction(theta);
        let low = body.cap_level(&v, a, 1e-10).unwrap();
        let high = body.cap_level(&v, a + step, 1e-10).unwrap();
        prop_assert!(low.level < high.level);
        prop_assert!((to_f64(&low.cap_volume) - a).abs() <= 1e-10);
        // the centroid moves up with the level but stays below it
        let lo = low.centroid.dot(&v.exact);
        let hi = high.centroid.dot(&v.exact);
        prop_assert!(lo < hi && hi < high.level);
    }

    #[test]
    fn support_values_increase_with_fraction(theta in 0.0f64..std::f64::consts::TAU, a in 0.05f64..0.9) {
        let body = square();
        let v = angle_direction(theta);
        let s1 = body.region_sample(&v, a, 1e-10).unwrap().point.dot(&v.exact);
        let s2 = body.region_sample(&v, (a + 0.1).min(1.0), 1e-10).unwrap().point.dot(&v.exact);
        prop_assert!(s1 < s2);
    }

    #[test]
    fn direction_fraction_brackets_the_boundary(theta in 0.0f64..std::f64::consts::TAU, a in 0.05f64..0.95) {
        let body = square();
        let v = angle_direction(theta);
        let x = body.region_sample(&v, a, 1e-12).unwrap().point;
        let (lo, hi) = body.direction_fraction(&v, &x, 1e-9).unwrap();
        prop_assert!(lo - 1e-9 <= a && a <= hi + 1e-9, "{lo} {a} {hi}");
    }
}
