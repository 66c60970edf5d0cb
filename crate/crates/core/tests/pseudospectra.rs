use std::f64::consts::{FRAC_PI_4, PI};

use num_complex::Complex;
use proptest::prelude::*;
use rotosc::operators::{build_dirac, exact_spectrum, OscillatorParams};
use rotosc::pseudospectra::*;

type C = Complex<f64>;

fn c(re: f64, im: f64) -> C {
    Complex::new(re, im)
}

fn params(theta: f64, mass: f64) -> OscillatorParams<f64> {
    OscillatorParams::new(theta, mass).unwrap()
}

#[test]
fn hermitian_resolvent_is_inverse_distance() {
    let op = build_dirac(&params(0.0, 1.0), 64).unwrap();
    let v = resolvent_norm(&op, c(0.0, 1.0)).unwrap();
    assert!((v - 0.5f64.sqrt()).abs() < 1e-6, "{v}");
    // eigenvalue sqrt(3) hits the sentinel
    assert_eq!(
        resolvent_norm(&op, c(3f64.sqrt(), 0.0)).unwrap(),
        f64::INFINITY
    );
    assert_eq!(
        resolvent_norm_dense(&op, c(3f64.sqrt(), 0.0)).unwrap(),
        f64::INFINITY
    );
}

#[test]
fn banded_matches_dense() {
    for (theta, mass) in [(FRAC_PI_4, 1.0), (0.3, 0.0), (-0.6, 2.0)] {
        let op = build_dirac(&params(theta, mass), 40).unwrap();
        for z in [
            c(0.0, 1.0),
            c(2.5, 0.4),
            c(-3.0, -2.0),
            c(1.2, 4.0),
            c(0.1, 0.05),
        ] {
            let a = resolvent_norm(&op, z).unwrap();
            let b = resolvent_norm_dense(&op, z).unwrap();
            assert!(
                ((a - b) / b).abs() < 1e-9,
                "theta {theta} z {z}: {a} vs {b}"
            );
        }
    }
}

#[test]
fn antipodal_points_agree() {
    let op = build_dirac(&params(FRAC_PI_4, 1.0), 96).unwrap();
    let res = Resolvent::new(&op);
    for z in [c(1.0, 0.3), c(2.7, -1.1), c(0.2, 3.0), c(4.0, 0.5)] {
        let (a, b) = (res.norm(z), res.norm(-z));
        assert!(((a - b) / a).abs() < 1e-8, "{z}: {a} vs {b}");
    }
}

#[test]
fn grid_symmetries() {
    let f =
        pseudospectrum_grid(&params(FRAC_PI_4, 1.0), 64, &Grid::square(5.0, 31).unwrap()).unwrap();
    assert_eq!(f.failures, 0);
    assert!(f.antipodal_deviation().unwrap() < 1e-8);
    assert!(f.conjugation_deviation().unwrap() < 1e-8);
    let lopsided = Grid::new(-1.0, 2.0, -1.0, 1.0, 5, 5).unwrap();
    let g = pseudospectrum_grid(&params(FRAC_PI_4, 1.0), 32, &lopsided).unwrap();
    assert!(g.antipodal_deviation().is_err());
    assert!(g.conjugation_deviation().is_ok());
}

#[test]
fn untilted_level_set_is_a_neighborhood() {
    let (mass, eps, n) = (1.0, 0.1, 64);
    let grid = Grid::new(-4.0, 4.0, -1.0, 1.0, 161, 41).unwrap();
    let f = pseudospectrum_grid(&params(0.0, mass), n, &grid).unwrap();
    let spectrum: Vec<f64> = exact_spectrum(mass, n);
    let set = f.superlevel_set(eps);
    let cell = grid.re_step().hypot(grid.im_step());
    let mut inside = 0;
    for (k, &member) in set.iter().enumerate() {
        let z = f.point(k);
        let dist = spectrum
            .iter()
            .map(|&s| (z - s).norm())
            .fold(f64::INFINITY, f64::min);
        if (dist - eps).abs() > cell {
            assert_eq!(member, dist <= eps, "z = {z}, dist {dist}");
        }
        inside += usize::from(member);
    }
    assert!(inside > 0);
}

#[test]
fn level_sets_are_nested() {
    let f =
        pseudospectrum_grid(&params(FRAC_PI_4, 1.0), 48, &Grid::square(5.0, 25).unwrap()).unwrap();
    let eps = [0.001, 0.01, 0.1, 0.5];
    for w in eps.windows(2) {
        let (small, large) = (f.superlevel_set(w[0]), f.superlevel_set(w[1]));
        assert!(small.iter().zip(&large).all(|(&s, &l)| !s || l));
    }
}

#[test]
fn field_output_is_deterministic() {
    let grid = Grid::square(3.0, 17).unwrap();
    let p = params(FRAC_PI_4, 1.0);
    let a = pseudospectrum_grid(&p, 40, &grid).unwrap().to_csv();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(3)
        .build()
        .unwrap();
    let b = pool.install(|| pseudospectrum_grid(&p, 40, &grid).unwrap().to_csv());
    assert_eq!(a, b);
}

#[test]
fn csv_layout() {
    let grid = Grid::new(-1.0, 1.0, 0.0, 1.0, 3, 2).unwrap();
    let f = pseudospectrum_grid(&params(0.0, 1.0), 32, &grid).unwrap();
    let csv = f.to_csv();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "re,im,log10_resnorm,reliable");
    assert_eq!(lines.len(), 7);
    // real part fastest; z = +-1 are eigenvalues
    assert_eq!(lines[1], "-1.0000000000000000e0,0.0000000000000000e0,inf,1");
    assert!(lines[2].starts_with("0.0000000000000000e0,0.0000000000000000e0,"));
    assert!(lines[4].starts_with("-1.0000000000000000e0,1.0000000000000000e0,"));
    let v: f64 = lines[2].split(',').nth(2).unwrap().parse().unwrap();
    assert!(v.abs() < 1e-12, "distance to the spectrum at 0 is 1");
}

#[test]
fn grid_parsing() {
    let g = Grid::parse("-6:6:-6:6:101:101").unwrap();
    assert_eq!(g, Grid::square(6.0, 101).unwrap());
    assert_eq!(Grid::parse(&g.to_arg_string()).unwrap(), g);
    assert_eq!(g.point(100, 100), c(6.0, 6.0));
    assert_eq!(g.point(50, 50), c(0.0, 0.0));
    for bad in ["1:0:0:1:3:3", "0:1:0:1:1:3", "0:1:0:1:3", "a:1:0:1:3:3"] {
        assert!(Grid::parse(bad).is_err(), "{bad}");
    }
    assert!(pseudospectrum_grid(&params(0.0, 1.0), 16, &g).is_err());
}

#[test]
fn outer_region_examples() {
    assert!(!outer_region_member(c(0.0, 3.0), FRAC_PI_4, 2.0, 0.01).unwrap());
    let t = (PI / 8.0).tan();
    assert!(((1.0 - t) * 3.0 - 1.757359).abs() < 1e-6);
    assert!((2.0 * t + 0.01 - 0.838427).abs() < 1e-6);
    for x in [-7.0, 0.0, 0.5, 12.0] {
        assert!(outer_region_member(c(x, 0.0), FRAC_PI_4, 1.0, 0.01).unwrap());
    }
    assert!(outer_region_member(c(0.0, 3.0), 1.7, 0.0, 0.1).is_err());
}

#[test]
fn bound_examples() {
    let b = resolvent_upper_bound(c(0.0, 3.0), FRAC_PI_4, 1.0).unwrap();
    assert!((b - 0.744520).abs() < 1e-6, "{b}");
    assert_eq!(resolvent_upper_bound(c(0.0, 2.5), 0.0, 3.0).unwrap(), 0.4);
    assert_eq!(
        resolvent_upper_bound(c(0.0, 0.01), FRAC_PI_4, 1.0).unwrap(),
        f64::INFINITY
    );
}

#[test]
fn inner_region_examples() {
    let rp = RegionParams::new(0.1, 2.0, 1.0).unwrap();
    // real axis lies in the sector
    assert!(inner_region_member(c(4.0, 0.0), FRAC_PI_4, 1.0, 0.1, &rp).unwrap());
    assert!(!inner_region_member(c(1.0, 40.0), FRAC_PI_4, 1.0, 0.1, &rp).unwrap());
    // too close to the thresholds
    assert!(!inner_region_member(c(1.5, 0.0), FRAC_PI_4, 1.0, 0.1, &rp).unwrap());
    assert!(!inner_region_member(c(4.0, 0.0), FRAC_PI_4, 1.0, 1e-8, &rp).unwrap());
    assert!(inner_region_member(c(4.0, 0.0), 0.05, 1.0, 0.1, &rp).is_err());
    assert!(RegionParams::new(0.1, -1.0, 1.0).is_err());
}

#[test]
fn transition_angle_examples() {
    assert_eq!(transition_angle(0.0).unwrap(), 0.0);
    assert!((transition_angle(FRAC_PI_4).unwrap() - 0.615480).abs() < 1e-6);
    assert!(transition_angle(0.01).unwrap() - 0.005 < 1e-4);
    for k in 1..100 {
        let theta = 1.5 * k as f64 / 100.0;
        assert!(transition_angle(theta).unwrap() >= theta / 2.0);
    }
}

#[test]
fn rays_split_into_wild_and_tame() {
    let p = params(FRAC_PI_4, 0.0);
    let wild = ray_scan(&p, 128, PI / 16.0, &[2.0, 4.0, 6.0], 1).unwrap();
    assert!(wild.is_strictly_increasing());
    assert_eq!(wild.unreliable(), 0);
    let angle = 1.1 * transition_angle(FRAC_PI_4).unwrap();
    let offsets: Vec<f64> = (1..=12).map(|k| k as f64 * 0.75).collect();
    let tame = ray_scan(&p, 128, angle, &offsets, -1).unwrap();
    assert_eq!(
        tame.bound_violations(FRAC_PI_4, 0.0, 1e-6).unwrap(),
        Some(0)
    );
    let csv = tame.to_csv();
    assert!(csv.starts_with("r,re,im,resolvent_norm,reliable\n"));
    assert_eq!(csv.lines().count(), 13);
    assert!(ray_scan(&p, 64, 0.1, &[2.0, 1.0], 1).is_err());
    assert!(ray_scan(&p, 64, 0.1, &[1.0], 0).is_err());
}

#[test]
fn untilted_ray_follows_the_distance() {
    let p = params(0.0, 1.0);
    let offsets = [0.25, 0.5, 1.1, 2.3];
    let s = ray_scan(&p, 64, 0.0, &offsets, 1).unwrap();
    let spectrum: Vec<f64> = exact_spectrum(1.0, 64);
    for x in &s.samples {
        let dist = spectrum
            .iter()
            .map(|&e| (x.z.re - e).abs())
            .fold(f64::INFINITY, f64::min);
        assert!((x.norm * dist - 1.0).abs() < 1e-9, "r = {}", x.r);
    }
}

#[test]
fn untilted_field_passes_both_inclusions() {
    let f = pseudospectrum_grid(&params(0.0, 1.0), 64, &Grid::square(4.0, 21).unwrap()).unwrap();
    let rep = level_set_report(&f, 0.1, None).unwrap();
    assert!(rep.passed(), "{rep:?}");
    assert_eq!(rep.inner_points, 0);
    assert!(rep.worst_bound_ratio <= 1.0 + 1e-9);
}

#[test]
fn bound_holds_on_a_tilted_field() {
    let grid = Grid::square(5.0, 41).unwrap();
    let (_, rep) = level_set_consistency(&params(FRAC_PI_4, 2.0), 96, &grid, 0.01, None).unwrap();
    assert!(rep.passed(), "{rep:?}");
    assert!(rep.bound_points > 0 && rep.outer_points > 0);
    // near eps -> 1 every grid point lies in the outer region
    let (_, loose) = level_set_consistency(
        &params(FRAC_PI_4, 2.0),
        48,
        &Grid::square(0.5, 5).unwrap(),
        0.999,
        None,
    )
    .unwrap();
    assert_eq!(loose.outer_points, 0);
}

#[test]
fn calibration_is_consistent() {
    let p = params(FRAC_PI_4, 1.0);
    let cal = calibrate(&p, 64, FRAC_PI_4 / 4.0, &[0.1, 0.01]).unwrap();
    assert_eq!(cal.c1, cal.radii[0].1);
    assert!(cal.radii[1].1 >= cal.radii[0].1);
    assert!(cal.c2 > 0.0);
    let rp = cal.region_params().unwrap();
    let grid = Grid::new(2.0, 8.0, -2.0, 2.0, 25, 17).unwrap();
    for eps in [0.1, 0.01] {
        let (_, rep) = level_set_consistency(&p, 64, &grid, eps, Some(&rp)).unwrap();
        assert!(rep.passed(), "{rep:?}");
    }
    assert!(calibrate(&p, 64, 1.0, &[0.1]).is_err());
    assert!(calibrate(&p, 64, 0.1, &[]).is_err());
}

#[test]
fn contours_cross_the_level() {
    let f = pseudospectrum_grid(&params(0.0, 1.0), 32, &Grid::square(2.0, 21).unwrap()).unwrap();
    let segs = contour_segments(&f, 1.0);
    assert!(!segs.is_empty());
    // level 1 is the circle of radius 0.1 around each eigenvalue
    for ((x0, y0), _) in &segs {
        let z = c(*x0, *y0);
        let dist = [-3f64.sqrt(), -1.0, 1.0, 3f64.sqrt()]
            .iter()
            .map(|&e| (z - e).norm())
            .fold(f64::INFINITY, f64::min);
        assert!((dist - 0.1).abs() < 0.1, "{z}");
    }
    let svg = contour_svg(&f, &[0.1, 0.5]);
    assert!(svg.starts_with("<svg") && svg.trim_end().ends_with("</svg>"));
    assert_eq!(svg.matches("<path").count(), 2);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn regions_are_symmetric(x in -8.0f64..8.0, y in -8.0f64..8.0, theta in -1.2f64..1.2, mass in 0.0f64..3.0) {
        let z = c(x, y);
        for w in [-z, z.conj()] {
            prop_assert_eq!(outer_region_member(z, theta, mass, 0.05).unwrap(), outer_region_member(w, theta, mass, 0.05).unwrap());
            prop_assert_eq!(resolvent_upper_bound(z, theta, mass).unwrap(), resolvent_upper_bound(w, theta, mass).unwrap());
        }
        if theta.abs() > 0.2 {
            let rp = RegionParams::new(0.1, 1.0, 0.5).unwrap();
            prop_assert_eq!(inner_region_member(z, theta, mass, 0.1, &rp).unwrap(), inner_region_member(-z, theta, mass, 0.1, &rp).unwrap());
        }
    }

    #[test]
    fn bound_dominates_the_norm(x in -4.0f64..4.0, y in 0.5f64..5.0, theta in -0.9f64..0.9, mass in 0.0f64..2.0) {
        let op = build_dirac(&params(theta, mass), 48).unwrap();
        let z = c(x, y);
        let b = resolvent_upper_bound(z, theta, mass).unwrap();
        if b.is_finite() {
            prop_assert!(resolvent_norm(&op, z).unwrap() <= b * (1.0 + 1e-6));
        }
    }
}
