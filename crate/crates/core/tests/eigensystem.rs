use std::f64::consts::{FRAC_PI_3, FRAC_PI_4};

use num_complex::Complex;
use num_traits::{Float, FloatConst, One, Zero};
use proptest::prelude::*;
use rotosc::eigensystem::*;
use rotosc::linalg::{hermitian_eigen, norm2, CMatrix};
use rotosc::operators::{build_dirac, level, OscillatorParams};
use rotosc::special::rotated_norm_sq_log_series;
use rotosc::{DoubleDouble, Error, Real};

type D = DoubleDouble;

fn quarter_dd() -> D {
    D::PI() / D::lit(4.0)
}

#[test]
fn block_residual_up_to_500() {
    for m in [0.0f64, 1.0, 2.0] {
        for n in 1..=500 {
            let b = block_eigensystem(n, m).unwrap();
            assert!(b.residual() < 1e-12, "n={n} m={m}: {}", b.residual());
            let g = b.gram();
            for (i, row) in g.iter().enumerate() {
                for (j, &x) in row.iter().enumerate() {
                    let e = if i == j { 1.0 } else { 0.0 };
                    assert!((x - e).abs() < 1e-13, "n={n} m={m} gram[{i}][{j}]={x}");
                }
            }
            let r = level(n, m);
            assert_eq!(b.eigenvalues, [r, r, -r, -r]);
        }
    }
}

#[test]
fn closed_form_pairs_are_exactly_orthogonal() {
    for m in [0.0f64, 0.5, 1.0, 2.0, 3.7] {
        for n in [1usize, 2, 7, 40] {
            let u = raw_block_vectors(n, m);
            let d = |a: [f64; 4], b: [f64; 4]| a.iter().zip(&b).map(|(x, y)| x * y).sum::<f64>();
            assert_eq!(d(u[0], u[1]), 0.0);
            assert_eq!(d(u[2], u[3]), 0.0);
        }
    }
}

#[test]
fn massless_first_vector() {
    for n in [1usize, 3, 10] {
        let b = block_eigensystem(n, 0.0f64).unwrap();
        for &x in &b.u[0] {
            assert!((x - 0.5).abs() < 1e-15);
        }
    }
}

#[test]
fn dense_eigensolver_agrees() {
    let b = block_eigensystem(1, 1.0f64).unwrap();
    let a = CMatrix::from_fn(4, 4, |r, c| Complex::new(b.matrix[r][c], 0.0));
    let (vals, vecs) = hermitian_eigen(&a).unwrap();
    let r3 = 3f64.sqrt();
    for (v, e) in vals.iter().zip([-r3, -r3, r3, r3]) {
        assert!((v - e).abs() < 1e-12);
    }
    // each closed-form vector lies in the dense eigenspace of its eigenvalue
    for (j, u) in b.u.iter().enumerate() {
        let cols: Vec<usize> = if j < 2 { vec![2, 3] } else { vec![0, 1] };
        let mut proj = [0.0f64; 4];
        for &c in &cols {
            let coef: Complex<f64> = (0..4).map(|k| vecs[(k, c)].conj() * u[k]).sum();
            for k in 0..4 {
                proj[k] += (vecs[(k, c)] * coef).re;
            }
        }
        for k in 0..4 {
            assert!((proj[k] - u[k]).abs() < 1e-12);
        }
    }
    assert!(matches!(
        block_eigensystem(0, 1.0f64),
        Err(Error::InvalidParameter(_))
    ));
}

#[test]
fn untilted_coefficients_are_unit_vectors() {
    let n = 5;
    let basis = 70;
    for j in 1..=4 {
        let f = ExactEigenfunction::new(n, j, false).unwrap();
        let v = eigenfunction_coeff_vector(&f, 0.0f64, 1.0, basis).unwrap();
        let fac = f.factors(1.0f64);
        for (k, deg) in [n, n - 1, n, n - 1].iter().enumerate() {
            for i in 0..basis {
                let want = if i == *deg { fac[k] } else { Complex::zero() };
                assert!(
                    (v[k * basis + i] - want).norm() < 1e-14,
                    "j={j} k={k} i={i}"
                );
            }
        }
    }
}

#[test]
fn biorthonormal_to_level_30() {
    let basis = 140;
    let mass = D::one();
    let mut table = CoefficientTable::new(quarter_dd(), 30, basis).unwrap();
    let mut right = Vec::new();
    let mut left = Vec::new();
    for n in 0..=30 {
        let js = if n == 0 { 1..=2 } else { 1..=4 };
        for j in js {
            right.push((
                (n, j),
                table
                    .eigenfunction(&ExactEigenfunction::new(n, j, false).unwrap(), mass)
                    .unwrap(),
            ));
            left.push((
                (n, j),
                table
                    .eigenfunction(&ExactEigenfunction::new(n, j, true).unwrap(), mass)
                    .unwrap(),
            ));
        }
    }
    let mut worst = 0.0f64;
    for (a, fa) in &left {
        for (b, gb) in &right {
            let want = if a == b {
                Complex::one()
            } else {
                Complex::zero()
            };
            let err = (pairing(fa, gb) - want).norm().to_f64_lossy();
            worst = worst.max(err);
        }
    }
    assert!(worst < 1e-8, "worst biorthonormality error {worst:e}");
}

#[test]
fn coefficient_vectors_solve_the_truncated_eigenproblem() {
    let basis = 128;
    let theta = FRAC_PI_4;
    let mass = 1.0;
    let op = build_dirac(&OscillatorParams::new(theta, mass).unwrap(), basis).unwrap();
    let mut table = CoefficientTable::new(theta, 10, basis).unwrap();
    for n in 0..=10 {
        for j in if n == 0 { 1..=2 } else { 1..=4 } {
            let f = ExactEigenfunction::new(n, j, false).unwrap();
            let v = table.eigenfunction(&f, mass).unwrap();
            let hv = op.matrix().matvec(&v).unwrap();
            let lam = f.eigenvalue(mass);
            let res = hv
                .iter()
                .zip(&v)
                .map(|(a, b)| (a - b * lam).norm_sqr())
                .sum::<f64>()
                .sqrt();
            assert!(res < 1e-6, "n={n} j={j}: {res:e}");
        }
    }
}

#[test]
fn short_basis_is_flagged() {
    let f = ExactEigenfunction::new(30, 1, false).unwrap();
    let e = eigenfunction_coeff_vector(&f, FRAC_PI_4, 1.0, 95).unwrap_err();
    assert!(matches!(e, Error::InsufficientBasis { .. }), "{e:?}");
    let e = eigenfunction_coeff_vector(&f, FRAC_PI_4, 1.0, 80).unwrap_err();
    assert!(matches!(e, Error::BasisTooSmall { .. }), "{e:?}");
    assert!(ExactEigenfunction::new(0, 3, false).is_err());
}

#[test]
fn projector_norm_closed_values() {
    for n in 0..30 {
        assert!(projector_norm_log(n, 0.0f64, 1.0).unwrap().abs() < 1e-14);
    }
    let v = projector_norm_log(0, FRAC_PI_3, 1.0).unwrap();
    assert!((v.exp() - 2f64.sqrt()).abs() < 1e-10);
    assert!((v - 0.346574).abs() < 1e-6);
    let vd = projector_norm_log(0, D::PI() / D::lit(3.0), D::one()).unwrap();
    assert!((vd.exp() - D::SQRT_2()).abs().to_f64_lossy() < 1e-28);
}

#[test]
fn projector_norm_matches_finite_rank_svd() {
    let basis = 128;
    for m in [0.0f64, 1.0] {
        let mut table = CoefficientTable::new(FRAC_PI_4, 20, basis).unwrap();
        for n in 0..=20 {
            let closed = projector_norm_log(n, FRAC_PI_4, m).unwrap();
            let matrix = projector_norm_log_matrix(&mut table, n, m).unwrap();
            let rel = ((matrix - closed).exp() - 1.0).abs();
            assert!(rel < 1e-6, "n={n} m={m}: {rel:e}");
        }
    }
}

#[test]
fn projector_is_idempotent() {
    let basis = 128;
    let mut table = CoefficientTable::new(quarter_dd(), 20, basis).unwrap();
    for n in 0..=20 {
        let d = idempotency_defect(&mut table, n, D::one()).unwrap();
        let d64 = CMatrix::from_fn(d.rows(), d.cols(), |r, c| {
            Complex::new(d[(r, c)].re.to_f64_lossy(), d[(r, c)].im.to_f64_lossy())
        });
        let e = norm2(&d64).unwrap();
        assert!(e < 1e-6, "n={n}: {e:e}");
    }
}

#[test]
fn rate_closed_form() {
    assert_eq!(projector_rate(0.0f64).unwrap(), 0.0);
    assert!((projector_rate(FRAC_PI_4).unwrap() - 0.881374).abs() < 1e-6);
    // ln sqrt((1 + sin 0.2)/(1 - sin 0.2)) = 0.2013468...
    assert!((projector_rate(0.2f64).unwrap() - 0.20134682356772757).abs() < 1e-15);
    assert_eq!(
        projector_rate(-0.7f64).unwrap(),
        projector_rate(0.7f64).unwrap()
    );
    assert!(projector_rate(1.6f64).is_err());
}

#[test]
fn rate_estimates_at_200() {
    for theta in [0.2f64, FRAC_PI_4] {
        let want = projector_rate(theta).unwrap();
        for m in [0.0, 1.0] {
            let (r, series) = estimate_rate(theta, m, 200).unwrap();
            assert!(
                (r - want).abs() < 2e-2,
                "theta={theta} m={m}: {r} vs {want}"
            );
            assert_eq!(series.entries.len(), 201);
            assert!(r.is_finite());
        }
        let (r0, _) = estimate_rate(theta, 0.0, 200).unwrap();
        let (r3, _) = estimate_rate(theta, 3.0, 200).unwrap();
        assert!((r0 - r3).abs() < 1e-2);
    }
    assert!(estimate_rate(0.3f64, 1.0, 19).is_err());
}

#[test]
fn series_grows_and_serializes() {
    let (_, s) = estimate_rate(FRAC_PI_4, 1.0, 40).unwrap();
    for i in 5..s.entries.len() {
        assert!(s.increment(i) > 0.0);
    }
    let csv = s.to_csv();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("n,log_norm,increment"));
    let first: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(first[0], "0");
    assert_eq!(first[2], "nan");
    let second: Vec<&str> = lines.next().unwrap().split(',').collect();
    let back: f64 = second[1].parse().unwrap();
    assert_eq!(back, s.entries[1].1);
}

#[test]
fn plus_and_minus_norms_agree() {
    assert!(projector_norm_symmetry_check(5, FRAC_PI_4, 1.0).unwrap() < 1e-10);
    assert!(projector_norm_symmetry_check(0, FRAC_PI_3, 2.0).unwrap() < 1e-12);
    for n in 0..50 {
        assert_eq!(projector_norm_symmetry_check(n, 0.0f64, 1.3).unwrap(), 0.0);
        assert!(projector_norm_symmetry_check(n, -1.1f64, 0.4).unwrap() < 1e-10);
    }
}

#[test]
fn norm_sandwich() {
    for theta in [0.3f64, FRAC_PI_4, -1.2] {
        let norms = rotated_norm_sq_log_series(120, theta).unwrap();
        for m in [0.0, 1.0, 5.0] {
            for n in 1..=120 {
                let v = projector_norm_log_from(n, m, &norms, true);
                let (lo, hi) = projector_norm_bounds(n, m, &norms);
                assert!(lo <= v && v <= hi, "theta={theta} m={m} n={n}");
            }
        }
    }
}

#[test]
fn hermitian_truncation_is_stable() {
    let prof = galerkin_instability_profile(0.0f64, 1.0, 64).unwrap();
    assert_eq!(prof.len(), 33);
    for (n, e) in prof {
        assert!(e < 1e-8, "n={n}: {e:e}");
    }
}

#[test]
fn rotated_truncation_is_unstable() {
    let prof = galerkin_instability_profile(FRAC_PI_4, 1.0, 128).unwrap();
    for &(n, e) in &prof[..=5] {
        assert!(e < 1e-6, "n={n}: {e:e}");
    }
    let e2 = prof[2].1;
    let worst = prof[32..=64].iter().map(|p| p.1).fold(0.0, f64::max);
    assert!(worst > 1e-2);
    assert!(worst >= 1e4 * e2);
    // below n = 9 the errors are pure rounding, so the order among them is noise
    for &(n, e) in &prof[..=8] {
        assert!(e < 1e-12, "n={n}: {e:e}");
    }
    let violations = prof[1..=10].windows(2).filter(|w| w[1].1 < w[0].1).count();
    assert!(violations <= 2, "{violations} drops in {:?}", &prof[..=10]);
    assert!(galerkin_instability_profile(FRAC_PI_4, 1.0, 31).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn block_residual_random(n in 1usize..2000, m in 0.0f64..10.0) {
        let b = block_eigensystem(n, m).unwrap();
        prop_assert!(b.residual() < 1e-12 * (1.0 + level(n, m)));
    }

    #[test]
    fn rate_is_even(theta in -1.5f64..1.5) {
        prop_assert_eq!(projector_rate(theta).unwrap(), projector_rate(-theta).unwrap());
    }
}
