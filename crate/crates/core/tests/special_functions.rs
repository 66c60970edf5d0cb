use std::f64::consts::{FRAC_PI_3, FRAC_PI_4, PI};

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use proptest::prelude::*;
use rotosc::special::*;
use rotosc::DoubleDouble;

type Q = BigRational;

/// Integer monomial coefficients of the physicists' Hermite polynomial H_n.
fn hermite_coefficients(n: usize) -> Vec<BigInt> {
    let mut prev = vec![BigInt::one()];
    if n == 0 {
        return prev;
    }
    let mut cur = vec![BigInt::zero(), BigInt::from(2)];
    for k in 1..n {
        // H_{k+1} = 2x H_k - 2k H_{k-1}
        let mut next = vec![BigInt::zero(); k + 2];
        for (i, c) in cur.iter().enumerate() {
            next[i + 1] += c * 2;
        }
        for (i, c) in prev.iter().enumerate() {
            next[i] -= c * BigInt::from(2 * k);
        }
        prev = cur;
        cur = next;
    }
    cur
}

fn q_to_f64(q: &Q) -> f64 {
    // scale to keep numerator and denominator in range
    let num = q.numer().to_f64().unwrap();
    let den = q.denom().to_f64().unwrap();
    num / den
}

/// Exact evaluation of H_n at a complex rational point (Horner).
fn hermite_exact(n: usize, re: &Q, im: &Q) -> (Q, Q) {
    let coeffs = hermite_coefficients(n);
    let (mut ar, mut ai) = (Q::zero(), Q::zero());
    for c in coeffs.iter().rev() {
        let nr = &ar * re - &ai * im + Q::from_integer(c.clone());
        let ni = &ar * im + &ai * re;
        ar = nr;
        ai = ni;
    }
    (ar, ai)
}

fn ln_factorial(n: usize) -> f64 {
    (1..=n).map(|k| (k as f64).ln()).sum()
}

#[test]
fn ground_state_at_origin() {
    let v = hermite_function(0, Complex::new(0.0f64, 0.0)).to_complex();
    assert!((v.re - PI.powf(-0.25)).abs() < 1e-15 && v.im == 0.0);
    assert!((v.re - 0.751126).abs() < 1e-6);
    assert!(hermite_function(1, Complex::new(0.0f64, 0.0)).is_zero());
}

#[test]
fn degree_25_against_exact_rational_polynomial() {
    let re = Q::new(BigInt::from(13), BigInt::from(10));
    let im = Q::new(BigInt::from(4), BigInt::from(10));
    let (pr, pi) = hermite_exact(25, &re, &im);
    let poly = Complex::new(q_to_f64(&pr), q_to_f64(&pi));
    let z = Complex::new(1.3f64, 0.4);
    let norm = (-0.5 * (25.0 * 2f64.ln() + ln_factorial(25) + 0.5 * PI.ln())).exp();
    let expected = poly * (-(z * z) * 0.5).exp() * norm;
    let got = hermite_function(25, z).to_complex();
    let rel = (got - expected).norm() / expected.norm();
    assert!(rel < 1e-10, "relative error {rel:e}");
    assert!(pr.is_positive() || pr.is_negative());
}

#[test]
fn single_precision_and_double_double_agree_with_double() {
    let z = Complex::new(0.9f64, -0.6);
    let d = hermite_function(12, z).to_complex();
    let s = hermite_function(12, Complex::new(0.9f32, -0.6)).to_complex();
    assert!((Complex::new(s.re as f64, s.im as f64) - d).norm() < 1e-5 * d.norm());
    let zz = Complex::new(DoubleDouble::from(0.9), DoubleDouble::from(-0.6));
    let w = hermite_function(12, zz).to_complex();
    let w = Complex::new(f64::from(w.re), f64::from(w.im));
    assert!((w - d).norm() < 1e-14 * d.norm());
}

fn moment(p: usize) -> f64 {
    // int x^p e^{-x^2} dx = Gamma((p+1)/2) for even p
    if p % 2 == 1 {
        0.0
    } else {
        let mut g = PI.sqrt();
        let mut a = 0.5;
        for _ in 0..p / 2 {
            g *= a;
            a += 1.0;
        }
        g
    }
}

#[test]
fn closed_form_small_rules() {
    let r = gauss_hermite::<f64>(2).unwrap();
    assert!((r.nodes()[1] - 1.0 / 2f64.sqrt()).abs() < 1e-15);
    assert!((r.nodes()[0] + 1.0 / 2f64.sqrt()).abs() < 1e-15);
    for w in r.weights() {
        assert!((w - PI.sqrt() / 2.0).abs() < 1e-15);
    }
    let r = gauss_hermite::<f64>(40).unwrap();
    let m4: f64 = r
        .nodes()
        .iter()
        .zip(r.weights())
        .map(|(x, w)| w * x.powi(4))
        .sum();
    assert!((m4 - 0.75 * PI.sqrt()).abs() < 1e-12);
}

#[test]
fn rule_invariants() {
    for k in [1usize, 2, 3, 10, 41, 100, 257] {
        let r = gauss_hermite::<f64>(k).unwrap();
        let x = r.nodes();
        for i in 0..k {
            assert_eq!(x[i], -x[k - 1 - i]);
            if i + 1 < k {
                assert!(x[i] < x[i + 1]);
            }
        }
        assert!(r.weights().iter().all(|&w| w >= 0.0));
        let total = r.integrate(|_| ScaledComplex::one()).to_complex().re;
        assert!((total - PI.sqrt()).abs() < 1e-12, "k={k}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn quadrature_is_exact_for_low_moments(k in 1usize..48, frac in 0.0f64..1.0) {
        let p = ((2 * k) as f64 * frac) as usize;
        let p = p.min(2 * k - 1);
        let r = gauss_hermite::<f64>(k).unwrap();
        let (sum, abs): (f64, f64) = r
            .nodes()
            .iter()
            .zip(r.weights())
            .fold((0.0, 0.0), |(s, a), (x, w)| (s + w * x.powi(p as i32), a + w * x.abs().powi(p as i32)));
        let exact = moment(p);
        if p % 2 == 1 {
            prop_assert!(sum.abs() <= 1e-10 * abs);
        } else {
            prop_assert!((sum - exact).abs() <= 1e-10 * exact);
        }
    }

    #[test]
    fn three_term_recurrence(r in 0.0f64..5.0, arg in -PI..PI, n in 1usize..100) {
        let z = Complex::from_polar(r, arg);
        let lo = hermite_function(n - 1, z);
        let mid = hermite_function(n, z);
        let hi = hermite_function(n + 1, z);
        let a = (2.0 / (n as f64 + 1.0)).sqrt();
        let b = (n as f64 / (n as f64 + 1.0)).sqrt();
        let first = mid.scale(z * a);
        let second = lo.scale(Complex::new(b, 0.0));
        let resid = hi.sub(&first.sub(&second));
        let scale = first.ln_abs().max(second.ln_abs()).max(hi.ln_abs());
        prop_assert!(resid.is_zero() || resid.ln_abs() - scale < (1e-12f64).ln());
    }

    #[test]
    fn norm_is_even_in_angle(n in 0usize..80, theta in 0.0f64..1.5) {
        let a = rotated_norm_sq_log(n, theta).unwrap();
        let b = rotated_norm_sq_log(n, -theta).unwrap();
        prop_assert!((a - b).abs() <= 1e-13);
        prop_assert!(a >= -1e-12);
    }
}

#[test]
fn ground_state_rotated_norm() {
    let v = rotated_norm_sq_log(0, FRAC_PI_3).unwrap();
    assert!((v - 0.346574).abs() < 1e-6);
    assert!((v - 0.5 * 2f64.ln()).abs() < 1e-14);
}

#[test]
fn increments_approach_the_rate() {
    for theta in [0.2f64, FRAC_PI_4] {
        let s = theta.sin().abs();
        let rate = 0.5 * ((1.0 + s) / (1.0 - s)).ln();
        let series = rotated_norm_sq_log_series(200, theta).unwrap();
        let inc = series[200] - series[199];
        assert!(
            (inc - rate).abs() < 2e-2,
            "theta={theta} inc={inc} rate={rate}"
        );
        // positive increments for large n
        assert!(series.windows(2).skip(20).all(|w| w[1] > w[0]));
    }
    let single =
        rotated_norm_sq_log(200, FRAC_PI_4).unwrap() - rotated_norm_sq_log(199, FRAC_PI_4).unwrap();
    assert!((single - 0.8814).abs() < 2e-2);
}

#[test]
fn unrotated_overlaps_are_kronecker() {
    for n in [0usize, 3, 10] {
        let col = overlap_column(n, 0.0f64, 30).unwrap();
        for (k, v) in col.iter().enumerate() {
            let d = if k == n { 1.0 } else { 0.0 };
            assert!((v - Complex::new(d, 0.0)).norm() < 1e-13);
        }
    }
    assert!((overlap(4, 4, 0.0f64).unwrap() - Complex::new(1.0, 0.0)).norm() < 1e-14);
}

#[test]
fn odd_overlaps_vanish() {
    for n in 0..12usize {
        let col = overlap_column(n, 0.7f64, 40).unwrap();
        for (k, v) in col.iter().enumerate() {
            if (k + n) % 2 == 1 {
                assert!(v.norm() < 1e-14, "k={k} n={n} {v}");
            }
        }
    }
}

#[test]
fn parseval_against_norm_quadrature() {
    let norms = rotated_norm_sq_log_series(40, FRAC_PI_4).unwrap();
    for n in 0..=40usize {
        let col = overlap_column(n, FRAC_PI_4, n + 100).unwrap();
        let s: f64 = col.iter().map(|v| v.norm_sqr()).sum();
        let expect = norms[n].exp();
        assert!((s - expect).abs() < 1e-12 * expect, "n={n} {s} vs {expect}");
    }
}

#[test]
fn sixty_term_window_captures_low_levels() {
    let norms = rotated_norm_sq_log_series(40, FRAC_PI_4).unwrap();
    for n in 0..=30usize {
        let col = overlap_column(n, FRAC_PI_4, n + 60).unwrap();
        let s: f64 = col.iter().map(|v| v.norm_sqr()).sum();
        let expect = norms[n].exp();
        assert!((s - expect).abs() < 1e-8 * expect, "n={n}");
    }
    // beyond that the omitted coefficients carry real mass
    let col = overlap_column(40, FRAC_PI_4, 40 + 140).unwrap();
    let total: f64 = col.iter().map(|v| v.norm_sqr()).sum();
    let tail: f64 = col[101..].iter().map(|v| v.norm_sqr()).sum();
    assert!(tail / total > 1e-7);
}

#[test]
fn overlap_conjugates_with_angle() {
    let a = overlap_column(9, 0.5f64, 25).unwrap();
    let b = overlap_column(9, -0.5f64, 25).unwrap();
    for (x, y) in a.iter().zip(&b) {
        assert_eq!(*x, y.conj());
    }
}
