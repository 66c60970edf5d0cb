use std::fmt::Write as _;
use std::time::Instant;

use num_complex::Complex;
use rotosc::eigensystem::{
    estimate_rate, galerkin_instability_profile, match_levels, projector_norm_log, projector_rate,
    truncation_eigenvalues,
};
use rotosc::limits::nonrel_convergence;
use rotosc::operators::{
    adjoint_deviation, alpha0_anticommutation_deviation, build_dirac,
    conjugation_similarity_deviation, level, parity_conjugation_deviation,
    square_identity_residual, OscillatorParams,
};
use rotosc::pseudospectra::{
    calibrate, contour_svg, level_set_report, pseudospectrum_grid, ray_scan, resolvent_norm,
    resolvent_norm_dense, resolvent_upper_bound, transition_angle, Calibration, Grid,
    LevelSetReport, RayScan, BOUND_SLACK,
};
use rotosc::Error;

use crate::config::{Command, RunConfig};
use crate::output::{write_table, write_text};

/// Outcome classes with their exit codes.
#[derive(Debug)]
pub enum Failure {
    /// Exit code 2.
    Config(String),
    /// Exit code 3: solver or I/O failure.
    Numerical(String),
    /// Exit code 4.
    Verification(String),
}

impl Failure {
    pub fn code(&self) -> u8 {
        match self {
            Failure::Config(_) => 2,
            Failure::Numerical(_) => 3,
            Failure::Verification(_) => 4,
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Config(m) => write!(f, "configuration error: {m}"),
            Failure::Numerical(m) => write!(f, "numerical failure: {m}"),
            Failure::Verification(m) => write!(f, "verification failed: {m}"),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::AngleOutOfRange(_)
            | Error::InvalidParameter(_)
            | Error::BasisTooSmall { .. } => Failure::Config(e.to_string()),
            _ => Failure::Numerical(e.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Numerical(format!("i/o: {e}"))
    }
}

type Outcome = Result<(), Failure>;

pub fn run(cfg: &RunConfig) -> Outcome {
    match cfg.command {
        Command::Spectrum => spectrum(cfg),
        Command::Projnorms => projnorms(cfg),
        Command::Pseudo => pseudo(cfg),
        Command::Rays => rays(cfg),
        Command::Nrlimit => nrlimit(cfg),
        Command::Verify => verify(cfg),
    }
}

fn params(cfg: &RunConfig) -> Result<OscillatorParams<f64>, Failure> {
    Ok(OscillatorParams::new(cfg.theta, cfg.mass)?)
}

/// Recomputes `table` under a different worker count and demands identical
/// text.
fn seed_check(
    cfg: &RunConfig,
    name: &str,
    first: &str,
    table: impl Fn() -> Result<String, Failure> + Send + Sync,
) -> Outcome {
    if !cfg.seed_check {
        return Ok(());
    }
    let threads = if rayon::current_num_threads() == 1 {
        3
    } else {
        1
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Failure::Numerical(e.to_string()))?;
    let again = pool.install(table)?;
    if again == first {
        println!("seed-check {name}: identical output with {threads} worker(s)");
        Ok(())
    } else {
        Err(Failure::Verification(format!(
            "{name} differs between worker counts"
        )))
    }
}

fn report_path(path: std::path::PathBuf) {
    println!("wrote {}", path.display());
}

fn spectrum_csv(mass: f64, n_max: usize) -> String {
    let mut rows: Vec<(usize, f64)> = Vec::new();
    for n in 0..=n_max {
        let l = level(n, mass);
        rows.push((n, -l));
        if l != 0.0 {
            rows.push((n, l));
        }
    }
    rows.sort_by(|a, b| a.1.total_cmp(&b.1));
    let mut s = String::from("n,eigenvalue\n");
    for (n, e) in rows {
        let e = if e == 0.0 { 0.0 } else { e };
        writeln!(s, "{n},{e:.16e}").unwrap();
    }
    s
}

fn profile_csv(cfg: &RunConfig) -> Result<String, Failure> {
    let profile = galerkin_instability_profile(cfg.theta, cfg.mass, cfg.basis_size)?;
    let mut s = String::from("n,eigenvalue_error\n");
    for (n, e) in profile {
        writeln!(s, "{n},{e:.16e}").unwrap();
    }
    Ok(s)
}

fn spectrum(cfg: &RunConfig) -> Outcome {
    let csv = spectrum_csv(cfg.mass, cfg.n_max());
    report_path(write_table(cfg, "spectrum", &csv, &[])?);
    let profile = profile_csv(cfg)?;
    report_path(write_table(cfg, "instability", &profile, &[])?);
    let errors: Vec<f64> = profile
        .lines()
        .skip(1)
        .filter_map(|l| l.split(',').nth(1)?.parse().ok())
        .collect();
    let low = errors.iter().take(5).cloned().fold(0.0, f64::max);
    let high = errors.iter().cloned().fold(0.0, f64::max);
    println!(
        "largest eigenvalue error: levels 0..=4 {low:.3e}, levels 0..={} {high:.3e}",
        errors.len().saturating_sub(1)
    );
    seed_check(cfg, "instability", &profile, || profile_csv(cfg))
}

fn projnorms(cfg: &RunConfig) -> Outcome {
    let table = || -> Result<String, Failure> {
        Ok(estimate_rate(cfg.theta, cfg.mass, cfg.n_max())?.1.to_csv())
    };
    let (rate, series) = estimate_rate(cfg.theta, cfg.mass, cfg.n_max())?;
    let csv = series.to_csv();
    let exact = projector_rate(cfg.theta)?;
    report_path(write_table(
        cfg,
        "projnorms",
        &csv,
        &[
            ("rate_estimate", format!("{rate:.16e}")),
            ("rate_closed_form", format!("{exact:.16e}")),
        ],
    )?);
    let summary = format!(
        "theta,mass,n_max,rate_estimate,rate_closed_form,deviation\n{:.16e},{:.16e},{},{rate:.16e},{exact:.16e},{:.16e}\n",
        cfg.theta,
        cfg.mass,
        cfg.n_max(),
        (rate - exact).abs()
    );
    report_path(write_table(cfg, "projnorms_summary", &summary, &[])?);
    println!(
        "rate estimate at n = {}: {rate:.6} (closed form {exact:.6}, deviation {:.2e})",
        cfg.n_max(),
        (rate - exact).abs()
    );
    seed_check(cfg, "projnorms", &csv, table)
}

fn calibration_csv(c: &Calibration) -> String {
    let mut s = String::from("delta,c1,c2,eps,radius\n");
    for &(eps, r) in &c.radii {
        writeln!(
            s,
            "{:.16e},{:.16e},{:.16e},{eps:.16e},{r:.16e}",
            c.delta, c.c1, c.c2
        )
        .unwrap();
    }
    s
}

fn report_csv(reports: &[LevelSetReport]) -> String {
    let mut s = String::from(
        "eps,inner_points,inner_violations,outer_points,outer_violations,bound_points,bound_violations,worst_bound_ratio,unreliable\n",
    );
    for r in reports {
        writeln!(
            s,
            "{:.16e},{},{},{},{},{},{},{:.16e},{}",
            r.eps,
            r.inner_points,
            r.inner_violations,
            r.outer_points,
            r.outer_violations,
            r.bound_points,
            r.bound_violations,
            r.worst_bound_ratio,
            r.unreliable
        )
        .unwrap();
    }
    s
}

fn pseudo(cfg: &RunConfig) -> Outcome {
    let p = params(cfg)?;
    let t = Instant::now();
    let field = pseudospectrum_grid(&p, cfg.basis_size, &cfg.grid)?;
    let csv = field.to_csv();
    println!(
        "{} grid points in {:.1} s, {} evaluation failures",
        cfg.grid.len(),
        t.elapsed().as_secs_f64(),
        field.failures
    );
    report_path(write_table(cfg, "pseudo", &csv, &[])?);
    if cfg.grid.is_antipodal_symmetric() {
        println!(
            "antipodal symmetry deviation {:.3e}",
            field.antipodal_deviation()?
        );
    }
    if cfg.grid.is_conjugation_symmetric() {
        println!(
            "conjugation symmetry deviation {:.3e}",
            field.conjugation_deviation()?
        );
    }
    let mut rp = None;
    if cfg.theta != 0.0 {
        let delta = cfg.theta.abs() / 4.0;
        match calibrate(&p, cfg.basis_size, delta, &cfg.eps) {
            Ok(c) => {
                println!(
                    "calibration: delta = {:.6}, c1 = {:.6}, c2 = {:.6}",
                    c.delta, c.c1, c.c2
                );
                report_path(write_table(cfg, "calibration", &calibration_csv(&c), &[])?);
                rp = Some(c.region_params()?);
            }
            Err(e) => eprintln!("warning: no calibration, inner region skipped: {e}"),
        }
    }
    let reports = cfg
        .eps
        .iter()
        .map(|&e| level_set_report(&field, e, rp.as_ref()))
        .collect::<Result<Vec<_>, _>>()?;
    for r in &reports {
        println!(
            "eps = {:e}: inner {}/{} violations, outer {}/{} violations, bound {}/{} violations, {} unreliable",
            r.eps, r.inner_violations, r.inner_points, r.outer_violations, r.outer_points, r.bound_violations, r.bound_points, r.unreliable
        );
    }
    report_path(write_table(
        cfg,
        "pseudo_report",
        &report_csv(&reports),
        &[],
    )?);
    if cfg.svg {
        report_path(write_text(
            &cfg.out,
            "pseudo.svg",
            &contour_svg(&field, &cfg.eps),
        )?);
    }
    seed_check(cfg, "pseudo", &csv, || {
        Ok(pseudospectrum_grid(&p, cfg.basis_size, &cfg.grid)?.to_csv())
    })
}

fn describe_ray(cfg: &RunConfig, scan: &RayScan<f64>) -> Result<String, Failure> {
    let angle = scan.angle.abs();
    let f = transition_angle(cfg.theta)?;
    let kind = if angle > 0.0 && angle < cfg.theta.abs() / 2.0 {
        format!(
            "interior ray, strictly increasing: {}",
            if scan.is_strictly_increasing() {
                "yes"
            } else {
                "no"
            }
        )
    } else if angle > f {
        match scan.bound_violations(cfg.theta, cfg.mass, BOUND_SLACK)? {
            Some(k) => format!("exterior ray, {k} bound violations"),
            None => "exterior ray, bound not applicable at every sample".into(),
        }
    } else {
        "ray between theta/2 and the transition angle".into()
    };
    Ok(format!(
        "{kind}; {} samples outside the reliable window",
        scan.unreliable()
    ))
}

fn rays(cfg: &RunConfig) -> Outcome {
    let p = params(cfg)?;
    let angle = cfg.ray_angle();
    let tables = || -> Result<(RayScan<f64>, RayScan<f64>), Failure> {
        Ok((
            ray_scan(&p, cfg.basis_size, angle, &cfg.ray_offsets, 1)?,
            ray_scan(&p, cfg.basis_size, angle, &cfg.ray_offsets, -1)?,
        ))
    };
    let (plus, minus) = tables()?;
    for (scan, stem) in [(&plus, "rays"), (&minus, "rays_minus")] {
        if scan.unreliable() > 0 {
            eprintln!(
                "warning: {} samples of {stem} leave the reliable window |z|^2 + m^2 <= N",
                scan.unreliable()
            );
        }
        report_path(write_table(
            cfg,
            stem,
            &scan.to_csv(),
            &[("angle", format!("{angle:.16e}"))],
        )?);
        println!("{stem}: {}", describe_ray(cfg, scan)?);
    }
    let both = plus.to_csv() + &minus.to_csv();
    seed_check(cfg, "rays", &both, || {
        let (a, b) = tables()?;
        Ok(a.to_csv() + &b.to_csv())
    })
}

fn nrlimit(cfg: &RunConfig) -> Outcome {
    let table = || -> Result<String, Failure> {
        Ok(nonrel_convergence(
            cfg.theta,
            cfg.mass,
            cfg.omega,
            cfg.z,
            &cfg.c,
            cfg.basis_size,
        )?
        .to_csv())
    };
    let r = nonrel_convergence(
        cfg.theta,
        cfg.mass,
        cfg.omega,
        cfg.z,
        &cfg.c,
        cfg.basis_size,
    )?;
    let csv = r.to_csv();
    report_path(write_table(cfg, "nrlimit", &csv, &[])?);
    println!(
        "strictly decreasing: {}, last/first = {:.4}",
        if r.monotone { "yes" } else { "no" },
        r.reduction()
    );
    seed_check(cfg, "nrlimit", &csv, table)
}

struct Verifier {
    failed: Vec<String>,
}

impl Verifier {
    fn check(&mut self, group: &str, f: impl FnOnce() -> Result<(bool, String), Failure>) {
        let t = Instant::now();
        let (ok, detail) = match f() {
            Ok(v) => v,
            Err(e) => (false, e.to_string()),
        };
        println!(
            "{} {group}: {detail} ({:.2} s)",
            if ok { "PASS" } else { "FAIL" },
            t.elapsed().as_secs_f64()
        );
        if !ok {
            self.failed.push(group.to_string());
        }
    }

    fn skip(&self, group: &str, why: &str) {
        println!("SKIP {group}: {why}");
    }
}

/// Runs every invariant group at the configured angle, mass and basis size.
fn verify(cfg: &RunConfig) -> Outcome {
    let p = params(cfg)?;
    let (theta, mass, n) = (cfg.theta, cfg.mass, cfg.basis_size);
    let mut v = Verifier { failed: Vec::new() };

    v.check("spectrum", || {
        let ev = truncation_eigenvalues(&build_dirac(&p, n)?)?;
        let worst = match_levels(&ev, mass, 4)
            .iter()
            .map(|e| e.1)
            .fold(0.0, f64::max);
        Ok((
            worst < 1e-6,
            format!("levels 0..=4 within {worst:.2e} of +-sqrt(2n + m^2)"),
        ))
    });
    v.check("symmetries", || {
        let h = build_dirac(&p, n)?;
        let h_neg = build_dirac(&OscillatorParams::new(-theta, mass)?, n)?;
        let worst = [
            adjoint_deviation(&h, &h_neg)?,
            alpha0_anticommutation_deviation(&h)?,
            parity_conjugation_deviation(&h)?,
            conjugation_similarity_deviation(&h)?,
        ]
        .into_iter()
        .fold(0.0, f64::max);
        Ok((
            worst < 1e-14,
            format!("adjoint, alpha_0 and conjugation identities to {worst:.2e}"),
        ))
    });
    v.check("square", || {
        let r = square_identity_residual(&p, n)?;
        Ok((
            r < 1e-12,
            format!("interior residual of H^2 = S + m^2 + i alpha_1 alpha_2 is {r:.2e}"),
        ))
    });
    v.check("projector-norms", || {
        let n0 = projector_norm_log(0, theta, mass)?;
        let d0 = (n0 + 0.5 * theta.cos().ln()).abs();
        let (rate, _) = estimate_rate(theta, mass, 200)?;
        let dr = (rate - projector_rate(theta)?).abs();
        Ok((
            d0 < 1e-10 && dr < 2e-2,
            format!("n = 0 norm off by {d0:.2e}, rate at n = 200 off by {dr:.2e}"),
        ))
    });
    v.check("resolvent", || {
        let small = build_dirac(&p, n.min(64))?;
        let mut worst = 0.0f64;
        for z in [
            Complex::new(0.3, 1.0),
            Complex::new(-2.0, 0.5),
            Complex::new(1.5, -2.5),
        ] {
            let a = resolvent_norm(&small, z)?;
            let b = resolvent_norm_dense(&small, z)?;
            worst = worst.max(((a - b) / b).abs());
        }
        let mut ok = worst < 1e-8;
        let mut detail = format!("banded and dense norms agree to {worst:.2e}");
        if theta == 0.0 {
            let r = resolvent_norm(&small, Complex::new(0.0, 1.0))?;
            let expected = 1.0 / (mass * mass + 1.0).sqrt();
            ok &= (r - expected).abs() < 1e-6;
            write!(detail, ", |R(i)| = {r:.8} against {expected:.8}").unwrap();
        }
        Ok((ok, detail))
    });
    let grid = Grid::square(4.0, 21).map_err(Failure::from)?;
    let field = pseudospectrum_grid(&p, n, &grid);
    v.check("pseudospectrum", || {
        let f = field.clone()?;
        let (a, c) = (f.antipodal_deviation()?, f.conjugation_deviation()?);
        let nested = cfg.eps.windows(2).all(|w| {
            f.superlevel_set(w[1])
                .iter()
                .zip(f.superlevel_set(w[0]))
                .all(|(&s, l)| !s || l)
        });
        Ok((
            a < 1e-8 && c < 1e-8 && nested,
            format!("antipodal {a:.2e}, conjugation {c:.2e}, level sets nested: {nested}"),
        ))
    });
    v.check("outer-region", || {
        let f = field.clone()?;
        let mut detail = String::new();
        let mut ok = true;
        for &eps in &cfg.eps {
            let r = level_set_report(&f, eps, None)?;
            ok &= r.outer_violations == 0 && r.bound_violations == 0;
            write!(
                detail,
                "eps {eps:e}: {}+{} violations; ",
                r.outer_violations, r.bound_violations
            )
            .unwrap();
        }
        Ok((ok, detail.trim_end_matches("; ").to_string()))
    });
    if theta != 0.0 && n >= 128 {
        v.check("inner-region", || {
            let cal = calibrate(&p, n, theta.abs() / 4.0, &cfg.eps)?;
            let rp = cal.region_params()?;
            let r = (n as f64 - 2.0 * mass * mass).sqrt().min(14.0);
            let sector = Grid::new(0.5 * r, r, -0.35 * r, 0.35 * r, 21, 15)?;
            let f = pseudospectrum_grid(&p, n, &sector)?;
            let mut ok = true;
            let mut detail = format!("c1 = {:.3}, c2 = {:.3}; ", cal.c1, cal.c2);
            for &eps in &cfg.eps {
                let rep = level_set_report(&f, eps, Some(&rp))?;
                ok &= rep.inner_violations == 0;
                write!(
                    detail,
                    "eps {eps:e}: {}/{} violations; ",
                    rep.inner_violations, rep.inner_points
                )
                .unwrap();
            }
            Ok((ok, detail.trim_end_matches("; ").to_string()))
        });
    } else {
        v.skip("inner-region", "needs theta != 0 and basis-size >= 128");
    }
    v.check("transition-angle", || {
        let f = transition_angle(theta)?;
        Ok((
            f >= theta.abs() / 2.0,
            format!(
                "f(theta) = {f:.9} against |theta|/2 = {:.9}",
                theta.abs() / 2.0
            ),
        ))
    });
    v.check("rays", || {
        let mut ok = true;
        let mut detail = String::new();
        if theta != 0.0 {
            let wild = ray_scan(&p, n, theta / 4.0, &[2.0, 4.0, 6.0], 1)?;
            ok &= wild.is_strictly_increasing();
            write!(
                detail,
                "interior ray increasing: {}; ",
                wild.is_strictly_increasing()
            )
            .unwrap();
        }
        let angle = (1.1 * transition_angle(theta)?).max(0.2);
        // the bound applies from r > 2 m t / ((1 - t) sin a - t cos a) on
        let t = (theta / 2.0).tan().abs();
        let r_min = 2.0 * mass * t / ((1.0 - t) * angle.sin() - t * angle.cos());
        let offsets: Vec<f64> = (1..=5).map(|k| 1.5 * r_min + k as f64).collect();
        let tame = ray_scan(&p, n, angle, &offsets, 1)?;
        let viol = tame.bound_violations(theta, mass, BOUND_SLACK)?;
        ok &= viol == Some(0);
        let b = resolvent_upper_bound(tame.samples[0].z, theta, mass)?;
        write!(
            detail,
            "exterior ray bound violations: {viol:?} (first bound {b:.3})"
        )
        .unwrap();
        Ok((ok, detail))
    });
    if mass > 0.0 {
        v.check("nrlimit", || {
            let r = nonrel_convergence(
                theta,
                mass,
                cfg.omega,
                Complex::new(0.0, 1.0),
                &[1.0, 2.0, 4.0, 8.0, 16.0],
                64,
            )?;
            Ok((
                r.monotone && r.reduction() < 0.1,
                format!(
                    "strictly decreasing: {}, last/first = {:.4}",
                    r.monotone,
                    r.reduction()
                ),
            ))
        });
    } else {
        v.skip("nrlimit", "needs a positive mass");
    }
    if cfg.seed_check {
        v.check("determinism", || {
            let a = pseudospectrum_grid(&p, n, &grid)?.to_csv();
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(3)
                .build()
                .map_err(|e| Failure::Numerical(e.to_string()))?;
            let b = pool.install(|| pseudospectrum_grid(&p, n, &grid))?.to_csv();
            Ok((
                a == b,
                format!("field output identical across worker counts: {}", a == b),
            ))
        });
    }
    if v.failed.is_empty() {
        println!("all groups passed");
        Ok(())
    } else {
        Err(Failure::Verification(v.failed.join(", ")))
    }
}
