//! `rotosc`: spectra, projector norms, pseudospectra, ray scans and the
//! non-relativistic limit of the rotated Dirac oscillator as data files.

mod commands;
mod config;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use commands::Failure;
use config::{Command, Format, RunConfig};

#[derive(Parser, Debug)]
#[command(
    name = "rotosc",
    version,
    about = "Rotated harmonic and Dirac oscillators"
)]
struct Cli {
    /// What to compute. May instead come from the config file.
    #[arg(value_enum)]
    command: Option<Command>,
    /// Flat `key = value` file; flags given here override it.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Rotation angle in (-pi/2, pi/2) [default: pi/4]
    #[arg(long, allow_hyphen_values = true)]
    theta: Option<String>,
    /// Mass m >= 0 [default: 1]
    #[arg(long)]
    mass: Option<String>,
    /// Speed(s) of light for nrlimit, comma separated [default: 1,2,4,8,16]
    #[arg(long)]
    c: Option<String>,
    /// Oscillator frequency [default: 1]
    #[arg(long)]
    omega: Option<String>,
    /// Number of Hermite modes N [default: 128]
    #[arg(long)]
    basis_size: Option<String>,
    /// re0:re1:im0:im1:nx:ny [default: -6:6:-6:6:101:101]
    #[arg(long, allow_hyphen_values = true)]
    grid: Option<String>,
    /// Decreasing tolerances, comma separated [default: 0.1,0.01,0.001]
    #[arg(long)]
    eps: Option<String>,
    /// Ray angle in radians [default: theta/4]
    #[arg(long, allow_hyphen_values = true)]
    ray_angle: Option<String>,
    /// Increasing ray offsets, comma separated [default: 2,4,6,8]
    #[arg(long)]
    ray_offsets: Option<String>,
    /// Output directory [default: rotosc-out]
    #[arg(long)]
    out: Option<String>,
    /// Table format
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Also write contour lines of the pseudospectrum as SVG
    #[arg(long)]
    svg: bool,
    /// Worker threads [default: all cores]
    #[arg(long)]
    threads: Option<String>,
    /// Recompute the output with a different worker count and compare
    #[arg(long)]
    seed_check: bool,
    /// Highest level for spectrum (default 10) and projnorms (default 200)
    #[arg(long)]
    n_max: Option<String>,
    /// Complex shift for nrlimit, e.g. 0+1i [default: i]
    #[arg(long, allow_hyphen_values = true)]
    z: Option<String>,
}

fn build_config(cli: &Cli) -> Result<RunConfig, String> {
    let mut cfg = RunConfig::new(Command::Verify);
    let mut have_command = false;
    if let Some(path) = &cli.config {
        let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        have_command = text.lines().any(|l| {
            l.split('#')
                .next()
                .unwrap_or("")
                .trim_start()
                .starts_with("command")
        });
        cfg.apply_text(&text)
            .map_err(|e| format!("{}: {e}", path.display()))?;
    }
    if let Some(c) = cli.command {
        cfg.command = c;
        have_command = true;
    }
    if !have_command {
        return Err(
            "no command given (spectrum, projnorms, pseudo, rays, nrlimit or verify)".into(),
        );
    }
    let overrides = [
        ("theta", &cli.theta),
        ("mass", &cli.mass),
        ("c", &cli.c),
        ("omega", &cli.omega),
        ("basis-size", &cli.basis_size),
        ("grid", &cli.grid),
        ("eps", &cli.eps),
        ("ray-angle", &cli.ray_angle),
        ("ray-offsets", &cli.ray_offsets),
        ("out", &cli.out),
        ("threads", &cli.threads),
        ("n-max", &cli.n_max),
        ("z", &cli.z),
    ];
    for (key, value) in overrides {
        if let Some(v) = value {
            cfg.set(key, v)?;
        }
    }
    if let Some(f) = cli.format {
        cfg.format = f;
    }
    cfg.svg |= cli.svg;
    cfg.seed_check |= cli.seed_check;
    cfg.validate()?;
    Ok(cfg)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = match build_config(&cli) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("rotosc: configuration error: {e}");
            return ExitCode::from(2);
        }
    };
    if let Some(t) = cfg.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
        {
            eprintln!("rotosc: {e}");
            return ExitCode::from(3);
        }
    }
    match commands::run(&cfg) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("rotosc: {f}");
            ExitCode::from(Failure::code(&f))
        }
    }
}
