//! Run configuration: defaults, a flat `key = value` file, and command-line
//! overrides, merged in that order.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use num_complex::Complex;
use rotosc::pseudospectra::Grid;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Command {
    Spectrum,
    Projnorms,
    Pseudo,
    Rays,
    Nrlimit,
    Verify,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Spectrum => "spectrum",
            Command::Projnorms => "projnorms",
            Command::Pseudo => "pseudo",
            Command::Rays => "rays",
            Command::Nrlimit => "nrlimit",
            Command::Verify => "verify",
        }
    }
}

impl FromStr for Command {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        <Command as clap::ValueEnum>::from_str(s, true)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        <Format as clap::ValueEnum>::from_str(s, true)
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Csv => "csv",
            Format::Json => "json",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub theta: f64,
    pub mass: f64,
    /// Speeds of light; the limit check sweeps all of them.
    pub c: Vec<f64>,
    pub omega: f64,
    pub basis_size: usize,
    pub grid: Grid,
    /// Strictly decreasing, inside `(0, 1)`.
    pub eps: Vec<f64>,
    /// Defaults to `theta / 4`.
    pub ray_angle: Option<f64>,
    pub ray_offsets: Vec<f64>,
    pub out: PathBuf,
    pub format: Format,
    pub svg: bool,
    pub threads: Option<usize>,
    pub seed_check: bool,
    /// Defaults to 10 for `spectrum` and 200 for `projnorms`.
    pub n_max: Option<usize>,
    pub z: Complex<f64>,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        RunConfig {
            command,
            theta: std::f64::consts::FRAC_PI_4,
            mass: 1.0,
            c: vec![1.0, 2.0, 4.0, 8.0, 16.0],
            omega: 1.0,
            basis_size: 128,
            grid: Grid::square(6.0, 101).expect("default grid"),
            eps: vec![0.1, 0.01, 0.001],
            ray_angle: None,
            ray_offsets: vec![2.0, 4.0, 6.0, 8.0],
            out: PathBuf::from("rotosc-out"),
            format: Format::Csv,
            svg: false,
            threads: None,
            seed_check: false,
            n_max: None,
            z: Complex::new(0.0, 1.0),
        }
    }

    pub fn ray_angle(&self) -> f64 {
        self.ray_angle.unwrap_or(self.theta / 4.0)
    }

    pub fn n_max(&self) -> usize {
        self.n_max.unwrap_or(match self.command {
            Command::Projnorms => 200,
            _ => 10,
        })
    }

    /// Applies one `key = value` setting. Keys are the long flag names.
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), String> {
        let v = value.trim();
        let bad = |what: &str| format!("{key}: cannot parse '{v}' as {what}");
        let real = |s: &str| s.trim().parse::<f64>().map_err(|_| bad("a number"));
        let list = |s: &str| -> Result<Vec<f64>, String> {
            s.split(',')
                .map(|p| {
                    p.trim()
                        .parse::<f64>()
                        .map_err(|_| bad("a list of numbers"))
                })
                .collect()
        };
        let count = |s: &str| s.parse::<usize>().map_err(|_| bad("a count"));
        let flag = |s: &str| match s {
            "true" | "1" | "yes" => Ok(true),
            "false" | "0" | "no" => Ok(false),
            _ => Err(bad("a boolean")),
        };
        match key.trim() {
            "command" => self.command = v.parse()?,
            "theta" => self.theta = real(v)?,
            "mass" => self.mass = real(v)?,
            "c" => self.c = list(v)?,
            "omega" => self.omega = real(v)?,
            "basis-size" => self.basis_size = count(v)?,
            "grid" => self.grid = Grid::parse(v).map_err(|e| e.to_string())?,
            "eps" => self.eps = list(v)?,
            "ray-angle" => self.ray_angle = Some(real(v)?),
            "ray-offsets" => self.ray_offsets = list(v)?,
            "out" => self.out = PathBuf::from(v),
            "format" => self.format = v.parse()?,
            "svg" => self.svg = flag(v)?,
            "threads" => self.threads = Some(count(v)?),
            "seed-check" => self.seed_check = flag(v)?,
            "n-max" => self.n_max = Some(count(v)?),
            "z" => {
                self.z = Complex::from_str(v).map_err(|_| bad("a complex number such as 0+1i"))?
            }
            other => return Err(format!("unknown configuration key '{other}'")),
        }
        Ok(())
    }

    /// Reads `key = value` lines; `#` starts a comment.
    pub fn apply_text(&mut self, text: &str) -> Result<(), String> {
        for (i, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| format!("line {}: expected key = value", i + 1))?;
            self.set(k.trim(), v)
                .map_err(|e| format!("line {}: {e}", i + 1))?;
        }
        Ok(())
    }

    /// The flat text form; [`RunConfig::apply_text`] reads it back unchanged.
    pub fn to_text(&self) -> String {
        let join = |v: &[f64]| {
            v.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        let mut s = String::new();
        let mut put = |k: &str, v: String| s.push_str(&format!("{k} = {v}\n"));
        put("command", self.command.name().into());
        put("theta", self.theta.to_string());
        put("mass", self.mass.to_string());
        put("c", join(&self.c));
        put("omega", self.omega.to_string());
        put("basis-size", self.basis_size.to_string());
        put("grid", self.grid.to_arg_string());
        put("eps", join(&self.eps));
        if let Some(a) = self.ray_angle {
            put("ray-angle", a.to_string());
        }
        put("ray-offsets", join(&self.ray_offsets));
        put("out", self.out.display().to_string());
        put("format", self.format.to_string());
        put("svg", self.svg.to_string());
        if let Some(t) = self.threads {
            put("threads", t.to_string());
        }
        put("seed-check", self.seed_check.to_string());
        if let Some(n) = self.n_max {
            put("n-max", n.to_string());
        }
        put("z", format!("{}{:+}i", self.z.re, self.z.im));
        s
    }

    /// Checks every field; the message names the first offending one.
    pub fn validate(&self) -> Result<(), String> {
        if !(self.theta.abs() < std::f64::consts::FRAC_PI_2) {
            return Err(format!("theta = {} must lie in (-pi/2, pi/2)", self.theta));
        }
        if !(self.mass >= 0.0 && self.mass.is_finite()) {
            return Err(format!("mass = {} must be nonnegative", self.mass));
        }
        if !(self.omega > 0.0 && self.omega.is_finite()) {
            return Err(format!("omega = {} must be positive", self.omega));
        }
        if self.c.is_empty()
            || self.c.iter().any(|&c| !(c > 0.0 && c.is_finite()))
            || self.c.windows(2).any(|w| w[1] <= w[0])
        {
            return Err("c must be a strictly increasing list of positive values".into());
        }
        if self.basis_size < 32 {
            return Err(format!(
                "basis-size = {} must be at least 32",
                self.basis_size
            ));
        }
        if self.eps.is_empty()
            || self.eps.iter().any(|&e| !(e > 0.0 && e < 1.0))
            || self.eps.windows(2).any(|w| w[1] >= w[0])
        {
            return Err("eps must be a strictly decreasing list inside (0, 1)".into());
        }
        if self.ray_offsets.is_empty()
            || self
                .ray_offsets
                .iter()
                .any(|&r| !(r > 0.0 && r.is_finite()))
            || self.ray_offsets.windows(2).any(|w| w[1] <= w[0])
        {
            return Err("ray-offsets must be a strictly increasing list of positive values".into());
        }
        if !self.ray_angle().is_finite() {
            return Err("ray-angle must be finite".into());
        }
        if self.threads == Some(0) {
            return Err("threads must be positive".into());
        }
        if self.command == Command::Projnorms && self.n_max() < 20 {
            return Err(format!(
                "n-max = {} must be at least 20 for projnorms",
                self.n_max()
            ));
        }
        if self.command == Command::Nrlimit {
            if self.mass <= 0.0 {
                return Err("nrlimit needs a positive mass".into());
            }
            if self.z.im == 0.0 || !self.z.re.is_finite() || !self.z.im.is_finite() {
                return Err(format!("z = {} must be finite and non-real", self.z));
            }
        }
        Ok(())
    }
}
