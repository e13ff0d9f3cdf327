//! Command-line grammar and its validated form.

use std::path::PathBuf;
use std::str::FromStr;

use clap::{Parser, ValueEnum};
use fnr_core::exactpoly::{BigInt, BigRational};
use fnr_core::Complex64;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// CSV and SVG of the supporting-line family
    SupportLines,
    /// CSV and SVG of the boundary with circles, sextic and switching points
    Boundary,
    /// Run the invariant suites and write a JSON report
    Verify,
    /// Resultant divisibility certificate, text and JSON report
    Resultant,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::SupportLines => "support-lines",
            Command::Boundary => "boundary",
            Command::Verify => "verify",
            Command::Resultant => "resultant",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Svg,
    Json,
}

/// `fnr <command> [flags]`
#[derive(Debug, Parser)]
#[command(name = "fnr", version, about = "Numerical range of the Foguel operator F_{aI}: figures, data and verification")]
pub struct Cli {
    #[arg(value_enum)]
    pub command: Command,

    /// r = |a|/2; a decimal or p/q. Repeatable for `resultant`
    /// [default: 0.5, or 1/2, 1/3, 2 for `resultant`]
    #[arg(long = "r", value_name = "R", allow_hyphen_values = true)]
    pub r: Vec<String>,

    /// Complex coupling a, as RE,IM (r = |a|/2)
    #[arg(long = "a", value_name = "RE,IM", allow_hyphen_values = true, conflicts_with = "r")]
    pub a: Option<String>,

    /// Number of angles for curves and line families [default: 720;
    /// for `resultant`, the smallest admissible sample count]
    #[arg(long)]
    pub samples: Option<usize>,

    /// Truncation level of the compression oracle
    #[arg(long = "N", value_name = "N", default_value_t = 400)]
    pub n: usize,

    /// Size of the theta grid used by membership and sweep checks
    #[arg(long, default_value_t = 720)]
    pub grid: usize,

    /// Seed for the resultant sample points
    #[arg(long, default_value_t = 1)]
    pub seed: u64,

    /// Output directory
    #[arg(long, value_name = "PATH", default_value = ".")]
    pub out: PathBuf,

    /// Output formats (repeatable) [default: csv and svg for figures, json
    /// for reports]
    #[arg(long = "format", value_enum, value_name = "FORMAT")]
    pub formats: Vec<Format>,

    /// Tolerance for algebraic identities
    #[arg(long = "tol-alg", default_value_t = 1e-12)]
    pub tol_alg: f64,

    /// Relative tolerance for envelope points on the sextic
    #[arg(long = "tol-env", default_value_t = 1e-8)]
    pub tol_env: f64,

    /// Budget for the N-level oracle error in `verify`
    #[arg(long = "tol-conv", default_value_t = 5e-3)]
    pub tol_conv: f64,

    /// Total-degree bound for the resultant cofactor
    #[arg(long = "degree-bound", default_value_t = 28)]
    pub degree_bound: usize,

    /// `resultant`: corrupt one coefficient of the boundary polynomial; the
    /// certificate must then fail (exit 1)
    #[arg(long)]
    pub mutate: bool,

    /// `verify`: also run the resultant certificate
    #[arg(long = "with-resultant")]
    pub with_resultant: bool,

    /// SVG stroke colour of the boundary
    #[arg(long = "boundary-color", default_value = "#1f4fbf")]
    pub boundary_color: String,

    /// SVG colour of dashed auxiliary curves and lines
    #[arg(long = "aux-color", default_value = "#7f7f7f")]
    pub aux_color: String,

    /// SVG fill colour of the switching-point markers
    #[arg(long = "marker-color", default_value = "#c0392b")]
    pub marker_color: String,
}

/// A radius with its exact rational value (from the decimal or p/q text).
#[derive(Debug, Clone, PartialEq)]
pub struct Radius {
    pub value: f64,
    pub exact: BigRational,
    pub text: String,
}

#[derive(Debug, Clone)]
pub struct Colors {
    pub boundary: String,
    pub aux: String,
    pub marker: String,
}

#[derive(Debug, Clone)]
pub struct Tolerances {
    pub algebraic: f64,
    pub envelope: f64,
    pub convergence: f64,
}

/// Validated run configuration.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: Command,
    pub radii: Vec<Radius>,
    /// The coupling; `2r` on the real axis unless `--a` was given.
    pub a: Complex64,
    pub coupling_given: bool,
    pub samples: Option<usize>,
    pub n: usize,
    pub grid: usize,
    pub seed: u64,
    pub out: PathBuf,
    pub formats: Vec<Format>,
    pub tol: Tolerances,
    pub degree_bound: usize,
    pub mutate: bool,
    pub with_resultant: bool,
    pub colors: Colors,
}

impl RunConfig {
    pub fn radius(&self) -> f64 {
        self.radii[0].value
    }

    pub fn wants(&self, f: Format) -> bool {
        self.formats.contains(&f)
    }

    pub fn from_cli(cli: Cli) -> CliResult<Self> {
        let usage = |msg: String| Err(CliError::Usage(msg));
        let command = cli.command;

        let (radii, a, coupling_given) = match &cli.a {
            Some(text) => {
                let a = parse_complex(text)?;
                let r = a.norm() / 2.0;
                let exact = BigRational::from_float(r)
                    .ok_or_else(|| CliError::Usage(format!("--a {text}: not finite")))?;
                (vec![Radius { value: r, exact, text: r.to_string() }], a, true)
            }
            None => {
                let texts: Vec<String> = if cli.r.is_empty() {
                    match command {
                        Command::Resultant => vec!["1/2".into(), "1/3".into(), "2".into()],
                        _ => vec!["0.5".into()],
                    }
                } else {
                    cli.r.clone()
                };
                if texts.len() > 1 && command != Command::Resultant {
                    return usage(format!("{} takes a single --r", command.name()));
                }
                let radii = texts.iter().map(|t| parse_radius(t)).collect::<CliResult<Vec<_>>>()?;
                let a = Complex64::new(2.0 * radii[0].value, 0.0);
                (radii, a, false)
            }
        };

        let formats = if cli.formats.is_empty() {
            match command {
                Command::SupportLines | Command::Boundary => vec![Format::Csv, Format::Svg],
                Command::Verify | Command::Resultant => vec![Format::Json],
            }
        } else {
            let mut f = cli.formats.clone();
            f.sort();
            f.dedup();
            f
        };
        for f in &formats {
            let ok = match command {
                Command::SupportLines | Command::Boundary => *f != Format::Json,
                Command::Verify | Command::Resultant => *f == Format::Json,
            };
            if !ok {
                let name = f.to_possible_value().map(|v| v.get_name().to_owned()).unwrap_or_default();
                return usage(format!("{} cannot write {name} output", command.name()));
            }
        }

        if let Some(s) = cli.samples {
            let min = match command {
                Command::Boundary => 8,
                _ => 1,
            };
            if s < min {
                return usage(format!("--samples must be at least {min} for {}", command.name()));
            }
        }
        if cli.grid < 64 {
            return usage("--grid must be at least 64".into());
        }
        if command == Command::Verify && cli.n < 8 {
            return usage("--N must be at least 8 for verify (levels N/8, N/4, N/2, N)".into());
        }
        if cli.n == 0 {
            return usage("--N must be positive".into());
        }
        for (name, v) in [("--tol-alg", cli.tol_alg), ("--tol-env", cli.tol_env), ("--tol-conv", cli.tol_conv)] {
            if !(v >= 0.0) || !v.is_finite() {
                return usage(format!("{name} must be a finite nonnegative number, got {v}"));
            }
        }
        if cli.degree_bound == 0 {
            return usage("--degree-bound must be positive".into());
        }
        for (name, c) in [
            ("--boundary-color", &cli.boundary_color),
            ("--aux-color", &cli.aux_color),
            ("--marker-color", &cli.marker_color),
        ] {
            if c.is_empty() || !c.chars().all(|ch| ch.is_ascii_alphanumeric() || ch == '#') {
                return usage(format!("{name}: expected a colour name or #rrggbb, got {c:?}"));
            }
        }

        Ok(RunConfig {
            command,
            radii,
            a,
            coupling_given,
            samples: cli.samples,
            n: cli.n,
            grid: cli.grid,
            seed: cli.seed,
            out: cli.out,
            formats,
            tol: Tolerances {
                algebraic: cli.tol_alg,
                envelope: cli.tol_env,
                convergence: cli.tol_conv,
            },
            degree_bound: cli.degree_bound,
            mutate: cli.mutate,
            with_resultant: cli.with_resultant,
            colors: Colors {
                boundary: cli.boundary_color,
                aux: cli.aux_color,
                marker: cli.marker_color,
            },
        })
    }
}

/// `RE,IM` → complex number.
pub fn parse_complex(text: &str) -> CliResult<Complex64> {
    let bad = || CliError::Usage(format!("--a {text:?}: expected RE,IM"));
    let (re, im) = text.split_once(',').ok_or_else(bad)?;
    let re: f64 = re.trim().parse().map_err(|_| bad())?;
    let im: f64 = im.trim().parse().map_err(|_| bad())?;
    if !re.is_finite() || !im.is_finite() {
        return Err(bad());
    }
    Ok(Complex64::new(re, im))
}

/// A nonnegative radius written as `p/q`, an integer or a plain decimal;
/// the rational value is exact (0.1 is 1/10, not its binary approximation).
pub fn parse_radius(text: &str) -> CliResult<Radius> {
    let exact = parse_exact(text.trim())
        .ok_or_else(|| CliError::Usage(format!("--r {text:?}: expected a decimal or p/q")))?;
    let value = text
        .trim()
        .parse::<f64>()
        .ok()
        .or_else(|| exact.to_f64())
        .unwrap_or(f64::NAN);
    if exact < BigRational::from_integer(0.into()) || !value.is_finite() {
        return Err(CliError::Usage(format!("--r {text}: must be finite and nonnegative")));
    }
    Ok(Radius {
        value,
        exact,
        text: text.trim().to_owned(),
    })
}

fn parse_exact(text: &str) -> Option<BigRational> {
    if text.contains('/') {
        return BigRational::from_str(text).ok();
    }
    let (neg, body) = match text.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, text.strip_prefix('+').unwrap_or(text)),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    if int.is_empty() && frac.is_empty() {
        return None;
    }
    if !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits = format!("{int}{frac}");
    let numer = BigInt::from_str(if digits.is_empty() { "0" } else { &digits }).ok()?;
    let denom = num_pow10(frac.len());
    let r = BigRational::new(numer, denom);
    Some(if neg { -r } else { r })
}

fn num_pow10(k: usize) -> BigInt {
    (0..k).fold(BigInt::from(1), |acc, _| acc * 10)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn radii_parse_exactly() {
        assert_eq!(parse_radius("0.5").unwrap().exact, q(1, 2));
        assert_eq!(parse_radius("1/3").unwrap().exact, q(1, 3));
        assert!((parse_radius("1/3").unwrap().value - 1.0 / 3.0).abs() < 1e-16);
        assert_eq!(parse_radius("2").unwrap().exact, q(2, 1));
        assert_eq!(parse_radius("0.1").unwrap().exact, q(1, 10));
        assert_eq!(parse_radius(".25").unwrap().exact, q(1, 4));
        assert!(parse_radius("-1").is_err());
        assert!(parse_radius("abc").is_err());
        assert!(parse_radius("1e3").is_err());
        assert!(parse_radius("1/0").is_err());
    }

    #[test]
    fn complex_parse() {
        assert_eq!(parse_complex("1,0").unwrap(), Complex64::new(1.0, 0.0));
        assert_eq!(parse_complex("-0.5, 2").unwrap(), Complex64::new(-0.5, 2.0));
        assert!(parse_complex("1").is_err());
        assert!(parse_complex("1,x").is_err());
    }
}
