//! The four `fnr` commands. Each writes its files into the output directory
//! and a short summary to `log`; verification failures are reported only
//! after every report file has been written.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use fnr_core::closedform::{
    admissible_lambdas, boundary_curve, branch_transitions, contains, ellipse_gap, incidence_residual,
    lambda_max, sextic_relative_residual, switching_cosine, union_max, Containment, SupportLine,
};
use fnr_core::exactpoly::{arc_polynomial, min_sample_count, verify_identity_with, BigRational, ResultantReport};
use fnr_core::oracle::{
    lambda_grid, oracle_lambda_max, oracle_lambda_max_via_condition, theta_grid, DEFAULT_LAMBDA_STEP,
};
use fnr_core::{Complex64, Error};
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::config::{Command, Format, RunConfig};
use crate::error::{CliError, CliResult};
use crate::render;

/// Default number of angles for curves and line families.
pub const DEFAULT_SAMPLES: usize = 720;
/// Samples behind the ellipse-gap check.
pub const ELLIPSE_SAMPLES: usize = 2000;
/// Smallest gap that counts as a refutation of the ellipse in `verify`;
/// well above the sampling and rounding noise of the distance computation.
pub const ELLIPSE_GAP_FLOOR: f64 = 1e-8;
/// Angles in the oracle sweeps.
pub const ORACLE_ANGLES: usize = 72;
/// Angles and circle resolution of the condition-based dual route.
pub const DUAL_ROUTE_ANGLES: usize = 24;
pub const DUAL_ROUTE_CIRCLE_SAMPLES: usize = 10_000;
/// Slack for one-sided and consistency comparisons between floating-point
/// routes.
pub const SUPPORT_SLACK: f64 = 1e-10;

/// The coefficient altered by `--mutate`: r⁶u² in E(u, v, r) goes 16 → 17.
pub const MUTATED_MONOMIAL: [(&str, u32); 2] = [("r", 6), ("u", 2)];
pub const MUTATED_VALUE: i64 = 17;

pub fn run(cfg: &RunConfig, log: &mut dyn Write) -> CliResult<()> {
    match cfg.command {
        Command::SupportLines => support_lines(cfg, log),
        Command::Boundary => boundary(cfg, log),
        Command::Verify => verify(cfg, log),
        Command::Resultant => resultant(cfg, log),
    }
}

fn out_dir(cfg: &RunConfig) -> CliResult<&Path> {
    fs::create_dir_all(&cfg.out).map_err(|e| CliError::io(&cfg.out, e))?;
    Ok(&cfg.out)
}

fn write_file(dir: &Path, name: &str, bytes: &[u8], log: &mut dyn Write) -> CliResult<PathBuf> {
    let path = dir.join(name);
    fs::write(&path, bytes).map_err(|e| CliError::io(&path, e))?;
    say(log, format!("wrote {}", path.display()));
    Ok(path)
}

fn say(log: &mut dyn Write, line: String) {
    // stdout going away is not worth failing a run for
    let _ = writeln!(log, "{line}");
}

fn support_lines(cfg: &RunConfig, log: &mut dyn Write) -> CliResult<()> {
    let r = cfg.radius();
    let count = cfg.samples.unwrap_or(DEFAULT_SAMPLES);
    let lines: Vec<SupportLine> = render::line_angles(count)
        .into_iter()
        .map(|t| SupportLine::new(t, r))
        .collect();
    let dir = out_dir(cfg)?;
    if cfg.wants(Format::Csv) {
        write_file(dir, "support-lines.csv", &render::support_lines_csv(&lines), log)?;
    }
    if cfg.wants(Format::Svg) {
        let svg = render::support_lines_svg(r, &lines, &cfg.colors);
        write_file(dir, "support-lines.svg", svg.as_bytes(), log)?;
    }
    say(log, format!("support-lines: r = {r}, {count} lines, w = lambda_max(0) = {}", lambda_max(0.0, r)));
    Ok(())
}

fn boundary(cfg: &RunConfig, log: &mut dyn Write) -> CliResult<()> {
    let r = cfg.radius();
    let points = boundary_curve(r, cfg.samples.unwrap_or(DEFAULT_SAMPLES))?;
    let svg = if cfg.wants(Format::Svg) {
        Some(render::boundary_svg(r, &points, &cfg.colors)?)
    } else {
        None
    };
    let dir = out_dir(cfg)?;
    if cfg.wants(Format::Csv) {
        write_file(dir, "boundary.csv", &render::boundary_csv(&points), log)?;
    }
    if let Some(svg) = svg {
        write_file(dir, "boundary.svg", svg.as_bytes(), log)?;
    }
    say(
        log,
        format!(
            "boundary: r = {r}, {} points, {} branch transitions",
            points.len(),
            branch_transitions(&points)
        ),
    );
    Ok(())
}

/// How a measured value is compared with its tolerance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Relation {
    #[serde(rename = "<=")]
    AtMost,
    #[serde(rename = "<")]
    Below,
    #[serde(rename = ">")]
    Above,
}

impl Relation {
    fn holds(self, value: f64, tol: f64) -> bool {
        match self {
            Relation::AtMost => value <= tol,
            Relation::Below => value < tol,
            Relation::Above => value > tol,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub value: f64,
    pub tolerance: f64,
    pub relation: Relation,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Check {
    fn new(name: &'static str, value: f64, relation: Relation, tolerance: f64) -> Self {
        Self {
            name,
            value,
            tolerance,
            relation,
            // NaN fails every relation
            pass: relation.holds(value, tolerance),
            detail: None,
        }
    }

    fn detail(mut self, d: impl Into<String>) -> Self {
        self.detail = Some(d.into());
        self
    }
}

#[derive(Debug, Serialize)]
pub struct VerifyReport {
    pub r: f64,
    pub a: [f64; 2],
    #[serde(rename = "N")]
    pub n: usize,
    pub samples: usize,
    pub grid: usize,
    pub seed: u64,
    pub pass: bool,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub resultant: Option<ResultantReport>,
}

fn max_of(it: impl Iterator<Item = f64>) -> f64 {
    it.fold(f64::NEG_INFINITY, f64::max)
}

/// `count` angles over [−π, π), including the axis directions when `count`
/// is a multiple of 4.
fn sweep(count: usize) -> Vec<f64> {
    render::line_angles(count)
}

/// Closed-form suite: identities of the support function and the boundary.
fn closed_form_checks(cfg: &RunConfig, r: f64) -> CliResult<Vec<Check>> {
    use Relation::*;
    let tol = &cfg.tol;
    let grid = sweep(cfg.grid);
    let mut checks = Vec::new();

    checks.push(
        Check::new("numerical-radius", (lambda_max(0.0, r) - (1.0 + r)).abs(), AtMost, 1e-15)
            .detail(format!("lambda_max(0) = {}", lambda_max(0.0, r))),
    );
    let minor = (1.0 + r * r).sqrt();
    checks.push(Check::new(
        "minor-axis",
        (lambda_max(FRAC_PI_2, r) - minor).abs(),
        AtMost,
        1e-15,
    ));
    // E(0, 1 + r², r) in exact arithmetic, for the rational value of r
    let exact_r = cfg.radii[0].exact.clone();
    let v = BigRational::from_integer(1.into()) + &exact_r * &exact_r;
    let e = arc_polynomial().eval(&[("u", BigRational::zero()), ("v", v), ("r", exact_r)])?;
    checks.push(
        Check::new("minor-axis-exact", if e.is_zero() { 0.0 } else { 1.0 }, AtMost, 0.0)
            .detail(format!("E(0, 1 + r^2) = {e}")),
    );

    let c = switching_cosine(r);
    let circle = r + c;
    let sextic = (1.0 + r * r / (1.0 - c * c)).sqrt();
    checks.push(Check::new("switching-continuity", (circle - sextic).abs(), AtMost, tol.algebraic));

    checks.push(Check::new(
        "symmetry",
        max_of(grid.iter().map(|&t| {
            let l = lambda_max(t, r);
            (l - lambda_max(-t, r)).abs().max((l - lambda_max(PI - t, r)).abs())
        })),
        AtMost,
        tol.algebraic,
    ));
    checks.push(
        Check::new(
            "support-floor",
            max_of(grid.iter().map(|&t| minor - lambda_max(t, r))),
            AtMost,
            tol.algebraic,
        )
        .detail("max of sqrt(1 + r^2) - lambda_max(theta)"),
    );
    let mut interval_err = 0.0f64;
    for &t in &grid {
        let m = union_max(admissible_lambdas(t, r)?).unwrap_or(f64::NAN);
        interval_err = interval_err.max((m - lambda_max(t, r)).abs());
        if m.is_nan() {
            interval_err = f64::NAN;
            break;
        }
    }
    checks.push(Check::new("interval-consistency", interval_err, AtMost, tol.algebraic));

    let pts = boundary_curve(r, cfg.samples.unwrap_or(DEFAULT_SAMPLES))?;
    checks.push(Check::new(
        "branch-transitions",
        (branch_transitions(&pts) as f64 - 4.0).abs(),
        AtMost,
        0.0,
    ));
    checks.push(Check::new(
        "envelope-on-curve",
        max_of(pts.iter().filter(|p| !p.branch.is_circle()).map(|p| sextic_relative_residual(p.x, p.y, r))),
        AtMost,
        tol.envelope,
    ));
    checks.push(Check::new(
        "circle-equation",
        max_of(pts.iter().filter(|p| p.branch.is_circle()).map(|p| {
            let center = if p.x > 0.0 { 1.0 } else { -1.0 };
            ((p.x - center).powi(2) + p.y * p.y - r * r).abs()
        })),
        AtMost,
        tol.algebraic,
    ));
    checks.push(Check::new(
        "incidence",
        max_of(pts.iter().map(|p| incidence_residual(p, r).abs())),
        AtMost,
        tol.algebraic,
    ));
    let phis = sweep(cfg.grid);
    checks.push(Check::new(
        "support-consistency",
        max_of(pts.par_iter().map(|p| {
            max_of(phis.iter().map(|&phi| {
                let (s, c) = phi.sin_cos();
                p.x * c + p.y * s - lambda_max(phi, r)
            }))
        }).collect::<Vec<_>>().into_iter()),
        AtMost,
        SUPPORT_SLACK,
    ));
    let n = pts.len();
    let min_cross = (0..n)
        .map(|i| {
            let (a, b, c) = (&pts[i], &pts[(i + 1) % n], &pts[(i + 2) % n]);
            (b.x - a.x) * (c.y - b.y) - (b.y - a.y) * (c.x - b.x)
        })
        .fold(f64::INFINITY, f64::min);
    checks.push(Check::new("convexity", -min_cross, AtMost, SUPPORT_SLACK).detail("negated minimum cross product"));
    let misclassified = pts
        .par_iter()
        .map(|p| contains(p.x, p.y, r, cfg.grid).map(|c| !matches!(c, Containment::Boundary { .. })))
        .collect::<fnr_core::Result<Vec<bool>>>()?
        .into_iter()
        .filter(|&bad| bad)
        .count();
    checks.push(
        Check::new("membership-round-trip", misclassified as f64, AtMost, 0.0)
            .detail(format!("boundary points not classified Boundary, of {n}")),
    );
    Ok(checks)
}

/// Truncation oracle: one-sidedness, convergence, monotonicity in N, phase
/// invariance, and the condition-based dual route.
fn oracle_checks(cfg: &RunConfig, r: f64) -> CliResult<Vec<Check>> {
    use Relation::*;
    let a = cfg.a;
    let thetas = theta_grid(ORACLE_ANGLES);
    let levels = [cfg.n / 8, cfg.n / 4, cfg.n / 2, cfg.n];
    let mut max_err = Vec::with_capacity(levels.len());
    let mut min_err = f64::INFINITY;
    for &n in &levels {
        let errs = thetas
            .par_iter()
            .map(|&t| Ok(lambda_max(t, r) - oracle_lambda_max(t, a, n)?))
            .collect::<fnr_core::Result<Vec<f64>>>()?;
        min_err = min_err.min(errs.iter().copied().fold(f64::INFINITY, f64::min));
        max_err.push(max_of(errs.into_iter()));
    }
    let mut checks = vec![
        Check::new("oracle-below-closed-form", -min_err, AtMost, SUPPORT_SLACK)
            .detail("largest oracle_lambda_max - lambda_max over all levels"),
        Check::new("oracle-convergence", max_err[3], Below, cfg.tol.convergence)
            .detail(format!("max error at N = {}", cfg.n)),
    ];
    let decreasing = max_err.windows(2).all(|w| w[1] < w[0]);
    checks.push(
        Check::new("oracle-monotone", if decreasing { 0.0 } else { 1.0 }, AtMost, 0.0).detail(format!(
            "max errors at N = {levels:?}: {}",
            max_err.iter().map(|e| format!("{e:.6e}")).collect::<Vec<_>>().join(", ")
        )),
    );

    // Rotating a by a phase is a unitary similarity, so nothing may move.
    let rotated = if cfg.coupling_given && a.im != 0.0 {
        Complex64::new(a.norm(), 0.0)
    } else {
        Complex64::from_polar(a.norm(), PI / 7.0)
    };
    let phase_err = max_of(
        sweep(8)
            .par_iter()
            .map(|&t| Ok((oracle_lambda_max(t, a, cfg.n)? - oracle_lambda_max(t, rotated, cfg.n)?).abs()))
            .collect::<fnr_core::Result<Vec<f64>>>()?
            .into_iter(),
    );
    checks.push(
        Check::new("phase-invariance", phase_err, AtMost, SUPPORT_SLACK)
            .detail(format!("a = {} vs {}", fmt_complex(a), fmt_complex(rotated))),
    );

    let lambdas = lambda_grid(r, DEFAULT_LAMBDA_STEP);
    let dual = max_of(
        sweep(DUAL_ROUTE_ANGLES)
            .par_iter()
            .map(|&t| {
                let v = oracle_lambda_max_via_condition(t, r, &lambdas, DUAL_ROUTE_CIRCLE_SAMPLES)?;
                Ok((v - lambda_max(t, r)).abs())
            })
            .collect::<fnr_core::Result<Vec<f64>>>()?
            .into_iter(),
    );
    checks.push(Check::new("dual-route", dual, AtMost, DEFAULT_LAMBDA_STEP));
    Ok(checks)
}

fn fmt_complex(z: Complex64) -> String {
    format!("{},{}", z.re, z.im)
}

fn verify(cfg: &RunConfig, log: &mut dyn Write) -> CliResult<()> {
    let r = cfg.radius();
    if r == 0.0 {
        return Err(Error::DegenerateRadius.into());
    }
    let dir = out_dir(cfg)?;
    let mut checks = closed_form_checks(cfg, r)?;
    checks.extend(oracle_checks(cfg, r)?);
    let gap = ellipse_gap(r, ELLIPSE_SAMPLES)?;
    checks.push(
        Check::new("ellipse-gap", gap.max_gap, Relation::Above, ELLIPSE_GAP_FLOOR)
            .detail(format!("attained at theta = {}", gap.argmax_theta)),
    );
    let resultant = if cfg.with_resultant {
        let rep = certificate(cfg, &cfg.radii[0].exact, &arc_polynomial())?;
        checks.push(Check::new(
            "resultant",
            rep.nonzero_residuals() as f64 + if rep.success { 0.0 } else { 1.0 },
            Relation::AtMost,
            0.0,
        ));
        Some(rep)
    } else {
        None
    };

    let failed: Vec<&str> = checks.iter().filter(|c| !c.pass).map(|c| c.name).collect();
    let report = VerifyReport {
        r,
        a: [cfg.a.re, cfg.a.im],
        n: cfg.n,
        samples: cfg.samples.unwrap_or(DEFAULT_SAMPLES),
        grid: cfg.grid,
        seed: cfg.seed,
        pass: failed.is_empty(),
        checks,
        resultant,
    };
    if cfg.wants(Format::Json) {
        write_file(dir, "verify.json", &to_json(&report), log)?;
    }
    for c in &report.checks {
        say(
            log,
            format!(
                "{} {:<26} {:.6e} {} {:e}",
                if c.pass { "PASS" } else { "FAIL" },
                c.name,
                c.value,
                serde_json::to_value(c.relation).unwrap().as_str().unwrap_or("?"),
                c.tolerance
            ),
        );
    }
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::Verification(format!("failing checks: {}", failed.join(", "))))
    }
}

fn to_json(v: &impl Serialize) -> Vec<u8> {
    let mut bytes = serde_json::to_vec_pretty(v).expect("report serializes");
    bytes.push(b'\n');
    bytes
}

fn certificate(cfg: &RunConfig, r: &BigRational, arc: &fnr_core::exactpoly::ExactPoly) -> CliResult<ResultantReport> {
    let samples = cfg.samples.unwrap_or_else(|| min_sample_count(cfg.degree_bound));
    Ok(verify_identity_with(arc, r, cfg.degree_bound, samples, cfg.seed)?)
}

#[derive(Serialize)]
struct ResultantFile<'a> {
    mutated: Option<String>,
    pass: bool,
    reports: &'a [ResultantReport],
}

fn resultant(cfg: &RunConfig, log: &mut dyn Write) -> CliResult<()> {
    if let Some(zero) = cfg.radii.iter().find(|r| r.exact.is_zero()) {
        return Err(CliError::Usage(format!(
            "--r {}: the certificate needs r != 0 (both leading coefficients -r^2 vanish)",
            zero.text
        )));
    }
    let arc = if cfg.mutate {
        arc_polynomial()
            .with_coefficient(&MUTATED_MONOMIAL, MUTATED_VALUE)
            .expect("monomial exists")
    } else {
        arc_polynomial()
    };
    let dir = out_dir(cfg)?;
    let mut reports = Vec::with_capacity(cfg.radii.len());
    for radius in &cfg.radii {
        let rep = certificate(cfg, &radius.exact, &arc)?;
        say(log, format!("resultant r = {}: {}", rep.r, if rep.success { "PASS" } else { "FAIL" }));
        reports.push(rep);
    }
    let mutated = cfg.mutate.then(|| format!("coefficient of r^6 u^2 set to {MUTATED_VALUE}"));

    let mut text = String::new();
    if let Some(m) = &mutated {
        text.push_str(&format!("mutated boundary polynomial: {m}\n\n"));
    }
    for rep in &reports {
        text.push_str(&rep.to_string());
        if !rep.success {
            text.push_str("  residuals at held-out points:\n");
            for (i, v) in rep.held_out_residuals.iter().enumerate() {
                text.push_str(&format!("    [{i}] {v}\n"));
            }
        }
        text.push('\n');
    }
    write_file(dir, "resultant.txt", text.as_bytes(), log)?;
    let pass = reports.iter().all(|r| r.success);
    if cfg.wants(Format::Json) {
        let file = ResultantFile {
            mutated,
            pass,
            reports: &reports,
        };
        write_file(dir, "resultant.json", &to_json(&file), log)?;
    }
    if pass {
        Ok(())
    } else {
        let failed: Vec<&str> = reports.iter().filter(|r| !r.success).map(|r| r.r.as_str()).collect();
        Err(CliError::Verification(format!(
            "resultant identity fails for r = {} (see resultant.txt)",
            failed.join(", ")
        )))
    }
}
