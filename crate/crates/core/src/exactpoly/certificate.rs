//! Divisibility certificate: eliminating t from the envelope system yields a
//! multiple of the boundary polynomial E(x², y², r).
//!
//! For a fixed rational r the resultant Res(x, y) and E(x², y²) are evaluated
//! exactly on a seeded tensor grid of `(d+1)²` rational points. The quotient
//! values determine a cofactor C with degree at most `d` in each of x and y.
//! The identity Res = E·C is checked exactly at seeded held-out points, and
//! only then is C expanded into monomials and required to have total degree
//! at most `d`.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::arc::arc_polynomial;
use super::poly::ExactPoly;
use super::resultant::{sylvester_resultant_at, ResultantPoint};
use crate::error::{invalid, Error, Result};

/// Largest numerator and denominator of a sampled rational coordinate.
pub const SAMPLE_HEIGHT: i64 = 1000;

/// Dimension of the space of bivariate polynomials of total degree ≤ d.
pub fn bivariate_dimension(degree_bound: usize) -> usize {
    (degree_bound + 1) * (degree_bound + 2) / 2
}

/// Smallest admissible `sample_count` for a degree bound: the full fitting
/// grid plus held-out points amounting to a quarter of the bivariate
/// dimension (so the total exceeds the dimension by well over 25%).
pub fn min_sample_count(degree_bound: usize) -> usize {
    (degree_bound + 1).pow(2) + bivariate_dimension(degree_bound).div_ceil(4)
}

#[derive(Debug, Clone, Serialize)]
pub struct CofactorSummary {
    /// C = scale · primitive, with `primitive` an integer polynomial whose
    /// coefficients are coprime and whose leading term is positive.
    pub scale: String,
    pub total_degree: u32,
    pub num_terms: usize,
    /// Structure found by exact comparison against (x²+y²)^a · E^b, if any.
    pub structure: Option<String>,
    #[serde(skip)]
    pub primitive: ExactPoly,
}

#[derive(Debug, Clone, Serialize)]
pub struct ResultantReport {
    pub r: String,
    pub seed: u64,
    pub degree_bound: usize,
    pub sample_count: usize,
    pub fit_samples: usize,
    pub held_out_samples: usize,
    pub success: bool,
    pub failure: Option<String>,
    pub cofactor: Option<CofactorSummary>,
    /// Res − E·C at the held-out points, as strings: exact rationals, or
    /// residues modulo `residual_modulus` when the modular screen already
    /// found nonzero values. All exactly zero on success.
    pub held_out_residuals: Vec<String>,
    pub residual_modulus: Option<String>,
}

impl ResultantReport {
    pub fn nonzero_residuals(&self) -> usize {
        self.held_out_residuals.iter().filter(|s| *s != "0").count()
    }
}

impl fmt::Display for ResultantReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "resultant certificate r = {}", self.r)?;
        writeln!(f, "  seed            {}", self.seed)?;
        writeln!(f, "  degree bound    {}", self.degree_bound)?;
        writeln!(
            f,
            "  samples         {} ({} fit, {} held out)",
            self.sample_count, self.fit_samples, self.held_out_samples
        )?;
        writeln!(f, "  status          {}", if self.success { "PASS" } else { "FAIL" })?;
        if let Some(msg) = &self.failure {
            writeln!(f, "  failure         {msg}")?;
        }
        if let Some(c) = &self.cofactor {
            writeln!(f, "  cofactor scale  {}", c.scale)?;
            writeln!(f, "  cofactor degree {} ({} terms)", c.total_degree, c.num_terms)?;
            if let Some(s) = &c.structure {
                writeln!(f, "  cofactor shape  {s}")?;
            }
        }
        write!(
            f,
            "  held-out nonzero residuals {}/{}",
            self.nonzero_residuals(),
            self.held_out_residuals.len()
        )?;
        match &self.residual_modulus {
            Some(p) => writeln!(f, " (residues mod {p})"),
            None => writeln!(f),
        }
    }
}

fn random_rational(rng: &mut ChaCha8Rng) -> BigRational {
    let num = rng.random_range(-SAMPLE_HEIGHT..=SAMPLE_HEIGHT);
    let den = rng.random_range(1..=SAMPLE_HEIGHT);
    BigRational::new(num.into(), den.into())
}

fn distinct_rationals(rng: &mut ChaCha8Rng, count: usize) -> Vec<BigRational> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let v = random_rational(rng);
        if seen.insert(v.clone()) {
            out.push(v);
        }
    }
    out
}

/// Monomial-basis coefficients (constant first) of the polynomial of degree
/// < nodes.len() through `(nodes[i], values[i])`, via Newton divided
/// differences.
pub fn interpolate(nodes: &[BigRational], values: &[BigRational]) -> Vec<BigRational> {
    let n = nodes.len();
    let mut dd = values.to_vec();
    for level in 1..n {
        for i in (level..n).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / (&nodes[i] - &nodes[i - level]);
        }
    }
    // Horner expansion of the Newton form
    let mut coeffs = vec![BigRational::zero(); n];
    for k in (0..n).rev() {
        // coeffs <- coeffs * (z - nodes[k]) + dd[k]
        let mut next = vec![BigRational::zero(); n];
        for j in 0..n {
            if coeffs[j].is_zero() {
                continue;
            }
            if j + 1 < n {
                next[j + 1] += &coeffs[j];
            }
            next[j] -= &coeffs[j] * &nodes[k];
        }
        next[0] += &dd[k];
        coeffs = next;
    }
    coeffs
}

fn eval_dense(c: &[Vec<BigRational>], x: &BigRational, y: &BigRational) -> BigRational {
    // c[i][j] is the coefficient of x^i y^j
    let mut acc = BigRational::zero();
    for row in c.iter().rev() {
        let mut inner = BigRational::zero();
        for cj in row.iter().rev() {
            inner = inner * y + cj;
        }
        acc = acc * x + inner;
    }
    acc
}

fn to_primitive(c: &[Vec<BigRational>]) -> (BigRational, ExactPoly) {
    let nonzero: Vec<&BigRational> = c.iter().flatten().filter(|v| !v.is_zero()).collect();
    if nonzero.is_empty() {
        return (BigRational::zero(), ExactPoly::zero());
    }
    let den = nonzero.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let num = nonzero
        .iter()
        .fold(BigInt::zero(), |acc, v| acc.gcd(&(v.numer() * (&den / v.denom()))));
    let mut scale = BigRational::new(num, den);
    // leading term (highest total degree, then highest x power) positive
    let lead = c
        .iter()
        .enumerate()
        .flat_map(|(i, row)| row.iter().enumerate().map(move |(j, v)| (i + j, i, v)))
        .filter(|(_, _, v)| !v.is_zero())
        .max_by_key(|&(d, i, _)| (d, i))
        .map(|(_, _, v)| v.clone())
        .unwrap();
    if lead.is_negative() {
        scale = -scale;
    }
    let terms = c.iter().enumerate().flat_map(|(i, row)| {
        let scale = scale.clone();
        row.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(move |(j, v)| {
            ((v / &scale).to_integer(), vec![i as u32, j as u32])
        })
    });
    let poly = ExactPoly::from_terms(&["x", "y"], terms.collect::<Vec<_>>())
        .expect("exponent vectors have length 2");
    (scale, poly)
}

fn primitive_part(p: &ExactPoly) -> ExactPoly {
    let g = p.terms().fold(BigInt::zero(), |acc, (_, c)| acc.gcd(c));
    if g.is_zero() {
        return p.clone();
    }
    let lead_negative = p
        .terms()
        .max_by_key(|(m, _)| (m.iter().sum::<u32>(), (*m).clone()))
        .map(|(_, c)| c.is_negative())
        .unwrap_or(false);
    let g = if lead_negative { -g } else { g };
    let terms: Vec<_> = p.terms().map(|(m, c)| (c / &g, m.clone())).collect();
    let vars: Vec<&str> = p.vars().iter().map(String::as_str).collect();
    ExactPoly::from_terms(&vars, terms).expect("same variable list")
}

/// Looks for exponents a, b with primitive(C) = ±primitive((x²+y²)^a · E^b).
fn describe_cofactor(c: &ExactPoly, e_xy: &ExactPoly) -> Option<String> {
    let deg = c.total_degree();
    let circle = &(&ExactPoly::var("x") * &ExactPoly::var("x"))
        + &(&ExactPoly::var("y") * &ExactPoly::var("y"));
    let e_deg = e_xy.total_degree();
    for b in 0..=3u32 {
        if b * e_deg > deg || (deg - b * e_deg) % 2 != 0 {
            continue;
        }
        let a = (deg - b * e_deg) / 2;
        let candidate = primitive_part(&(&circle.pow(a) * &e_xy.pow(b)));
        if &candidate == c {
            let mut parts = Vec::new();
            if a > 0 {
                parts.push(if a == 1 { "(x^2 + y^2)".to_owned() } else { format!("(x^2 + y^2)^{a}") });
            }
            if b > 0 {
                parts.push(if b == 1 { "E(x^2, y^2)".to_owned() } else { format!("E(x^2, y^2)^{b}") });
            }
            if parts.is_empty() {
                parts.push("1".to_owned());
            }
            return Some(parts.join(" * "));
        }
    }
    None
}

/// Arithmetic modulo the Mersenne prime 2⁶¹ − 1, used to screen held-out
/// points before any exact expansion.
mod modp {
    use num_bigint::BigInt;
    use num_integer::Integer;
    use num_rational::BigRational;
    use num_traits::{ToPrimitive, Zero};

    pub const P: u64 = (1 << 61) - 1;

    pub fn mul(a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % P as u128) as u64
    }

    pub fn add(a: u64, b: u64) -> u64 {
        (a + b) % P
    }

    pub fn sub(a: u64, b: u64) -> u64 {
        (a + P - b) % P
    }

    pub fn pow(mut a: u64, mut e: u64) -> u64 {
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = mul(acc, a);
            }
            a = mul(a, a);
            e >>= 1;
        }
        acc
    }

    /// Inverse of a nonzero residue.
    pub fn inv(a: u64) -> Option<u64> {
        (a != 0).then(|| pow(a, P - 2))
    }

    fn int(n: &BigInt) -> u64 {
        n.mod_floor(&BigInt::from(P)).to_u64().expect("reduced below P")
    }

    /// Image of a rational, or `None` when P divides its denominator.
    pub fn reduce(q: &BigRational) -> Option<u64> {
        if q.is_zero() {
            return Some(0);
        }
        Some(mul(int(q.numer()), inv(int(q.denom()))?))
    }
}

/// The tensor interpolant of `values[i][j]` at `(xs[i], ys[j])`, in
/// barycentric form over 𝔽_P.
struct ModularTensor {
    xs: Vec<u64>,
    ys: Vec<u64>,
    wx: Vec<u64>,
    wy: Vec<u64>,
    values: Vec<Vec<u64>>,
}

fn barycentric_weights(nodes: &[u64]) -> Option<Vec<u64>> {
    (0..nodes.len())
        .map(|j| {
            let prod = nodes
                .iter()
                .enumerate()
                .filter(|&(k, _)| k != j)
                .fold(1, |acc, (_, &z)| modp::mul(acc, modp::sub(nodes[j], z)));
            modp::inv(prod)
        })
        .collect()
}

fn barycentric_eval(nodes: &[u64], weights: &[u64], f: &[u64], z: u64) -> u64 {
    if let Some(j) = nodes.iter().position(|&n| n == z) {
        return f[j];
    }
    let ell = nodes.iter().fold(1, |acc, &n| modp::mul(acc, modp::sub(z, n)));
    let sum = nodes.iter().zip(weights).zip(f).fold(0, |acc, ((&n, &w), &v)| {
        let d = modp::inv(modp::sub(z, n)).expect("z differs from every node");
        modp::add(acc, modp::mul(modp::mul(w, v), d))
    });
    modp::mul(ell, sum)
}

impl ModularTensor {
    /// `None` if some value is not P-integral or the nodes collide mod P.
    fn new(xs: &[BigRational], ys: &[BigRational], values: &[Vec<BigRational>]) -> Option<Self> {
        let red = |v: &[BigRational]| v.iter().map(modp::reduce).collect::<Option<Vec<u64>>>();
        let xs = red(xs)?;
        let ys = red(ys)?;
        let values = values.iter().map(|row| red(row)).collect::<Option<Vec<_>>>()?;
        Some(Self {
            wx: barycentric_weights(&xs)?,
            wy: barycentric_weights(&ys)?,
            xs,
            ys,
            values,
        })
    }

    fn eval(&self, x: u64, y: u64) -> u64 {
        let rows: Vec<u64> = self
            .values
            .iter()
            .map(|row| barycentric_eval(&self.ys, &self.wy, row, y))
            .collect();
        barycentric_eval(&self.xs, &self.wx, &rows, x)
    }
}

/// Monomial coefficients `c[i][j]` (of x^i y^j) of the tensor interpolant:
/// Newton interpolation in y along each row, then in x for each power of y.
fn tensor_coefficients(xs: &[BigRational], ys: &[BigRational], grid: &[Vec<BigRational>]) -> Vec<Vec<BigRational>> {
    let side_x = xs.len();
    let side_y = ys.len();
    let row_coeffs: Vec<Vec<BigRational>> = grid.par_iter().map(|row| interpolate(ys, row)).collect();
    let columns: Vec<Vec<BigRational>> = (0..side_y)
        .into_par_iter()
        .map(|j| {
            let values: Vec<BigRational> = row_coeffs.iter().map(|rc| rc[j].clone()).collect();
            interpolate(xs, &values)
        })
        .collect();
    (0..side_x)
        .map(|i| (0..side_y).map(|j| columns[j][i].clone()).collect())
        .collect()
}

/// Runs the certificate with E = [`arc_polynomial`].
pub fn verify_arc_identity(
    r: &BigRational,
    degree_bound: usize,
    sample_count: usize,
    seed: u64,
) -> Result<ResultantReport> {
    verify_identity_with(&arc_polynomial(), r, degree_bound, sample_count, seed)
}

/// Runs the certificate against an arbitrary candidate `arc` ∈ ℤ[u, v, r];
/// mutated candidates must fail.
pub fn verify_identity_with(
    arc: &ExactPoly,
    r: &BigRational,
    degree_bound: usize,
    sample_count: usize,
    seed: u64,
) -> Result<ResultantReport> {
    if r.is_zero() {
        return Err(Error::VanishingLeadingCoefficient(
            "r = 0: both leading coefficients -r^2 vanish",
        ));
    }
    if degree_bound == 0 {
        return Err(invalid("degree_bound", 0, "must be positive"));
    }
    let needed = min_sample_count(degree_bound);
    if sample_count < needed {
        return Err(invalid(
            "sample_count",
            sample_count,
            "must cover the (d+1)^2 fitting grid plus held-out points (see min_sample_count)",
        ));
    }

    // E(x², y²) at this r, over ℤ[x, y] up to the denominator of r
    let e_at = |x: &BigRational, y: &BigRational| -> Result<BigRational> {
        arc.eval(&[("u", x * x), ("v", y * y), ("r", r.clone())])
    };
    let res_at = |x: &BigRational, y: &BigRational| -> Result<BigRational> {
        sylvester_resultant_at(&ResultantPoint::new(r.clone(), x.clone(), y.clone()))
    };

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let side = degree_bound + 1;
    let ys = distinct_rationals(&mut rng, side);
    // x nodes are redrawn until E is nonzero along the whole grid row.
    let mut xs = Vec::with_capacity(side);
    let mut seen = BTreeSet::new();
    while xs.len() < side {
        let x = random_rational(&mut rng);
        if seen.contains(&x) {
            continue;
        }
        seen.insert(x.clone());
        let mut ok = true;
        for y in &ys {
            if e_at(&x, y)?.is_zero() {
                ok = false;
                break;
            }
        }
        if ok {
            xs.push(x);
        }
    }
    let held_out_count = sample_count - side * side;
    let held_out: Vec<(BigRational, BigRational)> = (0..held_out_count)
        .map(|_| (random_rational(&mut rng), random_rational(&mut rng)))
        .collect();

    // Quotient values on the grid; rows indexed by x.
    let grid: Vec<Vec<BigRational>> = xs
        .par_iter()
        .map(|x| {
            ys.iter()
                .map(|y| Ok(res_at(x, y)? / e_at(x, y)?))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;

    // Exact values at the held-out points; cheap (one 18×18 determinant).
    let held_out_values: Vec<(BigRational, BigRational)> = held_out
        .par_iter()
        .map(|(x, y)| Ok((res_at(x, y)?, e_at(x, y)?)))
        .collect::<Result<_>>()?;

    // Screen modulo P through the barycentric form of the interpolant. A
    // nonzero residue proves the rational residual nonzero; expanding C into
    // monomials is skipped then, since for a non-polynomial quotient its
    // coefficients grow without bound.
    let screen = ModularTensor::new(&xs, &ys, &grid).and_then(|tensor| {
        held_out
            .iter()
            .zip(&held_out_values)
            .map(|((x, y), (res, e))| {
                let c = tensor.eval(modp::reduce(x)?, modp::reduce(y)?);
                Some(modp::sub(modp::reduce(res)?, modp::mul(modp::reduce(e)?, c)))
            })
            .collect::<Option<Vec<u64>>>()
    });

    let (failure, cofactor, residuals, residual_modulus) = match screen {
        Some(residues) if residues.iter().any(|&v| v != 0) => {
            let nonzero = residues.iter().filter(|&&v| v != 0).count();
            let msg = format!("identity Res = E*C fails at {nonzero} of {held_out_count} held-out points");
            let dump = residues.iter().map(u64::to_string).collect();
            (Some(msg), None, dump, Some(modp::P.to_string()))
        }
        _ => {
            let cofactor = tensor_coefficients(&xs, &ys, &grid);
            let exact: Vec<BigRational> = held_out
                .par_iter()
                .zip(&held_out_values)
                .map(|((x, y), (res, e))| res - e * eval_dense(&cofactor, x, y))
                .collect();
            let nonzero = exact.iter().filter(|v| !v.is_zero()).count();
            let excess_degree = cofactor
                .iter()
                .enumerate()
                .flat_map(|(i, row)| row.iter().enumerate().map(move |(j, v)| (i + j, v)))
                .filter(|(d, v)| *d > degree_bound && !v.is_zero())
                .map(|(d, _)| d)
                .max();
            let failure = match (nonzero, excess_degree) {
                (0, None) => None,
                (0, Some(d)) => Some(format!("fitted cofactor has total degree {d} > bound {degree_bound}")),
                (n, _) => Some(format!("identity Res = E*C fails at {n} of {held_out_count} held-out points")),
            };
            let cofactor = failure.is_none().then_some(cofactor);
            (failure, cofactor, exact.iter().map(|v| v.to_string()).collect(), None)
        }
    };

    let summary = cofactor.map(|cofactor| {
        let (scale, primitive) = to_primitive(&cofactor);
        let e_xy = e_xy_at(arc, r);
        CofactorSummary {
            scale: scale.to_string(),
            total_degree: primitive.total_degree(),
            num_terms: primitive.num_terms(),
            structure: describe_cofactor(&primitive, &e_xy),
            primitive,
        }
    });

    Ok(ResultantReport {
        r: r.to_string(),
        seed,
        degree_bound,
        sample_count,
        fit_samples: side * side,
        held_out_samples: held_out_count,
        success: failure.is_none(),
        failure,
        cofactor: summary,
        held_out_residuals: residuals,
        residual_modulus,
    })
}

/// Primitive integer form of E(x², y², r) for a fixed rational r.
fn e_xy_at(arc: &ExactPoly, r: &BigRational) -> ExactPoly {
    // E is even in r (powers r⁰, r², r⁴, r⁶); scale by denom(r)^6 to stay integral.
    let x = ExactPoly::var("x");
    let y = ExactPoly::var("y");
    let sub = arc.substitute("u", &(&x * &x)).substitute("v", &(&y * &y));
    let den = r.denom().clone();
    let num = r.numer().clone();
    let rdeg = sub.degree_in("r");
    let mut out = ExactPoly::zero();
    for k in 0..=rdeg {
        let coeff = sub.coefficient_of("r", k);
        if coeff.is_zero() {
            continue;
        }
        let factor = num_traits::pow(num.clone(), k as usize)
            * num_traits::pow(den.clone(), (rdeg - k) as usize);
        out = &out + &(&coeff * &ExactPoly::constant(factor));
    }
    primitive_part(&out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn interpolation_recovers_cubic() {
        let nodes = [q(0, 1), q(1, 2), q(-3, 1), q(5, 7)];
        let f = |z: &BigRational| z * z * z - q(2, 1) * z + q(1, 3);
        let values: Vec<_> = nodes.iter().map(f).collect();
        let c = interpolate(&nodes, &values);
        assert_eq!(c, vec![q(1, 3), q(-2, 1), q(0, 1), q(1, 1)]);
    }

    #[test]
    fn tensor_forms_agree() {
        let xs = [q(0, 1), q(1, 2), q(-2, 3)];
        let ys = [q(1, 1), q(3, 1), q(-1, 5)];
        let f = |x: &BigRational, y: &BigRational| x * x * y - q(3, 1) * y * y + x;
        let grid: Vec<Vec<BigRational>> = xs.iter().map(|x| ys.iter().map(|y| f(x, y)).collect()).collect();
        let t = ModularTensor::new(&xs, &ys, &grid).unwrap();
        let c = tensor_coefficients(&xs, &ys, &grid);
        for (x, y) in [(q(7, 3), q(-5, 2)), (q(1, 2), q(4, 9))] {
            let red = |v: &BigRational| modp::reduce(v).unwrap();
            assert_eq!(t.eval(red(&x), red(&y)), red(&f(&x, &y)));
            assert_eq!(eval_dense(&c, &x, &y), f(&x, &y));
        }
    }

    #[test]
    fn modular_inverse() {
        assert_eq!(modp::mul(modp::inv(12345).unwrap(), 12345), 1);
        assert_eq!(modp::reduce(&q(-1, 2)).map(|v| modp::mul(v, 2)), Some(modp::P - 1));
    }

    #[test]
    fn sample_count_precondition() {
        assert_eq!(bivariate_dimension(28), 435);
        assert!(min_sample_count(28) as f64 >= 1.25 * 435.0);
        assert!(verify_arc_identity(&q(1, 2), 28, 500, 1).is_err());
        assert!(verify_arc_identity(&q(0, 1), 28, 2000, 1).is_err());
    }

    #[test]
    fn small_bound_fails_honestly() {
        // the cofactor has degree 16, so a bound of 10 cannot fit it
        let report = verify_arc_identity(&q(1, 2), 10, min_sample_count(10), 3).unwrap();
        assert!(!report.success);
        assert!(report.failure.is_some());
    }
}
