//! Sylvester resultants over ℚ, evaluated by fraction-free elimination.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::arc::tp_polynomials;
use crate::error::{invalid, Error, Result};

/// Determinant of a square integer matrix by Bareiss elimination with row
/// pivoting. Every intermediate division is exact.
pub fn bareiss_determinant(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = 1i8;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = num / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign < 0 {
        -det
    } else {
        det
    }
}

/// Sylvester matrix of `p` and `q`, coefficients given constant term first.
/// Rows hold the shifted coefficient vectors, highest power in column 0.
pub fn sylvester_matrix<T: Clone + Zero>(p: &[T], q: &[T]) -> Vec<Vec<T>> {
    let m = p.len() - 1;
    let n = q.len() - 1;
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for shift in 0..n {
        let mut row = vec![T::zero(); size];
        for (k, c) in p.iter().rev().enumerate() {
            row[shift + k] = c.clone();
        }
        rows.push(row);
    }
    for shift in 0..m {
        let mut row = vec![T::zero(); size];
        for (k, c) in q.iter().rev().enumerate() {
            row[shift + k] = c.clone();
        }
        rows.push(row);
    }
    rows
}

fn denominator_lcm(c: &[BigRational]) -> BigInt {
    c.iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

/// Resultant of two univariate polynomials over ℚ (constant term first).
///
/// Both leading coefficients must be nonzero; the Sylvester determinant of
/// the formal degrees is returned exactly.
pub fn resultant(p: &[BigRational], q: &[BigRational]) -> Result<BigRational> {
    if p.len() < 2 || q.len() < 2 {
        return Err(invalid("degree", 0, "both polynomials need degree >= 1"));
    }
    if p.last().unwrap().is_zero() || q.last().unwrap().is_zero() {
        return Err(Error::VanishingLeadingCoefficient(
            "resultant requires nonzero leading coefficients",
        ));
    }
    // Res(Lp·p, Lq·q) = Lp^deg(q) · Lq^deg(p) · Res(p, q)
    let lp = denominator_lcm(p);
    let lq = denominator_lcm(q);
    let to_int = |c: &[BigRational], l: &BigInt| -> Vec<BigInt> {
        c.iter()
            .map(|x| (x * BigRational::from_integer(l.clone())).to_integer())
            .collect()
    };
    let pi = to_int(p, &lp);
    let qi = to_int(q, &lq);
    let det = bareiss_determinant(sylvester_matrix(&pi, &qi));
    let scale = num_traits::pow(lp, q.len() - 1) * num_traits::pow(lq, p.len() - 1);
    Ok(BigRational::new(det, scale))
}

/// Rational evaluation point `(r, x, y)` for the envelope system.
#[derive(Debug, Clone, PartialEq)]
pub struct ResultantPoint {
    pub r: BigRational,
    pub x: BigRational,
    pub y: BigRational,
}

impl ResultantPoint {
    pub fn new(r: BigRational, x: BigRational, y: BigRational) -> Self {
        Self { r, x, y }
    }

    /// Exact rational image of a floating-point triple.
    pub fn from_f64(r: f64, x: f64, y: f64) -> Option<Self> {
        Some(Self {
            r: BigRational::from_float(r)?,
            x: BigRational::from_float(x)?,
            y: BigRational::from_float(y)?,
        })
    }

    fn assignment(&self) -> [(&'static str, BigRational); 3] {
        [
            ("r", self.r.clone()),
            ("x", self.x.clone()),
            ("y", self.y.clone()),
        ]
    }
}

/// Univariate coefficient lists (in t) of the envelope system at a point.
pub fn specialized_tp(point: &ResultantPoint) -> Result<(Vec<BigRational>, Vec<BigRational>)> {
    let (p, q) = tp_polynomials();
    let values = point.assignment();
    Ok((
        p.specialize_univariate("t", &values)?,
        q.specialize_univariate("t", &values)?,
    ))
}

/// Resultant in t of the envelope system at `(r, x, y)`: the 18×18 Sylvester
/// determinant of the degree-10 and degree-8 specialisations.
pub fn sylvester_resultant_at(point: &ResultantPoint) -> Result<BigRational> {
    if point.r.is_zero() {
        return Err(Error::VanishingLeadingCoefficient(
            "r = 0: both leading coefficients -r^2 vanish",
        ));
    }
    let (p, q) = specialized_tp(point)?;
    resultant(&p, &q)
}

/// Hadamard-type bound ‖p‖^deg(q) · ‖q‖^deg(p) on |Res(p, q)|, in floating
/// point; the scale for relative residual checks.
pub fn resultant_scale(p: &[BigRational], q: &[BigRational]) -> f64 {
    let norm = |c: &[BigRational]| {
        c.iter()
            .map(|x| x.to_f64().unwrap_or(f64::INFINITY).powi(2))
            .sum::<f64>()
            .sqrt()
    };
    norm(p).powi(q.len() as i32 - 1) * norm(q).powi(p.len() as i32 - 1)
}

/// `|Res| / scale` at a floating point; used to test proximity to the curve.
pub fn relative_resultant_at(r: f64, x: f64, y: f64) -> Result<f64> {
    let point = ResultantPoint::from_f64(r, x, y)
        .ok_or_else(|| invalid("point", format!("({r}, {x}, {y})"), "not finite"))?;
    let (p, q) = specialized_tp(&point)?;
    let res = resultant(&p, &q)?;
    Ok(res.abs().to_f64().unwrap_or(f64::INFINITY) / resultant_scale(&p, &q))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn int_matrix(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect()
    }

    #[test]
    fn bareiss_small_cases() {
        assert_eq!(bareiss_determinant(int_matrix(&[&[1, 2], &[3, 4]])), BigInt::from(-2));
        assert_eq!(
            bareiss_determinant(int_matrix(&[&[0, 1, 2], &[1, 0, 3], &[4, -3, 8]])),
            BigInt::from(-2)
        );
        assert_eq!(
            bareiss_determinant(int_matrix(&[&[1, 2], &[2, 4]])),
            BigInt::from(0)
        );
    }

    #[test]
    fn textbook_resultants() {
        // (t - 1), (t + 1)
        let r = resultant(&[q(-1, 1), q(1, 1)], &[q(1, 1), q(1, 1)]).unwrap();
        assert_eq!(r, q(2, 1));
        let c = q(7, 3);
        let lin = [-c.clone(), q(1, 1)];
        assert_eq!(resultant(&lin, &lin).unwrap(), q(0, 1));
        // Res(t^2 - 2, t - 1/2) = (1/2)^2 - 2
        let r = resultant(&[q(-2, 1), q(0, 1), q(1, 1)], &[q(-1, 2), q(1, 1)]).unwrap();
        assert_eq!(r, q(1, 4) - q(2, 1));
    }

    #[test]
    fn rejects_zero_radius() {
        let p = ResultantPoint::new(q(0, 1), q(1, 2), q(1, 3));
        assert!(matches!(
            sylvester_resultant_at(&p),
            Err(Error::VanishingLeadingCoefficient(_))
        ));
    }

    #[test]
    fn off_curve_point_is_nonzero() {
        let p = ResultantPoint::new(q(1, 2), q(1, 3), q(2, 7));
        assert!(!sylvester_resultant_at(&p).unwrap().is_zero());
    }
}
