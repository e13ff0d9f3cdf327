//! The two polynomial systems behind the boundary: the sextic boundary
//! curve E(u, v; r) with u = x², v = y², and the pair of polynomials in
//! t = tan(θ/2) whose common roots trace the upper envelope.
//!
//! E is written once, generically over [`ArcScalar`], and instantiated for
//! `f64` (closed-form evaluation), `BigRational` (exact evaluation) and
//! [`ExactPoly`] (symbolic term table).

use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;

use super::poly::ExactPoly;

/// Ring elements the boundary polynomial can be evaluated in.
pub trait ArcScalar:
    Clone + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self>
{
    fn int(n: i64) -> Self;
}

impl ArcScalar for f64 {
    fn int(n: i64) -> Self {
        n as f64
    }
}

impl ArcScalar for BigRational {
    fn int(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
}

impl ArcScalar for ExactPoly {
    fn int(n: i64) -> Self {
        ExactPoly::constant(n)
    }
}

fn sq<T: ArcScalar>(a: T) -> T {
    a.clone() * a
}

fn cube<T: ArcScalar>(a: T) -> T {
    a.clone() * a.clone() * a
}

/// Left-hand side of the boundary curve equation
///
/// ```text
/// 16 r⁶ (u+v)² − 8 r⁴ (u³ + (v−1)(4u² + 5uv − u + 2v²) − v)
///   + r² (((u−20)u − 8) v² + 2((u−15)u − 4)(u−1) v + ((u−10)u + 1)(u−1)²)
///   + (u−1)³ (u+v−1)
/// ```
pub fn arc_expression<T: ArcScalar>(u: T, v: T, r: T) -> T {
    let n = T::int;
    let r2 = sq(r.clone());
    let r4 = sq(r2.clone());
    let r6 = r4.clone() * r2.clone();
    let um1 = u.clone() - n(1);

    let first = n(16) * r6 * sq(u.clone() + v.clone());

    let quartic = cube(u.clone())
        + (v.clone() - n(1))
            * (n(4) * sq(u.clone()) + n(5) * u.clone() * v.clone() - u.clone()
                + n(2) * sq(v.clone()))
        - v.clone();
    let second = n(8) * r4 * quartic;

    let quadratic = ((u.clone() - n(20)) * u.clone() - n(8)) * sq(v.clone())
        + n(2) * ((u.clone() - n(15)) * u.clone() - n(4)) * um1.clone() * v.clone()
        + ((u.clone() - n(10)) * u.clone() + n(1)) * sq(um1.clone());
    let third = r2 * quadratic;

    let fourth = cube(um1) * (u + v - n(1));

    first - second + third + fourth
}

/// E ∈ ℤ[u, v, r].
pub fn arc_polynomial() -> ExactPoly {
    arc_expression(
        ExactPoly::var("u"),
        ExactPoly::var("v"),
        ExactPoly::var("r"),
    )
}

/// E(x², y², r) ∈ ℤ[x, y, r].
pub fn arc_polynomial_xy() -> ExactPoly {
    let x = ExactPoly::var("x");
    let y = ExactPoly::var("y");
    arc_polynomial()
        .substitute("u", &(&x * &x))
        .substitute("v", &(&y * &y))
}

/// The two polynomials in ℤ[t, r, x, y] obtained from the envelope system of
/// the upper boundary after the substitution t = tan(θ/2); of degree 10 and 8
/// in t.
pub fn tp_polynomials() -> (ExactPoly, ExactPoly) {
    let t = ExactPoly::var("t");
    let r = ExactPoly::var("r");
    let x = ExactPoly::var("x");
    let y = ExactPoly::var("y");
    let n = ExactPoly::constant;
    let tp = |k: u32| t.pow(k);
    let r2 = &r * &r;
    let x2 = &x * &x;
    let y2 = &y * &y;
    let xy = &x * &y;

    let inner = &(&r2 - &(&n(8) * &x2)) + &(&n(8) * &y2);
    let first = -(&r2 * &tp(10))
        - n(3) * &r2 * tp(8)
        - n(2) * tp(6) * inner.clone()
        + n(2) * tp(4) * inner
        + n(3) * &r2 * tp(2)
        + r2.clone()
        + n(8) * tp(7) * xy.clone()
        - n(48) * tp(5) * xy.clone()
        + n(8) * tp(3) * xy.clone();

    let shifted = &(&r2 - &x2) + &n(1);
    let second = -(&r2 * &tp(8))
        - n(4) * tp(6) * shifted.clone()
        - n(2) * tp(4) * (n(3) * r2.clone() + n(4) * x2.clone() - n(8) * y2 + n(4))
        - n(4) * tp(2) * shifted
        - r2
        - n(16) * tp(5) * xy.clone()
        + n(16) * tp(3) * xy;

    (first, second)
}
