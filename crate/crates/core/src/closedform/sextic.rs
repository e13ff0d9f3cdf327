//! Floating-point evaluation of the sextic boundary curve.

use std::sync::OnceLock;

use num_traits::ToPrimitive;

use crate::exactpoly::{arc_expression, arc_polynomial};

/// Left-hand side E(u, v; r) of the boundary-curve equation, with u = x² and
/// v = y². Shares its single transcription with
/// [`arc_polynomial`](crate::exactpoly::arc_polynomial).
pub fn sextic_eval(u: f64, v: f64, r: f64) -> f64 {
    arc_expression(u, v, r)
}

struct Term {
    coeff: f64,
    u: i32,
    v: i32,
    r: i32,
}

fn expanded_terms() -> &'static [Term] {
    static TERMS: OnceLock<Vec<Term>> = OnceLock::new();
    TERMS.get_or_init(|| {
        let e = arc_polynomial();
        let idx = |name: &str| e.vars().iter().position(|v| v == name).unwrap();
        let (iu, iv, ir) = (idx("u"), idx("v"), idx("r"));
        e.terms()
            .map(|(m, c)| Term {
                coeff: c.to_f64().unwrap(),
                u: m[iu] as i32,
                v: m[iv] as i32,
                r: m[ir] as i32,
            })
            .collect()
    })
}

/// Largest |monomial| of the expanded E at (u, v, r). Never below 1: E has
/// constant term 1.
pub fn sextic_scale(u: f64, v: f64, r: f64) -> f64 {
    expanded_terms()
        .iter()
        .map(|t| (t.coeff * u.powi(t.u) * v.powi(t.v) * r.powi(t.r)).abs())
        .fold(0.0, f64::max)
}

/// |E(x², y²; r)| relative to the largest monomial.
pub fn sextic_relative_residual(x: f64, y: f64, r: f64) -> f64 {
    let (u, v) = (x * x, y * y);
    sextic_eval(u, v, r).abs() / sextic_scale(u, v, r)
}
