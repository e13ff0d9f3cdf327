//! Sparse multivariate polynomials with arbitrary-precision integer
//! coefficients over a list of named variables.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exponent vector, one entry per variable in `ExactPoly::vars`.
pub type Monomial = Vec<u32>;

/// A polynomial in ℤ[vars].
///
/// Invariants: no stored coefficient is zero, and every exponent vector has
/// exactly `vars.len()` entries. Binary operations on polynomials over
/// different variable lists work on the union of the lists (left operand's
/// order first).
#[derive(Debug, Clone, Default)]
pub struct ExactPoly {
    vars: Vec<String>,
    terms: BTreeMap<Monomial, BigInt>,
}

impl ExactPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Vec::new(), c);
        }
        Self {
            vars: Vec::new(),
            terms,
        }
    }

    pub fn var(name: &str) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(vec![1], BigInt::one());
        Self {
            vars: vec![name.to_owned()],
            terms,
        }
    }

    /// Builds a polynomial from `(coefficient, exponents)` pairs; repeated
    /// monomials are summed and zero results dropped.
    pub fn from_terms<I, C>(vars: &[&str], terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (C, Monomial)>,
        C: Into<BigInt>,
    {
        let mut out = Self {
            vars: vars.iter().map(|v| (*v).to_owned()).collect(),
            terms: BTreeMap::new(),
        };
        for (c, m) in terms {
            if m.len() != vars.len() {
                return Err(crate::error::invalid(
                    "monomial",
                    format!("{m:?}"),
                    "exponent vector length differs from the variable list",
                ));
            }
            out.add_term(m, c.into());
        }
        Ok(out)
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// Re-expresses `self` over `vars`, which must contain every variable of
    /// `self`.
    fn embed(&self, vars: &[String]) -> Self {
        if vars == self.vars.as_slice() {
            return self.clone();
        }
        let map: Vec<usize> = self
            .vars
            .iter()
            .map(|v| vars.iter().position(|w| w == v).expect("embedding target misses a variable"))
            .collect();
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = vec![0; vars.len()];
                for (i, &k) in m.iter().enumerate() {
                    e[map[i]] = k;
                }
                (e, c.clone())
            })
            .collect();
        Self {
            vars: vars.to_vec(),
            terms,
        }
    }

    fn union_vars(&self, other: &Self) -> Vec<String> {
        let mut vars = self.vars.clone();
        for v in &other.vars {
            if !vars.contains(v) {
                vars.push(v.clone());
            }
        }
        vars
    }

    /// Coefficient of the monomial given as `(variable, exponent)` pairs;
    /// unlisted variables have exponent 0.
    pub fn coefficient(&self, monomial: &[(&str, u32)]) -> BigInt {
        let mut e = vec![0; self.vars.len()];
        for &(name, k) in monomial {
            match self.var_index(name) {
                Some(i) => e[i] = k,
                None if k == 0 => {}
                None => return BigInt::zero(),
            }
        }
        self.terms.get(&e).cloned().unwrap_or_default()
    }

    /// Coefficient of `var^power`, as a polynomial in the remaining variables.
    pub fn coefficient_of(&self, var: &str, power: u32) -> ExactPoly {
        let Some(i) = self.var_index(var) else {
            return if power == 0 { self.clone() } else { ExactPoly::zero() };
        };
        let vars: Vec<String> = self
            .vars
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, v)| v.clone())
            .collect();
        let mut out = ExactPoly {
            vars,
            terms: BTreeMap::new(),
        };
        for (m, c) in &self.terms {
            if m[i] == power {
                let mut e = m.clone();
                e.remove(i);
                out.add_term(e, c.clone());
            }
        }
        out
    }

    pub fn degree_in(&self, var: &str) -> u32 {
        match self.var_index(var) {
            Some(i) => self.terms.keys().map(|m| m[i]).max().unwrap_or(0),
            None => 0,
        }
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|m| m.iter().sum())
            .max()
            .unwrap_or(0)
    }

    pub fn pow(&self, k: u32) -> ExactPoly {
        let mut acc = ExactPoly::constant(1);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Replaces `var` by `value`.
    pub fn substitute(&self, var: &str, value: &ExactPoly) -> ExactPoly {
        let Some(i) = self.var_index(var) else {
            return self.clone();
        };
        let deg = self.degree_in(var);
        let mut powers = Vec::with_capacity(deg as usize + 1);
        powers.push(ExactPoly::constant(1));
        for k in 1..=deg as usize {
            powers.push(&powers[k - 1] * value);
        }
        let mut rest_vars = self.vars.clone();
        rest_vars.remove(i);
        let mut out = ExactPoly::zero();
        for k in 0..=deg {
            let mut coeff = ExactPoly {
                vars: rest_vars.clone(),
                terms: BTreeMap::new(),
            };
            for (m, c) in &self.terms {
                if m[i] == k {
                    let mut e = m.clone();
                    e.remove(i);
                    coeff.add_term(e, c.clone());
                }
            }
            if !coeff.is_zero() {
                out = &out + &(&coeff * &powers[k as usize]);
            }
        }
        out
    }

    fn lookup<'a, T>(&self, values: &'a [(&str, T)]) -> Result<Vec<&'a T>> {
        self.vars
            .iter()
            .map(|v| {
                values
                    .iter()
                    .find(|(name, _)| name == v)
                    .map(|(_, x)| x)
                    .ok_or_else(|| Error::MissingVariable(v.clone()))
            })
            .collect()
    }

    /// Exact evaluation at a rational point given as `(name, value)` pairs.
    pub fn eval(&self, values: &[(&str, BigRational)]) -> Result<BigRational> {
        let point = self.lookup(values)?;
        let mut cache: Vec<Vec<BigRational>> = point
            .iter()
            .map(|x| vec![BigRational::one(), (*x).clone()])
            .collect();
        let mut acc = BigRational::zero();
        for (m, c) in &self.terms {
            let mut term = BigRational::from_integer(c.clone());
            for (i, &k) in m.iter().enumerate() {
                let k = k as usize;
                while cache[i].len() <= k {
                    let next = cache[i].last().unwrap() * point[i];
                    cache[i].push(next);
                }
                if k > 0 {
                    term *= &cache[i][k];
                }
            }
            acc += term;
        }
        Ok(acc)
    }

    pub fn eval_f64(&self, values: &[(&str, f64)]) -> Result<f64> {
        let point = self.lookup(values)?;
        Ok(self
            .terms
            .iter()
            .map(|(m, c)| {
                let c = c.to_f64().unwrap_or(f64::NAN);
                m.iter()
                    .zip(&point)
                    .fold(c, |acc, (&k, &&x)| acc * x.powi(k as i32))
            })
            .sum())
    }

    /// Largest absolute monomial value at a floating point; the scale used
    /// for relative residuals.
    pub fn magnitude_f64(&self, values: &[(&str, f64)]) -> Result<f64> {
        let point = self.lookup(values)?;
        Ok(self
            .terms
            .iter()
            .map(|(m, c)| {
                let c = c.abs().to_f64().unwrap_or(f64::INFINITY);
                m.iter()
                    .zip(&point)
                    .fold(c, |acc, (&k, &&x)| acc * x.abs().powi(k as i32))
            })
            .fold(0.0, f64::max))
    }

    /// Coefficients (constant term first) of `self` viewed as a polynomial in
    /// `var`, after assigning rational values to every other variable.
    pub fn specialize_univariate(
        &self,
        var: &str,
        values: &[(&str, BigRational)],
    ) -> Result<Vec<BigRational>> {
        let deg = self.degree_in(var);
        (0..=deg)
            .map(|k| self.coefficient_of(var, k).eval(values))
            .collect()
    }

    /// Replaces one stored coefficient; used by mutation tests.
    pub fn with_coefficient(&self, monomial: &[(&str, u32)], value: impl Into<BigInt>) -> Result<Self> {
        let mut e = vec![0; self.vars.len()];
        for &(name, k) in monomial {
            let i = self
                .var_index(name)
                .ok_or_else(|| Error::MissingVariable(name.to_owned()))?;
            e[i] = k;
        }
        let mut out = self.clone();
        out.terms.remove(&e);
        out.add_term(e, value.into());
        Ok(out)
    }
}

impl PartialEq for ExactPoly {
    fn eq(&self, other: &Self) -> bool {
        let vars = self.union_vars(other);
        self.embed(&vars).terms == other.embed(&vars).terms
    }
}

impl Eq for ExactPoly {}

impl Add for &ExactPoly {
    type Output = ExactPoly;
    fn add(self, rhs: &ExactPoly) -> ExactPoly {
        let vars = self.union_vars(rhs);
        let mut out = self.embed(&vars);
        for (m, c) in rhs.embed(&vars).terms {
            out.add_term(m, c);
        }
        out
    }
}

impl Neg for &ExactPoly {
    type Output = ExactPoly;
    fn neg(self) -> ExactPoly {
        ExactPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Sub for &ExactPoly {
    type Output = ExactPoly;
    fn sub(self, rhs: &ExactPoly) -> ExactPoly {
        self + &(-rhs)
    }
}

impl Mul for &ExactPoly {
    type Output = ExactPoly;
    fn mul(self, rhs: &ExactPoly) -> ExactPoly {
        let vars = self.union_vars(rhs);
        let a = self.embed(&vars);
        let b = rhs.embed(&vars);
        let mut out = ExactPoly {
            vars,
            terms: BTreeMap::new(),
        };
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                let m = ma.iter().zip(mb).map(|(x, y)| x + y).collect();
                out.add_term(m, ca * cb);
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($($tr:ident $method:ident),*) => {$(
        impl $tr for ExactPoly {
            type Output = ExactPoly;
            fn $method(self, rhs: ExactPoly) -> ExactPoly {
                (&self).$method(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

macro_rules! forward_mixed {
    ($($tr:ident $method:ident),*) => {$(
        impl $tr<&ExactPoly> for ExactPoly {
            type Output = ExactPoly;
            fn $method(self, rhs: &ExactPoly) -> ExactPoly {
                (&self).$method(rhs)
            }
        }
        impl $tr<ExactPoly> for &ExactPoly {
            type Output = ExactPoly;
            fn $method(self, rhs: ExactPoly) -> ExactPoly {
                self.$method(&rhs)
            }
        }
    )*};
}
forward_mixed!(Add add, Sub sub, Mul mul);

impl Neg for ExactPoly {
    type Output = ExactPoly;
    fn neg(self) -> ExactPoly {
        -&self
    }
}

impl fmt::Display for ExactPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // highest total degree first
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|(a, _), (b, _)| {
            let da: u32 = a.iter().sum();
            let db: u32 = b.iter().sum();
            db.cmp(&da).then_with(|| b.cmp(a))
        });
        for (n, (m, c)) in terms.into_iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            match (n, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let factors: Vec<String> = m
                .iter()
                .zip(&self.vars)
                .filter(|(k, _)| **k > 0)
                .map(|(&k, v)| if k == 1 { v.clone() } else { format!("{v}^{k}") })
                .collect();
            if factors.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{mag}*{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}
