//! Laurent polynomials in `q^{1/2}` with exact rational coefficients.
//!
//! Exponents are stored in units of `1/2`: the key `e` stands for
//! `(q^{1/2})^e`. A polynomial may carry a precision `p`, in which case only
//! the coefficients of exponents `< p` are known; everything from `p` upward
//! is an untracked tail. Exact polynomials have no precision bound.
//!
//! Precision propagates through arithmetic the usual way for truncated power
//! series: `O(q^{p_a/2}) * b` is `O(q^{(p_a + lo(b))/2})`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

/// Rational number type used for every exact coefficient in the crate.
pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, Rational>,
    prec: Option<i64>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(Rational::one(), 0)
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0)
    }

    /// `c * (q^{1/2})^half_exp`.
    pub fn monomial(c: Rational, half_exp: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(half_exp, c);
        }
        Self { terms, prec: None }
    }

    /// `(q^{1/2})^half_exp`.
    pub fn q_half_pow(half_exp: i64) -> Self {
        Self::monomial(Rational::one(), half_exp)
    }

    /// `L^{1/2} = -q^{1/2}`.
    pub fn l_half() -> Self {
        Self::monomial(-Rational::one(), 1)
    }

    /// `(L^{1/2})^k = (-q^{1/2})^k`.
    pub fn l_half_pow(k: i64) -> Self {
        let sign = if k.rem_euclid(2) == 0 { 1 } else { -1 };
        Self::monomial(rat_int(sign), k)
    }

    /// Zero modulo `(q^{1/2})^prec`.
    pub fn big_o(prec: i64) -> Self {
        Self {
            terms: BTreeMap::new(),
            prec: Some(prec),
        }
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, Rational)>>(iter: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in iter {
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, e: i64, c: Rational) {
        if let Some(p) = self.prec {
            if e >= p {
                return;
            }
        }
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn prec(&self) -> Option<i64> {
        self.prec
    }

    pub fn is_exact(&self) -> bool {
        self.prec.is_none()
    }

    /// True when every known coefficient vanishes (the tail may not).
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_exact_zero(&self) -> bool {
        self.terms.is_empty() && self.prec.is_none()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rational)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn coeff(&self, half_exp: i64) -> Rational {
        self.terms.get(&half_exp).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Lower bound on every exponent that could be nonzero, tail included.
    /// `None` means the polynomial is exactly zero.
    fn lo(&self) -> Option<i64> {
        match (self.min_exp(), self.prec) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (Some(a), None) => Some(a),
            (None, Some(b)) => Some(b),
            (None, None) => None,
        }
    }

    /// Drop every term with exponent `>= prec` and record the bound.
    pub fn truncate(&self, prec: i64) -> Self {
        let new_prec = match self.prec {
            Some(p) => p.min(prec),
            None => prec,
        };
        Self {
            terms: self
                .terms
                .range(..new_prec)
                .map(|(e, c)| (*e, c.clone()))
                .collect(),
            prec: Some(new_prec),
        }
    }

    /// Multiply by `(q^{1/2})^s`.
    pub fn shift(&self, s: i64) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (e + s, c.clone())).collect(),
            prec: self.prec.map(|p| p + s),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self {
                terms: BTreeMap::new(),
                prec: None,
            };
        }
        Self {
            terms: self.terms.iter().map(|(e, v)| (*e, v * c)).collect(),
            prec: self.prec,
        }
    }

    /// Substitute `q^{1/2} -> -q^{1/2}`.
    pub fn flip_sign_of_q_half(&self) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (*e, if e.rem_euclid(2) == 0 { c.clone() } else { -c }))
                .collect(),
            prec: self.prec,
        }
    }

    /// Equality on the window where both sides are known.
    pub fn agrees_with(&self, other: &Self) -> bool {
        let window = match (self.prec, other.prec) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        match window {
            None => self.terms == other.terms,
            Some(w) => {
                let a: Vec<_> = self.terms.range(..w).collect();
                let b: Vec<_> = other.terms.range(..w).collect();
                a == b
            }
        }
    }

    /// Whether every exponent of the exact polynomial `exact` lies inside the
    /// known window of `self`.
    pub fn window_covers(&self, exact: &Self) -> bool {
        match (self.prec, exact.max_exp()) {
            (None, _) | (_, None) => true,
            (Some(p), Some(m)) => m < p,
        }
    }

    /// Numerical value at a complex `q^{1/2}`, ignoring any tail.
    pub fn eval(&self, q_half: Complex64) -> Complex64 {
        self.terms
            .iter()
            .map(|(e, c)| {
                let cf = c.numer().to_f64().unwrap_or(f64::NAN)
                    / c.denom().to_f64().unwrap_or(f64::NAN);
                q_half.powi(*e as i32) * cf
            })
            .sum()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<_> = self
            .terms
            .iter()
            .map(|(e, c)| serde_json::json!([e, c.to_string()]))
            .collect();
        serde_json::json!({ "half_exp_coeffs": terms, "prec": self.prec })
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let prec = match (self.prec, rhs.prec) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        let mut out = LaurentPoly {
            terms: BTreeMap::new(),
            prec,
        };
        for (e, c) in self.terms.iter().chain(rhs.terms.iter()) {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
            prec: self.prec,
        }
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_exact_zero() || rhs.is_exact_zero() {
            return LaurentPoly::zero();
        }
        let cand = |p: Option<i64>, other: &LaurentPoly| match (p, other.lo()) {
            (Some(p), Some(lo)) => Some(p + lo),
            _ => None,
        };
        let prec = match (cand(self.prec, rhs), cand(rhs.prec, self)) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        let mut out = LaurentPoly {
            terms: BTreeMap::new(),
            prec,
        };
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                out.add_term(ea + eb, ca * cb);
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            write!(f, "0")?;
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let (sign, mag) = if c.is_negative() { ("-", -c) } else { ("+", c.clone()) };
            if i > 0 || sign == "-" {
                write!(f, " {sign} ")?;
            }
            match *e {
                0 => write!(f, "{mag}")?,
                _ if mag.is_one() => write!(f, "q^({e}/2)")?,
                _ => write!(f, "{mag}*q^({e}/2)")?,
            }
        }
        if let Some(p) = self.prec {
            write!(f, " + O(q^({p}/2))")?;
        }
        Ok(())
    }
}

/// Plain serializable snapshot, used for golden JSON files.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct LaurentPolyRecord {
    pub half_exp_coeffs: Vec<(i64, String)>,
    pub prec: Option<i64>,
}

impl From<&LaurentPoly> for LaurentPolyRecord {
    fn from(p: &LaurentPoly) -> Self {
        Self {
            half_exp_coeffs: p.terms.iter().map(|(e, c)| (*e, c.to_string())).collect(),
            prec: p.prec,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn l_half_is_minus_q_half() {
        let l = LaurentPoly::l_half();
        assert_eq!(l.coeff(1), rat_int(-1));
        assert_eq!(&l * &l, LaurentPoly::q_half_pow(2));
        assert_eq!(LaurentPoly::l_half_pow(3), &(&l * &l) * &l);
        assert_eq!(LaurentPoly::l_half_pow(-1).coeff(-1), rat_int(-1));
    }

    #[test]
    fn cancellation_removes_terms() {
        let a = LaurentPoly::from_terms([(1, rat(1, 2)), (3, rat_int(2))]);
        let d = &a - &a;
        assert!(d.is_exact_zero());
    }

    #[test]
    fn precision_propagates_through_products() {
        // (1 + q^{1/2} + O(q^{3/2})) * (q^{-1} + 1) is known below q^{1/2}
        let a = LaurentPoly::from_terms([(0, rat_int(1)), (1, rat_int(1))]).truncate(3);
        let b = LaurentPoly::from_terms([(-2, rat_int(1)), (0, rat_int(1))]);
        let p = &a * &b;
        assert_eq!(p.prec(), Some(1));
        assert_eq!(p.coeff(-2), rat_int(1));
        assert_eq!(p.coeff(-1), rat_int(1));
        assert_eq!(p.coeff(0), rat_int(1));
    }

    #[test]
    fn agreement_is_checked_on_the_common_window() {
        let exact = LaurentPoly::from_terms([(0, rat_int(1)), (4, rat_int(7))]);
        let trunc = LaurentPoly::from_terms([(0, rat_int(1))]).truncate(4);
        assert!(trunc.agrees_with(&exact));
        assert!(!trunc.window_covers(&exact));
        let wrong = LaurentPoly::from_terms([(0, rat_int(2))]).truncate(4);
        assert!(!wrong.agrees_with(&exact));
    }
}
