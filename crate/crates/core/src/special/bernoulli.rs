//! Bernoulli numbers and polynomials, multiple Bernoulli polynomials as exact
//! symbolic objects, and the zeta values used by the asymptotic formulas.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_complex::Complex64;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{QrhError, Result};
use crate::laurent::{rat_int, Rational};

/// `B_0, …, B_n` with the convention `B_1 = -1/2`, from the recursion
/// `Σ_{k<m+1} C(m+1,k) B_k = 0`.
pub fn bernoulli_numbers(n: usize) -> Vec<Rational> {
    let mut b: Vec<Rational> = vec![Rational::one()];
    for m in 1..=n {
        let mut acc = Rational::zero();
        let mut binom = Rational::one();
        for (k, bk) in b.iter().enumerate() {
            acc += &binom * bk;
            // C(m+1, k+1) from C(m+1, k)
            binom = binom * rat_int((m + 1 - k) as i64) / rat_int((k + 1) as i64);
        }
        b.push(-acc / rat_int((m + 1) as i64));
    }
    b
}

pub fn rat_to_f64(c: &Rational) -> f64 {
    c.numer().to_f64().unwrap_or(f64::NAN) / c.denom().to_f64().unwrap_or(f64::NAN)
}

fn binomial(n: usize, k: usize) -> Rational {
    (0..k).fold(Rational::one(), |acc, i| acc * rat_int((n - i) as i64) / rat_int((i + 1) as i64))
}

/// `B_n(z) = Σ_k C(n,k) B_k z^{n-k}`.
pub fn bernoulli_poly(n: usize, z: Complex64) -> Complex64 {
    let b = bernoulli_numbers(n);
    (0..=n)
        .map(|k| rat_to_f64(&(binomial(n, k) * &b[k])) * z.powu((n - k) as u32))
        .sum()
}

/// A Laurent monomial `z^j Π ω_i^{e_i}` with exact coefficient.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Exponents {
    pub z: u32,
    pub omega: Vec<i32>,
}

/// Polynomial in `z` and Laurent polynomial in the `ω_i`, exact rational
/// coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiPoly {
    pub r: usize,
    terms: BTreeMap<Exponents, Rational>,
}

impl MultiPoly {
    pub fn zero(r: usize) -> Self {
        Self {
            r,
            terms: BTreeMap::new(),
        }
    }

    pub fn add_term(&mut self, e: Exponents, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e.clone()).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn term(r: usize, c: Rational, z: u32, omega: &[i32]) -> Self {
        let mut p = Self::zero(r);
        p.add_term(Exponents { z, omega: omega.to_vec() }, c);
        p
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &Rational)> {
        self.terms.iter()
    }

    pub fn eval(&self, z: Complex64, omega: &[Complex64]) -> Complex64 {
        self.terms
            .iter()
            .map(|(e, c)| {
                let w: Complex64 = e.omega.iter().zip(omega).map(|(k, w)| w.powi(*k)).product();
                rat_to_f64(c) * z.powu(e.z) * w
            })
            .sum()
    }
}

/// Symbolic `B_{n,r}(z|ω_1,…,ω_r)`, the coefficient of `s^n/n!` in
/// `s^r e^{zs} / Π(e^{ω_i s} - 1)`.
pub fn multiple_bernoulli_symbolic(n: usize, r: usize) -> Result<MultiPoly> {
    if r == 0 {
        return Err(QrhError::InvalidArgument("r >= 1 required".into()));
    }
    let b = bernoulli_numbers(n);
    let fact = |m: usize| (1..=m).fold(Rational::one(), |a, i| a * rat_int(i as i64));
    let mut out = MultiPoly::zero(r);
    // distribute n among z and the r factors ω_i s / (e^{ω_i s} - 1)
    let mut ks = vec![0usize; r];
    loop {
        let used: usize = ks.iter().sum();
        if used <= n {
            let j = n - used;
            let mut c = fact(n) / fact(j);
            for k in &ks {
                c = c * &b[*k] / fact(*k);
            }
            let omega: Vec<i32> = ks.iter().map(|k| *k as i32 - 1).collect();
            out.add_term(Exponents { z: j as u32, omega }, c);
        }
        // odometer over ks ∈ [0, n]^r
        let mut i = 0;
        while i < r {
            ks[i] += 1;
            if ks[i] <= n {
                break;
            }
            ks[i] = 0;
            i += 1;
        }
        if i == r {
            break;
        }
    }
    Ok(out)
}

/// Numerical `B_{n,r}(z|ω)`.
pub fn multiple_bernoulli(n: usize, z: Complex64, omega: &[Complex64]) -> Result<Complex64> {
    if omega.iter().any(|w| w.norm() == 0.0) {
        return Err(QrhError::precondition("all ω_i != 0"));
    }
    Ok(multiple_bernoulli_symbolic(n, omega.len())?.eval(z, omega))
}

/// `ζ(n)` for integer `n >= 2`: direct sum to 64 terms plus an
/// Euler-Maclaurin tail.
pub fn zeta(n: u32) -> f64 {
    assert!(n >= 2, "zeta(n) needs n >= 2");
    let nn = 64.0f64;
    let s = n as f64;
    let head: f64 = (1..64).rev().map(|k| (k as f64).powf(-s)).sum();
    // Σ_{k>=N} k^{-s} = N^{1-s}/(s-1) + N^{-s}/2 + s N^{-s-1}/12
    //                  - s(s+1)(s+2) N^{-s-3}/720 + s(s+1)(s+2)(s+3)(s+4) N^{-s-5}/30240
    let tail = nn.powf(1.0 - s) / (s - 1.0) + nn.powf(-s) / 2.0 + s * nn.powf(-s - 1.0) / 12.0
        - s * (s + 1.0) * (s + 2.0) * nn.powf(-s - 3.0) / 720.0
        + s * (s + 1.0) * (s + 2.0) * (s + 3.0) * (s + 4.0) * nn.powf(-s - 5.0) / 30240.0;
    head + tail
}

/// `ζ(2) = π²/6`.
pub fn zeta2() -> f64 {
    PI * PI / 6.0
}

pub fn zeta3() -> f64 {
    zeta(3)
}
