//! Truncated power series in a single generator `y_{γ0}`, the quantum
//! dilogarithm, DT products attached to rays, and conjugation.

use num_traits::{One, ToPrimitive};

use crate::error::{QrhError, Result};
use crate::lattice::{skew_pair, ChargeVector, RefinedBpsStructure, RefinedInvariant};
use crate::laurent::{LaurentPoly, LaurentPolyRecord, Rational};
use crate::qtorus::algebra::QTorusElement;

/// Truncation orders: `n` bounds the degree in the ray generator, `k` is the
/// cutoff in integer powers of `q` inside dilogarithm coefficients.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Truncation {
    pub n: usize,
    pub k: i64,
}

impl Truncation {
    pub fn new(n: usize, k: i64) -> Self {
        Self { n, k }
    }

    /// Default `K = 4N`.
    pub fn with_default_k(n: usize) -> Self {
        Self { n, k: 4 * n as i64 }
    }

    /// Precision in half-units: exponents `<= 2K` are kept.
    pub fn q_prec(&self) -> i64 {
        2 * self.k + 1
    }
}

/// `Σ_{j<=N} c_j y_{jγ0}`.
#[derive(Clone, Debug, PartialEq)]
pub struct RaySeries {
    pub dir: ChargeVector,
    coeffs: Vec<LaurentPoly>,
}

impl RaySeries {
    pub fn one(dir: ChargeVector, order: usize) -> Self {
        let mut coeffs = vec![LaurentPoly::zero(); order + 1];
        coeffs[0] = LaurentPoly::one();
        Self { dir, coeffs }
    }

    /// Series with the given leading coefficients, zero-padded to `order`.
    pub fn from_coeffs(dir: ChargeVector, order: usize, cs: Vec<LaurentPoly>) -> Self {
        let mut coeffs: Vec<_> = cs.into_iter().take(order + 1).collect();
        coeffs.resize(order + 1, LaurentPoly::zero());
        Self { dir, coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, j: usize) -> &LaurentPoly {
        &self.coeffs[j]
    }

    pub fn coeffs(&self) -> &[LaurentPoly] {
        &self.coeffs
    }

    fn check_dir(&self, other: &Self) -> Result<()> {
        if self.dir != other.dir {
            return Err(QrhError::NotCollinear(format!(
                "series directions {} and {} differ",
                self.dir, other.dir
            )));
        }
        Ok(())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_dir(other)?;
        let order = self.order().min(other.order());
        let mut out = vec![LaurentPoly::zero(); order + 1];
        for i in 0..=order {
            if self.coeffs[i].is_exact_zero() {
                continue;
            }
            for j in 0..=order - i {
                out[i + j] = &out[i + j] + &(&self.coeffs[i] * &other.coeffs[j]);
            }
        }
        Ok(Self { dir: self.dir, coeffs: out })
    }

    /// Multiplicative inverse by the unit-constant-term recursion.
    pub fn inverse(&self) -> Result<Self> {
        let c0 = &self.coeffs[0];
        let mut it = c0.terms();
        let (e, c) = match (it.next(), it.next(), c0.is_exact()) {
            (Some((e, c)), None, true) => (e, c.clone()),
            _ => return Err(QrhError::NonUnitInverse),
        };
        let inv0 = LaurentPoly::monomial(Rational::one() / c, -e);
        let mut out = vec![inv0.clone()];
        for j in 1..=self.order() {
            let mut acc = LaurentPoly::zero();
            for i in 1..=j {
                acc = &acc + &(&self.coeffs[i] * &out[j - i]);
            }
            out.push(-&(&inv0 * &acc));
        }
        Ok(Self { dir: self.dir, coeffs: out })
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut out = Self::one(self.dir, self.order());
        for _ in 0..e.unsigned_abs() {
            out = out.mul(&base)?;
        }
        Ok(out)
    }

    /// `f(u) -> f(u^k)` re-expressed in `y_{γ0}` where the original variable
    /// stood for `y_{kγ0}`.
    pub fn substitute_power(&self, k: usize, dir: ChargeVector, order: usize) -> Self {
        let mut coeffs = vec![LaurentPoly::zero(); order + 1];
        for (j, c) in self.coeffs.iter().enumerate() {
            if j * k <= order {
                coeffs[j * k] = c.clone();
            }
        }
        Self { dir, coeffs }
    }

    /// `f(u) -> f(q^{s/2} u)`.
    pub fn rescale(&self, s: i64) -> Self {
        Self {
            dir: self.dir,
            coeffs: self.coeffs.iter().enumerate().map(|(j, c)| c.shift(j as i64 * s)).collect(),
        }
    }

    /// `Σ c_j y_{jγ0}` as an element of the quantum torus.
    pub fn to_element(&self) -> QTorusElement {
        self.juxtapose(ChargeVector::ZERO)
    }

    /// `Σ c_j y_{jγ0 + g}`: the series written in front of `y_g` in normal form.
    pub fn juxtapose(&self, g: ChargeVector) -> QTorusElement {
        QTorusElement::from_terms(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(j, c)| ((j as i64) * self.dir + g, c.clone())),
        )
    }

    pub fn agrees_with(&self, other: &Self) -> bool {
        self.dir == other.dir
            && self.coeffs.iter().zip(&other.coeffs).all(|(a, b)| a.agrees_with(b))
    }

    pub fn window_covers(&self, exact: &Self) -> bool {
        self.coeffs.iter().zip(&exact.coeffs).all(|(a, b)| a.window_covers(b))
    }

    pub fn to_record(&self) -> (ChargeVector, Vec<LaurentPolyRecord>) {
        (self.dir, self.coeffs.iter().map(Into::into).collect())
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "direction": self.dir.coords(),
            "order": self.order(),
            "coeffs": self.coeffs.iter().map(LaurentPoly::to_json).collect::<Vec<_>>(),
        })
    }
}

/// `1/(q;q)_j` as a power series in `q`, known below `q^{prec/2}`.
fn inv_q_pochhammer(j: usize, prec: i64) -> LaurentPoly {
    let mut acc = LaurentPoly::one().truncate(prec);
    for i in 1..=j as i64 {
        let geo = LaurentPoly::from_terms(
            (0..)
                .map(|m| 2 * i * m)
                .take_while(|e| *e < prec)
                .map(|e| (e, Rational::one())),
        )
        .truncate(prec);
        acc = &acc * &geo;
    }
    acc
}

/// `E_q(u·y_{γ0}) = Π_{k>=0}(1 - u q^k y_{γ0})` through order `N`:
/// the `j`-th coefficient is `(-u)^j q^{j(j-1)/2} / (q;q)_j`.
pub fn qdilog_series(u: &LaurentPoly, dir: ChargeVector, tr: Truncation) -> RaySeries {
    let mut coeffs = Vec::with_capacity(tr.n + 1);
    let mut upow = LaurentPoly::one();
    let minus_u = -u;
    for j in 0..=tr.n {
        let jj = j as i64;
        let c = if j == 0 {
            LaurentPoly::one()
        } else if u.is_exact_zero() {
            LaurentPoly::zero()
        } else {
            (&upow * &inv_q_pochhammer(j, tr.q_prec())).shift(jj * (jj - 1))
        };
        coeffs.push(c);
        upow = &upow * &minus_u;
    }
    RaySeries { dir, coeffs }
}

fn integer_exponent(c: &Rational) -> Result<i64> {
    if !c.is_integer() {
        return Err(QrhError::InvalidArgument(format!(
            "non-integral refined invariant coefficient {c}"
        )));
    }
    c.to_integer()
        .to_i64()
        .ok_or_else(|| QrhError::InvalidArgument("refined invariant coefficient too large".into()))
}

/// Positive multiple `k` with `g = k·dir`.
pub fn multiple_of(g: ChargeVector, dir: ChargeVector) -> Result<usize> {
    let not = || QrhError::NotCollinear(format!("{g} is not a positive multiple of {dir}"));
    let (prim, k) = g.primitive().ok_or_else(not)?;
    if prim != dir {
        return Err(not());
    }
    usize::try_from(k).map_err(|_| not())
}

/// `DT_q(ℓ) = Π_γ Π_n E_q((-q^{1/2})^{n+1} y_γ)^{-(-1)^n Ω_n(γ)}` as a
/// series in the primitive generator `dir` of the ray.
pub fn dt_ray(
    dir: ChargeVector,
    ray_charges: &[(ChargeVector, RefinedInvariant)],
    tr: Truncation,
) -> Result<RaySeries> {
    let mut out = RaySeries::one(dir, tr.n);
    for (g, om) in ray_charges {
        let k = multiple_of(*g, dir)?;
        if k > tr.n {
            continue;
        }
        let inner = Truncation::new(tr.n / k, tr.k);
        for (n, c) in om.coeffs() {
            let e = -sign_pow(n) * integer_exponent(c)?;
            let u = LaurentPoly::monomial(Rational::from_integer(sign_pow(n + 1).into()), n + 1);
            let f = qdilog_series(&u, *g, inner).pow(e)?;
            out = out.mul(&f.substitute_power(k, dir, tr.n))?;
        }
    }
    Ok(out)
}

/// `dt_ray` for the charges of `structure` on the ray spanned by `dir`.
pub fn dt_ray_for(structure: &RefinedBpsStructure, dir: ChargeVector, tr: Truncation) -> Result<RaySeries> {
    dt_ray(dir, &structure.charges_on_ray(dir, tr.n as i64), tr)
}

fn sign_pow(n: i64) -> i64 {
    if n.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// `g` with `f * y_{γm} * f^{-1} = Σ_j g_j y_{jγ0+γm}`, computed by
/// multiplying out in the quantum torus.
pub fn series_conjugate(f: &RaySeries, gm: ChargeVector) -> Result<RaySeries> {
    let finv = f.inverse()?;
    let n = f.order() as i64;
    let dir = f.dir;
    let keep = |g: ChargeVector| (0..=n).any(|j| j * dir + gm == g);
    let lhs = f.to_element().mul_filtered(&QTorusElement::y(gm), keep);
    let conj = lhs.mul_filtered(&finv.to_element(), keep);
    let coeffs = (0..=n).map(|j| conj.coeff(j * dir + gm)).collect();
    Ok(RaySeries::from_coeffs(dir, f.order(), coeffs))
}

/// Closed form of the conjugation: `f(q^{c/2}u) · f(q^{-c/2}u)^{-1}` with
/// `c = <γ0, γm>`.
pub fn conjugation_formula(f: &RaySeries, gm: ChargeVector) -> Result<RaySeries> {
    let c = skew_pair(f.dir, gm);
    f.rescale(c).mul(&f.rescale(-c).inverse()?)
}

/// `(1 + a u)^e` through order `N` in `u = y_{kγ0}`.
pub(crate) fn binomial_factor(a: &LaurentPoly, k: usize, e: i64, dir: ChargeVector, order: usize) -> Result<RaySeries> {
    let base = RaySeries::from_coeffs(dir, order / k, vec![LaurentPoly::one(), a.clone()]);
    Ok(base.pow(e)?.substitute_power(k, dir, order))
}
