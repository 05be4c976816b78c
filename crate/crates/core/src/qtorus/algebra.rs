//! The quantum torus algebra in the `y`-basis, quadratic refinements, and
//! the extended algebra used to evaluate monomials as functions of `(τ, θ)`.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_complex::Complex64;
use num_traits::One;

use crate::error::{QrhError, Result};
use crate::lattice::{skew_pair, ChargeVector};
use crate::laurent::{LaurentPoly, LaurentPolyRecord, Rational};

/// Finite sum `Σ c_γ y_γ` with `y_a * y_b = q^{<a,b>/2} y_{a+b}`.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct QTorusElement {
    terms: BTreeMap<ChargeVector, LaurentPoly>,
}

impl QTorusElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::y(ChargeVector::ZERO)
    }

    /// The generator `y_γ`.
    pub fn y(g: ChargeVector) -> Self {
        Self::monomial(g, LaurentPoly::one())
    }

    /// The twisted generator `x_γ = σ(γ) y_γ`.
    pub fn x(g: ChargeVector, sigma: &QuadraticRefinement) -> Self {
        Self::monomial(g, LaurentPoly::constant(Rational::from_integer(sigma.sign(g).into())))
    }

    pub fn monomial(g: ChargeVector, c: LaurentPoly) -> Self {
        let mut e = Self::zero();
        e.add_term(g, c);
        e
    }

    pub fn from_terms<I: IntoIterator<Item = (ChargeVector, LaurentPoly)>>(it: I) -> Self {
        let mut e = Self::zero();
        for (g, c) in it {
            e.add_term(g, c);
        }
        e
    }

    fn add_term(&mut self, g: ChargeVector, c: LaurentPoly) {
        if c.is_exact_zero() {
            return;
        }
        let merged = match self.terms.remove(&g) {
            Some(old) => &old + &c,
            None => c,
        };
        if !merged.is_exact_zero() {
            self.terms.insert(g, merged);
        }
    }

    pub fn coeff(&self, g: ChargeVector) -> LaurentPoly {
        self.terms.get(&g).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ChargeVector, &LaurentPoly)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Keep only the charges accepted by `keep`.
    pub fn filter(&self, keep: impl Fn(ChargeVector) -> bool) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .filter(|(g, _)| keep(**g))
                .map(|(g, c)| (*g, c.clone()))
                .collect(),
        }
    }

    /// Apply `f` to every coefficient.
    pub fn map_coeffs(&self, f: impl Fn(&LaurentPoly) -> LaurentPoly) -> Self {
        Self::from_terms(self.terms.iter().map(|(g, c)| (*g, f(c))))
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (g, c) in &other.terms {
            out.add_term(*g, c.clone());
        }
        out
    }

    pub fn scale(&self, c: &LaurentPoly) -> Self {
        self.map_coeffs(|x| x * c)
    }

    /// Noncommutative product, dropping charges rejected by `keep`.
    pub fn mul_filtered(&self, other: &Self, keep: impl Fn(ChargeVector) -> bool) -> Self {
        let mut out = Self::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let g = *a + *b;
                if keep(g) {
                    out.add_term(g, (ca * cb).shift(skew_pair(*a, *b)));
                }
            }
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.mul_filtered(other, |_| true)
    }

    /// Whether the two elements agree on every coefficient window.
    pub fn agrees_with(&self, other: &Self) -> bool {
        let keys: std::collections::BTreeSet<_> = self.terms.keys().chain(other.terms.keys()).collect();
        keys.into_iter()
            .all(|g| self.coeff(*g).agrees_with(&other.coeff(*g)))
    }

    /// Whether every exact coefficient of `exact` lies inside the known
    /// window of the corresponding coefficient here.
    pub fn window_covers(&self, exact: &Self) -> bool {
        exact.terms.iter().all(|(g, c)| self.coeff(*g).window_covers(c))
    }

    /// Coefficients with respect to the twisted basis `x_γ`.
    pub fn x_coeffs(&self, sigma: &QuadraticRefinement) -> BTreeMap<ChargeVector, LaurentPoly> {
        self.terms
            .iter()
            .map(|(g, c)| (*g, c.scale(&Rational::from_integer(sigma.sign(*g).into()))))
            .collect()
    }

    pub fn to_record(&self) -> Vec<(ChargeVector, LaurentPolyRecord)> {
        self.terms.iter().map(|(g, c)| (*g, c.into())).collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<_> = self
            .terms
            .iter()
            .map(|(g, c)| serde_json::json!({ "charge": g.coords(), "coeff": c.to_json() }))
            .collect();
        serde_json::json!({ "basis": "y", "terms": terms })
    }
}

/// `σ(γ) = Π s_i^{c_i} · (-1)^{Σ_{i<j} c_i c_j <e_i,e_j>}` from signs on
/// the basis `(β, δ, β∨, δ∨)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QuadraticRefinement {
    pub signs: [i8; 4],
}

impl QuadraticRefinement {
    pub fn new(signs: [i8; 4]) -> Result<Self> {
        if signs.iter().any(|s| *s != 1 && *s != -1) {
            return Err(QrhError::InvalidArgument("refinement signs must be ±1".into()));
        }
        Ok(Self { signs })
    }

    /// `σ(β) = -1`, `σ(δ) = σ(β∨) = σ(δ∨) = 1`.
    pub fn conifold() -> Self {
        Self { signs: [-1, 1, 1, 1] }
    }

    pub fn sign(&self, g: ChargeVector) -> i8 {
        let c = g.coords();
        let basis = [
            ChargeVector::BETA,
            ChargeVector::DELTA,
            ChargeVector::BETA_DUAL,
            ChargeVector::DELTA_DUAL,
        ];
        let mut parity = 0i64;
        for i in 0..4 {
            if self.signs[i] == -1 {
                parity += c[i];
            }
            for j in i + 1..4 {
                parity += c[i] * c[j] * skew_pair(basis[i], basis[j]);
            }
        }
        if parity.rem_euclid(2) == 0 {
            1
        } else {
            -1
        }
    }
}

/// `q^{k/2} y_{γe+γm}` viewed in the extended algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExtendedMonomial {
    pub k: i64,
    pub ge: ChargeVector,
    pub gm: ChargeVector,
}

impl ExtendedMonomial {
    pub fn new(k: i64, g: ChargeVector) -> Self {
        Self {
            k,
            ge: g.electric_part(),
            gm: g.magnetic_part(),
        }
    }

    pub fn charge(&self) -> ChargeVector {
        self.ge + self.gm
    }
}

/// `θ(γe)` for `θ` given by its values on `β` and `δ`.
fn theta_at(theta: [Complex64; 2], ge: ChargeVector) -> Complex64 {
    theta[0] * ge.a as f64 + theta[1] * ge.b as f64
}

fn check_tau(tau: Complex64) -> Result<()> {
    if tau.im > 0.0 {
        Ok(())
    } else {
        Err(QrhError::precondition("Im(tau) > 0"))
    }
}

/// `I(q^{k/2} y_{γe+γm}) = exp(πiτk + 2πiθ(γe)) · y_{γm}`.
pub fn i_map_eval(m: &ExtendedMonomial, tau: Complex64, theta: [Complex64; 2]) -> Result<(Complex64, ChargeVector)> {
    check_tau(tau)?;
    let i = Complex64::i();
    let val = (i * PI * tau * m.k as f64 + 2.0 * PI * i * theta_at(theta, m.ge)).exp();
    Ok((val, m.gm))
}

/// `(f1·y_{m1}) ⋆̂ (f2·y_{m2})` evaluated at `(τ, θ)`, with `f_i` the images
/// of the two monomials under `I`.
pub fn hat_product(
    m1: &ExtendedMonomial,
    m2: &ExtendedMonomial,
    tau: Complex64,
    theta: [Complex64; 2],
) -> Result<(Complex64, ChargeVector)> {
    check_tau(tau)?;
    // θ - <γ_{2m}, ->τ/2 and θ + <γ_{1m}, ->τ/2 on the basis (β, δ)
    let shifted = |gm: ChargeVector, sign: f64| -> [Complex64; 2] {
        [
            theta[0] + sign * skew_pair(gm, ChargeVector::BETA) as f64 * tau / 2.0,
            theta[1] + sign * skew_pair(gm, ChargeVector::DELTA) as f64 * tau / 2.0,
        ]
    };
    let (f1, _) = i_map_eval(m1, tau, shifted(m2.gm, -1.0))?;
    let (f2, _) = i_map_eval(m2, tau, shifted(m1.gm, 1.0))?;
    Ok((f1 * f2, m1.gm + m2.gm))
}

/// Product of two monomials inside the quantum torus.
pub fn monomial_product(m1: &ExtendedMonomial, m2: &ExtendedMonomial) -> ExtendedMonomial {
    ExtendedMonomial::new(m1.k + m2.k + skew_pair(m1.charge(), m2.charge()), m1.charge() + m2.charge())
}

impl From<&ExtendedMonomial> for QTorusElement {
    fn from(m: &ExtendedMonomial) -> Self {
        QTorusElement::monomial(m.charge(), LaurentPoly::monomial(Rational::one(), m.k))
    }
}
