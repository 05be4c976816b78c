//! Charge lattice, skew form, central charge and refined BPS invariants of the
//! resolved conifold, together with the ray/sector geometry of the t-plane.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{QrhError, Result};
use crate::laurent::{LaurentPoly, Rational};

/// Angular tolerance for active-ray membership, in radians.
pub const RAY_ANGLE_TOL: f64 = 1e-12;
/// Directions closer than this to an active ray, but not within
/// [`RAY_ANGLE_TOL`], are reported as ambiguous.
pub const RAY_AMBIGUITY_BAND: f64 = 1e-8;
/// Default scan range `|n| <= 64` for `v + n w != 0`.
pub const DEFAULT_NMAX: i64 = 64;

/// Integer coordinates in the basis `(β, δ, β∨, δ∨)` of the doubled lattice.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize, Default)]
pub struct ChargeVector {
    pub a: i64,
    pub b: i64,
    pub ma: i64,
    pub mb: i64,
}

impl ChargeVector {
    pub const ZERO: Self = Self::new(0, 0, 0, 0);
    pub const BETA: Self = Self::new(1, 0, 0, 0);
    pub const DELTA: Self = Self::new(0, 1, 0, 0);
    pub const BETA_DUAL: Self = Self::new(0, 0, 1, 0);
    pub const DELTA_DUAL: Self = Self::new(0, 0, 0, 1);

    pub const fn new(a: i64, b: i64, ma: i64, mb: i64) -> Self {
        Self { a, b, ma, mb }
    }

    pub const fn electric(a: i64, b: i64) -> Self {
        Self::new(a, b, 0, 0)
    }

    pub const fn magnetic(ma: i64, mb: i64) -> Self {
        Self::new(0, 0, ma, mb)
    }

    pub fn coords(&self) -> [i64; 4] {
        [self.a, self.b, self.ma, self.mb]
    }

    pub fn from_coords(c: [i64; 4]) -> Self {
        Self::new(c[0], c[1], c[2], c[3])
    }

    pub fn is_zero(&self) -> bool {
        *self == Self::ZERO
    }

    pub fn electric_part(&self) -> Self {
        Self::electric(self.a, self.b)
    }

    pub fn magnetic_part(&self) -> Self {
        Self::magnetic(self.ma, self.mb)
    }

    pub fn is_electric(&self) -> bool {
        self.ma == 0 && self.mb == 0
    }

    pub fn is_magnetic(&self) -> bool {
        self.a == 0 && self.b == 0
    }

    pub fn max_norm(&self) -> i64 {
        self.coords().iter().map(|c| c.abs()).max().unwrap_or(0)
    }

    /// Greatest common divisor of the coordinates.
    pub fn content(&self) -> i64 {
        self.coords().iter().fold(0i64, |g, &c| gcd(g, c.abs()))
    }

    /// `(primitive, multiplicity)` with `self = multiplicity * primitive`.
    pub fn primitive(&self) -> Option<(Self, i64)> {
        let g = self.content();
        if g == 0 {
            return None;
        }
        let c = self.coords().map(|x| x / g);
        Some((Self::from_coords(c), g))
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl Add for ChargeVector {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.a + o.a, self.b + o.b, self.ma + o.ma, self.mb + o.mb)
    }
}

impl Sub for ChargeVector {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}

impl Neg for ChargeVector {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.a, -self.b, -self.ma, -self.mb)
    }
}

impl Mul<ChargeVector> for i64 {
    type Output = ChargeVector;
    fn mul(self, g: ChargeVector) -> ChargeVector {
        ChargeVector::new(self * g.a, self * g.b, self * g.ma, self * g.mb)
    }
}

impl fmt::Display for ChargeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{},{})", self.a, self.b, self.ma, self.mb)
    }
}

/// Gram matrix of the canonical form on `(β, δ, β∨, δ∨)`:
/// `<β∨,β> = <δ∨,δ> = 1`, zero on `Γe×Γe` and `Γm×Γm`.
pub const CONIFOLD_SKEW: [[i64; 4]; 4] = [
    [0, 0, -1, 0],
    [0, 0, 0, -1],
    [1, 0, 0, 0],
    [0, 1, 0, 0],
];

/// `<γ1, γ2>` for the doubled conifold lattice.
pub fn skew_pair(g1: ChargeVector, g2: ChargeVector) -> i64 {
    skew_with(&CONIFOLD_SKEW, g1, g2)
}

pub fn skew_with(m: &[[i64; 4]; 4], g1: ChargeVector, g2: ChargeVector) -> i64 {
    let (x, y) = (g1.coords(), g2.coords());
    let mut s = 0;
    for i in 0..4 {
        for j in 0..4 {
            s += x[i] * m[i][j] * y[j];
        }
    }
    s
}

/// A refined BPS invariant `Ω = Σ Ω_n L^{n/2}`, stored by the integer `n`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct RefinedInvariant {
    coeffs: BTreeMap<i64, Rational>,
}

impl RefinedInvariant {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_coeffs<I: IntoIterator<Item = (i64, Rational)>>(it: I) -> Self {
        let coeffs = it.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Self { coeffs }
    }

    pub fn one() -> Self {
        Self::from_coeffs([(0, Rational::one())])
    }

    /// `L^{1/2} + L^{-1/2}`.
    pub fn vector_multiplet() -> Self {
        Self::from_coeffs([(1, Rational::one()), (-1, Rational::one())])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `Ω_n`.
    pub fn coeff(&self, n: i64) -> Rational {
        self.coeffs.get(&n).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coeffs(&self) -> impl Iterator<Item = (i64, &Rational)> {
        self.coeffs.iter().map(|(n, c)| (*n, c))
    }

    /// As a polynomial in `q^{1/2} = -L^{1/2}`.
    pub fn to_laurent(&self) -> LaurentPoly {
        self.coeffs
            .iter()
            .map(|(n, c)| LaurentPoly::l_half_pow(*n).scale(c))
            .fold(LaurentPoly::zero(), |acc, t| &acc + &t)
    }

    /// Unrefined limit `L^{1/2} = -1`.
    pub fn unrefined(&self) -> Rational {
        self.coeffs
            .iter()
            .map(|(n, c)| if n.rem_euclid(2) == 0 { c.clone() } else { -c })
            .fold(Rational::zero(), |a, b| a + b)
    }
}

impl fmt::Display for RefinedInvariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .map(|(n, c)| match n {
                0 => c.to_string(),
                _ if c.is_one() => format!("L^({n}/2)"),
                _ => format!("{c}*L^({n}/2)"),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum OmegaRule {
    /// `Ω(±β+nδ) = 1`, `Ω(kδ) = L^{1/2}+L^{-1/2}` (k ≠ 0), zero elsewhere.
    Conifold,
    /// Finitely supported table; must be symmetric under `γ -> -γ`.
    Table(BTreeMap<ChargeVector, RefinedInvariant>),
}

/// `(Γ, Z, Ω)` with the doubled lattice and its canonical skew form.
#[derive(Clone, Debug, PartialEq)]
pub struct RefinedBpsStructure {
    pub skew: [[i64; 4]; 4],
    pub v: Complex64,
    pub w: Complex64,
    pub omega: OmegaRule,
}

impl RefinedBpsStructure {
    pub fn skew_pair(&self, g1: ChargeVector, g2: ChargeVector) -> i64 {
        skew_with(&self.skew, g1, g2)
    }

    /// `Z(aβ+bδ) = 2πi(av+bw)`, extended by zero on `Γm`.
    pub fn central_charge(&self, g: ChargeVector) -> Complex64 {
        Complex64::new(0.0, 2.0 * PI) * (self.v * g.a as f64 + self.w * g.b as f64)
    }

    pub fn omega(&self, g: ChargeVector) -> RefinedInvariant {
        match &self.omega {
            OmegaRule::Conifold => conifold_omega(g),
            OmegaRule::Table(t) => t.get(&g).cloned().unwrap_or_default(),
        }
    }

    /// Charges `γ` with `Ω(γ) ≠ 0` whose central charge lies on the ray
    /// spanned by the primitive electric charge `dir`, up to multiplicity
    /// `kmax`.
    pub fn charges_on_ray(&self, dir: ChargeVector, kmax: i64) -> Vec<(ChargeVector, RefinedInvariant)> {
        (1..=kmax)
            .map(|k| k * dir)
            .filter_map(|g| {
                let om = self.omega(g);
                (!om.is_zero()).then_some((g, om))
            })
            .collect()
    }

    /// Whether the structure is doubled and uncoupled: form vanishes on
    /// `Γe×Γe` and `Γm×Γm`, and `Ω` vanishes on `Γm`.
    pub fn is_doubled_uncoupled(&self) -> bool {
        let e = [ChargeVector::BETA, ChargeVector::DELTA];
        let m = [ChargeVector::BETA_DUAL, ChargeVector::DELTA_DUAL];
        let iso = |s: &[ChargeVector; 2]| {
            s.iter().all(|x| s.iter().all(|y| self.skew_pair(*x, *y) == 0))
        };
        let om_m = match &self.omega {
            OmegaRule::Conifold => true,
            OmegaRule::Table(t) => t.keys().all(|g| g.is_electric()),
        };
        iso(&e) && iso(&m) && om_m
    }
}

pub fn conifold_omega(g: ChargeVector) -> RefinedInvariant {
    if !g.is_magnetic() && g.ma == 0 && g.mb == 0 {
        if g.a.abs() == 1 {
            return RefinedInvariant::one();
        }
        if g.a == 0 && g.b != 0 {
            return RefinedInvariant::vector_multiplet();
        }
    }
    RefinedInvariant::zero()
}

/// Membership test for `M_+`, naming the first failed predicate.
pub fn check_m_plus(v: Complex64, w: Complex64, nmax: i64) -> Result<()> {
    if w.norm() == 0.0 {
        return Err(QrhError::Region {
            predicate: "w != 0".into(),
        });
    }
    for n in -nmax..=nmax {
        if (v + w * n as f64).norm() == 0.0 {
            return Err(QrhError::Region {
                predicate: format!("v + n w != 0 (fails at n = {n})"),
            });
        }
    }
    if (v / w).im <= 0.0 {
        return Err(QrhError::Region {
            predicate: "Im(v/w) > 0".into(),
        });
    }
    Ok(())
}

/// The refined BPS structure of the resolved conifold at `(v, w) ∈ M_+`.
pub fn conifold_bps(v: Complex64, w: Complex64) -> Result<RefinedBpsStructure> {
    check_m_plus(v, w, DEFAULT_NMAX)?;
    Ok(RefinedBpsStructure {
        skew: CONIFOLD_SKEW,
        v,
        w,
        omega: OmegaRule::Conifold,
    })
}

/// Empirical support-property constant: the minimum of `|Z(γ)| / ‖γ‖_max`
/// over nonzero `γ` with `Ω(γ) ≠ 0` and `‖γ‖_max <= radius`.
pub fn support_constant(s: &RefinedBpsStructure, radius: i64) -> f64 {
    let mut best = f64::INFINITY;
    for a in -radius..=radius {
        for b in -radius..=radius {
            let g = ChargeVector::electric(a, b);
            if g.is_zero() || s.omega(g).is_zero() {
                continue;
            }
            best = best.min(s.central_charge(g).norm() / g.max_norm() as f64);
        }
    }
    best
}

/// Active rays of the conifold in the scanned range.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ActiveRay {
    /// `ℓ_n = R_{>0} 2πi(v+nw)`
    Ell(i64),
    /// `-ℓ_n`
    NegEll(i64),
    /// `ℓ_∞ = R_{>0} 2πiw`
    Infinity,
    NegInfinity,
}

impl ActiveRay {
    pub fn direction(&self, v: Complex64, w: Complex64) -> Complex64 {
        let i2pi = Complex64::new(0.0, 2.0 * PI);
        match *self {
            Self::Ell(n) => i2pi * (v + w * n as f64),
            Self::NegEll(n) => -i2pi * (v + w * n as f64),
            Self::Infinity => i2pi * w,
            Self::NegInfinity => -i2pi * w,
        }
    }

    /// Primitive charge whose central charge spans the ray.
    pub fn charge(&self) -> ChargeVector {
        match *self {
            Self::Ell(n) => ChargeVector::electric(1, n),
            Self::NegEll(n) => ChargeVector::electric(-1, -n),
            Self::Infinity => ChargeVector::DELTA,
            Self::NegInfinity => -ChargeVector::DELTA,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Sector {
    /// `Σ(n)`, bounded by `ℓ_{n-1}` and `ℓ_n`.
    Sigma(i64),
    /// `-Σ(n)`.
    NegSigma(i64),
    /// Between `ℓ_{nmax}` and `ℓ_∞` (or the mirror), outside the scan.
    BeyondScan { negative: bool, toward_infinity: bool },
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum RayClass {
    Active(ActiveRay),
    NonActive(Sector),
    /// Near an active ray but not on it within tolerance.
    Ambiguous { nearest: ActiveRay, angle: f64 },
}

/// Stability point `(v, w)` with derived ray geometry.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RayGeometry {
    pub v: Complex64,
    pub w: Complex64,
}

impl RayGeometry {
    pub fn new(v: Complex64, w: Complex64) -> Result<Self> {
        check_m_plus(v, w, DEFAULT_NMAX)?;
        Ok(Self { v, w })
    }

    /// Angle of `ℓ_n` measured anticlockwise from `ℓ_∞`; lies in `(0, π)`
    /// and decreases with `n`.
    fn rel_angle(&self, n: i64) -> f64 {
        ((self.v + self.w * n as f64) / self.w).arg()
    }

    /// Half-plane `H_ℓ = { u p : u ∈ ℓ, Re p > 0 }`.
    pub fn in_half_plane(ray_dir: Complex64, t: Complex64) -> bool {
        (t / ray_dir).re > 0.0
    }

    /// `V(n) = H_{ℓ_{n-1}} ∪ H_{ℓ_n}`.
    pub fn in_v_region(&self, n: i64, t: Complex64) -> bool {
        Self::in_half_plane(ActiveRay::Ell(n - 1).direction(self.v, self.w), t)
            || Self::in_half_plane(ActiveRay::Ell(n).direction(self.v, self.w), t)
    }

    pub fn classify_ray(&self, t: Complex64, nmax: i64) -> Result<RayClass> {
        if t.norm() == 0.0 || !t.norm().is_finite() {
            return Err(QrhError::precondition("t != 0"));
        }
        // angle of t relative to ℓ_∞, in (-π, π]
        let alpha = (t / (Complex64::new(0.0, 1.0) * self.w)).arg();
        let mut candidates: Vec<(ActiveRay, f64)> = vec![
            (ActiveRay::Infinity, 0.0),
            (ActiveRay::NegInfinity, PI),
        ];
        for n in -nmax..=nmax {
            let a = self.rel_angle(n);
            candidates.push((ActiveRay::Ell(n), a));
            candidates.push((ActiveRay::NegEll(n), a - PI));
        }
        let dist = |a: f64| {
            let d = (alpha - a).rem_euclid(2.0 * PI);
            d.min(2.0 * PI - d)
        };
        let mut hits: Vec<(ActiveRay, f64)> = candidates
            .iter()
            .map(|(r, a)| (*r, dist(*a)))
            .filter(|(_, d)| *d < RAY_AMBIGUITY_BAND)
            .collect();
        hits.sort_by(|x, y| x.1.total_cmp(&y.1));
        if let Some(&(nearest, d)) = hits.first() {
            let exact: Vec<_> = hits.iter().filter(|(_, d)| *d < RAY_ANGLE_TOL).collect();
            return Ok(if exact.len() == 1 {
                RayClass::Active(nearest)
            } else {
                RayClass::Ambiguous { nearest, angle: d }
            });
        }
        let (negative, beta) = if alpha > 0.0 && alpha < PI {
            (false, alpha)
        } else {
            (true, alpha + if alpha <= 0.0 { PI } else { -PI })
        };
        // rel_angle is decreasing in n: Σ(n) = (rel_angle(n), rel_angle(n-1))
        if beta > self.rel_angle(-nmax) {
            return Ok(RayClass::NonActive(Sector::BeyondScan {
                negative,
                toward_infinity: false,
            }));
        }
        if beta < self.rel_angle(nmax) {
            return Ok(RayClass::NonActive(Sector::BeyondScan {
                negative,
                toward_infinity: true,
            }));
        }
        let n = (-nmax + 1..=nmax)
            .find(|&n| beta > self.rel_angle(n) && beta < self.rel_angle(n - 1))
            .ok_or_else(|| QrhError::Consistency("sector scan failed".into()))?;
        Ok(RayClass::NonActive(if negative {
            Sector::NegSigma(n)
        } else {
            Sector::Sigma(n)
        }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::rat_int;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn geom() -> RayGeometry {
        RayGeometry::new(c(0.3, 0.4), c(1.0, 0.0)).unwrap()
    }

    #[test]
    fn conifold_invariants() {
        let s = conifold_bps(c(0.3, 0.4), c(1.0, 0.0)).unwrap();
        assert_eq!(s.omega(ChargeVector::new(1, 3, 0, 0)), RefinedInvariant::one());
        assert!(s.omega(ChargeVector::BETA_DUAL).is_zero());
        let om = s.omega(ChargeVector::new(0, -2, 0, 0));
        assert_eq!(om, RefinedInvariant::vector_multiplet());
        assert_eq!(om.unrefined(), rat_int(-2));
        assert!(s.omega(ChargeVector::ZERO).is_zero());
        assert!(s.omega(ChargeVector::new(2, 1, 0, 0)).is_zero());
        assert!(s.is_doubled_uncoupled());
        // L^{1/2}+L^{-1/2} = -(q^{1/2}+q^{-1/2})
        let lp = om.to_laurent();
        assert_eq!(lp.coeff(1), rat_int(-1));
        assert_eq!(lp.coeff(-1), rat_int(-1));
    }

    #[test]
    fn central_charge_values() {
        let s = conifold_bps(c(0.3, 0.4), c(1.0, 0.0)).unwrap();
        let z = s.central_charge(ChargeVector::new(1, 2, 5, 7));
        let expect = Complex64::new(0.0, 2.0 * PI) * c(2.3, 0.4);
        assert!((z - expect).norm() < 1e-14);
        assert_eq!(s.central_charge(ChargeVector::BETA_DUAL), Complex64::zero());
    }

    #[test]
    fn m_plus_rejections_name_the_predicate() {
        let e = conifold_bps(c(0.3, -0.4), c(1.0, 0.0)).unwrap_err();
        assert_eq!(e, QrhError::Region { predicate: "Im(v/w) > 0".into() });
        let e = conifold_bps(c(0.3, 0.4), Complex64::zero()).unwrap_err();
        assert!(e.to_string().contains("w != 0"));
        let e = conifold_bps(c(-2.0, 0.0), c(1.0, 0.0)).unwrap_err();
        assert!(e.to_string().contains("v + n w != 0"));
    }

    #[test]
    fn skew_pair_examples() {
        assert_eq!(skew_pair(ChargeVector::BETA_DUAL, ChargeVector::BETA), 1);
        assert_eq!(skew_pair(ChargeVector::DELTA_DUAL, ChargeVector::DELTA), 1);
        assert_eq!(skew_pair(ChargeVector::BETA, ChargeVector::DELTA), 0);
        assert_eq!(skew_pair(ChargeVector::BETA_DUAL, ChargeVector::DELTA_DUAL), 0);
        let g = ChargeVector::new(3, -1, 2, 5);
        assert_eq!(skew_pair(g, g), 0);
    }

    #[test]
    fn classify_active_rays() {
        let g = geom();
        let i2pi = c(0.0, 2.0 * PI);
        let t = i2pi * (g.v + g.w * 3.0);
        assert_eq!(g.classify_ray(t, 64).unwrap(), RayClass::Active(ActiveRay::Ell(3)));
        assert_eq!(
            g.classify_ray(-i2pi * g.w, 64).unwrap(),
            RayClass::Active(ActiveRay::NegInfinity)
        );
        assert_eq!(
            g.classify_ray(-i2pi * (g.v - g.w * 2.0), 64).unwrap(),
            RayClass::Active(ActiveRay::NegEll(-2))
        );
        assert!(g.classify_ray(Complex64::zero(), 64).is_err());
    }

    #[test]
    fn classify_sector_midpoint() {
        let g = geom();
        let t = c(0.0, PI) * (g.v * 2.0 + g.w);
        // oracle: arg relative to ℓ_∞ strictly between those of ℓ_1 and ℓ_0
        let rel = |z: Complex64| (z / (c(0.0, 1.0) * g.w)).arg();
        let (a0, a1) = (rel(c(0.0, 2.0 * PI) * g.v), rel(c(0.0, 2.0 * PI) * (g.v + g.w)));
        assert!(a1 < rel(t) && rel(t) < a0);
        assert_eq!(g.classify_ray(t, 64).unwrap(), RayClass::NonActive(Sector::Sigma(1)));
        assert_eq!(g.classify_ray(-t, 64).unwrap(), RayClass::NonActive(Sector::NegSigma(1)));
    }

    #[test]
    fn classify_ambiguous_and_beyond_scan() {
        let g = geom();
        let t = c(0.0, 2.0 * PI) * g.v * Complex64::from_polar(1.0, 1e-10);
        assert!(matches!(
            g.classify_ray(t, 64).unwrap(),
            RayClass::Ambiguous { nearest: ActiveRay::Ell(0), .. }
        ));
        let near_inf = c(0.0, 2.0 * PI) * (g.v + g.w * 1000.0);
        assert!(matches!(
            g.classify_ray(near_inf, 64).unwrap(),
            RayClass::NonActive(Sector::BeyondScan { toward_infinity: true, .. })
        ));
    }

    #[test]
    fn support_property_witness() {
        let s = conifold_bps(c(0.3, 0.4), c(1.0, 0.0)).unwrap();
        let cst = support_constant(&s, 12);
        assert!(cst > 0.0 && cst.is_finite());
        for a in -12..=12i64 {
            for b in -12..=12i64 {
                let g = ChargeVector::electric(a, b);
                if !g.is_zero() && !s.omega(g).is_zero() {
                    assert!(s.central_charge(g).norm() >= cst * g.max_norm() as f64);
                }
            }
        }
    }

    #[test]
    fn v_region_matches_half_planes() {
        let g = geom();
        // t with Im(v/(-t)) > 0 lies in H_{ℓ_0}
        let t = c(-0.2, 0.7);
        assert!((g.v / (-t)).im > 0.0);
        assert!(RayGeometry::in_half_plane(ActiveRay::Ell(0).direction(g.v, g.w), t));
        assert!(g.in_v_region(0, t));
    }

    proptest! {
        #[test]
        fn skew_is_antisymmetric(x in prop::array::uniform4(-20i64..20), y in prop::array::uniform4(-20i64..20)) {
            let (g1, g2) = (ChargeVector::from_coords(x), ChargeVector::from_coords(y));
            prop_assert_eq!(skew_pair(g1, g2), -skew_pair(g2, g1));
        }

        #[test]
        fn omega_is_symmetric(a in -15i64..15, b in -15i64..15) {
            let g = ChargeVector::electric(a, b);
            prop_assert_eq!(conifold_omega(g), conifold_omega(-g));
        }

        #[test]
        fn classification_is_scale_invariant(re in -3.0f64..3.0, im in -3.0f64..3.0, lam in 0.01f64..100.0) {
            prop_assume!(re.abs() + im.abs() > 1e-3);
            let g = geom();
            let t = c(re, im);
            prop_assert_eq!(g.classify_ray(t, 16).unwrap(), g.classify_ray(t * lam, 16).unwrap());
        }
    }
}
