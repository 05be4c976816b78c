//! Contour integrals along a rotated copy of the real axis, indented above
//! the origin by a small semicircle.
//!
//! Every integral here has the shape
//! `pref ∫ e^{μs} s^p / Π_i (e^{ω_i s} - 1) ds`. Along `s = c·u` it decays at
//! both ends when `Re(cμ) > 0` and `Re(c(Σω - μ)) > 0`, and no pole crosses the
//! path while every `Re(cω_i) > 0`. All rotations meeting these conditions
//! give the same value, so the rotation is chosen with maximal margin.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{QrhError, Result};
use crate::special::quad::{integrate_pieces, QuadOptions, QuadResult};

/// Integration settings. `eps` defaults to `π / max|ω_i|`, half the distance
/// to the nearest nonzero pole; `rotation` defaults to the max-margin choice.
#[derive(Clone, Copy, Debug, PartialEq)]
#[derive(Default)]
pub struct ContourSpec {
    pub eps: Option<f64>,
    pub rotation: Option<Complex64>,
    pub quad: QuadOptions,
}


impl ContourSpec {
    pub fn with_tol(tol: f64) -> Self {
        Self {
            quad: QuadOptions {
                rel_tol: tol,
                ..Default::default()
            },
            ..Default::default()
        }
    }
}

/// Open arc of rotation angles `φ` with `Re(e^{iφ} v) > 0` for all `v`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AdmissibleArc {
    pub lo: f64,
    pub hi: f64,
}

impl AdmissibleArc {
    /// Intersection over `vectors`; `None` when they do not fit in an open
    /// half-plane.
    pub fn of(vectors: &[Complex64]) -> Option<Self> {
        if vectors.iter().any(|v| v.norm() == 0.0 || !v.re.is_finite() || !v.im.is_finite()) {
            return None;
        }
        let mut args: Vec<f64> = vectors.iter().map(|v| v.arg()).collect();
        args.sort_by(f64::total_cmp);
        // the covering arc is the complement of the largest cyclic gap
        let n = args.len();
        let (mut gap, mut start) = (args[0] + 2.0 * PI - args[n - 1], 0);
        for i in 1..n {
            let g = args[i] - args[i - 1];
            if g > gap {
                gap = g;
                start = i;
            }
        }
        let width = 2.0 * PI - gap;
        if width >= PI {
            return None;
        }
        let amin = args[start];
        let amax = amin + width;
        Some(Self {
            lo: -PI / 2.0 - amin,
            hi: PI / 2.0 - amax,
        })
    }

    pub fn margin(&self) -> f64 {
        0.5 * (self.hi - self.lo)
    }

    pub fn center(&self) -> Complex64 {
        Complex64::from_polar(1.0, 0.5 * (self.lo + self.hi))
    }

    pub fn contains(&self, c: Complex64) -> bool {
        let phi = c.arg();
        let mid = 0.5 * (self.lo + self.hi);
        let d = (phi - mid + PI).rem_euclid(2.0 * PI) - PI;
        d.abs() < self.margin()
    }
}

/// `1/(e^w - 1)` written as `e^{shift} · factor` with `|factor|` bounded,
/// so products of many such terms neither overflow nor underflow early.
fn inv_expm1_split(w: Complex64) -> (Complex64, Complex64) {
    if w.re > 0.0 {
        // e^{-w} / (1 - e^{-w})
        (-w, -1.0 / expm1(-w))
    } else {
        (Complex64::new(0.0, 0.0), 1.0 / expm1(w))
    }
}

/// `e^w - 1` without cancellation for small `|w|`.
pub fn expm1(w: Complex64) -> Complex64 {
    let (a, b) = (w.re, w.im);
    let em = a.exp_m1();
    let s = (0.5 * b).sin();
    Complex64::new(em * b.cos() - 2.0 * s * s, (em + 1.0) * b.sin())
}

/// `pref · e^{μs} s^p / Π(e^{ω_i s} - 1)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ExpRatio {
    pub pref: Complex64,
    pub mu: Complex64,
    pub power: i32,
    pub omegas: Vec<Complex64>,
}

impl ExpRatio {
    pub fn eval(&self, s: Complex64) -> Complex64 {
        let mut expo = self.mu * s;
        let mut fac = self.pref * s.powi(self.power);
        for w in &self.omegas {
            let (sh, f) = inv_expm1_split(*w * s);
            expo += sh;
            fac *= f;
        }
        if fac == Complex64::new(0.0, 0.0) {
            return fac;
        }
        fac * expo.exp()
    }

    /// Vectors that must lie in the rotated right half-plane.
    pub fn strip_vectors(&self) -> Vec<Complex64> {
        let total: Complex64 = self.omegas.iter().sum();
        let mut v = self.omegas.clone();
        v.push(self.mu);
        v.push(total - self.mu);
        v
    }

    pub fn arc(&self) -> Option<AdmissibleArc> {
        AdmissibleArc::of(&self.strip_vectors())
    }

    /// The integral along the indented rotated axis.
    pub fn integrate(&self, spec: &ContourSpec) -> Result<ContourValue> {
        let arc = self.arc().ok_or_else(|| {
            QrhError::Region {
                predicate: format!(
                    "some rotation puts {:?} in a common open half-plane",
                    self.strip_vectors()
                ),
            }
        })?;
        let c = match spec.rotation {
            Some(c) if !arc.contains(c) => {
                return Err(QrhError::Region {
                    predicate: format!("rotation {c} admissible"),
                });
            }
            _ => arc.center(),
        };
        let wmax = self.omegas.iter().map(|w| w.norm()).fold(0.0, f64::max);
        let eps = spec.eps.unwrap_or(PI / wmax.max(1e-300));
        if !(eps > 0.0 && eps < 2.0 * PI / wmax) {
            return Err(QrhError::precondition("0 < eps < 2π / max|ω|"));
        }
        let total: Complex64 = self.omegas.iter().sum();
        let kp = (c * (total - self.mu)).re;
        let km = (c * self.mu).re;
        let (lp, lm) = (1.0 / kp, 1.0 / km);
        let g = |u: Complex64| self.eval(c * u) * c;
        let mut left = |x: f64| {
            let u = -eps - lm * x / (1.0 - x);
            g(Complex64::new(u, 0.0)) * (lm / ((1.0 - x) * (1.0 - x)))
        };
        let mut arc_piece = |th: f64| {
            let u = Complex64::from_polar(eps, th);
            -g(u) * Complex64::i() * u
        };
        let mut right = |x: f64| {
            let u = eps + lp * x / (1.0 - x);
            g(Complex64::new(u, 0.0)) * (lp / ((1.0 - x) * (1.0 - x)))
        };
        let r = integrate_pieces(
            &mut [(&mut left, 0.0, 1.0), (&mut arc_piece, 0.0, PI), (&mut right, 0.0, 1.0)],
            spec.quad,
        )?;
        Ok(ContourValue {
            quad: r,
            rotation: c,
            margin: arc.margin(),
            eps,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ContourValue {
    pub quad: QuadResult,
    pub rotation: Complex64,
    pub margin: f64,
    pub eps: f64,
}

impl ContourValue {
    pub fn value(&self) -> Complex64 {
        self.quad.value
    }

    pub fn error(&self) -> f64 {
        self.quad.error
    }
}

/// The rotation `c = e^{-i(θ + ε₊)}` attached to `z = r e^{i(θ + π/2)}`.
pub fn moment_rotation(z: Complex64, eps_plus: f64) -> Complex64 {
    let theta = z.arg() - PI / 2.0;
    Complex64::from_polar(1.0, -(theta + eps_plus))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn arc_of_vectors() {
        let a = AdmissibleArc::of(&[c(1.0, 0.0), c(0.0, 1.0)]).unwrap();
        assert!((a.lo + PI / 2.0).abs() < 1e-15 && a.hi.abs() < 1e-15);
        assert!(a.contains(Complex64::from_polar(1.0, -0.7)));
        assert!(!a.contains(c(1.0, 0.0)));
        assert!(AdmissibleArc::of(&[c(1.0, 0.0), c(-1.0, 0.1), c(0.0, -1.0)]).is_none());
        assert!(AdmissibleArc::of(&[c(-1.0, 0.0), c(-1.0, 0.3)]).is_some());
    }

    #[test]
    fn expm1_small_arguments() {
        let w = c(1e-10, -2e-10);
        let e = expm1(w);
        assert!((e - w - w * w / 2.0).norm() < 1e-25);
        let w = c(0.3, 2.0);
        assert!((expm1(w) - (w.exp() - 1.0)).norm() < 1e-15);
    }

    #[test]
    fn first_moment_against_residues() {
        // ∫ e^{zs} / (e^{as} - 1) ds / s^2 = (a/2πi) Li_2(e^{2πiz/a})
        let (z, a) = (c(0.2, 0.5), c(1.0, 0.0));
        let ig = ExpRatio {
            pref: c(1.0, 0.0),
            mu: z,
            power: -2,
            omegas: vec![a],
        };
        let v = ig.integrate(&ContourSpec::default()).unwrap();
        let x = (Complex64::new(0.0, 2.0 * PI) * z / a).exp();
        let li2: Complex64 = (1..200).map(|k| x.powi(k) / (k * k) as f64).sum();
        let expect = a / Complex64::new(0.0, 2.0 * PI) * li2;
        assert!((v.value() - expect).norm() < 1e-12, "{} vs {}", v.value(), expect);
    }

    #[test]
    fn rotation_invariance_inside_arc() {
        let ig = ExpRatio {
            pref: c(1.0, 0.0),
            mu: c(0.3, 0.4),
            power: -1,
            omegas: vec![c(1.0, 0.0), c(0.2, -0.7)],
        };
        let arc = ig.arc().unwrap();
        let base = ig.integrate(&ContourSpec::default()).unwrap().value();
        for t in [0.1, 0.5, 0.9] {
            let phi = arc.lo + t * (arc.hi - arc.lo);
            let mut spec = ContourSpec::default();
            spec.rotation = Some(Complex64::from_polar(1.0, phi));
            // an admissible user rotation leaves the value unchanged
            assert!((ig.integrate(&spec).unwrap().value() - base).norm() < 1e-11);
        }
        let mut spec = ContourSpec::default();
        spec.rotation = Some(Complex64::from_polar(1.0, arc.hi + 0.1));
        assert!(matches!(ig.integrate(&spec), Err(QrhError::Region { .. })));
    }

    #[test]
    fn eps_must_avoid_poles() {
        let ig = ExpRatio {
            pref: c(1.0, 0.0),
            mu: c(0.3, 0.4),
            power: -1,
            omegas: vec![c(1.0, 0.0)],
        };
        let spec = ContourSpec {
            eps: Some(7.0),
            ..Default::default()
        };
        assert!(ig.integrate(&spec).unwrap_err().is_precondition());
        let spec = ContourSpec {
            eps: Some(0.5),
            ..Default::default()
        };
        let a = ig.integrate(&spec).unwrap().value();
        let b = ig.integrate(&ContourSpec::default()).unwrap().value();
        assert!((a - b).norm() < 1e-11);
    }
}
