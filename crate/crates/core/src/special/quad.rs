//! Globally adaptive Gauss-Kronrod (7/15) quadrature of complex-valued
//! functions over a union of finite intervals.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use num_complex::Complex64;

use crate::error::{QrhError, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_5,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_48,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224,
    0.063_092_092_629_978_56,
    0.104_790_010_322_250_19,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_42,
    0.204_432_940_075_298_89,
    0.209_482_141_084_727_82,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_64,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadOptions {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_evals: usize,
}

impl Default for QuadOptions {
    fn default() -> Self {
        Self {
            rel_tol: 1e-13,
            abs_tol: 1e-300,
            max_evals: 400_000,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadResult {
    pub value: Complex64,
    /// Estimated absolute error.
    pub error: f64,
    pub evals: usize,
    /// `∫|f|`, used to judge cancellation.
    pub abs_integral: f64,
}

struct Panel {
    piece: usize,
    a: f64,
    b: f64,
    value: Complex64,
    error: f64,
    abs: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn gk15<F: FnMut(f64) -> Complex64 + ?Sized>(f: &mut F, a: f64, b: f64) -> (Complex64, f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kron = fc * WGK[7];
    let mut gauss = fc * WG[3];
    let mut resabs = fc.norm() * WGK[7];
    let mut fv = [(Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0)); 7];
    for j in 0..7 {
        let dx = half * XGK[j];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        fv[j] = (f1, f2);
        kron += (f1 + f2) * WGK[j];
        resabs += (f1.norm() + f2.norm()) * WGK[j];
        if j % 2 == 1 {
            gauss += (f1 + f2) * WG[j / 2];
        }
    }
    let mean = kron * 0.5;
    let mut resasc = WGK[7] * (fc - mean).norm();
    for j in 0..7 {
        resasc += WGK[j] * ((fv[j].0 - mean).norm() + (fv[j].1 - mean).norm());
    }
    let hab = half.abs();
    let value = kron * half;
    let resabs = resabs * hab;
    let resasc = resasc * hab;
    let mut err = ((kron - gauss) * half).norm();
    if resasc != 0.0 && err != 0.0 {
        err = resasc * (200.0 * err / resasc).powf(1.5).min(1.0);
    }
    if resabs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * resabs);
    }
    (value, err, resabs)
}

/// Integrates each `(f, a, b)` piece and returns the total. Panels from all
/// pieces share one priority queue keyed on their error estimate.
pub fn integrate_pieces(
    pieces: &mut [(&mut dyn FnMut(f64) -> Complex64, f64, f64)],
    opts: QuadOptions,
) -> Result<QuadResult> {
    let mut heap = BinaryHeap::new();
    let mut evals = 0;
    for (i, (f, a, b)) in pieces.iter_mut().enumerate() {
        let (value, error, abs) = gk15(*f, *a, *b);
        evals += 15;
        heap.push(Panel {
            piece: i,
            a: *a,
            b: *b,
            value,
            error,
            abs,
        });
    }
    loop {
        let value: Complex64 = heap.iter().map(|p| p.value).sum();
        let error: f64 = heap.iter().map(|p| p.error).sum();
        let abs: f64 = heap.iter().map(|p| p.abs).sum();
        if !value.re.is_finite() || !value.im.is_finite() {
            return Err(QrhError::Quadrature(format!("non-finite integrand value ({value})")));
        }
        let target = opts.abs_tol.max(opts.rel_tol * value.norm());
        // below the rounding floor of the panels nothing more can be gained
        let floor = 100.0 * f64::EPSILON * abs;
        if error <= target.max(floor) {
            return Ok(QuadResult {
                value,
                error,
                evals,
                abs_integral: abs,
            });
        }
        if evals + 30 > opts.max_evals {
            return Err(QrhError::Quadrature(format!(
                "evaluation budget {} exhausted with error estimate {error:.3e} above target {target:.3e}",
                opts.max_evals
            )));
        }
        let worst = heap.pop().expect("nonempty panel queue");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a.min(worst.b) || mid >= worst.a.max(worst.b) {
            return Err(QrhError::Quadrature(format!(
                "interval too small to subdivide near {mid}; error estimate {error:.3e}"
            )));
        }
        let f = &mut *pieces[worst.piece].0;
        for (a, b) in [(worst.a, mid), (mid, worst.b)] {
            let (value, error, abs) = gk15(f, a, b);
            heap.push(Panel {
                piece: worst.piece,
                a,
                b,
                value,
                error,
                abs,
            });
        }
        evals += 30;
    }
}

pub fn integrate(mut f: impl FnMut(f64) -> Complex64, a: f64, b: f64, opts: QuadOptions) -> Result<QuadResult> {
    integrate_pieces(&mut [(&mut f, a, b)], opts)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn opts(tol: f64) -> QuadOptions {
        QuadOptions {
            rel_tol: tol,
            ..Default::default()
        }
    }

    #[test]
    fn polynomials_exact_on_one_panel() {
        for k in 0..=22 {
            let r = integrate(|x| Complex64::new(x.powi(k), 0.0), 0.0, 1.0, opts(1e-14)).unwrap();
            assert!((r.value.re - 1.0 / (k as f64 + 1.0)).abs() < 1e-15, "k = {k}");
        }
    }

    #[test]
    fn oscillatory_complex_integrand() {
        // ∫_0^{10} e^{i a x} dx
        let a = 7.3;
        let r = integrate(|x| Complex64::new(0.0, a * x).exp(), 0.0, 10.0, opts(1e-13)).unwrap();
        let exact = (Complex64::new(0.0, 10.0 * a).exp() - 1.0) / Complex64::new(0.0, a);
        assert!((r.value - exact).norm() < 1e-12);
        assert!(r.error < 1e-12);
    }

    #[test]
    fn endpoint_singularity_and_pieces() {
        // ∫_0^1 x^{-1/2} + ∫_1^2 1
        let mut f = |x: f64| Complex64::new(x.powf(-0.5), 0.0);
        let mut g = |_x: f64| Complex64::new(1.0, 0.0);
        let r = integrate_pieces(&mut [(&mut f, 0.0, 1.0), (&mut g, 1.0, 2.0)], opts(1e-12)).unwrap();
        assert!((r.value.re - 3.0).abs() < 1e-10);
    }

    #[test]
    fn error_bound_tracks_tolerance() {
        let f = |x: f64| Complex64::new(1.0 / (1.0 + 2500.0 * x * x), (3.0 * x).sin());
        let exact = integrate(f, -3.0, 3.0, opts(1e-15)).unwrap().value;
        let mut prev_bound = f64::INFINITY;
        for k in 0..16 {
            let tol = 1e-4 / 2f64.powi(k);
            let r = integrate(f, -3.0, 3.0, opts(tol)).unwrap();
            let bound = tol * r.value.norm();
            assert!(r.error <= bound);
            assert!(bound <= prev_bound / 2.0 * (1.0 + 1e-6));
            // the estimate is not optimistic
            assert!((r.value - exact).norm() <= r.error + 1e-15);
            prev_bound = bound;
        }
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let err = integrate(
            |x| Complex64::new((1.0 / x).sin() / x, 0.0),
            1e-9,
            1.0,
            QuadOptions {
                rel_tol: 1e-14,
                abs_tol: 0.0,
                max_evals: 2000,
            },
        )
        .unwrap_err();
        assert!(matches!(err, QrhError::Quadrature(_)));
    }
}
