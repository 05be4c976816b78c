use std::f64::consts::PI;

use conifold_qrh::laurent::rat;
use conifold_qrh::special::bernoulli::{bernoulli_numbers, bernoulli_poly, multiple_bernoulli};
use conifold_qrh::special::contour::ContourSpec;
use conifold_qrh::special::fg::{f_integrand, log_f, log_f_contour, log_g, EvalOptions, OmegaTriple};
use conifold_qrh::special::moments::residue_lemma_check;
use conifold_qrh::special::products::qdilog_numeric;
use num_complex::Complex64;
use proptest::prelude::*;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn brute_qdilog(x: Complex64, q: Complex64, factors: usize) -> Complex64 {
    let mut p = c(1.0, 0.0);
    let mut qk = c(1.0, 0.0);
    for _ in 0..factors {
        p *= 1.0 - x * qk;
        qk *= q;
    }
    p
}

/// `Π_{k>=1}(1 - x_1 q_1^{-k})^{-1} Π_{k>=0}(1 - x_2 p^k)` with plain products.
fn brute_f(z: Complex64, a: Complex64, b: Complex64) -> Complex64 {
    let tpi = c(0.0, 2.0 * PI);
    let x1 = (tpi * z / a).exp();
    let x2 = (tpi * z / b).exp();
    let p = (tpi * a / b).exp();
    let qi = (-tpi * b / a).exp();
    brute_qdilog(x2, p, 4000) / brute_qdilog(x1 * qi, qi, 4000)
}

fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
    (a - b).norm() <= tol * b.norm().max(1.0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn qdilog_matches_the_truncated_product(
        xr in -2.0f64..2.0, xi in -2.0f64..2.0,
        r in 0.0f64..0.8, th in -PI..PI,
    ) {
        let (x, q) = (c(xr, xi), Complex64::from_polar(r, th));
        let v = qdilog_numeric(x, q, 1e-16).unwrap();
        prop_assert!(close(v, brute_qdilog(x, q, 400), 1e-12), "{} vs {}", v, brute_qdilog(x, q, 400));
    }

    #[test]
    fn bernoulli_polynomials_satisfy_the_difference_equation(n in 1usize..12, zr in -1.5f64..1.5, zi in -1.5f64..1.5) {
        // B_n(z+1) - B_n(z) = n z^{n-1}
        let z = c(zr, zi);
        let lhs = bernoulli_poly(n, z + 1.0) - bernoulli_poly(n, z);
        let rhs = n as f64 * z.powi(n as i32 - 1);
        prop_assert!(close(lhs, rhs, 1e-10), "n={} {} vs {}", n, lhs, rhs);
    }

    #[test]
    fn multiple_bernoulli_is_homogeneous(
        n in 0usize..6, r in 1usize..=3,
        zr in -1.0f64..1.0, zi in -1.0f64..1.0,
        cm in 0.5f64..2.0, ca in -PI..PI,
    ) {
        // B_{n,r}(cz|cω) = c^{n-r} B_{n,r}(z|ω)
        let om = [c(1.0, 0.0), c(1.0, 0.2), c(0.7, -0.3)];
        let s = Complex64::from_polar(cm, ca);
        let z = c(zr, zi);
        let scaled: Vec<Complex64> = om[..r].iter().map(|w| s * w).collect();
        let lhs = multiple_bernoulli(n, s * z, &scaled).unwrap();
        let rhs = s.powi(n as i32 - r as i32) * multiple_bernoulli(n, z, &om[..r]).unwrap();
        prop_assert!(close(lhs, rhs, 1e-10), "{} vs {}", lhs, rhs);
    }

    #[test]
    fn double_bernoulli_closed_form(
        zr in -1.0f64..1.0, zi in -1.0f64..1.0,
        ar in 0.5f64..1.5, ai in -0.5f64..0.5, br in 0.5f64..1.5, bi in -0.5f64..0.5,
    ) {
        let (z, a, b) = (c(zr, zi), c(ar, ai), c(br, bi));
        let expect = z * z / (a * b) - (a + b) * z / (a * b) + (a * a + b * b + 3.0 * a * b) / (6.0 * a * b);
        let v = multiple_bernoulli(2, z, &[a, b]).unwrap();
        prop_assert!(close(v, expect, 1e-12), "{} vs {}", v, expect);
    }
}

#[test]
fn bernoulli_numbers_match_the_tabulated_values() {
    let b = bernoulli_numbers(14);
    let table = [
        (0, rat(1, 1)),
        (1, rat(-1, 2)),
        (2, rat(1, 6)),
        (4, rat(-1, 30)),
        (6, rat(1, 42)),
        (8, rat(-1, 30)),
        (10, rat(5, 66)),
        (12, rat(-691, 2730)),
        (14, rat(7, 6)),
    ];
    for (n, v) in table {
        assert_eq!(b[n], v, "B_{n}");
    }
    for n in (3..=13).step_by(2) {
        assert_eq!(b[n], rat(0, 1), "B_{n}");
    }
}

#[test]
fn f_contour_matches_an_independent_product() {
    let spec = ContourSpec::default();
    let a = Complex64::from_polar(1.1, 0.2);
    let b = Complex64::from_polar(0.9, -0.6);
    let mut checked = 0;
    for (s, t) in [(0.2, 0.3), (0.5, 0.5), (0.7, 0.2), (0.3, 0.8), (0.6, 0.6)] {
        let z = a * s + b * t;
        if f_integrand(z, a, b).arc().is_none() {
            continue;
        }
        let v = log_f_contour(z, a, b, &spec).unwrap().exp();
        let p = brute_f(z, a, b);
        assert!(close(v, p, 1e-9), "z={z}: {v} vs {p}");
        checked += 1;
    }
    assert!(checked >= 3, "only {checked} points on the contour");
}

#[test]
fn f_vanishes_simply_at_zero_and_has_a_simple_pole_at_wbar_plus_w2() {
    let opts = EvalOptions::default();
    let (a, b) = (c(1.0, 0.0), c(0.2, -0.7));
    let f = |z: Complex64| log_f(z, a, b, &opts).unwrap().exp();
    let eps = c(1e-6, 1e-6);
    let zero_ratio = f(2.0 * eps) / f(eps);
    assert!((zero_ratio - 2.0).norm() < 1e-4, "{zero_ratio}");
    let pole_ratio = f(a + b + 2.0 * eps) / f(a + b + eps);
    assert!((pole_ratio - 0.5).norm() < 1e-4, "{pole_ratio}");
}

#[test]
fn g_is_symmetric_in_the_first_two_periods() {
    let opts = EvalOptions::default();
    let (w1, wt1, w2) = (c(1.0525, 0.015), c(0.9475, -0.015), c(0.2, -0.7));
    for z in [c(0.3, 0.4), c(0.5, 0.1), c(0.2, 0.2)] {
        let g = log_g(z, &OmegaTriple::new(w1, wt1, w2), &opts).unwrap().exp();
        let h = log_g(z, &OmegaTriple::new(wt1, w1, w2), &opts).unwrap().exp();
        assert!(close(g, h, 1e-10), "z={z}: {g} vs {h}");
    }
}

#[test]
fn residue_lemma_at_d3_against_a_summed_zeta() {
    let zeta3: f64 = (1..200_000).map(|k| (k as f64).powi(-3)).sum::<f64>() + 0.5 / 200_000f64.powi(2);
    let tpi = c(0.0, 2.0 * PI);
    let opts = EvalOptions::default();
    for om in [c(1.0, 0.0), c(1.0, 0.2), c(0.7, -0.3)] {
        let r = residue_lemma_check(om, 3, 1e-8, &opts).unwrap();
        let expect = 2.0 * zeta3 / tpi * (om / tpi);
        assert!(close(r.lhs.unwrap(), expect, 1e-9), "ω={om}: {} vs {expect}", r.lhs.unwrap());
    }
}
