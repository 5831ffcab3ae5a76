//! Randomized structural properties of the covariogram engines and the
//! supporting numerics.

use convbody_lab::fourier::{self, FourierSeries};
use convbody_lab::lens::lens_area;
use convbody_lab::polygon::{covariogram, ConvexPolygon, Vec2};
use convbody_lab::radial::RadialFunction;
use convbody_lab::spectral::SpectralBody;

use num_complex::Complex64;
use proptest::prelude::*;

use std::f64::consts::TAU;

/// A band-limited radial body 1 + small perturbation, always positive.
fn small_body(amps: &[(f64, f64)]) -> SpectralBody {
    let an = amps
        .iter()
        .map(|&(re, im)| Complex64::new(re, im))
        .collect::<Vec<_>>();
    SpectralBody::new(FourierSeries::new(1.0, an)).expect("perturbation keeps rho > 0")
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn spectral_covariogram_is_even_and_bounded(
        a in -0.04f64..0.04,
        b in -0.04f64..0.04,
        c in -0.04f64..0.04,
        d in -0.04f64..0.04,
        dir in 0.0f64..TAU,
        s in 0.0f64..2.2,
    ) {
        let body = small_body(&[(a, b), (c, d)]);
        let x = Vec2::unit(dir) * s;
        let g = body.covariogram(x);
        let g_neg = body.covariogram(-x);
        prop_assert!((g - g_neg).abs() < 1e-10, "g(x)={g} g(-x)={g_neg}");
        prop_assert!(g >= 0.0);
        prop_assert!(g <= body.area() + 1e-12);
    }

    #[test]
    fn spectral_covariogram_decreases_along_rays(
        a in -0.05f64..0.05,
        b in -0.05f64..0.05,
        dir in 0.0f64..TAU,
    ) {
        let body = small_body(&[(0.0, 0.0), (a, 0.0), (b, 0.0)]);
        let mut prev = body.area();
        for k in 1..=12 {
            let g = body.covariogram(Vec2::unit(dir) * (2.2 * k as f64 / 12.0));
            prop_assert!(g <= prev + 1e-10);
            prev = g;
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn polygon_covariogram_is_even(
        w in 0.5f64..3.0,
        h in 0.5f64..3.0,
        x in -2.0f64..2.0,
        y in -2.0f64..2.0,
    ) {
        let p = ConvexPolygon::rectangle(w, h).unwrap();
        let v = Vec2::new(x, y);
        let g = covariogram(&p, v);
        prop_assert!((g - covariogram(&p, -v)).abs() < 1e-10);
        prop_assert!(g >= 0.0 && g <= p.area() + 1e-12);
    }

    #[test]
    fn analyze_synthesize_round_trip(
        a0 in -1.0f64..1.0,
        re1 in -0.5f64..0.5, im1 in -0.5f64..0.5,
        re2 in -0.5f64..0.5, im2 in -0.5f64..0.5,
        re3 in -0.5f64..0.5, im3 in -0.5f64..0.5,
    ) {
        let series = FourierSeries::new(
            a0,
            vec![
                Complex64::new(re1, im1),
                Complex64::new(re2, im2),
                Complex64::new(re3, im3),
            ],
        );
        let samples = fourier::synthesize(&series, 64);
        let back = fourier::analyze(&samples, 3).unwrap();
        prop_assert!((back.a0() - a0).abs() < 1e-12);
        for n in 1..=3 {
            prop_assert!((back.coefficient(n) - series.coefficient(n)).norm() < 1e-12);
        }
    }

    #[test]
    fn sampled_integral_is_additive(
        seed in 0u64..1000,
        a in -7.0f64..7.0,
        b in -7.0f64..7.0,
        c in -7.0f64..7.0,
    ) {
        // Additivity over subintervals is exactly what the cell-walking
        // antiderivative must preserve at grid-line boundaries.
        let samples: Vec<f64> = (0..32)
            .map(|j| ((seed as f64 + 1.0) * j as f64).sin())
            .collect();
        let f = RadialFunction::from_samples(samples).unwrap();
        let lhs = f.integral(a, b) + f.integral(b, c);
        let rhs = f.integral(a, c);
        prop_assert!((lhs - rhs).abs() < 1e-12, "{lhs} vs {rhs}");
    }

    #[test]
    fn lens_area_is_decreasing(s in 0.0f64..1.98) {
        let here = lens_area(s).unwrap();
        let there = lens_area(s + 0.02).unwrap();
        prop_assert!(there <= here + 1e-14);
        prop_assert!((0.0..=std::f64::consts::PI).contains(&here));
    }
}
