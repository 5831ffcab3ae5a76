//! Convolution bodies C_δK extracted from covariogram data, their volumes,
//! and the derived constructions (p-radial mean bodies, weighted averages,
//! the Schmuckenschläger ratio).

use crate::error::{Error, Result};
use crate::lens::alpha_from_delta;
use crate::polygon::{self, ConvexPolygon, Vec2};
use crate::quad::{graded_delta_grid, periodic_trapezoid};
use crate::radial::RadialFunction;
use crate::roots::bisect;
use crate::spectral::SpectralBody;

use rayon::prelude::*;

use std::f64::consts::TAU;

/// Radius bisection tolerance.
pub const RADIUS_TOL: f64 = 1e-12;

/// A convex body exposing its covariogram: the substrate shared by the
/// polygon and spectral engines.
pub trait BodyOracle: Sync {
    fn covariogram(&self, x: Vec2) -> f64;
    fn area(&self) -> f64;
    /// Any s with g(s·v_θ) = 0; used as the bisection bracket end.
    fn support_bound(&self, theta: f64) -> f64;
}

impl BodyOracle for ConvexPolygon {
    fn covariogram(&self, x: Vec2) -> f64 {
        polygon::covariogram(self, x)
    }

    fn area(&self) -> f64 {
        ConvexPolygon::area(self)
    }

    fn support_bound(&self, theta: f64) -> f64 {
        self.width(Vec2::unit(theta))
    }
}

impl BodyOracle for SpectralBody {
    fn covariogram(&self, x: Vec2) -> f64 {
        SpectralBody::covariogram(self, x)
    }

    fn area(&self) -> f64 {
        SpectralBody::area(self)
    }

    fn support_bound(&self, _theta: f64) -> f64 {
        2.0 * self.max_radius()
    }
}

fn check_delta(delta: f64) -> Result<()> {
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::OutOfRange {
            name: "delta",
            value: delta,
            requirement: "0 < delta < 1",
        });
    }
    Ok(())
}

/// ρ_{C_δK}(v_θ): the unique s ≥ 0 with g(s·v_θ) = δ·vol K, found by
/// bisection on the strictly decreasing covariogram slice.
pub fn convbody_radius(body: &impl BodyOracle, delta: f64, theta: f64) -> Result<f64> {
    check_delta(delta)?;
    let target = delta * body.area();
    let v = Vec2::unit(theta);
    let hi = body.support_bound(theta) * (1.0 + 1e-9);
    bisect(0.0, hi, RADIUS_TOL, |s| body.covariogram(v * s) - target)
}

/// Radial samples of C_δK on an n-point angle grid (parallel over
/// directions; the collection order is fixed, so results are deterministic).
pub fn convbody(body: &impl BodyOracle, delta: f64, n: usize) -> Result<RadialFunction> {
    check_delta(delta)?;
    let samples: Result<Vec<f64>> = (0..n)
        .into_par_iter()
        .map(|j| convbody_radius(body, delta, TAU * j as f64 / n as f64))
        .collect();
    RadialFunction::from_samples(samples?)
}

/// vol C_δK = ½∫ρ² on the n-point grid.
pub fn convbody_volume(body: &impl BodyOracle, delta: f64, n: usize) -> Result<f64> {
    let rho = convbody(body, delta, n)?;
    let sq: Vec<f64> = rho.samples().iter().map(|r| r * r).collect();
    Ok(0.5 * periodic_trapezoid(&sq))
}

/// p-radial mean body: ρ_{R_pK}(v) = (∫₀¹ ρ_{C_δK}(v)^p dδ)^{1/p}, with the
/// δ-integral on a 64-node grid graded toward δ = 1.
pub fn radial_mean_body(body: &impl BodyOracle, p: f64, n: usize) -> Result<RadialFunction> {
    if p <= -1.0 || p == 0.0 {
        return Err(Error::OutOfRange {
            name: "p",
            value: p,
            requirement: "p > -1 and p != 0",
        });
    }
    let grid = graded_delta_grid(64);
    let samples: Result<Vec<f64>> = (0..n)
        .into_par_iter()
        .map(|j| {
            let theta = TAU * j as f64 / n as f64;
            let mut acc = 0.0;
            for &(delta, w) in &grid {
                acc += w * convbody_radius(body, delta, theta)?.powf(p);
            }
            Ok(acc.powf(1.0 / p))
        })
        .collect();
    RadialFunction::from_samples(samples?)
}

/// ∫₀¹ ω(δ)·vol(C_δK) dδ on the graded grid (Kiener-type averages).
pub fn kiener_average(
    body: &impl BodyOracle,
    weight: impl Fn(f64) -> f64,
    n: usize,
) -> Result<f64> {
    let mut acc = 0.0;
    for (delta, w) in graded_delta_grid(64) {
        acc += w * weight(delta) * convbody_volume(body, delta, n)?;
    }
    Ok(acc)
}

/// vol(C_δK)/(1−δ)², the quantity whose δ→1 limit is vol(K)²·vol(Π*K).
pub fn schmuck_ratio(body: &impl BodyOracle, delta: f64, n: usize) -> Result<f64> {
    check_delta(delta)?;
    Ok(convbody_volume(body, delta, n)? / (1.0 - delta).powi(2))
}

/// Closed-form radius of C_δ of a disk of radius r (any direction).
pub fn disk_convbody_radius(r: f64, delta: f64) -> Result<f64> {
    Ok(r * 2.0 * alpha_from_delta(delta)?.cos())
}

/// Closed-form volume of C_δ of a disk of radius r.
pub fn disk_convbody_volume(r: f64, delta: f64) -> Result<f64> {
    let s = disk_convbody_radius(r, delta)?;
    Ok(std::f64::consts::PI * s * s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fourier::FourierSeries;
    use crate::radial::min_polar_curvature;
    use std::f64::consts::PI;

    fn unit_square() -> ConvexPolygon {
        ConvexPolygon::rectangle(1.0, 1.0).unwrap()
    }

    #[test]
    fn square_radius_closed_form() {
        let s = unit_square();
        for delta in [0.2, 0.5, 0.8] {
            let r = convbody_radius(&s, delta, 0.0).unwrap();
            assert!((r - (1.0 - delta)).abs() < 1e-10, "delta={delta}");
        }
        assert!(convbody_radius(&s, 0.0, 0.0).is_err());
        assert!(convbody_radius(&s, 1.0, 0.0).is_err());
    }

    #[test]
    fn disk_radius_matches_lens_relation() {
        for r in [1.0, 0.5] {
            let body = SpectralBody::new(FourierSeries::constant(r)).unwrap();
            for delta in [0.3, 0.7, 0.95] {
                let expected = disk_convbody_radius(r, delta).unwrap();
                for theta in [0.0, 1.0, 4.5] {
                    let got = convbody_radius(&body, delta, theta).unwrap();
                    assert!((got - expected).abs() < 1e-11, "r={r} d={delta}");
                }
            }
        }
    }

    #[test]
    fn disk_volume_example() {
        // alpha = pi/4 gives radius sqrt(2) and volume 2*pi.
        let delta = crate::lens::LensParams::from_alpha(PI / 4.0).unwrap().delta;
        let body = SpectralBody::new(FourierSeries::constant(1.0)).unwrap();
        let vol = convbody_volume(&body, delta, 512).unwrap();
        assert!((vol - 2.0 * PI).abs() < 1e-9);
        assert!((disk_convbody_volume(1.0, delta).unwrap() - 2.0 * PI).abs() < 1e-11);
    }

    #[test]
    fn radii_shrink_with_delta_and_vanish_at_one() {
        let s = unit_square();
        let r1 = convbody(&s, 0.3, 64).unwrap();
        let r2 = convbody(&s, 0.6, 64).unwrap();
        for (a, b) in r1.samples().iter().zip(r2.samples()) {
            assert!(b <= a);
        }
        let tiny = convbody_radius(&s, 0.999999, 0.3).unwrap();
        assert!(tiny < 1e-2);
    }

    #[test]
    fn delta_to_zero_gives_difference_body() {
        // Near the boundary of DP the covariogram vanishes quadratically in
        // the remaining distance, so the radius converges like sqrt(delta).
        let p = ConvexPolygon::regular(7, 1.0).unwrap();
        let dp = polygon::difference_body(&p).unwrap();
        for theta in [0.0, 0.9, 2.4, 5.0] {
            let r = convbody_radius(&p, 1e-8, theta).unwrap();
            // Radial function of DP: the boundary distance along v_theta.
            let v = Vec2::unit(theta);
            let hi = dp.width(v) + 1.0;
            let rd = bisect(0.0, hi, 1e-12, |s| {
                // point s*v inside DP iff all edge half-planes contain it
                let q = v * s;
                let m = dp.vertices().len();
                (0..m)
                    .map(|i| {
                        let a = dp.vertices()[i];
                        let e = dp.vertices()[(i + 1) % m] - a;
                        e.cross(q - a)
                    })
                    .fold(f64::INFINITY, f64::min)
            })
            .unwrap();
            assert!((r - rd).abs() < 1e-3, "theta={theta}: {r} vs {rd}");
        }
    }

    #[test]
    fn rotation_equivariance() {
        let p = ConvexPolygon::rectangle(1.0, 2.0).unwrap();
        let n = 64;
        let shift = 5; // rotate by an exact grid multiple
        let angle = TAU * shift as f64 / n as f64;
        let rotated = p.rotate(angle);
        let a = convbody(&p, 0.4, n).unwrap();
        let b = convbody(&rotated, 0.4, n).unwrap();
        for j in 0..n {
            let expect = a.samples()[(j + n - shift) % n];
            assert!((b.samples()[j] - expect).abs() < 1e-9, "j={j}");
        }
    }

    #[test]
    fn convbody_of_convex_body_stays_convex() {
        // A smooth perturbed disk: the sampled curvature test needs a C²
        // boundary, which polygon corners would break.
        let body = SpectralBody::new(FourierSeries::cos_squared(2).affine(1.0 / 8.0, 1.0)).unwrap();
        let rho = convbody(&body, 0.5, 512).unwrap();
        assert!(min_polar_curvature(&rho).unwrap() >= -1e-6);
    }

    #[test]
    fn disk_mean_body_is_direction_independent() {
        let r = 0.8;
        let body = SpectralBody::new(FourierSeries::constant(r)).unwrap();
        let mean = radial_mean_body(&body, 1.0, 32).unwrap();
        // Oracle: 1-D quadrature of the closed-form disk radius.
        let oracle: f64 = graded_delta_grid(64)
            .into_iter()
            .map(|(d, w)| w * disk_convbody_radius(r, d).unwrap())
            .sum();
        for &s in mean.samples() {
            assert!((s - oracle).abs() < 1e-10);
        }
        assert!(radial_mean_body(&body, -1.0, 32).is_err());
        assert!(radial_mean_body(&body, 0.0, 32).is_err());
    }

    #[test]
    fn kiener_square_vs_disk() {
        let square = unit_square();
        let disk = SpectralBody::new(FourierSeries::constant((1.0 / PI).sqrt())).unwrap();
        // Flat weight: the layer-cake identity gives ∫₀¹ vol(C_δK) dδ =
        // vol K exactly for every body, so both sides must be ~1.
        let flat = |_: f64| 1.0;
        assert!((kiener_average(&square, flat, 256).unwrap() - 1.0).abs() < 1e-3);
        assert!((kiener_average(&disk, flat, 256).unwrap() - 1.0).abs() < 1e-3);
        // Increasing weights favor δ near 1, where the disk genuinely wins.
        for weight in [(|d: f64| d) as fn(f64) -> f64, |d: f64| d * d] {
            let lhs = kiener_average(&square, weight, 256).unwrap();
            let rhs = kiener_average(&disk, weight, 256).unwrap();
            assert!(lhs < rhs, "{lhs} vs {rhs}");
        }
    }
}
