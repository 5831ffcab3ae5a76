//! Variational analysis of t ↦ vol(C_δ K̄_t): perturbation families,
//! finite-difference derivatives, the analytic second variation, F_m(α),
//! and the δ → 1 limit formulas.

use crate::arcs::arc_integral_w;
use crate::convolution::convbody_volume;
use crate::error::{Error, Result};
use crate::fourier::FourierSeries;
use crate::lens::alpha_from_delta;
use crate::polygon::polygon_from_radial;
use crate::quad::periodic_trapezoid;
use crate::radial::{area_of, mean_integral, min_polar_curvature, RadialFunction};
use crate::spectral::SpectralBody;

use std::f64::consts::{FRAC_PI_2, PI, TAU};

/// The family K_t with ρ_{K_t} = 1 + t·ρ_K.
#[derive(Debug, Clone)]
pub struct PerturbationFamily {
    base: RadialFunction,
}

impl PerturbationFamily {
    pub fn new(base: RadialFunction) -> Self {
        Self { base }
    }

    pub fn base(&self) -> &RadialFunction {
        &self.base
    }

    /// I_K of the base profile.
    pub fn mean(&self) -> f64 {
        mean_integral(&self.base)
    }

    /// vol K of the base profile.
    pub fn base_area(&self) -> f64 {
        area_of(&self.base)
    }

    /// ρ = 1 + t·ρ_K (spectral when the base carries a closed form).
    pub fn body_at(&self, t: f64) -> Result<RadialFunction> {
        let n = self.base.len();
        match self.base.spectral() {
            Some(series) => RadialFunction::from_fourier(series.affine(t, 1.0), n),
            None => RadialFunction::from_samples(
                self.base.samples().iter().map(|r| 1.0 + t * r).collect(),
            ),
        }
    }

    /// K̄_t: the body rescaled to area 1.
    pub fn normalized_at(&self, t: f64) -> Result<RadialFunction> {
        let body = self.body_at(t)?;
        let lambda = area_of(&body).sqrt().recip();
        let n = self.base.len();
        match body.spectral() {
            Some(series) => RadialFunction::from_fourier(series.affine(lambda, 0.0), n),
            None => {
                RadialFunction::from_samples(body.samples().iter().map(|r| lambda * r).collect())
            }
        }
    }
}

/// Volume evaluator for V(t) = vol(C_δ K̄_t): spectral for band-limited
/// profiles, polygonal otherwise.
#[derive(Debug, Clone, Copy)]
pub struct VolumeEngine {
    /// Directions in the C_δ radius grid.
    pub n_dir: usize,
    /// Vertex count for the polygon fallback.
    pub polygon_n: usize,
}

impl Default for VolumeEngine {
    fn default() -> Self {
        Self {
            n_dir: 512,
            polygon_n: 8192,
        }
    }
}

impl VolumeEngine {
    pub fn volume(&self, profile: &RadialFunction, delta: f64) -> Result<f64> {
        match profile.spectral() {
            Some(series) => {
                let body = SpectralBody::new(series)?;
                convbody_volume(&body, delta, self.n_dir)
            }
            None => {
                let poly = polygon_from_radial(profile, self.polygon_n)?;
                convbody_volume(&poly, delta, self.n_dir)
            }
        }
    }
}

/// Finite-difference derivatives of V(t) at t = 0.
#[derive(Debug, Clone, Copy)]
pub struct FdDerivatives {
    /// Richardson-extrapolated first derivative.
    pub first: f64,
    /// Richardson-extrapolated second derivative.
    pub second: f64,
    /// Raw central differences at step h.
    pub first_h: f64,
    pub second_h: f64,
    /// Raw central differences at step h/2.
    pub first_h2: f64,
    pub second_h2: f64,
}

impl FdDerivatives {
    /// Observed convergence order of the first derivative toward 0 under
    /// h → h/2 (meaningful because the true first variation vanishes).
    pub fn first_order(&self) -> f64 {
        (self.first_h.abs() / self.first_h2.abs()).log2()
    }
}

/// Central differences of V(t) = vol(C_δ K̄_t) at steps ±h, ±h/2 with one
/// Richardson step. Negative t is evaluated directly (1 + tρ stays positive
/// for small h), and the widest stencil points are required to be convex.
pub fn fd_derivatives(
    fam: &PerturbationFamily,
    delta: f64,
    h: f64,
    engine: &VolumeEngine,
) -> Result<FdDerivatives> {
    if h <= 0.0 || h.is_nan() {
        return Err(Error::OutOfRange {
            name: "h",
            value: h,
            requirement: "h > 0",
        });
    }
    for t in [h, -h] {
        let body = fam.body_at(t)?;
        let curv = min_polar_curvature(&body)?;
        if curv < -1e-9 {
            return Err(Error::NonConvexStencil {
                t,
                min_curvature: curv,
            });
        }
    }
    let v = |t: f64| -> Result<f64> { engine.volume(&fam.normalized_at(t)?, delta) };
    let (vm2, vm1, v0, vp1, vp2) = (v(-h)?, v(-h / 2.0)?, v(0.0)?, v(h / 2.0)?, v(h)?);
    let first_h = (vp2 - vm2) / (2.0 * h);
    let first_h2 = (vp1 - vm1) / h;
    let second_h = (vp2 - 2.0 * v0 + vm2) / (h * h);
    let second_h2 = (vp1 - 2.0 * v0 + vm1) / (h * h / 4.0);
    Ok(FdDerivatives {
        first: (4.0 * first_h2 - first_h) / 3.0,
        second: (4.0 * second_h2 - second_h) / 3.0,
        first_h,
        second_h,
        first_h2,
        second_h2,
    })
}

/// The analytic second variation (∂²/∂t²) vol(C_δ K̄_t) at t = 0:
///
///   (1/π sin²α)[ −(1/2π)((sin 2α − 2α)/sin α)²·I_K²
///                − ½cot α·∫[ρ(v+π/2±π/2±α)]·w_{K,v}(α) dv
///                + (1/4sin²α)·∫w² dv + 2∫ρ(v−α+π)ρ(v+α) dv
///                + 4cos 2α·vol K ]
///
/// with all circle integrals on the base sample grid so that their
/// discretization errors cancel in the combination.
pub fn analytic_second_derivative(fam: &PerturbationFamily, delta: f64) -> Result<f64> {
    let alpha = alpha_from_delta(delta)?;
    let rho = &fam.base;
    let n = rho.len();
    let mut bracket_w = Vec::with_capacity(n);
    let mut w_sq = Vec::with_capacity(n);
    let mut cross = Vec::with_capacity(n);
    for j in 0..n {
        let v = TAU * j as f64 / n as f64;
        let w = arc_integral_w(rho, v, alpha)?;
        let bracket = rho.eval(v + alpha)
            + rho.eval(v - alpha)
            + rho.eval(v + PI + alpha)
            + rho.eval(v + PI - alpha);
        bracket_w.push(bracket * w);
        w_sq.push(w * w);
        cross.push(rho.eval(v - alpha + PI) * rho.eval(v + alpha));
    }
    let i_k = fam.mean();
    let vol_k = fam.base_area();
    let (sin_a, cos_a) = (alpha.sin(), alpha.cos());
    let bulk = -((2.0 * alpha).sin() - 2.0 * alpha).powi(2) / (sin_a * sin_a) * i_k * i_k
        / (2.0 * PI)
        - 0.5 * (cos_a / sin_a) * periodic_trapezoid(&bracket_w)
        + periodic_trapezoid(&w_sq) / (4.0 * sin_a * sin_a)
        + 2.0 * periodic_trapezoid(&cross)
        + 4.0 * (2.0 * alpha).cos() * vol_k;
    Ok(bulk / (PI * sin_a * sin_a))
}

/// Closed form F_m(α): the second variation for the profile cos²(mv).
pub fn f_m(alpha: f64, m: u32) -> Result<f64> {
    if !(alpha > 0.0 && alpha < FRAC_PI_2) {
        return Err(Error::OutOfRange {
            name: "alpha",
            value: alpha,
            requirement: "0 < alpha < pi/2",
        });
    }
    if m < 1 {
        return Err(Error::OutOfRange {
            name: "m",
            value: m as f64,
            requirement: "m >= 1",
        });
    }
    let mf = m as f64;
    let s2 = alpha.sin().powi(2);
    let c4am = (4.0 * alpha * mf).cos();
    let s4am = (4.0 * alpha * mf).sin();
    Ok(
        (0.5 * (2.0 * alpha).cos() + 0.5 * c4am + 1.0 / (8.0 * mf * mf * s2)
            - c4am / (8.0 * mf * mf * s2)
            - s4am / (2.0 * mf * alpha.tan()))
            / s2,
    )
}

/// The δ→1 limit of (∂²/∂t²)vol(C_δ K̄_t)/(1−δ)²:
///
///   ¾π∫((ρ(v)+ρ(v+π))/2)² dv − ½(∫ρ)² − (π/4)∫ρ'² + (π/2)·vol K.
pub fn limit_second_derivative(base: &RadialFunction) -> f64 {
    let n = base.len();
    let half = n / 2;
    let sym_sq: Vec<f64> = (0..n)
        .map(|j| {
            let s = 0.5 * (base.samples()[j] + base.samples()[(j + half) % n]);
            s * s
        })
        .collect();
    let (d1, _) = base.derivatives_on_grid();
    let d1_sq: Vec<f64> = d1.iter().map(|d| d * d).collect();
    let i_k = mean_integral(base);
    0.75 * PI * periodic_trapezoid(&sym_sq)
        - 0.5 * i_k * i_k
        - 0.25 * PI * periodic_trapezoid(&d1_sq)
        + 0.5 * PI * area_of(base)
}

/// Fourier form of the same limit (up to the π/4 normalization):
/// 4π[Σ(1+3ε_n)|a_n|² − Σn²|a_n|²], ε_n = 1 for even n.
pub fn fourier_limit_value(series: &FourierSeries) -> f64 {
    let mut acc = 0.0;
    for (k, a) in series.coefficients().iter().enumerate() {
        let n = (k + 1) as f64;
        let eps = if (k + 1) % 2 == 0 { 1.0 } else { 0.0 };
        acc += (1.0 + 3.0 * eps - n * n) * a.norm_sqr();
    }
    4.0 * PI * acc
}
