//! Arc integrals over the covariogram contact set S(x): the weight
//! w_{K,v}(α) and the second-order correction T_K(x).

use crate::error::{Error, Result};
use crate::radial::RadialFunction;

use std::f64::consts::{FRAC_PI_2, PI};

/// w_{K,v}(α) = ∫_{v−α}^{v+α} ρ + ∫_{v+π−α}^{v+π+α} ρ.
///
/// This is the first-order covariogram coefficient: the integral of ρ over
/// the two arcs cut out by the lens at x = 2cos(α)·v.
pub fn arc_integral_w(f: &RadialFunction, v: f64, alpha: f64) -> Result<f64> {
    check_alpha(alpha)?;
    Ok(f.integral(v - alpha, v + alpha) + f.integral(v + PI - alpha, v + PI + alpha))
}

/// ∫_{S(x)} ρ² over the same two arcs (the quadratic bulk term of the
/// covariogram expansion).
pub fn arc_integral_w_sq(f: &RadialFunction, v: f64, alpha: f64) -> Result<f64> {
    check_alpha(alpha)?;
    if let Some(series) = f.spectral() {
        let sq = series.squared_coefficients();
        let sq_series = crate::fourier::FourierSeries::new(sq[0].re, sq[1..].to_vec());
        return Ok(sq_series.integral(v - alpha, v + alpha)
            + sq_series.integral(v + PI - alpha, v + PI + alpha));
    }
    let squared = RadialFunction::from_samples(f.samples().iter().map(|s| s * s).collect())?;
    Ok(squared.integral(v - alpha, v + alpha) + squared.integral(v + PI - alpha, v + PI + alpha))
}

/// Second-order correction T_K(x) at x = 2cos(α)·v_v, from the four boundary
/// points of S(x): v₁ = v+α and v₂ = v+π−α (upper pair), v₃ = v−α and
/// v₄ = v+π+α (lower pair).
pub fn t_correction(f: &RadialFunction, v: f64, alpha: f64) -> Result<f64> {
    check_alpha(alpha)?;
    let s = 2.0 * alpha.cos();
    let r1 = f.eval(v + alpha);
    let r2 = f.eval(v + PI - alpha);
    let r3 = f.eval(v - alpha);
    let r4 = f.eval(v + PI + alpha);
    let sum_sq = r1 * r1 + r2 * r2 + r3 * r3 + r4 * r4;
    Ok((4.0 * (r1 * r2 + r3 * r4) + sum_sq * (s * s - 2.0)) / (2.0 * s * (4.0 - s * s).sqrt()))
}

fn check_alpha(alpha: f64) -> Result<()> {
    if !(alpha > 0.0 && alpha < FRAC_PI_2) {
        return Err(Error::OutOfRange {
            name: "alpha",
            value: alpha,
            requirement: "0 < alpha < pi/2",
        });
    }
    Ok(())
}
