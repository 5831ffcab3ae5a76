//! Lens geometry of two unit disks: the area L(s) of 𝔹 ∩ (𝔹 + sv), its
//! derivatives, the boundary measure S(s), and the α/δ/s parameter
//! conversions. With s = 2cos(α):
//!
//!   L(s)  = 2(α − cos α sin α)      L'(s) = −2 sin α     L''(s) = cot α
//!   S(s)  = 4α                      S'(s) = −2 / sin α
//!   δ     = L(s)/π

use crate::error::{Error, Result};
use crate::roots::bisect;

use std::f64::consts::{FRAC_PI_2, PI};

/// The three equivalent parameters of a convolution-body slice of the disk.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LensParams {
    /// Half-angle α ∈ (0, π/2).
    pub alpha: f64,
    /// Center distance s = 2cos(α) ∈ (0, 2).
    pub s: f64,
    /// Volume fraction δ = L(s)/π ∈ (0, 1).
    pub delta: f64,
}

impl LensParams {
    pub fn from_alpha(alpha: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha < FRAC_PI_2) {
            return Err(Error::OutOfRange {
                name: "alpha",
                value: alpha,
                requirement: "0 < alpha < pi/2",
            });
        }
        let s = 2.0 * alpha.cos();
        Ok(Self {
            alpha,
            s,
            delta: lens_area(s)? / PI,
        })
    }

    pub fn from_delta(delta: f64) -> Result<Self> {
        Self::from_alpha(alpha_from_delta(delta)?)
    }

    pub fn from_s(s: f64) -> Result<Self> {
        if !(s > 0.0 && s < 2.0) {
            return Err(Error::OutOfRange {
                name: "s",
                value: s,
                requirement: "0 < s < 2",
            });
        }
        Self::from_alpha((s / 2.0).acos())
    }
}

/// Area of the intersection of two unit disks at center distance s.
pub fn lens_area(s: f64) -> Result<f64> {
    if !(0.0..=2.0).contains(&s) {
        return Err(Error::OutOfRange {
            name: "s",
            value: s,
            requirement: "0 <= s <= 2",
        });
    }
    let alpha = (s / 2.0).acos();
    Ok(2.0 * (alpha - alpha.cos() * alpha.sin()))
}

/// First and second derivatives (L'(s), L''(s)) of the lens area.
pub fn lens_derivatives(s: f64) -> Result<(f64, f64)> {
    let alpha = interior_alpha(s)?;
    Ok((-2.0 * alpha.sin(), 1.0 / alpha.tan()))
}

/// Boundary measure S(s) of the lens and its derivative S'(s).
pub fn lens_boundary(s: f64) -> Result<(f64, f64)> {
    let alpha = interior_alpha(s)?;
    Ok((4.0 * alpha, -2.0 / alpha.sin()))
}

fn interior_alpha(s: f64) -> Result<f64> {
    if !(s > 0.0 && s < 2.0) {
        return Err(Error::OutOfRange {
            name: "s",
            value: s,
            requirement: "0 < s < 2 (derivatives singular at endpoints)",
        });
    }
    Ok((s / 2.0).acos())
}

/// Invert δ = L(2cos α)/π for α ∈ (0, π/2).
///
/// The map is strictly increasing in α, so plain bisection converges; the
/// interval is narrowed below 1e-13.
pub fn alpha_from_delta(delta: f64) -> Result<f64> {
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::OutOfRange {
            name: "delta",
            value: delta,
            requirement: "0 < delta < 1",
        });
    }
    let target = delta * PI;
    bisect(0.0, FRAC_PI_2, 1e-13, |a| {
        2.0 * (a - a.sin() * a.cos()) - target
    })
}
