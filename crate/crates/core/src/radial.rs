//! Radial profiles on the circle: dense samples at N equispaced angles plus
//! an optional closed form (constant, cos²(mv), or a Fourier series) that
//! unlocks exact evaluation, exact arc integrals and spectral derivatives.

use crate::error::{Error, Result};
use crate::fourier::{self, FourierSeries};
use crate::quad::periodic_trapezoid;

use std::f64::consts::TAU;

/// Default angle-grid resolution for circle integrals.
pub const DEFAULT_GRID: usize = 4096;

#[derive(Debug, Clone, PartialEq)]
pub enum RadialForm {
    Constant(f64),
    /// ρ(v) = cos²(m v)
    Cos2m(u32),
    Fourier(FourierSeries),
    Samples,
}

/// A 2π-periodic radial profile ρ sampled at N equispaced angles.
///
/// Profiles are general real functions; operations that require a radial
/// set (ρ >= 0) or radial body (ρ > 0) check at the call site, since
/// perturbation profiles are allowed to change sign.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialFunction {
    samples: Vec<f64>,
    form: RadialForm,
}

impl RadialFunction {
    pub fn constant(c: f64, n: usize) -> Result<Self> {
        check_grid(n)?;
        Ok(Self {
            samples: vec![c; n],
            form: RadialForm::Constant(c),
        })
    }

    pub fn cos2m(m: u32, n: usize) -> Result<Self> {
        check_grid(n)?;
        if m < 1 {
            return Err(Error::OutOfRange {
                name: "m",
                value: m as f64,
                requirement: "m >= 1",
            });
        }
        let samples = (0..n)
            .map(|j| (m as f64 * TAU * j as f64 / n as f64).cos().powi(2))
            .collect();
        Ok(Self {
            samples,
            form: RadialForm::Cos2m(m),
        })
    }

    pub fn from_fourier(series: FourierSeries, n: usize) -> Result<Self> {
        check_grid(n)?;
        let samples = fourier::synthesize(&series, n);
        Ok(Self {
            samples,
            form: RadialForm::Fourier(series),
        })
    }

    pub fn from_samples(samples: Vec<f64>) -> Result<Self> {
        check_grid(samples.len())?;
        Ok(Self {
            samples,
            form: RadialForm::Samples,
        })
    }

    /// Sample an arbitrary closure on the n-grid (sample-only form).
    pub fn from_fn(f: impl Fn(f64) -> f64, n: usize) -> Result<Self> {
        check_grid(n)?;
        Ok(Self {
            samples: (0..n).map(|j| f(TAU * j as f64 / n as f64)).collect(),
            form: RadialForm::Samples,
        })
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn form(&self) -> &RadialForm {
        &self.form
    }

    /// All samples >= 0 (radial set).
    pub fn is_radial_set(&self) -> bool {
        self.samples.iter().all(|&s| s >= 0.0)
    }

    /// All samples > 0 (radial body).
    pub fn is_radial_body(&self) -> bool {
        self.samples.iter().all(|&s| s > 0.0)
    }

    pub fn min_sample(&self) -> f64 {
        self.samples.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max_sample(&self) -> f64 {
        self.samples
            .iter()
            .copied()
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// Spectral form if one is carried (exact for constant / cos² / Fourier).
    pub fn spectral(&self) -> Option<FourierSeries> {
        match &self.form {
            RadialForm::Constant(c) => Some(FourierSeries::constant(*c)),
            RadialForm::Cos2m(m) => Some(FourierSeries::cos_squared(*m)),
            RadialForm::Fourier(s) => Some(s.clone()),
            RadialForm::Samples => None,
        }
    }

    /// Evaluate ρ at an arbitrary angle. Closed forms are exact; sample-only
    /// profiles use periodic linear interpolation.
    pub fn eval(&self, theta: f64) -> f64 {
        match &self.form {
            RadialForm::Constant(c) => *c,
            RadialForm::Cos2m(m) => (*m as f64 * theta).cos().powi(2),
            RadialForm::Fourier(s) => s.eval(theta),
            RadialForm::Samples => {
                let n = self.samples.len();
                let x = (theta / TAU * n as f64).rem_euclid(n as f64);
                let i = x.floor() as usize % n;
                let frac = x - x.floor();
                self.samples[i] * (1.0 - frac) + self.samples[(i + 1) % n] * frac
            }
        }
    }

    /// Exact integral of ρ over [lo, hi] for spectral forms; for samples,
    /// the piecewise-linear interpolant is integrated exactly (full interior
    /// cells are trapezoid cells, end cells are partial), which keeps arc
    /// integrals continuous in the endpoints.
    pub fn integral(&self, lo: f64, hi: f64) -> f64 {
        if hi < lo {
            return -self.integral(hi, lo);
        }
        if let Some(series) = self.spectral() {
            return series.integral(lo, hi);
        }
        let n = self.samples.len();
        let h = TAU / n as f64;
        // Integrate the interpolant over the fragment of cell i covered by
        // [a, b]; fractions are clamped so float noise at cell boundaries
        // cannot push them outside [0, 1].
        let part = |i: i64, a: f64, b: f64| -> f64 {
            let idx = i.rem_euclid(n as i64) as usize;
            let s0 = self.samples[idx];
            let s1 = self.samples[(idx + 1) % n];
            let fa = (a / h - i as f64).clamp(0.0, 1.0);
            let fb = (b / h - i as f64).clamp(0.0, 1.0);
            let val = |f: f64| s0 * f + 0.5 * (s1 - s0) * f * f;
            h * (val(fb) - val(fa))
        };
        let i0 = (lo / h).floor() as i64;
        let i1 = (hi / h).floor() as i64;
        if i0 == i1 {
            return part(i0, lo, hi);
        }
        let mut acc = part(i0, lo, (i0 + 1) as f64 * h) + part(i1, i1 as f64 * h, hi);
        for i in (i0 + 1)..i1 {
            let idx = i.rem_euclid(n as i64) as usize;
            acc += 0.5 * h * (self.samples[idx] + self.samples[(idx + 1) % n]);
        }
        acc
    }

    /// ρ' and ρ'' on the sample grid: spectral differentiation when a
    /// closed form exists, otherwise 4th-order centered differences.
    pub fn derivatives_on_grid(&self) -> (Vec<f64>, Vec<f64>) {
        let n = self.samples.len();
        match &self.form {
            RadialForm::Constant(_) => (vec![0.0; n], vec![0.0; n]),
            RadialForm::Cos2m(m) => {
                let mf = *m as f64;
                let mut d1 = Vec::with_capacity(n);
                let mut d2 = Vec::with_capacity(n);
                for j in 0..n {
                    let t = TAU * j as f64 / n as f64;
                    d1.push(-mf * (2.0 * mf * t).sin());
                    d2.push(-2.0 * mf * mf * (2.0 * mf * t).cos());
                }
                (d1, d2)
            }
            RadialForm::Fourier(s) => {
                let d1 = (0..n)
                    .map(|j| s.eval_derivative(TAU * j as f64 / n as f64, 1))
                    .collect();
                let d2 = (0..n)
                    .map(|j| s.eval_derivative(TAU * j as f64 / n as f64, 2))
                    .collect();
                (d1, d2)
            }
            RadialForm::Samples => {
                let h = TAU / n as f64;
                let s = &self.samples;
                let at = |i: i64| s[(i.rem_euclid(n as i64)) as usize];
                let mut d1 = Vec::with_capacity(n);
                let mut d2 = Vec::with_capacity(n);
                for j in 0..n as i64 {
                    d1.push((8.0 * (at(j + 1) - at(j - 1)) - (at(j + 2) - at(j - 2))) / (12.0 * h));
                    d2.push(
                        (-(at(j + 2) + at(j - 2)) + 16.0 * (at(j + 1) + at(j - 1)) - 30.0 * at(j))
                            / (12.0 * h * h),
                    );
                }
                (d1, d2)
            }
        }
    }
}

fn check_grid(n: usize) -> Result<()> {
    if n < 16 || !n.is_multiple_of(2) {
        return Err(Error::OutOfRange {
            name: "grid size",
            value: n as f64,
            requirement: "N >= 16 and even",
        });
    }
    Ok(())
}

/// Area enclosed by the radial profile: (1/2)∫ρ², by periodic trapezoid.
pub fn area_of(f: &RadialFunction) -> f64 {
    let sq: Vec<f64> = f.samples().iter().map(|s| s * s).collect();
    0.5 * periodic_trapezoid(&sq)
}

/// I_K = ∫ ρ over the circle.
pub fn mean_integral(f: &RadialFunction) -> f64 {
    periodic_trapezoid(f.samples())
}

/// Fourier analysis of a radial profile (a_n up to n_max).
pub fn analyze(f: &RadialFunction, n_max: usize) -> Result<FourierSeries> {
    fourier::analyze(f.samples(), n_max)
}

/// Sample a Fourier series back onto an n-grid as a radial profile.
pub fn synthesize(series: &FourierSeries, n: usize) -> Result<RadialFunction> {
    RadialFunction::from_fourier(series.clone(), n)
}

/// Minimum over the grid of ρ² + 2ρ'² − ρρ''.
///
/// Nonnegativity of this expression is exactly convexity of the body with
/// polar-coordinate boundary ρ.
pub fn min_polar_curvature(f: &RadialFunction) -> Result<f64> {
    if let Some((index, &value)) = f.samples().iter().enumerate().find(|(_, &v)| v <= 0.0) {
        return Err(Error::NotRadialBody { index, value });
    }
    let (d1, d2) = f.derivatives_on_grid();
    Ok(f.samples()
        .iter()
        .zip(d1.iter().zip(&d2))
        .map(|(&r, (&rp, &rpp))| r * r + 2.0 * rp * rp - r * rpp)
        .fold(f64::INFINITY, f64::min))
}
