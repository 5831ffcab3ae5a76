//! Fourier series of real 2π-periodic functions, stored as a_0 plus the
//! positive-frequency coefficients (a_{-n} = conj(a_n) is implied, so the
//! synthesized function is real by construction).

use num_complex::Complex64;

use crate::error::{Error, Result};

use std::f64::consts::TAU;

#[derive(Debug, Clone, PartialEq)]
pub struct FourierSeries {
    a0: f64,
    /// an[k] is the coefficient a_{k+1}.
    an: Vec<Complex64>,
}

impl FourierSeries {
    pub fn new(a0: f64, an: Vec<Complex64>) -> Self {
        Self { a0, an }
    }

    pub fn constant(c: f64) -> Self {
        Self {
            a0: c,
            an: Vec::new(),
        }
    }

    /// Series of cos²(m v) = 1/2 + (1/4) e^{2imv} + (1/4) e^{-2imv}.
    pub fn cos_squared(m: u32) -> Self {
        let mut an = vec![Complex64::new(0.0, 0.0); 2 * m as usize];
        an[2 * m as usize - 1] = Complex64::new(0.25, 0.0);
        Self { a0: 0.5, an }
    }

    pub fn a0(&self) -> f64 {
        self.a0
    }

    pub fn coefficients(&self) -> &[Complex64] {
        &self.an
    }

    /// Largest frequency carried (0 for a constant).
    pub fn n_max(&self) -> usize {
        self.an.len()
    }

    /// Coefficient a_n for n >= 0.
    pub fn coefficient(&self, n: usize) -> Complex64 {
        if n == 0 {
            Complex64::new(self.a0, 0.0)
        } else {
            self.an.get(n - 1).copied().unwrap_or_default()
        }
    }

    pub fn eval(&self, theta: f64) -> f64 {
        let rot = Complex64::from_polar(1.0, theta);
        let mut z = Complex64::new(1.0, 0.0);
        let mut acc = self.a0;
        for a in &self.an {
            z *= rot;
            acc += 2.0 * (a * z).re;
        }
        acc
    }

    /// k-th derivative at theta (term-wise (in)^k).
    pub fn eval_derivative(&self, theta: f64, k: u32) -> f64 {
        let rot = Complex64::from_polar(1.0, theta);
        let mut z = Complex64::new(1.0, 0.0);
        let mut acc = if k == 0 { self.a0 } else { 0.0 };
        for (j, a) in self.an.iter().enumerate() {
            z *= rot;
            let iw = Complex64::new(0.0, (j + 1) as f64);
            acc += 2.0 * (a * iw.powu(k) * z).re;
        }
        acc
    }

    /// Exact ∫_lo^hi of the synthesized function.
    pub fn integral(&self, lo: f64, hi: f64) -> f64 {
        let mut acc = self.a0 * (hi - lo);
        let rlo = Complex64::from_polar(1.0, lo);
        let rhi = Complex64::from_polar(1.0, hi);
        let (mut zlo, mut zhi) = (Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0));
        for (j, a) in self.an.iter().enumerate() {
            zlo *= rlo;
            zhi *= rhi;
            let inv_in = Complex64::new(0.0, -1.0 / (j + 1) as f64); // 1/(in)
            acc += 2.0 * (a * inv_in * (zhi - zlo)).re;
        }
        acc
    }

    /// Series of λ·ρ + c.
    pub fn affine(&self, scale: f64, shift: f64) -> Self {
        Self {
            a0: scale * self.a0 + shift,
            an: self.an.iter().map(|a| a * scale).collect(),
        }
    }

    /// Full coefficient list of ρ², indices 0..=2·n_max (hermitian half).
    pub fn squared_coefficients(&self) -> Vec<Complex64> {
        let b = self.n_max() as i64;
        let coeff = |n: i64| -> Complex64 {
            if n == 0 {
                Complex64::new(self.a0, 0.0)
            } else if n > 0 {
                self.an[(n - 1) as usize]
            } else {
                self.an[(-n - 1) as usize].conj()
            }
        };
        (0..=2 * b)
            .map(|n| {
                let mut c = Complex64::new(0.0, 0.0);
                for k in (n - b).max(-b)..=b.min(n + b) {
                    c += coeff(k) * coeff(n - k);
                }
                c
            })
            .collect()
    }
}

/// Discrete Fourier analysis of equispaced samples on [0, 2π):
/// a_n = (1/N) Σ_j f(θ_j) e^{-i n θ_j}, for 1 <= n <= n_max, plus a_0.
///
/// n_max must stay below the Nyquist frequency N/2.
pub fn analyze(samples: &[f64], n_max: usize) -> Result<FourierSeries> {
    let n = samples.len();
    if n_max >= n / 2 {
        return Err(Error::Aliasing {
            n_max,
            half_n: n / 2,
        });
    }
    let a0 = samples.iter().sum::<f64>() / n as f64;
    let an = (1..=n_max)
        .map(|freq| {
            let mut acc = Complex64::new(0.0, 0.0);
            for (j, &s) in samples.iter().enumerate() {
                let phase = -TAU * (freq * j) as f64 / n as f64;
                acc += s * Complex64::from_polar(1.0, phase);
            }
            acc / n as f64
        })
        .collect();
    Ok(FourierSeries::new(a0, an))
}

/// Sample the series at n equispaced angles on [0, 2π).
pub fn synthesize(series: &FourierSeries, n: usize) -> Vec<f64> {
    (0..n)
        .map(|j| series.eval(TAU * j as f64 / n as f64))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_analysis() {
        let samples = vec![2.5; 64];
        let s = analyze(&samples, 8).unwrap();
        assert!((s.a0() - 2.5).abs() < 1e-14);
        for a in s.coefficients() {
            assert!(a.norm() < 1e-13);
        }
    }

    #[test]
    fn cos_squared_coefficients() {
        let n = 128;
        let m = 3u32;
        let samples: Vec<f64> = (0..n)
            .map(|j| (m as f64 * TAU * j as f64 / n as f64).cos().powi(2))
            .collect();
        let s = analyze(&samples, 10).unwrap();
        assert!((s.a0() - 0.5).abs() < 1e-13);
        for freq in 1..=10usize {
            let expected = if freq == 2 * m as usize { 0.25 } else { 0.0 };
            assert!(
                (s.coefficient(freq) - Complex64::new(expected, 0.0)).norm() < 1e-13,
                "freq {freq}"
            );
        }
    }

    #[test]
    fn round_trip_band_limited() {
        let n = 256;
        let samples: Vec<f64> = (0..n)
            .map(|j| {
                let t = TAU * j as f64 / n as f64;
                1.0 + 0.2 * (5.0 * t).sin()
            })
            .collect();
        let s = analyze(&samples, 8).unwrap();
        let back = synthesize(&s, n);
        for (a, b) in samples.iter().zip(&back) {
            assert!((a - b).abs() < 1e-10);
        }
    }

    #[test]
    fn aliasing_guard() {
        assert!(matches!(
            analyze(&vec![0.0; 32], 16),
            Err(Error::Aliasing { .. })
        ));
    }

    #[test]
    fn integral_and_derivative_closed_forms() {
        let s = FourierSeries::cos_squared(2);
        // ∫ cos²(2v) over [0, π/3] = π/6 + sin(4π/3)/8
        let exact = std::f64::consts::PI / 6.0 + (4.0 * std::f64::consts::PI / 3.0).sin() / 8.0;
        assert!((s.integral(0.0, std::f64::consts::PI / 3.0) - exact).abs() < 1e-14);
        // d/dv cos²(2v) = -2 sin(4v)
        let v = 0.7;
        assert!((s.eval_derivative(v, 1) + 2.0 * (4.0 * v).sin()).abs() < 1e-13);
        assert!((s.eval_derivative(v, 2) + 8.0 * (4.0 * v).cos()).abs() < 1e-13);
    }

    #[test]
    fn squared_coefficients_match_pointwise_square() {
        let s = FourierSeries::new(
            1.0,
            vec![Complex64::new(0.1, -0.05), Complex64::new(0.0, 0.2)],
        );
        let sq = s.squared_coefficients();
        for k in 0..16 {
            let t = TAU * k as f64 / 16.0;
            let direct = s.eval(t) * s.eval(t);
            let mut from_sq = sq[0].re;
            for (n, c) in sq.iter().enumerate().skip(1) {
                from_sq += 2.0 * (c * Complex64::from_polar(1.0, n as f64 * t)).re;
            }
            assert!((direct - from_sq).abs() < 1e-13);
        }
    }
}
