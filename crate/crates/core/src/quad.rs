//! Quadrature helpers: periodic trapezoid sums and the graded delta grid
//! used for averages over the convolution-body parameter.

/// Trapezoidal sum of equispaced samples of a 2π-periodic function.
///
/// On a periodic grid the trapezoidal rule is just the mean times the period,
/// and is spectrally accurate for smooth integrands.
pub fn periodic_trapezoid(samples: &[f64]) -> f64 {
    let n = samples.len();
    samples.iter().sum::<f64>() * std::f64::consts::TAU / n as f64
}

/// Gauss-Legendre nodes and weights on [-1, 1], by Newton iteration on P_n.
pub fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(n);
    let m = n.div_ceil(2);
    for i in 0..m {
        // Chebyshev-style initial guess.
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            // Evaluate P_n and P_n' by the three-term recurrence.
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let k = k as f64;
                let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        out.push((-x, w));
        if 2 * (i + 1) <= n && n - 1 - i != i {
            out.push((x, w));
        }
    }
    out.sort_by(|a, b| a.0.total_cmp(&b.0));
    out
}

/// Nodes and weights for ∫₀¹ f(δ) dδ, graded so node density grows like
/// (1-δ)^{-1/2} near δ = 1 (the convolution-body radius vanishes like 1-δ
/// there, so uniform grids waste points).
///
/// Built by the substitution δ = 1 - u², dδ = 2u du, with Gauss-Legendre
/// nodes in u ∈ (0, 1); endpoints are never evaluated.
pub fn graded_delta_grid(n: usize) -> Vec<(f64, f64)> {
    gauss_legendre(n)
        .into_iter()
        .map(|(x, w)| {
            let u = 0.5 * (x + 1.0);
            (1.0 - u * u, w * u) // weight: (w/2) * 2u
        })
        .collect()
}
