use thiserror::Error;

/// Errors raised by the geometry and analysis layers.
#[derive(Debug, Error)]
pub enum Error {
    #[error("{name} = {value} out of range: {requirement}")]
    OutOfRange {
        name: &'static str,
        value: f64,
        requirement: &'static str,
    },

    #[error("polygon is not convex at vertex {vertex}")]
    NonConvex { vertex: usize },

    #[error("invalid polygon: {0}")]
    InvalidPolygon(String),

    #[error("radial function is not strictly positive (sample {index} = {value})")]
    NotRadialBody { index: usize, value: f64 },

    #[error("aliasing: n_max = {n_max} must be < N/2 = {half_n}")]
    Aliasing { n_max: usize, half_n: usize },

    #[error("bisection bracket failure on [{lo}, {hi}]: f(lo) = {flo}, f(hi) = {fhi}")]
    BracketFailure {
        lo: f64,
        hi: f64,
        flo: f64,
        fhi: f64,
    },

    #[error("no spectral form available: {0}")]
    NoSpectralForm(&'static str),

    #[error("perturbation stencil leaves the convexity window at t = {t} (min polar curvature {min_curvature})")]
    NonConvexStencil { t: f64, min_curvature: f64 },

    #[error("no m <= {m_max} with positive second variation at delta = {delta}")]
    NoM { delta: f64, m_max: u32 },
}

pub type Result<T> = std::result::Result<T, Error>;
