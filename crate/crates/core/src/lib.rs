//! Planar computational convex geometry for convolution bodies.
//!
//! The crate computes covariograms g_K(x) = vol(K ∩ (K+x)) of planar convex
//! bodies, extracts convolution bodies C_δK = {x : g_K(x) ≥ δ·vol K}, and
//! evaluates the first and second variations of t ↦ vol(C_δ K̄_t) for radial
//! perturbation families K_t. On top of that it certifies, with an explicit
//! numeric error budget, that suitable convex perturbations of the disk have
//! strictly larger convolution bodies than the disk itself, for any
//! δ ∈ (0, 1).

pub mod arcs;
pub mod bodyspec;
pub mod cli;
pub mod convolution;
pub mod counterexample;
pub mod error;
pub mod fourier;
pub mod lens;
pub mod polygon;
pub mod quad;
pub mod radial;
pub mod roots;
pub mod spectral;
pub mod variation;

pub use error::{Error, Result};
