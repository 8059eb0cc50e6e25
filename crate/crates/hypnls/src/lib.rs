//! Radial harmonic analysis and a split-step solver for the defocusing
//! nonlinear Schrödinger equation
//!
//! ```text
//!     i ∂_t u + Δ u = u |u|^{2σ}
//! ```
//!
//! on real hyperbolic space ℍ^d, restricted to radial data.
//!
//! The crate is organised around the radial Fourier transform built from
//! elementary spherical functions Φ_λ and the Plancherel density
//! |c(λ)|^{-2}:
//!
//! * [`grid`] — radial grids, volume weights, the radial Laplacian stencil;
//! * [`transform`] — spherical functions, Plancherel density, forward /
//!   inverse transforms (exact discrete sine pair for d = 3, dense Φ table
//!   otherwise);
//! * [`propagator`] — Schrödinger group multipliers, mollified kernels and
//!   dispersive-decay diagnostics;
//! * [`convolution`] — radial convolution and smoothing (Kunze–Stein type)
//!   functionals;
//! * [`evolution`] — Strang split-step solver with conservation monitors;
//! * [`morawetz`] — the Δa = 1 radial weight and monotonicity diagnostics;
//! * [`strichartz`] — admissible exponent pairs and space-time norms;
//! * [`scattering`] — wave-operator pullbacks, Cauchy profiles and the
//!   Euclidean half-line baseline;
//! * [`experiments`] — named experiment drivers emitting deterministic CSV
//!   reports (the backend of the `hypnls` binary).
//!
//! Parallel sweeps and table builds use rayon when the default `parallel`
//! feature is enabled; disabling it yields a dependency-free sequential
//! build with identical results (parallel loops are index-mapped, never
//! reduction-ordered, so output bytes do not depend on thread count).

pub mod error;
pub(crate) mod exec;
pub(crate) mod fit;
pub mod grid;
pub mod params;
pub(crate) mod special;
pub mod transform;

pub use error::{Error, Result};
pub use params::ModelParams;
